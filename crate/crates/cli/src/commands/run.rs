//! The general pipeline: read a structured configuration, build the
//! module and subspace it names, run the requested analyses, and report.

use std::sync::Arc;

use serde::Serialize;
use serde_json::json;
use universal_subspaces::obstruction::su2_obstruction_report;
use universal_subspaces::rep::RepKind;
use universal_subspaces::universality::levi::levi_restriction_check;
use universal_subspaces::universality::solvable::solvable_witness;
use universal_subspaces::{universality_verdict, Result, SearchConfig, VerdictKind};

use crate::commands::{space_label, SearchOverrides};
use crate::config::RunConfig;
use crate::report::{verdict_distance, verdict_label, Report, TableRow};

#[derive(Debug, Serialize)]
pub struct RunRow {
    pub analysis: String,
    pub outcome: String,
    pub value: String,
}

impl TableRow for RunRow {
    const HEADERS: &'static [&'static str] = &["analysis", "outcome", "value"];
    fn record(&self) -> Vec<String> {
        vec![
            self.analysis.clone(),
            self.outcome.clone(),
            self.value.clone(),
        ]
    }
}

/// The hyperplane index when the run is a single-weight-line complement
/// of an SU(2) irreducible module, which is the shape the obstruction
/// table covers.
fn hyperplane_shape(cfg: &RunConfig) -> Option<(usize, usize)> {
    let n = match cfg.representation.kind.as_str() {
        "irrep" => cfg.representation.degree?,
        _ => return None,
    };
    if cfg.subspace.kind != "weight-complement" {
        return None;
    }
    match cfg.subspace.killed.as_deref() {
        Some([i]) => Some((n, *i)),
        _ => None,
    }
}

pub fn cmd_run(cfg: &RunConfig, overrides: &SearchOverrides) -> Result<Report<RunRow>> {
    let group = cfg.group.as_ref().map(|g| g.resolve()).transpose()?;
    let rep = Arc::new(cfg.representation.resolve(group.as_ref())?);
    let v = cfg.subspace.resolve(rep.clone())?;
    let search = overrides.apply(cfg.search_config(SearchConfig::default())?);

    // Echo the fully resolved configuration, defaults filled in.
    let mut echoed = cfg.clone();
    echoed.seed = Some(search.seed);
    let mut report = Report::new(
        "run",
        json!({
            "file": serde_json::to_value(&echoed).expect("config echo"),
            "group": rep.group().label(),
            "module_dim": rep.dimension(),
            "subspace_dim": v.dim(),
            "restarts": search.restarts,
            "tolerance": search.tolerance,
            "samples": search.samples,
            "seed": search.seed,
        }),
    );

    let mut universal: Option<bool> = None;
    if cfg.analyses.verdict.unwrap_or(true) {
        let verdict = universality_verdict(&rep, &v, &search)?;
        if !matches!(verdict.kind, VerdictKind::Inconclusive { .. }) {
            universal = Some(verdict.is_universal());
        }
        report.rows.push(RunRow {
            analysis: "verdict".into(),
            outcome: verdict_label(&verdict.kind).into(),
            value: format!("{}", verdict_distance(&verdict.kind)),
        });
        report.add_verdict("configured subspace", verdict);
    }

    // The obstruction side runs whenever the configuration has the
    // weight-line shape, unless it was switched off explicitly.
    if let Some((n, i)) = hyperplane_shape(cfg) {
        let wanted = cfg.analyses.su2_obstruction.unwrap_or(true);
        let is_su2_irrep = matches!(rep.kind(), RepKind::Su2Irrep { .. });
        if wanted && is_su2_irrep {
            let obs = su2_obstruction_report(n, i)?;
            report.rows.push(RunRow {
                analysis: format!("obstruction class over {}", space_label(&obs.base_space)),
                outcome: if obs.vanishes { "vanishes" } else { "nonzero" }.into(),
                value: obs.class_value.to_string(),
            });
            if let Some(u) = universal {
                report.flag("nonvanishing class forces universality", obs.vanishes || u);
            }
            report.add_obstruction(format!("weight line i={i}"), obs);
        }
    }

    if cfg.analyses.levi.unwrap_or(false) {
        let levi = levi_restriction_check(&rep, &v, &search)?;
        for block in &levi.blocks {
            report.rows.push(RunRow {
                analysis: format!("block with central weight {:?}", block.central_weight),
                outcome: verdict_label(&block.verdict.kind).into(),
                value: format!("intersection dim {}", block.intersection_dim),
            });
        }
        let blocks_decided = !levi
            .blocks
            .iter()
            .any(|b| matches!(b.verdict.kind, VerdictKind::Inconclusive { .. }));
        if let (Some(u), true) = (universal, blocks_decided) {
            report.flag(
                "blockwise reduction agrees with the global verdict",
                levi.overall_universal == u,
            );
        }
        for block in levi.blocks {
            report.add_verdict(
                format!("block with central weight {:?}", block.central_weight),
                block.verdict,
            );
        }
    }

    if cfg.analyses.solvable_witness.unwrap_or(false) {
        let w = solvable_witness(&rep, &v)?;
        report.work.certificates += 1;
        report.rows.push(RunRow {
            analysis: "constructive witness".into(),
            outcome: format!("depth {}", w.depth),
            value: format!("{}", w.certificate),
        });
        if let Some(u) = universal {
            report.flag("certified witness contradicts universality", !u);
        }
    }
    Ok(report)
}
