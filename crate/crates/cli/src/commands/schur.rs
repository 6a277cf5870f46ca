//! Borel universality: conjugating any element of the complexified
//! algebra into the Cartan-plus-positive-root-spaces subalgebra is
//! exactly unitary triangularization, so the numerical verdict must come
//! back universal, and the combinatorial containment test must agree.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;
use universal_subspaces::lie::roots::{build_root_system, Weight};
use universal_subspaces::lie::GroupSpec;
use universal_subspaces::rep::subspace::Subspace;
use universal_subspaces::rep::Representation;
use universal_subspaces::subalgebra::contains_positive_system;
use universal_subspaces::{universality_verdict, Result, SearchConfig, VerdictKind};

use crate::commands::SearchOverrides;
use crate::report::{verdict_distance, verdict_label, Report, TableRow};

#[derive(Debug, Serialize)]
pub struct SchurRow {
    pub group: String,
    pub module_dim: usize,
    pub borel_dim: usize,
    pub verdict: String,
    pub max_min_distance: f64,
}

impl TableRow for SchurRow {
    const HEADERS: &'static [&'static str] = &[
        "group",
        "module_dim",
        "borel_dim",
        "verdict",
        "max_min_distance",
    ];
    fn record(&self) -> Vec<String> {
        vec![
            self.group.clone(),
            self.module_dim.to_string(),
            self.borel_dim.to_string(),
            self.verdict.clone(),
            format!("{}", self.max_min_distance),
        ]
    }
}

pub fn cmd_schur(group: GroupSpec, overrides: &SearchOverrides) -> Result<Report<SchurRow>> {
    let cfg = overrides.apply(SearchConfig {
        samples: 100,
        ..SearchConfig::default()
    });
    let mut report = Report::new(
        "schur",
        json!({
            "group": group.label(),
            "seed": cfg.seed,
            "restarts": cfg.restarts,
            "tolerance": cfg.tolerance,
            "samples": cfg.samples,
        }),
    );

    let rs = build_root_system(&group)?;
    let rep = Arc::new(Representation::complexified_adjoint(&group)?);
    let positives: BTreeSet<Weight> = rs.positive_roots.iter().cloned().collect();
    // The Borel is cut out by killing every negative-root coordinate.
    let killed: BTreeSet<usize> = rep
        .weights()
        .iter()
        .enumerate()
        .filter(|(_, w)| w.iter().any(|&x| x != 0) && !positives.contains(*w))
        .map(|(i, _)| i)
        .collect();
    let v = Subspace::weight_complement(rep.clone(), killed, true)?;
    let borel_dim = v.dim();

    let combinatorial = contains_positive_system(&rs, &positives)?;
    let verdict = universality_verdict(&rep, &v, &cfg)?;
    report.flag("borel contains a positive system", combinatorial);
    if !matches!(verdict.kind, VerdictKind::Inconclusive { .. }) {
        report.flag("borel subalgebra is universal", verdict.is_universal());
        report.flag(
            "containment and orbit search agree",
            combinatorial == verdict.is_universal(),
        );
    }

    report.rows.push(SchurRow {
        group: rep.group().label(),
        module_dim: rep.dimension(),
        borel_dim,
        verdict: verdict_label(&verdict.kind).to_string(),
        max_min_distance: verdict_distance(&verdict.kind),
    });
    report.add_verdict("borel subalgebra", verdict);
    Ok(report)
}
