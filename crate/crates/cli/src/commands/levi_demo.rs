//! The block group {[[A, B], [0, A]] : A in SU(2)} on C^4 against the
//! pair of first-coordinate lines: the full group moves every vector
//! into the subspace, while its SU(2) factor alone leaves the vector
//! (e1, e2) at constant distance 1/sqrt(2). A compact two-block example
//! shows the central-character splitting agreeing with the global
//! verdict.

use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;
use universal_subspaces::lie::GroupSpec;
use universal_subspaces::rep::subspace::Subspace;
use universal_subspaces::rep::Representation;
use universal_subspaces::universality::levi::levi_restriction_check;
use universal_subspaces::universality::normalized_orbit_distance;
use universal_subspaces::{universality_verdict, Result, SearchConfig, VerdictKind};

use crate::commands::SearchOverrides;
use crate::report::{Report, TableRow};

const WITNESS_VALUE: f64 = std::f64::consts::FRAC_1_SQRT_2;
const WITNESS_TOL: f64 = 1e-4;

#[derive(Debug, Serialize)]
pub struct DemoRow {
    pub scenario: String,
    pub group: String,
    pub min_distance: f64,
    pub converged: bool,
}

impl TableRow for DemoRow {
    const HEADERS: &'static [&'static str] = &["scenario", "group", "min_distance", "converged"];
    fn record(&self) -> Vec<String> {
        vec![
            self.scenario.clone(),
            self.group.clone(),
            format!("{}", self.min_distance),
            self.converged.to_string(),
        ]
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn first_coordinate_lines(ambient: Arc<Representation>) -> Result<Subspace> {
    let e = |i: usize| {
        let mut v = DVector::from_element(4, c(0.0, 0.0));
        v[i] = c(1.0, 0.0);
        v
    };
    Subspace::basis_span(ambient, vec![e(0), e(2)], true)
}

pub fn cmd_levi_demo(overrides: &SearchOverrides) -> Result<Report<DemoRow>> {
    let cfg = overrides.apply(SearchConfig::default());
    let mut report = Report::new(
        "levi-demo",
        json!({
            "seed": cfg.seed,
            "restarts": cfg.restarts,
            "tolerance": cfg.tolerance,
            "samples": cfg.samples,
        }),
    );

    // The witness vector (e1, e2): one basis vector per block.
    let u = DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);

    // Full block group on C^4.
    let rep_g = Arc::new(Representation::defining(GroupSpec::LeviBlock));
    let v_g = first_coordinate_lines(rep_g.clone())?;
    let verdict_g = universality_verdict(&rep_g, &v_g, &cfg)?;
    let search_g = normalized_orbit_distance(&rep_g, &u, &v_g, &cfg)?;

    // The semisimple factor alone, acting diagonally.
    let rep_s = Arc::new(Representation::internal_direct_sum(vec![
        Representation::defining(GroupSpec::Su2),
        Representation::defining(GroupSpec::Su2),
    ])?);
    let v_s = first_coordinate_lines(rep_s.clone())?;
    let search_s = normalized_orbit_distance(&rep_s, &u, &v_s, &cfg)?;

    report.work.searches += 2;
    report.work.objective_evaluations +=
        search_g.objective_evaluations + search_s.objective_evaluations;
    report.rows.push(DemoRow {
        scenario: "witness under the semisimple factor".into(),
        group: rep_s.group().label(),
        min_distance: search_s.min_normalized_distance,
        converged: search_s.converged,
    });
    report.rows.push(DemoRow {
        scenario: "witness under the full block group".into(),
        group: rep_g.group().label(),
        min_distance: search_g.min_normalized_distance,
        converged: search_g.converged,
    });

    report.flag(
        "semisimple factor leaves the witness at 1/sqrt(2)",
        (search_s.min_normalized_distance - WITNESS_VALUE).abs() <= WITNESS_TOL,
    );
    if search_g.min_normalized_distance < cfg.tolerance {
        report.flag("full group moves the witness into the subspace", true);
    } else if search_g.converged {
        report.flag("full group moves the witness into the subspace", false);
    } else {
        report.budget_exhausted = true;
    }
    if !matches!(verdict_g.kind, VerdictKind::Inconclusive { .. }) {
        report.flag(
            "first-coordinate pair is universal for the block group",
            verdict_g.is_universal(),
        );
    }
    report.add_verdict("first-coordinate lines under the block group", verdict_g);

    // Compact two-block case: U(1) x SU(2) with central charges 1 and 2.
    // The subspace is a generic line in the first block plus the whole
    // second block, so the blockwise answer must match the global one.
    let twisted = Arc::new(Representation::internal_direct_sum(vec![
        Representation::central_twist(Representation::defining(GroupSpec::Su2), 1),
        Representation::central_twist(Representation::defining(GroupSpec::Su2), 2),
    ])?);
    let line = DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let e3 = DVector::from_vec(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    let e4 = DVector::from_vec(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    let v_c = Subspace::basis_span(twisted.clone(), vec![line, e3, e4], true)?;
    let global = universality_verdict(&twisted, &v_c, &cfg)?;
    let blockwise = levi_restriction_check(&twisted, &v_c, &cfg)?;
    let both_decided = !matches!(global.kind, VerdictKind::Inconclusive { .. })
        && !blockwise
            .blocks
            .iter()
            .any(|b| matches!(b.verdict.kind, VerdictKind::Inconclusive { .. }));
    if both_decided {
        report.flag(
            "blockwise and global verdicts agree on the compact case",
            blockwise.overall_universal == global.is_universal(),
        );
    }
    report.add_verdict("compact two-block case, global search", global);
    for block in blockwise.blocks {
        report.add_verdict(
            format!("compact block with central weight {:?}", block.central_weight),
            block.verdict,
        );
    }
    Ok(report)
}
