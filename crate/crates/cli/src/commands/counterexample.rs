//! The product case where the top obstruction class dies for parity
//! reasons yet the subspace is universal anyway: SU(2) x SU(2) acting on
//! two copies of its complexified algebra, against the sum of a Borel in
//! the first copy and the zero-diagonal plane in the second.

use std::sync::Arc;

use serde::Serialize;
use serde_json::json;
use universal_subspaces::lie::GroupSpec;
use universal_subspaces::obstruction::{
    factor_report_data, kunneth_top_chern, KunnethFactor, LineBundle, ObstructionReport,
};
use universal_subspaces::rep::subspace::Subspace;
use universal_subspaces::rep::Representation;
use universal_subspaces::{universality_verdict, Result, SearchConfig, VerdictKind};

use crate::commands::{bundle_label, space_label, SearchOverrides};
use crate::report::{verdict_distance, verdict_label, Report, TableRow};

#[derive(Debug, Serialize)]
pub struct CaseRow {
    pub case: String,
    pub base_space: String,
    pub bundle: String,
    pub class: String,
    pub vanishes: bool,
}

impl TableRow for CaseRow {
    const HEADERS: &'static [&'static str] = &["case", "base_space", "bundle", "class", "vanishes"];
    fn record(&self) -> Vec<String> {
        vec![
            self.case.clone(),
            self.base_space.clone(),
            self.bundle.clone(),
            self.class.clone(),
            self.vanishes.to_string(),
        ]
    }
}

fn obstruction_from(factors: &[KunnethFactor]) -> Result<ObstructionReport> {
    let class = kunneth_top_chern(factors)?;
    let (spaces, bundles) = factor_report_data(factors);
    Ok(ObstructionReport {
        base_space: spaces,
        bundle: bundles,
        vanishes: class.is_zero(),
        class_value: class,
    })
}

pub fn cmd_counterexample(overrides: &SearchOverrides) -> Result<Report<CaseRow>> {
    let cfg = overrides.apply(SearchConfig::default());
    let mut report = Report::new(
        "counterexample",
        json!({
            "seed": cfg.seed,
            "restarts": cfg.restarts,
            "tolerance": cfg.tolerance,
            "samples": cfg.samples,
        }),
    );

    // The quotient over the first factor's orbit space is a degree-2
    // bundle on the sphere; over the second factor's it descends to the
    // tautological bundle on the projective plane.
    let main = [
        KunnethFactor::Sphere { c1: 2 },
        KunnethFactor::ProjectivePlane { tautological: true },
    ];
    let odd = [
        KunnethFactor::Sphere { c1: 1 },
        KunnethFactor::ProjectivePlane { tautological: true },
    ];
    let rp2_alone = [KunnethFactor::ProjectivePlane { tautological: true }];

    let cases = [
        ("borel + zero-diagonal", obstruction_from(&main)?),
        ("odd-degree sphere variant", obstruction_from(&odd)?),
        ("projective factor alone", obstruction_from(&rp2_alone)?),
    ];
    for (name, obs) in &cases {
        report.rows.push(CaseRow {
            case: name.to_string(),
            base_space: space_label(&obs.base_space),
            bundle: bundle_label(&obs.bundle),
            class: obs.class_value.to_string(),
            vanishes: obs.vanishes,
        });
        report.add_obstruction(*name, obs.clone());
    }
    let (top, odd_top, rp2_top) = (&cases[0].1, &cases[1].1, &cases[2].1);
    report.flag(
        "top class in H^4(S^2 x RP^2) vanishes",
        top.class_value.is_zero(),
    );
    report.flag(
        "sphere component has degree 2",
        matches!(top.bundle[0], LineBundle::Degree(2)),
    );
    report.flag(
        "projective component is the torsion generator",
        rp2_top.class_value.torsion_orders == vec![2] && !rp2_top.class_value.is_zero(),
    );
    report.flag("odd-degree variant obstructs", !odd_top.class_value.is_zero());

    // Numerical side: the same subspace, decided by orbit search.
    let summand = Representation::complexified_adjoint(&GroupSpec::Su2)?;
    let sum = Arc::new(Representation::external_direct_sum(vec![
        summand.clone(),
        summand,
    ])?);
    // Coordinates are (E, H, F) per factor: the Borel kills the first
    // factor's F (index 2), the zero-diagonal plane kills the second
    // factor's H (index 4).
    let v = Subspace::weight_complement(sum.clone(), [2, 4].into_iter().collect(), true)?;
    let verdict = universality_verdict(&sum, &v, &cfg)?;
    if !matches!(verdict.kind, VerdictKind::Inconclusive { .. }) {
        report.flag("subspace is universal", verdict.is_universal());
    }
    report.rows.push(CaseRow {
        case: "orbit search on borel + zero-diagonal".to_string(),
        base_space: String::new(),
        bundle: String::new(),
        class: verdict_label(&verdict.kind).to_string(),
        vanishes: verdict_distance(&verdict.kind) < cfg.tolerance,
    });
    report.add_verdict("borel + zero-diagonal in sl2 + sl2", verdict);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_even_class_dies_and_the_subspace_is_still_universal() {
        let overrides = SearchOverrides {
            restarts: Some(8),
            samples: Some(5),
            ..SearchOverrides::default()
        };
        let report = cmd_counterexample(&overrides).unwrap();
        assert_eq!(report.exit_code(), 0);
        assert!(report.rows[0].vanishes);
        assert!(!report.rows[1].vanishes);
        assert!(!report.rows[2].vanishes);
        assert!(report.verdicts[0].verdict.is_universal());
        assert_eq!(report.obstructions.len(), 3);
    }
}
