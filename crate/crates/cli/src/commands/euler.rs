//! Euler characteristics of quotients beside the localization count of
//! fixed points, with the exact rank predicate as a third opinion.
//! Everything here is exact arithmetic; no search runs.

use serde::Serialize;
use serde_json::json;
use universal_subspaces::lie::roots::{build_root_system, Weight};
use universal_subspaces::lie::GroupSpec;
use universal_subspaces::obstruction::{
    euler_characteristic_quotient, localization_number, SubgroupDescriptor,
};
use universal_subspaces::subalgebra::{
    diagonal_su2_in_su2_squared, full_subalgebra, is_maximal_rank, maximal_torus_subalgebra,
    su2_factor_block, u2_block_in_su3, SubalgebraSpec,
};
use universal_subspaces::{Error, Result};

use crate::report::{Report, TableRow};

#[derive(Debug, Serialize)]
pub struct EulerRow {
    pub group: String,
    pub subgroup: String,
    pub rank: usize,
    pub weyl_order: u64,
    pub components: u64,
    pub chi: i64,
    pub maximal_rank: bool,
    /// Signed fixed-point count, where the tangent-weight multiset is
    /// defined (torus quotients).
    pub localization: Option<i64>,
}

impl TableRow for EulerRow {
    const HEADERS: &'static [&'static str] = &[
        "group",
        "subgroup",
        "rank",
        "weyl_order",
        "components",
        "chi",
        "maximal_rank",
        "localization",
    ];
    fn record(&self) -> Vec<String> {
        vec![
            self.group.clone(),
            self.subgroup.clone(),
            self.rank.to_string(),
            self.weyl_order.to_string(),
            self.components.to_string(),
            self.chi.to_string(),
            self.maximal_rank.to_string(),
            self.localization.map(|l| l.to_string()).unwrap_or_default(),
        ]
    }
}

pub fn parse_group(s: &str) -> Result<GroupSpec> {
    match s {
        "su2" => Ok(GroupSpec::Su2),
        "su3" => Ok(GroupSpec::Su3),
        "su2xsu2" => Ok(GroupSpec::product(vec![GroupSpec::Su2, GroupSpec::Su2])),
        other => Err(Error::Config(format!(
            "unknown group {other:?} (expected su2, su3, or su2xsu2)"
        ))),
    }
}

/// Resolve a subgroup name to its descriptor and, where the catalog has
/// one, the matching subalgebra.
fn parse_subgroup(
    g: &GroupSpec,
    s: &str,
) -> Result<(SubgroupDescriptor, Option<SubalgebraSpec>)> {
    let product = matches!(g, GroupSpec::Product(_));
    match s {
        "t" | "torus" => Ok((
            SubgroupDescriptor::maximal_torus(g),
            Some(maximal_torus_subalgebra(g)?),
        )),
        "nt" | "torus-normalizer" => Ok((
            SubgroupDescriptor::torus_normalizer(g)?,
            Some(maximal_torus_subalgebra(g)?),
        )),
        "full" => Ok((
            SubgroupDescriptor::whole_group(g)?,
            Some(full_subalgebra(g)?),
        )),
        "u2" if matches!(g, GroupSpec::Su3) => Ok((
            SubgroupDescriptor::u2_block_in_su3(),
            Some(u2_block_in_su3()?),
        )),
        "diagonal-su2" if product => Ok((
            SubgroupDescriptor::diagonal_su2_in_su2_squared(),
            Some(diagonal_su2_in_su2_squared()?),
        )),
        "factor1" if product => Ok((
            SubgroupDescriptor {
                label: "SU(2) x 1".into(),
                rank: 1,
                weyl_order_identity_component: 2,
                component_count: 1,
            },
            Some(su2_factor_block(0)?),
        )),
        "factor2" if product => Ok((
            SubgroupDescriptor {
                label: "1 x SU(2)".into(),
                rank: 1,
                weyl_order_identity_component: 2,
                component_count: 1,
            },
            Some(su2_factor_block(1)?),
        )),
        other => Err(Error::Config(format!(
            "unknown subgroup {other:?} for {}",
            g.label()
        ))),
    }
}

pub fn cmd_euler(group: &str, subgroup: &str) -> Result<Report<EulerRow>> {
    let g = parse_group(group)?;
    let (desc, subalgebra) = parse_subgroup(&g, subgroup)?;
    let mut report = Report::new(
        "euler",
        json!({
            "group": group,
            "subgroup": subgroup,
        }),
    );

    let euler = euler_characteristic_quotient(&g, &desc)?;

    // The tangent-weight multiset of the torus quotient is the set of
    // negative roots, one per positive root.
    let localization = if matches!(subgroup, "t" | "torus") {
        let rs = build_root_system(&g)?;
        let negatives: Vec<Weight> = rs
            .positive_roots
            .iter()
            .map(|r| r.iter().map(|&c| -c).collect())
            .collect();
        let l = localization_number(&rs, &negatives)?;
        report.flag(
            "euler characteristic equals |fixed-point count|",
            euler.chi == l.abs(),
        );
        Some(l)
    } else {
        None
    };

    if let Some(h) = &subalgebra {
        let rank_pred = is_maximal_rank(&g, h)?;
        report.flag(
            "rank predicate matches the euler characteristic",
            rank_pred == (euler.chi > 0),
        );
    }

    report.rows.push(EulerRow {
        group: g.label(),
        subgroup: desc.label.clone(),
        rank: desc.rank,
        weyl_order: desc.weyl_order_identity_component,
        components: desc.component_count,
        chi: euler.chi,
        maximal_rank: euler.maximal_rank,
        localization,
    });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_quotients_match_their_fixed_point_counts() {
        for (g, chi) in [("su2", 2), ("su3", 6), ("su2xsu2", 4)] {
            let report = cmd_euler(g, "t").unwrap();
            assert_eq!(report.exit_code(), 0);
            assert_eq!(report.rows[0].chi, chi);
            assert_eq!(report.rows[0].localization.unwrap().abs(), chi);
        }
    }

    #[test]
    fn the_torus_normalizer_quotient_has_characteristic_one() {
        let report = cmd_euler("su2", "nt").unwrap();
        assert_eq!(report.rows[0].chi, 1);
        assert_eq!(report.rows[0].components, 2);
        assert!(report.rows[0].localization.is_none());
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn rank_deficient_blocks_have_zero_characteristic() {
        let report = cmd_euler("su2xsu2", "diagonal-su2").unwrap();
        assert_eq!(report.rows[0].chi, 0);
        assert!(!report.rows[0].maximal_rank);
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn unknown_names_are_config_errors() {
        assert!(cmd_euler("so5", "t").is_err());
        assert!(cmd_euler("su2", "u2").is_err());
        assert!(cmd_euler("su3", "diagonal-su2").is_err());
    }
}
