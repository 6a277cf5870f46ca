//! One module per subcommand. Each command resolves its options into
//! library calls, assembles a [`Report`](crate::report::Report), and
//! returns it; the binary's entry point owns emission and exit codes.

pub mod counterexample;
pub mod euler;
pub mod levi_demo;
pub mod run;
pub mod schur;
pub mod solvable;
pub mod su2_classify;

use universal_subspaces::obstruction::{LineBundle, SpaceFactor};
use universal_subspaces::SearchConfig;

/// Search-parameter overrides shared by every subcommand.
#[derive(Debug, Clone, Default)]
pub struct SearchOverrides {
    pub seed: Option<u64>,
    pub restarts: Option<usize>,
    pub tol: Option<f64>,
    pub samples: Option<usize>,
}

impl SearchOverrides {
    /// Apply the overrides on top of a command's base configuration.
    pub fn apply(&self, mut cfg: SearchConfig) -> SearchConfig {
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(r) = self.restarts {
            cfg.restarts = r;
        }
        if let Some(t) = self.tol {
            cfg.tolerance = t;
        }
        if let Some(s) = self.samples {
            cfg.samples = s;
        }
        cfg
    }
}

pub fn space_label(factors: &[SpaceFactor]) -> String {
    factors
        .iter()
        .map(|f| match f {
            SpaceFactor::Sphere => "S^2",
            SpaceFactor::ProjectivePlane => "RP^2",
        })
        .collect::<Vec<_>>()
        .join(" x ")
}

pub fn bundle_label(bundles: &[LineBundle]) -> String {
    bundles
        .iter()
        .map(|b| match b {
            LineBundle::Degree(k) => format!("degree {k}"),
            LineBundle::TrivialComplex => "trivial".to_string(),
            LineBundle::ComplexifiedTautological => "tautological".to_string(),
        })
        .collect::<Vec<_>>()
        .join(" x ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_replace_only_what_they_carry() {
        let o = SearchOverrides {
            seed: Some(11),
            restarts: None,
            tol: Some(1e-8),
            samples: None,
        };
        let cfg = o.apply(SearchConfig::default());
        assert_eq!(cfg.seed, 11);
        assert!((cfg.tolerance - 1e-8).abs() < 1e-20);
        assert_eq!(cfg.restarts, SearchConfig::default().restarts);
    }

    #[test]
    fn labels_join_factors_in_order() {
        assert_eq!(
            space_label(&[SpaceFactor::Sphere, SpaceFactor::ProjectivePlane]),
            "S^2 x RP^2"
        );
        assert_eq!(
            bundle_label(&[LineBundle::Degree(2), LineBundle::ComplexifiedTautological]),
            "degree 2 x tautological"
        );
    }
}
