//! Random proper hyperplanes under the upper-triangular group, decided
//! constructively: each trial builds the invariant-flag witness, checks
//! that its certified quotient-level distance really is constant along
//! the orbit, and confirms that a multi-restart search cannot beat the
//! certificate.

use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use universal_subspaces::lie::sample::sample_group_element;
use universal_subspaces::lie::GroupSpec;
use universal_subspaces::rep::subspace::Subspace;
use universal_subspaces::rep::Representation;
use universal_subspaces::universality::normalized_orbit_distance;
use universal_subspaces::universality::solvable::solvable_witness;
use universal_subspaces::{universality_verdict, Error, Result, SearchConfig};

use crate::commands::SearchOverrides;
use crate::report::{Report, TableRow};

/// Group elements drawn when checking that the certified distance is
/// constant along the orbit.
const CONSTANCY_DRAWS: usize = 1000;
const CONSTANCY_TOL: f64 = 1e-10;

#[derive(Debug, Serialize)]
pub struct TrialRow {
    pub trial: usize,
    /// Flag steps contained in the hyperplane before the witness
    /// direction (0 for a generic hyperplane).
    pub depth: usize,
    pub certificate: f64,
    /// Largest deviation of the quotient-level distance from the
    /// certificate over the sampled orbit.
    pub constancy_spread: f64,
    /// Best distance a multi-restart search found from the witness.
    pub search_min: f64,
}

impl TableRow for TrialRow {
    const HEADERS: &'static [&'static str] = &[
        "trial",
        "depth",
        "certificate",
        "constancy_spread",
        "search_min",
    ];
    fn record(&self) -> Vec<String> {
        vec![
            self.trial.to_string(),
            self.depth.to_string(),
            format!("{}", self.certificate),
            format!("{}", self.constancy_spread),
            format!("{}", self.search_min),
        ]
    }
}

fn complex_dot(a: &DVector<Complex64>, b: &DVector<Complex64>) -> Complex64 {
    a.dotc(b)
}

/// Orthonormal basis of the orthogonal complement of `w`.
fn hyperplane_basis(w: &DVector<Complex64>) -> Vec<DVector<Complex64>> {
    let n = w.len();
    let mut basis: Vec<DVector<Complex64>> = vec![w / Complex64::new(w.norm(), 0.0)];
    for i in 0..n {
        let mut e = DVector::from_element(n, Complex64::new(0.0, 0.0));
        e[i] = Complex64::new(1.0, 0.0);
        for b in &basis {
            let coef = complex_dot(b, &e);
            e -= b * coef;
        }
        if e.norm() > 1e-9 {
            let norm = e.norm();
            basis.push(e / Complex64::new(norm, 0.0));
        }
        if basis.len() == n {
            break;
        }
    }
    basis.remove(0);
    basis
}

fn random_normal(n: usize, rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    loop {
        let w = DVector::from_iterator(
            n,
            (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))),
        );
        if w.norm() > 1e-3 {
            return w;
        }
    }
}

pub fn cmd_solvable(
    size: usize,
    trials: usize,
    overrides: &SearchOverrides,
) -> Result<Report<TrialRow>> {
    if !(2..=6).contains(&size) {
        return Err(Error::Config(format!(
            "matrix size {size} outside the supported range 2..=6"
        )));
    }
    if trials == 0 || trials > 500 {
        return Err(Error::Config(format!(
            "trial count {trials} outside the supported range 1..=500"
        )));
    }
    let cfg = overrides.apply(SearchConfig::default());
    let mut report = Report::new(
        "solvable",
        json!({
            "size": size,
            "trials": trials,
            "seed": cfg.seed,
            "restarts": cfg.restarts,
            "tolerance": cfg.tolerance,
        }),
    );

    let group = GroupSpec::UpperTriangular(size);
    let rep = Arc::new(Representation::defining(group.clone()));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    for trial in 0..trials {
        let w = random_normal(size, &mut rng);
        let basis = hyperplane_basis(&w);
        let v = Subspace::basis_span(rep.clone(), basis.clone(), true)?;
        let verdict = universality_verdict(&rep, &v, &cfg)?;
        let witness = solvable_witness(&rep, &v)?;
        report.work.certificates += 1;

        // The certificate lives at the quotient by the deepest flag step
        // still inside the hyperplane; project that step away before
        // measuring.
        let prefix: &[DVector<Complex64>] = if witness.depth == 0 {
            &[]
        } else {
            &witness.flag.filtration[witness.depth - 1]
        };
        let quotient = |x: &DVector<Complex64>| {
            let mut y = x.clone();
            for f in prefix {
                let coef = complex_dot(f, &y);
                y -= f * coef;
            }
            y
        };
        let v_quotient = if prefix.is_empty() {
            v.clone()
        } else {
            let mut spanners = Vec::new();
            for b in &basis {
                let q = quotient(b);
                if q.norm() > 1e-9 {
                    spanners.push(q);
                }
            }
            Subspace::basis_span(rep.clone(), spanners, true)?
        };

        let mut spread: f64 = 0.0;
        for _ in 0..CONSTANCY_DRAWS {
            let g = sample_group_element(&group, &mut rng)?;
            let moved = quotient(&rep.apply(&g, &witness.witness)?);
            let d = v_quotient.normalized_distance(&moved);
            spread = spread.max((d - witness.certificate).abs());
        }

        let search = normalized_orbit_distance(&rep, &witness.witness, &v, &cfg)?;
        report.work.searches += 1;
        report.work.objective_evaluations += search.objective_evaluations;

        report.flag(
            format!("trial {trial}: witness carries a positive certificate"),
            verdict.is_not_universal() && witness.certificate > 0.0,
        );
        report.flag(
            format!("trial {trial}: certified distance is constant along the orbit"),
            spread <= CONSTANCY_TOL,
        );
        report.flag(
            format!("trial {trial}: search cannot beat the certificate"),
            search.min_normalized_distance >= witness.certificate - cfg.tolerance,
        );

        report.rows.push(TrialRow {
            trial,
            depth: witness.depth,
            certificate: witness.certificate,
            constancy_spread: spread,
            search_min: search.min_normalized_distance,
        });
        report.add_verdict(format!("trial {trial}: random hyperplane"), verdict);
    }
    Ok(report)
}
