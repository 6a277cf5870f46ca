//! Multi-start descent for the normalized orbit-to-subspace distance.
//!
//! The objective is d(g) = dist(rho(g)u, V) / |rho(g)u| in the
//! representation's invariant form. It is scale invariant in u and
//! constant along V-preserving symmetries, so minimizing over the group
//! answers "does the orbit of u meet V" quantitatively. Each restart runs
//! a central-difference gradient descent with step halving inside the
//! group chart; restarts are processed in fixed-size parallel chunks and
//! reduced by minimum, which keeps results independent of thread timing.

use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lie::GroupElement;
use crate::rep::subspace::Subspace;
use crate::rep::Representation;
use crate::universality::chart::GroupChart;
use crate::universality::SearchConfig;

/// Deterministic stream split: one seed per (base, purpose, index).
pub(crate) fn derive_seed(base: u64, tag: &str, index: u64) -> u64 {
    let mut h = base ^ 0x9E37_79B9_7F4A_7C15;
    for b in tag.as_bytes() {
        h = (h ^ (*b as u64)).wrapping_mul(0x0100_0000_01B3);
        h = h.rotate_left(23);
    }
    h ^= index.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    h ^= h >> 30;
    h = h.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    h ^= h >> 27;
    h = h.wrapping_mul(0x94D0_49BB_1331_11EB);
    h ^= h >> 31;
    h
}

/// Outcome of one multi-start minimization.
#[derive(Debug, Clone)]
pub struct OrbitSearchResult {
    /// Smallest normalized distance found, in [0, 1].
    pub min_normalized_distance: f64,
    /// Group element achieving it.
    pub argmin: GroupElement,
    /// Restarts actually run (early stopping may cut the schedule short).
    pub restarts_used: usize,
    /// Best-so-far objective values per restart; non-increasing within
    /// each restart.
    pub trace: Vec<Vec<f64>>,
    /// True when the winning restart terminated by the gradient or
    /// early-distance criterion rather than by exhausting its iteration
    /// budget.
    pub converged: bool,
    /// Total objective evaluations across all restarts that ran.
    pub objective_evaluations: u64,
}

struct RestartOutcome {
    best: f64,
    best_x: Vec<f64>,
    chart: GroupChart,
    trace: Vec<f64>,
    converged: bool,
    evals: u64,
}

fn run_restart(
    rep: &Representation,
    u: &DVector<Complex64>,
    v: &Subspace,
    cfg: &SearchConfig,
    restart: usize,
) -> Result<RestartOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, "orbit-restart", restart as u64));
    let chart = GroupChart::new(rep.group(), &mut rng, restart)?;
    let mut x = chart.initial(&mut rng);
    let mut evals: u64 = 0;
    // The squared distance is minimized internally: the normalized
    // distance itself is conical at its zero set, where finite
    // differences with a fixed step lose the gradient, while its square
    // stays smooth all the way down. Reported values are unsquared.
    let objective = |x: &[f64], evals: &mut u64| -> f64 {
        *evals += 1;
        let g = chart.element(x);
        let moved = rep
            .apply(&g, u)
            .expect("chart elements act within their own representation");
        let d = v.normalized_distance(&moved);
        d * d
    };
    let mut f = objective(&x, &mut evals);
    let mut trace = vec![f.sqrt()];
    let mut step = 0.25;
    let mut converged = false;
    let dim = chart.dim();
    let mut grad = vec![0.0; dim];
    let target = 0.25 * cfg.tolerance * cfg.tolerance;
    for _ in 0..cfg.max_iters {
        if f < target {
            converged = true;
            break;
        }
        // Central-difference gradient in the chart parameters.
        let mut gnorm2 = 0.0;
        for i in 0..dim {
            let h = cfg.fd_step;
            let mut xp = x.clone();
            xp[i] += h;
            let mut xm = x.clone();
            xm[i] -= h;
            let d = (objective(&xp, &mut evals) - objective(&xm, &mut evals)) / (2.0 * h);
            grad[i] = d;
            gnorm2 += d * d;
        }
        let gnorm = gnorm2.sqrt();
        if gnorm < cfg.grad_tol {
            converged = true;
            break;
        }
        // Step halving along the negative gradient.
        let mut s = step;
        let mut improved = false;
        for _ in 0..40 {
            let trial: Vec<f64> = x
                .iter()
                .zip(&grad)
                .map(|(xi, gi)| xi - s * gi / gnorm)
                .collect();
            let ft = objective(&trial, &mut evals);
            if ft < f - 1e-18 {
                x = trial;
                f = ft;
                trace.push(f.sqrt());
                step = (s * 1.7).min(1.0);
                improved = true;
                break;
            }
            s *= 0.5;
            if s < 1e-12 {
                break;
            }
        }
        if !improved {
            // No descent direction at this resolution: local minimum.
            converged = true;
            break;
        }
    }
    Ok(RestartOutcome {
        best: f.max(0.0).sqrt(),
        best_x: x,
        chart,
        trace,
        converged,
        evals,
    })
}

/// Minimizes dist(rho(g)u, V)/|rho(g)u| over the group by multi-start
/// local descent. Never returns silently on an exhausted budget: the
/// `converged` flag is false when the winning restart ran out of
/// iterations.
pub fn normalized_orbit_distance(
    rep: &Arc<Representation>,
    u: &DVector<Complex64>,
    v: &Subspace,
    cfg: &SearchConfig,
) -> Result<OrbitSearchResult> {
    if rep.group() != v.ambient().group() || rep.dimension() != v.ambient().dimension() {
        return Err(Error::Config(
            "representation and subspace ambient disagree".into(),
        ));
    }
    if u.len() != rep.dimension() {
        return Err(Error::Config(format!(
            "test vector of length {} in a representation of dimension {}",
            u.len(),
            rep.dimension()
        )));
    }
    if rep.norm(u) == 0.0 {
        return Err(Error::ZeroVector);
    }
    let restarts = cfg.restarts.max(1);
    // Fixed-size chunks keep early stopping deterministic under rayon.
    const CHUNK: usize = 8;
    let mut outcomes: Vec<RestartOutcome> = Vec::with_capacity(restarts);
    let mut stop = false;
    let mut start = 0usize;
    while start < restarts && !stop {
        let end = (start + CHUNK).min(restarts);
        let chunk: Vec<Result<RestartOutcome>> = (start..end)
            .into_par_iter()
            .map(|r| run_restart(rep, u, v, cfg, r))
            .collect();
        for item in chunk {
            let out = item?;
            if cfg.early_stop && out.best < 0.5 * cfg.tolerance {
                stop = true;
            }
            outcomes.push(out);
        }
        start = end;
    }
    let mut best_idx = 0usize;
    for (i, o) in outcomes.iter().enumerate() {
        if o.best < outcomes[best_idx].best {
            best_idx = i;
        }
    }
    let evals = outcomes.iter().map(|o| o.evals).sum();
    let trace = outcomes.iter().map(|o| o.trace.clone()).collect();
    let restarts_used = outcomes.len();
    let winner = &outcomes[best_idx];
    Ok(OrbitSearchResult {
        min_normalized_distance: winner.best.min(1.0),
        argmin: winner.chart.element(&winner.best_x),
        restarts_used,
        trace,
        converged: winner.converged,
        objective_evaluations: evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::Representation;

    fn light_cfg() -> SearchConfig {
        SearchConfig {
            restarts: 8,
            max_iters: 200,
            samples: 4,
            ..SearchConfig::default()
        }
    }

    #[test]
    fn vector_already_in_subspace_has_zero_distance_at_identity() {
        let rep = Arc::new(Representation::su2_irrep(4));
        let v = Subspace::weight_complement(rep.clone(), [2usize].into_iter().collect(), true)
            .unwrap();
        let mut u = DVector::from_element(5, Complex64::new(0.0, 0.0));
        u[0] = Complex64::new(1.0, 0.0);
        u[4] = Complex64::new(0.5, -0.25);
        let r = normalized_orbit_distance(&rep, &u, &v, &light_cfg()).unwrap();
        assert!(r.min_normalized_distance < 1e-12);
        assert!(r.converged);
    }

    #[test]
    fn middle_weight_line_is_reached_from_random_vectors() {
        // Degree-4 module, drop the middle monomial coordinate: the
        // orbit of a generic vector still meets the hyperplane.
        let rep = Arc::new(Representation::su2_irrep(4));
        let v = Subspace::weight_complement(rep.clone(), [2usize].into_iter().collect(), true)
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5150);
        use rand_distr::{Distribution, StandardNormal};
        for _ in 0..3 {
            let u = DVector::from_fn(5, |_, _| {
                Complex64::new(
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                )
            });
            let r = normalized_orbit_distance(&rep, &u, &v, &light_cfg()).unwrap();
            assert!(
                r.min_normalized_distance < 1e-6,
                "distance {}",
                r.min_normalized_distance
            );
        }
    }

    #[test]
    fn trivial_torus_action_keeps_distance_constant() {
        // The adjoint action of a torus is trivial (two zero characters
        // here), so orbits are points and the minimum equals the starting
        // distance.
        let rep = Arc::new(
            Representation::diagonal_characters(2, vec![vec![0, 0], vec![0, 0]]).unwrap(),
        );
        let v = Subspace::weight_complement(rep.clone(), [0usize].into_iter().collect(), true)
            .unwrap();
        let u = DVector::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]);
        let r = normalized_orbit_distance(&rep, &u, &v, &light_cfg()).unwrap();
        let expected = v.normalized_distance(&u);
        assert!((r.min_normalized_distance - expected).abs() < 1e-9);
    }

    #[test]
    fn objective_is_scale_invariant_at_identical_group_elements() {
        let rep = Arc::new(Representation::su2_irrep(3));
        let v = Subspace::weight_complement(rep.clone(), [1usize].into_iter().collect(), true)
            .unwrap();
        let u = DVector::from_vec(vec![
            Complex64::new(0.3, -0.1),
            Complex64::new(1.0, 0.5),
            Complex64::new(-0.2, 0.8),
            Complex64::new(0.05, 0.0),
        ]);
        let lambda = Complex64::new(-1.75, 2.5);
        let scaled = u.map(|e| e * lambda);
        let g = crate::lie::sample::haar_su2(&mut ChaCha8Rng::seed_from_u64(33));
        let a = v.normalized_distance(&rep.apply(&g, &u).unwrap());
        let b = v.normalized_distance(&rep.apply(&g, &scaled).unwrap());
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn minima_are_orbit_invariant() {
        let rep = Arc::new(Representation::su2_irrep(2));
        let v = Subspace::weight_complement(rep.clone(), [1usize].into_iter().collect(), true)
            .unwrap();
        let u = DVector::from_vec(vec![
            Complex64::new(0.9, 0.2),
            Complex64::new(-0.3, 0.4),
            Complex64::new(0.1, -0.6),
        ]);
        let g0 = crate::lie::sample::haar_su2(&mut ChaCha8Rng::seed_from_u64(77));
        let moved = rep.apply(&g0, &u).unwrap();
        let cfg = light_cfg();
        let a = normalized_orbit_distance(&rep, &u, &v, &cfg).unwrap();
        let b = normalized_orbit_distance(&rep, &moved, &v, &cfg).unwrap();
        assert!((a.min_normalized_distance - b.min_normalized_distance).abs() < 2.0 * cfg.tolerance);
    }

    #[test]
    fn traces_never_increase_and_zero_vector_is_rejected() {
        let rep = Arc::new(Representation::su2_irrep(2));
        let v = Subspace::weight_complement(rep.clone(), [0usize].into_iter().collect(), true)
            .unwrap();
        let u = DVector::from_vec(vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.2, 0.1),
            Complex64::new(0.0, -0.4),
        ]);
        let mut cfg = light_cfg();
        cfg.early_stop = false;
        let r = normalized_orbit_distance(&rep, &u, &v, &cfg).unwrap();
        for t in &r.trace {
            for w in t.windows(2) {
                assert!(w[1] <= w[0] + 1e-15);
            }
        }
        assert_eq!(r.restarts_used, cfg.restarts);
        let z = DVector::from_element(3, Complex64::new(0.0, 0.0));
        assert!(matches!(
            normalized_orbit_distance(&rep, &z, &v, &cfg),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn identical_configs_give_identical_results() {
        let rep = Arc::new(Representation::su2_irrep(3));
        let v = Subspace::weight_complement(rep.clone(), [1usize].into_iter().collect(), true)
            .unwrap();
        let u = DVector::from_vec(vec![
            Complex64::new(0.4, 0.3),
            Complex64::new(-0.2, 1.0),
            Complex64::new(0.7, -0.5),
            Complex64::new(0.0, 0.2),
        ]);
        let cfg = light_cfg();
        let a = normalized_orbit_distance(&rep, &u, &v, &cfg).unwrap();
        let b = normalized_orbit_distance(&rep, &u, &v, &cfg).unwrap();
        assert_eq!(a.min_normalized_distance, b.min_normalized_distance);
        assert_eq!(a.objective_evaluations, b.objective_evaluations);
        assert_eq!(a.argmin.matrix(), b.argmin.matrix());
    }
}
