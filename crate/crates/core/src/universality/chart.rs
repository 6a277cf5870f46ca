//! Local parametrizations of the catalog groups for the orbit search.
//!
//! Each restart owns a chart: a smooth map from a box of real parameters
//! onto (a neighborhood in) the group. Compact groups use global charts
//! (unit quaternions for SU(2), torus angles, a base point times an
//! exponential for SU(3)); noncompact groups are searched over bounded
//! parameter boxes, matching the reference boxes of the samplers.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::lie::sample::{sample_group_element, SOLVABLE_DIAG_RANGE, SOLVABLE_OFFDIAG_BOUND};
use crate::lie::{exp_matrix, standard_algebra_basis, GroupElement, GroupSpec};

/// Half-width of the parameter box in the exponential chart of a
/// complexified group.
const COMPLEXIFIED_BOX: f64 = 1.2;
/// Half-width of the coefficient box for the B part of the block
/// upper-triangular group [[A, AB], [0, A]].
const LEVI_B_BOX: f64 = 3.0;

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

enum ChartKind {
    /// Four real parameters, normalized to a unit quaternion.
    Quaternion,
    /// One angle per circle factor.
    TorusAngles { k: usize },
    /// g = base * exp(sum x_i B_i), parameters clamped to a box.
    BaseExp {
        base: DMatrix<Complex64>,
        basis: Vec<DMatrix<Complex64>>,
        half_width: f64,
    },
    /// Upper-triangular matrices: (re, im) per entry, diagonal moduli
    /// clamped to the solvable reference range, off-diagonal entries to
    /// the reference box.
    UpperTri { n: usize },
    /// Quaternion for A plus a box for B in [[A, AB], [0, A]].
    LeviBlock,
    /// Concatenation of factor charts.
    Product { parts: Vec<GroupChart> },
}

/// A per-restart parametrization of one catalog group.
pub(crate) struct GroupChart {
    spec: GroupSpec,
    kind: ChartKind,
    first_restart: bool,
}

fn quaternion_matrix(x: &[f64]) -> DMatrix<Complex64> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let (a, b, c, d) = if norm < 1e-9 {
        (1.0, 0.0, 0.0, 0.0)
    } else {
        (x[0] / norm, x[1] / norm, x[2] / norm, x[3] / norm)
    };
    DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(a, b),
            Complex64::new(c, d),
            Complex64::new(-c, d),
            Complex64::new(a, -b),
        ],
    )
}

impl GroupChart {
    /// Builds the chart for one restart. Restart 0 starts at the identity;
    /// later restarts draw their base points / initial parameters from the
    /// given stream.
    pub(crate) fn new(spec: &GroupSpec, rng: &mut ChaCha8Rng, restart: usize) -> Result<GroupChart> {
        let first = restart == 0;
        let kind = match spec {
            GroupSpec::Su2 => ChartKind::Quaternion,
            GroupSpec::Torus(k) => ChartKind::TorusAngles { k: *k },
            GroupSpec::Su3 => {
                let base = if first {
                    DMatrix::identity(3, 3)
                } else {
                    sample_group_element(spec, rng)?.matrix().clone()
                };
                let basis = standard_algebra_basis(spec)?
                    .iter()
                    .map(|q| q.to_complex())
                    .collect();
                ChartKind::BaseExp {
                    base,
                    basis,
                    half_width: std::f64::consts::PI,
                }
            }
            GroupSpec::Complexified(_) => {
                let base = if first {
                    let n = spec.model_dim();
                    DMatrix::identity(n, n)
                } else {
                    sample_group_element(spec, rng)?.matrix().clone()
                };
                let basis = standard_algebra_basis(spec)?
                    .iter()
                    .map(|q| q.to_complex())
                    .collect();
                ChartKind::BaseExp {
                    base,
                    basis,
                    half_width: COMPLEXIFIED_BOX,
                }
            }
            GroupSpec::UpperTriangular(n) => ChartKind::UpperTri { n: *n },
            GroupSpec::LeviBlock => ChartKind::LeviBlock,
            GroupSpec::Product(fs) => {
                let parts = fs
                    .iter()
                    .map(|f| GroupChart::new(f, rng, restart))
                    .collect::<Result<Vec<_>>>()?;
                ChartKind::Product { parts }
            }
        };
        Ok(GroupChart {
            spec: spec.clone(),
            kind,
            first_restart: first,
        })
    }

    pub(crate) fn dim(&self) -> usize {
        match &self.kind {
            ChartKind::Quaternion => 4,
            ChartKind::TorusAngles { k } => *k,
            ChartKind::BaseExp { basis, .. } => basis.len(),
            ChartKind::UpperTri { n } => n * n + n,
            ChartKind::LeviBlock => 12,
            ChartKind::Product { parts } => parts.iter().map(|p| p.dim()).sum(),
        }
    }

    /// Initial parameter vector (identity for the first restart, random
    /// otherwise).
    pub(crate) fn initial(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        match &self.kind {
            ChartKind::Quaternion => {
                if self.first_restart {
                    vec![1.0, 0.0, 0.0, 0.0]
                } else {
                    let mut q: Vec<f64> = (0..4).map(|_| gaussian(rng)).collect();
                    let n = q.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-9);
                    for v in q.iter_mut() {
                        *v /= n;
                    }
                    q
                }
            }
            ChartKind::TorusAngles { k } => {
                if self.first_restart {
                    vec![0.0; *k]
                } else {
                    (0..*k)
                        .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
                        .collect()
                }
            }
            ChartKind::BaseExp { basis, .. } => vec![0.0; basis.len()],
            ChartKind::UpperTri { n } => {
                let mut x = Vec::with_capacity(n * n + n);
                for _ in 0..*n {
                    if self.first_restart {
                        x.push(1.0);
                        x.push(0.0);
                    } else {
                        let modulus = rng.gen_range(0.6..1.8);
                        let phase = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
                        x.push(modulus * phase.cos());
                        x.push(modulus * phase.sin());
                    }
                }
                let offdiag = n * (n - 1) / 2;
                for _ in 0..(2 * offdiag) {
                    if self.first_restart {
                        x.push(0.0);
                    } else {
                        x.push(rng.gen_range(-0.4..0.4));
                    }
                }
                x
            }
            ChartKind::LeviBlock => {
                let mut x = if self.first_restart {
                    vec![1.0, 0.0, 0.0, 0.0]
                } else {
                    let mut q: Vec<f64> = (0..4).map(|_| gaussian(rng)).collect();
                    let n = q.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-9);
                    for v in q.iter_mut() {
                        *v /= n;
                    }
                    q
                };
                for _ in 0..8 {
                    if self.first_restart {
                        x.push(0.0);
                    } else {
                        x.push(rng.gen_range(-1.0..1.0));
                    }
                }
                x
            }
            ChartKind::Product { parts } => {
                let mut x = Vec::with_capacity(self.dim());
                for p in parts {
                    x.extend(p.initial(rng));
                }
                x
            }
        }
    }

    /// Group matrix at the (clamped) parameter point.
    fn matrix(&self, x: &[f64]) -> DMatrix<Complex64> {
        match &self.kind {
            ChartKind::Quaternion => quaternion_matrix(x),
            ChartKind::TorusAngles { k } => {
                let diag =
                    nalgebra::DVector::from_fn(*k, |j, _| Complex64::from_polar(1.0, x[j]));
                DMatrix::from_diagonal(&diag)
            }
            ChartKind::BaseExp {
                base,
                basis,
                half_width,
            } => {
                let n = base.nrows();
                let mut alg = DMatrix::<Complex64>::zeros(n, n);
                for (v, b) in x.iter().zip(basis) {
                    let c = v.clamp(-half_width, *half_width);
                    alg += b * Complex64::new(c, 0.0);
                }
                base * exp_matrix(&alg)
            }
            ChartKind::UpperTri { n } => {
                let n = *n;
                let mut m = DMatrix::<Complex64>::zeros(n, n);
                for j in 0..n {
                    let mut z = Complex64::new(x[2 * j], x[2 * j + 1]);
                    let modulus = z.norm();
                    if modulus < SOLVABLE_DIAG_RANGE.0 {
                        z = if modulus < 1e-12 {
                            Complex64::new(SOLVABLE_DIAG_RANGE.0, 0.0)
                        } else {
                            z * (SOLVABLE_DIAG_RANGE.0 / modulus)
                        };
                    } else if modulus > SOLVABLE_DIAG_RANGE.1 {
                        z *= SOLVABLE_DIAG_RANGE.1 / modulus;
                    }
                    m[(j, j)] = z;
                }
                let mut idx = 2 * n;
                for r in 0..n {
                    for c in (r + 1)..n {
                        let re = x[idx].clamp(-SOLVABLE_OFFDIAG_BOUND, SOLVABLE_OFFDIAG_BOUND);
                        let im = x[idx + 1].clamp(-SOLVABLE_OFFDIAG_BOUND, SOLVABLE_OFFDIAG_BOUND);
                        m[(r, c)] = Complex64::new(re, im);
                        idx += 2;
                    }
                }
                m
            }
            ChartKind::LeviBlock => {
                let a = quaternion_matrix(&x[0..4]);
                let mut b = DMatrix::<Complex64>::zeros(2, 2);
                for (e, pair) in x[4..12].chunks(2).enumerate() {
                    b[(e / 2, e % 2)] = Complex64::new(
                        pair[0].clamp(-LEVI_B_BOX, LEVI_B_BOX),
                        pair[1].clamp(-LEVI_B_BOX, LEVI_B_BOX),
                    );
                }
                let ab = &a * &b;
                let mut m = DMatrix::<Complex64>::zeros(4, 4);
                for r in 0..2 {
                    for c in 0..2 {
                        m[(r, c)] = a[(r, c)];
                        m[(r, c + 2)] = ab[(r, c)];
                        m[(r + 2, c + 2)] = a[(r, c)];
                    }
                }
                m
            }
            ChartKind::Product { parts } => {
                let offsets = self.spec.factor_offsets();
                let total = self.spec.model_dim();
                let mut m = DMatrix::<Complex64>::zeros(total, total);
                let mut cursor = 0usize;
                for (p, &off) in parts.iter().zip(&offsets) {
                    let sub = p.matrix(&x[cursor..cursor + p.dim()]);
                    for r in 0..sub.nrows() {
                        for c in 0..sub.ncols() {
                            m[(off + r, off + c)] = sub[(r, c)];
                        }
                    }
                    cursor += p.dim();
                }
                m
            }
        }
    }

    pub(crate) fn element(&self, x: &[f64]) -> GroupElement {
        GroupElement::trusted(self.matrix(x), self.spec.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::MEMBERSHIP_TOL;
    use rand::SeedableRng;

    #[test]
    fn charts_produce_valid_group_elements() {
        let specs = vec![
            GroupSpec::Su2,
            GroupSpec::Su3,
            GroupSpec::Torus(3),
            GroupSpec::product(vec![GroupSpec::Torus(1), GroupSpec::Su2]),
            GroupSpec::UpperTriangular(3),
            GroupSpec::complexified(GroupSpec::Su2).unwrap(),
            GroupSpec::LeviBlock,
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for spec in specs {
            for restart in 0..4 {
                let chart = GroupChart::new(&spec, &mut rng, restart).unwrap();
                let mut x = chart.initial(&mut rng);
                let g = chart.element(&x);
                assert_eq!(g.parent(), &spec);
                if restart == 0 {
                    let n = spec.model_dim();
                    let id = DMatrix::<Complex64>::identity(n, n);
                    assert!((g.matrix() - id).norm() < MEMBERSHIP_TOL, "{}", spec.label());
                }
                // Perturbed points stay on the group.
                for v in x.iter_mut() {
                    *v += 0.37;
                }
                let g2 = chart.element(&x);
                assert!(crate::lie::GroupElement::new(g2.matrix().clone(), spec.clone()).is_ok());
            }
        }
    }

    #[test]
    fn upper_triangular_chart_respects_the_reference_box() {
        let spec = GroupSpec::UpperTriangular(2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let chart = GroupChart::new(&spec, &mut rng, 3).unwrap();
        let x = vec![10.0, 10.0, 0.001, 0.0, 9.0, -9.0];
        let m = chart.element(&x).matrix().clone();
        let d0 = m[(0, 0)].norm();
        let d1 = m[(1, 1)].norm();
        assert!((SOLVABLE_DIAG_RANGE.0 - 1e-12..=SOLVABLE_DIAG_RANGE.1 + 1e-12).contains(&d0));
        assert!((SOLVABLE_DIAG_RANGE.0 - 1e-12..=SOLVABLE_DIAG_RANGE.1 + 1e-12).contains(&d1));
        assert!(m[(0, 1)].re.abs() <= SOLVABLE_OFFDIAG_BOUND + 1e-12);
        assert!(m[(0, 1)].im.abs() <= SOLVABLE_OFFDIAG_BOUND + 1e-12);
    }
}
