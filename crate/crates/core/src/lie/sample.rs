//! Random group elements.
//!
//! Compact groups are sampled from the Haar measure: SU(2) from four
//! normalized Gaussians, SU(3) by Gram-Schmidt on a complex Ginibre matrix
//! followed by a determinant correction, tori from uniform angles. The
//! non-compact groups use bounded reference boxes: upper triangular
//! matrices with diagonal modulus in [1/2, 2] and off-diagonal parts at
//! most 1/2 in each coordinate, complexifications via the exponential of a
//! bounded Gaussian algebra element.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::lie::{exp_matrix, GroupElement, GroupSpec};

/// Bound on each off-diagonal coordinate in the solvable reference box.
pub const SOLVABLE_OFFDIAG_BOUND: f64 = 0.5;
/// Diagonal modulus range in the solvable reference box.
pub const SOLVABLE_DIAG_RANGE: (f64, f64) = (0.5, 2.0);

fn gaussian(rng: &mut impl Rng) -> f64 {
    StandardNormal.sample(rng)
}

fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

/// Haar-distributed SU(2) element from a uniform point on the unit 3-sphere:
/// (a, b, c, d) -> [[a+bi, c+di], [-c+di, a-bi]].
pub fn haar_su2(rng: &mut impl Rng) -> GroupElement {
    loop {
        let q = [gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)];
        let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        let (a, b, c, d) = (q[0] / norm, q[1] / norm, q[2] / norm, q[3] / norm);
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(a, b),
                Complex64::new(c, d),
                Complex64::new(-c, d),
                Complex64::new(a, -b),
            ],
        );
        return GroupElement::trusted(m, GroupSpec::Su2);
    }
}

/// Haar-distributed SU(3): orthonormalize a complex Ginibre matrix by
/// modified Gram-Schmidt (which makes the implicit triangular factor have a
/// real positive diagonal, so the result is Haar on U(3)), then divide by
/// the principal cube root of the determinant.
pub fn haar_su3(rng: &mut impl Rng) -> GroupElement {
    loop {
        let mut cols: Vec<DVector<Complex64>> = (0..3)
            .map(|_| DVector::from_fn(3, |_, _| complex_gaussian(rng)))
            .collect();
        let mut ok = true;
        for j in 0..3 {
            for k in 0..j {
                let proj = cols[k].dotc(&cols[j]);
                let prev = cols[k].clone();
                cols[j] -= prev * proj;
            }
            let norm = cols[j].norm();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            cols[j] /= Complex64::new(norm, 0.0);
        }
        if !ok {
            continue;
        }
        let mut u = DMatrix::<Complex64>::zeros(3, 3);
        for (j, col) in cols.iter().enumerate() {
            u.set_column(j, col);
        }
        let d = u.clone().determinant();
        let root = Complex64::from_polar(d.norm().cbrt(), d.arg() / 3.0);
        u /= root;
        return GroupElement::trusted(u, GroupSpec::Su3);
    }
}

fn sample_torus(k: usize, rng: &mut impl Rng) -> GroupElement {
    let diag = DVector::from_fn(k, |_, _| {
        Complex64::from_polar(1.0, rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
    });
    GroupElement::trusted(DMatrix::from_diagonal(&diag), GroupSpec::Torus(k))
}

fn sample_upper_triangular(n: usize, rng: &mut impl Rng) -> GroupElement {
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for r in 0..n {
        let modulus = rng.gen_range(SOLVABLE_DIAG_RANGE.0..=SOLVABLE_DIAG_RANGE.1);
        let phase = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        m[(r, r)] = Complex64::from_polar(modulus, phase);
        for c in (r + 1)..n {
            m[(r, c)] = Complex64::new(
                rng.gen_range(-SOLVABLE_OFFDIAG_BOUND..=SOLVABLE_OFFDIAG_BOUND),
                rng.gen_range(-SOLVABLE_OFFDIAG_BOUND..=SOLVABLE_OFFDIAG_BOUND),
            );
        }
    }
    GroupElement::trusted(m, GroupSpec::UpperTriangular(n))
}

fn sample_complexified(inner: &GroupSpec, rng: &mut impl Rng) -> Result<GroupElement> {
    // exp of a bounded Gaussian element of the complexified algebra.
    let n = inner.model_dim();
    let mut x = DMatrix::from_fn(n, n, |_, _| complex_gaussian(rng) * Complex64::new(0.45, 0.0));
    let tr = x.trace() / Complex64::new(n as f64, 0.0);
    for i in 0..n {
        x[(i, i)] -= tr;
    }
    let m = exp_matrix(&x);
    GroupElement::new(m, GroupSpec::complexified(inner.clone())?)
}

fn sample_levi_block(rng: &mut impl Rng) -> GroupElement {
    let a = haar_su2(rng);
    let mut b = DMatrix::<Complex64>::zeros(2, 2);
    for r in 0..2 {
        for c in 0..2 {
            b[(r, c)] = Complex64::new(
                rng.gen_range(-SOLVABLE_OFFDIAG_BOUND..=SOLVABLE_OFFDIAG_BOUND),
                rng.gen_range(-SOLVABLE_OFFDIAG_BOUND..=SOLVABLE_OFFDIAG_BOUND),
            );
        }
    }
    let ab = a.matrix() * &b;
    let mut m = DMatrix::<Complex64>::zeros(4, 4);
    for r in 0..2 {
        for c in 0..2 {
            m[(r, c)] = a.matrix()[(r, c)];
            m[(r, c + 2)] = ab[(r, c)];
            m[(r + 2, c + 2)] = a.matrix()[(r, c)];
        }
    }
    GroupElement::trusted(m, GroupSpec::LeviBlock)
}

/// Draw one element of the given group from its reference distribution.
pub fn sample_group_element(spec: &GroupSpec, rng: &mut impl Rng) -> Result<GroupElement> {
    match spec {
        GroupSpec::Su2 => Ok(haar_su2(rng)),
        GroupSpec::Su3 => Ok(haar_su3(rng)),
        GroupSpec::Torus(k) => Ok(sample_torus(*k, rng)),
        GroupSpec::Product(fs) => {
            let n = spec.model_dim();
            let offsets = spec.factor_offsets();
            let mut m = DMatrix::<Complex64>::zeros(n, n);
            for (i, f) in fs.iter().enumerate() {
                let block = sample_group_element(f, rng)?;
                let a = offsets[i];
                for r in 0..f.model_dim() {
                    for c in 0..f.model_dim() {
                        m[(a + r, a + c)] = block.matrix()[(r, c)];
                    }
                }
            }
            Ok(GroupElement::trusted(m, spec.clone()))
        }
        GroupSpec::UpperTriangular(n) => Ok(sample_upper_triangular(*n, rng)),
        GroupSpec::Complexified(inner) => sample_complexified(inner, rng),
        GroupSpec::LeviBlock => Ok(sample_levi_block(rng)),
    }
    .and_then(|g| {
        if g.matrix().iter().all(|e| e.re.is_finite() && e.im.is_finite()) {
            Ok(g)
        } else {
            Err(Error::InvalidElement {
                group: spec.label(),
                detail: "non-finite sample".into(),
            })
        }
    })
}
