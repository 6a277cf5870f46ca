//! Matrix models of the group catalog.
//!
//! Every group in the catalog acts through a concrete matrix model: SU(2)
//! and SU(3) as special unitary matrices, tori as diagonal unitaries,
//! products as block diagonals, solvable groups as invertible upper
//! triangular matrices, complexifications as special linear groups, and one
//! block extension (a compact factor glued to a non-central radical) used
//! by the Levi demonstration. Elements carry their parent spec and are
//! validated against its structural invariants at 1e-12.

pub mod roots;
pub mod sample;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::QMatrix;

/// Membership and unitarity checks on matrix entries.
pub const MEMBERSHIP_TOL: f64 = 1e-12;
/// Algebraic identities established by floating-point computation.
pub const ALGEBRAIC_TOL: f64 = 1e-10;

/// A group in the catalog, described structurally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Su2,
    Su3,
    /// U(1)^k, k >= 1.
    Torus(usize),
    /// Finite product, acting block-diagonally; non-empty.
    Product(Vec<GroupSpec>),
    /// Invertible upper triangular n x n complex matrices, n >= 2.
    UpperTriangular(usize),
    /// Complexification; admitted for Su2 and Su3 (SL(2,C), SL(3,C)).
    Complexified(Box<GroupSpec>),
    /// Block group {[[A, AB], [0, A]] : A in SU(2), B in gl(2,C)} inside
    /// SL(4,C): a compact factor extended by a non-central radical.
    LeviBlock,
}

impl GroupSpec {
    pub fn product(factors: Vec<GroupSpec>) -> GroupSpec {
        assert!(!factors.is_empty(), "empty product");
        GroupSpec::Product(factors)
    }

    pub fn complexified(inner: GroupSpec) -> Result<GroupSpec> {
        match inner {
            GroupSpec::Su2 | GroupSpec::Su3 => Ok(GroupSpec::Complexified(Box::new(inner))),
            other => Err(Error::UnsupportedGroup(format!(
                "complexification is modeled only for SU(2) and SU(3), not {}",
                other.label()
            ))),
        }
    }

    /// Structural well-formedness of the spec itself.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Torus(k) if *k == 0 => {
                Err(Error::Config("torus must have k >= 1".into()))
            }
            GroupSpec::UpperTriangular(n) if *n < 2 => {
                Err(Error::Config("upper triangular group needs n >= 2".into()))
            }
            GroupSpec::Product(fs) => {
                if fs.is_empty() {
                    return Err(Error::Config("empty product".into()));
                }
                fs.iter().try_for_each(GroupSpec::validate)
            }
            GroupSpec::Complexified(inner) => match **inner {
                GroupSpec::Su2 | GroupSpec::Su3 => Ok(()),
                _ => Err(Error::Config(
                    "complexification is modeled only for SU(2) and SU(3)".into(),
                )),
            },
            _ => Ok(()),
        }
    }

    /// Size of the defining matrix model.
    pub fn model_dim(&self) -> usize {
        match self {
            GroupSpec::Su2 => 2,
            GroupSpec::Su3 => 3,
            GroupSpec::Torus(k) => *k,
            GroupSpec::Product(fs) => fs.iter().map(GroupSpec::model_dim).sum(),
            GroupSpec::UpperTriangular(n) => *n,
            GroupSpec::Complexified(inner) => inner.model_dim(),
            GroupSpec::LeviBlock => 4,
        }
    }

    /// Rank of a maximal torus of the compact part.
    pub fn rank(&self) -> usize {
        match self {
            GroupSpec::Su2 => 1,
            GroupSpec::Su3 => 2,
            GroupSpec::Torus(k) => *k,
            GroupSpec::Product(fs) => fs.iter().map(GroupSpec::rank).sum(),
            GroupSpec::UpperTriangular(n) => *n,
            GroupSpec::Complexified(inner) => inner.rank(),
            GroupSpec::LeviBlock => 1,
        }
    }

    /// Length of weight vectors attached to representations of this group.
    pub fn weight_dim(&self) -> usize {
        match self {
            GroupSpec::Su2 => 1,
            GroupSpec::Su3 => 3,
            GroupSpec::Torus(k) => *k,
            GroupSpec::Product(fs) => fs.iter().map(GroupSpec::weight_dim).sum(),
            GroupSpec::UpperTriangular(n) => *n,
            GroupSpec::Complexified(inner) => inner.weight_dim(),
            GroupSpec::LeviBlock => 1,
        }
    }

    /// True when the whole group is solvable, so constructive flag and
    /// witness machinery applies.
    pub fn is_solvable(&self) -> bool {
        match self {
            GroupSpec::Torus(_) | GroupSpec::UpperTriangular(_) => true,
            GroupSpec::Product(fs) => fs.iter().all(GroupSpec::is_solvable),
            _ => false,
        }
    }

    pub fn label(&self) -> String {
        match self {
            GroupSpec::Su2 => "SU(2)".into(),
            GroupSpec::Su3 => "SU(3)".into(),
            GroupSpec::Torus(k) => {
                if *k == 1 {
                    "U(1)".into()
                } else {
                    format!("U(1)^{k}")
                }
            }
            GroupSpec::Product(fs) => fs
                .iter()
                .map(GroupSpec::label)
                .collect::<Vec<_>>()
                .join(" x "),
            GroupSpec::UpperTriangular(n) => format!("UT({n})"),
            GroupSpec::Complexified(inner) => match **inner {
                GroupSpec::Su2 => "SL(2,C)".into(),
                GroupSpec::Su3 => "SL(3,C)".into(),
                ref other => format!("{}_C", other.label()),
            },
            GroupSpec::LeviBlock => "SU(2).gl(2,C)".into(),
        }
    }

    /// Offsets of each factor block in the product model, plus the total.
    pub fn factor_offsets(&self) -> Vec<usize> {
        match self {
            GroupSpec::Product(fs) => {
                let mut offsets = vec![0usize];
                for f in fs {
                    offsets.push(offsets.last().unwrap() + f.model_dim());
                }
                offsets
            }
            _ => vec![0, self.model_dim()],
        }
    }
}

/// Group element: a matrix in the defining model plus its parent spec.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    matrix: DMatrix<Complex64>,
    parent: GroupSpec,
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|e| e.norm()).fold(0.0, f64::max)
}

fn det(m: &DMatrix<Complex64>) -> Complex64 {
    m.clone().determinant()
}

fn check_unitary_special(m: &DMatrix<Complex64>, label: &str) -> Result<()> {
    let n = m.nrows();
    let gram = m.adjoint() * m;
    let defect = max_abs(&(gram - DMatrix::identity(n, n)));
    if defect > MEMBERSHIP_TOL {
        return Err(Error::InvalidElement {
            group: label.into(),
            detail: format!("unitarity defect {defect:e}"),
        });
    }
    let d = det(m);
    if (d - Complex64::new(1.0, 0.0)).norm() > MEMBERSHIP_TOL {
        return Err(Error::InvalidElement {
            group: label.into(),
            detail: format!("determinant {d}"),
        });
    }
    Ok(())
}

fn check_membership(matrix: &DMatrix<Complex64>, spec: &GroupSpec) -> Result<()> {
    let n = spec.model_dim();
    if matrix.nrows() != n || matrix.ncols() != n {
        return Err(Error::InvalidElement {
            group: spec.label(),
            detail: format!("expected {n} x {n} matrix"),
        });
    }
    match spec {
        GroupSpec::Su2 | GroupSpec::Su3 => check_unitary_special(matrix, &spec.label()),
        GroupSpec::Torus(_) => {
            for r in 0..n {
                for c in 0..n {
                    let e = matrix[(r, c)];
                    if r != c && e.norm() > MEMBERSHIP_TOL {
                        return Err(Error::InvalidElement {
                            group: spec.label(),
                            detail: "off-diagonal entry in torus element".into(),
                        });
                    }
                    if r == c && (e.norm() - 1.0).abs() > MEMBERSHIP_TOL {
                        return Err(Error::InvalidElement {
                            group: spec.label(),
                            detail: "non-unimodular torus entry".into(),
                        });
                    }
                }
            }
            Ok(())
        }
        GroupSpec::Product(fs) => {
            let offsets = spec.factor_offsets();
            for r in 0..n {
                for c in 0..n {
                    let same_block = offsets.windows(2).any(|w| {
                        r >= w[0] && r < w[1] && c >= w[0] && c < w[1]
                    });
                    if !same_block && matrix[(r, c)].norm() > MEMBERSHIP_TOL {
                        return Err(Error::InvalidElement {
                            group: spec.label(),
                            detail: "entry outside factor blocks".into(),
                        });
                    }
                }
            }
            for (i, f) in fs.iter().enumerate() {
                let (a, b) = (offsets[i], offsets[i + 1]);
                let block = matrix.view((a, a), (b - a, b - a)).into_owned();
                check_membership(&block, f)?;
            }
            Ok(())
        }
        GroupSpec::UpperTriangular(_) => {
            for r in 0..n {
                for c in 0..r {
                    if matrix[(r, c)].norm() > MEMBERSHIP_TOL {
                        return Err(Error::InvalidElement {
                            group: spec.label(),
                            detail: "entry below the diagonal".into(),
                        });
                    }
                }
                if matrix[(r, r)].norm() <= MEMBERSHIP_TOL {
                    return Err(Error::InvalidElement {
                        group: spec.label(),
                        detail: "zero diagonal entry".into(),
                    });
                }
            }
            Ok(())
        }
        GroupSpec::Complexified(_) => {
            let d = det(matrix);
            if (d - Complex64::new(1.0, 0.0)).norm() > MEMBERSHIP_TOL {
                return Err(Error::InvalidElement {
                    group: spec.label(),
                    detail: format!("determinant {d}"),
                });
            }
            Ok(())
        }
        GroupSpec::LeviBlock => {
            let a = matrix.view((0, 0), (2, 2)).into_owned();
            let d = matrix.view((2, 2), (2, 2)).into_owned();
            let lower = matrix.view((2, 0), (2, 2)).into_owned();
            if max_abs(&lower) > MEMBERSHIP_TOL {
                return Err(Error::InvalidElement {
                    group: spec.label(),
                    detail: "nonzero lower block".into(),
                });
            }
            if max_abs(&(d - &a)) > MEMBERSHIP_TOL {
                return Err(Error::InvalidElement {
                    group: spec.label(),
                    detail: "diagonal blocks differ".into(),
                });
            }
            check_unitary_special(&a, "SU(2) block")
        }
    }
}

impl GroupElement {
    pub fn new(matrix: DMatrix<Complex64>, parent: GroupSpec) -> Result<Self> {
        check_membership(&matrix, &parent)?;
        Ok(GroupElement { matrix, parent })
    }

    /// Constructor for matrices valid by construction (samplers, charts).
    pub(crate) fn trusted(matrix: DMatrix<Complex64>, parent: GroupSpec) -> Self {
        debug_assert!(check_membership(&matrix, &parent).is_ok());
        GroupElement { matrix, parent }
    }

    pub fn identity(spec: &GroupSpec) -> Self {
        let n = spec.model_dim();
        GroupElement {
            matrix: DMatrix::identity(n, n),
            parent: spec.clone(),
        }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn parent(&self) -> &GroupSpec {
        &self.parent
    }

    pub fn inverse(&self) -> Self {
        let inv = match self.parent {
            GroupSpec::Su2 | GroupSpec::Su3 | GroupSpec::Torus(_) => self.matrix.adjoint(),
            GroupSpec::Product(_) => self.matrix.adjoint(),
            _ => self
                .matrix
                .clone()
                .try_inverse()
                .expect("group element is invertible"),
        };
        GroupElement {
            matrix: inv,
            parent: self.parent.clone(),
        }
    }

    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.parent != rhs.parent {
            return Err(Error::ParentMismatch(format!(
                "{} vs {}",
                self.parent.label(),
                rhs.parent.label()
            )));
        }
        Ok(GroupElement {
            matrix: &self.matrix * &rhs.matrix,
            parent: self.parent.clone(),
        })
    }

    /// Blocks of a product element, one per factor.
    pub fn factor_blocks(&self) -> Vec<DMatrix<Complex64>> {
        let offsets = self.parent.factor_offsets();
        offsets
            .windows(2)
            .map(|w| self.matrix.view((w[0], w[0]), (w[1] - w[0], w[1] - w[0])).into_owned())
            .collect()
    }
}

/// Torus element of SU(2): diag(t, conj t) for t = exp(i theta).
pub fn su2_torus_element(theta: f64) -> GroupElement {
    let t = Complex64::from_polar(1.0, theta);
    let m = DMatrix::from_diagonal(&DVector::from_vec(vec![t, t.conj()]));
    GroupElement::trusted(m, GroupSpec::Su2)
}

/// The Weyl representative w = [[0, -1], [1, 0]] of SU(2); as a variable
/// substitution it sends x to y and y to -x.
pub fn su2_weyl_element() -> GroupElement {
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    );
    GroupElement::trusted(m, GroupSpec::Su2)
}

/// Torus element of SU(3): diag(exp(i a), exp(i b), exp(-i(a+b))).
pub fn su3_torus_element(a: f64, b: f64) -> GroupElement {
    let m = DMatrix::from_diagonal(&DVector::from_vec(vec![
        Complex64::from_polar(1.0, a),
        Complex64::from_polar(1.0, b),
        Complex64::from_polar(1.0, -(a + b)),
    ]));
    GroupElement::trusted(m, GroupSpec::Su3)
}

/// Lie algebra element: matrix, parent group, and whether it lies in the
/// compact real form (true) or the complexification (false).
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    matrix: DMatrix<Complex64>,
    parent: GroupSpec,
    real_form: bool,
}

fn check_algebra(matrix: &DMatrix<Complex64>, spec: &GroupSpec, real_form: bool) -> Result<()> {
    let n = spec.model_dim();
    if matrix.nrows() != n || matrix.ncols() != n {
        return Err(Error::InvalidElement {
            group: spec.label(),
            detail: format!("expected {n} x {n} matrix"),
        });
    }
    let traceless = matrix.trace().norm() <= MEMBERSHIP_TOL;
    let skew = max_abs(&(matrix.adjoint() + matrix)) <= MEMBERSHIP_TOL;
    match spec {
        GroupSpec::Su2 | GroupSpec::Su3 => {
            if !traceless {
                return Err(Error::InvalidElement {
                    group: spec.label(),
                    detail: "nonzero trace".into(),
                });
            }
            if real_form && !skew {
                return Err(Error::InvalidElement {
                    group: spec.label(),
                    detail: "compact real form requires a skew-hermitian matrix".into(),
                });
            }
            Ok(())
        }
        GroupSpec::Torus(_) => {
            for r in 0..n {
                for c in 0..n {
                    if r != c && matrix[(r, c)].norm() > MEMBERSHIP_TOL {
                        return Err(Error::InvalidElement {
                            group: spec.label(),
                            detail: "torus algebra element must be diagonal".into(),
                        });
                    }
                }
                if real_form && matrix[(r, r)].re.abs() > MEMBERSHIP_TOL {
                    return Err(Error::InvalidElement {
                        group: spec.label(),
                        detail: "compact torus algebra is purely imaginary".into(),
                    });
                }
            }
            Ok(())
        }
        GroupSpec::Product(fs) => {
            let offsets = spec.factor_offsets();
            for (i, f) in fs.iter().enumerate() {
                let (a, b) = (offsets[i], offsets[i + 1]);
                let block = matrix.view((a, a), (b - a, b - a)).into_owned();
                check_algebra(&block, f, real_form)?;
            }
            Ok(())
        }
        GroupSpec::UpperTriangular(_) => {
            for r in 0..n {
                for c in 0..r {
                    if matrix[(r, c)].norm() > MEMBERSHIP_TOL {
                        return Err(Error::InvalidElement {
                            group: spec.label(),
                            detail: "entry below the diagonal".into(),
                        });
                    }
                }
            }
            Ok(())
        }
        GroupSpec::Complexified(inner) => {
            if matches!(**inner, GroupSpec::Su2 | GroupSpec::Su3) && !traceless {
                return Err(Error::InvalidElement {
                    group: spec.label(),
                    detail: "nonzero trace".into(),
                });
            }
            Ok(())
        }
        GroupSpec::LeviBlock => Ok(()),
    }
}

impl AlgebraElement {
    pub fn new(matrix: DMatrix<Complex64>, parent: GroupSpec, real_form: bool) -> Result<Self> {
        check_algebra(&matrix, &parent, real_form)?;
        Ok(AlgebraElement {
            matrix,
            parent,
            real_form,
        })
    }

    pub(crate) fn trusted(matrix: DMatrix<Complex64>, parent: GroupSpec, real_form: bool) -> Self {
        debug_assert!(check_algebra(&matrix, &parent, real_form).is_ok());
        AlgebraElement {
            matrix,
            parent,
            real_form,
        }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn parent(&self) -> &GroupSpec {
        &self.parent
    }

    pub fn real_form(&self) -> bool {
        self.real_form
    }

    pub fn bracket(&self, rhs: &Self) -> Result<Self> {
        if self.parent != rhs.parent {
            return Err(Error::ParentMismatch(format!(
                "{} vs {}",
                self.parent.label(),
                rhs.parent.label()
            )));
        }
        Ok(AlgebraElement {
            matrix: &self.matrix * &rhs.matrix - &rhs.matrix * &self.matrix,
            parent: self.parent.clone(),
            real_form: self.real_form && rhs.real_form,
        })
    }
}

/// Conjugation Ad(g) X = g X g^{-1}. Parents must match; the real-form flag
/// survives because catalog elements of compact groups are unitary.
pub fn adjoint_action(g: &GroupElement, x: &AlgebraElement) -> Result<AlgebraElement> {
    if g.parent() != x.parent() {
        return Err(Error::ParentMismatch(format!(
            "{} vs {}",
            g.parent().label(),
            x.parent().label()
        )));
    }
    let m = g.matrix() * x.matrix() * g.inverse().matrix();
    Ok(AlgebraElement::trusted(
        m,
        x.parent().clone(),
        x.real_form(),
    ))
}

/// Matrix exponential by scaling and squaring with a truncated series.
pub fn exp_matrix(x: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = x.nrows();
    let norm = x
        .row_iter()
        .map(|r| r.iter().map(|e| e.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scaled = x / Complex64::new(2f64.powi(squarings as i32), 0.0);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut sum = DMatrix::<Complex64>::identity(n, n);
    for k in 1..=30 {
        term = (&term * &scaled) / Complex64::new(k as f64, 0.0);
        sum += &term;
        if max_abs(&term) < 1e-18 {
            break;
        }
    }
    let mut result = sum;
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Exponential from the algebra to the group. Compact real-form input lands
/// in the group itself; complexified input lands in the complexification.
pub fn exp_map(x: &AlgebraElement) -> Result<GroupElement> {
    let m = exp_matrix(x.matrix());
    let parent = if x.real_form() {
        x.parent().clone()
    } else {
        match x.parent() {
            GroupSpec::Su2 | GroupSpec::Su3 => GroupSpec::complexified(x.parent().clone())?,
            GroupSpec::Complexified(_) | GroupSpec::UpperTriangular(_) => x.parent().clone(),
            other => {
                return Err(Error::UnsupportedGroup(format!(
                    "exponential of a complexified element of {}",
                    other.label()
                )))
            }
        }
    };
    GroupElement::new(m, parent)
}

/// Exact rational basis of the (real) Lie algebra of a catalog group, used
/// by rank and normalizer computations.
pub fn standard_algebra_basis(spec: &GroupSpec) -> Result<Vec<QMatrix>> {
    let e = |n: usize, r: usize, c: usize, re: i64, im: i64| -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        *m.at_mut(r, c) = crate::exact::QComplex::from_ints(re, im);
        m
    };
    match spec {
        GroupSpec::Su2 => Ok(vec![
            // diag(i, -i), [[0,1],[-1,0]], [[0,i],[i,0]]
            {
                let mut m = e(2, 0, 0, 0, 1);
                *m.at_mut(1, 1) = crate::exact::QComplex::from_ints(0, -1);
                m
            },
            {
                let mut m = e(2, 0, 1, 1, 0);
                *m.at_mut(1, 0) = crate::exact::QComplex::from_ints(-1, 0);
                m
            },
            {
                let mut m = e(2, 0, 1, 0, 1);
                *m.at_mut(1, 0) = crate::exact::QComplex::from_ints(0, 1);
                m
            },
        ]),
        GroupSpec::Su3 => {
            let mut basis = Vec::new();
            // Cartan: diag(i,-i,0) and diag(i,i,-2i).
            let mut h1 = QMatrix::zeros(3, 3);
            *h1.at_mut(0, 0) = crate::exact::QComplex::from_ints(0, 1);
            *h1.at_mut(1, 1) = crate::exact::QComplex::from_ints(0, -1);
            basis.push(h1);
            let mut h2 = QMatrix::zeros(3, 3);
            *h2.at_mut(0, 0) = crate::exact::QComplex::from_ints(0, 1);
            *h2.at_mut(1, 1) = crate::exact::QComplex::from_ints(0, 1);
            *h2.at_mut(2, 2) = crate::exact::QComplex::from_ints(0, -2);
            basis.push(h2);
            for (j, k) in [(0, 1), (0, 2), (1, 2)] {
                // E_jk - E_kj and i(E_jk + E_kj).
                let mut a = e(3, j, k, 1, 0);
                *a.at_mut(k, j) = crate::exact::QComplex::from_ints(-1, 0);
                basis.push(a);
                let mut s = e(3, j, k, 0, 1);
                *s.at_mut(k, j) = crate::exact::QComplex::from_ints(0, 1);
                basis.push(s);
            }
            Ok(basis)
        }
        GroupSpec::Torus(k) => Ok((0..*k).map(|j| e(*k, j, j, 0, 1)).collect()),
        GroupSpec::Product(fs) => {
            let n = spec.model_dim();
            let offsets = spec.factor_offsets();
            let mut basis = Vec::new();
            for (i, f) in fs.iter().enumerate() {
                for b in standard_algebra_basis(f)? {
                    let mut m = QMatrix::zeros(n, n);
                    for r in 0..b.rows {
                        for c in 0..b.cols {
                            *m.at_mut(offsets[i] + r, offsets[i] + c) = b.at(r, c).clone();
                        }
                    }
                    basis.push(m);
                }
            }
            Ok(basis)
        }
        GroupSpec::UpperTriangular(n) => {
            let mut basis = Vec::new();
            for r in 0..*n {
                for c in r..*n {
                    basis.push(e(*n, r, c, 1, 0));
                    basis.push(e(*n, r, c, 0, 1));
                }
            }
            Ok(basis)
        }
        GroupSpec::Complexified(inner) => {
            // Real basis of the complexification: compact basis plus i times it.
            let compact = standard_algebra_basis(inner)?;
            let mut basis = compact.clone();
            for b in &compact {
                let mut m = QMatrix::zeros(b.rows, b.cols);
                for r in 0..b.rows {
                    for c in 0..b.cols {
                        let v = b.at(r, c);
                        *m.at_mut(r, c) = crate::exact::QComplex {
                            re: -v.im.clone(),
                            im: v.re.clone(),
                        };
                    }
                }
                basis.push(m);
            }
            Ok(basis)
        }
        GroupSpec::LeviBlock => Err(Error::UnsupportedGroup(
            "no standard algebra basis for the block extension".into(),
        )),
    }
}
