//! Concrete matrix representations with torus-weight decompositions.
//!
//! A [`Representation`] realizes a catalog group on a based complex vector
//! space. The basis carries one integer weight vector per basis element
//! (the character of the standard maximal torus on that line, when the
//! basis diagonalizes the torus) and a diagonal positive form making the
//! compact action unitary.
//!
//! The SU(2) irreducible of degree n lives on homogeneous polynomials in
//! x, y with basis x^i y^(n-i); the group acts by substitution of the row
//! vector (x, y): (g·f)(v) = f(v g). On that basis diag(t, conj t) acts by
//! exactly t^(2i-n), and the rotation w = [[0,-1],[1,0]] sends x^i y^(n-i)
//! to (-1)^(n-i) x^(n-i) y^i.

pub mod subspace;

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lie::roots::Weight;
use crate::lie::{GroupElement, GroupSpec};

pub use subspace::{Subspace, SubspaceDesc};

/// How the representation computes its matrices.
#[derive(Debug, Clone)]
pub enum RepKind {
    /// Every element acts as the identity (dim may be 1 or 0).
    Trivial,
    /// SU(2) on homogeneous polynomials of degree n in x, y.
    Su2Irrep { n: usize },
    /// The defining matrix model of the group on C^model_dim.
    Defining,
    /// A torus acting diagonally by the recorded characters.
    DiagonalCharacters,
    /// Conjugation on the complexified algebra, in its standard basis.
    ComplexifiedAdjoint,
    /// Conjugation on the real compact algebra, in its standard real basis.
    RealAdjoint,
    /// Direct sum of representations of one common group.
    InternalSum(Vec<Arc<Representation>>),
    /// Direct sum of representations of distinct factors under the product.
    ExternalSum(Vec<Arc<Representation>>),
    /// A representation of Torus(1) x H: the circle scales by t^charge and
    /// H acts by the inner representation.
    CentralTwist { inner: Arc<Representation>, charge: i64 },
    /// The action of the non-torus factors of a product group on an
    /// invariant coordinate block of a parent representation.
    FactorRestriction {
        parent: Arc<Representation>,
        indices: Vec<usize>,
    },
}

/// A group action realized as matrices on a based complex vector space.
#[derive(Debug, Clone)]
pub struct Representation {
    group: GroupSpec,
    dim: usize,
    labels: Vec<String>,
    weights: Vec<Weight>,
    gram: Vec<f64>,
    weight_basis: bool,
    kind: RepKind,
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut v = 1.0f64;
    for j in 0..k.min(n - k) {
        v = v * (n - j) as f64 / (j + 1) as f64;
    }
    v.round()
}

/// Coefficient vector (indexed by x-degree) of the product of two
/// homogeneous polynomials given the same way.
fn poly_mul(p: &[Complex64], q: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); p.len() + q.len() - 1];
    for (a, pa) in p.iter().enumerate() {
        if pa.re == 0.0 && pa.im == 0.0 {
            continue;
        }
        for (b, qb) in q.iter().enumerate() {
            out[a + b] += pa * qb;
        }
    }
    out
}

fn poly_pow(linear: [Complex64; 2], e: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for _ in 0..e {
        out = poly_mul(&out, &[linear[0], linear[1]]);
    }
    out
}

fn su2_irrep_matrix(n: usize, g: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    // Column i = coefficients of (x g11 + y g21)^i (x g12 + y g22)^(n-i)
    // over the basis x^k y^(n-k); index = x-degree.
    let first = [g[(1, 0)], g[(0, 0)]];
    let second = [g[(1, 1)], g[(0, 1)]];
    let mut m = DMatrix::<Complex64>::zeros(n + 1, n + 1);
    for i in 0..=n {
        let col = poly_mul(&poly_pow(first, i), &poly_pow(second, n - i));
        for k in 0..=n {
            m[(k, i)] = col[k];
        }
    }
    m
}

/// Basis of sl(2,C) used by the complexified adjoint: E, H, F.
fn sl2_basis() -> Vec<DMatrix<Complex64>> {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    vec![
        DMatrix::from_row_slice(2, 2, &[z, o, z, z]),
        DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
        DMatrix::from_row_slice(2, 2, &[z, z, o, z]),
    ]
}

/// Coordinates of a traceless 2x2 matrix in the basis E, H, F.
fn sl2_coords(m: &DMatrix<Complex64>) -> [Complex64; 3] {
    [m[(0, 1)], m[(0, 0)], m[(1, 0)]]
}

/// Basis of sl(3,C): E12, E13, E23, H1 = diag(1,-1,0), H2 = diag(1,1,-2),
/// E21, E31, E32.
fn sl3_basis() -> Vec<DMatrix<Complex64>> {
    let mut basis = Vec::new();
    let e = |r: usize, c: usize| {
        let mut m = DMatrix::<Complex64>::zeros(3, 3);
        m[(r, c)] = Complex64::new(1.0, 0.0);
        m
    };
    basis.push(e(0, 1));
    basis.push(e(0, 2));
    basis.push(e(1, 2));
    let mut h1 = DMatrix::<Complex64>::zeros(3, 3);
    h1[(0, 0)] = Complex64::new(1.0, 0.0);
    h1[(1, 1)] = Complex64::new(-1.0, 0.0);
    basis.push(h1);
    let mut h2 = DMatrix::<Complex64>::zeros(3, 3);
    h2[(0, 0)] = Complex64::new(1.0, 0.0);
    h2[(1, 1)] = Complex64::new(1.0, 0.0);
    h2[(2, 2)] = Complex64::new(-2.0, 0.0);
    basis.push(h2);
    basis.push(e(1, 0));
    basis.push(e(2, 0));
    basis.push(e(2, 1));
    basis
}

fn sl3_coords(m: &DMatrix<Complex64>) -> [Complex64; 8] {
    let half = Complex64::new(0.5, 0.0);
    [
        m[(0, 1)],
        m[(0, 2)],
        m[(1, 2)],
        (m[(0, 0)] - m[(1, 1)]) * half,
        (m[(0, 0)] + m[(1, 1)]) * half,
        m[(1, 0)],
        m[(2, 0)],
        m[(2, 1)],
    ]
}

fn conjugation_matrix(
    g: &GroupElement,
    basis: &[DMatrix<Complex64>],
    coords: impl Fn(&DMatrix<Complex64>) -> Vec<Complex64>,
) -> DMatrix<Complex64> {
    let inv = g.inverse();
    let d = basis.len();
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for (j, b) in basis.iter().enumerate() {
        let image = g.matrix() * b * inv.matrix();
        let col = coords(&image);
        for (i, v) in col.iter().enumerate() {
            m[(i, j)] = *v;
        }
    }
    m
}

fn block_diag(blocks: &[DMatrix<Complex64>]) -> DMatrix<Complex64> {
    let n: usize = blocks.iter().map(DMatrix::nrows).sum();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        for r in 0..b.nrows() {
            for c in 0..b.ncols() {
                m[(off + r, off + c)] = b[(r, c)];
            }
        }
        off += b.nrows();
    }
    m
}

impl Representation {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Diagonal entries of the invariant positive form on the basis.
    pub fn gram(&self) -> &[f64] {
        &self.gram
    }

    /// The full hermitian form as a matrix.
    pub fn inner_product_matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_diagonal(&DVector::from_iterator(
            self.dim,
            self.gram.iter().map(|&g| Complex64::new(g, 0.0)),
        ))
    }

    /// True when the recorded basis diagonalizes the standard maximal torus
    /// with the recorded characters.
    pub fn is_weight_basis(&self) -> bool {
        self.weight_basis
    }

    pub fn kind(&self) -> &RepKind {
        &self.kind
    }

    /// Weighted hermitian inner product of coordinate vectors.
    pub fn inner(&self, u: &DVector<Complex64>, v: &DVector<Complex64>) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..self.dim {
            s += Complex64::new(self.gram[i], 0.0) * u[i].conj() * v[i];
        }
        s
    }

    pub fn norm(&self, u: &DVector<Complex64>) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            s += self.gram[i] * u[i].norm_sqr();
        }
        s.sqrt()
    }

    /// The matrix of the element on the recorded basis.
    pub fn realize(&self, g: &GroupElement) -> Result<DMatrix<Complex64>> {
        if g.parent() != &self.group {
            return Err(Error::ParentMismatch(format!(
                "element of {} applied to a representation of {}",
                g.parent().label(),
                self.group.label()
            )));
        }
        Ok(self.realize_unchecked(g))
    }

    fn realize_unchecked(&self, g: &GroupElement) -> DMatrix<Complex64> {
        match &self.kind {
            RepKind::Trivial => DMatrix::identity(self.dim, self.dim),
            RepKind::Su2Irrep { n } => su2_irrep_matrix(*n, g.matrix()),
            RepKind::Defining => g.matrix().clone(),
            RepKind::DiagonalCharacters => {
                let mut m = DMatrix::<Complex64>::zeros(self.dim, self.dim);
                for (j, w) in self.weights.iter().enumerate() {
                    let mut v = Complex64::new(1.0, 0.0);
                    for (c, &e) in w.iter().enumerate() {
                        v *= g.matrix()[(c, c)].powi(e as i32);
                    }
                    m[(j, j)] = v;
                }
                m
            }
            RepKind::ComplexifiedAdjoint => match self.group.model_dim() {
                2 => conjugation_matrix(g, &sl2_basis(), |m| sl2_coords(m).to_vec()),
                _ => conjugation_matrix(g, &sl3_basis(), |m| sl3_coords(m).to_vec()),
            },
            RepKind::RealAdjoint => {
                let basis: Vec<DMatrix<Complex64>> =
                    crate::lie::standard_algebra_basis(&self.group)
                        .expect("real adjoint over catalog groups")
                        .iter()
                        .map(|q| q.to_complex())
                        .collect();
                // Coordinates recovered through the trace pairing
                // <X, B_j> / <B_j, B_j> with <A, B> = Re tr(A B*); the
                // standard bases are orthogonal for it.
                let norms: Vec<f64> = basis
                    .iter()
                    .map(|b| (b.adjoint() * b).trace().re)
                    .collect();
                let inv = g.inverse();
                let d = basis.len();
                let mut m = DMatrix::<Complex64>::zeros(d, d);
                for (j, b) in basis.iter().enumerate() {
                    let image = g.matrix() * b * inv.matrix();
                    for (i, bi) in basis.iter().enumerate() {
                        let coeff = (bi.adjoint() * &image).trace().re / norms[i];
                        m[(i, j)] = Complex64::new(coeff, 0.0);
                    }
                }
                m
            }
            RepKind::InternalSum(parts) => {
                let blocks: Vec<DMatrix<Complex64>> =
                    parts.iter().map(|p| p.realize_unchecked(g)).collect();
                block_diag(&blocks)
            }
            RepKind::ExternalSum(parts) => {
                let factor_blocks = g.factor_blocks();
                let blocks: Vec<DMatrix<Complex64>> = parts
                    .iter()
                    .zip(factor_blocks.iter())
                    .map(|(p, b)| {
                        let el = GroupElement::trusted(b.clone(), p.group.clone());
                        p.realize_unchecked(&el)
                    })
                    .collect();
                block_diag(&blocks)
            }
            RepKind::CentralTwist { inner, charge } => {
                let blocks = g.factor_blocks();
                let t = blocks[0][(0, 0)].powi(*charge as i32);
                let el = GroupElement::trusted(blocks[1].clone(), inner.group.clone());
                inner.realize_unchecked(&el) * t
            }
            RepKind::FactorRestriction { parent, indices } => {
                let full = if g.parent() == &parent.group {
                    parent.realize_unchecked(g)
                } else {
                    // Embed: identity on torus factors, the element's blocks
                    // on the remaining factors, in order.
                    let pg = &parent.group;
                    let fs = match pg {
                        GroupSpec::Product(fs) => fs,
                        _ => unreachable!("restriction parent is a product"),
                    };
                    let offsets = pg.factor_offsets();
                    let mut m = DMatrix::<Complex64>::identity(pg.model_dim(), pg.model_dim());
                    let s_blocks: Vec<DMatrix<Complex64>> =
                        if matches!(g.parent(), GroupSpec::Product(_)) {
                            g.factor_blocks()
                        } else {
                            vec![g.matrix().clone()]
                        };
                    let mut next = 0;
                    for (k, f) in fs.iter().enumerate() {
                        if !matches!(f, GroupSpec::Torus(_)) {
                            let b = &s_blocks[next];
                            next += 1;
                            for r in 0..b.nrows() {
                                for c in 0..b.ncols() {
                                    m[(offsets[k] + r, offsets[k] + c)] = b[(r, c)];
                                }
                            }
                        }
                    }
                    let embedded = GroupElement::trusted(m, pg.clone());
                    parent.realize_unchecked(&embedded)
                };
                DMatrix::from_fn(indices.len(), indices.len(), |r, c| {
                    full[(indices[r], indices[c])]
                })
            }
        }
    }

    /// Image of a coordinate vector under the element's action.
    pub fn apply(&self, g: &GroupElement, u: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        Ok(self.realize(g)? * u)
    }

    // ---- constructors ----

    pub fn trivial(group: GroupSpec) -> Representation {
        let wd = group.weight_dim();
        Representation {
            group,
            dim: 1,
            labels: vec!["1".into()],
            weights: vec![vec![0; wd]],
            gram: vec![1.0],
            weight_basis: true,
            kind: RepKind::Trivial,
        }
    }

    /// The zero-dimensional representation (identity element for sums).
    pub fn zero(group: GroupSpec) -> Representation {
        Representation {
            group,
            dim: 0,
            labels: vec![],
            weights: vec![],
            gram: vec![],
            weight_basis: true,
            kind: RepKind::Trivial,
        }
    }

    /// SU(2) irreducible of dimension n+1 on degree-n polynomials in x, y.
    pub fn su2_irrep(n: usize) -> Representation {
        let labels = (0..=n)
            .map(|i| match (i, n - i) {
                (0, 0) => "1".to_string(),
                (0, 1) => "y".to_string(),
                (1, 0) => "x".to_string(),
                (0, e) => format!("y^{e}"),
                (e, 0) => format!("x^{e}"),
                (1, 1) => "x y".to_string(),
                (1, e) => format!("x y^{e}"),
                (e, 1) => format!("x^{e} y"),
                (a, b) => format!("x^{a} y^{b}"),
            })
            .collect();
        Representation {
            group: GroupSpec::Su2,
            dim: n + 1,
            labels,
            weights: (0..=n).map(|i| vec![2 * i as i64 - n as i64]).collect(),
            gram: (0..=n).map(|i| 1.0 / binomial(n, i)).collect(),
            weight_basis: true,
            kind: RepKind::Su2Irrep { n },
        }
    }

    /// The defining model of the group on C^model_dim.
    pub fn defining(group: GroupSpec) -> Representation {
        let n = group.model_dim();
        let wd = group.weight_dim();
        let weights: Vec<Weight> = match &group {
            GroupSpec::Su2 => vec![vec![1], vec![-1]],
            GroupSpec::Su3 | GroupSpec::Torus(_) | GroupSpec::UpperTriangular(_) => (0..n)
                .map(|j| {
                    let mut w = vec![0; wd];
                    w[j] = 1;
                    w
                })
                .collect(),
            GroupSpec::Product(fs) => {
                let mut weights = Vec::new();
                let mut woff = 0;
                for f in fs {
                    for w in Representation::defining(f.clone()).weights {
                        let mut padded = vec![0; wd];
                        for (c, v) in w.iter().enumerate() {
                            padded[woff + c] = *v;
                        }
                        weights.push(padded);
                    }
                    woff += f.weight_dim();
                }
                weights
            }
            GroupSpec::Complexified(inner) => {
                return Representation {
                    weight_basis: false,
                    group: group.clone(),
                    ..Representation::defining((**inner).clone())
                }
            }
            GroupSpec::LeviBlock => vec![vec![0]; 4],
        };
        let weight_basis = !matches!(
            group,
            GroupSpec::UpperTriangular(_) | GroupSpec::LeviBlock
        );
        Representation {
            group,
            dim: n,
            labels: (1..=n).map(|j| format!("e{j}")).collect(),
            weights,
            gram: vec![1.0; n],
            weight_basis,
            kind: RepKind::Defining,
        }
    }

    /// A torus acting diagonally by the given characters.
    pub fn diagonal_characters(k: usize, weights: Vec<Weight>) -> Result<Representation> {
        for w in &weights {
            if w.len() != k {
                return Err(Error::Config(format!(
                    "character of length {} for a torus of rank {k}",
                    w.len()
                )));
            }
        }
        let dim = weights.len();
        Ok(Representation {
            group: GroupSpec::Torus(k),
            dim,
            labels: (1..=dim).map(|j| format!("e{j}")).collect(),
            weights,
            gram: vec![1.0; dim],
            weight_basis: true,
            kind: RepKind::DiagonalCharacters,
        })
    }

    /// Conjugation on the complexified algebra of a compact catalog group.
    /// Products are assembled blockwise under the product group.
    pub fn complexified_adjoint(spec: &GroupSpec) -> Result<Representation> {
        match spec {
            GroupSpec::Su2 => Ok(Representation {
                group: GroupSpec::Su2,
                dim: 3,
                labels: vec!["E".into(), "H".into(), "F".into()],
                weights: vec![vec![2], vec![0], vec![-2]],
                gram: vec![1.0, 2.0, 1.0],
                weight_basis: true,
                kind: RepKind::ComplexifiedAdjoint,
            }),
            GroupSpec::Su3 => Ok(Representation {
                group: GroupSpec::Su3,
                dim: 8,
                labels: vec![
                    "E12".into(),
                    "E13".into(),
                    "E23".into(),
                    "H1".into(),
                    "H2".into(),
                    "E21".into(),
                    "E31".into(),
                    "E32".into(),
                ],
                weights: vec![
                    vec![1, -1, 0],
                    vec![1, 0, -1],
                    vec![0, 1, -1],
                    vec![0, 0, 0],
                    vec![0, 0, 0],
                    vec![-1, 1, 0],
                    vec![-1, 0, 1],
                    vec![0, -1, 1],
                ],
                gram: vec![1.0, 1.0, 1.0, 2.0, 6.0, 1.0, 1.0, 1.0],
                weight_basis: true,
                kind: RepKind::ComplexifiedAdjoint,
            }),
            GroupSpec::Torus(k) => {
                // Complexified algebra of a torus: trivial action on C^k.
                Representation::diagonal_characters(*k, vec![vec![0; *k]; *k])
            }
            GroupSpec::Product(fs) => {
                let parts: Result<Vec<Representation>> =
                    fs.iter().map(Representation::complexified_adjoint).collect();
                Representation::external_direct_sum(parts?)
            }
            other => Err(Error::UnsupportedGroup(format!(
                "no complexified adjoint for {}",
                other.label()
            ))),
        }
    }

    /// Conjugation on the real compact algebra in its standard real basis.
    pub fn real_adjoint(spec: &GroupSpec) -> Result<Representation> {
        let ok = match spec {
            GroupSpec::Su2 | GroupSpec::Su3 | GroupSpec::Torus(_) => true,
            GroupSpec::Product(fs) => fs.iter().all(|f| {
                matches!(f, GroupSpec::Su2 | GroupSpec::Su3 | GroupSpec::Torus(_))
            }),
            _ => false,
        };
        if !ok {
            return Err(Error::UnsupportedGroup(format!(
                "no compact real adjoint for {}",
                spec.label()
            )));
        }
        let basis = crate::lie::standard_algebra_basis(spec)?;
        let labels = (1..=basis.len()).map(|j| format!("X{j}")).collect();
        let gram: Vec<f64> = basis
            .iter()
            .map(|b| {
                let m = b.to_complex();
                (m.adjoint() * m).trace().re
            })
            .collect();
        let wd = spec.weight_dim();
        Ok(Representation {
            group: spec.clone(),
            dim: basis.len(),
            labels,
            weights: vec![vec![0; wd]; basis.len()],
            gram,
            weight_basis: false,
            kind: RepKind::RealAdjoint,
        })
    }

    /// Direct sum of representations of one common group.
    pub fn internal_direct_sum(reps: Vec<Representation>) -> Result<Representation> {
        let reps: Vec<Representation> = reps.into_iter().filter(|r| r.dim > 0).collect();
        if reps.is_empty() {
            return Err(Error::GroupMismatch("empty direct sum".into()));
        }
        let group = reps[0].group.clone();
        for r in &reps {
            if r.group != group {
                return Err(Error::GroupMismatch(format!(
                    "summands of {} and {}",
                    group.label(),
                    r.group.label()
                )));
            }
        }
        if reps.len() == 1 {
            return Ok(reps.into_iter().next().unwrap());
        }
        let dim = reps.iter().map(|r| r.dim).sum();
        let mut labels = Vec::with_capacity(dim);
        let mut weights = Vec::with_capacity(dim);
        let mut gram = Vec::with_capacity(dim);
        for (k, r) in reps.iter().enumerate() {
            for j in 0..r.dim {
                labels.push(format!("b{}.{}", k + 1, r.labels[j]));
                weights.push(r.weights[j].clone());
                gram.push(r.gram[j]);
            }
        }
        let weight_basis = reps.iter().all(|r| r.weight_basis);
        Ok(Representation {
            group,
            dim,
            labels,
            weights,
            gram,
            weight_basis,
            kind: RepKind::InternalSum(reps.into_iter().map(Arc::new).collect()),
        })
    }

    /// Direct sum of representations of distinct groups, as a representation
    /// of their product acting block-diagonally; weights are padded into the
    /// concatenated coordinates.
    pub fn external_direct_sum(reps: Vec<Representation>) -> Result<Representation> {
        let reps: Vec<Representation> = reps.into_iter().filter(|r| r.dim > 0).collect();
        if reps.is_empty() {
            return Err(Error::GroupMismatch("empty direct sum".into()));
        }
        if reps.len() == 1 {
            return Ok(reps.into_iter().next().unwrap());
        }
        let group = GroupSpec::product(reps.iter().map(|r| r.group.clone()).collect());
        let wd = group.weight_dim();
        let dim = reps.iter().map(|r| r.dim).sum();
        let mut labels = Vec::with_capacity(dim);
        let mut weights = Vec::with_capacity(dim);
        let mut gram = Vec::with_capacity(dim);
        let mut woff = 0;
        for (k, r) in reps.iter().enumerate() {
            for j in 0..r.dim {
                labels.push(format!("b{}.{}", k + 1, r.labels[j]));
                let mut padded = vec![0i64; wd];
                for (c, v) in r.weights[j].iter().enumerate() {
                    padded[woff + c] = *v;
                }
                weights.push(padded);
                gram.push(r.gram[j]);
            }
            woff += r.group.weight_dim();
        }
        let weight_basis = reps.iter().all(|r| r.weight_basis);
        Ok(Representation {
            group,
            dim,
            labels,
            weights,
            gram,
            weight_basis,
            kind: RepKind::ExternalSum(reps.into_iter().map(Arc::new).collect()),
        })
    }

    /// Twist a representation of H by the character t^charge of an extra
    /// circle factor: the result represents Torus(1) x H.
    pub fn central_twist(inner: Representation, charge: i64) -> Representation {
        let group = GroupSpec::product(vec![GroupSpec::Torus(1), inner.group.clone()]);
        let wd = group.weight_dim();
        let weights = inner
            .weights
            .iter()
            .map(|w| {
                let mut padded = vec![0i64; wd];
                padded[0] = charge;
                for (c, v) in w.iter().enumerate() {
                    padded[1 + c] = *v;
                }
                padded
            })
            .collect();
        Representation {
            group,
            dim: inner.dim,
            labels: inner.labels.clone(),
            gram: inner.gram.clone(),
            weight_basis: inner.weight_basis,
            weights,
            kind: RepKind::CentralTwist {
                inner: Arc::new(inner),
                charge,
            },
        }
    }

    /// Restrict a product-group representation to the action of its
    /// non-torus factors on an invariant coordinate block. The caller is
    /// responsible for block invariance (blocks from a central weight
    /// decomposition qualify).
    pub fn block_restriction(
        parent: &Arc<Representation>,
        indices: &[usize],
    ) -> Result<Representation> {
        let fs = match &parent.group {
            GroupSpec::Product(fs) => fs.clone(),
            other => {
                return Err(Error::GroupMismatch(format!(
                    "block restriction needs a product group, got {}",
                    other.label()
                )))
            }
        };
        for &i in indices {
            if i >= parent.dim {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    dim: parent.dim,
                });
            }
        }
        let non_torus: Vec<GroupSpec> = fs
            .iter()
            .filter(|f| !matches!(f, GroupSpec::Torus(_)))
            .cloned()
            .collect();
        let group = match non_torus.len() {
            0 => parent.group.clone(),
            1 => non_torus.into_iter().next().unwrap(),
            _ => GroupSpec::product(non_torus),
        };
        // Weight coordinates kept: those of the non-torus factors (all of
        // them when the group falls back to the full parent).
        let keep_all = group == parent.group;
        let mut kept_coords = Vec::new();
        let mut off = 0;
        for f in &fs {
            let wd = f.weight_dim();
            if keep_all || !matches!(f, GroupSpec::Torus(_)) {
                kept_coords.extend(off..off + wd);
            }
            off += wd;
        }
        let weights = indices
            .iter()
            .map(|&i| kept_coords.iter().map(|&c| parent.weights[i][c]).collect())
            .collect();
        Ok(Representation {
            group,
            dim: indices.len(),
            labels: indices.iter().map(|&i| parent.labels[i].clone()).collect(),
            weights,
            gram: indices.iter().map(|&i| parent.gram[i]).collect(),
            weight_basis: parent.weight_basis,
            kind: RepKind::FactorRestriction {
                parent: parent.clone(),
                indices: indices.to_vec(),
            },
        })
    }
}

/// Basis indices grouped by equal weight vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDecomposition {
    pub blocks: Vec<(Weight, Vec<usize>)>,
}

/// Group the basis by characters of the given torus. The torus is either
/// the full standard maximal torus of the representation's group (weights
/// compared whole) or the central torus of a product group (only the
/// coordinates of the torus factors are compared).
pub fn weight_decomposition(
    rep: &Representation,
    torus: &GroupSpec,
) -> Result<WeightDecomposition> {
    let full = torus == rep.group() || torus.weight_dim() == rep.group().weight_dim();
    let coords: Vec<usize> = if full {
        (0..rep.group().weight_dim()).collect()
    } else if let GroupSpec::Product(fs) = rep.group() {
        // Coordinates of the torus factors, in order.
        let mut coords = Vec::new();
        let mut off = 0;
        let mut torus_rank = 0;
        for f in fs {
            if let GroupSpec::Torus(k) = f {
                coords.extend(off..off + k);
                torus_rank += k;
            }
            off += f.weight_dim();
        }
        if torus_rank != torus.rank() {
            return Err(Error::TorusMismatch(format!(
                "central torus of {} has rank {torus_rank}, got {}",
                rep.group().label(),
                torus.rank()
            )));
        }
        coords
    } else {
        return Err(Error::TorusMismatch(format!(
            "{} is not a torus of {}",
            torus.label(),
            rep.group().label()
        )));
    };
    let mut map: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (j, w) in rep.weights().iter().enumerate() {
        let key: Weight = coords.iter().map(|&c| w[c]).collect();
        map.entry(key).or_default().push(j);
    }
    Ok(WeightDecomposition {
        blocks: map.into_iter().collect(),
    })
}

/// The n+1 torus-invariant hyperplanes of the degree-n SU(2) module: the
/// i-th kills the x^i y^(n-i) coefficient; paired with its quotient
/// character 2i-n.
pub fn t_invariant_hyperplanes(n: usize) -> Vec<(Subspace, i64)> {
    let rep = Arc::new(Representation::su2_irrep(n));
    (0..=n)
        .map(|i| {
            let sub = Subspace::weight_complement(rep.clone(), [i].into_iter().collect(), true)
                .expect("valid index");
            (sub, 2 * i as i64 - n as i64)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::sample::sample_group_element;
    use crate::lie::{su2_torus_element, su2_weyl_element, su3_torus_element};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn irrep_torus_action_is_diagonal_with_recorded_characters() {
        // Oracle: substitute (x t, y conj(t)) into x^i y^(n-i) by hand.
        let n = 5;
        let rep = Representation::su2_irrep(n);
        let theta = 0.9371;
        let t = Complex64::from_polar(1.0, theta);
        let m = rep.realize(&su2_torus_element(theta)).unwrap();
        for i in 0..=n {
            let expected = t.powi(i as i32) * t.conj().powi((n - i) as i32);
            assert!((m[(i, i)] - expected).norm() < 1e-13);
            let w = rep.weights()[i][0];
            assert!((m[(i, i)] - t.powi(w as i32)).norm() < 1e-13);
            for k in 0..=n {
                if k != i {
                    // Structurally zero, not merely small.
                    assert_eq!(m[(k, i)], c(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn rotation_representative_permutes_monomials_with_alternating_signs() {
        // Oracle: substituting (y, -x) into x^i y^(n-i) gives
        // (-1)^(n-i) x^(n-i) y^i; check the full matrix for n = 4.
        let n = 4;
        let rep = Representation::su2_irrep(n);
        let m = rep.realize(&su2_weyl_element()).unwrap();
        for i in 0..=n {
            let sign = if (n - i) % 2 == 0 { 1.0 } else { -1.0 };
            for k in 0..=n {
                let expected = if k == n - i { c(sign, 0.0) } else { c(0.0, 0.0) };
                assert_eq!(m[(k, i)], expected, "entry ({k},{i})");
            }
        }
    }

    #[test]
    fn irrep_identity_is_identity_and_homomorphism_holds() {
        let rep = Representation::su2_irrep(6);
        let id = rep
            .realize(&GroupElement::identity(&GroupSpec::Su2))
            .unwrap();
        assert!((id - DMatrix::<Complex64>::identity(7, 7))
            .iter()
            .all(|e| e.norm() < 1e-14));
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let g = sample_group_element(&GroupSpec::Su2, &mut rng).unwrap();
            let h = sample_group_element(&GroupSpec::Su2, &mut rng).unwrap();
            let gh = g.compose(&h).unwrap();
            let lhs = rep.realize(&gh).unwrap();
            let rhs = rep.realize(&g).unwrap() * rep.realize(&h).unwrap();
            let defect = (lhs - rhs).iter().map(|e| e.norm()).fold(0.0, f64::max);
            assert!(defect < 1e-10);
        }
    }

    #[test]
    fn irrep_action_is_unitary_for_the_binomial_weighted_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for n in [1usize, 2, 5, 12] {
            let rep = Representation::su2_irrep(n);
            for _ in 0..100 {
                let g = sample_group_element(&GroupSpec::Su2, &mut rng).unwrap();
                let u = DVector::from_fn(n + 1, |_, _| {
                    c(rand::Rng::gen_range(&mut rng, -1.0..1.0),
                      rand::Rng::gen_range(&mut rng, -1.0..1.0))
                });
                let gu = rep.apply(&g, &u).unwrap();
                assert!((rep.norm(&gu) - rep.norm(&u)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn complexified_adjoint_su2_matches_conjugation_oracle() {
        let rep = Representation::complexified_adjoint(&GroupSpec::Su2).unwrap();
        assert_eq!(rep.dimension(), 3);
        assert_eq!(rep.weights(), &[vec![2], vec![0], vec![-2]]);
        // Torus conjugation scales E by t^2, fixes H, scales F by conj(t)^2.
        let theta = 0.41;
        let t = Complex64::from_polar(1.0, theta);
        let m = rep.realize(&su2_torus_element(theta)).unwrap();
        assert!((m[(0, 0)] - t * t).norm() < 1e-13);
        assert!((m[(1, 1)] - c(1.0, 0.0)).norm() < 1e-13);
        assert!((m[(2, 2)] - (t * t).conj()).norm() < 1e-13);
        for r in 0..3 {
            for cidx in 0..3 {
                if r != cidx {
                    assert!(m[(r, cidx)].norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn complexified_adjoint_su3_has_root_characters_and_two_zero_weights() {
        let rep = Representation::complexified_adjoint(&GroupSpec::Su3).unwrap();
        assert_eq!(rep.dimension(), 8);
        let zero_count = rep.weights().iter().filter(|w| w.iter().all(|&v| v == 0)).count();
        assert_eq!(zero_count, 2);
        let (a, b) = (0.73, -1.21);
        let g = su3_torus_element(a, b);
        let m = rep.realize(&g).unwrap();
        let angles = [a, b, -(a + b)];
        for (j, w) in rep.weights().iter().enumerate() {
            let phase: f64 = w.iter().zip(angles.iter()).map(|(&e, &th)| e as f64 * th).sum();
            let expected = Complex64::from_polar(1.0, phase);
            assert!((m[(j, j)] - expected).norm() < 1e-12, "basis {j}");
        }
    }

    #[test]
    fn complexified_adjoint_respects_bracket_equivariance() {
        // Ad(g)[X, Y] = [Ad(g)X, Ad(g)Y] transported through coordinates.
        let rep = Representation::complexified_adjoint(&GroupSpec::Su3).unwrap();
        let basis = sl3_basis();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..20 {
            let g = sample_group_element(&GroupSpec::Su3, &mut rng).unwrap();
            let m = rep.realize(&g).unwrap();
            // Reconstruct Ad(g)E12 from the matrix column and compare with
            // the direct conjugation.
            let direct = g.matrix() * &basis[0] * g.inverse().matrix();
            let mut rebuilt = DMatrix::<Complex64>::zeros(3, 3);
            for (i, b) in basis.iter().enumerate() {
                rebuilt += b * m[(i, 0)];
            }
            let defect = (rebuilt - direct).iter().map(|e| e.norm()).fold(0.0, f64::max);
            assert!(defect < 1e-12);
        }
    }

    #[test]
    fn real_adjoint_su2_is_orthogonal_in_the_trace_form() {
        let rep = Representation::real_adjoint(&GroupSpec::Su2).unwrap();
        assert_eq!(rep.dimension(), 3);
        assert_eq!(rep.gram(), &[2.0, 2.0, 2.0]);
        assert!(!rep.is_weight_basis());
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..50 {
            let g = sample_group_element(&GroupSpec::Su2, &mut rng).unwrap();
            let m = rep.realize(&g).unwrap();
            // Entries are real and the action preserves the weighted norm.
            assert!(m.iter().all(|e| e.im.abs() < 1e-12));
            let u = DVector::from_fn(3, |_, _| {
                c(rand::Rng::gen_range(&mut rng, -1.0..1.0), 0.0)
            });
            let gu = &m * &u;
            assert!((rep.norm(&gu) - rep.norm(&u)).abs() < 1e-10);
        }
    }

    #[test]
    fn real_adjoint_su3_gram_matches_trace_norms() {
        let rep = Representation::real_adjoint(&GroupSpec::Su3).unwrap();
        assert_eq!(rep.dimension(), 8);
        assert_eq!(rep.gram(), &[2.0, 6.0, 2.0, 2.0, 2.0, 2.0, 2.0, 2.0]);
    }

    #[test]
    fn defining_weights_are_standard_characters() {
        let rep = Representation::defining(GroupSpec::Su3);
        let (a, b) = (0.31, 0.87);
        let g = su3_torus_element(a, b);
        let m = rep.realize(&g).unwrap();
        let angles = [a, b, -(a + b)];
        for j in 0..3 {
            let w = &rep.weights()[j];
            let phase: f64 = w.iter().zip(angles.iter()).map(|(&e, &th)| e as f64 * th).sum();
            assert!((m[(j, j)] - Complex64::from_polar(1.0, phase)).norm() < 1e-13);
        }
    }

    #[test]
    fn internal_sum_requires_common_group_and_drops_zero_summands() {
        let a = Representation::su2_irrep(1);
        let b = Representation::defining(GroupSpec::Su3);
        assert!(matches!(
            Representation::internal_direct_sum(vec![a.clone(), b]),
            Err(Error::GroupMismatch(_))
        ));
        let z = Representation::zero(GroupSpec::Su2);
        let s = Representation::internal_direct_sum(vec![a.clone(), z]).unwrap();
        assert_eq!(s.dimension(), 2);
        assert_eq!(s.weights(), a.weights());
        let two = Representation::internal_direct_sum(vec![a.clone(), a]).unwrap();
        assert_eq!(two.dimension(), 4);
        assert_eq!(two.group(), &GroupSpec::Su2);
    }

    #[test]
    fn external_sum_of_two_su2_adjoints_has_dimension_six() {
        let part = || Representation::complexified_adjoint(&GroupSpec::Su2).unwrap();
        let sum = Representation::external_direct_sum(vec![part(), part()]).unwrap();
        assert_eq!(sum.dimension(), 6);
        assert_eq!(
            sum.group(),
            &GroupSpec::product(vec![GroupSpec::Su2, GroupSpec::Su2])
        );
        assert_eq!(sum.weights()[0], vec![2, 0]);
        assert_eq!(sum.weights()[3], vec![0, 2]);
    }

    #[test]
    fn external_sum_of_defining_irreps_pads_weights_blockwise() {
        // Oracle: blockwise torus action on each factor.
        let part = || Representation::su2_irrep(1);
        let sum = Representation::external_direct_sum(vec![part(), part()]).unwrap();
        let mut ws: Vec<Vec<i64>> = sum.weights().to_vec();
        ws.sort();
        assert_eq!(
            ws,
            vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]
        );
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        let g = sample_group_element(sum.group(), &mut rng).unwrap();
        let m = sum.realize(&g).unwrap();
        // Off-diagonal blocks vanish.
        for r in 0..2 {
            for cidx in 2..4 {
                assert!(m[(r, cidx)].norm() < 1e-14);
                assert!(m[(cidx, r)].norm() < 1e-14);
            }
        }
    }

    #[test]
    fn central_twist_scales_by_the_circle_character() {
        let rep = Representation::central_twist(Representation::defining(GroupSpec::Su2), 2);
        assert_eq!(
            rep.group(),
            &GroupSpec::product(vec![GroupSpec::Torus(1), GroupSpec::Su2])
        );
        assert_eq!(rep.weights(), &[vec![2, 1], vec![2, -1]]);
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        let g = sample_group_element(rep.group(), &mut rng).unwrap();
        let t = g.matrix()[(0, 0)];
        let m = rep.realize(&g).unwrap();
        let inner = g.matrix().view((1, 1), (2, 2)).into_owned();
        let defect = (m - inner * t * t)
            .iter()
            .map(|e| e.norm())
            .fold(0.0, f64::max);
        assert!(defect < 1e-13);
    }

    #[test]
    fn weight_decomposition_groups_by_character() {
        let rep = Representation::su2_irrep(2);
        let wd = weight_decomposition(&rep, &GroupSpec::Su2).unwrap();
        assert_eq!(
            wd.blocks,
            vec![
                (vec![-2], vec![0]),
                (vec![0], vec![1]),
                (vec![2], vec![2]),
            ]
        );
        let adj = Representation::complexified_adjoint(&GroupSpec::Su2).unwrap();
        let wd = weight_decomposition(&adj, &GroupSpec::Su2).unwrap();
        let keys: Vec<Vec<i64>> = wd.blocks.iter().map(|(k, _)| k.clone()).collect();
        assert_eq!(keys, vec![vec![-2], vec![0], vec![2]]);
        let triv = Representation::trivial(GroupSpec::Su2);
        let wd = weight_decomposition(&triv, &GroupSpec::Su2).unwrap();
        assert_eq!(wd.blocks, vec![(vec![0], vec![0])]);
    }

    #[test]
    fn central_weight_decomposition_splits_twisted_blocks() {
        let b1 = Representation::central_twist(Representation::defining(GroupSpec::Su2), 1);
        let b2 = Representation::central_twist(Representation::defining(GroupSpec::Su2), 2);
        let u = Representation::internal_direct_sum(vec![b1, b2]).unwrap();
        let wd = weight_decomposition(&u, &GroupSpec::Torus(1)).unwrap();
        assert_eq!(wd.blocks.len(), 2);
        assert_eq!(wd.blocks[0], (vec![1], vec![0, 1]));
        assert_eq!(wd.blocks[1], (vec![2], vec![2, 3]));
        // Blocks are invariant under sampled group elements (the central
        // torus is central, so its characters cut invariant blocks).
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        for _ in 0..20 {
            let g = sample_group_element(u.group(), &mut rng).unwrap();
            let m = u.realize(&g).unwrap();
            for r in 0..2 {
                for cidx in 2..4 {
                    assert!(m[(r, cidx)].norm() < 1e-12);
                    assert!(m[(cidx, r)].norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn hyperplane_family_has_expected_size_and_quotient_characters() {
        let hs = t_invariant_hyperplanes(1);
        assert_eq!(hs.len(), 2);
        let qw: Vec<i64> = hs.iter().map(|(_, w)| *w).collect();
        assert_eq!(qw, vec![-1, 1]);
        let hs = t_invariant_hyperplanes(4);
        assert_eq!(hs.len(), 5);
        let qw: Vec<i64> = hs.iter().map(|(_, w)| *w).collect();
        assert_eq!(qw, vec![-4, -2, 0, 2, 4]);
    }

    #[test]
    fn hyperplanes_are_exactly_invariant_under_torus_elements() {
        // The killed coefficient of the image vanishes exactly (not merely
        // within tolerance) whenever it vanishes for the input, because the
        // torus matrix is structurally diagonal on this basis.
        let n = 6;
        let rep = Representation::su2_irrep(n);
        let mut rng = ChaCha8Rng::seed_from_u64(28);
        for i in 0..=n {
            let mut u = DVector::from_fn(n + 1, |_, _| {
                c(rand::Rng::gen_range(&mut rng, -1.0..1.0),
                  rand::Rng::gen_range(&mut rng, -1.0..1.0))
            });
            u[i] = c(0.0, 0.0);
            let theta: f64 = rand::Rng::gen_range(&mut rng, -3.0..3.0);
            let gu = rep.apply(&su2_torus_element(theta), &u).unwrap();
            assert_eq!(gu[i], c(0.0, 0.0));
        }
    }

    #[test]
    fn middle_hyperplane_line_is_fixed_up_to_sign_by_the_rotation() {
        // n = 2, i = 1: the rotation representative maps the x y line to
        // itself with coefficient -1.
        let rep = Representation::su2_irrep(2);
        let m = rep.realize(&su2_weyl_element()).unwrap();
        assert_eq!(m[(1, 1)], c(-1.0, 0.0));
        assert_eq!(m[(0, 1)], c(0.0, 0.0));
        assert_eq!(m[(2, 1)], c(0.0, 0.0));
    }

    #[test]
    fn defining_rep_of_solvable_group_realizes_group_matrix() {
        let rep = Representation::defining(GroupSpec::UpperTriangular(3));
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let g = sample_group_element(&GroupSpec::UpperTriangular(3), &mut rng).unwrap();
        assert_eq!(rep.realize(&g).unwrap(), *g.matrix());
    }

    #[test]
    fn block_restriction_recovers_the_inner_action() {
        // U(1) x SU(2) acting on C^2 + C^2 with circle charges 1 and 2;
        // restricting the first block to the SU(2) factor gives back the
        // defining action.
        let b1 = Representation::central_twist(Representation::defining(GroupSpec::Su2), 1);
        let b2 = Representation::central_twist(Representation::defining(GroupSpec::Su2), 2);
        let u = Arc::new(Representation::internal_direct_sum(vec![b1, b2]).unwrap());
        let restricted = Representation::block_restriction(&u, &[0, 1]).unwrap();
        assert_eq!(restricted.group(), &GroupSpec::Su2);
        assert_eq!(restricted.weights(), &[vec![1], vec![-1]]);
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..20 {
            let s = sample_group_element(&GroupSpec::Su2, &mut rng).unwrap();
            let m = restricted.realize(&s).unwrap();
            let defect = (&m - s.matrix()).iter().map(|e| e.norm()).fold(0.0, f64::max);
            assert!(defect < 1e-13);
        }
    }

    #[test]
    fn realize_rejects_foreign_elements() {
        let rep = Representation::su2_irrep(2);
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let g = sample_group_element(&GroupSpec::Su3, &mut rng).unwrap();
        assert!(matches!(rep.realize(&g), Err(Error::ParentMismatch(_))));
    }
}
