//! Linear-algebraic analysis of Lie subalgebras.
//!
//! All subalgebras are treated as real Lie algebras given by a matrix
//! basis (a complex subalgebra contributes both `E` and `iE` to its real
//! basis). The operations are plain linear algebra over the realified
//! coordinates: the normalizer `N_g(h) = { X in g : [X, h] <= h }` is a
//! nullspace computation, the rank of a compact subalgebra is the
//! dimension of the centralizer of a generic element, and Borel
//! containment for torus-stable subalgebras of a complexified algebra is
//! an enumeration over the finitely many positive systems (Weyl images of
//! the standard one).

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{nullspace, rank, RationalStream, FLOAT_PIVOT_TOL};
use crate::lie::roots::{weyl_group, RootSystem, Weight};
use crate::lie::{standard_algebra_basis, AlgebraElement, GroupSpec, ALGEBRAIC_TOL};

/// Seed for the generic rational coefficients used by rank computations.
const RANK_DRAW_SEED: u64 = 192_837_465;

/// A real Lie subalgebra of a catalog ambient algebra, given by a basis;
/// optionally tagged with the torus-stable root set it was built from.
#[derive(Debug, Clone)]
pub struct SubalgebraSpec {
    ambient: GroupSpec,
    basis: Vec<AlgebraElement>,
    t_stable_root_set: Option<BTreeSet<Weight>>,
}

fn flat(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * m.len());
    for e in m.iter() {
        out.push(e.re);
        out.push(e.im);
    }
    out
}

/// Orthonormal basis (rows) of the real span of the given matrices.
struct RealSpan {
    rows: Vec<Vec<f64>>,
}

impl RealSpan {
    fn new(mats: &[&DMatrix<Complex64>]) -> RealSpan {
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for m in mats {
            let mut v = flat(m);
            for q in &rows {
                let dot: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (x, qk) in v.iter_mut().zip(q) {
                    *x -= dot * qk;
                }
            }
            let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > FLOAT_PIVOT_TOL {
                for x in v.iter_mut() {
                    *x /= norm;
                }
                rows.push(v);
            }
        }
        RealSpan { rows }
    }

    /// Component of `v` orthogonal to the span.
    fn residual(&self, v: &[f64]) -> Vec<f64> {
        let mut r = v.to_vec();
        for q in &self.rows {
            let dot: f64 = q.iter().zip(&r).map(|(a, b)| a * b).sum();
            for (x, qk) in r.iter_mut().zip(q) {
                *x -= dot * qk;
            }
        }
        r
    }

    fn distance(&self, v: &[f64]) -> f64 {
        self.residual(v).iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl SubalgebraSpec {
    /// Validates independence, common parent, and bracket closure.
    pub fn new(
        ambient: GroupSpec,
        basis: Vec<AlgebraElement>,
        t_stable_root_set: Option<BTreeSet<Weight>>,
    ) -> Result<SubalgebraSpec> {
        for b in &basis {
            if b.parent() != &ambient {
                return Err(Error::ParentMismatch(format!(
                    "subalgebra basis element belongs to {}, ambient is {}",
                    b.parent().label(),
                    ambient.label()
                )));
            }
        }
        let flats: Vec<Vec<f64>> = basis.iter().map(|b| flat(b.matrix())).collect();
        if rank(&flats) != basis.len() {
            return Err(Error::InvalidSubalgebra(
                "basis is linearly dependent over R".into(),
            ));
        }
        let span = RealSpan::new(&basis.iter().map(|b| b.matrix()).collect::<Vec<_>>());
        for (i, bi) in basis.iter().enumerate() {
            for bj in basis.iter().skip(i + 1) {
                let br = bi.bracket(bj)?;
                let dist = span.distance(&flat(br.matrix()));
                if dist > ALGEBRAIC_TOL {
                    return Err(Error::InvalidSubalgebra(format!(
                        "not closed under bracket: residual {dist:.3e}"
                    )));
                }
            }
        }
        Ok(SubalgebraSpec {
            ambient,
            basis,
            t_stable_root_set,
        })
    }

    pub fn ambient(&self) -> &GroupSpec {
        &self.ambient
    }

    pub fn basis(&self) -> &[AlgebraElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn t_stable_root_set(&self) -> Option<&BTreeSet<Weight>> {
        self.t_stable_root_set.as_ref()
    }
}

/// Standard ambient basis as validated elements (compact forms are tagged
/// as real forms; complexified and solvable ambients are not).
pub fn ambient_basis(g: &GroupSpec) -> Result<Vec<AlgebraElement>> {
    let real_form = matches!(
        g,
        GroupSpec::Su2 | GroupSpec::Su3 | GroupSpec::Torus(_) | GroupSpec::Product(_)
    ) && is_compact(g);
    standard_algebra_basis(g)?
        .into_iter()
        .map(|q| AlgebraElement::new(q.to_complex(), g.clone(), real_form))
        .collect()
}

fn is_compact(g: &GroupSpec) -> bool {
    match g {
        GroupSpec::Su2 | GroupSpec::Su3 | GroupSpec::Torus(_) => true,
        GroupSpec::Product(fs) => fs.iter().all(is_compact),
        _ => false,
    }
}

/// Basis of `N_g(h) = { X in g : [X, b] in span(h) for all basis b of h }`.
pub fn normalizer_subalgebra(
    g_basis: &[AlgebraElement],
    h: &SubalgebraSpec,
) -> Result<Vec<AlgebraElement>> {
    if g_basis.is_empty() {
        return Err(Error::InvalidSubalgebra("empty ambient basis".into()));
    }
    for b in g_basis {
        if b.parent() != h.ambient() {
            return Err(Error::ParentMismatch(
                "ambient basis and subalgebra disagree on the parent group".into(),
            ));
        }
    }
    let span = RealSpan::new(&h.basis.iter().map(|b| b.matrix()).collect::<Vec<_>>());
    // Constraint matrix: rows are the coordinates of the off-span part of
    // [g_k, b_j]; unknown is the coefficient vector over g_basis.
    let mut constraint_rows: Vec<Vec<f64>> = Vec::new();
    let flat_len = 2 * h.ambient.model_dim() * h.ambient.model_dim();
    for b in &h.basis {
        let mut residuals: Vec<Vec<f64>> = Vec::with_capacity(g_basis.len());
        for gk in g_basis {
            let br = gk.bracket(b)?;
            residuals.push(span.residual(&flat(br.matrix())));
        }
        for coord in 0..flat_len {
            let row: Vec<f64> = residuals.iter().map(|r| r[coord]).collect();
            if row.iter().any(|x| x.abs() > FLOAT_PIVOT_TOL) {
                constraint_rows.push(row);
            }
        }
    }
    let coeff_basis = nullspace(&constraint_rows, g_basis.len());
    let mut out = Vec::with_capacity(coeff_basis.len());
    for coeffs in coeff_basis {
        let mut m = DMatrix::<Complex64>::zeros(h.ambient.model_dim(), h.ambient.model_dim());
        for (c, gk) in coeffs.iter().zip(g_basis) {
            m += gk.matrix() * Complex64::new(*c, 0.0);
        }
        out.push(AlgebraElement::new(
            m,
            h.ambient.clone(),
            g_basis.iter().all(|b| b.real_form()),
        )?);
    }
    // The normalizer always contains h itself.
    let norm_span = RealSpan::new(&out.iter().map(|b| b.matrix()).collect::<Vec<_>>());
    for b in &h.basis {
        debug_assert!(norm_span.distance(&flat(b.matrix())) < 1e-8);
    }
    let _ = norm_span;
    Ok(out)
}

fn centralizer_dim_in(h: &SubalgebraSpec, coeffs: &[f64]) -> Result<usize> {
    let dim = h.ambient.model_dim();
    let mut x = DMatrix::<Complex64>::zeros(dim, dim);
    for (c, b) in coeffs.iter().zip(&h.basis) {
        x += b.matrix() * Complex64::new(*c, 0.0);
    }
    // Unknown y over the h basis; constraint [X, sum y_j b_j] = 0.
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(h.basis.len());
    for b in &h.basis {
        let br = &x * b.matrix() - b.matrix() * &x;
        columns.push(flat(&br));
    }
    let flat_len = 2 * dim * dim;
    let mut constraint_rows = Vec::new();
    for coord in 0..flat_len {
        let row: Vec<f64> = columns.iter().map(|c| c[coord]).collect();
        if row.iter().any(|v| v.abs() > FLOAT_PIVOT_TOL) {
            constraint_rows.push(row);
        }
    }
    Ok(nullspace(&constraint_rows, h.basis.len()).len())
}

/// Rank of a compact-form subalgebra: the dimension of the centralizer of
/// a generic element, confirmed by three agreeing draws.
pub fn rank_of_compact_subalgebra(h: &SubalgebraSpec) -> Result<usize> {
    if !is_compact(&h.ambient) {
        return Err(Error::UnsupportedGroup(format!(
            "rank computation needs a compact ambient algebra, got {}",
            h.ambient.label()
        )));
    }
    if h.basis.is_empty() {
        return Ok(0);
    }
    let mut stream = RationalStream::new(RANK_DRAW_SEED);
    let mut counts: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    for retry in 0..8usize {
        let coeffs: Vec<f64> = stream
            .draw_vector(h.basis.len())
            .iter()
            .map(|q| q.to_f64().unwrap())
            .collect();
        let d = centralizer_dim_in(h, &coeffs)?;
        let c = counts.entry(d).or_insert(0);
        *c += 1;
        if *c >= 3 {
            // Return the smallest dimension that reached agreement; a
            // non-generic draw can only enlarge the centralizer.
            let _ = retry;
            return Ok(d);
        }
    }
    Err(Error::DegenerateDraws { retries: 8 })
}

/// Whether the subalgebra contains a maximal toral subalgebra of the
/// ambient compact algebra.
pub fn is_maximal_rank(g_spec: &GroupSpec, h: &SubalgebraSpec) -> Result<bool> {
    Ok(rank_of_compact_subalgebra(h)? == g_spec.rank())
}

/// Whether the root set contains some positive system (a Weyl image of
/// the standard one). For a torus-stable subalgebra this is exactly
/// containment of a Borel subalgebra of the complexification.
pub fn contains_positive_system(rs: &RootSystem, root_set: &BTreeSet<Weight>) -> Result<bool> {
    for r in root_set {
        if !rs.contains(r) {
            return Err(Error::InvalidRoots(format!(
                "{r:?} is not a root of the given system"
            )));
        }
    }
    let weyl = weyl_group(rs);
    'outer: for w_idx in 0..weyl.order() {
        for alpha in &rs.positive_roots {
            if !root_set.contains(&weyl.apply(w_idx, alpha)) {
                continue 'outer;
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// Dimension test `dim N_g(h) == dim h`: the computable shadow of "h is
/// the Lie algebra of a closed connected subgroup realized as the
/// identity component of its own normalizer". Fails e.g. for a line of
/// irrational slope in a torus algebra, whose subgroup winds densely.
pub fn closedness_criterion(g_spec: &GroupSpec, h: &SubalgebraSpec) -> Result<bool> {
    let g_basis = ambient_basis(g_spec)?;
    let n = normalizer_subalgebra(&g_basis, h)?;
    Ok(n.len() == h.dim())
}

// ---------------------------------------------------------------------------
// Catalog constructors
// ---------------------------------------------------------------------------

fn embed_block(
    outer_dim: usize,
    offset: usize,
    block: &DMatrix<Complex64>,
) -> DMatrix<Complex64> {
    let mut m = DMatrix::<Complex64>::zeros(outer_dim, outer_dim);
    for r in 0..block.nrows() {
        for c in 0..block.ncols() {
            m[(offset + r, offset + c)] = block[(r, c)];
        }
    }
    m
}

fn su2_basis_matrices() -> Vec<DMatrix<Complex64>> {
    let i = Complex64::i();
    vec![
        DMatrix::from_row_slice(2, 2, &[i, 0.0.into(), 0.0.into(), -i]),
        DMatrix::from_row_slice(2, 2, &[0.0.into(), 1.0.into(), (-1.0).into(), 0.0.into()]),
        DMatrix::from_row_slice(2, 2, &[0.0.into(), i, i, 0.0.into()]),
    ]
}

/// The maximal toral subalgebra (diagonal part) of a compact catalog
/// algebra.
pub fn maximal_torus_subalgebra(g: &GroupSpec) -> Result<SubalgebraSpec> {
    let i = Complex64::i();
    let dim = g.model_dim();
    let mut mats: Vec<DMatrix<Complex64>> = Vec::new();
    match g {
        GroupSpec::Su2 => {
            mats.push(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                i, -i,
            ])));
        }
        GroupSpec::Su3 => {
            mats.push(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                i,
                -i,
                0.0.into(),
            ])));
            mats.push(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
                i,
                i,
                -2.0 * i,
            ])));
        }
        GroupSpec::Torus(k) => {
            for j in 0..*k {
                let mut m = DMatrix::<Complex64>::zeros(*k, *k);
                m[(j, j)] = i;
                mats.push(m);
            }
        }
        GroupSpec::Product(fs) => {
            let offsets = g.factor_offsets();
            for (f, &off) in fs.iter().zip(&offsets) {
                let inner = maximal_torus_subalgebra(f)?;
                for b in inner.basis() {
                    mats.push(embed_block(dim, off, b.matrix()));
                }
            }
        }
        other => {
            return Err(Error::UnsupportedGroup(format!(
                "no compact maximal torus for {}",
                other.label()
            )))
        }
    }
    let basis = mats
        .into_iter()
        .map(|m| AlgebraElement::new(m, g.clone(), true))
        .collect::<Result<Vec<_>>>()?;
    SubalgebraSpec::new(g.clone(), basis, None)
}

/// One su(2) factor block of su(2) x su(2).
pub fn su2_factor_block(which: usize) -> Result<SubalgebraSpec> {
    let g = GroupSpec::product(vec![GroupSpec::Su2, GroupSpec::Su2]);
    if which > 1 {
        return Err(Error::IndexOutOfRange {
            index: which,
            dim: 2,
        });
    }
    let basis = su2_basis_matrices()
        .into_iter()
        .map(|m| AlgebraElement::new(embed_block(4, 2 * which, &m), g.clone(), true))
        .collect::<Result<Vec<_>>>()?;
    SubalgebraSpec::new(g, basis, None)
}

/// The diagonally embedded su(2) inside su(2) x su(2).
pub fn diagonal_su2_in_su2_squared() -> Result<SubalgebraSpec> {
    let g = GroupSpec::product(vec![GroupSpec::Su2, GroupSpec::Su2]);
    let basis = su2_basis_matrices()
        .into_iter()
        .map(|m| {
            let mut d = embed_block(4, 0, &m);
            d += embed_block(4, 2, &m);
            AlgebraElement::new(d, g.clone(), true)
        })
        .collect::<Result<Vec<_>>>()?;
    SubalgebraSpec::new(g, basis, None)
}

/// The block u(2) inside su(3): traceless extensions of the top-left 2x2
/// unitary block.
pub fn u2_block_in_su3() -> Result<SubalgebraSpec> {
    let g = GroupSpec::Su3;
    let i = Complex64::i();
    let mut mats: Vec<DMatrix<Complex64>> = su2_basis_matrices()
        .iter()
        .map(|m| embed_block(3, 0, m))
        .collect();
    mats.push(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
        i,
        i,
        -2.0 * i,
    ])));
    let basis = mats
        .into_iter()
        .map(|m| AlgebraElement::new(m, g.clone(), true))
        .collect::<Result<Vec<_>>>()?;
    SubalgebraSpec::new(g, basis, None)
}

/// The whole ambient algebra as a subalgebra of itself.
pub fn full_subalgebra(g: &GroupSpec) -> Result<SubalgebraSpec> {
    SubalgebraSpec::new(g.clone(), ambient_basis(g)?, None)
}

/// The line of slope `alpha` through the origin of the rank-2 torus
/// algebra; irrational slopes generate dense (non-closed) windings.
pub fn torus_line(alpha: f64) -> Result<SubalgebraSpec> {
    let g = GroupSpec::Torus(2);
    let i = Complex64::i();
    let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![i, alpha * i]));
    let basis = vec![AlgebraElement::new(m, g.clone(), true)?];
    SubalgebraSpec::new(g, basis, None)
}

fn root_matrix(g_compact: &GroupSpec, root: &Weight) -> Result<DMatrix<Complex64>> {
    match g_compact {
        GroupSpec::Su2 => {
            let mut m = DMatrix::<Complex64>::zeros(2, 2);
            match root.as_slice() {
                [2] => m[(0, 1)] = 1.0.into(),
                [-2] => m[(1, 0)] = 1.0.into(),
                _ => return Err(Error::InvalidRoots(format!("{root:?} is not an A1 root"))),
            }
            Ok(m)
        }
        GroupSpec::Su3 => {
            let from = root.iter().position(|&c| c == 1);
            let to = root.iter().position(|&c| c == -1);
            match (from, to) {
                (Some(r), Some(c)) if root.iter().map(|v| v.abs()).sum::<i64>() == 2 => {
                    let mut m = DMatrix::<Complex64>::zeros(3, 3);
                    m[(r, c)] = 1.0.into();
                    Ok(m)
                }
                _ => Err(Error::InvalidRoots(format!(
                    "{root:?} is not a difference of coordinate characters"
                ))),
            }
        }
        other => Err(Error::UnsupportedGroup(format!(
            "no root-space model for {}",
            other.label()
        ))),
    }
}

/// Torus-stable subalgebra of the complexified algebra: the complex
/// Cartan plus the root spaces in `root_set`, as a real subalgebra.
pub fn t_stable_subalgebra(g_compact: &GroupSpec, root_set: &BTreeSet<Weight>) -> Result<SubalgebraSpec> {
    let ambient = GroupSpec::complexified(g_compact.clone())?;
    let rs = crate::lie::roots::build_root_system(g_compact)?;
    for r in root_set {
        if !rs.contains(r) {
            return Err(Error::InvalidRoots(format!(
                "{r:?} is not a root of {}",
                g_compact.label()
            )));
        }
    }
    let i = Complex64::i();
    let mut mats: Vec<DMatrix<Complex64>> = Vec::new();
    // Complex Cartan: real basis {H_j, i H_j}.
    let torus = maximal_torus_subalgebra(g_compact)?;
    for b in torus.basis() {
        mats.push(b.matrix().clone());
        mats.push(b.matrix() * i);
    }
    for root in root_set {
        let e = root_matrix(g_compact, root)?;
        mats.push(e.clone());
        mats.push(e * i);
    }
    let basis = mats
        .into_iter()
        .map(|m| AlgebraElement::new(m, ambient.clone(), false))
        .collect::<Result<Vec<_>>>()?;
    SubalgebraSpec::new(ambient, basis, Some(root_set.clone()))
}

/// The standard Borel subalgebra (Cartan plus positive root spaces) of
/// the complexification of a compact catalog group.
pub fn borel_subalgebra(g_compact: &GroupSpec) -> Result<SubalgebraSpec> {
    let rs = crate::lie::roots::build_root_system(g_compact)?;
    let set: BTreeSet<Weight> = rs.positive_roots.iter().cloned().collect();
    t_stable_subalgebra(g_compact, &set)
}

/// Coordinates of the subalgebra's basis over the ambient standard
/// algebra basis, which is trace-orthogonal. These are the vectors that
/// span the subalgebra inside the adjoint module, whose coordinates are
/// exactly those standard-basis coefficients. Fails when some basis
/// element does not lie in the real span of the standard basis.
pub fn adjoint_coordinates(h: &SubalgebraSpec) -> Result<Vec<nalgebra::DVector<Complex64>>> {
    let ambient = standard_algebra_basis(h.ambient())?;
    let mats: Vec<DMatrix<Complex64>> = ambient.iter().map(|q| q.to_complex()).collect();
    let norms: Vec<f64> = mats.iter().map(|m| (m.adjoint() * m).trace().re).collect();
    let mut out = Vec::with_capacity(h.dim());
    for b in h.basis() {
        let m = b.matrix();
        let coeffs: Vec<f64> = mats
            .iter()
            .zip(&norms)
            .map(|(e, n)| (e.adjoint() * m).trace().re / n)
            .collect();
        let mut residual = m.clone();
        for (c, e) in coeffs.iter().zip(&mats) {
            residual -= e * Complex64::new(*c, 0.0);
        }
        if residual.norm() > ALGEBRAIC_TOL * (1.0 + m.norm()) {
            return Err(Error::Config(format!(
                "subalgebra element leaves the ambient algebra (residual {:.2e})",
                residual.norm()
            )));
        }
        out.push(nalgebra::DVector::from_iterator(
            coeffs.len(),
            coeffs.iter().map(|&c| Complex64::new(c, 0.0)),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::roots::build_root_system;

    #[test]
    fn torus_normalizer_in_su2_is_the_torus() {
        let g = GroupSpec::Su2;
        let t = maximal_torus_subalgebra(&g).unwrap();
        let n = normalizer_subalgebra(&ambient_basis(&g).unwrap(), &t).unwrap();
        assert_eq!(n.len(), 1);
        assert!(closedness_criterion(&g, &t).unwrap());
    }

    #[test]
    fn irrational_torus_line_has_full_normalizer_and_fails_closedness() {
        let h = torus_line(std::f64::consts::SQRT_2).unwrap();
        let g = GroupSpec::Torus(2);
        let n = normalizer_subalgebra(&ambient_basis(&g).unwrap(), &h).unwrap();
        assert_eq!(n.len(), 2);
        assert!(!closedness_criterion(&g, &h).unwrap());
    }

    #[test]
    fn borel_in_sl2c_is_self_normalizing() {
        let b = borel_subalgebra(&GroupSpec::Su2).unwrap();
        assert_eq!(b.dim(), 4);
        let g = GroupSpec::complexified(GroupSpec::Su2).unwrap();
        let n = normalizer_subalgebra(&ambient_basis(&g).unwrap(), &b).unwrap();
        assert_eq!(n.len(), 4);
        assert!(closedness_criterion(&g, &b).unwrap());
    }

    #[test]
    fn normalizer_contains_the_subalgebra() {
        for h in [
            maximal_torus_subalgebra(&GroupSpec::Su3).unwrap(),
            u2_block_in_su3().unwrap(),
            diagonal_su2_in_su2_squared().unwrap(),
        ] {
            let g_basis = ambient_basis(h.ambient()).unwrap();
            let n = normalizer_subalgebra(&g_basis, &h).unwrap();
            let span = RealSpan::new(&n.iter().map(|b| b.matrix()).collect::<Vec<_>>());
            for b in h.basis() {
                assert!(span.distance(&flat(b.matrix())) < 1e-8);
            }
        }
    }

    #[test]
    fn ranks_of_catalog_subalgebras() {
        assert_eq!(
            rank_of_compact_subalgebra(&full_subalgebra(&GroupSpec::Su2).unwrap()).unwrap(),
            1
        );
        assert_eq!(
            rank_of_compact_subalgebra(&diagonal_su2_in_su2_squared().unwrap()).unwrap(),
            1
        );
        assert_eq!(
            rank_of_compact_subalgebra(&u2_block_in_su3().unwrap()).unwrap(),
            2
        );
        assert_eq!(
            rank_of_compact_subalgebra(&maximal_torus_subalgebra(&GroupSpec::Su3).unwrap())
                .unwrap(),
            2
        );
    }

    #[test]
    fn maximal_rank_flags_match_rank_comparison() {
        let su2 = GroupSpec::Su2;
        let su2sq = GroupSpec::product(vec![GroupSpec::Su2, GroupSpec::Su2]);
        let su3 = GroupSpec::Su3;
        assert!(is_maximal_rank(&su2, &maximal_torus_subalgebra(&su2).unwrap()).unwrap());
        assert!(!is_maximal_rank(&su2sq, &diagonal_su2_in_su2_squared().unwrap()).unwrap());
        assert!(!is_maximal_rank(&su2sq, &su2_factor_block(0).unwrap()).unwrap());
        assert!(is_maximal_rank(&su3, &u2_block_in_su3().unwrap()).unwrap());
        assert!(is_maximal_rank(&su3, &full_subalgebra(&su3).unwrap()).unwrap());
    }

    #[test]
    fn positive_system_containment_examples() {
        let a1 = build_root_system(&GroupSpec::Su2).unwrap();
        let plus: BTreeSet<Weight> = [vec![2]].into_iter().collect();
        assert!(contains_positive_system(&a1, &plus).unwrap());

        let a2 = build_root_system(&GroupSpec::Su3).unwrap();
        let a1_pair: BTreeSet<Weight> =
            [vec![1, -1, 0], vec![-1, 1, 0]].into_iter().collect();
        assert!(!contains_positive_system(&a2, &a1_pair).unwrap());

        let parabolic: BTreeSet<Weight> = [
            vec![1, -1, 0],
            vec![0, 1, -1],
            vec![1, 0, -1],
            vec![-1, 1, 0],
        ]
        .into_iter()
        .collect();
        assert!(contains_positive_system(&a2, &parabolic).unwrap());

        let bogus: BTreeSet<Weight> = [vec![2, -1, -1]].into_iter().collect();
        assert!(matches!(
            contains_positive_system(&a2, &bogus),
            Err(Error::InvalidRoots(_))
        ));
    }

    #[test]
    fn opposite_positive_system_is_detected_through_weyl_images() {
        // The set of all negative roots is the image of the standard
        // positive system under the longest element.
        let a2 = build_root_system(&GroupSpec::Su3).unwrap();
        let negatives: BTreeSet<Weight> = a2
            .positive_roots
            .iter()
            .map(|r| r.iter().map(|&c| -c).collect())
            .collect();
        assert!(contains_positive_system(&a2, &negatives).unwrap());
    }

    #[test]
    fn t_stable_catalog_dimensions_and_closure() {
        let a2 = build_root_system(&GroupSpec::Su3).unwrap();
        let all: BTreeSet<Weight> = a2.roots.iter().cloned().collect();
        let empty = BTreeSet::new();
        let borel: BTreeSet<Weight> = a2.positive_roots.iter().cloned().collect();
        assert_eq!(t_stable_subalgebra(&GroupSpec::Su3, &empty).unwrap().dim(), 4);
        assert_eq!(t_stable_subalgebra(&GroupSpec::Su3, &borel).unwrap().dim(), 10);
        assert_eq!(t_stable_subalgebra(&GroupSpec::Su3, &all).unwrap().dim(), 16);
        // A non-closed root set must be rejected: {a1, a1+a2} without
        // their bracket-generated partners is closed, but {a1, -a1-a2}
        // brackets to a root space outside the set.
        let bad: BTreeSet<Weight> = [vec![1, -1, 0], vec![-1, 0, 1]].into_iter().collect();
        assert!(matches!(
            t_stable_subalgebra(&GroupSpec::Su3, &bad),
            Err(Error::InvalidSubalgebra(_))
        ));
    }

    #[test]
    fn dependent_basis_is_rejected() {
        let g = GroupSpec::Su2;
        let i = Complex64::i();
        let h_mat = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![i, -i]));
        let b1 = AlgebraElement::new(h_mat.clone(), g.clone(), true).unwrap();
        let b2 = AlgebraElement::new(h_mat * Complex64::new(2.0, 0.0), g.clone(), true).unwrap();
        assert!(matches!(
            SubalgebraSpec::new(g, vec![b1, b2], None),
            Err(Error::InvalidSubalgebra(_))
        ));
    }

    #[test]
    fn adjoint_coordinates_reconstruct_the_basis_matrices() {
        let h = u2_block_in_su3().unwrap();
        let coords = adjoint_coordinates(&h).unwrap();
        assert_eq!(coords.len(), 4);
        let ambient: Vec<DMatrix<Complex64>> = standard_algebra_basis(&GroupSpec::Su3)
            .unwrap()
            .iter()
            .map(|q| q.to_complex())
            .collect();
        for (vec, b) in coords.iter().zip(h.basis()) {
            assert!(vec.iter().all(|c| c.im == 0.0));
            let mut rebuilt = DMatrix::<Complex64>::zeros(3, 3);
            for (c, e) in vec.iter().zip(&ambient) {
                rebuilt += e * *c;
            }
            assert!((rebuilt - b.matrix()).norm() < 1e-12);
        }
    }

    #[test]
    fn torus_line_coordinates_read_off_the_slope() {
        let h = torus_line(0.5).unwrap();
        let coords = adjoint_coordinates(&h).unwrap();
        assert_eq!(coords.len(), 1);
        assert!((coords[0][0].re - 1.0).abs() < 1e-12);
        assert!((coords[0][1].re - 0.5).abs() < 1e-12);
    }
}
