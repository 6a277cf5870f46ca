//! Constructive triangularization for solvable matrix algebras and the
//! certified non-universality witnesses it yields.
//!
//! `solvable_flag` builds a full flag of invariant subspaces for the Lie
//! algebra generated by the given operators. Each step finds a common
//! eigenvector inside the joint kernel of the derived span (characters
//! kill commutators, so that kernel contains every common eigenvector and
//! carries a commuting action), then passes to the orthogonal complement.
//! Each quotient step records the character by which the algebra acts.
//!
//! `solvable_witness` turns the flag into a witness against universality
//! of a proper complex subspace V: at the first flag line whose direction
//! leaves V, the group orbit of that direction stays inside the
//! corresponding quotient line, so its normalized distance to V (measured
//! in the quotient) is a positive constant — a certificate no amount of
//! searching can beat.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{self, rank};
use crate::lie::standard_algebra_basis;
use crate::rep::subspace::{rescaled, Subspace};
use crate::rep::{RepKind, Representation};

const EIG_RESIDUAL_TOL: f64 = 1e-8;

/// Full invariant flag U_1 subset ... subset U_n with the quotient
/// characters of the input generators.
#[derive(Debug, Clone)]
pub struct SolvableFlag {
    /// filtration[j] is an orthonormal basis of U_{j+1} (j+1 vectors);
    /// each basis extends the previous one.
    pub filtration: Vec<Vec<DVector<Complex64>>>,
    /// characters[j][k] is the eigenvalue by which generator k acts on
    /// the quotient U_{j+1}/U_j.
    pub characters: Vec<Vec<Complex64>>,
}

impl SolvableFlag {
    /// The j-th new flag direction (an orthonormal chain).
    pub fn chain(&self, j: usize) -> &DVector<Complex64> {
        &self.filtration[j][j]
    }

    pub fn dim(&self) -> usize {
        self.filtration.len()
    }
}

/// Witness against universality of a proper subspace under a solvable
/// group, with the constant quotient distance as certificate.
#[derive(Debug, Clone)]
pub struct SolvableWitness {
    pub witness: DVector<Complex64>,
    /// Normalized distance of the witness orbit to V at the quotient
    /// level where it is constant.
    pub certificate: f64,
    /// Number of flag steps contained in V before the witness direction.
    pub depth: usize,
    pub flag: SolvableFlag,
}

fn flat(m: &DMatrix<Complex64>) -> Vec<Complex64> {
    m.iter().copied().collect()
}

fn add_if_independent(rows: &mut Vec<Vec<Complex64>>, mats: &mut Vec<DMatrix<Complex64>>, cand: DMatrix<Complex64>) -> bool {
    if cand.norm() < 1e-12 {
        return false;
    }
    let before = rank(rows);
    rows.push(flat(&cand));
    if rank(rows) > before {
        mats.push(cand);
        true
    } else {
        rows.pop();
        false
    }
}

/// Basis (subset of the inputs plus brackets as needed) of the complex
/// Lie algebra generated by the inputs.
fn lie_closure(generators: &[DMatrix<Complex64>]) -> Vec<DMatrix<Complex64>> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    let mut basis: Vec<DMatrix<Complex64>> = Vec::new();
    for g in generators {
        add_if_independent(&mut rows, &mut basis, g.clone());
    }
    loop {
        let mut grew = false;
        let snapshot = basis.clone();
        for (i, a) in snapshot.iter().enumerate() {
            for b in snapshot.iter().skip(i + 1) {
                let br = a * b - b * a;
                if add_if_independent(&mut rows, &mut basis, br) {
                    grew = true;
                }
            }
        }
        if !grew {
            return basis;
        }
    }
}

fn derived_span(basis: &[DMatrix<Complex64>]) -> Vec<DMatrix<Complex64>> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    let mut out: Vec<DMatrix<Complex64>> = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for b in basis.iter().skip(i + 1) {
            let br = a * b - b * a;
            add_if_independent(&mut rows, &mut out, br);
        }
    }
    out
}

fn check_solvable(closure: &[DMatrix<Complex64>]) -> Result<()> {
    let mut cur = closure.to_vec();
    for _ in 0..=closure.len() {
        if cur.is_empty() {
            return Ok(());
        }
        let next = derived_span(&cur);
        if next.len() >= cur.len() {
            return Err(Error::NotSolvable(format!(
                "derived series stalls at dimension {}",
                cur.len()
            )));
        }
        cur = next;
    }
    Ok(())
}

fn rayleigh(a: &DMatrix<Complex64>, v: &DVector<Complex64>) -> Complex64 {
    v.dotc(&(a * v)) / v.dotc(v)
}

fn max_residual(mats: &[DMatrix<Complex64>], v: &DVector<Complex64>) -> f64 {
    let mut worst: f64 = 0.0;
    for a in mats {
        let lambda = rayleigh(a, v);
        let r = (a * v - v * lambda).norm() / ((1.0 + a.norm()) * v.norm());
        worst = worst.max(r);
    }
    worst
}

/// Monic characteristic polynomial coefficients, constant term first,
/// by the trace recursion. Fine at these sizes; the eigenvector
/// residual gate downstream catches any lost precision.
fn char_poly(a: &DMatrix<Complex64>) -> Vec<Complex64> {
    let m = a.nrows();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); m + 1];
    coeffs[m] = Complex64::new(1.0, 0.0);
    let mut mk = DMatrix::<Complex64>::identity(m, m);
    for k in 1..=m {
        let amk = a * &mk;
        let ck = -amk.trace() / Complex64::new(k as f64, 0.0);
        coeffs[m - k] = ck;
        mk = amk + DMatrix::<Complex64>::identity(m, m) * ck;
    }
    coeffs
}

/// Complex eigenvalue candidates: simultaneous root iteration on the
/// characteristic polynomial, with a hard iteration cap so degenerate
/// spectra degrade gracefully instead of stalling. Spurious or
/// low-precision candidates are discarded later by the eigenvector
/// solve and its residual gate.
fn eigenvalue_candidates(a: &DMatrix<Complex64>) -> Vec<Complex64> {
    let m = a.nrows();
    if m == 0 {
        return Vec::new();
    }
    if m == 1 {
        return vec![a[(0, 0)]];
    }
    let p = char_poly(a);
    let eval = |x: Complex64| {
        let mut v = p[m];
        for k in (0..m).rev() {
            v = v * x + p[k];
        }
        v
    };
    // Deterministic distinct starting points on a spiral sized to the
    // matrix norm (a root radius bound up to the constant).
    let scale = 1.0 + a.norm();
    let mut z: Vec<Complex64> = (1..=m)
        .map(|i| Complex64::from_polar(1.0, 0.4).powu(i as u32) * Complex64::new(0.9 * scale, 0.0))
        .collect();
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for i in 0..m {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..m {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let delta = eval(z[i]) / denom;
            z[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-13 * scale {
            break;
        }
    }
    z.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    // Cluster nearly equal candidates.
    let mut dedup: Vec<Complex64> = Vec::new();
    for e in z {
        if dedup.last().map_or(true, |p| (e - p).norm() > 1e-7 * scale) {
            dedup.push(e);
        }
    }
    dedup
}

fn leading_index(v: &DVector<Complex64>) -> usize {
    let max = v.iter().map(|e| e.norm()).fold(0.0f64, f64::max);
    v.iter()
        .position(|e| e.norm() > 1e-8 * max)
        .unwrap_or(0)
}

/// Normalize so the leading coordinate is positive real and |v| = 1.
fn canonical_phase(mut v: DVector<Complex64>) -> DVector<Complex64> {
    let lead = v[leading_index(&v)];
    if lead.norm() > 0.0 {
        let phase = lead / Complex64::new(lead.norm(), 0.0);
        v /= phase;
    }
    let n = v.norm();
    if n > 0.0 {
        v /= Complex64::new(n, 0.0);
    }
    v
}

/// Orthonormal basis of the joint near-kernel of the given operators:
/// the small-eigenvalue eigenvectors of the Hermitian form
/// sum_k S_k^H S_k, extracted through the realified symmetric
/// eigenproblem (which is robust where unsymmetric solvers are not) and
/// folded back to complex vectors.
/// Eigen-decomposition of the Hermitian form sum_k S_k^H S_k through the
/// realified symmetric eigenproblem (robust where unsymmetric solvers
/// are not): eigenvalues ascending with their complex-folded vectors,
/// plus the accumulated operator scale for thresholding.
fn gram_spectrum(
    shifted: &[DMatrix<Complex64>],
    m: usize,
) -> (Vec<(f64, DVector<Complex64>)>, f64) {
    let mut h = DMatrix::<Complex64>::zeros(m, m);
    let mut scale = 1.0f64;
    for s in shifted {
        h += s.adjoint() * s;
        scale += s.norm();
    }
    let mut hr = DMatrix::<f64>::zeros(2 * m, 2 * m);
    for r in 0..m {
        for c in 0..m {
            hr[(r, c)] = h[(r, c)].re;
            hr[(r, c + m)] = -h[(r, c)].im;
            hr[(r + m, c)] = h[(r, c)].im;
            hr[(r + m, c + m)] = h[(r, c)].re;
        }
    }
    let se = hr.symmetric_eigen();
    let mut order: Vec<usize> = (0..2 * m).collect();
    order.sort_by(|&i, &j| {
        se.eigenvalues[i]
            .total_cmp(&se.eigenvalues[j])
            .then(i.cmp(&j))
    });
    let spectrum = order
        .into_iter()
        .map(|k| {
            let col = se.eigenvectors.column(k);
            let v = DVector::from_fn(m, |i, _| Complex64::new(col[i], col[i + m]));
            (se.eigenvalues[k], v)
        })
        .collect();
    (spectrum, scale)
}

/// Orthonormal basis of the joint near-kernel of the given operators.
/// Each complex kernel direction appears twice in the realification
/// (once per phase); the orthonormalization drops the duplicates.
fn joint_kernel_onb(shifted: &[DMatrix<Complex64>], m: usize) -> Vec<DVector<Complex64>> {
    let (spectrum, scale) = gram_spectrum(shifted, m);
    let tol = (1e-6 * scale).powi(2);
    let mut picked: Vec<DVector<Complex64>> = Vec::new();
    for (eig, cand) in spectrum {
        if eig > tol {
            break;
        }
        let mut w = cand;
        for q in &picked {
            let c = q.dotc(&w);
            w -= q * c;
        }
        let n = w.norm();
        if n > 1e-6 {
            picked.push(w / Complex64::new(n, 0.0));
        }
    }
    picked
}

/// Sharpen an approximate joint eigenvector of a family: with the
/// Rayleigh shifts of the current iterate held fixed, the best joint
/// near-null direction is the minimal eigenvector of the shifted Gram
/// form. Two or three repeats reach eigensolver accuracy.
fn refine_joint_eigenvector(
    family: &[DMatrix<Complex64>],
    mut v: DVector<Complex64>,
) -> DVector<Complex64> {
    let m = v.len();
    for _ in 0..3 {
        let shifted: Vec<DMatrix<Complex64>> = family
            .iter()
            .map(|x| {
                let lambda = rayleigh(x, &v);
                x - DMatrix::<Complex64>::identity(m, m) * lambda
            })
            .collect();
        let (spectrum, _) = gram_spectrum(&shifted, m);
        if let Some((_, w)) = spectrum.into_iter().next() {
            let n = w.norm();
            if n > 1e-12 {
                v = w / Complex64::new(n, 0.0);
            }
        }
    }
    v
}

fn mgs_columns(vectors: Vec<DVector<Complex64>>) -> Vec<DVector<Complex64>> {
    let mut out: Vec<DVector<Complex64>> = Vec::new();
    for mut v in vectors {
        for q in &out {
            let c = q.dotc(&v);
            v -= q * c;
        }
        let n = v.norm();
        if n > 1e-10 {
            out.push(v / Complex64::new(n, 0.0));
        }
    }
    out
}

/// Orthonormal vectors mapped from subspace coordinates back to C^m.
fn expand_through(
    coords: &[DVector<Complex64>],
    frame: &[DVector<Complex64>],
    m: usize,
) -> Vec<DVector<Complex64>> {
    coords
        .iter()
        .map(|c| {
            let mut v = DVector::from_element(m, Complex64::new(0.0, 0.0));
            for (coef, q) in c.iter().zip(frame) {
                v += q * *coef;
            }
            v
        })
        .collect()
}

/// Pivot column of the reduced echelon form of the span: the earliest
/// coordinate at which some member of the subspace is nonzero.
fn span_leading_index(vectors: &[DVector<Complex64>]) -> usize {
    let mut rows: Vec<Vec<Complex64>> = vectors.iter().map(|v| v.iter().copied().collect()).collect();
    let pivots = exact::row_reduce(&mut rows);
    pivots.first().copied().unwrap_or(usize::MAX)
}

/// The unique reduced-echelon member of the span with the earliest
/// leading coordinate, normalized. Deterministic in the span itself.
fn span_representative(vectors: &[DVector<Complex64>], m: usize) -> DVector<Complex64> {
    let mut rows: Vec<Vec<Complex64>> = vectors.iter().map(|v| v.iter().copied().collect()).collect();
    exact::row_reduce(&mut rows);
    match rows.first() {
        Some(row) => canonical_phase(DVector::from_iterator(m, row.iter().copied())),
        None => span_representative(
            &[DVector::from_fn(m, |j, _| {
                if j == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })],
            m,
        ),
    }
}

/// A common eigenvector of the Lie algebra spanned by `basis` on C^m.
/// Requires the span to be solvable. Deterministic: among the candidate
/// eigenvectors the one with the earliest leading coordinate wins.
///
/// Every common eigenvector is annihilated by commutators (a character
/// kills brackets), so all of them live in the joint kernel K of the
/// derived span. K is invariant under the whole algebra because the
/// derived span is an ideal, and on K the algebra acts by commuting
/// operators; cutting K down one operator eigenspace at a time therefore
/// never discards a common eigenvector and needs no shifted near-kernels.
fn common_eigenvector(basis: &[DMatrix<Complex64>], m: usize) -> Result<DVector<Complex64>> {
    let mut rows = Vec::new();
    let mut lbasis: Vec<DMatrix<Complex64>> = Vec::new();
    for b in basis {
        add_if_independent(&mut rows, &mut lbasis, b.clone());
    }
    if lbasis.is_empty() {
        // Zero algebra: every vector is a common eigenvector.
        let mut e = DVector::from_element(m, Complex64::new(0.0, 0.0));
        e[0] = Complex64::new(1.0, 0.0);
        return Ok(e);
    }
    let d = derived_span(&lbasis);
    if d.len() >= lbasis.len() {
        return Err(Error::NotSolvable(
            "derived subalgebra is not proper".into(),
        ));
    }
    let mut kernel: Vec<DVector<Complex64>> = if d.is_empty() {
        (0..m)
            .map(|i| {
                DVector::from_fn(m, |j, _| {
                    if i == j {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                })
            })
            .collect()
    } else {
        joint_kernel_onb(&d, m)
    };
    if kernel.is_empty() {
        let (spectrum, scale) = gram_spectrum(&d, m);
        let residual = spectrum
            .first()
            .map(|(value, _)| value.max(0.0).sqrt() / scale)
            .unwrap_or(f64::INFINITY);
        return Err(Error::EigenvectorFailure { residual });
    }
    for x in &lbasis {
        if kernel.len() <= 1 {
            break;
        }
        let k = kernel.len();
        let mut xk = DMatrix::<Complex64>::zeros(k, k);
        for (c, qc) in kernel.iter().enumerate() {
            let image = x * qc;
            for (r, qr) in kernel.iter().enumerate() {
                xk[(r, c)] = qr.dotc(&image);
            }
        }
        let mut best: Option<(usize, Complex64, Vec<DVector<Complex64>>)> = None;
        for mu in eigenvalue_candidates(&xk) {
            let shifted = &xk - DMatrix::<Complex64>::identity(k, k) * mu;
            let space = joint_kernel_onb(&[shifted], k);
            if space.is_empty() {
                continue;
            }
            let ambient = expand_through(&space, &kernel, m);
            let lead = span_leading_index(&ambient);
            let better = match &best {
                None => true,
                Some((bl, bmu, _)) => match lead.cmp(bl) {
                    std::cmp::Ordering::Less => true,
                    std::cmp::Ordering::Greater => false,
                    std::cmp::Ordering::Equal => match mu.re.total_cmp(&bmu.re) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Greater => false,
                        std::cmp::Ordering::Equal => {
                            mu.im.total_cmp(&bmu.im) == std::cmp::Ordering::Less
                        }
                    },
                },
            };
            if better {
                best = Some((lead, mu, ambient));
            }
        }
        if let Some((_, _, space)) = best {
            kernel = space;
        }
    }
    let direct = span_representative(&kernel, m);
    let refined = canonical_phase(refine_joint_eigenvector(&lbasis, direct.clone()));
    let (winner, r) = {
        let rd = max_residual(&lbasis, &direct);
        let rr = max_residual(&lbasis, &refined);
        if rd <= rr { (direct, rd) } else { (refined, rr) }
    };
    if r < EIG_RESIDUAL_TOL {
        Ok(winner)
    } else {
        Err(Error::EigenvectorFailure { residual: r })
    }
}

/// Full invariant flag for the solvable algebra generated by the given
/// operators on C^m, with per-step characters of each input generator.
pub fn solvable_flag(generators: &[DMatrix<Complex64>]) -> Result<SolvableFlag> {
    if generators.is_empty() {
        return Err(Error::Config("no generators given".into()));
    }
    let m = generators[0].nrows();
    for g in generators {
        if g.nrows() != m || g.ncols() != m {
            return Err(Error::Config("generators must be square and equal-sized".into()));
        }
    }
    let closure = lie_closure(generators);
    check_solvable(&closure)?;

    // Walk down the quotients, carrying an isometry T from current
    // coordinates back to ambient ones.
    let mut chain: Vec<DVector<Complex64>> = Vec::new();
    let mut characters: Vec<Vec<Complex64>> = Vec::new();
    let mut gens_cur: Vec<DMatrix<Complex64>> = generators.to_vec();
    let mut alg_cur: Vec<DMatrix<Complex64>> = closure;
    let mut t: DMatrix<Complex64> = DMatrix::identity(m, m);
    let mut m_cur = m;
    while m_cur > 0 {
        let v = common_eigenvector(&alg_cur, m_cur)?;
        characters.push(gens_cur.iter().map(|g| rayleigh(g, &v)).collect());
        chain.push(canonical_phase(&t * &v));
        if m_cur == 1 {
            break;
        }
        // Orthonormal complement of v in current coordinates.
        let mut q_cols: Vec<DVector<Complex64>> = vec![v.normalize()];
        for i in 0..m_cur {
            let e = DVector::from_fn(m_cur, |j, _| {
                if j == i {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            q_cols.push(e);
        }
        let onb = mgs_columns(q_cols);
        debug_assert_eq!(onb.len(), m_cur);
        let comp = &onb[1..];
        let compress = |a: &DMatrix<Complex64>| -> DMatrix<Complex64> {
            let mut out = DMatrix::<Complex64>::zeros(m_cur - 1, m_cur - 1);
            for (c, qc) in comp.iter().enumerate() {
                let image = a * qc;
                for (r, qr) in comp.iter().enumerate() {
                    out[(r, c)] = qr.dotc(&image);
                }
            }
            out
        };
        gens_cur = gens_cur.iter().map(&compress).collect();
        alg_cur = alg_cur.iter().map(&compress).collect();
        let mut t_next = DMatrix::<Complex64>::zeros(m, m_cur - 1);
        for (c, qc) in comp.iter().enumerate() {
            let ambient = &t * qc;
            t_next.set_column(c, &ambient);
        }
        t = t_next;
        m_cur -= 1;
    }

    // Verify invariance of every U_j under every generator.
    let mut worst: f64 = 0.0;
    for j in 0..chain.len() {
        let prefix = &chain[0..=j];
        for a in generators {
            for b in prefix {
                let mut image = a * b;
                for q in prefix {
                    let c = q.dotc(&image);
                    image -= q * c;
                }
                worst = worst.max(image.norm() / (1.0 + a.norm()));
            }
        }
    }
    if worst > EIG_RESIDUAL_TOL {
        return Err(Error::EigenvectorFailure { residual: worst });
    }

    let filtration: Vec<Vec<DVector<Complex64>>> =
        (0..chain.len()).map(|j| chain[0..=j].to_vec()).collect();
    Ok(SolvableFlag {
        filtration,
        characters,
    })
}

/// The infinitesimal action of an algebra element on the representation
/// space, for the representation kinds solvable groups carry.
pub(crate) fn algebra_action(
    rep: &Representation,
    x: &DMatrix<Complex64>,
) -> Result<DMatrix<Complex64>> {
    let dim = rep.dimension();
    match rep.kind() {
        RepKind::Trivial => Ok(DMatrix::zeros(dim, dim)),
        RepKind::Defining => Ok(x.clone()),
        RepKind::DiagonalCharacters => {
            let mut m = DMatrix::<Complex64>::zeros(dim, dim);
            for (i, w) in rep.weights().iter().enumerate() {
                let mut s = Complex64::new(0.0, 0.0);
                for (c, &wc) in w.iter().enumerate() {
                    s += x[(c, c)] * Complex64::new(wc as f64, 0.0);
                }
                m[(i, i)] = s;
            }
            Ok(m)
        }
        RepKind::InternalSum(parts) => {
            let mut m = DMatrix::<Complex64>::zeros(dim, dim);
            let mut off = 0;
            for p in parts {
                let sub = algebra_action(p, x)?;
                for r in 0..sub.nrows() {
                    for c in 0..sub.ncols() {
                        m[(off + r, off + c)] = sub[(r, c)];
                    }
                }
                off += sub.nrows();
            }
            Ok(m)
        }
        RepKind::ExternalSum(parts) => {
            let offsets = rep.group().factor_offsets();
            let mut m = DMatrix::<Complex64>::zeros(dim, dim);
            let mut off = 0;
            for (i, p) in parts.iter().enumerate() {
                let fdim = p.group().model_dim();
                let sub_x = x.view((offsets[i], offsets[i]), (fdim, fdim)).into_owned();
                let sub = algebra_action(p, &sub_x)?;
                for r in 0..sub.nrows() {
                    for c in 0..sub.ncols() {
                        m[(off + r, off + c)] = sub[(r, c)];
                    }
                }
                off += sub.nrows();
            }
            Ok(m)
        }
        RepKind::CentralTwist { inner, charge } => {
            let n = x.nrows();
            let sub_x = x.view((1, 1), (n - 1, n - 1)).into_owned();
            let mut m = algebra_action(inner, &sub_x)?;
            let scale = x[(0, 0)] * Complex64::new(*charge as f64, 0.0);
            for i in 0..dim {
                m[(i, i)] += scale;
            }
            Ok(m)
        }
        _ => Err(Error::UnsupportedGroup(
            "no infinitesimal action model for this representation kind".into(),
        )),
    }
}

/// Constructive witness that a proper complex subspace V misses some
/// orbit of a connected solvable group, with the constant quotient
/// distance as certificate.
pub fn solvable_witness(rep: &Arc<Representation>, v: &Subspace) -> Result<SolvableWitness> {
    if !rep.group().is_solvable() {
        return Err(Error::UnsupportedGroup(format!(
            "{} is not solvable",
            rep.group().label()
        )));
    }
    if !v.is_complex() {
        return Err(Error::Config(
            "solvable witnesses need a complex subspace".into(),
        ));
    }
    if v.ambient().group() != rep.group() || v.ambient().dimension() != rep.dimension() {
        return Err(Error::Config(
            "representation and subspace ambient disagree".into(),
        ));
    }
    if !v.is_proper() {
        return Err(Error::NotProper(
            "the whole space is trivially universal".into(),
        ));
    }
    let generators: Vec<DMatrix<Complex64>> = standard_algebra_basis(rep.group())?
        .iter()
        .map(|q| algebra_action(rep, &q.to_complex()))
        .collect::<Result<Vec<_>>>()?;
    let flag = solvable_flag(&generators)?;
    let depth = (0..flag.dim())
        .find(|&j| !v.contains(flag.chain(j), 1e-8))
        .ok_or_else(|| {
            Error::NotProper("every flag direction lies in the subspace".into())
        })?;

    // Certificate: normalized distance in the quotient by U_depth,
    // computed in the rescaled coordinates of the invariant form.
    let prev: Vec<DVector<Complex64>> = (0..depth)
        .map(|j| rescaled(v.ambient(), flag.chain(j)))
        .collect();
    let prev_onb = mgs_columns(prev);
    let project = |w: &DVector<Complex64>| -> DVector<Complex64> {
        let mut r = w.clone();
        for q in &prev_onb {
            let c = q.dotc(&r);
            r -= q * c;
        }
        r
    };
    let u_r = project(&rescaled(v.ambient(), flag.chain(depth)));
    let pv_onb = mgs_columns(v.rescaled_onb_complex().iter().map(&project).collect());
    let mut resid = u_r.clone();
    for q in &pv_onb {
        let c = q.dotc(&resid);
        resid -= q * c;
    }
    let certificate = resid.norm() / u_r.norm();
    Ok(SolvableWitness {
        witness: flag.chain(depth).clone(),
        certificate,
        depth,
        flag,
    })
}
