//! Exact rational arithmetic and tolerance-aware linear algebra.
//!
//! Rank-sensitive predicates (normalizers, centralizer ranks, bracket
//! closure, localization sums) are decided here, either exactly over the
//! rationals or in floating point with a pinned pivot threshold. The same
//! elimination code serves both through [`LinScalar`].

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Pivot threshold for floating-point elimination on O(1)-scaled data.
pub const FLOAT_PIVOT_TOL: f64 = 1e-9;

/// Scalar interface for row elimination: exact rationals or tolerant floats.
pub trait LinScalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Treated as zero by the elimination.
    fn is_negligible(&self) -> bool;
    /// Magnitude used for pivot selection.
    fn pivot_size(&self) -> f64;
}

impl LinScalar for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
    fn pivot_size(&self) -> f64 {
        // Exact mode: any nonzero entry is an equally valid pivot; prefer
        // small numerators/denominators to keep intermediate sizes down.
        if self.is_zero() {
            0.0
        } else {
            let bits = self.numer().bits() + self.denom().bits();
            1.0 / (1.0 + bits as f64)
        }
    }
}

impl LinScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_negligible(&self) -> bool {
        self.abs() < FLOAT_PIVOT_TOL
    }
    fn pivot_size(&self) -> f64 {
        self.abs()
    }
}

impl LinScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_negligible(&self) -> bool {
        self.norm() < FLOAT_PIVOT_TOL
    }
    fn pivot_size(&self) -> f64 {
        self.norm()
    }
}

/// Row-reduce `rows` in place; returns the pivot column of each surviving
/// nonzero row. Rows end up in reduced echelon form with unit pivots.
pub fn row_reduce<S: LinScalar>(rows: &mut Vec<Vec<S>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let best = (row..rows.len()).max_by(|&a, &b| {
            rows[a][col]
                .pivot_size()
                .total_cmp(&rows[b][col].pivot_size())
        });
        let Some(best) = best else { break };
        if rows[best][col].is_negligible() {
            continue;
        }
        rows.swap(row, best);
        let inv = S::one().div(&rows[row][col]);
        for entry in rows[row].iter_mut() {
            *entry = entry.mul(&inv);
        }
        for other in 0..rows.len() {
            if other != row && !rows[other][col].is_negligible() {
                let factor = rows[other][col].clone();
                for c in 0..cols {
                    let delta = factor.mul(&rows[row][c]);
                    rows[other][c] = rows[other][c].sub(&delta);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    rows.truncate(row);
    pivots
}

pub fn rank<S: LinScalar>(rows: &[Vec<S>]) -> usize {
    let mut work = rows.to_vec();
    row_reduce(&mut work).len()
}

/// Basis of the solution space of `matrix · x = 0` (rows are equations).
pub fn nullspace<S: LinScalar>(matrix: &[Vec<S>], unknowns: usize) -> Vec<Vec<S>> {
    let mut work: Vec<Vec<S>> = matrix.to_vec();
    let pivots = row_reduce(&mut work);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..unknowns {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![S::zero(); unknowns];
        v[free] = S::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = work[r][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Echelon basis prepared once so membership queries are a single sweep.
pub struct SpanBasis<S: LinScalar> {
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: LinScalar> SpanBasis<S> {
    pub fn new(vectors: &[Vec<S>]) -> Self {
        let mut rows = vectors.to_vec();
        let pivots = row_reduce(&mut rows);
        SpanBasis { rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after eliminating every pivot coordinate; zero
    /// residual means membership.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_negligible() {
                continue;
            }
            let factor = out[p].clone();
            for c in 0..out.len() {
                let delta = factor.mul(&row[c]);
                out[c] = out[c].sub(&delta);
            }
        }
        out
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v).iter().all(LinScalar::is_negligible)
    }
}

/// Complex number with exact rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QComplex {
    pub re: BigRational,
    pub im: BigRational,
}

impl QComplex {
    pub fn zero() -> Self {
        QComplex {
            re: <BigRational as Zero>::zero(),
            im: <BigRational as Zero>::zero(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        QComplex {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn from_ratio(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        QComplex {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        QComplex {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        QComplex {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        QComplex {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        QComplex {
            re: &self.re * s,
            im: &self.im * s,
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// Dense matrix with exact Gaussian-rational entries, used wherever a rank
/// or membership answer must be reproducible bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<QComplex>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![QComplex::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> QComplex) -> Self {
        let mut m = QMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                *m.at_mut(r, c) = f(r, c);
            }
        }
        m
    }

    /// Entries given as integer pairs (re, im), row major.
    pub fn from_int_entries(rows: usize, cols: usize, entries: &[(i64, i64)]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        QMatrix {
            rows,
            cols,
            data: entries
                .iter()
                .map(|&(re, im)| QComplex::from_ints(re, im))
                .collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &QComplex {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut QComplex {
        &mut self.data[r * self.cols + c]
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.scale(s)).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let delta = a.mul(rhs.at(k, c));
                    let cur = out.at(r, c).add(&delta);
                    *out.at_mut(r, c) = cur;
                }
            }
        }
        out
    }

    pub fn bracket(&self, rhs: &Self) -> Self {
        self.matmul(rhs).sub(&rhs.matmul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(QComplex::is_zero)
    }

    /// Real coordinates (re then im per entry), for real-linear algebra on
    /// the realified matrix space.
    pub fn flatten_real(&self) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(2 * self.data.len());
        for e in &self.data {
            out.push(e.re.clone());
            out.push(e.im.clone());
        }
        out
    }

    pub fn to_complex(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |r, c| self.at(r, c).to_complex64())
    }

    /// Exact rationalization of a float matrix; succeeds only when every
    /// entry is recognized as a small-denominator rational.
    pub fn from_complex(m: &nalgebra::DMatrix<Complex64>) -> Option<Self> {
        let mut data = Vec::with_capacity(m.nrows() * m.ncols());
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                let e = m[(r, c)];
                data.push(QComplex {
                    re: rationalize(e.re)?,
                    im: rationalize(e.im)?,
                });
            }
        }
        Some(QMatrix {
            rows: m.nrows(),
            cols: m.ncols(),
            data,
        })
    }
}

/// Continued-fraction reconstruction of a rational from a float, accepted
/// only when the rational rounds back to the exact same float.
pub fn rationalize(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(<BigRational as Zero>::zero());
    }
    const MAX_DEN: i64 = 1 << 24;
    let negative = x < 0.0;
    let target = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut frac = target;
    for _ in 0..40 {
        let a = frac.floor();
        if a > i64::MAX as f64 {
            return None;
        }
        let a_int = a as i64;
        let p2 = a_int.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a_int.checked_mul(q1)?.checked_add(q0)?;
        if q2 > MAX_DEN {
            return None;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let approx = p1 as f64 / q1 as f64;
        if approx == target {
            let mut r = BigRational::new(BigInt::from(p1), BigInt::from(q1));
            if negative {
                r = -r;
            }
            return Some(r);
        }
        let rem = frac - a;
        if rem.abs() < f64::EPSILON * frac.abs().max(1.0) {
            return None;
        }
        frac = 1.0 / rem;
    }
    None
}

/// Seeded stream of small nonzero rationals for generic-point draws, so
/// rank and localization computations are exactly reproducible.
pub struct RationalStream {
    rng: ChaCha8Rng,
}

/// Default seed for generic-point draws; override through the stream
/// constructor when a run supplies its own seed.
pub const GENERIC_POINT_SEED: u64 = 987_654_321;

impl RationalStream {
    pub fn new(seed: u64) -> Self {
        use rand::SeedableRng;
        RationalStream {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Nonzero rational with numerator in ±[1, 99] and denominator in [1, 9].
    pub fn draw(&mut self) -> BigRational {
        let numer: i64 = self.rng.gen_range(1..100);
        let denom: i64 = self.rng.gen_range(1..10);
        let sign: i64 = if self.rng.gen::<bool>() { 1 } else { -1 };
        BigRational::new(BigInt::from(sign * numer), BigInt::from(denom))
    }

    pub fn draw_vector(&mut self, len: usize) -> Vec<BigRational> {
        (0..len).map(|_| self.draw()).collect()
    }
}
