//! Linear subspaces of representations and distances to them.
//!
//! A subspace is given either by an explicit spanning set or by the set of
//! basis coordinates required to vanish. Distances and projections are
//! taken in the representation's invariant form (coordinates are rescaled
//! by the square roots of the diagonal form entries, where the form is the
//! standard one). A subspace may be complex (closed under multiplication
//! by i) or real (the real span of its vectors).

use std::collections::BTreeSet;
use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::{nullspace, rank, FLOAT_PIVOT_TOL};
use crate::rep::Representation;

/// How the subspace is described.
#[derive(Debug, Clone)]
pub enum SubspaceDesc {
    /// Span of explicit coordinate vectors (complex or real span per flag).
    BasisSpan(Vec<DVector<Complex64>>),
    /// All vectors whose coordinates at these indices vanish.
    WeightComplement(BTreeSet<usize>),
}

/// A linear subspace of a representation's model space.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient: Arc<Representation>,
    desc: SubspaceDesc,
    complex: bool,
    onb_c: Vec<DVector<Complex64>>,
    onb_r: Vec<DVector<f64>>,
}

pub(crate) fn rescaled(rep: &Representation, u: &DVector<Complex64>) -> DVector<Complex64> {
    DVector::from_fn(rep.dimension(), |i, _| {
        u[i] * Complex64::new(rep.gram()[i].sqrt(), 0.0)
    })
}

fn unscaled(rep: &Representation, u: &DVector<Complex64>) -> DVector<Complex64> {
    DVector::from_fn(rep.dimension(), |i, _| {
        u[i] / Complex64::new(rep.gram()[i].sqrt(), 0.0)
    })
}

fn realify(u: &DVector<Complex64>) -> DVector<f64> {
    DVector::from_fn(2 * u.len(), |i, _| {
        if i % 2 == 0 {
            u[i / 2].re
        } else {
            u[i / 2].im
        }
    })
}

fn unrealify(x: &DVector<f64>) -> DVector<Complex64> {
    DVector::from_fn(x.len() / 2, |i, _| Complex64::new(x[2 * i], x[2 * i + 1]))
}

impl Subspace {
    /// Span of the given vectors; `complex` selects the complex span or the
    /// real span. Vectors must be independent over the respective field.
    pub fn basis_span(
        ambient: Arc<Representation>,
        vectors: Vec<DVector<Complex64>>,
        complex: bool,
    ) -> Result<Subspace> {
        let d = ambient.dimension();
        for v in &vectors {
            if v.len() != d {
                return Err(Error::Config(format!(
                    "span vector of length {} in a {d}-dimensional space",
                    v.len()
                )));
            }
        }
        let scaled: Vec<DVector<Complex64>> =
            vectors.iter().map(|v| rescaled(&ambient, v)).collect();
        if complex {
            let rows: Vec<Vec<Complex64>> = scaled
                .iter()
                .map(|v| v.iter().copied().collect())
                .collect();
            if rank(&rows) != vectors.len() {
                return Err(Error::Config(
                    "span vectors are linearly dependent over C".into(),
                ));
            }
        } else {
            let rows: Vec<Vec<f64>> = scaled
                .iter()
                .map(|v| realify(v).iter().copied().collect())
                .collect();
            if rank(&rows) != vectors.len() {
                return Err(Error::Config(
                    "span vectors are linearly dependent over R".into(),
                ));
            }
        }
        // Orthonormalize in the rescaled coordinates.
        let mut onb_c: Vec<DVector<Complex64>> = Vec::new();
        let mut onb_r: Vec<DVector<f64>> = Vec::new();
        if complex {
            for v in &scaled {
                let mut w = v.clone();
                for b in &onb_c {
                    let coef: Complex64 = b.dotc(&w);
                    w -= b * coef;
                }
                let n = w.norm();
                if n > FLOAT_PIVOT_TOL {
                    onb_c.push(w / Complex64::new(n, 0.0));
                }
            }
        } else {
            for v in &scaled {
                let mut w = realify(v);
                for b in &onb_r {
                    let coef: f64 = b.dot(&w);
                    w -= b * coef;
                }
                let n = w.norm();
                if n > FLOAT_PIVOT_TOL {
                    onb_r.push(w / n);
                }
            }
        }
        Ok(Subspace {
            ambient,
            desc: SubspaceDesc::BasisSpan(vectors),
            complex,
            onb_c,
            onb_r,
        })
    }

    /// The subspace of vectors whose coordinates at `killed` vanish; when
    /// `complex` is false, the real span of the remaining basis vectors.
    pub fn weight_complement(
        ambient: Arc<Representation>,
        killed: BTreeSet<usize>,
        complex: bool,
    ) -> Result<Subspace> {
        let d = ambient.dimension();
        for &i in &killed {
            if i >= d {
                return Err(Error::IndexOutOfRange { index: i, dim: d });
            }
        }
        Ok(Subspace {
            ambient,
            desc: SubspaceDesc::WeightComplement(killed),
            complex,
            onb_c: Vec::new(),
            onb_r: Vec::new(),
        })
    }

    pub fn ambient(&self) -> &Arc<Representation> {
        &self.ambient
    }

    /// Orthonormal basis of a complex subspace, in the rescaled
    /// coordinates where the invariant form is standard.
    pub(crate) fn rescaled_onb_complex(&self) -> Vec<DVector<Complex64>> {
        debug_assert!(self.complex);
        match &self.desc {
            SubspaceDesc::BasisSpan(_) => self.onb_c.clone(),
            SubspaceDesc::WeightComplement(killed) => {
                let d = self.ambient.dimension();
                (0..d)
                    .filter(|i| !killed.contains(i))
                    .map(|i| {
                        DVector::from_fn(d, |j, _| {
                            if j == i {
                                Complex64::new(1.0, 0.0)
                            } else {
                                Complex64::new(0.0, 0.0)
                            }
                        })
                    })
                    .collect()
            }
        }
    }

    pub fn desc(&self) -> &SubspaceDesc {
        &self.desc
    }

    pub fn is_complex(&self) -> bool {
        self.complex
    }

    /// Dimension over the subspace's own field (complex dimension for
    /// complex subspaces, real dimension for real spans).
    pub fn dim(&self) -> usize {
        match &self.desc {
            SubspaceDesc::BasisSpan(vs) => vs.len(),
            SubspaceDesc::WeightComplement(killed) => self.ambient.dimension() - killed.len(),
        }
    }

    pub fn is_proper(&self) -> bool {
        match &self.desc {
            SubspaceDesc::WeightComplement(killed) => {
                if self.complex {
                    !killed.is_empty()
                } else {
                    true
                }
            }
            SubspaceDesc::BasisSpan(vs) => {
                if self.complex {
                    vs.len() < self.ambient.dimension()
                } else {
                    vs.len() < 2 * self.ambient.dimension()
                }
            }
        }
    }

    /// Distance from the vector to the subspace in the invariant form.
    pub fn distance(&self, u: &DVector<Complex64>) -> f64 {
        match &self.desc {
            SubspaceDesc::WeightComplement(killed) => {
                let gram = self.ambient.gram();
                let mut s = 0.0;
                for &i in killed {
                    s += gram[i] * u[i].norm_sqr();
                }
                if !self.complex {
                    for i in 0..u.len() {
                        if !killed.contains(&i) {
                            s += gram[i] * u[i].im * u[i].im;
                        }
                    }
                }
                s.sqrt()
            }
            SubspaceDesc::BasisSpan(_) => {
                let scaled = rescaled(&self.ambient, u);
                if self.complex {
                    let mut r = scaled;
                    for b in &self.onb_c {
                        let coef: Complex64 = b.dotc(&r);
                        r -= b * coef;
                    }
                    r.norm()
                } else {
                    let mut r = realify(&scaled);
                    for b in &self.onb_r {
                        let coef: f64 = b.dot(&r);
                        r -= b * coef;
                    }
                    r.norm()
                }
            }
        }
    }

    /// distance(u) / |u|, and 0 for the zero vector.
    pub fn normalized_distance(&self, u: &DVector<Complex64>) -> f64 {
        let n = self.ambient.norm(u);
        if n == 0.0 {
            0.0
        } else {
            self.distance(u) / n
        }
    }

    /// Orthogonal projection onto the subspace, in ambient coordinates.
    pub fn project(&self, u: &DVector<Complex64>) -> DVector<Complex64> {
        match &self.desc {
            SubspaceDesc::WeightComplement(killed) => DVector::from_fn(u.len(), |i, _| {
                if killed.contains(&i) {
                    Complex64::new(0.0, 0.0)
                } else if self.complex {
                    u[i]
                } else {
                    Complex64::new(u[i].re, 0.0)
                }
            }),
            SubspaceDesc::BasisSpan(_) => {
                let scaled = rescaled(&self.ambient, u);
                if self.complex {
                    let mut p = DVector::from_element(u.len(), Complex64::new(0.0, 0.0));
                    for b in &self.onb_c {
                        let coef: Complex64 = b.dotc(&scaled);
                        p += b * coef;
                    }
                    unscaled(&self.ambient, &p)
                } else {
                    let x = realify(&scaled);
                    let mut p = DVector::from_element(x.len(), 0.0);
                    for b in &self.onb_r {
                        let coef: f64 = b.dot(&x);
                        p += b * coef;
                    }
                    unscaled(&self.ambient, &unrealify(&p))
                }
            }
        }
    }

    /// Scale-invariant membership test.
    pub fn contains(&self, u: &DVector<Complex64>, tol: f64) -> bool {
        let n = self.ambient.norm(u);
        n == 0.0 || self.distance(u) <= tol * n
    }

    /// A basis (in full ambient coordinates) of the intersection of the
    /// subspace with the coordinate subspace supported on `block`.
    pub fn block_intersection_basis(&self, block: &BTreeSet<usize>) -> Vec<DVector<Complex64>> {
        let d = self.ambient.dimension();
        match &self.desc {
            SubspaceDesc::WeightComplement(killed) => {
                let mut basis = Vec::new();
                for i in 0..d {
                    if block.contains(&i) && !killed.contains(&i) {
                        let mut v = DVector::from_element(d, Complex64::new(0.0, 0.0));
                        v[i] = Complex64::new(1.0, 0.0);
                        basis.push(v);
                    }
                }
                basis
            }
            SubspaceDesc::BasisSpan(vs) => {
                if vs.is_empty() {
                    return Vec::new();
                }
                let outside: Vec<usize> = (0..d).filter(|i| !block.contains(i)).collect();
                if self.complex {
                    // Coefficients c with sum_k c_k v_k vanishing outside.
                    let rows: Vec<Vec<Complex64>> = outside
                        .iter()
                        .map(|&i| vs.iter().map(|v| v[i]).collect())
                        .collect();
                    let kernel = nullspace(&rows, vs.len());
                    kernel
                        .iter()
                        .map(|c| {
                            let mut v = DVector::from_element(d, Complex64::new(0.0, 0.0));
                            for (k, vk) in vs.iter().enumerate() {
                                v += vk * c[k];
                            }
                            v
                        })
                        .collect()
                } else {
                    // Real coefficients; both real and imaginary parts of
                    // each outside coordinate must vanish.
                    let mut rows: Vec<Vec<f64>> = Vec::new();
                    for &i in &outside {
                        rows.push(vs.iter().map(|v| v[i].re).collect());
                        rows.push(vs.iter().map(|v| v[i].im).collect());
                    }
                    let kernel = nullspace(&rows, vs.len());
                    kernel
                        .iter()
                        .map(|c| {
                            let mut v = DVector::from_element(d, Complex64::new(0.0, 0.0));
                            for (k, vk) in vs.iter().enumerate() {
                                v += vk * Complex64::new(c[k], 0.0);
                            }
                            v
                        })
                        .collect()
                }
            }
        }
    }
}
