//! Integer root data and Weyl groups for the group catalog.
//!
//! Weights are integer vectors in a fixed coordinate space per group: one
//! coordinate for SU(2) (the positive root is 2, matching the character
//! exponents of the irreducibles), three ambient permutation coordinates
//! for SU(3) (roots are e_i - e_j, stored with zero coordinate sum), one
//! coordinate per circle factor of a torus, and concatenation for products.
//! All Weyl arithmetic is exact.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lie::GroupSpec;

pub type Weight = Vec<i64>;

/// Root system of a catalog group: full, positive, and simple roots in the
/// group's weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    pub rank: usize,
    pub coord_dim: usize,
    pub roots: Vec<Weight>,
    pub positive_roots: Vec<Weight>,
    pub simple_roots: Vec<Weight>,
}

impl RootSystem {
    pub fn contains(&self, w: &[i64]) -> bool {
        self.roots.iter().any(|r| r == w)
    }
}

/// Weyl group as explicit integer matrices acting on weight coordinates.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub coord_dim: usize,
    /// Row-major `coord_dim x coord_dim` integer matrices; index 0 is the
    /// identity.
    pub elements: Vec<Vec<i64>>,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn apply(&self, element: usize, w: &[i64]) -> Weight {
        apply_matrix(&self.elements[element], self.coord_dim, w)
    }
}

fn apply_matrix(m: &[i64], dim: usize, w: &[i64]) -> Weight {
    assert_eq!(w.len(), dim);
    (0..dim)
        .map(|r| (0..dim).map(|c| m[r * dim + c] * w[c]).sum())
        .collect()
}

fn matmul(a: &[i64], b: &[i64], dim: usize) -> Vec<i64> {
    let mut out = vec![0i64; dim * dim];
    for r in 0..dim {
        for k in 0..dim {
            let v = a[r * dim + k];
            if v == 0 {
                continue;
            }
            for c in 0..dim {
                out[r * dim + c] += v * b[k * dim + c];
            }
        }
    }
    out
}

fn identity(dim: usize) -> Vec<i64> {
    let mut m = vec![0i64; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = 1;
    }
    m
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reflection in `root` as an integer matrix on the coordinate space:
/// s(v) = v - 2(v, root)/(root, root) * root. Crystallographic data keeps
/// the quotient integral; this is asserted.
fn reflection_matrix(root: &[i64], dim: usize) -> Vec<i64> {
    let norm = dot(root, root);
    assert!(norm > 0);
    let mut m = identity(dim);
    for c in 0..dim {
        let mut e = vec![0i64; dim];
        e[c] = 1;
        let num = 2 * dot(&e, root);
        assert_eq!(
            num % norm,
            0,
            "non-crystallographic reflection coefficient"
        );
        let coef = num / norm;
        for r in 0..dim {
            m[r * dim + c] -= coef * root[r];
        }
    }
    m
}

/// Builds the root data of a catalog group. Solvable groups carry no root
/// system and are rejected.
pub fn build_root_system(spec: &GroupSpec) -> Result<RootSystem> {
    match spec {
        GroupSpec::Su2 => Ok(RootSystem {
            rank: 1,
            coord_dim: 1,
            roots: vec![vec![2], vec![-2]],
            positive_roots: vec![vec![2]],
            simple_roots: vec![vec![2]],
        }),
        GroupSpec::Su3 => {
            let e = |i: usize, j: usize| -> Weight {
                let mut w = vec![0i64; 3];
                w[i] = 1;
                w[j] = -1;
                w
            };
            Ok(RootSystem {
                rank: 2,
                coord_dim: 3,
                roots: vec![e(0, 1), e(0, 2), e(1, 2), e(1, 0), e(2, 0), e(2, 1)],
                positive_roots: vec![e(0, 1), e(0, 2), e(1, 2)],
                simple_roots: vec![e(0, 1), e(1, 2)],
            })
        }
        GroupSpec::Torus(k) => Ok(RootSystem {
            rank: *k,
            coord_dim: *k,
            roots: vec![],
            positive_roots: vec![],
            simple_roots: vec![],
        }),
        GroupSpec::Product(factors) => {
            let parts: Vec<RootSystem> = factors
                .iter()
                .map(build_root_system)
                .collect::<Result<_>>()?;
            let coord_dim = parts.iter().map(|p| p.coord_dim).sum();
            let rank = parts.iter().map(|p| p.rank).sum();
            let pad = |list: &dyn Fn(&RootSystem) -> Vec<Weight>| -> Vec<Weight> {
                let mut out = Vec::new();
                let mut offset = 0;
                for p in &parts {
                    for w in list(p) {
                        let mut full = vec![0i64; coord_dim];
                        full[offset..offset + p.coord_dim].copy_from_slice(&w);
                        out.push(full);
                    }
                    offset += p.coord_dim;
                }
                out
            };
            Ok(RootSystem {
                rank,
                coord_dim,
                roots: pad(&|p: &RootSystem| p.roots.clone()),
                positive_roots: pad(&|p: &RootSystem| p.positive_roots.clone()),
                simple_roots: pad(&|p: &RootSystem| p.simple_roots.clone()),
            })
        }
        GroupSpec::Complexified(inner) => build_root_system(inner),
        GroupSpec::UpperTriangular(_) | GroupSpec::LeviBlock => Err(Error::UnsupportedGroup(
            format!("{} has no root system", spec.label()),
        )),
    }
}

/// Generates the Weyl group by closing the simple reflections under
/// multiplication. Exact integer arithmetic; the identity comes first.
pub fn weyl_group(rs: &RootSystem) -> WeylGroup {
    let dim = rs.coord_dim;
    let generators: Vec<Vec<i64>> = rs
        .simple_roots
        .iter()
        .map(|r| reflection_matrix(r, dim))
        .collect();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let id = identity(dim);
    seen.insert(id.clone());
    let mut frontier = vec![id.clone()];
    while let Some(m) = frontier.pop() {
        for g in &generators {
            let next = matmul(g, &m, dim);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let mut elements: Vec<Vec<i64>> = seen.into_iter().collect();
    // Keep the identity at index 0 for callers that use it as a base point.
    if let Some(pos) = elements.iter().position(|m| *m == id) {
        elements.swap(0, pos);
    }
    WeylGroup {
        coord_dim: dim,
        elements,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: close a seed set of roots under all reflections
    /// they generate, with exact integer arithmetic.
    fn reflection_closure(seed: &[Weight], dim: usize) -> BTreeSet<Weight> {
        let mut set: BTreeSet<Weight> = seed.iter().cloned().collect();
        loop {
            let mut added = false;
            let current: Vec<Weight> = set.iter().cloned().collect();
            for alpha in &current {
                let m = reflection_matrix(alpha, dim);
                for beta in &current {
                    let image = apply_matrix(&m, dim, beta);
                    if set.insert(image) {
                        added = true;
                    }
                }
            }
            if !added {
                return set;
            }
        }
    }

    #[test]
    fn su3_roots_match_reflection_closure_of_two_simple_roots() {
        // Two simple roots at 120 degrees: (a,a)=(b,b)=2, (a,b)=-1.
        let a = vec![1, -1, 0];
        let b = vec![0, 1, -1];
        assert_eq!(dot(&a, &a), 2);
        assert_eq!(dot(&b, &b), 2);
        assert_eq!(dot(&a, &b), -1);
        let closure = reflection_closure(&[a, b], 3);
        let rs = build_root_system(&GroupSpec::Su3).unwrap();
        let built: BTreeSet<Weight> = rs.roots.iter().cloned().collect();
        assert_eq!(closure, built);
        assert_eq!(built.len(), 6);
    }

    #[test]
    fn su3_positive_roots_are_nonnegative_simple_combinations() {
        let rs = build_root_system(&GroupSpec::Su3).unwrap();
        let a = &rs.simple_roots[0];
        let b = &rs.simple_roots[1];
        for pos in &rs.positive_roots {
            let mut found = false;
            for ca in 0..=2i64 {
                for cb in 0..=2i64 {
                    let combo: Vec<i64> = (0..3).map(|i| ca * a[i] + cb * b[i]).collect();
                    if &combo == pos {
                        found = true;
                    }
                }
            }
            assert!(found, "{pos:?} is not a nonnegative combination");
        }
    }

    #[test]
    fn weyl_orders_match_closure_counts() {
        let order = |spec: &GroupSpec| weyl_group(&build_root_system(spec).unwrap()).order();
        assert_eq!(order(&GroupSpec::Su2), 2);
        assert_eq!(order(&GroupSpec::Su3), 6);
        assert_eq!(order(&GroupSpec::Torus(3)), 1);
        for k in 1..=4 {
            let spec = GroupSpec::product(vec![GroupSpec::Su2; k]);
            assert_eq!(order(&spec), 1usize << k);
        }
        let mixed = GroupSpec::product(vec![GroupSpec::Su2, GroupSpec::Su3, GroupSpec::Torus(2)]);
        assert_eq!(order(&mixed), 12);
    }

    #[test]
    fn weyl_group_permutes_roots_exactly() {
        for spec in [
            GroupSpec::Su2,
            GroupSpec::Su3,
            GroupSpec::product(vec![GroupSpec::Su2, GroupSpec::Su2]),
        ] {
            let rs = build_root_system(&spec).unwrap();
            let w = weyl_group(&rs);
            let roots: BTreeSet<Weight> = rs.roots.iter().cloned().collect();
            for e in 0..w.order() {
                let image: BTreeSet<Weight> =
                    rs.roots.iter().map(|r| w.apply(e, r)).collect();
                assert_eq!(image, roots);
            }
        }
    }

    #[test]
    fn weyl_group_is_closed_under_composition_and_inverse() {
        let rs = build_root_system(&GroupSpec::Su3).unwrap();
        let w = weyl_group(&rs);
        let set: BTreeSet<Vec<i64>> = w.elements.iter().cloned().collect();
        let dim = w.coord_dim;
        for a in &w.elements {
            let mut found_inverse = false;
            for b in &w.elements {
                assert!(set.contains(&matmul(a, b, dim)));
                if matmul(a, b, dim) == identity(dim) {
                    found_inverse = true;
                }
            }
            assert!(found_inverse);
        }
    }

    #[test]
    fn solvable_groups_have_no_root_system() {
        assert!(build_root_system(&GroupSpec::UpperTriangular(3)).is_err());
    }
}
