//! Reduction of universality questions from a compact group with a
//! central torus to its semisimple Levi part, block by block.
//!
//! When the torus factors act by central scalars, the module splits
//! into their character blocks, and projective distances cannot see
//! scalars — so on each block the full-group verdict and the
//! Levi-factor verdict agree. `levi_restriction_check` verifies the
//! hypotheses (centrality by sampling, blockwise splitting of the
//! subspace exactly), then runs the per-block searches over the Levi
//! factors only. Groups whose radical is not central (triangular
//! groups, the block-affine group) are rejected: for those the
//! reduction is genuinely false, not merely unverified.

use std::collections::BTreeSet;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lie::sample::sample_group_element;
use crate::lie::{GroupElement, GroupSpec};
use crate::rep::subspace::Subspace;
use crate::rep::{weight_decomposition, Representation};
use crate::universality::search::derive_seed;
use crate::universality::{universality_verdict, SearchConfig, Verdict};

const CENTRALITY_TOL: f64 = 1e-10;
const CENTRALITY_DRAWS: usize = 10;

/// One central-character block and its Levi-factor verdict.
#[derive(Debug, Clone)]
pub struct LeviBlockReport {
    /// Character of the central torus on this block (empty when the
    /// central torus is trivial).
    pub central_weight: Vec<i64>,
    /// Coordinate indices of the block in the ambient module.
    pub indices: Vec<usize>,
    /// Dimension of the intersection of the subspace with the block.
    pub intersection_dim: usize,
    /// Universality verdict for the Levi factors acting on the block.
    pub verdict: Verdict,
}

/// Outcome of the blockwise Levi reduction.
#[derive(Debug, Clone)]
pub struct LeviReport {
    /// The group the per-block searches ran over.
    pub levi_group: GroupSpec,
    pub central_rank: usize,
    pub blocks: Vec<LeviBlockReport>,
    /// True when every block's verdict is Universal.
    pub overall_universal: bool,
}

/// A sampled element of the central torus: random on the torus factors,
/// identity elsewhere.
fn central_element(
    factors: &[GroupSpec],
    spec: &GroupSpec,
    rng: &mut ChaCha8Rng,
) -> Result<GroupElement> {
    let n = spec.model_dim();
    let mut m = DMatrix::<Complex64>::identity(n, n);
    let offsets = spec.factor_offsets();
    for (i, f) in factors.iter().enumerate() {
        if matches!(f, GroupSpec::Torus(_)) {
            let t = sample_group_element(f, rng)?;
            let d = f.model_dim();
            for r in 0..d {
                for c in 0..d {
                    m[(offsets[i] + r, offsets[i] + c)] = t.matrix()[(r, c)];
                }
            }
        }
    }
    GroupElement::new(m, spec.clone())
}

fn assert_sampled_centrality(
    rep: &Arc<Representation>,
    factors: &[GroupSpec],
    cfg: &SearchConfig,
) -> Result<()> {
    let spec = rep.group();
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, "centrality", 0));
    for _ in 0..CENTRALITY_DRAWS {
        let g = sample_group_element(spec, &mut rng)?;
        let r = central_element(factors, spec, &mut rng)?;
        let a = rep.realize(&g)?;
        let b = rep.realize(&r)?;
        let comm = (&a * &b - &b * &a).norm();
        if comm > CENTRALITY_TOL {
            return Err(Error::NotCentral(format!(
                "sampled torus element fails to commute (residual {comm:.3e})"
            )));
        }
    }
    Ok(())
}

/// Split the module under the central torus, intersect the subspace
/// with each character block, and decide universality of each
/// intersection under the Levi factors alone.
pub fn levi_restriction_check(
    rep: &Arc<Representation>,
    v: &Subspace,
    cfg: &SearchConfig,
) -> Result<LeviReport> {
    if v.ambient().group() != rep.group() || v.ambient().dimension() != rep.dimension() {
        return Err(Error::Config(
            "representation and subspace ambient disagree".into(),
        ));
    }
    if !v.is_complex() {
        return Err(Error::Config(
            "the blockwise reduction needs a complex subspace".into(),
        ));
    }
    let spec = rep.group().clone();
    let factors: Vec<GroupSpec> = match &spec {
        GroupSpec::UpperTriangular(_) | GroupSpec::LeviBlock => {
            return Err(Error::NotCentral(format!(
                "the radical of {} does not act by central scalars",
                spec.label()
            )));
        }
        GroupSpec::Complexified(_) => {
            return Err(Error::NotCentral(format!(
                "{} is not compact",
                spec.label()
            )));
        }
        GroupSpec::Product(fs) => {
            for f in fs.iter() {
                if !matches!(f, GroupSpec::Torus(_) | GroupSpec::Su2 | GroupSpec::Su3) {
                    return Err(Error::NotCentral(format!(
                        "product factor {} is neither a torus nor a compact Levi factor",
                        f.label()
                    )));
                }
            }
            fs.clone()
        }
        GroupSpec::Su2 | GroupSpec::Su3 | GroupSpec::Torus(_) => vec![spec.clone()],
    };
    let central_rank: usize = factors
        .iter()
        .filter_map(|f| match f {
            GroupSpec::Torus(k) => Some(*k),
            _ => None,
        })
        .sum();

    // Blocks of the central torus; a trivial central torus (or a bare
    // compact group) leaves one block spanning everything.
    let blocks: Vec<(Vec<i64>, Vec<usize>)> = if central_rank == 0 {
        vec![(Vec::new(), (0..rep.dimension()).collect())]
    } else {
        assert_sampled_centrality(rep, &factors, cfg)?;
        let torus = GroupSpec::Torus(central_rank);
        let wd = weight_decomposition(rep, &torus)?;
        wd.blocks
    };

    // The subspace must be the direct sum of its block intersections.
    let mut intersections: Vec<Vec<DVector<Complex64>>> = Vec::new();
    let mut split_dim = 0usize;
    for (_, indices) in &blocks {
        let idx: BTreeSet<usize> = indices.iter().copied().collect();
        let basis = v.block_intersection_basis(&idx);
        split_dim += basis.len();
        intersections.push(basis);
    }
    if split_dim != v.dim() {
        return Err(Error::NotBlockwise(format!(
            "block intersections span dimension {split_dim}, subspace has dimension {}",
            v.dim()
        )));
    }

    let mut reports = Vec::new();
    let mut levi_group = spec.clone();
    let mut overall = true;
    for ((weight, indices), basis) in blocks.into_iter().zip(intersections) {
        let restricted = match &spec {
            GroupSpec::Product(_) => {
                Some(Arc::new(Representation::block_restriction(rep, &indices)?))
            }
            GroupSpec::Torus(k) => {
                // A torus representation restricts to its character block
                // directly (there are no Levi factors to keep).
                let weights = indices.iter().map(|&i| rep.weights()[i].clone()).collect();
                Some(Arc::new(Representation::diagonal_characters(*k, weights)?))
            }
            _ => None,
        };
        let (block_rep, block_v) = match restricted {
            Some(restricted) => {
                let vectors: Vec<DVector<Complex64>> = basis
                    .iter()
                    .map(|b| {
                        DVector::from_iterator(indices.len(), indices.iter().map(|&i| b[i]))
                    })
                    .collect();
                let sub = Subspace::basis_span(restricted.clone(), vectors, true)?;
                (restricted, sub)
            }
            None => (rep.clone(), v.clone()),
        };
        levi_group = block_rep.group().clone();
        let verdict = universality_verdict(&block_rep, &block_v, cfg)?;
        overall &= verdict.is_universal();
        reports.push(LeviBlockReport {
            central_weight: weight,
            indices,
            intersection_dim: block_v.dim(),
            verdict,
        });
    }
    Ok(LeviReport {
        levi_group,
        central_rank,
        blocks: reports,
        overall_universal: overall,
    })
}
