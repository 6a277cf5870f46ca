//! Topological obstruction numbers.
//!
//! Three calculators live here. `euler_characteristic_quotient` computes
//! the Euler characteristic of a compact homogeneous quotient G/H for
//! maximal-rank H from Weyl-group orders: chi = |W_G| / (|W_H| * #components).
//! `localization_number` evaluates the pairing of the top Euler/Chern class
//! of a sum of torus character lines against the full flag quotient as an
//! exact Weyl-group sum of rational functions at a generic rational point:
//! sum_w prod_j <w mu_j, X> / prod_{alpha > 0} <w alpha, X>. The value is
//! checked to be an integer independent of the point. `kunneth_top_chern`
//! multiplies degree-2 classes across a finite product of 2-spheres and
//! real projective planes, tracking the torsion of H^2(RP^2; Z) = Z/2.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{RationalStream, GENERIC_POINT_SEED};
use crate::lie::roots::{build_root_system, weyl_group, RootSystem, Weight, WeylGroup};
use crate::lie::GroupSpec;

/// An element of a finitely generated abelian cohomology group
/// Z^free_rank + Z/t_1 + ... + Z/t_k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyValue {
    pub free_rank: usize,
    pub torsion_orders: Vec<u32>,
    /// Length free_rank + torsion_orders.len(); torsion coordinates are
    /// reduced to 0..order.
    pub coordinates: Vec<i64>,
}

impl CohomologyValue {
    pub fn integer(v: i64) -> CohomologyValue {
        CohomologyValue {
            free_rank: 1,
            torsion_orders: vec![],
            coordinates: vec![v],
        }
    }

    pub fn torsion(v: i64, order: u32) -> CohomologyValue {
        CohomologyValue {
            free_rank: 0,
            torsion_orders: vec![order],
            coordinates: vec![v.rem_euclid(order as i64)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|&c| c == 0)
    }
}

impl std::fmt::Display for CohomologyValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.torsion_orders.is_empty() {
            write!(f, "{}", self.coordinates[0])
        } else {
            write!(
                f,
                "{} (mod {})",
                self.coordinates[0], self.torsion_orders[0]
            )
        }
    }
}

/// One factor of the base space together with its line bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "snake_case")]
pub enum KunnethFactor {
    /// The 2-sphere carrying a line bundle of the given degree.
    Sphere { c1: i64 },
    /// The real projective plane carrying either the complexified
    /// tautological line bundle or the trivial one.
    ProjectivePlane { tautological: bool },
}

/// Symbolic base-space factor for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceFactor {
    Sphere,
    ProjectivePlane,
}

/// Line-bundle descriptor for reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineBundle {
    Degree(i64),
    TrivialComplex,
    ComplexifiedTautological,
}

/// Base space, bundle data, obstruction class, and vanishing verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub base_space: Vec<SpaceFactor>,
    pub bundle: Vec<LineBundle>,
    pub class_value: CohomologyValue,
    pub vanishes: bool,
}

/// A maximal-rank-or-smaller closed subgroup, described by the data the
/// Euler-characteristic formula needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDescriptor {
    pub label: String,
    pub rank: usize,
    pub weyl_order_identity_component: u64,
    pub component_count: u64,
}

impl SubgroupDescriptor {
    pub fn maximal_torus(g: &GroupSpec) -> SubgroupDescriptor {
        SubgroupDescriptor {
            label: "T".into(),
            rank: g.rank(),
            weyl_order_identity_component: 1,
            component_count: 1,
        }
    }

    pub fn torus_normalizer(g: &GroupSpec) -> Result<SubgroupDescriptor> {
        let w = weyl_group(&build_root_system(g)?);
        Ok(SubgroupDescriptor {
            label: "N(T)".into(),
            rank: g.rank(),
            weyl_order_identity_component: 1,
            component_count: w.order() as u64,
        })
    }

    pub fn whole_group(g: &GroupSpec) -> Result<SubgroupDescriptor> {
        let w = weyl_group(&build_root_system(g)?);
        Ok(SubgroupDescriptor {
            label: g.label(),
            rank: g.rank(),
            weyl_order_identity_component: w.order() as u64,
            component_count: 1,
        })
    }

    /// The block unitary subgroup U(2) inside SU(3).
    pub fn u2_block_in_su3() -> SubgroupDescriptor {
        SubgroupDescriptor {
            label: "U(2)".into(),
            rank: 2,
            weyl_order_identity_component: 2,
            component_count: 1,
        }
    }

    /// The diagonally embedded SU(2) inside SU(2) x SU(2) (rank 1 of 2).
    pub fn diagonal_su2_in_su2_squared() -> SubgroupDescriptor {
        SubgroupDescriptor {
            label: "diag SU(2)".into(),
            rank: 1,
            weyl_order_identity_component: 2,
            component_count: 1,
        }
    }
}

/// chi of G/H plus whether H has full rank (chi is 0 and meaningless as a
/// positivity certificate otherwise).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCharacteristic {
    pub chi: i64,
    pub maximal_rank: bool,
}

/// chi(G/H) = |W_G| / (|W_{H identity}| * #components) for maximal-rank H;
/// rank-deficient H yields chi = 0, flagged rather than reported as error.
pub fn euler_characteristic_quotient(
    g: &GroupSpec,
    h: &SubgroupDescriptor,
) -> Result<EulerCharacteristic> {
    let rs = build_root_system(g)?;
    let w = weyl_group(&rs);
    let g_rank = g.rank();
    if h.rank > g_rank {
        return Err(Error::Config(format!(
            "subgroup rank {} exceeds ambient rank {g_rank}",
            h.rank
        )));
    }
    if h.rank < g_rank {
        return Ok(EulerCharacteristic {
            chi: 0,
            maximal_rank: false,
        });
    }
    let denom = h.weyl_order_identity_component * h.component_count;
    if denom == 0 || w.order() as u64 % denom != 0 {
        return Err(Error::Config(format!(
            "invalid subgroup descriptor {}: order {} does not divide {}",
            h.label,
            denom,
            w.order()
        )));
    }
    Ok(EulerCharacteristic {
        chi: (w.order() as u64 / denom) as i64,
        maximal_rank: true,
    })
}

fn pair(weight: &Weight, x: &[BigRational]) -> BigRational {
    let mut s = BigRational::zero();
    for (c, &v) in weight.iter().enumerate() {
        s += BigRational::from(BigInt::from(v)) * &x[c];
    }
    s
}

/// The Weyl sum at one evaluation point; None when the point fails to be
/// generic (a denominator vanishes).
fn localization_value_at(
    rs: &RootSystem,
    weyl: &WeylGroup,
    quotient_weights: &[Weight],
    x: &[BigRational],
) -> Option<BigRational> {
    // Genericity: no root may pair to zero.
    for root in &rs.roots {
        if pair(root, x).is_zero() {
            return None;
        }
    }
    let mut total = BigRational::zero();
    for w_idx in 0..weyl.order() {
        let mut num = BigRational::from(BigInt::from(1));
        for mu in quotient_weights {
            num *= pair(&weyl.apply(w_idx, mu), x);
        }
        let mut den = BigRational::from(BigInt::from(1));
        for alpha in &rs.positive_roots {
            den *= pair(&weyl.apply(w_idx, alpha), x);
        }
        total += num / den;
    }
    Some(total)
}

/// Pairing of the product of the quotient characters with the fundamental
/// class of the full flag quotient, evaluated by exact fixed-point
/// localization. The weight count must equal the number of positive roots.
pub fn localization_number(rs: &RootSystem, quotient_weights: &[Weight]) -> Result<i64> {
    if quotient_weights.len() != rs.positive_roots.len() {
        return Err(Error::RankMismatch {
            expected: rs.positive_roots.len(),
            got: quotient_weights.len(),
        });
    }
    for w in quotient_weights {
        if w.len() != rs.coord_dim {
            return Err(Error::Config(format!(
                "weight of length {} in coordinates of dimension {}",
                w.len(),
                rs.coord_dim
            )));
        }
    }
    let weyl = weyl_group(rs);
    let mut stream = RationalStream::new(GENERIC_POINT_SEED);
    let mut values = Vec::new();
    let mut attempts = 0usize;
    while values.len() < 2 {
        if attempts >= 8 {
            return Err(Error::GenericityFailure { attempts });
        }
        attempts += 1;
        let x = stream.draw_vector(rs.coord_dim);
        if let Some(v) = localization_value_at(rs, &weyl, quotient_weights, &x) {
            values.push(v);
        }
    }
    assert_eq!(
        values[0], values[1],
        "localization value depends on the evaluation point"
    );
    assert!(
        values[0].is_integer(),
        "localization value {} is not an integer",
        values[0]
    );
    values[0]
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::Config("localization value overflows i64".into()))
}

/// Top class of an external product of line bundles over a product of
/// 2-spheres and projective planes. All spheres: the value lives in Z and
/// is the product of the degrees. With at least one projective plane the
/// top group is Z/2 and the value is the mod-2 product (tautological
/// factors contribute the generator, trivial ones contribute 0).
pub fn kunneth_top_chern(factors: &[KunnethFactor]) -> Result<CohomologyValue> {
    if factors.is_empty() {
        return Err(Error::Config("empty product of base factors".into()));
    }
    let has_plane = factors
        .iter()
        .any(|f| matches!(f, KunnethFactor::ProjectivePlane { .. }));
    if has_plane {
        let mut v: i64 = 1;
        for f in factors {
            let c = match f {
                KunnethFactor::Sphere { c1 } => c1.rem_euclid(2),
                KunnethFactor::ProjectivePlane { tautological } => {
                    if *tautological {
                        1
                    } else {
                        0
                    }
                }
            };
            v = (v * c).rem_euclid(2);
        }
        Ok(CohomologyValue::torsion(v, 2))
    } else {
        let mut v: i64 = 1;
        for f in factors {
            if let KunnethFactor::Sphere { c1 } = f {
                v = v
                    .checked_mul(*c1)
                    .ok_or_else(|| Error::Config("degree product overflows".into()))?;
            }
        }
        Ok(CohomologyValue::integer(v))
    }
}

/// Factor pair (base, bundle) for reports.
pub fn factor_report_data(factors: &[KunnethFactor]) -> (Vec<SpaceFactor>, Vec<LineBundle>) {
    let mut spaces = Vec::new();
    let mut bundles = Vec::new();
    for f in factors {
        match f {
            KunnethFactor::Sphere { c1 } => {
                spaces.push(SpaceFactor::Sphere);
                bundles.push(LineBundle::Degree(*c1));
            }
            KunnethFactor::ProjectivePlane { tautological } => {
                spaces.push(SpaceFactor::ProjectivePlane);
                bundles.push(if *tautological {
                    LineBundle::ComplexifiedTautological
                } else {
                    LineBundle::TrivialComplex
                });
            }
        }
    }
    (spaces, bundles)
}

/// Obstruction data of the i-th torus-invariant hyperplane of the degree-n
/// SU(2) module. Off-center hyperplanes live over the 2-sphere with class
/// 2i-n; the middle hyperplane lives over the projective plane, where the
/// quotient line descends to the complexified tautological bundle for odd
/// i (torsion generator, nonvanishing) and to the trivial bundle for even
/// i (vanishing). Vanishing happens exactly when n is divisible by 4 and
/// i = n/2.
pub fn su2_obstruction_report(n: usize, i: usize) -> Result<ObstructionReport> {
    if n == 0 {
        return Err(Error::Config("hyperplane analysis needs degree >= 1".into()));
    }
    if i > n {
        return Err(Error::IndexOutOfRange {
            index: i,
            dim: n + 1,
        });
    }
    let k = 2 * i as i64 - n as i64;
    if k != 0 {
        let class = CohomologyValue::integer(k);
        Ok(ObstructionReport {
            base_space: vec![SpaceFactor::Sphere],
            bundle: vec![LineBundle::Degree(k)],
            vanishes: class.is_zero(),
            class_value: class,
        })
    } else if i % 2 == 1 {
        let class = CohomologyValue::torsion(1, 2);
        Ok(ObstructionReport {
            base_space: vec![SpaceFactor::ProjectivePlane],
            bundle: vec![LineBundle::ComplexifiedTautological],
            vanishes: class.is_zero(),
            class_value: class,
        })
    } else {
        let class = CohomologyValue::torsion(0, 2);
        Ok(ObstructionReport {
            base_space: vec![SpaceFactor::ProjectivePlane],
            bundle: vec![LineBundle::TrivialComplex],
            vanishes: class.is_zero(),
            class_value: class,
        })
    }
}
