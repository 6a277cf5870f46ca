//! The structured run configuration: a human-editable TOML file naming a
//! group, a module, a subspace, search parameters, and the analyses to
//! run. Exact rational entries are written as `"p/q"` strings and
//! complex entries as `[re, im]` pairs. Every resolver returns
//! `Error::Config` on malformed input so the binary can exit with the
//! configuration-error code.

use std::collections::BTreeSet;
use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use universal_subspaces::lie::GroupSpec;
use universal_subspaces::rep::subspace::Subspace;
use universal_subspaces::rep::Representation;
use universal_subspaces::{Error, Result, SearchConfig};

/// Top-level contents of a `run --config` file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Seed for every randomized search; defaulted and echoed if absent.
    pub seed: Option<u64>,
    /// Report path; the CLI `--out` flag wins over this.
    pub out: Option<String>,
    pub group: Option<GroupConfig>,
    pub representation: RepConfig,
    pub subspace: SubspaceConfig,
    #[serde(default)]
    pub search: SearchSection,
    #[serde(default)]
    pub analyses: AnalysesSection,
}

/// A group atom or combination.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    /// One of `su2`, `su3`, `torus`, `product`, `upper-triangular`,
    /// `complexified`.
    pub kind: String,
    /// Torus rank (`torus` only).
    pub k: Option<usize>,
    /// Matrix size (`upper-triangular` only).
    pub n: Option<usize>,
    /// Factor atoms such as `"su2"` or `"torus:2"` (`product` only).
    pub factors: Option<Vec<String>>,
    /// Inner atom (`complexified` only).
    pub inner: Option<String>,
}

/// A module over the configured group.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepConfig {
    /// One of `irrep`, `defining`, `real-adjoint`,
    /// `complexified-adjoint`, `characters`, `internal-sum`,
    /// `external-sum`, `central-twist`.
    pub kind: String,
    /// Highest weight (`irrep` only; the module has dimension n+1).
    pub degree: Option<usize>,
    /// Character weights (`characters` only).
    pub weights: Option<Vec<Vec<i64>>>,
    /// Central charge (`central-twist` only).
    pub charge: Option<i64>,
    /// Nested summands (`internal-sum`, `external-sum`) or the single
    /// twisted module (`central-twist`).
    pub summands: Option<Vec<RepConfig>>,
    /// Group of this summand (`external-sum` members only).
    pub group: Option<GroupConfig>,
}

/// A subspace of the configured module.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceConfig {
    /// `weight-complement` or `span`.
    pub kind: String,
    /// Coordinates to kill (`weight-complement` only).
    pub killed: Option<Vec<usize>>,
    /// Spanning vectors (`span` only); each entry is a number, a `"p/q"`
    /// rational string, or an `[re, im]` pair.
    pub vectors: Option<Vec<Vec<ConfigScalar>>>,
    /// Whether the span is complex (default) or real.
    pub complex: Option<bool>,
}

/// One entry of a configured vector.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConfigScalar {
    Real(f64),
    Rational(String),
    Complex([f64; 2]),
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSection {
    pub restarts: Option<usize>,
    pub tolerance: Option<f64>,
    pub samples: Option<usize>,
    #[serde(rename = "max-iters")]
    pub max_iters: Option<usize>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysesSection {
    /// Run the orbit-search universality verdict (default true).
    pub verdict: Option<bool>,
    /// Split the module along central characters and decide blockwise.
    pub levi: Option<bool>,
    /// Build the constructive witness for a solvable group.
    #[serde(rename = "solvable-witness")]
    pub solvable_witness: Option<bool>,
    /// Compute the weight-line obstruction class; defaults to on
    /// whenever the run has the right shape for it.
    #[serde(rename = "su2-obstruction")]
    pub su2_obstruction: Option<bool>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig> {
        toml::from_str(text).map_err(|e| Error::Config(format!("bad run config: {e}")))
    }

    /// Fill the search section from defaults and validate positivity.
    pub fn search_config(&self, base: SearchConfig) -> Result<SearchConfig> {
        let mut cfg = base;
        if let Some(r) = self.search.restarts {
            cfg.restarts = r;
        }
        if let Some(t) = self.search.tolerance {
            cfg.tolerance = t;
        }
        if let Some(s) = self.search.samples {
            cfg.samples = s;
        }
        if let Some(m) = self.search.max_iters {
            cfg.max_iters = m;
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if cfg.restarts == 0 || cfg.samples == 0 || cfg.max_iters == 0 {
            return Err(Error::Config(
                "restarts, samples, and max-iters must be positive".into(),
            ));
        }
        if !(cfg.tolerance > 0.0) {
            return Err(Error::Config("tolerance must be positive".into()));
        }
        Ok(cfg)
    }
}

/// Parse a group atom such as `su2`, `torus:2`, or `ut:3`.
pub fn group_atom(s: &str) -> Result<GroupSpec> {
    let (head, arg) = match s.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (s, None),
    };
    let num = |what: &str| -> Result<usize> {
        arg.ok_or_else(|| Error::Config(format!("{what} needs a size, e.g. {head}:2")))?
            .parse::<usize>()
            .map_err(|_| Error::Config(format!("bad {what} size in {s:?}")))
    };
    match head {
        "su2" => Ok(GroupSpec::Su2),
        "su3" => Ok(GroupSpec::Su3),
        "torus" | "u1" => {
            let k = if head == "u1" && arg.is_none() {
                1
            } else {
                num("torus")?
            };
            Ok(GroupSpec::Torus(k))
        }
        "ut" | "upper-triangular" => Ok(GroupSpec::UpperTriangular(num("upper-triangular")?)),
        "sl2c" => GroupSpec::complexified(GroupSpec::Su2),
        "sl3c" => GroupSpec::complexified(GroupSpec::Su3),
        _ => Err(Error::Config(format!("unknown group atom {s:?}"))),
    }
}

impl GroupConfig {
    pub fn resolve(&self) -> Result<GroupSpec> {
        match self.kind.as_str() {
            "su2" => Ok(GroupSpec::Su2),
            "su3" => Ok(GroupSpec::Su3),
            "torus" => {
                let k = self
                    .k
                    .ok_or_else(|| Error::Config("torus group needs k".into()))?;
                if k == 0 {
                    return Err(Error::Config("torus rank must be positive".into()));
                }
                Ok(GroupSpec::Torus(k))
            }
            "upper-triangular" => {
                let n = self
                    .n
                    .ok_or_else(|| Error::Config("upper-triangular group needs n".into()))?;
                if n == 0 {
                    return Err(Error::Config("matrix size must be positive".into()));
                }
                Ok(GroupSpec::UpperTriangular(n))
            }
            "product" => {
                let factors = self
                    .factors
                    .as_ref()
                    .ok_or_else(|| Error::Config("product group needs factors".into()))?;
                if factors.is_empty() {
                    return Err(Error::Config("product group needs factors".into()));
                }
                let specs = factors
                    .iter()
                    .map(|f| group_atom(f))
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupSpec::product(specs))
            }
            "complexified" => {
                let inner = self
                    .inner
                    .as_ref()
                    .ok_or_else(|| Error::Config("complexified group needs inner".into()))?;
                GroupSpec::complexified(group_atom(inner)?)
            }
            other => Err(Error::Config(format!("unknown group kind {other:?}"))),
        }
    }
}

impl RepConfig {
    /// Build the representation; `group` comes from the top-level group
    /// section and may be absent for external sums.
    pub fn resolve(&self, group: Option<&GroupSpec>) -> Result<Representation> {
        let need_group = || {
            group
                .cloned()
                .ok_or_else(|| Error::Config("this representation kind needs a [group]".into()))
        };
        match self.kind.as_str() {
            "irrep" => {
                let n = self
                    .degree
                    .ok_or_else(|| Error::Config("irrep needs a degree".into()))?;
                if !matches!(need_group()?, GroupSpec::Su2) {
                    return Err(Error::Config("irrep degrees are an SU(2) notion".into()));
                }
                if n == 0 {
                    return Err(Error::Config("irrep degree must be positive".into()));
                }
                Ok(Representation::su2_irrep(n))
            }
            "defining" => Ok(Representation::defining(need_group()?)),
            "real-adjoint" => Representation::real_adjoint(&need_group()?),
            "complexified-adjoint" => Representation::complexified_adjoint(&need_group()?),
            "characters" => {
                let weights = self
                    .weights
                    .clone()
                    .ok_or_else(|| Error::Config("characters need weights".into()))?;
                let k = match need_group()? {
                    GroupSpec::Torus(k) => k,
                    other => {
                        return Err(Error::Config(format!(
                            "characters act through a torus, not {}",
                            other.label()
                        )))
                    }
                };
                Representation::diagonal_characters(k, weights)
            }
            "internal-sum" => {
                let g = need_group()?;
                let parts = self.summands_nonempty()?;
                let reps = parts
                    .iter()
                    .map(|p| p.resolve(Some(&g)))
                    .collect::<Result<Vec<_>>>()?;
                Representation::internal_direct_sum(reps)
            }
            "external-sum" => {
                let parts = self.summands_nonempty()?;
                let reps = parts
                    .iter()
                    .map(|p| {
                        let g = p
                            .group
                            .as_ref()
                            .ok_or_else(|| {
                                Error::Config("external-sum summands each need a group".into())
                            })?
                            .resolve()?;
                        p.resolve(Some(&g))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let sum = Representation::external_direct_sum(reps)?;
                if let Some(g) = group {
                    if sum.group() != g {
                        return Err(Error::Config(
                            "[group] disagrees with the external sum's factors".into(),
                        ));
                    }
                }
                Ok(sum)
            }
            "central-twist" => {
                let g = need_group()?;
                let parts = self.summands_nonempty()?;
                if parts.len() != 1 {
                    return Err(Error::Config(
                        "central-twist takes exactly one summand".into(),
                    ));
                }
                let charge = self
                    .charge
                    .ok_or_else(|| Error::Config("central-twist needs a charge".into()))?;
                Ok(Representation::central_twist(
                    parts[0].resolve(Some(&g))?,
                    charge,
                ))
            }
            other => Err(Error::Config(format!(
                "unknown representation kind {other:?}"
            ))),
        }
    }

    fn summands_nonempty(&self) -> Result<&[RepConfig]> {
        match self.summands.as_deref() {
            Some(s) if !s.is_empty() => Ok(s),
            _ => Err(Error::Config("sum needs at least one summand".into())),
        }
    }
}

impl ConfigScalar {
    pub fn value(&self) -> Result<Complex64> {
        match self {
            ConfigScalar::Real(x) => Ok(Complex64::new(*x, 0.0)),
            ConfigScalar::Complex([re, im]) => Ok(Complex64::new(*re, *im)),
            ConfigScalar::Rational(s) => {
                let r: Rational64 = s
                    .parse()
                    .map_err(|_| Error::Config(format!("bad rational {s:?}")))?;
                Ok(Complex64::new(
                    *r.numer() as f64 / *r.denom() as f64,
                    0.0,
                ))
            }
        }
    }
}

impl SubspaceConfig {
    pub fn resolve(&self, ambient: Arc<Representation>) -> Result<Subspace> {
        let complex = self.complex.unwrap_or(true);
        match self.kind.as_str() {
            "weight-complement" => {
                let killed: BTreeSet<usize> = self
                    .killed
                    .clone()
                    .ok_or_else(|| Error::Config("weight-complement needs killed indices".into()))?
                    .into_iter()
                    .collect();
                Subspace::weight_complement(ambient, killed, complex)
            }
            "span" => {
                let rows = self
                    .vectors
                    .as_ref()
                    .ok_or_else(|| Error::Config("span needs vectors".into()))?;
                let d = ambient.dimension();
                let mut vectors = Vec::with_capacity(rows.len());
                for row in rows {
                    if row.len() != d {
                        return Err(Error::Config(format!(
                            "span vector of length {} in a {d}-dimensional module",
                            row.len()
                        )));
                    }
                    let entries = row.iter().map(|s| s.value()).collect::<Result<Vec<_>>>()?;
                    vectors.push(DVector::from_vec(entries));
                }
                Subspace::basis_span(ambient, vectors, complex)
            }
            other => Err(Error::Config(format!("unknown subspace kind {other:?}"))),
        }
    }
}
