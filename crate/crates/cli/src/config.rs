//! TOML run configuration.

use momentope::admissible::{GroupSetup, VData};
use momentope::oracle::linalg::{CMatrix, C64};
use momentope::oracle::{NamedRep, Representation};
use momentope::ressayre::Mode;
use momentope::roots::{RootDatum, Weight, WeightedModule};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub group: GroupConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<VConfig>,
    #[serde(default)]
    pub run: RunSection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    /// For example `su(3)` or `u(2) x torus(1)`.
    pub kind: String,
    pub copies: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VConfig {
    /// Integer weights in ambient coordinates, one per basis vector of `V`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub weights: Vec<Vec<i64>>,
    /// Blocks such as `standard`, `dual`, `standard(2)` (factor index from 1).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reps: Vec<String>,
    /// JSON file with `{"generators": [...]}` in canonical basis order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<PathBuf>,
    #[serde(default)]
    pub assume_proper: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    #[serde(default = "default_mode")]
    pub mode: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub samples: u64,
    #[serde(default = "default_tightness")]
    pub tightness_trials: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<PathBuf>,
}

fn default_mode() -> String {
    Mode::Ressayre.to_string()
}

fn default_samples() -> u64 {
    10_000
}

fn default_tightness() -> u64 {
    16
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection {
            mode: default_mode(),
            seed: 0,
            samples: default_samples(),
            tightness_trials: default_tightness(),
            threads: None,
            out: None,
            report: None,
            cache_dir: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid configuration: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

fn invalid(e: impl ToString) -> ConfigError {
    ConfigError::Invalid(e.to_string())
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = toml::from_str(text)?;
        cfg.mode()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.into(), source })?;
        let mut cfg = Self::parse(&text)?;
        if let Some(v) = &mut cfg.v {
            if let Some(m) = &v.matrices {
                if m.is_relative() {
                    v.matrices = Some(path.parent().unwrap_or(Path::new(".")).join(m));
                }
            }
        }
        Ok(cfg)
    }

    #[cfg(test)]
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("serializable")
    }

    pub fn mode(&self) -> Result<Mode, ConfigError> {
        self.run.mode.parse().map_err(ConfigError::Invalid)
    }

    pub fn datum(&self) -> Result<RootDatum, ConfigError> {
        let d = RootDatum::parse(&self.group.kind).map_err(invalid)?;
        match &self.group.form {
            Some(f) => d.with_form(f).map_err(invalid),
            None => Ok(d),
        }
    }

    pub fn setup(&self) -> Result<GroupSetup, ConfigError> {
        let datum = self.datum()?;
        let v = match &self.v {
            None => None,
            Some(vc) => Some(vc.data(&datum)?),
        };
        GroupSetup::new(datum, self.group.copies, v).map_err(invalid)
    }
}

fn parse_rep(datum: &RootDatum, s: &str) -> Result<NamedRep, ConfigError> {
    let s = s.trim();
    let (name, idx) = match s.split_once('(') {
        Some((n, rest)) => {
            let i: usize = rest
                .strip_suffix(')')
                .and_then(|x| x.trim().parse().ok())
                .ok_or_else(|| invalid(format!("bad representation {s:?}")))?;
            (n.trim(), i)
        }
        None => (s, 1),
    };
    if idx == 0 || idx > datum.factors().len() {
        return Err(invalid(format!("representation {s:?} names factor {idx}, but there are {}", datum.factors().len())));
    }
    match name {
        "standard" => Ok(NamedRep::Standard(idx - 1)),
        "dual" => Ok(NamedRep::Dual(idx - 1)),
        _ => Err(invalid(format!("unknown representation {name:?}; expected standard or dual"))),
    }
}

fn named_weights(datum: &RootDatum, reps: &[NamedRep]) -> Vec<Weight> {
    let n = datum.ambient_dim();
    let mut out = Vec::new();
    for r in reps {
        let (f, sign) = match *r {
            NamedRep::Standard(f) => (f, 1),
            NamedRep::Dual(f) => (f, -1),
        };
        for i in datum.factors()[f].range() {
            let mut w = vec![0; n];
            w[i] = sign;
            out.push(Weight::from_ints(&w));
        }
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatricesFile {
    generators: Vec<Vec<Vec<[f64; 2]>>>,
}

pub fn load_matrices(datum: &RootDatum, path: &Path) -> Result<Representation, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.into(), source })?;
    let file: MatricesFile = serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let mut gens = Vec::with_capacity(file.generators.len());
    for (a, rows) in file.generators.iter().enumerate() {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(invalid(format!("generator {a} is not square")));
        }
        gens.push(CMatrix::from_fn(n, |i, j| C64::new(rows[i][j][0], rows[i][j][1])));
    }
    Representation::from_generators(datum, gens).map_err(invalid)
}

impl VConfig {
    pub fn data(&self, datum: &RootDatum) -> Result<VData, ConfigError> {
        if !self.reps.is_empty() && self.matrices.is_some() {
            return Err(invalid("give either reps or matrices for V, not both"));
        }
        let named: Vec<NamedRep> = self.reps.iter().map(|r| parse_rep(datum, r)).collect::<Result<_, _>>()?;
        let representation = match &self.matrices {
            Some(p) => Some(load_matrices(datum, p)?),
            None if !named.is_empty() => Some(Representation::named(datum, &named).map_err(invalid)?),
            None => None,
        };
        let weights: Vec<Weight> = if !self.weights.is_empty() {
            for w in &self.weights {
                if w.len() != datum.ambient_dim() {
                    return Err(invalid(format!("weight {w:?} has {} coordinates, expected {}", w.len(), datum.ambient_dim())));
                }
            }
            self.weights.iter().map(|w| Weight::from_ints(w)).collect()
        } else if !named.is_empty() {
            named_weights(datum, &named)
        } else {
            return Err(invalid("V needs weights, reps or weights with matrices"));
        };
        Ok(VData { weights: WeightedModule::from_weights(weights), representation, assume_proper: self.assume_proper })
    }
}
