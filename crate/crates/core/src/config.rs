//! JSON problem files.
//!
//! ```json
//! {
//!   "interval": [0.0, 6.283185307179586],
//!   "p": {"constant": 1.0},
//!   "m": {"preset": "sine"},
//!   "n": {"breakpoints": [0.0, 3.0, 6.283185307179586],
//!         "coeffs": [[1.0], [1.0, 0.0, -0.1]]}
//! }
//! ```
//!
//! `p` defaults to 1, `q` to 0, and a missing `n` makes a one-weight
//! problem. A whole built-in problem is `{"preset": "example_3_13"}`.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::weights::presets::{sine, Preset};
use crate::weights::{Poly, Problem, Weight};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub preset: Option<String>,
    pub interval: Option<[f64; 2]>,
    pub p: Option<FunctionSpec>,
    pub q: Option<FunctionSpec>,
    pub m: Option<FunctionSpec>,
    pub n: Option<FunctionSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum FunctionSpec {
    Pieces {
        breakpoints: Vec<f64>,
        coeffs: Vec<Vec<f64>>,
    },
    Preset {
        preset: String,
        #[serde(default)]
        arg: Option<f64>,
    },
    Constant {
        constant: f64,
    },
}

impl FunctionSpec {
    fn build<T: Real>(&self, name: &str, interval: (f64, f64)) -> Result<Weight<T>> {
        let (t1, t2) = interval;
        let w = match self {
            Self::Pieces { breakpoints, coeffs } => {
                let bps = breakpoints.iter().map(|&b| T::lit(b)).collect();
                let pieces = coeffs
                    .iter()
                    .map(|c| Poly::new(c.iter().map(|&x| T::lit(x)).collect()))
                    .collect();
                Weight::new(bps, pieces).map_err(|e| Error::Config(format!("{name}: {e}")))?
            }
            Self::Constant { constant } => Weight::constant(T::lit(t1), T::lit(t2), T::lit(*constant))?,
            Self::Preset { preset, arg } => match preset.as_str() {
                "sine" => {
                    // arg is the right end of the interval, as for the sine problem preset
                    if let Some(end) = arg {
                        if (end - t2).abs() > 1e-9 * t2.abs().max(1.0) {
                            return Err(Error::Config(format!(
                                "{name}: sine arg {end} does not match interval end {t2}"
                            )));
                        }
                    }
                    sine(T::lit(t1), T::lit(t2))?
                }
                "constant" => {
                    let c = arg.ok_or_else(|| Error::Config(format!("{name}: constant preset needs arg")))?;
                    Weight::constant(T::lit(t1), T::lit(t2), T::lit(c))?
                }
                other => return Err(Error::Config(format!("{name}: unknown function preset '{other}'"))),
            },
        };
        let (lo, hi) = w.interval();
        if lo != T::lit(t1) || hi != T::lit(t2) {
            return Err(Error::Config(format!(
                "{name} is defined on [{lo}, {hi}], expected [{t1}, {t2}]"
            )));
        }
        Ok(w)
    }
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build<T: Real>(&self) -> Result<Problem<T>> {
        if let Some(name) = &self.preset {
            if self.p.is_some() || self.q.is_some() || self.m.is_some() || self.n.is_some() {
                return Err(Error::Config("a preset problem cannot also list functions".into()));
            }
            return name.parse::<Preset>()?.problem();
        }
        let [t1, t2] = self
            .interval
            .ok_or_else(|| Error::Config("missing \"interval\"".into()))?;
        if !(t1 < t2 && t1.is_finite() && t2.is_finite()) {
            return Err(Error::Config(format!("invalid interval [{t1}, {t2}]")));
        }
        let iv = (t1, t2);
        let one = FunctionSpec::Constant { constant: 1.0 };
        let zero = FunctionSpec::Constant { constant: 0.0 };
        let p = self.p.as_ref().unwrap_or(&one).build("p", iv)?;
        let q = self.q.as_ref().unwrap_or(&zero).build("q", iv)?;
        let m = self
            .m
            .as_ref()
            .ok_or_else(|| Error::Config("missing weight \"m\"".into()))?
            .build("m", iv)?;
        match &self.n {
            Some(n) => Problem::new(p, q, m, n.build("n", iv)?),
            None => Problem::one_weight(p, q, m),
        }
    }
}

/// Where a problem comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum ProblemSource {
    Preset(Preset),
    File(std::path::PathBuf),
}

impl ProblemSource {
    pub fn load<T: Real>(&self) -> Result<Problem<T>> {
        match self {
            Self::Preset(p) => p.problem(),
            Self::File(path) => load_file(path),
        }
    }
}

pub fn load_file<T: Real>(path: &Path) -> Result<Problem<T>> {
    let text = std::fs::read_to_string(path)?;
    ProblemFile::from_json(&text)?.build()
}
