//! Built-in weight configurations.
//!
//! Transcendental shapes (`sin t`, its positive and negative parts, compact
//! bumps) are realised as piecewise-cubic Hermite interpolants with at most
//! 1e-8 uniform error; nodes always include the zeros of the shape so that
//! the sign structure of the approximation matches the exact one.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{Poly, Problem, Weight};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Node spacing for unit-frequency sine lobes: `(pi/80)^4 / 384 < 1e-8`.
const LOBE_STEP: f64 = PI / 80.0;

/// A built-in problem.
#[derive(Clone, Debug, PartialEq)]
pub enum Preset {
    /// `m = n = 1` on `[0, pi]`.
    Classical,
    /// One weight `m = sin t` on `[0, t2]`.
    Sine { t2: f64 },
    /// Positive bump of `m`, positive bump of `n`, negative bump of `m`,
    /// negative bump of `n`, on `[0, 4 pi]`.
    Example313,
    /// Disjoint half-sine bumps of `m` and `n`, arranged so that the four
    /// quadrants `(++, --, +-, -+)` contain `2K+1` curves each; `None` asks
    /// for a quadrant with no curves at all.
    AlternatingBumps { targets: [Option<u32>; 4] },
    /// `m = (sin t)+`, `n = (sin(t + pi))+` on `[0, (K+2) pi]`.
    PositiveBumps { k: u32 },
    /// One weight supported on `[lo, hi]` inside `[0, pi]`.
    Bump { lo: f64, hi: f64 },
    /// One weight `sin t` on `[0, pi]`, `0` on `[pi, 2 pi]`.
    Remark39,
    /// One weight `1 - 4 t^2` on `[-1, 1]` (even, two sign changes).
    EvenQuadratic,
}

/// Catalogue entry for listing.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PresetInfo {
    pub name: &'static str,
    pub usage: &'static str,
    pub description: &'static str,
}

pub const CATALOG: &[PresetInfo] = &[
    PresetInfo {
        name: "classical",
        usage: "classical",
        description: "m = n = 1 on [0, pi]",
    },
    PresetInfo {
        name: "sine",
        usage: "sine:T2",
        description: "one weight m = sin t on [0, T2]",
    },
    PresetInfo {
        name: "example_3_13",
        usage: "example_3_13",
        description: "m = (sin t)+, n = (sin t)- on [0, 2pi]; m = -(sin t)+, n = -(sin t)- on [2pi, 4pi]",
    },
    PresetInfo {
        name: "alternating_bumps",
        usage: "alternating_bumps:K,L,M,N",
        description: "half-sine bumps giving 2K+1, 2L+1, 2M+1, 2N+1 curves in ++, --, +-, -+ (use x for none)",
    },
    PresetInfo {
        name: "positive_bumps",
        usage: "positive_bumps:K",
        description: "m = (sin t)+, n = (sin(t + pi))+ on [0, (K+2)pi]",
    },
    PresetInfo {
        name: "bump",
        usage: "bump[:LO,HI]",
        description: "one weight, half-sine bump on [LO, HI] inside [0, pi] (default pi/4, 3pi/4)",
    },
    PresetInfo {
        name: "remark_3_9",
        usage: "remark_3_9",
        description: "one weight m = sin t on [0, pi], 0 on [pi, 2pi]",
    },
    PresetInfo {
        name: "even_quadratic",
        usage: "even_quadratic",
        description: "one weight m = 1 - 4t^2 on [-1, 1]",
    },
];

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let number = |a: &str| -> Result<f64> {
            a.parse::<f64>()
                .map_err(|_| Error::Config(format!("preset '{name}': cannot parse '{a}' as a number")))
        };
        let no_arg = |p: Preset| match arg {
            None => Ok(p),
            Some(_) => Err(Error::Config(format!("preset '{name}' takes no argument"))),
        };
        match name {
            "classical" => no_arg(Preset::Classical),
            "example_3_13" => no_arg(Preset::Example313),
            "remark_3_9" => no_arg(Preset::Remark39),
            "even_quadratic" => no_arg(Preset::EvenQuadratic),
            "sine" => {
                let t2 = arg.map(number).transpose()?.unwrap_or(2.0 * PI);
                if !(t2 > 0.0 && t2.is_finite()) {
                    return Err(Error::Config(format!("sine: T2 must be positive, got {t2}")));
                }
                Ok(Preset::Sine { t2 })
            }
            "positive_bumps" => {
                let k = arg
                    .ok_or_else(|| Error::Config("positive_bumps needs an argument K".into()))?
                    .parse::<u32>()
                    .map_err(|_| Error::Config("positive_bumps: K must be a nonnegative integer".into()))?;
                Ok(Preset::PositiveBumps { k })
            }
            "alternating_bumps" => {
                let arg = arg.ok_or_else(|| Error::Config("alternating_bumps needs K,L,M,N".into()))?;
                let parts: Vec<&str> = arg.split(',').map(str::trim).collect();
                if parts.len() != 4 {
                    return Err(Error::Config("alternating_bumps needs exactly four counts".into()));
                }
                let mut targets = [None; 4];
                for (slot, part) in targets.iter_mut().zip(parts) {
                    *slot = match part {
                        "x" | "-" | "none" => None,
                        v => Some(
                            v.parse::<u32>()
                                .map_err(|_| Error::Config(format!("alternating_bumps: '{v}' is not a count")))?,
                        ),
                    };
                }
                Ok(Preset::AlternatingBumps { targets })
            }
            "bump" => {
                let (lo, hi) = match arg {
                    None => (PI / 4.0, 3.0 * PI / 4.0),
                    Some(a) => {
                        let (l, h) = a
                            .split_once(',')
                            .ok_or_else(|| Error::Config("bump expects LO,HI".into()))?;
                        (number(l.trim())?, number(h.trim())?)
                    }
                };
                if !(0.0 < lo && lo < hi && hi < PI) {
                    return Err(Error::Config(format!(
                        "bump support [{lo}, {hi}] must lie strictly inside [0, pi]"
                    )));
                }
                Ok(Preset::Bump { lo, hi })
            }
            other => Err(Error::Config(format!("unknown preset '{other}'"))),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Classical => write!(f, "classical"),
            Preset::Sine { t2 } => write!(f, "sine:{t2}"),
            Preset::Example313 => write!(f, "example_3_13"),
            Preset::AlternatingBumps { targets } => {
                let s: Vec<String> = targets
                    .iter()
                    .map(|t| t.map_or_else(|| "x".to_string(), |v| v.to_string()))
                    .collect();
                write!(f, "alternating_bumps:{}", s.join(","))
            }
            Preset::PositiveBumps { k } => write!(f, "positive_bumps:{k}"),
            Preset::Bump { lo, hi } => write!(f, "bump:{lo},{hi}"),
            Preset::Remark39 => write!(f, "remark_3_9"),
            Preset::EvenQuadratic => write!(f, "even_quadratic"),
        }
    }
}

impl Preset {
    /// The weight pair `(m, n)` and whether the problem is a one-weight problem.
    pub fn weights<T: Real>(&self) -> Result<(Weight<T>, Weight<T>, bool)> {
        let t = T::lit;
        match *self {
            Preset::Classical => {
                let m = Weight::constant(T::zero(), T::PI(), T::one())?;
                Ok((m.clone(), m, true))
            }
            Preset::Sine { t2 } => {
                let m = sine(T::zero(), t(t2))?;
                Ok((m.clone(), m, true))
            }
            Preset::Example313 => {
                let m = lobes(&[1, 0, -1, 0])?;
                let n = lobes(&[0, 1, 0, -1])?;
                Ok((m, n, false))
            }
            Preset::PositiveBumps { k } => {
                let len = k as usize + 2;
                let m: Vec<i8> = (0..len).map(|j| if j % 2 == 0 { 1 } else { 0 }).collect();
                let n: Vec<i8> = (0..len).map(|j| if j % 2 == 1 { 1 } else { 0 }).collect();
                Ok((lobes(&m)?, lobes(&n)?, false))
            }
            Preset::AlternatingBumps { targets } => {
                let seq = bump_sequence(targets)?;
                let m: Vec<i8> = seq.iter().map(|b| if b.on_m { b.sign } else { 0 }).collect();
                let n: Vec<i8> = seq.iter().map(|b| if b.on_m { 0 } else { b.sign }).collect();
                Ok((lobes(&m)?, lobes(&n)?, false))
            }
            Preset::Bump { lo, hi } => {
                let m = bump(t(lo), t(hi), T::zero(), T::PI())?;
                Ok((m.clone(), m, true))
            }
            Preset::Remark39 => {
                let m = lobes(&[1, 0])?;
                Ok((m.clone(), m, true))
            }
            Preset::EvenQuadratic => {
                let m = Weight::new(
                    vec![-T::one(), T::one()],
                    vec![Poly::new(vec![T::lit(-3.0), T::lit(8.0), T::lit(-4.0)])],
                )?;
                Ok((m.clone(), m, true))
            }
        }
    }

    /// Problem with `p = 1`, `q = 0` and this preset's weights.
    pub fn problem<T: Real>(&self) -> Result<Problem<T>> {
        let (m, n, single) = self.weights::<T>()?;
        if single {
            Problem::plain(m, None)
        } else {
            Problem::plain(m, Some(n))
        }
    }
}

fn snapped_sin<T: Real>(t: T) -> T {
    let s = t.sin();
    if s.abs() < T::lit(1e-14).max(T::epsilon() * T::lit(8.0)) {
        T::zero()
    } else {
        s
    }
}

/// `sin t` on `[t1, t2]`, with nodes at every multiple of `pi` inside.
pub fn sine<T: Real>(t1: T, t2: T) -> Result<Weight<T>> {
    let mut splits = vec![t1];
    let first = (t1 / T::PI()).floor().to_i64().unwrap_or(0) + 1;
    let mut k = first;
    loop {
        let x = T::from_i64(k).unwrap() * T::PI();
        if x >= t2 {
            break;
        }
        if x > t1 {
            splits.push(x);
        }
        k += 1;
    }
    splits.push(t2);
    let parts = splits
        .windows(2)
        .map(|w| Weight::approximate(w[0], w[1], T::lit(LOBE_STEP), snapped_sin, |x: T| x.cos()))
        .collect::<Result<Vec<_>>>()?;
    Weight::concat(parts)
}

/// Weight on `[0, len * pi]` whose lobe `j` is `signs[j] * |sin t|`.
pub fn lobes<T: Real>(signs: &[i8]) -> Result<Weight<T>> {
    let parts = signs
        .iter()
        .enumerate()
        .map(|(j, &sign)| {
            let lo = T::from_usize(j).unwrap() * T::PI();
            let hi = T::from_usize(j + 1).unwrap() * T::PI();
            if sign == 0 {
                return Weight::constant(lo, hi, T::zero());
            }
            // |sin t| on lobe j equals (-1)^j sin t.
            let parity = if j % 2 == 0 { T::one() } else { -T::one() };
            let factor = parity * T::from_i8(sign).unwrap();
            Weight::approximate(
                lo,
                hi,
                T::lit(LOBE_STEP),
                |x| factor * snapped_sin(x),
                |x| factor * x.cos(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Weight::concat(parts)
}

/// Half-sine bump supported on `[lo, hi]`, zero elsewhere in `[t1, t2]`.
pub fn bump<T: Real>(lo: T, hi: T, t1: T, t2: T) -> Result<Weight<T>> {
    let omega = T::PI() / (hi - lo);
    let shape = move |x: T| snapped_sin(omega * (x - lo));
    let slope = move |x: T| omega * (omega * (x - lo)).cos();
    let step = T::lit(LOBE_STEP) / omega;
    let mut parts = Vec::new();
    if lo > t1 {
        parts.push(Weight::constant(t1, lo, T::zero())?);
    }
    parts.push(Weight::approximate(lo, hi, step, shape, slope)?);
    if hi < t2 {
        parts.push(Weight::constant(hi, t2, T::zero())?);
    }
    Weight::concat(parts)
}

/// One bump of the sequence built by [`bump_sequence`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BumpSlot {
    pub on_m: bool,
    pub sign: i8,
}

const SYMBOLS: [BumpSlot; 4] = [
    BumpSlot { on_m: true, sign: 1 },
    BumpSlot { on_m: false, sign: 1 },
    BumpSlot { on_m: true, sign: -1 },
    BumpSlot { on_m: false, sign: -1 },
];

/// Quadrant sign pairs in the order `++, --, +-, -+`.
const QUADRANT_SIGNS: [(i8, i8); 4] = [(1, 1), (-1, -1), (1, -1), (-1, 1)];

/// Number of alternations between the relevant bumps of a quadrant: the
/// `m`-bumps with the sign of `a` and the `n`-bumps with the sign of `b`.
/// A quadrant whose relevant sequence has `R >= 2` runs carries `2R - 3`
/// nonempty sets `C_k` with `k >= 2`; fewer runs carry none.
pub fn quadrant_runs(seq: &[BumpSlot], signs: (i8, i8)) -> usize {
    let mut runs = 0;
    let mut last: Option<bool> = None;
    for b in seq {
        let relevant = if b.on_m { b.sign == signs.0 } else { b.sign == signs.1 };
        if relevant && last != Some(b.on_m) {
            runs += 1;
            last = Some(b.on_m);
        }
    }
    runs
}

/// Shortest sequence of disjoint half-sine bumps (deterministic
/// lexicographic search) realising the requested per-quadrant counts.
pub fn bump_sequence(targets: [Option<u32>; 4]) -> Result<Vec<BumpSlot>> {
    const MAX_LEN: usize = 24;
    let want: Vec<(usize, usize)> = targets
        .iter()
        .map(|t| match t {
            Some(k) => (*k as usize + 2, *k as usize + 2),
            None => (0, 1),
        })
        .collect();
    if want.iter().any(|&(lo, _)| lo > MAX_LEN) {
        return Err(Error::Config("alternating_bumps: counts too large".into()));
    }

    fn search(seq: &mut Vec<BumpSlot>, len: usize, want: &[(usize, usize)]) -> bool {
        let runs: Vec<usize> = QUADRANT_SIGNS.iter().map(|&q| quadrant_runs(seq, q)).collect();
        if runs.iter().zip(want).any(|(&r, &(_, hi))| r > hi) {
            return false;
        }
        if seq.len() == len {
            let has_m = seq.iter().any(|b| b.on_m);
            let has_n = seq.iter().any(|b| !b.on_m);
            return has_m && has_n && runs.iter().zip(want).all(|(&r, &(lo, _))| r >= lo);
        }
        for sym in SYMBOLS {
            if seq.last() == Some(&sym) {
                continue;
            }
            seq.push(sym);
            if search(seq, len, want) {
                return true;
            }
            seq.pop();
        }
        false
    }

    let mut seq = Vec::new();
    for len in 2..=MAX_LEN {
        if search(&mut seq, len, &want) {
            return Ok(seq);
        }
    }
    Err(Error::Config(format!(
        "alternating_bumps: no arrangement found for {targets:?}"
    )))
}
