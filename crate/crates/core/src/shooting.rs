//! The zero-function `phi_a^w(s)`: shoot from a zero with unit flux and
//! report the next zero of the solution, and the alternating compositions
//! built from it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ode::{self, Outcome, Settings};
use crate::scalar::Real;
use crate::weights::{Problem, WeightSelector};

/// Integration and event tolerances.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances<T> {
    /// Relative tolerance on `(u, p u')`.
    pub rel: T,
    /// Absolute tolerance on `(u, p u')`.
    pub abs: T,
    /// Accuracy of a located zero, in `t`.
    pub event: T,
}

impl<T: Real> Default for Tolerances<T> {
    /// `1e-9`, `1e-12`, `1e-10`, raised to a few ulps for `f32`.
    fn default() -> Self {
        let floor = T::epsilon() * T::lit(8.0);
        Self {
            rel: T::lit(1e-9).max(floor),
            abs: T::lit(1e-12).max(floor * floor),
            event: T::lit(1e-10).max(floor),
        }
    }
}

impl<T: Real> Tolerances<T> {
    pub fn new(rel: T, abs: T, event: T) -> Result<Self> {
        let tol = Self { rel, abs, event };
        tol.validate()?;
        Ok(tol)
    }

    /// Every tolerance must lie in `]0, 1e-2]`.
    pub fn validate(&self) -> Result<()> {
        let cap = T::lit(1e-2);
        for (name, v) in [("rel", self.rel), ("abs", self.abs), ("event", self.event)] {
            if !(v > T::zero() && v <= cap) {
                return Err(Error::Config(format!("tolerance {name} = {v} must lie in ]0, 1e-2]")));
            }
        }
        Ok(())
    }

    /// All three tolerances divided by two.
    pub fn halved(&self) -> Self {
        Self {
            rel: self.rel * T::half(),
            abs: self.abs * T::half(),
            event: self.event * T::half(),
        }
    }
}

/// Value of the zero-function: a time in `]s, T2]` or no zero before `T2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingTime<T> {
    Finite(T),
    BeyondHorizon,
}

impl<T: Real> CrossingTime<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Self::Finite(t) => Some(t),
            Self::BeyondHorizon => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Self::Finite(_))
    }

    /// True when this crossing lies strictly before `t` (`BeyondHorizon` never does).
    pub fn is_before(self, t: T) -> bool {
        matches!(self, Self::Finite(x) if x < t)
    }
}

impl<T: Real> fmt::Display for CrossingTime<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(t) => write!(f, "{t}"),
            Self::BeyondHorizon => f.write_str("beyond"),
        }
    }
}

/// Which weight a composition starts with: `m` for `>`, `n` for `<`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Gt,
    Lt,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Gt, Branch::Lt];

    pub fn first_weight(self) -> WeightSelector {
        match self {
            Self::Gt => WeightSelector::M,
            Self::Lt => WeightSelector::N,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Self::Gt => ">",
            Self::Lt => "<",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Gt => "gt",
            Self::Lt => "lt",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gt" | ">" => Ok(Self::Gt),
            "lt" | "<" => Ok(Self::Lt),
            other => Err(Error::Config(format!("unknown branch '{other}' (expected gt or lt)"))),
        }
    }
}

/// One integrator state of a shot, `v = p u'`. States are rescaled when
/// they grow large, so only the zeros and the sign pattern are meaningful.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShotState<T> {
    pub t: T,
    pub u: T,
    pub v: T,
}

/// Writes shot states as CSV with header `t,u,v`.
pub fn write_trace_csv<T: Real, W: std::io::Write>(states: &[ShotState<T>], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "u", "v"])?;
    for st in states {
        w.write_record([st.t.to_string(), st.u.to_string(), st.v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// One leg of a shot: between consecutive zeros the equation is
/// `-(p u')' + q u = coef * w u` with `w` the selected weight.
pub(crate) type Leg<T> = (WeightSelector, T);

/// Largest step that still resolves a quarter of the fastest local
/// oscillation of `-(p u')' + q u = c w u`.
fn oscillation_step<T: Real>(prob: &Problem<T>, which: WeightSelector, coef: T) -> T {
    let stiffness = coef.abs() * prob.weight_sup(which) + prob.q_max();
    if stiffness > T::zero() {
        T::FRAC_PI_4() * (prob.p_min() / stiffness).sqrt()
    } else {
        T::infinity()
    }
}

/// Shoots from `s` towards `horizon` (either side) through the given legs,
/// restarting with `u = 0`, unit flux after every zero. Returns the zeros
/// found, at most one per leg; fewer means the horizon came first.
pub(crate) fn shoot<T: Real>(
    prob: &Problem<T>,
    s: T,
    horizon: T,
    legs: &[Leg<T>],
    tol: &Tolerances<T>,
    mut trace: Option<&mut Vec<ShotState<T>>>,
) -> Result<Vec<T>> {
    let forward = horizon >= s;
    let dir = if forward { T::one() } else { -T::one() };
    let breaks = [
        prob.merged_breakpoints(WeightSelector::M),
        prob.merged_breakpoints(WeightSelector::N),
    ];
    let mut zeros = Vec::with_capacity(legs.len());
    let mut t = s;
    let len = prob.length();

    for &(which, coef) in legs {
        if (horizon - t) * dir <= T::zero() {
            break;
        }
        let bp = &breaks[match which {
            WeightSelector::M => 0,
            WeightSelector::N => 1,
        }];
        let w = prob.weight(which);
        let cfg = Settings {
            rtol: tol.rel,
            atol: tol.abs,
            event_tol: tol.event,
            h_max: oscillation_step(prob, which, coef).min(len),
        };
        let mut h = cfg.h_max.min(len) * T::lit(1e-2);
        let mut y = [T::zero(), dir];
        let mut armed = false;
        if let Some(tr) = trace.as_deref_mut() {
            tr.push(ShotState { t, u: y[0], v: y[1] });
        }
        let crossing = loop {
            let end = if forward {
                let j = bp.partition_point(|&b| b <= t);
                bp.get(j).copied().unwrap_or(horizon).min(horizon)
            } else {
                let j = bp.partition_point(|&b| b < t);
                if j == 0 {
                    horizon
                } else {
                    bp[j - 1].max(horizon)
                }
            };
            if (end - t) * dir <= T::zero() {
                break None;
            }
            let mid = (t + end) * T::half();
            let (po, pp) = prob.p().piece_at(mid);
            let (qo, qp) = prob.q().piece_at(mid);
            let (wo, wp) = w.piece_at(mid);
            let rhs = |tt: T, y: [T; 2]| {
                let p = pp.eval(tt - po);
                let q = qp.eval(tt - qo);
                let wv = wp.eval(tt - wo);
                [y[1] / p, (q - coef * wv) * y[0]]
            };
            let record = |tt: T, yy: [T; 2]| {
                if let Some(tr) = trace.as_deref_mut() {
                    tr.push(ShotState {
                        t: tt,
                        u: yy[0],
                        v: yy[1],
                    });
                }
            };
            match ode::integrate(rhs, t, y, end, &mut h, armed, &cfg, record)? {
                Outcome::Crossed { t: tz, .. } => break Some(tz),
                Outcome::Reached { y: y_end } => {
                    if end == horizon && y_end[1] * dir < T::zero() {
                        // u is falling and its zero lies within event tolerance past the horizon
                        let slope = y_end[1].abs() / prob.p().value(end);
                        if y_end[0].abs() <= tol.event * slope {
                            break Some(end);
                        }
                    }
                    // a zero exactly at a breakpoint shows up as u = 0 there
                    armed = armed || y_end[0] > T::zero();
                    y = y_end;
                    t = end;
                }
            }
        };
        match crossing {
            Some(tz) => {
                zeros.push(tz);
                t = tz;
            }
            None => break,
        }
    }
    Ok(zeros)
}

fn check_time<T: Real>(prob: &Problem<T>, s: T) -> Result<()> {
    let (t1, t2) = prob.interval();
    if !(s >= t1 && s <= t2) {
        return Err(Error::Domain {
            t: s.as_f64(),
            lo: t1.as_f64(),
            hi: t2.as_f64(),
        });
    }
    Ok(())
}

/// `phi_a^w(s)`: first zero after `s` of the solution of `Lu = a w u` with
/// `u(s) = 0`, `p u'(s) = 1`, or `BeyondHorizon` if there is none up to `T2`.
pub fn zero_function<T: Real>(
    prob: &Problem<T>,
    which: WeightSelector,
    a: T,
    s: T,
    tol: &Tolerances<T>,
) -> Result<CrossingTime<T>> {
    check_time(prob, s)?;
    let zeros = shoot(prob, s, prob.interval().1, &[(which, a)], tol, None)?;
    Ok(zeros
        .first()
        .map_or(CrossingTime::BeyondHorizon, |&t| CrossingTime::Finite(t)))
}

/// Like [`zero_function`], also returning the integrator states of the shot.
pub fn zero_function_traced<T: Real>(
    prob: &Problem<T>,
    which: WeightSelector,
    a: T,
    s: T,
    tol: &Tolerances<T>,
) -> Result<(CrossingTime<T>, Vec<ShotState<T>>)> {
    check_time(prob, s)?;
    let mut states = Vec::new();
    let zeros = shoot(prob, s, prob.interval().1, &[(which, a)], tol, Some(&mut states))?;
    let crossing = zeros
        .first()
        .map_or(CrossingTime::BeyondHorizon, |&t| CrossingTime::Finite(t));
    Ok((crossing, states))
}

/// `(phi_a^w)^{-1}(y)`: last zero before `y` of the solution shot backwards
/// from `y`, or `BeyondHorizon` if there is none down to `T1`.
pub fn zero_function_inverse<T: Real>(
    prob: &Problem<T>,
    which: WeightSelector,
    a: T,
    y: T,
    tol: &Tolerances<T>,
) -> Result<CrossingTime<T>> {
    check_time(prob, y)?;
    let zeros = shoot(prob, y, prob.interval().0, &[(which, a)], tol, None)?;
    Ok(zeros
        .first()
        .map_or(CrossingTime::BeyondHorizon, |&t| CrossingTime::Finite(t)))
}

/// Legs of `Phi_k^>` (`m` first) or `Phi_k^<` (`n` first).
pub(crate) fn alternating_legs<T: Real>(k: usize, branch: Branch, a: T, b: T) -> Vec<Leg<T>> {
    (0..k)
        .map(|i| {
            let on_m = (i % 2 == 0) == (branch == Branch::Gt);
            if on_m {
                (WeightSelector::M, a)
            } else {
                (WeightSelector::N, b)
            }
        })
        .collect()
}

/// `Phi_k^>(a, b)(s)` or `Phi_k^<(a, b)(s)`: `k` alternating applications of
/// `phi_a^m` and `phi_b^n`.
pub fn compose_phi<T: Real>(
    prob: &Problem<T>,
    k: usize,
    branch: Branch,
    a: T,
    b: T,
    s: T,
    tol: &Tolerances<T>,
) -> Result<CrossingTime<T>> {
    if k == 0 {
        return Err(Error::Precondition("composition order k must be at least 1".into()));
    }
    check_time(prob, s)?;
    let legs = alternating_legs(k, branch, a, b);
    let zeros = shoot(prob, s, prob.interval().1, &legs, tol, None)?;
    Ok(if zeros.len() == k {
        CrossingTime::Finite(zeros[k - 1])
    } else {
        CrossingTime::BeyondHorizon
    })
}
