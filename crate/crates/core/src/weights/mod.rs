//! Coefficient and weight functions.
//!
//! Every function entering the operator `Lu = -(p u')' + q u` or the weights
//! `m`, `n` is a continuous piecewise polynomial of degree at most five, so
//! sign structure can be read off exactly by root isolation.

mod poly;
pub mod presets;
mod problem;
mod sign;

use std::sync::OnceLock;

pub use poly::Poly;
pub use problem::{Problem, WeightSelector};
pub use sign::{SignChangeCount, SignProfile, SupportEdges};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Continuous piecewise polynomial on `[t0, t_r]`.
///
/// Piece `i` lives on `[t_i, t_{i+1}]` and is written in the local variable
/// `t - t_i`.
#[derive(Debug)]
pub struct Weight<T> {
    breakpoints: Vec<T>,
    pieces: Vec<Poly<T>>,
    profile: OnceLock<SignProfile<T>>,
}

impl<T: Clone> Clone for Weight<T> {
    fn clone(&self) -> Self {
        Self {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.clone(),
            profile: self.profile.clone(),
        }
    }
}

impl<T: PartialEq> PartialEq for Weight<T> {
    fn eq(&self, other: &Self) -> bool {
        self.breakpoints == other.breakpoints && self.pieces == other.pieces
    }
}

impl<T: Real> Weight<T> {
    /// Validates and builds a weight from breakpoints and per-piece local
    /// coefficients.
    pub fn new(breakpoints: Vec<T>, pieces: Vec<Poly<T>>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::InvalidWeight("need at least two breakpoints".into()));
        }
        if pieces.len() + 1 != breakpoints.len() {
            return Err(Error::InvalidWeight(format!(
                "{} breakpoints require {} pieces, got {}",
                breakpoints.len(),
                breakpoints.len() - 1,
                pieces.len()
            )));
        }
        if breakpoints.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidWeight("non-finite breakpoint".into()));
        }
        if let Some(w) = breakpoints.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::InvalidWeight(format!(
                "breakpoints must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        for (i, piece) in pieces.iter().enumerate() {
            if piece.degree() > Poly::<T>::MAX_DEGREE {
                return Err(Error::InvalidWeight(format!(
                    "piece {i} has degree {} > {}",
                    piece.degree(),
                    Poly::<T>::MAX_DEGREE
                )));
            }
            if piece.coeffs().iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidWeight(format!("piece {i} has a non-finite coefficient")));
            }
        }
        let tol = T::lit(1e-12).max(T::epsilon() * T::lit(1e4));
        for i in 1..pieces.len() {
            let left = pieces[i - 1].eval(breakpoints[i] - breakpoints[i - 1]);
            let right = pieces[i].eval(T::zero());
            let scale = T::one().max(left.abs()).max(right.abs());
            if (left - right).abs() > tol * scale {
                return Err(Error::InvalidWeight(format!(
                    "discontinuity at t = {}: left {} vs right {}",
                    breakpoints[i], left, right
                )));
            }
        }
        Ok(Self {
            breakpoints,
            pieces,
            profile: OnceLock::new(),
        })
    }

    pub fn constant(t1: T, t2: T, value: T) -> Result<Self> {
        Self::new(vec![t1, t2], vec![Poly::constant(value)])
    }

    /// Piecewise-cubic Hermite interpolant through `(nodes, values, slopes)`.
    pub fn hermite(nodes: &[T], values: &[T], slopes: &[T]) -> Result<Self> {
        if nodes.len() != values.len() || nodes.len() != slopes.len() {
            return Err(Error::InvalidWeight("hermite data length mismatch".into()));
        }
        let three = T::lit(3.0);
        let pieces = (1..nodes.len())
            .map(|i| {
                let h = nodes[i] - nodes[i - 1];
                let (f0, f1, d0, d1) = (values[i - 1], values[i], slopes[i - 1], slopes[i]);
                let secant = (f1 - f0) / h;
                let c2 = (three * secant - T::two() * d0 - d1) / h;
                let c3 = (d0 + d1 - T::two() * secant) / (h * h);
                Poly::new(vec![f0, d0, c2, c3])
            })
            .collect();
        Self::new(nodes.to_vec(), pieces)
    }

    /// Hermite approximation of a smooth function on `[t1, t2]` with nodes no
    /// further apart than `max_step`. Cubic Hermite error is bounded by
    /// `max_step^4 / 384 * sup|f''''|`.
    pub fn approximate<F, D>(t1: T, t2: T, max_step: T, f: F, df: D) -> Result<Self>
    where
        F: Fn(T) -> T,
        D: Fn(T) -> T,
    {
        let len = t2 - t1;
        let count = (len / max_step).ceil().to_usize().unwrap_or(1).max(1);
        let h = len / T::from_usize(count).unwrap();
        let nodes: Vec<T> = (0..=count)
            .map(|i| {
                if i == count {
                    t2
                } else {
                    t1 + h * T::from_usize(i).unwrap()
                }
            })
            .collect();
        let values: Vec<T> = nodes.iter().map(|&t| f(t)).collect();
        let slopes: Vec<T> = nodes.iter().map(|&t| df(t)).collect();
        Self::hermite(&nodes, &values, &slopes)
    }

    /// Joins weights defined on adjacent intervals.
    pub fn concat(parts: Vec<Weight<T>>) -> Result<Self> {
        let mut breakpoints: Vec<T> = Vec::new();
        let mut pieces = Vec::new();
        for part in parts {
            if let Some(&last) = breakpoints.last() {
                if part.breakpoints[0] != last {
                    return Err(Error::InvalidWeight(format!(
                        "parts are not adjacent: {} vs {}",
                        last, part.breakpoints[0]
                    )));
                }
                breakpoints.extend_from_slice(&part.breakpoints[1..]);
            } else {
                breakpoints.extend_from_slice(&part.breakpoints);
            }
            pieces.extend(part.pieces);
        }
        Self::new(breakpoints, pieces)
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Poly<T>] {
        &self.pieces
    }

    pub fn interval(&self) -> (T, T) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    /// Index of the piece used for `t`: the piece to the left at interior
    /// breakpoints, the first piece at `t0`.
    #[inline]
    pub fn piece_index(&self, t: T) -> usize {
        let j = self.breakpoints.partition_point(|&b| b < t);
        j.clamp(1, self.pieces.len()) - 1
    }

    /// Piece covering `t` together with the time its local variable starts at.
    #[inline]
    pub(crate) fn piece_at(&self, t: T) -> (T, &Poly<T>) {
        let i = self.piece_index(t);
        (self.breakpoints[i], &self.pieces[i])
    }

    /// Value at `t`, without domain checking.
    #[inline]
    pub fn value(&self, t: T) -> T {
        let (origin, piece) = self.piece_at(t);
        piece.eval(t - origin)
    }

    pub fn evaluate(&self, t: T) -> Result<T> {
        let (lo, hi) = self.interval();
        if !(t >= lo && t <= hi) {
            return Err(Error::Domain {
                t: t.as_f64(),
                lo: lo.as_f64(),
                hi: hi.as_f64(),
            });
        }
        Ok(self.value(t))
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.scaled(factor)).collect(),
            profile: OnceLock::new(),
        }
    }

    /// `-w`, exact in floating point.
    pub fn negated(&self) -> Self {
        self.scaled(-T::one())
    }

    /// Exact minimum and maximum over the whole interval.
    pub fn range(&self) -> (T, T) {
        self.pieces
            .iter()
            .zip(self.breakpoints.windows(2))
            .map(|(p, w)| p.range_on(T::zero(), w[1] - w[0]))
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), (a, b)| {
                (lo.min(a), hi.max(b))
            })
    }

    pub fn sup_abs(&self) -> T {
        let (lo, hi) = self.range();
        lo.abs().max(hi.abs())
    }

    pub fn is_identically_zero(&self) -> bool {
        self.pieces.iter().all(Poly::is_zero)
    }

    /// Sign structure, computed once and cached.
    pub fn sign_profile(&self) -> &SignProfile<T> {
        self.profile.get_or_init(|| SignProfile::compute(self))
    }

    /// `inf { t in ]s, T2] : w(t) > 0 }`, or `None` when `w <= 0` there.
    pub fn first_positive_time(&self, s: T) -> Result<Option<T>> {
        self.evaluate(s)?;
        Ok(first_after(&self.sign_profile().positive_intervals, s))
    }

    /// `inf { t in ]s, T2] : w(t) < 0 }`, or `None` when `w >= 0` there.
    pub fn first_negative_time(&self, s: T) -> Result<Option<T>> {
        self.evaluate(s)?;
        Ok(first_after(&self.sign_profile().negative_intervals, s))
    }

    /// Infima and suprema of the positivity and negativity sets.
    pub fn support_edges(&self) -> SupportEdges<T> {
        self.sign_profile().support_edges()
    }

    /// True when `w` is strictly positive somewhere in `]t1, t2[`.
    pub fn has_positive_part_in(&self, t1: T, t2: T) -> bool {
        overlaps(&self.sign_profile().positive_intervals, t1, t2)
    }

    /// True when `w` is strictly negative somewhere in `]t1, t2[`.
    pub fn has_negative_part_in(&self, t1: T, t2: T) -> bool {
        overlaps(&self.sign_profile().negative_intervals, t1, t2)
    }
}

fn first_after<T: Real>(intervals: &[(T, T)], s: T) -> Option<T> {
    intervals.iter().find(|&&(_, hi)| hi > s).map(|&(lo, _)| lo.max(s))
}

fn overlaps<T: Real>(intervals: &[(T, T)], t1: T, t2: T) -> bool {
    intervals.iter().any(|&(lo, hi)| lo.max(t1) < hi.min(t2))
}
