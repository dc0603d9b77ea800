use std::fmt;

use serde::{Deserialize, Serialize};

use super::Weight;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Which of the two weights a computation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightSelector {
    M,
    N,
}

impl WeightSelector {
    pub fn other(self) -> Self {
        match self {
            Self::M => Self::N,
            Self::N => Self::M,
        }
    }
}

impl fmt::Display for WeightSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::M => "m",
            Self::N => "n",
        })
    }
}

impl std::str::FromStr for WeightSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m" => Ok(Self::M),
            "n" => Ok(Self::N),
            other => Err(Error::Config(format!(
                "unknown weight selector '{other}' (expected m or n)"
            ))),
        }
    }
}

/// Dirichlet problem `-(p u')' + q u = a m u+ - b n u-` on `[T1, T2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem<T> {
    p: Weight<T>,
    q: Weight<T>,
    m: Weight<T>,
    n: Weight<T>,
    single_weight: bool,
    p_min: T,
    q_max: T,
    m_sup: T,
    n_sup: T,
}

impl<T: Real> Problem<T> {
    /// Two-weight problem.
    pub fn new(p: Weight<T>, q: Weight<T>, m: Weight<T>, n: Weight<T>) -> Result<Self> {
        Self::build(p, q, m, n, false)
    }

    /// One-weight problem (`n = m`).
    pub fn one_weight(p: Weight<T>, q: Weight<T>, m: Weight<T>) -> Result<Self> {
        let n = m.clone();
        Self::build(p, q, m, n, true)
    }

    /// `p = 1`, `q = 0` on the interval of `m`.
    pub fn plain(m: Weight<T>, n: Option<Weight<T>>) -> Result<Self> {
        let (t1, t2) = m.interval();
        let p = Weight::constant(t1, t2, T::one())?;
        let q = Weight::constant(t1, t2, T::zero())?;
        match n {
            Some(n) => Self::new(p, q, m, n),
            None => Self::one_weight(p, q, m),
        }
    }

    fn build(p: Weight<T>, q: Weight<T>, m: Weight<T>, n: Weight<T>, single: bool) -> Result<Self> {
        let interval = p.interval();
        for (name, w) in [("q", &q), ("m", &m), ("n", &n)] {
            if w.interval() != interval {
                return Err(Error::InvalidProblem(format!(
                    "{name} is defined on [{}, {}] but p on [{}, {}]",
                    w.interval().0,
                    w.interval().1,
                    interval.0,
                    interval.1
                )));
            }
        }
        let (p_min, _) = p.range();
        if !(p_min > T::zero()) {
            return Err(Error::InvalidProblem(format!("p must be positive (min p = {p_min})")));
        }
        let (q_min, q_max) = q.range();
        if q_min < -T::epsilon() * q_max.abs().max(T::one()) {
            return Err(Error::InvalidProblem(format!(
                "q must be nonnegative (min q = {q_min})"
            )));
        }
        for (name, w) in [("m", &m), ("n", &n)] {
            if w.is_identically_zero() {
                return Err(Error::InvalidProblem(format!("weight {name} is identically zero")));
            }
        }
        let (m_sup, n_sup) = (m.sup_abs(), n.sup_abs());
        Ok(Self {
            p,
            q,
            m,
            n,
            single_weight: single,
            p_min,
            q_max: q_max.max(T::zero()),
            m_sup,
            n_sup,
        })
    }

    /// Same operator and interval with new weights.
    pub fn with_weights(&self, m: Weight<T>, n: Weight<T>) -> Result<Self> {
        let single = self.single_weight && m == n;
        Self::build(self.p.clone(), self.q.clone(), m, n, single)
    }

    pub fn interval(&self) -> (T, T) {
        self.p.interval()
    }

    pub fn length(&self) -> T {
        let (t1, t2) = self.interval();
        t2 - t1
    }

    pub fn p(&self) -> &Weight<T> {
        &self.p
    }

    pub fn q(&self) -> &Weight<T> {
        &self.q
    }

    pub fn m(&self) -> &Weight<T> {
        &self.m
    }

    pub fn n(&self) -> &Weight<T> {
        &self.n
    }

    pub fn weight(&self, which: WeightSelector) -> &Weight<T> {
        match which {
            WeightSelector::M => &self.m,
            WeightSelector::N => &self.n,
        }
    }

    pub fn is_single_weight(&self) -> bool {
        self.single_weight
    }

    pub fn p_min(&self) -> T {
        self.p_min
    }

    pub fn q_max(&self) -> T {
        self.q_max
    }

    pub fn weight_sup(&self, which: WeightSelector) -> T {
        match which {
            WeightSelector::M => self.m_sup,
            WeightSelector::N => self.n_sup,
        }
    }

    /// Sorted union of the breakpoints of `p`, `q` and the selected weight.
    pub(crate) fn merged_breakpoints(&self, which: WeightSelector) -> Vec<T> {
        let mut all: Vec<T> = self
            .p
            .breakpoints()
            .iter()
            .chain(self.q.breakpoints())
            .chain(self.weight(which).breakpoints())
            .copied()
            .collect();
        all.sort_by(|a, b| a.partial_cmp(b).unwrap());
        all.dedup();
        all
    }
}
