//! Eigenvalues `lambda_k` of `Lu = lambda w u` with Dirichlet conditions on
//! a subinterval, by bisection on the nodal count of a shot.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::shooting::{shoot, Tolerances};
use crate::weights::{Problem, WeightSelector};

/// Largest `|a|` the bracket expansion may reach.
pub const BRACKET_LIMIT: f64 = 1e12;
const MAX_BISECTIONS: usize = 120;
const REL_WIDTH: f64 = 1e-12;

/// `lambda_k(w, ]t1, t2[)`; `k < 0` asks for the negative sequence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EigenRequest<T> {
    pub which: WeightSelector,
    pub t1: T,
    pub t2: T,
    pub k: i32,
}

impl<T: Real> EigenRequest<T> {
    /// Request on the whole interval of `prob`.
    pub fn full(prob: &Problem<T>, which: WeightSelector, k: i32) -> Self {
        let (t1, t2) = prob.interval();
        Self { which, t1, t2, k }
    }
}

/// The `k`-th zero of the shot from `t1` with parameter `a` when it is
/// reached no later than `t2`, i.e. when `a` lies at or beyond `lambda_k`.
fn kth_zero<T: Real>(prob: &Problem<T>, req: &EigenRequest<T>, a: T, tol: &Tolerances<T>) -> Result<Option<T>> {
    let k = req.k.unsigned_abs() as usize;
    let legs = vec![(req.which, a); k];
    Ok(shoot(prob, req.t1, req.t2, &legs, tol, None)?.get(k - 1).copied())
}

fn reaches<T: Real>(prob: &Problem<T>, req: &EigenRequest<T>, a: T, tol: &Tolerances<T>) -> Result<bool> {
    Ok(kth_zero(prob, req, a, tol)?.is_some())
}

/// The eigenvalue whose eigenfunction has `|k| - 1` interior zeros in
/// `]t1, t2[` and the sign of `k`, or `None` when the matching signed part
/// of the weight vanishes on the subinterval.
pub fn eigenvalue<T: Real>(prob: &Problem<T>, req: &EigenRequest<T>, tol: &Tolerances<T>) -> Result<Option<T>> {
    let (lo, hi) = prob.interval();
    if req.k == 0 {
        return Err(Error::Precondition("eigenvalue index must be nonzero".into()));
    }
    if !(req.t1 >= lo && req.t2 <= hi && req.t1 < req.t2) {
        return Err(Error::Precondition(format!(
            "subinterval ]{}, {}[ must be nonempty and inside [{lo}, {hi}]",
            req.t1, req.t2
        )));
    }
    let w = prob.weight(req.which);
    let sign = if req.k > 0 { T::one() } else { -T::one() };
    let present = if req.k > 0 {
        w.has_positive_part_in(req.t1, req.t2)
    } else {
        w.has_negative_part_in(req.t1, req.t2)
    };
    if !present {
        return Ok(None);
    }

    let limit = T::lit(BRACKET_LIMIT);
    let mut x_hi = T::one();
    while !reaches(prob, req, sign * x_hi, tol)? {
        x_hi = x_hi * T::two();
        if x_hi > limit {
            return Err(Error::NotFound {
                what: format!("eigenvalue k = {} of {}", req.k, req.which),
                limit: BRACKET_LIMIT,
            });
        }
    }
    let mut x_lo = x_hi * T::half();
    while reaches(prob, req, sign * x_lo, tol)? {
        x_hi = x_lo;
        x_lo = x_lo * T::half();
        if x_lo < T::lit(1e-12) {
            return Err(Error::Inconsistent(format!(
                "eigenvalue k = {} of {} has no positive lower bracket",
                req.k, req.which
            )));
        }
    }
    // Stop once the bracket is narrow and the k-th zero sits on t2, or the
    // bracket is down to a few ulps. The reaching end is returned.
    let defect_tol = tol.event * (req.t2 - req.t1);
    let mut defect = T::infinity();
    for _ in 0..MAX_BISECTIONS {
        let width = x_hi - x_lo;
        if width <= T::lit(4.0) * T::epsilon() * x_hi || (width <= T::lit(REL_WIDTH) * x_hi && defect <= defect_tol) {
            break;
        }
        let mid = (x_lo + x_hi) * T::half();
        match kth_zero(prob, req, sign * mid, tol)? {
            Some(t) => {
                x_hi = mid;
                defect = req.t2 - t;
            }
            None => x_lo = mid,
        }
    }
    Ok(Some(sign * x_hi))
}

/// `(lambda_1(w, ]t1, t2[), lambda_{-1}(w, ]t1, t2[))`.
pub fn principal_pair<T: Real>(
    prob: &Problem<T>,
    which: WeightSelector,
    sub: (T, T),
    tol: &Tolerances<T>,
) -> Result<(Option<T>, Option<T>)> {
    let req = |k| EigenRequest {
        which,
        t1: sub.0,
        t2: sub.1,
        k,
    };
    Ok((eigenvalue(prob, &req(1), tol)?, eigenvalue(prob, &req(-1), tol)?))
}
