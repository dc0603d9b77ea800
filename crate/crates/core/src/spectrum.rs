//! Nonemptiness of the Fučík sets `C_k` and tracing of the curves
//! `b = f_k(a)` in each quadrant.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::eigen::principal_pair;
use crate::error::{Error, Result};
use crate::scalar::{geometric_mid, Real};
use crate::shooting::{compose_phi, Branch, CrossingTime, Tolerances};
use crate::weights::{Problem, WeightSelector};

/// Open quadrant of the `(a, b)` plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quadrant {
    Pp,
    Mm,
    Pm,
    Mp,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::Pp, Quadrant::Mm, Quadrant::Pm, Quadrant::Mp];

    /// Signs of `a` and `b`.
    pub fn signs(self) -> (i8, i8) {
        match self {
            Self::Pp => (1, 1),
            Self::Mm => (-1, -1),
            Self::Pm => (1, -1),
            Self::Mp => (-1, 1),
        }
    }

    pub fn from_signs(sa: i8, sb: i8) -> Self {
        match (sa > 0, sb > 0) {
            (true, true) => Self::Pp,
            (false, false) => Self::Mm,
            (true, false) => Self::Pm,
            (false, true) => Self::Mp,
        }
    }

    /// Quadrant obtained by swapping the roles of `a` and `b`.
    pub fn transposed(self) -> Self {
        let (sa, sb) = self.signs();
        Self::from_signs(sb, sa)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Self::Pp => "++",
            Self::Mm => "--",
            Self::Pm => "+-",
            Self::Mp => "-+",
        }
    }

    fn factors<T: Real>(self) -> (T, T) {
        let (sa, sb) = self.signs();
        (T::from_i8(sa).unwrap(), T::from_i8(sb).unwrap())
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pp => "pp",
            Self::Mm => "mm",
            Self::Pm => "pm",
            Self::Mp => "mp",
        })
    }
}

impl FromStr for Quadrant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pp" | "++" => Ok(Self::Pp),
            "mm" | "--" => Ok(Self::Mm),
            "pm" | "+-" => Ok(Self::Pm),
            "mp" | "-+" => Ok(Self::Mp),
            other => Err(Error::Config(format!(
                "unknown quadrant '{other}' (expected pp, mm, pm or mp)"
            ))),
        }
    }
}

/// Verdict of the nonemptiness test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    /// Certified by a witness `Phi_k(A, A)(T1) < T2`.
    Nonempty,
    /// No witness up to `|a|, |b| = a_max`.
    EmptyAtResolution { a_max: f64 },
}

impl Status {
    pub fn is_nonempty(self) -> bool {
        matches!(self, Self::Nonempty)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Nonempty => f.write_str("nonempty"),
            Self::EmptyAtResolution { a_max } => write!(f, "empty at resolution {a_max:e}"),
        }
    }
}

/// Parameters shared by the spectrum computations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectrumOptions<T> {
    pub tol: Tolerances<T>,
    /// Witness scale for nonemptiness and upper end of traced curves.
    pub a_max: T,
    /// Curve samples per decade of `|a|`.
    pub grid_per_decade: usize,
    /// A witness must land before `T2 - margin (T2 - T1)`.
    pub margin: T,
}

impl<T: Real> Default for SpectrumOptions<T> {
    fn default() -> Self {
        Self {
            tol: Tolerances::default(),
            a_max: T::lit(1e4),
            grid_per_decade: 64,
            margin: T::lit(1e-6),
        }
    }
}

impl<T: Real> SpectrumOptions<T> {
    pub fn validate(&self) -> Result<()> {
        self.tol.validate()?;
        if !(self.a_max >= T::lit(1e3) && self.a_max.is_finite()) {
            return Err(Error::Config(format!("a_max = {} must be at least 1e3", self.a_max)));
        }
        if self.grid_per_decade == 0 {
            return Err(Error::Config("grid density must be positive".into()));
        }
        if !(self.margin >= T::zero() && self.margin < T::lit(0.5)) {
            return Err(Error::Config(format!("margin = {} must lie in [0, 0.5[", self.margin)));
        }
        Ok(())
    }
}

/// A traced branch `C_k^{>}` or `C_k^{<}` in one quadrant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveBranch<T> {
    pub k: usize,
    pub branch: Branch,
    pub quadrant: Quadrant,
    /// `(a, b)` in the quadrant's signs, `|a|` increasing.
    pub samples: Vec<(T, T)>,
    /// Domain edge: `|a|` below which the curve leaves `|b| <= a_max`.
    pub nu: Option<T>,
    /// Smallest `|b|` reached, at `|a| = a_max`.
    pub mu: Option<T>,
    pub status: Status,
}

/// Vertical and horizontal lines through the principal eigenvalues.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrivialLines<T> {
    pub vertical: Vec<T>,
    pub horizontal: Vec<T>,
}

/// `(m, n) -> (sa m, sb n)`, mapping the quadrant to `++`. Involutive.
pub fn quadrant_reduce<T: Real>(prob: &Problem<T>, quadrant: Quadrant) -> Result<Problem<T>> {
    if quadrant == Quadrant::Pp {
        return Ok(prob.clone());
    }
    let (sa, sb) = quadrant.signs();
    let flip = |w: &crate::weights::Weight<T>, s: i8| if s > 0 { w.clone() } else { w.negated() };
    let m = flip(prob.m(), sa);
    let n = flip(prob.n(), sb);
    if prob.is_single_weight() && sa == sb {
        // stays a one-weight problem
        let p = Problem::one_weight(prob.p().clone(), prob.q().clone(), m)?;
        return Ok(p);
    }
    Problem::new(prob.p().clone(), prob.q().clone(), m, n)
}

fn phi_at_t1<T: Real>(
    reduced: &Problem<T>,
    k: usize,
    branch: Branch,
    a: T,
    b: T,
    tol: &Tolerances<T>,
) -> Result<CrossingTime<T>> {
    compose_phi(reduced, k, branch, a, b, reduced.interval().0, tol)
}

/// Nonemptiness test: `C_k` is nonempty when `Phi_k(A, A)(T1)` lands before `T2`.
pub fn nonempty_test<T: Real>(
    prob: &Problem<T>,
    k: usize,
    branch: Branch,
    quadrant: Quadrant,
    opts: &SpectrumOptions<T>,
) -> Result<Status> {
    if k < 2 {
        return Err(Error::Precondition("curve index k must be at least 2".into()));
    }
    let reduced = quadrant_reduce(prob, quadrant)?;
    reduced_status(&reduced, k, branch, opts)
}

fn reduced_status<T: Real>(
    reduced: &Problem<T>,
    k: usize,
    branch: Branch,
    opts: &SpectrumOptions<T>,
) -> Result<Status> {
    let (_, t2) = reduced.interval();
    let limit = t2 - opts.margin * reduced.length();
    let hit = phi_at_t1(reduced, k, branch, opts.a_max, opts.a_max, &opts.tol)?;
    Ok(if hit.is_before(limit) {
        Status::Nonempty
    } else {
        Status::EmptyAtResolution {
            a_max: opts.a_max.as_f64(),
        }
    })
}

/// The `b > 0` with `Phi_k(a, b)(T1) = T2` on an already reduced problem,
/// searched in `]0, b_max]`.
pub fn solve_b<T: Real>(
    reduced: &Problem<T>,
    k: usize,
    branch: Branch,
    a: T,
    b_max: T,
    tol: &Tolerances<T>,
) -> Result<Option<T>> {
    if !(a > T::zero()) {
        return Err(Error::Precondition(format!("solve_b needs a > 0, got {a}")));
    }
    let t2 = reduced.interval().1;
    // g(b) - T2, with BeyondHorizon mapped to None (above T2)
    let g = |b: T| -> Result<Option<T>> { Ok(phi_at_t1(reduced, k, branch, a, b, tol)?.finite().map(|t| t - t2)) };
    let mut hi = b_max;
    let mut g_hi = match g(hi)? {
        Some(v) if v < T::zero() => v,
        Some(v) if v.is_zero() => return Ok(Some(hi)),
        _ => return Ok(None),
    };
    let floor = b_max * T::lit(1e-15);
    let mut lo = b_max;
    let mut g_lo;
    loop {
        lo = lo * T::lit(0.0625);
        if lo < floor {
            return Ok(None);
        }
        match g(lo)? {
            Some(v) if v < T::zero() => {
                hi = lo;
                g_hi = v;
            }
            other => {
                g_lo = other;
                break;
            }
        }
    }

    let x_tol = T::lit(4.0) * T::epsilon();
    let f_tol = tol.event * T::lit(1e-2);
    let mut side = 0i8;
    for _ in 0..300 {
        if hi - lo <= x_tol * hi {
            break;
        }
        let x = match g_lo {
            None => geometric_mid(lo, hi),
            Some(fl) => {
                let x = (lo * g_hi - hi * fl) / (g_hi - fl);
                if x > lo && x < hi {
                    x
                } else {
                    (lo + hi) * T::half()
                }
            }
        };
        let gx = g(x)?;
        match gx {
            Some(v) if v.abs() <= f_tol => return Ok(Some(x)),
            Some(v) if v < T::zero() => {
                hi = x;
                g_hi = v;
                if side == -1 {
                    if let Some(fl) = g_lo.as_mut() {
                        *fl = *fl * T::half();
                    }
                }
                side = -1;
            }
            _ => {
                lo = x;
                g_lo = gx;
                if side == 1 {
                    g_hi = g_hi * T::half();
                }
                side = 1;
            }
        }
    }
    Ok(Some((lo + hi) * T::half()))
}

/// Domain edge: smallest `a` for which `solve_b` succeeds with `b_max`.
pub fn domain_edge<T: Real>(
    reduced: &Problem<T>,
    k: usize,
    branch: Branch,
    b_max: T,
    a_max: T,
    tol: &Tolerances<T>,
) -> Result<Option<T>> {
    let t2 = reduced.interval().1;
    let ok = |a: T| -> Result<bool> { Ok(phi_at_t1(reduced, k, branch, a, b_max, tol)?.is_before(t2)) };
    if !ok(a_max)? {
        return Ok(None);
    }
    let mut hi = a_max;
    let mut lo = a_max * T::lit(0.25);
    while ok(lo)? {
        hi = lo;
        lo = lo * T::lit(0.25);
        if lo < a_max * T::lit(1e-18) {
            return Err(Error::Inconsistent(format!(
                "C_{k} domain edge not bracketed from below"
            )));
        }
    }
    for _ in 0..60 {
        let mid = geometric_mid(lo, hi);
        if ok(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

/// `f_k(a)` at the given signed abscissae (signs must match the quadrant);
/// entries are `None` where no `|b| <= b_max` exists.
pub fn curve_points<T: Real>(
    prob: &Problem<T>,
    k: usize,
    branch: Branch,
    quadrant: Quadrant,
    a_values: &[T],
    b_max: T,
    tol: &Tolerances<T>,
) -> Result<Vec<Option<T>>> {
    let reduced = quadrant_reduce(prob, quadrant)?;
    let (fa, fb) = quadrant.factors::<T>();
    a_values
        .par_iter()
        .map(|&a| {
            let b = solve_b(&reduced, k, branch, a * fa, b_max, tol)?;
            Ok(b.map(|b| b * fb))
        })
        .collect()
}

/// Samples `C_k` of the given branch on a geometric grid from just above the
/// domain edge up to `a_max`.
pub fn trace_curve<T: Real>(
    prob: &Problem<T>,
    k: usize,
    branch: Branch,
    quadrant: Quadrant,
    opts: &SpectrumOptions<T>,
) -> Result<CurveBranch<T>> {
    opts.validate()?;
    let reduced = quadrant_reduce(prob, quadrant)?;
    let status = reduced_status(&reduced, k, branch, opts)?;
    let mut curve = CurveBranch {
        k,
        branch,
        quadrant,
        samples: Vec::new(),
        nu: None,
        mu: None,
        status,
    };
    if !status.is_nonempty() {
        return Ok(curve);
    }
    let nu = domain_edge(&reduced, k, branch, opts.a_max, opts.a_max, &opts.tol)?
        .ok_or_else(|| Error::Inconsistent(format!("C_{k} nonempty but no domain edge found")))?;
    let grid = geometric_grid(nu * T::lit(1.001), opts.a_max, opts.grid_per_decade);
    let values: Vec<Result<Option<T>>> = grid
        .par_iter()
        .map(|&a| solve_b(&reduced, k, branch, a, opts.a_max, &opts.tol))
        .collect();
    let (fa, fb) = quadrant.factors::<T>();
    for (a, b) in grid.into_iter().zip(values) {
        if let Some(b) = b? {
            curve.samples.push((a * fa, b * fb));
        }
    }
    curve.nu = Some(nu * fa);
    curve.mu = curve.samples.last().map(|&(_, b)| b);
    Ok(curve)
}

/// Writes curves as CSV with header `k,branch,quadrant,a,b`, one row per
/// sample. Numbers use the shortest representation that round-trips.
pub fn write_curves_csv<T: Real, W: std::io::Write>(curves: &[CurveBranch<T>], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k", "branch", "quadrant", "a", "b"])?;
    for c in curves {
        let (k, branch, quadrant) = (c.k.to_string(), c.branch.to_string(), c.quadrant.to_string());
        for (a, b) in &c.samples {
            w.write_record([k.as_str(), &branch, &quadrant, &a.to_string(), &b.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `lo, lo r, lo r^2, ...` with `r = 10^(1/per_decade)`, ending exactly at `hi`.
pub fn geometric_grid<T: Real>(lo: T, hi: T, per_decade: usize) -> Vec<T> {
    if !(lo < hi) {
        return vec![hi];
    }
    let decades = (hi / lo).log10();
    let n = (decades * T::from_usize(per_decade).unwrap())
        .ceil()
        .to_usize()
        .unwrap_or(1)
        .max(1);
    (0..=n)
        .map(|i| {
            if i == n {
                hi
            } else {
                lo * (hi / lo).powf(T::from_usize(i).unwrap() / T::from_usize(n).unwrap())
            }
        })
        .collect()
}

/// Trivial lines: principal eigenvalues of `m` (vertical) and `n` (horizontal).
pub fn trivial_lines<T: Real>(prob: &Problem<T>, tol: &Tolerances<T>) -> Result<TrivialLines<T>> {
    let full = prob.interval();
    let (m_pos, m_neg) = principal_pair(prob, WeightSelector::M, full, tol)?;
    let (n_pos, n_neg) = if prob.is_single_weight() {
        (m_pos, m_neg)
    } else {
        principal_pair(prob, WeightSelector::N, full, tol)?
    };
    Ok(TrivialLines {
        vertical: [m_pos, m_neg].into_iter().flatten().collect(),
        horizontal: [n_pos, n_neg].into_iter().flatten().collect(),
    })
}
