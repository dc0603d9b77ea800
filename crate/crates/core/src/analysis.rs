//! Structural summaries of a spectrum: how many sets `C_k` each quadrant
//! carries, where the first curves go as `|a| -> infinity`, and whether the
//! first curves stay away from the trivial lines.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::eigen::{eigenvalue, EigenRequest};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::shooting::{Branch, Tolerances};
use crate::spectrum::{
    curve_points, domain_edge, nonempty_test, quadrant_reduce, trivial_lines, Quadrant, SpectrumOptions, Status,
    TrivialLines,
};
use crate::weights::{Problem, SignChangeCount, WeightSelector};

/// Verdict for one `C_k` of one branch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LevelStatus {
    pub k: usize,
    pub branch: Branch,
    pub status: Status,
}

/// Number of nonempty sets with `k >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Total {
    Exact(usize),
    /// Level `k_stop` is still occupied, so the count was cut off.
    AtLeast(usize),
}

impl Total {
    pub fn value(self) -> usize {
        match self {
            Self::Exact(n) | Self::AtLeast(n) => n,
        }
    }
}

impl std::fmt::Display for Total {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Exact(n) => write!(f, "{n}"),
            Self::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadrantCount {
    pub quadrant: Quadrant,
    pub counts: Vec<LevelStatus>,
    pub total: Total,
    /// The relevant signed parts of `m` and `n` overlap, so every level is
    /// occupied and the true count is infinite.
    pub symbolically_infinite: bool,
}

impl QuadrantCount {
    /// Odd, or cut off; an even final count breaks the ladder structure.
    pub fn parity_ok(&self) -> bool {
        match self.total {
            Total::AtLeast(_) => true,
            Total::Exact(n) => n == 0 || n % 2 == 1,
        }
    }
}

/// True when the parts of `m` and `n` with the quadrant's signs are both
/// nonzero on some common open interval.
pub fn signed_parts_overlap<T: Real>(prob: &Problem<T>, quadrant: Quadrant) -> bool {
    let (sa, sb) = quadrant.signs();
    let part = |w: &crate::weights::Weight<T>, s: i8| {
        let profile = w.sign_profile();
        if s > 0 {
            profile.positive_intervals.clone()
        } else {
            profile.negative_intervals.clone()
        }
    };
    let m = part(prob.m(), sa);
    let n = part(prob.n(), sb);
    m.iter()
        .any(|&(a0, a1)| n.iter().any(|&(b0, b1)| a0.max(b0) < a1.min(b1)))
}

/// Nonemptiness of `C_k^{>}` and `C_k^{<}` for `k = 2..=k_stop`.
pub fn count_quadrant<T: Real>(
    prob: &Problem<T>,
    quadrant: Quadrant,
    k_stop: usize,
    opts: &SpectrumOptions<T>,
) -> Result<QuadrantCount> {
    if k_stop < 2 {
        return Err(Error::Config("k_stop must be at least 2".into()));
    }
    opts.validate()?;
    let jobs: Vec<(usize, Branch)> = (2..=k_stop).flat_map(|k| Branch::BOTH.map(|b| (k, b))).collect();
    let counts: Vec<LevelStatus> = jobs
        .par_iter()
        .map(|&(k, branch)| {
            Ok(LevelStatus {
                k,
                branch,
                status: nonempty_test(prob, k, branch, quadrant, opts)?,
            })
        })
        .collect::<Result<_>>()?;

    let occupied = |k: usize| counts.iter().any(|c| c.k == k && c.status.is_nonempty());
    let full = |k: usize| counts.iter().filter(|c| c.k == k).all(|c| c.status.is_nonempty());
    for k in 2..k_stop {
        if occupied(k + 1) && !full(k) {
            return Err(Error::Inconsistent(format!(
                "quadrant {}: level {} occupied while level {k} is not full",
                quadrant.symbol(),
                k + 1
            )));
        }
    }
    let n = counts.iter().filter(|c| c.status.is_nonempty()).count();
    let total = if occupied(k_stop) {
        Total::AtLeast(n)
    } else {
        Total::Exact(n)
    };
    Ok(QuadrantCount {
        quadrant,
        counts,
        total,
        symbolically_infinite: signed_parts_overlap(prob, quadrant),
    })
}

/// One end of a truncated interval in the asymptote table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Edge {
    /// `T1` or `T2` itself.
    Full,
    /// `inf { t : w(t) <> 0 }` for the given weight and sign.
    Inf { weight: WeightSelector, positive: bool },
    /// `sup { t : w(t) <> 0 }` for the given weight and sign.
    Sup { weight: WeightSelector, positive: bool },
}

/// `lambda_{+-1}(weight, ]lower, upper[)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Level {
    pub weight: WeightSelector,
    pub positive: bool,
    pub lower: Edge,
    pub upper: Edge,
}

/// Asymptotes of a first curve `C_2`: horizontal `R x {level}` and vertical
/// `{level} x R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AsymptoteRule {
    pub case: &'static str,
    pub horizontal: Level,
    pub vertical: Level,
}

const M: WeightSelector = WeightSelector::M;
const N: WeightSelector = WeightSelector::N;

const fn lv(weight: WeightSelector, positive: bool, lower: Edge, upper: Edge) -> Level {
    Level {
        weight,
        positive,
        lower,
        upper,
    }
}
const fn inf(weight: WeightSelector, positive: bool) -> Edge {
    Edge::Inf { weight, positive }
}
const fn sup(weight: WeightSelector, positive: bool) -> Edge {
    Edge::Sup { weight, positive }
}

/// The eight cases, one per quadrant and branch.
pub fn asymptote_rule(quadrant: Quadrant, branch: Branch) -> AsymptoteRule {
    use Branch::{Gt, Lt};
    use Edge::Full;
    use Quadrant::{Mm, Mp, Pm, Pp};
    let (case, horizontal, vertical) = match (quadrant, branch) {
        (Pp, Gt) => ("i", lv(N, true, inf(M, true), Full), lv(M, true, Full, sup(N, true))),
        (Pp, Lt) => ("ii", lv(N, true, Full, sup(M, true)), lv(M, true, inf(N, true), Full)),
        (Mm, Gt) => (
            "iii",
            lv(N, false, inf(M, false), Full),
            lv(M, false, Full, sup(N, false)),
        ),
        (Mm, Lt) => (
            "iv",
            lv(N, false, Full, sup(M, false)),
            lv(M, false, inf(N, false), Full),
        ),
        (Pm, Gt) => ("v", lv(N, false, inf(M, true), Full), lv(M, true, Full, sup(N, false))),
        (Pm, Lt) => ("vi", lv(N, false, Full, sup(M, true)), lv(M, true, inf(N, false), Full)),
        (Mp, Gt) => (
            "vii",
            lv(N, true, inf(M, false), Full),
            lv(M, false, Full, sup(N, true)),
        ),
        (Mp, Lt) => (
            "viii",
            lv(N, true, Full, sup(M, false)),
            lv(M, false, inf(N, true), Full),
        ),
    };
    AsymptoteRule {
        case,
        horizontal,
        vertical,
    }
}

fn edge_value<T: Real>(prob: &Problem<T>, edge: Edge, full: T) -> Option<T> {
    match edge {
        Edge::Full => Some(full),
        Edge::Inf { weight, positive } => prob.weight(weight).support_edges().for_sign(positive).0,
        Edge::Sup { weight, positive } => prob.weight(weight).support_edges().for_sign(positive).1,
    }
}

/// Value of a [`Level`], `None` when the truncated interval is empty or the
/// weight has no part of the required sign on it.
pub fn level_value<T: Real>(prob: &Problem<T>, level: &Level, tol: &Tolerances<T>) -> Result<Option<T>> {
    let (t1, t2) = prob.interval();
    let (Some(lo), Some(hi)) = (edge_value(prob, level.lower, t1), edge_value(prob, level.upper, t2)) else {
        return Ok(None);
    };
    if !(lo < hi) {
        return Ok(None);
    }
    let req = EigenRequest {
        which: level.weight,
        t1: lo,
        t2: hi,
        k: if level.positive { 1 } else { -1 },
    };
    eigenvalue(prob, &req, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Asymptotes<T> {
    pub case: &'static str,
    pub horizontal: Option<T>,
    pub vertical: Option<T>,
}

/// Asymptote levels of `C_2` for the quadrant and branch, whether or not the
/// set is nonempty.
pub fn asymptotes_first_curves<T: Real>(
    prob: &Problem<T>,
    quadrant: Quadrant,
    branch: Branch,
    tol: &Tolerances<T>,
) -> Result<Asymptotes<T>> {
    let rule = asymptote_rule(quadrant, branch);
    Ok(Asymptotes {
        case: rule.case,
        horizontal: level_value(prob, &rule.horizontal, tol)?,
        vertical: level_value(prob, &rule.vertical, tol)?,
    })
}

/// Like [`asymptotes_first_curves`], but only for a nonempty `C_2`, where
/// both levels must exist.
pub fn checked_asymptotes<T: Real>(
    prob: &Problem<T>,
    quadrant: Quadrant,
    branch: Branch,
    opts: &SpectrumOptions<T>,
) -> Result<Option<Asymptotes<T>>> {
    if !nonempty_test(prob, 2, branch, quadrant, opts)?.is_nonempty() {
        return Ok(None);
    }
    let asy = asymptotes_first_curves(prob, quadrant, branch, &opts.tol)?;
    if asy.horizontal.is_none() || asy.vertical.is_none() {
        return Err(Error::Inconsistent(format!(
            "C_2 {} in {} is nonempty but case ({}) has an undefined eigenvalue",
            branch.symbol(),
            quadrant.symbol(),
            asy.case
        )));
    }
    Ok(Some(asy))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Probe<T> {
    pub a: T,
    pub b: T,
    /// `|f_2(a) - horizontal level|`.
    pub residual: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoteCheck<T> {
    pub case: &'static str,
    pub horizontal: T,
    pub probes: Vec<Probe<T>>,
    /// Residuals strictly decrease along the probes.
    pub monotone: bool,
}

/// Samples `f_2` at `|a| = a_probe * 2^i` and compares with its horizontal
/// asymptote. Without `a_probe`, starts at `100 |nu_2|`.
pub fn asymptote_consistency<T: Real>(
    prob: &Problem<T>,
    quadrant: Quadrant,
    branch: Branch,
    a_probe: Option<T>,
    probes: usize,
    opts: &SpectrumOptions<T>,
) -> Result<AsymptoteCheck<T>> {
    let asy = checked_asymptotes(prob, quadrant, branch, opts)?.ok_or_else(|| {
        Error::Precondition(format!(
            "C_2 {} in {} is empty at resolution",
            branch.symbol(),
            quadrant.symbol()
        ))
    })?;
    let level = asy.horizontal.expect("checked");
    let start = match a_probe {
        Some(a) => a.abs(),
        None => {
            let reduced = quadrant_reduce(prob, quadrant)?;
            let nu = domain_edge(&reduced, 2, branch, opts.a_max, opts.a_max, &opts.tol)?
                .ok_or_else(|| Error::Inconsistent("C_2 nonempty but no domain edge".into()))?;
            nu * T::lit(100.0)
        }
    };
    let (sa, _) = quadrant.signs();
    let sa = T::from_i8(sa).unwrap();
    let a_values: Vec<T> = (0..probes.max(1))
        .map(|i| sa * start * T::two().powi(i as i32))
        .collect();
    let b_max = opts.a_max.max(level.abs() * T::lit(1e3));
    let bs = curve_points(prob, 2, branch, quadrant, &a_values, b_max, &opts.tol)?;
    let mut out = Vec::with_capacity(a_values.len());
    for (a, b) in a_values.into_iter().zip(bs) {
        let b = b.ok_or_else(|| Error::NotFound {
            what: format!("f_2 at a = {a}"),
            limit: b_max.as_f64(),
        })?;
        out.push(Probe {
            a,
            b,
            residual: (b - level).abs(),
        });
    }
    let monotone = out.windows(2).all(|w| w[1].residual < w[0].residual);
    Ok(AsymptoteCheck {
        case: asy.case,
        horizontal: level,
        probes: out,
        monotone,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapEntry<T> {
    pub quadrant: Quadrant,
    pub branch: Branch,
    pub case: &'static str,
    /// `|horizontal asymptote| - |trivial horizontal line|`.
    pub horizontal_gap: T,
    /// `|vertical asymptote| - |trivial vertical line|`.
    pub vertical_gap: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapReport<T> {
    pub entries: Vec<GapEntry<T>>,
    /// Smallest gap over all first curves examined.
    pub gap: T,
    pub threshold: T,
    /// Support of every examined signed weight part stays away from both ends.
    pub compact_support: bool,
    /// `gap > threshold` agrees with `compact_support`.
    pub consistent: bool,
}

/// Gap between the first curves and the trivial lines, checked against the
/// support of the weights. Examines `++` (and `--`) when the positive
/// (negative) parts of both weights are nontrivial.
pub fn compact_support_gap<T: Real>(prob: &Problem<T>, opts: &SpectrumOptions<T>) -> Result<GapReport<T>> {
    let tol = &opts.tol;
    let (t1, t2) = prob.interval();
    let mut entries = Vec::new();
    let mut compact = true;
    let mut scale = T::zero();
    for (quadrant, positive) in [(Quadrant::Pp, true), (Quadrant::Mm, false)] {
        let k = if positive { 1 } else { -1 };
        let lm = eigenvalue(prob, &EigenRequest::full(prob, WeightSelector::M, k), tol)?;
        let ln = eigenvalue(prob, &EigenRequest::full(prob, WeightSelector::N, k), tol)?;
        let (Some(lm), Some(ln)) = (lm, ln) else { continue };
        scale = scale.max(lm.abs());
        for w in [prob.m(), prob.n()] {
            let (lo, hi) = w.support_edges().for_sign(positive);
            let inside = lo.is_some_and(|x| x > t1) && hi.is_some_and(|x| x < t2);
            compact = compact && inside;
        }
        for branch in Branch::BOTH {
            let Some(asy) = checked_asymptotes(prob, quadrant, branch, opts)? else {
                continue;
            };
            entries.push(GapEntry {
                quadrant,
                branch,
                case: asy.case,
                horizontal_gap: asy.horizontal.unwrap().abs() - ln.abs(),
                vertical_gap: asy.vertical.unwrap().abs() - lm.abs(),
            });
        }
    }
    if entries.is_empty() {
        return Err(Error::Precondition(
            "no quadrant with a nonempty first curve on the diagonal".into(),
        ));
    }
    let gap = entries
        .iter()
        .map(|e| e.horizontal_gap.min(e.vertical_gap))
        .fold(T::infinity(), T::min);
    let threshold = T::lit(1e-4) * scale;
    Ok(GapReport {
        consistent: (gap > threshold) == compact,
        entries,
        gap,
        threshold,
        compact_support: compact,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignChanges {
    pub m: SignChangeCount,
    pub n: Option<SignChangeCount>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadrantAsymptotes<T> {
    pub quadrant: Quadrant,
    pub branch: Branch,
    pub asymptotes: Asymptotes<T>,
}

/// Everything `report` prints.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport<T> {
    pub trivial: TrivialLines<T>,
    pub per_quadrant: BTreeMap<Quadrant, QuadrantCount>,
    /// Only for nonempty `C_2`.
    pub asymptotes: Vec<QuadrantAsymptotes<T>>,
    pub sign_changes: SignChanges,
}

pub fn build_report<T: Real>(
    prob: &Problem<T>,
    quadrants: &[Quadrant],
    k_stop: usize,
    opts: &SpectrumOptions<T>,
) -> Result<SpectrumReport<T>> {
    let trivial = trivial_lines(prob, &opts.tol)?;
    let mut per_quadrant = BTreeMap::new();
    let mut asymptotes = Vec::new();
    for &q in quadrants {
        let count = count_quadrant(prob, q, k_stop, opts)?;
        for branch in Branch::BOTH {
            let nonempty = count
                .counts
                .iter()
                .any(|c| c.k == 2 && c.branch == branch && c.status.is_nonempty());
            if nonempty {
                if let Some(a) = checked_asymptotes(prob, q, branch, opts)? {
                    asymptotes.push(QuadrantAsymptotes {
                        quadrant: q,
                        branch,
                        asymptotes: a,
                    });
                }
            }
        }
        per_quadrant.insert(q, count);
    }
    Ok(SpectrumReport {
        trivial,
        per_quadrant,
        asymptotes,
        sign_changes: SignChanges {
            m: prob.m().sign_profile().sign_change_count,
            n: (!prob.is_single_weight()).then(|| prob.n().sign_profile().sign_change_count),
        },
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::weights::presets::Preset;

    #[test]
    fn rule_table_transcribes_every_case() {
        let t = Edge::Full;
        let cases = [
            (
                Quadrant::Pp,
                Branch::Gt,
                "i",
                (N, true, inf(M, true), t),
                (M, true, t, sup(N, true)),
            ),
            (
                Quadrant::Pp,
                Branch::Lt,
                "ii",
                (N, true, t, sup(M, true)),
                (M, true, inf(N, true), t),
            ),
            (
                Quadrant::Mm,
                Branch::Gt,
                "iii",
                (N, false, inf(M, false), t),
                (M, false, t, sup(N, false)),
            ),
            (
                Quadrant::Mm,
                Branch::Lt,
                "iv",
                (N, false, t, sup(M, false)),
                (M, false, inf(N, false), t),
            ),
            (
                Quadrant::Pm,
                Branch::Gt,
                "v",
                (N, false, inf(M, true), t),
                (M, true, t, sup(N, false)),
            ),
            (
                Quadrant::Pm,
                Branch::Lt,
                "vi",
                (N, false, t, sup(M, true)),
                (M, true, inf(N, false), t),
            ),
            (
                Quadrant::Mp,
                Branch::Gt,
                "vii",
                (N, true, inf(M, false), t),
                (M, false, t, sup(N, true)),
            ),
            (
                Quadrant::Mp,
                Branch::Lt,
                "viii",
                (N, true, t, sup(M, false)),
                (M, false, inf(N, true), t),
            ),
        ];
        for (q, b, case, h, v) in cases {
            let r = asymptote_rule(q, b);
            assert_eq!(r.case, case);
            assert_eq!(r.horizontal, lv(h.0, h.1, h.2, h.3), "case {case}");
            assert_eq!(r.vertical, lv(v.0, v.1, v.2, v.3), "case {case}");
        }
    }

    #[test]
    fn classical_asymptotes_are_one() {
        let p: Problem<f64> = Preset::Classical.problem().unwrap();
        let a = asymptotes_first_curves(&p, Quadrant::Pp, Branch::Gt, &Tolerances::default()).unwrap();
        assert!((a.horizontal.unwrap() - 1.0).abs() < 1e-8);
        assert!((a.vertical.unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn overlap_detection() {
        let p: Problem<f64> = Preset::Classical.problem().unwrap();
        assert!(signed_parts_overlap(&p, Quadrant::Pp));
        assert!(!signed_parts_overlap(&p, Quadrant::Pm));
        let e: Problem<f64> = Preset::Example313.problem().unwrap();
        assert!(Quadrant::ALL.iter().all(|&q| !signed_parts_overlap(&e, q)));
    }

    #[test]
    fn sine_pm_count_is_one() {
        let p: Problem<f64> = Preset::Sine { t2: 2.0 * PI }.problem().unwrap();
        let c = count_quadrant(&p, Quadrant::Pm, 4, &SpectrumOptions::default()).unwrap();
        assert_eq!(c.total, Total::Exact(1));
        assert!(c.parity_ok());
    }

    #[test]
    fn totals_display() {
        assert_eq!(Total::Exact(3).to_string(), "3");
        assert_eq!(Total::AtLeast(10).to_string(), ">= 10");
        assert_eq!(Total::AtLeast(10).value(), 10);
    }
}
