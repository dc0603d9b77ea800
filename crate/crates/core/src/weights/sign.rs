use serde::Serialize;

use super::Weight;
use crate::scalar::Real;

/// Number of sign changes of a weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignChangeCount {
    Finite(usize),
    /// A multiple (accumulating) change point exists. Piecewise polynomials of
    /// bounded degree never produce this.
    Infinite,
    /// Reserved for weights whose sign structure cannot be certified.
    Unsupported,
}

/// Maximal sign intervals and simple change points of a weight.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignProfile<T> {
    /// Maximal open intervals where the weight is `> 0`, in increasing order.
    pub positive_intervals: Vec<(T, T)>,
    /// Maximal open intervals where the weight is `< 0`, in increasing order.
    pub negative_intervals: Vec<(T, T)>,
    pub sign_change_count: SignChangeCount,
    /// One entry per simple change of sign. When the weight leaves a zero
    /// plateau with the opposite sign, the right edge of the plateau is used.
    pub simple_change_points: Vec<T>,
}

/// `inf`/`sup` of the positivity and negativity sets inside `]T1, T2[`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SupportEdges<T> {
    pub t1_pos: Option<T>,
    pub t2_pos: Option<T>,
    pub t1_neg: Option<T>,
    pub t2_neg: Option<T>,
}

impl<T: Copy> SupportEdges<T> {
    /// Edges of the part with the given sign (`true` = positive part).
    pub fn for_sign(&self, positive: bool) -> (Option<T>, Option<T>) {
        if positive {
            (self.t1_pos, self.t2_pos)
        } else {
            (self.t1_neg, self.t2_neg)
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Segment<T> {
    lo: T,
    hi: T,
    sign: i8,
    lo_root: bool,
    hi_root: bool,
}

impl<T: Real> SignProfile<T> {
    pub(super) fn compute(w: &Weight<T>) -> Self {
        let segments = merge(segments(w));

        let collect = |sign: i8| -> Vec<(T, T)> {
            segments
                .iter()
                .filter(|s| s.sign == sign)
                .map(|s| (s.lo, s.hi))
                .collect()
        };

        let mut change_points = Vec::new();
        let mut last_sign = 0i8;
        for seg in &segments {
            if seg.sign == 0 {
                continue;
            }
            if last_sign != 0 && seg.sign != last_sign {
                change_points.push(seg.lo);
            }
            last_sign = seg.sign;
        }

        Self {
            positive_intervals: collect(1),
            negative_intervals: collect(-1),
            sign_change_count: SignChangeCount::Finite(change_points.len()),
            simple_change_points: change_points,
        }
    }

    pub fn support_edges(&self) -> SupportEdges<T> {
        let first = |v: &[(T, T)]| v.first().map(|&(lo, _)| lo);
        let last = |v: &[(T, T)]| v.last().map(|&(_, hi)| hi);
        SupportEdges {
            t1_pos: first(&self.positive_intervals),
            t2_pos: last(&self.positive_intervals),
            t1_neg: first(&self.negative_intervals),
            t2_neg: last(&self.negative_intervals),
        }
    }

    /// Finite number of sign changes, if that is what was computed.
    pub fn finite_count(&self) -> Option<usize> {
        match self.sign_change_count {
            SignChangeCount::Finite(n) => Some(n),
            _ => None,
        }
    }
}

/// Per-piece sign segments, in increasing time.
fn segments<T: Real>(w: &Weight<T>) -> Vec<Segment<T>> {
    let mut out = Vec::new();
    for (piece, bounds) in w.pieces().iter().zip(w.breakpoints().windows(2)) {
        let (origin, end) = (bounds[0], bounds[1]);
        let len = end - origin;
        if piece.is_zero() {
            out.push(Segment {
                lo: origin,
                hi: end,
                sign: 0,
                lo_root: true,
                hi_root: true,
            });
            continue;
        }
        let tol = T::lit(1e-12).min(len * T::lit(1e-6)).max(T::epsilon() * len);
        let roots = piece.roots_in(T::zero(), len, tol);
        let mut knots = Vec::with_capacity(roots.len() + 2);
        knots.push((T::zero(), false));
        for r in roots {
            if r <= T::zero() {
                knots[0].1 = true;
            } else if r >= len {
                // handled below
            } else {
                knots.push((r, true));
            }
        }
        let end_root = piece.eval(len).abs() <= piece.zero_tolerance(T::zero(), len);
        knots.push((len, end_root));
        for pair in knots.windows(2) {
            let ((x0, r0), (x1, r1)) = (pair[0], pair[1]);
            if x1 <= x0 {
                continue;
            }
            let mid = piece.eval((x0 + x1) * T::half());
            let sign = if mid > T::zero() {
                1
            } else if mid < T::zero() {
                -1
            } else {
                0
            };
            out.push(Segment {
                lo: origin + x0,
                hi: if x1 == len { end } else { origin + x1 },
                sign,
                lo_root: r0,
                hi_root: r1,
            });
        }
    }
    out
}

/// Joins neighbours with the same sign unless the shared endpoint is a zero
/// of the weight (a touching zero splits a positive interval in two).
fn merge<T: Real>(segs: Vec<Segment<T>>) -> Vec<Segment<T>> {
    let mut out: Vec<Segment<T>> = Vec::with_capacity(segs.len());
    for seg in segs {
        if let Some(last) = out.last_mut() {
            let boundary_is_root = last.hi_root || seg.lo_root;
            if last.sign == seg.sign && (seg.sign == 0 || !boundary_is_root) {
                last.hi = seg.hi;
                last.hi_root = seg.hi_root;
                continue;
            }
        }
        out.push(seg);
    }
    out
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::weights::Poly;

    fn sine(t2: f64) -> Weight<f64> {
        let snap = |t: f64| {
            let s = t.sin();
            if s.abs() < 1e-14 {
                0.0
            } else {
                s
            }
        };
        let splits: Vec<f64> = (0..)
            .map(|k| k as f64 * PI)
            .take_while(|&x| x < t2)
            .chain([t2])
            .collect();
        let parts = splits
            .windows(2)
            .map(|w| Weight::approximate(w[0], w[1], 0.04, snap, f64::cos).unwrap())
            .collect();
        Weight::concat(parts).unwrap()
    }

    #[test]
    fn sine_on_two_pi_has_one_change() {
        let p = sine(2.0 * PI).sign_profile().clone();
        assert_eq!(p.sign_change_count, SignChangeCount::Finite(1));
        assert!((p.simple_change_points[0] - PI).abs() < 1e-12);
    }

    #[test]
    fn sine_on_three_pi_has_two_changes() {
        let p = sine(3.0 * PI).sign_profile().clone();
        assert_eq!(p.sign_change_count, SignChangeCount::Finite(2));
        assert!((p.simple_change_points[0] - PI).abs() < 1e-12);
        assert!((p.simple_change_points[1] - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn touching_zero_is_not_a_change() {
        let w = Weight::new(vec![0.0, 2.0], vec![Poly::new(vec![1.0, -2.0, 1.0])]).unwrap();
        let p = w.sign_profile();
        assert_eq!(p.sign_change_count, SignChangeCount::Finite(0));
        assert!(p.simple_change_points.is_empty());
        assert_eq!(p.positive_intervals, vec![(0.0, 1.0), (1.0, 2.0)]);
    }

    #[test]
    fn zero_plateau_reports_right_edge() {
        // +bump on [0,1], 0 on [1,2], -bump on [2,3]
        let w = Weight::new(
            vec![0.0, 1.0, 2.0, 3.0],
            vec![
                Poly::new(vec![0.0, 1.0, -1.0]),
                Poly::zero(),
                Poly::new(vec![0.0, -1.0, 1.0]),
            ],
        )
        .unwrap();
        let p = w.sign_profile();
        assert_eq!(p.simple_change_points, vec![2.0]);
        assert_eq!(p.positive_intervals, vec![(0.0, 1.0)]);
        assert_eq!(p.negative_intervals, vec![(2.0, 3.0)]);
    }

    #[test]
    fn positive_interval_spans_breakpoints() {
        let w = Weight::new(
            vec![0.0, 1.0, 2.0],
            vec![Poly::new(vec![1.0, 1.0]), Poly::new(vec![2.0, -1.0])],
        )
        .unwrap();
        assert_eq!(w.sign_profile().positive_intervals, vec![(0.0, 2.0)]);
    }

    #[test]
    fn support_edges_of_sine() {
        let e = sine(2.0 * PI).support_edges();
        assert_eq!(e.t1_pos, Some(0.0));
        assert!((e.t2_pos.unwrap() - PI).abs() < 1e-12);
        assert!((e.t1_neg.unwrap() - PI).abs() < 1e-12);
        assert_eq!(e.t2_neg, Some(2.0 * PI));
    }

    #[test]
    fn support_edges_of_positive_constant() {
        let e = Weight::constant(0.0, PI, 1.0).unwrap().support_edges();
        assert_eq!(e.t1_pos, Some(0.0));
        assert_eq!(e.t2_pos, Some(PI));
        assert_eq!((e.t1_neg, e.t2_neg), (None, None));
    }

    #[test]
    fn change_count_grows_with_periods() {
        for k in 1..=6usize {
            let w = sine((k as f64 + 1.0) * PI);
            assert_eq!(w.sign_profile().finite_count(), Some(k), "k = {k}");
        }
    }
}
