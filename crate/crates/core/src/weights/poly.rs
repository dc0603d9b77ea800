//! Low-degree real polynomials in a local variable, with exact-sign root
//! isolation on closed intervals.

use crate::scalar::Real;

/// Polynomial with ascending coefficients `c[0] + c[1] x + ... + c[d] x^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Real> Poly<T> {
    pub const MAX_DEGREE: usize = 5;

    /// Builds a polynomial, dropping exactly-zero trailing coefficients.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        Self { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn zero() -> Self {
        Self::constant(T::zero())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// True when every coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    #[inline]
    pub fn eval(&self, x: T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * T::from_usize(i).unwrap())
            .collect();
        Self::new(coeffs)
    }

    pub fn scaled(&self, factor: T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        }
    }

    /// Magnitude below which a value of this polynomial on `[lo, hi]` is
    /// indistinguishable from zero in floating point.
    pub(crate) fn zero_tolerance(&self, lo: T, hi: T) -> T {
        let r = lo.abs().max(hi.abs()).max(T::one());
        let mut scale = T::zero();
        let mut power = T::one();
        for &c in &self.coeffs {
            scale = scale + c.abs() * power;
            power = power * r;
        }
        scale * T::epsilon() * T::lit(64.0)
    }

    /// Real roots in `[lo, hi]`, sorted, including roots of even multiplicity.
    ///
    /// The interval is split at the critical points (found recursively from
    /// the derivative), so the polynomial is monotone on every subinterval
    /// and each sign change brackets exactly one root. Roots are refined by
    /// bisection to `tol`. The zero polynomial yields no roots; callers treat
    /// it as a zero plateau.
    pub fn roots_in(&self, lo: T, hi: T, tol: T) -> Vec<T> {
        if self.is_zero() || self.degree() == 0 || lo > hi {
            return Vec::new();
        }
        let zt = self.zero_tolerance(lo, hi);
        let mut knots = vec![lo];
        if self.degree() >= 2 {
            knots.extend(
                self.derivative()
                    .roots_in(lo, hi, tol)
                    .into_iter()
                    .filter(|&c| c > lo && c < hi),
            );
        }
        knots.push(hi);

        let mut roots: Vec<T> = Vec::new();
        let mut push = |r: T| {
            if roots.last().is_none_or(|&last| r - last > tol) {
                roots.push(r);
            }
        };
        for (i, &x) in knots.iter().enumerate() {
            let fx = self.eval(x);
            if fx.abs() <= zt {
                push(x);
            }
            if let Some(&y) = knots.get(i + 1) {
                let fy = self.eval(y);
                if fx.abs() > zt && fy.abs() > zt && fx.signum() != fy.signum() {
                    push(self.bisect(x, y, fx, tol));
                }
            }
        }
        roots
    }

    fn bisect(&self, mut lo: T, mut hi: T, f_lo: T, tol: T) -> T {
        let lo_sign = f_lo.signum();
        for _ in 0..200 {
            let mid = (lo + hi) * T::half();
            if hi - lo <= tol || mid <= lo || mid >= hi {
                break;
            }
            let fm = self.eval(mid);
            if fm.is_zero() {
                return mid;
            }
            if fm.signum() == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo + hi) * T::half()
    }

    /// Exact minimum and maximum on `[lo, hi]` (endpoints plus critical points).
    pub fn range_on(&self, lo: T, hi: T) -> (T, T) {
        let tol = (hi - lo).abs() * T::epsilon() * T::lit(16.0);
        let mut min = self.eval(lo).min(self.eval(hi));
        let mut max = self.eval(lo).max(self.eval(hi));
        for c in self.derivative().roots_in(lo, hi, tol) {
            let v = self.eval(c);
            min = min.min(v);
            max = max.max(v);
        }
        (min, max)
    }
}
