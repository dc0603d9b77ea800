//! Dormand–Prince 5(4) stepping for the planar linear system of a shot,
//! with dense output and detection of the first sign change of `u`.

use crate::error::{Error, Result};
use crate::scalar::Real;

const C: [f64; 6] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0];
const A: [&[f64]; 6] = [
    &[],
    &[1.0 / 5.0],
    &[3.0 / 40.0, 9.0 / 40.0],
    &[44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0],
    &[19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0],
    &[
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
    ],
];
const B: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
/// Difference between the 5th and 4th order weights (last entry: FSAL stage).
const E: [f64; 7] = [
    -71.0 / 57600.0,
    0.0,
    71.0 / 16695.0,
    -71.0 / 1920.0,
    17253.0 / 339200.0,
    -22.0 / 525.0,
    1.0 / 40.0,
];
/// Dense output: `y(t + th h) = y + h sum_i K_i sum_j P[i][j] th^(j+1)`.
const P: [[f64; 4]; 7] = [
    [
        1.0,
        -8048581381.0 / 2820520608.0,
        8663915743.0 / 2820520608.0,
        -12715105075.0 / 11282082432.0,
    ],
    [0.0, 0.0, 0.0, 0.0],
    [
        0.0,
        131558114200.0 / 32700410799.0,
        -68118460800.0 / 10900136933.0,
        87487479700.0 / 32700410799.0,
    ],
    [
        0.0,
        -1754552775.0 / 470086768.0,
        14199869525.0 / 1410260304.0,
        -10690763975.0 / 1880347072.0,
    ],
    [
        0.0,
        127303824393.0 / 49829197408.0,
        -318862633887.0 / 49829197408.0,
        701980252875.0 / 199316789632.0,
    ],
    [
        0.0,
        -282668133.0 / 205662961.0,
        2019193451.0 / 616988883.0,
        -1453857185.0 / 822651844.0,
    ],
    [
        0.0,
        40617522.0 / 29380423.0,
        -110615467.0 / 29380423.0,
        69997945.0 / 29380423.0,
    ],
];

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 10.0;

/// Step-size and accuracy settings for one integration.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Settings<T> {
    pub rtol: T,
    pub atol: T,
    pub event_tol: T,
    /// Upper bound on `|h|`.
    pub h_max: T,
}

/// How an integration towards `t_end` finished.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Outcome<T> {
    /// `t_end` reached without a sign change; state at `t_end`.
    Reached { y: [T; 2] },
    /// `u` vanished at `t` (refined on the dense output).
    Crossed { t: T },
}

struct Step<T> {
    k: [[T; 2]; 7],
    y_new: [T; 2],
    err: [T; 2],
}

fn stage<T: Real, F>(f: &F, t: T, y: [T; 2], h: T, k0: [T; 2]) -> Step<T>
where
    F: Fn(T, [T; 2]) -> [T; 2],
{
    let mut k = [[T::zero(); 2]; 7];
    k[0] = k0;
    for s in 1..6 {
        let mut ys = y;
        for (j, &a) in A[s].iter().enumerate() {
            let a = T::lit(a) * h;
            ys[0] = ys[0] + a * k[j][0];
            ys[1] = ys[1] + a * k[j][1];
        }
        k[s] = f(t + T::lit(C[s]) * h, ys);
    }
    let mut y_new = y;
    for (s, &b) in B.iter().enumerate() {
        let b = T::lit(b) * h;
        y_new[0] = y_new[0] + b * k[s][0];
        y_new[1] = y_new[1] + b * k[s][1];
    }
    k[6] = f(t + h, y_new);
    let mut err = [T::zero(); 2];
    for (i, slot) in err.iter_mut().enumerate() {
        *slot = (E
            .iter()
            .zip(&k)
            .fold(T::zero(), |acc, (&e, ks)| acc + T::lit(e) * ks[i])
            * h)
            .abs();
    }
    Step { k, y_new, err }
}

fn dense<T: Real>(y: [T; 2], k: &[[T; 2]; 7], h: T, theta: T) -> [T; 2] {
    let mut out = y;
    for (ki, row) in k.iter().zip(&P) {
        let mut coef = T::zero();
        let mut pow = theta;
        for &p in row {
            coef = coef + T::lit(p) * pow;
            pow = pow * theta;
        }
        out[0] = out[0] + h * coef * ki[0];
        out[1] = out[1] + h * coef * ki[1];
    }
    out
}

/// Integrates `y' = f(t, y)` from `t0` to `t_end` (either direction) and stops
/// at the first time `u = y[0]` becomes nonpositive.
///
/// `armed` is false right after a zero of `u`: the state then starts at
/// `u = 0` and steps that fail to make `u` positive are shrunk instead of
/// being reported as crossings. `h` carries the step-size suggestion in and
/// out (unsigned). `on_step` sees every accepted state.
#[allow(clippy::too_many_arguments)]
pub(crate) fn integrate<T, F, S>(
    f: F,
    t0: T,
    y0: [T; 2],
    t_end: T,
    h: &mut T,
    armed: bool,
    cfg: &Settings<T>,
    mut on_step: S,
) -> Result<Outcome<T>>
where
    T: Real,
    F: Fn(T, [T; 2]) -> [T; 2],
    S: FnMut(T, [T; 2]),
{
    let dir = if t_end >= t0 { T::one() } else { -T::one() };
    let mut t = t0;
    let mut y = y0;
    let mut armed = armed;
    let mut k0 = f(t, y);
    let threshold = T::rescale_threshold();
    let rtol = cfg.rtol;
    let atol = cfg.atol;

    while (t_end - t) * dir > T::zero() {
        let remaining = (t_end - t).abs();
        let habs = h.min(cfg.h_max).min(remaining);
        let last = habs >= remaining;
        let min_h = T::epsilon() * T::lit(16.0) * t.abs().max(T::one());
        if habs < min_h && !last {
            return Err(Error::StepUnderflow {
                t: t.as_f64(),
                u: y[0].as_f64(),
                v: y[1].as_f64(),
                h: habs.as_f64(),
            });
        }
        let hs = habs * dir;
        let step = stage(&f, t, y, hs, k0);
        // the system is linear, so the absolute floor follows the size of the state
        let size = y[0]
            .abs()
            .max(y[1].abs())
            .max(step.y_new[0].abs())
            .max(step.y_new[1].abs());
        let scale = |i: usize| atol * size + rtol * y[i].abs().max(step.y_new[i].abs());
        let err_norm = (step.err[0] / scale(0)).max(step.err[1] / scale(1));

        if err_norm > T::one() {
            let factor = (T::lit(SAFETY) * err_norm.powf(T::lit(-0.2))).max(T::lit(MIN_FACTOR));
            *h = habs * factor;
            continue;
        }
        let t_new = if last { t_end } else { t + hs };

        if !armed {
            if step.y_new[0] <= T::zero() {
                // The zero at the start and the next one fell into one step.
                *h = habs * T::lit(0.25);
                continue;
            }
            armed = true;
        } else if step.y_new[0] <= T::zero() {
            let t_star = refine(t, y, &step.k, hs, cfg.event_tol);
            let theta = ((t_star - t) / hs).max(T::zero()).min(T::one());
            let y_star = dense(y, &step.k, hs, theta);
            on_step(t_star, y_star);
            return Ok(Outcome::Crossed { t: t_star });
        }

        let factor = if err_norm.is_zero() {
            T::lit(MAX_FACTOR)
        } else {
            (T::lit(SAFETY) * err_norm.powf(T::lit(-0.2)))
                .min(T::lit(MAX_FACTOR))
                .max(T::lit(MIN_FACTOR))
        };
        if !last {
            *h = habs * factor;
        }
        t = t_new;
        y = step.y_new;
        k0 = step.k[6];
        let big = y[0].abs().max(y[1].abs());
        if big > threshold {
            let inv = big.recip();
            y = [y[0] * inv, y[1] * inv];
            k0 = [k0[0] * inv, k0[1] * inv];
        }
        on_step(t, y);
    }
    Ok(Outcome::Reached { y })
}

/// Illinois iteration for the zero of `u` on the dense output of one step.
fn refine<T: Real>(t: T, y: [T; 2], k: &[[T; 2]; 7], h: T, event_tol: T) -> T {
    let (mut lo, mut hi) = (T::zero(), T::one());
    let mut f_lo = y[0];
    let mut f_hi = dense(y, k, h, hi)[0];
    if f_hi.is_zero() {
        return t + h;
    }
    let theta_tol = (event_tol / h.abs()) * T::lit(1e-3);
    let mut side = 0i8;
    for _ in 0..200 {
        if hi - lo <= theta_tol.max(T::epsilon() * T::lit(4.0)) {
            break;
        }
        let mut x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if !(x > lo && x < hi) {
            x = (lo + hi) * T::half();
        }
        let fx = dense(y, k, h, x)[0];
        if fx.is_zero() {
            return t + x * h;
        }
        if fx > T::zero() {
            lo = x;
            f_lo = fx;
            if side == 1 {
                f_hi = f_hi * T::half();
            }
            side = 1;
        } else {
            hi = x;
            f_hi = fx;
            if side == -1 {
                f_lo = f_lo * T::half();
            }
            side = -1;
        }
    }
    let theta = if f_lo.abs() < f_hi.abs() { lo } else { hi };
    t + theta * h
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    fn cfg() -> Settings<f64> {
        Settings {
            rtol: 1e-10,
            atol: 1e-13,
            event_tol: 1e-12,
            h_max: 0.5,
        }
    }

    #[test]
    fn harmonic_oscillator_zero_at_pi_over_omega() {
        let w2 = 9.0;
        let f = move |_t: f64, y: [f64; 2]| [y[1], -w2 * y[0]];
        let mut h = 1e-3;
        let out = integrate(f, 0.0, [0.0, 1.0], 10.0, &mut h, false, &cfg(), |_, _| {}).unwrap();
        match out {
            Outcome::Crossed { t, .. } => assert!((t - PI / 3.0).abs() < 1e-9, "{t}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn backward_integration_finds_zero_on_the_left() {
        let f = |_t: f64, y: [f64; 2]| [y[1], -y[0]];
        let mut h = 1e-3;
        let out = integrate(f, PI, [0.0, -1.0], 0.0 - 1.0, &mut h, false, &cfg(), |_, _| {}).unwrap();
        match out {
            Outcome::Crossed { t, .. } => assert!(t.abs() < 1e-9, "{t}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn growing_solution_reaches_end() {
        let f = |_t: f64, y: [f64; 2]| [y[1], y[0]];
        let mut h = 1e-3;
        let out = integrate(f, 0.0, [0.0, 1.0], 2.0, &mut h, false, &cfg(), |_, _| {}).unwrap();
        match out {
            Outcome::Reached { y } => assert!((y[0] - 2.0_f64.sinh()).abs() < 1e-8),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dense_output_matches_endpoints() {
        let f = |_t: f64, y: [f64; 2]| [y[1], -y[0]];
        let y = [0.3, 0.7];
        let k0 = f(0.0, y);
        let step = stage(&f, 0.0, y, 0.1, k0);
        let end = dense(y, &step.k, 0.1, 1.0);
        assert!((end[0] - step.y_new[0]).abs() < 1e-15);
        let start = dense(y, &step.k, 0.1, 0.0);
        assert_eq!(start, y);
    }
}
