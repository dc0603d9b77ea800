//! Helpers shared by the integration tests: random indefinite weights and a
//! fixed-step RK4 shooter that shares no code with the library integrator.

#![allow(dead_code)]

use fucik::shooting::Branch;
use fucik::{Problem, Weight};
use rand::Rng;

/// Piecewise-cubic Hermite weight on `[t1, t2]` through random values and
/// slopes, redrawn until it takes both signs.
pub fn random_indefinite_weight<R: Rng>(rng: &mut R, t1: f64, t2: f64, pieces: usize) -> Weight {
    loop {
        let nodes: Vec<f64> = (0..=pieces)
            .map(|i| t1 + (t2 - t1) * i as f64 / pieces as f64)
            .collect();
        let values: Vec<f64> = nodes.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
        let slopes: Vec<f64> = nodes.iter().map(|_| rng.gen_range(-2.0..2.0)).collect();
        let w = Weight::hermite(&nodes, &values, &slopes).unwrap();
        let profile = w.sign_profile();
        if !profile.positive_intervals.is_empty() && !profile.negative_intervals.is_empty() {
            return w;
        }
    }
}

/// `Phi_k(a, b)(T1)` by classical RK4 with a fixed step, zeros located by
/// linear interpolation between grid points. Coefficients are continued as
/// constants past `T2` so that a zero sitting on `T2` is still seen; `None`
/// when fewer than `k` zeros occur before `T2 + (T2 - T1) / 20`.
pub fn fixed_step_phi(prob: &Problem, k: usize, branch: Branch, a: f64, b: f64, h: f64) -> Option<f64> {
    let (t1, t2) = prob.interval();
    let end = t2 + (t2 - t1) / 20.0;
    let mut t = t1;
    for leg in 0..k {
        let on_m = (leg % 2 == 0) == (branch == Branch::Gt);
        let (w, c) = if on_m { (prob.m(), a) } else { (prob.n(), b) };
        let f = |t: f64, y: [f64; 2]| {
            let t = t.clamp(t1, t2);
            [y[1] / prob.p().value(t), (prob.q().value(t) - c * w.value(t)) * y[0]]
        };
        let mut y = [0.0, 1.0];
        let mut first = true;
        let zero = loop {
            if t >= end {
                return None;
            }
            let step = h;
            let k1 = f(t, y);
            let k2 = f(t + step / 2.0, [y[0] + step / 2.0 * k1[0], y[1] + step / 2.0 * k1[1]]);
            let k3 = f(t + step / 2.0, [y[0] + step / 2.0 * k2[0], y[1] + step / 2.0 * k2[1]]);
            let k4 = f(t + step, [y[0] + step * k3[0], y[1] + step * k3[1]]);
            let next = [
                y[0] + step / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                y[1] + step / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            ];
            if !first && next[0] <= 0.0 {
                break t + step * y[0] / (y[0] - next[0]);
            }
            first = false;
            let scale = next[0].abs().max(next[1].abs());
            y = if scale > 1e100 {
                [next[0] / scale, next[1] / scale]
            } else {
                next
            };
            t += step;
        };
        t = zero;
    }
    Some(t)
}
