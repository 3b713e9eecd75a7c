#![allow(dead_code)]

use num_complex::Complex;
use rustfft::FftPlanner;

pub type C64 = Complex<f64>;

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Fraction of impulse-response energy at negative times for a transfer
/// function `h` analytic in the upper half-plane with h(z) ~ c/z + d/z².
///
/// The response is sampled on the line Im z = σ, which weights h(t) by
/// e^{−σt} and keeps long ringing from wrapping around. The tail
/// c/(z − z₀) + e/(z − z₀)² (z₀ = −is₀, causal in closed form) is taken out
/// before the FFT and added back analytically.
pub fn causal_leakage(h: impl Fn(C64) -> C64, (c, d): (C64, C64), n: usize, dw: f64, sigma: f64, s0: f64) -> f64 {
    let z0 = C64::new(0.0, -s0);
    let e = d - c * z0;
    let half = (n / 2) as f64;
    let mut buf: Vec<C64> = (0..n)
        .map(|k| {
            let z = C64::new((k as f64 - half) * dw, sigma);
            let v = h(z) - c / (z - z0) - e / ((z - z0) * (z - z0));
            if k % 2 == 0 { v } else { -v }
        })
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let dt = 2.0 * std::f64::consts::PI / (n as f64 * dw);
    let scale = dw / (2.0 * std::f64::consts::PI);
    let (mut neg, mut tot) = (0.0, 0.0);
    for (m, v) in buf.iter().enumerate() {
        let r = if m % 2 == 0 { *v * scale } else { -*v * scale };
        let t = (m as f64 - half) * dt;
        let a = if t > 0.0 {
            (C64::new(0.0, -1.0) * c - e * t) * (-(s0 + sigma) * t).exp()
        } else if t == 0.0 {
            C64::new(0.0, -0.5) * c
        } else {
            C64::new(0.0, 0.0)
        };
        if t < 0.0 {
            neg += r.norm_sqr();
        }
        tot += (r + a).norm_sqr();
    }
    neg / tot
}

/// (c, d) in P/(k·Q) ~ c/z + d/z² for deg Q = deg P + 1, coefficients
/// highest first: p = [p_top, p_next], q = [q_top, q_next].
pub fn tail_coeffs(p: [C64; 2], q: [C64; 2], k: f64) -> (C64, C64) {
    let c = p[0] / (q[0] * k);
    let d = (p[1] - p[0] * q[1] / q[0]) / (q[0] * k);
    (c, d)
}
