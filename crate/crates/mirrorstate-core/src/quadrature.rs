//! Adaptive Gauss-Kronrod (7/15) quadrature for even integrands on ℝ.
//!
//! Near-real poles get a tangent substitution ω = x₀ + w·tanθ, which turns a
//! Lorentzian of half-width w into a flat integrand in θ. The range beyond the
//! cutoff is added analytically from a c₂/ω² + c₄/ω⁴ fit.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::dd::Dd;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.000_000_000_000_000_0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
enum Map {
    /// ω = t
    Linear,
    /// ω = x₀ + w·tan t
    Tan { x0: Dd, w: Dd },
}

impl Map {
    #[inline]
    fn apply(&self, t: f64) -> (Dd, f64) {
        match *self {
            Map::Linear => (Dd::new(t), 1.0),
            Map::Tan { x0, w } => {
                let tn = libm::tan(t);
                let c = libm::cos(t);
                (x0 + w * tn, w.to_f64() / (c * c))
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Piece {
    a: f64,
    b: f64,
    map: Map,
    val: f64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.partial_cmp(&o.err).unwrap_or(Ordering::Equal)
    }
}

fn gk15<F: Fn(Dd) -> f64>(f: &F, a: f64, b: f64, map: Map) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let eval = |t: f64| {
        let (w, jac) = map.apply(t);
        f(w) * jac
    };
    let fc = eval(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = eval(c - x) + eval(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

#[derive(Clone, Copy, Debug)]
pub struct QuadSettings {
    pub cutoff: f64,
    pub rel_tol: f64,
    pub max_pieces: usize,
}

impl Default for QuadSettings {
    fn default() -> Self {
        QuadSettings {
            cutoff: 2.0 * core::f64::consts::PI * 1.0e6,
            rel_tol: 1e-10,
            max_pieces: 40_000,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub tail: f64,
    pub pieces: usize,
}

/// ∫ℝ f dω for an even f, given the poles (re, |im|) of the integrand with
/// Re > 0. Returns twice the half-line integral plus the analytic tail.
pub fn integrate_even<F: Fn(Dd) -> f64>(f: &F, poles: &[(Dd, Dd)], s: &QuadSettings) -> QuadResult {
    let mut centers: Vec<(Dd, Dd)> = poles
        .iter()
        .copied()
        .filter(|(re, _)| re.to_f64() > 0.0 && re.to_f64() < s.cutoff)
        .collect();
    centers.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));

    // breakpoints on the linear axis, with tangent windows around sharp poles
    let mut pieces: Vec<(f64, f64, Map)> = Vec::new();
    let mut cursor = 0.0f64;
    for (i, &(x0, w)) in centers.iter().enumerate() {
        let x = x0.to_f64();
        let prev = if i == 0 { 0.0 } else { centers[i - 1].0.to_f64() };
        let next = if i + 1 < centers.len() { centers[i + 1].0.to_f64() } else { s.cutoff };
        let half = 0.5 * (x - prev).min(next - x);
        let wf = w.to_f64();
        if wf < 0.25 * half && half > 0.0 {
            let lo = x - half;
            if lo > cursor {
                pieces.push((cursor, lo, Map::Linear));
            }
            let th = libm::atan(half / wf);
            let map = Map::Tan { x0, w };
            pieces.push((-th, 0.0, map));
            pieces.push((0.0, th, map));
            cursor = x + half;
        } else if x > cursor {
            pieces.push((cursor, x, Map::Linear));
            cursor = x;
        }
    }
    if cursor < s.cutoff {
        pieces.push((cursor, s.cutoff, Map::Linear));
    }

    let mut heap = BinaryHeap::new();
    let (mut total, mut err) = (0.0, 0.0);
    for (a, b, map) in pieces {
        let (v, e) = gk15(f, a, b, map);
        total += v;
        err += e;
        heap.push(Piece { a, b, map, val: v, err: e });
    }
    while err > s.rel_tol * total.abs() && heap.len() < s.max_pieces {
        let p = match heap.pop() {
            Some(p) => p,
            None => break,
        };
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            heap.push(Piece { err: 0.0, ..p });
            err -= p.err;
            continue;
        }
        let (v1, e1) = gk15(f, p.a, m, p.map);
        let (v2, e2) = gk15(f, m, p.b, p.map);
        total += v1 + v2 - p.val;
        err += e1 + e2 - p.err;
        heap.push(Piece { a: p.a, b: m, map: p.map, val: v1, err: e1 });
        heap.push(Piece { a: m, b: p.b, map: p.map, val: v2, err: e2 });
    }
    // recompute sums to shed accumulated rounding from the running updates
    let (mut total, mut err) = (0.0, 0.0);
    let n = heap.len();
    for p in heap.into_iter() {
        total += p.val;
        err += p.err;
    }

    // f ≈ c₂/ω² + c₄/ω⁴ beyond the cutoff
    let w1 = s.cutoff;
    let w2 = 2.0 * s.cutoff;
    let (f1, f2) = (f(Dd::new(w1)), f(Dd::new(w2)));
    let (x1, x2) = (1.0 / (w1 * w1), 1.0 / (w2 * w2));
    let c4 = (f1 / x1 - f2 / x2) / (x1 - x2);
    let c2 = f1 / x1 - c4 * x1;
    let tail = c2 / w1 + c4 / (3.0 * w1 * w1 * w1);

    QuadResult {
        value: 2.0 * (total + tail),
        error: 2.0 * err,
        tail: 2.0 * tail,
        pieces: n,
    }
}

/// Plain adaptive integral of a smooth f over [a, b].
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    let g = |w: Dd| f(w.to_f64());
    let mut heap = BinaryHeap::new();
    let (v, e) = gk15(&g, a, b, Map::Linear);
    heap.push(Piece { a, b, map: Map::Linear, val: v, err: e });
    let (mut total, mut err) = (v, e);
    while err > rel_tol * total.abs() && heap.len() < 10_000 {
        let p = heap.pop().unwrap();
        let m = 0.5 * (p.a + p.b);
        let (v1, e1) = gk15(&g, p.a, m, p.map);
        let (v2, e2) = gk15(&g, m, p.b, p.map);
        total += v1 + v2 - p.val;
        err += e1 + e2 - p.err;
        heap.push(Piece { a: p.a, b: m, map: p.map, val: v1, err: e1 });
        heap.push(Piece { a: m, b: p.b, map: p.map, val: v2, err: e2 });
    }
    heap.into_iter().map(|p| p.val).sum()
}
