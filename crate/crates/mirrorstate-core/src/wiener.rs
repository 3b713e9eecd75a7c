//! Causal spectral factorization and Wiener filter synthesis.
//!
//! S_XX = C₁J/|F|² is split as S⁺S⁻ with S⁺ = √C₁F′/F, where F′ collects the
//! roots of J below the real axis. The causal part of S_tX/S⁻ comes from the
//! polynomial identity K̂ = P·F′* + P′·F: P/F keeps the poles of F (causal),
//! P′/F′* is anticausal and dropped. The filter is H = P/(C₁F′).

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex;
use num_traits::Zero;

use crate::dd::{cabs, cdd_re, to_c64, Cdd, Dd};
use crate::linsolve::solve;
use crate::poly::{eval_factored, Poly};
use crate::roots::lower_half_roots_even;
use crate::spectra::{SpectralModel, Target};
use crate::Error;

type C64 = Complex<f64>;

/// Causal factor F′ of J, with F′F′* = J on the real line.
#[derive(Clone, Debug)]
pub struct SpectralFactor {
    pub poly: Poly,
    pub roots: Vec<Cdd>,
    pub lead: Cdd,
    pub sqrt_c1: f64,
}

impl SpectralFactor {
    pub fn eval(&self, z: Cdd) -> Cdd {
        eval_factored(self.lead, &self.roots, z)
    }

    /// Tilde-named coefficients (Ã, B̃, C̃, D̃, …) from ω^{n−1} down to ω⁰.
    pub fn tilde_coeffs(&self) -> Vec<C64> {
        let n = self.poly.degree();
        (0..n).rev().map(|k| to_c64(self.poly.coeff(k))).collect()
    }
}

/// Factor an even, real, nonnegative J. `lead` fixes the leading
/// coefficient of F′ (|lead|² must equal the leading coefficient of J).
pub fn spectral_factorize(j: &Poly, c1: f64, lead: Cdd) -> Result<SpectralFactor, Error> {
    let jl = j.lead();
    let lead2 = (lead * lead.conj()).re;
    let mismatch = ((jl.re - lead2) / lead2).to_f64().abs();
    if j.degree() % 2 != 0 || mismatch > 1e-12 || jl.im.to_f64().abs() > 1e-12 * jl.re.to_f64().abs() {
        return Err(Error::Formulation("J must be even with leading coefficient |lead|^2"));
    }
    let roots = lower_half_roots_even(j, 1e-24)?;
    let poly = Poly::from_roots(lead, &roots);
    Ok(SpectralFactor { poly, roots, lead, sqrt_c1: libm::sqrt(c1) })
}

/// max over the grid of |F′F′* − J|/|J|
pub fn factor_residual(fp: &SpectralFactor, j: &Poly, grid: &[f64]) -> f64 {
    grid.iter()
        .map(|&w| {
            let z = cdd_re(w);
            let a = fp.eval(z);
            let jv = j.eval(z);
            let r = a * a.conj() - jv;
            (cabs(r) / cabs(jv)).to_f64()
        })
        .fold(0.0, f64::max)
}

/// Coefficient comparison F′F′* − J, one entry per power from ω^{2n−1}
/// down to ω⁰ (the leading power holds by construction). Each entry is real.
pub fn coefficient_residuals(fp: &Poly, j: &Poly) -> Vec<f64> {
    let prod = fp * &fp.conj();
    let n2 = j.degree();
    (0..n2).rev().map(|k| (prod.coeff(k) - j.coeff(k)).re.to_f64()).collect()
}

/// Right-hand sides of the coefficient system for the two-mode quartic,
/// written out in terms of γ, ω_AR², Δ_BR², Δ_AR²ω_BR² and C₂/C₁, C₃/C₁.
/// Ordered from ω⁷ to ω⁰.
pub fn quartic_system_rhs(m: &SpectralModel) -> [f64; 8] {
    let (a, b, c, g) = (m.plant.a, m.plant.b, m.plant.c, m.plant.gamma);
    let k = m.consts.c2 / m.consts.c1;
    let mm = m.consts.c3 / m.consts.c1;
    [
        0.0,
        -2.0 * k + g * g - 2.0 * b - 2.0 * a,
        0.0,
        mm - 2.0 * g * g * b + 2.0 * b * a + (b + a) * (b + a) + k * (4.0 * b + 2.0 * a) - 2.0 * c,
        0.0,
        -2.0 * mm * b + g * g * b * b - 2.0 * k * (b * b + 2.0 * b * a - c) + 2.0 * (b + a) * (-b * a + c),
        0.0,
        mm * b * b + 2.0 * k * b * (b * a - c) + (-b * a + c) * (-b * a + c),
    ]
}

/// Left-hand sides of the same system for F′ = −ω⁴ + Ãω³ + B̃ω² + C̃ω + D̃.
pub fn quartic_system_lhs(t: &[C64]) -> [f64; 8] {
    let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
    let cj = |z: C64| z.conj();
    [
        (-(a + cj(a))).re,
        (a * cj(a) - b - cj(b)).re,
        (a * cj(b) + cj(a) * b - c - cj(c)).re,
        (b * cj(b) + a * cj(c) + cj(a) * c - d - cj(d)).re,
        (b * cj(c) + cj(b) * c + a * cj(d) + cj(a) * d).re,
        (c * cj(c) + b * cj(d) + cj(b) * d).re,
        (c * cj(d) + cj(c) * d).re,
        (d * cj(d)).re,
    ]
}

/// Solve the coefficient system F′F′* = J directly by Newton iteration in
/// scaled variables ω = s·x, starting from `start` (normally F itself).
/// The target is reached by continuation along (1−λ)|start|² + λJ, which
/// keeps the iterate on the causal branch. Verification backend only: the
/// system has spurious (non-causal) branches.
pub fn solve_coefficient_system(j: &Poly, start: &Poly) -> Result<Poly, Error> {
    let n2 = j.degree();
    let n = n2 / 2;
    if start.degree() != n {
        return Err(Error::Invalid("start polynomial degree"));
    }
    let s = libm::pow(cabs(j.coeff(0)).to_f64() / cabs(j.lead()).to_f64(), 1.0 / n2 as f64);
    let s = if s.is_finite() && s > 0.0 { s } else { 1.0 };
    let sd = Dd::new(s);
    // J(s x)/s^{2n}, p(s x)/s^n
    let js = j.rescale_arg(sd).scale_re(Dd::ONE / sd.powi(n2 as i32));
    let mut p = start.rescale_arg(sd).scale_re(Dd::ONE / sd.powi(n as i32));
    let j0 = &p * &p.conj();

    let mut lam = 0.0f64;
    let mut step = 0.125f64;
    while lam < 1.0 {
        let next = (lam + step).min(1.0);
        let jl = &j0.scale_re(Dd::new(1.0 - next)) + &js.scale_re(Dd::new(next));
        match newton_coefficients(&jl, &p, n) {
            Ok(q) => {
                p = q;
                lam = next;
                step = (step * 2.0).min(0.25);
            }
            Err(e) => {
                step *= 0.5;
                if step < 1e-6 {
                    return Err(e);
                }
            }
        }
    }
    Ok(p.rescale_arg(Dd::ONE / sd).scale_re(sd.powi(n as i32)))
}

fn newton_coefficients(js: &Poly, start: &Poly, n: usize) -> Result<Poly, Error> {
    let n2 = 2 * n;
    let resid = |p: &Poly| -> Vec<Dd> {
        let prod = p * &p.conj();
        (0..n2).map(|k| (prod.coeff(k) - js.coeff(k)).re).collect()
    };
    let norm = |r: &[Dd]| r.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    let jscale = js.norm_inf();

    let mut p = start.clone();
    let mut r = resid(&p);
    for _ in 0..100 {
        let rn = norm(&r);
        if rn < 1e-28 * jscale {
            return Ok(p);
        }
        // Jacobian w.r.t. (Re p_i, Im p_i), i < n
        let mut jac = vec![vec![Cdd::zero(); 2 * n]; n2];
        for k in 0..n2 {
            for i in 0..n {
                if k >= i && k - i <= n {
                    let q = p.coeff(k - i);
                    jac[k][2 * i] = Complex::new(q.re * 2.0, Dd::ZERO);
                    jac[k][2 * i + 1] = Complex::new(q.im * 2.0, Dd::ZERO);
                }
            }
        }
        let rhs: Vec<Cdd> = r.iter().map(|&x| Complex::new(-x, Dd::ZERO)).collect();
        let step = solve(jac, rhs)?;
        let mut lambda = Dd::ONE;
        let mut accepted = false;
        for _ in 0..30 {
            let mut c = p.c.clone();
            c.resize(n + 1, Cdd::zero());
            for i in 0..n {
                c[i] = c[i] + Complex::new(step[2 * i].re * lambda, step[2 * i + 1].re * lambda);
            }
            let trial = Poly::new(c);
            let rt = resid(&trial);
            if norm(&rt) < rn {
                p = trial;
                r = rt;
                accepted = true;
                break;
            }
            lambda = lambda * 0.5;
        }
        if !accepted {
            // stalled at working precision
            if rn < 1e-22 * jscale {
                return Ok(p);
            }
            return Err(Error::NoConvergence("coefficient system Newton iteration"));
        }
    }
    Err(Error::NoConvergence("coefficient system Newton iteration"))
}

/// Causal and anticausal numerators for one target: K̂ = P·F′* + P′·F.
#[derive(Clone, Debug)]
pub struct CausalNumerator {
    pub target: Target,
    pub causal: Poly,
    pub anticausal: Poly,
}

impl CausalNumerator {
    /// Coefficients normalized by C₁c, highest power first (Ẽ, F̃, G̃, H̃ for δq).
    pub fn tilde(&self, c1c: f64) -> Vec<C64> {
        let n = self.causal.c.len().max(1);
        (0..n).rev().map(|k| to_c64(self.causal.coeff(k)) / c1c).collect()
    }
}

/// Solve the 2n×2n coefficient system for P and P′.
pub fn causal_extract(
    k_hat: &Poly,
    f: &Poly,
    fp: &SpectralFactor,
    target: Target,
) -> Result<CausalNumerator, Error> {
    let n = f.degree();
    if k_hat.is_zero() {
        return Ok(CausalNumerator { target, causal: Poly::zero(), anticausal: Poly::zero() });
    }
    if k_hat.degree() >= 2 * n {
        return Err(Error::Formulation("cross-spectrum numerator degree too high"));
    }
    let fpb = fp.poly.conj();
    // unknowns: P_0..P_{n-1}, P'_0..P'_{n-1}
    let mut a = vec![vec![Cdd::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for (k, &c) in fpb.c.iter().enumerate() {
            a[i + k][i] = a[i + k][i] + c;
        }
        for (k, &c) in f.c.iter().enumerate() {
            a[i + k][n + i] = a[i + k][n + i] + c;
        }
    }
    let b: Vec<Cdd> = (0..2 * n).map(|k| k_hat.coeff(k)).collect();
    let x = solve(a, b)?;
    Ok(CausalNumerator {
        target,
        causal: Poly::new(x[..n].to_vec()),
        anticausal: Poly::new(x[n..].to_vec()),
    })
}

/// Same causal numerator from partial fractions over the roots of F.
pub fn causal_extract_residues(k_hat: &Poly, f: &Poly, f_roots: &[Cdd], fp: &SpectralFactor) -> Poly {
    let fpb = fp.poly.conj();
    let lead = f.lead();
    let mut acc = Poly::zero();
    for (j, &r) in f_roots.iter().enumerate() {
        let mut dprime = lead;
        for (i, &q) in f_roots.iter().enumerate() {
            if i != j {
                dprime = dprime * (r - q);
            }
        }
        let res = k_hat.eval(r) / (dprime * fpb.eval(r));
        let others: Vec<Cdd> = f_roots.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, &q)| q).collect();
        acc = &acc + &Poly::from_roots(lead * res, &others);
    }
    acc
}

/// Wiener filter H_t = P/(C₁F′).
#[derive(Clone, Debug)]
pub struct WienerFilter {
    pub target: Target,
    pub numer: Poly,
    pub factor: SpectralFactor,
    pub c1: f64,
}

impl WienerFilter {
    pub fn eval_dd(&self, z: Cdd) -> Cdd {
        self.numer.eval(z) / (self.factor.eval(z) * Dd::new(self.c1))
    }

    pub fn eval(&self, w: f64) -> C64 {
        to_c64(self.eval_dd(cdd_re(w)))
    }
}

/// The full two-sided synthesis for a spectral model.
#[derive(Clone, Debug)]
pub struct Synthesis {
    pub model: SpectralModel,
    pub j: Poly,
    pub factor: SpectralFactor,
    pub numerators: Vec<CausalNumerator>,
}

impl Synthesis {
    pub fn new(model: SpectralModel) -> Result<Self, Error> {
        let j = model.j_poly();
        let factor = spectral_factorize(&j, model.consts.c1, model.f.lead())?;
        let mut numerators = Vec::with_capacity(4);
        for t in Target::ALL {
            numerators.push(causal_extract(&model.k_hat(t), &model.f, &factor, t)?);
        }
        Ok(Synthesis { model, j, factor, numerators })
    }

    pub fn numerator(&self, t: Target) -> &CausalNumerator {
        &self.numerators[t as usize]
    }

    pub fn filter(&self, t: Target) -> WienerFilter {
        WienerFilter {
            target: t,
            numer: self.numerator(t).causal.clone(),
            factor: self.factor.clone(),
            c1: self.model.consts.c1,
        }
    }

    /// S⁺(ω) = √C₁F′/F
    pub fn s_plus(&self, w: f64) -> C64 {
        let z = cdd_re(w);
        to_c64(self.factor.eval(z) / self.model.f_eval(z)) * self.factor.sqrt_c1
    }

    /// S⁻(ω) = √C₁F′*/F*
    pub fn s_minus(&self, w: f64) -> C64 {
        self.s_plus(w).conj()
    }

    /// G = H·S⁺ = P/(√C₁F)
    pub fn g(&self, t: Target, z: Cdd) -> Cdd {
        self.numerator(t).causal.eval(z) / (self.model.f_eval(z) * Dd::new(self.factor.sqrt_c1))
    }

    /// Non-causal optimum S_tX/S_XX, for diagnostics.
    pub fn h_noncausal(&self, t: Target, w: f64) -> C64 {
        let z = cdd_re(w);
        let num = self.model.k_hat(t).eval(z);
        let den = self.j.eval(z) * Dd::new(self.model.consts.c1);
        to_c64(num / den)
    }

    /// max over the grid of |K̂ − (P F′* + P′ F)|/|K̂|
    pub fn reconstruction_residual(&self, t: Target, grid: &[f64]) -> f64 {
        let cn = self.numerator(t);
        let kh = self.model.k_hat(t);
        let fpb = self.factor.poly.conj();
        grid.iter()
            .map(|&w| {
                let z = cdd_re(w);
                let lhs = kh.eval(z);
                let rhs = cn.causal.eval(z) * fpb.eval(z) + cn.anticausal.eval(z) * self.model.f.eval(z);
                let den = cabs(lhs).to_f64().max(1e-300);
                cabs(lhs - rhs).to_f64() / den
            })
            .fold(0.0, f64::max)
    }
}
