//! Point-mirror model: a single oscillator at the light-shifted frequency ω_m.
//!
//! F_m = ω_m² − iγ_mω − ω² factors in closed form. With
//! α̂ = −2C₂/C₁ + γ_m² − 2ω_m² and β̂ = C₃/C₁ + 2(C₂/C₁)ω_m² + ω_m⁴ the
//! causal factor is F′_m = Ω′² − iΓ′ω − ω², Γ′ = √(α̂+2√β̂), Ω′² = √β̂.

use alloc::vec;
use num_complex::Complex;

use crate::covariance::{
    conditional_covariance, mismatched_covariance, Backend, CovPair, FilterSet, PoleSelector,
};
use crate::dd::{cdd, Cdd, Dd};
use crate::params::PhysicalParams;
use crate::poly::Poly;
use crate::roots::roots;
use crate::spectra::{SpectralModel, Target};
use crate::wiener::Synthesis;
use crate::Error;

type C64 = Complex<f64>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OneModeParams {
    pub omega_m2: f64,
    pub gamma_m: f64,
    /// Γ(Ω) times the multiplier N
    pub gamma_bare: f64,
    pub alpha_hat: f64,
    pub beta_hat: f64,
    pub gamma_prime: f64,
    pub omega_prime2: f64,
    pub omega_tilde2: f64,
    pub e: C64,
    pub f: C64,
    /// ω coefficient of the δp numerator
    pub i: C64,
    /// constant of the δp numerator
    pub j: C64,
    pub c1: f64,
    pub c1c: f64,
}

impl OneModeParams {
    pub fn new(model: &SpectralModel, n_mult: f64, p: &PhysicalParams) -> Result<Self, Error> {
        let wm2 = model.plant.a;
        let g = model.plant.gamma;
        let c = &model.consts;
        let k = c.c2 / c.c1;
        let alpha = -2.0 * k + g * g - 2.0 * wm2;
        let beta = c.c3 / c.c1 + 2.0 * k * wm2 + wm2 * wm2;
        if !(beta > 0.0) {
            return Err(Error::Degenerate("beta_hat must be positive"));
        }
        let op2 = libm::sqrt(beta);
        let gp2 = alpha + 2.0 * op2;
        if !(gp2 > 0.0) {
            return Err(Error::Degenerate("Gamma' must be real"));
        }
        let gp = libm::sqrt(gp2);
        // without a cross signal (G₀ = 0) both C₁c and C₂c vanish
        let ot2 = if c.c1c == 0.0 { wm2 } else { wm2 + c.c2c / c.c1c };
        let den = (gp * wm2 + g * op2) * (g + gp) + (wm2 - op2) * (wm2 - op2);
        let e = C64::new(0.0, (g + gp) * (wm2 - ot2) / den);
        let f = C64::new((wm2 - g * g - g * gp - op2) * (wm2 - ot2) / den, 0.0);
        let m = model.plant.mass;
        let i = e * (m * (op2 - wm2) / (gp + g));
        let j = e * C64::new(0.0, -m * wm2);
        Ok(OneModeParams {
            omega_m2: wm2,
            gamma_m: g,
            gamma_bare: n_mult * p.mech_decay,
            alpha_hat: alpha,
            beta_hat: beta,
            gamma_prime: gp,
            omega_prime2: op2,
            omega_tilde2: ot2,
            e,
            f,
            i,
            j,
            c1: c.c1,
            c1c: c.c1c,
        })
    }

    /// F′_m as a polynomial.
    pub fn factor_poly(&self) -> Poly {
        Poly::new(vec![
            Complex::new(Dd::new(self.omega_prime2), Dd::ZERO),
            Complex::new(Dd::ZERO, Dd::new(-self.gamma_prime)),
            Complex::new(-Dd::ONE, Dd::ZERO),
        ])
    }

    /// Filter numerators normalized by C₁c: Ẽω + F̃ and Ĩω + J̃.
    pub fn q_numerator(&self) -> Poly {
        Poly::new(vec![cdd(self.f), cdd(self.e)])
    }

    pub fn p_numerator(&self) -> Poly {
        Poly::new(vec![cdd(self.j), cdd(self.i)])
    }

    /// δp numerator with the two coefficients in the literal printed slots
    /// (−iMω_m²Ẽ on ω, M(Ω′²−ω_m²)Ẽ/(Γ′+γ_m) constant). Dimensionally
    /// inconsistent; kept only to report the discrepancy.
    pub fn p_numerator_printed(&self) -> Poly {
        Poly::new(vec![cdd(self.i), cdd(self.j)])
    }
}

/// One-mode spectral model with Γ → NΓ.
pub fn one_mode_model(p: &PhysicalParams, n_mult: f64) -> Result<SpectralModel, Error> {
    SpectralModel::one_mode(p, n_mult)
}

/// (Γ′, Ω′²) in closed form.
pub fn one_mode_factorize(p: &PhysicalParams, n_mult: f64) -> Result<(f64, f64), Error> {
    let m = one_mode_model(p, n_mult)?;
    let om = OneModeParams::new(&m, n_mult, p)?;
    Ok((om.gamma_prime, om.omega_prime2))
}

/// Effective frequency ω_m (rad/s).
pub fn one_mode_effective(p: &PhysicalParams) -> f64 {
    libm::sqrt(crate::spectra::Plant::one_mode(p).a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FilterForm {
    /// closed-form Ẽ_m, F̃_m (δp coefficients in dimensionally consistent slots)
    #[default]
    ClosedForm,
    /// exact causal extraction on the one-mode spectra
    Generic,
}

impl FilterForm {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "closed" | "closed-form" => Some(FilterForm::ClosedForm),
            "generic" => Some(FilterForm::Generic),
            _ => None,
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            FilterForm::ClosedForm => "closed-form",
            FilterForm::Generic => "generic",
        }
    }
}

/// The one-mode filter bank H = (C₁c/C₁)·numer/F′_m. Rotational targets
/// get no filter.
pub fn one_mode_filters(p: &PhysicalParams, n_mult: f64, form: FilterForm) -> Result<FilterSet, Error> {
    let m = one_mode_model(p, n_mult)?;
    match form {
        FilterForm::Generic => {
            let s = Synthesis::new(m)?;
            Ok(FilterSet::from_synthesis(&s))
        }
        FilterForm::ClosedForm => {
            let om = OneModeParams::new(&m, n_mult, p)?;
            let fp = om.factor_poly();
            let r = roots(&fp)?;
            let ratio = Dd::new(om.c1c) / om.c1;
            Ok(FilterSet {
                numer: [
                    om.q_numerator().scale_re(ratio),
                    om.p_numerator().scale_re(ratio),
                    Poly::zero(),
                    Poly::zero(),
                ],
                lead: fp.lead(),
                roots: r,
            })
        }
    }
}

/// H_q, H_p of the one-mode filter at ω.
pub fn one_mode_filter_values(
    p: &PhysicalParams,
    n_mult: f64,
    form: FilterForm,
    w: f64,
) -> Result<(C64, C64), Error> {
    let fs = one_mode_filters(p, n_mult, form)?;
    let z: Cdd = Complex::new(Dd::new(w), Dd::ZERO);
    Ok((crate::dd::to_c64(fs.eval(Target::Q, z)), crate::dd::to_c64(fs.eval(Target::P, z))))
}

/// V_cm of the point-mirror model with its own optimal filter.
pub fn one_mode_covariance(p: &PhysicalParams, n_mult: f64, backend: Backend) -> Result<CovPair, Error> {
    let s = Synthesis::new(one_mode_model(p, n_mult)?)?;
    conditional_covariance(&s, backend, PoleSelector::All)
}

/// V′_c: the one-mode filter (with NΓ) applied to the two-mode system.
pub fn mismatched(
    p: &PhysicalParams,
    n_mult: f64,
    form: FilterForm,
    backend: Backend,
    sel: PoleSelector,
) -> Result<CovPair, Error> {
    let model = SpectralModel::two_mode(p)?;
    let filt = one_mode_filters(p, n_mult, form)?;
    mismatched_covariance(&model, &filt, backend, sel)
}
