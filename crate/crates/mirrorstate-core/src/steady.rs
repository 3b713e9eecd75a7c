//! Classical steady state of cavity, beam and mirror.
//!
//! With c = ℏG₀n_c/T the clamped-beam profile is
//! X̄(σ) = A′e^{βσ} + B′e^{−βσ} + C′σ + D′. For βℓ ~ 10³ the coefficient A′
//! underflows, so it is carried as A′e^{2βℓ} and recombined inside exponents.

use crate::params::{NcVariant, PhysicalParams};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SteadyState {
    pub photon_number: f64,
    /// A′·e^{2βℓ}
    pub a_prime_scaled: f64,
    pub b_prime: f64,
    pub c_prime: f64,
    pub d_prime: f64,
    pub mirror_offset: f64,
    pub rotation_offset: f64,
    /// phase θ of ā = α_s e^{−iθ}
    pub phase: f64,
    pub amplitude: f64,
    beta: f64,
    ell: f64,
}

/// n_c at the parameter set's detuning.
pub fn photon_number(p: &PhysicalParams) -> f64 {
    let d = p.derive();
    let k = p.optical_decay;
    match p.nc_variant {
        NcVariant::Exact => d.drive_sq / (k * k + d.detuning * d.detuning),
        NcVariant::OnePlusDeltaSq => d.drive_sq / (k * k * (1.0 + p.detuning_norm * p.detuning_norm)),
    }
}

impl SteadyState {
    pub fn new(p: &PhysicalParams) -> Self {
        let d = p.derive();
        let nc = photon_number(p);
        let beta = d.beta;
        let ell = p.beam_length;
        let hb = p.offset * beta;
        let c = p.hbar * p.coupling * nc / d.tension;
        let e = libm::exp(-2.0 * beta * ell);
        let den = (1.0 + hb) + (1.0 - hb) * e;
        let a_scaled = -(c / beta) * (1.0 - hb) / den;
        let b = (c / beta) * (1.0 + hb) / den;
        let dp = -(c / beta) * ((1.0 + hb) - (1.0 - hb) * e) / den;
        let mut s = SteadyState {
            photon_number: nc,
            a_prime_scaled: a_scaled,
            b_prime: b,
            c_prime: c,
            d_prime: dp,
            mirror_offset: 0.0,
            rotation_offset: 0.0,
            phase: libm::atan2(d.detuning, p.optical_decay),
            amplitude: libm::sqrt(nc),
            beta,
            ell,
        };
        s.rotation_offset = s.slope(ell);
        s.mirror_offset = s.profile(ell) + p.offset * s.rotation_offset;
        s
    }

    /// A′ itself; underflows to zero for long beams.
    pub fn a_prime(&self) -> f64 {
        self.a_prime_scaled * libm::exp(-2.0 * self.beta * self.ell)
    }

    /// Exact X̄(σ).
    pub fn profile(&self, sigma: f64) -> f64 {
        let b = self.beta;
        self.a_prime_scaled * libm::exp(b * (sigma - 2.0 * self.ell))
            + self.b_prime * libm::exp(-b * sigma)
            + self.c_prime * sigma
            + self.d_prime
    }

    /// ∂X̄/∂σ
    pub fn slope(&self, sigma: f64) -> f64 {
        let b = self.beta;
        b * (self.a_prime_scaled * libm::exp(b * (sigma - 2.0 * self.ell)) - self.b_prime * libm::exp(-b * sigma))
            + self.c_prime
    }

    /// X̄ ≈ (ℏG₀n_c/T)σ
    pub fn profile_approx(&self, sigma: f64) -> f64 {
        self.c_prime * sigma
    }

    /// q̄ ≈ (ℏG₀n_c/T)(ℓ+h)
    pub fn mirror_offset_approx(&self, offset: f64) -> f64 {
        self.c_prime * (self.ell + offset)
    }
}

/// X̄(σ) and the full steady state; σ must lie on the beam.
pub fn beam_profile(p: &PhysicalParams, sigma: f64) -> Result<(f64, SteadyState), Error> {
    if !(0.0..=p.beam_length).contains(&sigma) {
        return Err(Error::OutOfRange("sigma"));
    }
    let s = SteadyState::new(p);
    Ok((s.profile(sigma), s))
}

/// (exact, approximate) q̄.
pub fn mirror_offset(p: &PhysicalParams) -> (f64, f64) {
    let s = SteadyState::new(p);
    (s.mirror_offset, s.mirror_offset_approx(p.offset))
}
