//! Pendulum/rotation coupling coefficients, normal modes and structural
//! damping.
//!
//! The beam enters through two wavenumbers k (propagating) and k_e
//! (evanescent). With k_eℓ ~ 10³ the hyperbolic functions overflow, so every
//! coefficient is divided through by cosh(k_eℓ) and written with tanh/sech.

use num_complex::Complex;

use crate::params::PhysicalParams;
use crate::steady::photon_number;
use crate::Error;

type C64 = Complex<f64>;

/// Real/imaginary split of the coupling coefficients: X² = X_R² + iφ X_I².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeCouplings {
    pub omega_a2: C64,
    pub delta_a2: C64,
    pub omega_b2: C64,
    pub delta_b2: C64,
    pub omega_ar2: f64,
    pub delta_ar2: f64,
    pub omega_br2: f64,
    pub delta_br2: f64,
    pub omega_ai2: f64,
    pub delta_ai2: f64,
    pub omega_bi2: f64,
    pub delta_bi2: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalModes {
    pub w0_plus: f64,
    pub w0_minus: f64,
    pub w1_plus: f64,
    pub w1_minus: f64,
    /// φ₀ω₁ on the branch nearest ω_AR (pendulum-like)
    pub gamma_r_pendulum: f64,
    /// tabulated Γ_r(Ω)
    pub gamma_r_table: f64,
    /// true when ω_0+ is the pendulum-like branch
    pub plus_is_pendulum: bool,
}

impl NormalModes {
    pub fn pendulum(&self) -> f64 {
        if self.plus_is_pendulum {
            self.w0_plus
        } else {
            self.w0_minus
        }
    }
    pub fn rotational(&self) -> f64 {
        if self.plus_is_pendulum {
            self.w0_minus
        } else {
            self.w0_plus
        }
    }
}

/// Radiation-pressure stiffness per unit mass, −2ℏG₀²n_cΔ/(M(κ²+Δ²)).
/// Positive (stiffening) for δ > 0.
pub fn optical_spring(p: &PhysicalParams) -> f64 {
    let d = p.derive();
    let nc = photon_number(p);
    let k = p.optical_decay;
    -2.0 * p.hbar * p.coupling * p.coupling * nc * d.detuning
        / (p.mirror_mass * (k * k + d.detuning * d.detuning))
}

/// (k, k_e) for real ω and loss φ, with E = E₀(1 − iφ).
pub fn wavenumbers(p: &PhysicalParams, omega: f64, phi: f64) -> (C64, C64) {
    let t = p.mirror_mass * p.gravity;
    let ei = C64::new(p.flexural_rigidity, -p.flexural_rigidity * phi);
    let rho = p.beam_density;
    let root = (ei * (4.0 * rho * omega * omega) + t * t).sqrt();
    let k2 = C64::new(2.0 * rho * omega * omega, 0.0) / (root + t);
    let ke2 = (root + t) / (ei * 2.0);
    (k2.sqrt(), ke2.sqrt())
}

/// k ≈ √(ρ/T)ω, k_e ≈ √(T/EI)
pub fn wavenumbers_approx(p: &PhysicalParams, omega: f64) -> (f64, f64) {
    let t = p.mirror_mass * p.gravity;
    (libm::sqrt(p.beam_density / t) * omega, libm::sqrt(t / p.flexural_rigidity))
}

/// True when ω² stays well below T²/(4E₀Iρ), where the beam's violin modes
/// are out of the way.
pub fn low_frequency_ok(p: &PhysicalParams, omega: f64) -> bool {
    let t = p.mirror_mass * p.gravity;
    omega * omega < 1e-2 * t * t / (4.0 * p.flexural_rigidity * p.beam_density)
}

// tanh z and sech z for Re z ≥ 0 without overflow
fn tanh_sech(z: C64) -> (C64, C64) {
    let em = (-z).exp();
    let q = em * em;
    let one = C64::new(1.0, 0.0);
    ((one - q) / (one + q), em * 2.0 / (one + q))
}

/// Full frequency-dependent coefficients ω_A², Δ_A², ω_B², Δ_B².
pub fn couplings_exact(p: &PhysicalParams, omega: f64, phi: f64) -> Result<[C64; 4], Error> {
    let (k, ke) = wavenumbers(p, omega, phi);
    let l = p.beam_length;
    let h = p.offset;
    let t = p.mirror_mass * p.gravity;
    let ei = C64::new(p.flexural_rigidity, -p.flexural_rigidity * phi);
    let (th, sech) = tanh_sech(ke * l);
    let (s, c) = ((k * l).sin(), (k * l).cos());
    let (k2, ke2) = (k * k, ke * ke);

    // det C / cosh(k_e ℓ)
    let det = k * 2.0 * (sech - c) + (ke2 - k2) / ke * s * th;
    let scale = k.norm() * (ke.norm() * l + 1.0);
    if !(det.norm() > 1e-9 * scale) {
        return Err(Error::BeamResonance);
    }
    let w = k * s + ke * c * th;

    let d = p.derive();
    let nc = photon_number(p);
    let kap = C64::new(p.optical_decay, -omega);
    let rad = C64::new(2.0 * p.hbar * p.coupling * p.coupling * nc * d.detuning, 0.0)
        / (kap * kap + d.detuning * d.detuning);

    let m = p.mirror_mass;
    let jm = p.moment_of_inertia;
    let omega_a2 = -(-(ei * k * (k2 + ke2) * w / det) + rad) / m;
    let delta_a2 = (-t
        + ei / det
            * (k * (ke2 - k2) * (sech - c)
                + (ke2 * ke2 + k2 * k2) / ke * s * th
                + k * h * (k2 + ke2) * w))
        / m;
    let omega_b2 = -(ei / jm) * k / det * ((ke2 - k2) * (sech - c) - k * ke * 2.0 * s * th - (k2 + ke2) * h * w);
    let delta_b2 = (ei / jm) / det * ((k2 + ke2) / ke)
        * (ke * (k2 * h * h + 1.0) * s + (k * (ke2 * h * h - 1.0) * c + (k2 + ke2) * h * s) * th);
    Ok([omega_a2, delta_a2, omega_b2, delta_b2])
}

/// Closed-form low-frequency coefficients and their loss derivatives.
pub fn couplings_lowfreq(p: &PhysicalParams) -> ModeCouplings {
    let t = p.mirror_mass * p.gravity;
    let l = p.beam_length;
    let h = p.offset;
    let m = p.mirror_mass;
    let jm = p.moment_of_inertia;
    let r = libm::sqrt(p.flexural_rigidity / t);

    let omega_ar2 = t / (m * l) * (1.0 + 2.0 / l * r) + optical_spring(p);
    let delta_ar2 = t * h / (m * l) * (1.0 + (1.0 / h + 2.0 / l) * r);
    let omega_br2 = t * h / (jm * l) * (1.0 + (1.0 / h + 2.0 / l) * r);
    let delta_br2 = t * h / jm * (1.0 + h / l + (1.0 / h + 2.0 / l) * r);

    // √(EI/T) → √(E₀I/T)(1 − iφ/2) to first order
    let omega_ai2 = -t / (m * l * l) * r;
    let delta_ai2 = -(2.0 * h + l) * t / (2.0 * m * l * l) * r;
    let omega_bi2 = -(2.0 * h + l) * t / (2.0 * jm * l * l) * r;
    let delta_bi2 = -(2.0 * h + l) * t / (2.0 * jm * l) * r;

    let phi = p.loss_factor;
    ModeCouplings {
        omega_a2: C64::new(omega_ar2, phi * omega_ai2),
        delta_a2: C64::new(delta_ar2, phi * delta_ai2),
        omega_b2: C64::new(omega_br2, phi * omega_bi2),
        delta_b2: C64::new(delta_br2, phi * delta_bi2),
        omega_ar2,
        delta_ar2,
        omega_br2,
        delta_br2,
        omega_ai2,
        delta_ai2,
        omega_bi2,
        delta_bi2,
    }
}

/// ω₁ on the branch with squared frequency `w02`.
pub fn dissipation_rate(mc: &ModeCouplings, w02: f64) -> f64 {
    let w0 = libm::sqrt(w02);
    let num = -w02 * (mc.delta_bi2 + mc.omega_ai2) + mc.delta_br2 * mc.omega_ai2 + mc.delta_bi2 * mc.omega_ar2
        - mc.delta_ar2 * mc.omega_bi2
        - mc.delta_ai2 * mc.omega_br2;
    num / (2.0 * w0 * (2.0 * w02 - mc.omega_ar2 - mc.delta_br2))
}

pub fn normal_modes(p: &PhysicalParams) -> Result<NormalModes, Error> {
    let mc = couplings_lowfreq(p);
    normal_modes_from(p, &mc)
}

pub fn normal_modes_from(p: &PhysicalParams, mc: &ModeCouplings) -> Result<NormalModes, Error> {
    let (a, b) = (mc.omega_ar2, mc.delta_br2);
    let disc = (a - b) * (a - b) + 4.0 * mc.delta_ar2 * mc.omega_br2;
    if !(disc > 1e-12 * (a + b) * (a + b)) {
        return Err(Error::Degenerate("normal-mode branches coincide"));
    }
    let sd = libm::sqrt(disc);
    let wp2 = 0.5 * (a + b + sd);
    let wm2 = 0.5 * (a + b - sd);
    if !(wm2 > 0.0) {
        return Err(Error::Degenerate("lower normal mode is unstable"));
    }
    let w1p = dissipation_rate(mc, wp2);
    let w1m = dissipation_rate(mc, wm2);
    let sa = libm::sqrt(a.abs());
    let (wp, wm) = (libm::sqrt(wp2), libm::sqrt(wm2));
    let plus_is_pendulum = (wp - sa).abs() <= (wm - sa).abs();
    let phi0 = p.loss_factor;
    Ok(NormalModes {
        w0_plus: wp,
        w0_minus: wm,
        w1_plus: w1p,
        w1_minus: w1m,
        gamma_r_pendulum: phi0 * if plus_is_pendulum { w1p } else { w1m },
        gamma_r_table: p.mech_decay_rot,
        plus_is_pendulum,
    })
}

/// Γ_r(ω) = Γ_r(Ω)Ω/ω
pub fn structural_damping(p: &PhysicalParams, omega: f64) -> Result<f64, Error> {
    if !(omega > 0.0) {
        return Err(Error::NonPositive("omega"));
    }
    Ok(p.mech_decay_rot * p.pendulum_freq / omega)
}

/// Size of the rotational correction to the pendulum dissipation,
/// ℓ√(M/J)(1 + 2h/ℓ)·Δ_AR ω_BR/(ω_AR² − Δ_BR²). Reported only.
pub fn coupling_correction(p: &PhysicalParams) -> f64 {
    let mc = couplings_lowfreq(p);
    let l = p.beam_length;
    l * libm::sqrt(p.mirror_mass / p.moment_of_inertia) * (1.0 + 2.0 * p.offset / l)
        * libm::sqrt(mc.delta_ar2 * mc.omega_br2)
        / (mc.omega_ar2 - mc.delta_br2)
}
