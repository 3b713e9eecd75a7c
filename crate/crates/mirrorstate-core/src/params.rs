//! Physical parameter record (CGS, angular frequencies) and derived constants.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::Error;

/// How the photon number depends on the normalized detuning.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NcVariant {
    /// n_c = 𝓔²/(κ²+Δ²), consistent with the steady state.
    #[default]
    Exact,
    /// n_c = 𝓔²/(κ²(1+δ²)).
    OnePlusDeltaSq,
}

/// Frequency at which the structural damping Γ_r(ω) = Γ_r(Ω)Ω/ω enters the
/// thermal force strength.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NoiseEval {
    /// At the light-shifted pendulum normal mode.
    #[default]
    Pendulum,
    /// At the bare pendulum frequency Ω (the tabulated rate as is).
    Table,
}

impl NcVariant {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "exact" => Some(NcVariant::Exact),
            "one_plus_delta_sq" => Some(NcVariant::OnePlusDeltaSq),
            _ => None,
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            NcVariant::Exact => "exact",
            NcVariant::OnePlusDeltaSq => "one_plus_delta_sq",
        }
    }
}

impl NoiseEval {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pendulum" => Some(NoiseEval::Pendulum),
            "table" => Some(NoiseEval::Table),
            _ => None,
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            NoiseEval::Pendulum => "pendulum",
            NoiseEval::Table => "table",
        }
    }
}

/// Reference parameter set. All rates are angular (rad/s).
#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalParams {
    pub laser_power: f64,
    pub optical_decay: f64,
    pub cavity_freq: f64,
    pub detuning_norm: f64,
    pub mirror_mass: f64,
    pub cavity_length: f64,
    pub beam_length: f64,
    pub offset: f64,
    pub pendulum_freq: f64,
    pub moment_of_inertia: f64,
    pub flexural_rigidity: f64,
    pub loss_factor: f64,
    pub beam_density: f64,
    /// G₀, rad/s per cm
    pub coupling: f64,
    pub bath_temp: f64,
    pub mech_decay: f64,
    pub mech_decay_rot: f64,
    pub feedback_decay: f64,
    pub thermal_photons: f64,
    pub detection_eff: f64,
    pub gravity: f64,
    pub hbar: f64,
    pub boltzmann: f64,
    pub speed_of_light: f64,
    pub nc_variant: NcVariant,
    pub noise_eval: NoiseEval,
}

/// Numeric keys, in canonical order.
pub const NUMERIC_KEYS: [&str; 24] = [
    "laser_power",
    "optical_decay",
    "cavity_freq",
    "detuning_norm",
    "mirror_mass",
    "cavity_length",
    "beam_length",
    "offset",
    "pendulum_freq",
    "moment_of_inertia",
    "flexural_rigidity",
    "loss_factor",
    "beam_density",
    "coupling",
    "bath_temp",
    "mech_decay",
    "mech_decay_rot",
    "feedback_decay",
    "thermal_photons",
    "detection_eff",
    "gravity",
    "hbar",
    "boltzmann",
    "speed_of_light",
];

/// Keys stored as angular frequency; a config in Hz is multiplied by 2π.
pub const FREQUENCY_KEYS: [&str; 7] = [
    "optical_decay",
    "cavity_freq",
    "pendulum_freq",
    "coupling",
    "mech_decay",
    "mech_decay_rot",
    "feedback_decay",
];

/// Keys that may be omitted, with their defaults.
pub const OPTIONAL_KEYS: [(&str, f64); 4] = [
    ("detection_eff", 1.0),
    ("hbar", 1.05e-27),
    ("boltzmann", 1.38e-16),
    ("speed_of_light", 2.998e10),
];

pub fn is_frequency_key(key: &str) -> bool {
    FREQUENCY_KEYS.contains(&key)
}

impl PhysicalParams {
    /// The parameter table of the reference setup.
    pub fn table1() -> Self {
        let tp = 2.0 * PI;
        PhysicalParams {
            laser_power: 3.0e5,
            optical_decay: tp * 8.2e5,
            cavity_freq: tp * 2.818e14,
            detuning_norm: 0.2,
            mirror_mass: 7.71e-3,
            cavity_length: 9.81,
            beam_length: 1.0,
            offset: 0.15,
            pendulum_freq: tp * 4.99,
            moment_of_inertia: 4.5e-5,
            flexural_rigidity: 3.583e-6,
            loss_factor: 1.0e-3,
            beam_density: 1.72e-8,
            coupling: tp * 4.639e13,
            bath_temp: 300.0,
            mech_decay: tp * 4.11e-7,
            mech_decay_rot: tp * 1.717e-6,
            feedback_decay: tp * 6.875e-3,
            thermal_photons: 0.0,
            detection_eff: 1.0,
            gravity: 980.0,
            hbar: 1.05e-27,
            boltzmann: 1.38e-16,
            speed_of_light: 2.998e10,
            nc_variant: NcVariant::Exact,
            noise_eval: NoiseEval::Pendulum,
        }
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        Some(match key {
            "laser_power" => self.laser_power,
            "optical_decay" => self.optical_decay,
            "cavity_freq" => self.cavity_freq,
            "detuning_norm" => self.detuning_norm,
            "mirror_mass" => self.mirror_mass,
            "cavity_length" => self.cavity_length,
            "beam_length" => self.beam_length,
            "offset" => self.offset,
            "pendulum_freq" => self.pendulum_freq,
            "moment_of_inertia" => self.moment_of_inertia,
            "flexural_rigidity" => self.flexural_rigidity,
            "loss_factor" => self.loss_factor,
            "beam_density" => self.beam_density,
            "coupling" => self.coupling,
            "bath_temp" => self.bath_temp,
            "mech_decay" => self.mech_decay,
            "mech_decay_rot" => self.mech_decay_rot,
            "feedback_decay" => self.feedback_decay,
            "thermal_photons" => self.thermal_photons,
            "detection_eff" => self.detection_eff,
            "gravity" => self.gravity,
            "hbar" => self.hbar,
            "boltzmann" => self.boltzmann,
            "speed_of_light" => self.speed_of_light,
            _ => return None,
        })
    }

    /// Set a numeric field by its config key. Values are taken as stored
    /// (angular units); unit conversion is the caller's business.
    pub fn set(&mut self, key: &str, v: f64) -> Result<(), Error> {
        let slot = match key {
            "laser_power" => &mut self.laser_power,
            "optical_decay" => &mut self.optical_decay,
            "cavity_freq" => &mut self.cavity_freq,
            "detuning_norm" => &mut self.detuning_norm,
            "mirror_mass" => &mut self.mirror_mass,
            "cavity_length" => &mut self.cavity_length,
            "beam_length" => &mut self.beam_length,
            "offset" => &mut self.offset,
            "pendulum_freq" => &mut self.pendulum_freq,
            "moment_of_inertia" => &mut self.moment_of_inertia,
            "flexural_rigidity" => &mut self.flexural_rigidity,
            "loss_factor" => &mut self.loss_factor,
            "beam_density" => &mut self.beam_density,
            "coupling" => &mut self.coupling,
            "bath_temp" => &mut self.bath_temp,
            "mech_decay" => &mut self.mech_decay,
            "mech_decay_rot" => &mut self.mech_decay_rot,
            "feedback_decay" => &mut self.feedback_decay,
            "thermal_photons" => &mut self.thermal_photons,
            "detection_eff" => &mut self.detection_eff,
            "gravity" => &mut self.gravity,
            "hbar" => &mut self.hbar,
            "boltzmann" => &mut self.boltzmann,
            "speed_of_light" => &mut self.speed_of_light,
            _ => return Err(Error::Invalid("unknown key")),
        };
        *slot = v;
        Ok(())
    }

    pub fn with_delta(&self, delta: f64) -> Self {
        PhysicalParams { detuning_norm: delta, ..self.clone() }
    }

    pub fn with_eta(&self, eta: f64) -> Self {
        PhysicalParams { detection_eff: eta, ..self.clone() }
    }

    /// Check the invariants. Returns advisory warnings on success.
    pub fn validate(&self) -> Result<Vec<&'static str>, Error> {
        for key in NUMERIC_KEYS {
            let v = self.get(key).unwrap_or(f64::NAN);
            if !v.is_finite() {
                return Err(Error::Invalid(key));
            }
            match key {
                "detuning_norm" => {}
                "thermal_photons" => {
                    if v < 0.0 {
                        return Err(Error::OutOfRange(key));
                    }
                }
                "detection_eff" => {
                    if !(0.0..=1.0).contains(&v) {
                        return Err(Error::OutOfRange(key));
                    }
                }
                "loss_factor" => {
                    if v <= 0.0 {
                        return Err(Error::NonPositive(key));
                    }
                    if v >= 1.0 {
                        return Err(Error::OutOfRange(key));
                    }
                }
                _ => {
                    if v <= 0.0 {
                        return Err(Error::NonPositive(key));
                    }
                }
            }
        }
        let mut warnings = Vec::new();
        let d = self.derive();
        if d.beta * self.beam_length < 100.0 {
            warnings.push("beta*beam_length < 100: steady-state approximations degrade");
        }
        Ok(warnings)
    }

    pub fn derive(&self) -> DerivedConstants {
        let tension = self.mirror_mass * self.gravity;
        let beta = libm::sqrt(tension / self.flexural_rigidity);
        let drive_sq = 2.0 * self.laser_power * self.optical_decay / (self.hbar * self.cavity_freq);
        DerivedConstants {
            tension,
            beta,
            drive_sq,
            drive_amplitude: libm::sqrt(drive_sq),
            detuning: -2.0 * self.optical_decay * self.detuning_norm,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedConstants {
    /// T = M g (dyn)
    pub tension: f64,
    /// β = √(T/E₀I) (1/cm)
    pub beta: f64,
    /// 𝓔² = 2Pκ/(ℏω₀) (1/s)
    pub drive_sq: f64,
    pub drive_amplitude: f64,
    /// Δ = −2κδ (rad/s)
    pub detuning: f64,
}

pub fn derive_constants(p: &PhysicalParams) -> DerivedConstants {
    p.derive()
}
