//! Noise model, transfer functions and symmetrized spectral densities.
//!
//! Every response is a polynomial over the mechanical susceptibility F(ω):
//! the mode variable t responds to the force channels as n_t(ω)/F(ω) times a
//! per-channel drive. The output quadrature adds the cavity reflection r_n and
//! a back-action term −g·δq. Spectra use S_AB = Σ_n T_A,n conj(T_B,n)⟨n²⟩.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex;

use crate::dd::{cdd_re, Cdd, Dd};
use crate::dynamics::{couplings_lowfreq, normal_modes_from, optical_spring};
use crate::params::{NoiseEval, PhysicalParams};
use crate::poly::Poly;
use crate::roots::roots;
use crate::steady::photon_number;
use crate::Error;

type C64 = Complex<f64>;

/// Input noise strengths. `xi` is the force spectral strength in CGS
/// (g² cm² s⁻³); the optical ones are in vacuum units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseVariances {
    pub x_in: f64,
    pub y_in: f64,
    pub x_prime: f64,
    pub xi: f64,
    pub nbar_p: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Q,
    P,
    Phi,
    Pi,
}

impl Target {
    pub const ALL: [Target; 4] = [Target::Q, Target::P, Target::Phi, Target::Pi];

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "dq" | "q" => Some(Target::Q),
            "dp" | "p" => Some(Target::P),
            "dphi" | "phi" => Some(Target::Phi),
            "dpi" | "pi" => Some(Target::Pi),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Target::Q => "dq",
            Target::P => "dp",
            Target::Phi => "dphi",
            Target::Pi => "dpi",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    TwoMode,
    OneMode,
}

/// Mechanical plant: F(ω) = −(ω² + iγω − a)(ω² − b) + c for the two-mode
/// model, F_m(ω) = a − iγω − ω² for the point mirror.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Plant {
    pub kind: ModelKind,
    /// ω_AR² (or ω_m²)
    pub a: f64,
    /// Δ_BR²
    pub b: f64,
    /// Δ_AR²·ω_BR²
    pub c: f64,
    pub omega_br2: f64,
    pub gamma: f64,
    pub mass: f64,
    pub inertia: f64,
}

/// Cavity-side coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Optics {
    pub kappa: f64,
    pub detuning: f64,
    pub eta: f64,
    /// drive of the force channel per unit input quadrature, ℏG₀√n_c√(2κ)/(M(κ²+Δ²))
    pub d: f64,
    /// back-action gain of δq in the output, 2G₀√n_cΔ√(2κ)/(κ²+Δ²)
    pub g: f64,
    pub rx: f64,
    pub ry: f64,
}

/// C₁, C₂, C₃ of S_XX and the cross constants of S_tX.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralConstants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c1c: f64,
    pub c2c: f64,
    /// total force strength per M², d²(κ²⟨x²⟩+Δ²⟨y²⟩) + ⟨ξ²⟩/M²
    pub n0: f64,
}

/// Rational symmetrized spectrum num(ω)/(F(ω)F(ω)*).
#[derive(Clone, Debug)]
pub struct RationalSpectrum {
    pub num: Poly,
    pub den: Poly,
}

impl RationalSpectrum {
    pub fn eval(&self, w: f64) -> C64 {
        let z = cdd_re(w);
        crate::dd::to_c64(self.num.eval(z) / self.den.eval(z))
    }
}

/// Transfer coefficients at one frequency, channels ordered
/// [x_in, y_in, ξ, x′].
#[derive(Clone, Copy, Debug)]
pub struct Transfers {
    pub q: [Cdd; 4],
    pub p: [Cdd; 4],
    pub phi: [Cdd; 4],
    pub pi: [Cdd; 4],
    pub x: [Cdd; 4],
}

impl Transfers {
    pub fn target(&self, t: Target) -> &[Cdd; 4] {
        match t {
            Target::Q => &self.q,
            Target::P => &self.p,
            Target::Phi => &self.phi,
            Target::Pi => &self.pi,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpectralModel {
    pub plant: Plant,
    pub optics: Optics,
    pub noise: NoiseVariances,
    pub consts: SpectralConstants,
    pub f: Poly,
    pub f_roots: Vec<Cdd>,
    /// numerator of δq over F: ω² − Δ_BR² (two-mode) or 1
    pub u: Poly,
}

/// Thermal force strength MℏΩγ_m(2n̄_p+1) for a decay rate Γ_eff entering
/// n̄_p = k_BT₀Γ_eff/(ℏΩγ_m) − 1/2. n̄_p is floored at zero so the strength
/// never drops below the MℏΩγ_m vacuum level.
pub fn white_force_strength(p: &PhysicalParams, gamma_eff: f64) -> (f64, f64) {
    let om = p.pendulum_freq;
    let gm = p.feedback_decay;
    let nbar = (p.boltzmann * p.bath_temp * gamma_eff / (p.hbar * om * gm) - 0.5).max(0.0);
    (p.mirror_mass * p.hbar * om * gm * (2.0 * nbar + 1.0), nbar)
}

/// Mℏγ_mω coth(ℏωγ_m/(2k_BT₀Γ_r(ω))), the unflattened form.
pub fn coth_force_strength(p: &PhysicalParams, omega: f64) -> f64 {
    let gr = p.mech_decay_rot * p.pendulum_freq / omega;
    let gm = p.feedback_decay;
    let x = p.hbar * omega * gm / (2.0 * p.boltzmann * p.bath_temp * gr);
    let coth = if x > 20.0 {
        1.0
    } else if x < 1e-4 {
        1.0 / x + x / 3.0
    } else {
        1.0 / libm::tanh(x)
    };
    p.mirror_mass * p.hbar * gm * omega * coth
}

/// Flat strength with Γ_r evaluated at ω (for comparison with the coth form).
pub fn white_force_strength_at(p: &PhysicalParams, omega: f64) -> f64 {
    white_force_strength(p, p.mech_decay_rot * p.pendulum_freq / omega).0
}

/// Noise variances of the two-mode model. The structural-damping rate is
/// taken at the pendulum normal mode, or at Ω with `NoiseEval::Table`.
pub fn thermal_noise_variance(p: &PhysicalParams) -> Result<NoiseVariances, Error> {
    let w_eval = match p.noise_eval {
        NoiseEval::Table => p.pendulum_freq,
        NoiseEval::Pendulum => {
            let mc = couplings_lowfreq(p);
            normal_modes_from(p, &mc)?.pendulum()
        }
    };
    let gr = p.mech_decay_rot * p.pendulum_freq / w_eval;
    let (xi, nbar) = white_force_strength(p, gr);
    let v = 2.0 * p.thermal_photons + 1.0;
    Ok(NoiseVariances { x_in: v, y_in: v, x_prime: 1.0, xi, nbar_p: nbar })
}

/// Noise of the point-mirror model with its bare decay Γ scaled by `n_mult`.
pub fn one_mode_noise(p: &PhysicalParams, n_mult: f64) -> NoiseVariances {
    let wm = libm::sqrt(p.pendulum_freq * p.pendulum_freq + optical_spring(p));
    let w_eval = match p.noise_eval {
        NoiseEval::Table => p.pendulum_freq,
        NoiseEval::Pendulum => wm,
    };
    let om = p.pendulum_freq;
    let gm = p.feedback_decay;
    let gam = n_mult * p.mech_decay * om / w_eval;
    let pin2 = 2.0 * p.boltzmann * p.bath_temp * gam / (p.hbar * om * gm) + 1.0;
    let v = 2.0 * p.thermal_photons + 1.0;
    NoiseVariances {
        x_in: v,
        y_in: v,
        x_prime: 1.0,
        xi: p.hbar * p.mirror_mass * om * gm * pin2,
        nbar_p: 0.5 * (pin2 - 1.0),
    }
}

pub fn optics(p: &PhysicalParams) -> Optics {
    let dc = p.derive();
    let nc = photon_number(p);
    let k = p.optical_decay;
    let dl = dc.detuning;
    let kd = k * k + dl * dl;
    let sq = libm::sqrt(nc) * libm::sqrt(2.0 * k);
    Optics {
        kappa: k,
        detuning: dl,
        eta: p.detection_eff,
        d: p.hbar * p.coupling * sq / (p.mirror_mass * kd),
        g: 2.0 * p.coupling * sq * dl / kd,
        rx: (dl * dl - k * k) / kd,
        ry: -2.0 * k * dl / kd,
    }
}

pub fn spectral_constants(o: &Optics, n: &NoiseVariances, mass: f64) -> SpectralConstants {
    let eta = o.eta;
    let se = libm::sqrt(eta);
    let c1 = eta * (o.rx * o.rx * n.x_in + o.ry * o.ry * n.y_in) + (1.0 - eta) * n.x_prime;
    let c1c = se * o.d * (o.kappa * o.rx * n.x_in + o.detuning * o.ry * n.y_in);
    let n0 = o.d * o.d * (o.kappa * o.kappa * n.x_in + o.detuning * o.detuning * n.y_in) + n.xi / (mass * mass);
    SpectralConstants {
        c1,
        c2: -se * o.g * c1c,
        c3: eta * o.g * o.g * n0,
        c1c,
        c2c: -se * o.g * n0,
        n0,
    }
}

impl Plant {
    pub fn two_mode(p: &PhysicalParams) -> Plant {
        let mc = couplings_lowfreq(p);
        Plant {
            kind: ModelKind::TwoMode,
            a: mc.omega_ar2,
            b: mc.delta_br2,
            c: mc.delta_ar2 * mc.omega_br2,
            omega_br2: mc.omega_br2,
            gamma: p.feedback_decay,
            mass: p.mirror_mass,
            inertia: p.moment_of_inertia,
        }
    }

    pub fn one_mode(p: &PhysicalParams) -> Plant {
        Plant {
            kind: ModelKind::OneMode,
            a: p.pendulum_freq * p.pendulum_freq + optical_spring(p),
            b: 0.0,
            c: 0.0,
            omega_br2: 0.0,
            gamma: p.feedback_decay,
            mass: p.mirror_mass,
            inertia: p.moment_of_inertia,
        }
    }

    pub fn f_poly(&self) -> Poly {
        let (a, b, c, g) = (Dd::new(self.a), Dd::new(self.b), Dd::new(self.c), Dd::new(self.gamma));
        let z = Dd::ZERO;
        match self.kind {
            ModelKind::TwoMode => Poly::new(vec![
                Complex::new(c - a * b, z),
                Complex::new(z, g * b),
                Complex::new(a + b, z),
                Complex::new(z, -g),
                Complex::new(-Dd::ONE, z),
            ]),
            ModelKind::OneMode => Poly::new(vec![
                Complex::new(a, z),
                Complex::new(z, -g),
                Complex::new(-Dd::ONE, z),
            ]),
        }
    }

    pub fn u_poly(&self) -> Poly {
        match self.kind {
            ModelKind::TwoMode => Poly::from_real(&[-self.b, 0.0, 1.0]),
            ModelKind::OneMode => Poly::from_real(&[1.0]),
        }
    }
}

impl SpectralModel {
    pub fn two_mode(p: &PhysicalParams) -> Result<Self, Error> {
        let noise = thermal_noise_variance(p)?;
        Self::from_parts(Plant::two_mode(p), optics(p), noise)
    }

    pub fn one_mode(p: &PhysicalParams, n_mult: f64) -> Result<Self, Error> {
        Self::from_parts(Plant::one_mode(p), optics(p), one_mode_noise(p, n_mult))
    }

    pub fn from_parts(plant: Plant, optics: Optics, noise: NoiseVariances) -> Result<Self, Error> {
        let f = plant.f_poly();
        let f_roots = roots(&f)?;
        if f_roots.iter().any(|r| !(r.im < Dd::ZERO)) {
            return Err(Error::Degenerate("susceptibility has a root with Im >= 0"));
        }
        let consts = spectral_constants(&optics, &noise, plant.mass);
        if !(consts.c1 > 0.0) {
            return Err(Error::Formulation("C1 must be positive"));
        }
        Ok(SpectralModel { plant, optics, noise, consts, f, f_roots, u: plant.u_poly() })
    }

    /// n_t(ω): the response of target t is n_t/F times the force drive.
    pub fn numerator(&self, t: Target) -> Poly {
        let w = Poly::omega();
        let (m, j) = (Dd::new(self.plant.mass), Dd::new(self.plant.inertia));
        match t {
            Target::Q => self.u.clone(),
            Target::P => (&w * &self.u).scale(Complex::new(Dd::ZERO, -m)),
            Target::Phi => Poly::from_real(&[-self.plant.omega_br2]),
            Target::Pi => w.scale(Complex::new(Dd::ZERO, j * self.plant.omega_br2)),
        }
    }

    /// conj-coefficient F̄, so that F̄(ω) = F(ω)* for real ω.
    pub fn f_bar(&self) -> Poly {
        self.f.conj()
    }

    /// J(ω) = |F|² + (C₂/C₁)u(F+F*) + (C₃/C₁)u², leading coefficient |lead F|².
    pub fn j_poly(&self) -> Poly {
        let c = &self.consts;
        let fb = self.f_bar();
        let ff = &self.f * &fb;
        let mix = &self.u * &(&self.f + &fb);
        let uu = &self.u * &self.u;
        &(&ff + &mix.scale_re(Dd::new(c.c2) / c.c1)) + &uu.scale_re(Dd::new(c.c3) / c.c1)
    }

    /// C₁c·n_t·(F* + (C₂c/C₁c)u) = n_t(C₁c F* + C₂c u): S_tX·|F|².
    pub fn k_hat(&self, t: Target) -> Poly {
        let c = &self.consts;
        let inner = &self.f_bar().scale_re(Dd::new(c.c1c)) + &self.u.scale_re(Dd::new(c.c2c));
        &self.numerator(t) * &inner
    }

    /// K(ω) normalized by C₁c (the form with leading factor u·F*).
    pub fn k_poly(&self, t: Target) -> Poly {
        self.k_hat(t).scale_re(Dd::ONE / self.consts.c1c)
    }

    /// S_AB·|F|² = n_A n̄_B N₀
    pub fn auto_numerator(&self, a: Target, b: Target) -> Poly {
        (&self.numerator(a) * &self.numerator(b).conj()).scale_re(Dd::new(self.consts.n0))
    }

    pub fn output_spectrum(&self) -> RationalSpectrum {
        RationalSpectrum {
            num: self.j_poly().scale_re(Dd::new(self.consts.c1)),
            den: &self.f * &self.f_bar(),
        }
    }

    pub fn cross_spectrum(&self, t: Target) -> RationalSpectrum {
        RationalSpectrum { num: self.k_hat(t), den: &self.f * &self.f_bar() }
    }

    pub fn mode_spectrum(&self, a: Target, b: Target) -> RationalSpectrum {
        RationalSpectrum { num: self.auto_numerator(a, b), den: &self.f * &self.f_bar() }
    }

    /// Per-channel drive of the force equation (per unit mass).
    pub fn drives(&self) -> [f64; 4] {
        let o = &self.optics;
        [o.d * o.kappa, o.d * o.detuning, 1.0 / self.plant.mass, 0.0]
    }

    pub fn variances(&self) -> [f64; 4] {
        [self.noise.x_in, self.noise.y_in, self.noise.xi, self.noise.x_prime]
    }

    /// F(ω) in factored form, accurate next to its roots.
    pub fn f_eval(&self, z: Cdd) -> Cdd {
        crate::poly::eval_factored(self.f.lead(), &self.f_roots, z)
    }

    pub fn transfers(&self, w: Dd) -> Transfers {
        let z = Complex::new(w, Dd::ZERO);
        let f = self.f_eval(z);
        let drv = self.drives();
        let o = &self.optics;
        let se = Dd::new(o.eta).sqrt();
        let sq1 = Dd::new(1.0 - o.eta).sqrt();
        let mut out = Transfers {
            q: [Cdd::new(Dd::ZERO, Dd::ZERO); 4],
            p: [Cdd::new(Dd::ZERO, Dd::ZERO); 4],
            phi: [Cdd::new(Dd::ZERO, Dd::ZERO); 4],
            pi: [Cdd::new(Dd::ZERO, Dd::ZERO); 4],
            x: [Cdd::new(Dd::ZERO, Dd::ZERO); 4],
        };
        let nq = self.numerator(Target::Q).eval(z) / f;
        let np = self.numerator(Target::P).eval(z) / f;
        let nf = self.numerator(Target::Phi).eval(z) / f;
        let ni = self.numerator(Target::Pi).eval(z) / f;
        let r = [Dd::new(o.rx), Dd::new(o.ry), Dd::ZERO, Dd::ZERO];
        for n in 0..4 {
            let dn = Dd::new(drv[n]);
            out.q[n] = nq * dn;
            out.p[n] = np * dn;
            out.phi[n] = nf * dn;
            out.pi[n] = ni * dn;
            out.x[n] = (Complex::new(r[n], Dd::ZERO) - out.q[n] * Dd::new(o.g)) * se;
        }
        out.x[3] = Complex::new(sq1, Dd::ZERO);
        out
    }

    /// Σ_n A_n conj(B_n) v_n
    pub fn correlate(&self, a: &[Cdd; 4], b: &[Cdd; 4]) -> Cdd {
        let v = self.variances();
        let mut acc = Cdd::new(Dd::ZERO, Dd::ZERO);
        for n in 0..4 {
            acc = acc + a[n] * b[n].conj() * Dd::new(v[n]);
        }
        acc
    }
}
