//! Conditional covariances by residues, with a quadrature oracle.
//!
//! An entry is (1/2π)∫Re[E[e_A e_B*]]dω for the estimation errors
//! e_t = t − H_t X. With the optimal filter this collapses to S_AB − G_A G_B*
//! over |F|², whose poles are those of F alone.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex;
use num_traits::Zero;

use crate::dd::{cabs, to_c64, Cdd, Dd};
use crate::poly::{eval_factored, Poly};
use crate::quadrature::{integrate_even, QuadResult, QuadSettings};
use crate::residue::{real_line_integral, Factored};
use crate::spectra::{ModelKind, Plant, SpectralModel, Target};
use crate::wiener::Synthesis;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Pendulum,
    Rotational,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "pendulum" => Some(Mode::Pendulum),
            "rotational" => Some(Mode::Rotational),
            _ => None,
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            Mode::Pendulum => "pendulum",
            Mode::Rotational => "rotational",
        }
    }
    fn targets(self) -> (Target, Target) {
        match self {
            Mode::Pendulum => (Target::Q, Target::P),
            Mode::Rotational => (Target::Phi, Target::Pi),
        }
    }
}

/// Symmetric 2×2 covariance (position-like, momentum-like).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovMat2 {
    pub v11: f64,
    pub v12: f64,
    pub v22: f64,
    pub mode: Mode,
}

impl CovMat2 {
    pub fn identity(mode: Mode) -> Self {
        CovMat2 { v11: 1.0, v12: 0.0, v22: 1.0, mode }
    }

    pub fn det(&self) -> f64 {
        self.v11 * self.v22 - self.v12 * self.v12
    }

    pub fn trace(&self) -> f64 {
        self.v11 + self.v22
    }

    /// (smaller, larger) eigenvalue
    pub fn eigenvalues(&self) -> (f64, f64) {
        let m = 0.5 * self.trace();
        let r = libm::hypot(0.5 * (self.v11 - self.v22), self.v12);
        (m - r, m + r)
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        let (lo, hi) = self.eigenvalues();
        lo >= -tol * hi.abs().max(1e-300)
    }

    /// Vacuum-normalized copy: diag(2mω/ℏ, 2/(ℏmω)), cross 2/ℏ, where
    /// (m, ω) is (M, ω_AR) for the pendulum and (J, Δ_BR) for the rotation.
    pub fn normalized(&self, mass_like: f64, freq: f64, hbar: f64) -> CovMat2 {
        CovMat2 {
            v11: self.v11 * 2.0 * mass_like * freq / hbar,
            v12: self.v12 * 2.0 / hbar,
            v22: self.v22 * 2.0 / (hbar * mass_like * freq),
            mode: self.mode,
        }
    }

    /// Inverse of `normalized`.
    pub fn denormalized(&self, mass_like: f64, freq: f64, hbar: f64) -> CovMat2 {
        CovMat2 {
            v11: self.v11 * hbar / (2.0 * mass_like * freq),
            v12: self.v12 * hbar / 2.0,
            v22: self.v22 * hbar * mass_like * freq / 2.0,
            mode: self.mode,
        }
    }
}

/// Normalization (mass-like, frequency) of each mode for a plant.
pub fn mode_scale(plant: &Plant, mode: Mode) -> (f64, f64) {
    match mode {
        Mode::Pendulum => (plant.mass, libm::sqrt(plant.a)),
        Mode::Rotational => (plant.inertia, libm::sqrt(plant.b)),
    }
}

/// Raw (CGS) pendulum and rotational covariances. The rotational block is
/// absent for the point-mirror model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovPair {
    pub pendulum: CovMat2,
    pub rotational: Option<CovMat2>,
}

impl CovPair {
    pub fn normalized(&self, plant: &Plant, hbar: f64) -> CovPair {
        let (m, w) = mode_scale(plant, Mode::Pendulum);
        let pendulum = self.pendulum.normalized(m, w, hbar);
        let rotational = self.rotational.map(|r| {
            let (j, d) = mode_scale(plant, Mode::Rotational);
            r.normalized(j, d, hbar)
        });
        CovPair { pendulum, rotational }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Backend {
    #[default]
    Residue,
    Quadrature,
}

impl Backend {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "residue" => Some(Backend::Residue),
            "quadrature" => Some(Backend::Quadrature),
            _ => None,
        }
    }
    pub fn name(self) -> &'static str {
        match self {
            Backend::Residue => "residue",
            Backend::Quadrature => "quadrature",
        }
    }
}

/// Which upper-half-plane poles enter the residue sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PoleSelector {
    #[default]
    All,
    DiscardRotational,
}

impl PoleSelector {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "none" | "all" => Some(PoleSelector::All),
            "rotational" => Some(PoleSelector::DiscardRotational),
            _ => None,
        }
    }
}

/// |Re| threshold √(Δ_BR·ω_0+) separating rotational-like poles.
pub fn rotational_threshold(plant: &Plant) -> f64 {
    let (a, b, c) = (plant.a, plant.b, plant.c);
    let w0p = libm::sqrt(0.5 * (a + b + libm::sqrt((a - b) * (a - b) + 4.0 * c)));
    libm::sqrt(libm::sqrt(b) * w0p)
}

/// Classify poles; returns a flag per pole (true = rotational-like).
pub fn classify_poles(plant: &Plant, poles: &[Cdd]) -> Result<Vec<bool>, Error> {
    let thr = rotational_threshold(plant);
    let flags: Vec<bool> = poles.iter().map(|z| z.re.to_f64().abs() < thr).collect();
    let rot_max = poles.iter().zip(&flags).filter(|(_, &f)| f).map(|(z, _)| z.re.to_f64().abs()).fold(0.0, f64::max);
    let pen_min = poles.iter().zip(&flags).filter(|(_, &f)| !f).map(|(z, _)| z.re.to_f64().abs()).fold(f64::INFINITY, f64::min);
    if flags.iter().any(|&f| f) && pen_min.is_finite() && pen_min < 2.0 * rot_max {
        return Err(Error::AmbiguousPoles);
    }
    Ok(flags)
}

// Only the mechanical poles (roots of F*) are classified; filter poles stay.
fn keep_set(model: &SpectralModel, poles: &[Cdd], sel: PoleSelector) -> Result<Vec<bool>, Error> {
    match sel {
        PoleSelector::All => Ok(vec![true; poles.len()]),
        PoleSelector::DiscardRotational => {
            let mech: Vec<Cdd> = model.f_roots.iter().map(|r| r.conj()).collect();
            let rot = classify_poles(&model.plant, &mech)?;
            Ok(poles
                .iter()
                .map(|z| !mech.iter().zip(&rot).any(|(m, &r)| r && m.re == z.re && m.im == z.im))
                .collect())
        }
    }
}

/// True when two distinct upper-half-plane poles sit within `rel` of each other.
pub fn near_degenerate(poles: &[Cdd], rel: f64) -> bool {
    let up: Vec<Cdd> = poles.iter().copied().filter(|z| z.im > Dd::ZERO).collect();
    for i in 0..up.len() {
        for j in i + 1..up.len() {
            let d = cabs(up[i] - up[j]).to_f64();
            let s = cabs(up[i]).to_f64().max(cabs(up[j]).to_f64());
            if d > 0.0 && d < rel * s {
                return true;
            }
        }
    }
    false
}

/// Filter bank H_t = numer_t/(lead·Π(ω − r)).
#[derive(Clone, Debug)]
pub struct FilterSet {
    pub numer: [Poly; 4],
    pub lead: Cdd,
    pub roots: Vec<Cdd>,
}

impl FilterSet {
    pub fn from_synthesis(s: &Synthesis) -> FilterSet {
        let c1 = Dd::ONE / s.model.consts.c1;
        let numer = Target::ALL.map(|t| s.numerator(t).causal.scale_re(c1));
        FilterSet { numer, lead: s.factor.lead, roots: s.factor.roots.clone() }
    }

    pub fn zero(model: &SpectralModel) -> FilterSet {
        FilterSet {
            numer: [Poly::zero(), Poly::zero(), Poly::zero(), Poly::zero()],
            lead: model.f.lead(),
            roots: model.f_roots.clone(),
        }
    }

    pub fn eval(&self, t: Target, z: Cdd) -> Cdd {
        let n = &self.numer[t as usize];
        if n.is_zero() {
            return Cdd::zero();
        }
        n.eval(z) / eval_factored(self.lead, &self.roots, z)
    }

    fn den_poly(&self) -> Poly {
        Poly::from_roots(self.lead, &self.roots)
    }
}

fn ff_bar(model: &SpectralModel) -> Factored {
    let f = Factored::new(model.f.lead(), model.f_roots.clone());
    f.mul(&f.conj())
}

fn upper(poles: &[Cdd]) -> Vec<Cdd> {
    poles.iter().copied().filter(|z| z.im > Dd::ZERO).collect()
}

fn keep_fn<'a>(ups: &'a [Cdd], keep: &'a [bool]) -> impl Fn(Cdd) -> bool + 'a {
    move |z: Cdd| {
        ups.iter().zip(keep).find(|(u, _)| u.re == z.re && u.im == z.im).map(|(_, &k)| k).unwrap_or(true)
    }
}

/// Optimal-filter entry (1/2π)∫Re[S_AB − G_A G_B*]dω by residues.
pub fn optimal_entry(s: &Synthesis, a: Target, b: Target, sel: PoleSelector) -> Result<f64, Error> {
    let m = &s.model;
    let pa = &s.numerator(a).causal;
    let pb = &s.numerator(b).causal;
    let num = &m.auto_numerator(a, b) - &(pa * &pb.conj()).scale_re(Dd::ONE / m.consts.c1);
    let den = ff_bar(m);
    let ups = upper(&den.roots);
    let keep = keep_set(m, &ups, sel)?;
    let v = real_line_integral(&num, &den, keep_fn(&ups, &keep))?;
    Ok((v.re / (Dd::PI * 2.0)).to_f64())
}

/// Entry for an arbitrary filter bank applied to `model`:
/// S_AB − H_B* S_AX − H_A S_XB + H_A H_B* S_XX over F F* D D*.
pub fn filtered_entry(
    model: &SpectralModel,
    filt: &FilterSet,
    a: Target,
    b: Target,
    sel: PoleSelector,
) -> Result<f64, Error> {
    let d = filt.den_poly();
    let db = d.conj();
    let ha = &filt.numer[a as usize];
    let hb = &filt.numer[b as usize];
    let ka = model.k_hat(a);
    let kb = model.k_hat(b);
    let t1 = &(&model.auto_numerator(a, b) * &d) * &db;
    let t2 = &(&hb.conj() * &ka) * &d;
    let t3 = &(ha * &kb.conj()) * &db;
    let t4 = (&(ha * &hb.conj()) * &model.j_poly()).scale_re(Dd::new(model.consts.c1));
    let num = &(&t1 - &t2) - &(&t3 - &t4);
    let df = Factored::new(filt.lead, filt.roots.clone());
    let den = ff_bar(model).mul(&df.mul(&df.conj()));
    let ups = upper(&den.roots);
    let keep = keep_set(model, &ups, sel)?;
    let v = real_line_integral(&num, &den, keep_fn(&ups, &keep))?;
    Ok((v.re / (Dd::PI * 2.0)).to_f64())
}

/// Error-spectrum integrand Re Σ_n E_A,n E_B,n* v_n with E = T_t − H_t·T_X.
pub fn error_integrand(model: &SpectralModel, filt: &FilterSet, a: Target, b: Target, w: Dd) -> f64 {
    let tr = model.transfers(w);
    let z = Complex::new(w, Dd::ZERO);
    let ha = filt.eval(a, z);
    let hb = filt.eval(b, z);
    let ta = tr.target(a);
    let tb = tr.target(b);
    let mut ea = [Cdd::zero(); 4];
    let mut eb = [Cdd::zero(); 4];
    for n in 0..4 {
        ea[n] = ta[n] - ha * tr.x[n];
        eb[n] = tb[n] - hb * tr.x[n];
    }
    model.correlate(&ea, &eb).re.to_f64()
}

fn quad_poles(model: &SpectralModel, filt: &FilterSet) -> Vec<(Dd, Dd)> {
    model.f_roots.iter().chain(filt.roots.iter()).map(|r| (r.re, r.im.abs())).collect()
}

/// (1/2π)∫ error spectrum, by adaptive quadrature plus an analytic tail.
pub fn quadrature_entry(
    model: &SpectralModel,
    filt: &FilterSet,
    a: Target,
    b: Target,
    qs: &QuadSettings,
) -> QuadResult {
    let poles = quad_poles(model, filt);
    let f = |w: Dd| error_integrand(model, filt, a, b, w);
    let mut r = integrate_even(&f, &poles, qs);
    let s = 1.0 / (2.0 * core::f64::consts::PI);
    r.value *= s;
    r.error *= s;
    r.tail *= s;
    r
}

fn entries(mode: Mode, mut f: impl FnMut(Target, Target) -> Result<f64, Error>) -> Result<CovMat2, Error> {
    let (x, y) = mode.targets();
    Ok(CovMat2 { v11: f(x, x)?, v12: f(x, y)?, v22: f(y, y)?, mode })
}

fn pair(kind: ModelKind, mut f: impl FnMut(Mode) -> Result<CovMat2, Error>) -> Result<CovPair, Error> {
    let pendulum = f(Mode::Pendulum)?;
    let rotational = match kind {
        ModelKind::TwoMode => Some(f(Mode::Rotational)?),
        ModelKind::OneMode => None,
    };
    Ok(CovPair { pendulum, rotational })
}

/// Conditional covariances (V_c, V_r) of the optimal filter, raw CGS.
/// Near-degenerate pole pairs route the whole computation to quadrature.
pub fn conditional_covariance(s: &Synthesis, backend: Backend, sel: PoleSelector) -> Result<CovPair, Error> {
    let den = ff_bar(&s.model);
    let degenerate = near_degenerate(&den.roots, 1e-6);
    if backend == Backend::Quadrature || degenerate {
        if sel != PoleSelector::All {
            return Err(Error::Invalid("pole selection needs the residue backend"));
        }
        let filt = FilterSet::from_synthesis(s);
        let qs = QuadSettings::default();
        return pair(s.model.plant.kind, |m| {
            entries(m, |a, b| Ok(quadrature_entry(&s.model, &filt, a, b, &qs).value))
        });
    }
    pair(s.model.plant.kind, |m| entries(m, |a, b| optimal_entry(s, a, b, sel)))
}

/// Covariances of `model` estimated through a possibly mismatched filter bank.
pub fn mismatched_covariance(
    model: &SpectralModel,
    filt: &FilterSet,
    backend: Backend,
    sel: PoleSelector,
) -> Result<CovPair, Error> {
    let mut all = model.f_roots.clone();
    all.extend(model.f_roots.iter().map(|r| r.conj()));
    all.extend(filt.roots.iter().copied());
    all.extend(filt.roots.iter().map(|r| r.conj()));
    let degenerate = near_degenerate(&all, 1e-6);
    if backend == Backend::Quadrature || degenerate {
        if sel != PoleSelector::All {
            return Err(Error::Invalid("pole selection needs the residue backend"));
        }
        let qs = QuadSettings::default();
        return pair(model.plant.kind, |m| {
            entries(m, |a, b| Ok(quadrature_entry(model, filt, a, b, &qs).value))
        });
    }
    pair(model.plant.kind, |m| entries(m, |a, b| filtered_entry(model, filt, a, b, sel)))
}

/// Unconditional covariance (no measurement record used).
pub fn unconditional_covariance(model: &SpectralModel) -> Result<CovPair, Error> {
    let den = ff_bar(model);
    pair(model.plant.kind, |m| {
        entries(m, |a, b| {
            let v = real_line_integral(&model.auto_numerator(a, b), &den, |_| true)?;
            Ok((v.re / (Dd::PI * 2.0)).to_f64())
        })
    })
}

/// Integrand-level mean-square error ∫Re[S_tt − 2Re(H*S_Xt) + |H|²S_XX]
/// for a single target, by residues.
pub fn mse(model: &SpectralModel, filt: &FilterSet, t: Target) -> Result<f64, Error> {
    filtered_entry(model, filt, t, t, PoleSelector::All)
}

/// Complex value of a filter bank at real ω, for reporting.
pub fn filter_value(filt: &FilterSet, t: Target, w: f64) -> Complex<f64> {
    to_c64(filt.eval(t, Complex::new(Dd::new(w), Dd::ZERO)))
}
