//! State metrics: purity, Wigner contours, two-mirror negativity, sweeps.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::covariance::{conditional_covariance, Backend, CovMat2, CovPair, Mode, PoleSelector};
use crate::onemode::{mismatched, FilterForm};
use crate::params::PhysicalParams;
use crate::spectra::{Plant, SpectralModel};
use crate::wiener::Synthesis;
use crate::Error;

/// 1/√det Ṽ of a vacuum-normalized covariance.
pub fn purity(v: &CovMat2) -> f64 {
    1.0 / libm::sqrt(v.det())
}

/// Purity with a physicality check: det Ṽ below 1 − tol is rejected.
pub fn purity_checked(v: &CovMat2, tol: f64) -> Result<f64, Error> {
    if !v.is_psd(1e-12) || v.det() < 1.0 - tol {
        return Err(Error::NotPsd);
    }
    Ok(purity(v))
}

#[derive(Clone, Debug, PartialEq)]
pub struct WignerEllipse {
    pub points: Vec<(f64, f64)>,
    pub semi_major: f64,
    pub semi_minor: f64,
    /// angle of the major axis from the first coordinate axis (rad)
    pub angle: f64,
}

impl WignerEllipse {
    pub fn area(&self) -> f64 {
        PI * self.semi_major * self.semi_minor
    }
}

/// The W = e⁻¹W_max contour, uᵀṼ⁻¹u = 2.
pub fn wigner_ellipse(v: &CovMat2, n_points: usize) -> WignerEllipse {
    let (lo, hi) = v.eigenvalues();
    let angle = 0.5 * libm::atan2(2.0 * v.v12, v.v11 - v.v22);
    let a = libm::sqrt(2.0 * hi);
    let b = libm::sqrt(2.0 * lo.max(0.0));
    let (s, c) = libm::sincos(angle);
    let points = (0..n_points)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n_points as f64;
            let (st, ct) = libm::sincos(t);
            let (x, y) = (a * ct, b * st);
            (c * x - s * y, s * x + c * y)
        })
        .collect();
    WignerEllipse { points, semi_major: a, semi_minor: b, angle }
}

/// Two-mode pipeline at (p, δ): synthesis plus normalized (V_c, V_r).
pub fn two_mode_state(p: &PhysicalParams, backend: Backend, sel: PoleSelector) -> Result<(CovPair, Plant), Error> {
    let model = SpectralModel::two_mode(p)?;
    let plant = model.plant;
    let s = Synthesis::new(model)?;
    let raw = conditional_covariance(&s, backend, sel)?;
    Ok((raw.normalized(&plant, p.hbar), plant))
}

pub fn purity_two_mode(p: &PhysicalParams) -> Result<f64, Error> {
    Ok(purity(&two_mode_state(p, Backend::Residue, PoleSelector::All)?.0.pendulum))
}

/// Normalized V′_c of the one-mode filter (Γ → NΓ) on the two-mode system.
pub fn mismatched_state(
    p: &PhysicalParams,
    n_mult: f64,
    form: FilterForm,
    sel: PoleSelector,
) -> Result<CovMat2, Error> {
    let raw = mismatched(p, n_mult, form, Backend::Residue, sel)?;
    let plant = Plant::two_mode(p);
    Ok(raw.normalized(&plant, p.hbar).pendulum)
}

pub fn purity_mismatched(p: &PhysicalParams, n_mult: f64, sel: PoleSelector) -> Result<f64, Error> {
    Ok(purity(&mismatched_state(p, n_mult, FilterForm::ClosedForm, sel)?))
}

/// N = Γ_r(Ω)/Γ(Ω), the dissipation ratio between the two models.
pub fn dissipation_ratio(p: &PhysicalParams) -> f64 {
    p.mech_decay_rot / p.mech_decay
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntanglementResult {
    pub delta: f64,
    pub kappa_ratio: f64,
    pub log_negativity: f64,
    pub nu_tilde: f64,
}

/// Smallest symplectic eigenvalue of the partial transpose of a two-mode
/// covariance [[A, C], [Cᵀ, B]] (vacuum = identity).
pub fn ppt_symplectic_min(a: [[f64; 2]; 2], b: [[f64; 2]; 2], c: [[f64; 2]; 2]) -> f64 {
    let d2 = |m: [[f64; 2]; 2]| m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let mut v = nalgebra::Matrix4::<f64>::zeros();
    for i in 0..2 {
        for j in 0..2 {
            v[(i, j)] = a[i][j];
            v[(i + 2, j + 2)] = b[i][j];
            v[(i, j + 2)] = c[i][j];
            v[(j + 2, i)] = c[i][j];
        }
    }
    let det = v.determinant();
    let dt = d2(a) + d2(b) + 2.0 * d2(c);
    let disc = (dt * dt - 4.0 * det).max(0.0);
    libm::sqrt(((dt - libm::sqrt(disc)) / 2.0).max(0.0))
}

/// How the common and differential states are put in common units before
/// recombination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NegativityUnits {
    /// each mode scaled by its own ω_AR, then recombined
    #[default]
    PerMode,
    /// recombined in physical units (any common scaling gives the same E_N)
    Physical,
}

/// Logarithmic negativity between two mirrors whose differential mode
/// sees (κ, δ) and whose common mode sees (κ/r, rδ) at fixed Δ.
pub fn negativity(
    p: &PhysicalParams,
    delta: f64,
    kappa_ratio: f64,
    units: NegativityUnits,
) -> Result<EntanglementResult, Error> {
    let minus = p.with_delta(delta);
    let mut plus = p.with_delta(delta * kappa_ratio);
    plus.optical_decay = p.optical_decay / kappa_ratio;
    let (vm, pm) = two_mode_state(&minus, Backend::Residue, PoleSelector::All)?;
    let (vp, pp) = two_mode_state(&plus, Backend::Residue, PoleSelector::All)?;
    let (vm, vp) = match units {
        NegativityUnits::PerMode => (vm.pendulum, vp.pendulum),
        NegativityUnits::Physical => {
            // back to CGS, then onto a shared reference scale
            let rm = vm.pendulum.denormalized(pm.mass, libm::sqrt(pm.a), p.hbar);
            let rp = vp.pendulum.denormalized(pp.mass, libm::sqrt(pp.a), p.hbar);
            let w = p.pendulum_freq;
            (rm.normalized(p.mirror_mass, w, p.hbar), rp.normalized(p.mirror_mass, w, p.hbar))
        }
    };
    let m2 = |v: &CovMat2| [[v.v11, v.v12], [v.v12, v.v22]];
    let (am, ap) = (m2(&vm), m2(&vp));
    let mut a = [[0.0; 2]; 2];
    let mut c = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            a[i][j] = 0.5 * (ap[i][j] + am[i][j]);
            c[i][j] = 0.5 * (ap[i][j] - am[i][j]);
        }
    }
    // partial transpose: p₂ → −p₂
    let mut bt = a;
    bt[0][1] = -bt[0][1];
    bt[1][0] = -bt[1][0];
    let mut ct = c;
    ct[0][1] = -ct[0][1];
    ct[1][1] = -ct[1][1];
    let nu = ppt_symplectic_min(a, bt, ct);
    Ok(EntanglementResult {
        delta,
        kappa_ratio,
        log_negativity: (-libm::log(nu)).max(0.0),
        nu_tilde: nu,
    })
}

/// Purity of V′_c with the discarded-pole filter over a grid of N.
pub fn nscan(p: &PhysicalParams, ns: &[f64], sel: PoleSelector) -> Result<Vec<(f64, f64)>, Error> {
    ns.iter().map(|&n| Ok((n, purity_mismatched(p, n, sel)?))).collect()
}

/// Evenly spaced grid a..=b with n points.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Index of the largest value and whether it is strictly interior.
pub fn interior_argmax(ys: &[f64]) -> (usize, bool) {
    let mut best = 0;
    for (i, y) in ys.iter().enumerate() {
        if *y > ys[best] {
            best = i;
        }
    }
    (best, best > 0 && best + 1 < ys.len())
}

pub fn mode_of(v: &CovMat2) -> Mode {
    v.mode
}
