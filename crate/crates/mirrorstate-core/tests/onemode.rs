use mirrorstate_core::analysis::{purity, purity_checked};
use mirrorstate_core::covariance::*;
use mirrorstate_core::dd::{cdd, to_c64};
use mirrorstate_core::onemode::*;
use mirrorstate_core::spectra::{one_mode_noise, Plant, SpectralModel, Target};
use mirrorstate_core::wiener::Synthesis;
use mirrorstate_core::PhysicalParams;
use num_complex::Complex;
use proptest::prelude::*;
use std::f64::consts::PI;

type C64 = Complex<f64>;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn om(p: &PhysicalParams) -> OneModeParams {
    OneModeParams::new(&one_mode_model(p, 1.0).unwrap(), 1.0, p).unwrap()
}

/// Causal numerators solved symbolically (sympy) for the one-mode plant:
/// (Ẽ, F̃, ω and constant coefficients of the δp numerator over M).
struct Exact {
    e: C64,
    f: C64,
    p1: C64,
    p0: C64,
}

fn exact(o: &OneModeParams, m: f64) -> Exact {
    let (a, g, gp, o2) = (o.omega_m2, o.gamma_m, o.gamma_prime, o.omega_prime2);
    let k = o.omega_tilde2 - a;
    let den = gp * gp * a + gp * o2 * g + gp * a * g + o2 * o2 - 2.0 * o2 * a + o2 * g * g + a * a;
    let e = C64::new(0.0, -(gp * k - 2.0 * o2 * g + 2.0 * a * g + g * k) / den);
    let f = C64::new((2.0 * gp * a * g + gp * g * k + o2 * k + 2.0 * a * g * g - a * k + g * g * k) / den, 0.0);
    let p1 = C64::new(0.0, m * (-2.0 * gp * a * g - 2.0 * o2 * g * g - o2 * k + a * k) / den);
    let p0 = C64::new(0.0, -m * a) * e;
    Exact { e, f, p1, p0 }
}

fn fp(o: &OneModeParams, w: f64) -> C64 {
    C64::new(o.omega_prime2 - w * w, -o.gamma_prime * w)
}

#[test]
fn reference_factor() {
    // mpmath from the reference constants
    let p = PhysicalParams::table1();
    let (g, o2) = one_mode_factorize(&p, 1.0).unwrap();
    assert!(rel(g, 17010.05903534622) < 1e-12);
    assert!(rel(o2, 84111131.59975868) < 1e-12);
    assert!(rel(one_mode_effective(&p) / (2.0 * PI), 1455.486615288429) < 1e-12);
    assert_eq!(one_mode_effective(&p.with_delta(0.0)), p.pendulum_freq);
    assert!(one_mode_effective(&p.with_delta(0.05)) > p.pendulum_freq);
}

#[test]
fn factor_roots_decay_at_half_rate() {
    let p = PhysicalParams::table1();
    let o = om(&p);
    let fs = one_mode_filters(&p, 1.0, FilterForm::ClosedForm).unwrap();
    for r in &fs.roots {
        assert!(rel(r.im.to_f64(), -o.gamma_prime / 2.0) < 1e-12);
    }
    assert!(o.gamma_prime > 0.0 && o.omega_prime2 > 0.0);
}

#[test]
fn no_measurement_leaves_the_plant() {
    let p = PhysicalParams::table1().with_eta(0.0);
    let o = om(&p);
    assert!(rel(o.omega_prime2, o.omega_m2) < 1e-14);
    // Γ′² = γ_m² − 2ω_m² + 2Ω′² cancels about eleven digits
    assert!(rel(o.gamma_prime, o.gamma_m) < 1e-4);
}

#[test]
fn generic_backend_matches_exact_numerators() {
    for d in [0.05, 0.2, 0.8] {
        let p = PhysicalParams::table1().with_delta(d);
        let o = om(&p);
        let x = exact(&o, p.mirror_mass);
        let r = o.c1c / o.c1;
        for k in 0..200 {
            let w = 2.0 * PI * (1.0 + 20.0 * k as f64);
            let (hq, hp) = one_mode_filter_values(&p, 1.0, FilterForm::Generic, w).unwrap();
            let eq = (x.e * w + x.f) * r / fp(&o, w);
            let ep = (x.p1 * w + x.p0) * r / fp(&o, w);
            assert!((hq - eq).norm() < 1e-10 * eq.norm(), "δ={d} ω={w}");
            assert!((hp - ep).norm() < 1e-10 * ep.norm(), "δ={d} ω={w}");
        }
    }
}

#[test]
fn closed_form_drops_damping_terms() {
    let p = PhysicalParams::table1();
    let o = om(&p);
    let x = exact(&o, p.mirror_mass);
    let (a, g, gp, o2) = (o.omega_m2, o.gamma_m, o.gamma_prime, o.omega_prime2);
    let den = (gp * a + g * o2) * (g + gp) + (a - o2) * (a - o2);
    let de = C64::new(0.0, 2.0 * g * (o2 - a) / den);
    let df = 2.0 * a * g * (gp + g) / den;
    assert!((o.e - (x.e - de)).norm() < 1e-12 * o.e.norm());
    assert!((o.f - (x.f - df)).norm() < 1e-12 * o.f.norm());
    // the dropped part of F̃ is visible at 1e-3
    assert!(rel(o.f.re, x.f.re) > 1e-3, "{} {}", o.f.re, x.f.re);
    // δp: the constant is exactly −iMω_m²Ẽ; the ω coefficient drops O(γ_m) terms
    let m = p.mirror_mass;
    let p0 = C64::new(0.0, -m * a) * o.e;
    assert!((o.j - p0).norm() < 1e-14 * p0.norm());
    let dp1 = C64::new(0.0, m * (-2.0 * gp * a * g - 2.0 * o2 * g * g) / den);
    assert!((o.i - (x.p1 - dp1)).norm() < 1e-10 * o.i.norm());
}

#[test]
fn printed_momentum_slots_are_inconsistent() {
    let p = PhysicalParams::table1();
    let o = om(&p);
    let good = o.p_numerator();
    let printed = o.p_numerator_printed();
    let x = exact(&o, p.mirror_mass);
    let w = 2.0 * PI * 1000.0;
    let want = x.p1 * w + x.p0;
    let z = cdd(C64::new(w, 0.0));
    assert!((to_c64(good.eval(z)) - want).norm() < 1e-2 * want.norm());
    assert!((to_c64(printed.eval(z)) - want).norm() > 0.5 * want.norm());
}

#[test]
fn no_cross_signal_no_numerator() {
    let mut p = PhysicalParams::table1();
    p.coupling = 0.0;
    let o = om(&p);
    assert_eq!(o.omega_tilde2, o.omega_m2, "{o:?}");
    assert_eq!(o.e.norm(), 0.0);
    assert_eq!(o.f.norm(), 0.0);
}

#[test]
fn own_filter_is_self_consistent() {
    let p = PhysicalParams::table1();
    for n in [1.0, 37.0] {
        let model = one_mode_model(&p, n).unwrap();
        let filt = one_mode_filters(&p, n, FilterForm::Generic).unwrap();
        let a = mismatched_covariance(&model, &filt, Backend::Residue, PoleSelector::All).unwrap().pendulum;
        let b = one_mode_covariance(&p, n, Backend::Residue).unwrap().pendulum;
        for (x, y) in [(a.v11, b.v11), (a.v22, b.v22), (a.v12, b.v12)] {
            assert!(rel(x, y) < 1e-9);
        }
    }
}

#[test]
fn point_mirror_state_is_physical() {
    for d in [0.05, 0.2, 0.8] {
        let p = PhysicalParams::table1().with_delta(d);
        let plant = Plant::one_mode(&p);
        for n in [1.0, 4.0, 37.0, 100.0] {
            let v = one_mode_covariance(&p, n, Backend::Residue).unwrap().normalized(&plant, p.hbar).pendulum;
            assert!(v.is_psd(1e-12));
            assert!(v.det().sqrt() >= 1.0 - 1e-9);
        }
    }
}

#[test]
fn residue_and_quadrature_agree() {
    let p = PhysicalParams::table1();
    let a = one_mode_covariance(&p, 1.0, Backend::Residue).unwrap().pendulum;
    let b = one_mode_covariance(&p, 1.0, Backend::Quadrature).unwrap().pendulum;
    for (x, y) in [(a.v11, b.v11), (a.v22, b.v22), (a.v12, b.v12)] {
        assert!(rel(y, x) < 1e-6);
    }
}

#[test]
fn pendulum_block_reduces_to_one_mode() {
    // rotational coupling switched off by ε; the pendulum block tends to V_cm
    let p = PhysicalParams::table1();
    let m1 = one_mode_model(&p, 1.0).unwrap();
    let want = one_mode_covariance(&p, 1.0, Backend::Residue).unwrap().pendulum;
    let eps = 1e-8;
    let mut pl = Plant::two_mode(&p);
    pl.a = m1.plant.a;
    pl.omega_br2 = eps * pl.b;
    pl.c = 1e3 * eps * pl.b;
    let s = Synthesis::new(SpectralModel::from_parts(pl, m1.optics, m1.noise).unwrap()).unwrap();
    let got = conditional_covariance(&s, Backend::Residue, PoleSelector::All).unwrap().pendulum;
    for (x, y) in [(got.v11, want.v11), (got.v22, want.v22), (got.v12, want.v12)] {
        assert!(rel(x, y) < 1e-8, "{x} {y}");
    }
}

#[test]
fn dissipation_multiplier_scales_thermal_part() {
    let p = PhysicalParams::table1();
    let a = one_mode_noise(&p, 1.0).nbar_p;
    let b = one_mode_noise(&p, 37.0).nbar_p;
    assert!(rel(b, 37.0 * a) < 1e-12);
    // more dissipation, less pure
    let plant = Plant::one_mode(&p);
    let pur: Vec<f64> = [1.0, 4.0, 37.0, 100.0]
        .iter()
        .map(|&n| purity(&one_mode_covariance(&p, n, Backend::Residue).unwrap().normalized(&plant, p.hbar).pendulum))
        .collect();
    assert!(pur.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn heavy_feedback_damping_leaves_the_physical_region() {
    // the feedback bath carries ℏMΩγ_m of vacuum noise at Ω, not at ω_m
    let mut p = PhysicalParams::table1();
    p.feedback_decay = 1e4;
    let plant = Plant::one_mode(&p);
    let v = one_mode_covariance(&p, 1.0, Backend::Residue).unwrap().normalized(&plant, p.hbar).pendulum;
    assert!(v.det() < 1.0);
    assert!(purity_checked(&v, 1e-9).is_err());
}

#[test]
fn form_names() {
    assert_eq!(FilterForm::parse("generic"), Some(FilterForm::Generic));
    assert_eq!(FilterForm::parse("closed"), Some(FilterForm::ClosedForm));
    assert_eq!(FilterForm::default().name(), "closed-form");
    assert!(one_mode_filters(&PhysicalParams::table1(), 1.0, FilterForm::ClosedForm).unwrap().numer[Target::Phi as usize].is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]
    #[test]
    fn closed_factor_matches_generic(d in 0.01f64..1.0, eta in 0.5f64..1.0) {
        let p = PhysicalParams::table1().with_delta(d).with_eta(eta);
        let o = om(&p);
        let s = Synthesis::new(one_mode_model(&p, 1.0).unwrap()).unwrap();
        let fpoly = &s.factor.poly;
        let lead = to_c64(fpoly.coeff(2));
        let c0 = to_c64(fpoly.coeff(0)) / lead;
        let c1 = to_c64(fpoly.coeff(1)) / lead;
        // monic form ω² + iΓ′ω − Ω′²
        prop_assert!((c0 + o.omega_prime2).norm() < 1e-10 * o.omega_prime2);
        prop_assert!((c1 - C64::new(0.0, o.gamma_prime)).norm() < 1e-10 * o.gamma_prime);
    }
}
