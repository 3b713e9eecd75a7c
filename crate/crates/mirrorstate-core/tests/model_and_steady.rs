use mirrorstate_core::params::NcVariant;
use mirrorstate_core::steady::{beam_profile, mirror_offset, photon_number, SteadyState};
use mirrorstate_core::{Error, PhysicalParams};
use proptest::prelude::*;
use std::f64::consts::PI;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn table_values() {
    let p = PhysicalParams::table1();
    assert_eq!(p.mirror_mass, 7.71e-3);
    assert!(rel(p.optical_decay / (2.0 * PI), 8.2e5) < 1e-15);
    assert!(p.validate().unwrap().is_empty());
}

#[test]
fn zero_mass_rejected() {
    let mut p = PhysicalParams::table1();
    p.mirror_mass = 0.0;
    let e = p.validate().unwrap_err();
    assert_eq!(e, Error::NonPositive("mirror_mass"));
    assert_eq!(e.to_string(), "mirror_mass must be positive");
}

#[test]
fn range_checks() {
    let mut p = PhysicalParams::table1();
    p.detection_eff = 1.5;
    assert!(p.validate().is_err());
    let mut p = PhysicalParams::table1();
    p.loss_factor = 1.0;
    assert!(p.validate().is_err());
    let mut p = PhysicalParams::table1();
    p.detuning_norm = -3.0;
    assert!(p.validate().is_ok());
    let mut p = PhysicalParams::table1();
    p.thermal_photons = -1.0;
    assert!(p.validate().is_err());
}

#[test]
fn short_beam_warns() {
    let mut p = PhysicalParams::table1();
    p.beam_length = 0.05;
    assert!(!p.validate().unwrap().is_empty());
}

#[test]
fn derived_constants() {
    let d = PhysicalParams::table1().derive();
    // M·g by hand: 7.71e-3 × 980
    assert!(rel(d.tension, 7.5558) < 1e-14);
    // √(T/E₀I), mpmath at 40 digits
    assert!(rel(d.beta, 1452.167867531096766) < 1e-14);
    assert!(d.beta * 1.0 > 1e3);
    assert_eq!(PhysicalParams::table1().with_delta(0.0).derive().detuning, 0.0);
    assert!(rel(d.drive_amplitude * d.drive_amplitude, d.drive_sq) < 1e-15);
}

#[test]
fn photon_numbers() {
    let p = PhysicalParams::table1();
    // mpmath: 𝓔²/κ² and 𝓔²/(κ²(1+4δ²))
    assert!(rel(photon_number(&p.with_delta(0.0)), 62639368891.82889) < 1e-12);
    assert!(rel(photon_number(&p), 53999455941.23180) < 1e-12);
    let mut q = p.clone();
    q.nc_variant = NcVariant::OnePlusDeltaSq;
    assert!(rel(photon_number(&q), 62639368891.82889 / 1.04) < 1e-12);
    let mut z = p.clone();
    z.laser_power = 0.0;
    assert_eq!(photon_number(&z), 0.0);
    assert_eq!(mirror_offset(&z).0, 0.0);
}

#[test]
fn beam_boundaries() {
    let p = PhysicalParams::table1();
    let s = SteadyState::new(&p);
    assert!(s.profile(0.0).abs() <= 1e-12 * s.profile(1.0).abs());
    assert!(s.slope(0.0).abs() <= 1e-10 * s.c_prime);
    let (x, _) = beam_profile(&p, 1.0).unwrap();
    assert!(rel(x, s.profile_approx(1.0)) < 1e-3);
    let (q, qa) = mirror_offset(&p);
    assert!(rel(q, qa) < 1e-3);
    assert!(rel(q, s.profile(1.0) + p.offset * s.rotation_offset) < 1e-10);
    assert_eq!(beam_profile(&p, 1.5).unwrap_err(), Error::OutOfRange("sigma"));
    assert!(beam_profile(&p, -0.1).is_err());
}

#[test]
fn steeper_profile_near_resonance() {
    let p = PhysicalParams::table1();
    let a = SteadyState::new(&p.with_delta(0.0292));
    let b = SteadyState::new(&p.with_delta(0.2));
    assert!(a.c_prime > b.c_prime);
    // linear in σ away from the clamp
    let s = a.profile(0.5) / a.profile(1.0);
    assert!((s - 0.5).abs() < 1e-3);
}

#[test]
fn offset_linear_in_photon_number() {
    let p = PhysicalParams::table1();
    let mut q = p.clone();
    q.laser_power *= 3.0;
    let r = mirror_offset(&q).0 / mirror_offset(&p).0;
    assert!(rel(r, 3.0) < 1e-12);
}

proptest! {
    #[test]
    fn doubling_mass_doubles_tension(m in 1e-4f64..1.0) {
        let mut p = PhysicalParams::table1();
        p.mirror_mass = m;
        let t1 = p.derive().tension;
        p.mirror_mass = 2.0 * m;
        prop_assert_eq!(p.derive().tension, 2.0 * t1);
    }

    #[test]
    fn photon_number_even_and_peaked(d in -3.0f64..3.0) {
        let p = PhysicalParams::table1();
        let a = photon_number(&p.with_delta(d));
        let b = photon_number(&p.with_delta(-d));
        prop_assert!(rel(a, b) < 1e-15);
        prop_assert!(a <= photon_number(&p.with_delta(0.0)));
    }

    #[test]
    fn boundary_residuals(f in prop::collection::vec(0.9f64..1.1, 6), d in 0.0f64..1.0) {
        let mut p = PhysicalParams::table1();
        p.mirror_mass *= f[0];
        p.beam_length *= f[1];
        p.offset *= f[2];
        p.flexural_rigidity *= f[3];
        p.laser_power *= f[4];
        p.coupling *= f[5];
        let p = p.with_delta(d);
        let s = SteadyState::new(&p);
        let scale = s.profile(p.beam_length).abs();
        prop_assert!(s.profile(0.0).abs() <= 1e-10 * scale);
        prop_assert!(s.slope(0.0).abs() <= 1e-10 * s.c_prime);
        let q = s.profile(p.beam_length) + p.offset * s.slope(p.beam_length);
        prop_assert!(rel(s.mirror_offset, q) < 1e-10);
        prop_assert!(rel(s.rotation_offset, s.slope(p.beam_length)) < 1e-10);
    }
}
