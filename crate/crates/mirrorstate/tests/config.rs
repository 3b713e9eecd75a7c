use std::path::Path;

use mirrorstate::config::{load_file, load_str, to_config_string};
use mirrorstate_core::params::NUMERIC_KEYS;
use mirrorstate_core::PhysicalParams;

fn table1_text() -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("table1.cfg")).unwrap()
}

#[test]
fn shipped_table_matches_builtin() {
    let loaded = load_file(&Path::new(env!("CARGO_MANIFEST_DIR")).join("table1.cfg")).unwrap();
    let want = PhysicalParams::table1();
    for key in NUMERIC_KEYS {
        let (a, b) = (loaded.params.get(key).unwrap(), want.get(key).unwrap());
        assert_eq!(a.to_bits(), b.to_bits(), "{key}: {a} vs {b}");
    }
    assert_eq!(loaded.params.nc_variant, want.nc_variant);
    assert_eq!(loaded.params.noise_eval, want.noise_eval);
}

#[test]
fn round_trip_is_exact() {
    let mut p = PhysicalParams::table1().with_delta(0.37);
    p.detection_eff = 0.61;
    let back = load_str(&to_config_string(&p)).unwrap().params;
    for key in NUMERIC_KEYS {
        assert_eq!(back.get(key).unwrap().to_bits(), p.get(key).unwrap().to_bits(), "{key}");
    }
}

#[test]
fn unknown_key_is_rejected() {
    let text = format!("{}\nmirror_colour = 3.0\n", table1_text());
    let e = load_str(&text).unwrap_err().to_string();
    assert!(e.contains("unknown key: mirror_colour"), "{e}");
}

#[test]
fn missing_key_is_rejected() {
    let text: String = table1_text().lines().filter(|l| !l.starts_with("mirror_mass")).map(|l| format!("{l}\n")).collect();
    let e = format!("{:#}", load_str(&text).unwrap_err());
    assert!(e.contains("missing key: mirror_mass"), "{e}");
}

#[test]
fn nonpositive_mass_is_an_error() {
    let text = table1_text().replace("mirror_mass = 7.71e-3", "mirror_mass = 0.0");
    let e = format!("{:#}", load_str(&text).unwrap_err());
    assert!(e.contains("mirror_mass must be positive"), "{e}");
}

#[test]
fn missing_efficiency_warns_and_defaults() {
    let text: String = table1_text().lines().filter(|l| !l.starts_with("detection_eff")).map(|l| format!("{l}\n")).collect();
    let loaded = load_str(&text).unwrap();
    assert_eq!(loaded.params.detection_eff, 1.0);
    assert!(loaded.warnings.iter().any(|w| w.contains("detection_eff")), "{:?}", loaded.warnings);
}

#[test]
fn hz_and_rad_per_second_agree() {
    let hz = load_str(&table1_text()).unwrap().params;
    assert!((hz.pendulum_freq - 2.0 * std::f64::consts::PI * 4.99).abs() < 1e-12);
    let text = table1_text().replace("frequency_units = \"Hz\"", "frequency_units = \"rad/s\"");
    let rad = load_str(&text).unwrap().params;
    assert_eq!(rad.pendulum_freq, 4.99);
    assert_eq!(rad.mirror_mass, hz.mirror_mass);
}

#[test]
fn bad_values_are_reported() {
    let e = load_str(&table1_text().replace("laser_power = 3.0e5", "laser_power = \"lots\"")).unwrap_err().to_string();
    assert!(e.contains("laser_power: expected a number"), "{e}");
    let e = load_str(&table1_text().replace("nc_variant = \"exact\"", "nc_variant = \"guess\"")).unwrap_err().to_string();
    assert!(e.contains("nc_variant"), "{e}");
    assert!(load_str("not = [valid").is_err());
}
