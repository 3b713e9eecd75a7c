//! End-to-end checks against the reference numbers. One line per criterion;
//! exits nonzero if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{causal_leakage, tail_coeffs};
use mirrorstate_core::analysis::*;
use mirrorstate_core::covariance::*;
use mirrorstate_core::dd::{cdd, to_c64};
use mirrorstate_core::dynamics::{couplings_lowfreq, normal_modes};
use mirrorstate_core::onemode::{one_mode_covariance, FilterForm};
use mirrorstate_core::spectra::{Plant, SpectralModel, Target};
use mirrorstate_core::wiener::{factor_residual, solve_coefficient_system, Synthesis};
use mirrorstate_core::PhysicalParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TP: f64 = 2.0 * PI;

type Outcome = Result<String, String>;

fn table() -> PhysicalParams {
    PhysicalParams::table1()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn random_points(seed: u64, n: usize) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (rng.random_range(0.01..1.0), rng.random_range(0.5..1.0))).collect()
}

fn grid(n: usize, span: f64) -> Vec<f64> {
    (0..n).map(|k| -span + 2.0 * span * k as f64 / (n - 1) as f64).collect()
}

fn pendulum_frequency() -> Outcome {
    let mut p = table();
    p.laser_power = 0.0;
    let f = couplings_lowfreq(&p).omega_ar2.sqrt() / TP;
    let d = rel(f, 4.99);
    if d <= 5e-3 {
        Ok(format!("ω_AR/2π = {f:.6} Hz"))
    } else {
        Err(format!("ω_AR/2π = {f:.6} Hz, off by {:.3}%", 100.0 * d))
    }
}

fn rotational_frequency() -> Outcome {
    let f = couplings_lowfreq(&table()).delta_br2.sqrt() / TP;
    let d = rel(f, 27.0);
    if d <= 0.02 {
        Ok(format!("Δ_BR/2π = {f:.4} Hz"))
    } else {
        Err(format!("Δ_BR/2π = {f:.4} Hz, off by {:.2}%", 100.0 * d))
    }
}

fn damping_law() -> Outcome {
    let p = table();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for d in linspace(0.001, 0.031, 400) {
        let nm = normal_modes(&p.with_delta(d)).map_err(|e| e.to_string())?;
        let w = nm.pendulum();
        if (180.0..=650.0).contains(&(w / TP)) && nm.gamma_r_pendulum > 0.0 {
            xs.push(w.ln());
            ys.push(nm.gamma_r_pendulum.ln());
        }
    }
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    let ratio = dissipation_ratio(&p);
    let msg = format!("slope {slope:.4} over {} points, Γ_r/Γ = {ratio:.4}", xs.len());
    if (slope + 1.0).abs() <= 0.01 && rel(ratio, 4.18) <= 0.01 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn factorization() -> Outcome {
    let g = grid(1000, TP * 1e4);
    let (mut worst_res, mut worst_agree) = (0.0f64, 0.0f64);
    for (d, eta) in random_points(4, 20) {
        let s = Synthesis::new(SpectralModel::two_mode(&table().with_delta(d).with_eta(eta)).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        worst_res = worst_res.max(factor_residual(&s.factor, &s.j, &g));
        let q = solve_coefficient_system(&s.j, &s.model.f).map_err(|e| format!("δ={d:.4} η={eta:.4}: {e}"))?;
        for k in 0..4 {
            let (a, b) = (to_c64(q.coeff(k)), to_c64(s.factor.poly.coeff(k)));
            worst_agree = worst_agree.max((a - b).norm() / b.norm());
        }
    }
    let msg = format!("max |F′F′* − J|/|J| = {worst_res:.2e}, backend spread {worst_agree:.2e}");
    if worst_res < 1e-10 && worst_agree <= 1e-8 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn six(c: &CovPair) -> [f64; 6] {
    let r = c.rotational.expect("two-mode");
    [c.pendulum.v11, c.pendulum.v22, c.pendulum.v12, r.v11, r.v22, r.v12]
}

fn oracle_equivalence() -> Outcome {
    let mut worst = 0.0f64;
    let mut at = (0.0, 0.0);
    for (d, eta) in random_points(5, 20) {
        let s = Synthesis::new(SpectralModel::two_mode(&table().with_delta(d).with_eta(eta)).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let a = conditional_covariance(&s, Backend::Residue, PoleSelector::All).map_err(|e| e.to_string())?;
        let b = conditional_covariance(&s, Backend::Quadrature, PoleSelector::All).map_err(|e| e.to_string())?;
        for (x, y) in six(&a).iter().zip(six(&b)) {
            let r = rel(y, *x);
            if r > worst {
                worst = r;
                at = (d, eta);
            }
        }
    }
    let msg = format!("worst relative gap {worst:.2e} at δ={:.4}, η={:.4}", at.0, at.1);
    if worst <= 1e-6 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn triple(p: &PhysicalParams) -> Result<[f64; 3], String> {
    let e = |e: mirrorstate_core::Error| e.to_string();
    Ok([
        purity_two_mode(p).map_err(e)?,
        purity_mismatched(p, 1.0, PoleSelector::All).map_err(e)?,
        purity_mismatched(p, 37.0, PoleSelector::All).map_err(e)?,
    ])
}

fn purity_triple() -> Outcome {
    const WANT: [f64; 3] = [0.6088, 0.3461, 0.4027];
    let worst = |t: &[f64; 3]| t.iter().zip(WANT).map(|(a, b)| rel(*a, b)).fold(0.0, f64::max);
    let p = table();
    let t1 = triple(&p)?;
    if worst(&t1) <= 0.10 {
        return Ok(format!("η=1: {:.4}/{:.4}/{:.4}", t1[0], t1[1], t1[2]));
    }
    let mut matches = Vec::new();
    let mut best = (f64::INFINITY, 0.0, [0.0; 3]);
    for eta in linspace(0.5, 1.0, 51) {
        let t = triple(&p.with_eta(eta))?;
        let w = worst(&t);
        if w <= 0.03 {
            matches.push(eta);
        }
        if w < best.0 {
            best = (w, eta, t);
        }
    }
    let head = format!(
        "η=1: {:.4}/{:.4}/{:.4}; closest η={:.2}: {:.4}/{:.4}/{:.4} (worst {:.1}%)",
        t1[0],
        t1[1],
        t1[2],
        best.1,
        best.2[0],
        best.2[1],
        best.2[2],
        100.0 * best.0
    );
    match matches.first() {
        Some(eta) => Ok(format!("{head}; η={eta:.2} matches within 3%")),
        None => Err(format!("{head}; no η in [0.5, 1] matches within 3%")),
    }
}

fn orderings() -> Outcome {
    let p = table();
    let e = |e: mirrorstate_core::Error| e.to_string();
    let mut bad = Vec::new();
    for d in linspace(0.02, 0.98, 25) {
        let q = p.with_delta(d);
        let (a, b) = (purity_two_mode(&q).map_err(e)?, purity_mismatched(&q, 1.0, PoleSelector::All).map_err(e)?);
        if a <= b {
            bad.push(format!("two-mode ≤ one-mode at δ={d:.2}"));
        }
    }
    let lo = two_mode_state(&p, Backend::Residue, PoleSelector::All).map_err(e)?.0.pendulum.eigenvalues().0;
    if lo >= 1.0 {
        bad.push(format!("no squeezing, λ_min = {lo:.4}"));
    }
    let ns = linspace(1.0, 100.0, 100);
    let scan = nscan(&p, &ns, PoleSelector::All).map_err(e)?;
    let ys: Vec<f64> = scan.iter().map(|x| x.1).collect();
    let (k, interior) = interior_argmax(&ys);
    let unimodal = ys[..=k].windows(2).all(|w| w[1] >= w[0]) && ys[k..].windows(2).all(|w| w[1] <= w[0]);
    if !(interior && unimodal) {
        bad.push(format!("N-scan max at N={} (edge of [1, 100])", ns[k]));
    }
    let msg = format!("λ_min = {lo:.4}, N-scan argmax {}", ns[k]);
    if bad.is_empty() {
        Ok(msg)
    } else {
        Err(format!("{msg}; {}", bad.join("; ")))
    }
}

fn pole_discarding() -> Outcome {
    let p = table();
    let n = dissipation_ratio(&p);
    let e = |e: mirrorstate_core::Error| e.to_string();
    let mut worst = 0.0f64;
    for d in linspace(0.1, 1.0, 10) {
        let q = p.with_delta(d);
        let two = two_mode_state(&q, Backend::Residue, PoleSelector::DiscardRotational).map_err(e)?.0.pendulum;
        let one = mismatched_state(&q, n, FilterForm::ClosedForm, PoleSelector::DiscardRotational).map_err(e)?;
        for (a, b) in [(one.v11, two.v11), (one.v22, two.v22), (one.v12, two.v12)] {
            worst = worst.max(rel(a, b));
        }
    }
    let ns: Vec<f64> = (1..=20).map(|k| k as f64).collect();
    let scan = nscan(&p, &ns, PoleSelector::DiscardRotational).map_err(e)?;
    let ys: Vec<f64> = scan.iter().map(|x| x.1).collect();
    let (k, _) = interior_argmax(&ys);
    let msg = format!("N = {n:.4}: worst relative gap {worst:.2e}; discarded-pole N-scan argmax N={}", ns[k]);
    if worst <= 1e-4 && ns[k] == 4.0 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn negativity_region() -> Outcome {
    let p = table();
    let en = |d: f64| negativity(&p, d, 3.0, NegativityUnits::PerMode).map(|r| r.log_negativity).map_err(|e| e.to_string());
    let mut bad = Vec::new();
    for d in linspace(0.05, 0.3, 11) {
        let v = en(d)?;
        if !(v > 0.0) {
            bad.push(format!("E_N({d:.3}) = 0"));
        }
    }
    let (a, b) = (en(0.01)?, en(0.5)?);
    if a != 0.0 {
        bad.push(format!("E_N(0.01) = {a:.4}"));
    }
    if b != 0.0 {
        bad.push(format!("E_N(0.5) = {b:.4}"));
    }
    let msg = format!("E_N(0.05) = {:.4}, E_N(0.2) = {:.4}", en(0.05)?, en(0.2)?);
    if bad.is_empty() {
        Ok(msg)
    } else {
        Err(format!("{msg}; {}", bad.join("; ")))
    }
}

fn physical(v: &CovMat2) -> bool {
    v.is_psd(1e-12) && v.det().sqrt() >= 1.0 - 1e-9
}

fn property_suite() -> Outcome {
    let p = table();
    let e = |e: mirrorstate_core::Error| e.to_string();
    let mut bad = Vec::new();
    let mut count = 0;
    for d in linspace(0.01, 1.0, 12) {
        let q = p.with_delta(d);
        let (two, _) = two_mode_state(&q, Backend::Residue, PoleSelector::All).map_err(e)?;
        let mut mats = vec![two.pendulum, two.rotational.unwrap()];
        mats.push(mismatched_state(&q, 1.0, FilterForm::ClosedForm, PoleSelector::All).map_err(e)?);
        let plant = Plant::one_mode(&q);
        mats.push(one_mode_covariance(&q, 1.0, Backend::Residue).map_err(e)?.normalized(&plant, q.hbar).pendulum);
        for v in &mats {
            count += 1;
            if !physical(v) {
                bad.push(format!("unphysical covariance at δ={d:.3}: {v:?}"));
            }
        }
        let m = SpectralModel::two_mode(&q).map_err(e)?;
        let specs = [
            m.output_spectrum(),
            m.mode_spectrum(Target::Q, Target::Q),
            m.mode_spectrum(Target::P, Target::P),
            m.mode_spectrum(Target::Phi, Target::Phi),
            m.mode_spectrum(Target::Pi, Target::Pi),
        ];
        for (i, s) in specs.iter().enumerate() {
            for k in 0..400 {
                let w = TP * 10f64.powf(-1.0 + 6.0 * k as f64 / 399.0);
                let (a, b) = (s.eval(w), s.eval(-w));
                if a.im.abs() > 1e-12 * a.re.abs() || rel(b.re, a.re) > 1e-12 || a.re < 0.0 {
                    bad.push(format!("spectrum {i} at δ={d:.3}, ω={w:.3e}: {a} vs {b}"));
                    break;
                }
            }
        }
    }
    let mut leak = 0.0f64;
    for d in [0.05, 0.2, 1.0] {
        let s = Synthesis::new(SpectralModel::two_mode(&p.with_delta(d)).map_err(e)?).map_err(e)?;
        let s0 = 2.0 * s.factor.roots.iter().map(|r| to_c64(*r).norm()).fold(0.0, f64::max);
        for t in Target::ALL {
            let f = s.filter(t);
            let fp = &s.factor.poly;
            let tail = tail_coeffs(
                [to_c64(f.numer.coeff(3)), to_c64(f.numer.coeff(2))],
                [to_c64(fp.coeff(4)), to_c64(fp.coeff(3))],
                f.c1,
            );
            let l = causal_leakage(|z| to_c64(f.eval_dd(cdd(z))), tail, 1 << 18, PI / 2.0, 10.0, s0);
            leak = leak.max(l);
        }
    }
    if leak >= 1e-6 {
        bad.push(format!("impulse-response leakage {leak:.2e}"));
    }
    let msg = format!("{count} covariances, 60 spectra, worst causal leakage {leak:.2e}");
    if bad.is_empty() {
        Ok(msg)
    } else {
        Err(format!("{msg}; {}", bad.join("; ")))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("pendulum frequency", Duration::from_secs(1), pendulum_frequency),
        ("rotational frequency", Duration::from_secs(1), rotational_frequency),
        ("structural damping law", Duration::from_secs(10), damping_law),
        ("factorization identity", Duration::from_secs(30), factorization),
        ("oracle equivalence", Duration::from_secs(120), oracle_equivalence),
        ("purity triple", Duration::from_secs(300), purity_triple),
        ("orderings", Duration::from_secs(300), orderings),
        ("pole discarding", Duration::from_secs(300), pole_discarding),
        ("negativity region", Duration::from_secs(300), negativity_region),
        ("property suite", Duration::from_secs(120), property_suite),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f();
        let dt = t.elapsed();
        let slow = dt > *limit;
        let (tag, detail) = match (&out, slow) {
            (Ok(m), false) => ("PASS", m.clone()),
            (Ok(m), true) => ("FAIL", format!("{m}; too slow")),
            (Err(m), _) => ("FAIL", m.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} {:>2} {name}: {detail} [{:.2} s]", i + 1, dt.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
