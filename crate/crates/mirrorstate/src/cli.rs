//! Command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use mirrorstate_core::analysis::{
    dissipation_ratio, interior_argmax, linspace, negativity, purity, two_mode_state, wigner_ellipse,
    NegativityUnits,
};
use mirrorstate_core::covariance::{filter_value, Backend, CovMat2, FilterSet, PoleSelector};
use mirrorstate_core::dynamics::normal_modes;
use mirrorstate_core::onemode::{self, one_mode_filters, FilterForm};
use mirrorstate_core::spectra::{Plant, SpectralModel, Target};
use mirrorstate_core::steady::SteadyState;
use mirrorstate_core::wiener::Synthesis;
use mirrorstate_core::PhysicalParams;

use crate::config;
use crate::manifest::RunManifest;
use crate::output::{circle, num, write_csv, Chart, Series};

const TP: f64 = 2.0 * std::f64::consts::PI;

#[derive(Parser, Debug)]
#[command(name = "mirrorstate", version, about = "Conditional state of a feedback-cooled suspended mirror")]
pub struct Cli {
    /// Parameter file (TOML); the built-in reference table when omitted
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory for CSV, SVG and manifest files
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,
    /// Covariance integration backend
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Residue)]
    pub backend: BackendArg,
    /// Detection efficiency, overrides the config
    #[arg(long, global = true)]
    pub eta: Option<f64>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Classical steady state (photon number, mirror offsets)
    Steady {
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, value_parser = parse_range)]
        delta_range: Option<Range>,
    },
    /// Normal-mode frequencies and pendulum dissipation
    Modes {
        #[arg(long, value_parser = parse_range)]
        delta_range: Range,
    },
    /// Output and mode spectra
    Spectra {
        #[arg(long)]
        delta: Option<f64>,
        /// frequencies in Hz, a:b:n
        #[arg(long, value_parser = parse_range)]
        freq_range: Range,
    },
    /// Wiener filter response
    Filter {
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, value_enum)]
        target: TargetArg,
        #[arg(long, value_parser = parse_range)]
        freq_range: Range,
        #[command(flatten)]
        est: Estimator,
    },
    /// Conditional covariance and purity at one detuning
    Covariance {
        #[arg(long)]
        delta: Option<f64>,
        #[command(flatten)]
        est: Estimator,
    },
    /// Covariance and purity over a detuning grid
    Sweep {
        #[arg(long, value_parser = parse_range)]
        delta_range: Range,
        #[command(flatten)]
        est: Estimator,
    },
    /// Purity of the point-mirror filter against its dissipation multiplier
    Nscan {
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, value_parser = parse_range, default_value = "1:100:200")]
        n_range: Range,
        #[arg(long, value_enum, default_value_t = DiscardArg::None)]
        discard: DiscardArg,
        #[arg(long, value_enum, default_value_t = FormArg::Closed)]
        form: FormArg,
    },
    /// Wigner-function contour as SVG
    Wigner {
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long, value_enum, default_value_t = ModeArg::Pendulum)]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        est: Estimator,
    },
    /// Logarithmic negativity between two mirrors
    Negativity {
        #[arg(long, value_parser = parse_range)]
        delta_range: Range,
        #[arg(long, default_value_t = 3.0)]
        kappa_ratio: f64,
        #[arg(long, value_enum, default_value_t = UnitsArg::PerMode)]
        units: UnitsArg,
    },
    /// Reproduce one of the reference figures
    Preset {
        #[arg(value_enum)]
        name: PresetName,
    },
}

/// Which estimator produces the state.
#[derive(Args, Debug, Clone, Copy)]
pub struct Estimator {
    #[arg(long, value_enum, default_value_t = FilterArg::TwoMode)]
    pub filter: FilterArg,
    /// dissipation multiplier N of the point-mirror filter
    #[arg(long, default_value_t = 1.0)]
    pub ngamma: f64,
    #[arg(long, value_enum, default_value_t = DiscardArg::None)]
    pub discard: DiscardArg,
    #[arg(long, value_enum, default_value_t = FormArg::Closed)]
    pub form: FormArg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendArg {
    Residue,
    Quadrature,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FilterArg {
    #[value(name = "two-mode", alias = "two")]
    TwoMode,
    #[value(name = "one-mode", alias = "one")]
    OneMode,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiscardArg {
    None,
    Rotational,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormArg {
    Closed,
    Generic,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Pendulum,
    Rotational,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetArg {
    Dq,
    Dp,
    Dphi,
    Dpi,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitsArg {
    PerMode,
    Physical,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresetName {
    Fig8,
    Fig9,
    Fig10,
    Fig11,
    Fig12,
}

/// Inclusive grid a:b:n.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub start: f64,
    pub end: f64,
    pub n: usize,
}

impl Range {
    pub fn points(&self) -> Vec<f64> {
        linspace(self.start, self.end, self.n)
    }
}

impl std::fmt::Display for Range {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.end, self.n)
    }
}

pub fn parse_range(s: &str) -> Result<Range, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected a:b:n, got {s:?}"));
    }
    let f = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    let n = parts[2].trim().parse::<usize>().map_err(|e| format!("{:?}: {e}", parts[2]))?;
    if n == 0 {
        return Err("n must be at least 1".into());
    }
    let (start, end) = (f(parts[0])?, f(parts[1])?);
    if !start.is_finite() || !end.is_finite() {
        return Err("range ends must be finite".into());
    }
    Ok(Range { start, end, n })
}

impl BackendArg {
    fn core(self) -> Backend {
        match self {
            BackendArg::Residue => Backend::Residue,
            BackendArg::Quadrature => Backend::Quadrature,
        }
    }
}

impl DiscardArg {
    fn core(self) -> PoleSelector {
        match self {
            DiscardArg::None => PoleSelector::All,
            DiscardArg::Rotational => PoleSelector::DiscardRotational,
        }
    }
    fn name(self) -> &'static str {
        match self {
            DiscardArg::None => "none",
            DiscardArg::Rotational => "rotational",
        }
    }
}

impl FormArg {
    fn core(self) -> FilterForm {
        match self {
            FormArg::Closed => FilterForm::ClosedForm,
            FormArg::Generic => FilterForm::Generic,
        }
    }
}

impl FilterArg {
    fn name(self) -> &'static str {
        match self {
            FilterArg::TwoMode => "two-mode",
            FilterArg::OneMode => "one-mode",
        }
    }
}

impl TargetArg {
    fn core(self) -> Target {
        match self {
            TargetArg::Dq => Target::Q,
            TargetArg::Dp => Target::P,
            TargetArg::Dphi => Target::Phi,
            TargetArg::Dpi => Target::Pi,
        }
    }
}

/// Normalized (pendulum, rotational) state for an estimator choice.
pub fn estimate(p: &PhysicalParams, backend: Backend, est: &Estimator) -> Result<(CovMat2, Option<CovMat2>)> {
    let sel = est.discard.core();
    match est.filter {
        FilterArg::TwoMode => {
            let (v, _) = two_mode_state(p, backend, sel)?;
            Ok((v.pendulum, v.rotational))
        }
        FilterArg::OneMode => {
            let raw = onemode::mismatched(p, est.ngamma, est.form.core(), backend, sel)?;
            let v = raw.normalized(&Plant::two_mode(p), p.hbar);
            Ok((v.pendulum, v.rotational))
        }
    }
}

struct Ctx {
    params: PhysicalParams,
    config: String,
    out_dir: PathBuf,
    backend: BackendArg,
}

impl Ctx {
    fn manifest(&self, cmd: &str) -> RunManifest {
        let b = match self.backend {
            BackendArg::Residue => "residue",
            BackendArg::Quadrature => "quadrature",
        };
        RunManifest::new(cmd, &self.config, b, &self.params)
    }

    fn at(&self, delta: Option<f64>) -> PhysicalParams {
        match delta {
            Some(d) => self.params.with_delta(d),
            None => self.params.clone(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out_dir.join(name)
    }

    fn finish(&self, mut m: RunManifest, stem: &str, outputs: Vec<PathBuf>) -> Result<()> {
        for o in &outputs {
            println!("wrote {}", o.display());
        }
        m.outputs = outputs;
        let path = m.write(&self.out_dir, stem)?;
        println!("wrote {}", path.display());
        Ok(())
    }
}

fn with_est(m: &mut RunManifest, est: &Estimator) {
    m.filter = Some(est.filter.name().to_string());
    m.discard = Some(est.discard.name().to_string());
    if est.filter == FilterArg::OneMode {
        m.n_multiplier = Some(est.ngamma);
        m.filter_form = Some(est.form.core().name().to_string());
    }
}

/// Evaluate `f` on every point in parallel; results keep the input order.
fn sweep<T: Send>(xs: &[f64], f: impl Fn(f64) -> Result<T> + Sync) -> Result<Vec<T>> {
    xs.par_iter().map(|&x| f(x)).collect()
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let (mut params, config) = match &cli.config {
        Some(path) => {
            let loaded = config::load_file(path)?;
            for w in &loaded.warnings {
                eprintln!("warning: {w}");
            }
            (loaded.params, path.display().to_string())
        }
        None => (PhysicalParams::table1(), "builtin:table1".to_string()),
    };
    if let Some(eta) = cli.eta {
        if !(0.0..=1.0).contains(&eta) {
            bail!("--eta must lie in [0, 1]");
        }
        params.detection_eff = eta;
    }
    std::fs::create_dir_all(&cli.out_dir).with_context(|| format!("creating {}", cli.out_dir.display()))?;
    let ctx = Ctx { params, config, out_dir: cli.out_dir, backend: cli.backend };
    let backend = cli.backend.core();
    match cli.cmd {
        Cmd::Steady { delta, delta_range } => steady(&ctx, delta, delta_range),
        Cmd::Modes { delta_range } => modes(&ctx, delta_range),
        Cmd::Spectra { delta, freq_range } => spectra(&ctx, delta, freq_range),
        Cmd::Filter { delta, target, freq_range, est } => filter(&ctx, delta, target, freq_range, &est),
        Cmd::Covariance { delta, est } => covariance_cmd(&ctx, backend, delta, &est),
        Cmd::Sweep { delta_range, est } => sweep_cmd(&ctx, backend, delta_range, &est),
        Cmd::Nscan { delta, n_range, discard, form } => nscan(&ctx, delta, n_range, discard, form),
        Cmd::Wigner { delta, mode, out, est } => wigner(&ctx, backend, delta, mode, out, &est),
        Cmd::Negativity { delta_range, kappa_ratio, units } => negativity_cmd(&ctx, delta_range, kappa_ratio, units),
        Cmd::Preset { name } => preset(&ctx, backend, name),
    }
}

fn steady(ctx: &Ctx, delta: Option<f64>, range: Option<Range>) -> Result<()> {
    let ds = match (delta, range) {
        (Some(_), Some(_)) => bail!("give --delta or --delta-range, not both"),
        (_, Some(r)) => r.points(),
        (d, None) => vec![ctx.at(d).detuning_norm],
    };
    let rows: Vec<Vec<f64>> = ds
        .iter()
        .map(|&d| {
            let s = SteadyState::new(&ctx.params.with_delta(d));
            vec![d, s.photon_number, s.mirror_offset, s.rotation_offset]
        })
        .collect();
    let out = ctx.path("steady.csv");
    write_csv(&out, &["delta", "n_c", "q0_cm", "phi0_rad"], &rows)?;
    let mut m = ctx.manifest("steady");
    m.sweep = range.map(|r| format!("delta={r}"));
    ctx.finish(m, "steady", vec![out])
}

fn modes(ctx: &Ctx, r: Range) -> Result<()> {
    let rows = sweep(&r.points(), |d| {
        let nm = normal_modes(&ctx.params.with_delta(d))?;
        Ok(vec![d, nm.w0_plus / TP, nm.w0_minus / TP, nm.gamma_r_pendulum / TP])
    })?;
    let out = ctx.path("modes.csv");
    write_csv(&out, &["delta", "w0p_Hz", "w0m_Hz", "gamma_r_Hz"], &rows)?;
    let mut m = ctx.manifest("modes");
    m.sweep = Some(format!("delta={r}"));
    ctx.finish(m, "modes", vec![out])
}

fn spectra(ctx: &Ctx, delta: Option<f64>, r: Range) -> Result<()> {
    let model = SpectralModel::two_mode(&ctx.at(delta))?;
    let specs = [
        model.output_spectrum(),
        model.mode_spectrum(Target::Q, Target::Q),
        model.mode_spectrum(Target::P, Target::P),
        model.mode_spectrum(Target::Phi, Target::Phi),
        model.mode_spectrum(Target::Pi, Target::Pi),
    ];
    let rows: Vec<Vec<f64>> = r
        .points()
        .iter()
        .map(|&f| {
            let mut row = vec![f];
            row.extend(specs.iter().map(|s| s.eval(TP * f).re));
            row
        })
        .collect();
    let out = ctx.path("spectra.csv");
    write_csv(&out, &["freq_Hz", "S_XX", "S_qq", "S_pp", "S_phiphi", "S_pipi"], &rows)?;
    let mut m = ctx.manifest("spectra");
    m.sweep = Some(format!("freq_Hz={r}"));
    ctx.finish(m, "spectra", vec![out])
}

fn filter(ctx: &Ctx, delta: Option<f64>, target: TargetArg, r: Range, est: &Estimator) -> Result<()> {
    let p = ctx.at(delta);
    let t = target.core();
    let fs = match est.filter {
        FilterArg::TwoMode => FilterSet::from_synthesis(&Synthesis::new(SpectralModel::two_mode(&p)?)?),
        FilterArg::OneMode => one_mode_filters(&p, est.ngamma, est.form.core())?,
    };
    let rows: Vec<Vec<f64>> = r
        .points()
        .iter()
        .map(|&f| {
            let v = filter_value(&fs, t, TP * f);
            vec![f, v.re, v.im, v.norm()]
        })
        .collect();
    let name = format!("filter_{}", t.name());
    let out = ctx.path(&format!("{name}.csv"));
    write_csv(&out, &["freq_Hz", "ReH", "ImH", "absH"], &rows)?;
    let mut m = ctx.manifest("filter");
    m.sweep = Some(format!("freq_Hz={r}"));
    with_est(&mut m, est);
    ctx.finish(m, &name, vec![out])
}

fn cov_row(v: &CovMat2) -> Vec<f64> {
    let (lo, hi) = v.eigenvalues();
    vec![v.v11, v.v12, v.v22, purity(v), lo, hi]
}

fn covariance_cmd(ctx: &Ctx, backend: Backend, delta: Option<f64>, est: &Estimator) -> Result<()> {
    let p = ctx.at(delta);
    let (pen, rot) = estimate(&p, backend, est)?;
    let mut rows = vec![];
    println!("delta = {}", p.detuning_norm);
    for (name, v) in [("pendulum", Some(pen)), ("rotational", rot)] {
        if let Some(v) = v {
            println!("{name}: [[{}, {}], [{}, {}]]  purity {}", num(v.v11), num(v.v12), num(v.v12), num(v.v22), num(purity(&v)));
            let mut row = vec![if name == "pendulum" { 0.0 } else { 1.0 }];
            row.extend(cov_row(&v));
            rows.push(row);
        }
    }
    let out = ctx.path("covariance.csv");
    write_csv(&out, &["mode", "v11", "v12", "v22", "purity", "lambda_min", "lambda_max"], &rows)?;
    let mut m = ctx.manifest("covariance");
    with_est(&mut m, est);
    ctx.finish(m, "covariance", vec![out])
}

fn sweep_cmd(ctx: &Ctx, backend: Backend, r: Range, est: &Estimator) -> Result<()> {
    let rows = sweep(&r.points(), |d| {
        let (pen, rot) = estimate(&ctx.params.with_delta(d), backend, est)?;
        let mut row = vec![d];
        row.extend(cov_row(&pen));
        row.push(rot.map(|v| purity(&v)).unwrap_or(f64::NAN));
        Ok(row)
    })?;
    let out = ctx.path("sweep.csv");
    write_csv(&out, &["delta", "v11", "v12", "v22", "purity", "lambda_min", "lambda_max", "purity_rot"], &rows)?;
    let mut m = ctx.manifest("sweep");
    m.sweep = Some(format!("delta={r}"));
    with_est(&mut m, est);
    ctx.finish(m, "sweep", vec![out])
}

fn nscan_rows(p: &PhysicalParams, ns: &[f64], sel: PoleSelector, form: FilterForm) -> Result<Vec<Vec<f64>>> {
    sweep(ns, |n| {
        let v = mirrorstate_core::analysis::mismatched_state(p, n, form, sel)?;
        Ok(vec![n, purity(&v)])
    })
}

fn nscan(ctx: &Ctx, delta: Option<f64>, r: Range, discard: DiscardArg, form: FormArg) -> Result<()> {
    let p = ctx.at(delta);
    let rows = nscan_rows(&p, &r.points(), discard.core(), form.core())?;
    let ys: Vec<f64> = rows.iter().map(|r| r[1]).collect();
    let (k, interior) = interior_argmax(&ys);
    println!("max purity {} at N = {}{}", num(ys[k]), rows[k][0], if interior { "" } else { " (edge of range)" });
    let out = ctx.path("nscan.csv");
    write_csv(&out, &["N", "purity"], &rows)?;
    let mut m = ctx.manifest("nscan");
    m.sweep = Some(format!("N={r}"));
    m.discard = Some(discard.name().to_string());
    m.filter = Some("one-mode".to_string());
    m.filter_form = Some(form.core().name().to_string());
    ctx.finish(m, "nscan", vec![out])
}

fn ellipse_series(label: &str, v: &CovMat2) -> Series {
    Series { label: label.to_string(), points: wigner_ellipse(v, 240).points, closed: true, dashed: false }
}

fn vacuum_series() -> Series {
    Series { label: "vacuum".to_string(), points: circle(2f64.sqrt(), 240), closed: true, dashed: true }
}

fn axis_labels(mode: ModeArg) -> (&'static str, &'static str) {
    match mode {
        ModeArg::Pendulum => ("δq (normalized)", "δp (normalized)"),
        ModeArg::Rotational => ("δΦ (normalized)", "δΠ (normalized)"),
    }
}

fn wigner(ctx: &Ctx, backend: Backend, delta: Option<f64>, mode: ModeArg, out: Option<PathBuf>, est: &Estimator) -> Result<()> {
    let p = ctx.at(delta);
    let (pen, rot) = estimate(&p, backend, est)?;
    let v = match mode {
        ModeArg::Pendulum => pen,
        ModeArg::Rotational => rot.context("no rotational state")?,
    };
    let (xl, yl) = axis_labels(mode);
    let chart = Chart {
        title: format!("Wigner contour, δ = {}", p.detuning_norm),
        x_label: xl.into(),
        y_label: yl.into(),
        series: vec![ellipse_series(est.filter.name(), &v), vacuum_series()],
        equal_axes: true,
    };
    let name = match mode {
        ModeArg::Pendulum => "wigner_pendulum",
        ModeArg::Rotational => "wigner_rotational",
    };
    let path = out.unwrap_or_else(|| ctx.path(&format!("{name}.svg")));
    chart.write(&path)?;
    let mut m = ctx.manifest("wigner");
    with_est(&mut m, est);
    ctx.finish(m, name, vec![path])
}

fn units_core(u: UnitsArg) -> NegativityUnits {
    match u {
        UnitsArg::PerMode => NegativityUnits::PerMode,
        UnitsArg::Physical => NegativityUnits::Physical,
    }
}

fn negativity_rows(p: &PhysicalParams, ds: &[f64], ratio: f64, units: UnitsArg) -> Result<Vec<Vec<f64>>> {
    sweep(ds, |d| {
        let r = negativity(p, d, ratio, units_core(units))?;
        Ok(vec![d, r.log_negativity])
    })
}

fn negativity_cmd(ctx: &Ctx, r: Range, ratio: f64, units: UnitsArg) -> Result<()> {
    if ratio.is_nan() || ratio <= 0.0 {
        bail!("--kappa-ratio must be positive");
    }
    let rows = negativity_rows(&ctx.params, &r.points(), ratio, units)?;
    let out = ctx.path("negativity.csv");
    write_csv(&out, &["delta", "EN"], &rows)?;
    let mut m = ctx.manifest("negativity");
    m.sweep = Some(format!("delta={r}, kappa_ratio={ratio}"));
    ctx.finish(m, "negativity", vec![out])
}

fn column(rows: &[Vec<f64>], k: usize) -> Vec<(f64, f64)> {
    rows.iter().map(|r| (r[0], r[k])).collect()
}

fn preset(ctx: &Ctx, backend: Backend, name: PresetName) -> Result<()> {
    let p = &ctx.params;
    let mut m = ctx.manifest("preset");
    let (stem, outputs) = match name {
        PresetName::Fig8 => {
            let n = dissipation_ratio(p);
            let r = Range { start: 0.01, end: 1.0, n: 100 };
            let rows = sweep(&r.points(), |d| {
                let q = p.with_delta(d);
                let two = two_mode_state(&q, backend, PoleSelector::All)?.0.pendulum;
                let one = onemode::mismatched(&q, 1.0, FilterForm::ClosedForm, backend, PoleSelector::All)?;
                let scaled = onemode::mismatched(&q, n, FilterForm::ClosedForm, backend, PoleSelector::All)?;
                let plant = Plant::two_mode(&q);
                Ok(vec![
                    d,
                    purity(&two),
                    purity(&one.normalized(&plant, q.hbar).pendulum),
                    purity(&scaled.normalized(&plant, q.hbar).pendulum),
                ])
            })?;
            let csv = ctx.path("fig8.csv");
            write_csv(&csv, &["delta", "purity_two_mode", "purity_one_mode", "purity_one_mode_418G"], &rows)?;
            let svg = ctx.path("fig8.svg");
            Chart {
                title: "Purity against detuning".into(),
                x_label: "δ".into(),
                y_label: "purity".into(),
                series: vec![
                    Series::line("two-mode", column(&rows, 1)),
                    Series::line("one-mode", column(&rows, 2)),
                    Series::line(&format!("one-mode, {n:.2}Γ"), column(&rows, 3)),
                ],
                equal_axes: false,
            }
            .write(&svg)?;
            m.sweep = Some(format!("delta={r}"));
            m.n_multiplier = Some(n);
            ("fig8", vec![csv, svg])
        }
        PresetName::Fig9 | PresetName::Fig10 => {
            let (two, _) = two_mode_state(p, backend, PoleSelector::All)?;
            let (stem, mode, series) = if name == PresetName::Fig9 {
                let one = onemode::mismatched(p, 1.0, FilterForm::ClosedForm, backend, PoleSelector::All)?
                    .normalized(&Plant::two_mode(p), p.hbar)
                    .pendulum;
                ("fig9", ModeArg::Pendulum, vec![ellipse_series("two-mode", &two.pendulum), ellipse_series("one-mode", &one), vacuum_series()])
            } else {
                let rot = two.rotational.context("no rotational state")?;
                ("fig10", ModeArg::Rotational, vec![ellipse_series("two-mode", &rot), vacuum_series()])
            };
            let csv = ctx.path(&format!("{stem}.csv"));
            let rows: Vec<Vec<f64>> = (0..series[0].points.len())
                .map(|k| series.iter().flat_map(|s| [s.points[k].0, s.points[k].1]).collect())
                .collect();
            let header: Vec<String> = series.iter().flat_map(|s| [format!("x_{}", s.label), format!("y_{}", s.label)]).collect();
            let header: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
            write_csv(&csv, &header, &rows)?;
            let (xl, yl) = axis_labels(mode);
            let svg = ctx.path(&format!("{stem}.svg"));
            Chart { title: format!("Wigner contour, δ = {}", p.detuning_norm), x_label: xl.into(), y_label: yl.into(), series, equal_axes: true }
                .write(&svg)?;
            (stem, vec![csv, svg])
        }
        PresetName::Fig11 => {
            let r = Range { start: 1.0, end: 10.0, n: 91 };
            let rows = nscan_rows(p, &r.points(), PoleSelector::DiscardRotational, FilterForm::ClosedForm)?;
            let csv = ctx.path("fig11.csv");
            write_csv(&csv, &["N", "purity"], &rows)?;
            let svg = ctx.path("fig11.svg");
            Chart {
                title: "Purity against dissipation multiplier, rotational poles discarded".into(),
                x_label: "N".into(),
                y_label: "purity".into(),
                series: vec![Series::line("one-mode filter", column(&rows, 1))],
                equal_axes: false,
            }
            .write(&svg)?;
            m.sweep = Some(format!("N={r}"));
            m.discard = Some("rotational".into());
            ("fig11", vec![csv, svg])
        }
        PresetName::Fig12 => {
            let r = Range { start: 0.005, end: 0.5, n: 100 };
            let rows = negativity_rows(p, &r.points(), 3.0, UnitsArg::PerMode)?;
            let csv = ctx.path("fig12.csv");
            write_csv(&csv, &["delta", "EN"], &rows)?;
            let svg = ctx.path("fig12.svg");
            Chart {
                title: "Logarithmic negativity, κ₋/κ₊ = 3".into(),
                x_label: "δ".into(),
                y_label: "E_N".into(),
                series: vec![Series::line("E_N", column(&rows, 1))],
                equal_axes: false,
            }
            .write(&svg)?;
            m.sweep = Some(format!("delta={r}, kappa_ratio=3"));
            ("fig12", vec![csv, svg])
        }
    };
    ctx.finish(m, stem, outputs)
}

