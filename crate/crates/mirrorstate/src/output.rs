//! CSV tables and small SVG charts.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context, Result};

/// 12 significant digits, scientific notation.
pub fn num(v: f64) -> String {
    if v == 0.0 {
        // keep −0 and +0 identical in output
        return "0.00000000000e0".to_string();
    }
    format!("{v:.11e}")
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r.iter().map(|v| num(*v)))?;
    }
    w.flush()?;
    Ok(())
}

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    /// draw as a closed outline instead of a polyline
    pub closed: bool,
    pub dashed: bool,
}

impl Series {
    pub fn line(label: &str, points: Vec<(f64, f64)>) -> Self {
        Series { label: label.to_string(), points, closed: false, dashed: false }
    }
}

pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// same scale on both axes (phase-space plots)
    pub equal_axes: bool,
}

const COLORS: [&str; 5] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#7f7f7f"];
const W: f64 = 640.0;
const H: f64 = 480.0;
const PAD: f64 = 60.0;

fn bounds(series: &[Series]) -> (f64, f64, f64, f64) {
    let mut b = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in series.iter().flat_map(|s| s.points.iter()) {
        if x.is_finite() && y.is_finite() {
            b = (b.0.min(*x), b.1.max(*x), b.2.min(*y), b.3.max(*y));
        }
    }
    if !b.0.is_finite() {
        return (0.0, 1.0, 0.0, 1.0);
    }
    if b.1 == b.0 {
        b.1 = b.0 + 1.0;
    }
    if b.3 == b.2 {
        b.3 = b.2 + 1.0;
    }
    b
}

impl Chart {
    pub fn to_svg(&self) -> String {
        let (mut x0, mut x1, mut y0, mut y1) = bounds(&self.series);
        let (pw, ph) = (W - 2.0 * PAD, H - 2.0 * PAD);
        if self.equal_axes {
            let r = x0.abs().max(x1.abs()).max(y0.abs()).max(y1.abs()) * 1.05;
            (x0, x1, y0, y1) = (-r * pw / ph, r * pw / ph, -r, r);
        } else {
            let m = 0.05 * (y1 - y0);
            (y0, y1) = (y0 - m, y1 + m);
        }
        let sx = |x: f64| PAD + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| H - PAD - (y - y0) / (y1 - y0) * ph;

        let mut s = String::new();
        writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#).unwrap();
        writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
        writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="16">{}</text>"#, W / 2.0, esc(&self.title)).unwrap();
        writeln!(s, r#"<rect x="{PAD}" y="{PAD}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#).unwrap();
        for k in 0..=4 {
            let fx = x0 + (x1 - x0) * k as f64 / 4.0;
            let fy = y0 + (y1 - y0) * k as f64 / 4.0;
            writeln!(s, r#"<text x="{:.1}" y="{}" text-anchor="middle" font-size="11">{}</text>"#, sx(fx), H - PAD + 16.0, tick(fx)).unwrap();
            writeln!(s, r#"<text x="{}" y="{:.1}" text-anchor="end" font-size="11">{}</text>"#, PAD - 6.0, sy(fy) + 4.0, tick(fy)).unwrap();
        }
        writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle" font-size="13">{}</text>"#, W / 2.0, H - 16.0, esc(&self.x_label)).unwrap();
        writeln!(
            s,
            r#"<text x="16" y="{}" text-anchor="middle" font-size="13" transform="rotate(-90 16 {})">{}</text>"#,
            H / 2.0,
            H / 2.0,
            esc(&self.y_label)
        )
        .unwrap();
        for (i, ser) in self.series.iter().enumerate() {
            let color = COLORS[i % COLORS.len()];
            let pts: Vec<String> = ser
                .points
                .iter()
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .map(|(x, y)| format!("{:.2},{:.2}", sx(*x), sy(*y)))
                .collect();
            let tag = if ser.closed { "polygon" } else { "polyline" };
            let dash = if ser.dashed { r#" stroke-dasharray="6 4""# } else { "" };
            writeln!(s, r#"<{tag} fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"#, pts.join(" ")).unwrap();
            let ly = PAD + 16.0 + 16.0 * i as f64;
            writeln!(s, r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"{dash}/>"#, W - PAD - 150.0, W - PAD - 130.0).unwrap();
            writeln!(s, r#"<text x="{}" y="{}" font-size="12">{}</text>"#, W - PAD - 124.0, ly + 4.0, esc(&ser.label)).unwrap();
        }
        s.push_str("</svg>\n");
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_svg()).with_context(|| format!("writing {}", path.display()))
    }
}

fn tick(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-2..1e4).contains(&a) {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Circle of radius r about the origin.
pub fn circle(r: f64, n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            (r * t.cos(), r * t.sin())
        })
        .collect()
}
