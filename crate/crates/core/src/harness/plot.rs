//! Self-contained SVG of mean risk against `p` on a log-scaled vertical axis.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::sweep::SweepResult;

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;

/// Plot-area geometry and data-to-pixel maps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axes {
    pub x_min: f64,
    pub x_max: f64,
    /// Decade exponents: the vertical axis spans `10^y_lo_exp ..= 10^y_hi_exp`.
    pub y_lo_exp: i32,
    pub y_hi_exp: i32,
}

impl Axes {
    fn fit(xs: &[f64], ys: &[f64]) -> Result<Self> {
        if ys.iter().any(|y| !y.is_finite() || *y <= 0.0) {
            return Err(Error::Config(
                "log-scaled plot needs positive finite values".into(),
            ));
        }
        let (mut x_min, mut x_max) = min_max(xs);
        if x_min == x_max {
            x_min -= 1.0;
            x_max += 1.0;
        }
        let (y_min, y_max) = min_max(ys);
        let y_lo_exp = y_min.log10().floor() as i32;
        let mut y_hi_exp = y_max.log10().ceil() as i32;
        if y_hi_exp == y_lo_exp {
            y_hi_exp += 1;
        }
        Ok(Axes {
            x_min,
            x_max,
            y_lo_exp,
            y_hi_exp,
        })
    }

    pub fn y_bounds(&self) -> (f64, f64) {
        (10f64.powi(self.y_lo_exp), 10f64.powi(self.y_hi_exp))
    }

    pub fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x_min) / (self.x_max - self.x_min) * (WIDTH - LEFT - RIGHT)
    }

    pub fn py(&self, y: f64) -> f64 {
        let t = (y.log10() - self.y_lo_exp as f64) / (self.y_hi_exp - self.y_lo_exp) as f64;
        HEIGHT - BOTTOM - t * (HEIGHT - TOP - BOTTOM)
    }
}

fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}

fn points(axes: &Axes, xs: &[f64], ys: &[f64]) -> String {
    xs.iter()
        .zip(ys)
        .map(|(&x, &y)| format!("{:.2},{:.2}", axes.px(x), axes.py(y)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn plot_svg(result: &SweepResult) -> Result<String> {
    if result.summary.is_empty() {
        return Err(Error::Config("cannot plot an empty sweep".into()));
    }
    let xs: Vec<f64> = result.summary.iter().map(|s| s.p as f64).collect();
    let risk_a: Vec<f64> = result.summary.iter().map(|s| s.risk_a.mean).collect();
    let risk_ba: Vec<f64> = result.summary.iter().map(|s| s.risk_ba.mean).collect();
    let null = result.mean_risk_null();
    let all_y: Vec<f64> = risk_a
        .iter()
        .chain(&risk_ba)
        .copied()
        .chain([null])
        .collect();
    let axes = Axes::fit(&xs, &all_y)?;
    let (y_lo, y_hi) = axes.y_bounds();
    let (x0, x1) = (axes.px(axes.x_min), axes.px(axes.x_max));
    let (y0, y1) = (axes.py(y_lo), axes.py(y_hi));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<g id="y-axis" data-scale="log10" data-min="{y_lo:e}" data-max="{y_hi:e}">"#
    );
    for e in axes.y_lo_exp..=axes.y_hi_exp {
        let y = axes.py(10f64.powi(e));
        let _ = writeln!(
            svg,
            r##"<line x1="{x0:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">1e{e}</text>"##,
            x0 - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(
        svg,
        r#"<g id="x-axis" data-min="{}" data-max="{}">"#,
        axes.x_min, axes.x_max
    );
    for &x in &xs {
        let px = axes.px(x);
        let _ = writeln!(
            svg,
            r#"<line x1="{px:.2}" y1="{y0:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{x}</text>"#,
            y0 + 5.0,
            y0 + 20.0
        );
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(
        svg,
        r#"<rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        x1 - x0,
        y0 - y1
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">p</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">risk (log scale)</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    let null_y = axes.py(null);
    let _ = writeln!(
        svg,
        r##"<line id="risk_null" x1="{x0:.2}" y1="{null_y:.2}" x2="{x1:.2}" y2="{null_y:.2}" stroke="#555" stroke-width="1.5" stroke-dasharray="6,4"/>"##
    );
    let _ = writeln!(
        svg,
        r##"<polyline id="risk_A" points="{}" fill="none" stroke="#1f77b4" stroke-width="2"/>"##,
        points(&axes, &xs, &risk_a)
    );
    let _ = writeln!(
        svg,
        r##"<polyline id="risk_BA" points="{}" fill="none" stroke="#d62728" stroke-width="2"/>"##,
        points(&axes, &xs, &risk_ba)
    );

    let legend = [
        ("#555", "6,4", "null risk"),
        ("#1f77b4", "none", "risk A"),
        ("#d62728", "none", "risk BA"),
    ];
    let lx = x1 + 15.0;
    for (i, (color, dash, label)) in legend.iter().enumerate() {
        let ly = y1 + 15.0 + 20.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2" stroke-dasharray="{dash}"/><text x="{:.2}" y="{:.2}">{label}</text>"#,
            lx + 25.0,
            lx + 32.0,
            ly + 4.0
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn emit_plot(result: &SweepResult, path: &Path) -> Result<()> {
    let svg = plot_svg(result)?;
    fs::write(path, svg).map_err(|e| Error::io(path, e))
}
