//! Deterministic SVG line charts from CSV tables.
//!
//! A plot spec is a flat text file:
//!
//! ```text
//! title   = Mutual information
//! x-label = Z
//! y-label = I (nats)
//! x-scale = linear            # or log
//! y-scale = linear
//! output  = fig.svg
//! curve   = I_r | z | i_r     # name | x column | y column [| csv file]
//! curve   = I_p | z | i_p
//! inset   = 10, 30            # optional zoom on this x range
//! ```
//!
//! Curve files are resolved against the directory of the spec file.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{CliError, CliResult};
use crate::table::Table;

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub name: String,
    pub x: String,
    pub y: String,
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PlotSpec {
    pub title: Option<String>,
    pub x_label: String,
    pub y_label: String,
    pub x_log: bool,
    pub y_log: bool,
    pub curves: Vec<CurveSpec>,
    pub inset: Option<(f64, f64)>,
    pub output: Option<PathBuf>,
}

fn parse_scale(v: &str) -> CliResult<bool> {
    match v {
        "linear" => Ok(false),
        "log" => Ok(true),
        other => Err(CliError::Config(format!("unknown axis scale '{other}'"))),
    }
}

impl PlotSpec {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut spec = PlotSpec::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |what: &str| CliError::Config(format!("plot spec line {}: {what}", n + 1));
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key = value"))?;
            let value = value.trim();
            match key.trim().replace('_', "-").as_str() {
                "title" => spec.title = Some(value.to_string()),
                "x-label" => spec.x_label = value.to_string(),
                "y-label" => spec.y_label = value.to_string(),
                "x-scale" => spec.x_log = parse_scale(value)?,
                "y-scale" => spec.y_log = parse_scale(value)?,
                "output" => spec.output = Some(PathBuf::from(value)),
                "curve" => {
                    let parts: Vec<&str> = value.split('|').map(str::trim).collect();
                    if !(3..=4).contains(&parts.len()) || parts[..3].iter().any(|p| p.is_empty()) {
                        return Err(bad("curve needs name | x | y [| file]"));
                    }
                    spec.curves.push(CurveSpec {
                        name: parts[0].to_string(),
                        x: parts[1].to_string(),
                        y: parts[2].to_string(),
                        file: parts.get(3).filter(|f| !f.is_empty()).map(PathBuf::from),
                    });
                }
                "inset" => {
                    let (a, b) = value.split_once(',').ok_or_else(|| bad("inset needs lo, hi"))?;
                    let lo: f64 = a.trim().parse().map_err(|_| bad("inset bound"))?;
                    let hi: f64 = b.trim().parse().map_err(|_| bad("inset bound"))?;
                    if !(lo < hi) {
                        return Err(bad("inset needs lo < hi"));
                    }
                    spec.inset = Some((lo, hi));
                }
                other => return Err(bad(&format!("unknown key '{other}'"))),
            }
        }
        Ok(spec)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

fn load_table(path: &Path) -> CliResult<Table> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Table::parse(&text)
}

/// Reads every curve from its own file or from `default`.
pub fn resolve_series(spec: &PlotSpec, default: Option<&Table>, base: &Path) -> CliResult<Vec<Series>> {
    if spec.curves.is_empty() {
        return Err(CliError::MissingColumn("<no curves in plot spec>".into()));
    }
    spec.curves
        .iter()
        .map(|c| {
            let points = match &c.file {
                Some(f) => load_table(&base.join(f))?.pairs(&c.x, &c.y)?,
                None => default
                    .ok_or_else(|| CliError::MissingColumn(format!("{} (no input table)", c.y)))?
                    .pairs(&c.x, &c.y)?,
            };
            Ok(Series {
                name: c.name.clone(),
                points,
            })
        })
        .collect()
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
const DASHES: [&str; 4] = ["", "6 3", "2 2", "8 3 2 3"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[derive(Debug, Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
    step: f64,
    log: bool,
}

impl Axis {
    /// Range rounded outward to tick multiples.
    fn fit(values: impl Iterator<Item = f64>, log: bool, target: usize) -> Axis {
        let (mut lo, mut hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(v), b.max(v))
        });
        if !lo.is_finite() {
            (lo, hi) = (0.0, 1.0);
        }
        if log {
            let (lo, hi) = (lo.floor(), hi.ceil().max(lo.floor() + 1.0));
            let step = ((hi - lo) / target as f64).ceil().max(1.0);
            return Axis { lo, hi, step, log };
        }
        if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
            let pad = if lo == 0.0 { 1.0 } else { 0.1 * lo.abs() };
            (lo, hi) = (lo - pad, hi + pad);
        }
        let raw = (hi - lo) / target as f64;
        let mag = 10f64.powf(raw.log10().floor());
        let norm = raw / mag;
        let step = mag
            * if norm <= 1.0 {
                1.0
            } else if norm <= 2.0 {
                2.0
            } else if norm <= 5.0 {
                5.0
            } else {
                10.0
            };
        Axis {
            lo: (lo / step).floor() * step,
            hi: (hi / step).ceil() * step,
            step,
            log,
        }
    }

    fn ticks(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.lo + i as f64 * self.step).collect()
    }

    fn label(&self, v: f64) -> String {
        if self.log {
            return format!("1e{}", v.round() as i64);
        }
        let decimals = (-self.step.log10().floor()).max(0.0) as usize;
        let s = format!("{v:.decimals$}");
        if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
            "0".into()
        } else {
            s
        }
    }
}

/// Axis-space coordinates; log axes take `log10`, dropping non-positive
/// values.
fn transform(points: &[(f64, f64)], x_log: bool, y_log: bool) -> Vec<(f64, f64)> {
    points
        .iter()
        .filter(|(x, y)| (!x_log || *x > 0.0) && (!y_log || *y > 0.0))
        .map(|&(x, y)| {
            (
                if x_log { x.log10() } else { x },
                if y_log { y.log10() } else { y },
            )
        })
        .collect()
}

struct Frame {
    left: f64,
    top: f64,
    width: f64,
    height: f64,
    x: Axis,
    y: Axis,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x.lo) / (self.x.hi - self.x.lo) * self.width
    }

    fn py(&self, y: f64) -> f64 {
        self.top + self.height - (y - self.y.lo) / (self.y.hi - self.y.lo) * self.height
    }

    fn draw_axes(&self, out: &mut String, font: f64, tick_len: f64) {
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="white" stroke="black" stroke-width="1"/>"#,
            self.left, self.top, self.width, self.height
        );
        let bottom = self.top + self.height;
        for t in self.x.ticks() {
            let px = self.px(t);
            let _ = writeln!(
                out,
                r#"<line x1="{px:.2}" y1="{bottom:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#,
                bottom - tick_len
            );
            let _ = writeln!(
                out,
                r#"<text x="{px:.2}" y="{:.2}" font-size="{font}" text-anchor="middle">{}</text>"#,
                bottom + font + 2.0,
                self.x.label(t)
            );
        }
        for t in self.y.ticks() {
            let py = self.py(t);
            let _ = writeln!(
                out,
                r#"<line x1="{:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="black"/>"#,
                self.left,
                self.left + tick_len
            );
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-size="{font}" text-anchor="end">{}</text>"#,
                self.left - 4.0,
                py + font / 3.0,
                self.y.label(t)
            );
        }
    }

    fn draw_series(&self, out: &mut String, series: &[Vec<(f64, f64)>], width: f64) {
        for (i, pts) in series.iter().enumerate() {
            if pts.is_empty() {
                continue;
            }
            let coords: Vec<String> = pts
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", self.px(x), self.py(y)))
                .collect();
            let dash = DASHES[i % DASHES.len()];
            let dash_attr = if dash.is_empty() {
                String::new()
            } else {
                format!(r#" stroke-dasharray="{dash}""#)
            };
            let _ = writeln!(
                out,
                r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="{width}"{dash_attr}/>"#,
                coords.join(" "),
                COLORS[i % COLORS.len()]
            );
        }
    }
}

/// Renders the chart. Output depends only on the arguments.
pub fn render_svg(spec: &PlotSpec, series: &[Series]) -> CliResult<String> {
    if series.is_empty() {
        return Err(CliError::MissingColumn("<no curves in plot spec>".into()));
    }
    let data: Vec<Vec<(f64, f64)>> = series
        .iter()
        .map(|s| transform(&s.points, spec.x_log, spec.y_log))
        .collect();
    let all = || data.iter().flatten();
    let main = Frame {
        left: 80.0,
        top: 40.0,
        width: 470.0,
        height: 370.0,
        x: Axis::fit(all().map(|p| p.0), spec.x_log, 6),
        y: Axis::fit(all().map(|p| p.1), spec.y_log, 6),
    };

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    if let Some(title) = &spec.title {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="24" font-size="16" text-anchor="middle">{}</text>"#,
            main.left + main.width / 2.0,
            escape(title)
        );
    }
    main.draw_axes(&mut out, 11.0, 5.0);
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">{}</text>"#,
        main.left + main.width / 2.0,
        main.top + main.height + 36.0,
        escape(&spec.x_label)
    );
    let (ly_x, ly_y) = (22.0, main.top + main.height / 2.0);
    let _ = writeln!(
        out,
        r#"<text x="{ly_x:.2}" y="{ly_y:.2}" font-size="13" text-anchor="middle" transform="rotate(-90 {ly_x:.2} {ly_y:.2})">{}</text>"#,
        escape(&spec.y_label)
    );
    let _ = writeln!(
        out,
        r#"<clipPath id="main-clip"><rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/></clipPath>"#,
        main.left, main.top, main.width, main.height
    );
    let _ = writeln!(out, r#"<g clip-path="url(#main-clip)">"#);
    main.draw_series(&mut out, &data, 1.5);
    let _ = writeln!(out, "</g>");

    // legend
    let legend_x = main.left + main.width + 20.0;
    for (i, s) in series.iter().enumerate() {
        let y = main.top + 10.0 + 20.0 * i as f64;
        let dash = DASHES[i % DASHES.len()];
        let dash_attr = if dash.is_empty() {
            String::new()
        } else {
            format!(r#" stroke-dasharray="{dash}""#)
        };
        let _ = writeln!(
            out,
            r#"<line x1="{legend_x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="1.5"{dash_attr}/>"#,
            legend_x + 24.0,
            COLORS[i % COLORS.len()]
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12">{}</text>"#,
            legend_x + 30.0,
            y + 4.0,
            escape(&s.name)
        );
    }

    if let Some((lo, hi)) = spec.inset {
        let (lo, hi) = if spec.x_log {
            (lo.max(f64::MIN_POSITIVE).log10(), hi.max(f64::MIN_POSITIVE).log10())
        } else {
            (lo, hi)
        };
        let zoomed: Vec<Vec<(f64, f64)>> = data
            .iter()
            .map(|pts| pts.iter().copied().filter(|p| p.0 >= lo && p.0 <= hi).collect())
            .collect();
        let inner = || zoomed.iter().flatten();
        let inset = Frame {
            left: main.left + main.width * 0.55,
            top: main.top + 12.0,
            width: main.width * 0.4,
            height: main.height * 0.38,
            x: Axis::fit(inner().map(|p| p.0).chain([lo, hi]), spec.x_log, 3),
            y: Axis::fit(inner().map(|p| p.1), spec.y_log, 3),
        };
        let _ = writeln!(
            out,
            r#"<clipPath id="inset-clip"><rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/></clipPath>"#,
            inset.left, inset.top, inset.width, inset.height
        );
        inset.draw_axes(&mut out, 9.0, 3.0);
        let _ = writeln!(out, r#"<g clip-path="url(#inset-clip)">"#);
        inset.draw_series(&mut out, &zoomed, 1.0);
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> (PlotSpec, Vec<Series>) {
        let spec = PlotSpec::parse(
            "title = MI\nx-label = Z\ny-label = I\ncurve = I_r | z | i_r\ncurve = I_p | z | i_p\ninset = 3, 5\n",
        )
        .unwrap();
        let table = Table::parse("z,i_r,i_p\n2,0.58,0.55\n3,0.55,0.54\n4,0.536,0.534\n5,0.528,0.530\n").unwrap();
        let series = resolve_series(&spec, Some(&table), Path::new(".")).unwrap();
        (spec, series)
    }

    #[test]
    fn deterministic_output() {
        let (spec, series) = sample();
        let a = render_svg(&spec, &series).unwrap();
        let b = render_svg(&spec, &series).unwrap();
        assert_eq!(a, b);
        assert!(a.contains(r#"version="1.1""#));
        assert_eq!(a.matches("<polyline").count(), 4);
        assert!(!a.contains("href"));
    }

    #[test]
    fn empty_curve_list_is_missing_column() {
        let spec = PlotSpec::parse("x-label = Z\n").unwrap();
        assert!(matches!(
            resolve_series(&spec, None, Path::new(".")),
            Err(CliError::MissingColumn(_))
        ));
        assert!(matches!(render_svg(&spec, &[]), Err(CliError::MissingColumn(_))));
    }

    #[test]
    fn unknown_column_is_missing_column() {
        let spec = PlotSpec::parse("curve = a | z | nope\n").unwrap();
        let table = Table::parse("z,y\n1,2\n").unwrap();
        assert!(matches!(
            resolve_series(&spec, Some(&table), Path::new(".")),
            Err(CliError::MissingColumn(c)) if c == "nope"
        ));
    }

    #[test]
    fn spec_parse_errors() {
        assert!(PlotSpec::parse("curve = a | b\n").is_err());
        assert!(PlotSpec::parse("x-scale = cubic\n").is_err());
        assert!(PlotSpec::parse("inset = 5, 3\n").is_err());
        assert!(PlotSpec::parse("colour = red\n").is_err());
    }

    #[test]
    fn nice_ticks() {
        let a = Axis::fit([0.503, 0.58].into_iter(), false, 6);
        assert!(a.lo <= 0.503 && a.hi >= 0.58);
        assert_eq!(a.label(0.5), "0.50");
        let l = Axis::fit([-3.0, 2.0].into_iter(), true, 6);
        assert_eq!(l.label(-3.0), "1e-3");
    }
}
