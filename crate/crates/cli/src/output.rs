//! File emitters: CSV tables, JSON documents, minimal SVG line plots and
//! ASCII grids. All writes are atomic (write to a temp file, then rename),
//! and every file carries the units note.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::config::UNITS_NOTE;

/// Write `content` to `dir/name` atomically.
pub fn write_atomic(dir: &Path, name: &str, content: &str) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let target = dir.join(name);
    let tmp = dir.join(format!("{name}.tmp"));
    fs::write(&tmp, content)?;
    fs::rename(&tmp, &target)?;
    Ok(target)
}

/// CSV with a leading `#` units comment and a header row. Cells are written
/// with the shortest round-trip float representation; `None` becomes an
/// empty field.
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<Option<String>>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, cells: Vec<Option<String>>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# units: {UNITS_NOTE}");
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let line: Vec<&str> = row.iter().map(|c| c.as_deref().unwrap_or("")).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }
}

pub fn num(v: f64) -> Option<String> {
    Some(format!("{v}"))
}

/// Pretty JSON with a trailing newline.
pub fn render_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// Axis mapping for the SVG plotter.
#[derive(Debug, Clone, Copy)]
pub enum Scale {
    Linear,
    Log,
}

fn map_coord(v: f64, lo: f64, hi: f64, scale: Scale, out_lo: f64, out_hi: f64) -> f64 {
    let t = match scale {
        Scale::Linear => (v - lo) / (hi - lo),
        Scale::Log => (v.ln() - lo.ln()) / (hi.ln() - lo.ln()),
    };
    out_lo + t * (out_hi - out_lo)
}

/// One polyline in data coordinates.
pub struct Series {
    pub label: String,
    pub color: &'static str,
    pub points: Vec<(f64, f64)>,
}

/// Minimal SVG 1.1 line plot: frame, two axis labels, polylines.
pub struct SvgPlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub x_scale: Scale,
    pub y_scale: Scale,
    pub series: Vec<Series>,
}

const W: f64 = 640.0;
const H: f64 = 480.0;
const MARGIN: f64 = 54.0;

impl SvgPlot {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
        );
        let _ = writeln!(out, "<!-- units: {UNITS_NOTE} -->");
        let _ = writeln!(
            out,
            r#"<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>"#
        );
        let _ = writeln!(
            out,
            r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            W - 2.0 * MARGIN,
            H - 2.0 * MARGIN
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
            W / 2.0,
            xml_escape(&self.title)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" font-size="12">{}</text>"#,
            W / 2.0,
            H - 12.0,
            xml_escape(&self.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="16" y="{}" text-anchor="middle" font-size="12" transform="rotate(-90 16 {})">{}</text>"#,
            H / 2.0,
            H / 2.0,
            xml_escape(&self.y_label)
        );
        for s in &self.series {
            if s.points.is_empty() {
                continue;
            }
            let pts: Vec<String> = s
                .points
                .iter()
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .map(|&(x, y)| {
                    let px = map_coord(x, self.x_range.0, self.x_range.1, self.x_scale, MARGIN, W - MARGIN);
                    let py = map_coord(y, self.y_range.0, self.y_range.1, self.y_scale, H - MARGIN, MARGIN);
                    format!("{px:.2},{py:.2}")
                })
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"><title>{}</title></polyline>"#,
                s.color,
                pts.join(" "),
                xml_escape(&s.label)
            );
        }
        let _ = writeln!(out, "</svg>");
        out
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Downsampled character map of a classification grid: `#` gain, `.` loss,
/// `o` balanced. Rows print top-to-bottom in decreasing row coordinate.
pub fn ascii_grid(
    rows: usize,
    cols: usize,
    cell: impl Fn(usize, usize) -> char,
    max_w: usize,
    max_h: usize,
) -> String {
    let step_r = rows.div_ceil(max_h).max(1);
    let step_c = cols.div_ceil(max_w).max(1);
    let mut out = String::new();
    let _ = writeln!(out, "# units: {UNITS_NOTE}");
    let mut r = rows;
    while r > 0 {
        let rr = r - 1;
        if rr.is_multiple_of(step_r) {
            let mut line = String::new();
            let mut c = 0;
            while c < cols {
                line.push(cell(rr, c));
                c += step_c;
            }
            let _ = writeln!(out, "{line}");
        }
        r -= 1;
    }
    out
}
