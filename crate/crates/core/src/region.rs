//! Boundary curves of the feasible regions `{(H(p), f(‖p‖α)) : p ∈ 𝒫_n}`.
//!
//! The boundary is traced by the two families. The `V` curve is sampled at
//! entropies equally spaced over `[0, ln n]`; the `W` curve is sampled bracket
//! by bracket with the breakpoints `H = ln m` (the uniform distributions on
//! `m` points) inserted exactly, so the kinks of the `W` boundary survive.
//! Between points, curves are read by linear interpolation.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::bounds::{measure_value, MeasureSpec};
use crate::error::{Error, Result};
use crate::extremal::{ExtremalFamily, Family};

/// Default number of points on the `V` curve.
pub const DEFAULT_RESOLUTION: usize = 512;

/// Quantity on the horizontal axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum XAxis {
    /// `H(p)`.
    ShannonEntropy,
    /// `D(p ‖ u_n) = ln n - H(p)`.
    RelEntropyFromUniform,
    /// `I(X;Y) = ln n - H(X|Y)` for a uniformly focusing channel with uniform
    /// input; numerically the same map as `RelEntropyFromUniform`.
    MutualInformation,
}

impl XAxis {
    fn coordinate(self, h: f64, n: usize) -> f64 {
        match self {
            XAxis::ShannonEntropy => h,
            XAxis::RelEntropyFromUniform | XAxis::MutualInformation => {
                ((n as f64).ln() - h).max(0.0)
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            XAxis::ShannonEntropy => "entropy",
            XAxis::RelEntropyFromUniform => "divergence",
            XAxis::MutualInformation => "mutual-information",
        }
    }
}

impl FromStr for XAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "entropy" | "shannon" | "h" => Ok(XAxis::ShannonEntropy),
            "divergence" | "relative-entropy" | "kl" => Ok(XAxis::RelEntropyFromUniform),
            "mutual-information" | "mi" | "i" => Ok(XAxis::MutualInformation),
            _ => Err(Error::Parse(format!("unknown x axis {s:?}"))),
        }
    }
}

/// One boundary polyline, ordered by strictly increasing `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionCurve {
    pub label: Family,
    pub points: Vec<(f64, f64)>,
    pub n: usize,
    #[serde(skip)]
    pub measure: MeasureSpec,
    pub x_axis: XAxis,
}

impl RegionCurve {
    /// Linear interpolation at `x`; `None` outside the curve's x range.
    pub fn interpolate(&self, x: f64) -> Option<f64> {
        let pts = &self.points;
        let (first, last) = (pts.first()?, pts.last()?);
        if x < first.0 || x > last.0 {
            return None;
        }
        let i = pts.partition_point(|pt| pt.0 < x);
        if i == 0 {
            return Some(first.1);
        }
        let (x0, y0) = pts[i - 1];
        let (x1, y1) = pts[i];
        if x1 == x0 {
            return Some(y1);
        }
        Some(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
    }

    pub fn x_range(&self) -> (f64, f64) {
        (self.points[0].0, self.points[self.points.len() - 1].0)
    }
}

fn finish(points: Vec<(f64, f64)>, x_axis: XAxis) -> Vec<(f64, f64)> {
    let mut pts = points;
    if x_axis != XAxis::ShannonEntropy {
        pts.reverse();
    }
    pts.dedup_by(|b, a| b.0 <= a.0);
    pts
}

/// The `V` and `W` boundary curves for `measure` plotted against `x_axis`.
pub fn boundary_curves(
    n: usize,
    measure: &MeasureSpec,
    x_axis: XAxis,
    resolution: usize,
) -> Result<(RegionCurve, RegionCurve)> {
    if resolution < 2 {
        return Err(Error::DomainViolation(format!(
            "resolution must be at least 2, got {resolution}"
        )));
    }
    let v = ExtremalFamily::v(n)?;
    let w = ExtremalFamily::w(n)?;
    let ln_n = (n as f64).ln();

    let mut v_pts = Vec::with_capacity(resolution);
    for i in 0..resolution {
        let h = if i + 1 == resolution {
            ln_n
        } else {
            ln_n * i as f64 / (resolution - 1) as f64
        };
        let p = v.inverse_entropy(h)?;
        let y = measure_value(&v.distribution(p)?, measure);
        v_pts.push((x_axis.coordinate(h, n), y));
    }

    let per_bracket = (resolution / (n - 1)).max(2);
    let mut w_pts = Vec::with_capacity(per_bracket * (n - 1) + 1);
    w_pts.push((x_axis.coordinate(0.0, n), measure_value(&w.distribution(1.0)?, measure)));
    for m in 2..=n {
        let (h0, h1) = (((m - 1) as f64).ln(), (m as f64).ln());
        for j in 1..per_bracket {
            let h = h0 + (h1 - h0) * j as f64 / (per_bracket - 1) as f64;
            // the bracket end is the uniform distribution on m points
            let p = if j + 1 == per_bracket {
                1.0 / m as f64
            } else {
                w.inverse_entropy(h)?
            };
            let h = if j + 1 == per_bracket { h1 } else { h };
            let y = measure_value(&w.distribution(p)?, measure);
            w_pts.push((x_axis.coordinate(h, n), y));
        }
    }

    let curve = |label, points| RegionCurve {
        label,
        points: finish(points, x_axis),
        n,
        measure: *measure,
        x_axis,
    };
    Ok((curve(Family::V, v_pts), curve(Family::W, w_pts)))
}

/// Whether `(x, y)` lies between the two curves, within `band`.
pub fn between(a: &RegionCurve, b: &RegionCurve, x: f64, y: f64, band: f64) -> bool {
    match (a.interpolate(x), b.interpolate(x)) {
        (Some(ya), Some(yb)) => ya.min(yb) - band <= y && y <= ya.max(yb) + band,
        _ => false,
    }
}

/// One row of the curve CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvPoint {
    pub label: String,
    pub x: f64,
    pub y: f64,
    pub n: usize,
    pub measure: String,
    pub order: String,
}

pub const CSV_HEADER: [&str; 6] = ["label", "x", "y", "n", "measure", "order"];

fn label_str(f: Family) -> &'static str {
    match f {
        Family::V => "V",
        Family::W => "W",
    }
}

/// Write curves as CSV: header, then one row per point, 17 significant
/// digits, LF line endings.
pub fn write_csv<W: Write>(curves: &[RegionCurve], out: W) -> Result<()> {
    if curves.is_empty() {
        return Err(Error::Empty);
    }
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    wtr.write_record(CSV_HEADER).map_err(csv_err)?;
    for c in curves {
        let n = c.n.to_string();
        let order = c.measure.order().to_string();
        for (x, y) in &c.points {
            wtr.write_record([
                label_str(c.label),
                &format!("{x:.16e}"),
                &format!("{y:.16e}"),
                &n,
                c.measure.name(),
                &order,
            ])
            .map_err(csv_err)?;
        }
    }
    wtr.flush()?;
    Ok(())
}

/// Write curves as CSV to `path`.
pub fn emit_csv(curves: &[RegionCurve], path: impl AsRef<Path>) -> Result<()> {
    if curves.is_empty() {
        return Err(Error::Empty);
    }
    let file = File::create(path)?;
    write_csv(curves, BufWriter::new(file))
}

/// Parse CSV produced by [`write_csv`].
pub fn read_csv(text: &str) -> Result<Vec<CsvPoint>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Parse(format!("unexpected header {header:?}")));
    }
    let num = |s: &str| s.parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
    rdr.records()
        .map(|rec| {
            let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
            Ok(CsvPoint {
                label: rec[0].to_string(),
                x: num(&rec[1])?,
                y: num(&rec[2])?,
                n: rec[3].parse().map_err(|e| Error::Parse(format!("n: {e}")))?,
                measure: rec[4].to_string(),
                order: rec[5].to_string(),
            })
        })
        .collect()
}

#[derive(Serialize)]
struct JsonCurve<'a> {
    label: &'static str,
    points: Vec<[f64; 2]>,
    #[serde(skip)]
    _curve: std::marker::PhantomData<&'a ()>,
}

/// JSON mirror of the CSV: `{"curves": [{"label", "points": [[x, y], ...]}]}`.
pub fn curves_to_json(curves: &[RegionCurve]) -> String {
    let body: Vec<JsonCurve<'_>> = curves
        .iter()
        .map(|c| JsonCurve {
            label: label_str(c.label),
            points: c.points.iter().map(|(x, y)| [*x, *y]).collect(),
            _curve: std::marker::PhantomData,
        })
        .collect();
    serde_json::json!({ "curves": body }).to_string()
}
