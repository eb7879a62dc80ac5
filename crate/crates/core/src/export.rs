//! File exporters: CSV and JSON samples, Wavefront OBJ polylines, SVG
//! projections and plain-text identity reports.
//!
//! Numbers are written as the shortest decimal that round-trips the value
//! after rounding it to 12 significant digits, so reruns are byte-identical.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::helix::{lattice_points, CurveSamples, DoubleHelix, MapId, Point3};
use crate::identity::{render_reports, IdentityReport};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds `v` to 12 significant digits.
pub fn round_sig(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return if v == 0.0 { 0.0 } else { v };
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v)
        .parse()
        .expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Shortest decimal for `v` rounded to 12 significant digits; `-0` prints as `0`.
pub fn fmt_num(v: f64) -> String {
    format!("{}", round_sig(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Csv,
    Json,
    Obj,
    Svg,
    Report,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "obj" => Ok(Format::Obj),
            "svg" => Ok(Format::Svg),
            "report" | "txt" | "text" => Ok(Format::Report),
            other => Err(Error::Domain(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Projection {
    #[default]
    None,
    XY,
    XZ,
    YZ,
}

impl Projection {
    fn project(self, p: &Point3) -> (f64, f64) {
        match self {
            Projection::XY => (p.x, p.y),
            Projection::XZ | Projection::None => (p.x, p.z),
            Projection::YZ => (p.y, p.z),
        }
    }
}

impl FromStr for Projection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "xy" => Ok(Projection::XY),
            "xz" => Ok(Projection::XZ),
            "yz" => Ok(Projection::YZ),
            "none" => Ok(Projection::None),
            other => Err(Error::Domain(format!("unknown projection `{other}`"))),
        }
    }
}

/// Stroke colour for a map: Lucas black, Pell red, Fibonacci blue.
pub fn default_color(map: MapId) -> &'static str {
    match map.family() {
        "lucas" => "black",
        "pell" => "red",
        "fibonacci" => "blue",
        "fibonacci-lucas" => "green",
        _ => "orange",
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Source<'a> {
    Curve(&'a CurveSamples),
    Double(&'a DoubleHelix),
    /// Several coaxial curves without rungs.
    Bundle(&'a [CurveSamples]),
    Reports(&'a [IdentityReport]),
}

impl<'a> Source<'a> {
    fn strands(&self) -> Vec<&'a CurveSamples> {
        match *self {
            Source::Curve(c) => vec![c],
            Source::Double(d) => vec![d.strand_a(), d.strand_b()],
            Source::Bundle(b) => b.iter().collect(),
            Source::Reports(_) => Vec::new(),
        }
    }

    fn rungs(&self) -> &'a [(usize, usize)] {
        match *self {
            Source::Double(d) => d.rungs(),
            _ => &[],
        }
    }
}

/// Per-strand colours; `None` falls back to [`default_color`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Style {
    pub colors: Option<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct ExportJob<'a> {
    pub source: Source<'a>,
    pub format: Format,
    pub projection: Projection,
    pub style: Style,
}

impl<'a> ExportJob<'a> {
    pub fn new(source: Source<'a>, format: Format) -> Self {
        ExportJob {
            source,
            format,
            projection: Projection::None,
            style: Style::default(),
        }
    }

    pub fn with_projection(mut self, projection: Projection) -> Self {
        self.projection = projection;
        self
    }

    pub fn render(&self) -> Result<Vec<u8>> {
        if self.projection != Projection::None && self.format != Format::Svg {
            return Err(Error::Unsupported(
                "a projection applies to SVG output only".into(),
            ));
        }
        let mut out = Vec::new();
        match (self.format, self.source) {
            (Format::Report, Source::Reports(r)) => {
                out.extend_from_slice(render_reports(r).as_bytes());
            }
            (Format::Report, _) | (_, Source::Reports(_)) => {
                return Err(Error::Unsupported(
                    "identity reports export only as text reports".into(),
                ))
            }
            (Format::Csv, Source::Curve(c)) => {
                export_csv(c, &mut out)?;
            }
            (Format::Csv, _) => {
                return Err(Error::Unsupported("CSV holds a single curve".into()));
            }
            (Format::Json, src) => {
                let v = json_value(&src);
                serde_json::to_writer_pretty(&mut out, &v).map_err(std::io::Error::from)?;
                out.push(b'\n');
            }
            (Format::Obj, src) => {
                export_obj(&src, &mut out)?;
            }
            (Format::Svg, src) => {
                let projection = match self.projection {
                    Projection::None => Projection::XZ,
                    p => p,
                };
                export_svg_styled(&src, projection, &self.style, &mut out)?;
            }
        }
        Ok(out)
    }

    /// Renders and writes the whole file atomically; returns the byte count.
    pub fn write_to(&self, path: &Path) -> Result<usize> {
        let bytes = self.render()?;
        write_atomic(path, &bytes)?;
        Ok(bytes.len())
    }
}

/// Writes through a temporary file in the destination directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// `t,x,y,z` rows with LF line endings.
pub fn export_csv<W: Write>(samples: &CurveSamples, mut out: W) -> Result<usize> {
    if samples.is_empty() {
        return Err(Error::Empty("curve has no samples"));
    }
    let mut text = String::from("t,x,y,z\n");
    for (t, p) in samples.grid().iter().zip(samples.points()) {
        let _ = writeln!(
            text,
            "{},{},{},{}",
            fmt_num(*t),
            fmt_num(p.x),
            fmt_num(p.y),
            fmt_num(p.z)
        );
    }
    out.write_all(text.as_bytes())?;
    Ok(text.len())
}

/// Reads rows written by [`export_csv`] as `[t, x, y, z]`.
pub fn import_csv<R: BufRead>(input: R) -> Result<Vec<[f64; 4]>> {
    let mut lines = input.lines();
    match lines.next().transpose()? {
        Some(h) if h.trim() == "t,x,y,z" => {}
        _ => return Err(Error::Domain("missing `t,x,y,z` header".into())),
    }
    let mut rows = Vec::new();
    for (n, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Domain(format!("row {}: {e}", n + 2)))?;
        let row: [f64; 4] = fields
            .try_into()
            .map_err(|_| Error::Domain(format!("row {} does not have 4 fields", n + 2)))?;
        rows.push(row);
    }
    Ok(rows)
}

fn spec_json(c: &CurveSamples) -> Value {
    let s = c.spec();
    json!({
        "map": s.map.name(),
        "family": s.map.family(),
        "P": s.params.p(),
        "D": s.params.d(),
        "ratio": s.ratio,
        "pitch": s.pitch,
        "sign": s.sign.name(),
    })
}

fn curve_json(c: &CurveSamples) -> Value {
    let grid: Vec<f64> = c.grid().iter().map(|&t| round_sig(t)).collect();
    let points: Vec<[f64; 3]> = c
        .points()
        .iter()
        .map(|p| [round_sig(p.x), round_sig(p.y), round_sig(p.z)])
        .collect();
    json!({ "spec": spec_json(c), "grid": grid, "points": points })
}

fn json_value(src: &Source<'_>) -> Value {
    match *src {
        Source::Curve(c) => curve_json(c),
        Source::Double(d) => json!({
            "strands": [curve_json(d.strand_a()), curve_json(d.strand_b())],
            "rungs": d.rungs(),
        }),
        Source::Bundle(b) => json!({ "curves": b.iter().map(curve_json).collect::<Vec<_>>() }),
        Source::Reports(r) => json!({ "reports": render_reports(r) }),
    }
}

/// Vertices in grid order, `l i j` between consecutive vertices of each
/// strand, then one `l` per rung. Indices are 1-based.
pub fn export_obj<W: Write>(src: &Source<'_>, mut out: W) -> Result<usize> {
    let strands = src.strands();
    if strands.is_empty() {
        return Err(Error::Unsupported("OBJ needs curve data".into()));
    }
    if strands.iter().any(|s| s.is_empty()) {
        return Err(Error::Empty("curve has no samples"));
    }
    let mut text = String::from("# helixforge polyline\n");
    let mut offsets = Vec::with_capacity(strands.len());
    let mut base = 1usize;
    for s in &strands {
        let _ = writeln!(
            text,
            "# {} P={} R={}",
            s.spec().map,
            s.spec().params.p(),
            fmt_num(s.spec().ratio)
        );
        offsets.push(base);
        for p in s.points() {
            let _ = writeln!(text, "v {} {} {}", fmt_num(p.x), fmt_num(p.y), fmt_num(p.z));
        }
        base += s.len();
    }
    for (s, &off) in strands.iter().zip(&offsets) {
        for i in 0..s.len() - 1 {
            let _ = writeln!(text, "l {} {}", off + i, off + i + 1);
        }
    }
    if strands.len() >= 2 {
        for &(i, j) in src.rungs() {
            let _ = writeln!(text, "l {} {}", offsets[0] + i, offsets[1] + j);
        }
    }
    out.write_all(text.as_bytes())?;
    Ok(text.len())
}

pub fn export_svg<W: Write>(src: &Source<'_>, projection: Projection, out: W) -> Result<usize> {
    export_svg_styled(src, projection, &Style::default(), out)
}

fn lattice_for(c: &CurveSamples) -> Vec<Point3> {
    let (Some(&lo), Some(&hi)) = (c.grid().first(), c.grid().last()) else {
        return Vec::new();
    };
    let (j_min, j_max) = (lo.ceil() as i64, hi.floor() as i64);
    if j_min > j_max {
        return Vec::new();
    }
    lattice_points(c.spec(), j_min, j_max)
        .points
        .into_iter()
        .map(|p| Point3 {
            x: p.x as f64,
            y: p.y as f64,
            z: p.z as f64,
        })
        .collect()
}

/// One path per strand, rungs as grey lines, lattice points as filled
/// circles. SVG's y axis points down, so the vertical coordinate is negated.
pub fn export_svg_styled<W: Write>(
    src: &Source<'_>,
    projection: Projection,
    style: &Style,
    mut out: W,
) -> Result<usize> {
    if projection == Projection::None {
        return Err(Error::Unsupported(
            "SVG needs an xy, xz or yz projection".into(),
        ));
    }
    let strands = src.strands();
    if strands.is_empty() {
        return Err(Error::Unsupported("SVG needs curve data".into()));
    }
    if strands.iter().any(|s| s.is_empty()) {
        return Err(Error::Empty("curve has no samples"));
    }
    let to_svg = |p: &Point3| {
        let (u, v) = projection.project(p);
        (u, -v)
    };
    let lattice: Vec<Vec<Point3>> = strands.iter().map(|s| lattice_for(s)).collect();

    let (mut u0, mut u1, mut v0, mut v1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for p in strands
        .iter()
        .flat_map(|s| s.points())
        .chain(lattice.iter().flatten())
    {
        let (u, v) = to_svg(p);
        u0 = u0.min(u);
        u1 = u1.max(u);
        v0 = v0.min(v);
        v1 = v1.max(v);
    }
    let width = (u1 - u0).max(1e-9);
    let height = (v1 - v0).max(1e-9);
    let (mu, mv) = (0.05 * width, 0.05 * height);
    let scale = width.max(height) / 500.0;

    let mut text = String::new();
    text.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        text,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        fmt_num(u0 - mu),
        fmt_num(v0 - mv),
        fmt_num(width + 2.0 * mu),
        fmt_num(height + 2.0 * mv)
    );
    for (i, s) in strands.iter().enumerate() {
        let color = style
            .colors
            .as_ref()
            .and_then(|c| c.get(i).cloned())
            .unwrap_or_else(|| default_color(s.spec().map).to_string());
        let mut d = String::new();
        for (n, p) in s.points().iter().enumerate() {
            let (u, v) = to_svg(p);
            let _ = write!(
                d,
                "{}{} {}",
                if n == 0 { "M" } else { " L" },
                fmt_num(u),
                fmt_num(v)
            );
        }
        let _ = writeln!(
            text,
            "<path class=\"strand\" data-map=\"{}\" data-p=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" d=\"{}\"/>",
            s.spec().map,
            s.spec().params.p(),
            color,
            fmt_num(scale),
            d
        );
    }
    if strands.len() >= 2 {
        for &(i, j) in src.rungs() {
            let (a, b) = (
                to_svg(&strands[0].points()[i]),
                to_svg(&strands[1].points()[j]),
            );
            let _ = writeln!(
                text,
                "<line class=\"rung\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"gray\" stroke-width=\"{}\"/>",
                fmt_num(a.0),
                fmt_num(a.1),
                fmt_num(b.0),
                fmt_num(b.1),
                fmt_num(scale * 0.5)
            );
        }
    }
    for p in lattice.iter().flatten() {
        let (u, v) = to_svg(p);
        let _ = writeln!(
            text,
            "<circle class=\"lattice\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>",
            fmt_num(u),
            fmt_num(v),
            fmt_num(scale * 3.0)
        );
    }
    text.push_str("</svg>\n");
    out.write_all(text.as_bytes())?;
    Ok(text.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::helix::{curve_sample, HelixSpec};
    use crate::sequence::MetallicParams;
    use std::fs;

    fn p(n: i64) -> MetallicParams {
        MetallicParams::new(n).unwrap()
    }

    fn csv_of(map: MapId, params: MetallicParams, lo: f64, hi: f64, dt: f64) -> String {
        let s = curve_sample(map, &params, lo, hi, dt).unwrap();
        let mut buf = Vec::new();
        let n = export_csv(&s, &mut buf).unwrap();
        assert_eq!(n, buf.len());
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn number_formatting() {
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(0.1 + 0.2), "0.3");
        assert_eq!(fmt_num(std::f64::consts::PI), "3.14159265359");
        assert_eq!(fmt_num(-1234.5), "-1234.5");
        assert_eq!(fmt_num(14.125000000000002), "14.125");
    }

    #[test]
    fn csv_examples() {
        let text = csv_of(MapId::Psi2, p(4), 0.0, 1.0, 1.0);
        assert_eq!(text, "t,x,y,z\n0,1,0,0\n1,-1,0,1\n");
        let text = csv_of(MapId::Psi3, p(1), 0.0, 1.0, 1.0);
        assert!(text.lines().nth(1) == Some("0,4,0,0"));
        let text = csv_of(MapId::Psi1, p(3), 0.0, 1.0, 1.0);
        assert!(text.lines().nth(1) == Some("0,13,0,0"));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn csv_import_rejects_garbage() {
        assert!(import_csv("x,y\n".as_bytes()).is_err());
        assert!(import_csv("t,x,y,z\n1,2,3\n".as_bytes()).is_err());
        assert!(import_csv("t,x,y,z\n1,2,a,4\n".as_bytes()).is_err());
        assert_eq!(
            import_csv("t,x,y,z\n1,2,3,4\n".as_bytes()).unwrap(),
            vec![[1.0, 2.0, 3.0, 4.0]]
        );
    }

    #[test]
    fn obj_counts() {
        let s = curve_sample(MapId::Psi2, &p(1), 0.0, 2.0, 1.0).unwrap();
        let mut buf = Vec::new();
        export_obj(&Source::Curve(&s), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 3);
        assert_eq!(text.lines().filter(|l| l.starts_with("l ")).count(), 2);
        assert!(text.contains("l 1 2\nl 2 3\n"));
    }

    #[test]
    fn job_invariants() {
        let s = curve_sample(MapId::Psi2, &p(1), 0.0, 2.0, 1.0).unwrap();
        let csv_proj =
            ExportJob::new(Source::Curve(&s), Format::Csv).with_projection(Projection::XY);
        assert!(matches!(csv_proj.render(), Err(Error::Unsupported(_))));
        assert!(ExportJob::new(Source::Reports(&[]), Format::Obj)
            .render()
            .is_err());
        assert!(ExportJob::new(Source::Curve(&s), Format::Report)
            .render()
            .is_err());
        let bundle = [s.clone(), s.clone()];
        assert!(ExportJob::new(Source::Bundle(&bundle), Format::Csv)
            .render()
            .is_err());
    }

    #[test]
    fn json_shape() {
        let s = curve_sample(MapId::Psi3, &p(2), 0.0, 1.0, 0.5).unwrap();
        let bytes = ExportJob::new(Source::Curve(&s), Format::Json)
            .render()
            .unwrap();
        let v: Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(v["spec"]["map"], "psi3");
        assert_eq!(v["spec"]["ratio"], 4.0);
        assert_eq!(v["grid"].as_array().unwrap().len(), 3);
        assert_eq!(v["points"][1], json!([0.0, 4.0, 0.5]));
    }

    #[test]
    fn svg_xy_is_a_unit_circle() {
        let s = curve_sample(MapId::Psi2, &p(2), 0.0, 2.0, 0.01).unwrap();
        let mut buf = Vec::new();
        export_svg(&Source::Curve(&s), Projection::XY, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("stroke=\"blue\""));
        let d = text
            .split(" d=\"")
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap();
        for pair in d.split(['M', 'L']).filter(|s| !s.trim().is_empty()) {
            let xy: Vec<f64> = pair
                .split_whitespace()
                .map(|v| v.parse().unwrap())
                .collect();
            assert!((xy[0].hypot(xy[1]) - 1.0).abs() < 1e-9);
        }
        assert!(export_svg(&Source::Curve(&s), Projection::None, Vec::new()).is_err());
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("curve.csv");
        fs::write(&path, "old").unwrap();
        let s = curve_sample(MapId::Psi1, &p(1), 0.0, 1.0, 0.5).unwrap();
        let n = ExportJob::new(Source::Curve(&s), Format::Csv)
            .write_to(&path)
            .unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.len(), n);
        assert!(text.starts_with("t,x,y,z\n0,5,0,0\n"));
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
        let _ = HelixSpec::new(MapId::Psi1, p(1));
    }
}
