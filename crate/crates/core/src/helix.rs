//! Helix maps built from `g` and `h`, their 3D curves and lattice points.
//!
//! Every map `ψ` here collapses to `±R (-1)^t = ±R e^{iπt}`, so its curve
//! `(Re ψ(t), Im ψ(t), t)` is a helix of ratio `R` and pitch 2.
//!
//! | map  | definition                       | R   |
//! |------|----------------------------------|-----|
//! | ψ1   | g(t)² - g(t-1) g(t+1)            | D   |
//! | ψ2   | h(t-1) h(t+1) - h(t)²            | 1   |
//! | ψ3   | g(t)² - D h(t)²                  | 4   |
//! | ψ4   | ψ1 - (D-1) ψ2                    | 1   |
//! | ψ5   | ψ3 - 2 ψ2                        | 2   |
//! | ψ6   | ψ3 - ψ2                          | 3   |
//! | ψ7   | 2D ψ2 - ψ1                       | D   |
//! | ℒ    | g(2t) - g(t)²                    | 2 (closed form `-2(-1)^t`) |

use std::fmt;
use std::str::FromStr;

use num_complex::{Complex, Complex64};

use crate::binet::{g_in, h_in, ComplexValue, Roots};
use crate::error::{Error, Result};
use crate::precision::{DoubleDouble, Real};
use crate::sequence::MetallicParams;
use crate::tolerance::Tolerances;

/// Pitch shared by every map in the family.
pub const PITCH: f64 = 2.0;

/// Default cap on the number of grid points per curve.
pub const DEFAULT_MAX_POINTS: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapId {
    Psi1,
    Psi2,
    Psi3,
    Psi4,
    Psi5,
    Psi6,
    Psi7,
    LMap,
}

impl MapId {
    pub const ALL: [MapId; 8] = [
        MapId::Psi1,
        MapId::Psi2,
        MapId::Psi3,
        MapId::Psi4,
        MapId::Psi5,
        MapId::Psi6,
        MapId::Psi7,
        MapId::LMap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapId::Psi1 => "psi1",
            MapId::Psi2 => "psi2",
            MapId::Psi3 => "psi3",
            MapId::Psi4 => "psi4",
            MapId::Psi5 => "psi5",
            MapId::Psi6 => "psi6",
            MapId::Psi7 => "psi7",
            MapId::LMap => "lmap",
        }
    }

    /// Family the helix is named after: Lucas, Fibonacci or Pell, or a mix.
    pub fn family(self) -> &'static str {
        match self {
            MapId::Psi1 | MapId::LMap => "lucas",
            MapId::Psi2 => "fibonacci",
            MapId::Psi3 => "pell",
            MapId::Psi4 | MapId::Psi7 => "fibonacci-lucas",
            MapId::Psi5 | MapId::Psi6 => "pell-fibonacci",
        }
    }

    pub fn ratio(self, params: &MetallicParams) -> f64 {
        match self {
            MapId::Psi1 | MapId::Psi7 => params.d() as f64,
            MapId::Psi2 | MapId::Psi4 => 1.0,
            MapId::Psi3 => 4.0,
            MapId::Psi5 | MapId::LMap => 2.0,
            MapId::Psi6 => 3.0,
        }
    }

    pub fn sign(self) -> Sign {
        match self {
            MapId::LMap => Sign::Minus,
            _ => Sign::Plus,
        }
    }
}

impl fmt::Display for MapId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        MapId::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::Domain(format!("unknown map `{s}` (expected psi1..psi7 or lmap)"))
            })
    }
}

/// Whether the closed form is `+R(-1)^t` or `-R(-1)^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelixSpec {
    pub map: MapId,
    pub ratio: f64,
    pub pitch: f64,
    pub sign: Sign,
    pub params: MetallicParams,
}

impl HelixSpec {
    pub fn new(map: MapId, params: MetallicParams) -> Self {
        HelixSpec {
            map,
            ratio: map.ratio(&params),
            pitch: PITCH,
            sign: map.sign(),
            params,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub fn radius(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2) + (self.z - other.z).powi(2))
            .sqrt()
    }
}

fn psi_generic<T: Real>(map: MapId, roots: &Roots<T>, d: T, t: T) -> Complex<T> {
    let one = T::one();
    let g = |x: T| g_in(roots, x);
    let h = |x: T| h_in(roots, x);
    let psi1 = || {
        let gt = g(t);
        gt * gt - g(t - one) * g(t + one)
    };
    let psi2 = || {
        let ht = h(t);
        h(t - one) * h(t + one) - ht * ht
    };
    let psi3 = || {
        let (gt, ht) = (g(t), h(t));
        gt * gt - ht * ht * d
    };
    match map {
        MapId::Psi1 => psi1(),
        MapId::Psi2 => psi2(),
        MapId::Psi3 => psi3(),
        MapId::Psi4 => psi1() - psi2() * (d - one),
        MapId::Psi5 => psi3() - psi2() * T::from_f64(2.0),
        MapId::Psi6 => psi3() - psi2(),
        MapId::Psi7 => psi2() * (d * T::from_f64(2.0)) - psi1(),
        MapId::LMap => {
            let gt = g(t);
            g(t + t) - gt * gt
        }
    }
}

/// Definitional value of `map` at `t` in working precision `T`.
pub fn psi_def_in<T: Real>(map: MapId, params: &MetallicParams, t: T) -> Complex<T> {
    let roots = Roots::<T>::new(params);
    psi_generic(map, &roots, T::from_f64(params.d() as f64), t)
}

fn check_def_horizon(map: MapId, params: &MetallicParams, t: f64) -> Result<()> {
    params.check_horizon(t.abs() + 1.0)?;
    if map == MapId::LMap {
        params.check_horizon(2.0 * t)?;
    }
    Ok(())
}

/// Evaluates `map` from its definition in terms of `g` and `h`.
///
/// The arithmetic runs in [`DoubleDouble`] so the `λ1^{2t}` terms cancel
/// cleanly.
pub fn psi_def(map: MapId, params: &MetallicParams, t: f64) -> Result<ComplexValue> {
    check_def_horizon(map, params, t)?;
    let z = psi_def_in(map, params, DoubleDouble::from(t));
    ComplexValue::from_complex(Complex64::new(z.re.to_f64(), z.im.to_f64()), map.name())
}

/// Closed form `sign · R · (cos πt + i sin πt)`.
pub fn psi_closed(map: MapId, params: &MetallicParams, t: f64) -> Result<ComplexValue> {
    let r = map.sign().factor() * map.ratio(params);
    let (c, s) = <f64 as Real>::cos_sin_pi(t);
    ComplexValue::new(r * c, r * s)
}

/// `(R cos θ, R sin θ, pθ/2π)`.
pub fn helix_point(ratio: f64, pitch: f64, theta: f64) -> Result<Point3> {
    if !(ratio > 0.0 && ratio.is_finite()) {
        return Err(Error::Domain(format!(
            "helix ratio must be positive, got {ratio}"
        )));
    }
    if !(pitch > 0.0 && pitch.is_finite()) {
        return Err(Error::Domain(format!(
            "helix pitch must be positive, got {pitch}"
        )));
    }
    Ok(Point3 {
        x: ratio * theta.cos(),
        y: ratio * theta.sin(),
        z: pitch * theta / (2.0 * std::f64::consts::PI),
    })
}

/// Inclusive uniform grid `t_min, t_min + dt, ..., t_max`. The last step is
/// short when `dt` does not divide the interval.
pub fn uniform_grid(t_min: f64, t_max: f64, dt: f64, max_points: usize) -> Result<Vec<f64>> {
    if !(t_min.is_finite() && t_max.is_finite() && dt.is_finite()) {
        return Err(Error::Domain("grid bounds must be finite".into()));
    }
    if t_min >= t_max {
        return Err(Error::Domain(format!(
            "need t_min < t_max, got [{t_min}, {t_max}]"
        )));
    }
    if dt <= 0.0 {
        return Err(Error::Domain(format!("dt must be positive, got {dt}")));
    }
    let span = (t_max - t_min) / dt;
    if span + 2.0 > max_points as f64 {
        return Err(Error::GridTooLarge {
            points: (span + 2.0).min(usize::MAX as f64) as usize,
            cap: max_points,
        });
    }
    let nearest = span.round();
    // Steps strictly inside the interval; t_max is appended separately.
    let inner = if (span - nearest).abs() <= 1e-9 * span.max(1.0) {
        nearest as usize
    } else {
        span.floor() as usize + 1
    };
    let mut grid: Vec<f64> = (0..inner).map(|i| t_min + i as f64 * dt).collect();
    grid.push(t_max);
    Ok(grid)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleOptions {
    pub max_points: usize,
    /// How many grid points are re-evaluated through [`psi_def`].
    pub verify_points: usize,
    pub tolerances: Tolerances,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            max_points: DEFAULT_MAX_POINTS,
            verify_points: 100,
            tolerances: Tolerances::DEFAULT,
        }
    }
}

/// Samples of one helix map on a parameter grid. `z == t` for every point.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSamples {
    spec: HelixSpec,
    grid: Vec<f64>,
    points: Vec<Point3>,
}

impl CurveSamples {
    pub fn spec(&self) -> &HelixSpec {
        &self.spec
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Smallest and largest `√(x² + y²)` over the samples.
    pub fn radius_range(&self) -> (f64, f64) {
        self.points
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
                let r = p.radius();
                (lo.min(r), hi.max(r))
            })
    }
}

fn verification_indices(len: usize, wanted: usize) -> Vec<usize> {
    if wanted == 0 || len == 0 {
        return Vec::new();
    }
    if len <= wanted {
        return (0..len).collect();
    }
    if wanted == 1 {
        return vec![0];
    }
    let mut idx: Vec<usize> = (0..wanted).map(|i| i * (len - 1) / (wanted - 1)).collect();
    idx.dedup();
    idx
}

pub fn curve_sample_with(
    spec: HelixSpec,
    t_min: f64,
    t_max: f64,
    dt: f64,
    options: &SampleOptions,
) -> Result<CurveSamples> {
    let grid = uniform_grid(t_min, t_max, dt, options.max_points)?;
    check_def_horizon(spec.map, &spec.params, t_min)?;
    check_def_horizon(spec.map, &spec.params, t_max)?;
    let points = grid
        .iter()
        .map(|&t| {
            psi_closed(spec.map, &spec.params, t).map(|z| Point3 {
                x: z.re(),
                y: z.im(),
                z: t,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let limit = options.tolerances.closed_form * spec.ratio;
    for i in verification_indices(grid.len(), options.verify_points) {
        let t = grid[i];
        let def = psi_def(spec.map, &spec.params, t)?;
        let p = &points[i];
        let delta = (def.re() - p.x).hypot(def.im() - p.y);
        if delta > limit {
            return Err(Error::VerificationFailed {
                map: spec.map.name(),
                t,
                delta,
            });
        }
    }
    Ok(CurveSamples { spec, grid, points })
}

/// Samples `map` over `[t_min, t_max]` with step `dt`, endpoints included.
pub fn curve_sample(
    map: MapId,
    params: &MetallicParams,
    t_min: f64,
    t_max: f64,
    dt: f64,
) -> Result<CurveSamples> {
    curve_sample_with(
        HelixSpec::new(map, *params),
        t_min,
        t_max,
        dt,
        &SampleOptions::default(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

/// Lattice points of a helix over `j_min..=j_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeScan {
    pub points: Vec<LatticePoint>,
    /// `false` when the ratio is not an integer, in which case the helix has
    /// no lattice points at all.
    pub integral_ratio: bool,
}

pub fn lattice_points_for(ratio: f64, sign: Sign, j_min: i64, j_max: i64) -> LatticeScan {
    let integral = ratio.is_finite() && ratio.fract() == 0.0 && ratio.abs() < 9.0e15;
    if !integral {
        return LatticeScan {
            points: Vec::new(),
            integral_ratio: false,
        };
    }
    let r = ratio as i64;
    let s = match sign {
        Sign::Plus => 1,
        Sign::Minus => -1,
    };
    let points = (j_min..=j_max)
        .map(|j| LatticePoint {
            x: if j.rem_euclid(2) == 0 { s * r } else { -s * r },
            y: 0,
            z: j,
        })
        .collect();
    LatticeScan {
        points,
        integral_ratio: true,
    }
}

/// `(±R, 0, j)` for each integer height `j` in range.
pub fn lattice_points(spec: &HelixSpec, j_min: i64, j_max: i64) -> LatticeScan {
    lattice_points_for(spec.ratio, spec.sign, j_min, j_max)
}

/// Sampled points whose three coordinates are all within `tol` of integers.
pub fn integer_points(samples: &CurveSamples, tol: f64) -> Vec<LatticePoint> {
    let as_int = |v: f64| {
        let r = v.round();
        ((v - r).abs() <= tol).then_some(r as i64)
    };
    samples
        .points
        .iter()
        .filter_map(|p| {
            Some(LatticePoint {
                x: as_int(p.x)?,
                y: as_int(p.y)?,
                z: as_int(p.z)?,
            })
        })
        .collect()
}

/// Two coaxial strands on one grid, joined by rungs at equal `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleHelix {
    strand_a: CurveSamples,
    strand_b: CurveSamples,
    rungs: Vec<(usize, usize)>,
}

impl DoubleHelix {
    /// Joins two strands with a rung at every `rung_stride`-th grid index.
    pub fn from_strands(a: CurveSamples, b: CurveSamples, rung_stride: usize) -> Result<Self> {
        if rung_stride == 0 {
            return Err(Error::Domain("rung stride must be positive".into()));
        }
        let same = a.grid.len() == b.grid.len()
            && a.grid
                .iter()
                .zip(&b.grid)
                .all(|(x, y)| x.to_bits() == y.to_bits());
        if !same {
            return Err(Error::GridMismatch);
        }
        if a.spec.pitch != b.spec.pitch {
            return Err(Error::Domain("strands must share the same pitch".into()));
        }
        let rungs = (0..a.grid.len())
            .step_by(rung_stride)
            .map(|i| (i, i))
            .collect();
        Ok(DoubleHelix {
            strand_a: a,
            strand_b: b,
            rungs,
        })
    }

    pub fn strand_a(&self) -> &CurveSamples {
        &self.strand_a
    }

    pub fn strand_b(&self) -> &CurveSamples {
        &self.strand_b
    }

    pub fn rungs(&self) -> &[(usize, usize)] {
        &self.rungs
    }

    pub fn rung_length(&self, rung: usize) -> f64 {
        let (i, j) = self.rungs[rung];
        self.strand_a.points[i].distance(&self.strand_b.points[j])
    }
}

pub fn compose_double_helix(
    spec_a: HelixSpec,
    spec_b: HelixSpec,
    t_min: f64,
    t_max: f64,
    dt: f64,
    rung_stride: usize,
) -> Result<DoubleHelix> {
    let options = SampleOptions::default();
    let a = curve_sample_with(spec_a, t_min, t_max, dt, &options)?;
    let b = curve_sample_with(spec_b, t_min, t_max, dt, &options)?;
    DoubleHelix::from_strands(a, b, rung_stride)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: i64) -> MetallicParams {
        MetallicParams::new(n).unwrap()
    }

    fn close(z: ComplexValue, re: f64, im: f64, tol: f64) -> bool {
        (z.re() - re).abs() <= tol && (z.im() - im).abs() <= tol
    }

    #[test]
    fn psi_def_examples() {
        assert!(close(
            psi_def(MapId::Psi1, &p(1), 0.0).unwrap(),
            5.0,
            0.0,
            1e-12
        ));
        for n in 1..4 {
            assert!(close(
                psi_def(MapId::Psi2, &p(n), 0.0).unwrap(),
                1.0,
                0.0,
                1e-12
            ));
        }
        assert!(close(
            psi_def(MapId::Psi3, &p(1), 1.0).unwrap(),
            -4.0,
            0.0,
            1e-12
        ));
        assert!(close(
            psi_def(MapId::LMap, &p(1), 1.0).unwrap(),
            2.0,
            0.0,
            1e-12
        ));
    }

    #[test]
    fn psi_closed_examples() {
        assert_eq!(
            psi_closed(MapId::Psi1, &p(2), 0.0).unwrap(),
            ComplexValue::new(8.0, 0.0).unwrap()
        );
        assert_eq!(psi_closed(MapId::Psi7, &p(1), 3.0).unwrap().re(), -5.0);
        assert_eq!(psi_closed(MapId::LMap, &p(1), 0.0).unwrap().re(), -2.0);
    }

    #[test]
    fn closed_form_tracks_definition() {
        for n in 1..=3 {
            let m = p(n);
            for map in MapId::ALL {
                let r = map.ratio(&m);
                for i in 0..=130 {
                    let t = -3.0 + i as f64 * 0.1;
                    let d = psi_def(map, &m, t).unwrap();
                    let c = psi_closed(map, &m, t).unwrap();
                    assert!(d.distance(&c) <= 1e-6 * r, "{map} P={n} t={t}");
                }
            }
        }
    }

    #[test]
    fn lucas_is_d_times_fibonacci() {
        for n in 1..=4 {
            let m = p(n);
            let d = m.d() as f64;
            for i in 0..50 {
                let t = -2.0 + i as f64 * 0.23;
                let a = psi_def(MapId::Psi1, &m, t).unwrap().as_complex();
                let b = psi_def(MapId::Psi2, &m, t).unwrap().as_complex();
                assert!((a - b * d).norm() <= 1e-6 * d);
            }
        }
    }

    #[test]
    fn helix_point_examples() {
        use std::f64::consts::PI;
        let a = helix_point(4.0, 2.0, 0.0).unwrap();
        assert_eq!((a.x, a.y, a.z), (4.0, 0.0, 0.0));
        let b = helix_point(1.0, 2.0, PI).unwrap();
        assert!((b.x + 1.0).abs() < 1e-15 && b.y.abs() < 1e-15 && (b.z - 1.0).abs() < 1e-15);
        let c = helix_point(5.0, 2.0, 2.0 * PI).unwrap();
        assert!((c.x - 5.0).abs() < 1e-14 && c.y.abs() < 1e-14 && (c.z - 2.0).abs() < 1e-15);
        assert!(helix_point(0.0, 2.0, 1.0).is_err());
        assert!(helix_point(1.0, -2.0, 1.0).is_err());
    }

    #[test]
    fn grid_rules() {
        let g = uniform_grid(-5.0, 7.0, 0.5, 100).unwrap();
        assert_eq!(g.len(), 25);
        assert_eq!(*g.last().unwrap(), 7.0);
        let g = uniform_grid(0.0, 15.0, 0.005, DEFAULT_MAX_POINTS).unwrap();
        assert_eq!(g.len(), 3001);
        assert_eq!(g[3000], 15.0);
        let short = uniform_grid(0.0, 1.0, 0.3, 100).unwrap();
        assert_eq!(short, vec![0.0, 0.3, 0.6, 0.8999999999999999, 1.0]);
        assert!(matches!(
            uniform_grid(0.0, 1.0, 1e-9, 1000),
            Err(Error::GridTooLarge { .. })
        ));
        assert!(uniform_grid(1.0, 1.0, 0.1, 100).is_err());
        assert!(uniform_grid(0.0, 1.0, 0.0, 100).is_err());
        assert!(uniform_grid(0.0, f64::NAN, 0.1, 100).is_err());
    }

    #[test]
    fn sample_examples() {
        let s = curve_sample(MapId::Psi1, &p(1), -5.0, 7.0, 0.5).unwrap();
        assert_eq!(s.len(), 25);
        for pt in s.points() {
            assert!((pt.x * pt.x + pt.y * pt.y - 25.0).abs() <= 25.0 * 1e-6);
        }
        let s = curve_sample(MapId::Psi2, &p(3), 0.0, 2.0, 1.0).unwrap();
        let pts: Vec<_> = s.points().iter().map(|q| (q.x, q.y, q.z)).collect();
        assert_eq!(
            pts,
            vec![(1.0, 0.0, 0.0), (-1.0, 0.0, 1.0), (1.0, 0.0, 2.0)]
        );
        let s = curve_sample(MapId::Psi3, &p(2), 0.0, 15.0, 0.005).unwrap();
        assert_eq!(s.len(), 3001);
        assert_eq!(s.points()[3000].z, 15.0);
    }

    #[test]
    fn sampling_beyond_horizon_fails() {
        let m = p(1);
        let far = m.horizon();
        assert!(matches!(
            curve_sample(MapId::Psi1, &m, far - 2.0, far, 0.5),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn lattice_examples() {
        let pell = HelixSpec::new(MapId::Psi3, p(1));
        let pts = lattice_points(&pell, 0, 3).points;
        let want = [(4, 0), (-4, 1), (4, 2), (-4, 3)];
        assert_eq!(
            pts,
            want.iter()
                .map(|&(x, z)| LatticePoint { x, y: 0, z })
                .collect::<Vec<_>>()
        );
        let fib = lattice_points(&HelixSpec::new(MapId::Psi2, p(5)), 0, 0);
        assert_eq!(fib.points, vec![LatticePoint { x: 1, y: 0, z: 0 }]);
        let lucas = lattice_points(&HelixSpec::new(MapId::Psi1, p(3)), 0, 1).points;
        assert_eq!(lucas[0], LatticePoint { x: 13, y: 0, z: 0 });
        assert_eq!(lucas[1], LatticePoint { x: -13, y: 0, z: 1 });
        let l = lattice_points(&HelixSpec::new(MapId::LMap, p(1)), 0, 0).points;
        assert_eq!(l[0].x, -2);
        let none = lattice_points_for(2.5, Sign::Plus, 0, 5);
        assert!(none.points.is_empty() && !none.integral_ratio);
    }

    #[test]
    fn compose_examples() {
        let dh = compose_double_helix(
            HelixSpec::new(MapId::Psi1, p(1)),
            HelixSpec::new(MapId::Psi1, p(2)),
            0.0,
            10.0,
            0.005,
            500,
        )
        .unwrap();
        assert_eq!(dh.rungs().len(), 5);
        let (lo, hi) = dh.strand_a().radius_range();
        assert!((lo - 5.0).abs() < 1e-9 && (hi - 5.0).abs() < 1e-9);
        let (lo, hi) = dh.strand_b().radius_range();
        assert!((lo - 8.0).abs() < 1e-9 && (hi - 8.0).abs() < 1e-9);

        let same = HelixSpec::new(MapId::Psi3, p(2));
        let dh = compose_double_helix(same, same, 0.0, 2.0, 0.25, 2).unwrap();
        assert!((0..dh.rungs().len()).all(|r| dh.rung_length(r) == 0.0));
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let a = curve_sample(MapId::Psi1, &p(1), 0.0, 2.0, 0.5).unwrap();
        let b = curve_sample(MapId::Psi2, &p(1), 0.0, 2.0, 0.25).unwrap();
        assert!(matches!(
            DoubleHelix::from_strands(a.clone(), b, 1),
            Err(Error::GridMismatch)
        ));
        assert!(DoubleHelix::from_strands(a.clone(), a, 0).is_err());
    }

    #[test]
    fn map_names_round_trip() {
        for m in MapId::ALL {
            assert_eq!(m.name().parse::<MapId>().unwrap(), m);
        }
        assert!("psi8".parse::<MapId>().is_err());
    }
}
