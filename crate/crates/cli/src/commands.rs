use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use helixforge::export::{ExportJob, Format, Projection, Source};
use helixforge::helix::{curve_sample_with, SampleOptions, DEFAULT_MAX_POINTS};
use helixforge::identity::render_reports;
use helixforge::sequence::SequenceWindow;
use helixforge::{
    discover_coefficients, g_eval, h_eval, pell_certificate, psi_closed, psi_def, verify_identity,
    ComplexValue, CurveSamples, DoubleHelix, HelixSpec, IdentityId, MapId, MetallicParams,
    SequenceKind, TemplateId,
};

use crate::cli::{
    Command, ComposeArgs, DiscoverArgs, EvalArgs, GridArgs, HelixArgs, OutputArgs, PellArgs,
    RangeArgs, SeqArgs, VerifyArgs,
};
use crate::config::ConfigFile;
use crate::{EXIT_OK, EXIT_VERIFICATION};

pub const DEFAULT_DT: f64 = 0.005;
pub const DEFAULT_RUNG_STRIDE: usize = 100;

pub fn run(
    cmd: Command,
    cfg: &ConfigFile,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    match cmd {
        Command::Seq(a) => seq(a, cfg, out),
        Command::Eval(a) => eval(a, cfg, out),
        Command::Helix(a) => helix(a, cfg, out, err),
        Command::Compose(a) => compose(a, cfg, out, err),
        Command::Verify(a) => verify(a, cfg, out, err),
        Command::Pell(a) => pell(a, cfg, out),
        Command::Discover(a) => discover(a, cfg, out),
    }
}

fn params(flag: Option<String>, key: &str, cfg: &ConfigFile) -> Result<MetallicParams> {
    let raw = cfg.pick_or(flag, key, "1".to_string())?;
    Ok(raw.parse::<MetallicParams>()?)
}

fn k_range(r: RangeArgs, cfg: &ConfigFile, lo: i64, hi: i64) -> Result<(i64, i64)> {
    let k_min = cfg.pick_or(r.k_min, "k-min", lo)?;
    let k_max = cfg.pick_or(r.k_max, "k-max", hi)?;
    if k_min > k_max {
        bail!(helixforge::Error::Domain(format!(
            "k-min {k_min} exceeds k-max {k_max}"
        )));
    }
    Ok((k_min, k_max))
}

struct Grid {
    t_min: f64,
    t_max: f64,
    dt: f64,
    options: SampleOptions,
}

fn grid(g: GridArgs, cfg: &ConfigFile) -> Result<Grid> {
    Ok(Grid {
        t_min: cfg.pick_or(g.tmin, "tmin", 0.0)?,
        t_max: cfg.pick_or(g.tmax, "tmax", 10.0)?,
        dt: cfg.pick_or(g.dt, "dt", DEFAULT_DT)?,
        options: SampleOptions {
            max_points: cfg.pick_or(g.max_points, "max-points", DEFAULT_MAX_POINTS)?,
            ..SampleOptions::default()
        },
    })
}

fn sample(map: MapId, p: MetallicParams, g: &Grid) -> Result<CurveSamples> {
    Ok(curve_sample_with(
        HelixSpec::new(map, p),
        g.t_min,
        g.t_max,
        g.dt,
        &g.options,
    )?)
}

fn parse_maps(list: &str) -> Result<Vec<MapId>> {
    list.split(',')
        .map(|m| m.parse::<MapId>().map_err(Into::into))
        .collect()
}

fn emit(
    source: Source<'_>,
    o: OutputArgs,
    default_format: Format,
    cfg: &ConfigFile,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let format = match cfg.pick(o.format, "format")? {
        Some(f) => f.parse::<Format>()?,
        None => default_format,
    };
    let projection = match cfg.pick(o.projection, "projection")? {
        Some(p) => p.parse::<Projection>()?,
        None => Projection::None,
    };
    let job = ExportJob::new(source, format).with_projection(projection);
    match cfg.pick::<PathBuf>(o.out, "out")? {
        Some(path) => {
            let n = job
                .write_to(&path)
                .with_context(|| format!("writing {}", path.display()))?;
            writeln!(err, "wrote {n} bytes to {}", path.display())?;
        }
        None => out.write_all(&job.render()?)?,
    }
    Ok(EXIT_OK)
}

fn seq(a: SeqArgs, cfg: &ConfigFile, out: &mut dyn Write) -> Result<i32> {
    let p = params(a.p, "P", cfg)?;
    let (k_min, k_max) = k_range(a.range, cfg, 0, 10)?;
    let kinds: &[SequenceKind] = match cfg.pick_or(a.kind, "kind", "both".to_string())?.as_str() {
        "lucas" | "l" => &[SequenceKind::Lucas],
        "fibonacci" | "f" => &[SequenceKind::Fibonacci],
        "both" => &[SequenceKind::Lucas, SequenceKind::Fibonacci],
        other => bail!(helixforge::Error::Domain(format!(
            "unknown kind `{other}` (expected lucas, fibonacci or both)"
        ))),
    };
    for &kind in kinds {
        let window = SequenceWindow::new(&p, kind, k_min, k_max)?;
        let line = window
            .iter()
            .map(|(_, v)| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        if kinds.len() == 1 {
            writeln!(out, "{line}")?;
        } else {
            writeln!(out, "{kind}: {line}")?;
        }
    }
    Ok(EXIT_OK)
}

fn eval(a: EvalArgs, cfg: &ConfigFile, out: &mut dyn Write) -> Result<i32> {
    let p = params(a.p, "P", cfg)?;
    let map = cfg.pick_or(a.map, "map", "g".to_string())?;
    let t = a.t;
    let show = |label: &str, z: ComplexValue| format!("{label} {:?} {:?}", z.re(), z.im());
    match map.as_str() {
        "g" => writeln!(out, "{}", show("g", g_eval(&p, t)?))?,
        "h" => writeln!(out, "{}", show("h", h_eval(&p, t)?))?,
        name => {
            let m: MapId = name.parse()?;
            let def = psi_def(m, &p, t)?;
            let closed = psi_closed(m, &p, t)?;
            writeln!(out, "{}", show("def", def))?;
            writeln!(out, "{}", show("closed", closed))?;
            writeln!(out, "delta {:e}", def.distance(&closed))?;
        }
    }
    Ok(EXIT_OK)
}

fn helix(a: HelixArgs, cfg: &ConfigFile, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let p = params(a.p, "P", cfg)?;
    let maps = parse_maps(&cfg.pick_or(a.map, "map", "psi1".to_string())?)?;
    let g = grid(a.grid, cfg)?;
    let curves = maps
        .iter()
        .map(|&m| sample(m, p, &g))
        .collect::<Result<Vec<_>>>()?;
    let source = match curves.as_slice() {
        [one] => Source::Curve(one),
        many => Source::Bundle(many),
    };
    emit(source, a.output, Format::Csv, cfg, out, err)
}

fn compose(
    a: ComposeArgs,
    cfg: &ConfigFile,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let map_a: MapId = cfg.pick_or(a.map, "map", "psi1".to_string())?.parse()?;
    let p_a = params(a.p, "P", cfg)?;
    let map_b = match cfg.pick(a.map_b, "map-b")? {
        Some(m) => m.parse()?,
        None => map_a,
    };
    let p_b = match cfg.pick(a.p_b, "P-b")? {
        Some(p) => p.parse::<MetallicParams>()?,
        None => p_a,
    };
    let stride = cfg.pick_or(a.rung_stride, "rung-stride", DEFAULT_RUNG_STRIDE)?;
    let g = grid(a.grid, cfg)?;
    let double =
        DoubleHelix::from_strands(sample(map_a, p_a, &g)?, sample(map_b, p_b, &g)?, stride)?;
    emit(
        Source::Double(&double),
        a.output,
        Format::Obj,
        cfg,
        out,
        err,
    )
}

fn identities(selector: &str) -> Result<Vec<IdentityId>> {
    match selector {
        "consistent" => Ok(IdentityId::CONSISTENT.to_vec()),
        "all" => Ok(IdentityId::ALL.to_vec()),
        list => list
            .split(',')
            .map(|s| s.parse::<IdentityId>().map_err(Into::into))
            .collect(),
    }
}

fn verify(
    a: VerifyArgs,
    cfg: &ConfigFile,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let p = params(a.p, "P", cfg)?;
    let (k_min, k_max) = k_range(a.range, cfg, 0, 100)?;
    let ids = identities(&cfg.pick_or(a.identity, "identity", "consistent".to_string())?)?;
    let reports = ids
        .into_iter()
        .map(|id| verify_identity(id, p.p() as i64, k_min, k_max))
        .collect::<helixforge::Result<Vec<_>>>()?;
    match cfg.pick::<PathBuf>(a.out, "out")? {
        Some(path) => {
            let job = ExportJob::new(Source::Reports(&reports), Format::Report);
            let n = job.write_to(&path)?;
            writeln!(err, "wrote {n} bytes to {}", path.display())?;
        }
        None => out.write_all(render_reports(&reports).as_bytes())?,
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        writeln!(err, "{failed} of {} identities failed", reports.len())?;
        return Ok(EXIT_VERIFICATION);
    }
    Ok(EXIT_OK)
}

fn pell(a: PellArgs, cfg: &ConfigFile, out: &mut dyn Write) -> Result<i32> {
    let p = params(a.p, "P", cfg)?;
    let (k_min, k_max) = k_range(a.range, cfg, 0, 10)?;
    writeln!(out, "P={} D={}", p.p(), p.d())?;
    for k in k_min..=k_max {
        writeln!(out, "{}", pell_certificate(&p, k))?;
    }
    Ok(EXIT_OK)
}

fn parse_list(raw: &str, what: &str) -> Result<Vec<i64>> {
    let bad = || helixforge::Error::Domain(format!("invalid {what} `{raw}`"));
    if let Some((a, b)) = raw.split_once("..") {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            bail!(bad());
        }
        return Ok((a..=b).collect());
    }
    raw.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| bad().into()))
        .collect()
}

fn discover(a: DiscoverArgs, cfg: &ConfigFile, out: &mut dyn Write) -> Result<i32> {
    let template: TemplateId = cfg
        .pick_or(a.template, "template", "psi6".to_string())?
        .parse()?;
    let p_set = parse_list(
        &cfg.pick_or(a.p_set, "p-set", "1,2,3".to_string())?,
        "p-set",
    )?;
    let k_set = parse_list(&cfg.pick_or(a.k_set, "k-set", "0..8".to_string())?, "k-set")?;
    let solution = discover_coefficients(template, &p_set, &k_set)?;
    write!(out, "{solution}")?;
    Ok(EXIT_OK)
}
