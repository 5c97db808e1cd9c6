//! `dessinry` command-line front end.
//!
//! Exit codes: 0 on success, 1 on domain errors (diagnostic on stderr),
//! 2 on usage errors.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use dessinry::braid::{braid_orbit, dessin_to_dot, preset_gamma2_generators, preset_pure_generators, ClassMove, OrbitResult};
use dessinry::covers::hurwitz::{hurwitz_dessin, hurwitz_point, Lift};
use dessinry::covers::{numerical_monodromy, CoverSpec, TrackOptions};
use dessinry::enumeration::enumerate;
use dessinry::modular::dd::{CDd, Dd};
use dessinry::modular::qseries::lambda_star_qseries;
use dessinry::modular::radical::eval_radical;
use dessinry::modular::table1::{check_row, table1_rows};
use dessinry::modular::{ap, lambda_star, ModularValue, UpperHalfPoint, DEFAULT_TOL, MIN_TOL};
use dessinry::origami::{origami_orbit, BipartiteOrigami, Shear};
use dessinry::words::EndomorphismTable;
use dessinry::{DessinClass, MonodromyTuple, SCHEMA};

#[derive(Parser, Debug)]
#[command(name = "dessinry", version, about = "Computable higher dessins d'enfants")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Shorthand for `--format json`.
    #[arg(long, global = true, conflicts_with = "format")]
    json: bool,
    /// Worker threads for parallel sections (output does not depend on it).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All isomorphism classes of n-dessins of degree d.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Orbits under braid or mapping-class generators.
    Orbit(OrbitArgs),
    /// Bipartite origamis (n = 4).
    #[command(subcommand)]
    Origami(OrigamiCommand),
    /// Dessin of the degree-4 Hurwitz example over a real parameter.
    Hurwitz {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long)]
        lift: String,
        #[arg(long, value_enum, default_value = "dessin")]
        emit: Emit,
    },
    /// Numerical monodromy of a polynomial cover.
    Monodromy {
        /// Ascending coefficients as JSON: numbers or `[re, im]` pairs.
        #[arg(long)]
        poly: String,
        /// Branch points as JSON, same element syntax, in cyclic order.
        #[arg(long = "branch-points")]
        branch_points: String,
    },
    /// `lambda*(tau)` with a truncation bound.
    LambdaStar {
        /// Real and imaginary part, comma separated; each may be a radical expression.
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Accessory parameter `ap(t)` for real `t > 0`.
    Ap {
        /// Radical expression, e.g. `sqrt(5)`.
        #[arg(long)]
        t: String,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Table of `ap(sqrt n)` against closed forms.
    Table1 {
        /// Comma-separated list of `n`; defaults to every row.
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<u64>>,
        /// Print PASS/FAIL lines and fail on any mismatch.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Integer q-series coefficients of `lambda*`.
    Qseries {
        #[arg(long)]
        order: usize,
    },
}

#[derive(Args, Debug)]
struct OrbitArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    /// JSON tuple or array of tuples; without it every class of (n, d) is partitioned.
    #[arg(long)]
    seed: Option<PathBuf>,
    /// `preset:pure`, `preset:gamma2`, or a JSON file of endomorphism tables.
    #[arg(long, default_value = "preset:pure")]
    gens: String,
    /// Also write the orbit graph as DOT to this file.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum OrigamiCommand {
    /// Origami JSON to the 4-dessin.
    ToDessin {
        #[arg(long, default_value = "-")]
        input: PathBuf,
    },
    /// 4-dessin JSON to the origami.
    FromDessin {
        #[arg(long, default_value = "-")]
        input: PathBuf,
    },
    /// One shear move.
    Delta {
        #[arg(long)]
        op: String,
        #[arg(long, default_value = "-")]
        input: PathBuf,
    },
    /// Orbit under the shear moves.
    Orbit {
        #[arg(long, default_value = "-")]
        input: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Emit {
    Dessin,
    Origami,
    Dot,
}

enum Failure {
    Usage(String),
    Domain(String),
}

type Outcome = Result<String, Failure>;

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
            .map_err(domain)?;
    }
    let format = if cli.json { Some(Format::Json) } else { cli.format };
    let env_tol = env_tolerance()?;
    let tol = |flag: Option<f64>| -> Result<f64, Failure> {
        let t = flag.or(env_tol).unwrap_or(DEFAULT_TOL);
        if !(t.is_finite() && t >= MIN_TOL) {
            return Err(Failure::Usage(format!("tolerance must be finite and at least {MIN_TOL:e}, got {t:e}")));
        }
        Ok(t)
    };
    match cli.command {
        Command::Enumerate { n, d } => cmd_enumerate(n, d, pick(format, &[Format::Table, Format::Json])?),
        Command::Orbit(args) => cmd_orbit(args, pick(format, &[Format::Table, Format::Json, Format::Dot])?),
        Command::Origami(sub) => cmd_origami(sub, pick(format, &[Format::Json, Format::Table, Format::Dot])?),
        Command::Hurwitz { a, lift, emit } => cmd_hurwitz(a, &lift, emit, pick(format, &[Format::Table, Format::Json])?),
        Command::Monodromy { poly, branch_points } => {
            cmd_monodromy(&poly, &branch_points, pick(format, &[Format::Table, Format::Json, Format::Dot])?)
        }
        Command::LambdaStar { tau, tol: t } => cmd_lambda_star(&tau, tol(t)?, pick(format, &[Format::Table, Format::Json])?),
        Command::Ap { t, tol: tl } => cmd_ap(&t, tol(tl)?, pick(format, &[Format::Table, Format::Json])?),
        Command::Table1 { rows, check, tol: t } => cmd_table1(rows, check, tol(t)?, pick(format, &[Format::Table, Format::Json])?),
        Command::Qseries { order } => cmd_qseries(order, pick(format, &[Format::Table, Format::Json])?),
    }
}

fn env_tolerance() -> Result<Option<f64>, Failure> {
    match std::env::var("DESSINRY_TOL") {
        Ok(s) => s
            .trim()
            .parse::<f64>()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("DESSINRY_TOL is not a number: {s:?}"))),
        Err(_) => Ok(None),
    }
}

/// First entry of `allowed` is the default.
fn pick(format: Option<Format>, allowed: &[Format]) -> Result<Format, Failure> {
    match format {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(Failure::Usage(format!("format {f:?} is not available for this subcommand").to_lowercase())),
    }
}

fn to_json(mut body: Value) -> String {
    if let Value::Object(map) = &mut body {
        map.insert("schema".into(), json!(SCHEMA));
    }
    let mut s = serde_json::to_string_pretty(&body).expect("json values serialize");
    s.push('\n');
    s
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(domain)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
    }
}

fn parse_tuples(text: &str) -> Result<Vec<MonodromyTuple>, Failure> {
    let value: Value = serde_json::from_str(text).map_err(|e| Failure::Domain(format!("malformed JSON: {e}")))?;
    let items = match value {
        Value::Array(items) => items,
        other => vec![other],
    };
    items.iter().map(|v| MonodromyTuple::from_json_value(v).map_err(domain)).collect()
}

fn class_json(c: &DessinClass) -> Value {
    json!({
        "dessin": c.canonical.to_json_value(),
        "genus": c.genus,
        "profile": c.profile.0,
        "normal": c.normal,
        "automorphisms": c.automorphisms,
    })
}

fn cmd_enumerate(n: usize, d: usize, format: Format) -> Outcome {
    let result = enumerate(n, d).map_err(domain)?;
    if format == Format::Json {
        return Ok(to_json(json!({
            "n": n,
            "d": d,
            "count": result.len(),
            "marked_count": result.marked_count.to_string(),
            "classes": result.classes.iter().map(class_json).collect::<Vec<_>>(),
        })));
    }
    let mut out = format!("# n = {n}, d = {d}: {} classes, {} labeled tuples\n", result.len(), result.marked_count);
    out.push_str("# idx\tgenus\tnormal\taut\tprofile\ttuple\n");
    for (k, c) in result.classes.iter().enumerate() {
        let _ = writeln!(out, "{k}\t{}\t{}\t{}\t{}\t{}", c.genus, c.normal, c.automorphisms, c.profile, c.canonical);
    }
    Ok(out)
}

enum Moves {
    Presets(Vec<dessinry::braid::Generator>),
    Tables(Vec<EndomorphismTable>),
}

impl Moves {
    fn load(spec: &str, n: usize) -> Result<Moves, Failure> {
        match spec {
            "preset:pure" => Ok(Moves::Presets(preset_pure_generators(n))),
            "preset:gamma2" if n == 4 => Ok(Moves::Presets(preset_gamma2_generators())),
            "preset:gamma2" => Err(Failure::Domain(format!("preset:gamma2 acts on 4-dessins, got n = {n}"))),
            s if s.starts_with("preset:") => Err(Failure::Usage(format!("unknown preset {s:?}"))),
            path => {
                let tables = EndomorphismTable::list_from_json(&read_input(Path::new(path))?).map_err(domain)?;
                if let Some(t) = tables.iter().find(|t| t.n != n) {
                    return Err(Failure::Domain(format!("generator {} acts on {} letters, tuples have n = {n}", t.label(), t.n)));
                }
                Ok(Moves::Tables(tables))
            }
        }
    }

    fn orbit(&self, seeds: &[MonodromyTuple]) -> Result<OrbitResult, Failure> {
        match self {
            Moves::Presets(g) => orbit_with(seeds, g),
            Moves::Tables(g) => orbit_with(seeds, g),
        }
    }
}

fn orbit_with<F: ClassMove>(seeds: &[MonodromyTuple], gens: &[F]) -> Result<OrbitResult, Failure> {
    if gens.is_empty() {
        return Err(Failure::Domain("no generators".into()));
    }
    braid_orbit(seeds, gens).map_err(domain)
}

fn cmd_orbit(args: OrbitArgs, format: Format) -> Outcome {
    let seeds = match &args.seed {
        Some(path) => parse_tuples(&read_input(path)?)?,
        None => {
            let (Some(n), Some(d)) = (args.n, args.d) else {
                return Err(Failure::Usage("orbit needs --seed or both --n and --d".into()));
            };
            enumerate(n, d).map_err(domain)?.tuples().cloned().collect()
        }
    };
    let Some(first) = seeds.first() else {
        return Err(Failure::Domain("no seed tuples".into()));
    };
    let (n, d) = (first.n(), first.d());
    if args.n.is_some_and(|m| m != n) || args.d.is_some_and(|m| m != d) {
        return Err(Failure::Domain(format!("seed has n = {n}, d = {d}, which disagrees with --n/--d")));
    }
    let moves = Moves::load(&args.gens, n)?;
    let orbits = if args.seed.is_some() {
        vec![moves.orbit(&seeds)?]
    } else {
        let mut orbits: Vec<OrbitResult> = Vec::new();
        for t in &seeds {
            if orbits.iter().any(|o| o.contains(t)) {
                continue;
            }
            orbits.push(moves.orbit(std::slice::from_ref(t))?);
        }
        orbits
    };
    let dot: String = orbits.iter().map(OrbitResult::to_dot).collect();
    if let Some(path) = &args.dot {
        std::fs::write(path, &dot).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    }
    match format {
        Format::Dot => Ok(dot),
        Format::Json => Ok(to_json(json!({
            "n": n,
            "d": d,
            "generators": args.gens,
            "orbits": orbits.iter().map(|o| serde_json::to_value(o).expect("orbits serialize")).collect::<Vec<_>>(),
        }))),
        Format::Table => {
            let mut out = format!("# n = {n}, d = {d}, generators {}: {} orbit(s)\n", args.gens, orbits.len());
            for (k, o) in orbits.iter().enumerate() {
                let _ = writeln!(out, "orbit {k}: {} class(es), {} edge(s)", o.len(), o.generator_log.len());
                for t in &o.orbit {
                    let _ = writeln!(out, "  {t}");
                }
            }
            Ok(out)
        }
    }
}

fn parse_origami(path: &Path) -> Result<BipartiteOrigami, Failure> {
    BipartiteOrigami::from_json(&read_input(path)?).map_err(domain)
}

fn emit_origami(o: &BipartiteOrigami, format: Format) -> Outcome {
    match format {
        Format::Json => Ok(to_json(o.to_json_value())),
        Format::Dot => Ok(dessin_to_dot(&o.to_dessin().map_err(domain)?)),
        Format::Table => Ok(format!(
            "m = {}\nR = {:?}\nL = {:?}\nU = {:?}\nD = {:?}\n",
            o.m(),
            o.r().images(),
            o.l().images(),
            o.u().images(),
            o.d().images()
        )),
    }
}

fn emit_tuple(t: &MonodromyTuple, format: Format) -> Outcome {
    match format {
        Format::Json => Ok(to_json(t.to_json_value())),
        Format::Dot => Ok(dessin_to_dot(t)),
        Format::Table => Ok(format!("{t}\nprofile {}\n", t.cycle_profile())),
    }
}

fn cmd_origami(sub: OrigamiCommand, format: Format) -> Outcome {
    match sub {
        OrigamiCommand::ToDessin { input } => emit_tuple(&parse_origami(&input)?.to_dessin().map_err(domain)?, format),
        OrigamiCommand::FromDessin { input } => {
            let tuples = parse_tuples(&read_input(&input)?)?;
            let [t] = tuples.as_slice() else {
                return Err(Failure::Domain(format!("expected one tuple, got {}", tuples.len())));
            };
            emit_origami(&BipartiteOrigami::from_dessin(t).map_err(domain)?, format)
        }
        OrigamiCommand::Delta { op, input } => {
            let op: Shear = op.parse().map_err(|_| Failure::Usage(format!("unknown shear {op:?}; use hor, ver, hor-inv or ver-inv")))?;
            emit_origami(&parse_origami(&input)?.shear(op).map_err(domain)?, format)
        }
        OrigamiCommand::Orbit { input } => {
            let orbit = origami_orbit(&parse_origami(&input)?).map_err(domain)?;
            match format {
                Format::Dot => Ok(orbit.to_dot()),
                Format::Json => Ok(to_json(json!({
                    "orbit": orbit.orbit.iter().map(|t| {
                        BipartiteOrigami::from_dessin(t).map(|o| o.to_json_value())
                    }).collect::<Result<Vec<_>, _>>().map_err(domain)?,
                    "dessins": serde_json::to_value(&orbit).expect("orbits serialize"),
                }))),
                Format::Table => {
                    let mut out = format!("# {} class(es)\n", orbit.len());
                    for t in &orbit.orbit {
                        let _ = writeln!(out, "{t}");
                    }
                    Ok(out)
                }
            }
        }
    }
}

fn cmd_hurwitz(a: f64, lift: &str, emit: Emit, format: Format) -> Outcome {
    let lift: Lift = lift.parse().map_err(|e| Failure::Usage(format!("{e}")))?;
    let point = hurwitz_point(a, lift).map_err(domain)?;
    let tuple = hurwitz_dessin(a, lift).map_err(domain)?.canonical_form().map_err(domain)?;
    match emit {
        Emit::Dot => Ok(dessin_to_dot(&tuple)),
        Emit::Origami => {
            let o = BipartiteOrigami::from_dessin(&tuple).map_err(domain)?;
            emit_origami(&o, format)
        }
        Emit::Dessin if format == Format::Json => Ok(to_json(json!({
            "a": a,
            "lift": lift.to_string(),
            "s": [point.s.re, point.s.im],
            "dessin": tuple.to_json_value(),
            "profile": tuple.cycle_profile().0,
            "genus": tuple.genus().map_err(domain)?,
        }))),
        Emit::Dessin => Ok(format!(
            "a = {a}, lift {lift}, s = {:.15}{:+.3e}i\n{tuple}\nprofile {}\n",
            point.s.re,
            point.s.im,
            tuple.cycle_profile()
        )),
    }
}

fn parse_complex_list(text: &str, what: &str) -> Result<Vec<Complex64>, Failure> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Failure::Usage(format!("{what}: malformed JSON: {e}")))?;
    let Value::Array(items) = value else {
        return Err(Failure::Usage(format!("{what}: expected a JSON array")));
    };
    items
        .iter()
        .map(|v| match v {
            Value::Number(x) => x.as_f64().map(|re| Complex64::new(re, 0.0)),
            Value::Array(p) if p.len() == 2 => match (p[0].as_f64(), p[1].as_f64()) {
                (Some(re), Some(im)) => Some(Complex64::new(re, im)),
                _ => None,
            },
            _ => None,
        })
        .map(|c| c.ok_or_else(|| Failure::Usage(format!("{what}: entries must be numbers or [re, im] pairs"))))
        .collect()
}

fn cmd_monodromy(poly: &str, branch_points: &str, format: Format) -> Outcome {
    let f = parse_complex_list(poly, "--poly")?;
    let b = parse_complex_list(branch_points, "--branch-points")?;
    let spec = CoverSpec::new(f, b).map_err(domain)?;
    let t = numerical_monodromy(&spec, &TrackOptions::default()).map_err(domain)?;
    match format {
        Format::Json => Ok(to_json(json!({
            "dessin": t.to_json_value(),
            "canonical": t.canonical_form().map_err(domain)?.to_json_value(),
            "profile": t.cycle_profile().0,
        }))),
        other => emit_tuple(&t, other),
    }
}

fn value_json(v: &ModularValue) -> Value {
    json!({
        "re": format!("{:.32}", v.re()),
        "im": format!("{:.32}", v.im()),
        "trunc_bound": v.trunc_bound,
    })
}

fn cmd_lambda_star(tau: &str, tol: f64, format: Format) -> Outcome {
    let Some((re, im)) = tau.split_once(',') else {
        return Err(Failure::Usage(format!("--tau expects RE,IM, got {tau:?}")));
    };
    let re = eval_radical(re).map_err(|e| Failure::Usage(format!("--tau real part: {e}")))?;
    let im = eval_radical(im).map_err(|e| Failure::Usage(format!("--tau imaginary part: {e}")))?;
    let point = UpperHalfPoint::new(CDd::new(re, im)).map_err(domain)?;
    let v = lambda_star(&point, tol).map_err(domain)?;
    if format == Format::Json {
        return Ok(to_json(json!({
            "tau": [format!("{re:.32}"), format!("{im:.32}")],
            "tol": tol,
            "lambda_star": value_json(&v),
        })));
    }
    Ok(format!("{v}\n"))
}

fn cmd_ap(t: &str, tol: f64, format: Format) -> Outcome {
    let x: Dd = eval_radical(t).map_err(|e| Failure::Usage(format!("--t: {e}")))?;
    let v = ap(x, tol).map_err(domain)?;
    if format == Format::Json {
        return Ok(to_json(json!({ "t": format!("{x:.32}"), "tol": tol, "ap": value_json(&v) })));
    }
    Ok(format!("{v}\n"))
}

fn cmd_table1(rows: Option<Vec<u64>>, check: bool, tol: f64, format: Format) -> Outcome {
    let all = table1_rows();
    let selected = match rows {
        None => all,
        Some(ns) => ns
            .iter()
            .map(|n| {
                all.iter()
                    .find(|r| r.n == *n)
                    .cloned()
                    .ok_or_else(|| Failure::Domain(format!("no row for n = {n}")))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    let checks = selected
        .iter()
        .map(|r| check_row(r, tol).map_err(domain))
        .collect::<Result<Vec<_>, _>>()?;
    let failed = checks.iter().filter(|c| !c.pass).count();
    let out = if format == Format::Json {
        to_json(json!({
            "tol": tol,
            "rows": selected.iter().zip(&checks).map(|(r, c)| json!({
                "n": r.n,
                "expression": r.expression,
                "closed_form": format!("{:.32}", c.closed_form),
                "ap": value_json(&c.computed),
                "error": c.error,
                "pass": c.pass,
            })).collect::<Vec<_>>(),
        }))
    } else {
        let mut out = String::new();
        for (r, c) in selected.iter().zip(&checks) {
            if check {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{tag} n={} ap={:.24} error={:.1e}", r.n, c.computed.re(), c.error);
            } else {
                let _ = writeln!(out, "{}\t{:.32}\t{}", r.n, c.computed.re(), r.expression);
            }
        }
        out
    };
    if check && failed > 0 {
        print!("{out}");
        return Err(Failure::Domain(format!("{failed} row(s) failed")));
    }
    Ok(out)
}

/// Largest order `qseries` will expand; the cost is quadratic in the order.
const MAX_QSERIES_ORDER: usize = 20_000;

fn cmd_qseries(order: usize, format: Format) -> Outcome {
    if order > MAX_QSERIES_ORDER {
        return Err(Failure::Domain(format!("order {order} exceeds the limit {MAX_QSERIES_ORDER}")));
    }
    let series = lambda_star_qseries(order);
    let coeffs: Vec<String> = series.coefficients.iter().map(|c| c.to_string()).collect();
    if format == Format::Json {
        return Ok(to_json(json!({ "order": order, "coefficients": coeffs })));
    }
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        let _ = writeln!(out, "{k}\t{c}");
    }
    Ok(out)
}
