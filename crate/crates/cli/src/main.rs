use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use floq_core::floquet::{
    extended_invariants, specialized_invariants, spectral_invariants, verify_exact, verify_numeric, InvariantSystem,
    PotentialFile, Variant,
};
use floq_core::grobner::groebner_generators;
use floq_core::lattice::{hermite_and_cosets, parse_generators, rigidity_check, small_lattices};
use floq_core::poly::{ExponentVector, Vars};
use floq_core::scalar::{format_rational, parse_rational};
use floq_core::solver::{crosscheck, nonzero_values, solve_variety, summarize, SolveConfig, SolveReport, Summary};
use floq_core::symmetry::{orbit, Group, Tolerance};
use floq_core::{FloqError, Rational};

/// Floquet isospectrality toolkit for discrete periodic Schrödinger operators.
#[derive(Parser)]
#[command(name = "floq", version)]
struct Cli {
    /// Write the JSON result to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemArg {
    Full,
    Specialized,
    Extended,
}

impl SystemArg {
    fn variant(self) -> Variant {
        match self {
            SystemArg::Full => Variant::Full,
            SystemArg::Specialized => Variant::Specialized,
            SystemArg::Extended => Variant::ExtendedT,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Full,
    Dihedral,
    Signs,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct SystemOpts {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "full")]
    variant: SystemArg,
    /// Generic point of the extended system, e.g. "1,2,3/2,5" (default 1..n).
    #[arg(long)]
    vprime: Option<String>,
}

#[derive(clap::Args)]
struct SolveOpts {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "full")]
    variant: SystemArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    cluster_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    residual_tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the spectral invariants.
    Invariants(SystemOpts),
    /// Dump the closed-form basis, standard monomials and Hilbert data.
    Groebner {
        #[command(flatten)]
        system: SystemOpts,
        /// Include the standard monomials.
        #[arg(long)]
        basis: bool,
    },
    /// Solve the system and print the points with their table row.
    Solve {
        #[command(flatten)]
        opts: SolveOpts,
        /// Extra seeds whose counts must agree with the main solve.
        #[arg(long, value_delimiter = ',')]
        crosscheck: Vec<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check a potential file for isospectrality to zero.
    Verify {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        potential: PathBuf,
        /// Evaluate in exact Gaussian-rational arithmetic.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Orbit of a potential under a symmetry group.
    Orbit {
        #[arg(long)]
        potential: PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        group: GroupArg,
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Normal form, cosets and rigidity of a sublattice of Z^2.
    Lattice {
        /// Generator rows as "a b; c d".
        #[arg(long, required_unless_present = "sweep")]
        generators: Option<String>,
        /// Check every small normal form with a c up to this index instead.
        #[arg(long, conflicts_with = "generators")]
        sweep: Option<i64>,
        /// Only report the normal form and coset representatives.
        #[arg(long)]
        hnf_only: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Torus samples used to filter candidates.
        #[arg(long, default_value_t = 3)]
        samples: usize,
    },
    /// Affine Hilbert function values.
    Hilbert {
        #[command(flatten)]
        system: SystemOpts,
        #[arg(long)]
        s: usize,
    },
    /// CSV of the nonzero coordinate values of every nonzero solution.
    Figures {
        #[command(flatten)]
        opts: SolveOpts,
        /// Directory receiving values.csv and one file per point.
        #[arg(long, default_value = "figures")]
        out_dir: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Compute(FloqError),
}

impl From<FloqError> for Failure {
    fn from(e: FloqError) -> Self {
        Failure::Compute(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(e.into())
    }
}

type Outcome = Result<Output, Failure>;

enum Output {
    Json(Value),
    Text(String),
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn init_threads() -> Result<(), Failure> {
    let Ok(text) = std::env::var("FLOQ_THREADS") else {
        return Ok(());
    };
    let threads: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("FLOQ_THREADS must be a positive integer, got {text:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn vprime(n: usize, text: Option<&str>) -> Result<Vec<Rational>, Failure> {
    match text {
        None => Ok((1..=n as i64).map(|x| Rational::from_integer(x.into())).collect()),
        Some(t) => t.split(',').map(|x| Ok(parse_rational(x.trim())?)).collect(),
    }
}

fn system(opts: &SystemOpts) -> Result<InvariantSystem<Rational>, Failure> {
    Ok(match opts.variant {
        SystemArg::Full => spectral_invariants(opts.n)?,
        SystemArg::Specialized => specialized_invariants(opts.n)?,
        SystemArg::Extended => extended_invariants(opts.n, &vprime(opts.n, opts.vprime.as_deref())?)?,
    })
}

fn monomial_text(vars: &Vars, e: &ExponentVector) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| if x == 1 { vars.name(i).to_string() } else { format!("{}^{x}", vars.name(i)) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn invariants(opts: &SystemOpts) -> Outcome {
    let sys = system(opts)?;
    Ok(Output::Json(json!({
        "variant": sys.variant,
        "n": sys.n,
        "vars": sys.vars.names(),
        "generators": sys.generators.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    })))
}

fn groebner(opts: &SystemOpts, with_basis: bool) -> Outcome {
    let g = groebner_generators(&system(opts)?)?;
    let top = g.max_standard_degree();
    let mut out = json!({
        "summary": g.summary(),
        "unsigned_rejected_at": g.unsigned_rejected_at,
        "generators": g.generators.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "hilbert": {
            "values": (0..=top + 1).map(|s| g.hilbert_function(s)).collect::<Vec<_>>(),
            "max_standard_degree": top,
        },
    });
    if with_basis {
        out["standard_monomials"] = to_json(&g.standard_monomials().iter().map(|e| monomial_text(&g.vars, e)).collect::<Vec<_>>());
    }
    Ok(Output::Json(out))
}

fn solve_config(opts: &SolveOpts) -> Result<SolveConfig, Failure> {
    let cfg = SolveConfig {
        seed: opts.seed,
        cluster_tol: opts.cluster_tol,
        residual_tol: opts.residual_tol,
        ..SolveConfig::default()
    };
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(cfg)
}

fn solved_system(opts: &SolveOpts) -> Result<(floq_core::Basis, SolveConfig), Failure> {
    let sys = match opts.variant {
        SystemArg::Full => spectral_invariants(opts.n)?,
        SystemArg::Specialized => specialized_invariants(opts.n)?,
        SystemArg::Extended => {
            return Err(Failure::Usage("the extended system is positive-dimensional and cannot be solved".into()))
        }
    };
    Ok((groebner_generators(&sys)?, solve_config(opts)?))
}

fn row_text(n: usize, variant: Variant, r: &Summary) -> String {
    let profile: Vec<String> = r.mult_counts.iter().map(|(m, c)| format!("{m}:{c}")).collect();
    let dihedral = r.unique_mod_dihedral.map_or("-".to_string(), |d| d.to_string());
    format!(
        "{} n={n} mult0={} mult_nonzero={} unique={} mod_dihedral={dihedral} mod_all={} nonzero_orbits={} singular={} profile={{{}}} c2={}",
        variant.name(),
        r.mult_at_zero,
        r.mult_nonzero,
        r.unique,
        r.unique_mod_all,
        r.nonzero_orbits,
        r.singular_mod_dihedral,
        profile.join(", "),
        r.conjecture2_count
    )
}

fn solve(opts: &SolveOpts, extra: &[u64], format: Format) -> Outcome {
    let (g, cfg) = solved_system(opts)?;
    let s = solve_variety(&g, &cfg)?;
    let stability = if extra.is_empty() {
        None
    } else {
        Some(crosscheck(&g, &cfg, &summarize(&s), extra)?)
    };
    let report = SolveReport::new(s, stability);
    Ok(match format {
        Format::Json => Output::Json(to_json(&report)),
        Format::Text => Output::Text(row_text(report.n, report.variant, &report.summary)),
    })
}

fn verify(n: Option<usize>, path: &Path, exact: bool, tol: f64) -> Outcome {
    let file = PotentialFile::read(path)?;
    if let Some(n) = n.filter(|&n| n != file.n) {
        return Err(Failure::Usage(format!("--n {n} does not match the potential file (n = {})", file.n)));
    }
    let sys = spectral_invariants(file.n)?;
    let report = if exact {
        verify_exact(&sys, &file.exact_values()?)?
    } else {
        verify_numeric(&sys, &file.numeric_values()?, tol)?
    };
    Ok(Output::Json(to_json(&report)))
}

fn orbit_cmd(path: &Path, group: GroupArg, exact: bool, tol: f64) -> Outcome {
    let group = match group {
        GroupArg::Full => Group::Full,
        GroupArg::Dihedral => Group::Dihedral,
        GroupArg::Signs => Group::Signs,
    };
    let file = PotentialFile::read(path)?;
    let points: Value = if exact {
        let orb = orbit(&file.exact_values()?, group, Tolerance::Exact);
        to_json(
            &orb.iter()
                .map(|v| v.iter().map(|z| [format_rational(&z.re), format_rational(&z.im)]).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
    } else {
        let orb = orbit(&file.numeric_values()?, group, Tolerance::Abs(tol));
        to_json(&orb.iter().map(|v| v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()).collect::<Vec<_>>())
    };
    let size = points.as_array().map_or(0, Vec::len);
    Ok(Output::Json(json!({ "n": file.n, "group": group, "size": size, "points": points })))
}

fn lattice(
    generators: Option<&str>,
    sweep: Option<i64>,
    hnf_only: bool,
    cfg: SolveConfig,
    tol: f64,
    samples: usize,
) -> Outcome {
    let list: Vec<[[i64; 2]; 2]> = match (generators, sweep) {
        (Some(text), _) => vec![parse_generators(text).map_err(|e| Failure::Usage(e.to_string()))?],
        (None, Some(max)) => small_lattices(max).iter().map(|h| h.rows()).collect(),
        (None, None) => return Err(Failure::Usage("give --generators or --sweep".into())),
    };
    let mut out = Vec::new();
    for gens in list {
        let l = hermite_and_cosets(gens)?;
        out.push(if hnf_only {
            json!({ "lattice": l.generators, "hnf": l.hnf, "index": l.index, "reps": l.reps })
        } else {
            to_json(&rigidity_check(&l, &cfg, tol, samples)?)
        });
    }
    Ok(Output::Json(if sweep.is_some() { Value::Array(out) } else { out.remove(0) }))
}

fn hilbert(opts: &SystemOpts, s: usize) -> Outcome {
    let sys = system(opts)?;
    let g = groebner_generators(&sys)?;
    let mut out = json!({
        "variant": opts.variant.variant(),
        "n": opts.n,
        "s": s,
        "value": g.hilbert_function(s),
    });
    if let SystemArg::Extended = opts.variant {
        let v = vprime(opts.n, opts.vprime.as_deref())?;
        out["vprime"] = to_json(&v.iter().map(format_rational).collect::<Vec<_>>());
    }
    Ok(Output::Json(out))
}

/// Writes through a temporary sibling so readers never see partial files.
fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension("partial");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)
}

fn csv_bytes<T: Serialize>(rows: &[T]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Compute(FloqError::InvalidArgument(e.to_string())))?;
    }
    w.into_inner().map_err(|e| Failure::Compute(FloqError::InvalidArgument(e.to_string())))
}

#[derive(Serialize)]
struct PointRow {
    vertex: usize,
    re: f64,
    im: f64,
}

fn figures(opts: &SolveOpts, dir: &Path) -> Outcome {
    let (g, cfg) = solved_system(opts)?;
    let s = solve_variety(&g, &cfg)?;
    let values = nonzero_values(&s);
    let points_dir = dir.join("points");
    fs::create_dir_all(&points_dir)?;
    let main = dir.join("values.csv");
    write_atomic(&main, &csv_bytes(&values)?)?;
    let mut files = Vec::new();
    for (i, p) in s.points.iter().enumerate().filter(|(_, p)| !p.is_zero) {
        let rows: Vec<PointRow> = floq_core::solver::potential_of(s.variant, s.n, &p.coords)
            .iter()
            .enumerate()
            .map(|(j, z)| PointRow {
                vertex: j + 1,
                re: z.re,
                im: z.im,
            })
            .collect();
        let path = points_dir.join(format!("point_{i:05}.csv"));
        write_atomic(&path, &csv_bytes(&rows)?)?;
        files.push(path.display().to_string());
    }
    Ok(Output::Json(json!({
        "n": s.n,
        "variant": s.variant,
        "seed": s.seed,
        "values": main.display().to_string(),
        "rows": values.len(),
        "point_files": files,
    })))
}

fn run(cli: &Cli) -> Outcome {
    init_threads()?;
    match &cli.command {
        Command::Invariants(o) => invariants(o),
        Command::Groebner { system, basis } => groebner(system, *basis),
        Command::Solve { opts, crosscheck, format } => solve(opts, crosscheck, *format),
        Command::Verify { n, potential, exact, tol } => verify(*n, potential, *exact, *tol),
        Command::Orbit { potential, group, exact, tol } => orbit_cmd(potential, *group, *exact, *tol),
        Command::Lattice {
            generators,
            sweep,
            hnf_only,
            seed,
            tol,
            samples,
        } => lattice(generators.as_deref(), *sweep, *hnf_only, SolveConfig::with_seed(*seed), *tol, *samples),
        Command::Hilbert { system, s } => hilbert(system, *s),
        Command::Figures { opts, out_dir } => figures(opts, out_dir),
    }
}

fn emit(cli: &Cli, text: String) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => write_atomic(path, format!("{text}\n").as_bytes()),
        None => writeln!(std::io::stdout().lock(), "{text}"),
    }
}

fn render(cli: &Cli, v: &Value) -> String {
    if cli.pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    }
    .expect("serializable")
}

/// Errors caused by the arguments themselves rather than by the computation.
fn rejects_input(e: &FloqError) -> bool {
    matches!(
        e,
        FloqError::UnsupportedPeriod(..)
            | FloqError::SingularLattice
            | FloqError::Parse(_)
            | FloqError::InvalidArgument(_)
            | FloqError::DimensionMismatch { .. }
            | FloqError::CeilingExceeded { .. }
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, text) = match run(&cli) {
        Ok(Output::Json(v)) => (0, render(&cli, &v)),
        Ok(Output::Text(t)) => (0, t),
        Err(Failure::Usage(msg)) => (2, render(&cli, &json!({ "error": { "kind": "usage", "message": msg } }))),
        Err(Failure::Compute(e)) => (if rejects_input(&e) { 2 } else { 1 }, render(&cli, &json!({ "error": { "kind": e.kind(), "message": e.to_string() } }))),
    };
    if code == 0 {
        if let Err(e) = emit(&cli, text) {
            eprintln!("{}", json!({ "error": { "kind": "io", "message": e.to_string() } }));
            return ExitCode::from(1);
        }
    } else {
        println!("{text}");
    }
    ExitCode::from(code)
}
