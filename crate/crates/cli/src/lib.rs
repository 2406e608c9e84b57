//! The `orthopack` command line: build frequency sets, verify them, run the
//! finite-group certificates and summarize stored reports.

pub mod report;
pub mod workspace;

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use orthopack_core::constructions::{self, lattice, lift, product, thin_power};
use orthopack_core::cube_core::{is_packing, pairwise_orthogonal};
use orthopack_core::finite_group::{
    self, closed_form_ft, discrete_cube, gamma0, lambda0, lift_to_r, lifted_maximality, phi, spectrum_check,
    tiling_check, CubeParams, GroupElement,
};
use orthopack_core::verify::{
    affine_cover_check, coordinate_shift_check, discretized_extension_search, incompleteness_evidence, is_maximal,
    natural_affine_cover, slab_check, AffinePiece, GridConfig,
};
use orthopack_core::{Certificate, Error as CoreError, FamilySet, QuadraticSurd, SymbolWitness, Verdict};

use report::{render_csv, render_text, InputDigest, Report, FINITE_SCHEMA, SET_SCHEMA};
use workspace::Workspace;

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Parser)]
#[command(name = "orthopack", version, about = "Maximal orthogonal exponential sets for the unit cube")]
pub struct Cli {
    /// Workspace file; defaults to ./orthopack.toml when present.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Symbol value override, e.g. `alpha=sqrt2/2`; repeatable.
    #[arg(long = "witness", global = true, value_name = "NAME=SURD")]
    pub witnesses: Vec<String>,

    /// Include wall-clock timings in reports (makes them non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a frequency set and write it as JSON.
    Construct(ConstructArgs),
    /// Run a checker on a stored frequency set.
    Verify(VerifyArgs),
    /// Finite-group construction in Z_{p^2} x Z_{q^2} x Z_{r^2}.
    Finite(FiniteArgs),
    /// Summarize stored reports as text or CSV.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SetKind {
    Thick3d,
    Thin3d,
    Lattice,
    Empty,
    Lift,
    Product,
    ThinPower,
}

#[derive(Debug, clap::Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: SetKind,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Dimension for `lattice` and `empty`.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Input set for `lift`.
    #[arg(long)]
    pub from: Option<PathBuf>,
    /// Extra dimensions for `lift`.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[arg(long)]
    pub left: Option<PathBuf>,
    #[arg(long)]
    pub right: Option<PathBuf>,
    /// Copies of the thin set in `thin-power`.
    #[arg(long, default_value_t = 2)]
    pub copies: usize,
    /// Lattice factor dimension in `thin-power`.
    #[arg(long, default_value_t = 0)]
    pub extra: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Maximal,
    Orthogonal,
    Packing,
    Slab,
    Coordinate,
    AffineCover,
    Incompleteness,
    ExtensionSearch,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub set: PathBuf,
    #[arg(long, value_enum, default_value = "maximal")]
    pub check: CheckKind,
    #[arg(long)]
    pub window: Option<i64>,
    #[arg(long)]
    pub kmax: Option<i64>,
    /// Window for the necessary-condition checks; defaults to window − 2.
    #[arg(long)]
    pub inner_window: Option<i64>,
    /// Affine cover (JSON list of pieces) for `affine-cover`; defaults to
    /// one subspace per family.
    #[arg(long)]
    pub cover: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    H0,
    Gamma0,
    Lambda0,
    Lift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FiniteCheck {
    Maximal,
    Spectrum,
    Tiling,
    FewZeros,
}

#[derive(Debug, clap::Args)]
pub struct FiniteArgs {
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    #[arg(long, default_value_t = 5)]
    pub q: u64,
    #[arg(long, default_value_t = 7)]
    pub r: u64,
    #[arg(long, value_enum)]
    pub emit: Option<Emit>,
    #[arg(long, value_enum)]
    pub verify: Option<FiniteCheck>,
    /// Destination of `--emit`; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Seed for the random frequency samples of `few-zeros`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random samples of the closed form in `few-zeros`.
    #[arg(long, default_value_t = 1000)]
    pub samples: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, clap::Args)]
pub struct ReportArgs {
    #[arg(required = true)]
    pub reports: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failure with its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl Failure {
    fn usage(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: EXIT_USAGE,
            error: error.into(),
        }
    }

    fn io(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: EXIT_IO,
            error: error.into(),
        }
    }
}

/// Library errors: search limits are undecidable outcomes, everything else
/// is bad input.
impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::Undecidable { .. } | CoreError::BranchLimit(_) | CoreError::BoundExceeded { .. } => {
                Verdict::Undecidable.exit_code()
            }
            _ => EXIT_USAGE,
        };
        Failure { code, error: e.into() }
    }
}

type CliResult<T> = Result<T, Failure>;

/// On-disk form of a frequency set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetFile {
    pub schema: String,
    pub set: FamilySet,
    #[serde(default)]
    pub witness: SymbolWitness,
}

struct Session {
    argv: Vec<String>,
    workspace: Workspace,
    overrides: SymbolWitness,
    timings: bool,
}

impl Session {
    fn witness_for(&self, file_witness: Option<&SymbolWitness>) -> SymbolWitness {
        let mut w = self.workspace.witness();
        for src in file_witness.into_iter().chain(std::iter::once(&self.overrides)) {
            for (k, v) in src.iter() {
                w.set(k.clone(), *v);
            }
        }
        w
    }

    fn write(&self, path: &Path, text: &str) -> CliResult<()> {
        let path = self.workspace.output_path(path);
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)
                .with_context(|| format!("creating {}", dir.display()))
                .map_err(Failure::io)?;
        }
        std::fs::write(&path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::io)
    }

    /// Writes the report to `dest` or stdout and returns the verdict's exit code.
    fn finish(&self, report: Report, dest: Option<&Path>) -> CliResult<i32> {
        let json = report.to_json();
        match dest {
            Some(p) => {
                self.write(p, &json)?;
                for c in &report.certificates {
                    println!("{}: {:?}", c.check, c.verdict);
                }
            }
            None => print!("{}", json),
        }
        Ok(report.verdict().exit_code())
    }
}

fn parse_witness_flag(s: &str) -> CliResult<(String, QuadraticSurd)> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| Failure::usage(anyhow!("--witness expects NAME=SURD, got `{}`", s)))?;
    let surd: QuadraticSurd = value.parse().map_err(Failure::from)?;
    Ok((name.trim().to_owned(), surd))
}

/// Parses argv and runs the command, returning the process exit code.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli, argv) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            f.code
        }
    }
}

fn execute(cli: Cli, argv: Vec<String>) -> CliResult<i32> {
    let workspace = Workspace::load(cli.config.as_deref()).map_err(Failure::usage)?;
    let mut overrides = SymbolWitness::empty();
    for w in &cli.witnesses {
        let (name, value) = parse_witness_flag(w)?;
        overrides.set(name.as_str(), value);
    }
    let ctx = Session {
        argv,
        workspace,
        overrides,
        timings: cli.timings,
    };
    match cli.command {
        Command::Construct(a) => construct(&ctx, a),
        Command::Verify(a) => verify(&ctx, a),
        Command::Finite(a) => finite(&ctx, a),
        Command::Report(a) => summarize(&ctx, a),
    }
}

fn load_set(path: &Path) -> CliResult<(SetFile, InputDigest)> {
    let (digest, bytes) = InputDigest::of_file(path).map_err(Failure::io)?;
    let value: serde_json::Value = serde_json::from_slice(&bytes)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::usage)?;
    let file = if value.get("schema").is_some() {
        let f: SetFile = serde_json::from_value(value)
            .with_context(|| format!("reading set from {}", path.display()))
            .map_err(Failure::usage)?;
        if f.schema != SET_SCHEMA {
            return Err(Failure::usage(anyhow!("{}: unsupported schema `{}`", path.display(), f.schema)));
        }
        f
    } else {
        SetFile {
            schema: SET_SCHEMA.into(),
            set: serde_json::from_value(value)
                .with_context(|| format!("reading set from {}", path.display()))
                .map_err(Failure::usage)?,
            witness: SymbolWitness::empty(),
        }
    };
    file.set.validate()?;
    Ok((file, digest))
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str, kind: &str) -> CliResult<&'a Path> {
    p.as_deref()
        .ok_or_else(|| Failure::usage(anyhow!("`construct {}` needs --{}", kind, flag)))
}

fn construct(ctx: &Session, a: ConstructArgs) -> CliResult<i32> {
    let dim = a.dim.unwrap_or(ctx.workspace.dimension);
    let set = match a.kind {
        SetKind::Thick3d => constructions::thick3d_default(),
        SetKind::Thin3d => constructions::thin3d_default(),
        SetKind::Lattice => lattice(dim),
        SetKind::Empty => FamilySet::empty(dim),
        SetKind::Lift => lift(&load_set(required(&a.from, "from", "lift")?)?.0.set, a.m)?,
        SetKind::Product => {
            let l = load_set(required(&a.left, "left", "product")?)?.0.set;
            let r = load_set(required(&a.right, "right", "product")?)?.0.set;
            product(&l, &r)
        }
        SetKind::ThinPower => thin_power(a.copies, a.extra)?,
    };
    set.validate()?;
    let witness = ctx.witness_for(None);
    witness.covers(set.symbols().iter())?;
    let file = SetFile {
        schema: SET_SCHEMA.into(),
        set,
        witness,
    };
    let mut text = serde_json::to_string_pretty(&file).expect("set serializes");
    text.push('\n');
    match &a.out {
        Some(p) => ctx.write(p, &text)?,
        None => print!("{}", text),
    }
    Ok(0)
}

fn verify(ctx: &Session, a: VerifyArgs) -> CliResult<i32> {
    let (file, digest) = load_set(&a.set)?;
    let set = &file.set;
    let witness = ctx.witness_for(Some(&file.witness));
    witness.covers(set.symbols().iter())?;
    let window = a.window.unwrap_or(ctx.workspace.window);
    let kmax = a.kmax.unwrap_or(ctx.workspace.kmax);
    if window < 1 || kmax < 1 {
        return Err(Failure::usage(anyhow!("--window and --kmax must be positive")));
    }
    let inner = a.inner_window.unwrap_or((window - 2).max(1));
    let mut report = Report::new(&ctx.argv);
    report.inputs.push(digest);
    let start = Instant::now();
    let cert = match a.check {
        CheckKind::Maximal => is_maximal(set)?,
        CheckKind::Orthogonal => pairwise_orthogonal(&set.truncate(window, kmax))?,
        CheckKind::Packing => is_packing(&set.truncate(window, kmax), &witness)?,
        CheckKind::Slab => slab_check(&set.truncate(window, kmax), inner, &witness)?,
        CheckKind::Coordinate => coordinate_shift_check(&set.truncate(window, kmax), inner)?,
        CheckKind::AffineCover => {
            let cover: Vec<AffinePiece> = match &a.cover {
                Some(p) => {
                    let (d, bytes) = InputDigest::of_file(p).map_err(Failure::io)?;
                    report.inputs.push(d);
                    serde_json::from_slice(&bytes)
                        .with_context(|| format!("parsing cover {}", p.display()))
                        .map_err(Failure::usage)?
                }
                None => natural_affine_cover(set),
            };
            affine_cover_check(&set.truncate(window, kmax), &cover)?
        }
        CheckKind::Incompleteness => {
            let windows: Vec<u32> = (3..=window.max(3) as u32).collect();
            incompleteness_evidence(set, &windows, &witness)?
        }
        CheckKind::ExtensionSearch => discretized_extension_search(set, &GridConfig::for_set(set))?,
    };
    let cert = cert.with_detail("window", window).with_detail("kmax", kmax);
    if ctx.timings {
        report.timings_ms = Some(vec![start.elapsed().as_millis()]);
    }
    report.certificates.push(cert);
    ctx.finish(report, a.report.as_deref())
}

#[derive(Serialize)]
struct FiniteSet<'a> {
    schema: &'static str,
    params: CubeParams,
    moduli: Vec<u64>,
    name: &'a str,
    elements: Vec<Vec<u64>>,
    residues: Vec<u64>,
}

fn emit_finite(ctx: &Session, params: &CubeParams, emit: Emit, out: Option<&Path>) -> CliResult<()> {
    let text = match emit {
        Emit::Lift => {
            let mut v = serde_json::to_value(lift_to_r(params)).expect("lift serializes");
            v["schema"] = FINITE_SCHEMA.into();
            serde_json::to_string_pretty(&v).expect("json")
        }
        _ => {
            let (name, mut set): (&str, Vec<GroupElement>) = match emit {
                Emit::H0 => ("h0", discrete_cube(params)),
                Emit::Gamma0 => ("gamma0", gamma0(params)),
                _ => ("lambda0", lambda0(params)),
            };
            set.sort();
            let mut residues: Vec<u64> = set.iter().map(|g| phi(params, g)).collect();
            residues.sort_unstable();
            let body = FiniteSet {
                schema: FINITE_SCHEMA,
                params: *params,
                moduli: params.group().moduli,
                name,
                elements: set.into_iter().map(|g| g.coords).collect(),
                residues,
            };
            serde_json::to_string_pretty(&body).expect("json")
        }
    } + "\n";
    match out {
        Some(p) => ctx.write(p, &text),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

/// Random non-integer frequencies in `(0, N)` where the closed form must
/// not vanish.
fn sampled_nonvanishing(params: &CubeParams, samples: u32, seed: u64) -> CliResult<Certificate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.n() as f64;
    let mut min = f64::INFINITY;
    let mut drawn = 0;
    while drawn < samples {
        let xi: f64 = rng.random_range(0.0..n);
        if xi.fract() == 0.0 {
            continue;
        }
        drawn += 1;
        min = min.min(closed_form_ft(params, xi)?.norm());
    }
    let verdict = if min > 1e-9 { Verdict::Pass } else { Verdict::Undecidable };
    Ok(Certificate::new("closed_form_nonvanishing", verdict)
        .with_detail("samples", samples)
        .with_detail("seed", seed)
        .with_detail("min_abs", min)
        .evidence_only())
}

fn finite(ctx: &Session, a: FiniteArgs) -> CliResult<i32> {
    let params = CubeParams::new(a.p, a.q, a.r)?;
    if let Some(e) = a.emit {
        emit_finite(ctx, &params, e, a.out.as_deref())?;
        if a.verify.is_none() {
            return Ok(0);
        }
    }
    let check = a.verify.unwrap_or(FiniteCheck::Maximal);
    let mut report = Report::new(&ctx.argv);
    let start = Instant::now();
    let g = params.group();
    let cert = match check {
        FiniteCheck::Maximal => finite_group::finite_certificate(&params)?,
        FiniteCheck::Spectrum => {
            let h = discrete_cube(&params);
            spectrum_check(&g, &gamma0(&params), h.len(), &mut |x| finite_group::ft_zero_set_h0(&params, x))
        }
        FiniteCheck::Tiling => {
            let ok = tiling_check(&g, &discrete_cube(&params), &gamma0(&params));
            Certificate::new("tiling", if ok { Verdict::Pass } else { Verdict::Fail })
        }
        FiniteCheck::FewZeros => {
            let n = params.n();
            let lifted = lifted_maximality(&params, &[n, 2 * n, 3 * n, 7 * n])?;
            let sampled = sampled_nonvanishing(&params, a.samples, a.seed)?;
            Certificate::conjunction("few_zeros", vec![lifted, sampled])
        }
    };
    if ctx.timings {
        report.timings_ms = Some(vec![start.elapsed().as_millis()]);
    }
    report.certificates.push(cert);
    ctx.finish(report, a.report.as_deref())
}

fn summarize(ctx: &Session, a: ReportArgs) -> CliResult<i32> {
    let mut reports = Vec::new();
    for p in &a.reports {
        let text = std::fs::read_to_string(p)
            .with_context(|| format!("reading {}", p.display()))
            .map_err(Failure::io)?;
        let r: Report = serde_json::from_str(&text)
            .with_context(|| format!("parsing report {}", p.display()))
            .map_err(Failure::usage)?;
        reports.push((p.display().to_string(), r));
    }
    let text = match a.format {
        Format::Text => render_text(&reports),
        Format::Csv => render_csv(&reports),
    };
    match &a.out {
        Some(p) => ctx.write(p, &text)?,
        None => print!("{}", text),
    }
    Ok(0)
}
