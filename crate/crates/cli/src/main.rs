//! `proxima` — command-line front end for metric and Σ-proximity matrix
//! files: validate against the axioms, convert between the two kinds, rank
//! elements by centrality, generate instances, check the mean-distance
//! bound, and measure roundtrip deviations.
//!
//! Exit codes: 0 on success, 1 when the mathematics fails (axiom, bound, or
//! roundtrip violation), 2 on usage or parse errors.

mod formats;
mod reports;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use proxima_core::analysis::{
    AnalysisError, centrality_from_metric, centrality_from_proximity, mean_distance_bound,
};
use proxima_core::duality::{
    AveragingConfig, DualityError, metric_from_proximity, proximity_from_metric,
    roundtrip_deviation_metric, roundtrip_deviation_proximity,
};
use proxima_core::generators::{GeneratorError, GeneratorSpec};
use proxima_core::validate::{
    CertificationError, validate_metric, validate_sigma_proximity,
    validate_sigma_proximity_weighted,
};
use proxima_core::{DEFAULT_TOL, LabeledSquareMatrix, MetricMatrix, SigmaProximity, WeightVector};

use formats::{Sidecar, SidecarKind, read_edges, read_matrix, read_weights, write_matrix};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unusable invocation or unreadable/ill-formed input — exit code 2.
    #[error("{0}")]
    Usage(String),
    /// Input that parses but fails the mathematics — exit code 1.
    #[error("{0}")]
    Domain(String),
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn domain(msg: impl Into<String>) -> CliError {
    CliError::Domain(msg.into())
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "proxima",
    version,
    about = "Validate, convert, analyze, and generate metric / sigma-proximity matrix files"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a matrix file against the metric or Σ-proximity axioms
    Validate(ValidateArgs),
    /// Transform a metric file into a Σ-proximity file, or back
    Convert(ConvertArgs),
    /// Rank elements by centrality (small self-proximity = central)
    Centrality(CentralityArgs),
    /// Write a generated metric instance to a matrix file
    Generate(GenerateArgs),
    /// Check the mean-distance bound d(x,·) ≥ d(·,·)/2 on a metric file
    Bound(BoundArgs),
    /// Measure the there-and-back deviation of the transform pair
    Roundtrip(RoundtripArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Metric,
    Sigma,
}

/// Flags shared by the commands that read one matrix of either kind.
#[derive(Args)]
struct InputFlags {
    /// Matrix CSV file
    input: PathBuf,

    /// Input kind (falls back to the sidecar when present)
    #[arg(long, value_enum)]
    kind: Option<KindArg>,

    /// Row-sum target Σ — the uniform normalization constant
    #[arg(long, conflicts_with_all = ["m", "weights"])]
    sigma: Option<f64>,

    /// Weighted-average target m (goes with --weights)
    #[arg(long, requires = "weights")]
    m: Option<f64>,

    /// Weights file: one nonnegative decimal per line, summing to 1
    #[arg(long, requires = "m")]
    weights: Option<PathBuf>,

    /// Check tolerance
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

/// What the input turned out to be once flags and sidecar are reconciled.
enum ResolvedKind {
    Metric,
    SigmaUniform { sigma: f64 },
    SigmaWeighted { mean: f64, weights: WeightVector },
}

fn load_weight_vector(path: &Path) -> CliResult<WeightVector> {
    let raw = read_weights(path)?;
    WeightVector::new(raw).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Resolves a sigma input's normalization: explicit flags win, then the
/// sidecar.
fn sigma_config_from(
    sigma: Option<f64>,
    m: Option<f64>,
    weights: Option<&PathBuf>,
    sidecar: Option<&Sidecar>,
) -> CliResult<ResolvedKind> {
    if let Some(path) = weights {
        let mean = m.ok_or_else(|| usage("--weights needs --m"))?;
        return Ok(ResolvedKind::SigmaWeighted {
            mean,
            weights: load_weight_vector(path)?,
        });
    }
    if let Some(sigma) = sigma {
        return Ok(ResolvedKind::SigmaUniform { sigma });
    }
    if let Some(sc) = sidecar {
        if let Some(list) = &sc.weights {
            let mean =
                sc.m.ok_or_else(|| usage("sidecar carries weights but no m"))?;
            let w = WeightVector::new(list.clone())
                .map_err(|e| usage(format!("sidecar weights: {e}")))?;
            return Ok(ResolvedKind::SigmaWeighted { mean, weights: w });
        }
        if let Some(sigma) = sc.sigma {
            return Ok(ResolvedKind::SigmaUniform { sigma });
        }
    }
    Err(usage(
        "a sigma-proximity needs its normalization: pass --sigma, or --m with --weights, \
         or provide a sidecar carrying them",
    ))
}

impl InputFlags {
    fn resolve(&self, sidecar: Option<&Sidecar>) -> CliResult<ResolvedKind> {
        let kind = self
            .kind
            .map(|k| match k {
                KindArg::Metric => SidecarKind::Metric,
                KindArg::Sigma => SidecarKind::Sigma,
            })
            .or_else(|| sidecar.map(|s| s.kind))
            .ok_or_else(|| {
                usage(
                    "cannot tell whether the input is a metric or a sigma-proximity: \
                     pass --kind or provide a .meta.json sidecar",
                )
            })?;
        match kind {
            SidecarKind::Metric => Ok(ResolvedKind::Metric),
            SidecarKind::Sigma => {
                sigma_config_from(self.sigma, self.m, self.weights.as_ref(), sidecar)
            }
        }
    }

    /// Averaging config applied to a metric input: --m/--weights, or
    /// --sigma (default Σ = 0 — the canonical target; centrality rankings
    /// do not depend on it).
    fn metric_config(&self) -> CliResult<AveragingConfig> {
        if let Some(path) = &self.weights {
            let mean = self.m.ok_or_else(|| usage("--weights needs --m"))?;
            Ok(AveragingConfig::weighted(mean, load_weight_vector(path)?))
        } else {
            Ok(AveragingConfig::uniform(self.sigma.unwrap_or(0.0)))
        }
    }

    fn tol(&self) -> CliResult<f64> {
        cli_tol(self.tol)
    }
}

fn cli_tol(tol: f64) -> CliResult<f64> {
    if tol.is_finite() && tol > 0.0 {
        Ok(tol)
    } else {
        Err(usage(format!(
            "--tol must be a finite positive number, got {tol}"
        )))
    }
}

fn certify_metric(matrix: LabeledSquareMatrix, tol: f64) -> CliResult<MetricMatrix> {
    MetricMatrix::certify(matrix, tol)
        .map_err(|e| domain(format!("input is not a certified metric: {e}")))
}

fn certify_sigma(
    matrix: LabeledSquareMatrix,
    resolved: &ResolvedKind,
    tol: f64,
) -> CliResult<SigmaProximity> {
    let result = match resolved {
        ResolvedKind::SigmaUniform { sigma } => SigmaProximity::certify(matrix, *sigma, tol),
        ResolvedKind::SigmaWeighted { mean, weights } => {
            SigmaProximity::certify_weighted(matrix, *mean, weights.clone(), tol)
        }
        ResolvedKind::Metric => unreachable!("certify_sigma is only called for sigma inputs"),
    };
    result.map_err(|e| match e {
        CertificationError::WeightLength { expected, found } => usage(format!(
            "weights length {found} does not match the {expected}-element matrix"
        )),
        other => domain(format!("input is not a certified sigma-proximity: {other}")),
    })
}

fn duality_err(e: DualityError) -> CliError {
    match e {
        DualityError::WeightLength { .. } | DualityError::SignedWeights => usage(e.to_string()),
        other => domain(other.to_string()),
    }
}

fn analysis_err(e: AnalysisError) -> CliError {
    match e {
        AnalysisError::WeightLength { .. } | AnalysisError::SignedWeights => usage(e.to_string()),
        other => domain(other.to_string()),
    }
}

fn generator_err(e: GeneratorError) -> CliError {
    match e {
        GeneratorError::Certification(inner) => domain(inner.to_string()),
        other => usage(other.to_string()),
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    use std::io::Write;
    let body = serde_json::to_string_pretty(value).expect("report serializes");
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{body}") {
        // A closed pipe (e.g. piped into `head`) is a normal way to stop
        // reading, not an error worth reporting.
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to standard output: {e}");
        std::process::exit(2);
    }
}

fn exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    input: InputFlags,
}

fn cmd_validate(args: &ValidateArgs) -> CliResult<ExitCode> {
    let tol = args.input.tol()?;
    let (matrix, sidecar) = read_matrix(&args.input.input)?;
    let report = match &args.input.resolve(sidecar.as_ref())? {
        ResolvedKind::Metric => validate_metric(&matrix, tol),
        ResolvedKind::SigmaUniform { sigma } => validate_sigma_proximity(&matrix, *sigma, tol),
        ResolvedKind::SigmaWeighted { mean, weights } => {
            if weights.len() != matrix.n() {
                return Err(usage(format!(
                    "weights file has {} entries for a {1}×{1} matrix",
                    weights.len(),
                    matrix.n()
                )));
            }
            validate_sigma_proximity_weighted(&matrix, *mean, weights, tol)
        }
    };
    print_json(&reports::validation_json(&report, matrix.labels()));
    Ok(exit(report.passed))
}

#[derive(Args)]
struct ConvertArgs {
    /// Input matrix CSV
    input: PathBuf,

    /// Target kind
    #[arg(long, value_enum)]
    to: KindArg,

    /// Σ: the output's row-sum target for --to sigma, the input's for
    /// --to metric (sidecar fallback)
    #[arg(long, conflicts_with_all = ["m", "weights"])]
    sigma: Option<f64>,

    /// Weighted-average target m (goes with --weights)
    #[arg(long, requires = "weights")]
    m: Option<f64>,

    /// Weights file switching to the weighted averaging functional
    #[arg(long, requires = "m")]
    weights: Option<PathBuf>,

    /// Output path (default: <input stem>.<target-kind>.csv)
    #[arg(short, long)]
    output: Option<PathBuf>,

    /// Certification tolerance
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

fn default_output(input: &Path, suffix: &str) -> PathBuf {
    let stem = input
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("matrix");
    input.with_file_name(format!("{stem}.{suffix}.csv"))
}

fn cmd_convert(args: &ConvertArgs) -> CliResult<ExitCode> {
    let tol = cli_tol(args.tol)?;
    let (matrix, sidecar) = read_matrix(&args.input)?;
    let declared = sidecar.as_ref().map(|s| s.kind);
    match args.to {
        KindArg::Sigma => {
            if declared == Some(SidecarKind::Sigma) {
                return Err(usage(
                    "input sidecar says the file is already a sigma-proximity",
                ));
            }
            let d = certify_metric(matrix, tol)?;
            let cfg = if let Some(path) = &args.weights {
                let mean = args.m.ok_or_else(|| usage("--weights needs --m"))?;
                AveragingConfig::weighted(mean, load_weight_vector(path)?)
            } else if let Some(sigma) = args.sigma {
                AveragingConfig::uniform(sigma)
            } else {
                return Err(usage("--to sigma needs --sigma, or --m with --weights"));
            };
            let s = proximity_from_metric(&d, &cfg).map_err(duality_err)?;
            let out = args
                .output
                .clone()
                .unwrap_or_else(|| default_output(&args.input, "sigma"));
            let sc = match &cfg {
                AveragingConfig::Uniform { sigma } => Sidecar::uniform_sigma(*sigma),
                AveragingConfig::Weighted { mean, weights } => {
                    Sidecar::weighted_sigma(*mean, weights.weights().to_vec())
                }
            };
            let sc_path = write_matrix(&out, s.matrix(), &sc)?;
            print_json(&reports::ConvertJson {
                kind: "sigma",
                n: s.n(),
                target: Some(cfg.target()),
                weighted: matches!(cfg, AveragingConfig::Weighted { .. }),
                output: out.display().to_string(),
                sidecar: sc_path.display().to_string(),
            });
        }
        KindArg::Metric => {
            if declared == Some(SidecarKind::Metric) {
                return Err(usage("input sidecar says the file is already a metric"));
            }
            let resolved =
                sigma_config_from(args.sigma, args.m, args.weights.as_ref(), sidecar.as_ref())?;
            let s = certify_sigma(matrix, &resolved, tol)?;
            let d = metric_from_proximity(&s).map_err(duality_err)?;
            let out = args
                .output
                .clone()
                .unwrap_or_else(|| default_output(&args.input, "metric"));
            let sc_path = write_matrix(&out, d.matrix(), &Sidecar::metric())?;
            print_json(&reports::ConvertJson {
                kind: "metric",
                n: d.n(),
                target: None,
                weighted: false,
                output: out.display().to_string(),
                sidecar: sc_path.display().to_string(),
            });
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Args)]
struct CentralityArgs {
    #[command(flatten)]
    input: InputFlags,
}

fn cmd_centrality(args: &CentralityArgs) -> CliResult<ExitCode> {
    let tol = args.input.tol()?;
    let (matrix, sidecar) = read_matrix(&args.input.input)?;
    let resolved = args.input.resolve(sidecar.as_ref())?;
    let report = match &resolved {
        ResolvedKind::Metric => {
            let d = certify_metric(matrix, tol)?;
            let cfg = args.input.metric_config()?;
            centrality_from_metric(&d, &cfg).map_err(analysis_err)?
        }
        sigma_kind => {
            let s = certify_sigma(matrix, sigma_kind, tol)?;
            centrality_from_proximity(&s)
        }
    };
    print_json(&reports::centrality_json(&report));
    Ok(ExitCode::SUCCESS)
}

#[derive(Args)]
struct GenerateArgs {
    /// Instance family
    #[arg(long, value_enum)]
    family: Family,

    /// Element count (almost-discrete, euclidean)
    #[arg(long)]
    n: Option<usize>,

    /// Segment point count (segment-remote)
    #[arg(long)]
    k: Option<usize>,

    /// Remote distance R (segment-remote)
    #[arg(long)]
    r: Option<f64>,

    /// Coordinate dimension (euclidean)
    #[arg(long, default_value_t = 2)]
    dim: usize,

    /// Generator seed (euclidean)
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Edge-list CSV, source,target,weight per line (graph)
    #[arg(long)]
    edges: Option<PathBuf>,

    /// Output path
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    AlmostDiscrete,
    SegmentRemote,
    Euclidean,
    Graph,
}

fn cmd_generate(args: &GenerateArgs) -> CliResult<ExitCode> {
    let spec = match args.family {
        Family::AlmostDiscrete => GeneratorSpec::AlmostDiscrete {
            n: args
                .n
                .ok_or_else(|| usage("--family almost-discrete needs --n"))?,
        },
        Family::SegmentRemote => GeneratorSpec::SegmentRemote {
            k: args
                .k
                .ok_or_else(|| usage("--family segment-remote needs --k"))?,
            r: args
                .r
                .ok_or_else(|| usage("--family segment-remote needs --r"))?,
        },
        Family::Euclidean => GeneratorSpec::EuclideanRandom {
            n: args
                .n
                .ok_or_else(|| usage("--family euclidean needs --n"))?,
            dim: args.dim,
            seed: args.seed,
        },
        Family::Graph => GeneratorSpec::GraphShortestPath {
            edges: read_edges(
                args.edges
                    .as_ref()
                    .ok_or_else(|| usage("--family graph needs --edges"))?,
            )?,
        },
    };
    let d = spec.generate().map_err(generator_err)?;
    let sc_path = write_matrix(&args.output, d.matrix(), &Sidecar::metric())?;
    print_json(&reports::GenerateJson {
        family: spec.family(),
        n: d.n(),
        output: args.output.display().to_string(),
        sidecar: sc_path.display().to_string(),
    });
    Ok(ExitCode::SUCCESS)
}

#[derive(Args)]
struct BoundArgs {
    /// Metric matrix CSV
    input: PathBuf,

    /// Optional weights file for the weighted means
    #[arg(long)]
    weights: Option<PathBuf>,

    /// Margins below −tol fail the check
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

fn cmd_bound(args: &BoundArgs) -> CliResult<ExitCode> {
    let tol = cli_tol(args.tol)?;
    let (matrix, sidecar) = read_matrix(&args.input)?;
    if sidecar.map(|s| s.kind) == Some(SidecarKind::Sigma) {
        return Err(usage(
            "bound expects a metric file, but the sidecar says sigma",
        ));
    }
    let d = certify_metric(matrix, tol)?;
    let weights = match &args.weights {
        Some(path) => Some(load_weight_vector(path)?),
        None => None,
    };
    let report = mean_distance_bound(&d, weights.as_ref()).map_err(analysis_err)?;
    let passed = report.min_margin >= -tol;
    print_json(&reports::bound_json(&report, d.labels(), tol, passed));
    Ok(exit(passed))
}

#[derive(Args)]
struct RoundtripArgs {
    #[command(flatten)]
    input: InputFlags,
}

fn cmd_roundtrip(args: &RoundtripArgs) -> CliResult<ExitCode> {
    let tol = args.input.tol()?;
    let (matrix, sidecar) = read_matrix(&args.input.input)?;
    let resolved = args.input.resolve(sidecar.as_ref())?;
    let (kind, cfg, deviation) = match &resolved {
        ResolvedKind::Metric => {
            let d = certify_metric(matrix, tol)?;
            let cfg = args.input.metric_config()?;
            let dev = roundtrip_deviation_metric(&d, &cfg).map_err(duality_err)?;
            ("metric", cfg, dev)
        }
        sigma_kind => {
            let s = certify_sigma(matrix, sigma_kind, tol)?;
            let cfg = AveragingConfig::for_proximity(&s);
            let dev = roundtrip_deviation_proximity(&s, &cfg).map_err(duality_err)?;
            ("sigma-proximity", cfg, dev)
        }
    };
    let passed = deviation <= tol;
    print_json(&reports::RoundtripJson {
        kind,
        target: cfg.target(),
        weighted: matches!(cfg, AveragingConfig::Weighted { .. }),
        deviation,
        tolerance: tol,
        passed,
    });
    Ok(exit(passed))
}

fn run(command: &Command) -> CliResult<ExitCode> {
    match command {
        Command::Validate(args) => cmd_validate(args),
        Command::Convert(args) => cmd_convert(args),
        Command::Centrality(args) => cmd_centrality(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Roundtrip(args) => cmd_roundtrip(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                CliError::Usage(_) => ExitCode::from(2),
                CliError::Domain(_) => ExitCode::from(1),
            }
        }
    }
}
