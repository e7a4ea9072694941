//! `gwsample` command-line front-end.
//!
//! Exit codes: 0 success, 2 invalid flags, 3 I/O or data error, 4 frame shape
//! error, 5 degenerate class distribution. Every failure prints one line to
//! stderr. Log verbosity follows `GWSAMPLE_LOG` (`error`, `warn`, `info`,
//! `debug`, `trace`; default `warn`).

pub mod bench;

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use gwsample_core::metrics::{aggregate_mean, read_scores, write_roc_csv};
use gwsample_core::{
    eer, evaluate, hter, load_manifest, plan_cross_database, plan_intra_database, read_frames, roc,
    EncodedWriter, Encoder, EncoderConfig, ErrorKind, FrameSource, ManifestEntry, OutputFormat,
    OutputSpec, ProtocolManifest, SampleLabel, ScoreRecord, Split, TailPolicy, WeightScheme,
};

pub const LOG_ENV: &str = "GWSAMPLE_LOG";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Usage = 2,
    Io = 3,
    Shape = 4,
    DegenerateClass = 5,
}

#[derive(Debug)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: ExitCode::Usage,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Errors raised after flag validation: the library's kind decides the code.
impl From<gwsample_core::Error> for CliError {
    fn from(e: gwsample_core::Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Shape => ExitCode::Shape,
            ErrorKind::DegenerateClass => ExitCode::DegenerateClass,
            ErrorKind::InvalidInput | ErrorKind::Io => ExitCode::Io,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "gwsample",
    version,
    about = "Temporal sub-sequence encoding and PAD score evaluation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encode a video (or every video in a manifest) into one image per sub-sequence.
    Encode(EncodeArgs),
    /// Encode once per sub-sequence size into `<out-dir>/z<size>`.
    Sweep(SweepArgs),
    /// Equal error rate of a score file.
    MetricsEer(ScoreArgs),
    /// Half total error rate at a fixed threshold.
    MetricsHter(HterArgs),
    /// ROC curve (CSV) and area under it.
    Roc(ScoreArgs),
    /// Intra- or cross-database evaluation report.
    Evaluate(EvaluateArgs),
    /// Encoder throughput on synthetic in-memory frames.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    Images,
    RawRgb24,
    Y4m,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightsArg {
    Ramp,
    Gaussian,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TailArg {
    Keep,
    Drop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Png,
    Npy,
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Frame directory, raw RGB24 file or Y4M file.
    #[arg(
        long,
        required_unless_present = "manifest",
        conflicts_with = "manifest"
    )]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub input_kind: Option<InputKind>,
    /// Frame width, raw-rgb24 only.
    #[arg(long)]
    pub width: Option<usize>,
    /// Frame height, raw-rgb24 only.
    #[arg(long)]
    pub height: Option<usize>,
    /// Protocol manifest; every entry with a source is encoded into `<out-dir>/<id>`.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EncodingArgs {
    #[arg(long, value_enum, default_value = "ramp")]
    pub weights: WeightsArg,
    /// Gaussian centre on the 1-based frame axis (default (Z+1)/2).
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    /// Gaussian width (default Z/6).
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long, value_enum, default_value = "keep")]
    pub tail: TailArg,
    #[arg(long, value_enum, default_value = "png")]
    pub format: FormatArg,
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    /// File stem pattern; `{start}`, `{end}`, `{index}` expand to six digits.
    #[arg(long, default_value = OutputSpec::DEFAULT_NAMING)]
    pub naming: String,
}

#[derive(Debug, Clone, Args)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Sub-sequence length Z.
    #[arg(long, default_value_t = 40)]
    pub subseq_len: usize,
    #[command(flatten)]
    pub encoding: EncodingArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Comma-separated sub-sequence lengths, e.g. 30,40,50,60.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<String>,
    #[command(flatten)]
    pub encoding: EncodingArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScoreArgs {
    /// CSV with header id,label,score.
    #[arg(long)]
    pub scores: PathBuf,
    /// Treat scores as the opposite polarity to the one declared in the file.
    #[arg(long)]
    pub flip_polarity: bool,
    /// Average repeated ids (per-frame scores) into one score per id.
    #[arg(long)]
    pub per_frame: bool,
    /// Also write the result to this file (JSON, or CSV for `roc`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct HterArgs {
    #[command(flatten)]
    pub scores: ScoreArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub threshold: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlanArg {
    Intra,
    Cross,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThresholdSplitArg {
    Test,
    Dev,
}

#[derive(Debug, Clone, Args)]
pub struct EvaluateArgs {
    #[arg(long, value_enum)]
    pub plan: PlanArg,
    /// Scores of the dataset the threshold is fixed on.
    #[arg(long)]
    pub source_scores: PathBuf,
    /// Scores of the target dataset (cross only).
    #[arg(long)]
    pub target_scores: Option<PathBuf>,
    /// Without a manifest every score is treated as a test-split sample.
    #[arg(long)]
    pub source_manifest: Option<PathBuf>,
    #[arg(long)]
    pub target_manifest: Option<PathBuf>,
    /// Intra only: split the threshold is fixed on.
    #[arg(long, value_enum, default_value = "test")]
    pub threshold_split: ThresholdSplitArg,
    #[arg(long)]
    pub flip_polarity: bool,
    #[arg(long)]
    pub per_frame: bool,
    /// Write the JSON report here as well as to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// One CSV row per threshold variant.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 224)]
    pub width: usize,
    #[arg(long, default_value_t = 224)]
    pub height: usize,
    #[arg(long, default_value_t = 1000)]
    pub frames: usize,
    #[arg(long, default_value_t = 40)]
    pub subseq_len: usize,
    #[arg(long, default_value_t = 5)]
    pub iters: usize,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and the diagnostic to stderr. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion) {
                let _ = write!(out, "{e}");
                return ExitCode::Ok as i32;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", line.trim_start_matches("error: "));
            return ExitCode::Usage as i32;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => ExitCode::Ok as i32,
        Err(e) => {
            eprintln!("{e}");
            e.code as i32
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Encode(a) => encode_cmd(&a, out),
        Command::Sweep(a) => sweep_cmd(&a, out),
        Command::MetricsEer(a) => eer_cmd(&a, out),
        Command::MetricsHter(a) => hter_cmd(&a, out),
        Command::Roc(a) => roc_cmd(&a, out),
        Command::Evaluate(a) => evaluate_cmd(&a, out),
        Command::Bench(a) => bench::bench_cmd(&a, out),
    }
}

fn emit(out: &mut dyn Write, text: impl fmt::Display) -> CliResult<()> {
    writeln!(out, "{text}").map_err(|e| CliError {
        code: ExitCode::Io,
        message: format!("stdout: {e}"),
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| CliError {
        code: ExitCode::Io,
        message: format!("{}: {e}", path.display()),
    })
}

pub(crate) fn with_jobs<T>(
    jobs: Option<u64>,
    f: impl FnOnce() -> CliResult<T> + Send,
) -> CliResult<T>
where
    T: Send,
{
    match jobs {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
            .map_err(|e| CliError {
                code: ExitCode::Io,
                message: format!("cannot start {n} worker threads: {e}"),
            })?
            .install(f),
    }
}

/// Encoding job fully validated from flags; nothing has been read yet.
#[derive(Debug, Clone)]
struct EncodeJob {
    inputs: Vec<(FrameSource, PathBuf)>,
    manifest: Option<PathBuf>,
    config: EncoderConfig,
    format: OutputFormat,
    naming: String,
}

fn validate_input(a: &InputArgs) -> CliResult<()> {
    if a.manifest.is_some() {
        if a.input_kind.is_some() || a.width.is_some() || a.height.is_some() {
            return Err(CliError::usage(
                "--input-kind, --width and --height come from the manifest in batch mode",
            ));
        }
        return Ok(());
    }
    match a.input_kind {
        None => Err(CliError::usage("--input-kind is required with --input")),
        Some(InputKind::RawRgb24) => match (a.width, a.height) {
            (Some(w), Some(h)) if w > 0 && h > 0 => Ok(()),
            (Some(_), Some(_)) => Err(CliError::usage("--width and --height must be positive")),
            _ => Err(CliError::usage(
                "raw-rgb24 input needs --width and --height",
            )),
        },
        Some(_) if a.width.is_some() || a.height.is_some() => Err(CliError::usage(
            "--width and --height only apply to raw-rgb24 input",
        )),
        Some(_) => Ok(()),
    }
}

fn weight_scheme(e: &EncodingArgs) -> CliResult<WeightScheme> {
    if e.weights != WeightsArg::Gaussian && (e.mu.is_some() || e.sigma.is_some()) {
        return Err(CliError::usage(
            "--mu and --sigma require --weights gaussian",
        ));
    }
    if let Some(mu) = e.mu {
        if !mu.is_finite() {
            return Err(CliError::usage(format!("--mu must be finite, got {mu}")));
        }
    }
    if let Some(sigma) = e.sigma {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(CliError::usage(format!(
                "--sigma must be positive, got {sigma}"
            )));
        }
    }
    Ok(match e.weights {
        WeightsArg::Ramp => WeightScheme::Ramp,
        WeightsArg::Uniform => WeightScheme::Uniform,
        WeightsArg::Gaussian => WeightScheme::Gaussian {
            mu: e.mu,
            sigma: e.sigma,
        },
    })
}

fn build_job(
    input: &InputArgs,
    enc: &EncodingArgs,
    z: usize,
    out_dir: PathBuf,
) -> CliResult<EncodeJob> {
    if z == 0 {
        return Err(CliError::usage("--subseq-len must be at least 1"));
    }
    validate_input(input)?;
    if enc.naming.is_empty() || enc.naming.contains(['/', '\\']) {
        return Err(CliError::usage(format!(
            "--naming {:?} must be a non-empty file stem",
            enc.naming
        )));
    }
    let config = EncoderConfig {
        subseq_len: z,
        weights: weight_scheme(enc)?,
        tail: match enc.tail {
            TailArg::Keep => TailPolicy::KeepTruncated,
            TailArg::Drop => TailPolicy::Drop,
        },
    };
    // weights are pure arithmetic; reject degenerate ones before any I/O
    config
        .weights
        .build(z)
        .map_err(|e| CliError::usage(e.to_string()))?;

    let inputs = match (&input.input, input.input_kind) {
        (Some(path), Some(kind)) => {
            let source = match kind {
                InputKind::Images => FrameSource::Images { path: path.clone() },
                InputKind::Y4m => FrameSource::Y4m { path: path.clone() },
                InputKind::RawRgb24 => FrameSource::RawRgb24 {
                    path: path.clone(),
                    width: input.width.unwrap_or(0),
                    height: input.height.unwrap_or(0),
                },
            };
            vec![(source, out_dir)]
        }
        _ => Vec::new(),
    };
    Ok(EncodeJob {
        inputs,
        manifest: input.manifest.clone(),
        config,
        format: match enc.format {
            FormatArg::Png => OutputFormat::Png8,
            FormatArg::Npy => OutputFormat::Npy,
        },
        naming: enc.naming.clone(),
    })
}

/// Resolves batch-mode inputs from the manifest: one output directory per id.
fn resolve_manifest(path: &Path, out_dir: &Path) -> CliResult<Vec<(FrameSource, PathBuf)>> {
    let manifest = load_manifest(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut inputs = Vec::new();
    for entry in manifest.entries() {
        let source = entry.source.as_ref().ok_or_else(|| CliError {
            code: ExitCode::Io,
            message: format!("manifest entry {:?} has no source to encode", entry.id),
        })?;
        if entry.id.is_empty()
            || entry.id.contains(['/', '\\'])
            || entry.id == ".."
            || entry.id == "."
        {
            return Err(CliError {
                code: ExitCode::Io,
                message: format!(
                    "manifest id {:?} cannot be used as a directory name",
                    entry.id
                ),
            });
        }
        inputs.push((source.resolved_against(base), out_dir.join(&entry.id)));
    }
    Ok(inputs)
}

/// Encodes one video, streaming frames through the writer. Returns the
/// number of images written.
fn encode_one(source: &FrameSource, out_dir: &Path, job: &EncodeJob) -> CliResult<usize> {
    let encoder = Encoder::new(job.config)?;
    let spec = OutputSpec {
        format: job.format,
        directory: out_dir.to_path_buf(),
        naming: job.naming.clone(),
    };
    let frames = read_frames(source)?;
    let mut writer = EncodedWriter::create(spec, job.config.subseq_len)?;
    let batch = rayon::current_num_threads().max(2);
    let n = encoder.encode_stream(frames, batch, |images| {
        writer.write_batch(&images).map(|_| ())
    })?;
    writer.finish()?;
    info!(
        "{} -> {}: {n} images",
        source.path().display(),
        out_dir.display()
    );
    Ok(n)
}

fn run_job(job: &EncodeJob, out_dir: &Path, out: &mut dyn Write) -> CliResult<usize> {
    let inputs = match &job.manifest {
        Some(path) => resolve_manifest(path, out_dir)?,
        None => job.inputs.clone(),
    };
    let mut total = 0;
    for (source, dir) in &inputs {
        let n = encode_one(source, dir, job)?;
        emit(out, format_args!("{}\t{n}", dir.display()))?;
        total += n;
    }
    Ok(total)
}

pub fn encode_cmd(a: &EncodeArgs, out: &mut dyn Write) -> CliResult<()> {
    let job = build_job(
        &a.input,
        &a.encoding,
        a.subseq_len,
        a.encoding.out_dir.clone(),
    )?;
    with_jobs(a.encoding.jobs, || {
        let mut buf = Vec::new();
        run_job(&job, &a.encoding.out_dir, &mut buf)?;
        Ok(buf)
    })
    .and_then(|buf| {
        out.write_all(&buf).map_err(|e| CliError {
            code: ExitCode::Io,
            message: format!("stdout: {e}"),
        })
    })
}

pub fn parse_sizes(raw: &[String]) -> CliResult<Vec<usize>> {
    let mut sizes = Vec::new();
    for s in raw {
        let s = s.trim();
        let z: usize = s
            .parse()
            .map_err(|_| CliError::usage(format!("--sizes: {s:?} is not a positive integer")))?;
        if z == 0 {
            return Err(CliError::usage("--sizes: sizes must be at least 1"));
        }
        if sizes.contains(&z) {
            return Err(CliError::usage(format!("--sizes: {z} listed twice")));
        }
        sizes.push(z);
    }
    if sizes.is_empty() {
        return Err(CliError::usage("--sizes needs at least one size"));
    }
    Ok(sizes)
}

/// Output directory for one size of a sweep.
pub fn sweep_dir(out_dir: &Path, z: usize) -> PathBuf {
    out_dir.join(format!("z{z}"))
}

pub fn sweep_cmd(a: &SweepArgs, out: &mut dyn Write) -> CliResult<()> {
    let sizes = parse_sizes(&a.sizes)?;
    let jobs: Vec<(usize, EncodeJob)> = sizes
        .iter()
        .map(|&z| {
            build_job(&a.input, &a.encoding, z, sweep_dir(&a.encoding.out_dir, z)).map(|j| (z, j))
        })
        .collect::<CliResult<_>>()?;
    let buf = with_jobs(a.encoding.jobs, || {
        let mut buf = Vec::new();
        for (z, job) in &jobs {
            run_job(job, &sweep_dir(&a.encoding.out_dir, *z), &mut buf)?;
        }
        Ok(buf)
    })?;
    out.write_all(&buf).map_err(|e| CliError {
        code: ExitCode::Io,
        message: format!("stdout: {e}"),
    })
}

fn load_scores(path: &Path, flip: bool, per_frame: bool) -> CliResult<Vec<ScoreRecord>> {
    let records = read_scores(path, flip)?;
    Ok(if per_frame {
        aggregate_mean(&records)?
    } else {
        records
    })
}

pub fn eer_cmd(a: &ScoreArgs, out: &mut dyn Write) -> CliResult<()> {
    let records = load_scores(&a.scores, a.flip_polarity, a.per_frame)?;
    let point = eer(&records)?;
    emit(
        out,
        format_args!(
            "EER {:.6} threshold {} far {:.6} frr {:.6}",
            point.eer, point.threshold, point.far, point.frr
        ),
    )?;
    if let Some(path) = &a.out {
        let json = serde_json::to_string_pretty(&point).expect("eer point serializes");
        write_file(path, json.as_bytes())?;
    }
    Ok(())
}

pub fn hter_cmd(a: &HterArgs, out: &mut dyn Write) -> CliResult<()> {
    if !a.threshold.is_finite() {
        return Err(CliError::usage(format!(
            "--threshold must be finite, got {}",
            a.threshold
        )));
    }
    let s = &a.scores;
    let records = load_scores(&s.scores, s.flip_polarity, s.per_frame)?;
    let rates = gwsample_core::metrics::error_rates(&records, a.threshold)?;
    let value = hter(&records, a.threshold)?;
    emit(
        out,
        format_args!(
            "HTER {value:.6} threshold {} far {:.6} frr {:.6}",
            a.threshold, rates.far, rates.frr
        ),
    )?;
    if let Some(path) = &s.out {
        let json = serde_json::json!({
            "hter": value,
            "threshold": a.threshold,
            "far": rates.far,
            "frr": rates.frr,
        });
        write_file(path, format!("{json:#}").as_bytes())?;
    }
    Ok(())
}

pub fn roc_cmd(a: &ScoreArgs, out: &mut dyn Write) -> CliResult<()> {
    let records = load_scores(&a.scores, a.flip_polarity, a.per_frame)?;
    let curve = roc(&records)?;
    emit(
        out,
        format_args!("AUC {:.6} points {}", curve.auc, curve.points.len()),
    )?;
    if let Some(path) = &a.out {
        let mut buf = Vec::new();
        write_roc_csv(&mut buf, &curve).expect("in-memory csv");
        write_file(path, &buf)?;
    }
    Ok(())
}

/// Manifest for a bare score file: every record is a test-split sample.
pub fn synthesize_manifest(dataset: &str, records: &[ScoreRecord]) -> CliResult<ProtocolManifest> {
    let entries = records
        .iter()
        .map(|r| {
            Ok(ManifestEntry {
                id: r.id.clone(),
                source: None,
                label: match r.label {
                    gwsample_core::Class::Live => SampleLabel::Live,
                    gwsample_core::Class::Spoof => SampleLabel::spoof("unspecified")?,
                },
                split: Split::Test,
            })
        })
        .collect::<gwsample_core::Result<Vec<_>>>()?;
    Ok(ProtocolManifest::new(dataset, entries)?)
}

pub fn evaluate_cmd(a: &EvaluateArgs, out: &mut dyn Write) -> CliResult<()> {
    match a.plan {
        PlanArg::Intra => {
            if a.target_scores.is_some() || a.target_manifest.is_some() {
                return Err(CliError::usage(
                    "--target-scores and --target-manifest only apply to --plan cross",
                ));
            }
            if a.source_manifest.is_none() && a.threshold_split == ThresholdSplitArg::Dev {
                return Err(CliError::usage(
                    "--threshold-split dev needs a --source-manifest with a dev split",
                ));
            }
        }
        PlanArg::Cross => {
            if a.target_scores.is_none() {
                return Err(CliError::usage("--plan cross needs --target-scores"));
            }
            if a.threshold_split != ThresholdSplitArg::Test {
                return Err(CliError::usage(
                    "--plan cross always fixes the threshold on the source test split",
                ));
            }
        }
    }

    let source_scores = load_scores(&a.source_scores, a.flip_polarity, a.per_frame)?;
    let source = match &a.source_manifest {
        Some(p) => load_manifest(p)?,
        None => synthesize_manifest("source", &source_scores)?,
    };
    let report = match a.plan {
        PlanArg::Intra => {
            let split = match a.threshold_split {
                ThresholdSplitArg::Test => Split::Test,
                ThresholdSplitArg::Dev => Split::Dev,
            };
            evaluate(&plan_intra_database(source, split)?, &source_scores, &[])?
        }
        PlanArg::Cross => {
            let path = a.target_scores.as_ref().expect("checked above");
            let target_scores = load_scores(path, a.flip_polarity, a.per_frame)?;
            let target = match &a.target_manifest {
                Some(p) => load_manifest(p)?,
                None => synthesize_manifest("target", &target_scores)?,
            };
            evaluate(
                &plan_cross_database(source, target)?,
                &source_scores,
                &target_scores,
            )?
        }
    };

    let json = report.to_json();
    emit(out, &json)?;
    if let Some(path) = &a.out {
        write_file(path, json.as_bytes())?;
    }
    if let Some(path) = &a.csv {
        let mut buf = Vec::new();
        report.write_csv(&mut buf).expect("in-memory csv");
        write_file(path, &buf)?;
    }
    Ok(())
}

/// Installs the `GWSAMPLE_LOG` logger; safe to call more than once.
pub fn init_logging() {
    let env = env_logger::Env::new().filter_or(LOG_ENV, "warn");
    let _ = env_logger::Builder::from_env(env)
        .format_timestamp(None)
        .try_init();
}
