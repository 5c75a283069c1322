//! Command-line front end: resampling, benchmarking, and data generation.

use clap::{Args, Parser, Subcommand, ValueEnum};
use qpgm::dataset::SchemaHints;
use qpgm::encoding::{EncodingMethod, Precision};
use qpgm::pipeline::bench::{BenchConfig, BenchGrid, ModelKind};
use qpgm::pipeline::{preprocess_telco, telco_design_matrix};
use qpgm::qsmote::{BaseVariant, LambdaPolicy, ResampleConfig, Variant};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const DEFAULT_DATASET_FILE: &str = "telco_churn.csv";

#[derive(Parser)]
#[command(
    name = "qpgm",
    version,
    about = "Quantum-inspired classifiers and oversampling for imbalanced churn data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Balance a churn CSV with a quantum-inspired oversampler.
    Resample(ResampleArgs),
    /// Run the cross-validated benchmark grid and write reports.
    Bench(BenchArgs),
    /// Generate a synthetic churn CSV with the standard 21-column schema.
    Datagen(DatagenArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    #[value(alias = "qsmote")]
    Base,
    #[value(alias = "knn-qsmote")]
    Knn,
    #[value(alias = "fidelity-qsmote")]
    Fidelity,
    #[value(alias = "margin-qsmote")]
    Margin,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Base => Variant::Base,
            VariantArg::Knn => Variant::Knn,
            VariantArg::Fidelity => Variant::Fidelity,
            VariantArg::Margin => Variant::Margin,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BaseVariantArg {
    Base,
    Knn,
    Fidelity,
}

impl From<BaseVariantArg> for BaseVariant {
    fn from(v: BaseVariantArg) -> Self {
        match v {
            BaseVariantArg::Base => BaseVariant::Base,
            BaseVariantArg::Knn => BaseVariant::Knn,
            BaseVariantArg::Fidelity => BaseVariant::Fidelity,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Pgm,
    Kpgm,
    Helstrom,
    Logistic,
}

impl From<ModelArg> for ModelKind {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Pgm => ModelKind::Pgm,
            ModelArg::Kpgm => ModelKind::Kpgm,
            ModelArg::Helstrom => ModelKind::Helstrom,
            ModelArg::Logistic => ModelKind::Logistic,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EncodingArg {
    Amplitude,
    #[value(alias = "stereographic")]
    Stereo,
}

impl From<EncodingArg> for EncodingMethod {
    fn from(e: EncodingArg) -> Self {
        match e {
            EncodingArg::Amplitude => EncodingMethod::Amplitude,
            EncodingArg::Stereo => EncodingMethod::Stereographic,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LambdaArg {
    AngleShots,
    Uniform,
}

#[derive(Args)]
struct DataArgs {
    /// Input churn CSV; defaults to $QPGM_DATA_DIR/telco_churn.csv.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Directory holding the default dataset.
    #[arg(long, env = "QPGM_DATA_DIR", hide_env_values = true)]
    data_dir: Option<PathBuf>,
}

impl DataArgs {
    fn resolve(&self) -> Result<PathBuf, String> {
        if let Some(path) = &self.data {
            return Ok(path.clone());
        }
        if let Some(dir) = &self.data_dir {
            return Ok(dir.join(DEFAULT_DATASET_FILE));
        }
        Err("no dataset: pass --data <path> or set QPGM_DATA_DIR".into())
    }
}

#[derive(Args)]
struct ResampleArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Output directory for the balanced CSV and its provenance sidecar.
    #[arg(long, short, default_value = "qpgm-out")]
    out: PathBuf,
    /// Oversampling variant.
    #[arg(long, value_enum, default_value = "base")]
    variant: VariantArg,
    /// Neighbors for the KNN variant.
    #[arg(long, default_value_t = 5)]
    neighbors: usize,
    /// Clusters for the fidelity variant.
    #[arg(long, default_value_t = 3)]
    clusters: usize,
    /// Margin threshold for the margin variant.
    #[arg(long, default_value_t = 0.1)]
    margin: f64,
    /// Candidate generator the margin filter wraps.
    #[arg(long, value_enum, default_value = "base")]
    base_for_margin: BaseVariantArg,
    /// Shots for the simulated swap test.
    #[arg(long, default_value_t = 1024)]
    shots: u64,
    /// Interpolation-weight policy.
    #[arg(long, value_enum, default_value = "angle-shots")]
    lambda_policy: LambdaArg,
    /// Step factor for the fidelity variant.
    #[arg(long, default_value_t = 1.0)]
    step: f64,
    /// RNG seed.
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Output directory for results.csv, aggregates.csv, summary.md.
    #[arg(long, short, default_value = "qpgm-out")]
    out: PathBuf,
    /// Run the full PGM/kPGM × variants × encodings × copies grid.
    #[arg(long, conflicts_with_all = ["model", "encoding", "copies", "variant"])]
    reproduce_paper: bool,
    /// Classifier for a single-configuration run.
    #[arg(long, value_enum, default_value = "pgm")]
    model: ModelArg,
    /// Feature-to-state encoding.
    #[arg(long, value_enum, default_value = "stereo")]
    encoding: EncodingArg,
    /// Tensor copies (PGM) or kernel power (kPGM).
    #[arg(long, default_value_t = 2)]
    copies: usize,
    /// Oversampling variant.
    #[arg(long, value_enum, default_value = "base")]
    variant: VariantArg,
    /// Number of random seeds.
    #[arg(long, default_value_t = 10)]
    seeds: usize,
    /// Number of stratified folds.
    #[arg(long, default_value_t = 5)]
    folds: usize,
    /// Master seed controlling every random stream.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Worker threads (defaults to available parallelism).
    #[arg(long, short)]
    jobs: Option<usize>,
    /// PCA components applied before every classifier.
    #[arg(long, default_value_t = 16)]
    pca: usize,
    /// Rescale factor inside the encodings.
    #[arg(long, default_value_t = 1.0)]
    rescale: f64,
    /// Encode in single precision (timing studies).
    #[arg(long)]
    single_precision: bool,
    /// Neighbors for the KNN variant.
    #[arg(long, default_value_t = 5)]
    neighbors: usize,
    /// Clusters for the fidelity variant.
    #[arg(long, default_value_t = 3)]
    clusters: usize,
    /// Margin threshold for the margin variant.
    #[arg(long, default_value_t = 0.1)]
    margin: f64,
    /// Shots for the simulated swap test.
    #[arg(long, default_value_t = 1024)]
    shots: u64,
    /// Cap on rows read from the dataset.
    #[arg(long, default_value_t = 1000)]
    limit: usize,
}

#[derive(Args)]
struct DatagenArgs {
    /// Output CSV path.
    #[arg(long, short, default_value = "telco_churn.csv")]
    out: PathBuf,
    /// Number of rows.
    #[arg(long, default_value_t = 7043)]
    rows: usize,
    /// RNG seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Resample(args) => run_resample(args),
        Command::Bench(args) => run_bench(args),
        Command::Datagen(args) => run_datagen(args),
    }
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn run_resample(args: ResampleArgs) -> ExitCode {
    let path = match args.data.resolve() {
        Ok(p) => p,
        Err(m) => return usage_error(m),
    };
    let cfg = ResampleConfig {
        variant: args.variant.into(),
        k_neighbors: args.neighbors,
        n_clusters: args.clusters,
        margin: args.margin,
        base_for_margin: args.base_for_margin.into(),
        shots: args.shots,
        lambda_policy: match args.lambda_policy {
            LambdaArg::AngleShots => LambdaPolicy::AngleShots,
            LambdaArg::Uniform => LambdaPolicy::Uniform,
        },
        step: args.step,
        seed: args.seed,
    };

    let outcome = (|| -> qpgm::Result<(usize, usize, bool)> {
        let raw = qpgm::load_csv(&path, &SchemaHints::default())?;
        let dataset = preprocess_telco(&raw)?;
        let (balanced, batch) = qpgm::resample_balanced(&dataset, &cfg)?;
        std::fs::create_dir_all(&args.out)?;
        balanced.write_csv(&args.out.join("resampled.csv"))?;
        batch.write_provenance_jsonl(&args.out.join("resampled_provenance.jsonl"))?;
        let (zeros, ones) = balanced.binary_counts()?;
        Ok((zeros.min(ones), zeros.max(ones), batch.underfilled))
    })();

    match outcome {
        Ok((minority, majority, underfilled)) => {
            println!(
                "wrote {} (minority {minority}, majority {majority}{})",
                args.out.join("resampled.csv").display(),
                if underfilled { ", underfilled" } else { "" }
            );
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}

fn run_bench(args: BenchArgs) -> ExitCode {
    let path = match args.data.resolve() {
        Ok(p) => p,
        Err(m) => return usage_error(m),
    };
    if let Some(jobs) = args.jobs {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .is_err()
        {
            eprintln!("note: thread pool already initialized; --jobs ignored");
        }
    }

    let grid = if args.reproduce_paper {
        BenchGrid::full_quantum()
    } else {
        BenchGrid::single(
            args.model.into(),
            args.variant.into(),
            args.encoding.into(),
            args.copies,
        )
    };
    let config = BenchConfig {
        grid,
        n_seeds: args.seeds,
        n_folds: args.folds,
        master_seed: args.seed,
        resample: ResampleConfig {
            k_neighbors: args.neighbors,
            n_clusters: args.clusters,
            margin: args.margin,
            shots: args.shots,
            ..ResampleConfig::default()
        },
        pca_components: args.pca,
        rescale: args.rescale,
        precision: if args.single_precision {
            Precision::Single
        } else {
            Precision::Double
        },
    };

    let report = (|| -> qpgm::Result<qpgm::BenchmarkReport> {
        let raw = qpgm::load_csv(&path, &SchemaHints::default())?;
        let design = telco_design_matrix(&raw, Some(args.limit))?;
        let report = qpgm::run_benchmark(&design, &config)?;
        report.write_artifacts(&args.out)?;
        Ok(report)
    })();

    match report {
        Ok(report) => {
            print!("{}", report.summary_markdown());
            println!(
                "{} of {} cells succeeded; artifacts in {}",
                report.records.len(),
                report.n_cells,
                args.out.display()
            );
            if report.success_fraction() >= 0.9 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => usage_error(e),
    }
}

fn run_datagen(args: DatagenArgs) -> ExitCode {
    if let Some(parent) = args.out.parent().filter(|p| !p.as_os_str().is_empty()) {
        if let Err(e) = std::fs::create_dir_all(parent) {
            return usage_error(e);
        }
    }
    match qpgm::synth::write_synthetic_telco(Path::new(&args.out), args.rows, args.seed) {
        Ok(()) => {
            println!("wrote {} ({} rows)", args.out.display(), args.rows);
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}
