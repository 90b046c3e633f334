use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use simplex_embed::commands;
use simplex_embed::config::{DecoderName, EncoderName, LossName, OptimizerName, PoolModeName, RunConfig, SimilarityName};
use simplex_embed::dataset::Dataset;
use simplex_embed::generate::{Family, GeneratorConfig};
use simplex_embed::{CliError, Result};

/// Representation learning on simplicial complexes.
///
/// Every command prints the resolved config as its first JSON line. Errors
/// are reported as a single `{"error": ...}` line on stderr with a nonzero
/// exit code.
#[derive(Debug, Parser)]
#[command(name = "simplex-embed", version)]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

/// Run configuration: a JSON file, then individual overrides.
#[derive(Debug, Args)]
struct ConfigArgs {
    /// JSON run config; missing fields take their defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    encoder: Option<EncoderName>,
    #[arg(long, global = true)]
    layers: Option<usize>,
    #[arg(long, global = true)]
    decoder: Option<DecoderName>,
    #[arg(long, global = true)]
    similarity: Option<SimilarityName>,
    #[arg(long, global = true)]
    loss: Option<LossName>,
    /// Embedding width `d`.
    #[arg(long, global = true)]
    dim: Option<usize>,
    #[arg(long, global = true)]
    epochs: Option<usize>,
    #[arg(long, global = true)]
    optimizer: Option<OptimizerName>,
    #[arg(long, global = true)]
    learning_rate: Option<f64>,
    #[arg(long, global = true)]
    negative_ratio: Option<usize>,
    #[arg(long, global = true)]
    walks_per_simplex: Option<usize>,
    #[arg(long, global = true)]
    walk_length: Option<usize>,
    #[arg(long, global = true)]
    window: Option<usize>,
    #[arg(long, global = true)]
    pool_mode: Option<PoolModeName>,
    #[arg(long, global = true)]
    margin: Option<f64>,
    #[arg(long, global = true)]
    pool_epochs: Option<usize>,
    #[arg(long, global = true)]
    pool_learning_rate: Option<f64>,
    #[arg(long, global = true)]
    points_per_top_simplex: Option<usize>,
    /// Master seed for every random stream.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        macro_rules! apply {
            ($($field:ident),*) => { $(if let Some(v) = self.$field { cfg.$field = v; })* };
        }
        apply!(
            encoder,
            layers,
            decoder,
            similarity,
            loss,
            dim,
            epochs,
            optimizer,
            learning_rate,
            negative_ratio,
            pool_mode,
            margin,
            pool_epochs,
            pool_learning_rate,
            points_per_top_simplex,
            seed
        );
        if let Some(v) = self.walks_per_simplex {
            cfg.walk.walks_per_simplex = v;
        }
        if let Some(v) = self.walk_length {
            cfg.walk.walk_length = v;
        }
        if let Some(v) = self.window {
            cfg.walk.window = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// A dataset manifest or a single complex file.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Dataset manifest (`{"complexes": [...]}`).
    #[arg(long)]
    dataset: Option<PathBuf>,
    /// A single complex file.
    #[arg(long)]
    complex: Option<PathBuf>,
}

impl Input {
    fn load(&self) -> Result<Dataset> {
        match (&self.dataset, &self.complex) {
            (Some(m), _) => Dataset::load(m),
            (None, Some(c)) => Dataset::from_complex_file(c),
            (None, None) => unreachable!("clap requires one input"),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print simplex counts and N̂; with --out, write the neighborhood matrices.
    Build {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Train one autoencoder per complex and store U_X, the model and the log.
    TrainAe {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply a stored model to a complex and write its embedding table.
    Embed {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the Hausdorff distance matrix of a dataset.
    Distmat {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train the pooling matrix W and write every complex embedding h_X.
    TrainPool {
        #[arg(long)]
        dataset: PathBuf,
        /// Directory holding the `train-ae` output.
        #[arg(long)]
        embeddings: PathBuf,
        /// Distance matrix; required in stress mode.
        #[arg(long)]
        distances: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Report reconstruction AUC, stress, 1-NN accuracy and triplet satisfaction.
    Eval {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long)]
        embeddings: PathBuf,
        /// Directory holding the `train-pool` output.
        #[arg(long)]
        pool: PathBuf,
        #[arg(long)]
        distances: Option<PathBuf>,
    },
    /// Generate a labeled synthetic dataset of disks and annuli.
    Gen {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_delimiter = ',', default_values = ["polygon_disk", "annulus"])]
        families: Vec<Family>,
        /// Complexes per family.
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        min_size: usize,
        #[arg(long, default_value_t = 10)]
        max_size: usize,
        #[arg(long, default_value_t = 0.05)]
        noise: f64,
    },
}

fn run(cli: &Cli) -> Result<()> {
    let cfg = cli.config.resolve()?;
    emit(&commands::config_record(&cfg));
    let records = match &cli.command {
        Command::Build { complex, out } => commands::build(complex, out.as_deref(), &cfg)?,
        Command::TrainAe { input, out } => commands::train_ae(&input.load()?, out, &cfg)?,
        Command::Embed { model, complex, out } => commands::embed(model, complex, out, &cfg)?,
        Command::Distmat { dataset, out } => commands::distmat(&Dataset::load(dataset)?, out, &cfg)?,
        Command::TrainPool { dataset, embeddings, distances, out } => {
            commands::train_pool_cmd(&Dataset::load(dataset)?, embeddings, distances.as_deref(), out, &cfg)?
        }
        Command::Eval { dataset, embeddings, pool, distances } => {
            commands::eval(&Dataset::load(dataset)?, embeddings, pool, distances.as_deref(), &cfg)?
        }
        Command::Gen { out, families, count, min_size, max_size, noise } => {
            let generator = GeneratorConfig {
                families: families.clone(),
                count: *count,
                min_size: *min_size,
                max_size: *max_size,
                noise: *noise,
                seed: cfg.seed,
            };
            commands::gen(&generator, Path::new(out))?
        }
    };
    for r in &records {
        emit(r);
    }
    Ok(())
}

fn emit(record: &Value) {
    println!("{record}");
}

fn error_line(kind: &str, message: &str) -> String {
    json!({"error": {"kind": kind, "message": message}}).to_string()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", error_line("usage", e.to_string().trim()));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let e: CliError = e;
            eprintln!("{}", error_line(e.kind(), &e.to_string()));
            ExitCode::FAILURE
        }
    }
}
