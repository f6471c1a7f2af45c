//! Command-line front end. All real work lives in the library; this binary
//! parses arguments, dispatches, and maps errors to exit codes (0 success,
//! 2 argument, 3 i/o, 4 internal). Set `CHEBSURF_LOG` to error/warn/info/
//! debug to control stderr logging.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use chebsurf::cluster::ClusterParams;
use chebsurf::decompose::{DecomposeParams, Formulation};
use chebsurf::error::{Error, Result};
use chebsurf::eval::{boundary_fscore, boundary_map};
use chebsurf::hilbert::curve_for_image;
use chebsurf::pipeline::{run_batch, run_segment, RunConfig};
use chebsurf::synth::SyntheticKind;
use chebsurf::{bounds, image_io};

#[derive(Parser)]
#[command(
    name = "chebsurf",
    version,
    about = "Bounded-surface image decomposition and segmentation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Spread threshold for surface growth.
    #[arg(long)]
    epsilon: f64,
    /// Cosine nearness threshold for surface initialization, in [0, 1].
    #[arg(long)]
    npar: f64,
    /// Growth criterion: one multivariate evaluation or per-dimension votes.
    #[arg(long, default_value = "multivariate")]
    formulation: Formulation,
    /// Disable the zero-variance fallback and follow the raw pseudoinverse
    /// criterion even on degenerate surfaces.
    #[arg(long)]
    strict_paper: bool,
}

impl DecomposeArgs {
    fn to_params(&self) -> Result<DecomposeParams> {
        Ok(DecomposeParams::new(self.epsilon, self.npar)?
            .with_formulation(self.formulation)
            .with_strict_paper(self.strict_paper))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decompose an image into bounded surfaces.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        params: DecomposeArgs,
        /// Write the decomposition as JSON.
        #[arg(long)]
        out_json: Option<PathBuf>,
        /// Write an RGB overlay with one color per surface.
        #[arg(long)]
        out_overlay: Option<PathBuf>,
    },
    /// Decompose, cluster surfaces, and write a label map.
    Segment {
        /// Input image (use exactly one of --input / --input-dir).
        #[arg(long, conflicts_with = "input_dir")]
        input: Option<PathBuf>,
        /// Process every PNG/PPM/PGM in a directory.
        #[arg(long, requires = "out_dir")]
        input_dir: Option<PathBuf>,
        /// Output directory for batch mode.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[command(flatten)]
        params: DecomposeArgs,
        /// Number of clusters k.
        #[arg(long)]
        clusters: usize,
        #[arg(long, default_value_t = 100)]
        replicates: usize,
        #[arg(long, default_value_t = 1000)]
        iterations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Indexed-color PNG of cluster labels (single-input mode).
        #[arg(long, conflicts_with = "input_dir")]
        out_labels: Option<PathBuf>,
        /// RGB overlay with one color per surface.
        #[arg(long, conflicts_with = "input_dir")]
        out_overlay: Option<PathBuf>,
        /// Write the run summary as JSON (single-input mode; batch mode
        /// writes one report per file).
        #[arg(long, conflicts_with = "input_dir")]
        report: Option<PathBuf>,
    },
    /// Print the probability bounds for a configuration as JSON.
    Bounds {
        /// Pixel count M.
        #[arg(long)]
        pixels: usize,
        /// Feature count N.
        #[arg(long)]
        features: usize,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Print the traversal order for a grid as CSV on stdout.
    Curve {
        #[arg(long)]
        height: usize,
        #[arg(long)]
        width: usize,
    },
    /// Score a predicted label map against a reference.
    Eval {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        /// Boundary match tolerance in pixels (Chebyshev distance).
        #[arg(long, default_value_t = 2)]
        tolerance: usize,
    },
    /// Generate a synthetic test image and its ground-truth labels.
    Synth {
        #[arg(long)]
        kind: SyntheticKind,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        out_truth: PathBuf,
    },
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("CHEBSURF_LOG", "warn"))
        .format_timestamp(None)
        .init();

    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        let mut source = std::error::Error::source(&err);
        while let Some(cause) = source {
            eprintln!("  caused by: {cause}");
            source = cause.source();
        }
        std::process::exit(err.exit_code());
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Decompose {
            input,
            params,
            out_json,
            out_overlay,
        } => {
            let config = RunConfig {
                input,
                decompose: params.to_params()?,
                cluster: None,
                out_labels: None,
                out_overlay,
                out_json,
                report_path: None,
            };
            let report = run_segment(&config)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            Ok(())
        }
        Command::Segment {
            input,
            input_dir,
            out_dir,
            params,
            clusters,
            replicates,
            iterations,
            seed,
            out_labels,
            out_overlay,
            report,
        } => {
            let decompose_params = params.to_params()?;
            let cluster_params = ClusterParams::new(clusters)?
                .with_replicates(replicates)
                .with_max_iterations(iterations)
                .with_seed(seed);
            match (input, input_dir) {
                (Some(input), None) => {
                    let out_labels = out_labels.ok_or_else(|| {
                        Error::argument("segment needs --out-labels (unless using --input-dir)")
                    })?;
                    let config = RunConfig {
                        input,
                        decompose: decompose_params,
                        cluster: Some(cluster_params),
                        out_labels: Some(out_labels),
                        out_overlay,
                        out_json: None,
                        report_path: report,
                    };
                    let report = run_segment(&config)?;
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&report).expect("report serializes")
                    );
                    Ok(())
                }
                (None, Some(dir)) => {
                    let out_dir = out_dir.expect("clap enforces --out-dir with --input-dir");
                    let entries =
                        run_batch(&dir, &out_dir, &decompose_params, &cluster_params, false)?;
                    let mut first_failure: Option<i32> = None;
                    for entry in &entries {
                        match &entry.outcome {
                            Ok(report) => println!(
                                "{}: {} surfaces, reduction {:.1}",
                                entry.input.display(),
                                report.surface_count,
                                report.reduction_factor
                            ),
                            Err(err) => {
                                eprintln!("{}: error: {err}", entry.input.display());
                                first_failure.get_or_insert(err.exit_code());
                            }
                        }
                    }
                    if let Some(code) = first_failure {
                        std::process::exit(code);
                    }
                    Ok(())
                }
                (None, None) => Err(Error::argument("segment needs --input or --input-dir")),
                (Some(_), Some(_)) => unreachable!("clap rejects conflicting inputs"),
            }
        }
        Command::Bounds {
            pixels,
            features,
            epsilon,
        } => {
            let report = bounds::BoundReport::new(features, pixels, epsilon)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            Ok(())
        }
        Command::Curve { height, width } => {
            let curve = curve_for_image(height, width)?;
            let stdout = std::io::stdout();
            let mut out = std::io::BufWriter::new(stdout.lock());
            writeln!(out, "index,row,col").map_err(|e| Error::io("stdout", e))?;
            for (index, (row, col)) in curve.iter().enumerate() {
                writeln!(out, "{index},{row},{col}").map_err(|e| Error::io("stdout", e))?;
            }
            Ok(())
        }
        Command::Eval {
            pred,
            truth,
            tolerance,
        } => {
            let pred_labels = image_io::read_label_map(&pred)?;
            let truth_labels = image_io::read_label_map(&truth)?;
            let score = boundary_fscore(
                &boundary_map(&pred_labels),
                &boundary_map(&truth_labels),
                tolerance,
            )?;
            println!(
                "{}",
                serde_json::to_string_pretty(&score).expect("score serializes")
            );
            Ok(())
        }
        Command::Synth {
            kind,
            size,
            seed,
            out,
            out_truth,
        } => {
            let (image, truth) = chebsurf::synth::make_synthetic(kind, size, seed)?;
            image_io::write_image(&image, &out)?;
            image_io::write_label_map(&truth, &out_truth)?;
            println!(
                "wrote {} ({}x{}) and truth {}",
                out.display(),
                size,
                size,
                out_truth.display()
            );
            Ok(())
        }
    }
}
