//! Command-line front end: generate single realizations, run ensembles,
//! tabulate limit laws, and drive the named experiments.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use degreelab::limits::{
    finite_p_extreme_grid, fujihara_pmf, gumbel_gs_cdf, limit_cov_c0, limit_cov_c0_direct2d,
    limit_cov_cd,
};
use degreelab::models::{
    generate_degrees, generate_with_edges, write_edge_list, ModelKind, ModelSpec,
};
use degreelab::rng::make_stream;
use degreelab::stats::{empirical_pmf, ensemble_moments, write_ensemble_csv, write_pmf_csv};
use degreelab_cli::{run_experiment, ExperimentConfig, ExperimentKind, HarnessError};

#[derive(Parser)]
#[command(
    name = "degreelab",
    about = "Random-network degree-distribution laboratory",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one realization and write its degree pmf as CSV.
    Generate(GenerateArgs),
    /// Run an ensemble and write cross-run moments as CSV.
    Ensemble(EnsembleArgs),
    /// Tabulate analytic limit laws.
    Limits(LimitsArgs),
    /// Run a named experiment from a config file.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Model family: threshold | er | rgg | keygraph | pa
    #[arg(long)]
    model: String,
    /// Node count.
    #[arg(long)]
    n: usize,
    /// Scale constant at the critical scaling: the fitness rate for
    /// `threshold`, the Poisson mean c for `er`/`rgg`/`keygraph`, and the
    /// attachment count m for `pa`.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
}

impl ModelArgs {
    fn spec(&self) -> Result<ModelSpec, HarnessError> {
        let kind = match self.model.as_str() {
            "threshold" => ModelKind::Threshold,
            "er" => ModelKind::ErdosRenyi,
            "rgg" => ModelKind::Geometric,
            "keygraph" => ModelKind::RandomKey,
            "pa" => ModelKind::PreferentialAttachment,
            other => {
                return Err(HarnessError::Invalid(format!(
                    "unknown model `{other}` (expected threshold|er|rgg|keygraph|pa)"
                )))
            }
        };
        Ok(ModelSpec::from_critical_scaling(kind, self.n, self.scale)?)
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Master seed.
    #[arg(long)]
    seed: u64,
    /// Stream id within the seed (defaults to 0).
    #[arg(long, default_value_t = 0)]
    stream_id: u64,
    /// Output CSV path for the degree pmf.
    #[arg(long)]
    out: PathBuf,
    /// Also dump the edge list (one `u v` pair per line, 1-indexed).
    /// Quadratic for the threshold model; intended for small n.
    #[arg(long)]
    edges: Option<PathBuf>,
}

#[derive(Args)]
struct EnsembleArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Number of independent realizations.
    #[arg(long)]
    runs: usize,
    /// Degrees of interest (comma separated).
    #[arg(long, value_delimiter = ',', default_value = "0")]
    degrees: Vec<u32>,
    /// Master seed; run r uses stream id r.
    #[arg(long)]
    seed: u64,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct LimitsArgs {
    #[command(subcommand)]
    what: LimitsCommand,
}

#[derive(Subcommand)]
enum LimitsCommand {
    /// Tabulate the heavy-tailed pmf and its tail ratio d(d-1)p(d).
    Fujihara {
        #[arg(long, default_value_t = 60)]
        dmax: u32,
        #[arg(long, default_value_t = 1e-10)]
        rel_tol: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare finite-p order-statistic CDFs against the rank-s Gumbel laws.
    Gumbel {
        /// Sample size per replicate.
        #[arg(long, default_value_t = 100_000)]
        p: u64,
        /// Replicates.
        #[arg(long, default_value_t = 100_000)]
        draws: u64,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        s: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_value = "-1,0,1", allow_hyphen_values = true)]
        x: Vec<f64>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the limiting degree-0 indicator covariance by both routes.
    C0 {
        #[arg(long, default_value_t = 1e-10)]
        rel_tol: f64,
    },
    /// Print the limiting degree-d indicator covariance (Monte Carlo).
    Cd {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 1_000_000)]
        draws: u64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment name; must match the config's `experiment` key.
    name: String,
    /// Config file (`key = value` lines).
    #[arg(long)]
    config: PathBuf,
    /// Master seed; overrides `master_seed` from the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Output root directory.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads (0 = library default). Results are identical for any
    /// value; 1 forces fully serial execution.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("degreelab: {err}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, HarnessError> {
    match cli.command {
        Command::Generate(args) => {
            let spec = args.model.spec()?;
            let mut stream = make_stream(args.seed, args.stream_id);
            let sample = if let Some(edges_path) = &args.edges {
                let (sample, edges) = generate_with_edges(&spec, &mut stream);
                let mut buf = Vec::new();
                write_edge_list(&mut buf, &edges)?;
                fs::write(edges_path, buf)?;
                sample
            } else {
                generate_degrees(&spec, &mut stream)
            };
            let mut buf = Vec::new();
            write_pmf_csv(&mut buf, &empirical_pmf(&sample))?;
            fs::write(&args.out, buf)?;
            println!("wrote {}", args.out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Ensemble(args) => {
            let spec = args.model.spec()?;
            let stats = ensemble_moments(&spec, args.runs, &args.degrees, args.seed)?;
            let mut buf = Vec::new();
            write_ensemble_csv(&mut buf, &stats)?;
            fs::write(&args.out, buf)?;
            println!("wrote {}", args.out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Limits(args) => run_limits(args),
        Command::Experiment(args) => {
            let text = fs::read_to_string(&args.config)?;
            let cfg = ExperimentConfig::parse(&text)?;
            let requested = ExperimentKind::from_name(&args.name).ok_or_else(|| {
                HarnessError::Invalid(format!("unknown experiment `{}`", args.name))
            })?;
            if requested != cfg.experiment {
                return Err(HarnessError::ExperimentMismatch {
                    cli: args.name,
                    config: cfg.experiment.name().to_string(),
                });
            }
            let seed = args
                .seed
                .or(cfg.master_seed)
                .ok_or(HarnessError::MissingSeed)?;
            let (manifest, dir) = run_experiment(&cfg, seed, &args.out, args.threads)?;
            for v in &manifest.verdicts {
                println!(
                    "{} {}: {}",
                    if v.passed { "PASS" } else { "FAIL" },
                    v.name,
                    v.detail
                );
            }
            println!(
                "{}: {} ({})",
                manifest.experiment,
                if manifest.passed { "PASS" } else { "FAIL" },
                dir.display()
            );
            Ok(if manifest.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn run_limits(args: LimitsArgs) -> Result<ExitCode, HarnessError> {
    match args.what {
        LimitsCommand::Fujihara { dmax, rel_tol, out } => {
            let mut csv = String::from("d,p_fuj,tail_ratio\n");
            for d in 0..=dmax {
                let p = fujihara_pmf(d, rel_tol)?.value;
                let ratio = f64::from(d) * (f64::from(d) - 1.0) * p;
                csv.push_str(&format!("{d},{p},{ratio}\n"));
            }
            fs::write(&out, csv)?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        LimitsCommand::Gumbel {
            p,
            draws,
            s,
            x,
            seed,
            out,
        } => {
            let stream = make_stream(seed, 0);
            let grid = finite_p_extreme_grid(p, &s, &x, draws, &stream)?;
            let mut csv = String::from("s,x,g_s,empirical\n");
            for (si, &rank) in s.iter().enumerate() {
                for (xi, &level) in x.iter().enumerate() {
                    csv.push_str(&format!(
                        "{rank},{level},{},{}\n",
                        gumbel_gs_cdf(rank, level),
                        grid[si][xi]
                    ));
                }
            }
            fs::write(&out, csv)?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        LimitsCommand::C0 { rel_tol } => {
            let a = limit_cov_c0(rel_tol)?;
            let b = limit_cov_c0_direct2d(rel_tol.max(1e-8))?;
            println!(
                "C(0) one-dimensional route: {} (error estimate {:e})",
                a.value, a.abs_error_estimate
            );
            println!(
                "C(0) direct 2-d quadrature: {} (error estimate {:e})",
                b.value, b.abs_error_estimate
            );
            Ok(ExitCode::SUCCESS)
        }
        LimitsCommand::Cd { d, draws, seed } => {
            let mut stream = make_stream(seed, 0);
            let est = limit_cov_cd(d, draws, &mut stream);
            println!(
                "C({d}) = {} +/- {} ({} draws)",
                est.estimate, est.standard_error, est.draws
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}
