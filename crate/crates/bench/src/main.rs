use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use halrect::problems::{self, manifest};
use halrect::{run, Aggregation, SelectionScheme, SolverConfig};
use halrect_bench::{
    budget_grid, io, operational_characteristics, report, run_sweep, summarize, SweepConfig,
};

#[derive(Parser)]
#[command(name = "halrect", version, about = "Halving-rectangles global optimization and benchmark sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one catalog problem.
    Solve {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        n: usize,
        /// lipschitz, ia or gl
        #[arg(long, default_value = "gl")]
        selection: SelectionScheme,
        /// 13a, 13b, 13c or 13d
        #[arg(long, default_value = "13d")]
        agg: Aggregation,
        #[arg(long, default_value_t = 1e-4)]
        eps: f64,
        #[arg(long, default_value_t = 1e-2)]
        eps_pe: f64,
        #[arg(long, default_value_t = 1_000_000)]
        m_max: usize,
        #[arg(long)]
        k_max: Option<usize>,
        /// Solve the perturbed-domain instance instead.
        #[arg(long)]
        rho: Option<f64>,
    },
    /// Run a sweep described by a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Output directory (overrides `out` in the config).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a sweep on perturbed domains.
    PerturbSweep {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated perturbation fractions.
        #[arg(long, value_delimiter = ',', default_values_t = [0.025, 0.05])]
        rho: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Operational characteristics from a results file.
    Oc {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Summary table from a results file.
    Summarize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Evaluations charged to unsolved runs.
        #[arg(long, default_value_t = 1_000_000)]
        m_max: usize,
    },
    /// Print the built-in problem catalog as a manifest.
    Problems {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Solve {
            problem,
            n,
            selection,
            agg,
            eps,
            eps_pe,
            m_max,
            k_max,
            rho,
        } => {
            let mut p = problems::lookup(&problem, n)?;
            if let Some(rho) = rho {
                p = problems::perturb(&p, rho)?;
            }
            let config = SolverConfig {
                eps,
                eps_pe,
                m_max,
                k_max,
                ..SolverConfig::new(selection, agg)
            };
            let r = run(&p, &config)?;
            println!("problem   {} (n = {})", p.name, p.dim());
            println!("variant   {}/{}", selection, agg);
            println!("f_min     {:.10e}", r.f_min);
            println!("x_min     {:?}", r.x_min);
            println!("pe        {:.6e}", r.pe);
            println!("m         {}", r.m);
            println!("k         {}", r.k);
            println!("stop      {:?}", r.stop);
            if r.nonfinite_evals > 0 {
                println!("nonfinite {}", r.nonfinite_evals);
            }
        }
        Command::Sweep { config, out } => {
            let cfg = SweepConfig::load(&config)?;
            sweep(cfg, out)?;
        }
        Command::PerturbSweep { config, rho, out } => {
            let mut cfg = SweepConfig::load(&config)?;
            if rho.is_empty() || rho.iter().any(|r| !r.is_finite() || *r < 0.0) {
                bail!("--rho needs non-negative finite values");
            }
            let mut rho = rho;
            rho.sort_by(f64::total_cmp);
            rho.dedup();
            cfg.rho = rho;
            sweep(cfg, out)?;
        }
        Command::Oc { input, out } => {
            let records = io::load_results(&input)?;
            let points = operational_characteristics(&records, &budget_grid())?;
            io::save_oc(&out, &points)?;
        }
        Command::Summarize { input, out, m_max } => {
            let records = io::load_results(&input)?;
            let rows = summarize(&records, m_max, report::catalog_tags);
            io::save_summary(&out, &rows, m_max)?;
        }
        Command::Problems { out } => {
            let text = manifest::catalog_manifest();
            match out {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn sweep(cfg: SweepConfig, out: Option<PathBuf>) -> Result<()> {
    let dir = out.or_else(|| cfg.out.clone()).unwrap_or_else(|| PathBuf::from("."));
    let outcome = run_sweep(&cfg)?;
    for f in &outcome.failures {
        eprintln!("failed: {} n={} {} rho={}: {}", f.problem, f.n, f.variant, f.rho, f.message);
    }
    write_all(&dir, &cfg, &outcome.records)?;
    let solved = outcome.records.iter().filter(|r| r.solved).count();
    println!("{solved}/{} runs solved, results in {}", outcome.records.len(), dir.display());
    Ok(())
}

fn write_all(dir: &Path, cfg: &SweepConfig, records: &[halrect_bench::SweepRecord]) -> Result<()> {
    io::save_results(&dir.join("results.csv"), records)?;
    io::save_oc(&dir.join("oc.csv"), &operational_characteristics(records, &budget_grid())?)?;
    let rows = summarize(records, cfg.m_max, report::catalog_tags);
    io::save_summary(&dir.join("summary.csv"), &rows, cfg.m_max)?;
    Ok(())
}
