use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thickness_lab::report::{output_paths, write_outputs};
use thickness_lab::{execute, CliError, ExperimentConfig, ExperimentReport};

#[derive(Parser)]
#[command(name = "thickness-lab", version, about = "Covering-radius experiments on finite nets of unit vectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write <out>.json and <out>.csv.
    Run(Target),
    /// Like run, then exit with 3 if any acceptance threshold fails.
    Check(Target),
}

#[derive(Args)]
struct Target {
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    budget: Option<u64>,
    /// Output prefix; defaults to the config's out_path, then <config stem>.report.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("THICKNESS_LAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Config(format!("THICKNESS_LAB_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Io(e.to_string()))
}

fn default_out(config: &Path) -> PathBuf {
    let stem = config.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "thickness".into());
    config.with_file_name(format!("{stem}.report"))
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (std::fs::canonicalize(a), std::fs::canonicalize(b)) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

fn execute_target(t: &Target) -> Result<ExperimentReport, CliError> {
    let mut cfg = ExperimentConfig::load(&t.config)?;
    if let Some(seed) = t.seed {
        cfg.seed = seed;
    }
    if let Some(budget) = t.budget {
        cfg.budget = Some(budget);
    }
    let out =
        t.out.clone().or_else(|| cfg.out_path.as_ref().map(PathBuf::from)).unwrap_or_else(|| default_out(&t.config));
    let (json, csv) = output_paths(&out);
    for target in [json, csv] {
        if same_file(&target, &t.config) {
            return Err(CliError::Config(format!("output {} would overwrite the config", target.display())));
        }
    }
    cfg.out_path = Some(out.to_string_lossy().into_owned());
    cfg.validate()?;
    let report = execute(&cfg)?;
    let (json, csv) = write_outputs(&report, &out)?;
    println!("wrote {} and {}", json.display(), csv.display());
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Run(t) => execute_target(t).map(|r| {
            let s = &r.summary;
            let show = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.6}"));
            println!(
                "{}: lower {} estimate {} upper {} ({})",
                s.scenario,
                show(s.lower),
                show(s.estimate),
                show(s.upper),
                if r.pass { "pass" } else { "FAIL" }
            );
            0
        }),
        Command::Check(t) => execute_target(t).map(|r| {
            for a in &r.assertions {
                let verdict = if a.pass { "PASS" } else { "FAIL" };
                println!(
                    "{verdict} {}: {} {} {} (tol {:e})",
                    a.name,
                    a.value,
                    a.relation.symbol(),
                    a.bound,
                    a.tolerance
                );
            }
            let failed = r.failures().count();
            println!(
                "{}: {} of {} assertions passed",
                r.summary.scenario,
                r.assertions.len() - failed,
                r.assertions.len()
            );
            if r.pass {
                0
            } else {
                3
            }
        }),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("thickness-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
