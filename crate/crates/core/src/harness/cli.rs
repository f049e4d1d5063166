//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on usage or I/O errors, 2 when `oracles`
//! reports a verdict below its threshold.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Result;
use crate::estimate::fit_sequential;
use crate::harness::config::{expand_config, parse_p_grid, parse_theta_mode};
use crate::harness::csv::{emit_csv, emit_verdicts_csv, summary_path};
use crate::harness::plot::emit_plot;
use crate::harness::sweep::{run_sweep, SweepSpec, ThetaMode};
use crate::model::{generate_task_pair, sample_theta, ModelConfig, RelationKind};
use crate::oracles::{format_verdicts, run_all_oracles, Profile};
use crate::parallel::Execution;
use crate::theory::{performance_drop, theorem_bound};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_THRESHOLD: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "forgetting",
    version,
    about = "Catastrophic forgetting in overparameterized latent-space regression",
    after_help = "Every subcommand accepts --config <file> with `key = value` lines mirroring its flags; \
                  flags on the command line take precedence. The worker count comes from FORGETTING_WORKERS \
                  (default: available processors).",
    args_override_self = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep p and write per-cell and per-p CSVs (and optionally an SVG plot).
    Sweep(SweepArgs),
    /// Run the Monte Carlo lemma checks and write a verdict table.
    Oracles(OracleArgs),
    /// Evaluate the forgetting bound and its preconditions.
    Bound(BoundArgs),
    /// Simulate one instance and print its risk report.
    RiskCheck(RiskCheckArgs),
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 20)]
    d: usize,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Comma list, or lo:hi:count for log-spaced points.
    #[arg(long, default_value = "200,350,500,1000,2000")]
    p_grid: String,
    #[arg(long, default_value_t = 100)]
    reps: usize,
    #[arg(long, default_value = "orthogonal")]
    relation: RelationKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// gaussian (fresh per cell) or fixed:<file>.
    #[arg(long, default_value = "gaussian")]
    theta: String,
    #[arg(long, default_value = "sweep.csv")]
    out: PathBuf,
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// quick (100 trials) or full (1000 trials).
    #[arg(long, default_value = "quick")]
    profile: Profile,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[arg(long, default_value_t = 20)]
    d: usize,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 20.0)]
    theta_norm2: f64,
}

#[derive(Debug, Args)]
struct RiskCheckArgs {
    #[arg(long, default_value_t = 20)]
    d: usize,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 2000)]
    p: usize,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value = "orthogonal")]
    relation: RelationKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "gaussian")]
    theta: String,
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv = match expand_config(argv.into_iter().map(Into::into).collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let exec = Execution::from_env();
    let outcome = match cli.command {
        Command::Sweep(a) => sweep(a, exec).map(|()| EXIT_OK),
        Command::Oracles(a) => oracles(a, exec),
        Command::Bound(a) => {
            print!("{}", bound(&a));
            Ok(EXIT_OK)
        }
        Command::RiskCheck(a) => risk_check(a).map(|text| {
            print!("{text}");
            EXIT_OK
        }),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_USAGE
    })
}

fn sweep(a: SweepArgs, exec: Execution) -> Result<()> {
    let spec = SweepSpec {
        d: a.d,
        n: a.n,
        gamma: a.gamma,
        theta_mode: parse_theta_mode(&a.theta)?,
        p_grid: parse_p_grid(&a.p_grid)?,
        reps: a.reps,
        relation: a.relation,
        master_seed: a.seed,
        output_path: a.out,
    };
    let result = run_sweep(&spec, exec)?;
    emit_csv(&result, &spec.output_path)?;
    eprintln!(
        "wrote {} rows to {} and {}",
        result.rows.len(),
        spec.output_path.display(),
        summary_path(&spec.output_path).display()
    );
    if let Some(plot) = &a.plot {
        emit_plot(&result, plot)?;
        eprintln!("wrote {}", plot.display());
    }
    Ok(())
}

fn oracles(a: OracleArgs, exec: Execution) -> Result<i32> {
    let verdicts = run_all_oracles(a.profile, a.seed, exec)?;
    print!("{}", format_verdicts(&verdicts));
    if let Some(out) = &a.out {
        emit_verdicts_csv(&verdicts, out)?;
    }
    Ok(if verdicts.iter().all(|v| v.passed()) {
        EXIT_OK
    } else {
        EXIT_THRESHOLD
    })
}

fn bound(a: &BoundArgs) -> String {
    let check = theorem_bound(a.d, a.n, a.p, a.gamma, a.theta_norm2);
    let mut out = format!("bound={:.6}\n", check.bound);
    if check.applicable {
        out.push_str("applicable=true\n");
    } else {
        let reasons: Vec<String> = check.violated.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "applicable=false, reason: {}", reasons.join("; "));
    }
    out
}

fn risk_check(a: RiskCheckArgs) -> Result<String> {
    let theta = match parse_theta_mode(&a.theta)? {
        ThetaMode::Fixed(t) => t,
        ThetaMode::Gaussian => sample_theta(a.d, a.seed),
    };
    let config = ModelConfig::new(a.d, a.n, a.p, a.gamma, theta, a.relation, a.seed)?;
    let tasks = generate_task_pair(&config)?;
    let arm = tasks.arm()?;
    let est = fit_sequential(&tasks, &arm)?;
    let r = performance_drop(&tasks, &est, &arm)?;
    let mut out = String::new();
    let rows: [(&str, String); 11] = [
        ("theta_norm2", format!("{:.6}", arm.theta_norm2)),
        ("risk_null", format!("{:.6}", r.risk_null)),
        ("risk_A", format!("{:.6}", r.risk_a)),
        ("risk_BA", format!("{:.6}", r.risk_ba)),
        ("drop", format!("{:.6}", r.drop)),
        ("bound", format!("{:.6}", r.bound)),
        ("bound_applicable", r.bound_applicable.to_string()),
        ("term_I", format!("{:.6}", r.term_i)),
        ("term_II", format!("{:.6}", r.term_ii)),
        ("term_III", format!("{:.6}", r.term_iii)),
        ("norms_controlled", r.norms_controlled.to_string()),
    ];
    for (k, v) in rows {
        let _ = writeln!(out, "{k}={v}");
    }
    Ok(out)
}
