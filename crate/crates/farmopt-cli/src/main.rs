use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use farmopt::config::RunConfig;
use farmopt::harness::{compare_policies, write_outcomes, Campaign, CampaignOutcome};
use farmopt::milp::{backend_by_name, to_lp_string};
use farmopt::policies::PolicyKind;

/// Joint yaw and maintenance scheduling for offshore wind farms.
#[derive(Parser)]
#[command(name = "farmopt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run each policy against each truth seed and write metrics.csv, rolls.jsonl and config.toml.
    Run(RunArgs),
    /// As `run`, with at least two policies, and print a side-by-side summary.
    Compare(RunArgs),
    /// Build the optimization model of one roll without solving it and print it in LP format.
    Inspect(InspectArgs),
    /// Print the resolved configuration.
    Config(ConfigArgs),
}

#[derive(Args)]
struct ConfigArgs {
    /// TOML configuration file; defaults are used when absent.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Policy to include; repeat for several.
    #[arg(long = "policy")]
    policies: Vec<PolicyKind>,
    #[arg(long)]
    rolls: Option<usize>,
    #[arg(long)]
    turbines: Option<usize>,
    /// Truth seed; repeat for several.
    #[arg(long = "seed")]
    seeds: Vec<u64>,
    #[arg(long)]
    scenarios: Option<usize>,
    #[arg(long)]
    horizon_days: Option<usize>,
    #[arg(long)]
    tbs_interval_days: Option<f64>,
    #[arg(long)]
    time_limit_secs: Option<f64>,
    /// Any other parameter, as `dotted.key=value`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Output directory (overrides `output_dir`).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InspectArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Zero-based roll whose model is built; earlier rolls are simulated first.
    #[arg(long)]
    roll: usize,
    /// Write the LP text here instead of stdout.
    #[arg(long)]
    lp: Option<PathBuf>,
}

/// Failures before any simulation starts.
#[derive(Debug)]
struct ConfigFailure(anyhow::Error);

impl ConfigArgs {
    fn resolve(&self) -> Result<RunConfig, ConfigFailure> {
        self.try_resolve().map_err(ConfigFailure)
    }

    fn try_resolve(&self) -> Result<RunConfig> {
        let base = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        let mut sets: Vec<(String, String)> = Vec::new();
        let mut put = |k: &str, v: String| sets.push((k.to_string(), v));
        if !self.policies.is_empty() {
            let names: Vec<String> = self.policies.iter().map(|p| format!("\"{p}\"")).collect();
            put("policies", format!("[{}]", names.join(", ")));
        }
        if let Some(v) = self.rolls {
            put("campaign.rolls", v.to_string());
        }
        if let Some(v) = self.turbines {
            put("campaign.turbines", v.to_string());
        }
        if !self.seeds.is_empty() {
            let s: Vec<String> = self.seeds.iter().map(u64::to_string).collect();
            put("campaign.truth_seeds", format!("[{}]", s.join(", ")));
        }
        if let Some(v) = self.scenarios {
            put("campaign.scenarios", v.to_string());
        }
        if let Some(v) = self.horizon_days {
            put("campaign.horizon_days", v.to_string());
        }
        if let Some(v) = self.tbs_interval_days {
            put("tbs_interval_days", format!("{v:?}"));
        }
        if let Some(v) = self.time_limit_secs {
            put("optimizer.time_limit_secs", format!("{v:?}"));
        }
        for s in &self.sets {
            let (k, v) = s.split_once('=').with_context(|| format!("--set expects KEY=VALUE, got `{s}`"))?;
            put(k.trim(), v.trim().to_string());
        }
        Ok(base.with_overrides(&sets)?)
    }
}

fn run(args: &RunArgs, compare: bool) -> Result<Result<()>, ConfigFailure> {
    let mut cfg = args.config.resolve()?;
    if let Some(out) = &args.out {
        cfg.output_dir = out.clone();
    }
    if compare && cfg.policies.len() < 2 {
        return Err(ConfigFailure(anyhow::anyhow!("compare needs at least two policies")));
    }
    Ok(execute(&cfg, compare))
}

fn execute(cfg: &RunConfig, compare: bool) -> Result<()> {
    let backend = backend_by_name(&cfg.backend)?;
    let outcomes = compare_policies(cfg, backend.as_ref())?;
    let dir = &cfg.output_dir;
    write_outcomes(dir, &outcomes)?;
    let snapshot = dir.join("config.toml");
    std::fs::write(&snapshot, cfg.to_toml_string()).with_context(|| format!("writing {}", snapshot.display()))?;
    log::info!("results written to {}", dir.display());
    if compare {
        print_summary(cfg, &outcomes)?;
    }
    Ok(())
}

/// Means over truth seeds, one line per policy.
fn print_summary(cfg: &RunConfig, outcomes: &[CampaignOutcome]) -> Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(
        out,
        "{:<8} {:>12} {:>12} {:>10} {:>9} {:>7} {:>10} {:>9}",
        "policy", "total_cost", "revenue_loss", "downtime_d", "lost_cyc", "tasks", "corrective", "failures"
    )?;
    for &kind in &cfg.policies {
        let group: Vec<_> = outcomes.iter().filter(|o| o.metrics.policy == kind).map(|o| &o.metrics).collect();
        let n = group.len() as f64;
        let mean = |f: &dyn Fn(&farmopt::harness::OmMetrics) -> f64| group.iter().map(|m| f(m)).sum::<f64>() / n;
        let lost: Vec<f64> = group.iter().filter_map(|m| m.lost_cycle_days_per_task).collect();
        writeln!(
            out,
            "{:<8} {:>12.0} {:>12.0} {:>10.2} {:>9} {:>7.1} {:>10.1} {:>9.1}",
            kind.name(),
            mean(&|m| m.total_cost),
            mean(&|m| m.revenue_loss),
            mean(&|m| m.downtime_days),
            if lost.is_empty() { "-".to_string() } else { format!("{:.2}", lost.iter().sum::<f64>() / lost.len() as f64) },
            mean(&|m| m.maintenance_count as f64),
            mean(&|m| m.corrective_count as f64),
            mean(&|m| m.failures as f64),
        )?;
    }
    Ok(())
}

fn inspect(args: &InspectArgs) -> Result<Result<()>, ConfigFailure> {
    let cfg = args.config.resolve()?;
    if args.roll >= cfg.campaign.rolls {
        return Err(ConfigFailure(anyhow::anyhow!(
            "roll {} is beyond the campaign length of {} rolls",
            args.roll,
            cfg.campaign.rolls
        )));
    }
    let kind = cfg.policies[0];
    if !kind.uses_optimizer() {
        return Err(ConfigFailure(anyhow::anyhow!("policy `{kind}` has no optimization model to inspect")));
    }
    Ok(dump(&cfg, kind, args))
}

fn dump(cfg: &RunConfig, kind: PolicyKind, args: &InspectArgs) -> Result<()> {
    let backend = backend_by_name(&cfg.backend)?;
    let seed = cfg.campaign.truth_seeds[0];
    let mut campaign = Campaign::new(cfg, kind, seed, cfg.campaign.rolls)?;
    while campaign.roll() < args.roll {
        campaign.step(backend.as_ref())?;
    }
    let Some(instance) = campaign.instance()? else { bail!("policy `{kind}` has no optimization model") };
    let lp = to_lp_string(&instance);
    let mut out = std::io::stdout().lock();
    match &args.lp {
        Some(path) => std::fs::write(path, &lp).with_context(|| format!("writing {}", path.display()))?,
        None => out.write_all(lp.as_bytes())?,
    }
    writeln!(out, "\\ policy {kind} seed {seed} roll {}", args.roll)?;
    writeln!(out, "\\ variables {}", instance.num_vars())?;
    for (family, n) in instance.var_counts() {
        writeln!(out, "\\   {family} {n}")?;
    }
    writeln!(out, "\\ constraints {}", instance.num_rows())?;
    for (family, n) in instance.row_counts() {
        writeln!(out, "\\   {family} {n}")?;
    }
    Ok(())
}

fn show_config(args: &ConfigArgs) -> Result<Result<()>, ConfigFailure> {
    let cfg = args.resolve()?;
    print!("{}", cfg.to_toml_string());
    Ok(Ok(()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info,highs=error")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Run(a) => run(a, false),
        Command::Compare(a) => run(a, true),
        Command::Inspect(a) => inspect(a),
        Command::Config(a) => show_config(a),
    };
    match outcome {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Err(ConfigFailure(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Ok(Err(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
