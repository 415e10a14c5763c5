//! `cvqkd-recon` — feasibility reports for the reconciliation stage of
//! reverse-reconciliation CV-QKD.
//!
//! Subcommands: `analyze` (one channel point, full budget), `sweep`
//! (distance scan plus exponential fit), `montecarlo` (seeded validation of
//! the block success probability) and `audit` (published-information
//! accounting of the reference scenario).
//!
//! Exit codes: 0 success, 2 argument error, 3 infeasible (with a
//! machine-readable reason on stdout), 4 resource cap.

mod output;
mod sweep;

use clap::{Args, Parser, Subcommand, ValueEnum};
use recon_core::budget::{
    audit_worked_example, block_size_bound, plan_quantization, relative_complexity,
    ComplexityEstimate, ScalingMode, REFERENCE_TRANSMISSION,
};
use recon_core::channel::{propagate, ChannelPoint};
use recon_core::montecarlo::simulate_error_counts_parallel;
use recon_core::numerics::Probability;
use recon_core::Error;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "cvqkd-recon",
    version,
    about = "Feasibility analyzer for reverse-reconciliation CV-QKD error correction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Information budget, digit plan, block-size bound and complexity for
    /// one channel point.
    Analyze(AnalyzeArgs),
    /// Distance sweep emitting plot-ready rows and an exponential fit.
    Sweep(SweepArgs),
    /// Seeded Monte Carlo of binomial error counts against the analytic
    /// success probabilities.
    Montecarlo(MonteCarloArgs),
    /// Published-information audit (defaults to the 20 dB reference
    /// scenario).
    Audit(AuditArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct PointArgs {
    /// Channel power transmittance in (0, 1]; exclusive with --distance.
    #[arg(long, conflicts_with = "distance")]
    transmission: Option<f64>,
    /// Fiber length in km, converted using the attenuation coefficient.
    #[arg(long)]
    distance: Option<f64>,
    /// Fiber attenuation, dB/km.
    #[arg(long, default_value_t = 0.2)]
    atten: f64,
    /// Modulation variance in shot-noise units.
    #[arg(long = "mod-var", default_value_t = 100.0)]
    mod_var: f64,
}

impl PointArgs {
    fn resolve(&self, default_transmission: Option<f64>) -> Result<ChannelPoint, Error> {
        match (self.transmission, self.distance) {
            (Some(eta), None) => ChannelPoint::from_transmission(eta, self.mod_var),
            (None, Some(km)) => ChannelPoint::from_distance(km, self.atten, self.mod_var),
            (None, None) => match default_transmission {
                Some(eta) => ChannelPoint::from_transmission(eta, self.mod_var),
                None => Err(Error::Domain(
                    "exactly one of --transmission or --distance is required".into(),
                )),
            },
            (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Tolerated block failure probability 1 - beta.
    #[arg(long = "beta-fail", default_value_t = 1e-7)]
    beta_fail: f64,
    /// Fraction of the per-digit secret rate spent on the correction gap.
    #[arg(long, default_value_t = 0.5)]
    headroom: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    /// First distance, km.
    #[arg(long = "dist-start")]
    dist_start: f64,
    /// Last distance, km.
    #[arg(long = "dist-end")]
    dist_end: f64,
    /// Distance increment, km.
    #[arg(long)]
    step: f64,
    /// Fiber attenuation, dB/km.
    #[arg(long, default_value_t = 0.2)]
    atten: f64,
    /// Modulation variance in shot-noise units.
    #[arg(long = "mod-var", default_value_t = 100.0)]
    mod_var: f64,
    /// Tolerated block failure probability 1 - beta.
    #[arg(long = "beta-fail", default_value_t = 1e-7)]
    beta_fail: f64,
    /// Fraction of the per-digit secret rate spent on the correction gap.
    #[arg(long, default_value_t = 0.5)]
    headroom: f64,
    /// How relative complexity is computed.
    #[arg(long, value_enum, default_value_t = ModeArg::PowerLawEta4)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    PowerLawEta4,
    FullPipeline,
}

impl From<ModeArg> for ScalingMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::PowerLawEta4 => ScalingMode::PowerLawEta4,
            ModeArg::FullPipeline => ScalingMode::FullPipeline,
        }
    }
}

#[derive(Args)]
struct MonteCarloArgs {
    /// Block size in digits.
    #[arg(long)]
    m: u64,
    /// Bit error rate of each digit.
    #[arg(long)]
    ber: f64,
    /// Correctable error fraction e_rec.
    #[arg(long)]
    erec: f64,
    /// Number of sampled blocks.
    #[arg(long)]
    trials: u64,
    /// Master seed (64-bit unsigned decimal).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; the report is identical for any count.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    point: PointArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Montecarlo(args) => cmd_montecarlo(&args),
        Command::Audit(args) => cmd_audit(&args),
    }
    .unwrap_or_else(report_failure);
    std::process::exit(code);
}

/// Maps an error to its exit code, printing machine-readable reasons for
/// the infeasible and resource-cap cases.
fn report_failure(err: Error) -> i32 {
    match &err {
        Error::Infeasible(reason) => {
            println!("{}", json!({ "error": "infeasible", "reason": reason }));
            3
        }
        Error::WorkCap { .. } => {
            println!(
                "{}",
                json!({ "error": "resource_cap", "reason": err.to_string() })
            );
            4
        }
        Error::Domain(_) | Error::Mismatch(_) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<i32, Error> {
    let point = args.point.resolve(None)?;
    let beta_fail = Probability::new(args.beta_fail)?;
    let info = propagate(&point)?;
    let plan = plan_quantization(&info)?;
    let bound = block_size_bound(&plan, beta_fail, args.headroom)?;
    let reference = ChannelPoint::from_transmission(REFERENCE_TRANSMISSION, point.mod_variance)?;
    let complexity = ComplexityEstimate {
        block_size: bound.m_min,
        relative_complexity: relative_complexity(
            &reference,
            &point,
            ScalingMode::PowerLawEta4,
            beta_fail,
            args.headroom,
        )?,
        scaling_mode: ScalingMode::PowerLawEta4,
    };
    match args.format {
        Format::Json => println!(
            "{}",
            output::render_json(json!({
                "channel": point,
                "info": info,
                "plan": plan,
                "bound": bound,
                "complexity": complexity,
            }))
        ),
        Format::Csv => print!(
            "{}",
            output::analyze_csv(&point, &info, &plan, &bound, &complexity)
        ),
    }
    Ok(0)
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32, Error> {
    let params = sweep::SweepParams {
        dist_start: args.dist_start,
        dist_end: args.dist_end,
        step: args.step,
        attenuation_db_per_km: args.atten,
        mod_variance: args.mod_var,
        beta_fail: Probability::new(args.beta_fail)?,
        headroom: args.headroom,
        mode: args.mode.into(),
    };
    let (rows, fit) = sweep::run_sweep(&params)?;
    let failure = if fit.is_none() {
        Some("fewer than two feasible rows; fit undefined")
    } else {
        None
    };
    match args.format {
        Format::Json => {
            let mut doc = json!({ "rows": rows, "fit": fit });
            if let Some(reason) = failure {
                doc["error"] = json!("infeasible");
                doc["reason"] = json!(reason);
            }
            println!("{}", output::render_json(doc));
        }
        Format::Csv => print!("{}", sweep::sweep_csv(&rows, fit.as_ref(), failure)),
    }
    Ok(if failure.is_some() { 3 } else { 0 })
}

fn cmd_montecarlo(args: &MonteCarloArgs) -> Result<i32, Error> {
    let report = simulate_error_counts_parallel(
        args.m,
        Probability::new(args.ber)?,
        Probability::new(args.erec)?,
        args.trials,
        args.seed,
        args.workers,
    )?;
    match args.format {
        Format::Json => println!("{}", output::render_json(json!({ "montecarlo": report }))),
        Format::Csv => print!("{}", output::montecarlo_csv(&report)),
    }
    Ok(0)
}

fn cmd_audit(args: &AuditArgs) -> Result<i32, Error> {
    let point = args.point.resolve(Some(0.01))?;
    let info = propagate(&point)?;
    let plan = plan_quantization(&info)?;
    let audit = audit_worked_example(&info, &plan)?;
    match args.format {
        Format::Json => println!("{}", output::render_json(json!({ "audit": audit }))),
        Format::Csv => print!("{}", output::audit_csv(&audit)),
    }
    Ok(0)
}
