//! Command-line front end. `main.rs` only forwards `std::env::args` here.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cost::{
    choose_parameters_with, default_m, loglog_slope, optimize_m, parameters_for_m, t1_for, t2_for,
    table1, table1_csv, CliqueVariant, T2Rule,
};
use crate::error::{Error, Result};
use crate::families::{make_family, FamilyParams};
use crate::full_sim::{measure_many, Fault, FullSim, Side};
use crate::instance::{Family, ProblemInstance};
use crate::reduced::{embed_to_full, ReducedBasis, ReducedEngine};
use crate::report::{ser_opt_sig17, sig17, RunReport};
use crate::spectral::SpectralReport;
use crate::verify::run_checks;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_MEMORY: i32 = 3;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::MemoryCap { .. } => EXIT_MEMORY,
        Error::NotUnitary { .. } | Error::RootBracketing { .. } | Error::MalformedState(_) => {
            EXIT_FAILURE
        }
        _ => EXIT_CONFIG,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "johnson-walk",
    version,
    about = "Quantum-walk L-subset finding: simulation, spectra and cost models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run (W^t1 P)^t2 |s> on one instance and report the outcome.
    Simulate(SimulateArgs),
    /// Eigenstructure of W and of W^t1 P in the symmetric subspace.
    Spectrum(SpectrumArgs),
    /// One reduced (or full) run per N; CSV with a fitted slope.
    Sweep(SweepArgs),
    /// Clique cost exponents and the numeric optimizer.
    Cost(CostArgs),
    /// Run the invariant suite; exit 0 iff every check passes.
    Verify(VerifyArgs),
    /// Write a generated instance file.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EngineChoice {
    #[default]
    Full,
    Reduced,
    Both,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_t2_rule(s: &str) -> std::result::Result<T2Rule, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_variant(s: &str) -> std::result::Result<CliqueVariant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Settings accepted by `--config file.json`. Command-line flags take precedence.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    pub family: Option<Family>,
    pub instance: Option<PathBuf>,
    pub n: Option<u64>,
    pub l: Option<usize>,
    pub m: Option<u64>,
    pub t1: Option<u64>,
    pub t2: Option<u64>,
    pub t2_rule: Option<T2Rule>,
    pub engine: Option<EngineChoice>,
    pub seed: Option<u64>,
    pub no_plant: Option<bool>,
    pub samples: Option<usize>,
    pub output: Option<PathBuf>,
    pub n_values: Option<Vec<u64>>,
    pub n_min: Option<u64>,
    pub n_max: Option<u64>,
    pub per_decade: Option<u32>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct SimulateArgs {
    /// element-distinctness (default), l-distinctness, zero-sum-xor, sum-mod-q, consecutive or l-clique.
    #[arg(long, value_parser = parse_family)]
    pub family: Option<Family>,
    /// Instance file; replaces --family/--n/--l.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// Domain size N.
    #[arg(long)]
    pub n: Option<u64>,
    /// Size L of the subset to find.
    #[arg(long)]
    pub l: Option<usize>,
    /// Walk subset size M; defaults to nint(N^(L/(L+1))).
    #[arg(long)]
    pub m: Option<u64>,
    /// Walk steps per phase flip; defaults to nint((pi/2) sqrt(M/L)).
    #[arg(long)]
    pub t1: Option<u64>,
    /// Phase-flip rounds; defaults from --t2-rule.
    #[arg(long)]
    pub t2: Option<u64>,
    /// `quarter-pi` (default) or `literal`.
    #[arg(long, value_parser = parse_t2_rule)]
    pub t2_rule: Option<T2Rule>,
    /// Engine; `full` for simulate, `reduced` for sweep by default.
    #[arg(long, value_enum)]
    pub engine: Option<EngineChoice>,
    /// Seed for instance generation and sampling.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Do not plant a solution; the instance may have none.
    #[arg(long)]
    pub no_plant: bool,
    /// Number of measurement samples drawn from the final full state; needs --seed.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// JSON file with default values; command-line flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SpectrumArgs {
    /// Domain size N.
    #[arg(long)]
    pub n: Option<u64>,
    /// Walk subset size M; defaults to nint(N^(L/(L+1))).
    #[arg(long)]
    pub m: Option<u64>,
    /// Size L of the subset to find.
    #[arg(long)]
    pub l: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// JSON file with default values; command-line flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    /// Size L of the subset to find.
    #[arg(long)]
    pub l: Option<usize>,
    /// Explicit N values, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub n_values: Option<Vec<u64>>,
    /// Smallest N of a log-spaced range.
    #[arg(long)]
    pub n_min: Option<u64>,
    /// Largest N of a log-spaced range.
    #[arg(long)]
    pub n_max: Option<u64>,
    /// Points per decade between --n-min and --n-max.
    #[arg(long)]
    pub per_decade: Option<u32>,
    /// Engine; `full` for simulate, `reduced` for sweep by default.
    #[arg(long, value_enum)]
    pub engine: Option<EngineChoice>,
    /// `quarter-pi` (default) or `literal`.
    #[arg(long, value_parser = parse_t2_rule)]
    pub t2_rule: Option<T2Rule>,
    /// Seed for instance generation and sampling.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    /// JSON file with default values; command-line flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CostArgs {
    /// Exponent table for L = 2..7 as CSV.
    #[arg(long)]
    pub table1: bool,
    /// Minimize the cost over M and fit the exponent.
    #[arg(long)]
    pub optimize: bool,
    /// Parameter choice (M, t1, t2, total queries) for --n, --l.
    #[arg(long)]
    pub params: bool,
    /// Size L of the subset to find.
    #[arg(long)]
    pub l: Option<usize>,
    /// Domain size N.
    #[arg(long)]
    pub n: Option<u64>,
    /// simple, recursive (default) or mss.
    #[arg(long, value_parser = parse_variant)]
    pub variant: Option<CliqueVariant>,
    /// `quarter-pi` (default) or `literal`.
    #[arg(long, value_parser = parse_t2_rule)]
    pub t2_rule: Option<T2Rule>,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FaultChoice {
    C2Sign,
}

#[derive(Debug, Clone, Default, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<FaultChoice>,
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    /// element-distinctness, l-distinctness, zero-sum-xor, sum-mod-q, consecutive or l-clique.
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    /// Domain size N.
    #[arg(long)]
    pub n: usize,
    /// Size L of the planted subset.
    #[arg(long)]
    pub l: usize,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Do not plant a solution; the instance may have none.
    #[arg(long)]
    pub no_plant: bool,
    /// Value width in bits for zero-sum-xor.
    #[arg(long)]
    pub bits: Option<u32>,
    /// Modulus for sum-mod-q.
    #[arg(long)]
    pub q: Option<u64>,
    /// Value range for l-distinctness and consecutive.
    #[arg(long)]
    pub range: Option<u64>,
    /// Background edge probability for l-clique (default 0.5).
    #[arg(long)]
    pub edge_prob: Option<f64>,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Spectrum(a) => cmd_spectrum(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Cost(a) => cmd_cost(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Generate(a) => cmd_generate(a, out),
    }
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_config(path: Option<&Path>) -> Result<RunConfig> {
    path.map(RunConfig::load)
        .transpose()
        .map(Option::unwrap_or_default)
}

fn require<T>(value: Option<T>, name: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidParameters(format!("missing --{name}")))
}

#[derive(Debug, Serialize)]
struct SampleJson {
    subset: Vec<usize>,
    coin: usize,
    side: &'static str,
    marked: bool,
}

#[derive(Debug, Serialize)]
struct SampledRun<'a> {
    report: &'a RunReport,
    seed: u64,
    samples: Vec<SampleJson>,
}

#[derive(Debug, Serialize)]
struct BothReports {
    full: RunReport,
    reduced: RunReport,
    #[serde(serialize_with = "ser_opt_sig17")]
    max_state_deviation: Option<f64>,
}

/// Fully resolved simulation settings.
#[derive(Debug, Clone)]
pub struct SimulatePlan {
    pub n: u64,
    pub l: usize,
    pub m: u64,
    pub t1: u64,
    pub t2: u64,
    pub engine: EngineChoice,
    pub instance: Option<ProblemInstance>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub output: Option<PathBuf>,
}

pub fn plan_simulation(args: SimulateArgs) -> Result<SimulatePlan> {
    let cfg = load_config(args.config.as_deref())?;
    let engine = args.engine.or(cfg.engine).unwrap_or_default();
    let seed = args.seed.or(cfg.seed);
    let samples = args.samples.or(cfg.samples);
    if samples.is_some() && seed.is_none() {
        return Err(Error::InvalidParameters(
            "--samples needs an explicit --seed".into(),
        ));
    }
    if samples.is_some() && engine == EngineChoice::Reduced {
        return Err(Error::InvalidParameters(
            "sampling needs the full engine".into(),
        ));
    }
    let instance = if let Some(path) = args.instance.or(cfg.instance) {
        Some(ProblemInstance::load(&path)?)
    } else if engine != EngineChoice::Reduced {
        let n = require(args.n.or(cfg.n), "n")?;
        let l = require(args.l.or(cfg.l), "l")?;
        let family = args
            .family
            .or(cfg.family)
            .unwrap_or(Family::ElementDistinctness);
        let plant = !(args.no_plant || cfg.no_plant.unwrap_or(false));
        Some(make_family(
            family,
            &FamilyParams::new(n as usize, l, seed.unwrap_or(0), plant),
        )?)
    } else {
        None
    };
    let (n, l) = match &instance {
        Some(inst) => (inst.n as u64, inst.l),
        None => (
            require(args.n.or(cfg.n), "n")?,
            require(args.l.or(cfg.l), "l")?,
        ),
    };
    if l == 0 {
        return Err(Error::InvalidParameters("l must be at least 1".into()));
    }
    let rule = args.t2_rule.or(cfg.t2_rule).unwrap_or_default();
    let m = args.m.or(cfg.m).unwrap_or_else(|| default_m(n, l));
    parameters_for_m(n, m, l, rule)?;
    let t1 = args.t1.or(cfg.t1).unwrap_or_else(|| t1_for(m, l));
    let t2 = args.t2.or(cfg.t2).unwrap_or_else(|| t2_for(n, m, l, rule));
    Ok(SimulatePlan {
        n,
        l,
        m,
        t1,
        t2,
        engine,
        instance,
        seed,
        samples,
        output: args.output.or(cfg.output),
    })
}

pub fn cmd_simulate(args: SimulateArgs, out: &mut dyn Write) -> Result<i32> {
    let plan = plan_simulation(args)?;
    let text = match plan.engine {
        EngineChoice::Reduced => {
            let basis = ReducedBasis::new(plan.n, plan.m, plan.l)?;
            ReducedEngine::new(basis)
                .run(plan.t1, plan.t2)
                .report
                .to_json()
        }
        EngineChoice::Full => {
            let inst = plan
                .instance
                .as_ref()
                .expect("full engine plans carry an instance");
            let sim = FullSim::new(inst, plan.m as usize)?;
            let run = sim.run(plan.t1, plan.t2)?;
            match (plan.samples, plan.seed) {
                (Some(count), Some(seed)) => {
                    let samples = measure_many(&sim.space, &run.state, seed, count)
                        .into_iter()
                        .map(|s| SampleJson {
                            marked: s.side == Side::ASide
                                && inst
                                    .all_marked()
                                    .iter()
                                    .any(|mk| mk.is_subset_of(&s.subset)),
                            side: if s.side == Side::BSide { "b" } else { "a" },
                            subset: s.subset,
                            coin: s.coin,
                        })
                        .collect();
                    serde_json::to_string_pretty(&SampledRun {
                        report: &run.report,
                        seed,
                        samples,
                    })?
                }
                _ => run.report.to_json(),
            }
        }
        EngineChoice::Both => {
            let inst = plan
                .instance
                .as_ref()
                .expect("full engine plans carry an instance");
            let sim = FullSim::new(inst, plan.m as usize)?;
            let full = sim.run(plan.t1, plan.t2)?;
            let basis = ReducedBasis::new(plan.n, plan.m, plan.l)?;
            let reduced = ReducedEngine::new(basis).run(plan.t1, plan.t2);
            let max_state_deviation = match sim.marked() {
                [only] => {
                    Some(embed_to_full(&reduced.state, &sim, only)?.max_deviation(&full.state))
                }
                _ => None,
            };
            serde_json::to_string_pretty(&BothReports {
                full: full.report,
                reduced: reduced.report,
                max_state_deviation,
            })?
        }
    };
    emit(&(text + "\n"), plan.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

pub fn cmd_spectrum(args: SpectrumArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = load_config(args.config.as_deref())?;
    let n = require(args.n.or(cfg.n), "n")?;
    let l = require(args.l.or(cfg.l), "l")?;
    if l == 0 {
        return Err(Error::InvalidParameters("l must be at least 1".into()));
    }
    let m = args.m.or(cfg.m).unwrap_or_else(|| default_m(n, l));
    let report = SpectralReport::compute(n, m, l)?;
    emit(
        &(report.to_json() + "\n"),
        args.output.or(cfg.output).as_deref(),
        out,
    )?;
    Ok(EXIT_OK)
}

pub const SWEEP_HEADER: &str = "n,m,t1,t2,queries,overlap_w,success";

/// N values from an explicit list or a log-spaced range; empty when `n_min > n_max`.
pub fn sweep_points(
    list: Option<Vec<u64>>,
    n_min: Option<u64>,
    n_max: Option<u64>,
    per_decade: u32,
) -> Result<Vec<u64>> {
    if let Some(mut v) = list {
        v.sort_unstable();
        v.dedup();
        return Ok(v);
    }
    let (lo, hi) = (require(n_min, "n-min")?, require(n_max, "n-max")?);
    if per_decade == 0 {
        return Err(Error::InvalidParameters(
            "--per-decade must be positive".into(),
        ));
    }
    let mut v = Vec::new();
    if lo == 0 || lo > hi {
        return Ok(v);
    }
    let (a, b) = ((lo as f64).log10(), (hi as f64).log10());
    let steps = ((b - a) * per_decade as f64 + 1e-9).floor() as u32;
    for k in 0..=steps {
        v.push(10f64.powf(a + k as f64 / per_decade as f64).round() as u64);
    }
    v.dedup();
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: u64,
    pub m: u64,
    pub t1: u64,
    pub t2: u64,
    pub queries: u64,
    pub overlap_w: f64,
    pub success: f64,
}

fn sweep_row(n: u64, l: usize, engine: EngineChoice, rule: T2Rule, seed: u64) -> Result<SweepRow> {
    let p = choose_parameters_with(n, l, rule)?;
    let report = match engine {
        EngineChoice::Reduced => {
            ReducedEngine::new(ReducedBasis::new(n, p.m, l)?)
                .run(p.t1, p.t2)
                .report
        }
        EngineChoice::Full | EngineChoice::Both => {
            let inst = make_family(
                Family::ElementDistinctness,
                &FamilyParams::new(n as usize, l, seed, true),
            )?;
            FullSim::new(&inst, p.m as usize)?.run(p.t1, p.t2)?.report
        }
    };
    Ok(SweepRow {
        n,
        m: p.m,
        t1: p.t1,
        t2: p.t2,
        queries: report.query_count,
        overlap_w: report.overlap_w,
        success: report.success_probability,
    })
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = format!("{SWEEP_HEADER}\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.n,
            r.m,
            r.t1,
            r.t2,
            r.queries,
            sig17(r.overlap_w),
            sig17(r.success)
        ));
    }
    if rows.len() >= 2 {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .map(|r| (r.n as f64, r.queries as f64))
            .collect();
        if let Some(slope) = loglog_slope(&pts) {
            s.push_str(&format!("# slope_queries_vs_n,{}\n", sig17(slope)));
        }
    }
    s
}

pub fn cmd_sweep(args: SweepArgs, out: &mut dyn Write) -> Result<i32> {
    let cfg = load_config(args.config.as_deref())?;
    let l = require(args.l.or(cfg.l), "l")?;
    let engine = args.engine.or(cfg.engine).unwrap_or(EngineChoice::Reduced);
    let rule = args.t2_rule.or(cfg.t2_rule).unwrap_or_default();
    let seed = args.seed.or(cfg.seed).unwrap_or(0);
    let points = sweep_points(
        args.n_values.or(cfg.n_values),
        args.n_min.or(cfg.n_min),
        args.n_max.or(cfg.n_max),
        args.per_decade.or(cfg.per_decade).unwrap_or(1),
    )?;
    let rows = points
        .par_iter()
        .map(|&n| sweep_row(n, l, engine, rule, seed))
        .collect::<Result<Vec<_>>>()?;
    emit(
        &sweep_csv(&rows),
        args.output.or(cfg.output).as_deref(),
        out,
    )?;
    Ok(EXIT_OK)
}

pub fn cmd_cost(args: CostArgs, out: &mut dyn Write) -> Result<i32> {
    let text = if args.optimize {
        let l = require(args.l, "l")?;
        let variant = args.variant.unwrap_or(CliqueVariant::Recursive);
        let n = args.n.unwrap_or(100_000_000);
        serde_json::to_string_pretty(&optimize_m(n, l, variant)?)? + "\n"
    } else if args.params {
        let p = choose_parameters_with(
            require(args.n, "n")?,
            require(args.l, "l")?,
            args.t2_rule.unwrap_or_default(),
        )?;
        serde_json::to_string_pretty(&p)? + "\n"
    } else {
        table1_csv(&table1())
    };
    emit(&text, args.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(args: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let fault = args
        .inject_fault
        .map(|FaultChoice::C2Sign| Fault::C2SignError);
    let results = run_checks(fault);
    for r in &results {
        writeln!(out, "{r}")?;
    }
    let passed = results.iter().filter(|r| r.passed).count();
    writeln!(out, "{passed}/{} checks passed", results.len())?;
    Ok(if passed == results.len() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

pub fn cmd_generate(args: GenerateArgs, out: &mut dyn Write) -> Result<i32> {
    let mut params = FamilyParams::new(args.n, args.l, args.seed, !args.no_plant);
    params.bits = args.bits;
    params.q = args.q;
    params.range = args.range;
    params.edge_prob = args.edge_prob;
    let inst = make_family(args.family, &params)?;
    emit(&(inst.to_json()? + "\n"), args.output.as_deref(), out)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("johnson-walk").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn sweep_points_ranges() {
        assert_eq!(
            sweep_points(None, Some(1000), Some(1_000_000), 1).unwrap(),
            vec![1000, 10_000, 100_000, 1_000_000]
        );
        assert!(sweep_points(None, Some(10), Some(5), 1).unwrap().is_empty());
        assert_eq!(
            sweep_points(Some(vec![30, 10, 30]), None, None, 1).unwrap(),
            vec![10, 30]
        );
        assert!(sweep_points(None, None, Some(5), 1).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            run_str(&["spectrum", "--n", "10", "--m", "1", "--l", "2"]).0,
            EXIT_CONFIG
        );
        assert_eq!(run_str(&["simulate", "--bogus"]).0, EXIT_CONFIG);
        assert_eq!(run_str(&["--help"]).0, EXIT_OK);
        assert_eq!(
            exit_code(&Error::MemoryCap {
                requested: 10,
                cap: 1
            }),
            EXIT_MEMORY
        );
    }

    #[test]
    fn samples_need_seed() {
        let (code, _, err) = run_str(&["simulate", "--n", "9", "--l", "2", "--samples", "3"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(err.contains("--seed"));
    }

    #[test]
    fn cost_table_default() {
        let (code, out, _) = run_str(&["cost"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("L,simple,recursive,mss,best"));
    }
}
