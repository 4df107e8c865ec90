//! `lotsize`: solve, cross-check, generate and benchmark lot-sizing instances.
//!
//! Every subcommand prints one document on stdout (JSON, or CSV for `bench`
//! and `sequences`) and diagnostics on stderr.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use lotsize_core::arrangements::{bucket_sort, ArrangementSpace};
use lotsize_core::bench::{self, BenchConfig, BenchRecord, CapacityRegime};
use lotsize_core::oracle::DEFAULT_STATE_BUDGET;
use lotsize_core::{
    check_instance, generate_instance, parse_instance, serialize_instance, solve, Engine, GeneratorConfig, Instance,
    OracleError, ParseError,
};

const EXIT_PARSE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_INFEASIBLE: u8 = 4;
const EXIT_BUDGET: u8 = 5;
const EXIT_MISMATCH: u8 = 6;

#[derive(Parser)]
#[command(
    name = "lotsize",
    version,
    about = "Exact lot-sizing with piecewise-linear production costs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file with one engine.
    Solve {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = EngineArg::Fast)]
        engine: EngineArg,
        /// Transition budget for the oracle.
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget_states: u64,
    },
    /// Run every engine that fits and compare costs and tail values.
    Check {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget_states: u64,
    },
    /// Write a random instance.
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        horizon: usize,
        /// Interior breakpoints `m`.
        #[arg(long, default_value_t = 1)]
        breakpoints: usize,
        #[arg(long)]
        demand_max: Option<i64>,
        #[arg(long)]
        breakpoint_max: Option<i64>,
        #[arg(long)]
        setup_max: Option<i64>,
        #[arg(long)]
        unit_max: Option<i64>,
        #[arg(long)]
        hold_max: Option<i64>,
        #[arg(long)]
        backlog_max: Option<i64>,
        /// Two-segment concave inventory tables instead of linear rates.
        #[arg(long)]
        concave_inventory: bool,
        /// Capacity at or above total demand.
        #[arg(long)]
        wide_capacity: bool,
        /// Allow production costs to drop just past a breakpoint.
        #[arg(long)]
        downward_jumps: bool,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time engines over a range of horizons; CSV rows, one per run.
    Bench {
        /// Interior breakpoints `m`.
        #[arg(long, default_value_t = 1)]
        breakpoints: usize,
        #[arg(long, value_delimiter = ',', default_value = "10,14,20,28,40")]
        horizons: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repetitions: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "fast,baseline")]
        engines: Vec<EngineArg>,
        #[arg(long, value_enum, default_value_t = RegimeArg::Binding)]
        regime: RegimeArg,
        /// Stop starting new runs after this many seconds.
        #[arg(long)]
        budget_seconds: Option<f64>,
        /// CSV file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump the sorted arrangement sequences of an instance as CSV.
    Sequences { path: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Fast,
    Baseline,
    Oracle,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Engine {
        match e {
            EngineArg::Fast => Engine::Fast,
            EngineArg::Baseline => Engine::Baseline,
            EngineArg::Oracle => Engine::Oracle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    /// Capacity below total demand.
    Binding,
    /// Capacity at or above total demand.
    Wide,
}

/// An error with the exit status it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure { code: 1, error }
    }
}

impl From<io::Error> for Failure {
    fn from(error: io::Error) -> Self {
        Failure {
            code: 1,
            error: error.into(),
        }
    }
}

fn fail(code: u8, error: impl Into<anyhow::Error>) -> Failure {
    Failure {
        code,
        error: error.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Solve {
            path,
            engine,
            budget_states,
        } => cmd_solve(&path, engine.into(), budget_states),
        Command::Check { path, budget_states } => cmd_check(&path, budget_states),
        Command::Generate {
            seed,
            horizon,
            breakpoints,
            demand_max,
            breakpoint_max,
            setup_max,
            unit_max,
            hold_max,
            backlog_max,
            concave_inventory,
            wide_capacity,
            downward_jumps,
            out,
        } => {
            if horizon == 0 {
                return Err(fail(EXIT_INVALID, anyhow::anyhow!("horizon must be at least 1")));
            }
            let mut cfg = GeneratorConfig::new(horizon, breakpoints);
            let overrides = [
                (&mut cfg.demand_max, demand_max),
                (&mut cfg.breakpoint_max, breakpoint_max),
                (&mut cfg.setup_max, setup_max),
                (&mut cfg.unit_max, unit_max),
                (&mut cfg.hold_max, hold_max),
                (&mut cfg.backlog_max, backlog_max),
            ];
            for (field, value) in overrides {
                if let Some(v) = value {
                    if v < 0 {
                        return Err(fail(
                            EXIT_INVALID,
                            anyhow::anyhow!("maxima must be non-negative, got {v}"),
                        ));
                    }
                    *field = v;
                }
            }
            cfg.concave_inventory = concave_inventory;
            cfg.wide_capacity = wide_capacity;
            cfg.downward_jumps = downward_jumps;
            cmd_generate(seed, &cfg, out.as_deref())
        }
        Command::Bench {
            breakpoints,
            horizons,
            repetitions,
            seed,
            engines,
            regime,
            budget_seconds,
            out,
        } => {
            let config = BenchConfig {
                interior_breakpoints: breakpoints,
                horizons,
                repetitions,
                seed,
                engines: engines.into_iter().map(Engine::from).collect(),
                regime: match regime {
                    RegimeArg::Binding => CapacityRegime::Binding,
                    RegimeArg::Wide => CapacityRegime::Wide,
                },
                budget: budget_seconds.map(Duration::from_secs_f64),
            };
            cmd_bench(&config, out.as_deref())
        }
        Command::Sequences { path } => cmd_sequences(&path),
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).map_err(|e| {
        let code = match e {
            ParseError::Syntax { .. } => EXIT_PARSE,
            ParseError::Invalid(_) => EXIT_INVALID,
        };
        fail(
            code,
            anyhow::Error::new(e).context(format!("loading {}", path.display())),
        )
    })
}

/// Writes `text` and a newline to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match writeln!(out, "{text}").and_then(|()| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Failure> {
    emit(&serde_json::to_string_pretty(value).context("serializing output")?)
}

fn cmd_solve(path: &Path, engine: Engine, budget: u64) -> Result<(), Failure> {
    let instance = load(path)?;
    let result = solve(&instance, engine, budget).map_err(|e| match e {
        OracleError::OutOfBudget { .. } => fail(EXIT_BUDGET, e),
        OracleError::TooLarge { .. } => fail(1, e),
    })?;
    print_json(&result)?;
    if result.cost.is_infeasible() {
        return Err(fail(EXIT_INFEASIBLE, anyhow::anyhow!("instance is infeasible")));
    }
    Ok(())
}

fn cmd_check(path: &Path, budget: u64) -> Result<(), Failure> {
    let instance = load(path)?;
    let report = check_instance(&instance, budget);
    let mut doc = serde_json::to_value(&report).context("serializing report")?;
    doc["summary"] = report.summary().into();
    doc["agree"] = report.agree().into();
    print_json(&doc)?;
    eprintln!("{}", report.summary());
    if !report.agree() {
        return Err(fail(EXIT_MISMATCH, anyhow::anyhow!("engines disagree")));
    }
    Ok(())
}

fn cmd_generate(seed: u64, cfg: &GeneratorConfig, out: Option<&Path>) -> Result<(), Failure> {
    let text = serialize_instance(&generate_instance(seed, cfg));
    match out {
        Some(path) => fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
        None => emit(&text)?,
    }
    Ok(())
}

fn cmd_bench(config: &BenchConfig, out: Option<&Path>) -> Result<(), Failure> {
    let mut sink: Box<dyn Write> = match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    bench::write_csv_header(&mut sink)?;
    let mut write_error = None;
    let records = bench::run_bench(config, |record| {
        if write_error.is_none() {
            write_error = bench::write_csv_record(&mut sink, record)
                .and_then(|()| sink.flush())
                .err();
        }
    });
    match write_error.map_or_else(|| sink.flush(), Err) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => return Err(e.into()),
        _ => {}
    }

    for engine in &config.engines {
        let times = bench::fastest_times(&records, *engine);
        if times.len() >= 2 {
            let points: Vec<(f64, f64)> = times.iter().map(|&(t, s)| (t as f64, s)).collect();
            eprintln!(
                "{engine}: log-log slope {:.2} over {} horizons",
                bench::loglog_slope(&points),
                times.len()
            );
        }
    }
    if records.iter().any(|r| matches!(r, BenchRecord::BudgetExceeded { .. })) {
        eprintln!("budget exceeded; CSV is partial");
    }
    Ok(())
}

fn cmd_sequences(path: &Path) -> Result<(), Failure> {
    let instance = load(path)?;
    write_sequences(&instance).or_else(|e| match e.kind() {
        io::ErrorKind::BrokenPipe => Ok(()),
        _ => Err(e.into()),
    })
}

fn write_sequences(instance: &Instance) -> io::Result<()> {
    let space = ArrangementSpace::new(instance);
    let seqs = bucket_sort(instance, &space);
    let mut w = BufWriter::new(io::stdout().lock());
    writeln!(w, "sequence,t,rank,key,counts")?;
    for t in 1..=instance.horizon() {
        for (name, seq) in [("hat", seqs.hat_order(t)), ("tilde", seqs.tilde_order(t))] {
            for (rank, &(key, id)) in seq.iter().enumerate() {
                let counts: Vec<String> = space.counts(id).iter().map(u32::to_string).collect();
                writeln!(w, "{name},{t},{rank},{key},{}", counts.join(" "))?;
            }
        }
    }
    w.flush()?;
    Ok(())
}
