//! Timing sweeps over horizon lengths, with CSV output and slope fitting.

use std::io::{self, Write};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::baseline::dp1_solve;
use crate::fast::solve_fast;
use crate::instance::{generate_instance, GeneratorConfig, Instance};
use crate::oracle::oracle_solve;
use crate::report::Engine;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub interior_breakpoints: usize,
    pub horizons: Vec<usize>,
    pub repetitions: usize,
    pub seed: u64,
    pub engines: Vec<Engine>,
    pub regime: CapacityRegime,
    /// Stop starting new cells once this much time has passed.
    pub budget: Option<Duration>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub engine: Engine,
    pub horizon: usize,
    pub interior_breakpoints: usize,
    pub repetition: usize,
    pub seconds: f64,
    pub cost: Option<i64>,
    /// Order-list inserts plus removals over all `t` (fast engine only).
    pub order_moves: u64,
    pub opt_moves: u64,
    /// `sum_t (m + 1) * |hat set at t|`, the bound each of inserts and
    /// removals must respect.
    pub move_bound: u64,
    pub within_bound: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BenchRecord {
    Row(BenchRow),
    /// The wall-clock budget ran out; later cells were not run.
    BudgetExceeded {
        elapsed: Duration,
    },
}

/// Which side of total demand the capacity falls on. The two regimes have
/// different arrangement widths, so a sweep must not mix them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CapacityRegime {
    /// `capacity < D(1,T)`: what the default generator almost always draws.
    #[default]
    Binding,
    /// `capacity >= D(1,T)`.
    Wide,
}

/// The instance used for horizon `horizon`: default generator settings, seed
/// derived from the base seed and the horizon. Binding-regime draws that
/// land wide are redrawn with the next seed.
pub fn bench_instance(seed: u64, horizon: usize, interior_breakpoints: usize) -> Instance {
    bench_instance_in(seed, horizon, interior_breakpoints, CapacityRegime::Binding)
}

pub fn bench_instance_in(seed: u64, horizon: usize, interior_breakpoints: usize, regime: CapacityRegime) -> Instance {
    let mut cfg = GeneratorConfig::new(horizon, interior_breakpoints);
    cfg.wide_capacity = regime == CapacityRegime::Wide;
    let mut s = seed.wrapping_mul(1_000_003).wrapping_add(horizon as u64);
    let mut instance = generate_instance(s, &cfg);
    for _ in 0..64 {
        if regime == CapacityRegime::Wide || instance.capacity() < instance.demand_between(1, horizon) {
            break;
        }
        s = s.wrapping_add(7919);
        instance = generate_instance(s, &cfg);
    }
    instance
}

pub fn run_bench(config: &BenchConfig, mut on_record: impl FnMut(&BenchRecord)) -> Vec<BenchRecord> {
    let start = Instant::now();
    let mut out = Vec::new();
    let m = config.interior_breakpoints;
    'cells: for &horizon in &config.horizons {
        let instance = bench_instance_in(config.seed, horizon, m, config.regime);
        for &engine in &config.engines {
            for repetition in 0..config.repetitions {
                if let Some(budget) = config.budget {
                    if start.elapsed() > budget {
                        let rec = BenchRecord::BudgetExceeded {
                            elapsed: start.elapsed(),
                        };
                        on_record(&rec);
                        out.push(rec);
                        break 'cells;
                    }
                }
                let row = time_engine(&instance, engine, repetition);
                let rec = BenchRecord::Row(row);
                on_record(&rec);
                out.push(rec);
            }
        }
    }
    out
}

fn time_engine(instance: &Instance, engine: Engine, repetition: usize) -> BenchRow {
    let mut row = BenchRow {
        engine,
        horizon: instance.horizon(),
        interior_breakpoints: instance.interior_breakpoints(),
        repetition,
        seconds: 0.0,
        cost: None,
        order_moves: 0,
        opt_moves: 0,
        move_bound: 0,
        within_bound: true,
    };
    let pieces = instance.interior_breakpoints() + 1;
    match engine {
        Engine::Fast => {
            let r = solve_fast(instance);
            row.seconds = r.elapsed.as_secs_f64();
            row.cost = r.cost.value();
            let total = r.total_counters();
            row.order_moves = total.order_inserts + total.order_removals;
            row.opt_moves = total.opt_inserts + total.opt_removals;
            row.move_bound = total.bound(pieces);
            row.within_bound = r.counters.iter().all(|c| c.within_bound(pieces));
        }
        Engine::Baseline => {
            let r = dp1_solve(instance);
            row.seconds = r.elapsed.as_secs_f64();
            row.cost = r.cost.value();
        }
        Engine::Oracle => {
            let t0 = Instant::now();
            let r = oracle_solve(instance);
            row.seconds = t0.elapsed().as_secs_f64();
            row.cost = r.ok().and_then(|r| r.cost.value());
        }
    }
    row
}

pub const CSV_HEADER: &str = "engine,T,m,repetition,seconds,cost,order_moves,opt_moves,move_bound,within_bound";

pub fn write_csv_header(w: &mut impl Write) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")
}

pub fn write_csv_record(w: &mut impl Write, record: &BenchRecord) -> io::Result<()> {
    match record {
        BenchRecord::Row(r) => writeln!(
            w,
            "{},{},{},{},{:.9},{},{},{},{},{}",
            r.engine,
            r.horizon,
            r.interior_breakpoints,
            r.repetition,
            r.seconds,
            r.cost.map_or_else(|| "infeasible".to_string(), |c| c.to_string()),
            r.order_moves,
            r.opt_moves,
            r.move_bound,
            r.within_bound
        ),
        BenchRecord::BudgetExceeded { elapsed } => {
            writeln!(
                w,
                "# budget exceeded after {:.3}s; remaining cells skipped",
                elapsed.as_secs_f64()
            )
        }
    }
}

/// Median seconds per `(engine, horizon)` cell.
pub fn median_times(records: &[BenchRecord], engine: Engine) -> Vec<(usize, f64)> {
    let mut cells: Vec<(usize, Vec<f64>)> = Vec::new();
    for r in records {
        if let BenchRecord::Row(r) = r {
            if r.engine != engine {
                continue;
            }
            match cells.iter_mut().find(|c| c.0 == r.horizon) {
                Some(c) => c.1.push(r.seconds),
                None => cells.push((r.horizon, vec![r.seconds])),
            }
        }
    }
    cells
        .into_iter()
        .map(|(h, mut v)| {
            v.sort_by(f64::total_cmp);
            (h, v[v.len() / 2])
        })
        .collect()
}

/// Fastest seconds per `(engine, horizon)` cell; less sensitive to
/// scheduler noise than the median.
pub fn fastest_times(records: &[BenchRecord], engine: Engine) -> Vec<(usize, f64)> {
    let mut cells: Vec<(usize, f64)> = Vec::new();
    for r in records {
        if let BenchRecord::Row(r) = r {
            if r.engine != engine {
                continue;
            }
            match cells.iter_mut().find(|c| c.0 == r.horizon) {
                Some(c) => c.1 = c.1.min(r.seconds),
                None => cells.push((r.horizon, r.seconds)),
            }
        }
    }
    cells
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
