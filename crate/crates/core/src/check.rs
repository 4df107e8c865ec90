//! Cross-engine comparison.

use serde::Serialize;

use crate::baseline::{dp1_solve, BaselineResult};
use crate::cost::Cost;
use crate::fast::{solve_fast, FastResult};
use crate::instance::{evaluate_schedule, Instance, Schedule};
use crate::oracle::{oracle_solve_with_budget, OracleError, OracleResult};
use crate::report::Engine;

#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub left: Engine,
    pub right: Engine,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub costs: Vec<(Engine, Cost)>,
    pub pairs: Vec<PairCheck>,
    /// Periods `u` where the fast and baseline tail costs differ.
    pub psi_mismatches: Vec<usize>,
    /// Engines whose schedule does not price at their reported cost.
    pub bad_schedules: Vec<Engine>,
    /// Why an engine was left out, if any was.
    pub skipped: Option<String>,
}

impl CheckReport {
    pub fn agree(&self) -> bool {
        self.pairs.iter().all(|p| p.equal) && self.psi_mismatches.is_empty() && self.bad_schedules.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.agree() {
            let mut s = format!("{} engines agree", self.costs.len());
            if let Some(note) = &self.skipped {
                s.push_str(&format!(" ({note})"));
            }
            return s;
        }
        let mut parts = Vec::new();
        for p in self.pairs.iter().filter(|p| !p.equal) {
            parts.push(format!("{} != {}", p.left, p.right));
        }
        if !self.psi_mismatches.is_empty() {
            parts.push(format!("tail costs differ at u = {:?}", self.psi_mismatches));
        }
        for e in &self.bad_schedules {
            parts.push(format!("{e} schedule does not price at its cost"));
        }
        format!("mismatch: {}", parts.join("; "))
    }
}

fn schedule_ok(instance: &Instance, schedule: Option<&Schedule>, cost: Cost) -> bool {
    match schedule {
        Some(s) => evaluate_schedule(instance, s) == Ok(cost),
        None => cost.is_infeasible(),
    }
}

/// Compares already computed results. `oracle` may be absent (out of budget).
pub fn compare(
    instance: &Instance,
    fast: &FastResult,
    baseline: &BaselineResult,
    oracle: Result<&OracleResult, &OracleError>,
) -> CheckReport {
    let mut costs = vec![(Engine::Fast, fast.cost), (Engine::Baseline, baseline.cost)];
    let mut bad_schedules = Vec::new();
    if !schedule_ok(instance, fast.schedule.as_ref(), fast.cost) {
        bad_schedules.push(Engine::Fast);
    }
    if !schedule_ok(instance, baseline.schedule.as_ref(), baseline.cost) {
        bad_schedules.push(Engine::Baseline);
    }
    let skipped = match oracle {
        Ok(o) => {
            costs.push((Engine::Oracle, o.cost));
            if !schedule_ok(instance, o.schedule.as_ref(), o.cost) {
                bad_schedules.push(Engine::Oracle);
            }
            None
        }
        Err(e) => Some(format!("oracle skipped: {e}")),
    };
    let mut pairs = Vec::new();
    for i in 0..costs.len() {
        for j in i + 1..costs.len() {
            pairs.push(PairCheck {
                left: costs[i].0,
                right: costs[j].0,
                equal: costs[i].1 == costs[j].1,
            });
        }
    }
    let psi_mismatches = (1..=instance.horizon() + 1)
        .filter(|&u| fast.psi.get(u - 1) != baseline.psi.get(u - 1))
        .collect();
    CheckReport {
        costs,
        pairs,
        psi_mismatches,
        bad_schedules,
        skipped,
    }
}

/// Runs every engine that fits and compares them.
pub fn check_instance(instance: &Instance, oracle_budget: u64) -> CheckReport {
    let fast = solve_fast(instance);
    let baseline = dp1_solve(instance);
    let oracle = oracle_solve_with_budget(instance, oracle_budget);
    compare(instance, &fast, &baseline, oracle.as_ref())
}
