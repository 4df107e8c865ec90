//! Engine dispatch and the result document printed by the command line.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::baseline::dp1_solve;
use crate::cost::Cost;
use crate::fast::{solve_fast, SetCounters};
use crate::instance::{serialize_instance, Instance, ScheduleRecord};
use crate::oracle::{oracle_solve_with_budget, OracleError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Fast,
    Baseline,
    Oracle,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Fast, Engine::Baseline, Engine::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Fast => "fast",
            Engine::Baseline => "baseline",
            Engine::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown engine `{s}` (expected fast, baseline or oracle)"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveResult {
    pub engine: Engine,
    pub cost: Cost,
    pub schedule: Option<ScheduleRecord>,
    pub elapsed_seconds: f64,
    /// Set counters summed over all designated periods (fast engine only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counters: Option<SetCounters>,
    /// SHA-256 of the canonical instance text.
    pub instance_digest: String,
}

/// Hex SHA-256 of the canonical serialization.
pub fn instance_digest(instance: &Instance) -> String {
    let hash = Sha256::digest(serialize_instance(instance).as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs one engine. Only the oracle can fail.
pub fn solve(instance: &Instance, engine: Engine, oracle_budget: u64) -> Result<SolveResult, OracleError> {
    let (cost, schedule, elapsed, counters) = match engine {
        Engine::Fast => {
            let r = solve_fast(instance);
            (
                r.cost,
                r.schedule.as_ref().map(|s| s.record()),
                r.elapsed,
                Some(r.total_counters()),
            )
        }
        Engine::Baseline => {
            let r = dp1_solve(instance);
            (r.cost, r.schedule.as_ref().map(|s| s.record()), r.elapsed, None)
        }
        Engine::Oracle => {
            let r = oracle_solve_with_budget(instance, oracle_budget)?;
            (r.cost, r.schedule.as_ref().map(|s| s.record()), r.elapsed, None)
        }
    };
    Ok(SolveResult {
        engine,
        cost,
        schedule,
        elapsed_seconds: elapsed.as_secs_f64(),
        counters,
        instance_digest: instance_digest(instance),
    })
}
