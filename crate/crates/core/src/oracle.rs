//! Pseudo-polynomial DP over inventory levels, plus plain enumeration for
//! tiny cases. Used only to certify the other engines.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::cost::Cost;
use crate::instance::{Instance, Schedule};

/// Default cap on `(states x production choices)` examined by [`oracle_solve`].
pub const DEFAULT_STATE_BUDGET: u64 = 100_000_000;

pub const ENUMERATE_MAX_HORIZON: usize = 4;
pub const ENUMERATE_MAX_CAPACITY: i64 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle out of budget: {required} transitions needed, budget is {budget}")]
    OutOfBudget { required: u128, budget: u64 },
    #[error("enumeration limited to T <= {ENUMERATE_MAX_HORIZON} and capacity <= {ENUMERATE_MAX_CAPACITY}, got T = {horizon}, capacity = {capacity}")]
    TooLarge { horizon: usize, capacity: i64 },
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub cost: Cost,
    pub schedule: Option<Schedule>,
    /// Transitions examined.
    pub transitions: u64,
    pub elapsed: Duration,
}

/// Transitions the oracle would examine on `instance`.
pub fn oracle_work(instance: &Instance) -> u128 {
    let t_max = instance.horizon();
    let choices = instance.capacity() as u128 + 1;
    (1..=t_max)
        .map(|j| (instance.demand_between(1, j) + instance.demand_between(j + 1, t_max) + 1) as u128 * choices)
        .sum()
}

pub fn oracle_solve(instance: &Instance) -> Result<OracleResult, OracleError> {
    oracle_solve_with_budget(instance, DEFAULT_STATE_BUDGET)
}

/// `value[j][I]` = cheapest plan for periods `1..=j` ending with inventory
/// `I`, over `I` in `[-D(1,j), D(j+1,T)]`.
pub fn oracle_solve_with_budget(instance: &Instance, budget: u64) -> Result<OracleResult, OracleError> {
    let start = Instant::now();
    let required = oracle_work(instance);
    if required > budget as u128 {
        return Err(OracleError::OutOfBudget { required, budget });
    }
    let t_max = instance.horizon();
    let cap = instance.capacity();
    let lo = |j: usize| -instance.demand_between(1, j);
    let hi = |j: usize| instance.demand_between(j + 1, t_max);

    let mut value: Vec<Vec<Cost>> = Vec::with_capacity(t_max + 1);
    let mut pred: Vec<Vec<i64>> = Vec::with_capacity(t_max + 1);
    let mut first = vec![Cost::INFEASIBLE; (hi(0) + 1) as usize];
    first[0] = Cost::ZERO;
    value.push(first);
    pred.push(Vec::new());
    let mut transitions = 0u64;
    for j in 1..=t_max {
        let (plo, phi) = (lo(j - 1), hi(j - 1));
        let prev = &value[j - 1];
        let d = instance.demand(j);
        let mut row = vec![Cost::INFEASIBLE; (hi(j) - lo(j) + 1) as usize];
        let mut choice = vec![-1i64; row.len()];
        for (k, slot) in row.iter_mut().enumerate() {
            let inv = lo(j) + k as i64;
            let h = instance.inventory_cost(j, inv);
            for x in 0..=cap {
                transitions += 1;
                let before = inv - x + d;
                if before < plo || before > phi {
                    continue;
                }
                let c = prev[(before - plo) as usize] + instance.production_cost(j, x) + h;
                if c < *slot {
                    *slot = c;
                    choice[k] = x;
                }
            }
        }
        value.push(row);
        pred.push(choice);
    }

    let cost = value[t_max][(0 - lo(t_max)) as usize];
    let schedule = if cost.is_finite() {
        let mut production = vec![0i64; t_max];
        let mut inv = 0i64;
        for j in (1..=t_max).rev() {
            let x = pred[j][(inv - lo(j)) as usize];
            production[j - 1] = x;
            inv = inv - x + instance.demand(j);
        }
        debug_assert_eq!(inv, 0);
        let s = Schedule::from_production(instance, production).expect("predecessor walk balances");
        assert_eq!(s.total_cost, cost);
        Some(s)
    } else {
        None
    };
    Ok(OracleResult {
        cost,
        schedule,
        transitions,
        elapsed: start.elapsed(),
    })
}

/// Tries every production vector in `[0, B_{m+1}]^T`.
pub fn enumerate_solve(instance: &Instance) -> Result<Cost, OracleError> {
    let t_max = instance.horizon();
    let cap = instance.capacity();
    if t_max > ENUMERATE_MAX_HORIZON || cap > ENUMERATE_MAX_CAPACITY {
        return Err(OracleError::TooLarge {
            horizon: t_max,
            capacity: cap,
        });
    }
    let mut best = Cost::INFEASIBLE;
    let mut x = vec![0i64; t_max];
    loop {
        let mut inv = 0;
        let mut total = Cost::ZERO;
        for (j, &xj) in x.iter().enumerate() {
            inv += xj - instance.demand(j + 1);
            total = total + instance.production_cost(j + 1, xj) + instance.inventory_cost(j + 1, inv);
        }
        if inv == 0 {
            best = best.min(total);
        }
        // odometer step
        let mut k = 0;
        while k < t_max && x[k] == cap {
            x[k] = 0;
            k += 1;
        }
        if k == t_max {
            break;
        }
        x[k] += 1;
    }
    Ok(best)
}
