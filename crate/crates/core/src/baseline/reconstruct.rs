use thiserror::Error;

use super::Block;
use crate::arrangements::{ArrId, ArrangementSpace};
use crate::dp::DpTables;
use crate::instance::{Instance, Schedule, ScheduleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("no level choice reproduces the table value at period {period}")]
    Trace { period: usize },
    #[error("blocks do not tile the horizon (gap or overlap at period {period})")]
    Tiling { period: usize },
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
}

/// Turns a chain of blocks covering `1..=T` into a concrete plan, re-deriving
/// the per-period breakpoint levels from the tables.
pub fn reconstruct_schedule(
    instance: &Instance,
    space: &ArrangementSpace,
    tables: &DpTables,
    blocks: &[Block],
) -> Result<Schedule, ReconstructError> {
    let t_max = instance.horizon();
    let mut production = vec![0i64; t_max];
    let mut next = 1;
    for block in blocks {
        if block.start() != next || block.end() < block.start() || block.end() > t_max {
            return Err(ReconstructError::Tiling { period: next });
        }
        match *block {
            Block::Integral { start, arrangement, .. } => {
                walk_forward(instance, space, tables, start, arrangement, &mut production)?;
            }
            Block::Fractional {
                start,
                period,
                end,
                prefix,
                suffix,
            } => {
                walk_forward(instance, space, tables, start, prefix, &mut production)?;
                walk_backward(instance, space, tables, period + 1, suffix, &mut production)?;
                production[period - 1] =
                    instance.demand_between(start, end) - space.omega(prefix) - space.omega(suffix);
            }
        }
        next = block.end() + 1;
    }
    if next != t_max + 1 {
        return Err(ReconstructError::Tiling { period: next });
    }
    Ok(Schedule::from_production(instance, production)?)
}

fn walk_forward(
    instance: &Instance,
    space: &ArrangementSpace,
    tables: &DpTables,
    u: usize,
    n: ArrId,
    out: &mut [i64],
) -> Result<(), ReconstructError> {
    let mut cur = n;
    for i in (u..u + space.nu(n)).rev() {
        let target = tables.fbar(u, cur);
        let h = instance.inventory_cost(i, space.omega(cur) - instance.demand_between(u, i));
        let tau = (0..space.width())
            .find(|&tau| {
                space.minus(cur, tau).is_some_and(|prev| {
                    tables.fbar(u, prev) + instance.production_cost(i, space.level(tau)) + h == target
                })
            })
            .ok_or(ReconstructError::Trace { period: i })?;
        out[i - 1] = space.level(tau);
        cur = space.minus(cur, tau).unwrap();
    }
    Ok(())
}

fn walk_backward(
    instance: &Instance,
    space: &ArrangementSpace,
    tables: &DpTables,
    j0: usize,
    big_n: ArrId,
    out: &mut [i64],
) -> Result<(), ReconstructError> {
    let v = j0 + space.nu(big_n) - 1;
    let mut cur = big_n;
    for j in j0..=v {
        let target = tables.fhat(j, cur);
        let after = instance.demand_between(j + 1, v);
        let tau = (0..space.width())
            .find(|&tau| {
                space.minus(cur, tau).is_some_and(|rest| {
                    tables.fhat(j + 1, rest)
                        + instance.production_cost(j, space.level(tau))
                        + instance.inventory_cost(j, after - space.omega(rest))
                        == target
                })
            })
            .ok_or(ReconstructError::Trace { period: j })?;
        out[j - 1] = space.level(tau);
        cur = space.minus(cur, tau).unwrap();
    }
    Ok(())
}

/// Number of production periods off the arrangement levels in each maximal
/// run between zero-inventory points of `schedule`.
pub fn fractional_counts_per_block(instance: &Instance, schedule: &Schedule) -> Vec<usize> {
    let interior = &instance.arrangement_levels()[1..];
    let mut counts = Vec::new();
    for j in 1..=instance.horizon() {
        if schedule.inventory[j - 1] == 0 {
            counts.push(0);
        }
        let x = schedule.production[j - 1];
        if x > 0 && !interior.contains(&x) {
            *counts.last_mut().unwrap() += 1;
        }
    }
    counts
}

/// Production periods per block whose quantity is neither zero nor one of
/// `B_1..=B_{m+1}`.
pub fn off_breakpoint_counts(instance: &Instance, schedule: &Schedule) -> Vec<usize> {
    let breakpoints = &instance.levels()[1..];
    let mut counts = Vec::new();
    for j in 1..=instance.horizon() {
        if schedule.inventory[j - 1] == 0 {
            counts.push(0);
        }
        let x = schedule.production[j - 1];
        if x > 0 && !breakpoints.contains(&x) {
            *counts.last_mut().unwrap() += 1;
        }
    }
    counts
}

/// Whether some block of `schedule` has two off-breakpoint periods, which
/// only a level just past a breakpoint allows.
pub fn needs_breakpoint_plan(instance: &Instance, schedule: Option<&Schedule>) -> bool {
    schedule.is_some_and(|s| off_breakpoint_counts(instance, s).iter().any(|&c| c > 1))
}
