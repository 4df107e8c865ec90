use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Instance;
use crate::cost::Cost;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("schedule covers {found} periods, instance has {expected}")]
    Length { expected: usize, found: usize },
    #[error("initial inventory must be zero, found {0}")]
    InitialInventory(i64),
    #[error("final inventory must be zero, found {0}")]
    FinalInventory(i64),
    #[error("inventory balance broken at period {period}")]
    Balance { period: usize },
}

/// A production plan with its derived inventory trajectory.
///
/// `production[j - 1]` is `X_j`; `inventory[j]` is `I_j`, so
/// `inventory[0] = I_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub production: Vec<i64>,
    pub inventory: Vec<i64>,
    pub total_cost: Cost,
}

/// On-disk form of a schedule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleRecord {
    pub production: Vec<i64>,
    pub cost: Cost,
}

impl Schedule {
    /// Builds the inventory trajectory for `production` and prices it.
    pub fn from_production(instance: &Instance, production: Vec<i64>) -> Result<Schedule, ScheduleError> {
        let t = instance.horizon();
        if production.len() != t {
            return Err(ScheduleError::Length {
                expected: t,
                found: production.len(),
            });
        }
        let mut inventory = Vec::with_capacity(t + 1);
        inventory.push(0);
        for (j, &x) in production.iter().enumerate() {
            let last = inventory[j];
            inventory.push(last + x - instance.demand(j + 1));
        }
        let mut schedule = Schedule {
            production,
            inventory,
            total_cost: Cost::ZERO,
        };
        schedule.total_cost = evaluate_schedule(instance, &schedule)?;
        Ok(schedule)
    }

    pub fn record(&self) -> ScheduleRecord {
        ScheduleRecord {
            production: self.production.clone(),
            cost: self.total_cost,
        }
    }
}

impl Serialize for Schedule {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.record().serialize(serializer)
    }
}

/// Total production plus inventory cost of a plan.
///
/// Structural violations (balance, boundary inventories) are errors;
/// quantities outside `[0, B_{m+1}]` price as infeasible.
pub fn evaluate_schedule(instance: &Instance, schedule: &Schedule) -> Result<Cost, ScheduleError> {
    let t = instance.horizon();
    if schedule.production.len() != t || schedule.inventory.len() != t + 1 {
        return Err(ScheduleError::Length {
            expected: t,
            found: schedule.production.len(),
        });
    }
    if schedule.inventory[0] != 0 {
        return Err(ScheduleError::InitialInventory(schedule.inventory[0]));
    }
    if schedule.inventory[t] != 0 {
        return Err(ScheduleError::FinalInventory(schedule.inventory[t]));
    }
    let mut total = Cost::ZERO;
    for j in 1..=t {
        let x = schedule.production[j - 1];
        let inv = schedule.inventory[j];
        if inv != schedule.inventory[j - 1] + x - instance.demand(j) {
            return Err(ScheduleError::Balance { period: j });
        }
        total += instance.production_cost(j, x) + instance.inventory_cost(j, inv);
    }
    Ok(total)
}
