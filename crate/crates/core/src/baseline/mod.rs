//! Reference solver: every block cost `psi(u, v)` by exhaustive search over
//! the designated period and both arrangements, then a shortest-path pass
//! over regeneration periods. Runs in `O(T^(2m+3))`.

mod reconstruct;
mod special;

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::arrangements::{ArrId, ArrangementSpace};
use crate::cost::Cost;
use crate::dp::{DpTables, PsiTable};
use crate::instance::{Instance, Schedule};

pub use reconstruct::{
    fractional_counts_per_block, needs_breakpoint_plan, off_breakpoint_counts, reconstruct_schedule, ReconstructError,
};
pub use special::{special_no_fractional, special_t_equals_u, special_t_equals_v};

/// How a regeneration block `start..=end` is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Block {
    /// Every period produces a breakpoint level, following `arrangement`.
    Integral {
        start: usize,
        end: usize,
        arrangement: ArrId,
    },
    /// Periods other than `period` follow `prefix` (before) and `suffix`
    /// (after); `period` produces whatever balances the block.
    Fractional {
        start: usize,
        period: usize,
        end: usize,
        prefix: ArrId,
        suffix: ArrId,
    },
}

impl Block {
    pub fn start(&self) -> usize {
        match *self {
            Block::Integral { start, .. } | Block::Fractional { start, .. } => start,
        }
    }

    pub fn end(&self) -> usize {
        match *self {
            Block::Integral { end, .. } | Block::Fractional { end, .. } => end,
        }
    }
}

/// A priced block choice. The cost may include the tail beyond the block,
/// depending on context.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub cost: Cost,
    pub block: Block,
}

/// Keeps `slot` at the cheaper of the two; ties keep the incumbent.
#[inline]
pub(crate) fn improve(slot: &mut Option<Candidate>, cand: Candidate) {
    if cand.cost.is_infeasible() {
        return;
    }
    match slot {
        Some(cur) if cur.cost <= cand.cost => {}
        _ => *slot = Some(cand),
    }
}

#[derive(Clone, Debug)]
pub struct BaselineResult {
    /// `psi_uv[u][v]` for `1 <= u <= v <= T`.
    pub psi_uv: Vec<Vec<Cost>>,
    /// Block achieving each `psi_uv` entry.
    pub block_trace: Vec<Vec<Option<Block>>>,
    /// `Psi_1..=Psi_{T+1}`.
    pub psi: Vec<Cost>,
    /// Block end `v` chosen for each `Psi_u`, index `u`.
    pub choice: Vec<Option<usize>>,
    pub cost: Cost,
    /// An optimal plan, with at most one off-breakpoint period per block
    /// whenever such a plan is optimal.
    pub schedule: Option<Schedule>,
    pub elapsed: Duration,
}

impl BaselineResult {
    /// `Psi_u` for `1 <= u <= T + 1`.
    pub fn psi(&self, u: usize) -> Cost {
        self.psi[u - 1]
    }
}

/// Best block on `u..=v` that starts and ends with zero inventory and has at
/// most one non-breakpoint period.
pub fn psi_uv(
    instance: &Instance,
    space: &ArrangementSpace,
    tables: &DpTables,
    u: usize,
    v: usize,
) -> Option<Candidate> {
    let mut best: Option<Candidate> = None;
    let d_uv = instance.demand_between(u, v);
    for t in u..=v {
        let d_after = instance.demand_between(t + 1, v);
        for n in space.layer(t - u) {
            let head = tables.fbar(u, n);
            if head.is_infeasible() {
                continue;
            }
            let left = d_uv - space.omega(n);
            for big_n in space.layer(v - t) {
                let w = space.omega(big_n);
                let x = left - w;
                let p = instance.production_cost(t, x);
                if p.is_infeasible() {
                    continue;
                }
                let cost = head + p + instance.inventory_cost(t, d_after - w) + tables.fhat(t + 1, big_n);
                improve(
                    &mut best,
                    Candidate {
                        cost,
                        block: Block::Fractional {
                            start: u,
                            period: t,
                            end: v,
                            prefix: n,
                            suffix: big_n,
                        },
                    },
                );
            }
        }
    }
    if let Some(c) = special::integral_block(instance, space, tables, u, v) {
        improve(&mut best, c);
    }
    best
}

/// Solves the instance with the exhaustive block search.
pub fn dp1_solve(instance: &Instance) -> BaselineResult {
    let start = Instant::now();
    let space = ArrangementSpace::new(instance);
    let tables = DpTables::new(instance, &space);
    let mut result = dp1_solve_with(instance, &space, &tables, start);
    if needs_breakpoint_plan(instance, result.schedule.as_ref()) {
        let narrow = ArrangementSpace::with_levels(instance.horizon(), &instance.breakpoint_levels());
        let narrow_tables = DpTables::new(instance, &narrow);
        let alt = dp1_solve_with(instance, &narrow, &narrow_tables, start);
        if alt.cost == result.cost {
            result.schedule = alt.schedule;
        }
    }
    result.elapsed = start.elapsed();
    result
}

pub(crate) fn dp1_solve_with(
    instance: &Instance,
    space: &ArrangementSpace,
    tables: &DpTables,
    start: Instant,
) -> BaselineResult {
    let t_max = instance.horizon();
    let mut psi_uv_table = vec![vec![Cost::INFEASIBLE; t_max + 1]; t_max + 1];
    let mut block_trace = vec![vec![None; t_max + 1]; t_max + 1];
    for u in 1..=t_max {
        for v in u..=t_max {
            if let Some(c) = psi_uv(instance, space, tables, u, v) {
                psi_uv_table[u][v] = c.cost;
                block_trace[u][v] = Some(c.block);
            }
        }
    }

    let mut psi = PsiTable::new(t_max);
    let mut choice = vec![None; t_max + 2];
    for u in (1..=t_max).rev() {
        let mut best = Cost::INFEASIBLE;
        for v in u..=t_max {
            let c = psi_uv_table[u][v] + psi.get(v + 1).expect("later entries are final");
            if c < best {
                best = c;
                choice[u] = Some(v);
            }
        }
        psi.finalize(u, best);
    }

    let cost = psi.get(1).expect("final");
    let schedule = cost.is_finite().then(|| {
        let mut blocks = Vec::new();
        let mut u = 1;
        while u <= t_max {
            let v = choice[u].expect("finite tail has a choice");
            blocks.push(block_trace[u][v].expect("chosen block is traced"));
            u = v + 1;
        }
        let schedule = reconstruct_schedule(instance, space, tables, &blocks).expect("baseline trace is consistent");
        assert_eq!(
            schedule.total_cost, cost,
            "reconstructed plan must price at the optimum"
        );
        assert!(
            fractional_counts_per_block(instance, &schedule).iter().all(|&c| c <= 1),
            "reconstructed plan has two off-level periods in one block"
        );
        schedule
    });

    BaselineResult {
        psi_uv: psi_uv_table,
        block_trace,
        psi: psi.values().to_vec(),
        choice,
        cost,
        schedule,
        elapsed: start.elapsed(),
    }
}
