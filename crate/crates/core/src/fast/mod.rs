//! The `O(T^(m+2))` solver.
//!
//! Tail costs `Psi_u` are finalized from `u = T` down to 1. Iteration `u`
//! handles designated period `t = u + 1` for every block start `u' < t` at
//! once: prefixes `n` are visited in border-key order, the candidate sets
//! for the completions `N` slide monotonically, and each piece contributes
//! the front of its optimality list. A running minimum per block start
//! collects the contributions of all `t`, so `Psi_u` is available as soon as
//! `t = u + 1` has been handled and the three edge shapes are folded in.

mod sets;

use std::time::{Duration, Instant};

use crate::arrangements::{bucket_sort, ArrId, ArrangementSpace, SortStats, SortedHorizonSequences};
use crate::baseline::{
    fractional_counts_per_block, improve, needs_breakpoint_plan, reconstruct_schedule, special_no_fractional,
    special_t_equals_u, special_t_equals_v, Block, Candidate,
};
use crate::cost::Cost;
use crate::dp::{DpTables, PsiTable};
use crate::instance::{Instance, Schedule};

pub use sets::{check_and_remove, BorderedSets, Membership, SetCounters};

/// Hook into the sweep, for tests and diagnostics.
pub trait FastObserver {
    /// Called with the sets bordered for prefix `n` at designated period `t`,
    /// before `n` is priced (and also for prefixes that are filtered out).
    fn bordered(&mut self, _t: usize, _n: ArrId, _sets: &BorderedSets<'_>) {}
}

/// Observer that does nothing.
pub struct NoObserver;

impl FastObserver for NoObserver {}

#[derive(Clone, Debug)]
pub struct FastResult {
    /// `Psi_1..=Psi_{T+1}`.
    pub psi: Vec<Cost>,
    pub cost: Cost,
    /// An optimal plan, with at most one off-breakpoint period per block
    /// whenever such a plan is optimal.
    pub schedule: Option<Schedule>,
    /// Set counters per designated period `t` (index `t`; unused entries are
    /// zero).
    pub counters: Vec<SetCounters>,
    pub sort_stats: SortStats,
    /// First block chosen for each `Psi_u`.
    pub choice: Vec<Option<Block>>,
    pub elapsed: Duration,
}

impl FastResult {
    pub fn psi(&self, u: usize) -> Cost {
        self.psi[u - 1]
    }

    pub fn total_counters(&self) -> SetCounters {
        let mut total = SetCounters::default();
        for c in &self.counters {
            total.add(c);
        }
        total
    }
}

pub fn solve_fast(instance: &Instance) -> FastResult {
    solve_fast_with_observer(instance, &mut NoObserver)
}

/// Runs the sweep on the full level set. If the plan found puts two
/// off-breakpoint periods in one block, a second run restricted to the
/// breakpoint levels looks for an equally cheap plan without that; tail
/// costs and counters always come from the first run.
pub fn solve_fast_with_observer(instance: &Instance, observer: &mut dyn FastObserver) -> FastResult {
    let start = Instant::now();
    let space = ArrangementSpace::new(instance);
    let mut result = run(instance, &space, observer);
    if needs_breakpoint_plan(instance, result.schedule.as_ref()) {
        let narrow = ArrangementSpace::with_levels(instance.horizon(), &instance.breakpoint_levels());
        let alt = run(instance, &narrow, &mut NoObserver);
        if alt.cost == result.cost {
            result.schedule = alt.schedule;
        }
    }
    result.elapsed = start.elapsed();
    result
}

fn run(instance: &Instance, space: &ArrangementSpace, observer: &mut dyn FastObserver) -> FastResult {
    let start = Instant::now();
    let t_max = instance.horizon();
    let tables = DpTables::new(instance, space);
    let seqs = bucket_sort(instance, space);

    let mut psi = PsiTable::new(t_max);
    let mut best: Vec<Option<Candidate>> = vec![None; t_max + 2];
    let mut choice: Vec<Option<Block>> = vec![None; t_max + 2];
    let mut counters = vec![SetCounters::default(); t_max + 1];

    let last = instance.production_cost(t_max, instance.demand(t_max));
    psi.finalize(t_max, last);
    if last.is_finite() {
        choice[t_max] = Some(Block::Fractional {
            start: t_max,
            period: t_max,
            end: t_max,
            prefix: ArrId::ZERO,
            suffix: ArrId::ZERO,
        });
    }

    for u in (1..t_max).rev() {
        let t = u + 1;
        let ctx = Sweep {
            instance,
            space,
            tables: &tables,
            seqs: &seqs,
            psi: &psi,
        };
        counters[t] = ctx.sweep(t, &mut best, observer);

        let mut slot = best[u];
        let edge = [
            special_no_fractional(instance, space, &tables, u),
            special_t_equals_v(instance, space, &tables, &psi, u).expect("later tails are final"),
            special_t_equals_u(instance, space, &tables, &psi, u).expect("later tails are final"),
        ];
        for c in edge.into_iter().flatten() {
            improve(&mut slot, c);
        }
        psi.finalize(u, slot.map_or(Cost::INFEASIBLE, |c| c.cost));
        choice[u] = slot.map(|c| c.block);
    }

    let cost = psi.get(1).expect("final");
    let schedule = cost.is_finite().then(|| {
        let mut blocks = Vec::new();
        let mut u = 1;
        while u <= t_max {
            let block = choice[u].expect("finite tail has a choice");
            blocks.push(block);
            u = block.end() + 1;
        }
        let schedule = reconstruct_schedule(instance, space, &tables, &blocks)
            .unwrap_or_else(|e| panic!("internal error: fast trace does not rebuild: {e}"));
        assert_eq!(
            schedule.total_cost, cost,
            "internal error: rebuilt plan does not price at the optimum"
        );
        assert!(
            fractional_counts_per_block(instance, &schedule).iter().all(|&c| c <= 1),
            "internal error: rebuilt plan has two off-level periods in one block"
        );
        schedule
    });

    FastResult {
        psi: psi.values().to_vec(),
        cost,
        schedule,
        counters,
        sort_stats: seqs.stats,
        choice,
        elapsed: start.elapsed(),
    }
}

const SPOT_CHECKS: usize = 16;

struct Sweep<'a> {
    instance: &'a Instance,
    space: &'a ArrangementSpace,
    tables: &'a DpTables,
    seqs: &'a SortedHorizonSequences,
    psi: &'a PsiTable,
}

impl Sweep<'_> {
    /// Prices every block with designated period `t` and a non-empty prefix,
    /// folding results into `best[u']`.
    fn sweep(&self, t: usize, best: &mut [Option<Candidate>], observer: &mut dyn FastObserver) -> SetCounters {
        let Sweep {
            instance,
            space,
            tables,
            seqs,
            psi,
        } = *self;
        let t_max = instance.horizon();
        let pieces = instance.interior_breakpoints() + 1;
        let hat = seqs.hat_order(t);
        let f: Vec<Cost> = hat
            .iter()
            .map(|&(ihat, big_n)| {
                let tail = psi
                    .get(t + space.nu(big_n) + 1)
                    .unwrap_or_else(|e| panic!("sets for t={t} need a finished tail: {e}"));
                instance.inventory_cost(t, ihat) + tables.fhat(t + 1, big_n) + tail
            })
            .collect();
        let units: Vec<i64> = std::iter::once(0)
            .chain((1..=pieces).map(|l| instance.piece(t, l).unit))
            .collect();

        let tilde = seqs.tilde_order(t);
        let mut sets = BorderedSets::initialize(hat, f, units, instance.levels(), tilde[0].0);
        // full checks on small sets, spot checks on large ones, so the
        // overhead stays linear in the number of prefixes
        let stride = (hat.len() / SPOT_CHECKS).max(1);
        for (i, &(key, n)) in tilde.iter().enumerate() {
            if i > 0 {
                sets.reborder(key);
            }
            if cfg!(debug_assertions) && i % stride == 0 {
                if let Err(e) = sets.check_invariants() {
                    panic!("bordered sets broken at t={t}: {e}");
                }
            }
            observer.bordered(t, n, &sets);

            let nu = space.nu(n);
            if nu == 0 || nu >= t {
                continue;
            }
            let start = t - nu;
            if space.omega(n) >= instance.demand_between(start, t_max) {
                continue;
            }
            let head = tables.fbar(start, n);
            if head.is_infeasible() {
                continue;
            }
            sets.counters.evaluations += 1;
            let made = instance.demand_between(start, t) - space.omega(n);
            for l in 1..=pieces {
                let Some((pos, g)) = sets.front(l) else { continue };
                let piece = instance.piece(t, l);
                let cost = head + g.plus(piece.setup + piece.unit * made);
                let big_n = sets.arrangement(pos);
                improve(
                    &mut best[start],
                    Candidate {
                        cost,
                        block: Block::Fractional {
                            start,
                            period: t,
                            end: t + space.nu(big_n),
                            prefix: n,
                            suffix: big_n,
                        },
                    },
                );
            }
        }
        sets.counters
    }
}
