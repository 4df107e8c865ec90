//! Tail costs for the block shapes the arrangement lists do not cover:
//! no non-breakpoint period at all, and a designated period sitting on either
//! end of its block.

use super::{improve, Block, Candidate};
use crate::arrangements::{ArrId, ArrangementSpace};
use crate::cost::Cost;
use crate::dp::{big_f, DpError, DpTables, PsiTable};
use crate::instance::Instance;

/// Cheapest all-breakpoint run of `u..=v` whose output matches `D(u, v)`.
pub(crate) fn integral_block(
    instance: &Instance,
    space: &ArrangementSpace,
    tables: &DpTables,
    u: usize,
    v: usize,
) -> Option<Candidate> {
    let demand = instance.demand_between(u, v);
    let mut best = None;
    for n in space.layer(v - u + 1) {
        if space.omega(n) == demand {
            improve(
                &mut best,
                Candidate {
                    cost: tables.fbar(u, n),
                    block: Block::Integral {
                        start: u,
                        end: v,
                        arrangement: n,
                    },
                },
            );
        }
    }
    best
}

/// `Psi_u` restricted to plans where `u..=T` is one block of breakpoint
/// periods only.
pub fn special_no_fractional(
    instance: &Instance,
    space: &ArrangementSpace,
    tables: &DpTables,
    u: usize,
) -> Option<Candidate> {
    integral_block(instance, space, tables, u, instance.horizon())
}

/// `Psi_u` restricted to a first block `u..=t` whose last period is the
/// designated one (and produces a positive amount).
pub fn special_t_equals_v(
    instance: &Instance,
    space: &ArrangementSpace,
    tables: &DpTables,
    psi: &PsiTable,
    u: usize,
) -> Result<Option<Candidate>, DpError> {
    let mut best = None;
    for t in u..=instance.horizon() {
        let tail = psi.get(t + 1)?;
        let demand = instance.demand_between(u, t);
        for n in space.layer(t - u) {
            let w = space.omega(n);
            if w >= demand {
                continue;
            }
            let cost = tables.fbar(u, n) + instance.production_cost(t, demand - w) + tail;
            improve(
                &mut best,
                Candidate {
                    cost,
                    block: Block::Fractional {
                        start: u,
                        period: t,
                        end: t,
                        prefix: n,
                        suffix: ArrId::ZERO,
                    },
                },
            );
        }
    }
    Ok(best)
}

/// `Psi_u` restricted to a first block `u..=v` with `v > u` whose first
/// period is the designated one. `N` covers the `v - u` periods after `u`.
pub fn special_t_equals_u(
    instance: &Instance,
    space: &ArrangementSpace,
    tables: &DpTables,
    psi: &PsiTable,
    u: usize,
) -> Result<Option<Candidate>, DpError> {
    let mut best = None;
    for v in u + 1..=instance.horizon() {
        let demand = instance.demand_between(u, v);
        for big_n in space.layer(v - u) {
            let w = space.omega(big_n);
            if w >= demand {
                continue;
            }
            let f = big_f(instance, space, tables, psi, u, big_n)?;
            let cost: Cost = instance.production_cost(u, demand - w) + f;
            improve(
                &mut best,
                Candidate {
                    cost,
                    block: Block::Fractional {
                        start: u,
                        period: u,
                        end: v,
                        prefix: ArrId::ZERO,
                        suffix: big_n,
                    },
                },
            );
        }
    }
    Ok(best)
}
