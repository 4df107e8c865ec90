//! Shared recurrences over arrangements.
//!
//! * `fbar(u, n)`: cheapest way to run periods `u..=u+nu(n)-1` as breakpoint
//!   periods with arrangement `n`, starting from zero inventory.
//! * `fhat(j, N)`: cheapest way to run periods `j..=j+nu(N)-1` with
//!   arrangement `N` so that inventory is zero after the last one.
//!
//! The end period is implied by `nu`, so each table is one dense vector per
//! start period, indexed by [`ArrId`].

use thiserror::Error;

use crate::arrangements::{ihat_unchecked, ArrId, ArrangementSpace};
use crate::cost::Cost;
use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DpError {
    #[error("{which} arrangement spans {found} periods, expected {expected}")]
    WrongSize {
        which: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("periods out of order: u={u}, t={t}, v={v}")]
    PeriodOrder { u: usize, t: usize, v: usize },
    #[error("value for period {period} read before it was finalized")]
    PsiNotFinalized { period: usize },
    #[error("piece {0} does not exist")]
    NoSuchPiece(usize),
}

/// Optimal tail costs `Psi_1..=Psi_{T+1}` with per-entry finalization flags.
#[derive(Clone, Debug)]
pub struct PsiTable {
    values: Vec<Cost>,
    finalized: Vec<bool>,
}

impl PsiTable {
    /// A table with only the boundary `Psi_{T+1} = 0` finalized.
    pub fn new(horizon: usize) -> PsiTable {
        let mut values = vec![Cost::INFEASIBLE; horizon + 2];
        let mut finalized = vec![false; horizon + 2];
        values[horizon + 1] = Cost::ZERO;
        finalized[horizon + 1] = true;
        PsiTable { values, finalized }
    }

    pub fn finalize(&mut self, u: usize, value: Cost) {
        assert!(!self.finalized[u], "period {u} finalized twice");
        self.values[u] = value;
        self.finalized[u] = true;
    }

    #[inline]
    pub fn get(&self, u: usize) -> Result<Cost, DpError> {
        if self.finalized[u] {
            Ok(self.values[u])
        } else {
            Err(DpError::PsiNotFinalized { period: u })
        }
    }

    pub fn is_finalized(&self, u: usize) -> bool {
        self.finalized[u]
    }

    /// `Psi_1..=Psi_{T+1}`; unfinalized entries read as infeasible.
    pub fn values(&self) -> &[Cost] {
        &self.values[1..]
    }
}

/// Precomputed `fbar` and `fhat` tables.
#[derive(Clone, Debug)]
pub struct DpTables {
    fbar: Vec<Vec<Cost>>,
    fhat: Vec<Vec<Cost>>,
}

impl DpTables {
    pub fn new(instance: &Instance, space: &ArrangementSpace) -> DpTables {
        DpTables {
            fbar: compute_fbar(instance, space),
            fhat: compute_fhat(instance, space),
        }
    }

    /// `fbar_{u, u+nu(n)-1}(n)`.
    #[inline]
    pub fn fbar(&self, u: usize, n: ArrId) -> Cost {
        self.fbar[u][n.index()]
    }

    /// `fhat_{j, j+nu(N)-1}(N)`.
    #[inline]
    pub fn fhat(&self, j: usize, big_n: ArrId) -> Cost {
        self.fhat[j][big_n.index()]
    }

    /// Number of stored states with `nu >= 1`, per table.
    pub fn populated_entries(&self) -> (usize, usize) {
        let count = |t: &Vec<Vec<Cost>>| t.iter().map(|row| row.len().saturating_sub(1)).sum();
        (count(&self.fbar), count(&self.fhat))
    }
}

/// `P_i(B_tau)` for all periods and arrangement levels.
fn level_costs(instance: &Instance, space: &ArrangementSpace) -> Vec<Vec<Cost>> {
    let mut out = vec![Vec::new(); instance.horizon() + 1];
    for (i, row) in out.iter_mut().enumerate().skip(1) {
        *row = space.levels().iter().map(|&b| instance.production_cost(i, b)).collect();
    }
    out
}

/// Forward table: `fbar[u][n]` for `1 <= u <= T+1`.
pub fn compute_fbar(instance: &Instance, space: &ArrangementSpace) -> Vec<Vec<Cost>> {
    let t_max = instance.horizon();
    let width = space.width();
    let pb = level_costs(instance, space);
    let mut table = vec![Vec::new(); t_max + 2];
    for (u, row) in table.iter_mut().enumerate().skip(1) {
        let max_len = t_max + 1 - u;
        let mut cur = vec![Cost::INFEASIBLE; space.count_up_to(max_len)];
        cur[0] = Cost::ZERO;
        for n in space.up_to(max_len).skip(1) {
            let i = u + space.nu(n) - 1;
            let mut best = Cost::INFEASIBLE;
            for (tau, &p) in pb[i].iter().enumerate().take(width) {
                if let Some(prev) = space.minus(n, tau) {
                    best = best.min(cur[prev.index()] + p);
                }
            }
            let inv = space.omega(n) - instance.demand_between(u, i);
            cur[n.index()] = best + instance.inventory_cost(i, inv);
        }
        *row = cur;
    }
    table
}

/// Backward table: `fhat[j][N]` for `1 <= j <= T+1`.
pub fn compute_fhat(instance: &Instance, space: &ArrangementSpace) -> Vec<Vec<Cost>> {
    let t_max = instance.horizon();
    let width = space.width();
    let pb = level_costs(instance, space);
    let mut table = vec![Vec::new(); t_max + 2];
    table[t_max + 1] = vec![Cost::ZERO];
    for j in (1..=t_max).rev() {
        let max_len = t_max + 1 - j;
        let next = &table[j + 1];
        let mut cur = vec![Cost::INFEASIBLE; space.count_up_to(max_len)];
        cur[0] = Cost::ZERO;
        for big_n in space.up_to(max_len).skip(1) {
            let v = j + space.nu(big_n) - 1;
            let demand_after = instance.demand_between(j + 1, v);
            let mut best = Cost::INFEASIBLE;
            for (tau, &p) in pb[j].iter().enumerate().take(width) {
                if let Some(rest) = space.minus(big_n, tau) {
                    let h = instance.inventory_cost(j, demand_after - space.omega(rest));
                    best = best.min(next[rest.index()] + p + h);
                }
            }
            cur[big_n.index()] = best;
        }
        table[j] = cur;
    }
    table
}

/// Cost of block `u..=v` with designated period `t`, breakpoint arrangement
/// `n` on `u..t` and `N` on `t+1..=v`; period `t` absorbs the remainder.
#[allow(clippy::too_many_arguments)]
pub fn phi(
    instance: &Instance,
    space: &ArrangementSpace,
    tables: &DpTables,
    u: usize,
    t: usize,
    v: usize,
    n: ArrId,
    big_n: ArrId,
) -> Result<Cost, DpError> {
    if !(1 <= u && u <= t && t <= v && v <= instance.horizon()) {
        return Err(DpError::PeriodOrder { u, t, v });
    }
    if space.nu(n) != t - u {
        return Err(DpError::WrongSize {
            which: "prefix",
            expected: t - u,
            found: space.nu(n),
        });
    }
    if space.nu(big_n) != v - t {
        return Err(DpError::WrongSize {
            which: "suffix",
            expected: v - t,
            found: space.nu(big_n),
        });
    }
    Ok(phi_unchecked(instance, space, tables, u, t, v, n, big_n))
}

#[allow(clippy::too_many_arguments)]
#[inline]
pub(crate) fn phi_unchecked(
    instance: &Instance,
    space: &ArrangementSpace,
    tables: &DpTables,
    u: usize,
    t: usize,
    v: usize,
    n: ArrId,
    big_n: ArrId,
) -> Cost {
    let x = instance.demand_between(u, v) - space.omega(n) - space.omega(big_n);
    let inv = instance.demand_between(t + 1, v) - space.omega(big_n);
    tables.fbar(u, n) + instance.production_cost(t, x) + instance.inventory_cost(t, inv) + tables.fhat(t + 1, big_n)
}

/// `F_t(N) = H_t(I^_t(N)) + fhat_{t+1}(N) + Psi_{t+nu(N)+1}`.
pub fn big_f(
    instance: &Instance,
    space: &ArrangementSpace,
    tables: &DpTables,
    psi: &PsiTable,
    t: usize,
    big_n: ArrId,
) -> Result<Cost, DpError> {
    let nu = space.nu(big_n);
    if t + nu > instance.horizon() {
        return Err(DpError::WrongSize {
            which: "suffix",
            expected: instance.horizon() - t,
            found: nu,
        });
    }
    let tail = psi.get(t + nu + 1)?;
    let inv = ihat_unchecked(instance, space, t, big_n);
    Ok(instance.inventory_cost(t, inv) + tables.fhat(t + 1, big_n) + tail)
}

/// `G_{t,l}(N) = p_{t,l} * I^_t(N) + F_t(N)`.
pub fn big_g(
    instance: &Instance,
    space: &ArrangementSpace,
    tables: &DpTables,
    psi: &PsiTable,
    t: usize,
    piece: usize,
    big_n: ArrId,
) -> Result<Cost, DpError> {
    if piece == 0 || piece > instance.interior_breakpoints() + 1 {
        return Err(DpError::NoSuchPiece(piece));
    }
    let f = big_f(instance, space, tables, psi, t, big_n)?;
    let unit = instance.piece(t, piece).unit;
    Ok(f.plus(unit * ihat_unchecked(instance, space, t, big_n)))
}
