//! Production arrangements: count vectors `n = (n_0, .., n_m)` recording how
//! many periods of a run produce exactly `B_tau` units.
//!
//! Every vector with `nu(n) <= T` is materialized once in an
//! [`ArrangementSpace`] and referred to by an [`ArrId`]. Ids are grouped by
//! layer (`nu(n)` ascending) and, inside a layer, ordered by the dense
//! mixed-radix code `sum n_tau * (T+1)^tau`, which also serves as the global
//! tie-break between equal sort keys.

mod sort;

use serde::Serialize;
use thiserror::Error;

use crate::instance::Instance;

pub use sort::{bucket_sort, naive_sort, naive_tilde_sort, SortStats, SortedHorizonSequences, SORT_TOUCH_CONSTANT};

/// Index of an arrangement inside its [`ArrangementSpace`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ArrId(pub u32);

impl ArrId {
    /// The zero vector is always the first id.
    pub const ZERO: ArrId = ArrId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("arrangement spans {nu} periods but only {available} remain after period {period}")]
    TooLong { period: usize, nu: usize, available: usize },
    #[error("arrangement has {found} components, expected {expected}")]
    Width { expected: usize, found: usize },
}

/// All arrangements with `nu(n) <= T` for one instance, with cached
/// `nu`, `omega`, dense codes and unit-step neighbours.
#[derive(Clone, Debug)]
pub struct ArrangementSpace {
    horizon: usize,
    width: usize,
    levels: Vec<i64>,
    counts: Vec<u32>,
    nu: Vec<u32>,
    omega: Vec<i64>,
    code: Vec<u64>,
    layer_start: Vec<usize>,
    minus: Vec<u32>,
    plus: Vec<u32>,
    /// Ids with `n_m = 0`, in id order (so `nu` ascending).
    without_top: Vec<ArrId>,
    /// `without_top_upto[k]` = number of such ids with `nu <= k`.
    without_top_upto: Vec<usize>,
}

impl ArrangementSpace {
    pub fn new(instance: &Instance) -> ArrangementSpace {
        ArrangementSpace::with_levels(instance.horizon(), instance.arrangement_levels())
    }

    /// Builds the space for horizon `T` over stationary levels starting at
    /// `B_0 = 0`.
    pub fn with_levels(horizon: usize, levels: &[i64]) -> ArrangementSpace {
        let width = levels.len();
        assert!(width >= 1 && levels[0] == 0, "levels must start at B_0 = 0");
        let radix = horizon as u64 + 1;
        let mut place = Vec::with_capacity(width);
        let mut p: u64 = 1;
        for _ in 0..width {
            place.push(p);
            p = p.checked_mul(radix).expect("arrangement codes overflow u64");
        }

        let mut counts = Vec::new();
        let mut layer_start = Vec::with_capacity(horizon + 2);
        for k in 0..=horizon {
            layer_start.push(counts.len() / width);
            for v in enumerate_pi_k(horizon, width - 1, k) {
                counts.extend_from_slice(&v);
            }
        }
        let len = counts.len() / width;
        layer_start.push(len);
        assert!(len < NONE as usize, "arrangement space too large");

        let mut nu = Vec::with_capacity(len);
        let mut omega = Vec::with_capacity(len);
        let mut code = Vec::with_capacity(len);
        for id in 0..len {
            let v = &counts[id * width..(id + 1) * width];
            nu.push(v.iter().sum::<u32>());
            omega.push(v.iter().zip(levels).map(|(&c, &b)| c as i64 * b).sum::<i64>());
            code.push(v.iter().zip(&place).map(|(&c, &p)| c as u64 * p).sum::<u64>());
        }

        // codes ascend inside each layer, so neighbours are found by binary
        // search in the adjacent layer
        let find = |layer: usize, c: u64| -> u32 {
            let (lo, hi) = (layer_start[layer], layer_start[layer + 1]);
            (lo + code[lo..hi].partition_point(|&x| x < c)) as u32
        };
        let mut minus = vec![NONE; len * width];
        let mut plus = vec![NONE; len * width];
        for id in 0..len {
            let k = nu[id] as usize;
            for tau in 0..width {
                if counts[id * width + tau] > 0 {
                    minus[id * width + tau] = find(k - 1, code[id] - place[tau]);
                }
                if k < horizon {
                    plus[id * width + tau] = find(k + 1, code[id] + place[tau]);
                }
            }
        }

        let top = width - 1;
        let without_top: Vec<ArrId> = (0..len)
            .filter(|&id| counts[id * width + top] == 0)
            .map(|id| ArrId(id as u32))
            .collect();
        let without_top_upto = (0..=horizon)
            .map(|k| without_top.partition_point(|a| nu[a.index()] as usize <= k))
            .collect();

        ArrangementSpace {
            horizon,
            levels: levels.to_vec(),
            width,
            counts,
            nu,
            omega,
            code,
            layer_start,
            minus,
            plus,
            without_top,
            without_top_upto,
        }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Number of components (levels).
    pub fn width(&self) -> usize {
        self.width
    }

    /// Quantity produced by a period at level `tau`.
    #[inline]
    pub fn level(&self, tau: usize) -> i64 {
        self.levels[tau]
    }

    pub fn levels(&self) -> &[i64] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.nu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nu.is_empty()
    }

    #[inline]
    pub fn counts(&self, id: ArrId) -> &[u32] {
        &self.counts[id.index() * self.width..(id.index() + 1) * self.width]
    }

    #[inline]
    pub fn nu(&self, id: ArrId) -> usize {
        self.nu[id.index()] as usize
    }

    #[inline]
    pub fn omega(&self, id: ArrId) -> i64 {
        self.omega[id.index()]
    }

    /// Dense mixed-radix code, a bijection onto the valid vectors.
    #[inline]
    pub fn code(&self, id: ArrId) -> u64 {
        self.code[id.index()]
    }

    pub fn id_of(&self, counts: &[u32]) -> Option<ArrId> {
        if counts.len() != self.width || counts.iter().sum::<u32>() as usize > self.horizon {
            return None;
        }
        let radix = self.horizon as u64 + 1;
        let code = counts.iter().rev().fold(0u64, |acc, &c| acc * radix + c as u64);
        let k = counts.iter().sum::<u32>() as usize;
        let (lo, hi) = (self.layer_start[k], self.layer_start[k + 1]);
        let at = lo + self.code[lo..hi].partition_point(|&x| x < code);
        (at < hi && self.code[at] == code).then_some(ArrId(at as u32))
    }

    /// `n - e_{tau+1}`, i.e. one fewer `B_tau` period.
    #[inline]
    pub fn minus(&self, id: ArrId, tau: usize) -> Option<ArrId> {
        let v = self.minus[id.index() * self.width + tau];
        (v != NONE).then_some(ArrId(v))
    }

    /// `n + e_{tau+1}`, when it still fits in the horizon.
    #[inline]
    pub fn plus(&self, id: ArrId, tau: usize) -> Option<ArrId> {
        let v = self.plus[id.index() * self.width + tau];
        (v != NONE).then_some(ArrId(v))
    }

    /// Ids of `Pi_k`, in dense-code order.
    #[inline]
    pub fn layer(&self, k: usize) -> impl ExactSizeIterator<Item = ArrId> + Clone {
        (self.layer_start[k] as u32..self.layer_start[k + 1] as u32).map(ArrId)
    }

    /// Ids with `nu(n) <= k`.
    #[inline]
    pub fn up_to(&self, k: usize) -> impl ExactSizeIterator<Item = ArrId> + Clone {
        (0..self.layer_start[k.min(self.horizon) + 1] as u32).map(ArrId)
    }

    /// `|{n : nu(n) <= k}|`.
    #[inline]
    pub fn count_up_to(&self, k: usize) -> usize {
        self.layer_start[k.min(self.horizon) + 1]
    }

    pub(crate) fn without_top_up_to(&self, k: usize) -> &[ArrId] {
        &self.without_top[..self.without_top_upto[k.min(self.horizon)]]
    }
}

/// All vectors of `m + 1` non-negative components summing to `k`, in
/// ascending dense-code order (highest component most significant).
pub fn enumerate_pi_k(horizon: usize, m: usize, k: usize) -> Vec<Vec<u32>> {
    assert!(k <= horizon, "layer {k} exceeds horizon {horizon}");
    let width = m + 1;
    let mut out = Vec::new();
    let mut cur = vec![0u32; width];
    fill(&mut out, &mut cur, width - 1, k as u32);
    out
}

fn fill(out: &mut Vec<Vec<u32>>, cur: &mut [u32], pos: usize, remaining: u32) {
    if pos == 0 {
        cur[0] = remaining;
        out.push(cur.to_vec());
        return;
    }
    for c in 0..=remaining {
        cur[pos] = c;
        fill(out, cur, pos - 1, remaining - c);
    }
    cur[pos] = 0;
}

/// `I^_t(N) = D(t+1, t+nu(N)) - omega(N)`: ending inventory of period `t`
/// when the following `nu(N)` periods follow arrangement `N` and the period
/// after them regenerates.
pub fn ihat(instance: &Instance, space: &ArrangementSpace, t: usize, id: ArrId) -> Result<i64, ArrangementError> {
    let nu = space.nu(id);
    let available = instance.horizon().saturating_sub(t);
    if nu > available {
        return Err(ArrangementError::TooLong {
            period: t,
            nu,
            available,
        });
    }
    Ok(ihat_unchecked(instance, space, t, id))
}

#[inline]
pub(crate) fn ihat_unchecked(instance: &Instance, space: &ArrangementSpace, t: usize, id: ArrId) -> i64 {
    instance.demand_between(t + 1, t + space.nu(id)) - space.omega(id)
}

/// Border key `K_t(n) = omega(n) - D(t - nu(n), t)`. For a run starting at
/// `u = t - nu(n)` the fractional quantity at `t` lies in piece `l` exactly
/// when `B_{l-1} + K_t(n) < I^_t(N) <= B_l + K_t(n)`.
#[inline]
pub fn border_key(instance: &Instance, space: &ArrangementSpace, t: usize, id: ArrId) -> i64 {
    space.omega(id) - instance.cumulative_demand(t as i64 - space.nu(id) as i64, t as i64)
}
