//! Bordered candidate sets for one designated period `t`.
//!
//! Completions `N` sit in `hat_order(t)` by `I^_t(N)` ascending, so every
//! `V^l` is a contiguous window of positions and raising the border key only
//! slides windows to the right. Each level keeps the window itself
//! (`order`) and a monotone deque of `(position, G)` whose front is the
//! window minimum (`opt`). A departing element is always the oldest in its
//! window, so if it is still in `opt` it is at the front.

use std::collections::VecDeque;

use serde::Serialize;

use crate::arrangements::ArrId;
use crate::cost::Cost;

/// Per-`t` move and insert counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SetCounters {
    /// `|hat set at t|`.
    pub hat_size: u64,
    pub order_inserts: u64,
    pub order_removals: u64,
    pub opt_inserts: u64,
    pub opt_removals: u64,
    /// Elements moved from staging into the top level.
    pub admits: u64,
    /// Rebordering passes (one per arrangement after the first).
    pub reborders: u64,
    /// Arrangements that passed the filter and were priced.
    pub evaluations: u64,
}

impl SetCounters {
    /// `(m + 1) * |hat set|`.
    pub fn bound(&self, pieces: usize) -> u64 {
        pieces as u64 * self.hat_size
    }

    pub fn within_bound(&self, pieces: usize) -> bool {
        let b = self.bound(pieces);
        self.order_inserts <= b && self.order_removals <= b && self.opt_inserts <= b && self.opt_removals <= b
    }

    pub fn add(&mut self, other: &SetCounters) {
        self.hat_size += other.hat_size;
        self.order_inserts += other.order_inserts;
        self.order_removals += other.order_removals;
        self.opt_inserts += other.opt_inserts;
        self.opt_removals += other.opt_removals;
        self.admits += other.admits;
        self.reborders += other.reborders;
        self.evaluations += other.evaluations;
    }
}

/// Where an element currently lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Staged,
    /// In `V^l` (1-based); `in_opt` tells whether it survives in `Q^l`.
    Level {
        level: usize,
        in_opt: bool,
    },
    Retired,
}

#[derive(Clone, Debug)]
pub struct BorderedSets<'a> {
    hat: &'a [(i64, ArrId)],
    /// `F_t(N)` per position.
    f: Vec<Cost>,
    /// `p_{t,l}` at index `l`; index 0 unused.
    units: Vec<i64>,
    /// `B_0..=B_{m+1}`.
    levels: &'a [i64],
    key: i64,
    order: Vec<VecDeque<usize>>,
    opt: Vec<VecDeque<(usize, Cost)>>,
    staged: VecDeque<usize>,
    locator: Vec<Membership>,
    retired: usize,
    pub counters: SetCounters,
}

impl<'a> BorderedSets<'a> {
    /// Places every completion for border key `key`: windows by binary
    /// search, elements at or below `V^1` retired, elements above the top
    /// border staged. Each `Q^l` is built left to right with
    /// [`check_and_remove`].
    pub fn initialize(
        hat: &'a [(i64, ArrId)],
        f: Vec<Cost>,
        units: Vec<i64>,
        levels: &'a [i64],
        key: i64,
    ) -> BorderedSets<'a> {
        assert_eq!(hat.len(), f.len());
        let pieces = levels.len() - 1;
        assert_eq!(units.len(), pieces + 1);
        let mut sets = BorderedSets {
            hat,
            f,
            units,
            levels,
            key,
            order: vec![VecDeque::new(); pieces + 1],
            opt: vec![VecDeque::new(); pieces + 1],
            staged: VecDeque::new(),
            locator: vec![Membership::Staged; hat.len()],
            retired: 0,
            counters: SetCounters {
                hat_size: hat.len() as u64,
                ..Default::default()
            },
        };
        let cut = |b: i64| hat.partition_point(|&(ihat, _)| ihat <= b + key);
        let below = cut(levels[0]);
        for pos in 0..below {
            sets.locator[pos] = Membership::Retired;
        }
        sets.retired = below;
        let mut lo = below;
        for l in 1..=pieces {
            let hi = cut(levels[l]);
            for pos in lo..hi {
                sets.insert(l, pos);
            }
            lo = hi;
        }
        sets.staged.extend(lo..hat.len());
        sets
    }

    /// Moves the borders to `key`, which must not be smaller than the
    /// current one. Returns whether anything moved.
    pub fn reborder(&mut self, key: i64) -> bool {
        assert!(key >= self.key, "border key decreased from {} to {key}", self.key);
        self.counters.reborders += 1;
        if key == self.key {
            return false;
        }
        self.key = key;
        let top = self.pieces();
        let before = (self.counters.order_removals, self.counters.admits);

        while let Some(&pos) = self.staged.front() {
            if self.ihat(pos) > self.levels[top] + key {
                break;
            }
            self.staged.pop_front();
            self.counters.admits += 1;
            self.insert(top, pos);
        }
        for l in (1..=top).rev() {
            let left = self.levels[l - 1] + key;
            while let Some(&pos) = self.order[l].front() {
                if self.ihat(pos) > left {
                    break;
                }
                self.remove_front(l);
                if l > 1 {
                    self.insert(l - 1, pos);
                } else {
                    self.locator[pos] = Membership::Retired;
                    self.retired += 1;
                }
            }
        }
        (self.counters.order_removals, self.counters.admits) != before
    }

    fn insert(&mut self, l: usize, pos: usize) {
        debug_assert!(self.order[l].back().is_none_or(|&b| self.ihat(b) <= self.ihat(pos)));
        self.order[l].push_back(pos);
        self.counters.order_inserts += 1;
        let g = self.g(l, pos);
        let popped = check_and_remove(&mut self.opt[l], pos, g);
        self.counters.opt_inserts += 1;
        self.counters.opt_removals += popped.len() as u64;
        for p in popped {
            self.locator[p] = Membership::Level {
                level: l,
                in_opt: false,
            };
        }
        self.locator[pos] = Membership::Level { level: l, in_opt: true };
    }

    fn remove_front(&mut self, l: usize) {
        let pos = self.order[l].pop_front().expect("non-empty");
        self.counters.order_removals += 1;
        if let Membership::Level { level, in_opt: true } = self.locator[pos] {
            debug_assert_eq!(level, l);
            let (front, _) = self.opt[l]
                .pop_front()
                .expect("optimality list holds the departing element");
            assert_eq!(front, pos, "departing element must lead its optimality list");
            self.counters.opt_removals += 1;
        }
    }

    /// Number of pieces `m + 1`.
    pub fn pieces(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn key(&self) -> i64 {
        self.key
    }

    #[inline]
    pub fn ihat(&self, pos: usize) -> i64 {
        self.hat[pos].0
    }

    pub fn arrangement(&self, pos: usize) -> ArrId {
        self.hat[pos].1
    }

    /// `G_{t,l}` of the element at `pos`.
    #[inline]
    pub fn g(&self, l: usize, pos: usize) -> Cost {
        self.f[pos].plus(self.units[l] * self.ihat(pos))
    }

    pub fn f(&self, pos: usize) -> Cost {
        self.f[pos]
    }

    /// Best `(position, G)` of `V^l`.
    #[inline]
    pub fn front(&self, l: usize) -> Option<(usize, Cost)> {
        self.opt[l].front().copied()
    }

    /// Positions in `V^l`, `I^` ascending.
    pub fn members(&self, l: usize) -> impl Iterator<Item = usize> + '_ {
        self.order[l].iter().copied()
    }

    /// Surviving `(position, G)` entries of `Q^l`, front first.
    pub fn optimal(&self, l: usize) -> impl Iterator<Item = (usize, Cost)> + '_ {
        self.opt[l].iter().copied()
    }

    pub fn staged(&self) -> impl Iterator<Item = usize> + '_ {
        self.staged.iter().copied()
    }

    pub fn membership(&self, pos: usize) -> Membership {
        self.locator[pos]
    }

    pub fn retired_count(&self) -> usize {
        self.retired
    }

    /// Full structural check; returns the first violation found.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.hat.len();
        let members: usize = self.order.iter().map(VecDeque::len).sum();
        if members + self.staged.len() + self.retired != n {
            return Err(format!(
                "partition broken: {members} members + {} staged + {} retired != {n}",
                self.staged.len(),
                self.retired
            ));
        }
        for l in 1..=self.pieces() {
            let (left, right) = (self.levels[l - 1] + self.key, self.levels[l] + self.key);
            let q: Vec<usize> = self.order[l].iter().copied().collect();
            if q.windows(2).any(|w| self.ihat(w[0]) > self.ihat(w[1])) {
                return Err(format!("order list {l} not sorted"));
            }
            if let Some(&p) = q.iter().find(|&&p| self.ihat(p) <= left || self.ihat(p) > right) {
                return Err(format!("position {p} outside the borders of level {l}"));
            }
            let opt: Vec<(usize, Cost)> = self.opt[l].iter().copied().collect();
            if opt.windows(2).any(|w| w[0].1 > w[1].1) {
                return Err(format!("optimality list {l} not sorted"));
            }
            for &(p, g) in &opt {
                if self.locator[p] != (Membership::Level { level: l, in_opt: true }) {
                    return Err(format!(
                        "position {p} in optimality list {l} has locator {:?}",
                        self.locator[p]
                    ));
                }
                if g != self.g(l, p) {
                    return Err(format!("stale G for position {p} at level {l}"));
                }
            }
            for &p in &q {
                match self.locator[p] {
                    Membership::Level { level, .. } if level == l => {}
                    other => return Err(format!("position {p} in level {l} has locator {other:?}")),
                }
            }
        }
        if let Some(&p) = self.staged.front() {
            if self.ihat(p) <= self.levels[self.pieces()] + self.key {
                return Err(format!("staged position {p} should have been admitted"));
            }
        }
        Ok(())
    }
}

/// Drops every entry at the back of `list` with `G` strictly greater than
/// `g`, then appends `(pos, g)`. Returns the dropped positions.
pub fn check_and_remove(list: &mut VecDeque<(usize, Cost)>, pos: usize, g: Cost) -> Vec<usize> {
    let mut dropped = Vec::new();
    while let Some(&(p, back)) = list.back() {
        if back <= g {
            break;
        }
        list.pop_back();
        dropped.push(p);
    }
    list.push_back((pos, g));
    dropped
}
