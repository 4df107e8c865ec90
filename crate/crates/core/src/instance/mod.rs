//! Problem data: demands, breakpoints, production pieces and inventory costs.
//!
//! [`InstanceData`] is the raw, serializable form and may be malformed.
//! [`Instance`] is only built from data that passes [`validate`] and carries
//! the derived tables (prefix demands, breakpoint levels) the solvers rely on.

mod generate;
mod io;
mod schedule;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::Cost;

pub use generate::{generate_instance, GeneratorConfig};
pub use io::{parse_instance, serialize_instance, ParseError};
pub use schedule::{evaluate_schedule, Schedule, ScheduleError, ScheduleRecord};

/// Setup and unit cost of one production piece `(B_{l-1}, B_l]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Piece {
    pub setup: i64,
    pub unit: i64,
}

/// One segment of a concave half-line table: from `from` units onward the
/// marginal cost is `slope`, until the next segment starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Segment {
    pub from: i64,
    pub slope: i64,
}

/// Inventory cost record of one period, as stored on disk.
///
/// Each half-line is given either as a linear rate (`hold` / `backlog`) or as
/// a concave segment table (`hold_table` / `backlog_table`), never both.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InventoryRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hold: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backlog: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hold_table: Option<Vec<Segment>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backlog_table: Option<Vec<Segment>>,
}

impl InventoryRecord {
    pub fn linear(hold: i64, backlog: i64) -> Self {
        InventoryRecord {
            hold: Some(hold),
            backlog: Some(backlog),
            ..Default::default()
        }
    }
}

/// Raw instance as read from or written to an instance file.
///
/// `breakpoints` holds `B_1..B_m` followed by the capacity `B_{m+1}`;
/// `pieces[j]` holds the `m + 1` pieces of period `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceData {
    pub horizon: usize,
    pub demands: Vec<i64>,
    pub breakpoints: Vec<i64>,
    pub pieces: Vec<Vec<Piece>>,
    pub inventory: Vec<InventoryRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Hold,
    Backlog,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Hold => "hold",
            Side::Backlog => "backlog",
        })
    }
}

/// A violated instance invariant. Periods are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("expected {expected} demands, found {found}")]
    DemandCount { expected: usize, found: usize },
    #[error("negative demand at period {period}")]
    NegativeDemand { period: usize },
    #[error("breakpoint list is empty (the capacity is required)")]
    MissingCapacity,
    #[error("breakpoint 1 must be positive")]
    NonPositiveBreakpoint,
    #[error("breakpoints not strictly increasing at index {index}")]
    BreakpointsNotIncreasing { index: usize },
    #[error("expected {expected} piece rows, found {found}")]
    PieceRows { expected: usize, found: usize },
    #[error("period {period} has {found} pieces, expected {expected}")]
    PieceCount {
        period: usize,
        expected: usize,
        found: usize,
    },
    #[error("negative setup cost at period {period}, piece {piece}")]
    NegativeSetup { period: usize, piece: usize },
    #[error("negative unit cost at period {period}, piece {piece}")]
    NegativeUnitCost { period: usize, piece: usize },
    #[error("expected {expected} inventory records, found {found}")]
    InventoryCount { expected: usize, found: usize },
    #[error("period {period} gives both a {side} rate and a {side} table")]
    InventoryAmbiguous { period: usize, side: Side },
    #[error("period {period} gives neither a {side} rate nor a {side} table")]
    InventoryMissing { period: usize, side: Side },
    #[error("negative {side} rate at period {period}")]
    NegativeRate { period: usize, side: Side },
    #[error("invalid {side} table at period {period}: {reason}")]
    InvalidTable {
        period: usize,
        side: Side,
        reason: &'static str,
    },
    #[error("total capacity {capacity} is below total demand {demand}")]
    InsufficientCapacity { capacity: i128, demand: i128 },
}

/// Checks every instance invariant and returns all violations found.
pub fn validate(data: &InstanceData) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let t = data.horizon;
    if t == 0 {
        out.push(Violation::ZeroHorizon);
    }
    if data.demands.len() != t {
        out.push(Violation::DemandCount {
            expected: t,
            found: data.demands.len(),
        });
    }
    for (j, &d) in data.demands.iter().enumerate() {
        if d < 0 {
            out.push(Violation::NegativeDemand { period: j + 1 });
        }
    }

    let levels = data.breakpoints.len();
    if levels == 0 {
        out.push(Violation::MissingCapacity);
    } else {
        if data.breakpoints[0] <= 0 {
            out.push(Violation::NonPositiveBreakpoint);
        }
        for (i, w) in data.breakpoints.windows(2).enumerate() {
            if w[0] >= w[1] {
                out.push(Violation::BreakpointsNotIncreasing { index: i + 2 });
            }
        }
    }

    if data.pieces.len() != t {
        out.push(Violation::PieceRows {
            expected: t,
            found: data.pieces.len(),
        });
    }
    for (j, row) in data.pieces.iter().enumerate() {
        if row.len() != levels {
            out.push(Violation::PieceCount {
                period: j + 1,
                expected: levels,
                found: row.len(),
            });
        }
        for (l, piece) in row.iter().enumerate() {
            if piece.setup < 0 {
                out.push(Violation::NegativeSetup {
                    period: j + 1,
                    piece: l + 1,
                });
            }
            if piece.unit < 0 {
                out.push(Violation::NegativeUnitCost {
                    period: j + 1,
                    piece: l + 1,
                });
            }
        }
    }

    if data.inventory.len() != t {
        out.push(Violation::InventoryCount {
            expected: t,
            found: data.inventory.len(),
        });
    }
    for (j, rec) in data.inventory.iter().enumerate() {
        let period = j + 1;
        check_half_line(&mut out, period, Side::Hold, rec.hold, rec.hold_table.as_deref());
        check_half_line(
            &mut out,
            period,
            Side::Backlog,
            rec.backlog,
            rec.backlog_table.as_deref(),
        );
    }

    if let Some(&capacity) = data.breakpoints.last() {
        let demand: i128 = data.demands.iter().map(|&d| d as i128).sum();
        let total = capacity as i128 * t as i128;
        if t > 0 && total < demand {
            out.push(Violation::InsufficientCapacity {
                capacity: total,
                demand,
            });
        }
    }

    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn check_half_line(out: &mut Vec<Violation>, period: usize, side: Side, rate: Option<i64>, table: Option<&[Segment]>) {
    match (rate, table) {
        (Some(_), Some(_)) => out.push(Violation::InventoryAmbiguous { period, side }),
        (None, None) => out.push(Violation::InventoryMissing { period, side }),
        (Some(r), None) => {
            if r < 0 {
                out.push(Violation::NegativeRate { period, side });
            }
        }
        (None, Some(segments)) => {
            if let Err(reason) = check_table(segments) {
                out.push(Violation::InvalidTable { period, side, reason });
            }
        }
    }
}

fn check_table(segments: &[Segment]) -> Result<(), &'static str> {
    let first = segments.first().ok_or("table is empty")?;
    if first.from != 0 {
        return Err("first segment must start at 0");
    }
    if segments.iter().any(|s| s.slope < 0) {
        return Err("slopes must be non-negative");
    }
    for w in segments.windows(2) {
        if w[0].from >= w[1].from {
            return Err("segment starts must be strictly increasing");
        }
        if w[1].slope > w[0].slope {
            return Err("slopes must be non-increasing away from zero");
        }
    }
    Ok(())
}

/// Cost of one side of the inventory axis as a function of magnitude.
#[derive(Clone, Debug, PartialEq, Eq)]
enum HalfLine {
    Linear(i64),
    Concave(Vec<Segment>),
}

impl HalfLine {
    fn from_record(rate: Option<i64>, table: Option<&Vec<Segment>>) -> HalfLine {
        match (rate, table) {
            (Some(r), _) => HalfLine::Linear(r),
            (None, Some(t)) => HalfLine::Concave(t.clone()),
            (None, None) => unreachable!("validated record"),
        }
    }

    fn eval(&self, quantity: i64) -> i64 {
        debug_assert!(quantity >= 0);
        match self {
            HalfLine::Linear(rate) => mul(*rate, quantity),
            HalfLine::Concave(segments) => {
                let mut total = 0i64;
                for (k, seg) in segments.iter().enumerate() {
                    if quantity <= seg.from {
                        break;
                    }
                    let end = segments.get(k + 1).map_or(quantity, |next| next.from.min(quantity));
                    total = total
                        .checked_add(mul(seg.slope, end - seg.from))
                        .expect("inventory cost overflow");
                }
                total
            }
        }
    }
}

#[inline]
fn mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("cost overflow")
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct InventoryCost {
    hold: HalfLine,
    backlog: HalfLine,
}

/// Levels for the exchange argument that leaves at most one off-level
/// period per block. Moving one unit between two off-level periods of a
/// block is concave in the amount moved until a period reaches an end of
/// its piece. The right end `B_l` is a breakpoint. The left end is only as
/// good as `B_{l-1}` when the cost does not drop just past `B_{l-1}`;
/// where it does, `B_{l-1} + 1` has to be a level of its own.
///
/// A binding capacity is a right end like any breakpoint. When the capacity
/// covers all demand, a period at capacity is the only producing period of
/// its block, so it needs no level.
fn arrangement_levels(data: &InstanceData, levels: &[i64], total_demand: i64) -> Vec<i64> {
    let m = levels.len() - 2;
    let mut out = levels[..=m].to_vec();
    for l in 1..=m {
        let b = levels[l];
        let drops = data.pieces.iter().any(|row| {
            let (left, right) = (row[l - 1], row[l]);
            right.setup + right.unit * b < left.setup + left.unit * b
        });
        if drops && b + 1 < levels[l + 1] {
            out.push(b + 1);
        }
    }
    if levels[m + 1] < total_demand {
        out.push(levels[m + 1]);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// A validated problem instance with precomputed lookup tables.
///
/// Periods are 1-based throughout: `demand(1)` is the first demand.
#[derive(Clone, Debug)]
pub struct Instance {
    data: InstanceData,
    /// `prefix[k] = d_1 + ... + d_k`.
    prefix: Vec<i64>,
    /// `levels[l] = B_l` for `l` in `0..=m+1`, with `B_0 = 0`.
    levels: Vec<i64>,
    /// Quantities a non-designated period may produce, ascending.
    arrangement_levels: Vec<i64>,
    inventory: Vec<InventoryCost>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data
    }
}

impl Eq for Instance {}

impl TryFrom<InstanceData> for Instance {
    type Error = Vec<Violation>;

    fn try_from(data: InstanceData) -> Result<Self, Self::Error> {
        Instance::new(data)
    }
}

impl Instance {
    pub fn new(data: InstanceData) -> Result<Instance, Vec<Violation>> {
        validate(&data)?;
        let mut prefix = Vec::with_capacity(data.horizon + 1);
        prefix.push(0i64);
        for &d in &data.demands {
            let last = *prefix.last().unwrap();
            prefix.push(last.checked_add(d).expect("demand overflow"));
        }
        let mut levels = Vec::with_capacity(data.breakpoints.len() + 1);
        levels.push(0);
        levels.extend_from_slice(&data.breakpoints);
        let inventory = data
            .inventory
            .iter()
            .map(|r| InventoryCost {
                hold: HalfLine::from_record(r.hold, r.hold_table.as_ref()),
                backlog: HalfLine::from_record(r.backlog, r.backlog_table.as_ref()),
            })
            .collect();
        let arrangement_levels = arrangement_levels(&data, &levels, *prefix.last().unwrap());
        Ok(Instance {
            data,
            prefix,
            levels,
            arrangement_levels,
            inventory,
        })
    }

    /// Convenience constructor for the common linear case: the same pieces
    /// and inventory rates in every period.
    pub fn stationary(
        demands: Vec<i64>,
        breakpoints: Vec<i64>,
        pieces: Vec<Piece>,
        hold: i64,
        backlog: i64,
    ) -> Result<Instance, Vec<Violation>> {
        let horizon = demands.len();
        Instance::new(InstanceData {
            horizon,
            demands,
            breakpoints,
            pieces: vec![pieces; horizon],
            inventory: vec![InventoryRecord::linear(hold, backlog); horizon],
        })
    }

    pub fn data(&self) -> &InstanceData {
        &self.data
    }

    /// Number of periods `T`.
    #[inline]
    pub fn horizon(&self) -> usize {
        self.data.horizon
    }

    /// Number of interior breakpoints `m`.
    #[inline]
    pub fn interior_breakpoints(&self) -> usize {
        self.levels.len() - 2
    }

    /// `B_l` for `l` in `0..=m+1`.
    #[inline]
    pub fn level(&self, l: usize) -> i64 {
        self.levels[l]
    }

    /// `B_0..=B_{m+1}`.
    pub fn levels(&self) -> &[i64] {
        &self.levels
    }

    /// Quantities a block period other than the designated one can take,
    /// ascending: `B_0..=B_m`, plus `B_l + 1` wherever some period's cost
    /// drops just past `B_l`, plus the capacity when it is below total
    /// demand. See [`arrangement_levels`](fn@arrangement_levels).
    #[inline]
    pub fn arrangement_levels(&self) -> &[i64] {
        &self.arrangement_levels
    }

    /// [`arrangement_levels`](Self::arrangement_levels) without the levels
    /// just past a breakpoint.
    pub fn breakpoint_levels(&self) -> Vec<i64> {
        self.arrangement_levels
            .iter()
            .copied()
            .filter(|x| self.levels.contains(x))
            .collect()
    }

    /// The per-period production capacity `B_{m+1}`.
    #[inline]
    pub fn capacity(&self) -> i64 {
        *self.levels.last().unwrap()
    }

    #[inline]
    pub fn demand(&self, period: usize) -> i64 {
        self.data.demands[period - 1]
    }

    /// `D(i, j)`, the demand of periods `i..=j` (zero when `i > j`).
    /// Indices outside `1..=T` contribute nothing.
    #[inline]
    pub fn cumulative_demand(&self, i: i64, j: i64) -> i64 {
        let t = self.horizon() as i64;
        let lo = i.max(1);
        let hi = j.min(t);
        if lo > hi {
            0
        } else {
            self.prefix[hi as usize] - self.prefix[lo as usize - 1]
        }
    }

    /// Shorthand for [`Instance::cumulative_demand`] on in-range periods.
    #[inline]
    pub fn demand_between(&self, i: usize, j: usize) -> i64 {
        if i > j {
            0
        } else {
            self.prefix[j] - self.prefix[i - 1]
        }
    }

    #[inline]
    pub fn piece(&self, period: usize, l: usize) -> Piece {
        self.data.pieces[period - 1][l - 1]
    }

    /// The piece `l` with `B_{l-1} < x <= B_l`, or `None` for `x <= 0` or
    /// `x > B_{m+1}`.
    #[inline]
    pub fn piece_index(&self, x: i64) -> Option<usize> {
        if x <= 0 || x > self.capacity() {
            return None;
        }
        // first level >= x; levels[0] = 0 < x so the result is >= 1
        Some(self.levels.partition_point(|&b| b < x))
    }

    /// `P_j(x)`.
    #[inline]
    pub fn production_cost(&self, period: usize, x: i64) -> Cost {
        if x == 0 {
            return Cost::ZERO;
        }
        match self.piece_index(x) {
            Some(l) => {
                let piece = self.piece(period, l);
                Cost::finite(piece.setup.checked_add(mul(piece.unit, x)).expect("cost overflow"))
            }
            None => Cost::INFEASIBLE,
        }
    }

    /// `H_j(I)` for ending inventory `I` (negative means backlog).
    #[inline]
    pub fn inventory_cost(&self, period: usize, inventory: i64) -> Cost {
        let model = &self.inventory[period - 1];
        let v = match inventory {
            0 => 0,
            i if i > 0 => model.hold.eval(i),
            i => model.backlog.eval(-i),
        };
        Cost::finite(v)
    }
}
