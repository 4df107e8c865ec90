//! Exact solvers for single-item economic lot-sizing with piecewise-linear
//! production costs and backlogging.
//!
//! Three engines compute the same optimum:
//!
//! * [`solve_fast`]: bordered candidate sets over sorted arrangements,
//!   `O(T^(w+1))`;
//! * [`dp1_solve`]: exhaustive block search, `O(T^(2w+1))`;
//! * [`oracle_solve`]: pseudo-polynomial DP over inventory levels, for
//!   certification on small instances.
//!
//! `w` is the number of [arrangement levels](Instance::arrangement_levels):
//! `m + 1` for `m` interior breakpoints when the capacity covers total
//! demand and no cost drops just past a breakpoint, one more for a binding
//! capacity and one more per breakpoint with such a drop.

// period-indexed loops follow the recurrences more closely than iterators
#![allow(clippy::needless_range_loop)]

pub mod arrangements;
pub mod baseline;
pub mod bench;
pub mod check;
pub mod cost;
pub mod dp;
pub mod fast;
pub mod instance;
pub mod oracle;
pub mod report;

pub use arrangements::{ArrId, ArrangementSpace};
pub use baseline::{dp1_solve, BaselineResult, Block};
pub use check::{check_instance, CheckReport};
pub use cost::Cost;
pub use fast::{solve_fast, FastResult, SetCounters};
pub use instance::{
    evaluate_schedule, generate_instance, parse_instance, serialize_instance, GeneratorConfig, Instance, InstanceData,
    ParseError, Piece, Schedule, Violation,
};
pub use oracle::{enumerate_solve, oracle_solve, OracleError, OracleResult};
pub use report::{solve, Engine, SolveResult};
