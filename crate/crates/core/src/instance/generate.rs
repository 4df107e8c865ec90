use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Instance, InstanceData, InventoryRecord, Piece, Segment};

/// Parameters for [`generate_instance`]. All ranges are inclusive and start at 0
/// unless noted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub horizon: usize,
    /// Number of interior breakpoints `m`.
    pub interior_breakpoints: usize,
    pub demand_max: i64,
    /// Interior breakpoints are drawn from `1..=breakpoint_max`.
    pub breakpoint_max: i64,
    pub setup_max: i64,
    pub unit_max: i64,
    pub hold_max: i64,
    pub backlog_max: i64,
    /// Draw two-segment concave tables instead of linear inventory rates.
    pub concave_inventory: bool,
    /// Draw the capacity at or above total demand.
    pub wide_capacity: bool,
    /// Draw every piece independently, so the cost may drop just past a
    /// breakpoint. Otherwise each piece starts at or above where the
    /// previous one ended.
    pub downward_jumps: bool,
}

impl GeneratorConfig {
    pub fn new(horizon: usize, interior_breakpoints: usize) -> Self {
        GeneratorConfig {
            horizon,
            interior_breakpoints,
            demand_max: 10,
            breakpoint_max: 30,
            setup_max: 50,
            unit_max: 5,
            hold_max: 3,
            backlog_max: 6,
            concave_inventory: false,
            wide_capacity: false,
            downward_jumps: false,
        }
    }
}

/// Draws a feasible random instance; identical seeds give identical instances.
///
/// # Panics
/// Panics if `horizon == 0` or a maximum is negative.
pub fn generate_instance(seed: u64, config: &GeneratorConfig) -> Instance {
    assert!(config.horizon >= 1, "horizon must be at least 1");
    assert!(config.demand_max >= 0 && config.setup_max >= 0 && config.unit_max >= 0);
    assert!(config.hold_max >= 0 && config.backlog_max >= 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = config.horizon;
    let m = config.interior_breakpoints;

    let demands: Vec<i64> = (0..t).map(|_| rng.gen_range(0..=config.demand_max)).collect();
    let total: i64 = demands.iter().sum();

    let bp_max = config.breakpoint_max.max(m as i64);
    let mut breakpoints: Vec<i64> = sample(&mut rng, bp_max as usize, m)
        .into_iter()
        .map(|i| i as i64 + 1)
        .collect();
    breakpoints.sort_unstable();
    let b_m = breakpoints.last().copied().unwrap_or(0);
    let (lo, hi) = if config.wide_capacity {
        let lo = (b_m + 1).max(total);
        (lo, lo + config.demand_max)
    } else {
        let lo = (b_m + 1).max((total + t as i64 - 1) / t as i64);
        (lo, (total + 1).max(lo))
    };
    breakpoints.push(rng.gen_range(lo..=hi));

    let pieces = (0..t)
        .map(|_| {
            let mut row: Vec<Piece> = Vec::with_capacity(m + 1);
            for l in 0..=m {
                let unit = rng.gen_range(0..=config.unit_max);
                let mut setup = rng.gen_range(0..=config.setup_max);
                if let (Some(prev), false) = (row.last(), config.downward_jumps) {
                    // no drop at B_l: setup + unit * B_l >= prev.setup + prev.unit * B_l
                    let b = breakpoints[l - 1];
                    setup += (prev.setup + (prev.unit - unit) * b).max(0);
                }
                row.push(Piece { setup, unit });
            }
            row
        })
        .collect();

    let inventory = (0..t)
        .map(|_| {
            if config.concave_inventory {
                InventoryRecord {
                    hold_table: Some(concave_table(&mut rng, config.hold_max)),
                    backlog_table: Some(concave_table(&mut rng, config.backlog_max)),
                    ..Default::default()
                }
            } else {
                InventoryRecord::linear(
                    rng.gen_range(0..=config.hold_max),
                    rng.gen_range(0..=config.backlog_max),
                )
            }
        })
        .collect();

    let data = InstanceData {
        horizon: t,
        demands,
        breakpoints,
        pieces,
        inventory,
    };
    Instance::new(data).expect("generated instances are valid by construction")
}

fn concave_table(rng: &mut ChaCha8Rng, slope_max: i64) -> Vec<Segment> {
    let first = rng.gen_range(0..=slope_max);
    let second = rng.gen_range(0..=first);
    let knee = rng.gen_range(1..=6);
    vec![
        Segment { from: 0, slope: first },
        Segment {
            from: knee,
            slope: second,
        },
    ]
}
