//! Benchmark fixtures.

use setfix_core::hyperspace::{PointSet, Space, Span};
use setfix_core::rational::q;
use setfix_core::scenario::{EXAMPLE_ONE, EXAMPLE_TWO};
use setfix_core::{parse_scenario, Scenario};

pub fn line() -> Space {
    Space::line(Span::new(None, false, None, false)).expect("unbounded line")
}

/// `n` points spread over `[0, n)` with denominators cycling through 1..=7.
pub fn spread_points(n: usize, offset: i64) -> PointSet {
    let xs = (0..n as i64).map(|k| q(k * 7 + (k * offset) % 5, 7));
    PointSet::reals(&line(), xs).expect("points on the line")
}

/// `n` disjoint unit-ish intervals.
pub fn spread_intervals(n: usize, offset: i64) -> PointSet {
    let pieces =
        (0..n as i64).map(|k| (q(3 * k, 1) + q(offset, 3), q(3 * k + 1, 1) + q(offset, 5)));
    PointSet::intervals(&line(), pieces).expect("intervals on the line")
}

pub fn example(id: u8) -> Scenario {
    parse_scenario(if id == 1 { EXAMPLE_ONE } else { EXAMPLE_TWO }).expect("builtin example parses")
}
