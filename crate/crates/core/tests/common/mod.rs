#![allow(dead_code)]

use online_cake::rational::{self, Rational};
use online_cake::{Piece, PlayerId, Procedure, Scenario, Valuation};

pub fn q(s: &str) -> Rational {
    rational::parse(s).unwrap()
}

/// Valuation from `(lo, hi, units)` triples.
pub fn val(parts: &[(&str, &str, i64)]) -> Valuation {
    let raw: Vec<_> = parts
        .iter()
        .map(|(a, b, v)| (q(a), q(b), rational::int(*v)))
        .collect();
    Valuation::from_segments(&raw).unwrap()
}

pub fn iv(a: &str, b: &str) -> Piece {
    Piece::interval(q(a), q(b)).unwrap()
}

pub fn pid(i: u32) -> PlayerId {
    PlayerId(i)
}

/// Three players: P1 values only [1/2,1], P2 only [1/3,1], P3 only [0,3/4].
pub fn running_example(procedure: Procedure) -> Scenario {
    Scenario::new(
        procedure,
        vec![
            val(&[("0", "1/2", 0), ("1/2", "1", 1)]),
            val(&[("0", "1/3", 0), ("1/3", "1", 1)]),
            val(&[("0", "3/4", 1), ("3/4", "1", 0)]),
        ],
    )
    .with_window(2)
}

/// The four-player instance used against all three procedures.
pub fn four_players(procedure: Procedure) -> Scenario {
    Scenario::new(
        procedure,
        vec![
            val(&[("0", "1/4", 3), ("1/4", "3/4", 1), ("3/4", "1", 8)]),
            val(&[("0", "1/4", 0), ("1/4", "1/2", 4), ("1/2", "5/8", 8), ("5/8", "1", 0)]),
            val(&[
                ("0", "1/4", 6),
                ("1/4", "1/2", 0),
                ("1/2", "5/8", 1),
                ("5/8", "3/4", 2),
                ("3/4", "1", 3),
            ]),
            val(&[("0", "1/4", 0), ("1/4", "1/2", 9), ("1/2", "3/4", 1), ("3/4", "1", 2)]),
        ],
    )
    .with_window(2)
}

/// Player 2's lie in the four-player instance: equal weight on
/// [1/4,5/8], [5/8,3/4] and [3/4,1], so a one-third share ends at 5/8.
pub fn p2_misreport() -> Valuation {
    val(&[("0", "1/4", 0), ("1/4", "5/8", 1), ("5/8", "3/4", 1), ("3/4", "1", 1)])
}

/// Three-player instance showing the moving knife is not order monotonic.
pub fn knife_order_instance() -> Scenario {
    Scenario::new(
        Procedure::MovingKnife,
        vec![
            val(&[("0", "1/3", 2), ("1/3", "2/3", 2), ("2/3", "1", 2)]),
            val(&[("0", "1/3", 0), ("1/3", "2/3", 3), ("2/3", "1", 3)]),
            val(&[("0", "1/6", 2), ("1/6", "1/3", 0), ("1/3", "2/3", 0), ("2/3", "1", 4)]),
        ],
    )
    .with_window(2)
}

/// Three-player instance showing mark-and-choose is not order monotonic.
pub fn mark_order_instance() -> Scenario {
    Scenario::new(
        Procedure::MarkAndChoose,
        vec![
            val(&[("0", "1/3", 4), ("1/3", "2/3", 4), ("2/3", "1", 4)]),
            val(&[("0", "1/3", 0), ("1/3", "2/3", 6), ("2/3", "5/6", 3), ("5/6", "1", 3)]),
            val(&[
                ("0", "1/6", 2),
                ("1/6", "1/3", 0),
                ("1/3", "2/3", 0),
                ("2/3", "5/6", 5),
                ("5/6", "1", 5),
            ]),
        ],
    )
}
