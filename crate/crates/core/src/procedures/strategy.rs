//! Risk-averse agent decisions. Engines and trace replay both call these, so a
//! recorded trace can be re-derived from its snapshots alone.

use crate::piece::Piece;
use crate::rational::Rational;
use crate::valuation::Valuation;

/// Accept an offered slice iff it is worth at least a `1/players_left` share of
/// the remaining cake. Ties accept.
pub fn accept_decision(
    v: &Valuation,
    slice: &Piece,
    remaining: &Piece,
    players_left: usize,
) -> bool {
    debug_assert!(players_left >= 1);
    let share = v.value(remaining) / Rational::from_integer(players_left.into());
    v.value(slice) >= share
}

/// Where a player calls "cut" with `unallocated` players still to be served:
/// the leftmost point at which the knife has passed `1/unallocated` of the
/// player's value of the remaining cake.
pub fn knife_call_point(v: &Valuation, remaining: &Piece, unallocated: usize) -> Rational {
    v.share_point(remaining, unallocated)
}

/// The slice a cutter offers: the leftmost prefix of the remaining cake worth
/// `1/parts` of its value to the cutter.
pub fn cut_slice(v: &Valuation, remaining: &Piece, parts: usize) -> Piece {
    let x = v.share_point(remaining, parts);
    crate::piece::split_prefix(remaining, &x).0
}

/// Index of the least valuable piece; ties go to the leftmost piece.
pub fn select_least(v: &Valuation, pieces: &[Piece]) -> usize {
    let mut best = 0;
    let mut best_value = None;
    for (i, piece) in pieces.iter().enumerate() {
        let worth = v.value(piece);
        if best_value.as_ref().is_none_or(|b| worth < *b) {
            best = i;
            best_value = Some(worth);
        }
    }
    best
}
