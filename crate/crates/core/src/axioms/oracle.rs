//! Brute-force reference for small instances.
//!
//! Recomputes procedure outcomes from a direct reading of each procedure's
//! narrative, using its own interval lists and breakpoint interpolation rather
//! than the engine's geometry, so the two can be cross-checked.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::EngineError;
use crate::piece::{Interval, Piece};
use crate::procedures::{Event, Knowledge, Outcome, PlayerId, Procedure, Scenario, Snapshot};
use crate::rational::{one, zero, Rational};

pub const MAX_ORACLE_PLAYERS: usize = 3;
pub const MAX_ORACLE_SEGMENTS: usize = 5;

type Spans = Vec<(Rational, Rational)>;
type Raw = Vec<(Rational, Rational, Rational)>;

fn worth(v: &Raw, spans: &Spans) -> Rational {
    let mut total = Rational::zero();
    for (a, b) in spans {
        for (lo, hi, amount) in v {
            let l = a.max(lo);
            let h = b.min(hi);
            if l < h {
                total += amount * (h - l) / (hi - lo);
            }
        }
    }
    total
}

fn length(spans: &Spans) -> Rational {
    spans.iter().fold(Rational::zero(), |acc, (a, b)| acc + (b - a))
}

fn below(spans: &Spans, x: &Rational) -> Spans {
    spans
        .iter()
        .filter(|(a, _)| a < x)
        .map(|(a, b)| (a.clone(), b.min(x).clone()))
        .collect()
}

fn above(spans: &Spans, x: &Rational) -> Spans {
    spans
        .iter()
        .filter(|(_, b)| b > x)
        .map(|(a, b)| (a.max(x).clone(), b.clone()))
        .collect()
}

fn without(spans: &Spans, taken: &Spans) -> Spans {
    let mut out = spans.clone();
    for (ta, tb) in taken {
        out = out
            .into_iter()
            .flat_map(|(a, b)| {
                let mut keep = Vec::new();
                if a < *ta {
                    keep.push((a.clone(), b.clone().min(ta.clone())));
                }
                if b > *tb {
                    keep.push((a.max(tb.clone()), b));
                }
                keep
            })
            .filter(|(a, b)| a < b)
            .collect();
    }
    out
}

/// Leftmost `x` with `measure(spans below x) == target`, found by locating the
/// first breakpoint at or past the target and interpolating linearly back.
fn interpolate(
    spans: &Spans,
    breaks: &BTreeSet<Rational>,
    target: &Rational,
    measure: impl Fn(&Spans) -> Rational,
) -> Rational {
    let first = spans.first().map(|s| s.0.clone()).unwrap_or_else(zero);
    if target.is_zero() {
        return first;
    }
    let mut candidates: BTreeSet<Rational> = breaks.clone();
    for (a, b) in spans {
        candidates.insert(a.clone());
        candidates.insert(b.clone());
    }
    let mut prev = (first.clone(), Rational::zero());
    for x in candidates.into_iter().filter(|x| *x > first) {
        let fx = measure(&below(spans, &x));
        if fx >= *target {
            let (x0, f0) = prev;
            return &x0 + (target - &f0) * (&x - &x0) / (&fx - &f0);
        }
        // Between consecutive candidates the prefix measure is linear.
        prev = (x, fx);
    }
    unreachable!("target within total measure")
}

fn share_point(v: &Raw, spans: &Spans, parts: usize) -> Rational {
    let parts = Rational::from_integer(parts.into());
    let total = worth(v, spans);
    if total.is_zero() {
        let target = length(spans) / parts;
        interpolate(spans, &BTreeSet::new(), &target, length)
    } else {
        let breaks = v.iter().flat_map(|(a, b, _)| [a.clone(), b.clone()]).collect();
        interpolate(spans, &breaks, &(total / parts), |s| worth(v, s))
    }
}

fn to_piece(spans: &Spans) -> Piece {
    Piece::from_intervals(
        spans
            .iter()
            .map(|(a, b)| Interval::new(a.clone(), b.clone()).expect("oracle span in range")),
    )
}

struct Table<'a> {
    s: &'a Scenario,
    cake: Spans,
    arrived: usize,
    gone: usize,
    events: Vec<Event>,
    got: BTreeMap<PlayerId, Piece>,
    seen: BTreeMap<PlayerId, Snapshot>,
}

impl Table<'_> {
    fn reported(&self, p: PlayerId) -> Raw {
        self.s.effective_valuation(p).expect("validated").raw_segments()
    }

    fn walk_in(&mut self) -> Option<PlayerId> {
        let p = *self.s.arrival_order.get(self.arrived)?;
        self.arrived += 1;
        self.seen.insert(
            p,
            Snapshot {
                remaining: to_piece(&self.cake),
                departed: self.gone,
            },
        );
        self.events.push(Event::Arrive(p));
        Some(p)
    }

    fn leave(&mut self, p: PlayerId, spans: Spans) {
        self.cake = without(&self.cake, &spans);
        self.gone += 1;
        let piece = to_piece(&spans);
        self.got.insert(p, piece.clone());
        self.events.push(Event::Depart { player: p, piece });
    }

    fn waiting(&self) -> usize {
        self.s.n() - self.gone
    }
}

/// Recomputes the outcome of `s` for at most three players with at most five
/// segments per valuation.
pub fn oracle_enumerate(s: &Scenario) -> Result<Outcome, EngineError> {
    s.validate()?;
    if s.n() > MAX_ORACLE_PLAYERS {
        return Err(EngineError::OutOfScope(format!("{} players", s.n())));
    }
    let all = s.players.values().chain(s.misreports.values());
    if all.into_iter().any(|v| v.segments().len() > MAX_ORACLE_SEGMENTS) {
        return Err(EngineError::OutOfScope("too many valuation segments".into()));
    }
    let mut t = Table {
        s,
        cake: vec![(zero(), one())],
        arrived: 0,
        gone: 0,
        events: Vec::new(),
        got: BTreeMap::new(),
        seen: BTreeMap::new(),
    };
    match s.procedure {
        Procedure::Dictator => {
            let first = t.walk_in().expect("players");
            let everything = t.cake.clone();
            t.leave(first, everything);
            while let Some(p) = t.walk_in() {
                t.leave(p, Vec::new());
            }
        }
        Procedure::CutAndChoose | Procedure::BoundedCutAndChoose => {
            // The waiting player cuts a fair share for the players still to
            // be served; the newcomer takes it if it is worth their fair share.
            // Under a bound, "players still to be served" is guessed from
            // n_max and what each player can know.
            let bound = match s.procedure {
                Procedure::BoundedCutAndChoose => Some(s.n_max.ok_or_else(|| {
                    EngineError::Configuration("bounded cut-and-choose needs n_max".into())
                })?),
                _ => None,
            };
            let clock = bound.is_some() && s.knowledge == Knowledge::UnknownLast;
            let mut cutter = t.walk_in().expect("players");
            loop {
                if t.arrived == s.n() && !clock {
                    let rest = t.cake.clone();
                    t.leave(cutter, rest);
                    break;
                }
                let parts = match bound {
                    Some(m) => (m - t.gone).max(1),
                    None => t.waiting(),
                };
                let x = share_point(&t.reported(cutter), &t.cake, parts);
                let slice = below(&t.cake, &x);
                t.events.push(Event::CutOffer {
                    cutter,
                    slice: to_piece(&slice),
                });
                let Some(newcomer) = t.walk_in() else {
                    t.events.push(Event::Timeout(cutter));
                    let rest = t.cake.clone();
                    t.leave(cutter, rest);
                    break;
                };
                let last = t.arrived == s.n();
                let untouched = t.cake == vec![(zero(), one())];
                let want = match (bound, s.knowledge) {
                    (None, _) => t.waiting(),
                    (Some(_), Knowledge::KnownPositionKnownLast) if last => 2,
                    (Some(_), Knowledge::UnknownPositionKnownLast) if last => 2,
                    (Some(m), Knowledge::UnknownPositionKnownLast) => {
                        if untouched {
                            m
                        } else {
                            m - 1
                        }
                    }
                    (Some(m), _) => m - t.gone,
                };
                let theirs = t.reported(newcomer);
                let fair = worth(&theirs, &t.cake) / Rational::from_integer(want.into());
                if worth(&theirs, &slice) >= fair {
                    t.events.push(Event::Accept {
                        player: newcomer,
                        slice: to_piece(&slice),
                    });
                    t.leave(newcomer, slice);
                } else {
                    t.events.push(Event::Decline {
                        player: newcomer,
                        slice: to_piece(&slice),
                    });
                    t.leave(cutter, slice);
                    cutter = newcomer;
                }
            }
        }
        Procedure::MovingKnife => {
            // Everyone in the room watches the knife; the first to shout leaves
            // with the slice, ties going to whoever came in first.
            let mut room: Vec<PlayerId> = Vec::new();
            for _ in 0..s.window_size() {
                if let Some(p) = t.walk_in() {
                    room.push(p);
                }
            }
            let mut round = 0;
            while t.waiting() > 1 {
                round += 1;
                let shouts: Vec<Rational> = room
                    .iter()
                    .map(|&p| share_point(&t.reported(p), &t.cake, t.waiting()))
                    .collect();
                for (&p, x) in room.iter().zip(&shouts) {
                    t.events.push(Event::KnifeCall {
                        player: p,
                        position: x.clone(),
                        round,
                    });
                }
                let earliest = shouts.iter().min().expect("room not empty").clone();
                let first = shouts.iter().position(|x| *x == earliest).expect("present");
                let p = room.remove(first);
                let slice = below(&t.cake, &earliest);
                t.leave(p, slice);
                if let Some(next) = t.walk_in() {
                    room.push(next);
                }
            }
            let rest = t.cake.clone();
            t.leave(room[0], rest);
        }
        Procedure::MarkAndChoose => {
            // The marker splits the cake into equal shares; the newcomer gives
            // them the share the newcomer likes least, then marks in turn.
            let mut marker = t.walk_in().expect("players");
            let mut marks = mark(&t.reported(marker), &t.cake, t.waiting());
            t.events.push(Event::Mark {
                marker,
                pieces: marks.iter().map(to_piece).collect(),
            });
            while let Some(newcomer) = t.walk_in() {
                let theirs = t.reported(newcomer);
                let least = marks
                    .iter()
                    .map(|m| worth(&theirs, m))
                    .min()
                    .expect("marks");
                let pick = marks.iter().position(|m| worth(&theirs, m) == least).expect("present");
                let given = marks.remove(pick);
                t.events.push(Event::SelectFor {
                    chooser: newcomer,
                    piece: to_piece(&given),
                    recipient: marker,
                });
                t.leave(marker, given);
                if t.arrived == s.n() {
                    let rest = t.cake.clone();
                    t.leave(newcomer, rest);
                    break;
                }
                marks = mark(&theirs, &t.cake, t.waiting());
                t.events.push(Event::Mark {
                    marker: newcomer,
                    pieces: marks.iter().map(to_piece).collect(),
                });
                marker = newcomer;
            }
        }
    }
    Ok(Outcome {
        allocation: t.got,
        trace: t.events,
        arrival_snapshot: t.seen,
    })
}

/// Equal-value marks: repeatedly carve off a `1/m` share of what is left of
/// the region until one piece remains.
fn mark(v: &Raw, region: &Spans, m: usize) -> Vec<Spans> {
    let mut rest = region.clone();
    let mut pieces = Vec::new();
    for left in (2..=m).rev() {
        let x = share_point(v, &rest, left);
        pieces.push(below(&rest, &x));
        rest = above(&rest, &x);
    }
    pieces.push(rest);
    pieces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn interpolation_skips_flat_stretches() {
        let v: Raw = vec![
            (zero(), rat(1, 2), rat(1, 1)),
            (rat(1, 2), rat(3, 4), zero()),
            (rat(3, 4), one(), rat(1, 1)),
        ];
        let whole = vec![(zero(), one())];
        assert_eq!(share_point(&v, &whole, 2), rat(1, 2));
        assert_eq!(share_point(&v, &whole, 4), rat(1, 4));
        let v3 = Raw::from([(zero(), one(), rat(3, 1))]);
        assert_eq!(share_point(&v3, &whole, 3), rat(1, 3));
    }

    #[test]
    fn without_removes_middle() {
        let whole = vec![(zero(), one())];
        let cut = without(&whole, &vec![(rat(1, 3), rat(1, 2))]);
        assert_eq!(cut, vec![(zero(), rat(1, 3)), (rat(1, 2), one())]);
    }
}
