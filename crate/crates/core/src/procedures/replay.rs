//! Trace replay: re-derives every recorded decision from the state the trace
//! itself implies, and fails on the first event that does not follow.

use thiserror::Error;

use crate::piece::{split_prefix, Piece};
use crate::procedures::cut_choose::{CutRules, OfferContext};
use crate::procedures::strategy::{accept_decision, cut_slice, knife_call_point, select_least};
use crate::procedures::{Event, Knowledge, Outcome, PlayerId, Procedure, Scenario};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("trace event {index} ({event}): {reason}")]
pub struct ReplayError {
    pub index: usize,
    pub event: String,
    pub reason: String,
}

struct Replay<'a> {
    s: &'a Scenario,
    remaining: Piece,
    arrived: usize,
    departed: usize,
    offer: Option<(PlayerId, Piece)>,
    marks: Option<(PlayerId, Vec<Piece>)>,
    calls: Vec<(PlayerId, Rational)>,
    selected: Option<(PlayerId, Piece)>,
}

/// Checks that `o` is exactly what the scenario's procedure would record.
pub fn verify(s: &Scenario, o: &Outcome) -> Result<(), ReplayError> {
    let mut r = Replay {
        s,
        remaining: Piece::whole(),
        arrived: 0,
        departed: 0,
        offer: None,
        marks: None,
        calls: Vec::new(),
        selected: None,
    };
    for (index, event) in o.trace.iter().enumerate() {
        r.step(o, event).map_err(|reason| ReplayError {
            index,
            event: event.to_string(),
            reason,
        })?;
    }
    let end = o.trace.len();
    let fail = |reason: String| ReplayError {
        index: end,
        event: "end of trace".into(),
        reason,
    };
    if r.departed != s.n() || o.allocation.len() != s.n() {
        return Err(fail(format!("{} of {} players departed", r.departed, s.n())));
    }
    if r.arrived != s.n() {
        return Err(fail(format!("{} of {} players arrived", r.arrived, s.n())));
    }
    Ok(())
}

impl Replay<'_> {
    fn n(&self) -> usize {
        self.s.n()
    }

    fn unallocated(&self) -> usize {
        self.n() - self.departed
    }

    fn rules(&self) -> Result<CutRules, String> {
        match self.s.procedure {
            Procedure::CutAndChoose => Ok(CutRules::Exact),
            Procedure::BoundedCutAndChoose => Ok(CutRules::Bounded {
                n_max: self.s.n_max.ok_or("missing n_max")?,
                knowledge: self.s.knowledge,
            }),
            other => Err(format!("{other} does not cut")),
        }
    }

    fn effective(&self, p: PlayerId) -> Result<&crate::Valuation, String> {
        self.s.effective_valuation(p).map_err(|e| e.to_string())
    }

    fn step(&mut self, o: &Outcome, event: &Event) -> Result<(), String> {
        match event {
            Event::Arrive(p) => {
                let expected = self.s.arrival_order.get(self.arrived).copied();
                if expected != Some(*p) {
                    return Err(format!("expected arrival {expected:?}"));
                }
                let snap = o.arrival_snapshot.get(p).ok_or("missing snapshot")?;
                if snap.remaining != self.remaining || snap.departed != self.departed {
                    return Err("snapshot disagrees with replayed state".into());
                }
                self.arrived += 1;
            }
            Event::CutOffer { cutter, slice } => {
                let rules = self.rules()?;
                let parts = rules.cut_parts(self.departed, self.unallocated());
                let expected = cut_slice(self.effective(*cutter)?, &self.remaining, parts);
                if expected != *slice {
                    return Err(format!("cutter would offer {expected}"));
                }
                self.offer = Some((*cutter, slice.clone()));
            }
            Event::Accept { player, slice } | Event::Decline { player, slice } => {
                let (_, offered) = self.offer.as_ref().ok_or("no open offer")?;
                if offered != slice {
                    return Err(format!("offer on the table is {offered}"));
                }
                let ctx = OfferContext {
                    departed: self.departed,
                    unallocated: self.unallocated(),
                    is_last: self.arrived == self.n(),
                    remaining: &self.remaining,
                };
                let parts = self.rules()?.accept_parts(&ctx);
                let accepts = accept_decision(self.effective(*player)?, slice, &self.remaining, parts);
                if accepts != matches!(event, Event::Accept { .. }) {
                    return Err(format!("player would {}", if accepts { "accept" } else { "decline" }));
                }
            }
            Event::KnifeCall {
                player,
                position,
                round: _,
            } => {
                let expected = knife_call_point(self.effective(*player)?, &self.remaining, self.unallocated());
                if expected != *position {
                    return Err(format!("player would call at {expected}"));
                }
                self.calls.push((*player, position.clone()));
            }
            Event::Mark { marker, pieces } => {
                let expected = self
                    .effective(*marker)?
                    .mark_equal(&self.remaining, self.unallocated());
                if expected != *pieces {
                    return Err("marks differ from an equal-value division".into());
                }
                self.marks = Some((*marker, pieces.clone()));
            }
            Event::SelectFor {
                chooser,
                piece,
                recipient,
            } => {
                let (marker, pieces) = self.marks.take().ok_or("nothing marked")?;
                if marker != *recipient {
                    return Err(format!("pieces were marked by {marker}"));
                }
                let pick = select_least(self.effective(*chooser)?, &pieces);
                if pieces[pick] != *piece {
                    return Err(format!("chooser would give {}", pieces[pick]));
                }
                self.selected = Some((*recipient, piece.clone()));
            }
            Event::Timeout(p) => {
                if self.arrived != self.n() || self.s.knowledge != Knowledge::UnknownLast {
                    return Err("timeout while arrivals are still expected".into());
                }
                let (cutter, _) = self.offer.as_ref().ok_or("no waiting cutter")?;
                if cutter != p {
                    return Err(format!("{cutter} is the one waiting"));
                }
            }
            Event::Depart { player, piece } => {
                if !piece.is_subset_of(&self.remaining) {
                    return Err("piece is not part of the remaining cake".into());
                }
                if !self.calls.is_empty() {
                    let (winner, cut) = self
                        .calls
                        .iter()
                        .fold(None::<&(PlayerId, Rational)>, |best, c| match best {
                            Some(b) if b.1 <= c.1 => Some(b),
                            _ => Some(c),
                        })
                        .cloned()
                        .expect("non-empty");
                    let (slice, _) = split_prefix(&self.remaining, &cut);
                    if winner != *player || slice != *piece {
                        return Err(format!("{winner} should leave with {slice}"));
                    }
                    self.calls.clear();
                }
                if let Some((recipient, chosen)) = self.selected.take() {
                    if recipient != *player || chosen != *piece {
                        return Err(format!("{recipient} should leave with {chosen}"));
                    }
                }
                if o.allocation.get(player) != Some(piece) {
                    return Err("allocation disagrees with departure".into());
                }
                self.remaining = self.remaining.difference(piece);
                self.departed += 1;
            }
        }
        Ok(())
    }
}
