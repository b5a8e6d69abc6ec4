use std::collections::BTreeMap;

use crate::piece::Piece;
use crate::procedures::{Event, Outcome, PlayerId, Scenario, Snapshot};

/// Mutable run state shared by the procedure engines. Records every event and
/// keeps the remaining cake in sync with departures.
pub(crate) struct Session<'a> {
    scenario: &'a Scenario,
    pub remaining: Piece,
    next_arrival: usize,
    departed: usize,
    trace: Vec<Event>,
    allocation: BTreeMap<PlayerId, Piece>,
    snapshots: BTreeMap<PlayerId, Snapshot>,
}

impl<'a> Session<'a> {
    pub fn new(scenario: &'a Scenario) -> Self {
        Self {
            scenario,
            remaining: Piece::whole(),
            next_arrival: 0,
            departed: 0,
            trace: Vec::new(),
            allocation: BTreeMap::new(),
            snapshots: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.scenario.n()
    }

    pub fn departed(&self) -> usize {
        self.departed
    }

    /// Players not yet allocated, present or still to arrive.
    pub fn unallocated(&self) -> usize {
        self.n() - self.departed
    }

    pub fn pending_arrivals(&self) -> usize {
        self.n() - self.next_arrival
    }

    /// Next player in the arrival order, if any, recording the arrival.
    pub fn arrive(&mut self) -> Option<PlayerId> {
        let p = *self.scenario.arrival_order.get(self.next_arrival)?;
        self.next_arrival += 1;
        self.snapshots.insert(
            p,
            Snapshot {
                remaining: self.remaining.clone(),
                departed: self.departed,
            },
        );
        self.trace.push(Event::Arrive(p));
        Some(p)
    }

    pub fn record(&mut self, event: Event) {
        self.trace.push(event);
    }

    pub fn depart(&mut self, player: PlayerId, piece: Piece) {
        debug_assert!(piece.is_subset_of(&self.remaining));
        self.remaining = self.remaining.difference(&piece);
        self.departed += 1;
        self.allocation.insert(player, piece.clone());
        self.trace.push(Event::Depart { player, piece });
    }

    /// Departs with everything left.
    pub fn depart_with_rest(&mut self, player: PlayerId) {
        let rest = self.remaining.clone();
        self.depart(player, rest);
    }

    pub fn finish(self) -> Outcome {
        Outcome {
            allocation: self.allocation,
            trace: self.trace,
            arrival_snapshot: self.snapshots,
        }
    }
}
