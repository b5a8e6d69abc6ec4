//! Deterministic event-trace engine for the online procedures.
//!
//! Players act on their *effective* valuation (a configured misreport, or the
//! truth). Every run produces an [`Outcome`]: the allocation, the full event
//! trace, and a snapshot of the remaining cake at each arrival.

mod bounded;
mod cut_choose;
mod dictator;
mod mark_choose;
mod moving_knife;
pub mod replay;
mod session;
pub mod strategy;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::EngineError;
use crate::piece::Piece;
use crate::rational::Rational;
use crate::valuation::Valuation;

pub use bounded::run_bounded_cut_and_choose;
pub use cut_choose::run_cut_and_choose;
pub use dictator::run_dictator;
pub use mark_choose::run_mark_and_choose;
pub use moving_knife::run_moving_knife;

/// Window used by the moving knife when a scenario leaves it unset.
pub const DEFAULT_WINDOW: usize = 2;

/// Player identity, independent of arrival position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlayerId(pub u32);

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Procedure {
    Dictator,
    CutAndChoose,
    MovingKnife,
    MarkAndChoose,
    BoundedCutAndChoose,
}

impl Procedure {
    pub const ALL: [Procedure; 5] = [
        Procedure::Dictator,
        Procedure::CutAndChoose,
        Procedure::MovingKnife,
        Procedure::MarkAndChoose,
        Procedure::BoundedCutAndChoose,
    ];

    /// The three online procedures that hand out the whole cake.
    pub const MAIN: [Procedure; 3] = [
        Procedure::CutAndChoose,
        Procedure::MovingKnife,
        Procedure::MarkAndChoose,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Procedure::Dictator => "dictator",
            Procedure::CutAndChoose => "cut_and_choose",
            Procedure::MovingKnife => "moving_knife",
            Procedure::MarkAndChoose => "mark_and_choose",
            Procedure::BoundedCutAndChoose => "bounded_cut_and_choose",
        }
    }
}

impl fmt::Display for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Procedure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Procedure::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown procedure {s:?}"))
    }
}

/// What players know about arrival position and the last arrival, for the
/// bounded variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Knowledge {
    #[default]
    KnownPositionKnownLast,
    UnknownPositionKnownLast,
    UnknownLast,
}

impl Knowledge {
    pub const ALL: [Knowledge; 3] = [
        Knowledge::KnownPositionKnownLast,
        Knowledge::UnknownPositionKnownLast,
        Knowledge::UnknownLast,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Knowledge::KnownPositionKnownLast => "known_position_known_last",
            Knowledge::UnknownPositionKnownLast => "unknown_position_known_last",
            Knowledge::UnknownLast => "unknown_last",
        }
    }
}

impl fmt::Display for Knowledge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Knowledge {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Knowledge::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown knowledge case {s:?}"))
    }
}

/// A complete problem instance: who values what, who arrives when, and which
/// procedure divides the cake.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub players: BTreeMap<PlayerId, Valuation>,
    pub arrival_order: Vec<PlayerId>,
    pub procedure: Procedure,
    /// Moving knife window; [`DEFAULT_WINDOW`] when unset.
    pub window: Option<usize>,
    /// Upper bound on the number of players for the bounded variant.
    pub n_max: Option<usize>,
    pub knowledge: Knowledge,
    /// Reported valuations that differ from the truth.
    pub misreports: BTreeMap<PlayerId, Valuation>,
}

impl Scenario {
    /// Players `1..=n` arriving in id order.
    pub fn new(procedure: Procedure, valuations: Vec<Valuation>) -> Self {
        let players: BTreeMap<_, _> = valuations
            .into_iter()
            .enumerate()
            .map(|(i, v)| (PlayerId(i as u32 + 1), v))
            .collect();
        let arrival_order = players.keys().copied().collect();
        Self {
            players,
            arrival_order,
            procedure,
            window: None,
            n_max: None,
            knowledge: Knowledge::default(),
            misreports: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.players.len()
    }

    pub fn with_procedure(mut self, procedure: Procedure) -> Self {
        self.procedure = procedure;
        self
    }

    pub fn with_order(mut self, order: &[u32]) -> Self {
        self.arrival_order = order.iter().map(|&i| PlayerId(i)).collect();
        self
    }

    pub fn with_window(mut self, k: usize) -> Self {
        self.window = Some(k);
        self
    }

    pub fn with_bound(mut self, n_max: usize, knowledge: Knowledge) -> Self {
        self.n_max = Some(n_max);
        self.knowledge = knowledge;
        self
    }

    pub fn with_misreport(mut self, p: PlayerId, reported: Valuation) -> Self {
        self.misreports.insert(p, reported);
        self
    }

    pub fn window_size(&self) -> usize {
        self.window.unwrap_or(DEFAULT_WINDOW)
    }

    pub fn true_valuation(&self, p: PlayerId) -> Result<&Valuation, EngineError> {
        self.players.get(&p).ok_or(EngineError::UnknownPlayer(p))
    }

    /// The valuation a player acts on: the misreport if configured, else the truth.
    pub fn effective_valuation(&self, p: PlayerId) -> Result<&Valuation, EngineError> {
        match self.misreports.get(&p) {
            Some(v) => Ok(v),
            None => self.true_valuation(p),
        }
    }

    /// Checks the structural invariants every procedure relies on.
    pub fn validate(&self) -> Result<(), EngineError> {
        let n = self.n();
        if n < 2 {
            return Err(EngineError::InvalidScenario(format!(
                "need at least 2 players, got {n}"
            )));
        }
        let ids: BTreeSet<_> = self.players.keys().collect();
        let order: BTreeSet<_> = self.arrival_order.iter().collect();
        if self.arrival_order.len() != n || ids != order {
            return Err(EngineError::InvalidScenario(
                "arrival order is not a permutation of the players".into(),
            ));
        }
        if let Some(p) = self.misreports.keys().find(|p| !self.players.contains_key(p)) {
            return Err(EngineError::UnknownPlayer(*p));
        }
        if let Some(k) = self.window {
            if k < 2 || k > n {
                return Err(EngineError::InvalidScenario(format!(
                    "window {k} must lie in 2..={n}"
                )));
            }
        }
        if let Some(bound) = self.n_max {
            if bound < n {
                return Err(EngineError::InvalidScenario(format!(
                    "{n} players exceed n_max {bound}"
                )));
            }
        }
        if self.procedure == Procedure::BoundedCutAndChoose && self.n_max.is_none() {
            return Err(EngineError::Configuration(
                "bounded cut-and-choose needs n_max".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Event {
    Arrive(PlayerId),
    CutOffer {
        cutter: PlayerId,
        slice: Piece,
    },
    Accept {
        player: PlayerId,
        slice: Piece,
    },
    Decline {
        player: PlayerId,
        slice: Piece,
    },
    Mark {
        marker: PlayerId,
        pieces: Vec<Piece>,
    },
    SelectFor {
        chooser: PlayerId,
        piece: Piece,
        recipient: PlayerId,
    },
    KnifeCall {
        player: PlayerId,
        position: Rational,
        round: usize,
    },
    Depart {
        player: PlayerId,
        piece: Piece,
    },
    Timeout(PlayerId),
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Arrive(p) => write!(f, "arrive {p}"),
            Event::CutOffer { cutter, slice } => write!(f, "cut {cutter} offers {slice}"),
            Event::Accept { player, slice } => write!(f, "accept {player} takes {slice}"),
            Event::Decline { player, slice } => write!(f, "decline {player} refuses {slice}"),
            Event::Mark { marker, pieces } => {
                write!(f, "mark {marker}")?;
                for p in pieces {
                    write!(f, " {p}")?;
                }
                Ok(())
            }
            Event::SelectFor {
                chooser,
                piece,
                recipient,
            } => write!(f, "select {chooser} gives {piece} to {recipient}"),
            Event::KnifeCall {
                player,
                position,
                round,
            } => write!(f, "call {player} at {position} round {round}"),
            Event::Depart { player, piece } => write!(f, "depart {player} with {piece}"),
            Event::Timeout(p) => write!(f, "timeout {p}"),
        }
    }
}

/// Remaining cake and departure count as seen by a player on arrival.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub remaining: Piece,
    pub departed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub allocation: BTreeMap<PlayerId, Piece>,
    pub trace: Vec<Event>,
    pub arrival_snapshot: BTreeMap<PlayerId, Snapshot>,
}

impl Outcome {
    pub fn piece(&self, p: PlayerId) -> &Piece {
        &self.allocation[&p]
    }

    /// Players in the order of their `Depart` events.
    pub fn departure_order(&self) -> Vec<PlayerId> {
        self.trace
            .iter()
            .filter_map(|e| match e {
                Event::Depart { player, .. } => Some(*player),
                _ => None,
            })
            .collect()
    }

    /// Trace index of the player's `Arrive` event.
    pub fn arrival_index(&self, p: PlayerId) -> Option<usize> {
        self.trace
            .iter()
            .position(|e| matches!(e, Event::Arrive(q) if *q == p))
    }

    /// Trace index of the player's `Depart` event.
    pub fn departure_index(&self, p: PlayerId) -> Option<usize> {
        self.trace
            .iter()
            .position(|e| matches!(e, Event::Depart { player, .. } if *player == p))
    }

    /// Value of the player's own allocation under `v`.
    pub fn own_value(&self, p: PlayerId, v: &Valuation) -> Rational {
        v.value(self.piece(p))
    }
}

/// Runs the scenario's configured procedure.
pub fn run(s: &Scenario) -> Result<Outcome, EngineError> {
    run_as(s, s.procedure)
}

/// Runs `procedure` on the scenario's players, ignoring its configured procedure.
pub fn run_as(s: &Scenario, procedure: Procedure) -> Result<Outcome, EngineError> {
    match procedure {
        Procedure::Dictator => run_dictator(s),
        Procedure::CutAndChoose => run_cut_and_choose(s),
        Procedure::MovingKnife => run_moving_knife(s),
        Procedure::MarkAndChoose => run_mark_and_choose(s),
        Procedure::BoundedCutAndChoose => run_bounded_cut_and_choose(s),
    }
}
