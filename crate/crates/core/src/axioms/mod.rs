//! Property checkers for finished outcomes and for procedures as a whole.
//!
//! Checkers always score with the players' *true* valuations, even when the
//! run itself used misreports.

mod fairness;
pub mod oracle;
mod pareto;
mod strategic;
mod structure;
mod surjectivity;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::piece::Piece;
use crate::procedures::PlayerId;
use crate::rational::Rational;

pub use fairness::{
    check_envy, check_equitable, check_forward_proportional, check_proportional, EnvyMode,
};
pub use oracle::oracle_enumerate;
pub use pareto::{
    atoms, check_pareto_atoms, check_pareto_permutation, MAX_ATOM_ASSIGNMENTS,
    MAX_PERMUTATION_PLAYERS,
};
pub use strategic::{
    check_manipulation, check_order_monotonicity, scan_orders, OrderScan, OrderViolation,
    MAX_ORDER_SCAN_PLAYERS,
};
pub use structure::{check_scale_invariance, check_sequential};
pub use surjectivity::surjectivity_valuations;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Proportional,
    ForwardProportional,
    EnvyFree,
    ForwardEnvyFree,
    ImmediatelyEnvyFree,
    Equitable,
    ParetoPermutation,
    WeakParetoPermutation,
    ParetoAtoms,
    WeakParetoAtoms,
    Sequential,
    ScaleInvariant,
    OrderMonotonic,
    Truthful,
}

impl Property {
    pub const ALL: [Property; 14] = [
        Property::Proportional,
        Property::ForwardProportional,
        Property::EnvyFree,
        Property::ForwardEnvyFree,
        Property::ImmediatelyEnvyFree,
        Property::Equitable,
        Property::ParetoPermutation,
        Property::WeakParetoPermutation,
        Property::ParetoAtoms,
        Property::WeakParetoAtoms,
        Property::Sequential,
        Property::ScaleInvariant,
        Property::OrderMonotonic,
        Property::Truthful,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Proportional => "proportional",
            Property::ForwardProportional => "forward-proportional",
            Property::EnvyFree => "envy-free",
            Property::ForwardEnvyFree => "forward-envy-free",
            Property::ImmediatelyEnvyFree => "immediate-envy-free",
            Property::Equitable => "equitable",
            Property::ParetoPermutation => "pareto",
            Property::WeakParetoPermutation => "weak-pareto",
            Property::ParetoAtoms => "pareto-atoms",
            Property::WeakParetoAtoms => "weak-pareto-atoms",
            Property::Sequential => "sequential",
            Property::ScaleInvariant => "scale-invariant",
            Property::OrderMonotonic => "order-monotonic",
            Property::Truthful => "truthful",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property {s:?}"))
    }
}

/// Structured counterexample attached to a failed property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A player's own value falls short of what the property requires.
    Shortfall {
        player: PlayerId,
        value: Rational,
        required: Rational,
    },
    Envy {
        envious: PlayerId,
        envied: PlayerId,
        own_value: Rational,
        other_value: Rational,
    },
    UnequalValues(BTreeMap<PlayerId, Rational>),
    /// A reallocation that (weakly) dominates the outcome.
    Dominated {
        allocation: BTreeMap<PlayerId, Piece>,
        values: BTreeMap<PlayerId, Rational>,
        baseline: BTreeMap<PlayerId, Rational>,
    },
    OutOfOrder {
        earlier: PlayerId,
        later: PlayerId,
    },
    ScaleChanged {
        player: PlayerId,
        factor: Rational,
    },
    OrderViolation(OrderViolation),
    Manipulation {
        player: PlayerId,
        truthful_value: Rational,
        misreport_value: Rational,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Shortfall {
                player,
                value,
                required,
            } => write!(f, "{player} gets {value} < {required}"),
            Witness::Envy {
                envious,
                envied,
                own_value,
                other_value,
            } => write!(f, "{envious} envies {envied}: {other_value} > {own_value}"),
            Witness::UnequalValues(values) => {
                let parts: Vec<String> = values.iter().map(|(p, v)| format!("{p}={v}")).collect();
                write!(f, "own values differ: {}", parts.join(", "))
            }
            Witness::Dominated {
                allocation, values, ..
            } => {
                let parts: Vec<String> = allocation
                    .iter()
                    .map(|(p, piece)| format!("{p}→{piece} ({})", values[p]))
                    .collect();
                write!(f, "dominated by {}", parts.join(", "))
            }
            Witness::OutOfOrder { earlier, later } => {
                write!(f, "{earlier} departs first but {later} holds cake to its left")
            }
            Witness::ScaleChanged { player, factor } => {
                write!(f, "scaling {player} by {factor} changes the allocation")
            }
            Witness::OrderViolation(v) => write!(f, "{v}"),
            Witness::Manipulation {
                player,
                truthful_value,
                misreport_value,
            } => write!(f, "{player} gains by lying: {truthful_value} → {misreport_value}"),
        }
    }
}

/// Verdict of one property check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: Property,
    pub holds: bool,
    /// Per-player verdicts, for properties defined player by player.
    pub per_player: BTreeMap<PlayerId, bool>,
    /// Present exactly when `holds` is false.
    pub witness: Option<Witness>,
    /// Caveats such as the search class a verdict is certified within.
    pub note: Option<String>,
}

impl PropertyReport {
    pub(crate) fn from_players(
        property: Property,
        per_player: BTreeMap<PlayerId, bool>,
        witness: Option<Witness>,
    ) -> Self {
        let holds = per_player.values().all(|ok| *ok);
        debug_assert_eq!(holds, witness.is_none());
        Self {
            property,
            holds,
            per_player,
            witness,
            note: None,
        }
    }

    pub(crate) fn global(property: Property, witness: Option<Witness>) -> Self {
        Self {
            property,
            holds: witness.is_none(),
            per_player: BTreeMap::new(),
            witness,
            note: None,
        }
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}
