use std::collections::BTreeMap;

use crate::axioms::{Property, PropertyReport, Witness};
use crate::procedures::{Outcome, PlayerId};
use crate::rational::Rational;
use crate::valuation::Valuation;

type Valuations = BTreeMap<PlayerId, Valuation>;

fn ratio(value: Rational, parts: usize) -> Rational {
    value / Rational::from_integer(parts.into())
}

/// Every player gets at least `1/n` of their total value.
pub fn check_proportional(o: &Outcome, valuations: &Valuations) -> PropertyReport {
    let n = valuations.len();
    shortfall_report(Property::Proportional, o, valuations, |_, v| ratio(v.total(), n))
}

/// Every player gets at least `1/(n - k)` of their value of the cake that
/// remained on arrival, `k` being the departures before that arrival.
pub fn check_forward_proportional(o: &Outcome, valuations: &Valuations) -> PropertyReport {
    let n = valuations.len();
    shortfall_report(Property::ForwardProportional, o, valuations, |p, v| {
        let snap = &o.arrival_snapshot[&p];
        ratio(v.value(&snap.remaining), n - snap.departed)
    })
}

fn shortfall_report(
    property: Property,
    o: &Outcome,
    valuations: &Valuations,
    required: impl Fn(PlayerId, &Valuation) -> Rational,
) -> PropertyReport {
    let mut per_player = BTreeMap::new();
    let mut witness = None;
    for (&p, v) in valuations {
        let value = o.own_value(p, v);
        let needed = required(p, v);
        let ok = value >= needed;
        if !ok && witness.is_none() {
            witness = Some(Witness::Shortfall {
                player: p,
                value,
                required: needed,
            });
        }
        per_player.insert(p, ok);
    }
    PropertyReport::from_players(property, per_player, witness)
}

/// Which other allocations a player compares themselves with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvyMode {
    /// Every other allocation.
    Full,
    /// Allocations made after the player arrived.
    Forward,
    /// Allocations made after the player arrived and before they departed.
    Immediate,
}

impl EnvyMode {
    pub fn property(self) -> Property {
        match self {
            EnvyMode::Full => Property::EnvyFree,
            EnvyMode::Forward => Property::ForwardEnvyFree,
            EnvyMode::Immediate => Property::ImmediatelyEnvyFree,
        }
    }
}

/// No player values an in-window allocation above their own.
pub fn check_envy(o: &Outcome, valuations: &Valuations, mode: EnvyMode) -> PropertyReport {
    let mut per_player = BTreeMap::new();
    let mut witness = None;
    for (&p, v) in valuations {
        let own_value = o.own_value(p, v);
        let arrived = o.arrival_index(p);
        let departed = o.departure_index(p);
        let mut ok = true;
        for &q in valuations.keys().filter(|&&q| q != p) {
            let q_departed = o.departure_index(q);
            let visible = match mode {
                EnvyMode::Full => true,
                EnvyMode::Forward => q_departed > arrived,
                EnvyMode::Immediate => q_departed > arrived && q_departed < departed,
            };
            if !visible {
                continue;
            }
            let other_value = v.value(o.piece(q));
            if other_value > own_value {
                ok = false;
                if witness.is_none() {
                    witness = Some(Witness::Envy {
                        envious: p,
                        envied: q,
                        own_value: own_value.clone(),
                        other_value,
                    });
                }
                break;
            }
        }
        per_player.insert(p, ok);
    }
    PropertyReport::from_players(mode.property(), per_player, witness)
}

/// All players value their own allocation equally.
pub fn check_equitable(o: &Outcome, valuations: &Valuations) -> PropertyReport {
    let values: BTreeMap<PlayerId, Rational> = valuations
        .iter()
        .map(|(&p, v)| (p, o.own_value(p, v)))
        .collect();
    let mut distinct = values.values();
    let first = distinct.next();
    let equal = distinct.all(|v| Some(v) == first);
    PropertyReport::global(
        Property::Equitable,
        (!equal).then_some(Witness::UnequalValues(values)),
    )
}
