use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::axioms::{Property, PropertyReport, Witness};
use crate::error::EngineError;
use crate::procedures::{run, run_as, Outcome, PlayerId, Procedure, Scenario};
use crate::rational::Rational;
use crate::valuation::Valuation;

pub const MAX_ORDER_SCAN_PLAYERS: usize = 6;

/// A player lost value by arriving earlier, everyone else keeping their
/// relative order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderViolation {
    pub player: PlayerId,
    pub before_order: Vec<PlayerId>,
    pub after_order: Vec<PlayerId>,
    pub before_value: Rational,
    pub after_value: Rational,
}

impl fmt::Display for OrderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |o: &[PlayerId]| o.iter().map(|p| p.0.to_string()).join(",");
        write!(
            f,
            "({}: {} → {}) moving ({}) → ({})",
            self.player,
            self.before_value,
            self.after_value,
            show(&self.before_order),
            show(&self.after_order)
        )
    }
}

/// Outcomes for every arrival order plus all monotonicity violations.
#[derive(Debug, Clone)]
pub struct OrderScan {
    pub procedure: Procedure,
    pub runs: Vec<(Vec<PlayerId>, Outcome)>,
    /// Violations starting from the base order come first.
    pub violations: Vec<OrderViolation>,
}

/// Runs `procedure` under every arrival order and compares each order with
/// every order obtained by moving one player strictly earlier.
pub fn scan_orders(base: &Scenario, procedure: Procedure) -> Result<OrderScan, EngineError> {
    let n = base.n();
    if n > MAX_ORDER_SCAN_PLAYERS {
        return Err(EngineError::TooLarge(format!(
            "{n} players exceed the order scan limit of {MAX_ORDER_SCAN_PLAYERS}"
        )));
    }
    let ids: Vec<PlayerId> = base.players.keys().copied().collect();
    let mut runs = Vec::new();
    let mut values: BTreeMap<Vec<PlayerId>, BTreeMap<PlayerId, Rational>> = BTreeMap::new();
    for order in ids.iter().copied().permutations(n) {
        let mut s = base.clone();
        s.arrival_order = order.clone();
        let outcome = run_as(&s, procedure)?;
        let own = s
            .players
            .iter()
            .map(|(&p, v)| (p, outcome.own_value(p, v)))
            .collect();
        values.insert(order.clone(), own);
        runs.push((order, outcome));
    }
    let mut violations = Vec::new();
    for (order, _) in &runs {
        for from in 1..n {
            let player = order[from];
            for to in 0..from {
                let mut moved = order.clone();
                moved.remove(from);
                moved.insert(to, player);
                let before_value = &values[order][&player];
                let after_value = &values[&moved][&player];
                if after_value < before_value {
                    violations.push(OrderViolation {
                        player,
                        before_order: order.clone(),
                        after_order: moved,
                        before_value: before_value.clone(),
                        after_value: after_value.clone(),
                    });
                }
            }
        }
    }
    violations.sort_by_key(|v| {
        let from = v.before_order.iter().position(|p| *p == v.player);
        let to = v.after_order.iter().position(|p| *p == v.player);
        (v.before_order != base.arrival_order, from.zip(to).map(|(f, t)| f - t))
    });
    Ok(OrderScan {
        procedure,
        runs,
        violations,
    })
}

/// Order monotonicity over all arrival orders of `base`'s players.
pub fn check_order_monotonicity(
    base: &Scenario,
    procedure: Procedure,
) -> Result<PropertyReport, EngineError> {
    let scan = scan_orders(base, procedure)?;
    let per_player = base
        .players
        .keys()
        .map(|&p| (p, !scan.violations.iter().any(|v| v.player == p)))
        .collect();
    let witness = scan.violations.first().cloned().map(Witness::OrderViolation);
    Ok(PropertyReport::from_players(
        Property::OrderMonotonic,
        per_player,
        witness,
    ))
}

/// Compares player `p`'s true payoff when reporting truthfully with their
/// payoff when acting on `misreport`. Fails when the lie strictly pays.
pub fn check_manipulation(
    s: &Scenario,
    p: PlayerId,
    misreport: &Valuation,
) -> Result<PropertyReport, EngineError> {
    let truth = s.true_valuation(p)?;
    let mut honest = s.clone();
    honest.misreports.remove(&p);
    let lying = s.clone().with_misreport(p, misreport.clone());
    let truthful_value = run(&honest)?.own_value(p, truth);
    let misreport_value = run(&lying)?.own_value(p, truth);
    let gained = misreport_value > truthful_value;
    let witness = gained.then_some(Witness::Manipulation {
        player: p,
        truthful_value,
        misreport_value,
    });
    Ok(PropertyReport::from_players(
        Property::Truthful,
        BTreeMap::from([(p, !gained)]),
        witness,
    ))
}
