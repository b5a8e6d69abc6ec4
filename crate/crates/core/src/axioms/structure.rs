use crate::axioms::{Property, PropertyReport, Witness};
use crate::error::EngineError;
use crate::procedures::{run, Outcome, PlayerId, Scenario};
use crate::rational::Rational;

/// Each departing player's cake lies entirely left of the cake of every player
/// who departs later. Empty allocations are ignored.
pub fn check_sequential(o: &Outcome) -> PropertyReport {
    let order: Vec<PlayerId> = o
        .departure_order()
        .into_iter()
        .filter(|p| !o.piece(*p).is_empty())
        .collect();
    let mut witness = None;
    'outer: for (i, &earlier) in order.iter().enumerate() {
        let right_edge = o.piece(earlier).end().expect("non-empty");
        for &later in &order[i + 1..] {
            if o.piece(later).start().expect("non-empty") < right_edge {
                witness = Some(Witness::OutOfOrder { earlier, later });
                break 'outer;
            }
        }
    }
    PropertyReport::global(Property::Sequential, witness)
}

/// Reruns the scenario with player `p`'s valuation (true and reported) scaled
/// by `c` and compares the two allocations piece for piece.
pub fn check_scale_invariance(
    s: &Scenario,
    p: PlayerId,
    c: &Rational,
) -> Result<PropertyReport, EngineError> {
    let before = run(s)?;
    let mut scaled = s.clone();
    let truth = scaled.players.get_mut(&p).ok_or(EngineError::UnknownPlayer(p))?;
    *truth = truth.scale(c)?;
    if let Some(reported) = scaled.misreports.get_mut(&p) {
        *reported = reported.scale(c)?;
    }
    let after = run(&scaled)?;
    let witness = (before.allocation != after.allocation).then(|| Witness::ScaleChanged {
        player: p,
        factor: c.clone(),
    });
    Ok(PropertyReport::global(Property::ScaleInvariant, witness))
}
