use crate::error::EngineError;
use crate::piece::split_prefix;
use crate::procedures::session::Session;
use crate::procedures::strategy::knife_call_point;
use crate::procedures::{Event, Outcome, PlayerId, Scenario};
use crate::rational::Rational;

/// Online moving knife with a window of `k` present players.
///
/// Each round every present player calls at their `1/j` point, `j` being the
/// number of players not yet allocated. The earliest call wins (ties go to the
/// earliest arrival) and its caller departs with the prefix. The next player
/// then arrives, or the window shrinks once everyone is in. The final player
/// takes what is left.
pub fn run_moving_knife(s: &Scenario) -> Result<Outcome, EngineError> {
    s.validate()?;
    let mut session = Session::new(s);
    let mut present: Vec<PlayerId> = (0..s.window_size())
        .filter_map(|_| session.arrive())
        .collect();
    let mut round = 0;
    while session.unallocated() > 1 {
        round += 1;
        let unallocated = session.unallocated();
        let mut winner: Option<(usize, Rational)> = None;
        for (slot, &p) in present.iter().enumerate() {
            let position = knife_call_point(s.effective_valuation(p)?, &session.remaining, unallocated);
            session.record(Event::KnifeCall {
                player: p,
                position: position.clone(),
                round,
            });
            if winner.as_ref().is_none_or(|(_, best)| position < *best) {
                winner = Some((slot, position));
            }
        }
        let (slot, cut) = winner.expect("window is never empty");
        let player = present.remove(slot);
        let (slice, _) = split_prefix(&session.remaining, &cut);
        session.depart(player, slice);
        if let Some(next) = session.arrive() {
            present.push(next);
        }
    }
    let last = present.pop().expect("one player remains");
    session.depart_with_rest(last);
    Ok(session.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::procedures::Procedure;
    use crate::rational::{int, rat};
    use crate::valuation::Valuation;
    use crate::Piece;

    #[test]
    fn full_window_is_dubins_spanier() {
        let u = Valuation::uniform();
        let s = Scenario::new(Procedure::MovingKnife, vec![u.clone(), u.clone(), u.clone()])
            .with_window(3);
        let o = run_moving_knife(&s).unwrap();
        // All three present; ties go to the earliest arrival.
        assert_eq!(o.piece(PlayerId(1)), &Piece::interval(int(0), rat(1, 3)).unwrap());
        assert_eq!(o.piece(PlayerId(2)), &Piece::interval(rat(1, 3), rat(2, 3)).unwrap());
        assert_eq!(o.piece(PlayerId(3)), &Piece::interval(rat(2, 3), int(1)).unwrap());
        let arrivals = o
            .trace
            .iter()
            .take(3)
            .filter(|e| matches!(e, Event::Arrive(_)))
            .count();
        assert_eq!(arrivals, 3);
    }
}
