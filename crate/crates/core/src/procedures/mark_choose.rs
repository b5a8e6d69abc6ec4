use crate::error::EngineError;
use crate::procedures::session::Session;
use crate::procedures::strategy::select_least;
use crate::procedures::{Event, Outcome, Scenario};

/// Online mark-and-choose: the waiting player marks the remaining cake into
/// as many equal-value pieces as there are unallocated players; the next
/// arrival hands them the piece it values least and then marks what is left.
/// The last arrival keeps the remainder.
pub fn run_mark_and_choose(s: &Scenario) -> Result<Outcome, EngineError> {
    s.validate()?;
    let mut session = Session::new(s);
    let mut marker = session.arrive().expect("at least two players");
    let mut marks = s
        .effective_valuation(marker)?
        .mark_equal(&session.remaining, session.unallocated());
    session.record(Event::Mark {
        marker,
        pieces: marks.clone(),
    });
    while let Some(chooser) = session.arrive() {
        let pick = select_least(s.effective_valuation(chooser)?, &marks);
        let piece = marks.swap_remove(pick);
        session.record(Event::SelectFor {
            chooser,
            piece: piece.clone(),
            recipient: marker,
        });
        session.depart(marker, piece);
        if session.pending_arrivals() == 0 {
            session.depart_with_rest(chooser);
            break;
        }
        marks = s
            .effective_valuation(chooser)?
            .mark_equal(&session.remaining, session.unallocated());
        session.record(Event::Mark {
            marker: chooser,
            pieces: marks.clone(),
        });
        marker = chooser;
    }
    Ok(session.finish())
}
