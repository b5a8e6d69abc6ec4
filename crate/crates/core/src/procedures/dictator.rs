use crate::error::EngineError;
use crate::piece::Piece;
use crate::procedures::session::Session;
use crate::procedures::{Outcome, Scenario};

/// Gives the whole cake to the first arrival; everyone after leaves empty-handed.
pub fn run_dictator(s: &Scenario) -> Result<Outcome, EngineError> {
    s.validate()?;
    let mut session = Session::new(s);
    let first = session.arrive().expect("at least two players");
    session.depart_with_rest(first);
    while let Some(p) = session.arrive() {
        session.depart(p, Piece::empty());
    }
    Ok(session.finish())
}
