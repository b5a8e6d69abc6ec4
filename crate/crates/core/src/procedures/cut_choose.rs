use crate::error::EngineError;
use crate::piece::Piece;
use crate::procedures::session::Session;
use crate::procedures::strategy::{accept_decision, cut_slice};
use crate::procedures::{Event, Knowledge, Outcome, Scenario};

/// Cut and acceptance fractions for the cut-and-choose family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum CutRules {
    /// Everyone knows `n`.
    Exact,
    /// Only the bound `n_max` is known.
    Bounded { n_max: usize, knowledge: Knowledge },
}

/// What an arriving player can see when an offer is made to them.
pub(crate) struct OfferContext<'a> {
    pub departed: usize,
    pub unallocated: usize,
    pub is_last: bool,
    pub remaining: &'a Piece,
}

impl CutRules {
    /// Denominator of the share the cutter cuts off.
    pub fn cut_parts(self, departed: usize, unallocated: usize) -> usize {
        match self {
            CutRules::Exact => unallocated,
            CutRules::Bounded { n_max, .. } => (n_max - departed).max(1),
        }
    }

    /// Denominator of the share an arriving player insists on.
    pub fn accept_parts(self, ctx: &OfferContext<'_>) -> usize {
        match self {
            CutRules::Exact => ctx.unallocated,
            CutRules::Bounded { n_max, knowledge } => match knowledge {
                Knowledge::KnownPositionKnownLast if ctx.is_last => 2,
                Knowledge::KnownPositionKnownLast => n_max - ctx.departed,
                Knowledge::UnknownPositionKnownLast if ctx.is_last => 2,
                Knowledge::UnknownPositionKnownLast => {
                    // Only an untouched cake reveals that nobody has left yet.
                    let assumed = if ctx.remaining.is_whole() { 0 } else { 1 };
                    n_max - assumed
                }
                Knowledge::UnknownLast => n_max - ctx.departed,
            },
        }
    }

    /// Whether a waiting player knows nobody else is coming.
    pub fn last_is_known(self) -> bool {
        !matches!(
            self,
            CutRules::Bounded {
                knowledge: Knowledge::UnknownLast,
                ..
            }
        )
    }
}

/// Online cut-and-choose: the waiting player cuts a leftmost slice worth a
/// `1/j` share of the remaining cake (`j` players still unallocated); the next
/// arrival either takes it or declines, in which case the cutter leaves with it
/// and the arrival becomes the cutter.
pub fn run_cut_and_choose(s: &Scenario) -> Result<Outcome, EngineError> {
    s.validate()?;
    play(s, CutRules::Exact)
}

pub(crate) fn play(s: &Scenario, rules: CutRules) -> Result<Outcome, EngineError> {
    let mut session = Session::new(s);
    let mut cutter = session.arrive().expect("at least two players");
    loop {
        if session.pending_arrivals() == 0 && rules.last_is_known() {
            session.depart_with_rest(cutter);
            break;
        }
        let parts = rules.cut_parts(session.departed(), session.unallocated());
        let slice = cut_slice(s.effective_valuation(cutter)?, &session.remaining, parts);
        session.record(Event::CutOffer {
            cutter,
            slice: slice.clone(),
        });
        let Some(arrival) = session.arrive() else {
            // Nobody came: the clock runs out and the cutter keeps everything.
            session.record(Event::Timeout(cutter));
            session.depart_with_rest(cutter);
            break;
        };
        let ctx = OfferContext {
            departed: session.departed(),
            unallocated: session.unallocated(),
            is_last: session.pending_arrivals() == 0,
            remaining: &session.remaining,
        };
        let parts = rules.accept_parts(&ctx);
        let v = s.effective_valuation(arrival)?;
        if accept_decision(v, &slice, &session.remaining, parts) {
            session.record(Event::Accept {
                player: arrival,
                slice: slice.clone(),
            });
            session.depart(arrival, slice);
        } else {
            session.record(Event::Decline {
                player: arrival,
                slice: slice.clone(),
            });
            session.depart(cutter, slice);
            cutter = arrival;
        }
    }
    Ok(session.finish())
}
