use crate::error::EngineError;
use crate::procedures::cut_choose::{play, CutRules};
use crate::procedures::{Outcome, Scenario};

/// Cut-and-choose when players only know the bound `n_max`. Cuts are
/// `1/(n_max - k)` shares of the remaining cake (`k` players allocated).
/// Acceptance follows the scenario's knowledge case; when the last arrival is
/// not known, a waiting cutter who sees no further arrival times out and
/// takes the rest.
pub fn run_bounded_cut_and_choose(s: &Scenario) -> Result<Outcome, EngineError> {
    s.validate()?;
    let n_max = s.n_max.ok_or_else(|| {
        EngineError::Configuration("bounded cut-and-choose needs n_max".into())
    })?;
    play(
        s,
        CutRules::Bounded {
            n_max,
            knowledge: s.knowledge,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::piece::Piece;
    use crate::procedures::{run_cut_and_choose, Event, Knowledge, PlayerId, Procedure};
    use crate::rational::{int, rat};
    use crate::valuation::Valuation;

    fn uniform_pair() -> Scenario {
        Scenario::new(
            Procedure::BoundedCutAndChoose,
            vec![Valuation::uniform(), Valuation::uniform()],
        )
    }

    #[test]
    fn missing_bound_is_a_configuration_error() {
        let s = uniform_pair();
        assert!(matches!(
            run_bounded_cut_and_choose(&s),
            Err(EngineError::Configuration(_))
        ));
    }

    #[test]
    fn tight_bound_matches_unbounded() {
        let s = uniform_pair().with_bound(2, Knowledge::KnownPositionKnownLast);
        assert_eq!(
            run_bounded_cut_and_choose(&s).unwrap(),
            run_cut_and_choose(&s).unwrap()
        );
    }

    #[test]
    fn loose_bound_known_last_declines_quarter() {
        // Oracle: cut worth 1/4 of 1; the known-last arrival wants 1/2 of 1.
        let s = uniform_pair().with_bound(4, Knowledge::KnownPositionKnownLast);
        let o = run_bounded_cut_and_choose(&s).unwrap();
        let quarter = Piece::interval(int(0), rat(1, 4)).unwrap();
        assert_eq!(
            o.trace,
            vec![
                Event::Arrive(PlayerId(1)),
                Event::CutOffer {
                    cutter: PlayerId(1),
                    slice: quarter.clone()
                },
                Event::Arrive(PlayerId(2)),
                Event::Decline {
                    player: PlayerId(2),
                    slice: quarter.clone()
                },
                Event::Depart {
                    player: PlayerId(1),
                    piece: quarter.clone()
                },
                Event::Depart {
                    player: PlayerId(2),
                    piece: Piece::interval(rat(1, 4), int(1)).unwrap()
                },
            ]
        );
    }

    #[test]
    fn unknown_last_ends_in_timeout() {
        let s = uniform_pair().with_bound(4, Knowledge::UnknownLast);
        let o = run_bounded_cut_and_choose(&s).unwrap();
        assert!(o.trace.iter().any(|e| matches!(e, Event::Timeout(_))));
        let all = o
            .allocation
            .values()
            .fold(Piece::empty(), |acc, p| acc.union(p));
        assert!(all.is_whole());
    }
}
