use crate::error::EngineError;
use crate::procedures::Procedure;
use crate::rational::{int, one, zero, Rational};
use crate::valuation::Valuation;

/// Valuations under which `procedure`, with players arriving in id order,
/// gives player `i` exactly `[cuts[i-1], cuts[i]]`.
///
/// `cuts` runs `0 = a_1 < a_2 < … < a_{n+1} = 1`.
pub fn surjectivity_valuations(
    procedure: Procedure,
    cuts: &[Rational],
) -> Result<Vec<Valuation>, EngineError> {
    let n = cuts.len().saturating_sub(1);
    if n < 2 {
        return Err(EngineError::InvalidScenario(
            "need at least three cut positions".into(),
        ));
    }
    if cuts[0] != zero() || cuts[n] != one() || cuts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(EngineError::InvalidScenario(
            "cuts must increase strictly from 0 to 1".into(),
        ));
    }
    let a = |i: usize| cuts[i - 1].clone();
    let build = |parts: Vec<(Rational, Rational, i64)>| {
        let raw: Vec<_> = parts
            .into_iter()
            .filter(|(lo, hi, _)| lo < hi)
            .map(|(lo, hi, v)| (lo, hi, int(v)))
            .collect();
        Valuation::from_segments(&raw).map_err(EngineError::from)
    };
    let last = build(vec![(zero(), a(n), 0), (a(n), one(), 1)])?;
    let mut out = Vec::with_capacity(n);
    match procedure {
        Procedure::CutAndChoose | Procedure::BoundedCutAndChoose => {
            // Zero on the next player's slice so they decline the offer.
            for i in 1..n - 1 {
                out.push(build(vec![
                    (zero(), a(i), 0),
                    (a(i), a(i + 1), 1),
                    (a(i + 1), a(i + 2), 0),
                    (a(i + 2), one(), (n - i) as i64),
                ])?);
            }
            out.push(build(vec![
                (zero(), a(n - 1), 0),
                (a(n - 1), a(n), 1),
                (a(n), one(), 1),
            ])?);
        }
        Procedure::MovingKnife | Procedure::MarkAndChoose => {
            for i in 1..n {
                out.push(build(vec![
                    (zero(), a(i), 0),
                    (a(i), a(i + 1), 1),
                    (a(i + 1), one(), (n - i) as i64),
                ])?);
            }
        }
        Procedure::Dictator => {
            return Err(EngineError::InvalidScenario(
                "the dictator procedure is not surjective".into(),
            ))
        }
    }
    out.push(last);
    Ok(out)
}
