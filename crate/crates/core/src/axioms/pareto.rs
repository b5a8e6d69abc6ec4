use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::Zero;

use crate::axioms::{Property, PropertyReport, Witness};
use crate::error::EngineError;
use crate::piece::{Interval, Piece};
use crate::procedures::{Outcome, PlayerId};
use crate::rational::{one, zero, Rational};
use crate::valuation::Valuation;

pub const MAX_PERMUTATION_PLAYERS: usize = 8;
/// Four players over ten atoms.
pub const MAX_ATOM_ASSIGNMENTS: u128 = 1 << 20;

type Valuations = BTreeMap<PlayerId, Valuation>;

fn dominates(candidate: &[Rational], baseline: &[Rational], weak: bool) -> bool {
    let pairs = candidate.iter().zip(baseline);
    if weak {
        pairs.clone().all(|(c, b)| c > b)
    } else {
        pairs.clone().all(|(c, b)| c >= b) && pairs.clone().any(|(c, b)| c > b)
    }
}

fn property(weak: bool, atoms: bool) -> Property {
    match (weak, atoms) {
        (false, false) => Property::ParetoPermutation,
        (true, false) => Property::WeakParetoPermutation,
        (false, true) => Property::ParetoAtoms,
        (true, true) => Property::WeakParetoAtoms,
    }
}

/// Searches every reassignment of the allocated pieces among the players for
/// one that dominates the outcome (strictly better for all when `weak`; at
/// least as good for all and better for one otherwise).
pub fn check_pareto_permutation(
    o: &Outcome,
    valuations: &Valuations,
    weak: bool,
) -> Result<PropertyReport, EngineError> {
    let players: Vec<PlayerId> = valuations.keys().copied().collect();
    let n = players.len();
    if n > MAX_PERMUTATION_PLAYERS {
        return Err(EngineError::TooLarge(format!(
            "{n} players exceed the permutation search limit of {MAX_PERMUTATION_PLAYERS}"
        )));
    }
    let pieces: Vec<&Piece> = players.iter().map(|p| o.piece(*p)).collect();
    let table: Vec<Vec<Rational>> = players
        .iter()
        .map(|p| pieces.iter().map(|piece| valuations[p].value(piece)).collect())
        .collect();
    let baseline: Vec<Rational> = (0..n).map(|i| table[i][i].clone()).collect();
    let witness = (0..n).permutations(n).find_map(|perm| {
        let values: Vec<Rational> = perm.iter().enumerate().map(|(i, &j)| table[i][j].clone()).collect();
        dominates(&values, &baseline, weak).then(|| Witness::Dominated {
            allocation: players
                .iter()
                .zip(&perm)
                .map(|(p, &j)| (*p, pieces[j].clone()))
                .collect(),
            values: players.iter().copied().zip(values).collect(),
            baseline: players.iter().copied().zip(baseline.iter().cloned()).collect(),
        })
    });
    Ok(PropertyReport::global(property(weak, false), witness)
        .with_note("certified only against permutations of the allocated pieces"))
}

/// The common refinement of all valuation breakpoints and allocation
/// boundaries, as single-interval pieces from left to right.
pub fn atoms(o: &Outcome, valuations: &Valuations) -> Vec<Piece> {
    let mut cuts: BTreeSet<Rational> = BTreeSet::from([zero(), one()]);
    for v in valuations.values() {
        cuts.extend(v.breakpoints().cloned());
    }
    for piece in o.allocation.values() {
        for iv in piece.intervals() {
            cuts.insert(iv.lo().clone());
            cuts.insert(iv.hi().clone());
        }
    }
    cuts.into_iter()
        .tuple_windows()
        .map(|(a, b)| Piece::from_intervals([Interval::new(a, b).expect("ordered cuts")]))
        .collect()
}

struct AtomSearch<'a> {
    /// `values[p][a]`: player `p`'s value of atom `a`.
    values: &'a [Vec<Rational>],
    /// `suffix[p][a]`: player `p`'s value of atoms `a..`.
    suffix: Vec<Vec<Rational>>,
    baseline: &'a [Rational],
    weak: bool,
    owner: Vec<usize>,
    current: Vec<Rational>,
}

impl AtomSearch<'_> {
    fn feasible(&self, next: usize) -> bool {
        (0..self.baseline.len()).all(|p| {
            let best = &self.current[p] + &self.suffix[p][next];
            if self.weak {
                best > self.baseline[p]
            } else {
                best >= self.baseline[p]
            }
        })
    }

    fn search(&mut self, atom: usize) -> bool {
        if !self.feasible(atom) {
            return false;
        }
        if atom == self.owner.len() {
            return dominates(&self.current, self.baseline, self.weak);
        }
        for p in 0..self.baseline.len() {
            self.owner[atom] = p;
            self.current[p] += &self.values[p][atom];
            if self.search(atom + 1) {
                return true;
            }
            self.current[p] -= &self.values[p][atom];
        }
        false
    }
}

/// Searches every assignment of whole atoms to players for a (weakly)
/// dominating allocation. Subsumes the permutation search.
pub fn check_pareto_atoms(
    o: &Outcome,
    valuations: &Valuations,
    weak: bool,
) -> Result<PropertyReport, EngineError> {
    let players: Vec<PlayerId> = valuations.keys().copied().collect();
    let atoms = atoms(o, valuations);
    let space = (players.len() as u128).checked_pow(atoms.len() as u32);
    if space.is_none_or(|s| s > MAX_ATOM_ASSIGNMENTS) {
        return Err(EngineError::TooLarge(format!(
            "{} players over {} atoms is too many assignments; use the permutation check",
            players.len(),
            atoms.len()
        )));
    }
    let values: Vec<Vec<Rational>> = players
        .iter()
        .map(|p| atoms.iter().map(|a| valuations[p].value(a)).collect())
        .collect();
    let suffix = values
        .iter()
        .map(|row| {
            let mut acc = vec![Rational::zero(); row.len() + 1];
            for a in (0..row.len()).rev() {
                acc[a] = &acc[a + 1] + &row[a];
            }
            acc
        })
        .collect();
    let baseline: Vec<Rational> = players
        .iter()
        .map(|p| o.own_value(*p, &valuations[p]))
        .collect();
    let mut search = AtomSearch {
        values: &values,
        suffix,
        baseline: &baseline,
        weak,
        owner: vec![0; atoms.len()],
        current: vec![Rational::zero(); players.len()],
    };
    let witness = search.search(0).then(|| {
        let allocation = players
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let piece = atoms
                    .iter()
                    .zip(&search.owner)
                    .filter(|(_, owner)| **owner == i)
                    .fold(Piece::empty(), |acc, (atom, _)| acc.union(atom));
                (*p, piece)
            })
            .collect();
        Witness::Dominated {
            allocation,
            values: players.iter().copied().zip(search.current.iter().cloned()).collect(),
            baseline: players.iter().copied().zip(baseline.iter().cloned()).collect(),
        }
    });
    Ok(PropertyReport::global(property(weak, true), witness)
        .with_note("certified only against reassignments of whole atoms"))
}
