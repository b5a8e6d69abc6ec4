//! Cake geometry: half-open intervals of the unit interval and canonical
//! finite unions of them.

use std::fmt;

use num_traits::Zero;

use crate::error::CakeError;
use crate::rational::{one, zero, Rational};

/// A half-open interval `[lo, hi)` inside `[0, 1]`. Empty when `lo == hi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, CakeError> {
        if lo < zero() || hi > one() || lo > hi {
            return Err(CakeError::BadInterval { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    /// Overlap with `[lo, hi)`, if non-empty.
    pub fn clip(&self, lo: &Rational, hi: &Rational) -> Option<Interval> {
        let a = (&self.lo).max(lo).clone();
        let b = (&self.hi).min(hi).clone();
        (a < b).then_some(Interval { lo: a, hi: b })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// A canonical union of intervals: sorted, pairwise disjoint, non-empty and
/// non-adjacent. Every constructor canonicalizes, so structural equality is
/// set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Piece {
    intervals: Vec<Interval>,
}

impl Piece {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn whole() -> Self {
        Self {
            intervals: vec![Interval {
                lo: zero(),
                hi: one(),
            }],
        }
    }

    pub fn interval(lo: Rational, hi: Rational) -> Result<Self, CakeError> {
        Ok(Self::from_intervals([Interval::new(lo, hi)?]))
    }

    pub fn from_intervals(intervals: impl IntoIterator<Item = Interval>) -> Self {
        let mut items: Vec<Interval> = intervals.into_iter().filter(|i| !i.is_empty()).collect();
        items.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut merged: Vec<Interval> = Vec::with_capacity(items.len());
        for iv in items {
            match merged.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => merged.push(iv),
            }
        }
        Self { intervals: merged }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn length(&self) -> Rational {
        self.intervals
            .iter()
            .fold(Rational::zero(), |acc, iv| acc + iv.length())
    }

    /// Leftmost point of the piece.
    pub fn start(&self) -> Option<&Rational> {
        self.intervals.first().map(|iv| &iv.lo)
    }

    /// Rightmost point of the piece.
    pub fn end(&self) -> Option<&Rational> {
        self.intervals.last().map(|iv| &iv.hi)
    }

    pub fn is_whole(&self) -> bool {
        *self == Self::whole()
    }

    pub fn union(&self, other: &Piece) -> Piece {
        Self::from_intervals(self.intervals.iter().chain(&other.intervals).cloned())
    }

    /// `self ∩ [lo, hi)`.
    pub fn clip(&self, lo: &Rational, hi: &Rational) -> Piece {
        Piece {
            intervals: self
                .intervals
                .iter()
                .filter_map(|iv| iv.clip(lo, hi))
                .collect(),
        }
    }

    pub fn intersection(&self, other: &Piece) -> Piece {
        Self::from_intervals(
            other
                .intervals
                .iter()
                .flat_map(|o| self.clip(&o.lo, &o.hi).intervals),
        )
    }

    /// `self \ other`.
    pub fn difference(&self, other: &Piece) -> Piece {
        let mut out = Vec::new();
        for iv in &self.intervals {
            let mut cursor = iv.lo.clone();
            for o in &other.intervals {
                if o.hi <= cursor || o.lo >= iv.hi {
                    continue;
                }
                if o.lo > cursor {
                    out.push(Interval {
                        lo: cursor.clone(),
                        hi: o.lo.clone(),
                    });
                }
                cursor = (&cursor).max(&o.hi).clone();
                if cursor >= iv.hi {
                    break;
                }
            }
            if cursor < iv.hi {
                out.push(Interval {
                    lo: cursor,
                    hi: iv.hi.clone(),
                });
            }
        }
        Self::from_intervals(out)
    }

    pub fn is_subset_of(&self, other: &Piece) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint_from(&self, other: &Piece) -> bool {
        self.intersection(other).is_empty()
    }
}

/// Splits `region` at position `x` into the part strictly left of `x` and the
/// remainder. Both halves are canonical and their union is `region`.
pub fn split_prefix(region: &Piece, x: &Rational) -> (Piece, Piece) {
    (region.clip(&zero(), x), region.clip(x, &one()))
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("∅");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str("∪")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}
