//! Piecewise-constant valuations and the value-based cutting primitives.

use num_traits::{Signed, Zero};

use crate::error::CakeError;
use crate::piece::{split_prefix, Interval, Piece};
use crate::rational::{one, zero, Rational};

/// One constant-density stretch of a valuation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    pub interval: Interval,
    /// Value per unit length.
    pub density: Rational,
}

/// An additive value measure on `[0, 1]` with constant density on each
/// segment. Segments partition the unit interval; totals are not normalized.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Valuation {
    segments: Vec<Segment>,
}

impl Valuation {
    /// Builds a valuation from `(lo, hi, value of [lo, hi))` triples that must
    /// tile `[0, 1]` left to right.
    pub fn from_segments(raw: &[(Rational, Rational, Rational)]) -> Result<Self, CakeError> {
        if raw.is_empty() {
            return Err(CakeError::MalformedValuation("no segments".into()));
        }
        let mut cursor = zero();
        let mut segments = Vec::with_capacity(raw.len());
        for (lo, hi, amount) in raw {
            if *lo != cursor {
                let what = if *lo > cursor { "gap" } else { "overlap" };
                return Err(CakeError::MalformedValuation(format!(
                    "{what} at {cursor}: next segment starts at {lo}"
                )));
            }
            if hi <= lo {
                return Err(CakeError::MalformedValuation(format!(
                    "segment [{lo},{hi}] has no length"
                )));
            }
            if amount.is_negative() {
                return Err(CakeError::MalformedValuation(format!(
                    "negative value {amount} on [{lo},{hi}]"
                )));
            }
            let interval = Interval::new(lo.clone(), hi.clone())?;
            let density = amount / interval.length();
            segments.push(Segment { interval, density });
            cursor = hi.clone();
        }
        if cursor != one() {
            return Err(CakeError::MalformedValuation(format!(
                "segments end at {cursor}, not 1"
            )));
        }
        let v = Self { segments };
        if v.total().is_zero() {
            return Err(CakeError::ZeroValuation);
        }
        Ok(v)
    }

    /// The uniform valuation of total 1.
    pub fn uniform() -> Self {
        Self {
            segments: vec![Segment {
                interval: Interval::new(zero(), one()).expect("unit interval"),
                density: one(),
            }],
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// The `(lo, hi, value)` triples this valuation was built from.
    pub fn raw_segments(&self) -> Vec<(Rational, Rational, Rational)> {
        self.segments
            .iter()
            .map(|s| {
                (
                    s.interval.lo().clone(),
                    s.interval.hi().clone(),
                    &s.density * s.interval.length(),
                )
            })
            .collect()
    }

    /// Segment boundaries strictly inside `(0, 1)`.
    pub fn breakpoints(&self) -> impl Iterator<Item = &Rational> {
        self.segments.iter().skip(1).map(|s| s.interval.lo())
    }

    pub fn total(&self) -> Rational {
        self.value(&Piece::whole())
    }

    pub fn value(&self, piece: &Piece) -> Rational {
        let mut acc = Rational::zero();
        for iv in piece.intervals() {
            for seg in &self.segments {
                if seg.interval.hi() <= iv.lo() {
                    continue;
                }
                if seg.interval.lo() >= iv.hi() {
                    break;
                }
                if let Some(overlap) = seg.interval.clip(iv.lo(), iv.hi()) {
                    acc += &seg.density * overlap.length();
                }
            }
        }
        acc
    }

    /// Multiplies every density by `c > 0`.
    pub fn scale(&self, c: &Rational) -> Result<Self, CakeError> {
        if !c.is_positive() {
            return Err(CakeError::Domain(format!("scale factor {c} must be positive")));
        }
        Ok(Self {
            segments: self
                .segments
                .iter()
                .map(|s| Segment {
                    interval: s.interval.clone(),
                    density: &s.density * c,
                })
                .collect(),
        })
    }

    /// Pieces of `region` split by this valuation's segments, left to right,
    /// each paired with its density.
    fn walk<'a>(&'a self, region: &'a Piece) -> impl Iterator<Item = (Interval, &'a Rational)> + 'a {
        region.intervals().iter().flat_map(move |iv| {
            self.segments
                .iter()
                .filter_map(move |s| s.interval.clip(iv.lo(), iv.hi()).map(|o| (o, &s.density)))
        })
    }

    /// Smallest position `x` such that `value(region ∩ [0, x)) == target`.
    /// Target zero gives the region's left end (or 0 for an empty region).
    pub fn leftmost_prefix_point(
        &self,
        region: &Piece,
        target: &Rational,
    ) -> Result<Rational, CakeError> {
        if target.is_negative() {
            return Err(CakeError::Domain(format!("negative target {target}")));
        }
        if target.is_zero() {
            return Ok(region.start().cloned().unwrap_or_else(zero));
        }
        let mut acc = Rational::zero();
        for (piece, density) in self.walk(region) {
            if density.is_zero() {
                continue;
            }
            let chunk = density * piece.length();
            if &acc + &chunk >= *target {
                return Ok(piece.lo() + (target - &acc) / density);
            }
            acc += chunk;
        }
        Err(CakeError::InsufficientValue {
            target: target.clone(),
            available: acc,
        })
    }

    /// Leftmost point cutting off `1/parts` of this valuation's value of
    /// `region`. When the region is worthless to this valuation, cuts off
    /// `1/parts` of its length instead so no empty slice is produced.
    pub fn share_point(&self, region: &Piece, parts: usize) -> Rational {
        assert!(parts >= 1, "share of zero parts");
        let parts = Rational::from_integer(parts.into());
        let worth = self.value(region);
        if worth.is_zero() {
            length_prefix_point(region, &(region.length() / parts))
        } else {
            self.leftmost_prefix_point(region, &(worth / parts))
                .expect("share never exceeds region value")
        }
    }

    /// Divides `region` into `m` contiguous pieces (in left-to-right order) of
    /// equal value, cutting at leftmost points. A worthless region is divided
    /// by equal length instead.
    pub fn mark_equal(&self, region: &Piece, m: usize) -> Vec<Piece> {
        assert!(m >= 1, "cannot mark into zero pieces");
        let worth = self.value(region);
        let parts = Rational::from_integer(m.into());
        let mut pieces = Vec::with_capacity(m);
        let mut rest = region.clone();
        for i in 1..m {
            let step = Rational::from_integer(i.into());
            let x = if worth.is_zero() {
                length_prefix_point(region, &(region.length() * &step / &parts))
            } else {
                self.leftmost_prefix_point(region, &(&worth * &step / &parts))
                    .expect("fraction of region value")
            };
            let (head, tail) = split_prefix(&rest, &x);
            pieces.push(head);
            rest = tail;
        }
        pieces.push(rest);
        pieces
    }
}

/// Smallest position `x` with `length(region ∩ [0, x)) == target_len`.
pub fn length_prefix_point(region: &Piece, target_len: &Rational) -> Rational {
    if target_len.is_zero() {
        return region.start().cloned().unwrap_or_else(zero);
    }
    let mut acc = Rational::zero();
    for iv in region.intervals() {
        let len = iv.length();
        if &acc + &len >= *target_len {
            return iv.lo() + (target_len - &acc);
        }
        acc += len;
    }
    region.end().cloned().unwrap_or_else(one)
}
