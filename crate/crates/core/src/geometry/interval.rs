//! One-dimensional exact regions: finite scalar sets and unions of closed
//! intervals.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::rational::{serde_str, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "serde_str")]
    pub lo: Rational,
    #[serde(with = "serde_str")]
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(v: Rational) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn shift(&self, by: &Rational) -> Interval {
        Interval {
            lo: &self.lo + by,
            hi: &self.hi + by,
        }
    }

    /// Intersection with `[lo, hi]`, either end possibly unbounded.
    pub fn clamp(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> Option<Interval> {
        let new_lo = match lo {
            Some(l) if l > &self.lo => l.clone(),
            _ => self.lo.clone(),
        };
        let new_hi = match hi {
            Some(h) if h < &self.hi => h.clone(),
            _ => self.hi.clone(),
        };
        (new_lo <= new_hi).then_some(Interval {
            lo: new_lo,
            hi: new_hi,
        })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A finite union of closed intervals: sorted, pairwise disjoint and
/// non-touching (touching pieces are merged), so equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Interval>", into = "Vec<Interval>")]
pub struct IntervalUnion {
    intervals: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn point(v: Rational) -> Self {
        Self {
            intervals: vec![Interval::point(v)],
        }
    }

    pub fn from_intervals(mut pieces: Vec<Interval>) -> Self {
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut merged: Vec<Interval> = Vec::with_capacity(pieces.len());
        for iv in pieces {
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

    pub fn contains(&self, v: &Rational) -> bool {
        self.intervals.iter().any(|iv| iv.contains(v))
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut all = self.intervals.clone();
        all.extend(other.intervals.iter().cloned());
        Self::from_intervals(all)
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &IntervalUnion) -> bool {
        self.intervals.iter().all(|iv| {
            other
                .intervals
                .iter()
                .any(|o| o.lo <= iv.lo && iv.hi <= o.hi)
        })
    }

    pub fn min(&self) -> Option<&Rational> {
        self.intervals.first().map(|iv| &iv.lo)
    }

    pub fn max(&self) -> Option<&Rational> {
        self.intervals.last().map(|iv| &iv.hi)
    }
}

impl From<Vec<Interval>> for IntervalUnion {
    fn from(v: Vec<Interval>) -> Self {
        Self::from_intervals(v)
    }
}

impl From<IntervalUnion> for Vec<Interval> {
    fn from(u: IntervalUnion) -> Self {
        u.intervals
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "∅");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

/// A finite, non-empty set of scalars, sorted ascending without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<ScalarText>", into = "Vec<ScalarText>")]
pub struct ScalarSet {
    values: Vec<Rational>,
}

impl ScalarSet {
    pub fn new(mut values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        values.sort();
        values.dedup();
        Ok(Self { values })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest gap between consecutive members (zero for a singleton).
    pub fn max_step(&self) -> Rational {
        self.values
            .windows(2)
            .map(|w| &w[1] - &w[0])
            .max()
            .unwrap_or_default()
    }

    /// Closest member; ties go to the smaller value.
    pub fn project(&self, z: &Rational) -> &Rational {
        let mut best = &self.values[0];
        let mut best_d = (best - z).abs();
        for v in &self.values[1..] {
            let d = (v - z).abs();
            if d < best_d {
                best = v;
                best_d = d;
            }
        }
        best
    }
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct ScalarText(#[serde(with = "serde_str")] Rational);

impl TryFrom<Vec<ScalarText>> for ScalarSet {
    type Error = Error;
    fn try_from(v: Vec<ScalarText>) -> Result<Self> {
        ScalarSet::new(v.into_iter().map(|t| t.0).collect())
    }
}

impl From<ScalarSet> for Vec<ScalarText> {
    fn from(s: ScalarSet) -> Self {
        s.values.into_iter().map(ScalarText).collect()
    }
}
