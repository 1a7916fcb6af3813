//! Finite unions of intervals and simple functions supported on them.

use crate::error::{Error, Result};
use crate::fnspace::neumaier_sum;

/// Sorted, disjoint, non-touching intervals of positive length.
///
/// Endpoint openness is not tracked: touching intervals merge.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
}

impl IntervalUnion {
    pub fn new(mut raw: Vec<(f64, f64)>) -> Result<Self> {
        for &(lo, hi) in &raw {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(Error::InvalidInterval { lo, hi });
            }
        }
        raw.retain(|&(lo, hi)| lo < hi);
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
        for (lo, hi) in raw {
            match out.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => out.push((lo, hi)),
            }
        }
        Ok(Self { intervals: out })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![(lo, hi)])
    }

    /// Builds from intervals already in canonical form.
    pub(crate) fn from_canonical(intervals: Vec<(f64, f64)>) -> Self {
        debug_assert!(intervals.windows(2).all(|w| w[0].1 < w[1].0));
        Self { intervals }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn measure(&self) -> f64 {
        neumaier_sum(self.intervals.iter().map(|&(lo, hi)| hi - lo))
    }

    pub fn contains(&self, x: f64) -> bool {
        let k = self.intervals.partition_point(|&(lo, _)| lo <= x);
        k > 0 && x <= self.intervals[k - 1].1
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut all = self.intervals.clone();
        all.extend_from_slice(&other.intervals);
        Self::new(all).expect("canonical inputs")
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = a[i].0.max(b[j].0);
            let hi = a[i].1.min(b[j].1);
            if lo < hi {
                out.push((lo, hi));
            }
            if a[i].1 < b[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::new(out).expect("intersections of valid intervals are valid")
    }

    /// `[lo, hi] ∖ self`.
    pub fn complement_within(&self, lo: f64, hi: f64) -> Result<Self> {
        if !(lo <= hi) {
            return Err(Error::InvalidInterval { lo, hi });
        }
        let mut out = Vec::new();
        let mut cur = lo;
        for &(a, b) in &self.intervals {
            if b <= cur {
                continue;
            }
            if a >= hi {
                break;
            }
            if a > cur {
                out.push((cur, a));
            }
            cur = cur.max(b);
        }
        if cur < hi {
            out.push((cur, hi));
        }
        Self::new(out)
    }

    pub fn difference(&self, other: &Self) -> Self {
        let Some(bounds) = self.bounds() else {
            return Self::empty();
        };
        let outside = other
            .complement_within(bounds.0, bounds.1)
            .expect("bounds are ordered");
        self.intersection(&outside)
    }

    pub fn bounds(&self) -> Option<(f64, f64)> {
        Some((self.intervals.first()?.0, self.intervals.last()?.1))
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.intervals.iter().all(|&(lo, hi)| {
            let k = other.intervals.partition_point(|&(a, _)| a <= lo);
            k > 0 && hi <= other.intervals[k - 1].1
        })
    }
}

/// `(a ∪ b, a ∩ b, a ∖ b)`.
pub fn set_ops(
    a: &IntervalUnion,
    b: &IntervalUnion,
) -> (IntervalUnion, IntervalUnion, IntervalUnion) {
    (a.union(b), a.intersection(b), a.difference(b))
}

/// `Σ cᵢ χ_{Eᵢ}` with each `Eᵢ` an interval union inside `[0,1]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SimpleFunction {
    terms: Vec<(f64, IntervalUnion)>,
}

impl SimpleFunction {
    pub fn new(terms: Vec<(f64, IntervalUnion)>) -> Result<Self> {
        for (c, e) in &terms {
            if !c.is_finite() {
                return Err(Error::Domain(format!("coefficient {c} is not finite")));
            }
            if let Some((lo, hi)) = e.bounds() {
                if lo < 0.0 || hi > 1.0 {
                    return Err(Error::Domain(format!(
                        "support [{lo}, {hi}] leaves the unit interval"
                    )));
                }
            }
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[(f64, IntervalUnion)] {
        &self.terms
    }

    pub fn eval(&self, x: f64) -> f64 {
        neumaier_sum(
            self.terms
                .iter()
                .filter(|(_, e)| e.contains(x))
                .map(|(c, _)| *c),
        )
    }

    /// The canonical representation: one term per distinct nonzero value,
    /// with pairwise disjoint supports.
    pub fn canonical(&self) -> Self {
        let mut breaks: Vec<f64> = self
            .terms
            .iter()
            .flat_map(|(_, e)| e.intervals().iter().flat_map(|&(lo, hi)| [lo, hi]))
            .collect();
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let mut groups: Vec<(f64, Vec<(f64, f64)>)> = Vec::new();
        for w in breaks.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            let value = neumaier_sum(
                self.terms
                    .iter()
                    .filter(|(_, e)| e.contains(mid))
                    .map(|(c, _)| *c),
            );
            if value == 0.0 {
                continue;
            }
            match groups.iter_mut().find(|(v, _)| *v == value) {
                Some((_, pieces)) => pieces.push((w[0], w[1])),
                None => groups.push((value, vec![(w[0], w[1])])),
            }
        }
        groups.sort_by(|a, b| a.0.total_cmp(&b.0));
        let terms = groups
            .into_iter()
            .map(|(v, pieces)| (v, IntervalUnion::new(pieces).expect("valid pieces")))
            .collect();
        Self { terms }
    }
}

/// `Σ cᵢ · m(Eᵢ)`.
pub fn lebesgue_integral_simple(phi: &SimpleFunction) -> f64 {
    neumaier_sum(phi.terms.iter().map(|(c, e)| c * e.measure()))
}
