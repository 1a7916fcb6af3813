//! Cantor sets and the Cantor function in exact integer arithmetic.
//!
//! Floating-point inputs are first snapped to the simplest rational that
//! rounds back to the same `f64`, so `1.0 / 3.0` is treated as one third.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::measurelab::IntervalUnion;

/// Deepest level whose endpoints fit in `u64` numerators over `3^m`.
pub const MAX_LEVEL: u32 = 35;
/// Deepest level that may be materialized as an explicit interval list.
pub const MAX_MATERIALIZED_LEVEL: u32 = 20;
pub const MAX_TERNARY_DIGITS: u32 = 40;
pub const MAX_BINARY_DIGITS: u32 = 52;

/// The level-`m` set `E_m`: `2^m` closed intervals of length `3^(−m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CantorLevel {
    level: u32,
}

pub fn cantor_level(m: u32) -> Result<CantorLevel> {
    if m > MAX_LEVEL {
        return Err(Error::LevelTooDeep(m));
    }
    Ok(CantorLevel { level: m })
}

impl CantorLevel {
    pub fn level(&self) -> u32 {
        self.level
    }

    /// `3^m`, the common denominator of every endpoint.
    pub fn denominator(&self) -> u64 {
        3u64.pow(self.level)
    }

    pub fn count(&self) -> u64 {
        1u64 << self.level
    }

    /// Numerators `(lo, hi)` over [`Self::denominator`] of the `k`-th
    /// interval, left to right.
    pub fn interval(&self, k: u64) -> (u64, u64) {
        assert!(k < self.count(), "interval index out of range");
        let mut lo = 0u64;
        for bit in (0..self.level).rev() {
            lo = 3 * lo + 2 * ((k >> bit) & 1);
        }
        (lo, lo + 1)
    }

    pub fn intervals_exact(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (0..self.count()).map(|k| self.interval(k))
    }

    /// `(2/3)^m`.
    pub fn measure(&self) -> Ratio<u64> {
        Ratio::new(1u64 << self.level, self.denominator())
    }

    pub fn to_interval_union(&self) -> Result<IntervalUnion> {
        if self.level > MAX_MATERIALIZED_LEVEL {
            return Err(Error::Domain(format!(
                "level {} has too many intervals to list; the limit is {}",
                self.level, MAX_MATERIALIZED_LEVEL
            )));
        }
        let d = self.denominator() as f64;
        Ok(IntervalUnion::from_canonical(
            self.intervals_exact()
                .map(|(lo, hi)| (lo as f64 / d, hi as f64 / d))
                .collect(),
        ))
    }

    /// Whether every interval of `finer` lies in an interval of `self`.
    pub fn contains_level(&self, finer: &CantorLevel) -> bool {
        if finer.level < self.level {
            return false;
        }
        let shift = finer.level - self.level;
        let scale = 3u64.pow(shift);
        finer.intervals_exact().enumerate().all(|(k, (lo, hi))| {
            let (plo, phi) = self.interval((k as u64) >> shift);
            plo * scale <= lo && hi <= phi * scale
        })
    }
}

/// The simplest rational `p/q` with `p as f64 / q as f64 == x`, for
/// `x ∈ [0, 1]`. Returns `None` below `2^-70`, where the value is
/// indistinguishable from 0 at every supported digit budget.
pub fn snap_rational(x: f64) -> Option<(u128, u128)> {
    if !(0.0..=1.0).contains(&x) {
        return None;
    }
    if x == 0.0 {
        return Some((0, 1));
    }
    if x < 2f64.powi(-70) {
        return None;
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let mantissa = (bits & ((1u64 << 52) - 1)) | (1u64 << 52);
    let shift = (1075 - exp) as u32;
    let tz = mantissa.trailing_zeros().min(shift);
    let (mut num, mut den) = ((mantissa >> tz) as u128, 1u128 << (shift - tz));

    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    while den != 0 {
        let a = num / den;
        (num, den) = (den, num % den);
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if p2 as f64 / q2 as f64 == x {
            return Some((p2, q2));
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    unreachable!("the final convergent is x itself")
}

/// Ternary digits of `p/q ∈ [0,1)` by long division, plus whether the
/// expansion terminates within the budget.
fn ternary_digits(p: u128, q: u128, n: u32) -> (Vec<u8>, bool) {
    let mut r = p;
    let mut digits = Vec::with_capacity(n as usize);
    for _ in 0..n {
        r *= 3;
        digits.push((r / q) as u8);
        r %= q;
        if r == 0 {
            return (digits, true);
        }
    }
    (digits, false)
}

/// Ternary expansion of `x` to `digits` places, preferring the expansion
/// without a 1 when `x` is a triadic endpoint.
pub fn ternary_expansion(x: f64, digits: u32) -> Option<Vec<u8>> {
    let digits = digits.min(MAX_TERNARY_DIGITS);
    if x == 1.0 {
        return Some(vec![2; digits as usize]);
    }
    let mut out = match snap_rational(x) {
        Some((p, q)) => {
            let (mut d, terminates) = ternary_digits(p, q, digits);
            if terminates && d.last() == Some(&1) {
                *d.last_mut().unwrap() = 0;
                d.resize(digits as usize, 2);
            }
            d
        }
        None if (0.0..=1.0).contains(&x) => Vec::new(),
        None => return None,
    };
    out.resize(digits as usize, 0);
    Some(out)
}

/// Whether the first `digits` ternary digits of `x` avoid 1.
pub fn in_cantor_set(x: f64, digits: u32) -> bool {
    ternary_expansion(x, digits).is_some_and(|d| !d.contains(&1))
}

/// The Cantor function at the rational `p/q ∈ [0,1]`, truncated to
/// `digits` binary places, as an exact dyadic.
pub fn cantor_function_exact(p: u64, q: u64, digits: u32) -> Result<Ratio<u64>> {
    if q == 0 || p > q {
        return Err(Error::Domain(format!("{p}/{q} is not in [0,1]")));
    }
    let digits = digits.min(MAX_BINARY_DIGITS);
    if p == q {
        return Ok(Ratio::from_integer(1));
    }
    let (a, _) = ternary_digits(p as u128, q as u128, digits);
    Ok(dyadic_from_ternary(&a, digits))
}

fn dyadic_from_ternary(a: &[u8], digits: u32) -> Ratio<u64> {
    let mut num = 0u64;
    for n in 0..digits as usize {
        let b = match a.get(n) {
            Some(&1) => {
                num = (num << 1) | 1;
                num <<= digits as usize - n - 1;
                return Ratio::new(num, 1u64 << digits);
            }
            Some(&d) => (d / 2) as u64,
            None => 0,
        };
        num = (num << 1) | b;
    }
    Ratio::new(num, 1u64 << digits)
}

/// The Cantor function `Σ bₙ 2⁻ⁿ` with `bₙ = aₙ/2` before the first ternary
/// 1 at position `N`, `b_N = 1`, and zeros after.
pub fn cantor_function(x: f64, digits: u32) -> f64 {
    if x >= 1.0 {
        return 1.0;
    }
    let digits = digits.clamp(1, MAX_BINARY_DIGITS);
    let Some((p, q)) = snap_rational(x.max(0.0)) else {
        return 0.0;
    };
    let (a, _) = ternary_digits(p, q, digits);
    let r = dyadic_from_ternary(&a, digits);
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levels() {
        let l0 = cantor_level(0).unwrap();
        assert_eq!(l0.interval(0), (0, 1));
        assert_eq!(l0.measure(), Ratio::from_integer(1));
        let l1 = cantor_level(1).unwrap();
        assert_eq!(
            l1.intervals_exact().collect::<Vec<_>>(),
            vec![(0, 1), (2, 3)]
        );
        assert_eq!(l1.measure(), Ratio::new(2, 3));
        let l2 = cantor_level(2).unwrap();
        assert_eq!(
            l2.intervals_exact().collect::<Vec<_>>(),
            vec![(0, 1), (2, 3), (6, 7), (8, 9)]
        );
        assert_eq!(l2.measure(), Ratio::new(4, 9));
        assert!(l1.contains_level(&l2) && !l2.contains_level(&l1));
        assert_eq!(cantor_level(36).unwrap_err(), Error::LevelTooDeep(36));
        let deep = cantor_level(35).unwrap();
        assert_eq!(deep.interval(deep.count() - 1).1, deep.denominator());
        assert!(deep.to_interval_union().is_err());
    }

    #[test]
    fn snapping() {
        assert_eq!(snap_rational(1.0 / 3.0), Some((1, 3)));
        assert_eq!(snap_rational(0.25), Some((1, 4)));
        assert_eq!(snap_rational(7.0 / 9.0), Some((7, 9)));
        assert_eq!(snap_rational(0.0), Some((0, 1)));
        assert_eq!(snap_rational(1.0), Some((1, 1)));
        assert_eq!(snap_rational(1.5), None);
    }

    #[test]
    fn membership() {
        assert!(in_cantor_set(0.25, 40));
        assert!(!in_cantor_set(0.5, 40));
        assert!(in_cantor_set(1.0 / 3.0, 40));
        assert!(in_cantor_set(0.0, 40) && in_cantor_set(1.0, 40));
        assert!(!in_cantor_set(-0.1, 10));
        assert_eq!(ternary_expansion(0.25, 4).unwrap(), vec![0, 2, 0, 2]);
        assert_eq!(ternary_expansion(1.0 / 3.0, 4).unwrap(), vec![0, 2, 2, 2]);
    }

    #[test]
    fn function_values() {
        for x in [1.0 / 3.0, 0.4, 0.5, 2.0 / 3.0] {
            assert_eq!(cantor_function(x, 52), 0.5, "x = {x}");
        }
        for x in [1.0 / 9.0, 0.15, 2.0 / 9.0] {
            assert_eq!(cantor_function(x, 52), 0.25);
        }
        for x in [7.0 / 9.0, 0.8, 8.0 / 9.0] {
            assert_eq!(cantor_function(x, 52), 0.75);
        }
        assert_eq!(cantor_function(0.0, 52), 0.0);
        assert_eq!(cantor_function(1.0, 52), 1.0);
        assert_eq!(cantor_function_exact(1, 3, 52).unwrap(), Ratio::new(1, 2));
        assert_eq!(
            cantor_function_exact(1, 1, 52).unwrap(),
            Ratio::from_integer(1)
        );
        assert!(cantor_function_exact(2, 1, 10).is_err());
    }
}
