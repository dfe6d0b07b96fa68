//! Circular integer sequences and the closed-form component counts.
//!
//! A [`CircularSeq`] `ε = (ε_1, .., ε_s)` is read cyclically. The counts of
//! free linear and circular components of its level-`m` digraph depend only on
//! [`NormalizedSeq`], the `±1` expansion with zeroes removed:
//!
//! - `ℓ(m) = Σ_{λ=1}^{m} a_λ`, where `a_λ` counts free linear segments of level
//!   `λ` (see [`NormalizedSeq::segment_census`]);
//! - `c(m) = max(0, m - λ_ε)` when the entries sum to zero, `0` otherwise, where
//!   `λ_ε` is the circular level (see [`NormalizedSeq::circular_level`]).
//!
//! Entries whose magnitude exceeds `m + 1` are clamped to `±(m + 1)` before
//! expansion; the level-`m` digraph cannot tell them apart.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircularSeq {
    entries: Vec<i64>,
}

/// The `±1` form of a circular sequence, or an explicit marker for the
/// all-zero sequence (which has its own closed form, `ℓ = 0`, `c = m`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NormalizedSeq {
    AllZero { len: usize },
    PlusMinus(Vec<i8>),
}

/// Number `a_λ` of free linear segments of each level `1 ≤ λ ≤ level_cap`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SegmentCensus {
    counts: Vec<u64>,
    level_cap: usize,
}

impl CircularSeq {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(CircularSeq { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_all_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn sum(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Merges the same-sign neighbours at `index` and `index + 1 (mod s)`
    /// (0-based) into their sum. The resulting sequence has length `s - 1`.
    pub fn first_reduction_step(&self, index: usize) -> Result<Self> {
        let s = self.len();
        if s < 2 {
            return Err(Error::TooShort);
        }
        if index >= s {
            return Err(Error::IndexOutOfRange { index, len: s });
        }
        let next = (index + 1) % s;
        let (a, b) = (self.entries[index], self.entries[next]);
        if a.signum() * b.signum() <= 0 {
            return Err(Error::NotSameSign { index });
        }
        let mut entries = Vec::with_capacity(s - 1);
        if next == 0 {
            entries.push(a + b);
            entries.extend_from_slice(&self.entries[1..index]);
        } else {
            entries.extend_from_slice(&self.entries[..index]);
            entries.push(a + b);
            entries.extend_from_slice(&self.entries[next + 1..]);
        }
        Ok(CircularSeq { entries })
    }

    /// Drops every zero entry, keeping cyclic order.
    pub fn second_reduction(&self) -> Result<Self> {
        if self.is_all_zero() {
            return Err(Error::AllZero);
        }
        Ok(CircularSeq {
            entries: self.entries.iter().copied().filter(|&e| e != 0).collect(),
        })
    }

    /// `±1` form for level `m`: clamp to `±(m + 1)`, drop zeroes, expand.
    pub fn normalize(&self, m: usize) -> NormalizedSeq {
        self.normalize_bounded(Some(m as u64 + 1))
    }

    /// `±1` form without clamping. Its length is `Σ |ε_t|`.
    pub fn expand(&self) -> NormalizedSeq {
        self.normalize_bounded(None)
    }

    fn normalize_bounded(&self, bound: Option<u64>) -> NormalizedSeq {
        if self.is_all_zero() {
            return NormalizedSeq::AllZero { len: self.len() };
        }
        let mut out = Vec::new();
        for &e in &self.entries {
            let mag = e.unsigned_abs();
            let mag = bound.map_or(mag, |b| mag.min(b));
            let sign = if e > 0 { 1 } else { -1 };
            out.extend(core::iter::repeat_n(sign, mag as usize));
        }
        NormalizedSeq::PlusMinus(out)
    }

    /// Circular level `λ_ε` of the normalized sequence, computed directly:
    /// `None` when the entries do not sum to zero, otherwise the spread
    /// `max P - min P` of the prefix sums over one period. Zero iff all
    /// entries vanish.
    pub fn circular_level(&self) -> Option<u64> {
        if self.sum() != 0 {
            return None;
        }
        let (mut p, mut lo, mut hi) = (0i64, 0i64, 0i64);
        for &e in &self.entries {
            p += e;
            lo = lo.min(p);
            hi = hi.max(p);
        }
        Some((hi - lo) as u64)
    }

    /// Number of circular components of the level-`m` digraph.
    pub fn circular_count(&self, m: usize) -> u64 {
        match self.normalize(m).circular_level() {
            Some(level) => (m as u64).saturating_sub(level),
            None => 0,
        }
    }

    /// Number of free linear components of the level-`m` digraph.
    pub fn linear_count(&self, m: usize) -> u64 {
        match self.normalize(m) {
            NormalizedSeq::AllZero { .. } => 0,
            n => n.segment_census(m).total(),
        }
    }

    /// Largest level of any free linear segment of the unclamped expansion,
    /// or 0 if there is none. Past this level the linear count is constant.
    pub fn max_segment_level(&self) -> usize {
        self.expand().segment_levels().max().unwrap_or(0)
    }
}

impl NormalizedSeq {
    pub fn len(&self) -> usize {
        match self {
            NormalizedSeq::AllZero { len } => *len,
            NormalizedSeq::PlusMinus(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_all_zero(&self) -> bool {
        matches!(self, NormalizedSeq::AllZero { .. })
    }

    /// The `±1` entries; empty for the all-zero sequence.
    pub fn signs(&self) -> &[i8] {
        match self {
            NormalizedSeq::AllZero { .. } => &[],
            NormalizedSeq::PlusMinus(v) => v,
        }
    }

    /// Level of every free linear segment, one per `-1` start that returns to
    /// zero within one period. The segment from start `a` ends at the first
    /// return of the running sum to zero; its level is the depth of the
    /// running minimum. Segments may wrap around the end of the sequence.
    ///
    /// Reading `-1` as an opening and `+1` as a closing bracket, a segment is
    /// a matched pair and its level the nesting height of the pair, so one
    /// stack pass over two periods finds all of them in linear time.
    pub fn segment_levels(&self) -> impl Iterator<Item = usize> + '_ {
        let signs = self.signs();
        let n = signs.len();
        let mut levels = Vec::new();
        // (start, height of the deepest pair nested inside so far)
        let mut open: Vec<(usize, usize)> = Vec::new();
        for idx in 0..2 * n {
            if signs[idx % n] < 0 {
                open.push((idx, 0));
            } else if let Some((start, inner)) = open.pop() {
                let level = inner + 1;
                if start < n && idx - start < n {
                    levels.push(level);
                }
                if let Some(top) = open.last_mut() {
                    top.1 = top.1.max(level);
                }
            }
        }
        levels.into_iter()
    }

    /// Reference walk for [`segment_levels`](Self::segment_levels): quadratic,
    /// kept for differential tests.
    #[doc(hidden)]
    pub fn segment_levels_naive(&self) -> Vec<usize> {
        let signs = self.signs();
        let n = signs.len();
        (0..n)
            .filter(|&a| signs[a] < 0)
            .filter_map(|a| {
                let mut sum = 0i64;
                let mut min = 0i64;
                for k in 0..n {
                    sum += i64::from(signs[(a + k) % n]);
                    min = min.min(sum);
                    if sum == 0 {
                        return Some((-min) as usize);
                    }
                }
                None
            })
            .collect()
    }

    /// Counts `a_λ` for `1 ≤ λ ≤ m`.
    pub fn segment_census(&self, m: usize) -> SegmentCensus {
        let mut counts = vec![0u64; m];
        for level in self.segment_levels() {
            if (1..=m).contains(&level) {
                counts[level - 1] += 1;
            }
        }
        SegmentCensus {
            counts,
            level_cap: m,
        }
    }

    /// `λ_ε`: 0 for the all-zero sequence, `None` when the `±1` entries do
    /// not sum to zero, otherwise `max P - min P` over the prefix sums.
    pub fn circular_level(&self) -> Option<u64> {
        match self {
            NormalizedSeq::AllZero { .. } => Some(0),
            NormalizedSeq::PlusMinus(v) => {
                let (mut p, mut lo, mut hi) = (0i64, 0i64, 0i64);
                for &e in v {
                    p += i64::from(e);
                    lo = lo.min(p);
                    hi = hi.max(p);
                }
                (p == 0).then_some((hi - lo) as u64)
            }
        }
    }
}

impl SegmentCensus {
    pub fn level_cap(&self) -> usize {
        self.level_cap
    }

    /// `a_λ`; zero outside `1..=level_cap`.
    pub fn get(&self, level: usize) -> u64 {
        if level == 0 {
            return 0;
        }
        self.counts.get(level - 1).copied().unwrap_or(0)
    }

    /// `Σ_{λ ≤ level_cap} a_λ`.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Σ_{λ ≤ m} a_λ` for `m ≤ level_cap`.
    pub fn total_up_to(&self, m: usize) -> u64 {
        self.counts.iter().take(m).sum()
    }

    /// Nonzero `(λ, a_λ)` pairs in increasing `λ`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i + 1, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> CircularSeq {
        CircularSeq::new(v.to_vec()).unwrap()
    }

    fn census(v: &[i8], m: usize) -> Vec<(usize, u64)> {
        NormalizedSeq::PlusMinus(v.to_vec())
            .segment_census(m)
            .iter()
            .collect()
    }

    #[test]
    fn first_reduction_examples() {
        assert_eq!(seq(&[3, 2, -5]).first_reduction_step(0).unwrap(), seq(&[5, -5]));
        assert_eq!(seq(&[-1, -1]).first_reduction_step(0).unwrap(), seq(&[-2]));
        assert_eq!(
            seq(&[1, 1, 1, 0, -1, -1, -1]).first_reduction_step(0).unwrap(),
            seq(&[2, 1, 0, -1, -1, -1])
        );
        // wrap-around pair (last, first)
        assert_eq!(seq(&[2, -1, 3]).first_reduction_step(2).unwrap(), seq(&[5, -1]));
    }

    #[test]
    fn first_reduction_rejects_bad_input() {
        assert_eq!(seq(&[1, -1]).first_reduction_step(0), Err(Error::NotSameSign { index: 0 }));
        assert_eq!(seq(&[0, 1]).first_reduction_step(0), Err(Error::NotSameSign { index: 0 }));
        assert_eq!(seq(&[2]).first_reduction_step(0), Err(Error::TooShort));
        assert_eq!(
            seq(&[1, 1]).first_reduction_step(2),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        );
    }

    #[test]
    fn second_reduction_examples() {
        assert_eq!(seq(&[3, 0, -1, -2]).second_reduction().unwrap(), seq(&[3, -1, -2]));
        assert_eq!(seq(&[0, 0, 5]).second_reduction().unwrap(), seq(&[5]));
        assert_eq!(seq(&[-1, 1]).second_reduction().unwrap(), seq(&[-1, 1]));
        assert_eq!(seq(&[0, 0]).second_reduction(), Err(Error::AllZero));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            seq(&[3, 0, -1, -2]).normalize(5),
            NormalizedSeq::PlusMinus(vec![1, 1, 1, -1, -1, -1])
        );
        assert_eq!(seq(&[0, 0]).normalize(7), NormalizedSeq::AllZero { len: 2 });
        assert_eq!(
            seq(&[-4, 4]).normalize(2),
            NormalizedSeq::PlusMinus(vec![-1, -1, -1, 1, 1, 1])
        );
    }

    #[test]
    fn census_examples() {
        assert_eq!(census(&[1, 1, 1, -1, -1, -1], 5), vec![(1, 1), (2, 1), (3, 1)]);
        assert_eq!(census(&[-1, 1], 1), vec![(1, 1)]);
        assert_eq!(census(&[1, 1, -1, -1], 5), vec![(1, 1), (2, 1)]);
        // cap drops deeper segments
        assert_eq!(census(&[1, 1, 1, -1, -1, -1], 2), vec![(1, 1), (2, 1)]);
        // only the start at index 1 returns to zero within a period
        assert_eq!(census(&[-1, -1, 1], 4), vec![(1, 1)]);
        assert_eq!(census(&[-1, -1, -1], 4), vec![]);
    }

    #[test]
    fn circular_level_examples() {
        assert_eq!(NormalizedSeq::AllZero { len: 3 }.circular_level(), Some(0));
        assert_eq!(NormalizedSeq::PlusMinus(vec![1, 1, 1, -1, -1, -1]).circular_level(), Some(3));
        assert_eq!(NormalizedSeq::PlusMinus(vec![-1, 1, -1, 1]).circular_level(), Some(1));
        assert_eq!(NormalizedSeq::PlusMinus(vec![1, 1, -1]).circular_level(), None);
        assert_eq!(seq(&[3, 0, -1, -2]).circular_level(), Some(3));
        assert_eq!(seq(&[2, -1]).circular_level(), None);
    }

    #[test]
    fn count_examples() {
        assert_eq!(seq(&[3, 0, -1, -2]).circular_count(5), 2);
        assert_eq!(seq(&[0, 0]).circular_count(4), 4);
        assert_eq!(seq(&[1]).circular_count(3), 0);
        assert_eq!(seq(&[3, 0, -1, -2]).linear_count(5), 3);
        assert_eq!(seq(&[3, -3]).linear_count(5), 3);
        assert_eq!(seq(&[0, 0, 0, 0]).linear_count(6), 0);
        assert_eq!(seq(&[-9, 9]).circular_count(4), 0);
    }

    #[test]
    fn max_segment_level_ignores_clamp() {
        assert_eq!(seq(&[-6, 6]).max_segment_level(), 6);
        assert_eq!(seq(&[0, 0]).max_segment_level(), 0);
        assert_eq!(seq(&[1, 1]).max_segment_level(), 0);
    }
}
