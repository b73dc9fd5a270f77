//! Dense bit-vector sets of integers over a contiguous window.
//!
//! An [`IntSet`] stores bit `j` for the integer `base + j`. Every operation
//! that can grow the window validates the new span against an explicit cap
//! before allocating, so a runaway sumset fails with
//! [`Error::CapExceeded`](crate::Error::CapExceeded) instead of exhausting
//! memory.

use std::fmt;

use crate::error::{cap_check, Error, Result};

const WORD: i64 = 64;

#[derive(Clone, Default)]
pub struct IntSet {
    base: i64,
    slots: usize,
    words: Vec<u64>,
}

impl IntSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(v: i64) -> Self {
        Self {
            base: v,
            slots: 1,
            words: vec![1],
        }
    }

    /// An all-zero set whose window is `[lo, hi]`.
    pub fn with_window(lo: i64, hi: i64, cap: u64) -> Result<Self> {
        if hi < lo {
            return Ok(Self::empty());
        }
        let slots = (hi as i128 - lo as i128 + 1) as u128;
        cap_check("set window", slots, cap)?;
        let slots = slots as usize;
        Ok(Self {
            base: lo,
            slots,
            words: vec![0; slots.div_ceil(64)],
        })
    }

    /// The full interval `[lo, hi]`.
    pub fn interval(lo: i64, hi: i64, cap: u64) -> Result<Self> {
        let mut s = Self::with_window(lo, hi, cap)?;
        s.words.iter_mut().for_each(|w| *w = u64::MAX);
        s.trim();
        Ok(s)
    }

    pub fn from_values<I: IntoIterator<Item = i64>>(values: I, cap: u64) -> Result<Self> {
        let values: Vec<i64> = values.into_iter().collect();
        let (Some(&lo), Some(&hi)) = (values.iter().min(), values.iter().max()) else {
            return Ok(Self::empty());
        };
        let mut s = Self::with_window(lo, hi, cap)?;
        for v in values {
            s.insert(v);
        }
        Ok(s)
    }

    /// First integer of the window (not necessarily a member).
    pub fn base(&self) -> i64 {
        self.base
    }

    /// Number of bit slots in the window.
    pub fn window_len(&self) -> usize {
        self.slots
    }

    pub fn contains(&self, v: i64) -> bool {
        let Some(j) = self.slot(v) else { return false };
        self.words[j / 64] >> (j % 64) & 1 == 1
    }

    /// Inserts `v`, which must lie inside the window.
    ///
    /// Returns `false` if `v` is outside the window and was not inserted.
    pub fn insert(&mut self, v: i64) -> bool {
        match self.slot(v) {
            Some(j) => {
                self.words[j / 64] |= 1 << (j % 64);
                true
            }
            None => false,
        }
    }

    pub fn remove(&mut self, v: i64) {
        if let Some(j) = self.slot(v) {
            self.words[j / 64] &= !(1 << (j % 64));
        }
    }

    fn slot(&self, v: i64) -> Option<usize> {
        let off = v as i128 - self.base as i128;
        (off >= 0 && (off as u128) < self.slots as u128).then_some(off as usize)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn min(&self) -> Option<i64> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| self.base + (i as i64) * WORD + w.trailing_zeros() as i64)
    }

    pub fn max(&self) -> Option<i64> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| self.base + (i as i64) * WORD + 63 - w.leading_zeros() as i64)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            bits: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.iter().collect()
    }

    /// The same set moved by `t`.
    pub fn translate(&self, t: i64) -> Result<Self> {
        let base = self
            .base
            .checked_add(t)
            .ok_or(Error::Overflow("set translation"))?;
        self.base
            .checked_add(self.slots as i64)
            .and_then(|e| e.checked_add(t))
            .ok_or(Error::Overflow("set translation"))?;
        Ok(Self {
            base,
            slots: self.slots,
            words: self.words.clone(),
        })
    }

    /// Copy of the set re-windowed to its actual `[min, max]`.
    pub fn compact(&self) -> Self {
        let (Some(lo), Some(hi)) = (self.min(), self.max()) else {
            return Self::empty();
        };
        let slots = (hi - lo + 1) as usize;
        let mut out = Self {
            base: lo,
            slots,
            words: vec![0; slots.div_ceil(64)],
        };
        out.or_shifted(self, 0);
        out
    }

    /// Minkowski sum `self + other`.
    pub fn sumset(&self, other: &IntSet, cap: u64) -> Result<IntSet> {
        let (Some(a_lo), Some(a_hi), Some(b_lo), Some(b_hi)) =
            (self.min(), self.max(), other.min(), other.max())
        else {
            return Ok(IntSet::empty());
        };
        let lo = a_lo.checked_add(b_lo).ok_or(Error::Overflow("sumset"))?;
        let hi = a_hi.checked_add(b_hi).ok_or(Error::Overflow("sumset"))?;
        let mut out = IntSet::with_window(lo, hi, cap)?;
        let (wide, narrow) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        for b in narrow.iter() {
            out.or_shifted(wide, b);
        }
        Ok(out)
    }

    pub fn union(&self, other: &IntSet, cap: u64) -> Result<IntSet> {
        let lo = match (self.min(), other.min()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => return Ok(IntSet::empty()),
        };
        let hi = self.max().into_iter().chain(other.max()).max().unwrap_or(lo);
        let mut out = IntSet::with_window(lo, hi, cap)?;
        out.or_shifted(self, 0);
        out.or_shifted(other, 0);
        Ok(out)
    }

    /// `self |= self + s`, i.e. the subset-sum step for one element. Bits
    /// pushed outside the window are dropped, so callers size the window
    /// up front.
    pub fn shift_or_in_place(&mut self, s: i64) {
        if s == 0 || self.words.is_empty() {
            return;
        }
        let n = self.words.len() as i64;
        let ws = s.unsigned_abs() / 64;
        let b = (s.unsigned_abs() % 64) as u32;
        if ws >= n as u64 {
            return;
        }
        let ws = ws as usize;
        if s > 0 {
            for i in (ws..self.words.len()).rev() {
                let lo = self.words[i - ws] << b;
                let carry = if b > 0 && i > ws {
                    self.words[i - ws - 1] >> (64 - b)
                } else {
                    0
                };
                self.words[i] |= lo | carry;
            }
        } else {
            let len = self.words.len();
            for i in 0..len - ws {
                let hi = self.words[i + ws] >> b;
                let carry = if b > 0 && i + ws + 1 < len {
                    self.words[i + ws + 1] << (64 - b)
                } else {
                    0
                };
                self.words[i] |= hi | carry;
            }
        }
        self.trim();
    }

    /// `self(x) |= src(x - shift)` for every `x` in the window of `self`.
    pub fn or_shifted(&mut self, src: &IntSet, shift: i64) {
        let Some(range) = self.word_overlap(src, shift) else {
            return;
        };
        let delta = self.base as i128 - shift as i128 - src.base as i128;
        for i in range {
            self.words[i] |= src.word_at(64 * i as i128 + delta);
        }
        self.trim();
    }

    /// `self(x) &= src(x - shift)`; positions outside the window of `src`
    /// read as absent.
    pub fn and_shifted(&mut self, src: &IntSet, shift: i64) {
        let delta = self.base as i128 - shift as i128 - src.base as i128;
        for i in 0..self.words.len() {
            if self.words[i] != 0 {
                self.words[i] &= src.word_at(64 * i as i128 + delta);
            }
        }
    }

    /// `|self ∩ (other + shift)|`.
    pub fn overlap_count(&self, other: &IntSet, shift: i64) -> usize {
        let Some(range) = self.word_overlap(other, shift) else {
            return 0;
        };
        let delta = self.base as i128 - shift as i128 - other.base as i128;
        range
            .map(|i| (self.words[i] & other.word_at(64 * i as i128 + delta)).count_ones() as usize)
            .sum()
    }

    pub fn intersection_len(&self, other: &IntSet) -> usize {
        self.overlap_count(other, 0)
    }

    pub fn is_subset(&self, other: &IntSet) -> bool {
        self.intersection_len(other) == self.len()
    }

    /// `|(self + a) \ self|`.
    pub fn shift_gain(&self, a: i64) -> u64 {
        (self.len() - self.overlap_count(self, a)) as u64
    }

    /// Longest block of consecutive integers: `(start, length)`.
    pub fn longest_run(&self) -> Option<(i64, u64)> {
        let mut best: Option<(i64, u64)> = None;
        let mut cur: Option<(i64, u64)> = None;
        for v in self.iter() {
            cur = match cur {
                Some((s, l)) if s + l as i64 == v => Some((s, l + 1)),
                _ => Some((v, 1)),
            };
            let c = cur.unwrap();
            if best.is_none_or(|b| c.1 > b.1) {
                best = cur;
            }
        }
        best
    }

    /// Range of word indices of `self` that can receive bits of `src + shift`.
    fn word_overlap(&self, src: &IntSet, shift: i64) -> Option<std::ops::Range<usize>> {
        if self.words.is_empty() || src.words.is_empty() {
            return None;
        }
        let lo = src.base as i128 + shift as i128 - self.base as i128;
        let hi = lo + src.slots as i128 - 1;
        if hi < 0 || lo >= self.slots as i128 {
            return None;
        }
        let first = (lo.max(0) / 64) as usize;
        let last = ((hi.min(self.slots as i128 - 1)) / 64) as usize;
        Some(first..last + 1)
    }

    /// 64 bits of the window starting at slot `p` (may be negative).
    fn word_at(&self, p: i128) -> u64 {
        let wi = p.div_euclid(64);
        let b = p.rem_euclid(64) as u32;
        let get = |i: i128| -> u64 {
            if i < 0 || i >= self.words.len() as i128 {
                0
            } else {
                self.words[i as usize]
            }
        };
        if b == 0 {
            get(wi)
        } else {
            (get(wi) >> b) | (get(wi + 1) << (64 - b))
        }
    }

    fn trim(&mut self) {
        let rem = self.slots % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl PartialEq for IntSet {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().eq(other.iter())
    }
}

impl Eq for IntSet {}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for IntSet {
    /// Compact run notation, e.g. `{0..3, 7, 9..12}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        let mut run: Option<(i64, i64)> = None;
        let flush = |f: &mut fmt::Formatter<'_>, r: (i64, i64), first: &mut bool| {
            if !*first {
                write!(f, ", ")?;
            }
            *first = false;
            if r.0 == r.1 {
                write!(f, "{}", r.0)
            } else {
                write!(f, "{}..{}", r.0, r.1)
            }
        };
        for v in self.iter() {
            run = match run {
                Some((s, e)) if e + 1 == v => Some((s, v)),
                Some(r) => {
                    flush(f, r, &mut first)?;
                    Some((v, v))
                }
                None => Some((v, v)),
            };
        }
        if let Some(r) = run {
            flush(f, r, &mut first)?;
        }
        write!(f, "}}")
    }
}

pub struct Iter<'a> {
    set: &'a IntSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = i64;

    fn next(&mut self) -> Option<i64> {
        loop {
            if self.bits != 0 {
                let t = self.bits.trailing_zeros() as i64;
                self.bits &= self.bits - 1;
                return Some(self.set.base + self.word as i64 * WORD + t);
            }
            self.word += 1;
            if self.word >= self.set.words.len() {
                return None;
            }
            self.bits = self.set.words[self.word];
        }
    }
}

impl<'a> IntoIterator for &'a IntSet {
    type Item = i64;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    const CAP: u64 = 1 << 20;

    #[test]
    fn basic_membership() {
        let s = IntSet::from_values([5, -3, 70, 5], CAP).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.contains(-3) && s.contains(70) && !s.contains(0));
        assert_eq!(s.min(), Some(-3));
        assert_eq!(s.max(), Some(70));
        assert_eq!(s.to_vec(), vec![-3, 5, 70]);
        assert_eq!(format!("{s}"), "{-3, 5, 70}");
    }

    #[test]
    fn empty_set_behaves() {
        let e = IntSet::empty();
        assert!(e.is_empty());
        assert_eq!(e.len(), 0);
        assert_eq!(e.min(), None);
        assert!(e.sumset(&IntSet::singleton(3), CAP).unwrap().is_empty());
        assert_eq!(e.longest_run(), None);
    }

    #[test]
    fn window_cap_is_enforced() {
        assert!(matches!(
            IntSet::from_values([0, 1 << 30], 1 << 20),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn shift_gain_examples() {
        let s = IntSet::from_values([0, 1], CAP).unwrap();
        assert_eq!(s.shift_gain(1), 1);
        assert_eq!(s.shift_gain(5), 2);
        let s = IntSet::from_values([0, 2, 4], CAP).unwrap();
        assert_eq!(s.shift_gain(2), 1);
        assert_eq!(s.shift_gain(0), 0);
    }

    #[test]
    fn display_uses_runs() {
        let s = IntSet::from_values([0, 1, 2, 3, 7, 9, 10], CAP).unwrap();
        assert_eq!(format!("{s}"), "{0..3, 7, 9..10}");
    }

    fn small_set() -> impl Strategy<Value = BTreeSet<i64>> {
        prop::collection::btree_set(-150i64..150, 0..40)
    }

    proptest! {
        #[test]
        fn sumset_matches_pairwise(a in small_set(), b in small_set()) {
            let sa = IntSet::from_values(a.iter().copied(), CAP).unwrap();
            let sb = IntSet::from_values(b.iter().copied(), CAP).unwrap();
            let expect: BTreeSet<i64> = a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect();
            let got: BTreeSet<i64> = sa.sumset(&sb, CAP).unwrap().iter().collect();
            prop_assert_eq!(got, expect);
        }

        #[test]
        fn shift_or_matches_union(a in small_set(), s in -200i64..200) {
            let lo = a.iter().min().copied().unwrap_or(0).min(a.iter().min().copied().unwrap_or(0) + s);
            let hi = a.iter().max().copied().unwrap_or(0).max(a.iter().max().copied().unwrap_or(0) + s);
            let mut set = IntSet::with_window(lo, hi, CAP).unwrap();
            for &v in &a { set.insert(v); }
            set.shift_or_in_place(s);
            let expect: BTreeSet<i64> = a.iter().copied().chain(a.iter().map(|v| v + s)).collect();
            prop_assert_eq!(set.iter().collect::<BTreeSet<_>>(), expect);
        }

        #[test]
        fn shift_gain_matches_definition(a in small_set(), s in -200i64..200) {
            let set = IntSet::from_values(a.iter().copied(), CAP).unwrap();
            let expect = a.iter().filter(|&&v| !a.contains(&(v + s))).count() as u64;
            prop_assert_eq!(set.shift_gain(s), expect);
        }

        #[test]
        fn and_shifted_matches_definition(a in small_set(), b in small_set(), s in -100i64..100) {
            let mut sa = IntSet::from_values(a.iter().copied(), CAP).unwrap();
            let sb = IntSet::from_values(b.iter().copied(), CAP).unwrap();
            sa.and_shifted(&sb, s);
            let expect: BTreeSet<i64> = a.iter().copied().filter(|v| b.contains(&(v - s))).collect();
            prop_assert_eq!(sa.iter().collect::<BTreeSet<_>>(), expect);
        }
    }
}
