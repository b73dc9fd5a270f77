//! Represented generalized arithmetic progressions.
//!
//! A [`Gap`] is the set `{x + n_1 q_1 + ... + n_d q_d : a_i <= n_i <= b_i}`
//! together with its representation. Equality of `Gap` values is
//! representational; two different representations may denote the same
//! integers, which is decided by comparing [`Gap::elements`].
//!
//! All arithmetic is checked `i128`; overflow is reported as
//! [`Error::Overflow`].

use std::fmt;
use std::str::FromStr;

use crate::arith::{self, gcd_all, Rational};
use crate::error::{cap_check, Error, Result};
use crate::int_set::IntSet;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gap {
    offset: i128,
    diffs: Vec<i128>,
    bounds: Vec<(i128, i128)>,
}

impl Gap {
    pub fn new(offset: i128, diffs: Vec<i128>, bounds: Vec<(i128, i128)>) -> Result<Self> {
        if diffs.is_empty() {
            return Err(Error::InvalidGap("dimension must be at least 1".into()));
        }
        if diffs.len() != bounds.len() {
            return Err(Error::InvalidGap(format!(
                "{} differences but {} bound intervals",
                diffs.len(),
                bounds.len()
            )));
        }
        if let Some(i) = diffs.iter().position(|&q| q == 0) {
            return Err(Error::InvalidGap(format!("difference {} is zero", i + 1)));
        }
        if let Some(i) = bounds.iter().position(|&(a, b)| a > b) {
            return Err(Error::InvalidGap(format!(
                "bound interval {} is empty ({}..{})",
                i + 1,
                bounds[i].0,
                bounds[i].1
            )));
        }
        Ok(Self {
            offset,
            diffs,
            bounds,
        })
    }

    /// One-dimensional progression `start, start + diff, ..., start + (len-1) diff`.
    pub fn progression(start: i128, diff: i128, len: i128) -> Result<Self> {
        Self::new(start, vec![diff], vec![(0, len - 1)])
    }

    pub fn dim(&self) -> usize {
        self.diffs.len()
    }

    pub fn offset(&self) -> i128 {
        self.offset
    }

    pub fn diffs(&self) -> &[i128] {
        &self.diffs
    }

    pub fn bounds(&self) -> &[(i128, i128)] {
        &self.bounds
    }

    pub fn widths(&self) -> Vec<i128> {
        self.bounds.iter().map(|&(a, b)| b - a + 1).collect()
    }

    /// Product of the widths.
    pub fn volume(&self) -> Result<i128> {
        self.bounds.iter().try_fold(1i128, |acc, &(a, b)| {
            let w = arith::add(b, 1 - a, "gap width")?;
            arith::mul(acc, w, "gap volume")
        })
    }

    /// The integer denoted by coordinate tuple `n` (no bounds check).
    pub fn value_at(&self, n: &[i128]) -> Result<i128> {
        self.diffs.iter().zip(n).try_fold(self.offset, |acc, (&q, &ni)| {
            arith::add(acc, arith::mul(q, ni, "gap element")?, "gap element")
        })
    }

    /// Smallest and largest denoted integers.
    pub fn value_range(&self) -> Result<(i128, i128)> {
        let mut lo = self.offset;
        let mut hi = self.offset;
        for (&q, &(a, b)) in self.diffs.iter().zip(&self.bounds) {
            let x = arith::mul(q, a, "gap range")?;
            let y = arith::mul(q, b, "gap range")?;
            lo = arith::add(lo, x.min(y), "gap range")?;
            hi = arith::add(hi, x.max(y), "gap range")?;
        }
        Ok((lo, hi))
    }

    /// The exact set of denoted integers.
    pub fn elements(&self, cap: u64) -> Result<IntSet> {
        cap_check("gap volume", self.volume()?.max(0) as u128, cap)?;
        let (lo, hi) = self.value_range()?;
        let lo = arith::to_i64(lo, "gap elements")?;
        let hi = arith::to_i64(hi, "gap elements")?;
        let mut set = IntSet::with_window(lo, hi, cap)?;
        let start = self.value_at(&self.bounds.iter().map(|b| b.0).collect::<Vec<_>>())?;
        set.insert(start as i64);
        for (&q, &(a, b)) in self.diffs.iter().zip(&self.bounds) {
            let q = q as i64;
            for _ in a..b {
                set.shift_or_in_place(q);
            }
        }
        Ok(set)
    }

    /// Number of distinct denoted integers.
    pub fn distinct_count(&self, cap: u64) -> Result<u128> {
        let volume = self.volume()?;
        cap_check("gap volume", volume as u128, cap)?;
        let (lo, hi) = self.value_range()?;
        if ((hi - lo) as u128) < cap as u128 {
            return Ok(self.elements(cap)?.len() as u128);
        }
        let mut values = Vec::with_capacity(volume as usize);
        self.for_each_tuple(|n| {
            values.push(self.value_at(n)?);
            Ok(())
        })?;
        values.sort_unstable();
        values.dedup();
        Ok(values.len() as u128)
    }

    /// Visits every coordinate tuple of the box in lexicographic order.
    pub fn for_each_tuple<F>(&self, mut f: F) -> Result<()>
    where
        F: FnMut(&[i128]) -> Result<()>,
    {
        let mut n: Vec<i128> = self.bounds.iter().map(|b| b.0).collect();
        loop {
            f(&n)?;
            let mut i = n.len();
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                if n[i] < self.bounds[i].1 {
                    n[i] += 1;
                    break;
                }
                n[i] = self.bounds[i].0;
            }
        }
    }

    /// True iff every coordinate tuple denotes a different integer.
    pub fn is_proper(&self, cap: u64) -> Result<bool> {
        Ok(self.distinct_count(cap)? == self.volume()? as u128)
    }

    /// Representation of the `s`-fold sumset: offset `s x`, bounds `[s a_i, s b_i]`.
    pub fn fold(&self, s: u64) -> Result<Gap> {
        if s == 0 {
            return Err(Error::Precondition("fold multiplier must be positive".into()));
        }
        let s = s as i128;
        let bounds = self
            .bounds
            .iter()
            .map(|&(a, b)| Ok((arith::mul(a, s, "fold")?, arith::mul(b, s, "fold")?)))
            .collect::<Result<Vec<_>>>()?;
        Gap::new(
            arith::mul(self.offset, s, "fold")?,
            self.diffs.clone(),
            bounds,
        )
    }

    /// `s`-fold sums collide only when the coordinate sums agree. The
    /// achievable coordinate sums form exactly the box `[s a_i, s b_i]`, so
    /// this is properness of [`Gap::fold`].
    pub fn is_s_proper(&self, s: u64, cap: u64) -> Result<bool> {
        self.fold(s)?.is_proper(cap)
    }

    pub fn diff_gcd(&self) -> i128 {
        gcd_all(self.diffs.iter().copied())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.offset % self.diff_gcd() == 0
    }

    /// Rewrites a homogeneous progression with offset 0 by absorbing the
    /// offset into the bounds through Bézout coefficients.
    pub fn normalize_homogeneous(&self) -> Result<Gap> {
        if self.offset == 0 {
            return Ok(self.clone());
        }
        let (g, coef) = arith::bezout(&self.diffs)?;
        if self.offset % g != 0 {
            return Err(Error::NotHomogeneous(self.offset));
        }
        let k = self.offset / g;
        let bounds = self
            .bounds
            .iter()
            .zip(&coef)
            .map(|(&(a, b), &c)| {
                let c = arith::mul(c, k, "normalize")?;
                Ok((arith::add(a, c, "normalize")?, arith::add(b, c, "normalize")?))
            })
            .collect::<Result<Vec<_>>>()?;
        Gap::new(0, self.diffs.clone(), bounds)
    }

    /// Rational dilation `cQ`: bounds `[ceil(c a_i), floor(c b_i)]` of the
    /// offset-0 representation. A homogeneous input with nonzero offset is
    /// normalized first.
    pub fn dilate(&self, c: Rational) -> Result<Gap> {
        if c < Rational::from_integer(0) {
            return Err(Error::Precondition("dilation factor must be nonnegative".into()));
        }
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous(self.offset));
        }
        let base = self.normalize_homogeneous()?;
        let mut bounds = Vec::with_capacity(base.dim());
        for (i, &(a, b)) in base.bounds.iter().enumerate() {
            let lo = checked_scale(c, a)?.ceil().to_integer();
            let hi = checked_scale(c, b)?.floor().to_integer();
            if lo > hi {
                return Err(Error::EmptyInterval(i));
            }
            bounds.push((lo, hi));
        }
        Gap::new(0, base.diffs, bounds)
    }

    /// Equivalent offset-0 representation with `a_i <= 0 <= b_i`, shifting
    /// the box by the coordinates of 0.
    pub fn center(&self) -> Result<Gap> {
        let m = self.coords(0)?;
        let bounds = self
            .bounds
            .iter()
            .zip(&m)
            .map(|(&(a, b), &mi)| (a - mi, b - mi))
            .collect();
        Gap::new(0, self.diffs.clone(), bounds)
    }

    pub fn is_centered(&self) -> bool {
        self.offset == 0 && self.bounds.iter().all(|&(a, b)| a <= 0 && 0 <= b)
    }

    /// Lexicographically smallest coordinate tuple denoting `v`.
    pub fn coords(&self, v: i128) -> Result<Vec<i128>> {
        let d = self.dim();
        // suffix reachability: min/max of sum_{j>=i} n_j q_j and gcd of q_j, j>=i
        let mut suf_lo = vec![0i128; d + 1];
        let mut suf_hi = vec![0i128; d + 1];
        let mut suf_g = vec![0i128; d + 1];
        for i in (0..d).rev() {
            let (a, b) = self.bounds[i];
            let x = arith::mul(self.diffs[i], a, "coords")?;
            let y = arith::mul(self.diffs[i], b, "coords")?;
            suf_lo[i] = arith::add(suf_lo[i + 1], x.min(y), "coords")?;
            suf_hi[i] = arith::add(suf_hi[i + 1], x.max(y), "coords")?;
            suf_g[i] = arith::gcd(suf_g[i + 1], self.diffs[i]);
        }
        let target = v.checked_sub(self.offset).ok_or(Error::Overflow("coords"))?;
        let mut n = vec![0i128; d];
        if self.search(0, target, &mut n, &suf_lo, &suf_hi, &suf_g) {
            Ok(n)
        } else {
            Err(Error::NotInGap(v))
        }
    }

    fn search(
        &self,
        i: usize,
        rest: i128,
        n: &mut [i128],
        lo: &[i128],
        hi: &[i128],
        g: &[i128],
    ) -> bool {
        if rest < lo[i] || rest > hi[i] || rest % g[i] != 0 {
            return false;
        }
        let q = self.diffs[i];
        let (a, b) = self.bounds[i];
        if i + 1 == n.len() {
            let ni = rest / q;
            if ni >= a && ni <= b {
                n[i] = ni;
                return true;
            }
            return false;
        }
        for ni in a..=b {
            n[i] = ni;
            if self.search(i + 1, rest - ni * q, n, lo, hi, g) {
                return true;
            }
        }
        false
    }

    pub fn contains(&self, v: i128) -> bool {
        self.coords(v).is_ok()
    }
}

fn checked_scale(c: Rational, a: i128) -> Result<Rational> {
    let numer = c.numer().checked_mul(a).ok_or(Error::Overflow("dilation"))?;
    Ok(Rational::new(numer, *c.denom()))
}

impl fmt::Display for Gap {
    /// `x; q1,...,qd; a1..b1,...,ad..bd`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q: Vec<String> = self.diffs.iter().map(|q| q.to_string()).collect();
        let b: Vec<String> = self.bounds.iter().map(|(a, b)| format!("{a}..{b}")).collect();
        write!(f, "{}; {}; {}", self.offset, q.join(","), b.join(","))
    }
}

impl FromStr for Gap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Gap> {
        let bad = |msg: &str| Error::InvalidGap(format!("{msg} in `{s}`"));
        let parts: Vec<&str> = s.split(';').map(str::trim).collect();
        let [x, q, b] = parts.as_slice() else {
            return Err(bad("expected three `;`-separated fields"));
        };
        let offset: i128 = x.parse().map_err(|_| bad("bad offset"))?;
        let diffs = q
            .split(',')
            .map(|t| t.trim().parse::<i128>().map_err(|_| bad("bad difference")))
            .collect::<Result<Vec<_>>>()?;
        let bounds = b
            .split(',')
            .map(|t| {
                let (lo, hi) = t.trim().split_once("..").ok_or_else(|| bad("bad interval"))?;
                let lo = lo.trim().parse::<i128>().map_err(|_| bad("bad interval"))?;
                let hi = hi.trim().parse::<i128>().map_err(|_| bad("bad interval"))?;
                Ok((lo, hi))
            })
            .collect::<Result<Vec<_>>>()?;
        Gap::new(offset, diffs, bounds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    const CAP: u64 = 1 << 22;

    fn g(s: &str) -> Gap {
        s.parse().unwrap()
    }

    /// Direct enumeration of the coordinate box, independent of the
    /// bit-vector path used by `elements`.
    fn brute_elements(gap: &Gap) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        gap.for_each_tuple(|n| {
            out.insert(gap.value_at(n)? as i64);
            Ok(())
        })
        .unwrap();
        out
    }

    fn set(gap: &Gap) -> Vec<i64> {
        gap.elements(CAP).unwrap().to_vec()
    }

    #[test]
    fn volume_examples() {
        assert_eq!(g("0; 1; 0..9").volume().unwrap(), 10);
        assert_eq!(g("0; 1,2; 0..2,0..1").volume().unwrap(), 6);
        assert_eq!(g("0; 1,3; -1..1,-2..2").volume().unwrap(), 15);
    }

    #[test]
    fn volume_overflow_is_an_error() {
        let big = Gap::new(0, vec![1, 1, 1], vec![(0, i128::MAX / 4); 3]).unwrap();
        assert!(matches!(big.volume(), Err(Error::Overflow(_))));
    }

    #[test]
    fn elements_examples() {
        assert_eq!(set(&g("0; 1; 0..4")), vec![0, 1, 2, 3, 4]);
        assert_eq!(set(&g("0; 1,2; 0..2,0..1")), vec![0, 1, 2, 3, 4]);
        assert_eq!(set(&g("5; 3; 0..2")), vec![5, 8, 11]);
    }

    #[test]
    fn elements_respects_cap() {
        assert!(matches!(
            g("0; 1,1000; 0..99,0..99").elements(1000),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn invalid_gaps_rejected() {
        assert!(Gap::new(0, vec![], vec![]).is_err());
        assert!(Gap::new(0, vec![0], vec![(0, 1)]).is_err());
        assert!(Gap::new(0, vec![1], vec![(2, 1)]).is_err());
        assert!("0; 1,2; 0..3".parse::<Gap>().is_err());
        assert!("garbage".parse::<Gap>().is_err());
    }

    #[test]
    fn text_format_round_trips() {
        let gap = g("-3; 1,-7; -2..2,0..5");
        assert_eq!(gap.to_string(), "-3; 1,-7; -2..2,0..5");
        assert_eq!(g(&gap.to_string()), gap);
    }

    #[test]
    fn properness_examples() {
        assert!(!g("0; 1,2; 0..2,0..1").is_proper(CAP).unwrap());
        assert!(g("0; 1,3; 0..2,0..1").is_proper(CAP).unwrap());
        assert!(g("0; 7; 0..9").is_proper(CAP).unwrap());
    }

    #[test]
    fn s_properness_examples() {
        let q = g("0; 1,3; 0..2,0..1");
        assert!(q.is_s_proper(1, CAP).unwrap());
        assert!(!q.is_s_proper(2, CAP).unwrap());
        // the 2-fold box has 15 tuples but only 11 values
        assert_eq!(q.fold(2).unwrap().volume().unwrap(), 15);
        assert_eq!(q.fold(2).unwrap().distinct_count(CAP).unwrap(), 11);
        assert!(g("0; 1,10; 0..2,0..2").is_s_proper(3, CAP).unwrap());
        assert_eq!(g("0; 1,10; 0..2,0..2").fold(3).unwrap().distinct_count(CAP).unwrap(), 49);
    }

    #[test]
    fn homogeneity_examples() {
        assert!(g("6; 2,4; 0..1,0..1").is_homogeneous());
        assert!(!g("3; 2,4; 0..1,0..1").is_homogeneous());
        assert!(g("0; 5,7; 0..1,0..1").is_homogeneous());
    }

    #[test]
    fn normalize_examples() {
        let src = g("6; 2,4; 0..1,0..1");
        let n = src.normalize_homogeneous().unwrap();
        assert_eq!(n, g("0; 2,4; 3..4,0..1"));
        assert_eq!(set(&n), set(&src));

        let z = g("0; 3,5; -1..2,0..4");
        assert_eq!(z.normalize_homogeneous().unwrap(), z);

        let one = g("5; 5; 0..3").normalize_homogeneous().unwrap();
        assert_eq!(one, g("0; 5; 1..4"));

        assert!(matches!(
            g("3; 2,4; 0..1,0..1").normalize_homogeneous(),
            Err(Error::NotHomogeneous(3))
        ));
    }

    #[test]
    fn dilate_examples() {
        let half = Rational::new(1, 2);
        assert_eq!(g("0; 1; 0..10").dilate(half).unwrap(), g("0; 1; 0..5"));
        assert_eq!(
            g("0; 1,3; -4..4,-2..2").dilate(Rational::from_integer(2)).unwrap(),
            g("0; 1,3; -8..8,-4..4")
        );
        assert!(matches!(
            g("0; 1; 1..1").dilate(half),
            Err(Error::EmptyInterval(0))
        ));
        assert!(matches!(
            g("1; 2; 0..3").dilate(half),
            Err(Error::NotHomogeneous(1))
        ));
    }

    #[test]
    fn integer_dilation_is_the_fold_sumset() {
        let q = g("0; 1,5; 0..2,0..1");
        let three = q.dilate(Rational::from_integer(3)).unwrap();
        let base = q.elements(CAP).unwrap();
        let hfold = crate::sumsets::hfold(&base, 3, CAP).unwrap();
        assert_eq!(three.elements(CAP).unwrap(), hfold);
    }

    #[test]
    fn center_examples() {
        // 0 = 3 + (-1)*3 with -1 in [-2, 5]; the box shifts by +1
        let src = g("3; 3; -2..5");
        let c = src.center().unwrap();
        assert_eq!(c, g("0; 3; -1..6"));
        assert!(c.is_centered());
        assert_eq!(set(&c), set(&src));

        let z = g("0; 1; 0..5");
        assert_eq!(z.center().unwrap(), z);

        // every element of {4 + n1 + 2 n2} is at least 4, so 0 is not in it
        assert!(matches!(
            g("4; 1,2; 0..3,0..2").center(),
            Err(Error::NotInGap(0))
        ));

        let src = g("-4; 1,2; 0..3,0..2");
        let c = src.center().unwrap();
        assert!(c.is_centered());
        assert_eq!(set(&c), set(&src));
    }

    #[test]
    fn coords_examples() {
        assert_eq!(g("0; 1,2; 0..2,0..1").coords(2).unwrap(), vec![0, 1]);
        assert_eq!(g("0; 1,3; 0..2,0..1").coords(4).unwrap(), vec![1, 1]);
        assert_eq!(g("7; 2,5; -1..1,-3..2").coords(7).unwrap(), vec![0, 0]);
        assert!(matches!(g("0; 2; 0..3").coords(3), Err(Error::NotInGap(3))));
    }

    fn arb_gap(max_dim: usize, max_w: i128, max_q: i128) -> impl Strategy<Value = Gap> {
        (1..=max_dim)
            .prop_flat_map(move |d| {
                (
                    -20i128..20,
                    prop::collection::vec((1..=max_q).prop_flat_map(|q| prop_oneof![Just(q), Just(-q)]), d),
                    prop::collection::vec((-3i128..3, 1..=max_w), d),
                )
            })
            .prop_map(|(x, q, b)| {
                Gap::new(x, q, b.into_iter().map(|(a, w)| (a, a + w - 1)).collect()).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn elements_match_enumeration(gap in arb_gap(3, 6, 12)) {
            let got: BTreeSet<i64> = gap.elements(CAP).unwrap().iter().collect();
            prop_assert_eq!(got, brute_elements(&gap));
        }

        #[test]
        fn size_at_most_volume_and_proper_iff_equal(gap in arb_gap(3, 6, 12)) {
            let n = gap.distinct_count(CAP).unwrap();
            let vol = gap.volume().unwrap() as u128;
            prop_assert!(n <= vol);
            prop_assert_eq!(gap.is_proper(CAP).unwrap(), n == vol);
        }

        #[test]
        fn s_properness_monotone(gap in arb_gap(3, 5, 10)) {
            let flags: Vec<bool> = (1..=4).map(|s| gap.is_s_proper(s, CAP).unwrap()).collect();
            prop_assert_eq!(flags[0], gap.is_proper(CAP).unwrap());
            for w in flags.windows(2) {
                prop_assert!(w[0] || !w[1], "s-proper must be nonincreasing: {:?}", flags);
            }
        }

        #[test]
        fn coords_denote_value_and_are_lex_min(gap in arb_gap(3, 5, 9)) {
            let mut first: std::collections::BTreeMap<i128, Vec<i128>> = Default::default();
            gap.for_each_tuple(|n| {
                first.entry(gap.value_at(n)?).or_insert_with(|| n.to_vec());
                Ok(())
            }).unwrap();
            for (v, n) in first {
                prop_assert_eq!(gap.coords(v).unwrap(), n);
            }
        }

        #[test]
        fn normalize_and_center_preserve_set(gap in arb_gap(3, 5, 9)) {
            let base = gap.elements(CAP).unwrap();
            if gap.is_homogeneous() {
                let n = gap.normalize_homogeneous().unwrap();
                prop_assert_eq!(n.offset(), 0);
                prop_assert_eq!(n.elements(CAP).unwrap(), base.clone());
            }
            if base.contains(0) {
                let c = gap.center().unwrap();
                prop_assert!(c.is_centered());
                prop_assert_eq!(c.elements(CAP).unwrap(), base);
            } else {
                prop_assert!(gap.center().is_err());
            }
        }
    }
}
