//! Non-averaging sets: the predicate with replayable witnesses, exact
//! searches for h(n), H(n) and H~(n), Bosznay's construction, and the
//! divisible-partition replay used to force a common subset sum.
//!
//! A set `S` of distinct integers is non-averaging iff, for every `a` in
//! `S`, the subset sums of `{t - a : t > a}` and of `{a - t : t < a}` share
//! only 0. The searches below maintain those two bit vectors per element,
//! so adding a new maximum costs one shifted intersection per element.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::sumsets::{self, divisible_partition, exact_k_layers, exact_k_witness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonAvgCertificate {
    pub verdict: bool,
    /// `(a, S)` with `S ⊆ A \ {a}`, `|S| >= 2`, `sum(S) = a |S|`.
    pub witness: Option<(i64, Vec<i64>)>,
}

impl NonAvgCertificate {
    /// Checks the witness against `a_set` directly.
    pub fn replays(&self, a_set: &[i64]) -> bool {
        match &self.witness {
            None => self.verdict,
            Some((a, s)) => {
                !self.verdict
                    && a_set.contains(a)
                    && s.len() >= 2
                    && s.iter().all(|x| x != a && a_set.contains(x))
                    && {
                        let mut d = s.clone();
                        d.sort_unstable();
                        d.dedup();
                        d.len() == s.len()
                    }
                    && s.iter().map(|&x| x as i128).sum::<i128>() == *a as i128 * s.len() as i128
            }
        }
    }
}

fn distinct_sorted(a: &[i64]) -> Vec<i64> {
    let mut v = a.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// For each `a` (ascending) and `k >= 2`, tests `k a` against the sums of
/// exactly `k` other elements; the first hit is backtraced into a witness.
pub fn is_non_averaging(a: &[i64], cap: u64) -> Result<NonAvgCertificate> {
    let v = distinct_sorted(a);
    let n = v.len();
    for (i, &x) in v.iter().enumerate() {
        let others: Vec<i64> = v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &y)| y).collect();
        let layers = exact_k_layers(&others, n - 1, cap)?;
        for (k, layer) in layers.iter().enumerate().skip(2) {
            let target = x.checked_mul(k as i64).ok_or(Error::Overflow("average target"))?;
            if layer.contains(target) {
                let idx = exact_k_witness(&others, k, target, cap)?
                    .expect("layer membership implies a witness");
                return Ok(NonAvgCertificate {
                    verdict: false,
                    witness: Some((x, idx.iter().map(|&j| others[j]).collect())),
                });
            }
        }
    }
    Ok(NonAvgCertificate {
        verdict: true,
        witness: None,
    })
}

/// `{ i q^3 + i(i+1)/2 : 1 <= i <= q-1 }`, a non-averaging subset of `[q^4]`.
pub fn bosznay(q: i64) -> Result<Vec<i64>> {
    if q < 2 {
        return Err(Error::Precondition("q must be at least 2".into()));
    }
    let q3 = q.checked_pow(3).ok_or(Error::Overflow("bosznay"))?;
    (1..q)
        .map(|i| {
            i.checked_mul(q3)
                .and_then(|x| x.checked_add(i * (i + 1) / 2))
                .ok_or(Error::Overflow("bosznay"))
        })
        .collect()
}

/// Σ(A) ∩ Σ(B) = {0}.
pub fn sigma_disjoint(a: &[i64], b: &[i64], cap: u64) -> Result<bool> {
    let sa = sumsets::subset_sums(a, cap)?;
    let sb = sumsets::subset_sums(b, cap)?;
    Ok(sa.intersection_len(&sb) == 1)
}

const WORDS: usize = 8;
/// Largest `n` handled by the bit-parallel searches (sums stay below 512).
pub const SEARCH_N_MAX: i64 = 31;

#[derive(Clone, Copy, PartialEq, Eq)]
struct Bits([u64; WORDS]);

impl Bits {
    const ZERO: Bits = Bits([0; WORDS]);

    fn unit() -> Bits {
        let mut b = Bits::ZERO;
        b.0[0] = 1;
        b
    }

    fn shl(&self, s: usize) -> Bits {
        let mut out = Bits::ZERO;
        let (ws, bs) = (s / 64, s % 64);
        for i in (ws..WORDS).rev() {
            let mut w = self.0[i - ws] << bs;
            if bs > 0 && i > ws {
                w |= self.0[i - ws - 1] >> (64 - bs);
            }
            out.0[i] = w;
        }
        out
    }

    fn or(&mut self, o: &Bits) {
        for i in 0..WORDS {
            self.0[i] |= o.0[i];
        }
    }

    /// Shared bits other than bit 0.
    fn meets_nonzero(&self, o: &Bits) -> bool {
        (self.0[0] & o.0[0]) >> 1 != 0 || (1..WORDS).any(|i| self.0[i] & o.0[i] != 0)
    }

    fn contains(&self, v: usize) -> bool {
        v < 64 * WORDS && self.0[v / 64] >> (v % 64) & 1 == 1
    }

    /// `self |= self << s`.
    fn absorb(&mut self, s: usize) {
        let sh = self.shl(s);
        self.or(&sh);
    }
}

/// Incremental non-averaging state over elements added in increasing order.
#[derive(Clone)]
struct NonAvgState {
    elems: Vec<i64>,
    /// Σ{t - a : t > a} for each element a.
    up: Vec<Bits>,
    /// Σ{a - t : t < a}, fixed once `a` is added.
    down: Vec<Bits>,
}

impl NonAvgState {
    fn new() -> Self {
        Self {
            elems: Vec::new(),
            up: Vec::new(),
            down: Vec::new(),
        }
    }

    /// Whether `e` (larger than every element) keeps the set non-averaging.
    /// A new maximum can never be an average, so only its role inside
    /// averages of earlier elements matters.
    fn admits(&self, e: i64) -> bool {
        self.elems
            .iter()
            .zip(self.up.iter().zip(&self.down))
            .all(|(&a, (up, down))| !up.shl((e - a) as usize).meets_nonzero(down))
    }

    fn push(&mut self, e: i64) {
        let mut down = Bits::unit();
        for &t in &self.elems {
            down.absorb((e - t) as usize);
        }
        for (a, up) in self.elems.iter().zip(self.up.iter_mut()) {
            up.absorb((e - a) as usize);
        }
        self.elems.push(e);
        self.up.push(Bits::unit());
        self.down.push(down);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalResult {
    pub n: i64,
    pub size: usize,
    pub witness: Vec<i64>,
    /// False when the node budget ran out; `size` is then a lower bound.
    pub exact: bool,
    pub nodes: u64,
}

fn check_search_n(n: i64) -> Result<()> {
    if !(0..=SEARCH_N_MAX).contains(&n) {
        return Err(Error::Precondition(format!(
            "exact searches support 0 <= n <= {SEARCH_N_MAX}, got {n}"
        )));
    }
    Ok(())
}

/// h(n) by trying every subset of `[n]`, largest sizes first.
pub fn h_exhaustive(n: i64, cap: u64) -> Result<ExtremalResult> {
    if !(0..=20).contains(&n) {
        return Err(Error::Precondition(format!("exhaustive h(n) needs n <= 20, got {n}")));
    }
    let mut nodes = 0;
    for size in (0..=n as usize).rev() {
        let mut masks: Vec<u32> = (0u32..1 << n).filter(|m| m.count_ones() as usize == size).collect();
        masks.sort_unstable_by_key(|m| m.reverse_bits());
        for m in masks {
            nodes += 1;
            let s: Vec<i64> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect();
            if is_non_averaging(&s, cap)?.verdict {
                return Ok(ExtremalResult {
                    n,
                    size,
                    witness: s,
                    exact: true,
                    nodes,
                });
            }
        }
    }
    unreachable!("the empty set is non-averaging")
}

struct HSearch<'a> {
    n: i64,
    table: &'a [usize],
    best: Vec<i64>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl HSearch<'_> {
    fn dfs(&mut self, st: &NonAvgState) {
        let last = *st.elems.last().unwrap();
        for e in last + 1..=self.n {
            // any extension lives in [e, n], a translate of [n - e + 1]
            if st.elems.len() + self.table[(self.n - e + 1) as usize] <= self.best.len() {
                return;
            }
            if self.nodes >= self.budget {
                self.exhausted = true;
                return;
            }
            self.nodes += 1;
            if !st.admits(e) {
                continue;
            }
            let mut next = st.clone();
            next.push(e);
            if next.elems.len() > self.best.len() {
                self.best = next.elems.clone();
                debug_assert!(is_non_averaging(&self.best, 1 << 20).unwrap().verdict);
            }
            self.dfs(&next);
        }
    }
}

/// h(1..=nmax) by branch and bound. Optimal sets may be translated to start
/// at 1; extensions past `e` are bounded by `h(n - e + 1)` from the table
/// built so far.
pub fn h_table(nmax: i64, budget: u64) -> Result<Vec<ExtremalResult>> {
    check_search_n(nmax)?;
    let mut table: Vec<usize> = vec![0];
    let mut out = Vec::new();
    for n in 1..=nmax {
        let mut st = NonAvgState::new();
        st.push(1);
        let mut s = HSearch {
            n,
            table: &table,
            best: vec![1],
            nodes: 1,
            budget,
            exhausted: false,
        };
        s.dfs(&st);
        let res = ExtremalResult {
            n,
            size: s.best.len(),
            witness: s.best,
            exact: !s.exhausted,
            nodes: s.nodes,
        };
        // a lower bound in the table would only weaken pruning later
        table.push(res.size);
        out.push(res);
    }
    Ok(out)
}

pub fn h_exact(n: i64, budget: u64) -> Result<ExtremalResult> {
    if n == 0 {
        return Ok(ExtremalResult {
            n,
            size: 0,
            witness: Vec::new(),
            exact: true,
            nodes: 0,
        });
    }
    let mut t = h_table(n, budget)?;
    let last = t.pop().unwrap();
    let all_exact = t.iter().all(|r| r.exact) && last.exact;
    Ok(ExtremalResult {
        exact: all_exact,
        ..last
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairResult {
    pub n: i64,
    pub size: usize,
    pub witness: (Vec<i64>, Vec<i64>),
    pub exact: bool,
    pub nodes: u64,
}

struct PairSearch {
    n: i64,
    m: usize,
    tilde: bool,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl PairSearch {
    /// Chooses the first set; `sigma` is its subset-sum vector.
    fn pick_a(&mut self, a: &mut Vec<i64>, st: &NonAvgState, sigma: Bits, from: i64) -> Option<(Vec<i64>, Vec<i64>)> {
        if a.len() == self.m {
            let mut b = Vec::new();
            let lo = if self.tilde { *a.last().unwrap() + 1 } else { a[0] + 1 };
            return self.pick_b(a, &mut b, &NonAvgState::new(), &sigma, Bits::unit(), lo);
        }
        let need = self.m - a.len();
        // with max(A) < min(B), all of B must also fit above e
        let after = if self.tilde { need - 1 + self.m } else { need - 1 };
        for e in from..=self.n {
            if self.n - e < after as i64 {
                break;
            }
            if self.nodes >= self.budget {
                self.exhausted = true;
                return None;
            }
            self.nodes += 1;
            if self.tilde && !st.admits(e) {
                continue;
            }
            let mut next_st = st.clone();
            if self.tilde {
                next_st.push(e);
            }
            let mut s2 = sigma;
            s2.absorb(e as usize);
            a.push(e);
            let r = self.pick_a(a, &next_st, s2, e + 1);
            a.pop();
            if r.is_some() || self.exhausted {
                return r;
            }
        }
        None
    }

    fn pick_b(
        &mut self,
        a: &[i64],
        b: &mut Vec<i64>,
        st: &NonAvgState,
        sigma_a: &Bits,
        sigma_b: Bits,
        from: i64,
    ) -> Option<(Vec<i64>, Vec<i64>)> {
        if b.len() == self.m {
            return Some((a.to_vec(), b.clone()));
        }
        let need = (self.m - b.len()) as i64;
        for e in from..=self.n {
            if self.n - e + 1 < need {
                break;
            }
            if self.nodes >= self.budget {
                self.exhausted = true;
                return None;
            }
            self.nodes += 1;
            if a.contains(&e) {
                continue;
            }
            // new subset sums all contain e, so they are positive
            let fresh = sigma_b.shl(e as usize);
            if fresh.meets_nonzero(sigma_a) || sigma_a.contains(e as usize) {
                continue;
            }
            if self.tilde && !st.admits(e) {
                continue;
            }
            let mut next_st = st.clone();
            if self.tilde {
                next_st.push(e);
            }
            let mut sb = sigma_b;
            sb.or(&fresh);
            b.push(e);
            let r = self.pick_b(a, b, &next_st, sigma_a, sb, e + 1);
            b.pop();
            if r.is_some() || self.exhausted {
                return r;
            }
        }
        None
    }
}

fn pair_search(n: i64, budget: u64, tilde: bool) -> Result<PairResult> {
    check_search_n(n)?;
    let mut best = PairResult {
        n,
        size: 0,
        witness: (Vec::new(), Vec::new()),
        exact: true,
        nodes: 0,
    };
    // feasibility is monotone in m: drop one element from each set
    for m in 1..=(n as usize / 2) {
        let mut s = PairSearch {
            n,
            m,
            tilde,
            nodes: 0,
            budget: budget.saturating_sub(best.nodes),
            exhausted: false,
        };
        let found = s.pick_a(&mut Vec::new(), &NonAvgState::new(), Bits::unit(), 1);
        best.nodes += s.nodes;
        match found {
            Some(w) => {
                best.size = m;
                best.witness = w;
            }
            None => {
                best.exact = !s.exhausted;
                break;
            }
        }
    }
    Ok(best)
}

/// H(n): the largest `m` with two `m`-subsets of `[n]` whose subset sums
/// meet only in 0. The pair is ordered by `min(A) < min(B)`.
pub fn big_h_exact(n: i64, budget: u64) -> Result<PairResult> {
    pair_search(n, budget, false)
}

/// H~(n): as H(n) with both sets non-averaging and `max(A) < min(B)`.
pub fn h_tilde_exact(n: i64, budget: u64) -> Result<PairResult> {
    pair_search(n, budget, true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HBoundRow {
    pub n: i64,
    pub h: usize,
    pub big_h: usize,
    pub h_tilde: usize,
    pub exact: bool,
    /// `2 H~(n) + 2 - h(n)`.
    pub slack: i64,
    pub holds: bool,
    pub runtime_ms: u128,
}

/// Computes h, H and H~ at `n` and checks `h <= 2 H~ + 2` and `H~ <= H`.
pub fn verify_h_bound(n: i64, budget: u64) -> Result<HBoundRow> {
    let t0 = Instant::now();
    let h = h_exact(n, budget)?;
    let big = big_h_exact(n, budget)?;
    let tilde = h_tilde_exact(n, budget)?;
    let slack = 2 * tilde.size as i64 + 2 - h.size as i64;
    Ok(HBoundRow {
        n,
        h: h.size,
        big_h: big.size,
        h_tilde: tilde.size,
        exact: h.exact && big.exact && tilde.exact,
        slack,
        holds: slack >= 0 && tilde.size <= big.size,
        runtime_ms: t0.elapsed().as_millis(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonSumOutcome {
    pub parts: Vec<Vec<i64>>,
    /// Cumulative sums of the divisible parts, in order.
    pub partial_sums: Vec<i64>,
    /// First nonzero partial sum on the progression, with the elements used.
    pub common: Option<(i64, Vec<i64>)>,
}

/// Replays the divisible-partition argument: given that Σ(A) contains the
/// homogeneous progression `start, start + diff, ..., start + (len-1) diff`,
/// partition Ã greedily into parts with sums divisible by `diff` and look for
/// a nonzero cumulative sum on the progression. Any hit is verified to lie in
/// both Σ(A) and Σ(Ã).
pub fn common_sum_check(
    a_set: &[i64],
    a_tilde: &[i64],
    diff: i64,
    start: i64,
    len: u64,
    cap: u64,
) -> Result<CommonSumOutcome> {
    if diff <= 0 || start % diff != 0 || len == 0 {
        return Err(Error::Precondition(
            "the progression must be homogeneous with positive difference".into(),
        ));
    }
    let sa = sumsets::subset_sums(a_set, cap)?;
    let end = start + (len as i64 - 1) * diff;
    if (0..len as i64).any(|k| !sa.contains(start + k * diff)) {
        return Err(Error::Precondition("Σ(A) does not contain the progression".into()));
    }
    let parts = divisible_partition(a_tilde, diff as u64)?;
    let mut partial_sums = Vec::new();
    let mut used: Vec<i64> = Vec::new();
    let mut acc = 0i64;
    let mut common = None;
    for p in &parts {
        let s: i64 = p.iter().sum();
        if s.rem_euclid(diff) != 0 {
            break;
        }
        acc += s;
        used.extend(p);
        partial_sums.push(acc);
        if common.is_none() && acc != 0 && acc >= start && acc <= end {
            common = Some((acc, used.clone()));
        }
    }
    if let Some((v, _)) = &common {
        let st = sumsets::subset_sums(a_tilde, cap)?;
        debug_assert!(sa.contains(*v) && st.contains(*v));
        if !(sa.contains(*v) && st.contains(*v)) {
            return Err(Error::BoundViolated(format!("{v} is not a common subset sum")));
        }
    }
    Ok(CommonSumOutcome {
        parts,
        partial_sums,
        common,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const CAP: u64 = 1 << 22;

    /// Direct definition: some element is the mean of >= 2 others.
    fn averaging_by_definition(a: &[i64]) -> bool {
        let v = distinct_sorted(a);
        for (i, &x) in v.iter().enumerate() {
            let others: Vec<i64> = v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &y)| y).collect();
            for m in 0u32..1 << others.len() {
                let k = m.count_ones() as i64;
                if k < 2 {
                    continue;
                }
                let s: i64 = (0..others.len()).filter(|j| m >> j & 1 == 1).map(|j| others[j]).sum();
                if s == x * k {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn predicate_examples() {
        let c = is_non_averaging(&[1, 2, 3], CAP).unwrap();
        assert!(!c.verdict);
        assert_eq!(c.witness, Some((2, vec![1, 3])));
        assert!(c.replays(&[1, 2, 3]));
        assert!(is_non_averaging(&[1, 2, 4, 5], CAP).unwrap().verdict);
        assert!(is_non_averaging(&[28, 57], CAP).unwrap().verdict);
        assert!(is_non_averaging(&[], CAP).unwrap().verdict);
    }

    #[test]
    fn bosznay_examples() {
        assert_eq!(bosznay(3).unwrap(), vec![28, 57]);
        assert_eq!(bosznay(4).unwrap(), vec![65, 131, 198]);
        assert_eq!(bosznay(2).unwrap(), vec![9]);
        assert!(bosznay(1).is_err());
    }

    #[test]
    fn sigma_disjoint_examples() {
        assert!(sigma_disjoint(&[1], &[2], CAP).unwrap());
        assert!(!sigma_disjoint(&[1, 2], &[3], CAP).unwrap());
        assert!(sigma_disjoint(&[1, 2], &[4, 8], CAP).unwrap());
    }

    #[test]
    fn small_h_values() {
        let t = h_table(5, u64::MAX).unwrap();
        let sizes: Vec<usize> = t.iter().map(|r| r.size).collect();
        assert_eq!(sizes, vec![1, 2, 2, 3, 4]);
        assert!(t.iter().all(|r| r.exact));
        assert_eq!(t[4].witness, vec![1, 2, 4, 5]);
        assert_eq!(h_exact(0, 10).unwrap().size, 0);
    }

    #[test]
    fn branch_and_bound_matches_exhaustive() {
        let t = h_table(12, u64::MAX).unwrap();
        for r in &t {
            let e = h_exhaustive(r.n, CAP).unwrap();
            assert_eq!(r.size, e.size, "n = {}", r.n);
            assert!(is_non_averaging(&r.witness, CAP).unwrap().verdict);
            assert!(r.witness.iter().all(|&x| 1 <= x && x <= r.n));
        }
    }

    #[test]
    fn budget_flags_lower_bound() {
        let r = h_exact(14, 50).unwrap();
        assert!(!r.exact);
        assert!(is_non_averaging(&r.witness, CAP).unwrap().verdict);
    }

    #[test]
    fn pair_examples() {
        assert_eq!(big_h_exact(1, u64::MAX).unwrap().size, 0);
        let r = big_h_exact(2, u64::MAX).unwrap();
        assert_eq!(r.size, 1);
        assert_eq!(r.witness, (vec![1], vec![2]));
        assert_eq!(h_tilde_exact(1, u64::MAX).unwrap().size, 0);
        assert_eq!(h_tilde_exact(2, u64::MAX).unwrap().size, 1);
    }

    /// Exhaustive pair oracle over bitmasks.
    fn pair_oracle(n: i64, tilde: bool) -> usize {
        let sets: Vec<Vec<i64>> = (0u32..1 << n)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect())
            .collect();
        let mut best = 0;
        for a in &sets {
            for b in &sets {
                if a.len() != b.len() || a.len() <= best || a.is_empty() {
                    continue;
                }
                if tilde
                    && (a.last() >= b.first()
                        || averaging_by_definition(a)
                        || averaging_by_definition(b))
                {
                    continue;
                }
                if sigma_disjoint(a, b, CAP).unwrap() {
                    best = a.len();
                }
            }
        }
        best
    }

    #[test]
    fn pair_searches_match_oracle() {
        for n in 1..=8 {
            let big = big_h_exact(n, u64::MAX).unwrap();
            let tilde = h_tilde_exact(n, u64::MAX).unwrap();
            assert_eq!(big.size, pair_oracle(n, false), "H({n})");
            assert_eq!(tilde.size, pair_oracle(n, true), "H~({n})");
            assert!(tilde.size <= big.size);
            let (a, b) = &big.witness;
            assert!(sigma_disjoint(a, b, CAP).unwrap());
            let (a, b) = &tilde.witness;
            if tilde.size > 0 {
                assert!(a.last() < b.first());
                assert!(is_non_averaging(a, CAP).unwrap().verdict);
                assert!(is_non_averaging(b, CAP).unwrap().verdict);
                assert!(sigma_disjoint(a, b, CAP).unwrap());
            }
        }
    }

    #[test]
    fn bound_rows() {
        let r = verify_h_bound(2, u64::MAX).unwrap();
        assert_eq!((r.h, r.h_tilde), (2, 1));
        assert!(r.holds);
        let r = verify_h_bound(1, u64::MAX).unwrap();
        assert_eq!((r.h, r.h_tilde, r.slack), (1, 0, 1));
        assert!(verify_h_bound(5, u64::MAX).unwrap().holds);
    }

    #[test]
    fn common_sum_examples() {
        // Σ({2,2,2,2}) = {0,2,4,6,8}
        let a = [2, 2, 2, 2];
        let out = common_sum_check(&a, &[2, 4], 2, 0, 5, CAP).unwrap();
        assert_eq!(out.parts, vec![vec![2], vec![4]]);
        assert_eq!(out.partial_sums, vec![2, 6]);
        assert_eq!(out.common.as_ref().unwrap().0, 2);

        let out = common_sum_check(&[1, 2, 3], &[5], 1, 0, 7, CAP).unwrap();
        assert_eq!(out.common.unwrap().0, 5);

        // the only part sum overshoots the progression
        let out = common_sum_check(&[1, 1], &[7, 9], 2, 0, 2, CAP).unwrap();
        assert!(out.common.is_none());

        assert!(common_sum_check(&[1], &[1], 2, 1, 1, CAP).is_err());
        assert!(common_sum_check(&[1], &[1], 1, 0, 5, CAP).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn predicate_matches_definition(a in prop::collection::btree_set(-30i64..60, 0..10)) {
            let v: Vec<i64> = a.into_iter().collect();
            let c = is_non_averaging(&v, CAP).unwrap();
            prop_assert_eq!(c.verdict, !averaging_by_definition(&v));
            prop_assert!(c.replays(&v));
        }

        #[test]
        fn incremental_state_matches_predicate(a in prop::collection::btree_set(1i64..31, 1..10)) {
            let v: Vec<i64> = a.into_iter().collect();
            let mut st = NonAvgState::new();
            let mut ok = true;
            for &e in &v {
                if !st.admits(e) {
                    ok = false;
                    break;
                }
                st.push(e);
            }
            prop_assert_eq!(ok, is_non_averaging(&v, CAP).unwrap().verdict);
        }
    }
}
