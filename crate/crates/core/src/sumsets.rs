//! Subset sums, iterated sumsets, progression detection and the greedy
//! growth procedure, all on [`IntSet`] bit vectors.

use crate::error::{cap_check, Error, Result};
use crate::gap::Gap;
use crate::int_set::IntSet;

/// Window `[sum of negatives, sum of positives]` that contains every subset sum.
fn sum_window(a: &[i64]) -> Result<(i64, i64)> {
    let mut lo = 0i64;
    let mut hi = 0i64;
    for &x in a {
        if x < 0 {
            lo = lo.checked_add(x).ok_or(Error::Overflow("subset sum window"))?;
        } else {
            hi = hi.checked_add(x).ok_or(Error::Overflow("subset sum window"))?;
        }
    }
    Ok((lo, hi))
}

/// Σ(a) for a multiset `a`, by one shift-or per element.
pub fn subset_sums(a: &[i64], cap: u64) -> Result<IntSet> {
    let (lo, hi) = sum_window(a)?;
    let mut s = IntSet::with_window(lo, hi, cap)?;
    s.insert(0);
    for &x in a {
        s.shift_or_in_place(x);
    }
    Ok(s)
}

/// `h`-fold sumset; `h = 0` gives `{0}`.
pub fn hfold(a: &IntSet, h: u64, cap: u64) -> Result<IntSet> {
    if a.is_empty() {
        return Ok(IntSet::empty());
    }
    let span = (a.max().unwrap() as i128 - a.min().unwrap() as i128) as u128;
    cap_check("h-fold window", span.saturating_mul(h as u128) + 1, cap)?;
    let mut acc = IntSet::singleton(0);
    let mut power = a.clone();
    let mut h = h;
    while h > 0 {
        if h & 1 == 1 {
            acc = acc.sumset(&power, cap)?;
        }
        h >>= 1;
        if h > 0 {
            power = power.sumset(&power, cap)?;
        }
    }
    Ok(acc)
}

/// Sums of exactly `j` elements for every `j` in `0..=kmax`, layered by count.
pub fn exact_k_layers(a: &[i64], kmax: usize, cap: u64) -> Result<Vec<IntSet>> {
    let (lo, hi) = sum_window(a)?;
    let mut layers = vec![IntSet::with_window(lo, hi, cap)?; kmax + 1];
    layers[0].insert(0);
    for (i, &x) in a.iter().enumerate() {
        for j in (1..=kmax.min(i + 1)).rev() {
            let (prev, cur) = layers.split_at_mut(j);
            cur[0].or_shifted(&prev[j - 1], x);
        }
    }
    Ok(layers)
}

/// Sums of exactly-`k`-element sub-multisets of `a`.
pub fn exact_k_subset_sums(a: &[i64], k: usize, cap: u64) -> Result<IntSet> {
    if k > a.len() {
        return Err(Error::Precondition(format!(
            "k = {k} exceeds the {} available elements",
            a.len()
        )));
    }
    Ok(exact_k_layers(a, k, cap)?.pop().unwrap())
}

/// Indices of `k` elements of `a` summing to `target`, if any.
pub fn exact_k_witness(a: &[i64], k: usize, target: i64, cap: u64) -> Result<Option<Vec<usize>>> {
    if k > a.len() {
        return Ok(None);
    }
    // tables[i] = layers over the prefix a[..i]
    let mut tables = Vec::with_capacity(a.len() + 1);
    for i in 0..=a.len() {
        tables.push(exact_k_layers(&a[..i], k, cap)?);
    }
    if !tables[a.len()][k].contains(target) {
        return Ok(None);
    }
    let mut picked = Vec::with_capacity(k);
    let (mut i, mut j, mut t) = (a.len(), k, target);
    while j > 0 {
        if tables[i - 1][j].contains(t) {
            i -= 1;
        } else {
            i -= 1;
            picked.push(i);
            j -= 1;
            t -= a[i];
        }
    }
    picked.reverse();
    Ok(Some(picked))
}

/// Arithmetic progression `(start, diff, length)` found in a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Progression {
    pub start: i64,
    pub diff: i64,
    pub len: u64,
}

impl Progression {
    pub fn terms(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.len as i64).map(move |k| self.start + k * self.diff)
    }
}

/// Longest run with difference `d` among starts in `starts` (a subset of `s`).
fn longest_with_diff(s: &IntSet, mut starts: IntSet, d: i64) -> Option<(i64, u64)> {
    starts.min()?;
    let mut len = 1u64;
    loop {
        let mut next = starts.clone();
        next.and_shifted(s, -(len as i64) * d);
        if next.is_empty() {
            break;
        }
        starts = next;
        len += 1;
    }
    Some((starts.min().unwrap(), len))
}

/// Longest AP in `s`; ties go to the smallest difference, then the smallest start.
pub fn longest_ap(s: &IntSet) -> Option<Progression> {
    let (lo, hi) = (s.min()?, s.max()?);
    let range = hi - lo;
    let mut best = Progression {
        start: lo,
        diff: 1,
        len: 1,
    };
    for d in 1..=range.max(1) {
        if ((range / d) as u64) < best.len {
            break;
        }
        if let Some((start, len)) = longest_with_diff(s, s.clone(), d) {
            if len > best.len {
                best = Progression {
                    start,
                    diff: d,
                    len,
                };
            }
        }
    }
    Some(best)
}

/// Longest AP in `s` whose difference divides its start. A single element
/// `x` counts with difference `max(|x|, 1)`.
pub fn longest_homogeneous_ap(s: &IntSet) -> Option<Progression> {
    let (lo, hi) = (s.min()?, s.max()?);
    let range = hi - lo;
    let mut best = Progression {
        start: lo,
        diff: lo.abs().max(1),
        len: 1,
    };
    for d in 1..=range.max(1) {
        if ((range / d) as u64) < best.len {
            break;
        }
        let mut starts = IntSet::with_window(lo, hi, u64::MAX).ok()?;
        let mut m = lo.div_euclid(d) * d;
        if m < lo {
            m += d;
        }
        while m <= hi {
            if s.contains(m) {
                starts.insert(m);
            }
            m += d;
        }
        if let Some((start, len)) = longest_with_diff(s, starts, d) {
            if len > best.len {
                best = Progression {
                    start,
                    diff: d,
                    len,
                };
            }
        }
    }
    Some(best)
}

pub fn contains_gap(s: &IntSet, g: &Gap, cap: u64) -> Result<bool> {
    Ok(g.elements(cap)?.is_subset(s))
}

/// `|(s + a) \ s|`.
pub fn shift_gain(s: &IntSet, a: i64) -> u64 {
    s.shift_gain(a)
}

/// Record of the greedy subset-sum growth process.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthTrace {
    pub chosen: Vec<i64>,
    /// `|Σ(0)|, ..., |Σ(j)|`.
    pub sizes: Vec<usize>,
    pub gains: Vec<u64>,
    pub remaining: Vec<i64>,
    pub sigma: IntSet,
}

/// Repeatedly adds the remaining element with the largest gain `|(Σ+a)\Σ|`,
/// breaking ties by the smallest value.
pub fn greedy_sigma_growth(a: &[i64], steps: usize, cap: u64) -> Result<GrowthTrace> {
    if steps > a.len() {
        return Err(Error::Precondition(format!(
            "{steps} steps requested for {} elements",
            a.len()
        )));
    }
    let (lo, hi) = sum_window(a)?;
    let mut sigma = IntSet::with_window(lo, hi, cap)?;
    sigma.insert(0);
    let mut remaining = a.to_vec();
    remaining.sort_unstable();
    let mut trace = GrowthTrace {
        chosen: Vec::with_capacity(steps),
        sizes: vec![1],
        gains: Vec::with_capacity(steps),
        remaining: Vec::new(),
        sigma: IntSet::empty(),
    };
    for _ in 0..steps {
        let mut best: Option<(usize, u64)> = None;
        for (i, &v) in remaining.iter().enumerate() {
            if i > 0 && remaining[i - 1] == v {
                continue;
            }
            let g = sigma.shift_gain(v);
            if best.is_none_or(|(_, bg)| g > bg) {
                best = Some((i, g));
            }
        }
        let (i, g) = best.unwrap();
        let v = remaining.remove(i);
        sigma.shift_or_in_place(v);
        trace.chosen.push(v);
        trace.gains.push(g);
        trace.sizes.push(sigma.len());
    }
    trace.remaining = remaining;
    trace.sigma = sigma;
    Ok(trace)
}

/// Smallest `k <= kmax` with `|k(s ∪ {0})| >= target`.
pub fn growth_multiplier(s: &[i64], target: usize, kmax: u64, cap: u64) -> Result<Option<u64>> {
    let base = IntSet::from_values(s.iter().copied().chain([0]), cap)?;
    let mut acc = IntSet::singleton(0);
    for k in 1..=kmax {
        acc = acc.sumset(&base, cap)?;
        if acc.len() >= target {
            return Ok(Some(k));
        }
        if k >= 2 && base.len() == 1 {
            break;
        }
    }
    Ok(None)
}

/// An element `a` of `a_set` with `|(s+a)\s| >= |s|/(2k)`, given
/// `|k(a_set ∪ {0})| >= 2|s|`. Returns the element of largest gain.
pub fn growth_witness(s: &IntSet, a_set: &IntSet, k: u64, cap: u64) -> Result<(i64, u64)> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let mut base = a_set.union(&IntSet::singleton(0), cap)?;
    base = base.compact();
    let kfold = hfold(&base, k, cap)?;
    if kfold.len() < 2 * s.len() {
        return Err(Error::Precondition(format!(
            "|{k}(A ∪ {{0}})| = {} is below 2|S| = {}",
            kfold.len(),
            2 * s.len()
        )));
    }
    let mut best: Option<(i64, u64)> = None;
    for v in a_set.iter() {
        let g = s.shift_gain(v);
        if best.is_none_or(|(_, bg)| g > bg) {
            best = Some((v, g));
        }
    }
    let (v, g) = best.ok_or_else(|| Error::Precondition("A is empty".into()))?;
    if (g as u128) * 2 * (k as u128) < s.len() as u128 {
        return Err(Error::BoundViolated(format!(
            "best gain {g} is below |S|/(2k) = {}/{}",
            s.len(),
            2 * k
        )));
    }
    Ok((v, g))
}

/// Nonempty run of indices among the first `a` entries whose sum is `0 mod a`.
pub fn zero_sum_subset_mod(xs: &[i64], a: u64) -> Result<Vec<usize>> {
    if a == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    if (xs.len() as u64) < a {
        return Err(Error::Precondition(format!(
            "need at least {a} integers, got {}",
            xs.len()
        )));
    }
    let m = a as i128;
    let mut seen = vec![usize::MAX; a as usize];
    seen[0] = 0;
    let mut prefix = 0i128;
    for (j, &x) in xs.iter().enumerate().take(a as usize) {
        prefix = (prefix + x as i128).rem_euclid(m);
        let r = prefix as usize;
        if seen[r] != usize::MAX {
            return Ok((seen[r]..=j).collect());
        }
        seen[r] = j + 1;
    }
    unreachable!("a + 1 prefix residues modulo a always collide")
}

/// Greedy partition into parts of size at most `a` whose sums are divisible
/// by `a`, except possibly the last part.
pub fn divisible_partition(xs: &[i64], a: u64) -> Result<Vec<Vec<i64>>> {
    if a == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    let mut rest = xs.to_vec();
    let mut parts = Vec::new();
    while rest.len() as u64 >= a {
        let idx = zero_sum_subset_mod(&rest, a)?;
        parts.push(idx.iter().map(|&i| rest[i]).collect());
        for &i in idx.iter().rev() {
            rest.remove(i);
        }
    }
    if !rest.is_empty() {
        parts.push(rest);
    }
    Ok(parts)
}

/// Minkowski sum of all the sets; the empty list gives `{0}`.
pub fn sum_of_sets(sets: &[IntSet], cap: u64) -> Result<IntSet> {
    sets.iter()
        .try_fold(IntSet::singleton(0), |acc, s| acc.sumset(s, cap))
}
