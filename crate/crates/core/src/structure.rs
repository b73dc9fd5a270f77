//! Doubling profiles, bounding boxes, and desk-scale checkers for the
//! stability and resilience properties, plus the preprocessing loop that
//! strips a set down to a stable core.

use log::{debug, info};
use num_integer::Integer;
use rand::seq::index::sample;

use crate::arith::{gcd, gcd_all};
use crate::config::ExperimentConfig;
use crate::error::{cap_check, Error, Result};
use crate::gap::Gap;
use crate::geometry::PointCloud;
use crate::int_set::IntSet;
use crate::rng::{bernoulli, trial_rng};
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct DoublingProfile {
    /// `|2^z A|` for `z = 0..=zmax`.
    pub sizes: Vec<usize>,
    pub ratios: Vec<f64>,
}

pub fn doubling_profile(a: &IntSet, zmax: u32, cap: u64) -> Result<DoublingProfile> {
    let (Some(lo), Some(hi)) = (a.min(), a.max()) else {
        return Err(Error::Precondition("doubling profile of the empty set".into()));
    };
    let span = (hi as i128 - lo as i128) as u128;
    cap_check(
        "doubling window",
        span.saturating_mul(1u128 << zmax.min(100)) + 1,
        cap,
    )?;
    let mut cur = a.clone();
    let mut sizes = vec![cur.len()];
    for _ in 0..zmax {
        cur = cur.sumset(&cur, cap)?;
        sizes.push(cur.len());
    }
    let ratios = sizes.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    Ok(DoublingProfile { sizes, ratios })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HDimension {
    pub d_prime: u32,
    pub y: u32,
    pub profile: DoublingProfile,
}

/// Smallest `d'` such that `|2^{z+1} A| <= 2^{d' + 1/2} |2^z A|` for some `z`
/// with `T <= z` and `T 2^z <= h`; `y` is the first such `z`. The test is the
/// exact integer comparison `s1^2 <= 2^{2d'+1} s0^2`.
pub fn empirical_h_dimension(a: &IntSet, h: u64, t: u32, cap: u64) -> Result<HDimension> {
    if !a.contains(0) {
        return Err(Error::Precondition("the set must contain 0".into()));
    }
    if t == 0 || h < t as u64 {
        return Err(Error::Precondition(format!("no doubling window for h = {h}, T = {t}")));
    }
    let mut zmax = 0u32;
    while (t as u128) << (zmax + 1) <= h as u128 {
        zmax += 1;
    }
    if zmax < t {
        return Err(Error::Precondition(format!(
            "empty doubling window: T = {t} exceeds log2(h/T) for h = {h}"
        )));
    }
    let profile = doubling_profile(a, zmax + 1, cap)?;
    let mut best: Option<(u32, u32)> = None;
    for z in t..=zmax {
        let s0 = profile.sizes[z as usize] as u128;
        let s1 = profile.sizes[z as usize + 1] as u128;
        let mut d = 0u32;
        while s1 * s1 > (s0 * s0) << (2 * d + 1) {
            d += 1;
        }
        if best.is_none_or(|(bd, _)| d < bd) {
            best = Some((d, z));
        }
    }
    let (d_prime, y) = best.unwrap();
    Ok(HDimension {
        d_prime,
        y,
        profile,
    })
}

/// Minimal one-dimensional progression containing `a`: difference
/// `gcd(a - a)`, offset `min(a)`.
pub fn bounding_box_1d(a: &IntSet) -> Result<Gap> {
    let lo = a
        .min()
        .ok_or_else(|| Error::Precondition("bounding box of the empty set".into()))?;
    let hi = a.max().unwrap();
    let g = gcd_all(a.iter().map(|v| (v - lo) as i128));
    if g == 0 {
        return Gap::new(lo as i128, vec![1], vec![(0, 0)]);
    }
    Gap::new(lo as i128, vec![g], vec![(0, (hi - lo) as i128 / g)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundingBox {
    pub gap: Gap,
    /// True when the difference search covered every pair up to `max(A)`.
    pub exact: bool,
}

impl BoundingBox {
    pub fn volume(&self) -> i128 {
        self.gap.volume().expect("bounding boxes are small")
    }
}

type Box2 = (i128, (i128, i128), (i128, i128));

/// Best box for a fixed pair `(q1, q2)` over values `vals` (already shifted
/// so the minimum is 0). The first coordinate of each value is determined
/// modulo `P = q2 / g`; every cyclic window of `P` representatives is tried,
/// together with the two one-difference representations.
fn box_for_pair(vals: &[i128], q1: i128, q2: i128) -> Option<Box2> {
    let g = gcd(q1, q2);
    if vals.iter().any(|v| v % g != 0) {
        return None;
    }
    let p = q2 / g;
    let r1 = q1 / g;
    let inv = if p == 1 {
        0
    } else {
        let e = r1.extended_gcd(&p);
        e.x.rem_euclid(p)
    };
    // (residue of n1, n2 for that residue)
    let mut reps: Vec<(i128, i128)> = vals
        .iter()
        .map(|&v| {
            let v = v / g;
            let n1 = (v.rem_euclid(p) * inv).rem_euclid(p);
            (n1, (v - n1 * r1) / p)
        })
        .collect();
    reps.sort_unstable();
    let k = reps.len();
    // suffix min/max of n2 over reps[i..], prefix min/max of (n2 - r1) over reps[..i]
    let mut suf = vec![(i128::MAX, i128::MIN); k + 1];
    for i in (0..k).rev() {
        suf[i] = (suf[i + 1].0.min(reps[i].1), suf[i + 1].1.max(reps[i].1));
    }
    let mut best: Option<Box2> = None;
    let mut consider = |b1: (i128, i128), b2: (i128, i128)| {
        let vol = (b1.1 - b1.0 + 1) * (b2.1 - b2.0 + 1);
        if best.is_none_or(|(bv, _, _)| vol < bv) {
            best = Some((vol, b1, b2));
        }
    };
    let mut pre = (i128::MAX, i128::MIN);
    for i in 0..k {
        if i == 0 || reps[i].0 != reps[i - 1].0 {
            let n1_lo = reps[i].0;
            let n1_hi = if i == 0 { reps[k - 1].0 } else { reps[i - 1].0 + p };
            let n2 = (pre.0.min(suf[i].0), pre.1.max(suf[i].1));
            consider((n1_lo, n1_hi), n2);
        }
        pre = (pre.0.min(reps[i].1 - r1), pre.1.max(reps[i].1 - r1));
    }
    let lo = *vals.iter().min().unwrap();
    let hi = *vals.iter().max().unwrap();
    if vals.iter().all(|v| v % q1 == 0) {
        consider((lo / q1, hi / q1), (0, 0));
    }
    if vals.iter().all(|v| v % q2 == 0) {
        consider((0, 0), (lo / q2, hi / q2));
    }
    best
}

/// Minimal-volume two-dimensional progression containing `a`, searched over
/// difference pairs `1 <= q1 < q2 <= diff_bound`. Ties go to the
/// lexicographically smallest pair.
pub fn bounding_box_2d(a: &IntSet, diff_bound: i64) -> Result<BoundingBox> {
    let lo = a
        .min()
        .ok_or_else(|| Error::Precondition("bounding box of the empty set".into()))?;
    let hi = a.max().unwrap();
    let vals: Vec<i128> = a.iter().map(|v| (v - lo) as i128).collect();
    let b = diff_bound as i128;
    let mut best: Option<(Box2, i128, i128)> = None;
    for q1 in 1..=b {
        for q2 in q1 + 1..=b {
            if let Some(c) = box_for_pair(&vals, q1, q2) {
                if best.as_ref().is_none_or(|(bc, _, _)| c.0 < bc.0) {
                    best = Some((c, q1, q2));
                }
            }
        }
    }
    let exact = diff_bound >= hi.max(1);
    let gap = match best {
        Some(((_, b1, b2), q1, q2)) => Gap::new(lo as i128, vec![q1, q2], vec![b1, b2])?,
        None => {
            let one = bounding_box_1d(a)?;
            let q = one.diffs()[0];
            Gap::new(one.offset(), vec![q, q + 1], vec![one.bounds()[0], (0, 0)])?
        }
    };
    Ok(BoundingBox { gap, exact })
}

/// `d`-bounding box for `d` in `{1, 2}`.
pub fn bounding_box(a: &IntSet, d: usize, diff_bound: i64) -> Result<BoundingBox> {
    match d {
        1 => Ok(BoundingBox {
            gap: bounding_box_1d(a)?,
            exact: true,
        }),
        2 => bounding_box_2d(a, diff_bound),
        _ => Err(Error::Precondition(format!(
            "bounding boxes are implemented for d <= 2, got {d}"
        ))),
    }
}

fn with_zero(a: &IntSet, cap: u64) -> Result<IntSet> {
    Ok(a.union(&IntSet::singleton(0), cap)?.compact())
}

fn diff_bound_for(a: &IntSet, cfg: &ExperimentConfig) -> i64 {
    cfg.diff_bound.unwrap_or_else(|| a.max().unwrap_or(0).max(2))
}

/// Outcome of a bounded search; inconclusive is never reported as false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable {
        dim: usize,
        gap: Gap,
        removed: Vec<i64>,
    },
    Inconclusive {
        explored: u64,
    },
}

impl Stability {
    pub fn is_stable(&self) -> bool {
        matches!(self, Stability::Stable)
    }
}

/// Calls `f` on every `k`-subset of `items` in lexicographic order until it
/// returns `Some`.
fn for_each_subset<T: Copy, R>(
    items: &[T],
    k: usize,
    mut f: impl FnMut(&[T]) -> Option<R>,
) -> Option<R> {
    let n = items.len();
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<T> = Vec::with_capacity(k);
    loop {
        buf.clear();
        buf.extend(idx.iter().map(|&i| items[i]));
        if let Some(r) = f(&buf) {
            return Some(r);
        }
        let i = (0..k).rev().find(|&i| idx[i] < n - k + i)?;
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn without(a: &IntSet, removed: &[i64]) -> IntSet {
    let mut out = a.clone();
    for &r in removed {
        out.remove(r);
    }
    out
}

/// Looks for at most `x` nonzero elements whose removal lets a GAP of
/// dimension `d` and volume at most `3/4` of the `d`-bounding box of
/// `a ∪ {0}` cover the rest. Since bounding-box volume is monotone under
/// inclusion, only removals of exactly `min(x, |a|-1)` elements are tried.
pub fn weak_stability_check(a: &IntSet, x: usize, cfg: &ExperimentConfig) -> Result<Stability> {
    let a0 = with_zero(a, cfg.cap)?;
    let bound = diff_bound_for(&a0, cfg);
    let nonzero: Vec<i64> = a0.iter().filter(|&v| v != 0).collect();
    let k = x.min(nonzero.len());
    if k == 0 {
        return Ok(Stability::Stable);
    }
    let mut explored = 0u64;
    for d in cfg.dims() {
        let full = bounding_box(&a0, d, bound)?.volume();
        let mut err = None;
        let hit = for_each_subset(&nonzero, k, |r| {
            if explored >= cfg.budget {
                return Some(None);
            }
            explored += 1;
            let rest = without(&a0, r);
            match bounding_box(&rest, d, bound) {
                Ok(bb) if 4 * bb.volume() <= 3 * full => Some(Some((bb.gap, r.to_vec()))),
                Ok(_) => None,
                Err(e) => {
                    err = Some(e);
                    Some(None)
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        match hit {
            Some(Some((gap, removed))) => {
                return Ok(Stability::Unstable {
                    dim: d,
                    gap,
                    removed,
                })
            }
            Some(None) => return Ok(Stability::Inconclusive { explored }),
            None => {}
        }
    }
    Ok(Stability::Stable)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Resilience {
    pub resilient: bool,
    /// Smallest observed `Vol(P_d(A' ∪ {0})) / Vol(P_d(A ∪ {0}))`.
    pub min_ratio: f64,
    /// `(d, A')` for the first violation.
    pub witness: Option<(usize, Vec<i64>)>,
    pub candidates: usize,
}

/// Searches subsets `A'` with `|A'| >= |A|/100` for a bounding box smaller
/// than `n^{-eps}` times that of `A ∪ {0}`, where `n = max(A) + 1`. Only
/// subsets of the minimum size are tried (volume is monotone), drawn from
/// sorted windows, windows inside residue classes, and `cfg.trials` random
/// subsets.
pub fn resilience_check(a: &IntSet, cfg: &ExperimentConfig) -> Result<Resilience> {
    let elems: Vec<i64> = a.iter().collect();
    if elems.is_empty() {
        return Err(Error::Precondition("resilience of the empty set".into()));
    }
    let n = (a.max().unwrap().max(0) + 1) as f64;
    let eps = *cfg.epsilon.numer() as f64 / *cfg.epsilon.denom() as f64;
    let size = elems.len().div_ceil(100);
    let mut cands: Vec<Vec<i64>> = Vec::new();
    for w in elems.windows(size) {
        cands.push(w.to_vec());
    }
    for p in 2..=16i64 {
        for r in 0..p {
            let class: Vec<i64> = elems.iter().copied().filter(|v| v.rem_euclid(p) == r).collect();
            for w in class.windows(size) {
                cands.push(w.to_vec());
            }
        }
    }
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let mut pick: Vec<i64> = sample(&mut rng, elems.len(), size)
            .into_iter()
            .map(|i| elems[i])
            .collect();
        pick.sort_unstable();
        cands.push(pick);
    }
    cands.sort();
    cands.dedup();

    let a0 = with_zero(a, cfg.cap)?;
    let bound = diff_bound_for(&a0, cfg);
    let mut out = Resilience {
        resilient: true,
        min_ratio: f64::INFINITY,
        witness: None,
        candidates: cands.len(),
    };
    for d in cfg.dims() {
        let full = bounding_box(&a0, d, bound)?.volume() as f64;
        let threshold = full.ln() - eps * n.ln();
        for c in &cands {
            let sub = with_zero(&IntSet::from_values(c.iter().copied(), cfg.cap)?, cfg.cap)?;
            let vol = bounding_box(&sub, d, bound)?.volume() as f64;
            out.min_ratio = out.min_ratio.min(vol / full);
            if vol.ln() < threshold && out.witness.is_none() {
                out.resilient = false;
                out.witness = Some((d, c.clone()));
            }
        }
    }
    Ok(out)
}

/// Hermite normal form (upper triangular, positive pivots, reduced entries
/// above pivots) of the lattice spanned by `vectors` in `Z^d`.
pub fn lattice_hnf(vectors: &[Vec<i128>], d: usize) -> Vec<Vec<i128>> {
    let mut pool: Vec<Vec<i128>> = vectors.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
    let mut basis: Vec<Vec<i128>> = Vec::new();
    for col in 0..d {
        loop {
            let nz: Vec<usize> = (0..pool.len()).filter(|&i| pool[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| pool[i][col].abs()).unwrap();
            for &i in &nz {
                if i != piv {
                    let f = Integer::div_floor(&pool[i][col], &pool[piv][col]);
                    for j in 0..d {
                        pool[i][j] -= f * pool[piv][j];
                    }
                }
            }
        }
        if let Some(i) = (0..pool.len()).find(|&i| pool[i][col] != 0) {
            let mut row = pool.swap_remove(i);
            if row[col] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            for prev in basis.iter_mut() {
                let f = Integer::div_floor(&prev[col], &row[col]);
                for j in 0..d {
                    prev[j] -= f * row[j];
                }
            }
            basis.push(row);
        }
        pool.retain(|v| v.iter().any(|&x| x != 0));
    }
    basis
}

/// Lattice spanned by `coords(v) - coords(0)` for `v` in `a`, in the
/// coordinates of `gap`.
fn span_in(gap: &Gap, a: &IntSet) -> Result<Vec<Vec<i128>>> {
    let origin = gap.coords(0)?;
    let vecs = a
        .iter()
        .map(|v| {
            Ok(gap
                .coords(v as i128)?
                .iter()
                .zip(&origin)
                .map(|(x, o)| x - o)
                .collect())
        })
        .collect::<Result<Vec<Vec<i128>>>>()?;
    Ok(lattice_hnf(&vecs, gap.dim()))
}

/// A smallest set of at most `x` nonzero elements whose removal shrinks the
/// span of `a ∪ {0}` in the coordinates of some bounding box.
pub fn span_breaking_removal(
    a: &IntSet,
    x: usize,
    cfg: &ExperimentConfig,
) -> Result<Option<(usize, Vec<i64>)>> {
    let a0 = with_zero(a, cfg.cap)?;
    let bound = diff_bound_for(&a0, cfg);
    let nonzero: Vec<i64> = a0.iter().filter(|&v| v != 0).collect();
    for d in cfg.dims() {
        let gap = bounding_box(&a0, d, bound)?.gap;
        let full = span_in(&gap, &a0)?;
        for k in 1..=x.min(nonzero.len()) {
            let mut err = None;
            let hit = for_each_subset(&nonzero, k, |r| match span_in(&gap, &without(&a0, r)) {
                Ok(s) if s != full => Some(r.to_vec()),
                Ok(_) => None,
                Err(e) => {
                    err = Some(e);
                    Some(Vec::new())
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            if let Some(r) = hit {
                return Ok(Some((d, r)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreprocessStatus {
    Complete,
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreprocessOutcome {
    pub set: IntSet,
    pub removed: Vec<i64>,
    pub step1: u32,
    pub step2: u32,
    pub step3: u32,
    pub status: PreprocessStatus,
    /// Removal parameters `ceil(2t / log2 m)` and `ceil(t / log2 m)`.
    pub x_weak: usize,
    pub x_strong: usize,
}

/// Three-step loop: shrink until weakly stable (removing up to `x_weak`
/// elements per round), then remove span-breaking elements (up to
/// `x_strong`), then pass to a small subset if resilience fails and start
/// over.
pub fn preprocess_stable(a: &IntSet, t: u64, cfg: &ExperimentConfig) -> Result<PreprocessOutcome> {
    let m = a.len();
    let mut out = PreprocessOutcome {
        set: a.clone(),
        removed: Vec::new(),
        step1: 0,
        step2: 0,
        step3: 0,
        status: PreprocessStatus::Complete,
        x_weak: 0,
        x_strong: 0,
    };
    if m <= 1 || t == 0 {
        return Ok(out);
    }
    let lg = (m as f64).log2();
    let x_weak = (2.0 * t as f64 / lg).ceil() as usize;
    let x_strong = (t as f64 / lg).ceil() as usize;
    out.x_weak = x_weak;
    out.x_strong = x_strong;
    let n = (a.max().unwrap().max(1) + 1) as f64;
    let dims = cfg.dims().len() as f64;
    let step1_limit = ((1.0 + n.ln() / (4.0f64 / 3.0).ln()) * dims).ceil() as u32 + 1;
    let eps = *cfg.epsilon.numer() as f64 / *cfg.epsilon.denom() as f64;
    let step3_limit = (dims / eps).ceil() as u32 + 1;

    let mut cur = a.clone();
    let drop = |cur: &mut IntSet, out: &mut PreprocessOutcome, r: &[i64]| {
        for &v in r {
            cur.remove(v);
            out.removed.push(v);
        }
    };
    loop {
        // Step 1
        loop {
            match weak_stability_check(&cur, x_weak, cfg)? {
                Stability::Stable => break,
                Stability::Unstable { dim, removed, .. } => {
                    out.step1 += 1;
                    debug!("step 1: d = {dim}, removing {removed:?}");
                    drop(&mut cur, &mut out, &removed);
                    if out.step1 > step1_limit {
                        out.status = PreprocessStatus::Inconclusive(format!(
                            "step 1 exceeded {step1_limit} iterations"
                        ));
                        out.set = cur;
                        return Ok(out);
                    }
                }
                Stability::Inconclusive { explored } => {
                    out.status = PreprocessStatus::Inconclusive(format!(
                        "weak stability search budget exhausted after {explored} subsets"
                    ));
                    out.set = cur;
                    return Ok(out);
                }
            }
        }
        // Step 2
        let mut budget = x_strong;
        while budget > 0 {
            let Some((dim, r)) = span_breaking_removal(&cur, budget, cfg)? else {
                break;
            };
            out.step2 += 1;
            debug!("step 2: d = {dim}, removing {r:?}");
            budget -= r.len();
            drop(&mut cur, &mut out, &r);
        }
        // Step 3
        let res = resilience_check(&cur, cfg)?;
        match res.witness {
            None => break,
            Some((dim, sub)) => {
                out.step3 += 1;
                debug!("step 3: d = {dim}, passing to {sub:?}");
                let keep = IntSet::from_values(sub.iter().copied(), cfg.cap)?;
                let gone: Vec<i64> = cur.iter().filter(|v| !keep.contains(*v)).collect();
                drop(&mut cur, &mut out, &gone);
                if out.step3 > step3_limit {
                    out.status = PreprocessStatus::Inconclusive(format!(
                        "step 3 exceeded {step3_limit} iterations"
                    ));
                    out.set = cur;
                    return Ok(out);
                }
            }
        }
    }
    info!(
        "preprocess: {} -> {} elements (steps {}/{}/{})",
        m,
        cur.len(),
        out.step1,
        out.step2,
        out.step3
    );
    out.removed.sort_unstable();
    out.set = cur;
    Ok(out)
}

/// Finite group `Z_{v1} x ... x Z_{vd}` with elements indexed in mixed radix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGroup {
    moduli: Vec<i64>,
}

impl ProductGroup {
    pub fn new(moduli: Vec<i64>) -> Result<Self> {
        if moduli.is_empty() || moduli.iter().any(|&v| v < 1) {
            return Err(Error::Precondition("moduli must be positive".into()));
        }
        Ok(Self { moduli })
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product::<i64>() as usize
    }

    pub fn index(&self, p: &[i64]) -> usize {
        p.iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&x, &v)| acc * v as usize + x.rem_euclid(v) as usize)
    }

    pub fn element(&self, mut idx: usize) -> Vec<i64> {
        let mut out = vec![0; self.moduli.len()];
        for i in (0..self.moduli.len()).rev() {
            let v = self.moduli[i] as usize;
            out[i] = (idx % v) as i64;
            idx /= v;
        }
        out
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.element(a), self.element(b));
        let s: Vec<i64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
        self.index(&s)
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[Vec<i64>]) -> Vec<bool> {
        let n = self.order();
        let g: Vec<usize> = gens.iter().map(|p| self.index(p)).collect();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &s in &g {
                let y = self.add(x, s);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    pub fn sumset(&self, a: &[bool], b: &[bool]) -> Vec<bool> {
        let n = self.order();
        let mut out = vec![false; n];
        for x in (0..n).filter(|&x| a[x]) {
            for y in (0..n).filter(|&y| b[y]) {
                out[self.add(x, y)] = true;
            }
        }
        out
    }

    /// True iff the differences of `points` generate the whole group, i.e.
    /// the points are not inside a coset of a proper subgroup.
    pub fn affinely_generates(&self, points: &[Vec<i64>]) -> bool {
        let Some(p0) = points.first() else {
            return false;
        };
        let diffs: Vec<Vec<i64>> = points
            .iter()
            .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
            .collect();
        self.subgroup(&diffs).iter().all(|&b| b)
    }
}

/// Moduli `v` with `1 <= v_i <= vmax`, not all 1, for which the points lie in
/// a coset of a proper subgroup of `Z^d / (v_1 Z x ... x v_d Z)`.
pub fn reduced_violation(points: &PointCloud, vmax: i64) -> Option<Vec<i64>> {
    let d = points.dim();
    let mut v = vec![1i64; d];
    loop {
        let mut i = 0;
        while i < d && v[i] == vmax {
            v[i] = 1;
            i += 1;
        }
        if i == d {
            return None;
        }
        v[i] += 1;
        let g = ProductGroup::new(v.clone()).expect("positive moduli");
        if !g.affinely_generates(points.points()) {
            return Some(v);
        }
    }
}

pub fn reduced_check(points: &PointCloud, vmax: i64) -> bool {
    reduced_violation(points, vmax).is_none()
}

/// `|hA| / (h^d Vol(P_d(A)))`.
pub fn hfold_box_ratio(a: &IntSet, h: u64, d: usize, diff_bound: i64, cap: u64) -> Result<f64> {
    let vol = bounding_box(a, d, diff_bound)?.volume() as f64;
    let ha = crate::sumsets::hfold(a, h, cap)?.len() as f64;
    Ok(ha / ((h as f64).powi(d as i32) * vol))
}

/// Monte Carlo rate of the event that a random subset (each nonzero element
/// kept with probability `alpha`) is weakly stable with parameter
/// `floor(alpha x / 2)`. Returns `(events, conclusive trials)`.
pub fn stable_subset_rate(
    a: &IntSet,
    alpha: Rational,
    x: usize,
    cfg: &ExperimentConfig,
) -> Result<(u64, u64)> {
    let xs = (alpha * Rational::from_integer(x as i128) / Rational::from_integer(2))
        .floor()
        .to_integer() as usize;
    let mut events = 0;
    let mut conclusive = 0;
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let mut s = IntSet::singleton(0);
        for v in a.iter().filter(|&v| v != 0) {
            if bernoulli(&mut rng, alpha) {
                s = s.union(&IntSet::singleton(v), cfg.cap)?;
            }
        }
        match weak_stability_check(&s, xs, cfg)? {
            Stability::Stable => {
                events += 1;
                conclusive += 1;
            }
            Stability::Unstable { .. } => conclusive += 1,
            Stability::Inconclusive { .. } => {}
        }
    }
    Ok((events, conclusive))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const CAP: u64 = 1 << 24;

    fn set(v: &[i64]) -> IntSet {
        IntSet::from_values(v.iter().copied(), CAP).unwrap()
    }

    fn range(lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).collect()
    }

    fn cfg() -> ExperimentConfig {
        ExperimentConfig {
            trials: 20,
            ..Default::default()
        }
    }

    fn cloud(p: &[(i64, i64)]) -> PointCloud {
        PointCloud::new(2, p.iter().map(|&(x, y)| vec![x, y]).collect()).unwrap()
    }

    #[test]
    fn profile_examples() {
        assert_eq!(doubling_profile(&set(&range(0, 9)), 3, CAP).unwrap().sizes, vec![10, 19, 37, 73]);
        assert_eq!(doubling_profile(&set(&[0]), 4, CAP).unwrap().sizes, vec![1; 5]);
        let p = doubling_profile(&set(&[0, 1, 10, 11]), 2, CAP).unwrap();
        assert_eq!(p.sizes, vec![4, 9, 25]);
        assert!(p.ratios.iter().all(|&r| r >= 1.0));
    }

    #[test]
    fn h_dimension_examples() {
        let r = empirical_h_dimension(&set(&range(0, 9)), 8, 1, CAP).unwrap();
        assert_eq!((r.d_prime, r.y), (1, 1));
        let r = empirical_h_dimension(&set(&[0]), 8, 1, CAP).unwrap();
        assert_eq!((r.d_prime, r.y), (0, 1));
        // 25^2 = 625 <= 2^3 * 9^2 = 648, so one dimension already suffices
        let r = empirical_h_dimension(&set(&[0, 1, 10, 11]), 16, 1, CAP).unwrap();
        assert_eq!((r.d_prime, r.y), (1, 1));
        assert!(empirical_h_dimension(&set(&[1, 2]), 8, 1, CAP).is_err());
        assert!(empirical_h_dimension(&set(&[0, 1]), 4, 2, CAP).is_err());
    }

    #[test]
    fn two_dimensional_set_has_h_dimension_two() {
        let grid: Vec<i64> = (0..6).flat_map(|i| (0..6).map(move |j| i + 1000 * j)).collect();
        let r = empirical_h_dimension(&set(&grid), 8, 1, CAP).unwrap();
        assert_eq!(r.d_prime, 2);
    }

    #[test]
    fn bbox_1d_examples() {
        let b = bounding_box_1d(&set(&[0, 6, 21])).unwrap();
        assert_eq!(b.diffs(), &[3]);
        assert_eq!(b.volume().unwrap(), 8);
        assert_eq!(bounding_box_1d(&set(&[0, 1])).unwrap().volume().unwrap(), 2);
        let b = bounding_box_1d(&set(&[0, 5])).unwrap();
        assert_eq!((b.diffs()[0], b.volume().unwrap()), (5, 2));
        assert_eq!(bounding_box_1d(&set(&[0])).unwrap().volume().unwrap(), 1);
    }

    #[test]
    fn bbox_2d_examples() {
        let b = bounding_box_2d(&set(&[0, 1, 10, 11]), 11).unwrap();
        assert!(b.exact);
        assert_eq!(b.gap, Gap::new(0, vec![1, 10], vec![(0, 1), (0, 1)]).unwrap());
        let b = bounding_box_2d(&set(&[0, 1, 2, 3]), 3).unwrap();
        assert_eq!(b.volume(), 4);
        let b = bounding_box_2d(&set(&[0]), 2).unwrap();
        assert_eq!(b.volume(), 1);
        // a shifted window of representatives: 9 = -1 + 10
        assert_eq!(bounding_box_2d(&set(&[0, 9, 10]), 10).unwrap().volume(), 4);
        assert!(!bounding_box_2d(&set(&[0, 50]), 10).unwrap().exact);
    }

    #[test]
    fn bbox_2d_without_pairs_falls_back() {
        let b = bounding_box_2d(&set(&[0, 7]), 1).unwrap();
        assert_eq!(b.volume(), 2);
        assert!(!b.exact);
    }

    #[test]
    fn weak_stability_examples() {
        let c = cfg();
        assert!(weak_stability_check(&set(&range(0, 9)), 1, &c).unwrap().is_stable());
        let mut v = range(0, 8);
        v.push(100);
        match weak_stability_check(&set(&v), 1, &c).unwrap() {
            Stability::Unstable { dim, removed, .. } => {
                assert_eq!(dim, 1);
                assert_eq!(removed, vec![100]);
            }
            other => panic!("expected unstable, got {other:?}"),
        }
        assert!(weak_stability_check(&set(&v), 0, &c).unwrap().is_stable());
    }

    #[test]
    fn weak_stability_budget_is_inconclusive() {
        let c = ExperimentConfig {
            budget: 3,
            ..cfg()
        };
        let r = weak_stability_check(&set(&range(0, 20)), 2, &c).unwrap();
        assert!(matches!(r, Stability::Inconclusive { .. }));
    }

    #[test]
    fn resilience_examples() {
        // a single element plus 0 spans width at most 2 < 100^{-1/2} * 100
        let half = ExperimentConfig {
            epsilon: Rational::new(1, 2),
            ..cfg()
        };
        let r = resilience_check(&set(&range(0, 99)), &half).unwrap();
        assert!(!r.resilient);
        let r = resilience_check(&set(&range(0, 99)), &cfg()).unwrap();
        assert!(r.resilient);

        let mut v = range(0, 9);
        v.push(1_000_000);
        let small = ExperimentConfig {
            epsilon: Rational::new(1, 10),
            diff_bound: Some(20),
            ..cfg()
        };
        assert!(!resilience_check(&set(&v), &small).unwrap().resilient);
    }

    #[test]
    fn full_size_subset_has_ratio_one() {
        let r = resilience_check(&set(&[0, 3, 5]), &cfg()).unwrap();
        assert!(r.min_ratio <= 1.0);
        assert!(r.resilient);
    }

    #[test]
    fn preprocess_examples() {
        let c = cfg();
        let stable = set(&range(0, 8));
        let out = preprocess_stable(&stable, 1, &c).unwrap();
        assert_eq!(out.set, stable);
        assert!(out.removed.is_empty());

        let mut v = range(0, 8);
        v.push(100);
        let out = preprocess_stable(&set(&v), 1, &c).unwrap();
        assert_eq!(out.status, PreprocessStatus::Complete);
        assert_eq!(out.removed, vec![100]);
        assert_eq!(out.step1, 1);

        v.push(101);
        let out = preprocess_stable(&set(&v), 2, &c).unwrap();
        assert_eq!(out.removed, vec![100, 101]);
        assert_eq!(out.set, stable);
        assert!(weak_stability_check(&out.set, out.x_weak, &c).unwrap().is_stable());
        assert!(resilience_check(&out.set, &c).unwrap().resilient);
    }

    #[test]
    fn reduced_examples() {
        assert!(reduced_check(&cloud(&[(0, 0), (1, 0), (0, 1)]), 8));
        assert!(!reduced_check(&cloud(&[(0, 0), (2, 0), (0, 2)]), 8));
        assert_eq!(reduced_violation(&cloud(&[(0, 0), (2, 0), (0, 2)]), 8), Some(vec![2, 1]));
        assert!(!reduced_check(&cloud(&[(3, 4)]), 2));
        assert!(!reduced_check(&cloud(&[(0, 0), (1, 0), (2, 0)]), 3));
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(lattice_hnf(&[vec![2, 0], vec![0, 2], vec![1, 1]], 2), vec![vec![1, 1], vec![0, 2]]);
        assert_eq!(lattice_hnf(&[vec![4], vec![6]], 1), vec![vec![2]]);
        assert_eq!(lattice_hnf(&[vec![0, 0]], 2), Vec::<Vec<i128>>::new());
        assert_eq!(
            lattice_hnf(&[vec![3, 1], vec![1, 0]], 2),
            lattice_hnf(&[vec![1, 0], vec![0, 1]], 2)
        );
    }

    #[test]
    fn stable_subset_rate_counts() {
        let c = ExperimentConfig {
            trials: 10,
            ..cfg()
        };
        let (ev, conc) = stable_subset_rate(&set(&range(0, 15)), Rational::new(1, 2), 2, &c).unwrap();
        assert!(ev <= conc && conc <= 10);
    }

    /// Exhaustive search over all boxes with small coordinate ranges.
    fn brute_bbox2(vals: &[i64], b: i64) -> i128 {
        let mut best = i128::MAX;
        for q1 in 1..=b {
            for q2 in q1 + 1..=b {
                // every value needs a representation n1 q1 + n2 q2 with small n
                let reps: Vec<Vec<(i64, i64)>> = vals
                    .iter()
                    .map(|&v| {
                        let mut r = Vec::new();
                        for n1 in -12..=12 {
                            if (v - n1 * q1) % q2 == 0 {
                                let n2 = (v - n1 * q1) / q2;
                                if n2.abs() <= 12 {
                                    r.push((n1, n2));
                                }
                            }
                        }
                        r
                    })
                    .collect();
                if reps.iter().any(|r| r.is_empty()) {
                    continue;
                }
                for a1 in -12..=0i64 {
                    for b1 in 0..=12i64 {
                        for a2 in -12..=0i64 {
                            for b2 in 0..=12i64 {
                                let vol = ((b1 - a1 + 1) * (b2 - a2 + 1)) as i128;
                                if vol >= best {
                                    continue;
                                }
                                if reps.iter().all(|r| {
                                    r.iter().any(|&(x, y)| a1 <= x && x <= b1 && a2 <= y && y <= b2)
                                }) {
                                    best = vol;
                                }
                            }
                        }
                    }
                }
            }
        }
        best
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn bbox_2d_matches_box_search(v in prop::collection::btree_set(1i64..14, 1..4)) {
            let mut vals: Vec<i64> = vec![0];
            vals.extend(v);
            let b = *vals.iter().max().unwrap();
            let got = bounding_box_2d(&set(&vals), b.max(2)).unwrap();
            let elems = got.gap.elements(CAP).unwrap();
            prop_assert!(vals.iter().all(|&x| elems.contains(x)));
            prop_assert_eq!(got.volume(), brute_bbox2(&vals, b.max(2)));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn bbox_1d_is_minimal(v in prop::collection::btree_set(1i64..60, 0..6), q in 1i128..20, lo in -30i128..1) {
            let mut vals: Vec<i64> = vec![0];
            vals.extend(v);
            let a = set(&vals);
            let bb = bounding_box_1d(&a).unwrap();
            prop_assert!(vals.iter().all(|&x| bb.contains(x as i128)));
            // a challenger progression with difference q, starting at lo,
            // just long enough to reach max(A), must be at least as large
            let hi = *vals.iter().max().unwrap() as i128;
            let w = (hi - lo).div_euclid(q) + 1;
            let ch = Gap::new(lo, vec![q], vec![(0, w - 1)]).unwrap();
            if vals.iter().all(|&x| ch.contains(x as i128)) {
                prop_assert!(ch.volume().unwrap() >= bb.volume().unwrap());
            }
        }

        #[test]
        fn h_dimension_monotone_in_t(v in prop::collection::btree_set(1i64..40, 0..5)) {
            let mut vals: Vec<i64> = vec![0];
            vals.extend(v);
            let a = set(&vals);
            let h = 64;
            let d: Vec<u32> = (1..=3).map(|t| empirical_h_dimension(&a, h, t, CAP).unwrap().d_prime).collect();
            prop_assert!(d[0] <= d[1] && d[1] <= d[2]);
        }

        #[test]
        fn reduced_agrees_with_coset_definition(p in prop::collection::vec((-5i64..5, -5i64..5), 1..5), v1 in 1i64..5, v2 in 1i64..5) {
            prop_assume!(v1 * v2 > 1);
            let g = ProductGroup::new(vec![v1, v2]).unwrap();
            let pts: Vec<Vec<i64>> = p.iter().map(|&(x, y)| vec![x, y]).collect();
            // brute force: enumerate all subgroups as spans of element pairs
            let n = g.order();
            let mut in_proper_coset = false;
            for s in 0..n {
                for t in 0..n {
                    let sub = g.subgroup(&[g.element(s), g.element(t)]);
                    if sub.iter().all(|&b| b) {
                        continue;
                    }
                    let base = g.index(&pts[0]);
                    if pts.iter().all(|q| {
                        let diff: Vec<i64> = q.iter().zip(&pts[0]).map(|(a, b)| a - b).collect();
                        let _ = base;
                        sub[g.index(&diff)]
                    }) {
                        in_proper_coset = true;
                    }
                }
            }
            prop_assert_eq!(g.affinely_generates(&pts), !in_proper_coset);
        }
    }
}
