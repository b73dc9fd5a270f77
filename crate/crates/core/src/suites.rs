//! Verification suites. Each suite runs a family of exact checks and returns
//! report rows; `all` runs every suite in order. Trials are independent and
//! run on the rayon pool, each with its own generator seeded by
//! `seed ^ index`, and rows are sorted by `(suite, instance)` before CSV
//! emission, so scheduling never changes the output bytes.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use num_integer::Integer;
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{gcd_all, Rational};
use crate::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::gap::Gap;
use crate::geometry::{
    self, lattice_points_in_zonogon, max_volume_simplex, randomized_round, simplex_volume_bound,
    zonogon_area, zonogon_pick_count, PointCloud, Zonotope,
};
use crate::int_set::IntSet;
use crate::nonavg;
use crate::rng::trial_rng;
use crate::structure::{self, ProductGroup, Stability};
use crate::sumsets::{self, hfold, longest_ap, longest_homogeneous_ap, subset_sums};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Pass,
    Fail,
    /// A search budget ran out; allowed, but never counted as a pass.
    Inconclusive,
}

impl Outcome {
    fn of(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow {
    pub suite: String,
    pub instance: String,
    pub expected: String,
    pub observed: String,
    pub outcome: Outcome,
    pub runtime_ms: u128,
}

impl ReportRow {
    pub fn pass(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

/// Every suite name accepted by [`run_suite`], besides `all`.
pub const SUITES: &[&str] = &[
    "gap-enum",
    "s-proper",
    "gap-size",
    "nonproper-doubling",
    "nonproper-doub-trend",
    "cgap-sub",
    "subset-sums",
    "period-addition",
    "double-counting",
    "growing-sum",
    "greedy-growth",
    "lev",
    "abelian-expansion",
    "lower-ha",
    "bbox-1d",
    "bbox-2d",
    "preprocess",
    "hdim-monotone",
    "sampling",
    "simplex",
    "zonogon",
    "nonavg-oracle",
    "bosznay",
    "h-table",
    "h-bound",
    "thm11",
    "thm12",
];

/// Runs one suite (or `all`). Errors inside a suite become a failing row;
/// only an unknown name is an error.
pub fn run_suite(name: &str, cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    cfg.validate()?;
    if name == "all" {
        let mut rows = Vec::new();
        for s in SUITES {
            rows.extend(run_one(s, cfg)?);
        }
        return Ok(rows);
    }
    run_one(name, cfg)
}

fn run_one(name: &str, cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    let salt = SUITES
        .iter()
        .position(|s| *s == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    let name = SUITES[salt];
    let salt = salt as u64;
    let f: fn(&Ctx) -> Result<Vec<ReportRow>> = match name {
        "gap-enum" => gap_enum,
        "s-proper" => s_proper,
        "gap-size" => gap_size,
        "nonproper-doubling" => nonproper_doubling,
        "nonproper-doub-trend" => nonproper_doub_trend,
        "cgap-sub" => cgap_sub,
        "subset-sums" => subset_sums_oracle,
        "period-addition" => period_addition,
        "double-counting" => double_counting,
        "growing-sum" => growing_sum,
        "greedy-growth" => greedy_growth,
        "lev" => lev,
        "abelian-expansion" => abelian_expansion,
        "lower-ha" => lower_ha,
        "bbox-1d" => bbox_1d,
        "bbox-2d" => bbox_2d,
        "preprocess" => preprocess,
        "hdim-monotone" => hdim_monotone,
        "sampling" => sampling,
        "simplex" => simplex,
        "zonogon" => zonogon,
        "nonavg-oracle" => nonavg_oracle,
        "bosznay" => bosznay,
        "h-table" => h_table,
        "h-bound" => h_bound,
        "thm11" => thm11,
        "thm12" => thm12,
        _ => unreachable!("listed in SUITES"),
    };
    let t0 = Instant::now();
    let ctx = Ctx { cfg, salt, name };
    let mut rows = f(&ctx).unwrap_or_else(|e| {
        vec![ReportRow {
            suite: name.to_string(),
            instance: "error".into(),
            expected: "ok".into(),
            observed: e.to_string(),
            outcome: Outcome::Fail,
            runtime_ms: t0.elapsed().as_millis(),
        }]
    });
    sort_rows(&mut rows);
    log::info!("suite {name}: {} rows in {:?}", rows.len(), t0.elapsed());
    Ok(rows)
}

pub fn sort_rows(rows: &mut [ReportRow]) {
    rows.sort_by(|a, b| (&a.suite, &a.instance).cmp(&(&b.suite, &b.instance)));
}

/// True when no row failed (inconclusive rows are allowed).
pub fn all_acceptable(rows: &[ReportRow]) -> bool {
    rows.iter().all(|r| r.outcome != Outcome::Fail)
}

/// Restricts a field to `[A-Za-z0-9._-]`; anything else becomes `-`.
fn clean(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-') {
            out.push(c);
        } else if !out.ends_with('-') {
            out.push('-');
        }
    }
    out
}

/// CSV with a header row and LF endings. Runtimes are omitted unless
/// requested, since they would break byte-for-byte reproducibility.
pub fn to_csv(rows: &[ReportRow], timings: bool) -> String {
    let mut out = String::from("suite,instance,expected,observed,pass");
    out.push_str(if timings { ",runtime_ms\n" } else { "\n" });
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}",
            clean(&r.suite),
            clean(&r.instance),
            clean(&r.expected),
            clean(&r.observed),
            r.outcome
        ));
        if timings {
            out.push_str(&format!(",{}", r.runtime_ms));
        }
        out.push('\n');
    }
    out
}

struct Ctx<'a> {
    cfg: &'a ExperimentConfig,
    salt: u64,
    name: &'static str,
}

impl Ctx<'_> {
    /// Generator for trial `i`; suites occupy disjoint index ranges.
    fn rng(&self, i: u64) -> ChaCha8Rng {
        trial_rng(self.cfg.seed, self.salt << 40 | i)
    }

    fn rows(&self) -> Rows {
        Rows {
            suite: self.name,
            rows: Vec::new(),
            last: Instant::now(),
        }
    }

    fn cap(&self) -> u64 {
        self.cfg.cap
    }
}

struct Rows {
    suite: &'static str,
    rows: Vec<ReportRow>,
    last: Instant,
}

impl Rows {
    fn push(&mut self, instance: impl Into<String>, expected: impl Into<String>, observed: impl Into<String>, outcome: Outcome) {
        let now = Instant::now();
        self.rows.push(ReportRow {
            suite: self.suite.to_string(),
            instance: instance.into(),
            expected: expected.into(),
            observed: observed.into(),
            outcome,
            runtime_ms: (now - self.last).as_millis(),
        });
        self.last = now;
    }

    fn violations(&mut self, instance: impl Into<String>, count: usize) {
        self.push(instance, "violations-0", format!("violations-{count}"), Outcome::of(count == 0));
    }

    fn equal(&mut self, instance: impl Into<String>, expected: String, observed: String) {
        let ok = expected == observed;
        self.push(instance, expected, observed, Outcome::of(ok));
    }

    fn done(self) -> Result<Vec<ReportRow>> {
        Ok(self.rows)
    }
}

fn par_trials<T: Send>(range: std::ops::Range<u64>, f: impl Fn(u64) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    range.into_par_iter().map(f).collect()
}

fn count<T>(v: &[T], pred: impl Fn(&T) -> bool) -> usize {
    v.iter().filter(|x| pred(x)).count()
}

fn set(v: &[i64], cap: u64) -> Result<IntSet> {
    IntSet::from_values(v.iter().copied(), cap)
}

/// `size` distinct values from `[lo, lo + width)`.
fn random_values<R: Rng>(rng: &mut R, lo: i64, width: usize, size: usize) -> Vec<i64> {
    let mut v: Vec<i64> = sample(rng, width, size.min(width))
        .into_iter()
        .map(|i| lo + i as i64)
        .collect();
    v.sort_unstable();
    v
}

/// Random set inside a width-512 window at a random position.
fn window_set<R: Rng>(rng: &mut R, max_size: usize, cap: u64) -> Result<IntSet> {
    let base = rng.gen_range(-256..=256);
    let size = rng.gen_range(1..=max_size);
    set(&random_values(rng, base, 512, size), cap)
}

fn random_gap<R: Rng>(rng: &mut R, d: usize, qmax: i128, wmax: i128, offset: bool) -> Result<Gap> {
    let diffs = (0..d)
        .map(|_| {
            let q = rng.gen_range(1..=qmax);
            if rng.gen() {
                q
            } else {
                -q
            }
        })
        .collect();
    let bounds = (0..d)
        .map(|_| {
            let a = rng.gen_range(-3..=3);
            (a, a + rng.gen_range(0..wmax))
        })
        .collect();
    let x = if offset { rng.gen_range(-20..=20) } else { 0 };
    Gap::new(x, diffs, bounds)
}

/// Values of a GAP by walking every coordinate tuple.
fn tuple_values(g: &Gap) -> BTreeSet<i64> {
    let b = g.bounds();
    let mut n: Vec<i128> = b.iter().map(|x| x.0).collect();
    let mut out = BTreeSet::new();
    loop {
        let v = g.offset() + n.iter().zip(g.diffs()).map(|(a, q)| a * q).sum::<i128>();
        out.insert(v as i64);
        let mut i = 0;
        loop {
            if i == n.len() {
                return out;
            }
            if n[i] < b[i].1 {
                n[i] += 1;
                break;
            }
            n[i] = b[i].0;
            i += 1;
        }
    }
}

fn frac(num: u64, den: u64) -> String {
    format!("{:.4}", num as f64 / den.max(1) as f64)
}

// ---- GAP algebra ----

fn gap_enum(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    for d in 1..=3usize {
        let bad = par_trials(0..400, |i| {
            let mut rng = c.rng((d as u64) << 20 | i);
            let g = random_gap(&mut rng, d, 12, 5, true)?;
            let brute = tuple_values(&g);
            let el = g.elements(c.cap())?;
            let vol = g.volume()?;
            let agree = el.to_vec().into_iter().eq(brute.iter().copied());
            let proper = g.is_proper(c.cap())?;
            Ok(!agree || el.len() as i128 > vol || proper != (el.len() as i128 == vol))
        })?;
        rows.violations(format!("d-{d}-random-400"), count(&bad, |&b| b));
    }
    rows.done()
}

fn s_proper(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    for d in 1..=3usize {
        let bad = par_trials(0..400, |i| {
            let mut rng = c.rng((d as u64) << 20 | i);
            let g = random_gap(&mut rng, d, 12, 5, true)?;
            let flags = (1..=5)
                .map(|s| g.is_s_proper(s, c.cap()))
                .collect::<Result<Vec<bool>>>()?;
            let proper = g.is_proper(c.cap())?;
            let monotone = flags.windows(2).all(|w| !w[1] || w[0]);
            Ok(flags[0] != proper || !monotone || (flags.iter().any(|&f| f) && !proper))
        })?;
        rows.violations(format!("d-{d}-random-400"), count(&bad, |&b| b));
    }
    rows.done()
}

fn gap_size(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    for d in 1..=3usize {
        let res = par_trials(0..20_000, |i| {
            let mut rng = c.rng((d as u64) << 20 | i);
            let g = random_gap(&mut rng, d, [12, 40, 150][d - 1], 5, true)?;
            let s = rng.gen_range(2..=4u64);
            // A width-1 coordinate makes the GAP lower dimensional and the
            // lower bound is stated for the true dimension.
            if g.widths().iter().any(|&w| w < 2) || !g.is_proper(c.cap())? || !g.is_s_proper(s, c.cap())? {
                return Ok(None);
            }
            let p = g.elements(c.cap())?.len() as u128;
            let sp = hfold(&g.elements(c.cap())?, s, c.cap())?.len() as u128;
            let sd = (s as u128).pow(d as u32);
            // (s/2)^d |P| <= |sP| <= s^d |P|
            Ok(Some(sd * p > (1u128 << d) * sp || sp > sd * p))
        })?;
        let checked: Vec<bool> = res.into_iter().flatten().collect();
        rows.violations(format!("d-{d}-checked-{}", checked.len()), count(&checked, |&b| b));
    }
    rows.done()
}

/// `|2Q| + Vol(Q) <= prod(2 w_i - 1)` when `Q` is not proper; `None` if proper.
fn doubling_violation(g: &Gap, cap: u64) -> Result<Option<bool>> {
    if g.is_proper(cap)? {
        return Ok(None);
    }
    let two = hfold(&g.elements(cap)?, 2, cap)?.len() as i128;
    let rhs: i128 = g.widths().iter().map(|w| 2 * w - 1).product();
    Ok(Some(two + g.volume()? > rhs))
}

fn nonproper_doubling(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let qs: Vec<i128> = (-8..=8).filter(|&q| q != 0).collect();
    let mut one_dim_nonproper = 0;
    for &q in &qs {
        for w in 1..=6 {
            let g = Gap::new(0, vec![q], vec![(0, w - 1)])?;
            if !g.is_proper(c.cap())? {
                one_dim_nonproper += 1;
            }
        }
    }
    rows.equal("d-1-exhaustive", "nonproper-0".into(), format!("nonproper-{one_dim_nonproper}"));

    let mut cases = Vec::new();
    for &q1 in &qs {
        for &q2 in &qs {
            for w1 in 1..=6 {
                for w2 in 1..=6 {
                    cases.push((q1, q2, w1, w2));
                }
            }
        }
    }
    let res = cases
        .par_iter()
        .map(|&(q1, q2, w1, w2)| {
            let g = Gap::new(0, vec![q1, q2], vec![(0, w1 - 1), (0, w2 - 1)])?;
            doubling_violation(&g, c.cap())
        })
        .collect::<Result<Vec<_>>>()?;
    let checked: Vec<bool> = res.into_iter().flatten().collect();
    rows.violations(format!("d-2-exhaustive-nonproper-{}", checked.len()), count(&checked, |&b| b));

    let bad = par_trials(0..10_000, |i| {
        let mut rng = c.rng(i);
        for _ in 0..1000 {
            let g = random_gap(&mut rng, 3, 8, 8, false)?;
            if let Some(v) = doubling_violation(&g, c.cap())? {
                return Ok(v);
            }
        }
        Err(Error::Precondition("no non-proper sample in 1000 draws".into()))
    })?;
    rows.violations("d-3-random-nonproper-10000", count(&bad, |&b| b));
    rows.done()
}

fn nonproper_doub_trend(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let examples: [(&str, Vec<i128>, Vec<(i128, i128)>); 3] = [
        ("q-1-10-w-10x10", vec![1, 10], vec![(0, 9), (0, 9)]),
        ("q-3-7-w-7x3", vec![3, 7], vec![(0, 6), (0, 2)]),
        ("q-1-6-36-w-6x6x6", vec![1, 6, 36], vec![(0, 5), (0, 5), (0, 5)]),
    ];
    for (name, q, b) in examples {
        let g = Gap::new(0, q, b)?;
        let d = g.dim() as u32;
        let pre = g.is_proper(c.cap())? && g.is_homogeneous() && !g.fold(2)?.is_proper(c.cap())?;
        let a = g.elements(c.cap())?;
        let size = a.len() as i128;
        let mut acc = IntSet::singleton(0);
        let mut ratios = Vec::new();
        for k in 1..=64i128 {
            acc = acc.sumset(&a, c.cap())?;
            ratios.push(Rational::new(acc.len() as i128, k.pow(d - 1) * size));
        }
        let max = ratios.iter().max().unwrap();
        let (r32, r64) = (ratios[31], ratios[63]);
        // bounded growth: doubling k must not come close to doubling the ratio
        let ok = pre && r64 <= r32 * Rational::new(3, 2);
        let f = |r: &Rational| format!("{:.4}", *r.numer() as f64 / *r.denom() as f64);
        rows.push(
            name,
            "preconditions-and-r64-le-1.5r32",
            format!("max-{}-r32-{}-r64-{}", f(max), f(&r32), f(&r64)),
            Outcome::of(ok),
        );
    }
    rows.done()
}

fn cgap_sub(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let cs = [(1, 2), (2, 3), (1, 1), (3, 2), (2, 1), (3, 1)];
    for (ci, &(p, q)) in cs.iter().enumerate() {
        let cr = Rational::new(p, q);
        let min_w = (Rational::from_integer(1) + Rational::from_integer(4) / cr).ceil().to_integer();
        let s = 2 * (Rational::from_integer(1) / cr).ceil().to_integer() as u64;
        let bad = par_trials(0..60, |i| {
            let mut rng = c.rng((ci as u64) << 20 | i);
            let d = rng.gen_range(1..=2);
            let diffs = (0..d).map(|_| rng.gen_range(1..=10) * if rng.gen() { 1 } else { -1 }).collect();
            let bounds = (0..d)
                .map(|_| {
                    let a = rng.gen_range(-4..=0);
                    (a, a + min_w - 1 + rng.gen_range(0..=4))
                })
                .collect();
            let g = Gap::new(0, diffs, bounds)?;
            let dil = g.dilate(cr)?;
            let big = hfold(&dil.elements(c.cap())?, s, c.cap())?;
            let e = g.elements(c.cap())?;
            let lo = e.min().unwrap();
            let found = big.iter().any(|v| big.overlap_count(&e, v - lo) == e.len());
            Ok(!found)
        })?;
        rows.violations(format!("c-{p}_{q}-fold-{s}-random-60"), count(&bad, |&b| b));
    }
    rows.done()
}

// ---- sumsets ----

fn subset_sums_oracle(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let res = par_trials(0..1000, |i| {
        let mut rng = c.rng(i);
        let size = (i % 19) as usize;
        let a: Vec<i64> = (0..size).map(|_| rng.gen_range(-50..=50)).collect();
        let mut brute = vec![0i64];
        for &x in &a {
            let shifted: Vec<i64> = brute.iter().map(|s| s + x).collect();
            brute.extend(shifted);
        }
        brute.sort_unstable();
        brute.dedup();
        let s = subset_sums(&a, c.cap())?;
        let neg: i64 = a.iter().filter(|&&x| x < 0).sum();
        let pos: i64 = a.iter().filter(|&&x| x > 0).sum();
        let range_ok = s.contains(0) && s.min() >= Some(neg) && s.max() <= Some(pos);
        Ok((size, s.to_vec() != brute, !range_ok))
    })?;
    for size in 0..19 {
        let mismatch = count(&res, |r| r.0 == size && r.1);
        rows.violations(format!("size-{size:02}"), mismatch);
    }
    rows.violations("range-and-zero", count(&res, |r| r.2));
    rows.done()
}

fn period_addition(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let res = par_trials(0..10_000, |i| {
        let mut rng = c.rng(i);
        let k = 1 + (i % 8) as usize;
        let s = window_set(&mut rng, 128, c.cap())?;
        let a = random_values(&mut rng, -512, 1025, k);
        let lhs = s.shift_gain(a.iter().sum());
        let rhs: u64 = a.iter().map(|&x| s.shift_gain(x)).sum();
        Ok((k, lhs > rhs))
    })?;
    for k in 1..=8 {
        rows.violations(format!("k-{k}"), count(&res, |r| r.0 == k && r.1));
    }
    rows.done()
}

fn double_counting(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let res = par_trials(0..10_000, |i| {
        let mut rng = c.rng(i);
        let s = window_set(&mut rng, 128, c.cap())?;
        let r = s.max().unwrap() - s.min().unwrap();
        let n = s.len() as u64;
        let small = (-r..=r).filter(|&a| 2 * s.shift_gain(a) < n).count() as u64;
        Ok(((n - 1) / 32, small >= 2 * n))
    })?;
    for b in 0..4u64 {
        rows.violations(
            format!("size-{:03}-{:03}", 32 * b + 1, 32 * b + 32),
            count(&res, |r| r.0 == b && r.1),
        );
    }
    rows.done()
}

fn growing_sum(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let res = par_trials(0..10_000, |i| {
        let mut rng = c.rng(i);
        let k = 1 + i % 8;
        let s = window_set(&mut rng, 64, c.cap())?;
        let size = rng.gen_range(1..=12);
        let a = set(&random_values(&mut rng, -64, 129, size), c.cap())?;
        let held = {
            let a0 = a.union(&IntSet::singleton(0), c.cap())?;
            hfold(&a0, k, c.cap())?.len() >= 2 * s.len()
        };
        let bad = match sumsets::growth_witness(&s, &a, k, c.cap()) {
            Ok((x, g)) => {
                !held || !a.contains(x) || g != s.shift_gain(x) || 2 * k * g < s.len() as u64
            }
            Err(Error::Precondition(_)) => held,
            Err(Error::BoundViolated(_)) => true,
            Err(e) => return Err(e),
        };
        Ok((k, held, bad))
    })?;
    for k in 1..=8 {
        let held = count(&res, |r| r.0 == k && r.1);
        rows.violations(format!("k-{k}-precondition-held-{held}"), count(&res, |r| r.0 == k && r.2));
    }
    rows.done()
}

fn greedy_growth(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let res = par_trials(0..200, |i| {
        let mut rng = c.rng(i);
        let size = 1 + (i % 24) as usize;
        let a: Vec<i64> = (0..size).map(|_| rng.gen_range(1..=64)).collect();
        let tr = sumsets::greedy_sigma_growth(&a, a.len(), c.cap())?;
        let mut rem = a.clone();
        rem.sort_unstable();
        let mut bad = tr.sizes[0] != 1;
        for (j, &x) in tr.chosen.iter().enumerate() {
            let s = tr.sizes[j];
            let kj = sumsets::growth_multiplier(&rem, 2 * s, 2 * s as u64 + 1, c.cap())?;
            match kj {
                Some(k) => bad |= 2 * k * tr.gains[j] < s as u64,
                None => bad = true,
            }
            bad |= tr.sizes[j + 1] != s + tr.gains[j] as usize;
            let pos = rem.iter().position(|&y| y == x).expect("chosen from the remaining multiset");
            rem.remove(pos);
        }
        Ok(((size - 1) / 8, bad))
    })?;
    for b in 0..3 {
        rows.violations(format!("size-{:02}-{:02}", 8 * b + 1, 8 * b + 8), count(&res, |r| r.0 == b && r.1));
    }
    rows.done()
}

fn lev(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let res = par_trials(0..1000, |i| {
        let mut rng = c.rng(i);
        let (n, q, lo) = loop {
            let n: i64 = rng.gen_range(3..=12);
            let q: i64 = rng.gen_range(n - 1..=30);
            let lo = 2 * Integer::div_ceil(&(q - 1), &(n - 2));
            if lo <= 20 {
                break (n, q, lo.max(1));
            }
        };
        let ell = rng.gen_range(lo..=20);
        let mut sets = Vec::new();
        for _ in 0..ell {
            let vals = loop {
                let size = rng.gen_range(n as usize..=q as usize + 1);
                let v = random_values(&mut rng, 0, q as usize + 1, size);
                if gcd_all(v.iter().map(|&x| (x - v[0]) as i128)) == 1 {
                    break v;
                }
            };
            let t = rng.gen_range(-50..=50);
            sets.push(set(&vals.iter().map(|x| x + t).collect::<Vec<_>>(), c.cap())?);
        }
        let sum = sumsets::sum_of_sets(&sets, c.cap())?;
        let run = sum.longest_run().map_or(0, |r| r.1);
        Ok((n, run < (ell * (n - 1) + 1) as u64))
    })?;
    for n in 3..=12 {
        let total = count(&res, |r| r.0 == n);
        rows.violations(format!("n-{n:02}-instances-{total}"), count(&res, |r| r.0 == n && r.1));
    }
    rows.done()
}

fn abelian_expansion(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let mut groups: Vec<Vec<i64>> = (1..=4).map(|v| vec![v]).collect();
    for v1 in 1..=4 {
        for v2 in 1..=4 {
            groups.push(vec![v1, v2]);
        }
    }
    for (gi, moduli) in groups.iter().enumerate() {
        let g = ProductGroup::new(moduli.clone())?;
        let order = g.order();
        let bad = par_trials(0..25, |i| {
            let mut rng = c.rng((gi as u64) << 20 | i);
            let mut acc: Option<Vec<bool>> = None;
            for _ in 0..order {
                let mask = loop {
                    let m: Vec<bool> = (0..order).map(|_| rng.gen()).collect();
                    let pts: Vec<Vec<i64>> = (0..order).filter(|&x| m[x]).map(|x| g.element(x)).collect();
                    if g.affinely_generates(&pts) {
                        break m;
                    }
                };
                acc = Some(match acc {
                    None => mask,
                    Some(a) => g.sumset(&a, &mask),
                });
            }
            Ok(!acc.unwrap().iter().all(|&b| b))
        })?;
        let name: Vec<String> = moduli.iter().map(|v| v.to_string()).collect();
        rows.violations(format!("z-{}", name.join("x")), count(&bad, |&b| b));
    }
    rows.done()
}

// ---- doubling structure ----

fn lower_ha(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let ap = |q: i64, l: i64| (0..l).map(|i| i * q).collect::<Vec<_>>();
    let grid = |m: i64, w1: i64, w2: i64| {
        (0..w1)
            .flat_map(|i| (0..w2).map(move |j| i + m * j))
            .collect::<Vec<_>>()
    };
    let with = |mut v: Vec<i64>, x: i64| {
        v.push(x);
        v
    };
    let without = |v: Vec<i64>, x: i64| v.into_iter().filter(|&y| y != x).collect::<Vec<_>>();
    let family: Vec<(&str, Vec<i64>)> = vec![
        ("ap-q1-l10", ap(1, 10)),
        ("ap-q3-l12", ap(3, 12)),
        ("ap-q7-l20", ap(7, 20)),
        ("grid-m20-5x4", grid(20, 5, 4)),
        ("grid-m30-6x3", grid(30, 6, 3)),
        ("grid-m15-4x4", grid(15, 4, 4)),
        ("pert-ap-q1-l20-plus-23", with(ap(1, 20), 23)),
        ("pert-ap-q1-l20-minus-7", without(ap(1, 20), 7)),
        ("pert-ap-q2-l15-plus-5", with(ap(2, 15), 5)),
        ("pert-grid-m20-5x4-minus-21", without(grid(20, 5, 4), 21)),
        ("pert-grid-m15-4x4-plus-50", with(grid(15, 4, 4), 50)),
    ];
    let h = 16;
    let mut min: Option<f64> = None;
    for (name, v) in family {
        let a = set(&v, c.cap())?;
        let hd = structure::empirical_h_dimension(&a, h, 1, c.cap())?;
        let d = hd.d_prime as usize;
        if !(1..=2).contains(&d) {
            rows.push(name, "d-in-1-2", format!("d-{d}"), Outcome::Inconclusive);
            continue;
        }
        let bound = a.max().unwrap().max(2);
        let r = structure::hfold_box_ratio(&a, h, d, bound, c.cap())?;
        min = Some(min.map_or(r, |m: f64| m.min(r)));
        rows.push(format!("{name}-d-{d}"), "ratio-gt-0.05", format!("ratio-{r:.4}"), Outcome::of(r > 0.05));
    }
    let m = min.unwrap_or(0.0);
    rows.push("family-min", "ratio-gt-0.05", format!("min-{m:.4}"), Outcome::of(m > 0.05));
    rows.done()
}

fn bbox_1d(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let res = par_trials(0..500, |i| {
        let mut rng = c.rng(i);
        let size = 1 + (i % 8) as usize;
        let f = rng.gen_range(1..=4);
        let mut v: Vec<i64> = random_values(&mut rng, -60, 121, size - 1).iter().map(|x| x * f).collect();
        v.push(0);
        let a = set(&v, c.cap())?;
        let b = structure::bounding_box_1d(&a)?;
        let vol = b.volume()?;
        let mut bad = !a.is_subset(&b.elements(c.cap())?);
        let (lo, hi) = (a.min().unwrap(), a.max().unwrap());
        // any 1-dim progression with difference q containing A has width >= range/q + 1
        for q in 1..=(hi - lo).max(1) {
            if a.iter().all(|x| (x - lo) % q == 0) {
                bad |= (((hi - lo) / q + 1) as i128) < vol;
            }
        }
        Ok((size, bad))
    })?;
    for size in 1..=8 {
        rows.violations(format!("size-{size}"), count(&res, |r| r.0 == size && r.1));
    }
    rows.done()
}

/// Whether the box `[a1, a1+w1) x [a2, a2+w2)` with differences `(q1, q2)`
/// and offset 0 covers every value of `vals`.
fn box_covers(vals: &[i64], q1: i64, q2: i64, a1: i64, w1: i64, a2: i64, w2: i64) -> bool {
    vals.iter().all(|&v| {
        (a1..a1 + w1).any(|n1| {
            let r = v - n1 * q1;
            r % q2 == 0 && (a2..a2 + w2).contains(&(r / q2))
        })
    })
}

fn bbox_2d(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let res = par_trials(0..150, |i| {
        let mut rng = c.rng(i);
        let size = 2 + (i % 4) as usize;
        let mut v = random_values(&mut rng, 1, 15, size - 1);
        v.insert(0, 0);
        let a = set(&v, c.cap())?;
        let bound = a.max().unwrap().max(2);
        let b = structure::bounding_box_2d(&a, bound)?;
        let vol = b.volume() as i64;
        let mut bad = !b.exact || !a.is_subset(&b.gap.elements(c.cap())?);
        // independent re-search, largest pairs first, boxes through the origin
        'pairs: for q2 in (2..=bound).rev() {
            for q1 in (1..q2).rev() {
                for w1 in 1..vol {
                    for w2 in 1..=(vol - 1) / w1 {
                        for a1 in 1 - w1..=0 {
                            for a2 in 1 - w2..=0 {
                                if box_covers(&v, q1, q2, a1, w1, a2, w2) {
                                    bad = true;
                                    break 'pairs;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok((size, bad))
    })?;
    for size in 2..=5 {
        rows.violations(format!("size-{size}"), count(&res, |r| r.0 == size && r.1));
    }
    rows.done()
}

fn preprocess(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let r = |lo: i64, hi: i64| (lo..=hi).collect::<Vec<i64>>();
    let cat = |mut a: Vec<i64>, b: &[i64]| {
        a.extend_from_slice(b);
        a
    };
    let grid: Vec<i64> = (0..4).flat_map(|i| (0..3).map(move |j| i + 10 * j)).collect();
    let cases: Vec<(&str, Vec<i64>, u64)> = vec![
        ("ap9-plus-100-t1", cat(r(0, 8), &[100]), 1),
        ("ap9-plus-100-101-t2", cat(r(0, 8), &[100, 101]), 2),
        ("ap20-t1", r(0, 19), 1),
        ("ap12-plus-60-61-62-t3", cat(r(0, 11), &[60, 61, 62]), 3),
        ("grid-4x3-plus-500-t1", cat(grid, &[500]), 1),
    ];
    let beta2 = c.cfg.beta * c.cfg.beta;
    for (name, v, t) in cases {
        let a = set(&v, c.cap())?;
        let out = structure::preprocess_stable(&a, t, c.cfg)?;
        let floor = Rational::from_integer(a.len() as i128) - Rational::from_integer(100 * t as i128) * beta2;
        let size_ok = Rational::from_integer(out.set.len() as i128) >= floor;
        if let structure::PreprocessStatus::Inconclusive(why) = &out.status {
            rows.push(name, "stable-resilient", format!("inconclusive-{why}"), Outcome::Inconclusive);
            continue;
        }
        let weak = structure::weak_stability_check(&out.set, out.x_weak, c.cfg)?;
        let res = structure::resilience_check(&out.set, c.cfg)?;
        let removed: Vec<String> = out.removed.iter().map(|x| x.to_string()).collect();
        let observed = format!(
            "{}-{}-removed-{}",
            match weak {
                Stability::Stable => "stable",
                Stability::Unstable { .. } => "unstable",
                Stability::Inconclusive { .. } => "inconclusive",
            },
            if res.resilient { "resilient" } else { "not-resilient" },
            if removed.is_empty() { "none".into() } else { removed.join("_") }
        );
        let outcome = match weak {
            Stability::Inconclusive { .. } => Outcome::Inconclusive,
            w => Outcome::of(w.is_stable() && res.resilient && size_ok),
        };
        rows.push(name, "stable-resilient", observed, outcome);
    }
    rows.done()
}

fn hdim_monotone(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let res = par_trials(0..300, |i| {
        let mut rng = c.rng(i);
        let size = 1 + (i % 11) as usize;
        let mut v = random_values(&mut rng, 1, 63, size);
        v.push(0);
        let a = set(&v, c.cap())?;
        let dims = (1..=4)
            .map(|t| Ok(structure::empirical_h_dimension(&a, 64, t, c.cap())?.d_prime))
            .collect::<Result<Vec<_>>>()?;
        Ok((size, dims.windows(2).any(|w| w[0] > w[1])))
    })?;
    for b in 0..3 {
        let (lo, hi) = (4 * b + 1, (4 * b + 4).min(11));
        rows.violations(format!("size-{lo:02}-{hi:02}"), count(&res, |r| (lo..=hi).contains(&r.0) && r.1));
    }
    rows.done()
}

// ---- geometry ----

fn sampling(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let trials = 10_000u64;
    let check = |z: &Zonotope, coeffs: &[Rational], seed: u64| -> Result<(bool, bool, bool)> {
        match randomized_round(z, coeffs, seed, c.cfg.retry_limit) {
            Ok(r) => {
                let widths = z.box_widths();
                let m = z.generators().len();
                let replay = z.subset_sum(&r.bits) == r.point;
                let bound = r.deviations.iter().zip(&widths).all(|(&dv, &w)| {
                    geometry::within_sampling_bound(dv, z.dim(), m, w)
                });
                Ok((r.attempts == 1, !replay, !bound))
            }
            Err(Error::RetryLimit(_)) => Ok((false, false, false)),
            Err(e) => Err(e),
        }
    };
    let res = par_trials(0..trials, |i| {
        let mut rng = c.rng(i);
        let m = rng.gen_range(1..=16);
        let gens: Vec<Vec<i64>> = (0..m).map(|_| vec![rng.gen_range(-6..=6), rng.gen_range(-6..=6)]).collect();
        let coeffs: Vec<Rational> = (0..m).map(|_| Rational::new(rng.gen_range(0..=16), 16)).collect();
        check(&Zonotope::new(2, gens)?, &coeffs, c.cfg.seed ^ (c.salt << 40 | i))
    })?;
    let first = count(&res, |r| r.0) as u64;
    rows.push(
        "random-first-attempt",
        "freq-ge-0.70",
        format!("freq-{}", frac(first, trials)),
        Outcome::of(100 * first >= 70 * trials),
    );
    rows.violations("random-replay", count(&res, |r| r.1));
    rows.violations("random-accepted-bound", count(&res, |r| r.2));

    let hex = Zonotope::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]])?;
    let half = vec![Rational::new(1, 2); 3];
    let res = par_trials(0..trials, |i| check(&hex, &half, c.cfg.seed ^ (c.salt << 40 | 1 << 32 | i)))?;
    let first = count(&res, |r| r.0) as u64;
    rows.push(
        "hexagon-half-first-attempt",
        "freq-ge-0.75",
        format!("freq-{}", frac(first, trials)),
        Outcome::of(100 * first >= 75 * trials),
    );
    rows.violations("hexagon-half-accepted-bound", count(&res, |r| r.1 || r.2));
    rows.done()
}

fn simplex(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let res = par_trials(0..200, |i| {
        let mut rng = c.rng(i);
        let m = 3 + (i % 10) as usize;
        let p = loop {
            let pts: Vec<Vec<i64>> = sample(&mut rng, 121, m)
                .into_iter()
                .map(|k| vec![k as i64 / 11 - 5, k as i64 % 11 - 5])
                .collect();
            let p = PointCloud::new(2, pts)?;
            if p.affine_dim() == 2 {
                break p;
            }
        };
        let s = max_volume_simplex(&p, c.cap())?;
        let pts = p.points();
        let mut brute = 0i64;
        for x in 0..m {
            for y in x + 1..m {
                for z in y + 1..m {
                    let (a, b, cc) = (&pts[x], &pts[y], &pts[z]);
                    let det = (b[0] - a[0]) * (cc[1] - a[1]) - (b[1] - a[1]) * (cc[0] - a[0]);
                    brute = brute.max(det.abs());
                }
            }
        }
        let brute = Rational::new(brute as i128, 2);
        Ok((m, !s.exhaustive || s.volume != brute || s.volume < simplex_volume_bound(m, 2)))
    })?;
    for m in 3..=12 {
        rows.violations(format!("m-{m:02}"), count(&res, |r| r.0 == m && r.1));
    }
    rows.done()
}

fn zonogon(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let res = par_trials(3..9, |k| {
        let mut rng = c.rng(k);
        let side = (k + 1) as usize;
        let total = side * side;
        let drop: BTreeSet<usize> = sample(&mut rng, total, total / 10).into_iter().collect();
        let pts: Vec<Vec<i64>> = (0..total)
            .filter(|i| !drop.contains(i))
            .map(|i| vec![(i / side) as i64, (i % side) as i64])
            .collect();
        let n = pts.len() as f64;
        let z = Zonotope::new(2, pts)?;
        let area = zonogon_area(&z)?;
        let count = lattice_points_in_zonogon(&z, c.cap())?;
        let pick = zonogon_pick_count(&z)?;
        Ok((k, area as f64 / (n * n * n), count as i128 == pick))
    })?;
    let mut min = f64::INFINITY;
    for (k, ratio, agree) in &res {
        min = min.min(*ratio);
        rows.push(
            format!("grid-{k}-minus-10pct"),
            "ratio-positive-count-eq-pick",
            format!("ratio-{ratio:.5}-count-{}", if *agree { "eq-pick" } else { "ne-pick" }),
            Outcome::of(*ratio > 0.0 && *agree),
        );
    }
    rows.push("family-min", "ratio-positive", format!("min-{min:.5}"), Outcome::of(min > 0.0));

    let bad = par_trials(0..200, |i| {
        let mut rng = c.rng(1 << 20 | i);
        let (p, q) = loop {
            let p: i64 = rng.gen_range(-30..=30);
            let q: i64 = rng.gen_range(-30..=30);
            if (p, q) != (0, 0) {
                break (p, q);
            }
        };
        let z = Zonotope::new(2, vec![vec![p, q]])?;
        Ok(lattice_points_in_zonogon(&z, c.cap())? != (p.gcd(&q) + 1) as u64)
    })?;
    rows.violations("segment-gcd-plus-1", count(&bad, |&b| b));
    rows.done()
}

// ---- non-averaging sets ----

/// Some element equals the mean of two or more others, by enumerating
/// every subset of the remaining elements.
fn averaging_by_definition(a: &[i64]) -> bool {
    a.iter().enumerate().any(|(i, &x)| {
        let others: Vec<i64> = a.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &y)| y).collect();
        (0u32..1 << others.len()).any(|m| {
            let k = m.count_ones() as i64;
            k >= 2 && (0..others.len()).filter(|j| m >> j & 1 == 1).map(|j| others[j]).sum::<i64>() == x * k
        })
    })
}

fn nonavg_oracle(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let res = par_trials(0..500, |i| {
        let mut rng = c.rng(i);
        let size = (i % 15) as usize;
        let a = random_values(&mut rng, 1, 40, size);
        let cert = nonavg::is_non_averaging(&a, c.cap())?;
        Ok((size, cert.verdict == averaging_by_definition(&a) || !cert.replays(&a)))
    })?;
    for size in 0..=14 {
        rows.violations(format!("size-{size:02}"), count(&res, |r| r.0 == size && r.1));
    }
    rows.done()
}

fn bosznay(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let res = par_trials(2..17, |q| {
        let b = nonavg::bosznay(q as i64)?;
        let q4 = (q as i64).pow(4);
        let na = nonavg::is_non_averaging(&b, c.cap())?.verdict;
        Ok((q, b.len(), b.iter().all(|&x| 1 <= x && x <= q4), na))
    })?;
    for (q, len, inside, na) in res {
        rows.equal(
            format!("q-{q:02}"),
            format!("size-{}-inside-nonavg", q - 1),
            format!(
                "size-{len}-{}-{}",
                if inside { "inside" } else { "outside" },
                if na { "nonavg" } else { "averaging" }
            ),
        );
    }
    rows.done()
}

fn h_table(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let known = [1usize, 2, 2, 3, 4];
    let exhaustive = par_trials(1..15, |n| nonavg::h_exhaustive(n as i64, c.cap()))?;
    let table = nonavg::h_table(20, c.cfg.budget)?;
    let replays = |w: &[i64], n: i64| -> Result<bool> {
        Ok(w.iter().all(|&x| 1 <= x && x <= n) && nonavg::is_non_averaging(w, c.cap())?.verdict)
    };
    for r in &table {
        let n = r.n;
        let ok_witness = replays(&r.witness, n)? && r.witness.len() == r.size;
        let observed = format!(
            "h-{}-{}-{}",
            r.size,
            if r.exact { "exact" } else { "lower-bound" },
            if ok_witness { "replays" } else { "bad-witness" }
        );
        let expected_size = if n <= 5 {
            Some(known[n as usize - 1])
        } else if n <= 14 {
            Some(exhaustive[n as usize - 1].size)
        } else {
            None
        };
        let instance = format!("n-{n:02}");
        match expected_size {
            Some(e) => {
                let ex = &exhaustive[n as usize - 1];
                let exh_ok = ex.size == e && replays(&ex.witness, n)?;
                let expected = format!("h-{e}-exact-replays");
                let outcome = if !r.exact {
                    Outcome::Inconclusive
                } else {
                    Outcome::of(expected == observed && exh_ok)
                };
                rows.push(instance, expected, observed, outcome);
            }
            None => {
                let outcome = if !r.exact {
                    Outcome::Inconclusive
                } else {
                    Outcome::of(ok_witness)
                };
                rows.push(instance, "exact-replays", observed, outcome);
            }
        }
    }
    let monotone = table.windows(2).all(|w| w[0].size <= w[1].size);
    rows.push(
        "monotone-1-20",
        "nondecreasing",
        if monotone { "nondecreasing" } else { "decreasing-step" },
        Outcome::of(monotone),
    );
    rows.done()
}

fn h_bound(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    let res = par_trials(1..19, |n| nonavg::verify_h_bound(n as i64, c.cfg.budget))?;
    for r in res {
        let outcome = if !r.exact {
            Outcome::Inconclusive
        } else {
            Outcome::of(r.holds)
        };
        rows.push(
            format!("n-{:02}-h-{}-H-{}-Htilde-{}", r.n, r.h, r.big_h, r.h_tilde),
            "holds",
            if r.holds { "holds" } else { "fails" },
            outcome,
        );
    }
    rows.done()
}

// ---- headline statements at small n ----

fn ceil_sqrt(x: u64) -> u64 {
    let r = x.isqrt();
    if r * r == x {
        r
    } else {
        r + 1
    }
}

/// `A = [1..m]` with `m = ceil(sqrt(2n))`: `Σ(A)` is the interval
/// `[0, m(m+1)/2]`, hence holds a homogeneous progression of length `>= n`.
pub fn thm12_deterministic(n: u64, cap: u64) -> Result<ReportRow> {
    let t0 = Instant::now();
    let m = ceil_sqrt(2 * n);
    let a: Vec<i64> = (1..=m as i64).collect();
    let s = subset_sums(&a, cap)?;
    let top = (m * (m + 1) / 2) as i64;
    let full = s == IntSet::interval(0, top, cap)?;
    let len = longest_homogeneous_ap(&s).map_or(0, |p| p.len);
    Ok(ReportRow {
        suite: "thm12".into(),
        instance: format!("deterministic-n-{n:04}-m-{m}"),
        expected: format!("interval-0-{top}-len-ge-{n}"),
        observed: format!("{}-len-{len}", if full { format!("interval-0-{top}") } else { "gaps".into() }),
        outcome: Outcome::of(full && len >= n),
        runtime_ms: t0.elapsed().as_millis(),
    })
}

/// Random `A ⊂ [n]` of size `ceil(3 sqrt n)`; reports how often `Σ(A)`
/// holds a homogeneous progression of length `n`. Reporting only: the row
/// passes when the frequency is nonzero.
pub fn thm12_random(n: u64, trials: u64, seed: u64, cap: u64) -> Result<ReportRow> {
    random_progression_row("thm12", n, trials, seed, cap, true)
}

fn random_progression_row(suite: &str, n: u64, trials: u64, seed: u64, cap: u64, homogeneous: bool) -> Result<ReportRow> {
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    let t0 = Instant::now();
    let size = ceil_sqrt(9 * n).min(n) as usize;
    let lens = par_trials(0..trials, |i| {
        let mut rng = trial_rng(seed, i);
        let a = random_values(&mut rng, 1, n as usize, size);
        let s = subset_sums(&a, cap)?;
        let p = if homogeneous {
            longest_homogeneous_ap(&s)
        } else {
            longest_ap(&s)
        };
        Ok(p.map_or(0, |p| p.len))
    })?;
    let hits = count(&lens, |&l| l >= n) as u64;
    Ok(ReportRow {
        suite: suite.into(),
        instance: format!("random-n-{n:04}-size-{size}-trials-{trials}"),
        expected: "freq-positive".into(),
        observed: format!("freq-{}-minlen-{}", frac(hits, trials), lens.iter().min().unwrap()),
        outcome: Outcome::of(hits > 0),
        runtime_ms: t0.elapsed().as_millis(),
    })
}

const THM_DET_N: [u64; 4] = [10, 50, 200, 1000];
const THM_RANDOM_N: [u64; 6] = [20, 40, 60, 80, 100, 120];

fn thm11(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut rows = c.rows();
    for n in THM_DET_N {
        let m = ceil_sqrt(2 * n);
        let a: Vec<i64> = (1..=m as i64).collect();
        let len = longest_ap(&subset_sums(&a, c.cap())?).map_or(0, |p| p.len);
        rows.push(
            format!("deterministic-n-{n:04}-m-{m}"),
            format!("len-ge-{n}"),
            format!("len-{len}"),
            Outcome::of(len >= n),
        );
    }
    let mut out = rows.done()?;
    for (j, n) in THM_RANDOM_N.into_iter().enumerate() {
        let seed = c.cfg.seed ^ (c.salt << 40 | (j as u64) << 32);
        out.push(random_progression_row("thm11", n, c.cfg.trials, seed, c.cap(), false)?);
    }
    Ok(out)
}

fn thm12(c: &Ctx) -> Result<Vec<ReportRow>> {
    let mut out = Vec::new();
    for n in THM_DET_N {
        out.push(thm12_deterministic(n, c.cap())?);
    }
    for (j, n) in THM_RANDOM_N.into_iter().enumerate() {
        let seed = c.cfg.seed ^ (c.salt << 40 | (j as u64) << 32);
        out.push(thm12_random(n, c.cfg.trials, seed, c.cap())?);
    }
    Ok(out)
}
