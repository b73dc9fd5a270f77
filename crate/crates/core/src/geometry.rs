//! Integer zonotopes and point clouds: randomized rounding to subset sums,
//! maximum-volume simplices, and exact area and lattice-point counts of
//! planar zonotopes.

use num_integer::Integer;

use crate::arith::Rational;
use crate::error::{cap_check, Error, Result};
use crate::rng::{bernoulli, trial_rng};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCloud {
    dim: usize,
    points: Vec<Vec<i64>>,
}

impl PointCloud {
    pub fn new(dim: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("dimension must be positive".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::Precondition(format!(
                "point {p:?} does not have dimension {dim}"
            )));
        }
        Ok(Self { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        let Some(p0) = self.points.first() else {
            return 0;
        };
        let rows: Vec<Vec<i128>> = self.points[1..]
            .iter()
            .map(|p| p.iter().zip(p0).map(|(&a, &b)| (a - b) as i128).collect())
            .collect();
        rank(rows)
    }
}

/// The Minkowski sum of the segments `[0, 1] g` over the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zonotope {
    dim: usize,
    generators: Vec<Vec<i64>>,
}

impl Zonotope {
    pub fn new(dim: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        let cloud = PointCloud::new(dim, generators)?;
        Ok(Self {
            dim,
            generators: cloud.points,
        })
    }

    pub fn from_cloud(p: &PointCloud) -> Self {
        Self {
            dim: p.dim,
            generators: p.points.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Widths `max - min + 1` of the smallest box holding the generators and 0.
    pub fn box_widths(&self) -> Vec<i64> {
        (0..self.dim)
            .map(|i| {
                let lo = self.generators.iter().map(|g| g[i]).min().unwrap_or(0).min(0);
                let hi = self.generators.iter().map(|g| g[i]).max().unwrap_or(0).max(0);
                hi - lo + 1
            })
            .collect()
    }

    /// `sum c_g g` as exact rationals.
    pub fn point(&self, coeffs: &[Rational]) -> Vec<Rational> {
        (0..self.dim)
            .map(|i| {
                self.generators
                    .iter()
                    .zip(coeffs)
                    .map(|(g, &c)| c * Rational::from_integer(g[i] as i128))
                    .sum()
            })
            .collect()
    }

    /// Subset sum selected by `bits`.
    pub fn subset_sum(&self, bits: &[bool]) -> Vec<i64> {
        (0..self.dim)
            .map(|i| {
                self.generators
                    .iter()
                    .zip(bits)
                    .filter(|(_, &b)| b)
                    .map(|(g, _)| g[i])
                    .sum()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rounding {
    pub target: Vec<Rational>,
    pub point: Vec<i64>,
    pub bits: Vec<bool>,
    pub deviations: Vec<Rational>,
    /// 1 when the first draw already met the bound.
    pub attempts: u32,
}

/// True iff `|dev| <= sqrt(d m) w`, compared exactly as `dev^2 <= d m w^2`.
pub fn within_sampling_bound(dev: Rational, d: usize, m: usize, w: i64) -> bool {
    let lhs = dev * dev;
    let rhs = Rational::from_integer(d as i128 * m as i128 * (w as i128) * (w as i128));
    lhs <= rhs
}

/// Rounds the point `sum c_g g` to a subset sum by independent Bernoulli
/// draws, redrawing until every coordinate is within `sqrt(d m) w_i`.
pub fn randomized_round(
    z: &Zonotope,
    coeffs: &[Rational],
    seed: u64,
    retry_limit: u32,
) -> Result<Rounding> {
    if coeffs.len() != z.generators.len() {
        return Err(Error::Precondition(format!(
            "{} coefficients for {} generators",
            coeffs.len(),
            z.generators.len()
        )));
    }
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    if coeffs.iter().any(|&c| c < zero || c > one) {
        return Err(Error::Precondition("coefficients must lie in [0, 1]".into()));
    }
    let target = z.point(coeffs);
    let widths = z.box_widths();
    let m = z.generators.len();
    let mut rng = trial_rng(seed, 0);
    for attempt in 1..=retry_limit {
        let bits: Vec<bool> = coeffs.iter().map(|&c| bernoulli(&mut rng, c)).collect();
        let point = z.subset_sum(&bits);
        let deviations: Vec<Rational> = target
            .iter()
            .zip(&point)
            .map(|(&t, &s)| num_traits::Signed::abs(&(t - Rational::from_integer(s as i128))))
            .collect();
        let ok = deviations
            .iter()
            .zip(&widths)
            .all(|(&dev, &w)| within_sampling_bound(dev, z.dim, m, w));
        if ok {
            return Ok(Rounding {
                target,
                point,
                bits,
                deviations,
                attempts: attempt,
            });
        }
    }
    Err(Error::RetryLimit(retry_limit))
}

/// Fraction-free Gaussian elimination (Bareiss) on a square matrix.
pub fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            if rows[i][c] != 0 {
                let (a, b) = (rows[r][c], rows[i][c]);
                let g = a.gcd(&b);
                for j in 0..cols {
                    rows[i][j] = rows[i][j] * (a / g) - rows[r][j] * (b / g);
                }
            }
        }
        r += 1;
    }
    r
}

fn factorial(d: usize) -> i128 {
    (1..=d as i128).product()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub indices: Vec<usize>,
    pub volume: Rational,
    /// False when the local-swap heuristic was used.
    pub exhaustive: bool,
}

fn simplex_det(p: &PointCloud, idx: &[usize]) -> i128 {
    let p0 = &p.points[idx[0]];
    let m: Vec<Vec<i128>> = idx[1..]
        .iter()
        .map(|&i| {
            p.points[i]
                .iter()
                .zip(p0)
                .map(|(&a, &b)| (a - b) as i128)
                .collect()
        })
        .collect();
    det(m).abs()
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r = 1u128;
    for i in 0..k {
        r = r.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    r
}

/// Largest-volume simplex with vertices in the cloud. Exhaustive when the
/// number of `(d+1)`-subsets is at most `cap`, else a local-swap ascent.
pub fn max_volume_simplex(p: &PointCloud, cap: u64) -> Result<Simplex> {
    let d = p.dim;
    let found = p.affine_dim();
    if found < d {
        return Err(Error::Degenerate { expected: d, found });
    }
    let k = d + 1;
    let n = p.len();
    let denom = factorial(d);
    if binomial(n, k) <= cap as u128 {
        let mut best: (i128, Vec<usize>) = (-1, Vec::new());
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let v = simplex_det(p, &idx);
            if v > best.0 {
                best = (v, idx.clone());
            }
            // next combination in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
        return Ok(Simplex {
            indices: best.1,
            volume: Rational::new(best.0, denom),
            exhaustive: true,
        });
    }
    // greedy start, then single-vertex swaps while the volume increases
    let mut idx: Vec<usize> = vec![0];
    while idx.len() < k {
        let next = (0..n)
            .filter(|i| !idx.contains(i))
            .max_by_key(|&i| {
                let mut t = idx.clone();
                t.push(i);
                partial_volume(p, &t)
            })
            .unwrap();
        idx.push(next);
    }
    let mut cur = simplex_det(p, &idx);
    loop {
        let mut improved = false;
        for slot in 0..k {
            for cand in 0..n {
                if idx.contains(&cand) {
                    continue;
                }
                let mut t = idx.clone();
                t[slot] = cand;
                let v = simplex_det(p, &t);
                if v > cur {
                    cur = v;
                    idx = t;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    idx.sort_unstable();
    Ok(Simplex {
        indices: idx,
        volume: Rational::new(cur, denom),
        exhaustive: false,
    })
}

/// Squared volume proxy (Gram determinant) of a lower-dimensional simplex.
fn partial_volume(p: &PointCloud, idx: &[usize]) -> i128 {
    let p0 = &p.points[idx[0]];
    let vs: Vec<Vec<i128>> = idx[1..]
        .iter()
        .map(|&i| p.points[i].iter().zip(p0).map(|(&a, &b)| (a - b) as i128).collect())
        .collect();
    let gram: Vec<Vec<i128>> = vs
        .iter()
        .map(|u| vs.iter().map(|v| u.iter().zip(v).map(|(a, b)| a * b).sum()).collect())
        .collect();
    det(gram)
}

/// The lower bound `m / (2^d (d+1)!)` on the largest simplex volume.
pub fn simplex_volume_bound(m: usize, d: usize) -> Rational {
    Rational::new(m as i128, (1i128 << d) * factorial(d + 1))
}

fn require_planar(z: &Zonotope) -> Result<()> {
    if z.dim != 2 {
        return Err(Error::Precondition(format!(
            "planar zonotope required, got dimension {}",
            z.dim
        )));
    }
    Ok(())
}

/// Area of a planar zonotope: the sum of `|det(g_i, g_j)|` over pairs.
pub fn zonogon_area(z: &Zonotope) -> Result<i128> {
    require_planar(z)?;
    let g = &z.generators;
    let mut area = 0i128;
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            area += (g[i][0] as i128 * g[j][1] as i128 - g[i][1] as i128 * g[j][0] as i128).abs();
        }
    }
    Ok(area)
}

fn cross(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

/// Start vertex and counter-clockwise edge directions (parallel generators
/// merged) of a planar zonotope. The boundary walks the edges and then their
/// negatives.
pub fn zonogon_edges(z: &Zonotope) -> Result<((i128, i128), Vec<(i128, i128)>)> {
    require_planar(z)?;
    let mut start = (0i128, 0i128);
    let mut dirs: Vec<(i128, i128)> = Vec::new();
    for g in &z.generators {
        let mut v = (g[0] as i128, g[1] as i128);
        if v == (0, 0) {
            continue;
        }
        if v.1 < 0 || (v.1 == 0 && v.0 < 0) {
            start = (start.0 + v.0, start.1 + v.1);
            v = (-v.0, -v.1);
        }
        dirs.push(v);
    }
    dirs.sort_by(|&a, &b| 0.cmp(&cross(a, b)));
    let mut merged: Vec<(i128, i128)> = Vec::new();
    for v in dirs {
        match merged.last_mut() {
            Some(last) if cross(*last, v) == 0 => {
                last.0 += v.0;
                last.1 += v.1;
            }
            _ => merged.push(v),
        }
    }
    Ok((start, merged))
}

/// Exact number of integer points in a planar zonotope (boundary included),
/// by scanning rows against the half-plane description.
pub fn lattice_points_in_zonogon(z: &Zonotope, cap: u64) -> Result<u64> {
    let (start, edges) = zonogon_edges(z)?;
    if edges.is_empty() {
        return Ok(1);
    }
    if edges.len() == 1 {
        let e = edges[0];
        return Ok((e.0.abs().gcd(&e.1.abs()) + 1) as u64);
    }
    let mut verts = vec![start];
    let mut cur = start;
    let walk: Vec<(i128, i128)> = edges
        .iter()
        .copied()
        .chain(edges.iter().map(|&(x, y)| (-x, -y)))
        .collect();
    for &e in &walk[..walk.len() - 1] {
        cur = (cur.0 + e.0, cur.1 + e.1);
        verts.push(cur);
    }
    let (xmin, xmax) = (
        verts.iter().map(|v| v.0).min().unwrap(),
        verts.iter().map(|v| v.0).max().unwrap(),
    );
    let (ymin, ymax) = (
        verts.iter().map(|v| v.1).min().unwrap(),
        verts.iter().map(|v| v.1).max().unwrap(),
    );
    cap_check(
        "zonogon bounding box",
        ((xmax - xmin + 1) as u128).saturating_mul((ymax - ymin + 1) as u128),
        cap,
    )?;
    let mut count = 0u64;
    for y in ymin..=ymax {
        let (mut lo, mut hi) = (xmin, xmax);
        for (v, e) in verts.iter().zip(&walk) {
            // interior lies to the left: e.x (y - v.y) - e.y (x - v.x) >= 0
            let rhs = e.0 * (y - v.1) + e.1 * v.0;
            match e.1.signum() {
                1 => hi = hi.min(Integer::div_floor(&rhs, &e.1)),
                -1 => lo = lo.max(Integer::div_ceil(&rhs, &e.1)),
                _ => {
                    if e.0 * (y - v.1) < 0 {
                        hi = lo - 1;
                    }
                }
            }
        }
        if hi >= lo {
            count += (hi - lo + 1) as u64;
        }
    }
    Ok(count)
}

/// Lattice-point count from Pick's theorem: `area + sum gcd(edge) + 1`.
pub fn zonogon_pick_count(z: &Zonotope) -> Result<i128> {
    let (_, edges) = zonogon_edges(z)?;
    let boundary: i128 = edges.iter().map(|e| e.0.abs().gcd(&e.1.abs())).sum();
    Ok(zonogon_area(z)? + boundary + 1)
}
