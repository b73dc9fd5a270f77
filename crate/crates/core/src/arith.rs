//! Checked integer helpers shared by the exact modules.

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd_all<I: IntoIterator<Item = i128>>(it: I) -> i128 {
    it.into_iter().fold(0, gcd)
}

/// Extended Euclid: `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x1, y1) = ext_gcd(b, a % b);
        (g, y1, x1 - (a / b) * y1)
    }
}

/// Coefficients `c` with `sum c_i * q_i = gcd(q)`, built left to right.
pub fn bezout(q: &[i128]) -> Result<(i128, Vec<i128>)> {
    let mut g = 0i128;
    let mut coef: Vec<i128> = Vec::with_capacity(q.len());
    for &qi in q {
        let (ng, u, v) = ext_gcd(g, qi);
        for c in coef.iter_mut() {
            *c = c.checked_mul(u).ok_or(Error::Overflow("bezout coefficients"))?;
        }
        coef.push(v);
        g = ng;
    }
    Ok((g, coef))
}

pub fn mul(a: i128, b: i128, what: &'static str) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

pub fn add(a: i128, b: i128, what: &'static str) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

pub fn to_i64(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

/// Parses `p/q`, `p`, or a finite decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().ok()?;
        let q: i128 = q.trim().parse().ok()?;
        return (q != 0).then(|| Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 30 {
            return None;
        }
        let neg = int.trim_start().starts_with('-');
        let int: i128 = if int.is_empty() || int == "-" { 0 } else { int.parse().ok()? };
        let den = 10i128.checked_pow(frac.len() as u32)?;
        let f: i128 = frac.parse().ok()?;
        let num = int.abs().checked_mul(den)?.checked_add(f)?;
        return Some(Rational::new(if neg { -num } else { num }, den));
    }
    s.parse::<i128>().ok().map(Rational::from_integer)
}
