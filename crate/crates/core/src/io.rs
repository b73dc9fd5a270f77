//! Plain-text inputs: integer sets, point clouds and coefficient lists.
//! Every format is line oriented with `#` starting a comment.

use std::fs;
use std::path::Path;

use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};
use crate::geometry::PointCloud;

/// Non-empty, comment-stripped lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// One integer per line. Duplicates are kept, so the result is a multiset.
pub fn parse_set(text: &str) -> Result<Vec<i64>> {
    content_lines(text)
        .map(|(line, l)| {
            l.parse::<i64>().map_err(|e| Error::Parse {
                line,
                msg: format!("`{l}`: {e}"),
            })
        })
        .collect()
}

/// One point per line, coordinates separated by whitespace or commas. All
/// points must share a dimension.
pub fn parse_points(text: &str) -> Result<PointCloud> {
    let mut dim = None;
    let mut points = Vec::new();
    for (line, l) in content_lines(text) {
        let p = l
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>().map_err(|e| Error::Parse {
                    line,
                    msg: format!("`{t}`: {e}"),
                })
            })
            .collect::<Result<Vec<i64>>>()?;
        match dim {
            None => dim = Some(p.len()),
            Some(d) if d != p.len() => {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected {d} coordinates, found {}", p.len()),
                })
            }
            _ => {}
        }
        points.push(p);
    }
    PointCloud::new(dim.unwrap_or(2), points)
}

/// One rational per line (`p/q`, integer or decimal).
pub fn parse_rationals(text: &str) -> Result<Vec<Rational>> {
    content_lines(text)
        .map(|(line, l)| {
            parse_rational(l).ok_or_else(|| Error::Parse {
                line,
                msg: format!("`{l}` is not a rational"),
            })
        })
        .collect()
}

pub fn read_set(path: &Path) -> Result<Vec<i64>> {
    parse_set(&fs::read_to_string(path)?)
}

pub fn read_points(path: &Path) -> Result<PointCloud> {
    parse_points(&fs::read_to_string(path)?)
}

pub fn read_rationals(path: &Path) -> Result<Vec<Rational>> {
    parse_rationals(&fs::read_to_string(path)?)
}
