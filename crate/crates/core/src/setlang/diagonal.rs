//! Diagonal construction against every polynomial up to a height.
//!
//! Polynomials `c1*x + ... + cd*x^d` (leading coefficient nonzero) are
//! weighted by `d + sum |c_i| - 1`, so that height 1 admits only `±x`.
//! They are visited by weight, ties broken lexicographically on the
//! coefficient vector. For each one the construction includes the least
//! positive value not yet excluded and excludes the least positive value
//! not yet included. Polynomials with finitely many positive values (even
//! degree, negative leading coefficient) are skipped.

use std::collections::BTreeSet;

use serde::Serialize;

use super::poly::PolyRef;
use crate::error::{Error, Result};

/// Heights above this are refused as a resource error.
pub const MAX_DIAGONAL_HEIGHT: u32 = 9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalRecord {
    pub coeffs: Vec<i64>,
    pub included: u64,
    pub excluded: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagonal {
    pub height: u32,
    pub included: BTreeSet<u64>,
    pub excluded: BTreeSet<u64>,
    pub records: Vec<DiagonalRecord>,
}

/// Polynomial weight used for the enumeration order.
pub fn weight(coeffs: &[i64]) -> u64 {
    let degree = coeffs.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1) as u64;
    degree + coeffs.iter().map(|c| c.unsigned_abs()).sum::<u64>() - 1
}

/// Every nonconstant polynomial of weight at most `height`, in visiting order.
pub fn enumerate_polys(height: u32) -> Vec<Vec<i64>> {
    let h = height as i64;
    let mut out = Vec::new();
    for degree in 1..=h {
        // sum |c_i| <= h + 1 - degree, with c_degree != 0
        let budget = h + 1 - degree;
        let mut current = Vec::with_capacity(degree as usize);
        fill(degree as usize, budget, &mut current, &mut out);
    }
    out.sort_by(|a, b| weight(a).cmp(&weight(b)).then_with(|| a.cmp(b)));
    out
}

fn fill(len: usize, budget: i64, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if current.len() == len {
        if current.last().is_some_and(|&c| c != 0) {
            out.push(current.clone());
        }
        return;
    }
    for c in -budget..=budget {
        current.push(c);
        fill(len, budget - c.abs(), current, out);
        current.pop();
    }
}

fn least_value(p: PolyRef<'_>, avoid: &BTreeSet<u64>) -> u64 {
    let mut limit = 64u64;
    loop {
        if let Some(v) = p
            .values_upto(limit)
            .into_iter()
            .find(|v| !avoid.contains(v))
        {
            return v;
        }
        limit = limit.saturating_mul(4);
    }
}

impl Diagonal {
    pub fn build(height: u32) -> Result<Self> {
        if height > MAX_DIAGONAL_HEIGHT {
            return Err(Error::Resource(format!(
                "diagonal height {height} exceeds cap {MAX_DIAGONAL_HEIGHT}"
            )));
        }
        let mut included = BTreeSet::new();
        let mut excluded = BTreeSet::new();
        let mut records = Vec::new();
        for coeffs in enumerate_polys(height) {
            let p = PolyRef::new(&coeffs).expect("enumerated polynomials are nonzero");
            if !p.unbounded_above() {
                continue;
            }
            let inc = least_value(p, &excluded);
            included.insert(inc);
            let exc = least_value(p, &included);
            excluded.insert(exc);
            records.push(DiagonalRecord {
                coeffs,
                included: inc,
                excluded: exc,
            });
        }
        Ok(Diagonal {
            height,
            included,
            excluded,
            records,
        })
    }
}
