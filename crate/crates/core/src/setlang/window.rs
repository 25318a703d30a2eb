use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::diagonal::{Diagonal, DiagonalRecord};
use super::poly::PolyRef;
use super::SetExpr;
use crate::error::{Error, Result};

pub const DEFAULT_WINDOW_CAP: usize = 10_000_000;

/// `S ∩ [1, N]` as a sorted element list plus a membership table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedWindow {
    n: usize,
    elements: Vec<usize>,
    // index 0 is always false
    bits: Vec<bool>,
}

impl SortedWindow {
    pub fn from_bits(n: usize, mut bits: Vec<bool>) -> Self {
        bits.resize(n + 1, false);
        bits[0] = false;
        let elements = bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        SortedWindow { n, elements, bits }
    }

    /// Fails unless `elements` is strictly increasing inside `[1, n]`.
    pub fn from_elements(n: usize, elements: Vec<usize>) -> Result<Self> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidWindow(
                "elements not strictly increasing".into(),
            ));
        }
        if elements.first().is_some_and(|&x| x == 0) || elements.last().is_some_and(|&x| x > n) {
            return Err(Error::InvalidWindow(format!("elements outside [1, {n}]")));
        }
        let mut bits = vec![false; n + 1];
        for &x in &elements {
            bits[x] = true;
        }
        Ok(SortedWindow { n, elements, bits })
    }

    pub fn full(n: usize) -> Self {
        Self::from_bits(n, vec![true; n + 1])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.bits.get(x).copied().unwrap_or(false)
    }

    /// Membership table indexed by position; entry 0 is false.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// The same set truncated to `[1, m]`, `m <= n`.
    pub fn truncate(&self, m: usize) -> Self {
        let m = m.min(self.n);
        Self::from_bits(m, self.bits[..=m].to_vec())
    }

    pub fn record(&self, expr: &str) -> WindowRecord {
        WindowRecord {
            expr: expr.to_string(),
            n: self.n,
            elements: self.elements.clone(),
        }
    }
}

/// JSON form of a window: `{"expr", "N", "elements"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowRecord {
    pub expr: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub elements: Vec<usize>,
}

fn diagonal_cached(height: u32) -> Result<Arc<Diagonal>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Diagonal>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().unwrap().get(&height) {
        return Ok(Arc::clone(d));
    }
    let d = Arc::new(Diagonal::build(height)?);
    cache.lock().unwrap().insert(height, Arc::clone(&d));
    Ok(d)
}

fn geom_terms(a: u64, num: u64, den: u64, limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut top = BigUint::from(a);
    let mut bottom = BigUint::one();
    let (num, den) = (BigUint::from(num), BigUint::from(den));
    loop {
        let q = (&top + &bottom - 1u32) / &bottom;
        match q.to_u64() {
            Some(v) if v <= limit => {
                if out.last() != Some(&v) {
                    out.push(v);
                }
            }
            _ => break,
        }
        top *= &num;
        bottom *= &den;
    }
    out
}

fn icbrt_floor(x: u64) -> u64 {
    let mut r = (x as f64).cbrt() as u64;
    while r.saturating_mul(r).saturating_mul(r) > x {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1).saturating_mul(r + 1) <= x {
        r += 1;
    }
    r
}

fn subset_sums_upto(gens: &[u64], limit: u64) -> BTreeSet<u64> {
    let mut sums = BTreeSet::from([0u64]);
    for &g in gens {
        let shifted: Vec<u64> = sums
            .iter()
            .filter_map(|s| s.checked_add(g).filter(|&v| v <= limit))
            .collect();
        sums.extend(shifted);
    }
    sums.remove(&0);
    sums
}

/// True iff `x` belongs to the set denoted by `expr`.
///
/// Diagonal sets above the height cap are treated as empty.
pub fn member(expr: &SetExpr, x: u64) -> bool {
    if x == 0 {
        return false;
    }
    match expr {
        SetExpr::All => true,
        SetExpr::Odds => x % 2 == 1,
        SetExpr::Evens => x.is_multiple_of(2),
        SetExpr::ModSet(n) => x.is_multiple_of(*n),
        SetExpr::Poly(c) => PolyRef::new(c).is_some_and(|p| p.takes_value(x)),
        SetExpr::Squares => {
            let r = x.isqrt();
            r * r == x
        }
        SetExpr::Cubes => {
            let r = icbrt_floor(x);
            r * r * r == x
        }
        SetExpr::Geom { a, num, den } => geom_terms(*a, *num, *den, x).last() == Some(&x),
        SetExpr::Explicit(xs) => xs.binary_search(&x).is_ok(),
        SetExpr::CombCube(gens) => subset_sums_upto(gens, x).contains(&x),
        SetExpr::Diagonal(h) => diagonal_cached(*h).is_ok_and(|d| d.included.contains(&x)),
        SetExpr::Union(a, b) => member(a, x) || member(b, x),
        SetExpr::Intersect(a, b) => member(a, x) && member(b, x),
        SetExpr::Diff(a, b) => member(a, x) && !member(b, x),
        SetExpr::Complement(a) => !member(a, x),
    }
}

/// `materialize_capped` with [`DEFAULT_WINDOW_CAP`].
pub fn materialize(expr: &SetExpr, n: usize) -> Result<SortedWindow> {
    materialize_capped(expr, n, DEFAULT_WINDOW_CAP)
}

pub fn materialize_capped(expr: &SetExpr, n: usize, cap: usize) -> Result<SortedWindow> {
    if n > cap {
        return Err(Error::Resource(format!("window N = {n} exceeds cap {cap}")));
    }
    Ok(SortedWindow::from_bits(n, fill(expr, n)?))
}

fn fill(expr: &SetExpr, n: usize) -> Result<Vec<bool>> {
    let mut bits = vec![false; n + 1];
    let limit = n as u64;
    match expr {
        SetExpr::All => bits.iter_mut().skip(1).for_each(|b| *b = true),
        SetExpr::Odds => (1..=n).step_by(2).for_each(|x| bits[x] = true),
        SetExpr::Evens => (2..=n).step_by(2).for_each(|x| bits[x] = true),
        SetExpr::ModSet(m) => {
            let m = usize::try_from(*m).unwrap_or(usize::MAX);
            (m..=n).step_by(m.max(1)).for_each(|x| bits[x] = true);
        }
        SetExpr::Poly(c) => {
            if let Some(p) = PolyRef::new(c) {
                if p.search_radius(limit) <= 4 * limit + 64 {
                    for v in p.values_upto(limit) {
                        bits[v as usize] = true;
                    }
                } else {
                    for x in 1..=n {
                        bits[x] = p.takes_value(x as u64);
                    }
                }
            }
        }
        SetExpr::Squares => (1..)
            .map(|i| i * i)
            .take_while(|&v| v <= n)
            .for_each(|v| bits[v] = true),
        SetExpr::Cubes => (1..)
            .map(|i| i * i * i)
            .take_while(|&v| v <= n)
            .for_each(|v| bits[v] = true),
        SetExpr::Geom { a, num, den } => {
            for v in geom_terms(*a, *num, *den, limit) {
                bits[v as usize] = true;
            }
        }
        SetExpr::Explicit(xs) => {
            for &x in xs.iter().take_while(|&&x| x <= limit) {
                bits[x as usize] = true;
            }
        }
        SetExpr::CombCube(gens) => {
            let mut reach = vec![false; n + 1];
            reach[0] = true;
            for &g in gens {
                let Ok(g) = usize::try_from(g) else { continue };
                if g > n {
                    continue;
                }
                for s in (g..=n).rev() {
                    if reach[s - g] {
                        reach[s] = true;
                    }
                }
            }
            reach[0] = false;
            bits = reach;
        }
        SetExpr::Diagonal(h) => {
            let d = diagonal_cached(*h)?;
            for &v in d.included.range(..=limit) {
                bits[v as usize] = true;
            }
        }
        SetExpr::Union(a, b) => {
            let (x, y) = (fill(a, n)?, fill(b, n)?);
            bits = x.iter().zip(&y).map(|(p, q)| *p || *q).collect();
        }
        SetExpr::Intersect(a, b) => {
            let (x, y) = (fill(a, n)?, fill(b, n)?);
            bits = x.iter().zip(&y).map(|(p, q)| *p && *q).collect();
        }
        SetExpr::Diff(a, b) => {
            let (x, y) = (fill(a, n)?, fill(b, n)?);
            bits = x.iter().zip(&y).map(|(p, q)| *p && !*q).collect();
        }
        SetExpr::Complement(a) => {
            bits = fill(a, n)?.into_iter().map(|b| !b).collect();
        }
    }
    bits[0] = false;
    Ok(bits)
}

/// Diagonal window plus the bookkeeping of the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalWindow {
    pub window: SortedWindow,
    /// Every excluded value, including those above `N`.
    pub excluded: Vec<u64>,
    pub records: Vec<DiagonalRecord>,
}

/// Included elements of the height-`height` diagonal construction within `[1, n]`.
pub fn diagonal_set(height: u32, n: usize) -> Result<DiagonalWindow> {
    let d = diagonal_cached(height)?;
    let window = materialize(&SetExpr::Diagonal(height), n)?;
    Ok(DiagonalWindow {
        window,
        excluded: d.excluded.iter().copied().collect(),
        records: d.records.clone(),
    })
}
