//! Searches for monochromatic structures in a fixed coloring and for
//! structural features of a set window. Every search returns the
//! lexicographically least witness.

use crate::bitset::Bitset;
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::setlang::SortedWindow;
use crate::witness::Witness;

fn same_n(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: a, right: b })
    }
}

fn check_len(len: usize) -> Result<()> {
    if len == 0 {
        return Err(Error::Argument(
            "progression length must be positive".into(),
        ));
    }
    Ok(())
}

/// Least `(a, d)` over `diffs` (ascending) with `mask(w, d)` bit `a` set.
/// `mask` must only report `a` with `a + (len - 1) d <= n`.
fn least_start(
    diffs: &[usize],
    len: usize,
    n: usize,
    words: usize,
    mask: impl Fn(usize, usize) -> u64,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for &d in diffs {
        if (len - 1) * d >= n {
            break;
        }
        let last_word = best.map_or(words.saturating_sub(1), |(a, _)| a / 64);
        for w in 0..=last_word {
            let m = mask(w, d);
            if m != 0 {
                let a = 64 * w + m.trailing_zeros() as usize;
                if best.is_none_or(|(ba, _)| a < ba) {
                    best = Some((a, d));
                }
                break;
            }
        }
        if best.is_some_and(|(a, _)| a == 1) {
            break;
        }
    }
    best
}

/// One bitset per bit of the color index, plus the valid range `[1, N]`.
struct ColorPlanes {
    valid: Bitset,
    planes: Vec<Bitset>,
}

impl ColorPlanes {
    fn new(coloring: &Coloring) -> Self {
        let n = coloring.n();
        let bits = 32 - (coloring.r() - 1).leading_zeros();
        let valid = Bitset::from_fn(n + 1, |i| i >= 1);
        let planes = (0..bits)
            .map(|b| Bitset::from_fn(n + 1, |i| i >= 1 && coloring.color(i) >> b & 1 == 1))
            .collect();
        ColorPlanes { valid, planes }
    }

    /// Bit `a` set iff `a, a + d, ..., a + (len - 1) d` all lie in `[1, N]`
    /// and share a color.
    #[inline]
    fn mono_mask(&self, w: usize, d: usize, len: usize) -> u64 {
        let mut m = self.valid.shifted_word(w, 0) & self.valid.shifted_word(w, (len - 1) * d);
        for p in &self.planes {
            let base = p.shifted_word(w, 0);
            for j in 1..len {
                m &= !(base ^ p.shifted_word(w, j * d));
                if m == 0 {
                    return 0;
                }
            }
        }
        m
    }
}

/// Least monochromatic `len`-term progression with common difference in `window`.
pub fn find_mono_ap(
    coloring: &Coloring,
    window: &SortedWindow,
    len: usize,
) -> Result<Option<Witness>> {
    same_n(coloring.n(), window.n())?;
    check_len(len)?;
    let n = window.n();
    if len == 1 {
        return Ok(window
            .elements()
            .first()
            .filter(|_| n >= 1)
            .map(|&d| Witness::Ap {
                start: 1,
                diff: d,
                len: 1,
                color: Some(coloring.color(1)),
            }));
    }
    let planes = ColorPlanes::new(coloring);
    let words = planes.valid.word_count();
    Ok(least_start(window.elements(), len, n, words, |w, d| {
        planes.mono_mask(w, d, len)
    })
    .map(|(a, d)| Witness::Ap {
        start: a,
        diff: d,
        len,
        color: Some(coloring.color(a)),
    }))
}

/// Least `len`-term progression inside `subset` whose common difference lies in `diffs`.
pub fn find_ap_in_subset(
    subset: &SortedWindow,
    diffs: &SortedWindow,
    len: usize,
) -> Result<Option<Witness>> {
    same_n(subset.n(), diffs.n())?;
    check_len(len)?;
    if len == 1 {
        return Ok(subset
            .elements()
            .first()
            .zip(diffs.elements().first())
            .map(|(&a, &d)| Witness::Ap {
                start: a,
                diff: d,
                len: 1,
                color: None,
            }));
    }
    let bits = Bitset::from_fn(subset.n() + 1, |i| subset.contains(i));
    let words = bits.word_count();
    let found = least_start(diffs.elements(), len, subset.n(), words, |w, d| {
        let mut m = bits.shifted_word(w, 0);
        for j in 1..len {
            m &= bits.shifted_word(w, j * d);
            if m == 0 {
                break;
            }
        }
        m
    });
    Ok(found.map(|(a, d)| Witness::Ap {
        start: a,
        diff: d,
        len,
        color: None,
    }))
}

/// Longest-walk table over positions, restricted to `keep`.
/// Returns `(length from x, least best successor)` per position.
fn walk_table(
    coloring: &Coloring,
    window: &SortedWindow,
    keep: impl Fn(usize) -> bool,
) -> (Vec<usize>, Vec<usize>) {
    let n = coloring.n();
    let mut len_from = vec![0usize; n + 2];
    let mut succ = vec![0usize; n + 2];
    for x in (1..=n).rev() {
        if !keep(x) {
            continue;
        }
        let c = coloring.color(x);
        let mut best = 1;
        for &s in window.elements() {
            let y = x + s;
            if y > n {
                break;
            }
            if len_from[y] + 1 > best && coloring.color(y) == c {
                best = len_from[y] + 1;
                succ[x] = y;
            }
        }
        len_from[x] = best;
    }
    (len_from, succ)
}

fn walk_from_table(coloring: &Coloring, len_from: &[usize], succ: &[usize]) -> Option<Witness> {
    let n = coloring.n();
    let (start, _) = (1..=n)
        .map(|x| (x, len_from[x]))
        .filter(|&(_, l)| l > 0)
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))?;
    let mut vertices = vec![start];
    let mut x = start;
    while len_from[x] > 1 {
        x = succ[x];
        vertices.push(x);
    }
    Some(Witness::Walk {
        vertices,
        color: Some(coloring.color(start)),
    })
}

/// A longest monochromatic walk over `window`: ties go to the least start,
/// then the least successor at each step. Walks strictly increase, so the
/// table is filled right to left in one pass.
pub fn longest_mono_walk(coloring: &Coloring, window: &SortedWindow) -> Result<Witness> {
    same_n(coloring.n(), window.n())?;
    let (len_from, succ) = walk_table(coloring, window, |_| true);
    Ok(
        walk_from_table(coloring, &len_from, &succ).unwrap_or(Witness::Walk {
            vertices: Vec::new(),
            color: None,
        }),
    )
}

/// Longest walk using only positions of `color`.
pub fn longest_walk_of_color(
    coloring: &Coloring,
    window: &SortedWindow,
    color: u32,
) -> Result<Option<Witness>> {
    same_n(coloring.n(), window.n())?;
    let (len_from, succ) = walk_table(coloring, window, |x| coloring.color(x) == color);
    Ok(walk_from_table(coloring, &len_from, &succ))
}

/// Outcome of a bounded cube search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeSearch {
    pub witness: Option<Witness>,
    /// True when the search space was exhausted; false when the budget ran out.
    pub exhausted: bool,
    pub nodes: u64,
}

/// Searches for `dim` generators (a multiset, listed nondecreasing) whose
/// nonempty subset sums all lie in `window`.
pub fn detect_cube(window: &SortedWindow, dim: usize, budget: u64) -> CubeSearch {
    assert!(dim >= 1, "cube dimension must be positive");
    let mut st = CubeState {
        window,
        dim,
        budget,
        nodes: 0,
        gens: Vec::with_capacity(dim),
        out_of_budget: false,
    };
    let found = st.dfs(0, &[], 0);
    CubeSearch {
        exhausted: found || !st.out_of_budget,
        witness: found.then(|| Witness::Cube {
            generators: st.gens.clone(),
        }),
        nodes: st.nodes,
    }
}

struct CubeState<'a> {
    window: &'a SortedWindow,
    dim: usize,
    budget: u64,
    nodes: u64,
    gens: Vec<usize>,
    out_of_budget: bool,
}

impl CubeState<'_> {
    /// `sums` holds the distinct subset sums of `gens`; `total` their maximum.
    fn dfs(&mut self, from: usize, sums: &[usize], total: usize) -> bool {
        if self.gens.len() == self.dim {
            return true;
        }
        let remaining = self.dim - self.gens.len();
        let n = self.window.n();
        let elems = self.window.elements();
        for i in from..elems.len() {
            let g = elems[i];
            if total + g * remaining > n {
                break;
            }
            if self.nodes >= self.budget {
                self.out_of_budget = true;
                return false;
            }
            self.nodes += 1;
            if !sums.iter().all(|&s| self.window.contains(s + g)) {
                continue;
            }
            let mut next: Vec<usize> = sums.iter().map(|&s| s + g).collect();
            next.push(g);
            next.extend_from_slice(sums);
            next.sort_unstable();
            next.dedup();
            self.gens.push(g);
            if self.dfs(i, &next, total + g) {
                return true;
            }
            self.gens.pop();
            if self.out_of_budget {
                return false;
            }
        }
        false
    }
}

/// Least `x <= N / n` with `x, 2x, ..., nx` all in `window`.
pub fn find_homothetic(window: &SortedWindow, n: usize) -> Option<Witness> {
    assert!(n >= 1, "progression length must be positive");
    (1..=window.n() / n)
        .find(|&x| (1..=n).all(|j| window.contains(j * x)))
        .map(|x| Witness::Homothetic { x, n })
}
