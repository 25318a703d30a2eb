//! Explicit constructions: the interval partition and adversarial
//! `(k+2)`-coloring for sets with fast-growing `k`-gaps, greedy growth of a
//! set `H` with `H - H ⊆ S`, and the sparse-ladder generator.

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::setlang::SortedWindow;
use crate::witness::cube_sums;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub start: usize,
    pub len: usize,
    pub forbidden: u32,
    /// Set on the last interval when it is cut off by the window edge.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub partial: bool,
}

impl Interval {
    pub fn end(&self) -> usize {
        self.start + self.len - 1
    }
}

/// Consecutive intervals `I_1 = {1}, I_2, ...` covering `[1, N]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalPartition {
    pub k: usize,
    pub n: usize,
    pub intervals: Vec<Interval>,
    /// For complete intervals `t >= 2`, the index `N_t` with `|I_t| = s_{N_t}`.
    pub size_index: Vec<Option<usize>>,
}

impl IntervalPartition {
    /// 1-based interval index of every position in `[1, N]`; entry 0 unused.
    pub fn interval_of(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n + 1];
        for (t, iv) in self.intervals.iter().enumerate() {
            for x in iv.start..=iv.end().min(self.n) {
                idx[x] = t + 1;
            }
        }
        idx
    }

    pub fn complete_intervals(&self) -> usize {
        self.intervals.iter().filter(|iv| !iv.partial).count()
    }
}

fn forbidden_color(t: usize, k: usize) -> u32 {
    (t % (k + 2)) as u32
}

/// Builds the partition for gap parameter `k`.
///
/// With `s_1 < s_2 < ...` the window elements and `g_n = s_{n+k} - s_n` for
/// every `n` with `s_{n+k}` in the window, `|I_t| = s_{N_t}` where `N_t` is
/// the least index such that `g_n` exceeds `|I_1| + ... + |I_{t-1}|` for
/// every representable `n >= N_t`. When no representable gap is large
/// enough, the rest of the window becomes a trailing partial interval.
///
/// The gap sequence must be nondecreasing on a tail covering at least half
/// of it and strictly larger at its end than at the start of that tail;
/// otherwise growth of the gaps cannot be read off the window.
pub fn interval_partition(window: &SortedWindow, k: usize) -> Result<IntervalPartition> {
    if k == 0 {
        return Err(Error::Argument("k must be positive".into()));
    }
    let s = window.elements();
    if s.len() < k + 1 {
        return Err(Error::WindowTooSmall(format!(
            "need at least {} elements, window has {}",
            k + 1,
            s.len()
        )));
    }
    // gaps[i] = g_{i+1}
    let gaps: Vec<usize> = (0..s.len() - k).map(|i| s[i + k] - s[i]).collect();
    let m = gaps.len();
    let mut tail = m - 1;
    while tail > 0 && gaps[tail - 1] <= gaps[tail] {
        tail -= 1;
    }
    if tail > (m - 1) / 2 {
        return Err(Error::GapConditionUnverifiable(format!(
            "k-gaps are nondecreasing only on the last {} of {} values",
            m - tail,
            m
        )));
    }
    if gaps[m - 1] <= gaps[tail] {
        return Err(Error::GapConditionUnverifiable(format!(
            "k-gaps stay at {} over the nondecreasing tail",
            gaps[m - 1]
        )));
    }
    let mut suffix_min = gaps.clone();
    for i in (0..m - 1).rev() {
        suffix_min[i] = suffix_min[i].min(suffix_min[i + 1]);
    }

    let n = window.n();
    let mut intervals = vec![Interval {
        start: 1,
        len: 1,
        forbidden: forbidden_color(1, k),
        partial: n < 1,
    }];
    let mut size_index = vec![None];
    let mut covered = 1usize;
    while covered < n {
        let t = intervals.len() + 1;
        // least i with suffix_min[i] > covered; suffix_min is nondecreasing
        let i = suffix_min.partition_point(|&g| g <= covered);
        let start = covered + 1;
        if i == m {
            intervals.push(Interval {
                start,
                len: n - covered,
                forbidden: forbidden_color(t, k),
                partial: true,
            });
            size_index.push(None);
            break;
        }
        let len = s[i];
        let partial = covered + len > n;
        intervals.push(Interval {
            start,
            len: if partial { n - covered } else { len },
            forbidden: forbidden_color(t, k),
            partial,
        });
        size_index.push((!partial).then_some(i + 1));
        covered += len;
    }
    Ok(IntervalPartition {
        k,
        n,
        intervals,
        size_index,
    })
}

/// Colors `[1, N]` with `k + 2` colors: each position avoids its interval's
/// forbidden color and the colors of its neighbors in the distance graph that
/// lie two or more intervals back, taking the least remaining color.
pub fn adversarial_coloring(
    window: &SortedWindow,
    k: usize,
    partition: &IntervalPartition,
) -> Result<Coloring> {
    if partition.k != k || partition.n != window.n() {
        return Err(Error::Argument(
            "partition was built for a different window or k".into(),
        ));
    }
    let n = window.n();
    let s = window.elements();
    let r = k + 2;
    let mut colors = vec![0u32; n];
    let mut taken = vec![false; r];
    // end of I_{t-2}, i.e. the last position two or more intervals back
    let mut far_end = 0usize;
    for (ti, iv) in partition.intervals.iter().enumerate() {
        if ti >= 2 {
            far_end = partition.intervals[ti - 2].end();
        }
        for x in iv.start..=iv.end() {
            taken.iter_mut().for_each(|b| *b = false);
            taken[iv.forbidden as usize] = true;
            let mut count = 0;
            if far_end > 0 && x > far_end {
                // neighbors y = x - d with y <= far_end, i.e. d >= x - far_end
                let lo = s.partition_point(|&d| d < x - far_end);
                for &d in s[lo..].iter().take_while(|&&d| d < x) {
                    count += 1;
                    if count > k {
                        return Err(Error::NeighborBoundViolated {
                            position: x,
                            count,
                            bound: k,
                        });
                    }
                    taken[colors[x - d - 1] as usize] = true;
                }
            }
            let c = taken
                .iter()
                .position(|&b| !b)
                .expect("at most k + 1 of k + 2 colors are excluded");
            colors[x - 1] = c as u32;
        }
    }
    Coloring::new(r as u32, colors)
}

/// Post-hoc soundness checks for an adversarial coloring.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConfinementReport {
    /// Positions colored with their interval's forbidden color.
    pub forbidden_hits: Vec<usize>,
    /// Monochromatic edges `(y, x)` of the distance graph joining intervals
    /// two or more apart.
    pub long_edges: Vec<(usize, usize)>,
    /// Most complete intervals touched by one monochromatic walk that stays
    /// out of the trailing partial interval.
    pub max_span: usize,
}

impl ConfinementReport {
    pub fn holds(&self, k: usize) -> bool {
        self.forbidden_hits.is_empty() && self.long_edges.is_empty() && self.max_span <= k + 1
    }
}

pub fn check_confinement(
    coloring: &Coloring,
    window: &SortedWindow,
    partition: &IntervalPartition,
) -> Result<ConfinementReport> {
    let n = window.n();
    if coloring.n() != n || partition.n != n {
        return Err(Error::DimensionMismatch {
            left: coloring.n(),
            right: n,
        });
    }
    let iv_of = partition.interval_of();
    let mut report = ConfinementReport::default();
    // first[x]: least interval index reachable by a monochromatic walk ending at x
    let mut first = vec![0usize; n + 1];
    for x in 1..=n {
        let t = iv_of[x];
        let iv = &partition.intervals[t - 1];
        let c = coloring.color(x);
        if c == iv.forbidden {
            report.forbidden_hits.push(x);
        }
        let mut lo = t;
        for &d in window.elements().iter().take_while(|&&d| d < x) {
            let y = x - d;
            if coloring.color(y) != c {
                continue;
            }
            if iv_of[y] + 2 <= t {
                report.long_edges.push((y, x));
            }
            lo = lo.min(first[y]);
        }
        first[x] = lo;
        if !iv.partial {
            report.max_span = report.max_span.max(t - lo + 1);
        }
    }
    Ok(report)
}

/// A set `H` whose pairwise differences lie in the ambient window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceSet {
    pub elements: Vec<usize>,
    pub n: usize,
}

/// Greedy growth from `H_1 = {min S}`: with `n = max H + 1`, append the
/// least multiple `t n <= N` for which `t n - H` lies inside the window.
pub fn grow_difference_set(window: &SortedWindow, target: usize) -> Result<DifferenceSet> {
    if target == 0 {
        return Err(Error::Argument("target size must be positive".into()));
    }
    let Some(&first) = window.elements().first() else {
        return Err(Error::WindowTooSmall("window is empty".into()));
    };
    let big_n = window.n();
    let mut h = vec![first];
    while h.len() < target {
        let step = h[h.len() - 1] + 1;
        let next = (1..)
            .map(|t| t * step)
            .take_while(|&v| v <= big_n)
            .find(|&v| h.iter().all(|&x| window.contains(v - x)));
        match next {
            Some(v) => h.push(v),
            None => return Err(Error::WindowExhausted { partial: h }),
        }
    }
    Ok(DifferenceSet {
        elements: h,
        n: big_n,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseLadder {
    pub window: SortedWindow,
    /// Generators of every cube that fits entirely inside `[1, N]`.
    pub cubes: Vec<Vec<usize>>,
}

/// Largest cube dimension accepted by [`sparse_ladder`].
pub const MAX_LADDER_DIM: usize = 40;

/// Emits, for `d = 1, 2, ...`, the cube with generators `b, 2b, ..., 2^(d-1) b`
/// (subset sums `b, 2b, ..., (2^d - 1) b`), with `b` the least base keeping
/// every element above all earlier ones and the `i`-th element overall above
/// `floors[i - 1]`. Floors past the end of the list repeat the last value.
pub fn sparse_ladder(floors: &[u64], max_dim: usize, n: usize) -> Result<SparseLadder> {
    if max_dim == 0 || max_dim > MAX_LADDER_DIM {
        return Err(Error::Argument(format!(
            "max_dim must lie in [1, {MAX_LADDER_DIM}]"
        )));
    }
    if floors.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Argument("floor values must be nondecreasing".into()));
    }
    let floor_at =
        |i: usize| -> u128 { floors.get(i - 1).or(floors.last()).copied().unwrap_or(0) as u128 };
    let mut elements: Vec<usize> = Vec::new();
    let mut cubes = Vec::new();
    let mut emitted = 0usize;
    let mut prev_max: u128 = 0;
    for d in 1..=max_dim {
        let count = (1usize << d) - 1;
        let mut base = prev_max;
        for j in 1..=count {
            base = base.max(floor_at(emitted + j) / j as u128);
        }
        let base = base + 1;
        for j in 1..=count {
            let v = base * j as u128;
            if v <= n as u128 {
                elements.push(v as usize);
            }
        }
        if base * count as u128 <= n as u128 {
            cubes.push((0..d).map(|i| (base as usize) << i).collect());
        }
        emitted += count;
        prev_max = base * count as u128;
        if base > n as u128 {
            break;
        }
    }
    if elements.is_empty() {
        return Err(Error::WindowTooSmall(format!("no element fits below {n}")));
    }
    debug_assert!(cubes
        .iter()
        .all(|g: &Vec<usize>| cube_sums(g).len() == (1 << g.len()) - 1));
    Ok(SparseLadder {
        window: SortedWindow::from_elements(n, elements)?,
        cubes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setlang::{materialize, parse};

    fn win(text: &str, n: usize) -> SortedWindow {
        materialize(&parse(text).unwrap(), n).unwrap()
    }

    fn spans(p: &IntervalPartition) -> Vec<(usize, usize)> {
        p.intervals.iter().map(|iv| (iv.start, iv.end())).collect()
    }

    #[test]
    fn squares_partition_replay() {
        let p = interval_partition(&win("squares", 10_000), 1).unwrap();
        assert_eq!(
            &spans(&p)[..6],
            &[(1, 1), (2, 2), (3, 3), (4, 7), (8, 23), (24, 167)]
        );
        assert_eq!(
            &p.size_index[1..6],
            &[Some(1), Some(1), Some(2), Some(4), Some(12)]
        );
        let forb: Vec<u32> = p.intervals.iter().map(|iv| iv.forbidden).collect();
        assert_eq!(&forb[..6], &[1, 2, 0, 1, 2, 0]);
        // then |I_7| = s_84 = 7056, and the rest is a partial interval
        assert_eq!(spans(&p)[6], (168, 7223));
        assert!(p.intervals[7].partial);
        assert_eq!(p.intervals[7].end(), 10_000);
    }

    #[test]
    fn constant_gaps_are_refused() {
        for text in ["all", "odds", "evens"] {
            let err = interval_partition(&win(text, 500), 1).unwrap_err();
            assert!(
                matches!(err, Error::GapConditionUnverifiable(_)),
                "{text}: {err}"
            );
        }
        assert!(matches!(
            interval_partition(&win("{5}", 10), 1),
            Err(Error::WindowTooSmall(_))
        ));
    }

    #[test]
    fn powers_of_two_partition() {
        let w = win("geom(1, 2)", 1 << 16);
        let p = interval_partition(&w, 1).unwrap();
        let lens: Vec<usize> = p
            .intervals
            .iter()
            .filter(|iv| !iv.partial)
            .map(|iv| iv.len)
            .collect();
        assert!(lens.iter().all(|l| l.is_power_of_two()));
        // sizes double once they start growing
        let tail = &lens[lens.len() - 3..];
        assert!(tail.windows(2).all(|w| w[1] >= 2 * w[0]), "{lens:?}");
    }

    #[test]
    fn partition_defining_inequality() {
        for (text, k) in [
            ("squares", 1),
            ("squares", 2),
            ("cubes", 1),
            ("geom(1, 3/2)", 2),
        ] {
            let w = win(text, 20_000);
            let p = interval_partition(&w, k).unwrap();
            let s = w.elements();
            let mut prefix = 0;
            for (t, iv) in p.intervals.iter().enumerate() {
                if let Some(nt) = p.size_index[t] {
                    assert_eq!(iv.len, s[nt - 1]);
                    for n in nt..=s.len() - k {
                        assert!(s[n + k - 1] - s[n - 1] > prefix, "{text} t={}", t + 1);
                    }
                }
                prefix += iv.len;
            }
            assert_eq!(prefix, 20_000);
        }
    }

    #[test]
    fn adversarial_small_squares() {
        let w = win("squares", 200);
        let p = interval_partition(&w, 1).unwrap();
        let c = adversarial_coloring(&w, 1, &p).unwrap();
        assert_eq!(c.r(), 3);
        assert_eq!(c.color(1), 0);
        let rep = check_confinement(&c, &w, &p).unwrap();
        assert!(rep.holds(1), "{rep:?}");
    }

    #[test]
    fn adversarial_rejects_foreign_partition() {
        let w = win("squares", 200);
        let p = interval_partition(&w, 1).unwrap();
        assert!(adversarial_coloring(&w, 2, &p).is_err());
    }

    #[test]
    fn difference_set_examples() {
        let h = grow_difference_set(&win("evens", 100), 3).unwrap();
        assert_eq!(h.elements, vec![2, 6, 14]);
        let h = grow_difference_set(&win("all", 50), 4).unwrap();
        assert_eq!(h.elements, vec![1, 2, 3, 4]);
        let h = grow_difference_set(&win("squares", 50), 1).unwrap();
        assert_eq!(h.elements, vec![1]);
    }

    #[test]
    fn difference_set_exhaustion_reports_partial() {
        match grow_difference_set(&win("evens", 20), 5) {
            Err(Error::WindowExhausted { partial }) => assert_eq!(partial, vec![2, 6, 14]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sparse_ladder_examples() {
        let l = sparse_ladder(&[0], 2, 100).unwrap();
        assert_eq!(l.window.elements(), &[1, 2, 4, 6]);
        assert_eq!(l.cubes, vec![vec![1], vec![2, 4]]);

        let l = sparse_ladder(&[10], 1, 100).unwrap();
        assert_eq!(l.window.elements(), &[11]);

        let floors: Vec<u64> = (1..=200u64).map(|i| i * i).collect();
        let l = sparse_ladder(&floors, 4, 1_000_000).unwrap();
        for (i, &s) in l.window.elements().iter().enumerate() {
            assert!(s as u64 > floors[i], "s_{} = {s}", i + 1);
        }
        assert_eq!(l.cubes.len(), 4);
    }

    #[test]
    fn sparse_ladder_errors() {
        assert!(matches!(
            sparse_ladder(&[50], 2, 10),
            Err(Error::WindowTooSmall(_))
        ));
        assert!(sparse_ladder(&[3, 1], 2, 10).is_err());
    }
}
