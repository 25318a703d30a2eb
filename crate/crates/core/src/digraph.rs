//! Directed graphs on `0..V`: distance graphs of windows, the split of an
//! edge set into two acyclic parts along a vertex ordering, vertex colorings
//! and longest paths.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::setlang::{materialize, SetExpr, SortedWindow};

/// Loop-free digraph without duplicate edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= vertices {
                    return Err(Error::VertexOutOfRange(w, vertices));
                }
            }
            if u == v {
                return Err(Error::LoopDetected(u));
            }
            if !seen.insert((u, v)) {
                return Err(Error::DuplicateEdge(u, v));
            }
        }
        Ok(Digraph { vertices, edges })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Symmetric adjacency lists, sorted and without repeats.
    pub fn undirected_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Parses `"V E"` followed by `E` lines `"u v"`; blank lines and lines
    /// starting with `#` are skipped.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(Error::EdgeList {
            line: 1,
            message: "missing \"V E\" header".into(),
        })?;
        let (v, e) = pair(line, header)?;
        let mut edges = Vec::with_capacity(e);
        for (line, text) in lines {
            edges.push(pair(line, text)?);
        }
        if edges.len() != e {
            return Err(Error::EdgeList {
                line,
                message: format!("header declares {e} edges, found {}", edges.len()),
            });
        }
        Digraph::new(v, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.vertices, self.edges.len());
        for (u, v) in &self.edges {
            writeln!(out, "{u} {v}").expect("writing to a String");
        }
        out
    }
}

fn pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let bad = |message: String| Error::EdgeList { line, message };
    let nums: Vec<&str> = text.split_whitespace().collect();
    if nums.len() != 2 {
        return Err(bad(format!("expected two integers, got {text:?}")));
    }
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| bad(format!("not a nonnegative integer: {s:?}")))
    };
    Ok((parse(nums[0])?, parse(nums[1])?))
}

/// Vertices `0..N` standing for `1..=N`, with `u -> v` for `u < v` and
/// `v - u` in the window.
pub fn distance_graph(window: &SortedWindow) -> Digraph {
    let n = window.n();
    let mut edges = Vec::new();
    for u in 1..=n {
        for &d in window.elements().iter().take_while(|&&d| u + d <= n) {
            edges.push((u - 1, u + d - 1));
        }
    }
    Digraph { vertices: n, edges }
}

/// Splits the edges into those increasing along `ordering` and the rest.
/// `ordering[i]` is the vertex placed at rank `i`.
pub fn partition_acyclic(g: &Digraph, ordering: &[usize]) -> Result<(Digraph, Digraph)> {
    let v = g.vertices;
    if ordering.len() != v {
        return Err(Error::InvalidOrdering);
    }
    let mut rank = vec![usize::MAX; v];
    for (i, &w) in ordering.iter().enumerate() {
        if w >= v || rank[w] != usize::MAX {
            return Err(Error::InvalidOrdering);
        }
        rank[w] = i;
    }
    let mut up = Vec::new();
    let mut down = Vec::new();
    for &(a, b) in &g.edges {
        if a == b {
            return Err(Error::LoopDetected(a));
        }
        if rank[a] < rank[b] {
            up.push((a, b));
        } else {
            down.push((a, b));
        }
    }
    Ok((
        Digraph {
            vertices: v,
            edges: up,
        },
        Digraph {
            vertices: v,
            edges: down,
        },
    ))
}

/// Colors vertices in index order with the least color absent from the
/// already colored neighbors, ignoring edge direction.
pub fn greedy_proper_coloring(g: &Digraph) -> Vec<u32> {
    let adj = g.undirected_neighbors();
    let mut colors = vec![u32::MAX; g.vertices];
    let mut taken = Vec::new();
    for u in 0..g.vertices {
        taken.clear();
        taken.extend(adj[u].iter().filter(|&&w| w < u).map(|&w| colors[w]));
        taken.sort_unstable();
        taken.dedup();
        let c = taken
            .iter()
            .enumerate()
            .find(|&(i, &c)| i as u32 != c)
            .map_or(taken.len() as u32, |(i, _)| i as u32);
        colors[u] = c;
    }
    colors
}

pub fn color_count(colors: &[u32]) -> usize {
    let mut distinct: Vec<u32> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    distinct.len()
}

pub fn is_proper(g: &Digraph, colors: &[u32]) -> bool {
    colors.len() == g.vertices && g.edges.iter().all(|&(u, v)| colors[u] != colors[v])
}

/// The pair coloring `x -> (c1(x), c2(x))`, encoded as `c1 * r2 + c2`.
pub fn product_proper(c1: &[u32], c2: &[u32]) -> Result<Vec<u32>> {
    if c1.len() != c2.len() {
        return Err(Error::DimensionMismatch {
            left: c1.len(),
            right: c2.len(),
        });
    }
    let r2 = c2.iter().max().map_or(1, |&m| m + 1);
    Ok(c1.iter().zip(c2).map(|(&a, &b)| a * r2 + b).collect())
}

/// Largest number of vertices brute-forced by [`exact_chromatic_number`].
pub const EXACT_CHROMATIC_LIMIT: usize = 10;

/// Least number of colors in a proper coloring, by backtracking over every
/// assignment up to renaming of colors.
pub fn exact_chromatic_number(g: &Digraph) -> Result<usize> {
    let v = g.vertices;
    if v > EXACT_CHROMATIC_LIMIT {
        return Err(Error::Resource(format!(
            "exact chromatic number limited to {EXACT_CHROMATIC_LIMIT} vertices, got {v}"
        )));
    }
    let adj = g.undirected_neighbors();
    fn fits(adj: &[Vec<usize>], colors: &mut Vec<u32>, k: u32, used: u32) -> bool {
        let u = colors.len();
        if u == adj.len() {
            return true;
        }
        for c in 0..k.min(used + 1) {
            if adj[u].iter().any(|&w| w < u && colors[w] == c) {
                continue;
            }
            colors.push(c);
            if fits(adj, colors, k, used.max(c + 1)) {
                return true;
            }
            colors.pop();
        }
        false
    }
    Ok((0..=v as u32)
        .find(|&k| fits(&adj, &mut Vec::with_capacity(v), k, 0))
        .expect("v colors always suffice") as usize)
}

/// A directed path with the most vertices; among those, the lexicographically
/// least vertex sequence.
pub fn longest_path_dag(g: &Digraph) -> Result<Vec<usize>> {
    let v = g.vertices;
    if v == 0 {
        return Ok(Vec::new());
    }
    let mut out = vec![Vec::new(); v];
    let mut indeg = vec![0usize; v];
    for &(a, b) in &g.edges {
        out[a].push(b);
        indeg[b] += 1;
    }
    for list in &mut out {
        list.sort_unstable();
    }
    let mut order = Vec::with_capacity(v);
    let mut ready: Vec<usize> = (0..v).filter(|&u| indeg[u] == 0).collect();
    while let Some(u) = ready.pop() {
        order.push(u);
        for &w in &out[u] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(w);
            }
        }
    }
    if order.len() != v {
        return Err(Error::CycleDetected);
    }
    // from[u]: vertices on the longest path starting at u; next[u]: its successor.
    // Ties go to the least successor, which by induction gives the least sequence.
    let mut from = vec![1usize; v];
    let mut next = vec![usize::MAX; v];
    for &u in order.iter().rev() {
        for &w in &out[u] {
            if from[w] + 1 > from[u] {
                from[u] = from[w] + 1;
                next[u] = w;
            }
        }
    }
    let best = (0..v)
        .max_by_key(|&u| (from[u], std::cmp::Reverse(u)))
        .expect("v > 0");
    let mut path = vec![best];
    while next[*path.last().expect("nonempty")] != usize::MAX {
        path.push(next[*path.last().expect("nonempty")]);
    }
    Ok(path)
}

/// Greedy color counts of the distance graph of `expr` for each `N`.
pub fn chromatic_growth(expr: &SetExpr, ns: &[usize]) -> Result<Vec<(usize, usize)>> {
    if ns.is_empty() {
        return Err(Error::Argument("need at least one N".into()));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) || ns[0] == 0 {
        return Err(Error::Argument(
            "N values must be positive and increasing".into(),
        ));
    }
    let full = materialize(expr, *ns.last().expect("nonempty"))?;
    Ok(ns
        .iter()
        .map(|&n| {
            let g = distance_graph(&full.truncate(n));
            (n, color_count(&greedy_proper_coloring(&g)))
        })
        .collect())
}

pub fn growth_csv(rows: &[(usize, usize)]) -> String {
    let mut out = String::from("N,colors\n");
    for (n, c) in rows {
        writeln!(out, "{n},{c}").expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setlang::parse;
    use proptest::prelude::*;

    fn g(v: usize, e: &[(usize, usize)]) -> Digraph {
        Digraph::new(v, e.to_vec()).unwrap()
    }

    fn window(text: &str, n: usize) -> SortedWindow {
        materialize(&parse(text).unwrap(), n).unwrap()
    }

    #[test]
    fn invariants_enforced() {
        assert!(matches!(
            Digraph::new(3, vec![(1, 1)]),
            Err(Error::LoopDetected(1))
        ));
        assert!(matches!(
            Digraph::new(3, vec![(0, 1), (0, 1)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Digraph::new(2, vec![(0, 2)]),
            Err(Error::VertexOutOfRange(2, 2))
        ));
        assert!(Digraph::new(2, vec![(0, 1), (1, 0)]).is_ok());
    }

    #[test]
    fn distance_graph_examples() {
        assert_eq!(
            distance_graph(&window("{1}", 4)).edges(),
            &[(0, 1), (1, 2), (2, 3)]
        );
        let mut odd = distance_graph(&window("odds", 4)).edges().to_vec();
        odd.sort_unstable();
        assert_eq!(odd, vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert!(distance_graph(&window("{}", 7)).edges().is_empty());
    }

    #[test]
    fn partition_examples() {
        let (a, b) = partition_acyclic(&g(3, &[(0, 1), (1, 2), (2, 0)]), &[0, 1, 2]).unwrap();
        assert_eq!(a.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(b.edges(), &[(2, 0)]);
        let (_, b) = partition_acyclic(&g(4, &[(0, 1), (0, 2), (2, 3)]), &[0, 1, 2, 3]).unwrap();
        assert!(b.edges().is_empty());
        let (a, b) = partition_acyclic(&g(2, &[(0, 1), (1, 0)]), &[0, 1]).unwrap();
        assert_eq!((a.edges(), b.edges()), (&[(0, 1)][..], &[(1, 0)][..]));
        assert!(matches!(
            partition_acyclic(&g(2, &[]), &[0, 0]),
            Err(Error::InvalidOrdering)
        ));
        assert!(matches!(
            partition_acyclic(&g(2, &[]), &[0]),
            Err(Error::InvalidOrdering)
        ));
    }

    #[test]
    fn greedy_examples() {
        let path = g(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(color_count(&greedy_proper_coloring(&path)), 2);
        let tri = distance_graph(&window("{1,2}", 3));
        assert_eq!(color_count(&greedy_proper_coloring(&tri)), 3);
        assert_eq!(color_count(&greedy_proper_coloring(&g(5, &[]))), 1);
    }

    #[test]
    fn product_examples() {
        let cyc = g(3, &[(0, 1), (1, 2), (2, 0)]);
        let (a, b) = partition_acyclic(&cyc, &[0, 1, 2]).unwrap();
        let (ca, cb) = (greedy_proper_coloring(&a), greedy_proper_coloring(&b));
        assert!(is_proper(&a, &ca) && is_proper(&b, &cb));
        let p = product_proper(&ca, &cb).unwrap();
        assert!(is_proper(&cyc, &p));
        assert!(color_count(&p) <= 4);
        assert_eq!(product_proper(&ca, &[0, 0, 0]).unwrap(), ca);
        assert!(matches!(
            product_proper(&ca, &[0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn longest_path_examples() {
        assert_eq!(
            longest_path_dag(&g(4, &[(0, 1), (1, 2), (2, 3)])).unwrap(),
            vec![0, 1, 2, 3]
        );
        assert_eq!(longest_path_dag(&g(3, &[])).unwrap().len(), 1);
        let diamond = g(4, &[(0, 2), (0, 1), (2, 3), (1, 3)]);
        assert_eq!(longest_path_dag(&diamond).unwrap(), vec![0, 1, 3]);
        assert!(matches!(
            longest_path_dag(&g(2, &[(0, 1), (1, 0)])),
            Err(Error::CycleDetected)
        ));
    }

    #[test]
    fn growth_examples() {
        let ns = [3, 10, 40];
        for (text, want) in [
            ("{1}", [2, 2, 2]),
            ("odds", [2, 2, 2]),
            ("all", [3, 10, 40]),
        ] {
            let rows = chromatic_growth(&parse(text).unwrap(), &ns).unwrap();
            let got: Vec<usize> = rows.iter().map(|r| r.1).collect();
            assert_eq!(got, want, "{text}");
        }
        assert_eq!(growth_csv(&[(3, 2)]), "N,colors\n3,2\n");
        assert!(chromatic_growth(&parse("all").unwrap(), &[5, 5]).is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let d = g(3, &[(0, 1), (2, 1)]);
        let text = d.to_edge_list();
        assert_eq!(text, "3 2\n0 1\n2 1\n");
        assert_eq!(Digraph::from_edge_list(&text).unwrap(), d);
        assert!(matches!(
            Digraph::from_edge_list("3 1\n0 x\n"),
            Err(Error::EdgeList { line: 2, .. })
        ));
        assert!(matches!(
            Digraph::from_edge_list("3 2\n0 1\n"),
            Err(Error::EdgeList { .. })
        ));
        assert!(matches!(
            Digraph::from_edge_list("3 1\n1 1\n"),
            Err(Error::LoopDetected(1))
        ));
    }

    /// Every simple directed path, by exhaustive extension.
    fn all_paths_longest(d: &Digraph) -> usize {
        fn ext(d: &Digraph, path: &mut Vec<usize>, best: &mut usize) {
            *best = (*best).max(path.len());
            let u = *path.last().unwrap();
            for &(a, b) in d.edges() {
                if a == u && !path.contains(&b) {
                    path.push(b);
                    ext(d, path, best);
                    path.pop();
                }
            }
        }
        let mut best = 0;
        for s in 0..d.vertices() {
            ext(d, &mut vec![s], &mut best);
        }
        best
    }

    fn has_cycle(d: &Digraph) -> bool {
        matches!(longest_path_dag(d), Err(Error::CycleDetected))
    }

    fn arb_digraph() -> impl Strategy<Value = Digraph> {
        (1usize..=9).prop_flat_map(|v| {
            proptest::collection::vec(proptest::bool::weighted(0.3), v * v).prop_map(move |bits| {
                let edges = (0..v * v)
                    .filter(|&i| bits[i] && i / v != i % v)
                    .map(|i| (i / v, i % v))
                    .collect();
                Digraph::new(v, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn partition_is_acyclic_and_exact(d in arb_digraph(), seed in any::<u64>()) {
            let mut ordering: Vec<usize> = (0..d.vertices()).collect();
            // a cheap deterministic shuffle keyed by the seed
            ordering.sort_by_key(|&u| (u as u64 + 1).wrapping_mul(seed | 1).rotate_left(17));
            let (a, b) = partition_acyclic(&d, &ordering).unwrap();
            prop_assert!(!has_cycle(&a) && !has_cycle(&b));
            let mut both: Vec<_> = a.edges().iter().chain(b.edges()).copied().collect();
            both.sort_unstable();
            let mut all = d.edges().to_vec();
            all.sort_unstable();
            prop_assert_eq!(both, all);
            let (ca, cb) = (greedy_proper_coloring(&a), greedy_proper_coloring(&b));
            prop_assert!(is_proper(&d, &product_proper(&ca, &cb).unwrap()));
        }

        #[test]
        fn greedy_bounds_exact_and_paths_are_longest(d in arb_digraph()) {
            let greedy = greedy_proper_coloring(&d);
            prop_assert!(is_proper(&d, &greedy));
            prop_assert!(color_count(&greedy) >= exact_chromatic_number(&d).unwrap());
            let (a, _) = partition_acyclic(&d, &(0..d.vertices()).collect::<Vec<_>>()).unwrap();
            let path = longest_path_dag(&a).unwrap();
            prop_assert_eq!(path.len(), all_paths_longest(&a));
            prop_assert!(path.windows(2).all(|w| a.edges().contains(&(w[0], w[1]))));
        }
    }
}
