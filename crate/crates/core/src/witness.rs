use serde::{Deserialize, Serialize};

/// A structure found in a coloring or a set window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `start, start + diff, ..., start + (len - 1) diff`. `color` is absent
    /// when the progression was found inside a subset rather than a coloring.
    Ap {
        start: usize,
        diff: usize,
        len: usize,
        color: Option<u32>,
    },
    Walk {
        vertices: Vec<usize>,
        color: Option<u32>,
    },
    /// Generators of a combinatorial cube, nondecreasing.
    Cube { generators: Vec<usize> },
    /// `{x, 2x, ..., nx}`.
    Homothetic { x: usize, n: usize },
    /// A set `H` with `H - H` inside the ambient set.
    DifferenceSet { elements: Vec<usize> },
}

impl Witness {
    /// Terms of an AP or homothetic witness, vertices of a walk.
    pub fn positions(&self) -> Vec<usize> {
        match self {
            Witness::Ap {
                start, diff, len, ..
            } => (0..*len).map(|j| start + j * diff).collect(),
            Witness::Walk { vertices, .. } => vertices.clone(),
            Witness::Cube { generators } => cube_sums(generators),
            Witness::Homothetic { x, n } => (1..=*n).map(|j| j * x).collect(),
            Witness::DifferenceSet { elements } => elements.clone(),
        }
    }
}

/// Distinct nonempty subset sums, sorted.
pub fn cube_sums(generators: &[usize]) -> Vec<usize> {
    let mut sums: Vec<usize> = Vec::new();
    for &g in generators {
        let mut next = sums.clone();
        next.push(g);
        next.extend(sums.iter().map(|s| s + g));
        next.sort_unstable();
        next.dedup();
        sums = next;
    }
    sums
}
