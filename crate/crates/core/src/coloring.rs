use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An `r`-coloring of `[1, N]`. Entry `i` holds the color of position `i + 1`
/// (or of vertex `i` when used as a vertex coloring).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    r: u32,
    colors: Vec<u32>,
}

impl Coloring {
    pub fn new(r: u32, colors: Vec<u32>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidColoring("need at least one color".into()));
        }
        if let Some((i, c)) = colors.iter().enumerate().find(|(_, &c)| c >= r) {
            return Err(Error::InvalidColoring(format!(
                "position {} has color {c}, outside [0, {r})",
                i + 1
            )));
        }
        Ok(Coloring { r, colors })
    }

    /// Colors `1..=n` with a single color.
    pub fn constant(n: usize) -> Self {
        Coloring {
            r: 1,
            colors: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Color of position `x`, `1 <= x <= N`.
    #[inline]
    pub fn color(&self, x: usize) -> u32 {
        self.colors[x - 1]
    }

    /// Zero-based view: `as_slice()[i]` is the color of position `i + 1`.
    pub fn as_slice(&self) -> &[u32] {
        &self.colors
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.colors
    }

    /// Number of distinct colors actually used.
    pub fn used_colors(&self) -> usize {
        let mut seen = vec![false; self.r as usize];
        self.colors.iter().for_each(|&c| seen[c as usize] = true);
        seen.into_iter().filter(|&b| b).count()
    }
}

/// `x ↦ x mod n` on `[1, N]`.
pub fn modular_coloring(n: u32, len: usize) -> Coloring {
    assert!(n >= 1, "modulus must be positive");
    Coloring {
        r: n,
        colors: (1..=len).map(|x| (x % n as usize) as u32).collect(),
    }
}

/// Pairs colors as `c1 * r2 + c2`; two positions agree iff they agree in both factors.
pub fn product_coloring(c1: &Coloring, c2: &Coloring) -> Result<Coloring> {
    if c1.n() != c2.n() {
        return Err(Error::DimensionMismatch {
            left: c1.n(),
            right: c2.n(),
        });
    }
    let r =
        c1.r.checked_mul(c2.r)
            .ok_or_else(|| Error::InvalidColoring("product color count overflows".into()))?;
    let colors = c1
        .colors
        .iter()
        .zip(&c2.colors)
        .map(|(&a, &b)| a * c2.r + b)
        .collect();
    Ok(Coloring { r, colors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn modular_examples() {
        assert_eq!(modular_coloring(2, 6).as_slice(), &[1, 0, 1, 0, 1, 0]);
        assert_eq!(modular_coloring(1, 5).as_slice(), &[0; 5]);
        assert_eq!(modular_coloring(3, 7).as_slice(), &[1, 2, 0, 1, 2, 0, 1]);
    }

    #[test]
    fn product_examples() {
        let p = product_coloring(&modular_coloring(2, 4), &modular_coloring(3, 4)).unwrap();
        assert_eq!(p.as_slice(), &[4, 2, 3, 1]);
        assert_eq!(p.r(), 6);

        let c2 = Coloring::new(3, vec![2, 0, 1, 1, 2]).unwrap();
        let p = product_coloring(&Coloring::constant(5), &c2).unwrap();
        assert_eq!(p, c2);
    }

    #[test]
    fn product_length_mismatch() {
        let err = product_coloring(&Coloring::constant(3), &Coloring::constant(4)).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch { left: 3, right: 4 }
        ));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Coloring::new(2, vec![0, 2]).is_err());
        assert!(Coloring::new(0, vec![]).is_err());
    }

    fn two_colorings() -> impl Strategy<Value = (Coloring, Coloring)> {
        (1u32..5, 1u32..5, 1usize..40).prop_flat_map(|(r1, r2, n)| {
            (
                proptest::collection::vec(0..r1, n),
                proptest::collection::vec(0..r2, n),
            )
                .prop_map(move |(a, b)| {
                    (Coloring::new(r1, a).unwrap(), Coloring::new(r2, b).unwrap())
                })
        })
    }

    proptest! {
        #[test]
        fn product_refines_both((c1, c2) in two_colorings()) {
            let p = product_coloring(&c1, &c2).unwrap();
            for x in 1..=p.n() {
                for y in 1..=p.n() {
                    let same = p.color(x) == p.color(y);
                    prop_assert_eq!(same, c1.color(x) == c1.color(y) && c2.color(x) == c2.color(y));
                }
            }
        }
    }
}
