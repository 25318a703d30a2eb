//! Exact density measurements on windows.

use num_rational::Ratio;

use crate::setlang::{member, SetExpr, SortedWindow};

/// `|window| / N`. An empty range (`N = 0`) has density 0.
pub fn density(window: &SortedWindow) -> Ratio<u64> {
    if window.n() == 0 {
        return Ratio::from_integer(0);
    }
    Ratio::new(window.len() as u64, window.n() as u64)
}

/// `|S ∩ {n, 2n, ..., kn}| / k`.
pub fn relative_density(expr: &SetExpr, n: u64, k: u64) -> Ratio<u64> {
    assert!(n >= 1 && k >= 1, "n and k must be positive");
    let hits = (1..=k).filter(|&j| member(expr, j * n)).count() as u64;
    Ratio::new(hits, k)
}

/// True iff `s_{i+1} >= (1 + epsilon) s_i` for every consecutive pair.
pub fn check_growth(window: &SortedWindow, epsilon: Ratio<u64>) -> bool {
    let (p, q) = (*epsilon.numer() as u128, *epsilon.denom() as u128);
    window
        .elements()
        .windows(2)
        .all(|w| (w[1] as u128) * q >= (w[0] as u128) * (p + q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setlang::{materialize, parse};

    fn win(text: &str, n: usize) -> SortedWindow {
        materialize(&parse(text).unwrap(), n).unwrap()
    }

    #[test]
    fn density_examples() {
        assert_eq!(density(&win("squares", 100)), Ratio::new(10, 100));
        assert_eq!(density(&win("all", 7)), Ratio::from_integer(1));
        assert_eq!(density(&win("{}", 5)), Ratio::from_integer(0));
    }

    #[test]
    fn relative_density_examples() {
        // independent count: squares among 4, 8, ..., 100
        let direct = (1..=25u64)
            .filter(|j| {
                let v = 4 * j;
                (1..=10u64).any(|r| r * r == v)
            })
            .count() as u64;
        assert_eq!(direct, 5);
        assert_eq!(
            relative_density(&SetExpr::Squares, 4, 25),
            Ratio::new(direct, 25)
        );
        assert_eq!(
            relative_density(&SetExpr::All, 7, 13),
            Ratio::from_integer(1)
        );
        assert_eq!(
            relative_density(&SetExpr::Odds, 2, 10),
            Ratio::from_integer(0)
        );
    }

    #[test]
    fn growth_examples() {
        assert!(check_growth(&win("geom(1, 2)", 1 << 20), Ratio::new(1, 2)));
        assert!(check_growth(&win("odds", 9), Ratio::new(1, 10)));
        assert!(!check_growth(&win("odds", 100), Ratio::new(1, 10)));
        assert!(check_growth(&win("{5}", 10), Ratio::new(1000, 1)));
    }

    #[test]
    fn density_monotone_under_superset() {
        let small = win("squares", 200);
        let big = win("union(squares, odds)", 200);
        assert!(density(&small) <= density(&big));
    }
}
