//! Integer polynomials with zero constant term.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// `c1*x + ... + cd*x^d`; `coeffs[i]` multiplies `x^(i+1)`.
#[derive(Debug, Clone, Copy)]
pub struct PolyRef<'a> {
    coeffs: &'a [i64],
    degree: usize,
}

impl<'a> PolyRef<'a> {
    /// `None` for the zero polynomial.
    pub fn new(coeffs: &'a [i64]) -> Option<Self> {
        let degree = coeffs.iter().rposition(|&c| c != 0)? + 1;
        Some(PolyRef { coeffs, degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn leading(&self) -> i64 {
        self.coeffs[self.degree - 1]
    }

    /// False exactly when the degree is even and the leading coefficient
    /// negative, in which case only finitely many values are positive.
    pub fn unbounded_above(&self) -> bool {
        self.degree % 2 == 1 || self.leading() > 0
    }

    pub fn eval(&self, t: i64) -> BigOrSmall {
        let t128 = t as i128;
        let mut acc: Option<i128> = Some(0);
        for &c in self.coeffs[..self.degree].iter().rev() {
            acc = acc
                .and_then(|a| a.checked_add(c as i128))
                .and_then(|a| a.checked_mul(t128));
        }
        match acc {
            Some(v) => BigOrSmall::Small(v),
            None => {
                let tb = BigInt::from(t);
                let mut a = BigInt::zero();
                for &c in self.coeffs[..self.degree].iter().rev() {
                    a = (a + c) * &tb;
                }
                BigOrSmall::Big(a)
            }
        }
    }

    /// Value at `t` if it lies in `[1, u64::MAX]`.
    pub fn positive_value(&self, t: i64) -> Option<u64> {
        match self.eval(t) {
            BigOrSmall::Small(v) if v > 0 => u64::try_from(v).ok(),
            BigOrSmall::Small(_) => None,
            BigOrSmall::Big(b) if b.is_positive() => b.to_u64(),
            BigOrSmall::Big(_) => None,
        }
    }

    /// A radius `R` with `|P(t)| > x` for every `|t| > R`.
    ///
    /// For `|t| >= K = 1 + sum_{i<d} |c_i| / |c_d|` we have
    /// `|P(t)| >= |c_d| |t|^(d-1) (|t| - K + 1)`, so `R = ceil(K) + y` works
    /// whenever `|c_d| y^d >= x`.
    pub fn search_radius(&self, x: u64) -> u64 {
        let lead = self.leading().unsigned_abs() as u128;
        let lower: u128 = self.coeffs[..self.degree - 1]
            .iter()
            .map(|c| c.unsigned_abs() as u128)
            .sum();
        let k = 1 + lower.div_ceil(lead);
        let y = root_ceil(x as u128, lead, self.degree as u32);
        u64::try_from(k + y).unwrap_or(u64::MAX)
    }

    /// True iff `x = P(t)` for some integer `t`.
    pub fn takes_value(&self, x: u64) -> bool {
        if x == 0 {
            return true;
        }
        if self.degree == 1 {
            let c = self.leading();
            let x = x as i128;
            return x % (c as i128) == 0;
        }
        // P(0) = 0, so any root t of P(t) - x divides x.
        let r = self.search_radius(x);
        let check = |t: u64| -> bool {
            if t > r || t > i64::MAX as u64 {
                return false;
            }
            let t = t as i64;
            self.positive_value(t) == Some(x) || self.positive_value(-t) == Some(x)
        };
        let mut i = 1u64;
        while i.saturating_mul(i) <= x {
            if x.is_multiple_of(i) && (check(i) || check(x / i)) {
                return true;
            }
            i += 1;
        }
        false
    }

    /// All values of `P` in `[1, limit]`, sorted and deduplicated.
    pub fn values_upto(&self, limit: u64) -> Vec<u64> {
        let r = self.search_radius(limit).min(i64::MAX as u64) as i64;
        let mut out = Vec::new();
        for t in -r..=r {
            if let Some(v) = self.positive_value(t) {
                if v <= limit {
                    out.push(v);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub enum BigOrSmall {
    Small(i128),
    Big(BigInt),
}

/// Smallest `y >= 0` with `lead * y^d >= x`.
fn root_ceil(x: u128, lead: u128, d: u32) -> u128 {
    let reaches = |y: u128| -> bool {
        match y.checked_pow(d).and_then(|p| p.checked_mul(lead)) {
            Some(v) => v >= x,
            None => true,
        }
    };
    let est = ((x as f64) / (lead as f64)).powf(1.0 / d as f64) as u128;
    let mut y = est.saturating_sub(2);
    while !reaches(y) {
        y += 1;
    }
    while y > 0 && reaches(y - 1) {
        y -= 1;
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_values(coeffs: &[i64], limit: u64, range: i64) -> Vec<u64> {
        let mut v: Vec<u64> = (-range..=range)
            .filter_map(|t| {
                let mut s: i128 = 0;
                let mut pow: i128 = 1;
                for &c in coeffs {
                    pow *= t as i128;
                    s += c as i128 * pow;
                }
                (s >= 1 && s <= limit as i128).then_some(s as u64)
            })
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    #[test]
    fn large_lower_coefficients_are_not_missed() {
        // x^2 - 100x takes the value 101 at x = 101, far beyond sqrt(101) + 2.
        let c = [-100, 1];
        let p = PolyRef::new(&c).unwrap();
        assert!(p.takes_value(101));
        assert_eq!(p.values_upto(500), brute_values(&c, 500, 2000));
    }

    #[test]
    fn values_match_brute_force() {
        for c in [
            vec![0, 1],
            vec![1, 1],
            vec![-3, 0, 2],
            vec![2, -1],
            vec![5],
            vec![0, 0, -1],
        ] {
            let p = PolyRef::new(&c).unwrap();
            let vals = p.values_upto(400);
            assert_eq!(vals, brute_values(&c, 400, 1000), "{c:?}");
            for x in 1..=400 {
                assert_eq!(
                    p.takes_value(x),
                    vals.binary_search(&x).is_ok(),
                    "{c:?} at {x}"
                );
            }
        }
    }

    #[test]
    fn bounded_above() {
        assert!(!PolyRef::new(&[3, -1]).unwrap().unbounded_above());
        assert!(PolyRef::new(&[0, 0, -1]).unwrap().unbounded_above());
        assert!(PolyRef::new(&[0, 0]).is_none());
    }
}
