use std::fmt;

/// Symbolic description of a subset of the positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SetExpr {
    All,
    Odds,
    Evens,
    /// Positive multiples of `n`.
    ModSet(u64),
    /// Positive values of `c1*x + c2*x^2 + ... + cd*x^d` over all integers `x`.
    Poly(Vec<i64>),
    Squares,
    /// Positive perfect cubes.
    Cubes,
    /// `{ceil(a * (num/den)^i) : i >= 0}`, ratio stored in lowest terms.
    Geom {
        a: u64,
        num: u64,
        den: u64,
    },
    /// Strictly increasing positive integers.
    Explicit(Vec<u64>),
    /// Nonempty subset sums of a multiset of generators.
    CombCube(Vec<u64>),
    /// Diagonal set built against all polynomials up to the given height.
    Diagonal(u32),
    Union(Box<SetExpr>, Box<SetExpr>),
    Intersect(Box<SetExpr>, Box<SetExpr>),
    Diff(Box<SetExpr>, Box<SetExpr>),
    /// Complement relative to the positive integers.
    Complement(Box<SetExpr>),
}

impl SetExpr {
    pub fn union(a: SetExpr, b: SetExpr) -> Self {
        SetExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn intersect(a: SetExpr, b: SetExpr) -> Self {
        SetExpr::Intersect(Box::new(a), Box::new(b))
    }

    pub fn diff(a: SetExpr, b: SetExpr) -> Self {
        SetExpr::Diff(Box::new(a), Box::new(b))
    }

    pub fn complement(a: SetExpr) -> Self {
        SetExpr::Complement(Box::new(a))
    }

    /// Canonical text form; `parse(&e.render())` reproduces `e`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::All => f.write_str("all"),
            SetExpr::Odds => f.write_str("odds"),
            SetExpr::Evens => f.write_str("evens"),
            SetExpr::Squares => f.write_str("squares"),
            SetExpr::Cubes => f.write_str("cubes"),
            SetExpr::ModSet(n) => write!(f, "modset({n})"),
            SetExpr::Poly(c) => write!(f, "poly({})", join(c, ", ")),
            SetExpr::Geom { a, num, den } if *den == 1 => write!(f, "geom({a}, {num})"),
            SetExpr::Geom { a, num, den } => write!(f, "geom({a}, {num}/{den})"),
            SetExpr::Explicit(xs) => write!(f, "{{{}}}", join(xs, ",")),
            SetExpr::CombCube(g) => write!(f, "combcube({})", join(g, ", ")),
            SetExpr::Diagonal(h) => write!(f, "diagonal({h})"),
            SetExpr::Union(a, b) => write!(f, "union({a}, {b})"),
            SetExpr::Intersect(a, b) => write!(f, "intersect({a}, {b})"),
            SetExpr::Diff(a, b) => write!(f, "diff({a}, {b})"),
            SetExpr::Complement(a) => write!(f, "complement({a})"),
        }
    }
}
