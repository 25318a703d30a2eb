//! Certificate verification.
//!
//! Every check here is a direct replay written independently of the search
//! and threshold code: plain loops over progressions, a forward longest-walk
//! table, and a simple recursive exhaustion for threshold claims.

use crate::certificate::{Certificate, Claim, Structure};
use crate::coloring::Coloring;
use crate::constructions::Interval;
use crate::error::{Error, Result};
use crate::setlang::{materialize, parse, SortedWindow};
use crate::witness::{cube_sums, Witness};

/// Default node budget for exhaustive replays.
pub const DEFAULT_VERIFY_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub pass: bool,
    /// First discrepancy found, if any.
    pub discrepancy: Option<String>,
    /// Checks that were carried out, in order.
    pub checks: Vec<String>,
}

impl VerifyReport {
    fn new() -> Self {
        VerifyReport {
            pass: true,
            discrepancy: None,
            checks: Vec::new(),
        }
    }

    fn ok(&mut self, what: impl Into<String>) {
        self.checks.push(what.into());
    }

    fn fail(mut self, why: impl Into<String>) -> Self {
        self.pass = false;
        self.discrepancy = Some(why.into());
        self
    }
}

pub fn verify_certificate(cert: &Certificate) -> Result<VerifyReport> {
    verify_with_budget(cert, DEFAULT_VERIFY_BUDGET)
}

pub fn verify_with_budget(cert: &Certificate, budget: u64) -> Result<VerifyReport> {
    let expr = parse(&cert.expr)?;
    let mut report = VerifyReport::new();
    let coloring = cert.coloring()?;
    let set = materialize(&expr, cert.n)?;
    report.ok(format!("materialized {} on [1, {}]", cert.expr, cert.n));

    match cert.claim {
        Claim::NoMonoAp | Claim::NoMonoWalk => {
            let c = coloring.ok_or_else(|| missing("coloring"))?;
            if c.n() != cert.n {
                return Ok(report.fail(format!("coloring has length {}, N = {}", c.n(), cert.n)));
            }
            let found = if cert.claim == Claim::NoMonoAp {
                first_mono_ap(&c, &set, cert.param)
                    .map(|(a, d)| format!("monochromatic progression start {a} difference {d}"))
            } else {
                let (len, end) = longest_walk(&c, &set);
                (len >= cert.param)
                    .then(|| format!("monochromatic walk of {len} elements ending at {end}"))
            };
            if let Some(why) = found {
                return Ok(report.fail(why));
            }
            report.ok("no forbidden structure in the attached coloring");
            if let Some(parts) = &cert.partition {
                if let Err(why) = check_partition(&c, &set, parts) {
                    return Ok(report.fail(why));
                }
                report.ok("partition, forbidden colors, long edges and walk confinement");
            }
        }
        Claim::WitnessFound => {
            let w = cert.witness.as_ref().ok_or_else(|| missing("witness"))?;
            let subset = match &cert.subset_expr {
                Some(text) => Some(materialize(&parse(text)?, cert.n)?),
                None => None,
            };
            if let Err(why) = check_witness(w, cert.param, &set, coloring.as_ref(), subset.as_ref())
            {
                return Ok(report.fail(why));
            }
            report.ok("witness replayed");
        }
        Claim::Threshold => {
            let target = cert.target.ok_or_else(|| missing("target"))?;
            if !matches!(target, Structure::Ap | Structure::Walk) {
                return Err(Error::MalformedCertificate(format!(
                    "threshold target must be ap or walk, got {target:?}"
                )));
            }
            let c = coloring.ok_or_else(|| missing("coloring"))?;
            if cert.n == 0 || c.n() != cert.n - 1 {
                return Ok(report.fail(format!(
                    "extremal coloring has length {}, expected N - 1 = {}",
                    c.n(),
                    cert.n.saturating_sub(1)
                )));
            }
            let below = set.truncate(cert.n - 1);
            let hit = match target {
                Structure::Ap => first_mono_ap(&c, &below, cert.param)
                    .map(|(a, d)| format!("extremal coloring has AP start {a} difference {d}")),
                _ => {
                    let (len, end) = longest_walk(&c, &below);
                    (len >= cert.param)
                        .then(|| format!("extremal coloring has a walk of {len} ending at {end}"))
                }
            };
            if let Some(why) = hit {
                return Ok(report.fail(why));
            }
            report.ok(format!(
                "extremal coloring of [1, {}] avoids the target",
                cert.n - 1
            ));
            let mut ex = Exhaust {
                diffs: set.elements(),
                target,
                param: cert.param,
                r: cert.r,
                n: cert.n,
                colors: vec![0; cert.n + 1],
                nodes: 0,
                budget,
            };
            match ex.avoider(1, 0) {
                Some(true) => {
                    return Ok(report.fail(format!(
                        "an {}-coloring of [1, {}] avoids the target: {:?}",
                        cert.r,
                        cert.n,
                        &ex.colors[1..]
                    )))
                }
                None => {
                    return Ok(report.fail(format!(
                        "exhaustive replay exceeded {budget} nodes; upper bound not re-verified"
                    )))
                }
                Some(false) => report.ok(format!(
                    "every {}-coloring of [1, {}] contains the target ({} nodes)",
                    cert.r, cert.n, ex.nodes
                )),
            }
        }
        Claim::NoWitness => {
            let target = cert.target.ok_or_else(|| missing("target"))?;
            let found = match target {
                Structure::Homothetic => (1..=cert.n / cert.param.max(1))
                    .find(|&x| (1..=cert.param).all(|j| set.contains(j * x)))
                    .map(|x| format!("homothetic progression from {x}")),
                Structure::SubsetAp => {
                    let text = cert
                        .subset_expr
                        .as_ref()
                        .ok_or_else(|| missing("subset_expr"))?;
                    let x = materialize(&parse(text)?, cert.n)?;
                    first_ap_in(&x, &set, cert.param)
                        .map(|(a, d)| format!("progression start {a} difference {d} inside subset"))
                }
                Structure::Cube => match cube_exists(&set, cert.param, budget) {
                    Some(Some(g)) => Some(format!("cube with generators {g:?}")),
                    Some(None) => None,
                    None => {
                        return Ok(report.fail(format!(
                            "cube replay exceeded {budget} nodes; absence not re-verified"
                        )))
                    }
                },
                other => {
                    return Err(Error::MalformedCertificate(format!(
                        "no-witness target {other:?} is not supported"
                    )))
                }
            };
            if let Some(why) = found {
                return Ok(report.fail(why));
            }
            report.ok("exhaustive replay found nothing");
        }
    }
    Ok(report)
}

fn missing(field: &str) -> Error {
    Error::MalformedCertificate(format!("claim requires `{field}`"))
}

fn first_mono_ap(c: &Coloring, set: &SortedWindow, len: usize) -> Option<(usize, usize)> {
    let n = c.n();
    for a in 1..=n {
        for &d in set.elements() {
            if a + (len.max(1) - 1) * d > n {
                break;
            }
            if (1..len).all(|j| c.color(a + j * d) == c.color(a)) {
                return Some((a, d));
            }
        }
    }
    None
}

fn first_ap_in(x: &SortedWindow, diffs: &SortedWindow, len: usize) -> Option<(usize, usize)> {
    for &a in x.elements() {
        for &d in diffs.elements() {
            if a + (len.max(1) - 1) * d > x.n() {
                break;
            }
            if (1..len).all(|j| x.contains(a + j * d)) {
                return Some((a, d));
            }
        }
    }
    None
}

/// Longest monochromatic walk length and where it ends (forward table).
fn longest_walk(c: &Coloring, set: &SortedWindow) -> (usize, usize) {
    let n = c.n();
    let mut ending = vec![0usize; n + 1];
    let mut best = (0, 0);
    for x in 1..=n {
        let mut l = 1;
        for &d in set.elements().iter().take_while(|&&d| d < x) {
            if c.color(x - d) == c.color(x) {
                l = l.max(ending[x - d] + 1);
            }
        }
        ending[x] = l;
        if l > best.0 {
            best = (l, x);
        }
    }
    best
}

fn check_witness(
    w: &Witness,
    param: usize,
    set: &SortedWindow,
    coloring: Option<&Coloring>,
    subset: Option<&SortedWindow>,
) -> std::result::Result<(), String> {
    let n = set.n();
    let color_at = |x: usize| -> std::result::Result<u32, String> {
        let c = coloring.ok_or("witness carries a color but the certificate has no coloring")?;
        if x == 0 || x > c.n() {
            return Err(format!("position {x} outside the coloring"));
        }
        Ok(c.color(x))
    };
    match w {
        Witness::Ap {
            start,
            diff,
            len,
            color,
        } => {
            if *len != param {
                return Err(format!("witness length {len} != param {param}"));
            }
            if !set.contains(*diff) {
                return Err(format!("common difference {diff} not in the set"));
            }
            for j in 0..*len {
                let x = start + j * diff;
                if x == 0 || x > n {
                    return Err(format!("term {j} = {x} outside [1, {n}]"));
                }
                if let Some(c) = color {
                    let got = color_at(x)?;
                    if got != *c {
                        return Err(format!(
                            "term {j} at position {x} has color {got}, witness says {c}"
                        ));
                    }
                }
                if let Some(sub) = subset {
                    if !sub.contains(x) {
                        return Err(format!("term {j} = {x} not in the subset"));
                    }
                }
            }
            if color.is_none() && subset.is_none() {
                return Err("AP witness has neither a color nor a subset".into());
            }
        }
        Witness::Walk { vertices, color } => {
            if vertices.len() != param {
                return Err(format!(
                    "walk has {} elements, param {param}",
                    vertices.len()
                ));
            }
            let c = color.ok_or("walk witness without a color")?;
            for (i, &x) in vertices.iter().enumerate() {
                let got = color_at(x)?;
                if got != c {
                    return Err(format!(
                        "vertex {i} at position {x} has color {got}, witness says {c}"
                    ));
                }
                if i > 0 {
                    let prev = vertices[i - 1];
                    if x <= prev || !set.contains(x - prev) {
                        return Err(format!("step {prev} -> {x} is not a difference in the set"));
                    }
                }
            }
        }
        Witness::Cube { generators } => {
            if generators.len() != param {
                return Err(format!(
                    "cube has {} generators, param {param}",
                    generators.len()
                ));
            }
            if generators.contains(&0) {
                return Err("cube generators must be positive".into());
            }
            if let Some(s) = cube_sums(generators)
                .into_iter()
                .find(|&s| !set.contains(s))
            {
                return Err(format!("subset sum {s} not in the set"));
            }
        }
        Witness::Homothetic { x, n: k } => {
            if *k != param {
                return Err(format!("homothetic length {k} != param {param}"));
            }
            if let Some(j) = (1..=*k).find(|&j| !set.contains(j * x)) {
                return Err(format!("{j} * {x} = {} not in the set", j * x));
            }
        }
        Witness::DifferenceSet { elements } => {
            if elements.len() != param {
                return Err(format!(
                    "difference set has {} elements, param {param}",
                    elements.len()
                ));
            }
            if elements.windows(2).any(|w| w[0] >= w[1]) {
                return Err("difference set not strictly increasing".into());
            }
            for (i, &a) in elements.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(format!("element {a} outside [1, {n}]"));
                }
                for &b in &elements[i + 1..] {
                    if !set.contains(b - a) {
                        return Err(format!("difference {b} - {a} = {} not in the set", b - a));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_partition(
    c: &Coloring,
    set: &SortedWindow,
    parts: &[Interval],
) -> std::result::Result<(), String> {
    let n = c.n();
    let r = c.r() as usize;
    if r < 3 {
        return Err("partition certificates need k + 2 >= 3 colors".into());
    }
    let mut iv_of = vec![0usize; n + 1];
    let mut next = 1;
    for (t, iv) in parts.iter().enumerate() {
        if iv.start != next || iv.len == 0 {
            return Err(format!("interval {} does not start at {next}", t + 1));
        }
        if t == 0 && iv.len != 1 {
            return Err("first interval must be {1}".into());
        }
        if iv.forbidden as usize != (t + 1) % r {
            return Err(format!(
                "interval {} forbids {}, expected {}",
                t + 1,
                iv.forbidden,
                (t + 1) % r
            ));
        }
        if iv.partial && t + 1 != parts.len() {
            return Err(format!("interval {} is partial but not last", t + 1));
        }
        for x in iv.start..iv.start + iv.len {
            if x > n {
                return Err(format!("interval {} extends past N", t + 1));
            }
            iv_of[x] = t + 1;
            if c.color(x) == iv.forbidden {
                return Err(format!(
                    "position {x} has the forbidden color of interval {}",
                    t + 1
                ));
            }
        }
        next = iv.start + iv.len;
    }
    if next != n + 1 {
        return Err(format!("intervals cover [1, {}], not [1, {n}]", next - 1));
    }
    // walks touching a partial interval are exempt from confinement
    let mut lowest = vec![0usize; n + 1];
    for x in 1..=n {
        lowest[x] = iv_of[x];
        for &d in set.elements().iter().take_while(|&&d| d < x) {
            let y = x - d;
            if c.color(y) == c.color(x) {
                if iv_of[x] >= iv_of[y] + 2 {
                    return Err(format!(
                        "monochromatic edge {y} - {x} spans two or more intervals"
                    ));
                }
                lowest[x] = lowest[x].min(lowest[y]);
            }
        }
        let partial = parts[iv_of[x] - 1].partial;
        if !partial && iv_of[x] - lowest[x] + 1 > r - 1 {
            return Err(format!(
                "a monochromatic walk ending at {x} touches {} intervals",
                iv_of[x] - lowest[x] + 1
            ));
        }
    }
    Ok(())
}

/// Plain recursive exhaustion for threshold claims.
struct Exhaust<'a> {
    diffs: &'a [usize],
    target: Structure,
    param: usize,
    r: u32,
    n: usize,
    colors: Vec<u32>,
    nodes: u64,
    budget: u64,
}

impl Exhaust<'_> {
    fn closes(&self, x: usize) -> bool {
        let c = self.colors[x];
        match self.target {
            Structure::Ap => {
                if self.param <= 1 {
                    return self.diffs.first().is_some_and(|&d| d <= x);
                }
                self.diffs
                    .iter()
                    .take_while(|&&d| (self.param - 1) * d < x)
                    .any(|&d| (1..self.param).all(|j| self.colors[x - j * d] == c))
            }
            _ => {
                // longest walk ending at x, recomputed from scratch
                let mut ending = vec![1usize; x + 1];
                for y in 1..=x {
                    for &d in self.diffs.iter().take_while(|&&d| d < y) {
                        if self.colors[y - d] == self.colors[y] {
                            ending[y] = ending[y].max(ending[y - d] + 1);
                        }
                    }
                }
                ending[x] >= self.param
            }
        }
    }

    /// `Some(true)` if some coloring of `[x, N]` extending the current prefix
    /// avoids the target, `None` when out of budget.
    fn avoider(&mut self, x: usize, used: u32) -> Option<bool> {
        if x > self.n {
            return Some(true);
        }
        for c in 0..self.r.min(used + 1) {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.colors[x] = c;
            if self.closes(x) {
                continue;
            }
            if self.avoider(x + 1, used.max(c + 1))? {
                return Some(true);
            }
        }
        self.colors[x] = 0;
        Some(false)
    }
}

/// `Some(Some(gens))` if a multiset cube of dimension `dim` exists,
/// `Some(None)` if none does, `None` when out of budget.
fn cube_exists(set: &SortedWindow, dim: usize, budget: u64) -> Option<Option<Vec<usize>>> {
    fn rec(
        set: &SortedWindow,
        dim: usize,
        from: usize,
        gens: &mut Vec<usize>,
        nodes: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        if gens.len() == dim {
            return Some(true);
        }
        let elems = set.elements();
        for i in from..elems.len() {
            *nodes += 1;
            if *nodes > budget {
                return None;
            }
            gens.push(elems[i]);
            let total: usize = gens.iter().sum();
            if total > set.n() {
                gens.pop();
                break;
            }
            if cube_sums(gens).iter().all(|&s| set.contains(s))
                && rec(set, dim, i, gens, nodes, budget)?
            {
                return Some(true);
            }
            gens.pop();
        }
        Some(false)
    }
    let mut gens = Vec::new();
    let mut nodes = 0;
    rec(set, dim, 0, &mut gens, &mut nodes, budget).map(|found| found.then_some(gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::modular_coloring;

    #[test]
    fn parity_no_mono_ap() {
        let cert = Certificate::new(Claim::NoMonoAp, "odds", 20, 2, 2)
            .with_coloring(&modular_coloring(2, 20));
        let rep = verify_certificate(&cert).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn wrong_color_in_witness_fails() {
        let c = Coloring::new(2, vec![0, 0, 0, 1, 0]).unwrap();
        let cert = Certificate::new(Claim::WitnessFound, "all", 5, 2, 3)
            .with_coloring(&c)
            .with_witness(Witness::Ap {
                start: 1,
                diff: 1,
                len: 3,
                color: Some(1),
            });
        let rep = verify_certificate(&cert).unwrap();
        assert!(!rep.pass);
        assert!(rep.discrepancy.unwrap().contains("position 1"));

        let cert = Certificate {
            witness: Some(Witness::Ap {
                start: 1,
                diff: 1,
                len: 3,
                color: Some(0),
            }),
            ..cert
        };
        assert!(verify_certificate(&cert).unwrap().pass);
    }

    #[test]
    fn classical_threshold_certificate() {
        let c = Coloring::new(2, vec![1, 1, 0, 0, 1, 1, 0, 0]).unwrap();
        let cert = Certificate::new(Claim::Threshold, "all", 9, 2, 3)
            .with_coloring(&c)
            .with_target(Structure::Ap);
        let rep = verify_certificate(&cert).unwrap();
        assert!(rep.pass, "{rep:?}");

        // claiming 8 is wrong: the 7-prefix of the same coloring avoids, but
        // so does a full 2-coloring of [1, 8].
        let c7 = Coloring::new(2, vec![1, 1, 0, 0, 1, 1, 0]).unwrap();
        let bad = Certificate::new(Claim::Threshold, "all", 8, 2, 3)
            .with_coloring(&c7)
            .with_target(Structure::Ap);
        assert!(!verify_certificate(&bad).unwrap().pass);
    }

    #[test]
    fn missing_fields_are_malformed() {
        let cert = Certificate::new(Claim::NoMonoAp, "odds", 20, 2, 2);
        assert!(matches!(
            verify_certificate(&cert),
            Err(Error::MalformedCertificate(_))
        ));
        let cert = Certificate::new(Claim::NoMonoAp, "bogus(", 20, 2, 2);
        assert!(matches!(verify_certificate(&cert), Err(Error::Parse(_))));
    }
}
