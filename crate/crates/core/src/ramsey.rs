//! Threshold engine: the least `N` such that every `r`-coloring of `[1, N]`
//! contains a monochromatic target (an `L`-term progression or an `m`-element
//! walk with steps in `S`), found by backtracking over colorings.
//!
//! Positions are colored left to right, colors tried in ascending order, and
//! only canonical colorings are visited: position 1 gets color 0 and a new
//! color may appear only after every smaller one. The tree is cut at a fixed
//! depth into subtrees that run on worker threads; results merge in subtree
//! order, so the outcome and node count do not depend on the worker count.
//! Only the interrupt point under a budget or time limit may vary.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Claim, Stats, Structure};
use crate::coloring::Coloring;
use crate::constructions::{adversarial_coloring, check_confinement, interval_partition};
use crate::error::{Error, Result};
use crate::search::longest_mono_walk;
use crate::setlang::{materialize, SetExpr};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;
pub const DEFAULT_SPLIT_DEPTH: usize = 12;

/// Nodes between checks of the shared budget, deadline and winner.
const BATCH: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Target {
    Ap { len: usize },
    Walk { len: usize },
}

impl Target {
    pub fn param(&self) -> usize {
        match *self {
            Target::Ap { len } | Target::Walk { len } => len,
        }
    }

    pub fn structure(&self) -> Structure {
        match self {
            Target::Ap { .. } => Structure::Ap,
            Target::Walk { .. } => Structure::Walk,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineLimits {
    /// Total assignments tried before giving up.
    pub node_budget: u64,
    pub time_limit: Option<Duration>,
    pub workers: usize,
    pub split_depth: usize,
}

impl Default for EngineLimits {
    fn default() -> Self {
        EngineLimits {
            node_budget: DEFAULT_NODE_BUDGET,
            time_limit: None,
            workers: 1,
            split_depth: DEFAULT_SPLIT_DEPTH,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Every coloring of `[1, n]` contains the target; `extremal` colors
    /// `[1, n - 1]` without it.
    Found { n: usize, extremal: Coloring },
    /// `avoider` colors `[1, nmax]` without the target.
    Exceeded { nmax: usize, avoider: Coloring },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdResult {
    pub target: Target,
    pub expr: String,
    pub r: u32,
    pub outcome: Outcome,
    /// Color assignments tried, in the order a single-threaded search would.
    pub nodes: u64,
}

impl ThresholdResult {
    pub fn certificate(&self) -> Certificate {
        let (claim, n, coloring) = match &self.outcome {
            Outcome::Found { n, extremal } => (Claim::Threshold, *n, extremal),
            Outcome::Exceeded { nmax, avoider } => {
                let claim = match self.target {
                    Target::Ap { .. } => Claim::NoMonoAp,
                    Target::Walk { .. } => Claim::NoMonoWalk,
                };
                (claim, *nmax, avoider)
            }
        };
        let mut cert = Certificate::new(claim, self.expr.clone(), n, self.r, self.target.param())
            .with_coloring(coloring)
            .with_target(self.target.structure())
            .window_scale();
        cert.stats = Some(Stats {
            nodes: self.nodes,
            elapsed_ms: None,
        });
        cert
    }
}

pub fn vdw_threshold(
    expr: &SetExpr,
    len: usize,
    r: u32,
    nmax: usize,
    limits: &EngineLimits,
) -> Result<ThresholdResult> {
    threshold(expr, Target::Ap { len }, r, nmax, limits)
}

pub fn walk_threshold(
    expr: &SetExpr,
    m: usize,
    r: u32,
    nmax: usize,
    limits: &EngineLimits,
) -> Result<ThresholdResult> {
    threshold(expr, Target::Walk { len: m }, r, nmax, limits)
}

pub fn threshold(
    expr: &SetExpr,
    target: Target,
    r: u32,
    nmax: usize,
    limits: &EngineLimits,
) -> Result<ThresholdResult> {
    if target.param() == 0 {
        return Err(Error::Argument("target length must be at least 1".into()));
    }
    if r == 0 {
        return Err(Error::Argument("need at least one color".into()));
    }
    if nmax == 0 {
        return Err(Error::Argument("nmax must be at least 1".into()));
    }
    let window = materialize(expr, nmax)?;
    let problem = Problem {
        diffs: window.elements().to_vec(),
        target,
        r,
        nmax,
    };
    let (outcome, nodes) = problem.solve(limits)?;
    Ok(ThresholdResult {
        target,
        expr: expr.render(),
        r,
        outcome,
        nodes,
    })
}

struct Problem {
    diffs: Vec<usize>,
    target: Target,
    r: u32,
    nmax: usize,
}

/// Shared stop conditions.
struct Control {
    budget: u64,
    deadline: Option<Instant>,
    spent: AtomicU64,
    stop: AtomicBool,
    /// Least subtree index that reached `nmax`.
    winner: AtomicUsize,
}

impl Control {
    /// Adds a batch of nodes; `Err` once the budget or deadline is gone.
    fn charge(&self, nodes: u64) -> std::result::Result<(), ()> {
        let total = self.spent.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if total > self.budget || self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.stop.store(true, Ordering::Relaxed);
        }
        if self.stop.load(Ordering::Relaxed) {
            Err(())
        } else {
            Ok(())
        }
    }
}

/// What a depth-first run over one subtree saw.
#[derive(Debug, Default)]
struct Run {
    nodes: u64,
    /// Longest avoiding prefix reached and the first one of that length.
    deepest: usize,
    deepest_colors: Vec<u32>,
    /// Set when the run reached its target depth and was told to stop.
    complete: bool,
    interrupted: bool,
}

enum AtLimit {
    Stop,
    Continue,
}

impl Problem {
    /// Whether coloring position `x` completes the target.
    fn closes(&self, colors: &[u32], chain: &mut [usize], x: usize) -> bool {
        let c = colors[x];
        match self.target {
            Target::Ap { len } => {
                if len == 1 {
                    return self.diffs.first().is_some_and(|&d| d <= x);
                }
                self.diffs
                    .iter()
                    .take_while(|&&d| (len - 1) * d < x)
                    .any(|&d| (1..len).all(|j| colors[x - j * d] == c))
            }
            Target::Walk { len } => {
                let mut best = 1;
                for &d in self.diffs.iter().take_while(|&&d| d < x) {
                    if colors[x - d] == c {
                        best = best.max(chain[x - d] + 1);
                    }
                }
                chain[x] = best;
                best >= len
            }
        }
    }

    /// Extends `prefix` (a valid avoiding coloring of `[1, prefix.len()]`)
    /// through position `to`. `at_limit` sees every avoiding coloring of
    /// `[1, to]` together with the node count so far.
    fn explore(
        &self,
        prefix: &[u32],
        to: usize,
        ctl: &Control,
        abort: &dyn Fn() -> bool,
        at_limit: &mut dyn FnMut(&[u32], u64) -> AtLimit,
    ) -> Run {
        let p = prefix.len();
        let mut colors = vec![0u32; to + 1];
        let mut chain = vec![0usize; to + 1];
        // used[x]: distinct colors among positions 1..x
        let mut used = vec![0u32; to + 1];
        for (i, &c) in prefix.iter().enumerate() {
            let x = i + 1;
            colors[x] = c;
            self.closes(&colors, &mut chain, x);
            used[x] = used[x - 1].max(c + 1);
        }
        let mut run = Run {
            deepest: p,
            deepest_colors: prefix.to_vec(),
            ..Run::default()
        };
        if p == to {
            if let AtLimit::Stop = at_limit(&colors[1..], 0) {
                run.complete = true;
            }
            return run;
        }
        let mut unpaid = 0u64;
        // next[x]: next color to try at x
        let mut next = vec![0u32; to + 2];
        let mut x = p + 1;
        while x > p {
            let limit = self.r.min(used[x - 1] + 1);
            if next[x] >= limit {
                next[x] = 0;
                x -= 1;
                continue;
            }
            let c = next[x];
            next[x] += 1;
            run.nodes += 1;
            unpaid += 1;
            if unpaid == BATCH {
                unpaid = 0;
                if ctl.charge(BATCH).is_err() || abort() {
                    run.interrupted = true;
                    return run;
                }
            }
            colors[x] = c;
            if self.closes(&colors, &mut chain, x) {
                continue;
            }
            used[x] = used[x - 1].max(c + 1);
            if x > run.deepest {
                run.deepest = x;
                run.deepest_colors = colors[1..=x].to_vec();
            }
            if x == to {
                if let AtLimit::Stop = at_limit(&colors[1..], run.nodes) {
                    run.complete = true;
                    run.interrupted = ctl.charge(unpaid).is_err();
                    return run;
                }
                continue;
            }
            x += 1;
        }
        run.interrupted = ctl.charge(unpaid).is_err();
        run
    }

    fn solve(&self, limits: &EngineLimits) -> Result<(Outcome, u64)> {
        let ctl = Control {
            budget: limits.node_budget,
            deadline: limits.time_limit.map(|t| Instant::now() + t),
            spent: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            winner: AtomicUsize::new(usize::MAX),
        };
        let split = limits.split_depth.max(1).min(self.nmax);
        let never = || false;

        // phase 1: enumerate the avoiding prefixes of length `split`
        let mut leaves: Vec<(Vec<u32>, u64)> = Vec::new();
        let last = split == self.nmax;
        let head = self.explore(&[], split, &ctl, &never, &mut |c, nodes| {
            if last {
                AtLimit::Stop
            } else {
                leaves.push((c.to_vec(), nodes));
                AtLimit::Continue
            }
        });
        if head.interrupted {
            return Err(self.interrupted(&ctl, head.deepest));
        }
        if last || leaves.is_empty() {
            return Ok((
                self.outcome(head.complete, head.deepest_colors)?,
                head.nodes,
            ));
        }

        // phase 2: one task per leaf
        let results: Vec<Mutex<Option<Run>>> = leaves.iter().map(|_| Mutex::new(None)).collect();
        let cursor = AtomicUsize::new(0);
        let work = || loop {
            let i = cursor.fetch_add(1, Ordering::Relaxed);
            if i >= leaves.len() || ctl.stop.load(Ordering::Relaxed) {
                break;
            }
            if ctl.winner.load(Ordering::Relaxed) < i {
                continue;
            }
            let abort = || ctl.winner.load(Ordering::Relaxed) < i;
            let run = self.explore(&leaves[i].0, self.nmax, &ctl, &abort, &mut |_, _| {
                AtLimit::Stop
            });
            if run.complete {
                ctl.winner.fetch_min(i, Ordering::Relaxed);
            }
            *results[i].lock().expect("no panics while holding the lock") = Some(run);
        };
        let workers = limits.workers.max(1).min(leaves.len());
        if workers == 1 {
            work();
        } else {
            std::thread::scope(|s| {
                for _ in 0..workers {
                    s.spawn(work);
                }
            });
        }

        let runs: Vec<Option<Run>> = results
            .into_iter()
            .map(|m| m.into_inner().expect("no panics while holding the lock"))
            .collect();
        let winner = ctl.winner.load(Ordering::Relaxed);
        if winner != usize::MAX {
            let mut nodes = leaves[winner].1;
            for run in &runs[..=winner] {
                let run = run.as_ref().expect("subtrees before the winner all ran");
                if run.interrupted {
                    return Err(self.interrupted(&ctl, self.best_depth(&runs)));
                }
                nodes += run.nodes;
            }
            let colors = runs[winner]
                .as_ref()
                .expect("winner ran")
                .deepest_colors
                .clone();
            return Ok((self.outcome(true, colors)?, nodes));
        }
        if ctl.stop.load(Ordering::Relaxed)
            || runs
                .iter()
                .any(|r| r.as_ref().is_none_or(|r| r.interrupted))
        {
            return Err(self.interrupted(&ctl, self.best_depth(&runs)));
        }
        let mut nodes = head.nodes;
        let mut best: Option<&Run> = None;
        for run in runs.iter().flatten() {
            nodes += run.nodes;
            if best.is_none_or(|b| run.deepest > b.deepest) {
                best = Some(run);
            }
        }
        let best = best.expect("at least one leaf");
        Ok((self.outcome(false, best.deepest_colors.clone())?, nodes))
    }

    fn best_depth(&self, runs: &[Option<Run>]) -> usize {
        runs.iter().flatten().map(|r| r.deepest).max().unwrap_or(0)
    }

    fn interrupted(&self, ctl: &Control, deepest: usize) -> Error {
        Error::Interrupted {
            nodes: ctl.spent.load(Ordering::Relaxed),
            lower_bound_exclusive: deepest,
        }
    }

    fn outcome(&self, complete: bool, colors: Vec<u32>) -> Result<Outcome> {
        let coloring = Coloring::new(self.r, colors)?;
        Ok(if complete {
            Outcome::Exceeded {
                nmax: self.nmax,
                avoider: coloring,
            }
        } else {
            Outcome::Found {
                n: coloring.n() + 1,
                extremal: coloring,
            }
        })
    }
}

/// Lower-bound side of a walkability report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerEvidence {
    Threshold(ThresholdResult),
    Interrupted {
        nodes: u64,
        lower_bound_exclusive: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkabilityReport {
    /// A `(k + 2)`-coloring of `[1, N]` whose monochromatic walks stay within
    /// `k + 1` consecutive complete intervals.
    pub upper: Certificate,
    pub lower: LowerEvidence,
}

/// Window-scale evidence about the walkability order of `expr`: the interval
/// construction with parameter `k` (upper side) and a `(k + 1)`-color walk
/// threshold search for `m`-element walks (lower side).
pub fn walkability_report(
    expr: &SetExpr,
    k: usize,
    nmax: usize,
    m: usize,
    limits: &EngineLimits,
) -> Result<WalkabilityReport> {
    let window = materialize(expr, nmax)?;
    let partition = interval_partition(&window, k)?;
    let coloring = adversarial_coloring(&window, k, &partition)?;
    let report = check_confinement(&coloring, &window, &partition)?;
    debug_assert!(report.holds(k), "{report:?}");
    let longest = longest_mono_walk(&coloring, &window)?.positions().len();
    let mut upper = Certificate::new(
        Claim::NoMonoWalk,
        expr.render(),
        nmax,
        coloring.r(),
        longest + 1,
    )
    .with_coloring(&coloring)
    .with_target(Structure::Walk)
    .window_scale();
    upper.partition = Some(partition.intervals);
    let lower = match walk_threshold(expr, m, (k + 1) as u32, nmax, limits) {
        Ok(t) => LowerEvidence::Threshold(t),
        Err(Error::Interrupted {
            nodes,
            lower_bound_exclusive,
        }) => LowerEvidence::Interrupted {
            nodes,
            lower_bound_exclusive,
        },
        Err(e) => return Err(e),
    };
    Ok(WalkabilityReport { upper, lower })
}
