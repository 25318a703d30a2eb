//! `ladderlab`: command-line front end.
//!
//! Machine output (certificate JSON, window JSON or CSV) goes to stdout or
//! `--out`; the human summary goes to stderr. Exit codes: 0 success, 1 the
//! answer is "none" or the claim is false, 2 usage or input error, 3 resource
//! limit or interrupt.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ladderlab::certificate::{Certificate, Claim, Stats, Structure};
use ladderlab::config::Limits;
use ladderlab::constructions::{
    adversarial_coloring, check_confinement, grow_difference_set, interval_partition, sparse_ladder,
};
use ladderlab::density::{density, relative_density};
use ladderlab::digraph::{
    color_count, greedy_proper_coloring, growth_csv, is_proper, longest_path_dag,
    partition_acyclic, product_proper, Digraph,
};
use ladderlab::ramsey::{
    threshold, walkability_report, EngineLimits, LowerEvidence, Outcome, Target, ThresholdResult,
};
use ladderlab::search::{
    detect_cube, find_ap_in_subset, find_homothetic, find_mono_ap, longest_mono_walk,
    longest_walk_of_color,
};
use ladderlab::setlang::{diagonal_set, materialize_capped, SortedWindow};
use ladderlab::verify::verify_certificate;
use ladderlab::{parse, Coloring, Error, SetExpr, Witness};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "ladderlab",
    version,
    about = "Finite-window workbench for ladders, accessible and walkable sets"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Write machine output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML file with window_cap, node_budget, workers, time_limit_ms.
    /// Defaults to $LADDERLAB_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_parser = positive)]
    workers: Option<usize>,
    #[arg(long, global = true, value_parser = positive_u64)]
    node_budget: Option<u64>,
    #[arg(long, global = true, value_parser = positive)]
    window_cap: Option<usize>,
    #[arg(long, global = true, value_parser = positive_u64)]
    time_limit_ms: Option<u64>,
    /// Record elapsed_ms in search certificates (makes output time-dependent).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List the window S ∩ [1, N].
    Eval {
        expr: String,
        #[arg(long = "N", value_parser = positive)]
        n: usize,
    },
    /// Exact density |S ∩ [1, N]| / N, or the relative density in nZ with --mod and --k.
    Density {
        expr: String,
        #[arg(long = "N", value_parser = positive, required_unless_present = "modulus")]
        n: Option<usize>,
        #[arg(long = "mod", value_parser = positive_u64, requires = "k")]
        modulus: Option<u64>,
        #[arg(long, value_parser = positive_u64, requires = "modulus")]
        k: Option<u64>,
    },
    /// First monochromatic progression with common difference in the set.
    MonoAp {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long, value_parser = positive)]
        len: usize,
    },
    /// Longest monochromatic walk over the set.
    Walk {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        coloring: PathBuf,
        /// Restrict to one color.
        #[arg(long)]
        color: Option<u32>,
    },
    /// Combinatorial cube of the given dimension inside the window.
    Cube {
        #[arg(long)]
        expr: String,
        #[arg(long, value_parser = positive)]
        dim: usize,
        #[arg(long = "N", value_parser = positive)]
        n: usize,
        /// Node budget for this search; defaults to the configured budget.
        #[arg(long, value_parser = positive_u64)]
        budget: Option<u64>,
    },
    /// Homothetic progression {x, 2x, ..., nx} inside the window.
    Homothetic {
        #[arg(long)]
        expr: String,
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long = "N", value_parser = positive)]
        big_n: usize,
    },
    /// Least N forcing a monochromatic L-term progression in every r-coloring.
    Vdw {
        #[arg(long)]
        expr: String,
        #[arg(long, value_parser = positive)]
        len: usize,
        #[arg(long, value_parser = positive_u32)]
        colors: u32,
        #[arg(long, value_parser = positive)]
        nmax: usize,
    },
    /// Least N forcing a monochromatic m-element walk in every r-coloring.
    WalkThreshold {
        #[arg(long)]
        expr: String,
        #[arg(long, value_parser = positive)]
        mlen: usize,
        #[arg(long, value_parser = positive_u32)]
        colors: u32,
        #[arg(long, value_parser = positive)]
        nmax: usize,
    },
    /// Interval-partition (k+2)-coloring with confined monochromatic walks.
    Adversarial {
        #[arg(long)]
        expr: String,
        #[arg(long, value_parser = positive)]
        k: usize,
        #[arg(long = "N", value_parser = positive)]
        n: usize,
    },
    /// Greedy set H with H - H inside the window.
    Hgrow {
        #[arg(long)]
        expr: String,
        #[arg(long, value_parser = positive)]
        target: usize,
        #[arg(long = "N", value_parser = positive)]
        n: usize,
    },
    /// Sparse set made of ever larger cubes above the given floors.
    SparseLadder {
        /// Nondecreasing integers, whitespace or comma separated.
        #[arg(long)]
        floors: PathBuf,
        #[arg(long, value_parser = positive)]
        maxdim: usize,
        #[arg(long = "N", value_parser = positive)]
        n: usize,
    },
    /// Diagonal set against all polynomials up to a height.
    Diagonal {
        #[arg(long)]
        height: u32,
        #[arg(long = "N", value_parser = positive)]
        n: usize,
    },
    /// Split a digraph's edges into two acyclic parts and color the union.
    DigraphPartition {
        /// Edge list: "V E" then one "u v" per line, 0-based.
        file: PathBuf,
        /// Vertex ordering, comma separated; defaults to index order.
        #[arg(long, value_delimiter = ',')]
        ordering: Option<Vec<usize>>,
    },
    /// Greedy color counts of distance graphs, as CSV.
    ChromaticGrowth {
        #[arg(long)]
        expr: String,
        #[arg(long, value_delimiter = ',', required = true, value_parser = positive)]
        ns: Vec<usize>,
    },
    /// Progression inside the set X with common difference in S.
    SubsetAp {
        #[arg(long)]
        x_expr: String,
        #[arg(long)]
        s_expr: String,
        #[arg(long, value_parser = positive)]
        len: usize,
        #[arg(long = "N", value_parser = positive)]
        n: usize,
    },
    /// Walkability evidence: adversarial coloring plus a (k+1)-color walk threshold.
    Walkability {
        #[arg(long)]
        expr: String,
        #[arg(long, value_parser = positive)]
        k: usize,
        #[arg(long = "N", value_parser = positive)]
        n: usize,
        #[arg(long, value_parser = positive)]
        mlen: usize,
        /// Also write the lower-bound certificate here.
        #[arg(long)]
        lower_out: Option<PathBuf>,
    },
    /// Re-check a certificate independently.
    Verify { file: PathBuf },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_u64(s: &str) -> Result<u64, String> {
    positive(s).map(|v| v as u64)
}

fn positive_u32(s: &str) -> Result<u32, String> {
    let v = positive(s)?;
    u32::try_from(v).map_err(|e| e.to_string())
}

/// How a command ended once it produced its answer.
enum Status {
    Ok,
    None,
}

struct Ctx {
    out: Option<PathBuf>,
    limits: Limits,
    timing: bool,
}

impl Ctx {
    fn emit(&self, text: &str) -> Result<(), Error> {
        let mut text = text.to_string();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.out {
            Some(p) => fs::write(p, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }

    fn emit_cert(&self, cert: &Certificate) -> Result<(), Error> {
        self.emit(&cert.to_json())
    }

    fn expr(&self, text: &str) -> Result<SetExpr, Error> {
        parse(text)
    }

    fn window(&self, expr: &SetExpr, n: usize) -> Result<SortedWindow, Error> {
        materialize_capped(expr, n, self.limits.window_cap)
    }

    fn check_cap(&self, n: usize) -> Result<(), Error> {
        if n > self.limits.window_cap {
            return Err(Error::Resource(format!(
                "N = {n} exceeds the window cap {}",
                self.limits.window_cap
            )));
        }
        Ok(())
    }

    fn engine(&self) -> EngineLimits {
        self.limits.engine()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::None) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) | Error::Interrupted { .. } => 3,
        // the set fails the construction's premise: a mathematical "no"
        Error::GapConditionUnverifiable(_)
        | Error::WindowExhausted { .. }
        | Error::NeighborBoundViolated { .. }
        | Error::CycleDetected => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<Status, Error> {
    let g = cli.global;
    let mut limits = Limits::load(g.config.as_deref())?;
    if let Some(w) = g.workers {
        limits.workers = w;
    }
    if let Some(b) = g.node_budget {
        limits.node_budget = b;
    }
    if let Some(c) = g.window_cap {
        limits.window_cap = c;
    }
    if let Some(t) = g.time_limit_ms {
        limits.time_limit_ms = Some(t);
    }
    let ctx = Ctx {
        out: g.out,
        limits,
        timing: g.timing,
    };

    match cli.command {
        Command::Eval { expr, n } => {
            let e = ctx.expr(&expr)?;
            let w = ctx.window(&e, n)?;
            eprintln!("{} has {} elements in [1, {n}]", e, w.len());
            ctx.emit(&serde_json::to_string(&w.record(&e.render()))?)?;
            Ok(Status::Ok)
        }
        Command::Density {
            expr,
            n,
            modulus,
            k,
        } => {
            let e = ctx.expr(&expr)?;
            let doc = match (modulus, k) {
                (Some(m), Some(k)) => {
                    let d = relative_density(&e, m, k);
                    eprintln!("relative density of {e} in {m}Z up to {}: {d}", m * k);
                    json!({"expr": e.render(), "mod": m, "k": k, "density": d.to_string(),
                           "value": ratio_value(*d.numer(), *d.denom())})
                }
                _ => {
                    let n = n.expect("clap requires N without --mod");
                    let d = density(&ctx.window(&e, n)?);
                    eprintln!("density of {e} on [1, {n}]: {d}");
                    json!({"expr": e.render(), "N": n, "density": d.to_string(),
                           "value": ratio_value(*d.numer(), *d.denom())})
                }
            };
            ctx.emit(&serde_json::to_string(&doc)?)?;
            Ok(Status::Ok)
        }
        Command::MonoAp {
            expr,
            coloring,
            len,
        } => {
            let e = ctx.expr(&expr)?;
            let c = read_coloring(&coloring)?;
            let w = ctx.window(&e, c.n())?;
            let base = Certificate::new(Claim::WitnessFound, e.render(), c.n(), c.r(), len)
                .with_coloring(&c);
            match find_mono_ap(&c, &w, len)? {
                Some(wit) => {
                    eprintln!("found {}", describe(&wit));
                    ctx.emit_cert(&base.with_witness(wit))?;
                    Ok(Status::Ok)
                }
                None => {
                    eprintln!("none: no monochromatic {len}-term progression");
                    ctx.emit_cert(&Certificate {
                        claim: Claim::NoMonoAp,
                        ..base
                    })?;
                    Ok(Status::None)
                }
            }
        }
        Command::Walk {
            expr,
            coloring,
            color,
        } => {
            let e = ctx.expr(&expr)?;
            let c = read_coloring(&coloring)?;
            let w = ctx.window(&e, c.n())?;
            let wit = match color {
                Some(col) => longest_walk_of_color(&c, &w, col)?,
                None => Some(longest_mono_walk(&c, &w)?),
            };
            let Some(wit) = wit.filter(|w| !w.positions().is_empty()) else {
                eprintln!("none: no position has the requested color");
                return Ok(Status::None);
            };
            let len = wit.positions().len();
            eprintln!(
                "longest monochromatic walk has {len} elements: {}",
                describe(&wit)
            );
            ctx.emit_cert(
                &Certificate::new(Claim::WitnessFound, e.render(), c.n(), c.r(), len)
                    .with_coloring(&c)
                    .with_witness(wit),
            )?;
            Ok(Status::Ok)
        }
        Command::Cube {
            expr,
            dim,
            n,
            budget,
        } => {
            let e = ctx.expr(&expr)?;
            let w = ctx.window(&e, n)?;
            let started = Instant::now();
            let res = detect_cube(&w, dim, budget.unwrap_or(ctx.limits.node_budget));
            let base = Certificate::new(Claim::WitnessFound, e.render(), n, 0, dim)
                .with_target(Structure::Cube);
            let stats = ctx.stats(res.nodes, started);
            match res.witness {
                Some(wit) => {
                    eprintln!("found {} after {} nodes", describe(&wit), res.nodes);
                    ctx.emit_cert(&Certificate {
                        stats,
                        ..base.with_witness(wit)
                    })?;
                    Ok(Status::Ok)
                }
                None if res.exhausted => {
                    eprintln!(
                        "none: no {dim}-dimensional cube in [1, {n}] ({} nodes, exhausted)",
                        res.nodes
                    );
                    ctx.emit_cert(&Certificate {
                        claim: Claim::NoWitness,
                        exhausted: Some(true),
                        stats,
                        ..base
                    })?;
                    Ok(Status::None)
                }
                None => Err(Error::Resource(format!(
                    "cube search stopped after {} nodes without exhausting the window",
                    res.nodes
                ))),
            }
        }
        Command::Homothetic { expr, n, big_n } => {
            let e = ctx.expr(&expr)?;
            let w = ctx.window(&e, big_n)?;
            let base = Certificate::new(Claim::WitnessFound, e.render(), big_n, 0, n)
                .with_target(Structure::Homothetic);
            match find_homothetic(&w, n) {
                Some(wit) => {
                    eprintln!("found {}", describe(&wit));
                    ctx.emit_cert(&base.with_witness(wit))?;
                    Ok(Status::Ok)
                }
                None => {
                    eprintln!("none");
                    ctx.emit_cert(&Certificate {
                        claim: Claim::NoWitness,
                        ..base
                    })?;
                    Ok(Status::None)
                }
            }
        }
        Command::Vdw {
            expr,
            len,
            colors,
            nmax,
        } => ctx.threshold(&expr, Target::Ap { len }, colors, nmax),
        Command::WalkThreshold {
            expr,
            mlen,
            colors,
            nmax,
        } => ctx.threshold(&expr, Target::Walk { len: mlen }, colors, nmax),
        Command::Adversarial { expr, k, n } => {
            let e = ctx.expr(&expr)?;
            let w = ctx.window(&e, n)?;
            let p = interval_partition(&w, k)?;
            let c = adversarial_coloring(&w, k, &p)?;
            let report = check_confinement(&c, &w, &p)?;
            let longest = longest_mono_walk(&c, &w)?.positions().len();
            eprintln!(
                "{} intervals ({} complete); forbidden-color hits {}, long edges {}, widest walk spans {} intervals; longest walk {longest}",
                p.intervals.len(),
                p.complete_intervals(),
                report.forbidden_hits.len(),
                report.long_edges.len(),
                report.max_span
            );
            let mut cert = Certificate::new(Claim::NoMonoWalk, e.render(), n, c.r(), longest + 1)
                .with_coloring(&c)
                .with_target(Structure::Walk)
                .window_scale();
            cert.partition = Some(p.intervals);
            ctx.emit_cert(&cert)?;
            Ok(if report.holds(k) {
                Status::Ok
            } else {
                Status::None
            })
        }
        Command::Hgrow { expr, target, n } => {
            let e = ctx.expr(&expr)?;
            let w = ctx.window(&e, n)?;
            match grow_difference_set(&w, target) {
                Ok(h) => {
                    eprintln!("H = {:?}", h.elements);
                    ctx.emit_cert(
                        &Certificate::new(Claim::WitnessFound, e.render(), n, 0, target)
                            .with_witness(Witness::DifferenceSet {
                                elements: h.elements,
                            }),
                    )?;
                    Ok(Status::Ok)
                }
                Err(Error::WindowExhausted { partial }) => {
                    eprintln!("none: window exhausted at H = {partial:?}");
                    Ok(Status::None)
                }
                Err(e) => Err(e),
            }
        }
        Command::SparseLadder { floors, maxdim, n } => {
            ctx.check_cap(n)?;
            let floors = read_numbers(&floors)?;
            let lad = sparse_ladder(&floors, maxdim, n)?;
            eprintln!(
                "{} cubes, {} elements in [1, {n}]",
                lad.cubes.len(),
                lad.window.len()
            );
            let doc = json!({"N": n, "elements": lad.window.elements(), "cubes": lad.cubes});
            ctx.emit(&serde_json::to_string(&doc)?)?;
            Ok(Status::Ok)
        }
        Command::Diagonal { height, n } => {
            ctx.check_cap(n)?;
            let d = diagonal_set(height, n)?;
            eprintln!(
                "{} polynomials, {} elements in [1, {n}]",
                d.records.len(),
                d.window.len()
            );
            let doc = json!({
                "expr": SetExpr::Diagonal(height).render(),
                "N": n,
                "elements": d.window.elements(),
                "excluded": d.excluded,
                "records": d.records,
            });
            ctx.emit(&serde_json::to_string(&doc)?)?;
            Ok(Status::Ok)
        }
        Command::DigraphPartition { file, ordering } => {
            let g = Digraph::from_edge_list(&fs::read_to_string(&file)?)?;
            let ordering = ordering.unwrap_or_else(|| (0..g.vertices()).collect());
            let (e1, e2) = partition_acyclic(&g, &ordering)?;
            let acyclic = [&e1, &e2].map(|h| longest_path_dag(h).is_ok());
            let (c1, c2) = (greedy_proper_coloring(&e1), greedy_proper_coloring(&e2));
            let product = product_proper(&c1, &c2)?;
            let proper = is_proper(&g, &product);
            eprintln!(
                "{} + {} edges; acyclic {:?}; product coloring uses {} colors, proper: {proper}",
                e1.edges().len(),
                e2.edges().len(),
                acyclic,
                color_count(&product)
            );
            let doc = json!({
                "V": g.vertices(),
                "ordering": ordering,
                "e1": e1.edges(),
                "e2": e2.edges(),
                "acyclic": acyclic,
                "coloring": product,
                "colors": color_count(&product),
                "proper": proper,
            });
            ctx.emit(&serde_json::to_string(&doc)?)?;
            Ok(if proper && acyclic == [true, true] {
                Status::Ok
            } else {
                Status::None
            })
        }
        Command::ChromaticGrowth { expr, ns } => {
            let e = ctx.expr(&expr)?;
            if let Some(&last) = ns.last() {
                ctx.check_cap(last)?;
            }
            let rows = ladderlab::digraph::chromatic_growth(&e, &ns)?;
            eprintln!("{} rows for {e}", rows.len());
            ctx.emit(&growth_csv(&rows))?;
            Ok(Status::Ok)
        }
        Command::SubsetAp {
            x_expr,
            s_expr,
            len,
            n,
        } => {
            let x = ctx.expr(&x_expr)?;
            let s = ctx.expr(&s_expr)?;
            let (xw, sw) = (ctx.window(&x, n)?, ctx.window(&s, n)?);
            let mut base = Certificate::new(Claim::WitnessFound, s.render(), n, 0, len)
                .with_target(Structure::SubsetAp);
            base.subset_expr = Some(x.render());
            match find_ap_in_subset(&xw, &sw, len)? {
                Some(wit) => {
                    eprintln!("found {}", describe(&wit));
                    ctx.emit_cert(&base.with_witness(wit))?;
                    Ok(Status::Ok)
                }
                None => {
                    eprintln!("none");
                    ctx.emit_cert(&Certificate {
                        claim: Claim::NoWitness,
                        ..base
                    })?;
                    Ok(Status::None)
                }
            }
        }
        Command::Walkability {
            expr,
            k,
            n,
            mlen,
            lower_out,
        } => {
            let e = ctx.expr(&expr)?;
            ctx.check_cap(n)?;
            let rep = walkability_report(&e, k, n, mlen, &ctx.engine())?;
            eprintln!(
                "upper: {}-coloring of [1, {n}], longest monochromatic walk {}",
                k + 2,
                rep.upper.param - 1
            );
            match &rep.lower {
                LowerEvidence::Threshold(t) => {
                    eprintln!("lower: {}", summarize(t));
                    if let Some(p) = &lower_out {
                        fs::write(p, t.certificate().to_json() + "\n")?;
                    }
                }
                LowerEvidence::Interrupted { nodes, lower_bound_exclusive } => eprintln!(
                    "lower: interrupted after {nodes} nodes; some {}-coloring of [1, {lower_bound_exclusive}] avoids {mlen}-element walks",
                    k + 1
                ),
            }
            ctx.emit_cert(&rep.upper)?;
            Ok(Status::Ok)
        }
        Command::Verify { file } => {
            let cert = Certificate::from_json(&fs::read_to_string(&file)?)?;
            let rep = verify_certificate(&cert)?;
            for c in &rep.checks {
                eprintln!("ok: {c}");
            }
            if let Some(d) = &rep.discrepancy {
                eprintln!("FAIL: {d}");
            }
            let doc =
                json!({"pass": rep.pass, "discrepancy": rep.discrepancy, "checks": rep.checks});
            ctx.emit(&serde_json::to_string(&doc)?)?;
            Ok(if rep.pass { Status::Ok } else { Status::None })
        }
    }
}

impl Ctx {
    fn stats(&self, nodes: u64, started: Instant) -> Option<Stats> {
        Some(Stats {
            nodes,
            elapsed_ms: self.timing.then(|| started.elapsed().as_millis() as u64),
        })
    }

    fn threshold(&self, expr: &str, target: Target, r: u32, nmax: usize) -> Result<Status, Error> {
        let e = self.expr(expr)?;
        self.check_cap(nmax)?;
        let started = Instant::now();
        let t = threshold(&e, target, r, nmax, &self.engine())?;
        eprintln!("{} ({} ms)", summarize(&t), started.elapsed().as_millis());
        let mut cert = t.certificate();
        cert.stats = self.stats(t.nodes, started);
        self.emit_cert(&cert)?;
        Ok(match t.outcome {
            Outcome::Found { .. } => Status::Ok,
            Outcome::Exceeded { .. } => Status::None,
        })
    }
}

fn summarize(t: &ThresholdResult) -> String {
    let what = match t.target {
        Target::Ap { len } => format!("{len}-term progression"),
        Target::Walk { len } => format!("{len}-element walk"),
    };
    match &t.outcome {
        Outcome::Found { n, .. } => format!(
            "every {}-coloring of [1, {n}] has a monochromatic {what} over {}; N = {n} ({} nodes)",
            t.r, t.expr, t.nodes
        ),
        Outcome::Exceeded { nmax, .. } => format!(
            "none up to {nmax}: a {}-coloring of [1, {nmax}] avoids every monochromatic {what} over {} ({} nodes)",
            t.r, t.expr, t.nodes
        ),
    }
}

fn describe(w: &Witness) -> String {
    match w {
        Witness::Ap {
            start,
            diff,
            len,
            color,
        } => match color {
            Some(c) => format!("progression {start} + {diff}j, j < {len}, color {c}"),
            None => format!("progression {start} + {diff}j, j < {len}"),
        },
        Witness::Walk { vertices, color } => {
            format!("walk {vertices:?} color {}", color.unwrap_or(0))
        }
        Witness::Cube { generators } => format!("cube with generators {generators:?}"),
        Witness::Homothetic { x, n } => format!("{{{x}, 2*{x}, ..., {n}*{x}}}"),
        Witness::DifferenceSet { elements } => format!("H = {elements:?}"),
    }
}

fn ratio_value(num: u64, den: u64) -> f64 {
    num as f64 / den as f64
}

/// Nonnegative integers separated by whitespace or commas; brackets ignored.
fn read_numbers(path: &Path) -> Result<Vec<u64>, Error> {
    let text = fs::read_to_string(path)?;
    text.split(|c: char| c.is_whitespace() || c == ',' || c == '[' || c == ']')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>().map_err(|_| {
                Error::Argument(format!(
                    "{}: not a nonnegative integer: {t:?}",
                    path.display()
                ))
            })
        })
        .collect()
}

/// A coloring file: one color per position of [1, N]; r is the largest color plus one.
fn read_coloring(path: &Path) -> Result<Coloring, Error> {
    let nums = read_numbers(path)?;
    if nums.is_empty() {
        return Err(Error::Argument(format!(
            "{}: empty coloring",
            path.display()
        )));
    }
    let colors: Vec<u32> = nums
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| Error::Argument(format!("color {v} too large"))))
        .collect::<Result<_, _>>()?;
    let r = colors.iter().max().copied().unwrap_or(0) + 1;
    Coloring::new(r, colors)
}
