//! Report builders behind the `asm-perm` binary.
//!
//! Each command turns a [`RunConfig`] into a [`Report`]: a list of typed
//! records plus the names of any cross-checks that failed. Records render
//! either as text lines or as one JSON object per line.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::activity;
use crate::bijections::{self, TreeWeights};
use crate::error::{guard, Error, Result};
use crate::permutation::{Permutation, PermutationGraph};
use crate::poly::{BivariatePolynomial, Polynomial};
use crate::sandpile::{self, Configuration, OrderedPartition};
use crate::trees::{self, RootedTreeRecord};

/// Known terms of the minimal-recurrent sweep, starting at `n = 1`.
pub const A002190: [u64; 6] = [1, 1, 4, 33, 456, 9460];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Graph,
    Recurrent,
    Polynomials,
    Bijection,
    Partitions,
    Oeis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "structured" | "json" => Ok(Format::Structured),
            _ => Err(Error::Parse {
                position: 0,
                message: format!("unknown format {s:?}; expected text or structured"),
            }),
        }
    }
}

/// Size limits on `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub per_permutation: usize,
    pub sweep: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            per_permutation: 8,
            sweep: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub permutation: Option<Permutation>,
    /// Defaults to vertex 1.
    pub sink: Option<usize>,
    pub all_sinks: bool,
    pub range: Option<RangeInclusive<usize>>,
    pub format: Format,
    pub limits: Limits,
    /// Worker threads for sweeps; `None` uses the rayon default.
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            permutation: None,
            sink: None,
            all_sinks: false,
            range: None,
            format: Format::Text,
            limits: Limits::default(),
            jobs: None,
        }
    }

    pub fn with_permutation(mut self, p: Permutation) -> Self {
        self.permutation = Some(p);
        self
    }

    pub fn with_sink(mut self, s: usize) -> Self {
        self.sink = Some(s);
        self
    }
}

/// Parses `a..b` (inclusive) or a single `n`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let num = |t: &str, offset: usize| {
        t.trim().parse::<usize>().map_err(|_| Error::Parse {
            position: offset,
            message: format!("expected an integer, found {t:?}"),
        })
    };
    let r = match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            num(a, 0)?..=num(b, a.len() + 2)?
        }
        None => {
            let n = num(s, 0)?;
            n..=n
        }
    };
    if r.start() > r.end() || *r.start() == 0 {
        return Err(Error::Parse {
            position: 0,
            message: format!("empty or zero-based range {s:?}"),
        });
    }
    Ok(r)
}

/// One unit of command output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Graph {
        permutation: String,
        n: usize,
        edges: Vec<[usize; 2]>,
        degrees: Vec<usize>,
        indecomposable: bool,
        single_descent: bool,
        threshold: bool,
    },
    Recurrent {
        permutation: String,
        config: Configuration,
        level: i64,
        canon_top: OrderedPartition,
    },
    LevelPolynomial {
        permutation: String,
        sink: usize,
        polynomial: Polynomial,
    },
    Tutte {
        permutation: String,
        route: String,
        polynomial: BivariatePolynomial,
    },
    Tree {
        permutation: String,
        tree: RootedTreeRecord,
        config: Configuration,
        weights: TreeWeights,
        external_activity: usize,
        round_trip: bool,
    },
    Partition {
        permutation: String,
        sink: usize,
        partition: OrderedPartition,
        config: Configuration,
    },
    Sequence {
        n: usize,
        value: u64,
        expected: Option<u64>,
    },
    Check {
        name: String,
        ok: bool,
        detail: String,
    },
    Warning {
        message: String,
    },
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Record::Graph {
                permutation,
                n,
                edges,
                degrees,
                indecomposable,
                single_descent,
                threshold,
            } => {
                let es: Vec<String> = edges.iter().map(|[a, b]| format!("{a}-{b}")).collect();
                writeln!(f, "graph of {permutation}: n={n}, {} edges", edges.len())?;
                writeln!(f, "  edges: {}", es.join(" "))?;
                writeln!(f, "  degrees: {degrees:?}")?;
                write!(
                    f,
                    "  indecomposable={indecomposable} single_descent={single_descent} threshold={threshold}"
                )
            }
            Record::Recurrent {
                config,
                level,
                canon_top,
                ..
            } => write!(f, "{config}  level={level}  canon_top={canon_top}"),
            Record::LevelPolynomial {
                sink, polynomial, ..
            } => {
                write!(f, "Level(sink={sink}) = {polynomial}")
            }
            Record::Tutte {
                route, polynomial, ..
            } => write!(f, "T[{route}] = {polynomial}"),
            Record::Tree {
                tree,
                config,
                weights,
                external_activity,
                round_trip,
                ..
            } => {
                let es: Vec<String> = tree.edges.iter().map(|[a, b]| format!("{a}-{b}")).collect();
                write!(
                    f,
                    "tree [{}] root {} -> {config}  lambda={:?} mu={:?} nu={:?} ext={external_activity} round_trip={}",
                    es.join(" "),
                    tree.root,
                    weights.lambda,
                    weights.mu,
                    weights.nu,
                    if *round_trip { "ok" } else { "FAILED" }
                )
            }
            Record::Partition {
                partition, config, ..
            } => write!(f, "{partition}  <->  {config}"),
            Record::Sequence { n, value, expected } => match expected {
                Some(e) => write!(
                    f,
                    "n={n}: {value} (expected {e}, {})",
                    if value == e { "ok" } else { "MISMATCH" }
                ),
                None => write!(f, "n={n}: {value}"),
            },
            Record::Check { name, ok, detail } => write!(
                f,
                "[{}] {name}: {detail}",
                if *ok { "pass" } else { "FAIL" }
            ),
            Record::Warning { message } => write!(f, "warning: {message}"),
        }
    }
}

/// Output of a command: records in emission order, plus failed check names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<Record>,
    pub failures: Vec<String>,
}

impl Report {
    fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let name = name.into();
        if !ok {
            self.failures.push(name.clone());
        }
        self.push(Record::Check {
            name,
            ok,
            detail: detail.into(),
        });
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(!self.failures.is_empty())
    }

    /// Writes every record to `w` in the requested format.
    pub fn write_to(&self, w: &mut impl std::io::Write, format: Format) -> std::io::Result<()> {
        for r in &self.records {
            match format {
                Format::Text => writeln!(w, "{r}")?,
                Format::Structured => {
                    serde_json::to_writer(&mut *w, r)?;
                    writeln!(w)?;
                }
            }
        }
        Ok(())
    }
}

/// Parses line-delimited structured output back into records.
pub fn parse_records(s: &str) -> Result<Vec<Record>> {
    s.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse {
                position: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

pub fn run(cfg: &RunConfig) -> Result<Report> {
    match cfg.command {
        Command::Graph => cmd_graph(cfg),
        Command::Recurrent => cmd_recurrent(cfg),
        Command::Polynomials => cmd_polynomials(cfg),
        Command::Bijection => cmd_bijection(cfg),
        Command::Partitions => cmd_partitions(cfg),
        Command::Oeis => cmd_oeis(cfg),
    }
}

fn permutation_of(cfg: &RunConfig) -> Result<&Permutation> {
    let p = cfg.permutation.as_ref().ok_or_else(|| Error::Parse {
        position: 0,
        message: "this command needs a permutation".into(),
    })?;
    guard("permutation length", p.len(), cfg.limits.per_permutation)?;
    Ok(p)
}

fn connected_graph(cfg: &RunConfig) -> Result<PermutationGraph> {
    let p = permutation_of(cfg)?;
    if !p.is_indecomposable() {
        return Err(Error::Decomposable(p.to_string()));
    }
    Ok(PermutationGraph::new(p))
}

fn sink_of(cfg: &RunConfig, g: &PermutationGraph) -> Result<usize> {
    let s = cfg.sink.unwrap_or(1);
    if s == 0 || s > g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: s,
            n: g.n(),
        });
    }
    Ok(s)
}

fn sinks_of(cfg: &RunConfig, g: &PermutationGraph) -> Result<Vec<usize>> {
    if cfg.all_sinks {
        Ok((1..=g.n()).collect())
    } else {
        Ok(vec![sink_of(cfg, g)?])
    }
}

pub fn cmd_graph(cfg: &RunConfig) -> Result<Report> {
    let p = permutation_of(cfg)?;
    let g = PermutationGraph::new(p);
    let mut report = Report::default();
    report.push(Record::Graph {
        permutation: p.to_string(),
        n: g.n(),
        edges: g.to_record().edges,
        degrees: g.degrees(),
        indecomposable: p.is_indecomposable(),
        single_descent: p.single_descent_decompose().is_some(),
        threshold: p.is_threshold(),
    });
    let connected = g.is_connected();
    if !connected {
        report.push(Record::Warning {
            message: format!("G_{p} is disconnected; sandpile commands will reject it"),
        });
    }
    report.check(
        "connectivity matches indecomposability",
        connected == p.is_indecomposable(),
        format!("connected={connected}"),
    );
    Ok(report)
}

pub fn cmd_recurrent(cfg: &RunConfig) -> Result<Report> {
    let g = connected_graph(cfg)?;
    let p = g.permutation().to_string();
    let mut report = Report::default();
    let trees = trees::spanning_tree_count(&g)?;
    for s in sinks_of(cfg, &g)? {
        let rec = sandpile::enumerate_recurrent(&g, s)?;
        for c in &rec {
            report.push(Record::Recurrent {
                permutation: p.clone(),
                config: c.clone(),
                level: sandpile::level(&g, c),
                canon_top: sandpile::canonical_toppling(&g, c)?,
            });
        }
        report.check(
            format!("|Rec| = spanning trees (sink {s})"),
            rec.len() as u128 == trees,
            format!("{} recurrent, {trees} spanning trees", rec.len()),
        );
    }
    Ok(report)
}

pub fn cmd_polynomials(cfg: &RunConfig) -> Result<Report> {
    let g = connected_graph(cfg)?;
    let p = g.permutation().to_string();
    let mut report = Report::default();

    let dc = activity::tutte_deletion_contraction(&g)?;
    let mut routes = vec![("deletion-contraction", dc.clone())];
    if g.edge_count() <= activity::MAX_SUBSET_EDGES {
        routes.push(("subset-expansion", activity::tutte_subset_expansion(&g)?));
    } else {
        report.push(Record::Warning {
            message: format!(
                "{} edges exceed the subset-expansion limit of {}; route skipped",
                g.edge_count(),
                activity::MAX_SUBSET_EDGES
            ),
        });
    }
    let sinks = sinks_of(cfg, &g)?;
    routes.push(("activities", activity::tutte_via_activities(&g, sinks[0])?));
    for (route, t) in &routes {
        report.push(Record::Tutte {
            permutation: p.clone(),
            route: (*route).into(),
            polynomial: t.clone(),
        });
    }
    report.check(
        "Tutte routes agree",
        routes.iter().all(|(_, t)| *t == dc),
        format!("{} routes", routes.len()),
    );

    let slice = dc.at_x_one();
    for s in sinks {
        let lp = sandpile::level_polynomial(&g, s)?;
        report.check(
            format!("Level(sink={s}) = T(1,x)"),
            lp == slice,
            format!("T(1,x) = {slice}"),
        );
        report.push(Record::LevelPolynomial {
            permutation: p.clone(),
            sink: s,
            polynomial: lp,
        });
    }
    Ok(report)
}

pub fn cmd_bijection(cfg: &RunConfig) -> Result<Report> {
    let g = connected_graph(cfg)?;
    let p = g.permutation().to_string();
    let mut report = Report::default();
    for s in sinks_of(cfg, &g)? {
        let mut bad_trip = 0;
        let mut bad_level = 0;
        let mut images = std::collections::BTreeSet::new();
        for t in trees::enumerate_spanning_trees(&g)? {
            let rt = trees::root_at(&t, s)?;
            let weights = bijections::tree_weights(&g, &rt)?;
            let config = Configuration::new(s, weights.grains());
            let round_trip = bijections::config_to_tree(&g, &config).is_ok_and(|b| b == rt);
            let ext = activity::external_activity(&g, &t, &activity::bfs_edge_order(&g, &rt)?);
            if !round_trip {
                bad_trip += 1;
            }
            if ext as i64 != sandpile::level(&g, &config) {
                bad_level += 1;
            }
            images.insert(config.clone());
            report.push(Record::Tree {
                permutation: p.clone(),
                tree: rt.to_record(),
                config,
                weights,
                external_activity: ext,
                round_trip,
            });
        }
        for c in &images {
            if sandpile::level(&g, c) == 0 {
                report.push(Record::Partition {
                    permutation: p.clone(),
                    sink: s,
                    partition: bijections::minrec_to_partition(&g, c)?,
                    config: c.clone(),
                });
            }
        }
        let rec: std::collections::BTreeSet<Configuration> =
            sandpile::enumerate_recurrent(&g, s)?.into_iter().collect();
        report.check(
            format!("round trip (sink {s})"),
            bad_trip == 0,
            format!("{bad_trip} failures"),
        );
        report.check(
            format!("ext = level (sink {s})"),
            bad_level == 0,
            format!("{bad_level} failures"),
        );
        report.check(
            format!("image = Rec (sink {s})"),
            images == rec,
            format!("{} images, {} recurrent", images.len(), rec.len()),
        );
    }
    Ok(report)
}

pub fn cmd_partitions(cfg: &RunConfig) -> Result<Report> {
    let g = connected_graph(cfg)?;
    let p = g.permutation();
    let mut report = Report::default();
    for s in sinks_of(cfg, &g)? {
        let parts = bijections::compatible_partitions(p, s);
        let mut minrec = sandpile::enumerate_minimal_recurrent(&g, s)?;
        minrec.sort();
        let mut images = Vec::with_capacity(parts.len());
        for part in &parts {
            let c = bijections::partition_to_minrec(&g, part)?;
            images.push(c.clone());
            report.push(Record::Partition {
                permutation: p.to_string(),
                sink: s,
                partition: part.clone(),
                config: c,
            });
        }
        images.sort();
        report.check(
            format!("partitions <-> MinRec (sink {s})"),
            images == minrec,
            format!(
                "{} partitions, {} minimal recurrent",
                parts.len(),
                minrec.len()
            ),
        );
    }
    Ok(report)
}

/// Sum of `|MinRec|` over indecomposable permutations of `[n]`.
pub fn minimal_recurrent_total(n: usize) -> Result<u64> {
    Permutation::indecomposable(n)
        .par_iter()
        .map(|p| {
            let g = PermutationGraph::new(p);
            Ok(sandpile::enumerate_minimal_recurrent(&g, 1)?.len() as u64)
        })
        .sum()
}

pub fn cmd_oeis(cfg: &RunConfig) -> Result<Report> {
    let range = cfg.range.clone().unwrap_or(1..=5);
    guard("sweep size", *range.end(), cfg.limits.sweep)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cfg.jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let mut report = Report::default();
    let mut mismatches = 0;
    for n in range {
        let value = pool.install(|| minimal_recurrent_total(n))?;
        let expected = A002190.get(n - 1).copied();
        if expected.is_some_and(|e| e != value) {
            mismatches += 1;
        }
        report.push(Record::Sequence { n, value, expected });
    }
    report.check(
        "sequence matches 1, 1, 4, 33, 456, 9460",
        mismatches == 0,
        format!("{mismatches} mismatches"),
    );
    Ok(report)
}
