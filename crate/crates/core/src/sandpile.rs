//! Abelian sandpile dynamics on a permutation graph with a sink.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};
use crate::permutation::PermutationGraph;
use crate::poly::Polynomial;

/// Largest vertex count accepted by the brute-force enumerations.
pub const MAX_ENUM_VERTICES: usize = 10;

/// Grain counts indexed by vertex id `1..=n`, with the sink stored explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Configuration {
    pub sink: usize,
    pub grains: Vec<u32>,
}

impl Configuration {
    pub fn new(sink: usize, grains: Vec<u32>) -> Self {
        Configuration { sink, grains }
    }

    pub fn n(&self) -> usize {
        self.grains.len()
    }

    pub fn get(&self, v: usize) -> u32 {
        self.grains[v - 1]
    }

    pub fn total(&self) -> i64 {
        self.grains.iter().map(|&g| g as i64).sum()
    }

    fn check(&self, g: &PermutationGraph) -> Result<()> {
        if self.grains.len() != g.n() {
            return Err(Error::SizeMismatch {
                expected: g.n(),
                got: self.grains.len(),
            });
        }
        g.check_vertex(self.sink)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.grains.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Ordered set partition `P_0, P_1, …, P_k`; blocks are kept sorted.
///
/// Text form is dash-separated blocks (`3-1-24-5`). When a label exceeds 9 each
/// block is bracketed instead (`[10]-[1,2]`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    parts: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(mut parts: Vec<Vec<usize>>) -> Self {
        for p in &mut parts {
            p.sort_unstable();
        }
        OrderedPartition { parts }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// True iff the blocks are non-empty, disjoint and cover `[n]`.
    pub fn is_partition_of(&self, n: usize) -> bool {
        let mut seen = vec![false; n + 1];
        let mut count = 0;
        for block in &self.parts {
            if block.is_empty() {
                return false;
            }
            for &v in block {
                if v == 0 || v > n || seen[v] {
                    return false;
                }
                seen[v] = true;
                count += 1;
            }
        }
        count == n
    }

    /// Block index of every vertex (`None` if absent).
    pub fn block_of(&self, n: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n];
        for (j, block) in self.parts.iter().enumerate() {
            for &v in block {
                if v >= 1 && v <= n {
                    out[v - 1] = Some(j);
                }
            }
        }
        out
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.parts.iter().flatten().all(|&v| v <= 9);
        let blocks: Vec<String> = self
            .parts
            .iter()
            .map(|b| {
                let labels: Vec<String> = b.iter().map(|v| v.to_string()).collect();
                if compact {
                    labels.concat()
                } else {
                    format!("[{}]", labels.join(","))
                }
            })
            .collect();
        write!(f, "{}", blocks.join("-"))
    }
}

impl FromStr for OrderedPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        let mut offset = 0;
        for block in s.trim().split('-') {
            let labels: Vec<usize> =
                if let Some(inner) = block.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
                    inner
                        .split(',')
                        .map(|t| t.trim().parse::<usize>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| Error::Parse {
                            position: offset,
                            message: format!("bad block {block:?}"),
                        })?
                } else {
                    block
                        .chars()
                        .enumerate()
                        .map(|(i, c)| {
                            c.to_digit(10).map(|d| d as usize).ok_or(Error::Parse {
                                position: offset + i,
                                message: format!("expected a digit, found {c:?}"),
                            })
                        })
                        .collect::<Result<_>>()?
                };
            if labels.is_empty() {
                return Err(Error::Parse {
                    position: offset,
                    message: "empty block".into(),
                });
            }
            parts.push(labels);
            offset += block.len() + 1;
        }
        Ok(OrderedPartition::new(parts))
    }
}

impl Serialize for OrderedPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for OrderedPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Topples `v`: it loses `deg(v)` grains and each neighbour gains one.
pub fn topple(g: &PermutationGraph, c: &Configuration, v: usize) -> Result<Configuration> {
    c.check(g)?;
    g.check_vertex(v)?;
    let deg = g.degree(v);
    let have = c.get(v);
    if (have as usize) < deg {
        return Err(Error::StableVertex {
            vertex: v,
            grains: have,
            degree: deg,
        });
    }
    let mut out = c.clone();
    topple_in_place(g, &mut out.grains, v, 1);
    Ok(out)
}

fn topple_in_place(g: &PermutationGraph, grains: &mut [u32], v: usize, times: u32) {
    grains[v - 1] -= times * g.degree(v) as u32;
    for &w in g.neighbors(v) {
        grains[w - 1] += times;
    }
}

pub fn is_stable(g: &PermutationGraph, c: &Configuration) -> bool {
    (1..=g.n()).all(|v| v == c.sink || (c.get(v) as usize) < g.degree(v))
}

/// Topples unstable non-sink vertices until none is left. The sink never topples.
pub fn stabilize(g: &PermutationGraph, c: &Configuration) -> Result<Configuration> {
    c.check(g)?;
    g.require_connected()?;
    let mut out = c.clone();
    let mut queue: Vec<usize> = (1..=g.n())
        .filter(|&v| v != c.sink && out.get(v) as usize >= g.degree(v))
        .collect();
    while let Some(v) = queue.pop() {
        let deg = g.degree(v) as u32;
        let have = out.grains[v - 1];
        if have < deg {
            continue;
        }
        topple_in_place(g, &mut out.grains, v, have / deg);
        for &w in g.neighbors(v) {
            if w != c.sink && out.grains[w - 1] >= g.degree(w) as u32 {
                queue.push(w);
            }
        }
    }
    Ok(out)
}

/// Decides recurrence with the round-based test and returns the canonical toppling.
///
/// The sink topples first; each later round topples every vertex that is
/// unstable at the start of the round. The configuration is recurrent iff every
/// vertex topples exactly once.
pub fn is_recurrent(g: &PermutationGraph, c: &Configuration) -> Option<OrderedPartition> {
    if c.check(g).is_err() {
        return None;
    }
    let s = c.sink;
    if c.get(s) as usize != g.degree(s) || !is_stable(g, c) {
        return None;
    }
    let n = g.n();
    let mut grains = c.grains.clone();
    let mut toppled = vec![false; n];
    toppled[s - 1] = true;
    topple_in_place(g, &mut grains, s, 1);
    let mut parts = vec![vec![s]];
    let mut done = 1;
    loop {
        let round: Vec<usize> = (1..=n)
            .filter(|&v| !toppled[v - 1] && grains[v - 1] as usize >= g.degree(v))
            .collect();
        if round.is_empty() {
            break;
        }
        for &v in &round {
            toppled[v - 1] = true;
            topple_in_place(g, &mut grains, v, 1);
        }
        done += round.len();
        parts.push(round);
    }
    (done == n).then(|| OrderedPartition::new(parts))
}

pub fn canonical_toppling(g: &PermutationGraph, c: &Configuration) -> Result<OrderedPartition> {
    is_recurrent(g, c).ok_or(Error::NotRecurrent)
}

/// `Σ c_i − |E|`.
pub fn level(g: &PermutationGraph, c: &Configuration) -> i64 {
    c.total() - g.edge_count() as i64
}

/// All recurrent configurations, by brute force over `Π_{v≠s} [0, d_v − 1]`.
pub fn enumerate_recurrent(g: &PermutationGraph, s: usize) -> Result<Vec<Configuration>> {
    g.check_vertex(s)?;
    g.require_connected()?;
    guard("recurrent enumeration (vertices)", g.n(), MAX_ENUM_VERTICES)?;
    let n = g.n();
    let mut grains: Vec<u32> = (1..=n)
        .map(|v| if v == s { g.degree(v) as u32 } else { 0 })
        .collect();
    let free: Vec<usize> = (1..=n).filter(|&v| v != s).collect();
    let mut out = Vec::new();
    loop {
        let c = Configuration::new(s, grains.clone());
        if is_recurrent(g, &c).is_some() {
            out.push(c);
        }
        // odometer increment over the free coordinates
        let mut k = 0;
        loop {
            if k == free.len() {
                return Ok(out);
            }
            let v = free[k];
            if (grains[v - 1] as usize) + 1 < g.degree(v) {
                grains[v - 1] += 1;
                break;
            }
            grains[v - 1] = 0;
            k += 1;
        }
    }
}

/// Generating function of the level over all recurrent configurations.
pub fn level_polynomial(g: &PermutationGraph, s: usize) -> Result<Polynomial> {
    let rec = enumerate_recurrent(g, s)?;
    Ok(Polynomial::from_degrees(
        rec.iter().map(|c| level(g, c) as usize),
    ))
}

/// The level-zero recurrent configurations.
pub fn enumerate_minimal_recurrent(g: &PermutationGraph, s: usize) -> Result<Vec<Configuration>> {
    Ok(enumerate_recurrent(g, s)?
        .into_iter()
        .filter(|c| level(g, c) == 0)
        .collect())
}
