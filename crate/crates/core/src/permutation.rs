//! Permutations, their inversion sets and the associated permutation graphs.
//!
//! Vertices of a permutation graph are the *values* `1..=n` of the permutation,
//! never positions. Two values are adjacent exactly when they form an inversion.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `[n]` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty word".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    /// 1-based position of value `v`.
    pub fn position_of(&self, v: usize) -> usize {
        self.inverse_word()[v - 1]
    }

    fn inverse_word(&self) -> Vec<usize> {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        inv
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            word: self.inverse_word(),
        }
    }

    /// All inversions as value pairs `(larger, smaller)`.
    pub fn inversions(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for (i, &a) in self.word.iter().enumerate() {
            for &b in &self.word[i + 1..] {
                if a > b {
                    out.insert((a, b));
                }
            }
        }
        out
    }

    pub fn inversion_count(&self) -> usize {
        self.word
            .iter()
            .enumerate()
            .map(|(i, &a)| self.word[i + 1..].iter().filter(|&&b| b < a).count())
            .sum()
    }

    /// 1-based positions `i` with `π_i > π_{i+1}`.
    pub fn descents(&self) -> Vec<usize> {
        self.word
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// True iff no proper prefix of the word is a permutation of `[k]`.
    pub fn is_indecomposable(&self) -> bool {
        let mut max = 0;
        for (k, &v) in self.word.iter().enumerate() {
            max = max.max(v);
            if max == k + 1 && k + 1 < self.len() {
                return false;
            }
        }
        true
    }

    /// Splits a single-descent word into the value sets of its two increasing runs.
    pub fn single_descent_decompose(&self) -> Option<(BTreeSet<usize>, BTreeSet<usize>)> {
        let d = self.descents();
        if d.len() != 1 {
            return None;
        }
        let cut = d[0];
        let first = self.word[..cut].iter().copied().collect();
        let second = self.word[cut..].iter().copied().collect();
        Some((first, second))
    }

    /// True iff the word strictly decreases and then strictly increases.
    pub fn is_threshold(&self) -> bool {
        let mut i = 1;
        while i < self.len() && self.word[i] < self.word[i - 1] {
            i += 1;
        }
        while i < self.len() && self.word[i] > self.word[i - 1] {
            i += 1;
        }
        i == self.len()
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut word: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { word: word.clone() });
            if !next_permutation(&mut word) {
                break;
            }
        }
        out
    }

    /// Indecomposable permutations of `[n]` in lexicographic order.
    pub fn indecomposable(n: usize) -> Vec<Permutation> {
        Self::all(n)
            .into_iter()
            .filter(Permutation::is_indecomposable)
            .collect()
    }
}

fn next_permutation(w: &mut [usize]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let mut i = w.len() - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = w.len() - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Accepts compact digits (`"23541"`, only for n ≤ 9) or comma-separated values.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "empty permutation".into(),
            });
        }
        let mut word = Vec::new();
        if s.contains(',') {
            let mut offset = 0;
            for tok in s.split(',') {
                let t = tok.trim();
                let v: usize = t.parse().map_err(|_| Error::Parse {
                    position: offset,
                    message: format!("expected a positive integer, found {t:?}"),
                })?;
                word.push(v);
                offset += tok.len() + 1;
            }
        } else {
            for (i, ch) in s.chars().enumerate() {
                match ch.to_digit(10) {
                    Some(d) if d > 0 => word.push(d as usize),
                    _ => {
                        return Err(Error::Parse {
                            position: i,
                            message: format!("expected a digit 1-9, found {ch:?}"),
                        })
                    }
                }
            }
        }
        Permutation::new(word)
    }
}

/// Edge-list record `{n, edges}` used in structured output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// The inversion graph of a permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGraph {
    perm: Permutation,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl PermutationGraph {
    pub fn new(perm: &Permutation) -> Self {
        let n = perm.len();
        let edges: Vec<(usize, usize)> = perm
            .inversions()
            .into_iter()
            .map(|(a, b)| (b, a))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut adjacency = vec![Vec::new(); n];
        let mut matrix = vec![false; n * n];
        for &(a, b) in &edges {
            adjacency[a - 1].push(b);
            adjacency[b - 1].push(a);
            matrix[(a - 1) * n + (b - 1)] = true;
            matrix[(b - 1) * n + (a - 1)] = true;
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        PermutationGraph {
            perm: perm.clone(),
            edges,
            adjacency,
            matrix,
        }
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// Edges `(a, b)` with `a < b`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v - 1].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let n = self.n();
        a != b && a >= 1 && b >= 1 && a <= n && b <= n && self.matrix[(a - 1) * n + (b - 1)]
    }

    /// Index of the edge `{a, b}` in [`edges`](Self::edges).
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![1];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n() {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.perm.is_indecomposable() {
            Ok(())
        } else {
            Err(Error::Decomposable(self.perm.to_string()))
        }
    }

    pub fn to_record(&self) -> GraphRecord {
        GraphRecord {
            n: self.n(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

pub fn inversions(p: &Permutation) -> BTreeSet<(usize, usize)> {
    p.inversions()
}

pub fn build_perm_graph(p: &Permutation) -> PermutationGraph {
    PermutationGraph::new(p)
}
