//! Spanning trees ↔ recurrent configurations, and minimal recurrent
//! configurations ↔ compatible ordered partitions.
//!
//! Given a spanning tree rooted at the sink, every vertex `i` gets three counts
//! of its graph neighbours: `lambda` (strictly deeper in the tree), `mu` (same
//! depth) and `nu` (one level up, with label smaller than the parent of `i`).
//! Their sum is a recurrent configuration whose canonical toppling is the
//! breadth-first layering of the tree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutation::{Permutation, PermutationGraph};
use crate::sandpile::{self, Configuration, OrderedPartition};
use crate::trees::{self, RootedTree};

/// Per-vertex neighbour counts attached to a rooted spanning tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeWeights {
    pub lambda: Vec<u32>,
    pub mu: Vec<u32>,
    pub nu: Vec<u32>,
}

impl TreeWeights {
    /// Grain count `lambda + mu + nu` at each vertex.
    pub fn grains(&self) -> Vec<u32> {
        self.lambda
            .iter()
            .zip(&self.mu)
            .zip(&self.nu)
            .map(|((l, m), n)| l + m + n)
            .collect()
    }
}

fn require_spanning(g: &PermutationGraph, rt: &RootedTree) -> Result<()> {
    if !rt.tree().spans(g) {
        return Err(Error::NotSpanning(format!(
            "tree {:?} is not a spanning tree of G_{}",
            rt.tree().edges(),
            g.permutation()
        )));
    }
    Ok(())
}

pub fn tree_weights(g: &PermutationGraph, rt: &RootedTree) -> Result<TreeWeights> {
    require_spanning(g, rt)?;
    let n = g.n();
    let mut w = TreeWeights {
        lambda: vec![0; n],
        mu: vec![0; n],
        nu: vec![0; n],
    };
    for i in 1..=n {
        let h = rt.height(i);
        for &j in g.neighbors(i) {
            let hj = rt.height(j);
            if hj > h {
                w.lambda[i - 1] += 1;
            } else if hj == h {
                w.mu[i - 1] += 1;
            } else if hj + 1 == h && j < rt.parent(i).expect("non-root has a parent") {
                w.nu[i - 1] += 1;
            }
        }
    }
    Ok(w)
}

/// Spanning tree rooted at the sink ↦ recurrent configuration.
pub fn tree_to_config(g: &PermutationGraph, rt: &RootedTree) -> Result<Configuration> {
    Ok(Configuration::new(rt.root(), tree_weights(g, rt)?.grains()))
}

/// Inverse of [`tree_to_config`].
///
/// Layers come from the canonical toppling. A vertex `i` in layer `j` has
/// `r = c_i − |N(i) ∩ layers ≥ j|` eligible neighbours in layer `j − 1` below its
/// parent, so the parent is the `(r+1)`-th smallest of them.
pub fn config_to_tree(g: &PermutationGraph, c: &Configuration) -> Result<RootedTree> {
    let parts = sandpile::canonical_toppling(g, c)?;
    parents_from_layers(g, c, &parts, |_, eligible, r| eligible.get(r).copied())
}

fn parents_from_layers(
    g: &PermutationGraph,
    c: &Configuration,
    parts: &OrderedPartition,
    pick: impl Fn(usize, &[usize], usize) -> Option<usize>,
) -> Result<RootedTree> {
    let n = g.n();
    let layer = parts.block_of(n);
    let mut parent = vec![None; n];
    for (j, block) in parts.parts().iter().enumerate().skip(1) {
        for &i in block {
            let mut eligible = Vec::new();
            let mut at_or_below = 0usize;
            for &w in g.neighbors(i) {
                let lw = layer[w - 1].expect("partition covers [n]");
                if lw >= j {
                    at_or_below += 1;
                } else if lw + 1 == j {
                    eligible.push(w);
                }
            }
            let r = (c.get(i) as usize)
                .checked_sub(at_or_below)
                .ok_or_else(|| {
                    Error::Internal(format!("vertex {i}: fewer grains than deeper neighbours"))
                })?;
            let p = pick(i, &eligible, r).ok_or_else(|| {
                Error::Internal(format!(
                    "vertex {i}: offset {r} out of {} candidates",
                    eligible.len()
                ))
            })?;
            parent[i - 1] = Some(p);
        }
    }
    RootedTree::from_parents(c.sink, parent)
}

/// `Σ μ_i / 2 + Σ ν_i`; an odd `Σ μ_i` is an internal error.
pub fn level_via_weights(w: &TreeWeights) -> Result<i64> {
    let mu: i64 = w.mu.iter().map(|&x| x as i64).sum();
    if mu % 2 != 0 {
        return Err(Error::Internal(format!(
            "odd same-height neighbour total {mu}"
        )));
    }
    Ok(mu / 2 + w.nu.iter().map(|&x| x as i64).sum::<i64>())
}

/// The two increasing runs of a single-descent permutation, as side flags.
fn ferrers_sides(g: &PermutationGraph) -> Result<Vec<u8>> {
    let p = g.permutation();
    let (a1, _) = p
        .single_descent_decompose()
        .ok_or_else(|| Error::NotSingleDescent(p.to_string()))?;
    Ok((1..=g.n())
        .map(|v| if a1.contains(&v) { 1 } else { 2 })
        .collect())
}

/// Side-dependent weights for single-descent (Ferrers) graphs; `mu` is identically zero.
///
/// `lambda` counts deeper vertices on the other side with a smaller label (for
/// the first run) or a larger one (for the second run). `nu` counts vertices one
/// level up whose label lies strictly between the parent and the vertex itself.
pub fn ferrers_weights(g: &PermutationGraph, rt: &RootedTree) -> Result<TreeWeights> {
    let side = ferrers_sides(g)?;
    require_spanning(g, rt)?;
    let n = g.n();
    let mut w = TreeWeights {
        lambda: vec![0; n],
        mu: vec![0; n],
        nu: vec![0; n],
    };
    for i in 1..=n {
        let h = rt.height(i);
        for j in 1..=n {
            let hj = rt.height(j);
            if hj > h && side[j - 1] != side[i - 1] {
                let counts = if side[i - 1] == 1 { j < i } else { j > i };
                if counts {
                    w.lambda[i - 1] += 1;
                }
            }
            if let Some(p) = rt.parent(i) {
                let (lo, hi) = (p.min(i), p.max(i));
                if hj + 1 == h && lo < j && j < hi {
                    w.nu[i - 1] += 1;
                }
            }
        }
    }
    Ok(w)
}

/// Ferrers analogue of [`tree_to_config`].
///
/// Both maps are bijections onto the recurrent set with the same layering, but
/// they are not the same map: on first-run vertices `nu` counts the upper-level
/// neighbours above the parent instead of those below it.
pub fn ferrers_tree_to_config(g: &PermutationGraph, rt: &RootedTree) -> Result<Configuration> {
    Ok(Configuration::new(
        rt.root(),
        ferrers_weights(g, rt)?.grains(),
    ))
}

/// Inverse of [`ferrers_tree_to_config`]: second-run vertices take the
/// `(r+1)`-th smallest candidate parent, first-run vertices the `(r+1)`-th largest.
pub fn ferrers_config_to_tree(g: &PermutationGraph, c: &Configuration) -> Result<RootedTree> {
    let side = ferrers_sides(g)?;
    let parts = sandpile::canonical_toppling(g, c)?;
    parents_from_layers(g, c, &parts, |i, eligible, r| {
        if side[i - 1] == 1 {
            eligible.len().checked_sub(r + 1).map(|k| eligible[k])
        } else {
            eligible.get(r).copied()
        }
    })
}

/// All recurrent configurations as images of spanning trees, sorted.
pub fn recurrent_via_trees(g: &PermutationGraph, s: usize) -> Result<Vec<Configuration>> {
    g.check_vertex(s)?;
    let mut out = trees::enumerate_spanning_trees(g)?
        .iter()
        .map(|t| tree_to_config(g, &trees::root_at(t, s)?))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Checks the three compatibility conditions for an ordered partition.
pub fn is_compatible_partition(p: &Permutation, s: usize, part: &OrderedPartition) -> bool {
    compatibility_error(p, s, part).is_none()
}

fn compatibility_error(p: &Permutation, s: usize, part: &OrderedPartition) -> Option<String> {
    let n = p.len();
    if !part.is_partition_of(n) {
        return Some(format!("{part} is not a partition of [{n}]"));
    }
    if part.parts()[0] != [s] {
        return Some(format!("first block is not {{{s}}}"));
    }
    let g = PermutationGraph::new(p);
    for (j, block) in part.parts().iter().enumerate() {
        for (k, &a) in block.iter().enumerate() {
            if let Some(&b) = block[k + 1..].iter().find(|&&b| g.has_edge(a, b)) {
                return Some(format!(
                    "({},{}) is an inversion inside block {j}",
                    b.max(a),
                    a.min(b)
                ));
            }
        }
        if j > 0 {
            let prev = &part.parts()[j - 1];
            if let Some(&i) = block
                .iter()
                .find(|&&i| !prev.iter().any(|&q| g.has_edge(i, q)))
            {
                return Some(format!("{i} has no inversion partner in block {}", j - 1));
            }
        }
    }
    None
}

/// All `(p, s)`-compatible ordered partitions, by direct search over blocks.
pub fn compatible_partitions(p: &Permutation, s: usize) -> Vec<OrderedPartition> {
    let g = PermutationGraph::new(p);
    let n = g.n();
    if s == 0 || s > n {
        return Vec::new();
    }
    let mut used = vec![false; n];
    used[s - 1] = true;
    let mut parts = vec![vec![s]];
    let mut out = Vec::new();
    extend_blocks(&g, &mut used, &mut parts, n - 1, &mut out);
    out.sort();
    out
}

fn extend_blocks(
    g: &PermutationGraph,
    used: &mut Vec<bool>,
    parts: &mut Vec<Vec<usize>>,
    remaining: usize,
    out: &mut Vec<OrderedPartition>,
) {
    if remaining == 0 {
        out.push(OrderedPartition::new(parts.clone()));
        return;
    }
    let prev = parts.last().expect("at least the sink block").clone();
    let candidates: Vec<usize> = (1..=g.n())
        .filter(|&v| !used[v - 1] && prev.iter().any(|&q| g.has_edge(v, q)))
        .collect();
    // non-empty independent subsets of the candidates
    let k = candidates.len();
    for mask in 1u64..(1u64 << k) {
        let block: Vec<usize> = (0..k)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| candidates[b])
            .collect();
        let independent = block
            .iter()
            .enumerate()
            .all(|(x, &a)| block[x + 1..].iter().all(|&b| !g.has_edge(a, b)));
        if !independent {
            continue;
        }
        for &v in &block {
            used[v - 1] = true;
        }
        let size = block.len();
        parts.push(block);
        extend_blocks(g, used, parts, remaining - size, out);
        let block = parts.pop().expect("just pushed");
        for &v in &block {
            used[v - 1] = false;
        }
    }
}

/// Minimal recurrent configuration ↦ its canonical toppling.
pub fn minrec_to_partition(g: &PermutationGraph, c: &Configuration) -> Result<OrderedPartition> {
    let parts = sandpile::canonical_toppling(g, c)?;
    let lvl = sandpile::level(g, c);
    if lvl != 0 {
        return Err(Error::NotMinimal(lvl));
    }
    Ok(parts)
}

/// Tree whose layers are the blocks, each vertex hanging from its smallest neighbour one block up.
pub fn tree_from_partition(g: &PermutationGraph, part: &OrderedPartition) -> Result<RootedTree> {
    let n = g.n();
    if !part.is_partition_of(n) || part.parts()[0].len() != 1 {
        return Err(Error::IncompatiblePartition(format!("{part}")));
    }
    let mut parent = vec![None; n];
    for j in 1..part.len() {
        for &i in &part.parts()[j] {
            let p = part.parts()[j - 1]
                .iter()
                .copied()
                .filter(|&q| g.has_edge(i, q))
                .min()
                .ok_or_else(|| {
                    Error::IncompatiblePartition(format!("{i} has no neighbour in block {}", j - 1))
                })?;
            parent[i - 1] = Some(p);
        }
    }
    RootedTree::from_parents(part.parts()[0][0], parent)
}

/// Compatible ordered partition ↦ minimal recurrent configuration.
pub fn partition_to_minrec(g: &PermutationGraph, part: &OrderedPartition) -> Result<Configuration> {
    let s = part
        .parts()
        .first()
        .and_then(|b| b.first())
        .copied()
        .ok_or_else(|| Error::IncompatiblePartition("empty partition".into()))?;
    if let Some(e) = compatibility_error(g.permutation(), s, part) {
        return Err(Error::IncompatiblePartition(e));
    }
    tree_to_config(g, &tree_from_partition(g, part)?)
}
