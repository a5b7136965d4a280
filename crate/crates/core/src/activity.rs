//! Edge orders, tree activities and the Tutte polynomial.

use std::collections::VecDeque;

use crate::error::{guard, Error, Result};
use crate::permutation::PermutationGraph;
use crate::poly::{BivariatePolynomial, Polynomial};
use crate::trees::{self, Dsu, LabeledTree, RootedTree};

/// Edge-count limit for the subset expansion.
pub const MAX_SUBSET_EDGES: usize = 20;

/// A total order on the edges of a graph; rank 1 is the smallest edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeOrder {
    sequence: Vec<(usize, usize)>,
    rank: Vec<usize>,
}

impl EdgeOrder {
    /// Builds an order from the edges listed smallest first.
    pub fn from_sequence(g: &PermutationGraph, sequence: Vec<(usize, usize)>) -> Result<Self> {
        let mut rank = vec![0; g.edge_count()];
        let mut seq = Vec::with_capacity(sequence.len());
        for (k, &(a, b)) in sequence.iter().enumerate() {
            let idx = g
                .edge_index(a, b)
                .ok_or_else(|| Error::Internal(format!("({a},{b}) is not an edge")))?;
            if rank[idx] != 0 {
                return Err(Error::Internal(format!("edge ({a},{b}) ranked twice")));
            }
            rank[idx] = k + 1;
            seq.push((a, b));
        }
        if seq.len() != g.edge_count() {
            return Err(Error::Internal(format!(
                "order covers {} of {} edges",
                seq.len(),
                g.edge_count()
            )));
        }
        Ok(EdgeOrder {
            sequence: seq,
            rank,
        })
    }

    /// Edges from smallest to largest, as written when ordered.
    pub fn sequence(&self) -> &[(usize, usize)] {
        &self.sequence
    }

    /// Ranks indexed like [`PermutationGraph::edges`].
    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn rank_of(&self, g: &PermutationGraph, a: usize, b: usize) -> Option<usize> {
        g.edge_index(a, b).map(|i| self.rank[i])
    }
}

/// Tree-dependent order from a breadth-first visit of the rooted tree.
///
/// Heights are visited in increasing order and, within a height, larger labels
/// first. Visiting `v` appends the edges from `v` to its unvisited neighbours,
/// larger neighbour first.
pub fn bfs_edge_order(g: &PermutationGraph, rt: &RootedTree) -> Result<EdgeOrder> {
    if !rt.tree().spans(g) {
        return Err(Error::NotSpanning("tree does not span the graph".into()));
    }
    let mut visited = vec![false; g.n()];
    let mut seq = Vec::with_capacity(g.edge_count());
    for level in rt.levels() {
        for &v in level.iter().rev() {
            for &w in g.neighbors(v).iter().rev() {
                if !visited[w - 1] {
                    seq.push((v, w));
                }
            }
            visited[v - 1] = true;
        }
    }
    EdgeOrder::from_sequence(g, seq)
}

/// Rank of the largest edge on the tree path between `a` and `b`.
fn max_rank_on_path(
    g: &PermutationGraph,
    rt: &RootedTree,
    ord: &EdgeOrder,
    a: usize,
    b: usize,
) -> usize {
    let (mut u, mut v) = (a, b);
    let mut best = 0;
    while u != v {
        let step = if rt.height(u) >= rt.height(v) {
            &mut u
        } else {
            &mut v
        };
        let p = rt.parent(*step).expect("below the root");
        best = best.max(ord.rank_of(g, *step, p).expect("tree edge in graph"));
        *step = p;
    }
    best
}

/// Non-tree edges that are the largest edge of their fundamental cycle.
pub fn externally_active_edges(
    g: &PermutationGraph,
    t: &LabeledTree,
    ord: &EdgeOrder,
) -> Vec<(usize, usize)> {
    let rt = trees::root_at(t, 1).expect("vertex 1 exists");
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| !t.contains_edge(a, b))
        .filter(|(i, &(a, b))| ord.ranks()[*i] > max_rank_on_path(g, &rt, ord, a, b))
        .map(|(_, &e)| e)
        .collect()
}

pub fn external_activity(g: &PermutationGraph, t: &LabeledTree, ord: &EdgeOrder) -> usize {
    externally_active_edges(g, t, ord).len()
}

/// Tree edges that are the largest edge of their fundamental cocycle.
pub fn internally_active_edges(
    g: &PermutationGraph,
    t: &LabeledTree,
    ord: &EdgeOrder,
) -> Vec<(usize, usize)> {
    let adj = t.adjacency();
    let mut out = Vec::new();
    for &(a, b) in t.edges() {
        // colour the side of `a` in T \ {a,b}
        let mut side = vec![false; t.n()];
        side[a - 1] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v - 1] {
                if (v, w) == (a, b) || (v, w) == (b, a) || side[w - 1] {
                    continue;
                }
                side[w - 1] = true;
                queue.push_back(w);
            }
        }
        let own = ord.rank_of(g, a, b).expect("tree edge in graph");
        let cut_max = g
            .edges()
            .iter()
            .zip(ord.ranks())
            .filter(|(&(u, v), _)| side[u - 1] != side[v - 1])
            .map(|(_, &r)| r)
            .max()
            .unwrap_or(0);
        if own == cut_max {
            out.push((a, b));
        }
    }
    out
}

pub fn internal_activity(g: &PermutationGraph, t: &LabeledTree, ord: &EdgeOrder) -> usize {
    internally_active_edges(g, t, ord).len()
}

/// `Σ_{S ⊆ E} (x−1)^{cc(S)−1} (y−1)^{cc(S)+|S|−|V|}`.
pub fn tutte_subset_expansion(g: &PermutationGraph) -> Result<BivariatePolynomial> {
    guard("subset expansion (edges)", g.edge_count(), MAX_SUBSET_EDGES)?;
    let n = g.n();
    let m = g.edge_count();
    // counts[cc][|S|]
    let mut counts = vec![vec![0i64; m + 1]; n + 1];
    for mask in 0u32..(1u32 << m) {
        let mut dsu = Dsu::new(n);
        for (k, &(a, b)) in g.edges().iter().enumerate() {
            if mask >> k & 1 == 1 {
                dsu.union(a - 1, b - 1);
            }
        }
        counts[dsu.components()][mask.count_ones() as usize] += 1;
    }
    let xm1 = &BivariatePolynomial::x() + &BivariatePolynomial::monomial(0, 0, -1);
    let ym1 = &BivariatePolynomial::y() + &BivariatePolynomial::monomial(0, 0, -1);
    let mut out = BivariatePolynomial::zero();
    for (cc, row) in counts.iter().enumerate() {
        for (size, &cnt) in row.iter().enumerate() {
            if cnt == 0 {
                continue;
            }
            let term = &xm1.pow(cc as u32 - 1) * &ym1.pow((cc + size - n) as u32);
            out += &(&term * &BivariatePolynomial::monomial(0, 0, cnt));
        }
    }
    Ok(out)
}

/// Tutte polynomial by deletion-contraction on a multigraph.
///
/// Parallel classes are handled at once: a class of `m` edges between `u` and
/// `v` contributes `x + y + … + y^{m−1}` when it disconnects the graph, and
/// otherwise `T(G − class) + (1 + y + … + y^{m−1}) T(G / uv)`.
pub fn tutte_deletion_contraction(g: &PermutationGraph) -> Result<BivariatePolynomial> {
    g.require_connected()?;
    let n = g.n();
    let mut mult = vec![vec![0u32; n]; n];
    for &(a, b) in g.edges() {
        mult[a - 1][b - 1] += 1;
        mult[b - 1][a - 1] += 1;
    }
    let alive = vec![true; n];
    Ok(tutte_multigraph(&mut mult, alive))
}

#[allow(clippy::needless_range_loop)]
fn tutte_multigraph(mult: &mut Vec<Vec<u32>>, alive: Vec<bool>) -> BivariatePolynomial {
    let n = mult.len();
    let pair = (0..n).filter(|&u| alive[u]).find_map(|u| {
        ((u + 1)..n)
            .find(|&v| alive[v] && mult[u][v] > 0)
            .map(|v| (u, v))
    });
    let Some((u, v)) = pair else {
        return BivariatePolynomial::one();
    };
    let m = mult[u][v];
    mult[u][v] = 0;
    mult[v][u] = 0;

    let y_series = |start: u32| {
        let mut p = BivariatePolynomial::zero();
        for e in start..m {
            p.add_term(0, e, 1);
        }
        p
    };

    let connected = reachable(mult, &alive, u, v);
    let contracted = {
        let mut c = mult.clone();
        let mut a = alive.clone();
        for w in 0..n {
            if w != u && w != v {
                c[u][w] += c[v][w];
                c[w][u] = c[u][w];
            }
            c[v][w] = 0;
            c[w][v] = 0;
        }
        a[v] = false;
        tutte_multigraph(&mut c, a)
    };

    let out = if connected {
        let deleted = tutte_multigraph(mult, alive);
        let mut factor = y_series(1);
        factor.add_term(0, 0, 1);
        &deleted + &(&factor * &contracted)
    } else {
        let mut factor = y_series(1);
        factor.add_term(1, 0, 1);
        &factor * &contracted
    };
    mult[u][v] = m;
    mult[v][u] = m;
    out
}

fn reachable(mult: &[Vec<u32>], alive: &[bool], from: usize, to: usize) -> bool {
    let n = mult.len();
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        if x == to {
            return true;
        }
        for w in 0..n {
            if alive[w] && !seen[w] && mult[x][w] > 0 {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// `Σ_T x^{int(T)} y^{ext(T)}` with the breadth-first order of each tree rooted at `s`.
pub fn tutte_via_activities(g: &PermutationGraph, s: usize) -> Result<BivariatePolynomial> {
    g.check_vertex(s)?;
    let mut out = BivariatePolynomial::zero();
    for t in trees::enumerate_spanning_trees(g)? {
        let ord = bfs_edge_order(g, &trees::root_at(&t, s)?)?;
        out.add_term(
            internal_activity(g, &t, &ord) as u32,
            external_activity(g, &t, &ord) as u32,
            1,
        );
    }
    Ok(out)
}

/// `Σ_T x^{int(T)} y^{ext(T)}` for one order shared by every tree.
pub fn tutte_with_fixed_order(
    g: &PermutationGraph,
    ord: &EdgeOrder,
) -> Result<BivariatePolynomial> {
    let mut out = BivariatePolynomial::zero();
    for t in trees::enumerate_spanning_trees(g)? {
        out.add_term(
            internal_activity(g, &t, ord) as u32,
            external_activity(g, &t, ord) as u32,
            1,
        );
    }
    Ok(out)
}

/// Pairs `(i, j)` with `i > j` and `j` a proper ancestor of `i`.
pub fn tree_inversions(rt: &RootedTree) -> usize {
    let rank: Vec<usize> = (1..=rt.n()).collect();
    tree_inversions_ranked(rt, &rank)
}

/// Tree inversions with labels compared through `rank` (indexed `v − 1`).
pub fn tree_inversions_ranked(rt: &RootedTree, rank: &[usize]) -> usize {
    (1..=rt.n())
        .map(|i| {
            let mut count = 0;
            let mut cur = rt.parent(i);
            while let Some(a) = cur {
                if rank[a - 1] < rank[i - 1] {
                    count += 1;
                }
                cur = rt.parent(a);
            }
            count
        })
        .sum()
}

/// Vertex ranking used for inversions on threshold graphs.
///
/// Non-sink vertices are ordered by degree, ties by label, and the sink is
/// ranked above all of them so it never counts as the smaller end of an
/// inversion. This is the labelling under which parking-function degree and
/// tree inversions line up.
pub fn threshold_rank(g: &PermutationGraph, sink: usize) -> Vec<usize> {
    let n = g.n();
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|&v| (v == sink, g.degree(v), v));
    let mut rank = vec![0; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v - 1] = r + 1;
    }
    rank
}

/// Generating function of sink-rooted tree inversions under [`threshold_rank`].
pub fn threshold_inversion_polynomial(g: &PermutationGraph, sink: usize) -> Result<Polynomial> {
    let rank = threshold_rank(g, sink);
    let trees = trees::enumerate_spanning_trees(g)?;
    let mut degs = Vec::with_capacity(trees.len());
    for t in &trees {
        degs.push(tree_inversions_ranked(&trees::root_at(t, sink)?, &rank));
    }
    Ok(Polynomial::from_degrees(degs))
}

/// Same, with plain label order (root included as an ancestor).
pub fn label_inversion_polynomial(g: &PermutationGraph, sink: usize) -> Result<Polynomial> {
    let trees = trees::enumerate_spanning_trees(g)?;
    let mut degs = Vec::with_capacity(trees.len());
    for t in &trees {
        degs.push(tree_inversions(&trees::root_at(t, sink)?));
    }
    Ok(Polynomial::from_degrees(degs))
}
