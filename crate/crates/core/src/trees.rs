//! Labeled trees, rooted views, tierings and spanning trees of permutation graphs.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};
use crate::permutation::{Permutation, PermutationGraph};

/// Edge-count limit for [`enumerate_spanning_trees`].
pub const MAX_ENUM_EDGES: usize = 24;

/// A labeled tree on `[n]`, stored as a sorted list of edges `(a, b)` with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LabeledTree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl LabeledTree {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{} edges on {n} vertices",
                edges.len()
            )));
        }
        let mut dsu = Dsu::new(n);
        for &(a, b) in &edges {
            if a == b || a == 0 || b > n {
                return Err(Error::InvalidTree(format!("bad edge ({a},{b})")));
            }
            if !dsu.union(a - 1, b - 1) {
                return Err(Error::InvalidTree(format!("edge ({a},{b}) closes a cycle")));
            }
        }
        Ok(LabeledTree { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a - 1].push(b);
            adj[b - 1].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }

    /// True iff every edge of the tree is an edge of `g`.
    pub fn spans(&self, g: &PermutationGraph) -> bool {
        self.n == g.n() && self.edges.iter().all(|&(a, b)| g.has_edge(a, b))
    }
}

/// A labeled tree viewed from a root, with parent and height maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    tree: LabeledTree,
    root: usize,
    parent: Vec<Option<usize>>,
    height: Vec<usize>,
}

/// Serialized form of a rooted tree; `parent[v-1]` is 0 for the root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedTreeRecord {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub root: usize,
    pub parent: Vec<usize>,
}

impl RootedTree {
    /// Builds a rooted tree from a parent map (`parent[v-1]`, `None` at the root).
    pub fn from_parents(root: usize, parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        let edges = parent
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (i + 1, p)));
        let tree = LabeledTree::new(n, edges)?;
        let rt = root_at(&tree, root)?;
        if rt.parent != parent {
            return Err(Error::InvalidTree(
                "parent map is not rooted at root".into(),
            ));
        }
        Ok(rt)
    }

    pub fn tree(&self) -> &LabeledTree {
        &self.tree
    }

    pub fn n(&self) -> usize {
        self.tree.n
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v - 1]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn height(&self, v: usize) -> usize {
        self.height[v - 1]
    }

    pub fn heights(&self) -> &[usize] {
        &self.height
    }

    /// Height fibers `T^(0), T^(1), …`, each sorted.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        let depth = self.height.iter().copied().max().unwrap_or(0);
        let mut out = vec![Vec::new(); depth + 1];
        for v in 1..=self.n() {
            out[self.height(v)].push(v);
        }
        out
    }

    /// True iff `anc` lies on the path from `v` to the root (excluding `v`).
    pub fn is_proper_ancestor(&self, anc: usize, v: usize) -> bool {
        let mut cur = self.parent(v);
        while let Some(u) = cur {
            if u == anc {
                return true;
            }
            cur = self.parent(u);
        }
        false
    }

    pub fn to_record(&self) -> RootedTreeRecord {
        RootedTreeRecord {
            n: self.n(),
            edges: self.tree.edges.iter().map(|&(a, b)| [a, b]).collect(),
            root: self.root,
            parent: self.parent.iter().map(|p| p.unwrap_or(0)).collect(),
        }
    }
}

/// Roots `t` at `s` by breadth-first traversal.
pub fn root_at(t: &LabeledTree, s: usize) -> Result<RootedTree> {
    if s == 0 || s > t.n {
        return Err(Error::VertexOutOfRange { vertex: s, n: t.n });
    }
    let adj = t.adjacency();
    let mut parent = vec![None; t.n];
    let mut height = vec![usize::MAX; t.n];
    height[s - 1] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v - 1] {
            if height[w - 1] == usize::MAX {
                height[w - 1] = height[v - 1] + 1;
                parent[w - 1] = Some(v);
                queue.push_back(w);
            }
        }
    }
    Ok(RootedTree {
        tree: t.clone(),
        root: s,
        parent,
        height,
    })
}

/// Checks the tier condition: `t` is onto `[k]` and `t(i) < t(j)` on every edge with `i > j`.
///
/// `t[v-1]` is the (1-based) tier of vertex `v`.
pub fn is_tiering(t: &LabeledTree, tiers: &[usize]) -> bool {
    tiering_error(t, tiers).is_none()
}

fn tiering_error(t: &LabeledTree, tiers: &[usize]) -> Option<String> {
    if tiers.len() != t.n {
        return Some(format!("{} tiers for {} vertices", tiers.len(), t.n));
    }
    let k = *tiers.iter().max().unwrap_or(&0);
    let mut used = vec![false; k + 1];
    for &x in tiers {
        if x == 0 {
            return Some("tier 0 is not allowed".into());
        }
        used[x] = true;
    }
    if used[1..].iter().any(|u| !u) {
        return Some(format!("tiering is not onto [1, {k}]"));
    }
    for &(lo, hi) in &t.edges {
        if tiers[hi - 1] >= tiers[lo - 1] {
            return Some(format!(
                "edge ({hi},{lo}) has t({hi}) = {} >= t({lo}) = {}",
                tiers[hi - 1],
                tiers[lo - 1]
            ));
        }
    }
    None
}

/// Refines a tiering to a bijective one, keeping tier order and sorting each tier increasingly.
pub fn fully_tier(t: &LabeledTree, tiers: &[usize]) -> Result<Vec<usize>> {
    if let Some(e) = tiering_error(t, tiers) {
        return Err(Error::InvalidTiering(e));
    }
    let mut order: Vec<usize> = (1..=t.n).collect();
    order.sort_by_key(|&v| (tiers[v - 1], v));
    let mut out = vec![0; t.n];
    for (rank, v) in order.into_iter().enumerate() {
        out[v - 1] = rank + 1;
    }
    Ok(out)
}

/// True iff every tree edge is an inversion of `p`.
pub fn is_spanning_tiered(t: &LabeledTree, p: &Permutation) -> bool {
    if t.n != p.len() {
        return false;
    }
    let inv = p.inverse();
    t.edges.iter().all(|&(lo, hi)| inv.at(hi) < inv.at(lo))
}

/// Number of spanning trees, as the determinant of a reduced Laplacian.
pub fn spanning_tree_count(g: &PermutationGraph) -> Result<u128> {
    let n = g.n();
    if n == 1 {
        return Ok(1);
    }
    let m = n - 1;
    let mut a = vec![vec![0i128; m]; m];
    for v in 2..=n {
        a[v - 2][v - 2] = g.degree(v) as i128;
        for &w in g.neighbors(v) {
            if w >= 2 {
                a[v - 2][w - 2] = -1;
            }
        }
    }
    let det = bareiss_determinant(a)?;
    u128::try_from(det).map_err(|_| Error::Internal(format!("negative tree count {det}")))
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_determinant(mut a: Vec<Vec<i128>>) -> Result<i128> {
    let m = a.len();
    if m == 0 {
        return Ok(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..m - 1 {
        if a[k][k] == 0 {
            match (k + 1..m).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let num = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                    .ok_or(Error::Overflow("determinant"))?;
                a[i][j] = num / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Ok(sign * a[m - 1][m - 1])
}

/// All spanning trees, by deletion-contraction over the edge list.
///
/// An edge is skipped when its ends are already joined by chosen edges (it would
/// be a loop after contraction) and is forced when it is a bridge of what remains.
pub fn enumerate_spanning_trees(g: &PermutationGraph) -> Result<Vec<LabeledTree>> {
    g.require_connected()?;
    guard(
        "spanning tree enumeration (edges)",
        g.edge_count(),
        MAX_ENUM_EDGES,
    )?;
    let n = g.n();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n.saturating_sub(1));
    let mut excluded = vec![false; g.edge_count()];
    descend(g, 0, &mut chosen, &mut excluded, &mut out);
    Ok(out)
}

fn descend(
    g: &PermutationGraph,
    k: usize,
    chosen: &mut Vec<usize>,
    excluded: &mut Vec<bool>,
    out: &mut Vec<LabeledTree>,
) {
    let n = g.n();
    let edges = g.edges();
    if chosen.len() == n - 1 {
        let tree = LabeledTree {
            n,
            edges: chosen.iter().map(|&e| edges[e]).collect(),
        };
        out.push(tree);
        return;
    }
    if k == edges.len() {
        return;
    }
    let mut dsu = Dsu::new(n);
    for &e in chosen.iter() {
        let (a, b) = edges[e];
        dsu.union(a - 1, b - 1);
    }
    let (a, b) = edges[k];
    if dsu.find(a - 1) == dsu.find(b - 1) {
        descend(g, k + 1, chosen, excluded, out);
        return;
    }
    // contract
    chosen.push(k);
    descend(g, k + 1, chosen, excluded, out);
    chosen.pop();
    // delete, unless that disconnects what is left
    excluded[k] = true;
    let mut rest = dsu;
    for (e, &(u, v)) in edges.iter().enumerate().skip(k + 1) {
        if !excluded[e] {
            rest.union(u - 1, v - 1);
        }
    }
    if rest.components() == 1 {
        descend(g, k + 1, chosen, excluded, out);
    }
    excluded[k] = false;
}

#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    comps: usize,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            comps: n,
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.comps -= 1;
        true
    }

    pub(crate) fn components(&self) -> usize {
        self.comps
    }
}
