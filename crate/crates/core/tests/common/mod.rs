//! Independent brute-force oracles shared by the integration suites.
//!
//! Nothing here calls into the code path it is used to check.
#![allow(dead_code)]

use std::collections::BTreeSet;

use asm_perm::cnab::{self, DotGrid};
use asm_perm::{Configuration, LabeledTree, Permutation, PermutationGraph};

pub fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

pub fn graph(s: &str) -> PermutationGraph {
    PermutationGraph::new(&perm(s))
}

/// Inversion pairs `(larger, smaller)` straight from positions.
pub fn inversion_pairs(p: &Permutation) -> BTreeSet<(usize, usize)> {
    let w = p.word();
    let mut out = BTreeSet::new();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                out.insert((w[i], w[j]));
            }
        }
    }
    out
}

fn find(parent: &mut [usize], x: usize) -> usize {
    if parent[x] != x {
        let r = find(parent, parent[x]);
        parent[x] = r;
    }
    parent[x]
}

/// Connected components of `[n]` under the given edges.
pub fn components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..=n).collect();
    let mut comps = n;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            comps -= 1;
        }
    }
    comps
}

/// Spanning trees as the acyclic `(n−1)`-subsets of the edge set.
pub fn spanning_trees_by_subsets(p: &Permutation) -> BTreeSet<Vec<(usize, usize)>> {
    let n = p.len();
    let edges: Vec<(usize, usize)> = inversion_pairs(p)
        .into_iter()
        .map(|(a, b)| (b, a))
        .collect();
    let mut out = BTreeSet::new();
    let mut pick = Vec::new();
    choose(&edges, 0, n - 1, &mut pick, &mut |sel: &[(
        usize,
        usize,
    )]| {
        if components(n, sel) == 1 {
            let mut s = sel.to_vec();
            s.sort();
            out.insert(s);
        }
    });
    out
}

fn choose<T: Copy>(items: &[T], from: usize, k: usize, acc: &mut Vec<T>, f: &mut impl FnMut(&[T])) {
    if acc.len() == k {
        f(acc);
        return;
    }
    for i in from..items.len() {
        if items.len() - i < k - acc.len() {
            break;
        }
        acc.push(items[i]);
        choose(items, i + 1, k, acc, f);
        acc.pop();
    }
}

/// Every labeled tree on `[n]`, decoded from Prüfer sequences.
pub fn all_labeled_trees(n: usize) -> Vec<LabeledTree> {
    if n == 1 {
        return vec![LabeledTree::new(1, []).unwrap()];
    }
    if n == 2 {
        return vec![LabeledTree::new(2, [(1, 2)]).unwrap()];
    }
    let mut out = Vec::new();
    let total = n.pow((n - 2) as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(n - 2);
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n + 1);
            c /= n;
        }
        let mut degree = vec![1usize; n + 1];
        for &v in &seq {
            degree[v] += 1;
        }
        let mut edges = Vec::new();
        for &v in &seq {
            let leaf = (1..=n).find(|&u| degree[u] == 1).unwrap();
            edges.push((leaf, v));
            degree[leaf] -= 1;
            degree[v] -= 1;
        }
        let rest: Vec<usize> = (1..=n).filter(|&u| degree[u] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(LabeledTree::new(n, edges).unwrap());
    }
    out
}

/// Degree of `v`, counted from the inversion set.
pub fn degree(p: &Permutation, v: usize) -> usize {
    inversion_pairs(p)
        .iter()
        .filter(|&&(a, b)| a == v || b == v)
        .count()
}

fn adjacent(p: &Permutation, a: usize, b: usize) -> bool {
    let (pa, pb) = (p.position_of(a), p.position_of(b));
    (pa < pb && a > b) || (pb < pa && b > a)
}

/// Recurrence straight from the definition: the sink holds its degree, the
/// rest is stable, and some order topples every vertex exactly once starting
/// with the sink (searched exhaustively).
pub fn recurrent_by_search(p: &Permutation, c: &Configuration) -> bool {
    let n = p.len();
    let deg: Vec<usize> = (1..=n).map(|v| degree(p, v)).collect();
    let s = c.sink;
    if c.grains[s - 1] as usize != deg[s - 1] {
        return false;
    }
    if (1..=n).any(|v| v != s && c.grains[v - 1] as usize >= deg[v - 1]) {
        return false;
    }
    let mut grains: Vec<i64> = c.grains.iter().map(|&g| g as i64).collect();
    let mut done = vec![false; n];
    fire(p, &deg, &mut grains, &mut done, s);
    search(p, &deg, &mut grains, &mut done)
}

fn fire(p: &Permutation, deg: &[usize], grains: &mut [i64], done: &mut [bool], v: usize) {
    done[v - 1] = true;
    grains[v - 1] -= deg[v - 1] as i64;
    for w in 1..=p.len() {
        if adjacent(p, v, w) {
            grains[w - 1] += 1;
        }
    }
}

fn search(p: &Permutation, deg: &[usize], grains: &mut Vec<i64>, done: &mut Vec<bool>) -> bool {
    if done.iter().all(|&d| d) {
        return true;
    }
    let n = p.len();
    for v in 1..=n {
        if !done[v - 1] && grains[v - 1] >= deg[v - 1] as i64 {
            let (g0, d0) = (grains.clone(), done.clone());
            fire(p, deg, grains, done, v);
            if search(p, deg, grains, done) {
                return true;
            }
            *grains = g0;
            *done = d0;
        }
    }
    false
}

/// Recurrent configurations via the definition-level search over the stable box.
pub fn recurrent_by_definition(p: &Permutation, s: usize) -> BTreeSet<Vec<u32>> {
    let n = p.len();
    let deg: Vec<usize> = (1..=n).map(|v| degree(p, v)).collect();
    let mut out = BTreeSet::new();
    let mut grains = vec![0u32; n];
    grains[s - 1] = deg[s - 1] as u32;
    loop {
        let c = Configuration::new(s, grains.clone());
        if recurrent_by_search(p, &c) {
            out.insert(grains.clone());
        }
        let mut k = 1;
        loop {
            if k > n {
                return out;
            }
            if k != s {
                if (grains[k - 1] as usize) + 1 < deg[k - 1] {
                    grains[k - 1] += 1;
                    break;
                }
                grains[k - 1] = 0;
            }
            k += 1;
        }
    }
}

/// CMNABs by direct search: `(n−1)`-subsets of edge-yielding cells filtered by the CMNAB test.
pub fn cmnabs_by_search(p: &Permutation) -> BTreeSet<DotGrid> {
    let n = p.len();
    let leaves = cnab::leaf_grid(p);
    let cells: Vec<(usize, usize)> = (1..=n)
        .flat_map(|r| (1..=n).map(move |c| (r, c)))
        .filter(|&(r, c)| {
            let below = leaves.leaf_dots.iter().any(|&(r2, c2)| c2 == c && r2 > r);
            let right = leaves.leaf_dots.iter().any(|&(r2, c2)| r2 == r && c2 > c);
            below && right
        })
        .collect();
    let mut out = BTreeSet::new();
    let mut pick = Vec::new();
    choose(&cells, 0, n - 1, &mut pick, &mut |sel: &[(
        usize,
        usize,
    )]| {
        let mut m = leaves.clone();
        m.internal_dots = sel.iter().copied().collect();
        if cnab::is_cmnab(&m) {
            out.insert(m);
        }
    });
    out
}

/// All ordered set partitions of `[n]` whose first block is `{s}`.
pub fn ordered_partitions_from(n: usize, s: usize) -> Vec<Vec<Vec<usize>>> {
    let rest: Vec<usize> = (1..=n).filter(|&v| v != s).collect();
    let mut out = Vec::new();
    let mut acc = vec![vec![s]];
    fn go(rest: &[usize], acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        let k = rest.len();
        for mask in 1u32..(1 << k) {
            let block: Vec<usize> = (0..k)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| rest[b])
                .collect();
            let left: Vec<usize> = (0..k)
                .filter(|b| mask >> b & 1 == 0)
                .map(|b| rest[b])
                .collect();
            acc.push(block);
            go(&left, acc, out);
            acc.pop();
        }
    }
    go(&rest, &mut acc, &mut out);
    out
}

/// Compatibility of an ordered partition, checked clause by clause from the inversion set.
pub fn compatible_by_definition(p: &Permutation, s: usize, blocks: &[Vec<usize>]) -> bool {
    let inv = inversion_pairs(p);
    let related = |a: usize, b: usize| inv.contains(&(a.max(b), a.min(b)));
    if blocks.first() != Some(&vec![s]) {
        return false;
    }
    for (j, block) in blocks.iter().enumerate() {
        for (x, &a) in block.iter().enumerate() {
            if block[x + 1..].iter().any(|&b| related(a, b)) {
                return false;
            }
            if j > 0 && !blocks[j - 1].iter().any(|&b| related(a, b)) {
                return false;
            }
        }
    }
    true
}
