//! Dot-grid model of complete (multirooted) non-ambiguous binary trees.
//!
//! Cells are `(row, col)`, 1-based, with `(1, 1)` the north-west corner. The
//! leaf dots of a permutation `p` sit at `(p_j, j)`. An internal dot at `(i, j)`
//! stands for the edge `{i, p_j}` of the permutation graph.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::activity::EdgeOrder;
use crate::error::{Error, Result};
use crate::permutation::{Permutation, PermutationGraph};
use crate::trees::{self, Dsu, LabeledTree};

pub type Cell = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DotGrid {
    pub n: usize,
    #[serde(rename = "leaves")]
    pub leaf_dots: BTreeSet<Cell>,
    #[serde(rename = "internal")]
    pub internal_dots: BTreeSet<Cell>,
}

impl DotGrid {
    pub fn dots(&self) -> BTreeSet<Cell> {
        self.leaf_dots.union(&self.internal_dots).copied().collect()
    }
}

pub fn leaf_grid(p: &Permutation) -> DotGrid {
    DotGrid {
        n: p.len(),
        leaf_dots: (1..=p.len()).map(|j| (p.at(j), j)).collect(),
        internal_dots: BTreeSet::new(),
    }
}

fn in_range(n: usize, (r, c): Cell) -> bool {
    r >= 1 && c >= 1 && r <= n && c <= n
}

fn leaves_form_permutation(m: &DotGrid) -> bool {
    let rows: BTreeSet<usize> = m.leaf_dots.iter().map(|&(r, _)| r).collect();
    let cols: BTreeSet<usize> = m.leaf_dots.iter().map(|&(_, c)| c).collect();
    m.leaf_dots.len() == m.n
        && rows.len() == m.n
        && cols.len() == m.n
        && m.leaf_dots.iter().all(|&x| in_range(m.n, x))
}

/// Permutation whose leaf dots `m` carries, if they form a permutation matrix.
pub fn leaf_permutation(m: &DotGrid) -> Option<Permutation> {
    if !leaves_form_permutation(m) {
        return None;
    }
    let mut word = vec![0; m.n];
    for &(r, c) in &m.leaf_dots {
        word[c - 1] = r;
    }
    Permutation::new(word).ok()
}

fn nearest_below(dots: &BTreeSet<Cell>, (r, c): Cell) -> Option<Cell> {
    dots.iter()
        .filter(|&&(r2, c2)| c2 == c && r2 > r)
        .min_by_key(|&&(r2, _)| r2)
        .copied()
}

fn nearest_right(dots: &BTreeSet<Cell>, (r, c): Cell) -> Option<Cell> {
    dots.range((r, c + 1)..=(r, usize::MAX)).next().copied()
}

fn has_above(dots: &BTreeSet<Cell>, (r, c): Cell) -> bool {
    dots.iter().any(|&(r2, c2)| c2 == c && r2 < r)
}

fn has_left(dots: &BTreeSet<Cell>, (r, c): Cell) -> bool {
    dots.range((r, 0)..(r, c)).next().is_some()
}

/// Checks the CMNAB conditions: a permutation leaf matrix plus `n − 1` internal
/// dots, each with a dot below and a dot to its right, whose dot-graph is a tree.
///
/// The dot-graph joins each internal dot to the nearest dot below it and to the
/// nearest dot to its right.
pub fn is_cmnab(m: &DotGrid) -> bool {
    let n = m.n;
    if n == 0 || !leaves_form_permutation(m) {
        return false;
    }
    if m.internal_dots.len() != n - 1
        || m.internal_dots
            .iter()
            .any(|&x| !in_range(n, x) || m.leaf_dots.contains(&x))
    {
        return false;
    }
    let dots: Vec<Cell> = m.dots().into_iter().collect();
    let set: BTreeSet<Cell> = dots.iter().copied().collect();
    let index = |x: Cell| dots.binary_search(&x).expect("dot present");
    let mut dsu = Dsu::new(dots.len());
    for &d in &m.internal_dots {
        let (Some(below), Some(right)) = (nearest_below(&set, d), nearest_right(&set, d)) else {
            return false;
        };
        dsu.union(index(d), index(below));
        dsu.union(index(d), index(right));
    }
    dsu.components() == 1
}

/// Non-ambiguous binary tree conditions on a `rows × cols` filling.
pub fn is_nab(rows: usize, cols: usize, dots: &BTreeSet<Cell>) -> bool {
    if rows == 0
        || cols == 0
        || dots
            .iter()
            .any(|&(r, c)| r == 0 || c == 0 || r > rows || c > cols)
    {
        return false;
    }
    let every_row = (1..=rows).all(|r| dots.iter().any(|&(r2, _)| r2 == r));
    let every_col = (1..=cols).all(|c| dots.iter().any(|&(_, c2)| c2 == c));
    if !every_row || !every_col || !dots.contains(&(1, 1)) {
        return false;
    }
    dots.iter()
        .filter(|&&d| d != (1, 1))
        .all(|&d| has_above(dots, d) != has_left(dots, d))
}

/// NAB whose binary tree is complete: each dot has a dot below and a dot to its right, or neither.
pub fn is_complete_nab(rows: usize, cols: usize, dots: &BTreeSet<Cell>) -> bool {
    is_nab(rows, cols, dots)
        && dots
            .iter()
            .all(|&d| nearest_below(dots, d).is_some() == nearest_right(dots, d).is_some())
}

pub fn is_cnab(m: &DotGrid) -> bool {
    is_complete_nab(m.n, m.n, &m.dots())
}

/// Dots with no dot above them and none to their left.
pub fn roots(m: &DotGrid) -> BTreeSet<Cell> {
    let dots = m.dots();
    dots.iter()
        .filter(|&&d| !has_above(&dots, d) && !has_left(&dots, d))
        .copied()
        .collect()
}

/// True iff some dot has both a dot above and a dot to its left.
pub fn has_blocked_dot(m: &DotGrid) -> bool {
    let dots = m.dots();
    dots.iter()
        .any(|&d| has_above(&dots, d) && has_left(&dots, d))
}

/// Spanning tree of `G_p` read off the internal dots.
pub fn zeta(m: &DotGrid, p: &Permutation) -> Result<LabeledTree> {
    if m.n != p.len() || m.leaf_dots != leaf_grid(p).leaf_dots {
        return Err(Error::InvalidGrid(format!("leaf dots do not match {p}")));
    }
    if !is_cmnab(m) {
        return Err(Error::InvalidGrid("not a CMNAB".into()));
    }
    LabeledTree::new(m.n, m.internal_dots.iter().map(|&(i, j)| (i, p.at(j))))
}

/// Cell of the internal dot standing for the edge `{a, b}`.
pub fn edge_cell(p: &Permutation, a: usize, b: usize) -> Cell {
    let (lo, hi) = (a.min(b), a.max(b));
    (lo, p.position_of(hi))
}

/// Places an internal dot at `(i, j)` for every tree edge `{i, p_j}` with `i < p_j`.
pub fn zeta_inverse(s: &LabeledTree, p: &Permutation) -> Result<DotGrid> {
    let g = PermutationGraph::new(p);
    if !s.spans(&g) {
        return Err(Error::NotSpanning(format!("tree does not span G_{p}")));
    }
    let mut m = leaf_grid(p);
    m.internal_dots = s.edges().iter().map(|&(a, b)| edge_cell(p, a, b)).collect();
    Ok(m)
}

/// Edge `{i, p_j}` for a cell with a leaf strictly below and a leaf strictly to its right.
pub fn cell_edge_correspondence(p: &Permutation, (i, j): Cell) -> Option<(usize, usize)> {
    let below = p.at(j) > i;
    let right = p.position_of(i) > j;
    (below && right).then(|| (i, p.at(j)))
}

/// All CMNABs on the leaf grid of `p`, as images of spanning trees.
pub fn enumerate_cmnabs(p: &Permutation) -> Result<Vec<DotGrid>> {
    let g = PermutationGraph::new(p);
    let mut out = trees::enumerate_spanning_trees(&g)?
        .iter()
        .map(|t| zeta_inverse(t, p))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Fixed edge order: an edge is larger the lexicographically smaller its cell `(row, col)`.
pub fn reverse_lex_order(g: &PermutationGraph) -> Result<EdgeOrder> {
    let p = g.permutation();
    let mut edges = g.edges().to_vec();
    edges.sort_by_key(|&(a, b)| std::cmp::Reverse(edge_cell(p, a, b)));
    EdgeOrder::from_sequence(g, edges)
}

/// Text picture: `o` leaf, `*` internal, `@` internal root, `O` leaf root, `.` empty.
pub fn render(m: &DotGrid) -> String {
    let r = roots(m);
    let mut out = String::new();
    for row in 1..=m.n {
        for col in 1..=m.n {
            let cell = (row, col);
            let ch = match (
                m.leaf_dots.contains(&cell),
                m.internal_dots.contains(&cell),
                r.contains(&cell),
            ) {
                (true, _, true) => 'O',
                (true, _, false) => 'o',
                (false, true, true) => '@',
                (false, true, false) => '*',
                _ => '.',
            };
            out.push(ch);
        }
        let _ = writeln!(out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn sample_grid() -> DotGrid {
        let mut m = leaf_grid(&p("465213"));
        m.internal_dots = [(1, 2), (1, 3), (2, 1), (2, 2), (3, 2)].into();
        m
    }

    #[test]
    fn leaf_grids() {
        assert_eq!(
            leaf_grid(&p("465213")).leaf_dots,
            [(4, 1), (6, 2), (5, 3), (2, 4), (1, 5), (3, 6)].into()
        );
        assert_eq!(
            leaf_grid(&p("123")).leaf_dots,
            [(1, 1), (2, 2), (3, 3)].into()
        );
    }

    #[test]
    fn six_by_six_grid_is_multirooted_cmnab() {
        let m = sample_grid();
        assert!(is_cmnab(&m));
        assert!(!is_cnab(&m));
        assert_eq!(roots(&m), [(1, 2), (2, 1)].into());
        assert!(has_blocked_dot(&m));
        let t = zeta(&m, &p("465213")).unwrap();
        assert!(t.contains_edge(2, 6));
        assert!(t.contains_edge(2, 4));
        assert_eq!(t.edges(), &[(1, 5), (1, 6), (2, 4), (2, 6), (3, 6)]);
        assert_eq!(zeta_inverse(&t, &p("465213")).unwrap(), m);
    }

    #[test]
    fn cmnab_rejections() {
        assert!(!is_cmnab(&leaf_grid(&p("21"))));
        assert!(is_cmnab(&leaf_grid(&p("1"))));
        let mut m = leaf_grid(&p("4321"));
        m.internal_dots = [(1, 1), (1, 2), (2, 1)].into();
        assert!(is_cmnab(&m));
        // a 2×2 block of internal dots closes a cycle in the dot-graph
        let mut m = leaf_grid(&p("54321"));
        m.internal_dots = [(1, 1), (1, 2), (2, 1), (2, 2)].into();
        assert!(!is_cmnab(&m));
        // a dot without a leaf to its right
        let mut m = leaf_grid(&p("4321"));
        m.internal_dots = [(1, 1), (1, 2), (1, 4)].into();
        assert!(!is_cmnab(&m));
    }

    #[test]
    fn nab_examples() {
        let left: BTreeSet<Cell> = [
            (1, 1),
            (1, 2),
            (1, 3),
            (1, 5),
            (2, 1),
            (2, 4),
            (3, 2),
            (4, 1),
            (5, 3),
        ]
        .into();
        assert!(is_complete_nab(5, 5, &left));
        let right: BTreeSet<Cell> = [
            (1, 1),
            (1, 3),
            (1, 5),
            (2, 1),
            (2, 2),
            (2, 4),
            (3, 3),
            (4, 2),
        ]
        .into();
        assert!(is_nab(4, 5, &right));
        assert!(!is_complete_nab(4, 5, &right));
        let single = DotGrid {
            n: 1,
            leaf_dots: [(1, 1)].into(),
            internal_dots: BTreeSet::new(),
        };
        assert!(is_cnab(&single));
    }

    #[test]
    fn cells_and_edges() {
        let q = p("465213");
        assert_eq!(cell_edge_correspondence(&q, (2, 1)), Some((2, 4)));
        assert_eq!(cell_edge_correspondence(&q, (4, 1)), None);
        assert_eq!(cell_edge_correspondence(&q, (6, 6)), None);
        assert_eq!(edge_cell(&q, 4, 2), (2, 1));
    }

    #[test]
    fn two_vertex_case() {
        let q = p("21");
        let all = enumerate_cmnabs(&q).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].internal_dots, [(1, 1)].into());
        assert_eq!(zeta(&all[0], &q).unwrap().edges(), &[(1, 2)]);
        let g = PermutationGraph::new(&q);
        assert_eq!(reverse_lex_order(&g).unwrap().ranks(), &[1]);
    }

    #[test]
    fn rendering() {
        let text = render(&sample_grid());
        assert_eq!(text.lines().next().unwrap(), ".@*.o.");
        assert_eq!(text.lines().nth(1).unwrap(), "@*.o..");
    }
}
