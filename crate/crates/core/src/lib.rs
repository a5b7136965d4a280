//! The Abelian sandpile model on permutation graphs.
//!
//! A permutation `p` of `[n]` determines a graph on the values `1..=n` whose
//! edges are the inversions of `p`. This crate implements sandpile dynamics on
//! those graphs together with the combinatorial correspondences around them:
//!
//! * [`bijections`]: spanning trees ↔ recurrent configurations (with the level
//!   read off the tree), and minimal recurrent configurations ↔ compatible
//!   ordered partitions;
//! * [`activity`]: a breadth-first, tree-dependent edge order under which the
//!   level equals the external activity, and the Tutte polynomial by three routes;
//! * [`cnab`]: complete multirooted non-ambiguous binary trees as dot grids, in
//!   bijection with spanning trees, single-rooted ones matching minimal recurrents;
//! * [`cli`]: report builders behind the `asm-perm` binary.
//!
//! Every enumeration is exact and meant for small `n`; size guards reject inputs
//! that would take too long.

pub mod activity;
pub mod bijections;
pub mod cli;
pub mod cnab;
pub mod error;
pub mod permutation;
pub mod poly;
pub mod sandpile;
pub mod trees;

pub use error::{Error, Result};
pub use permutation::{Permutation, PermutationGraph};
pub use poly::{BivariatePolynomial, Polynomial};
pub use sandpile::{Configuration, OrderedPartition};
pub use trees::{LabeledTree, RootedTree};
