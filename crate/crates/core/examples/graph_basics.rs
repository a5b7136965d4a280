//! Build permutation graphs and classify permutations.
//!
//! cargo run --example graph_basics -- 23541

use asm_perm::{Permutation, PermutationGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let word = std::env::args().nth(1).unwrap_or_else(|| "23541".into());
    let p: Permutation = word.parse()?;
    let g = PermutationGraph::new(&p);

    println!("permutation {p}, {} inversions", p.inversion_count());
    for v in 1..=g.n() {
        println!("  {v}: {:?}", g.neighbors(v));
    }
    println!("connected: {}", g.is_connected());
    println!("threshold: {}", p.is_threshold());
    match p.single_descent_decompose() {
        Some((a1, a2)) => println!("single descent, sides {a1:?} and {a2:?}"),
        None => println!("not single-descent"),
    }

    let counts: Vec<usize> = (1..=7)
        .map(|n| Permutation::indecomposable(n).len())
        .collect();
    println!("indecomposable permutations for n = 1..7: {counts:?}");
    Ok(())
}
