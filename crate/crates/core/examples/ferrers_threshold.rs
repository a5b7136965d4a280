//! The single-descent and threshold special cases.
//!
//! cargo run --example ferrers_threshold

use asm_perm::{activity, bijections, sandpile, trees, PermutationGraph};

fn main() -> asm_perm::Result<()> {
    let p = "2467135".parse()?;
    let g = PermutationGraph::new(&p);
    let (a1, a2) = p.single_descent_decompose().expect("single descent");
    println!("{p}: sides {a1:?} / {a2:?}");
    let sink = 1;
    for t in trees::enumerate_spanning_trees(&g)?.iter().take(5) {
        let rt = trees::root_at(t, sink)?;
        let f = bijections::ferrers_weights(&g, &rt)?;
        let c = bijections::ferrers_tree_to_config(&g, &rt)?;
        println!(
            "  {:?} -> {c}  level {} = sum nu {}",
            t.edges(),
            sandpile::level(&g, &c),
            f.nu.iter().sum::<u32>()
        );
    }

    let q = "86521347".parse()?;
    let h = PermutationGraph::new(&q);
    println!("\n{q} is threshold: {}", q.is_threshold());
    for s in [1, 8] {
        println!(
            "  sink {s}: level {}  inversions {}",
            sandpile::level_polynomial(&h, s)?,
            activity::threshold_inversion_polynomial(&h, s)?
        );
    }
    Ok(())
}
