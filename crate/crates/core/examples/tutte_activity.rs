//! Edge orders, activities and the Tutte polynomial.
//!
//! cargo run --example tutte_activity -- 3421

use asm_perm::{activity, sandpile, trees, Permutation, PermutationGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let word = std::env::args().nth(1).unwrap_or_else(|| "3421".into());
    let p: Permutation = word.parse()?;
    let g = PermutationGraph::new(&p);
    let sink = 1;

    println!("tree  (int, ext)  under the breadth-first order");
    for t in trees::enumerate_spanning_trees(&g)? {
        let rt = trees::root_at(&t, sink)?;
        let ord = activity::bfs_edge_order(&g, &rt)?;
        println!(
            "  {:?}  ({}, {})",
            t.edges(),
            activity::internal_activity(&g, &t, &ord),
            activity::external_activity(&g, &t, &ord)
        );
    }

    let t = activity::tutte_deletion_contraction(&g)?;
    println!("T(x,y) by deletion-contraction: {t}");
    println!(
        "T(x,y) by subset expansion:     {}",
        activity::tutte_subset_expansion(&g)?
    );
    println!(
        "T(x,y) by activities:           {}",
        activity::tutte_via_activities(&g, sink)?
    );
    println!(
        "T(1,x) = {}   level polynomial = {}",
        t.at_x_one(),
        sandpile::level_polynomial(&g, sink)?
    );
    Ok(())
}
