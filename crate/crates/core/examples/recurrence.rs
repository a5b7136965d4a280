//! Topple, stabilize and list recurrent configurations.
//!
//! cargo run --example recurrence

use asm_perm::sandpile::{self, Configuration};
use asm_perm::{trees, PermutationGraph};

fn main() -> asm_perm::Result<()> {
    let g = PermutationGraph::new(&"3421".parse()?);
    let sink = 3;

    let c = Configuration::new(sink, vec![1, 2, 2, 1]);
    let mut cur = sandpile::topple(&g, &c, sink)?;
    println!("{c} -> topple {sink} -> {cur}");
    for v in [2, 1, 4] {
        cur = sandpile::topple(&g, &cur, v)?;
        println!("  -> topple {v} -> {cur}");
    }

    let heap = Configuration::new(sink, vec![5, 4, 0, 3]);
    println!("stabilize {heap} = {}", sandpile::stabilize(&g, &heap)?);

    let rec = sandpile::enumerate_recurrent(&g, sink)?;
    println!(
        "{} recurrent configurations (spanning trees: {})",
        rec.len(),
        trees::spanning_tree_count(&g)?
    );
    for c in &rec {
        println!(
            "  {c}  level {}  toppling {}",
            sandpile::level(&g, c),
            sandpile::canonical_toppling(&g, c)?
        );
    }
    println!(
        "level polynomial: {}",
        sandpile::level_polynomial(&g, sink)?
    );
    Ok(())
}
