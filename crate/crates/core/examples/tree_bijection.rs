//! Spanning trees to recurrent configurations and back.
//!
//! cargo run --example tree_bijection

use asm_perm::trees::{self, LabeledTree};
use asm_perm::{bijections, sandpile, PermutationGraph};

fn main() -> asm_perm::Result<()> {
    let g = PermutationGraph::new(&"514362".parse()?);
    let tree = LabeledTree::new(6, [(3, 2), (3, 5), (2, 6), (5, 1), (5, 4)])?;
    let rt = trees::root_at(&tree, 3)?;

    let w = bijections::tree_weights(&g, &rt)?;
    println!(
        "lambda {:?}\nmu     {:?}\nnu     {:?}",
        w.lambda, w.mu, w.nu
    );
    let c = bijections::tree_to_config(&g, &rt)?;
    println!(
        "image {c}, level {} (from weights {})",
        sandpile::level(&g, &c),
        bijections::level_via_weights(&w)?
    );
    println!("tree layers {:?}", rt.levels());
    println!("toppling    {}", sandpile::canonical_toppling(&g, &c)?);
    assert_eq!(bijections::config_to_tree(&g, &c)?, rt);
    println!("inverse recovers the tree");

    let all = bijections::recurrent_via_trees(&g, 3)?;
    println!(
        "{} recurrent configurations reached through trees",
        all.len()
    );
    Ok(())
}
