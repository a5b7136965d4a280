//! Minimal recurrent configurations and compatible ordered partitions.
//!
//! cargo run --example minimal_partitions

use asm_perm::{bijections, sandpile, PermutationGraph};

fn main() -> asm_perm::Result<()> {
    let p = "25341".parse()?;
    let g = PermutationGraph::new(&p);
    let sink = 3;

    for part in bijections::compatible_partitions(&p, sink) {
        let c = bijections::partition_to_minrec(&g, &part)?;
        let tree = bijections::tree_from_partition(&g, &part)?;
        println!("{:<12} {c}  parents {:?}", part.to_string(), tree.parents());
        assert_eq!(bijections::minrec_to_partition(&g, &c)?, part);
    }
    let minrec = sandpile::enumerate_minimal_recurrent(&g, sink)?;
    println!("{} minimal recurrent configurations", minrec.len());
    Ok(())
}
