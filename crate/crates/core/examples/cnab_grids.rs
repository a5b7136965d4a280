//! Dot grids for multirooted non-ambiguous binary trees.
//!
//! cargo run --example cnab_grids -- 465213

use asm_perm::{activity, cnab, Permutation, PermutationGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let word = std::env::args().nth(1).unwrap_or_else(|| "465213".into());
    let p: Permutation = word.parse()?;
    let g = PermutationGraph::new(&p);
    let order = cnab::reverse_lex_order(&g)?;

    let grids = cnab::enumerate_cmnabs(&p)?;
    let single: Vec<_> = grids.iter().filter(|m| cnab::roots(m).len() == 1).collect();
    println!("{} grids, {} with a single root", grids.len(), single.len());

    for m in grids.iter().take(3) {
        let tree = cnab::zeta(m, &p)?;
        println!(
            "\n{}roots {:?}, complete {}, tree {:?}, ext {}",
            cnab::render(m),
            cnab::roots(m),
            cnab::is_cnab(m),
            tree.edges(),
            activity::external_activity(&g, &tree, &order)
        );
    }
    Ok(())
}
