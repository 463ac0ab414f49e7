//! Smallest relabelling between two isomorphic trees.

use rearrange::{mismatch_table, optimal_permutation, parse_tree, permutation_distance};

fn main() -> rearrange::Result<()> {
    let mut args = std::env::args().skip(1);
    let t1 = parse_tree(&args.next().unwrap_or_else(|| "((d,e,f)b,(g,h)c)a;".into()))?;
    let t2 = parse_tree(&args.next().unwrap_or_else(|| "((b,e)d,(f,g,h)c)a;".into()))?;

    match permutation_distance(&t1, &t2) {
        Ok(d) => println!("permutation distance: {d}"),
        Err(e) => {
            println!("{e}");
            return Ok(());
        }
    }
    let pi = optimal_permutation(&t1, &t2)?;
    for (old, new) in pi.iter() {
        println!("  {old} -> {new}");
    }

    // labels that keep their name when each subtree of t1 is mapped onto t2
    let table = mismatch_table(&t1, &t2)?;
    let root = t1.root_index();
    let kept = table.conserved(root, t2.root_index()).unwrap_or_default();
    println!("conserved at the root: {} of {}", kept.len(), table.subtree_size(root));
    Ok(())
}
