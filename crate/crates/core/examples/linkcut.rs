//! Link-and-cut distance, family partition and movements graph of two trees.
//!
//! `cargo run --example linkcut -- '((d,e,f)b,(g,h)c)a;' '((b,e)d,(f,g,h)c)a;'`

use rearrange::{family_partition, linkcut_distance, linkcut_script, movements_graph, parse_tree};

fn main() -> rearrange::Result<()> {
    let mut args = std::env::args().skip(1);
    let t1 = parse_tree(&args.next().unwrap_or_else(|| "((d,e,f)b,(g,h)c)a;".into()))?;
    let t2 = parse_tree(&args.next().unwrap_or_else(|| "((b,e)d,(f,g,h)c)a;".into()))?;

    let partition = family_partition(&t1, &t2)?;
    let active: Vec<String> = partition.active_set().iter().map(|l| l.to_string()).collect();
    println!("active set: {}", active.join(" "));
    for ((from, to), group) in partition.groups() {
        let names: Vec<&str> = group.iter().map(|l| l.as_str()).collect();
        println!("  {from} -> {to}: {}", names.join(" "));
    }

    let graph = movements_graph(&t1, &t2)?;
    println!("movements graph: {} vertices, {} edges", graph.vertices.len(), graph.edges.len());

    println!("distance: {}", linkcut_distance(&t1, &t2)?);
    print!("{}", linkcut_script(&t1, &t2)?.to_script());
    Ok(())
}
