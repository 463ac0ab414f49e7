//! Builds the tree pair for a small 3-dimensional matching instance and
//! compares its distance with the matching bound.

use rearrange::rearrangement::exact_distance;
use rearrange::{build_reduction, max_matching_bruteforce, movements_graph, reduction_bound, ThreeDMInstance};

fn main() -> rearrange::Result<()> {
    let text = std::env::args()
        .nth(1)
        .map(std::fs::read_to_string)
        .transpose()
        .expect("readable instance file")
        .unwrap_or_else(|| "a a'\nb\nc c'\na b c\na' b c'\n".into());
    let h = ThreeDMInstance::parse(&text)?;
    let (t1, t2) = build_reduction(&h)?;
    println!("t1: {}", t1.to_newick());
    println!("t2: {}", t2.to_newick());

    let triangles = movements_graph(&t1, &t2)?.triangles();
    println!("movements graph triangles: {}", triangles.len());

    let m = h.triples.len();
    let n = max_matching_bruteforce(&h)?;
    let d = exact_distance(&t1, &t2)?.distance;
    println!("maximum matching {n}, distance {d}, bound for n: {}", reduction_bound(m, n)?);
    if n < m {
        println!("bound for n+1: {}", reduction_bound(m, n + 1)?);
    }
    Ok(())
}
