//! Rearrangement distance by exhaustive search, branch and bound, and the
//! bounded search tree, with their witnesses.

use rearrange::rearrangement::exact_distance;
use rearrange::{brute_force_distance, fpt_distance, parse_tree, verify_sequence, FptOutcome};

fn main() -> rearrange::Result<()> {
    let mut args = std::env::args().skip(1);
    let t1 = parse_tree(&args.next().unwrap_or_else(|| "((d,e,f)b,(g,h)c)a;".into()))?;
    let t2 = parse_tree(&args.next().unwrap_or_else(|| "((b,e)d,(f,g,h)c)a;".into()))?;

    let oracle = brute_force_distance(&t1, &t2)?;
    let exact = exact_distance(&t1, &t2)?;
    println!("oracle: {}", oracle.distance);
    println!("exact:  {}", exact.distance);
    print!("{}", exact.witness.to_script());
    assert!(verify_sequence(&t1, &exact.witness, &t2));

    for k in 0..=exact.distance {
        match fpt_distance(&t1, &t2, k)? {
            FptOutcome::Found(r) => println!("fpt with k={k}: {}", r.distance),
            FptOutcome::ExceedsBudget { partition_size, .. } => {
                println!("fpt with k={k}: above budget ({partition_size} partition classes)")
            }
        }
    }
    Ok(())
}
