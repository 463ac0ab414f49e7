//! Seeded random pairs: how far the generated script is from optimal.

use rearrange::generate::gen_random;
use rearrange::rearrangement::exact_distance;
use rearrange::sequence_size;

fn main() -> rearrange::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    println!("seed  ops  script-size  distance");
    for i in 0..10 {
        let (t1, t2, seq) = gen_random(seed + i, 9, 1 + i as usize % 5)?;
        let d = exact_distance(&t1, &t2)?.distance;
        println!("{:>4}  {:>3}  {:>11}  {:>8}", seed + i, seq.len(), sequence_size(&seq), d);
    }
    Ok(())
}
