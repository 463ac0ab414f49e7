//! The 4-approximation on random binary trees, against the exact value.

use rearrange::generate::{random_binary_pair, rng};
use rearrange::rearrangement::exact_distance;
use rearrange::approx_binary;

fn main() -> rearrange::Result<()> {
    let mut r = rng(2024);
    let mut worst: f64 = 1.0;
    for _ in 0..200 {
        let (t1, t2) = random_binary_pair(&mut r, 8)?;
        let approx = approx_binary(&t1, &t2)?;
        let exact = exact_distance(&t1, &t2)?.distance;
        if exact > 0 {
            worst = worst.max(approx.result.distance as f64 / exact as f64);
        }
    }
    println!("worst approximation ratio over 200 pairs of 8 labels: {worst:.2} (bound 4)");
    Ok(())
}
