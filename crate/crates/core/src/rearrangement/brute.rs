use super::{witness_for, IndexedPair, Method, RearrangementResult};
use crate::error::{Error, Result};
use crate::tree::LabelledTree;

/// Largest label set [`brute_force_distance`] accepts by default (8! orderings).
pub const DEFAULT_ORACLE_LIMIT: usize = 8;

/// Exact rearrangement distance by trying every permutation of the label set.
pub fn brute_force_distance(t1: &LabelledTree, t2: &LabelledTree) -> Result<RearrangementResult> {
    brute_force_distance_with_limit(t1, t2, DEFAULT_ORACLE_LIMIT)
}

pub fn brute_force_distance_with_limit(
    t1: &LabelledTree,
    t2: &LabelledTree,
    limit: usize,
) -> Result<RearrangementResult> {
    let pair = IndexedPair::new(t1, t2)?;
    if pair.n > limit {
        return Err(Error::SizeLimit {
            size: pair.n,
            limit,
        });
    }
    let n = pair.n;
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut consider = |sigma: &[usize]| {
        if let Some(c) = pair.cost(sigma) {
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                best = Some((c, sigma.to_vec()));
            }
        }
    };

    // Heap's algorithm, iterative form
    consider(&sigma);
    let mut counters = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                sigma.swap(0, i);
            } else {
                sigma.swap(counters[i], i);
            }
            consider(&sigma);
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }

    let (distance, sigma) = best.expect("some permutation maps root child onto root child");
    Ok(RearrangementResult {
        distance,
        witness: witness_for(t1, t2, &sigma)?,
        method: Method::Oracle,
    })
}
