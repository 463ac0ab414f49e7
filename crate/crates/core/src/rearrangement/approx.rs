use super::{partition_size, Method, RearrangementResult};
use crate::error::Result;
use crate::linkcut::{check_comparable, linkcut_distance, linkcut_script};
use crate::ops::Permutation;
use crate::tree::LabelledTree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub result: RearrangementResult,
    /// When `t1` is binary the value is at most 4 × the optimum; otherwise
    /// no guarantee applies.
    pub t1_binary: bool,
}

/// The link-and-cut distance as an upper bound on rearrangement distance.
///
/// A binary source tree has at most two labels per family-partition class,
/// so `d_ℓ ≤ 2|𝒫|`, while `d ≥ |𝒫|/2`; together `d_ℓ ≤ 4d`.
pub fn approx_binary(t1: &LabelledTree, t2: &LabelledTree) -> Result<ApproxResult> {
    check_comparable(t1, t2)?;
    Ok(ApproxResult {
        result: RearrangementResult {
            distance: linkcut_distance(t1, t2)?,
            witness: linkcut_script(t1, t2)?,
            method: Method::Approx,
        },
        t1_binary: t1.is_binary(),
    })
}

/// `(|𝒫|, |𝒫′|)`: partition sizes before and after relabelling `t1` by `pi`.
/// The second always lies within `|𝒫| ± 2|π|`.
pub fn partition_perturbation(
    t1: &LabelledTree,
    t2: &LabelledTree,
    pi: &Permutation,
) -> Result<(usize, usize)> {
    let before = partition_size(t1, t2)?;
    let after = partition_size(&t1.apply_permutation(pi)?, t2)?;
    Ok((before, after))
}
