//! Rearrangement distance: the smallest size of a mixed sequence of
//! relabellings and link-and-cut moves.
//!
//! Any sequence can be rewritten with a single permutation first, so the
//! distance is `min over π of |π| + d_ℓ(π(t1), t2)`, where `d_ℓ` is ∞ when
//! the root children still differ after relabelling. The solvers here
//! differ only in which permutations they look at:
//!
//! * [`brute_force_distance`]: every permutation of the label set.
//! * [`fpt_distance`]: permutations of at most `k` labels drawn from a
//!   candidate set bounded by the family partition.
//! * [`exact_distance`]: branch and bound over vertex bijections.
//! * [`approx_binary`]: no relabelling at all; within a factor 4 when the
//!   source tree is binary.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linkcut::{linkcut_script, FamilyPartition};
use crate::ops::{Operation, OperationSequence, Permutation};
use crate::tree::LabelledTree;

mod approx;
mod brute;
mod exact;
mod fpt;
mod sequence;

pub use approx::{approx_binary, partition_perturbation, ApproxResult};
pub use brute::{brute_force_distance, brute_force_distance_with_limit, DEFAULT_ORACLE_LIMIT};
pub use exact::{exact_distance, exact_distance_with_limit, DEFAULT_EXACT_LIMIT};
pub use fpt::{fpt_distance, fpt_distance_with, CandidateSet, FptOptions, FptOutcome};
pub use sequence::{
    canonicalize_sequence, check_sequence, sequence_size, verify_sequence, CanonicalSequence,
    Verification,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Oracle,
    Fpt,
    Exact,
    Approx,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Oracle => "oracle",
            Method::Fpt => "fpt",
            Method::Exact => "exact",
            Method::Approx => "approx",
        })
    }
}

/// A distance value with a canonical witness: at most one permutation,
/// followed by link-and-cut moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RearrangementResult {
    pub distance: usize,
    pub witness: OperationSequence,
    pub method: Method,
}

impl RearrangementResult {
    /// The relabelling at the head of the witness (identity if none).
    pub fn permutation(&self) -> Permutation {
        match self.witness.ops().first() {
            Some(Operation::Permute(pi)) => pi.clone(),
            _ => Permutation::identity(),
        }
    }
}

/// Parent arrays of two trees over one label set, with λ encoded as `n`.
pub(crate) struct IndexedPair {
    pub n: usize,
    pub p1: Vec<usize>,
    pub p2: Vec<usize>,
    pub root1: usize,
    pub root2: usize,
}

impl IndexedPair {
    pub fn new(t1: &LabelledTree, t2: &LabelledTree) -> Result<Self> {
        if !t1.same_label_set(t2) {
            return Err(Error::LabelSetMismatch);
        }
        let n = t1.len();
        let flat = |t: &LabelledTree| -> Vec<usize> {
            t.parent_slice().iter().map(|p| p.unwrap_or(n)).collect()
        };
        Ok(IndexedPair {
            n,
            p1: flat(t1),
            p2: flat(t2),
            root1: t1.root_index(),
            root2: t2.root_index(),
        })
    }

    /// |σ| + d_ℓ(σ(t1), t2), or `None` when σ leaves the root children
    /// different. `sigma` maps label index i to label index sigma[i].
    #[inline]
    pub fn cost(&self, sigma: &[usize]) -> Option<usize> {
        if sigma[self.root1] != self.root2 {
            return None;
        }
        let mut total = 0;
        for (i, &s) in sigma.iter().enumerate() {
            total += usize::from(s != i);
            let parent = self.p1[i];
            let moved_parent = if parent == self.n { parent } else { sigma[parent] };
            total += usize::from(moved_parent != self.p2[s]);
        }
        Some(total)
    }
}

/// Canonical witness for relabelling by `sigma` and then moving.
pub(crate) fn witness_for(
    t1: &LabelledTree,
    t2: &LabelledTree,
    sigma: &[usize],
) -> Result<OperationSequence> {
    let pi = Permutation::from_index_map(t1, sigma);
    let relabelled = t1.relabel(sigma);
    let mut seq = OperationSequence::default();
    if !pi.is_empty() {
        seq.push(pi);
    }
    for op in linkcut_script(&relabelled, t2)? {
        seq.push(op);
    }
    Ok(seq)
}

/// |𝒫| for two trees over one label set; the root children may differ.
pub fn partition_size(t1: &LabelledTree, t2: &LabelledTree) -> Result<usize> {
    Ok(FamilyPartition::between(t1, t2)?.len())
}
