use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::ops::{LinkCutOp, Operation, OperationSequence, Permutation};
use crate::tree::LabelledTree;

/// A sequence with every relabelling moved to the front and composed into
/// one permutation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CanonicalSequence {
    pub permutation: Permutation,
    pub linkcuts: Vec<LinkCutOp>,
}

impl CanonicalSequence {
    /// |π| plus the number of link-and-cut moves.
    pub fn size(&self) -> usize {
        self.permutation.len() + self.linkcuts.len()
    }

    /// The leading permutation is omitted when it is the identity.
    pub fn to_sequence(&self) -> OperationSequence {
        let mut seq = OperationSequence::default();
        if !self.permutation.is_empty() {
            seq.push(self.permutation.clone());
        }
        for op in &self.linkcuts {
            seq.push(op.clone());
        }
        seq
    }
}

/// Moves permutations to the front: a move ⟨v: u→w⟩ followed by π acts like
/// π followed by ⟨π(v): π(u)→π(w)⟩. Replaying the result from any tree
/// reaches the same tree as replaying `seq`.
pub fn canonicalize_sequence(seq: &OperationSequence) -> CanonicalSequence {
    let mut permutation = Permutation::identity();
    let mut linkcuts: Vec<LinkCutOp> = Vec::new();
    for op in seq {
        match op {
            Operation::LinkCut(op) => linkcuts.push(op.clone()),
            Operation::Permute(pi) => {
                for op in &mut linkcuts {
                    *op = op.relabelled(pi);
                }
                permutation = permutation.then(pi);
            }
        }
    }
    CanonicalSequence {
        permutation,
        linkcuts,
    }
}

/// Size of a sequence: that of its canonical form.
pub fn sequence_size(seq: &OperationSequence) -> usize {
    canonicalize_sequence(seq).size()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub verified: bool,
    pub diagnostic: Option<String>,
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verified: {}", self.verified)?;
        if let Some(d) = &self.diagnostic {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

/// Replays `seq` from `t1` and compares the outcome with `t2`.
pub fn check_sequence(t1: &LabelledTree, seq: &OperationSequence, t2: &LabelledTree) -> Verification {
    let fail = |msg: String| Verification {
        verified: false,
        diagnostic: Some(msg),
    };
    match seq.replay(t1) {
        Err(Error::Replay { step, source }) => fail(format!("operation {}: {source}", step + 1)),
        Err(e) => fail(e.to_string()),
        Ok(end) if end.is_congruent(t2) => Verification {
            verified: true,
            diagnostic: None,
        },
        Ok(end) if !end.same_label_set(t2) => fail("label sets differ".into()),
        Ok(end) => fail(format!("replay ends in {end}, not the target tree")),
    }
}

pub fn verify_sequence(t1: &LabelledTree, seq: &OperationSequence, t2: &LabelledTree) -> bool {
    check_sequence(t1, seq, t2).verified
}
