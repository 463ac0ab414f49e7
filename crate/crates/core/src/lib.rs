//! Link-and-cut, permutation and rearrangement distances between rooted
//! trees whose vertices all carry distinct labels from one shared set.
//!
//! ```
//! use rearrange::{linkcut_distance, permutation_distance, LabelledTree};
//!
//! let t1 = LabelledTree::parse("((d,e,f)b,(g,h)c)a;").unwrap();
//! let t2 = LabelledTree::parse("((b,e)d,(g,f,h)c)a;").unwrap();
//! assert_eq!(linkcut_distance(&t1, &t2).unwrap(), 4);
//! assert_eq!(permutation_distance(&t1, &t2).unwrap(), 6);
//! ```

pub mod cli;
pub mod error;
pub mod generate;
pub mod iso;
pub mod linkcut;
pub mod matching;
pub mod ops;
pub mod permutation;
pub mod rearrangement;
pub mod reduction;
pub mod tree;

pub use error::{Error, Result};
pub use iso::{subtree_isomorphism_table, SubtreeIsomorphism};
pub use linkcut::{
    active_set, family_partition, linkcut_distance, linkcut_script, movements_graph,
    FamilyPartition, MovementsGraph, Parent,
};
pub use ops::{LinkCutOp, Operation, OperationSequence, Permutation};
pub use permutation::{mismatch_table, optimal_permutation, permutation_distance, MismatchTable};
pub use rearrangement::{
    approx_binary, brute_force_distance, canonicalize_sequence, exact_distance, fpt_distance,
    sequence_size, verify_sequence, CandidateSet, FptOptions, FptOutcome, Method,
    RearrangementResult,
};
pub use reduction::{build_reduction, max_matching_bruteforce, reduction_bound, ThreeDMInstance};
pub use tree::{apply_linkcut, apply_permutation, are_congruent, parse_tree, serialize_tree, Label, LabelledTree};
