//! Bounded search for rearrangement distance at most `k`.
//!
//! Every move fixes at most one class of the family partition and every
//! relabelled label touches at most two, so `d ≥ ⌈|𝒫|/2⌉` and instances
//! with `|𝒫| > 2k` are rejected up front. Otherwise single permutations of
//! at most `k` labels from a candidate set are enumerated, smallest first,
//! and each is scored in linear time.
//!
//! Only [`CandidateSet::All`] is exact. The optimum may relabel a vertex
//! outside the movements graph, and even one whose parent agrees in both
//! trees: for `(((v0,v1)v2)v6,v3,v4)v5;` and `(((v4)v5,v0)v6,v2,v3)v1;`
//! the distance is 5 and every optimal relabelling moves `v4`. The
//! smaller sets are kept for experiments.
//!
//! Two reductions keep the exact search cheap. Leaves with the same parent
//! in `t1` and the same parent in `t2` are interchangeable, so only the
//! first `k` of each such group are tried. A support `S` is skipped when
//! `|S|` plus the active labels it cannot fix already reaches the best
//! cost found; the labels it can fix are the active ones in `S` or with
//! their `t1` parent in `S`.

use std::collections::HashMap;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{witness_for, IndexedPair, Method, RearrangementResult};
use crate::error::{Error, Result};
use crate::linkcut::{FamilyPartition, Parent};
use crate::tree::LabelledTree;

/// Labels a permutation is allowed to move.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CandidateSet {
    /// Vertices of the movements graph plus both root children. At most
    /// `4k + 2` labels once `|𝒫| ≤ 2k`, but not always sufficient.
    #[serde(rename = "vg")]
    MovementGraph,
    /// The above plus the active set. Also not always sufficient.
    #[serde(rename = "x")]
    WithActive,
    /// Every label, up to interchangeable leaves. Exact.
    #[default]
    All,
}

impl FromStr for CandidateSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vg" => Ok(CandidateSet::MovementGraph),
            "x" => Ok(CandidateSet::WithActive),
            "all" => Ok(CandidateSet::All),
            other => Err(Error::Parameter(format!(
                "unknown candidate set {other:?} (expected vg, x or all)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FptOptions {
    pub candidates: CandidateSet,
    /// Worker threads for the search; 1 runs on the calling thread.
    pub threads: usize,
}

impl Default for FptOptions {
    fn default() -> Self {
        FptOptions {
            candidates: CandidateSet::default(),
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FptOutcome {
    Found(RearrangementResult),
    ExceedsBudget {
        budget: usize,
        partition_size: usize,
    },
}

impl FptOutcome {
    pub fn distance(&self) -> Option<usize> {
        match self {
            FptOutcome::Found(r) => Some(r.distance),
            FptOutcome::ExceedsBudget { .. } => None,
        }
    }
}

pub fn fpt_distance(t1: &LabelledTree, t2: &LabelledTree, k: usize) -> Result<FptOutcome> {
    fpt_distance_with(t1, t2, k, &FptOptions::default())
}

pub fn fpt_distance_with(
    t1: &LabelledTree,
    t2: &LabelledTree,
    k: usize,
    options: &FptOptions,
) -> Result<FptOutcome> {
    let partition = FamilyPartition::between(t1, t2)?;
    let exceeds = FptOutcome::ExceedsBudget {
        budget: k,
        partition_size: partition.len(),
    };
    if partition.len() > 2 * k {
        return Ok(exceeds);
    }
    let pair = IndexedPair::new(t1, t2)?;
    let candidates = candidate_indices(t1, t2, &partition, options.candidates, k);

    let search = || search(&pair, &candidates, k);
    let best = if options.threads > 1 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(options.threads)
            .build()
            .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?
            .install(search)
    } else {
        search()
    };

    match best {
        Some((distance, sigma)) if distance <= k => Ok(FptOutcome::Found(RearrangementResult {
            distance,
            witness: witness_for(t1, t2, &sigma)?,
            method: Method::Fpt,
        })),
        _ => Ok(exceeds),
    }
}

fn candidate_indices(
    t1: &LabelledTree,
    t2: &LabelledTree,
    partition: &FamilyPartition,
    set: CandidateSet,
    k: usize,
) -> Vec<usize> {
    let mut picked = vec![false; t1.len()];
    match set {
        CandidateSet::All => {
            let mut seen: HashMap<(Option<usize>, Option<usize>), usize> = HashMap::new();
            for (v, p) in picked.iter_mut().enumerate() {
                *p = if t1.is_leaf(v) && t2.is_leaf(v) {
                    let group = seen
                        .entry((t1.parent_index(v), t2.parent_index(v)))
                        .or_default();
                    *group += 1;
                    *group <= k
                } else {
                    true
                };
            }
        }
        CandidateSet::MovementGraph | CandidateSet::WithActive => {
            picked[t1.root_index()] = true;
            picked[t2.root_index()] = true;
            for v in &partition.movements_graph().vertices {
                if let Parent::Label(l) = v {
                    picked[t1.index_of(l.as_str()).expect("same label set")] = true;
                }
            }
            if set == CandidateSet::WithActive {
                for l in partition.active_set() {
                    picked[t1.index_of(l.as_str()).expect("same label set")] = true;
                }
            }
        }
    }
    (0..t1.len()).filter(|&i| picked[i]).collect()
}

/// Cheapest (cost, σ) over permutations of at most `k` candidates, ties
/// going to the first in enumeration order: by support size, then support
/// in lexicographic order, then images in lexicographic order.
fn search(pair: &IndexedPair, candidates: &[usize], k: usize) -> Option<(usize, Vec<usize>)> {
    let identity: Vec<usize> = (0..pair.n).collect();
    let mut best: Option<(usize, Vec<usize>)> = pair.cost(&identity).map(|c| (c, identity.clone()));
    let prune = Pruning::new(pair);
    for size in 2..=k.min(candidates.len()) {
        // a permutation moving `size` labels costs at least `size`
        if best.as_ref().is_some_and(|(b, _)| *b <= size) {
            break;
        }
        let bar = best.as_ref().map_or(usize::MAX, |(b, _)| *b);
        let supports: Vec<Vec<usize>> = combinations(candidates, size)
            .into_iter()
            .filter(|s| prune.lower_bound(s) < bar)
            .collect();
        let per_support = |support: &Vec<usize>| best_on_support(pair, &identity, support);
        let found: Vec<Option<(usize, Vec<usize>)>> = if rayon::current_thread_index().is_some() {
            supports.par_iter().map(per_support).collect()
        } else {
            supports.iter().map(per_support).collect()
        };
        for (cost, sigma) in found.into_iter().flatten() {
            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                best = Some((cost, sigma));
            }
        }
    }
    best
}

struct Pruning {
    active: Vec<bool>,
    active_count: usize,
    children: Vec<Vec<usize>>,
}

impl Pruning {
    fn new(pair: &IndexedPair) -> Self {
        let active: Vec<bool> = (0..pair.n).map(|i| pair.p1[i] != pair.p2[i]).collect();
        let mut children = vec![Vec::new(); pair.n];
        for (i, &p) in pair.p1.iter().enumerate() {
            if p < pair.n {
                children[p].push(i);
            }
        }
        Pruning {
            active_count: active.iter().filter(|&&a| a).count(),
            active,
            children,
        }
    }

    /// |S| plus the active labels whose parent edge no σ on `support` can
    /// repair.
    fn lower_bound(&self, support: &[usize]) -> usize {
        let mut fixable = 0;
        for &v in support {
            fixable += usize::from(self.active[v]);
            fixable += self.children[v]
                .iter()
                .filter(|&&c| self.active[c] && !support.contains(&c))
                .count();
        }
        support.len() + self.active_count - fixable
    }
}

fn best_on_support(
    pair: &IndexedPair,
    identity: &[usize],
    support: &[usize],
) -> Option<(usize, Vec<usize>)> {
    let mut sigma = identity.to_vec();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut used = vec![false; support.len()];
    derangements(support, 0, &mut used, &mut sigma, &mut |sigma| {
        if let Some(c) = pair.cost(sigma) {
            if best.as_ref().is_none_or(|(b, _)| c < *b) {
                best = Some((c, sigma.to_vec()));
            }
        }
    });
    best
}

/// Visits every σ that moves each element of `support` to a different
/// element of `support`, in lexicographic order of images.
fn derangements(
    support: &[usize],
    pos: usize,
    used: &mut [bool],
    sigma: &mut [usize],
    visit: &mut impl FnMut(&[usize]),
) {
    if pos == support.len() {
        visit(sigma);
        return;
    }
    for j in 0..support.len() {
        if j == pos || used[j] {
            continue;
        }
        used[j] = true;
        sigma[support[pos]] = support[j];
        derangements(support, pos + 1, used, sigma, visit);
        used[j] = false;
    }
    sigma[support[pos]] = support[pos];
}

fn combinations(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..size).collect();
    if size > items.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let Some(i) = (0..size).rev().find(|&i| idx[i] != i + items.len() - size) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rearrangement::verify_sequence;

    fn t(s: &str) -> LabelledTree {
        LabelledTree::parse(s).unwrap()
    }

    #[test]
    fn sample_pair() {
        let t1 = t("((d,e,f)b,(g,h)c)a;");
        let t2 = t("((b,e)d,(f,g,h)c)a;");
        let FptOutcome::Found(res) = fpt_distance(&t1, &t2, 3).unwrap() else {
            panic!("distance 3 is within budget 3");
        };
        assert_eq!(res.distance, 3);
        assert_eq!(res.method, Method::Fpt);
        assert!(verify_sequence(&t1, &res.witness, &t2));
        assert_eq!(
            fpt_distance(&t1, &t2, 2).unwrap(),
            FptOutcome::ExceedsBudget {
                budget: 2,
                partition_size: 4
            }
        );
        // |𝒫| = 4 > 2 rejects immediately
        assert_eq!(fpt_distance(&t1, &t2, 1).unwrap().distance(), None);
        assert_eq!(fpt_distance(&t1, &t1, 0).unwrap().distance(), Some(0));
    }

    #[test]
    fn root_relabelling_needs_root_candidates() {
        // the root children differ; the optimum relabels all three labels
        let t1 = t("((c)b)a;");
        let t2 = t("((a)c)b;");
        assert_eq!(fpt_distance(&t1, &t2, 3).unwrap().distance(), Some(3));
        assert_eq!(fpt_distance(&t1, &t2, 2).unwrap().distance(), None);
    }

    #[test]
    fn smaller_candidate_sets_can_miss_the_optimum() {
        let t1 = t("(((v0,v1)v2)v6,v3,v4)v5;");
        let t2 = t("(((v4)v5,v0)v6,v2,v3)v1;");
        let with = |candidates| {
            fpt_distance_with(&t1, &t2, 5, &FptOptions { candidates, threads: 1 })
                .unwrap()
                .distance()
        };
        assert_eq!(with(CandidateSet::All), Some(5));
        assert_eq!(with(CandidateSet::WithActive), None);
        assert_eq!(with(CandidateSet::MovementGraph), None);
    }

    #[test]
    fn interchangeable_leaves_are_trimmed() {
        let t1 = t("((x1,x2,x3,x4)b,c)a;");
        let partition = FamilyPartition::between(&t1, &t1).unwrap();
        let picked = candidate_indices(&t1, &t1, &partition, CandidateSet::All, 2);
        let names: Vec<&str> = picked.iter().map(|&i| t1.label(i).as_str()).collect();
        assert_eq!(names, ["a", "b", "c", "x1", "x2"]);
    }

    #[test]
    fn threads_do_not_change_the_answer() {
        let t1 = t("((d,e,f)b,(g,h)c)a;");
        let t2 = t("((b,e)d,(f,g,h)c)a;");
        for candidates in [CandidateSet::MovementGraph, CandidateSet::WithActive, CandidateSet::All] {
            let seq = fpt_distance_with(&t1, &t2, 5, &FptOptions { candidates, threads: 1 }).unwrap();
            let par = fpt_distance_with(&t1, &t2, 5, &FptOptions { candidates, threads: 4 }).unwrap();
            assert_eq!(seq, par);
            assert_eq!(seq.distance(), Some(3));
        }
    }

    #[test]
    fn enumeration_helpers() {
        assert_eq!(
            combinations(&[1, 4, 7], 2),
            vec![vec![1, 4], vec![1, 7], vec![4, 7]]
        );
        assert!(combinations(&[1], 2).is_empty());
        let mut count = 0;
        let mut sigma: Vec<usize> = (0..4).collect();
        derangements(&[0, 1, 2, 3], 0, &mut [false; 4], &mut sigma, &mut |s| {
            assert!(s.iter().enumerate().all(|(i, &x)| i != x));
            count += 1;
        });
        assert_eq!(count, 9);
        assert_eq!(sigma, vec![0, 1, 2, 3]);
        assert_eq!("x".parse::<CandidateSet>().unwrap(), CandidateSet::WithActive);
        assert!("nope".parse::<CandidateSet>().is_err());
    }
}
