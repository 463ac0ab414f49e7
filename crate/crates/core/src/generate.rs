//! Seeded random trees, perturbations and tree pairs.
//!
//! Every generator takes an explicit RNG; [`rng`] gives the ChaCha stream
//! used by the CLI so a seed pins the output down across platforms.

use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ops::{LinkCutOp, Operation, OperationSequence, Permutation};
use crate::tree::LabelledTree;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `v0 .. v{n-1}`.
pub fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Uniform random recursive tree: label `i` attaches to a uniformly chosen
/// label among `labels[..i]`, so `labels[0]` is the root child.
pub fn random_recursive_tree<R: Rng + ?Sized>(rng: &mut R, labels: &[String]) -> Result<LabelledTree> {
    if labels.is_empty() {
        return Err(Error::Parameter("a tree needs at least one vertex".into()));
    }
    let pairs = labels.iter().enumerate().map(|(i, l)| {
        let parent = (i > 0).then(|| labels[rng.gen_range(0..i)].as_str());
        (l.as_str(), parent)
    });
    LabelledTree::from_parents(pairs.collect::<Vec<_>>())
}

/// Random tree in which every vertex has at most two children.
pub fn random_binary_tree<R: Rng + ?Sized>(rng: &mut R, labels: &[String]) -> Result<LabelledTree> {
    if labels.is_empty() {
        return Err(Error::Parameter("a tree needs at least one vertex".into()));
    }
    let mut open: Vec<usize> = vec![0];
    let mut degree = vec![0u8; labels.len()];
    let mut pairs: Vec<(&str, Option<&str>)> = vec![(labels[0].as_str(), None)];
    for i in 1..labels.len() {
        let slot = rng.gen_range(0..open.len());
        let p = open[slot];
        degree[p] += 1;
        if degree[p] == 2 {
            open.swap_remove(slot);
        }
        open.push(i);
        pairs.push((labels[i].as_str(), Some(labels[p].as_str())));
    }
    LabelledTree::from_parents(pairs)
}

/// A random valid link-and-cut move, or `None` when the tree has no
/// movable vertex (a single vertex or a single edge).
pub fn random_linkcut<R: Rng + ?Sized>(rng: &mut R, tree: &LabelledTree) -> Option<LinkCutOp> {
    let n = tree.len();
    let mut order: Vec<usize> = (0..n).filter(|&v| tree.parent_index(v).is_some()).collect();
    order.shuffle(rng);
    let mut inside = vec![false; n];
    for v in order {
        let from = tree.parent_index(v)?;
        let mut stack = vec![v];
        let mut subtree = Vec::new();
        while let Some(x) = stack.pop() {
            inside[x] = true;
            subtree.push(x);
            stack.extend_from_slice(tree.children_indices(x));
        }
        let to = (0..n).filter(|&w| w != from && !inside[w]).choose(rng);
        for x in subtree {
            inside[x] = false;
        }
        if let Some(to) = to {
            let op = LinkCutOp::from_labels(
                tree.label(v).clone(),
                tree.label(from).clone(),
                tree.label(to).clone(),
            );
            return Some(op.expect("distinct labels"));
        }
    }
    None
}

/// A random non-identity permutation moving between 2 and `max_support`
/// labels, or `None` if the tree has fewer than two labels.
pub fn random_permutation<R: Rng + ?Sized>(
    rng: &mut R,
    tree: &LabelledTree,
    max_support: usize,
) -> Option<Permutation> {
    let top = max_support.min(tree.len());
    if top < 2 {
        return None;
    }
    let size = rng.gen_range(2..=top);
    let support: Vec<_> = tree.labels().choose_multiple(rng, size).cloned().collect();
    // a cyclic shift of a shuffled support moves every chosen label
    let pairs = support
        .iter()
        .zip(support.iter().cycle().skip(1))
        .map(|(a, b)| (a.clone(), b.clone()));
    Some(Permutation::from_pairs(pairs).expect("a cycle is a bijection"))
}

/// Applies `ops` random operations to `t1` (about one in four a
/// relabelling) and returns the final tree with the sequence applied.
pub fn perturb<R: Rng + ?Sized>(
    rng: &mut R,
    t1: &LabelledTree,
    ops: usize,
    allow_permutations: bool,
) -> Result<(LabelledTree, OperationSequence)> {
    let mut tree = t1.clone();
    let mut seq = OperationSequence::default();
    for _ in 0..ops {
        let op: Option<Operation> = if allow_permutations && rng.gen_bool(0.25) {
            random_permutation(rng, &tree, 3).map(Operation::from)
        } else {
            random_linkcut(rng, &tree).map(Operation::from)
        };
        let Some(op) = op else { continue };
        tree = op.apply(&tree)?;
        seq.push(op);
    }
    Ok((tree, seq))
}

/// The `gen random` generator: a random recursive tree on `v0 .. v{n-1}`,
/// then `ops` random valid operations.
pub fn gen_random(seed: u64, n: usize, ops: usize) -> Result<(LabelledTree, LabelledTree, OperationSequence)> {
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    let mut rng = rng(seed);
    let t1 = random_recursive_tree(&mut rng, &default_labels(n))?;
    let (t2, seq) = perturb(&mut rng, &t1, ops, true)?;
    Ok((t1, t2, seq))
}

/// Two independent random trees over `v0 .. v{n-1}` with shuffled labels;
/// the root children may differ.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<(LabelledTree, LabelledTree)> {
    let mut labels = default_labels(n);
    labels.shuffle(rng);
    let t1 = random_recursive_tree(rng, &labels)?;
    labels.shuffle(rng);
    let t2 = random_recursive_tree(rng, &labels)?;
    Ok((t1, t2))
}

/// Two independent random trees sharing the root child.
pub fn random_pair_same_root<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
) -> Result<(LabelledTree, LabelledTree)> {
    let labels = default_labels(n);
    let order = shuffled_tail(rng, &labels);
    let t1 = random_recursive_tree(rng, &order)?;
    let order = shuffled_tail(rng, &labels);
    let t2 = random_recursive_tree(rng, &order)?;
    Ok((t1, t2))
}

/// Two random binary trees sharing the root child.
pub fn random_binary_pair<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
) -> Result<(LabelledTree, LabelledTree)> {
    let labels = default_labels(n);
    let order = shuffled_tail(rng, &labels);
    let t1 = random_binary_tree(rng, &order)?;
    let order = shuffled_tail(rng, &labels);
    let t2 = random_binary_tree(rng, &order)?;
    Ok((t1, t2))
}

/// A random tree and a uniformly random relabelling of it.
pub fn random_isomorphic_pair<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
) -> Result<(LabelledTree, LabelledTree)> {
    let mut labels = default_labels(n);
    labels.shuffle(rng);
    let t1 = random_recursive_tree(rng, &labels)?;
    let mut images = labels.clone();
    images.shuffle(rng);
    let pi = Permutation::from_pairs(labels.into_iter().zip(images))?;
    let t2 = t1.apply_permutation(&pi)?;
    Ok((t1, t2))
}

fn shuffled_tail<R: Rng + ?Sized>(rng: &mut R, labels: &[String]) -> Vec<String> {
    let mut out = labels.to_vec();
    if out.len() > 1 {
        out[1..].shuffle(rng);
    }
    out
}
