//! Permutation distance between isomorphic trees.
//!
//! The smallest relabelling turning `t1` into `t2` moves exactly the labels
//! an isomorphism fails to conserve, so the distance is the minimum number
//! of label mismatches over all isomorphisms. That minimum is computed
//! bottom-up over vertex pairs:
//!
//! ```text
//! D(u, v) = Δ(u, v)                                     u, v leaves
//!         = Δ(u, v) + min over child bijections m of
//!           Σ D(x, m(x))                                T1|u ≅ T2|v
//!         = ∞                                           otherwise
//! ```
//!
//! where Δ(u, v) is 0 when u and v carry the same label and 1 otherwise.
//! The inner minimum is a minimum-weight perfect matching between the
//! children, restricted to isomorphic child pairs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::iso::SubtreeIsomorphism;
use crate::matching::min_cost_assignment;
use crate::ops::Permutation;
use crate::tree::{Label, LabelledTree};

const INFINITE: u32 = u32::MAX;

/// Subtree isomorphism, mismatch costs `D(u, v)` and the optimal child
/// matchings behind them, for every vertex pair of two trees.
#[derive(Debug, Clone)]
pub struct MismatchTable {
    iso: SubtreeIsomorphism,
    labels: Vec<Label>,
    width: usize,
    cost: Vec<u32>,
    // for internal isomorphic pairs: the T2 child matched to each T1 child,
    // in the T1 child order
    matched: HashMap<(usize, usize), Vec<usize>>,
    child_lists: Vec<Vec<usize>>,
    sizes: Vec<usize>,
    roots: (usize, usize),
}

impl MismatchTable {
    pub fn compute(t1: &LabelledTree, t2: &LabelledTree) -> Result<Self> {
        if !t1.same_label_set(t2) {
            return Err(Error::LabelSetMismatch);
        }
        let iso = SubtreeIsomorphism::compute(t1, t2);
        let width = t2.len();
        let mut cost = vec![INFINITE; t1.len() * width];
        let mut matched = HashMap::new();

        let mut by_shape: HashMap<u32, Vec<usize>> = HashMap::new();
        for v in 0..t2.len() {
            by_shape.entry(iso.right_code(v)).or_default().push(v);
        }

        for u in t1.post_order() {
            let Some(partners) = by_shape.get(&iso.left_code(u)) else {
                continue;
            };
            for &v in partners {
                let delta = u32::from(u != v);
                let kids1 = t1.children_indices(u);
                if kids1.is_empty() {
                    cost[u * width + v] = delta;
                    continue;
                }
                let kids2 = t2.children_indices(v);
                // children can only be matched within the same shape class
                let mut classes: BTreeMap<u32, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
                for (pos, &x) in kids1.iter().enumerate() {
                    classes.entry(iso.left_code(x)).or_default().0.push(pos);
                }
                for &y in kids2 {
                    classes.entry(iso.right_code(y)).or_default().1.push(y);
                }
                let mut total = delta;
                let mut partner = vec![usize::MAX; kids1.len()];
                for (rows, cols) in classes.values() {
                    debug_assert_eq!(rows.len(), cols.len());
                    let weights: Vec<Vec<i64>> = rows
                        .iter()
                        .map(|&pos| {
                            cols.iter()
                                .map(|&y| i64::from(cost[kids1[pos] * width + y]))
                                .collect()
                        })
                        .collect();
                    let (class_cost, assignment) = min_cost_assignment(&weights)
                        .expect("isomorphic children always admit a perfect matching");
                    total += class_cost as u32;
                    for (r, c) in assignment.into_iter().enumerate() {
                        partner[rows[r]] = cols[c];
                    }
                }
                cost[u * width + v] = total;
                matched.insert((u, v), partner);
            }
        }
        Ok(MismatchTable {
            iso,
            labels: t1.labels().to_vec(),
            width,
            cost,
            matched,
            child_lists: (0..t1.len()).map(|u| t1.children_indices(u).to_vec()).collect(),
            sizes: t1.subtree_sizes(),
            roots: (t1.root_index(), t2.root_index()),
        })
    }

    pub fn isomorphism_table(&self) -> &SubtreeIsomorphism {
        &self.iso
    }

    /// `D(u, v)`; `None` stands for ∞ (the subtrees are not isomorphic).
    pub fn cost(&self, u: usize, v: usize) -> Option<u32> {
        let c = self.cost[u * self.width + v];
        (c != INFINITE).then_some(c)
    }

    /// `D` at the two root children: the permutation distance, if defined.
    pub fn root_cost(&self) -> Option<u32> {
        self.cost(self.roots.0, self.roots.1)
    }

    /// An optimal isomorphism from `T1|u` onto `T2|v` as (t1 vertex, t2
    /// vertex) pairs, starting with `(u, v)`.
    pub fn isomorphism(&self, u: usize, v: usize) -> Option<Vec<(usize, usize)>> {
        self.cost(u, v)?;
        let mut pairs = Vec::with_capacity(self.sizes[u]);
        let mut stack = vec![(u, v)];
        while let Some((x, y)) = stack.pop() {
            pairs.push((x, y));
            if let Some(partner) = self.matched.get(&(x, y)) {
                stack.extend(self.children_of(x).iter().copied().zip(partner.iter().copied()));
            }
        }
        Some(pairs)
    }

    fn children_of(&self, x: usize) -> &[usize] {
        &self.child_lists[x]
    }

    /// `C(u, v)`: labels kept in place by the optimal isomorphism of
    /// `T1|u` onto `T2|v`.
    pub fn conserved(&self, u: usize, v: usize) -> Option<BTreeSet<Label>> {
        Some(
            self.isomorphism(u, v)?
                .into_iter()
                .filter(|(x, y)| x == y)
                .map(|(x, _)| self.labels[x].clone())
                .collect(),
        )
    }

    /// Number of vertices in `T1|u`.
    pub fn subtree_size(&self, u: usize) -> usize {
        self.sizes[u]
    }
}

pub fn mismatch_table(t1: &LabelledTree, t2: &LabelledTree) -> Result<MismatchTable> {
    MismatchTable::compute(t1, t2)
}

/// Size of the smallest permutation turning `t1` into `t2`.
pub fn permutation_distance(t1: &LabelledTree, t2: &LabelledTree) -> Result<usize> {
    let table = MismatchTable::compute(t1, t2)?;
    table
        .root_cost()
        .map(|c| c as usize)
        .ok_or(Error::NotIsomorphic)
}

/// A smallest permutation turning `t1` into `t2`: each label of `t1` is
/// replaced by the label of its image under an optimal isomorphism.
pub fn optimal_permutation(t1: &LabelledTree, t2: &LabelledTree) -> Result<Permutation> {
    let table = MismatchTable::compute(t1, t2)?;
    let (r1, r2) = table.roots;
    let pairs = table.isomorphism(r1, r2).ok_or(Error::NotIsomorphic)?;
    let mut sigma: Vec<usize> = (0..t1.len()).collect();
    for (x, y) in pairs {
        sigma[x] = y;
    }
    Ok(Permutation::from_index_map(t1, &sigma))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> LabelledTree {
        LabelledTree::parse(s).unwrap()
    }

    fn sample() -> (LabelledTree, LabelledTree) {
        (t("((d,e,f)b,(g,h)c)a;"), t("((b,e)d,(f,g,h)c)a;"))
    }

    #[test]
    fn sample_distance() {
        let (t1, t2) = sample();
        assert_eq!(permutation_distance(&t1, &t2).unwrap(), 6);
        assert_eq!(permutation_distance(&t2, &t1).unwrap(), 6);
        let table = mismatch_table(&t1, &t2).unwrap();
        let a = t1.index_of("a").unwrap();
        assert_eq!(table.cost(a, a), Some(6));
        let d = t1.index_of("d").unwrap();
        assert_eq!(table.cost(d, d), None);
        // b's star onto c's star: e,f,g,h... only labels d,e,f vs f,g,h overlap in f
        let (b, c) = (t1.index_of("b").unwrap(), t2.index_of("c").unwrap());
        assert_eq!(table.cost(b, c), Some(3));
        assert_eq!(table.conserved(b, c).unwrap().len(), 1);
    }

    #[test]
    fn sample_permutation() {
        let (t1, t2) = sample();
        let pi = optimal_permutation(&t1, &t2).unwrap();
        assert_eq!(pi.len(), 6);
        assert!(t1.apply_permutation(&pi).unwrap().is_congruent(&t2));
        // b's subtree must land on c's and vice versa; f stays put
        assert_eq!(pi.apply(&Label::new("b").unwrap()).as_str(), "c");
        assert_eq!(pi.apply(&Label::new("c").unwrap()).as_str(), "d");
        assert_eq!(pi.apply(&Label::new("f").unwrap()).as_str(), "f");
        assert_eq!(optimal_permutation(&t1, &t2).unwrap(), pi);
    }

    #[test]
    fn identical_and_congruent() {
        let (t1, _) = sample();
        assert_eq!(permutation_distance(&t1, &t1).unwrap(), 0);
        assert!(optimal_permutation(&t1, &t1).unwrap().is_empty());
        assert!(optimal_permutation(&t("(b,c)a;"), &t("(c,b)a;")).unwrap().is_empty());
    }

    #[test]
    fn conservation_accounting() {
        let (t1, t2) = sample();
        let table = mismatch_table(&t1, &t2).unwrap();
        for u in 0..t1.len() {
            for v in 0..t2.len() {
                if let Some(c) = table.cost(u, v) {
                    let kept = table.conserved(u, v).unwrap().len();
                    assert_eq!(c as usize + kept, table.subtree_size(u));
                } else {
                    assert!(table.conserved(u, v).is_none());
                }
            }
        }
    }

    #[test]
    fn errors() {
        let (t1, _) = sample();
        assert_eq!(
            permutation_distance(&t1, &t("((b,e)d,(f,g)c,h)a;")),
            Err(Error::NotIsomorphic)
        );
        assert_eq!(
            optimal_permutation(&t1, &t("((b,e)d,(f,g)c,h)a;")),
            Err(Error::NotIsomorphic)
        );
        assert_eq!(permutation_distance(&t1, &t("(b)a;")), Err(Error::LabelSetMismatch));
    }

    #[test]
    fn root_relabelling() {
        assert_eq!(permutation_distance(&t("(b)a;"), &t("(a)b;")).unwrap(), 2);
        assert_eq!(permutation_distance(&t("((c)b)a;"), &t("((a)c)b;")).unwrap(), 3);
    }
}
