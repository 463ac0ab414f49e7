//! Exact rearrangement distance by branch and bound.
//!
//! Relabelling `t1` by π and then moving is the same as choosing a
//! bijection f from the vertices of `t1` onto those of `t2` (u ↦ the `t2`
//! vertex carrying π(label u)). Its cost is
//!
//! ```text
//! Σ_u [label(u) ≠ label(f(u))] + Σ_u [f(parent₁(u)) ≠ parent₂(f(u))]
//! ```
//!
//! with f(λ) = λ and f(root child) forced onto the other root child. The
//! search fixes f on internal vertices of `t1` top-down; both terms of a
//! vertex are known as soon as the vertex and its parent are placed. Once
//! only leaves remain, each leaf's cost depends on its own image alone, so
//! the rest is a plain assignment problem solved exactly.
//!
//! The bound at each node is a minimum-cost assignment of the unplaced
//! vertices in which a vertex whose parent is still unplaced is charged
//! nothing itself; its parent is instead charged one for every child that
//! cannot stay put under the parent's proposed image.

use super::{witness_for, IndexedPair, Method, RearrangementResult};
use crate::error::{Error, Result};
use crate::matching::min_cost_assignment;
use crate::tree::LabelledTree;

/// Largest label set [`exact_distance`] accepts by default.
pub const DEFAULT_EXACT_LIMIT: usize = 40;

pub fn exact_distance(t1: &LabelledTree, t2: &LabelledTree) -> Result<RearrangementResult> {
    exact_distance_with_limit(t1, t2, DEFAULT_EXACT_LIMIT)
}

pub fn exact_distance_with_limit(
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
    let mut order: Vec<usize> = Vec::with_capacity(pair.n);
    let mut leaves = Vec::new();
    // breadth-first, so parents come before children
    let mut queue = std::collections::VecDeque::from([t1.root_index()]);
    while let Some(v) = queue.pop_front() {
        let kids = t1.children_indices(v);
        if kids.is_empty() && v != t1.root_index() {
            leaves.push(v);
        } else {
            order.push(v);
        }
        queue.extend(kids.iter().copied());
    }
    let internal = order.len();
    order.extend(leaves);

    let children: Vec<Vec<usize>> = (0..pair.n).map(|v| t1.children_indices(v).to_vec()).collect();
    let identity: Vec<usize> = (0..pair.n).collect();
    let mut search = Search {
        pair: &pair,
        children,
        order,
        internal,
        image: vec![UNSET; pair.n],
        taken: vec![false; pair.n],
        best: pair.cost(&identity).unwrap_or(usize::MAX),
        best_image: pair.cost(&identity).map(|_| identity.clone()),
    };
    search.run(0, 0);

    let sigma = search
        .best_image
        .expect("the search always completes some bijection");
    let distance = pair.cost(&sigma).expect("root children are matched");
    debug_assert_eq!(distance, search.best);
    Ok(RearrangementResult {
        distance,
        witness: witness_for(t1, t2, &sigma)?,
        method: Method::Exact,
    })
}

const UNSET: usize = usize::MAX;

struct Search<'a> {
    pair: &'a IndexedPair,
    children: Vec<Vec<usize>>,
    order: Vec<usize>,
    internal: usize,
    image: Vec<usize>,
    taken: Vec<bool>,
    best: usize,
    best_image: Option<Vec<usize>>,
}

impl Search<'_> {
    fn parent_image(&self, u: usize) -> usize {
        let p = self.pair.p1[u];
        if p == self.pair.n {
            p
        } else {
            self.image[p]
        }
    }

    /// Both terms of `u` when mapped to `y`; the parent must be placed.
    fn own_cost(&self, u: usize, y: usize) -> usize {
        usize::from(u != y) + usize::from(self.parent_image(u) != self.pair.p2[y])
    }

    fn bound_cost(&self, w: usize, y: usize) -> usize {
        let mut c = if self.parent_image(w) != UNSET {
            self.own_cost(w, y)
        } else {
            0
        };
        for &x in &self.children[w] {
            if self.taken[x] || self.pair.p2[x] != y {
                c += 1;
            }
        }
        c
    }

    fn free_targets(&self) -> Vec<usize> {
        (0..self.pair.n).filter(|&y| !self.taken[y]).collect()
    }

    fn run(&mut self, depth: usize, spent: usize) {
        let rest = &self.order[depth..];
        let free = self.free_targets();
        if depth >= self.internal {
            self.finish_leaves(depth, spent, &free);
            return;
        }

        // cheap bound first, then the assignment bound
        let cheap: usize = rest
            .iter()
            .map(|&w| free.iter().map(|&y| self.bound_cost(w, y)).min().unwrap_or(0))
            .sum();
        if spent + cheap >= self.best {
            return;
        }
        let matrix: Vec<Vec<i64>> = rest
            .iter()
            .map(|&w| free.iter().map(|&y| self.bound_cost(w, y) as i64).collect())
            .collect();
        let (bound, _) = min_cost_assignment(&matrix).expect("complete cost matrix");
        if spent + bound as usize >= self.best {
            return;
        }

        let u = self.order[depth];
        let mut options: Vec<(usize, usize)> = if depth == 0 {
            vec![(self.own_cost(u, self.pair.root2), self.pair.root2)]
        } else {
            free.iter()
                .filter(|&&y| y != self.pair.root2)
                .map(|&y| (self.own_cost(u, y) + self.bound_cost(u, y), y))
                .collect()
        };
        options.sort_by_key(|&(c, y)| (c, y != u, y));
        for (_, y) in options {
            let step = self.own_cost(u, y);
            if spent + step >= self.best {
                continue;
            }
            self.image[u] = y;
            self.taken[y] = true;
            self.run(depth + 1, spent + step);
            self.taken[y] = false;
            self.image[u] = UNSET;
        }
    }

    fn finish_leaves(&mut self, depth: usize, spent: usize, free: &[usize]) {
        let leaves = &self.order[depth..];
        let matrix: Vec<Vec<i64>> = leaves
            .iter()
            .map(|&w| free.iter().map(|&y| self.own_cost(w, y) as i64).collect())
            .collect();
        let (cost, assignment) = min_cost_assignment(&matrix).expect("complete cost matrix");
        let total = spent + cost as usize;
        if total < self.best {
            let mut image = self.image.clone();
            for (row, col) in assignment.into_iter().enumerate() {
                image[leaves[row]] = free[col];
            }
            self.best = total;
            self.best_image = Some(image);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rearrangement::{brute_force_distance, sequence_size, verify_sequence};

    fn t(s: &str) -> LabelledTree {
        LabelledTree::parse(s).unwrap()
    }

    #[test]
    fn sample_pair() {
        let t1 = t("((d,e,f)b,(g,h)c)a;");
        let t2 = t("((b,e)d,(f,g,h)c)a;");
        let res = exact_distance(&t1, &t2).unwrap();
        assert_eq!(res.distance, 3);
        assert_eq!(res.method, Method::Exact);
        assert!(verify_sequence(&t1, &res.witness, &t2));
        assert_eq!(sequence_size(&res.witness), 3);
    }

    #[test]
    fn agrees_with_oracle_on_small_cases() {
        let cases = [
            ("x;", "x;"),
            ("(b)a;", "(a)b;"),
            ("((c)b)a;", "((a)c)b;"),
            ("((d,e)b,(f,g)c)a;", "((f,g)b,(d,e)c)a;"),
            ("(((d)c)b)a;", "(b,c,d)a;"),
            ("(b,c,d)a;", "(((d)c)b)a;"),
        ];
        for (a, b) in cases {
            let (t1, t2) = (t(a), t(b));
            let exact = exact_distance(&t1, &t2).unwrap();
            assert_eq!(exact.distance, brute_force_distance(&t1, &t2).unwrap().distance, "{a} {b}");
            assert!(verify_sequence(&t1, &exact.witness, &t2));
        }
    }

    #[test]
    fn guards() {
        assert_eq!(
            exact_distance_with_limit(&t("(b,c)a;"), &t("(b,c)a;"), 2),
            Err(Error::SizeLimit { size: 3, limit: 2 })
        );
    }
}
