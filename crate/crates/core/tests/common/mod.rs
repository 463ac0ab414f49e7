//! Independent exhaustive oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use rearrange::LabelledTree;

/// Parent vector of `t` with labels as strings; `None` for the root child.
pub fn parent_map(t: &LabelledTree) -> HashMap<String, Option<String>> {
    t.labels()
        .iter()
        .map(|l| (l.to_string(), t.parent(l.as_str()).map(|p| p.to_string())))
        .collect()
}

fn parents(t: &LabelledTree) -> Vec<Option<usize>> {
    (0..t.len()).map(|i| t.parent_index(i)).collect()
}

fn is_descendant(p: &[Option<usize>], anc: usize, mut v: usize) -> bool {
    loop {
        if v == anc {
            return true;
        }
        match p[v] {
            Some(q) => v = q,
            None => return false,
        }
    }
}

/// Length of a shortest link-and-cut sequence, by breadth-first search over
/// parent vectors. `None` if `t2` is unreachable.
pub fn bfs_linkcut_distance(t1: &LabelledTree, t2: &LabelledTree) -> Option<usize> {
    let start = parents(t1);
    let goal = parents(t2);
    let n = start.len();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((cur, d)) = queue.pop_front() {
        if cur == goal {
            return Some(d);
        }
        for v in 0..n {
            let Some(from) = cur[v] else { continue };
            for w in 0..n {
                if w == from || is_descendant(&cur, v, w) {
                    continue;
                }
                let mut next = cur.clone();
                next[v] = Some(w);
                if seen.insert(next.clone()) {
                    queue.push_back((next, d + 1));
                }
            }
        }
    }
    None
}

/// Calls `visit` on every permutation of `0..n`.
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&sigma);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                sigma.swap(0, i);
            } else {
                sigma.swap(c[i], i);
            }
            visit(&sigma);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Smallest number of labels a relabelling must move to make `t1`
/// congruent to `t2`, trying every bijection.
pub fn exhaustive_permutation_distance(t1: &LabelledTree, t2: &LabelledTree) -> Option<usize> {
    let (p1, p2) = (parents(t1), parents(t2));
    let mut best = None;
    for_each_permutation(p1.len(), |s| {
        let ok = (0..p1.len()).all(|i| p2[s[i]] == p1[i].map(|p| s[p]));
        if ok {
            let moved = (0..s.len()).filter(|&i| s[i] != i).count();
            if best.is_none_or(|b| moved < b) {
                best = Some(moved);
            }
        }
    });
    best
}

/// Rearrangement distance by trying every relabelling and counting the
/// vertices whose parents still differ.
pub fn exhaustive_rearrangement_distance(t1: &LabelledTree, t2: &LabelledTree) -> usize {
    let (p1, p2) = (parents(t1), parents(t2));
    let mut best = usize::MAX;
    for_each_permutation(p1.len(), |s| {
        if p1.iter().position(Option::is_none).map(|r| s[r]) != p2.iter().position(Option::is_none) {
            return;
        }
        let cost = (0..s.len())
            .map(|i| usize::from(s[i] != i) + usize::from(p2[s[i]] != p1[i].map(|p| s[p])))
            .sum();
        best = best.min(cost);
    });
    best
}

/// Unlabelled isomorphism of the subtrees at `u` and `v`, by trying every
/// pairing of children.
pub fn brute_isomorphic(t1: &LabelledTree, u: usize, t2: &LabelledTree, v: usize) -> bool {
    let a = t1.children_indices(u);
    let b = t2.children_indices(v);
    if a.len() != b.len() {
        return false;
    }
    let mut found = false;
    for_each_permutation(a.len(), |s| {
        if !found && (0..a.len()).all(|i| brute_isomorphic(t1, a[i], t2, b[s[i]])) {
            found = true;
        }
    });
    found
}
