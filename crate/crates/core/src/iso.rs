//! Subtree isomorphism between two trees, for every vertex pair at once.
//!
//! Both trees are swept level by level from the deepest level upward. A
//! vertex's shape code is the sorted list of its children's codes, interned
//! to a small integer in a table shared by both trees, so `T1|u ≅ T2|v`
//! (as unlabelled rooted trees) iff the two codes are equal.

use std::collections::HashMap;

use crate::tree::LabelledTree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeIsomorphism {
    left: Vec<u32>,
    right: Vec<u32>,
    left_root: usize,
    right_root: usize,
    classes: usize,
}

impl SubtreeIsomorphism {
    pub fn compute(t1: &LabelledTree, t2: &LabelledTree) -> Self {
        let levels1 = levels(t1);
        let levels2 = levels(t2);
        let mut left = vec![0u32; t1.len()];
        let mut right = vec![0u32; t2.len()];
        let mut interner: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut key = Vec::new();
        for depth in (0..levels1.len().max(levels2.len())).rev() {
            for (tree, level, codes) in [
                (t1, levels1.get(depth), &mut left),
                (t2, levels2.get(depth), &mut right),
            ] {
                for &v in level.into_iter().flatten() {
                    key.clear();
                    key.extend(tree.children_indices(v).iter().map(|&c| codes[c]));
                    key.sort_unstable();
                    let next = interner.len() as u32;
                    codes[v] = match interner.get(key.as_slice()) {
                        Some(&code) => code,
                        None => {
                            interner.insert(key.clone(), next);
                            next
                        }
                    };
                }
            }
        }
        SubtreeIsomorphism {
            left,
            right,
            left_root: t1.root_index(),
            right_root: t2.root_index(),
            classes: interner.len(),
        }
    }

    /// `T1|u ≅ T2|v`, by vertex index.
    pub fn is_isomorphic(&self, u: usize, v: usize) -> bool {
        self.left[u] == self.right[v]
    }

    /// Whether the whole trees are isomorphic as rooted trees.
    pub fn trees_isomorphic(&self) -> bool {
        self.is_isomorphic(self.left_root, self.right_root)
    }

    pub fn left_code(&self, u: usize) -> u32 {
        self.left[u]
    }

    pub fn right_code(&self, v: usize) -> u32 {
        self.right[v]
    }

    /// Number of distinct subtree shapes across both trees.
    pub fn shape_count(&self) -> usize {
        self.classes
    }

    /// Dense boolean table, rows indexed by `t1` vertices.
    pub fn to_matrix(&self) -> Vec<Vec<bool>> {
        self.left
            .iter()
            .map(|&a| self.right.iter().map(|&b| a == b).collect())
            .collect()
    }
}

fn levels(tree: &LabelledTree) -> Vec<Vec<usize>> {
    let mut levels: Vec<Vec<usize>> = Vec::new();
    for (v, d) in tree.depths().into_iter().enumerate() {
        if levels.len() <= d {
            levels.resize_with(d + 1, Vec::new);
        }
        levels[d].push(v);
    }
    levels
}

pub fn subtree_isomorphism_table(t1: &LabelledTree, t2: &LabelledTree) -> SubtreeIsomorphism {
    SubtreeIsomorphism::compute(t1, t2)
}
