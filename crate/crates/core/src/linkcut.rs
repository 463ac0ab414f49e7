//! Link-and-cut distance.
//!
//! A label is *active* when its parent differs between the two trees. Each
//! active label needs exactly one move and one move per active label
//! suffices, so the distance is the size of the active set. Grouping the
//! active labels by their (old parent, new parent) pair gives the family
//! partition, whose keys are the edges of the movements graph.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::ops::{LinkCutOp, Operation, OperationSequence};
use crate::tree::{Label, LabelledTree, ROOT_NAME};

/// A parent slot: either a labelled vertex or the implicit root λ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parent {
    Root,
    Label(Label),
}

impl Parent {
    fn of(tree: &LabelledTree, p: Option<usize>) -> Self {
        match p {
            Some(p) => Parent::Label(tree.label(p).clone()),
            None => Parent::Root,
        }
    }

    pub fn label(&self) -> Option<&Label> {
        match self {
            Parent::Label(l) => Some(l),
            Parent::Root => None,
        }
    }
}

impl fmt::Display for Parent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parent::Root => f.write_str(ROOT_NAME),
            Parent::Label(l) => l.fmt(f),
        }
    }
}

/// Active labels grouped by (parent in `t1`, parent in `t2`).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FamilyPartition {
    groups: BTreeMap<(Parent, Parent), BTreeSet<Label>>,
}

impl FamilyPartition {
    /// Partition of two trees over the same label set. Unlike
    /// [`family_partition`], the root children may differ; λ then shows up
    /// as a parent in some keys.
    pub fn between(t1: &LabelledTree, t2: &LabelledTree) -> Result<Self> {
        if !t1.same_label_set(t2) {
            return Err(Error::LabelSetMismatch);
        }
        let mut buckets: HashMap<(Option<usize>, Option<usize>), Vec<usize>> = HashMap::new();
        for (v, (p1, p2)) in t1.parent_slice().iter().zip(t2.parent_slice()).enumerate() {
            if p1 != p2 {
                buckets.entry((*p1, *p2)).or_default().push(v);
            }
        }
        let groups = buckets
            .into_iter()
            .map(|((p1, p2), members)| {
                (
                    (Parent::of(t1, p1), Parent::of(t2, p2)),
                    members.into_iter().map(|v| t1.label(v).clone()).collect(),
                )
            })
            .collect();
        Ok(FamilyPartition { groups })
    }

    /// Number of classes, |𝒫|.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn groups(&self) -> &BTreeMap<(Parent, Parent), BTreeSet<Label>> {
        &self.groups
    }

    pub fn get(&self, from: &Parent, to: &Parent) -> Option<&BTreeSet<Label>> {
        self.groups.get(&(from.clone(), to.clone()))
    }

    /// The union of all classes.
    pub fn active_set(&self) -> BTreeSet<Label> {
        self.groups.values().flatten().cloned().collect()
    }

    pub fn movements_graph(&self) -> MovementsGraph {
        let edges: BTreeSet<(Parent, Parent)> = self.groups.keys().cloned().collect();
        let vertices = edges
            .iter()
            .flat_map(|(u, w)| [u.clone(), w.clone()])
            .collect();
        MovementsGraph { vertices, edges }
    }
}

/// One directed edge per family-partition class.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MovementsGraph {
    pub vertices: BTreeSet<Parent>,
    pub edges: BTreeSet<(Parent, Parent)>,
}

impl MovementsGraph {
    pub fn out_degree(&self, v: &Parent) -> usize {
        self.edges.iter().filter(|(u, _)| u == v).count()
    }

    pub fn in_degree(&self, v: &Parent) -> usize {
        self.edges.iter().filter(|(_, w)| w == v).count()
    }

    /// Directed 3-cycles, each reported once starting from its smallest vertex.
    pub fn triangles(&self) -> Vec<[Parent; 3]> {
        let mut found = Vec::new();
        for (a, b) in &self.edges {
            if b <= a {
                continue;
            }
            for c in self.vertices.range(a.clone()..) {
                if c != a
                    && c != b
                    && self.edges.contains(&(b.clone(), c.clone()))
                    && self.edges.contains(&(c.clone(), a.clone()))
                {
                    found.push([a.clone(), b.clone(), c.clone()]);
                }
            }
        }
        found
    }
}

/// Checks the preconditions shared by the link-and-cut operations.
pub fn check_comparable(t1: &LabelledTree, t2: &LabelledTree) -> Result<()> {
    if !t1.same_label_set(t2) {
        return Err(Error::LabelSetMismatch);
    }
    if t1.root_index() != t2.root_index() {
        return Err(Error::RootMismatch(
            t1.root_label().to_string(),
            t2.root_label().to_string(),
        ));
    }
    Ok(())
}

pub fn active_set(t1: &LabelledTree, t2: &LabelledTree) -> Result<BTreeSet<Label>> {
    check_comparable(t1, t2)?;
    Ok(active_indices(t1, t2)
        .map(|v| t1.label(v).clone())
        .collect())
}

fn active_indices<'a>(
    t1: &'a LabelledTree,
    t2: &'a LabelledTree,
) -> impl Iterator<Item = usize> + 'a {
    t1.parent_slice()
        .iter()
        .zip(t2.parent_slice())
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(v, _)| v)
}

pub fn family_partition(t1: &LabelledTree, t2: &LabelledTree) -> Result<FamilyPartition> {
    check_comparable(t1, t2)?;
    FamilyPartition::between(t1, t2)
}

pub fn movements_graph(t1: &LabelledTree, t2: &LabelledTree) -> Result<MovementsGraph> {
    Ok(family_partition(t1, t2)?.movements_graph())
}

/// |𝒳|, in one pass over the parent arrays.
pub fn linkcut_distance(t1: &LabelledTree, t2: &LabelledTree) -> Result<usize> {
    check_comparable(t1, t2)?;
    Ok(count_active(t1.parent_slice(), t2.parent_slice()))
}

pub(crate) fn count_active(p1: &[Option<usize>], p2: &[Option<usize>]) -> usize {
    p1.iter().zip(p2).filter(|(a, b)| a != b).count()
}

/// A shortest link-and-cut script from `t1` to `t2`.
///
/// Moves are emitted in post-order of `t1` (children in lexicographic
/// order), which makes every move legal when replayed: by the time a vertex
/// is moved, everything below it in `t1` already sits under its final
/// parent, so its target cannot be its own descendant.
pub fn linkcut_script(t1: &LabelledTree, t2: &LabelledTree) -> Result<OperationSequence> {
    check_comparable(t1, t2)?;
    let p1 = t1.parent_slice();
    let p2 = t2.parent_slice();
    let mut seq = OperationSequence::default();
    for v in t1.post_order() {
        if p1[v] == p2[v] {
            continue;
        }
        // equal root children: only the root has no parent, and it is inactive
        let (Some(from), Some(to)) = (p1[v], p2[v]) else {
            unreachable!("root child is never active");
        };
        let op = LinkCutOp::from_labels(
            t1.label(v).clone(),
            t1.label(from).clone(),
            t1.label(to).clone(),
        )
        .expect("distinct vertices have distinct labels");
        seq.push(Operation::LinkCut(op));
    }
    Ok(seq)
}
