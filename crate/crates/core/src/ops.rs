//! Rearrangement operations and their text form.
//!
//! Scripts have one operation per line:
//!
//! ```text
//! perm b>d d>b
//! move f d c
//! ```
//!
//! `move CHILD FROM TO` is the link-and-cut operation ⟨CHILD: FROM→TO⟩ and
//! `perm` lists the old>new pairs of a relabelling. Blank lines and lines
//! starting with `#` are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{Label, LabelledTree};

/// ⟨child: from→to⟩: detach `child` from `from` and hang it under `to`.
///
/// Whether the move is legal depends on the tree it is applied to, so only
/// the three labels being distinct is checked here.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkCutOp {
    child: Label,
    from: Label,
    to: Label,
}

impl LinkCutOp {
    pub fn new(
        child: impl AsRef<str>,
        from: impl AsRef<str>,
        to: impl AsRef<str>,
    ) -> Result<Self> {
        Self::from_labels(
            Label::new(child.as_ref())?,
            Label::new(from.as_ref())?,
            Label::new(to.as_ref())?,
        )
    }

    pub fn from_labels(child: Label, from: Label, to: Label) -> Result<Self> {
        if child == from || child == to || from == to {
            return Err(Error::InvalidOperation(format!(
                "labels of <{child}: {from}->{to}> must be distinct"
            )));
        }
        Ok(LinkCutOp { child, from, to })
    }

    pub fn child(&self) -> &Label {
        &self.child
    }

    pub fn from(&self) -> &Label {
        &self.from
    }

    pub fn to(&self) -> &Label {
        &self.to
    }

    /// ⟨child: to→from⟩
    pub fn inverse(&self) -> Self {
        LinkCutOp {
            child: self.child.clone(),
            from: self.to.clone(),
            to: self.from.clone(),
        }
    }

    /// The same move expressed after relabelling by `pi`.
    pub fn relabelled(&self, pi: &Permutation) -> Self {
        LinkCutOp {
            child: pi.apply(&self.child).clone(),
            from: pi.apply(&self.from).clone(),
            to: pi.apply(&self.to).clone(),
        }
    }
}

impl fmt::Display for LinkCutOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "move {} {} {}", self.child, self.from, self.to)
    }
}

/// A relabelling, stored as the old→new pairs of the labels it moves.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    mapping: BTreeMap<Label, Label>,
}

impl Permutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Fixed points (`v>v`) are dropped; the remaining pairs must permute
    /// their own domain.
    pub fn from_pairs<I, L>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (L, L)>,
        L: AsRef<str>,
    {
        let mut mapping = BTreeMap::new();
        for (from, to) in pairs {
            let from = Label::new(from.as_ref())?;
            let to = Label::new(to.as_ref())?;
            if from == to {
                continue;
            }
            if let Some(prev) = mapping.insert(from.clone(), to) {
                return Err(Error::NonBijective(format!(
                    "{from} is mapped twice (first to {prev})"
                )));
            }
        }
        Self::from_map(mapping)
    }

    pub fn from_map(mapping: BTreeMap<Label, Label>) -> Result<Self> {
        let mapping: BTreeMap<Label, Label> =
            mapping.into_iter().filter(|(k, v)| k != v).collect();
        let mut image = BTreeSet::new();
        for (from, to) in &mapping {
            if !image.insert(to) {
                return Err(Error::NonBijective(format!("{to} is hit twice")));
            }
            if !mapping.contains_key(to) {
                return Err(Error::NonBijective(format!(
                    "{from} maps to {to}, but {to} is not moved"
                )));
            }
        }
        Ok(Permutation { mapping })
    }

    /// Builds the permutation sending label `i` of `tree` to label `sigma[i]`.
    pub(crate) fn from_index_map(tree: &LabelledTree, sigma: &[usize]) -> Self {
        let mapping = sigma
            .iter()
            .enumerate()
            .filter(|(i, s)| *i != **s)
            .map(|(i, &s)| (tree.label(i).clone(), tree.label(s).clone()))
            .collect();
        Permutation { mapping }
    }

    /// Number of labels moved.
    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn apply<'a>(&'a self, label: &'a Label) -> &'a Label {
        self.mapping.get(label).unwrap_or(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &Label)> {
        self.mapping.iter()
    }

    pub fn inverse(&self) -> Self {
        Permutation {
            mapping: self
                .mapping
                .iter()
                .map(|(k, v)| (v.clone(), k.clone()))
                .collect(),
        }
    }

    /// `self` followed by `next`: v ↦ next(self(v)).
    pub fn then(&self, next: &Permutation) -> Self {
        let keys: BTreeSet<&Label> = self.mapping.keys().chain(next.mapping.keys()).collect();
        let mapping = keys
            .into_iter()
            .filter_map(|k| {
                let image = next.apply(self.apply(k));
                (image != k).then(|| (k.clone(), image.clone()))
            })
            .collect();
        Permutation { mapping }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("perm")?;
        for (k, v) in &self.mapping {
            write!(f, " {k}>{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Operation {
    LinkCut(LinkCutOp),
    Permute(Permutation),
}

impl Operation {
    pub fn apply(&self, tree: &LabelledTree) -> Result<LabelledTree> {
        match self {
            Operation::LinkCut(op) => tree.apply_linkcut(op),
            Operation::Permute(pi) => tree.apply_permutation(pi),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Operation::LinkCut(op) => Operation::LinkCut(op.inverse()),
            Operation::Permute(pi) => Operation::Permute(pi.inverse()),
        }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operation::LinkCut(op) => op.fmt(f),
            Operation::Permute(pi) => pi.fmt(f),
        }
    }
}

impl From<LinkCutOp> for Operation {
    fn from(op: LinkCutOp) -> Self {
        Operation::LinkCut(op)
    }
}

impl From<Permutation> for Operation {
    fn from(pi: Permutation) -> Self {
        Operation::Permute(pi)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperationSequence {
    ops: Vec<Operation>,
}

impl OperationSequence {
    pub fn new(ops: Vec<Operation>) -> Self {
        OperationSequence { ops }
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, op: impl Into<Operation>) {
        self.ops.push(op.into());
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Operation> {
        self.ops.iter()
    }

    /// Applies every operation in order. Fails on the first invalid one,
    /// reporting its (zero-based) position.
    pub fn replay(&self, tree: &LabelledTree) -> Result<LabelledTree> {
        let mut cur = tree.clone();
        for (step, op) in self.ops.iter().enumerate() {
            cur = op.apply(&cur).map_err(|e| Error::Replay {
                step,
                source: Box::new(e),
            })?;
        }
        Ok(cur)
    }

    /// The sequence undoing `self`.
    pub fn inverse(&self) -> Self {
        OperationSequence {
            ops: self.ops.iter().rev().map(Operation::inverse).collect(),
        }
    }

    pub fn to_script(&self) -> String {
        let mut out = String::new();
        for op in &self.ops {
            out.push_str(&op.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse_script(text: &str) -> Result<Self> {
        let mut ops = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Script { line: no + 1, msg };
            let mut words = line.split_whitespace();
            match words.next() {
                Some("move") => {
                    let args: Vec<&str> = words.collect();
                    let [child, from, to] = args.as_slice() else {
                        return Err(err(format!(
                            "`move` takes CHILD FROM TO, got {} argument(s)",
                            args.len()
                        )));
                    };
                    let op = LinkCutOp::new(child, from, to).map_err(|e| err(e.to_string()))?;
                    ops.push(Operation::LinkCut(op));
                }
                Some("perm") => {
                    let pairs = words
                        .map(|w| {
                            w.split_once('>')
                                .ok_or_else(|| err(format!("expected OLD>NEW, found {w:?}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let pi = Permutation::from_pairs(pairs).map_err(|e| err(e.to_string()))?;
                    ops.push(Operation::Permute(pi));
                }
                Some(other) => return Err(err(format!("unknown operation {other:?}"))),
                None => unreachable!("blank lines are skipped"),
            }
        }
        Ok(OperationSequence { ops })
    }
}

impl FromIterator<Operation> for OperationSequence {
    fn from_iter<T: IntoIterator<Item = Operation>>(iter: T) -> Self {
        OperationSequence {
            ops: iter.into_iter().collect(),
        }
    }
}

impl IntoIterator for OperationSequence {
    type Item = Operation;
    type IntoIter = std::vec::IntoIter<Operation>;
    fn into_iter(self) -> Self::IntoIter {
        self.ops.into_iter()
    }
}

impl<'a> IntoIterator for &'a OperationSequence {
    type Item = &'a Operation;
    type IntoIter = std::slice::Iter<'a, Operation>;
    fn into_iter(self) -> Self::IntoIter {
        self.ops.iter()
    }
}

impl fmt::Display for OperationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for op in &self.ops {
            if !first {
                f.write_str("; ")?;
            }
            first = false;
            op.fmt(f)?;
        }
        Ok(())
    }
}
