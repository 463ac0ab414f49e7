//! Fully labelled rooted trees.
//!
//! Every vertex carries a unique [`Label`]. The root sentinel λ is implicit:
//! exactly one vertex (the *root child*) has no parent. Children are
//! unordered; internally vertices are indexed by the lexicographic rank of
//! their label, so two trees over the same label set share an index space
//! and every child list comes out sorted for free.
//!
//! The text format is Newick with a mandatory label on every node and no
//! branch lengths, e.g. `((d,e,f)b,(g,h)c)a;`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ops::{LinkCutOp, Permutation};

/// Printed in place of a label when the parent is the implicit root.
pub const ROOT_NAME: &str = "λ";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Label(String);

impl Label {
    pub fn new(value: impl Into<String>) -> Result<Self> {
        let value = value.into();
        if value.is_empty() || !value.chars().all(is_label_char) {
            return Err(Error::InvalidLabel(value));
        }
        Ok(Label(value))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

fn is_label_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '(' | ')' | ',' | ';')
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Label {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl std::borrow::Borrow<str> for Label {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Label {
    type Error = Error;
    fn try_from(value: String) -> Result<Self> {
        Label::new(value)
    }
}

impl TryFrom<&str> for Label {
    type Error = Error;
    fn try_from(value: &str) -> Result<Self> {
        Label::new(value)
    }
}

impl From<Label> for String {
    fn from(label: Label) -> String {
        label.0
    }
}

/// A rooted tree whose vertices are in one-to-one correspondence with a set
/// of labels. Immutable: every operation returns a new tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledTree {
    set: Arc<LabelSet>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

/// Sorted labels, shared by every tree derived from the same parse.
#[derive(Debug)]
struct LabelSet {
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    /// The labels joined by `,`, which no label contains.
    joined: String,
}

impl PartialEq for LabelSet {
    fn eq(&self, other: &Self) -> bool {
        self.joined == other.joined
    }
}

impl Eq for LabelSet {}

impl LabelledTree {
    /// Builds a tree from `(child, parent)` pairs; `None` marks the root child.
    pub fn from_parents<I, L>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (L, Option<L>)>,
        L: AsRef<str>,
    {
        let pairs: Vec<(Label, Option<Label>)> = pairs
            .into_iter()
            .map(|(c, p)| {
                Ok((
                    Label::new(c.as_ref())?,
                    p.map(|p| Label::new(p.as_ref())).transpose()?,
                ))
            })
            .collect::<Result<_>>()?;

        let mut labels: Vec<Label> = pairs.iter().map(|(c, _)| c.clone()).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].to_string()));
        }
        let index: HashMap<Label, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let mut parent = vec![None; labels.len()];
        for (child, p) in &pairs {
            let c = index[child];
            parent[c] = match p {
                None => None,
                Some(p) => Some(
                    *index
                        .get(p)
                        .ok_or_else(|| Error::UnknownLabel(p.to_string()))?,
                ),
            };
        }
        Self::from_indexed(labels, index, parent)
    }

    /// `labels` must be sorted and unique; `parent` is indexed like `labels`.
    pub(crate) fn from_indexed(
        labels: Vec<Label>,
        index: HashMap<Label, usize>,
        parent: Vec<Option<usize>>,
    ) -> Result<Self> {
        debug_assert_eq!(labels.len(), parent.len());
        let roots: Vec<usize> = (0..parent.len()).filter(|&i| parent[i].is_none()).collect();
        let root = match roots.as_slice() {
            [r] => *r,
            [] => return Err(Error::MalformedTree("no root child".into())),
            _ => {
                return Err(Error::MalformedTree(format!(
                    "{} vertices hang from the root",
                    roots.len()
                )))
            }
        };
        let tree = Self::assemble(labels, index, parent, root);
        let reached = tree.pre_order().len();
        if reached != tree.len() {
            return Err(Error::MalformedTree(format!(
                "parent relation has a cycle ({} of {} vertices reachable)",
                reached,
                tree.len()
            )));
        }
        Ok(tree)
    }

    fn assemble(
        labels: Vec<Label>,
        index: HashMap<Label, usize>,
        parent: Vec<Option<usize>>,
        root: usize,
    ) -> Self {
        let joined = labels
            .iter()
            .map(Label::as_str)
            .collect::<Vec<_>>()
            .join(",");
        let set = Arc::new(LabelSet {
            labels,
            index,
            joined,
        });
        Self::assemble_shared(set, parent, root)
    }

    fn assemble_shared(set: Arc<LabelSet>, parent: Vec<Option<usize>>, root: usize) -> Self {
        let mut children = vec![Vec::new(); parent.len()];
        // increasing child index keeps every list sorted
        for (c, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(c);
            }
        }
        LabelledTree {
            set,
            parent,
            children,
            root,
        }
    }

    /// Same label set and index space as `self`, different parent array.
    /// The caller guarantees that `parent` describes a tree.
    pub(crate) fn with_parents(&self, parent: Vec<Option<usize>>) -> Self {
        let root = parent
            .iter()
            .position(Option::is_none)
            .expect("parent array without a root child");
        Self::assemble_shared(Arc::clone(&self.set), parent, root)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Parser::new(text).parse()
    }

    /// Newick text in which the children of every vertex appear in
    /// lexicographic order of their own Newick text, so the output only
    /// depends on the tree.
    pub fn to_newick(&self) -> String {
        let order = self.serial_order();
        let mut bytes: Vec<u8> = NewickBytes::new(self, &order, self.root).collect();
        bytes.push(b';');
        String::from_utf8(bytes).expect("labels are UTF-8")
    }

    /// Children of each vertex sorted by the Newick text of their subtrees.
    fn serial_order(&self) -> Vec<Vec<usize>> {
        let mut order = self.children.clone();
        for v in self.post_order() {
            if order[v].len() < 2 {
                continue;
            }
            let mut kids = std::mem::take(&mut order[v]);
            kids.sort_by(|&x, &y| {
                NewickBytes::new(self, &order, x).cmp(NewickBytes::new(self, &order, y))
            });
            order[v] = kids;
        }
        order
    }

    pub fn len(&self) -> usize {
        self.set.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.labels.is_empty()
    }

    /// All labels, sorted.
    pub fn labels(&self) -> &[Label] {
        &self.set.labels
    }

    pub fn contains(&self, label: &str) -> bool {
        self.set.index.contains_key(label)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.set.index.get(label).copied()
    }

    pub(crate) fn require_index(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn label(&self, index: usize) -> &Label {
        &self.set.labels[index]
    }

    pub fn root_index(&self) -> usize {
        self.root
    }

    /// The label of λ's unique child.
    pub fn root_label(&self) -> &Label {
        &self.set.labels[self.root]
    }

    pub fn parent_index(&self, index: usize) -> Option<usize> {
        self.parent[index]
    }

    pub(crate) fn parent_slice(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children_indices(&self, index: usize) -> &[usize] {
        &self.children[index]
    }

    /// Parent label, or `None` when `label` hangs from the root (or is unknown).
    pub fn parent(&self, label: &str) -> Option<&Label> {
        let i = self.index_of(label)?;
        self.parent[i].map(|p| &self.set.labels[p])
    }

    pub fn children(&self, label: &str) -> impl Iterator<Item = &Label> + '_ {
        let kids: &[usize] = match self.index_of(label) {
            Some(i) => &self.children[i],
            None => &[],
        };
        kids.iter().map(move |&c| &self.set.labels[c])
    }

    pub fn is_leaf(&self, index: usize) -> bool {
        self.children[index].is_empty()
    }

    /// Every vertex has at most two children.
    pub fn is_binary(&self) -> bool {
        self.children.iter().all(|c| c.len() <= 2)
    }

    /// True when `descendant` lies in the subtree rooted at `ancestor`
    /// (a vertex is its own descendant).
    pub fn is_descendant(&self, ancestor: usize, descendant: usize) -> bool {
        let mut cur = Some(descendant);
        while let Some(v) = cur {
            if v == ancestor {
                return true;
            }
            cur = self.parent[v];
        }
        false
    }

    /// Depth-first pre-order, children in lexicographic order.
    pub fn pre_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        order
    }

    /// Depth-first post-order, children in lexicographic order.
    pub fn post_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![(self.root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                order.push(v);
            } else {
                stack.push((v, true));
                stack.extend(self.children[v].iter().rev().map(|&c| (c, false)));
            }
        }
        order
    }

    /// Distance of every vertex from λ's child (which has depth 0).
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        for v in self.pre_order() {
            if let Some(p) = self.parent[v] {
                depth[v] = depth[p] + 1;
            }
        }
        depth
    }

    /// Number of vertices in the subtree rooted at each vertex.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1; self.len()];
        for v in self.post_order() {
            if let Some(p) = self.parent[v] {
                size[p] += size[v];
            }
        }
        size
    }

    pub fn same_label_set(&self, other: &LabelledTree) -> bool {
        Arc::ptr_eq(&self.set, &other.set) || self.set == other.set
    }

    /// Same label set and same parent for every label.
    pub fn is_congruent(&self, other: &LabelledTree) -> bool {
        self.same_label_set(other) && self.parent == other.parent
    }

    pub fn apply_linkcut(&self, op: &LinkCutOp) -> Result<Self> {
        let child = self.require_index(op.child().as_str())?;
        let from = self.require_index(op.from().as_str())?;
        let to = self.require_index(op.to().as_str())?;
        if self.parent[child] != Some(from) {
            return Err(Error::WrongParent {
                child: op.child().to_string(),
                expected: op.from().to_string(),
                actual: self.parent_name(child).to_string(),
            });
        }
        if self.is_descendant(child, to) {
            return Err(Error::DescendantTarget {
                child: op.child().to_string(),
                target: op.to().to_string(),
            });
        }
        let mut tree = self.clone();
        tree.parent[child] = Some(to);
        tree.children[from].retain(|&c| c != child);
        let slot = tree.children[to].partition_point(|&c| c < child);
        tree.children[to].insert(slot, child);
        Ok(tree)
    }

    pub fn apply_permutation(&self, pi: &Permutation) -> Result<Self> {
        let sigma = self.index_permutation(pi)?;
        Ok(self.relabel(&sigma))
    }

    /// Translates a label permutation into index space.
    pub(crate) fn index_permutation(&self, pi: &Permutation) -> Result<Vec<usize>> {
        let mut sigma: Vec<usize> = (0..self.len()).collect();
        for (from, to) in pi.iter() {
            let i = self.require_index(from.as_str())?;
            sigma[i] = self.require_index(to.as_str())?;
        }
        Ok(sigma)
    }

    /// Moves the label at index `i` to index `sigma[i]`; topology is kept.
    pub(crate) fn relabel(&self, sigma: &[usize]) -> Self {
        let mut parent = vec![None; self.len()];
        for (i, p) in self.parent.iter().enumerate() {
            parent[sigma[i]] = p.map(|p| sigma[p]);
        }
        self.with_parents(parent)
    }

    pub(crate) fn parent_name(&self, index: usize) -> &str {
        match self.parent[index] {
            Some(p) => self.set.labels[p].as_str(),
            None => ROOT_NAME,
        }
    }
}

impl fmt::Display for LabelledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_newick())
    }
}

impl FromStr for LabelledTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LabelledTree::parse(s)
    }
}

pub fn parse_tree(text: &str) -> Result<LabelledTree> {
    LabelledTree::parse(text)
}

pub fn serialize_tree(tree: &LabelledTree) -> String {
    tree.to_newick()
}

pub fn apply_linkcut(tree: &LabelledTree, op: &LinkCutOp) -> Result<LabelledTree> {
    tree.apply_linkcut(op)
}

pub fn apply_permutation(tree: &LabelledTree, pi: &Permutation) -> Result<LabelledTree> {
    tree.apply_permutation(pi)
}

pub fn are_congruent(t1: &LabelledTree, t2: &LabelledTree) -> bool {
    t1.is_congruent(t2)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    seen: HashSet<&'a str>,
}

struct RawNode<'a> {
    label: &'a str,
    children: Vec<usize>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text,
            pos: 0,
            seen: HashSet::new(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn label(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !is_label_char(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        if self.pos == start {
            return Err(Error::EmptyLabel { pos: start });
        }
        let label = &self.text[start..self.pos];
        if !self.seen.insert(label) {
            return Err(Error::DuplicateLabel(label.to_string()));
        }
        Ok(label)
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn parse(mut self) -> Result<LabelledTree> {
        let mut nodes: Vec<RawNode<'a>> = Vec::new();
        let mut open: Vec<Vec<usize>> = Vec::new();
        let root = 'outer: loop {
            self.skip_ws();
            if self.peek() == Some('(') {
                self.pos += 1;
                open.push(Vec::new());
                continue;
            }
            let label = self.label()?;
            nodes.push(RawNode {
                label,
                children: Vec::new(),
            });
            let mut done = nodes.len() - 1;
            loop {
                self.skip_ws();
                let Some(frame) = open.last_mut() else {
                    break 'outer done;
                };
                frame.push(done);
                match self.peek() {
                    Some(',') => {
                        self.pos += 1;
                        break;
                    }
                    Some(')') => {
                        self.pos += 1;
                        let children = open.pop().unwrap_or_default();
                        let label = self.label()?;
                        nodes.push(RawNode { label, children });
                        done = nodes.len() - 1;
                    }
                    Some(c) => return self.syntax(format!("expected ',' or ')', found {c:?}")),
                    None => return self.syntax("unexpected end of input, expected ',' or ')'"),
                }
            }
        };
        match self.peek() {
            Some(';') => self.pos += 1,
            Some(c) => return self.syntax(format!("expected ';', found {c:?}")),
            None => return self.syntax("missing terminating ';'"),
        }
        self.skip_ws();
        if self.pos != self.text.len() {
            return self.syntax("trailing input after ';'");
        }

        let mut parent_of = vec![None; nodes.len()];
        for (i, node) in nodes.iter().enumerate() {
            for &c in &node.children {
                parent_of[c] = Some(i);
            }
        }
        debug_assert!(parent_of[root].is_none());
        let mut labels: Vec<Label> = Vec::with_capacity(nodes.len());
        for node in &nodes {
            labels.push(Label(node.label.to_string()));
        }
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        // rank[node] = index of the node's label in sorted order
        let mut rank = vec![0; nodes.len()];
        for (r, &n) in order.iter().enumerate() {
            rank[n] = r;
        }
        let mut parent = vec![None; nodes.len()];
        for (n, p) in parent_of.iter().enumerate() {
            parent[rank[n]] = p.map(|p| rank[p]);
        }
        let sorted: Vec<Label> = order.iter().map(|&n| labels[n].clone()).collect();
        let index = sorted
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Ok(LabelledTree::assemble(sorted, index, parent, rank[root]))
    }
}

/// The bytes of a subtree's Newick text (without `;`), produced lazily so
/// that sibling comparisons stop at the first difference.
struct NewickBytes<'a> {
    tree: &'a LabelledTree,
    order: &'a [Vec<usize>],
    // (vertex, children already started)
    stack: Vec<(usize, usize)>,
    pending: &'a [u8],
}

impl<'a> NewickBytes<'a> {
    fn new(tree: &'a LabelledTree, order: &'a [Vec<usize>], v: usize) -> Self {
        NewickBytes {
            tree,
            order,
            stack: vec![(v, 0)],
            pending: &[],
        }
    }
}

impl Iterator for NewickBytes<'_> {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        if let Some((&b, rest)) = self.pending.split_first() {
            self.pending = rest;
            return Some(b);
        }
        let (v, started) = self.stack.pop()?;
        let kids = &self.order[v];
        let label = self.tree.set.labels[v].0.as_bytes();
        if kids.is_empty() {
            self.pending = &label[1..];
            return Some(label[0]);
        }
        if started < kids.len() {
            self.stack.push((v, started + 1));
            self.stack.push((kids[started], 0));
            return Some(if started == 0 { b'(' } else { b',' });
        }
        self.pending = label;
        Some(b')')
    }
}
