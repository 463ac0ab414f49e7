//! Tree pairs built from 3-dimensional matching instances.
//!
//! Both trees have a root `r` with one child per element of A ∪ B ∪ C. For
//! every triple t = (a, b, c) each of its elements v gets two gadget leaves
//! S(t, v) in the first tree; in the second tree the gadgets are shifted
//! around the triple (S(t, a) under b, S(t, b) under c, S(t, c) under a).
//! Every triple therefore becomes a directed 3-cycle of the movements
//! graph, and a matching of n disjoint triples corresponds to a
//! rearrangement of size at most `3n + 6(m − n)`.
//!
//! Instance text format: three header lines listing A, B and C (whitespace
//! separated, possibly empty), then one triple `a b c` per line. Lines
//! starting with `#` are skipped.

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::tree::{Label, LabelledTree};

/// Name of the vertex under λ in generated trees.
pub const ROOT: &str = "r";

/// Largest triple count [`max_matching_bruteforce`] accepts by default.
pub const DEFAULT_MATCHING_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeDMInstance {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
    pub triples: Vec<[String; 3]>,
}

impl ThreeDMInstance {
    pub fn new(
        a: Vec<String>,
        b: Vec<String>,
        c: Vec<String>,
        triples: Vec<[String; 3]>,
    ) -> Result<Self> {
        let instance = ThreeDMInstance { a, b, c, triples };
        instance.validate()?;
        Ok(instance)
    }

    /// Checks disjointness, membership, 3-boundedness and 1-commonness.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Instance(msg));
        let mut seen = BTreeSet::new();
        for name in self.a.iter().chain(&self.b).chain(&self.c) {
            Label::new(name.as_str()).map_err(|e| Error::Instance(e.to_string()))?;
            if name == ROOT {
                return bad(format!("element name {ROOT:?} is reserved for the root"));
            }
            if !seen.insert(name.as_str()) {
                return bad(format!("element {name:?} listed twice"));
            }
        }
        let mut occurrences: HashMap<&str, usize> = HashMap::new();
        for (i, [x, y, z]) in self.triples.iter().enumerate() {
            for (name, set, set_name) in [(x, &self.a, "A"), (y, &self.b, "B"), (z, &self.c, "C")] {
                if !set.contains(name) {
                    return bad(format!("triple {i}: {name:?} is not in {set_name}"));
                }
                let n = occurrences.entry(name.as_str()).or_default();
                *n += 1;
                if *n > 3 {
                    return bad(format!("{name:?} occurs in more than 3 triples"));
                }
            }
        }
        for (i, s) in self.triples.iter().enumerate() {
            for (j, t) in self.triples.iter().enumerate().skip(i + 1) {
                let shared = s.iter().filter(|x| t.contains(x)).count();
                if shared > 1 {
                    return bad(format!("triples {i} and {j} share {shared} elements"));
                }
            }
        }
        Ok(())
    }

    pub fn element_count(&self) -> usize {
        self.a.len() + self.b.len() + self.c.len()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('#'));
        let mut header = || -> Result<Vec<String>> {
            let (_, line) = lines
                .next()
                .ok_or_else(|| Error::Instance("expected three header lines (A, B, C)".into()))?;
            Ok(line.split_whitespace().map(str::to_string).collect())
        };
        let (a, b, c) = (header()?, header()?, header()?);
        let mut triples = Vec::new();
        for (no, line) in lines {
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                [] => continue,
                [x, y, z] => triples.push([x.to_string(), y.to_string(), z.to_string()]),
                _ => {
                    return Err(Error::Instance(format!(
                        "line {}: expected a triple `a b c`",
                        no + 1
                    )))
                }
            }
        }
        Self::new(a, b, c, triples)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for set in [&self.a, &self.b, &self.c] {
            out.push_str(&set.join(" "));
            out.push('\n');
        }
        for [x, y, z] in &self.triples {
            out.push_str(&format!("{x} {y} {z}\n"));
        }
        out
    }

    /// A random 3-bounded 1-common instance drawn from the given pool
    /// sizes; triples that would break either restriction are skipped.
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        sizes: [usize; 3],
        attempts: usize,
        max_triples: usize,
    ) -> Self {
        let pool = |prefix: &str, n: usize| -> Vec<String> {
            (0..n).map(|i| format!("{prefix}{i}")).collect()
        };
        let (a, b, c) = (pool("a", sizes[0]), pool("b", sizes[1]), pool("c", sizes[2]));
        let mut instance = ThreeDMInstance {
            a,
            b,
            c,
            triples: Vec::new(),
        };
        if sizes.contains(&0) {
            return instance;
        }
        for _ in 0..attempts {
            if instance.triples.len() >= max_triples {
                break;
            }
            let triple = [
                instance.a.choose(rng).cloned().unwrap_or_default(),
                instance.b.choose(rng).cloned().unwrap_or_default(),
                instance.c.choose(rng).cloned().unwrap_or_default(),
            ];
            instance.triples.push(triple);
            if instance.validate().is_err() {
                instance.triples.pop();
            }
        }
        instance
    }
}

/// Gadget leaf `t_v^k` as a label: `{triple}_{element}_{k}`.
pub fn gadget_label(triple: usize, element: &str, k: u8) -> String {
    format!("{triple}_{element}_{k}")
}

/// Builds the pair (T1ᴴ, T2ᴴ).
pub fn build_reduction(h: &ThreeDMInstance) -> Result<(LabelledTree, LabelledTree)> {
    h.validate()?;
    let elements: Vec<&str> = h.a.iter().chain(&h.b).chain(&h.c).map(String::as_str).collect();
    let mut base: Vec<(String, Option<String>)> = vec![(ROOT.to_string(), None)];
    base.extend(elements.iter().map(|e| (e.to_string(), Some(ROOT.to_string()))));
    let mut first = base.clone();
    let mut second = base;
    for (i, triple) in h.triples.iter().enumerate() {
        for (pos, v) in triple.iter().enumerate() {
            let shifted = &triple[(pos + 1) % 3];
            for k in 1..=2 {
                let leaf = gadget_label(i, v, k);
                first.push((leaf.clone(), Some(v.clone())));
                second.push((leaf, Some(shifted.clone())));
            }
        }
    }
    let t1 = LabelledTree::from_parents(first).map_err(|e| Error::Instance(e.to_string()))?;
    let t2 = LabelledTree::from_parents(second).map_err(|e| Error::Instance(e.to_string()))?;
    Ok((t1, t2))
}

/// `3n + 6(m − n)`.
pub fn reduction_bound(m: usize, n: usize) -> Result<usize> {
    if n > m {
        return Err(Error::Parameter(format!(
            "matching size {n} exceeds triple count {m}"
        )));
    }
    Ok(3 * n + 6 * (m - n))
}

pub fn max_matching_bruteforce(h: &ThreeDMInstance) -> Result<usize> {
    max_matching_bruteforce_with_limit(h, DEFAULT_MATCHING_LIMIT)
}

/// Largest set of pairwise disjoint triples, by trying every subset.
pub fn max_matching_bruteforce_with_limit(h: &ThreeDMInstance, limit: usize) -> Result<usize> {
    let m = h.triples.len();
    if m > limit {
        return Err(Error::SizeLimit { size: m, limit });
    }
    let disjoint = |i: usize, j: usize| h.triples[i].iter().all(|x| !h.triples[j].contains(x));
    let mut best = 0;
    for mask in 0u32..(1u32 << m) {
        let picked: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
        if picked.len() <= best {
            continue;
        }
        let ok = picked
            .iter()
            .enumerate()
            .all(|(x, &i)| picked[x + 1..].iter().all(|&j| disjoint(i, j)));
        if ok {
            best = picked.len();
        }
    }
    Ok(best)
}
