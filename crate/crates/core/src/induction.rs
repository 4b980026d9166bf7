//! The leaf-induction operator and the exhaustive subset oracle.
//!
//! Inducing on a leaf set `S` of a host tree is a two-step operation: keep
//! only the vertices and edges on the paths from the leaves of `S` up to
//! their most recent common ancestor (which becomes the new root), then
//! contract every vertex that was left with exactly one child.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::enumeration::InducedSet;
use crate::error::{invalid, Error, Result};
use crate::tree::{LeafPath, RootedTree};

/// A set of leaf positions of some host tree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LeafSubset {
    positions: BTreeSet<LeafPath>,
}

impl LeafSubset {
    pub fn from_paths<I, P>(paths: I) -> Self
    where
        I: IntoIterator<Item = P>,
        P: Into<LeafPath>,
    {
        LeafSubset {
            positions: paths.into_iter().map(Into::into).collect(),
        }
    }

    /// Leaves selected by the set bits of `mask`, indexing `leaves` from the
    /// least significant bit.
    pub fn from_mask(leaves: &[LeafPath], mask: u64) -> Self {
        LeafSubset {
            positions: leaves
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| p.clone())
                .collect(),
        }
    }

    pub fn positions(&self) -> impl Iterator<Item = &LeafPath> {
        self.positions.iter()
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Checks that the set is nonempty and addresses only leaves of `host`.
    pub fn validate(&self, host: &RootedTree) -> Result<()> {
        if self.positions.is_empty() {
            return Err(invalid("leaf subset is empty"));
        }
        for p in &self.positions {
            match host.subtree(p.as_slice()) {
                Some(v) if v.is_leaf() => {}
                Some(_) => return Err(invalid(format!("position {p} is not a leaf"))),
                None => return Err(invalid(format!("position {p} does not exist"))),
            }
        }
        Ok(())
    }

    /// Most recent common ancestor as the longest common prefix of the paths.
    pub fn common_ancestor(&self) -> LeafPath {
        let mut iter = self.positions.iter();
        let Some(first) = iter.next() else {
            return LeafPath::default();
        };
        let mut prefix = first.as_slice();
        for p in iter {
            let shared = prefix
                .iter()
                .zip(p.as_slice())
                .take_while(|(a, b)| a == b)
                .count();
            prefix = &prefix[..shared];
        }
        LeafPath(prefix.to_vec())
    }
}

/// The subtree of `t` induced by the leaves in `s`.
///
/// The result has exactly `s.len()` leaves, is topological, and keeps the
/// labels of the selected leaves.
pub fn induce(t: &RootedTree, s: &LeafSubset) -> Result<RootedTree> {
    s.validate(t)?;
    let ancestor = s.common_ancestor();
    let root = t
        .subtree(ancestor.as_slice())
        .expect("common prefix of valid leaf paths addresses a vertex");
    let relative: Vec<&[usize]> = s
        .positions()
        .map(|p| &p.as_slice()[ancestor.len()..])
        .collect();
    Ok(contract(&extract(root, &relative)))
}

/// Restriction of `v` to the paths leading to `paths`; vertices of outdegree
/// one created by the restriction are kept.
fn extract(v: &RootedTree, paths: &[&[usize]]) -> RootedTree {
    if v.is_leaf() {
        return v.clone();
    }
    let mut kept = Vec::new();
    for (i, child) in v.children().iter().enumerate() {
        let tails: Vec<&[usize]> = paths
            .iter()
            .filter(|p| p.first() == Some(&i))
            .map(|p| &p[1..])
            .collect();
        if !tails.is_empty() {
            kept.push(extract(child, &tails));
        }
    }
    RootedTree::node(kept)
}

/// Contracts every vertex of outdegree one, bottom-up in a single pass.
pub fn contract(t: &RootedTree) -> RootedTree {
    if t.is_leaf() {
        return t.clone();
    }
    let mut children: Vec<RootedTree> = t.children().iter().map(contract).collect();
    if children.len() == 1 {
        children.pop().unwrap()
    } else {
        RootedTree::node(children)
    }
}

/// Configuration for the exhaustive subset sweep.
#[derive(Debug, Clone, Copy)]
pub struct BruteForce {
    /// Largest leaf count accepted; the sweep visits `2^n - 1` subsets.
    pub leaf_cap: usize,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce { leaf_cap: 20 }
    }
}

#[derive(Debug, Clone)]
pub struct BruteForceOutcome {
    pub set: InducedSet,
    pub subsets_visited: u64,
}

impl BruteForce {
    /// Induces on every nonempty leaf subset and collects the distinct classes.
    ///
    /// Subsets are taken in binary-counter order over the depth-first leaf
    /// order; the mask range is split across worker threads and the partial
    /// sets are merged, so the result matches a sequential sweep.
    pub fn run(&self, t: &RootedTree) -> Result<BruteForceOutcome> {
        let leaves = t.leaves();
        let n = leaves.len();
        if n > self.leaf_cap || n >= 64 {
            return Err(Error::ResourceLimit {
                what: format!("brute force over {n} leaves"),
                cap: self.leaf_cap as u64,
            });
        }
        let total = (1u64 << n) - 1;
        let (codes, visited) = (1..=total)
            .into_par_iter()
            .fold(
                || (BTreeSet::new(), 0u64),
                |(mut acc, count), mask| {
                    let s = LeafSubset::from_mask(&leaves, mask);
                    let sub = induce(t, &s).expect("mask selects valid leaves");
                    acc.insert(sub.canonical_code());
                    (acc, count + 1)
                },
            )
            .reduce(
                || (BTreeSet::new(), 0u64),
                |(mut a, ca), (b, cb)| {
                    a.extend(b);
                    (a, ca + cb)
                },
            );
        Ok(BruteForceOutcome {
            set: InducedSet::new(codes, t.canonical_code()),
            subsets_visited: visited,
        })
    }
}

/// Brute-force set of leaf-induced classes with the default leaf cap of 20.
pub fn brute_force_set(t: &RootedTree) -> Result<InducedSet> {
    BruteForce::default().run(t).map(|o| o.set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{binary_caterpillar, complete_dary, dary_caterpillar, star};

    fn labeled(names: &[&str]) -> RootedTree {
        RootedTree::node(names.iter().map(|n| RootedTree::labeled_leaf(*n)).collect())
    }

    fn two_cherries() -> RootedTree {
        RootedTree::node(vec![labeled(&["a", "b"]), labeled(&["c", "d"])])
    }

    fn pick(t: &RootedTree, names: &[&str]) -> LeafSubset {
        let paths = t.leaves();
        let labels = t.leaf_labels();
        LeafSubset::from_paths(
            paths
                .into_iter()
                .zip(labels)
                .filter(|(_, l)| l.is_some_and(|l| names.contains(&l)))
                .map(|(p, _)| p),
        )
    }

    #[test]
    fn single_leaf_gives_single_vertex() {
        let t = two_cherries();
        let sub = induce(&t, &pick(&t, &["a"])).unwrap();
        assert!(sub.is_leaf());
        assert_eq!(sub.label(), Some("a"));
    }

    #[test]
    fn leaves_from_both_sides_give_cherry() {
        let t = two_cherries();
        let sub = induce(&t, &pick(&t, &["a", "c"])).unwrap();
        assert_eq!(sub.canonical_code(), star(2).unwrap().canonical_code());
        let mut labels: Vec<_> = sub.leaf_labels().into_iter().flatten().collect();
        labels.sort();
        assert_eq!(labels, vec!["a", "c"]);
    }

    #[test]
    fn three_leaves_give_binary_caterpillar() {
        let t = two_cherries();
        let sub = induce(&t, &pick(&t, &["a", "b", "c"])).unwrap();
        assert_eq!(
            sub.canonical_code(),
            binary_caterpillar(3).unwrap().canonical_code()
        );
    }

    #[test]
    fn all_leaves_reproduce_host() {
        let t = complete_dary(3, 2).unwrap();
        let all = LeafSubset::from_paths(t.leaves());
        assert_eq!(induce(&t, &all).unwrap(), t);
    }

    #[test]
    fn common_ancestor_is_longest_prefix() {
        let t = two_cherries();
        assert_eq!(pick(&t, &["a", "b"]).common_ancestor().0, vec![0]);
        assert_eq!(
            pick(&t, &["a", "d"]).common_ancestor().0,
            Vec::<usize>::new()
        );
        assert_eq!(pick(&t, &["d"]).common_ancestor().0, vec![1, 1]);
    }

    #[test]
    fn rejects_bad_subsets() {
        let t = two_cherries();
        assert!(matches!(
            induce(&t, &LeafSubset::default()),
            Err(Error::InvalidArgument(_))
        ));
        let internal = LeafSubset::from_paths([vec![0]]);
        assert!(matches!(
            induce(&t, &internal),
            Err(Error::InvalidArgument(_))
        ));
        let missing = LeafSubset::from_paths([vec![0, 5]]);
        assert!(induce(&t, &missing).is_err());
    }

    #[test]
    fn contraction_removes_chains() {
        let chain = RootedTree::node(vec![RootedTree::node(vec![RootedTree::node(vec![
            RootedTree::leaf(),
            RootedTree::node(vec![RootedTree::leaf()]),
        ])])]);
        let c = contract(&chain);
        assert!(c.is_topological());
        assert_eq!(c.canonical_code(), star(2).unwrap().canonical_code());
    }

    #[test]
    fn brute_force_small_hosts() {
        assert_eq!(
            brute_force_set(&complete_dary(2, 2).unwrap())
                .unwrap()
                .len(),
            4
        );
        let s5 = brute_force_set(&star(5).unwrap()).unwrap();
        assert_eq!(s5.len(), 5);
        for k in 1..=5 {
            assert!(s5.contains(&star(k).unwrap().canonical_code()));
        }
        assert_eq!(brute_force_set(&RootedTree::leaf()).unwrap().len(), 1);
        assert_eq!(
            brute_force_set(&dary_caterpillar(3, 7).unwrap())
                .unwrap()
                .len(),
            15
        );
    }

    #[test]
    fn brute_force_visits_every_subset() {
        let t = complete_dary(2, 3).unwrap();
        let out = BruteForce::default().run(&t).unwrap();
        assert_eq!(out.subsets_visited, 255);
        assert_eq!(out.set.len(), 11);
    }

    #[test]
    fn brute_force_cap() {
        let t = star(9).unwrap();
        let err = BruteForce { leaf_cap: 8 }.run(&t).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { cap: 8, .. }));
    }
}
