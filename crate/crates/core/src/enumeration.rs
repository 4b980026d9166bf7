//! Exact enumeration of leaf-induced subtree classes without the subset sweep.
//!
//! For a leaf the only induced class is the single vertex. For an internal
//! vertex `v` with children `c_1..c_m`, an induced subtree either lies inside
//! one child (so it is already in that child's set), or its root is `v` and
//! it is determined by choosing at least two distinct children and one class
//! from each chosen child's set. The multiset of chosen classes fixes the
//! joined class, so partial branch multisets are deduplicated as children are
//! added, which keeps repeated isomorphic branches from multiplying work.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use rug::Integer;

use crate::error::{Error, Result};
use crate::formulas::BigCount;
use crate::tree::{require_topological, CanonicalCode, RootedTree};

/// The distinct classes of leaf-induced subtrees of one host tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSet {
    codes: BTreeSet<CanonicalCode>,
    host_code: CanonicalCode,
}

impl InducedSet {
    pub fn new(codes: BTreeSet<CanonicalCode>, host_code: CanonicalCode) -> Self {
        InducedSet { codes, host_code }
    }

    /// Number of classes, the value `N(T)`.
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn count(&self) -> BigCount {
        Integer::from(self.codes.len())
    }

    pub fn contains(&self, code: &CanonicalCode) -> bool {
        self.codes.contains(code)
    }

    /// Classes in (leaf count, code) order.
    pub fn iter(&self) -> impl Iterator<Item = &CanonicalCode> {
        self.codes.iter()
    }

    pub fn codes(&self) -> &BTreeSet<CanonicalCode> {
        &self.codes
    }

    pub fn host_code(&self) -> &CanonicalCode {
        &self.host_code
    }

    pub fn is_subset(&self, other: &InducedSet) -> bool {
        self.codes.is_subset(&other.codes)
    }

    /// Number of classes with exactly `k` leaves.
    pub fn count_with_leaves(&self, k: usize) -> usize {
        self.codes.iter().filter(|c| c.leaf_count() == k).count()
    }
}

/// Configuration of the branch-multiset enumerator.
#[derive(Debug, Clone, Copy)]
pub struct Enumerator {
    /// Reuse the class set of isomorphic subtrees, keyed by canonical code.
    pub memoize: bool,
    /// Largest number of partial branch multisets or classes held at once.
    pub budget: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            memoize: true,
            budget: 10_000_000,
        }
    }
}

type ClassSet = Arc<BTreeSet<CanonicalCode>>;

impl Enumerator {
    pub fn induced_set(&self, t: &RootedTree) -> Result<InducedSet> {
        require_topological(t)?;
        let mut memo = HashMap::new();
        let (code, classes) = self.classes(t, &mut memo)?;
        let codes = Arc::try_unwrap(classes).unwrap_or_else(|shared| (*shared).clone());
        Ok(InducedSet::new(codes, code))
    }

    pub fn count(&self, t: &RootedTree) -> Result<BigCount> {
        self.induced_set(t).map(|s| s.count())
    }

    fn classes(
        &self,
        t: &RootedTree,
        memo: &mut HashMap<CanonicalCode, ClassSet>,
    ) -> Result<(CanonicalCode, ClassSet)> {
        if t.is_leaf() {
            let single = CanonicalCode::single_vertex();
            return Ok((single.clone(), Arc::new(BTreeSet::from([single]))));
        }
        let mut child_codes = Vec::with_capacity(t.outdegree());
        let mut child_sets = Vec::with_capacity(t.outdegree());
        for child in t.children() {
            let (code, set) = self.classes(child, memo)?;
            child_codes.push(code);
            child_sets.push(set);
        }
        let code = CanonicalCode::join(&child_codes);
        if self.memoize {
            if let Some(hit) = memo.get(&code) {
                return Ok((code, Arc::clone(hit)));
            }
        }
        let set = Arc::new(self.join_children(&child_sets)?);
        if self.memoize {
            memo.insert(code.clone(), Arc::clone(&set));
        }
        Ok((code, set))
    }

    fn join_children(&self, child_sets: &[ClassSet]) -> Result<BTreeSet<CanonicalCode>> {
        let mut interner = Interner::default();
        let ids: Vec<Vec<u32>> = child_sets
            .iter()
            .map(|s| s.iter().map(|c| interner.intern(c)).collect())
            .collect();

        // Sorted id multisets drawn from distinct children seen so far.
        let mut forests: HashSet<Vec<u32>> = HashSet::new();
        for child in &ids {
            let mut next = forests.clone();
            for &c in child {
                next.insert(vec![c]);
            }
            for f in &forests {
                for &c in child {
                    let mut g = f.clone();
                    let at = g.partition_point(|&x| x <= c);
                    g.insert(at, c);
                    next.insert(g);
                }
                if next.len() > self.budget {
                    return Err(self.over_budget(next.len()));
                }
            }
            if next.len() > self.budget {
                return Err(self.over_budget(next.len()));
            }
            forests = next;
        }

        let mut out = BTreeSet::new();
        out.insert(CanonicalCode::single_vertex());
        let mut branches = Vec::new();
        for f in forests {
            if f.len() == 1 {
                out.insert(interner.codes[f[0] as usize].clone());
            } else {
                branches.clear();
                branches.extend(f.iter().map(|&i| interner.codes[i as usize].clone()));
                out.insert(CanonicalCode::join(&branches));
            }
        }
        Ok(out)
    }

    fn over_budget(&self, size: usize) -> Error {
        Error::ResourceLimit {
            what: format!("enumeration working set of {size} branch multisets"),
            cap: self.budget as u64,
        }
    }
}

#[derive(Default)]
struct Interner {
    codes: Vec<CanonicalCode>,
    ids: HashMap<CanonicalCode, u32>,
}

impl Interner {
    fn intern(&mut self, code: &CanonicalCode) -> u32 {
        if let Some(&id) = self.ids.get(code) {
            return id;
        }
        let id = self.codes.len() as u32;
        self.codes.push(code.clone());
        self.ids.insert(code.clone(), id);
        id
    }
}

/// All leaf-induced classes of a topological tree with default settings.
pub fn induced_set(t: &RootedTree) -> Result<InducedSet> {
    Enumerator::default().induced_set(t)
}

/// `N(T)`, the number of nonisomorphic leaf-induced subtrees of `t`.
pub fn count(t: &RootedTree) -> Result<BigCount> {
    Enumerator::default().count(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{binary_caterpillar, complete_dary, dary_caterpillar, star};

    #[test]
    fn complete_binary_height_two() {
        let s = induced_set(&complete_dary(2, 2).unwrap()).unwrap();
        let expected: BTreeSet<_> = [
            RootedTree::leaf(),
            star(2).unwrap(),
            binary_caterpillar(3).unwrap(),
            complete_dary(2, 2).unwrap(),
        ]
        .iter()
        .map(RootedTree::canonical_code)
        .collect();
        assert_eq!(s.codes(), &expected);
    }

    #[test]
    fn stars_and_binary_caterpillars_are_minimal() {
        let s = induced_set(&star(7).unwrap()).unwrap();
        assert_eq!(s.len(), 7);
        assert!((1..=7).all(|k| s.contains(&star(k).unwrap().canonical_code())));
        assert_eq!(count(&binary_caterpillar(6).unwrap()).unwrap(), 6);
        assert_eq!(count(&star(1).unwrap()).unwrap(), 1);
    }

    #[test]
    fn small_family_counts() {
        assert_eq!(count(&dary_caterpillar(3, 5).unwrap()).unwrap(), 7);
        assert_eq!(count(&complete_dary(2, 3).unwrap()).unwrap(), 11);
        assert_eq!(count(&complete_dary(3, 2).unwrap()).unwrap(), 17);
        assert_eq!(count(&complete_dary(2, 5).unwrap()).unwrap(), 2279);
    }

    #[test]
    fn host_is_in_its_own_set() {
        let t = dary_caterpillar(4, 7).unwrap();
        let s = induced_set(&t).unwrap();
        assert!(s.contains(s.host_code()));
        assert!(s.contains(&CanonicalCode::single_vertex()));
    }

    #[test]
    fn memoization_off_agrees() {
        let t = complete_dary(3, 2).unwrap();
        let plain = Enumerator {
            memoize: false,
            ..Enumerator::default()
        };
        assert_eq!(plain.induced_set(&t).unwrap(), induced_set(&t).unwrap());
    }

    #[test]
    fn rejects_non_topological() {
        let t = RootedTree::node(vec![star(2).unwrap()]);
        assert_eq!(count(&t), Err(Error::NotTopological));
    }

    #[test]
    fn budget_is_enforced() {
        let tight = Enumerator {
            memoize: true,
            budget: 50,
        };
        let err = tight
            .induced_set(&complete_dary(2, 4).unwrap())
            .unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { cap: 50, .. }));
    }
}
