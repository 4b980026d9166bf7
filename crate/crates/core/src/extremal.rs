//! Exhaustive corpora of topological trees and the minimum-count theorem.
//!
//! Every topological tree with `n >= 2` leaves is a root joined to a multiset
//! of at least two smaller topological trees, so the corpus for `n` is built
//! from the corpora below it. Multisets are walked as nondecreasing index
//! sequences over the smaller classes, which avoids permutation duplicates.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::enumeration::Enumerator;
use crate::error::{invalid, Error, Result};
use crate::formulas::BigCount;
use crate::tree::{self, require_topological, CanonicalCode, RootedTree};

/// Default largest leaf count for corpus generation.
pub const DEFAULT_CORPUS_CAP: usize = 10;

/// Every isomorphism class of topological trees with `n` leaves.
#[derive(Debug, Clone)]
pub struct TreeCorpus {
    pub n: usize,
    /// Sorted by canonical code.
    pub codes: Vec<CanonicalCode>,
}

impl TreeCorpus {
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn trees(&self) -> Vec<RootedTree> {
        self.codes.iter().map(RootedTree::from_code).collect()
    }
}

/// Corpora for `1..=n` leaves, index `k - 1` holding `k` leaves.
pub fn generate_up_to(n: usize, cap: usize) -> Result<Vec<TreeCorpus>> {
    if n == 0 {
        return Err(invalid("corpus leaf count must be positive"));
    }
    if n > cap {
        return Err(Error::ResourceLimit {
            what: format!("corpus with {n} leaves"),
            cap: cap as u64,
        });
    }
    let mut corpora = vec![TreeCorpus {
        n: 1,
        codes: vec![CanonicalCode::single_vertex()],
    }];
    for m in 2..=n {
        // every smaller class, ordered by (leaf count, code)
        let pool: Vec<&CanonicalCode> = corpora.iter().flat_map(|c| c.codes.iter()).collect();
        let mut found = BTreeSet::new();
        let mut stack = Vec::new();
        extend(&pool, 0, m, &mut stack, &mut found);
        corpora.push(TreeCorpus {
            n: m,
            codes: found.into_iter().collect(),
        });
    }
    Ok(corpora)
}

fn extend<'a>(
    pool: &[&'a CanonicalCode],
    start: usize,
    remaining: usize,
    stack: &mut Vec<&'a CanonicalCode>,
    found: &mut BTreeSet<CanonicalCode>,
) {
    if remaining == 0 {
        if stack.len() >= 2 {
            let branches: Vec<CanonicalCode> = stack.iter().map(|c| (*c).clone()).collect();
            found.insert(CanonicalCode::join(&branches));
        }
        return;
    }
    for (i, code) in pool.iter().enumerate().skip(start) {
        let k = code.leaf_count();
        if k > remaining {
            break;
        }
        stack.push(code);
        extend(pool, i, remaining - k, stack, found);
        stack.pop();
    }
}

/// Number of topological trees with `n` leaves, from the Euler transform
/// `A = x + E(A) - 1 - A` solved coefficient by coefficient.
///
/// Independent of [`generate_up_to`]; used to cross-check corpus sizes.
pub fn series_reduced_count(n: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut a = vec![0u128; n + 1];
    let mut e = vec![0u128; n + 1];
    // c[k] = Σ_{j | k} j a(j)
    let mut c = vec![0u128; n + 1];
    e[0] = 1;
    a[1] = 1;
    e[1] = 1;
    c[1] = 1;
    for m in 2..=n {
        // m E(m) = Σ_{k=1}^{m} c(k) E(m-k) and E(m) = 2 a(m); the k = m term
        // contributes m a(m), leaving a(m) = (rest) / m
        let own: u128 = (1..m)
            .filter(|j| m % j == 0)
            .map(|j| j as u128 * a[j])
            .sum();
        let rest: u128 = own + (1..m).map(|k| c[k] * e[m - k]).sum::<u128>();
        a[m] = rest / m as u128;
        e[m] = 2 * a[m];
        c[m] = own + m as u128 * a[m];
    }
    a[n]
}

/// All topological trees with `n` leaves, `1 <= n <= 10`.
pub fn generate_topological(n: usize) -> Result<TreeCorpus> {
    generate_up_to(n, DEFAULT_CORPUS_CAP).map(|mut c| c.pop().unwrap())
}

/// Outcome of checking the minimum-count theorem on one corpus.
#[derive(Debug, Clone)]
pub struct Theorem1Report {
    pub n: usize,
    pub corpus_size: usize,
    pub min: BigCount,
    pub minimizers: Vec<CanonicalCode>,
    /// Number of trees with each count.
    pub histogram: BTreeMap<BigCount, usize>,
    /// Minimum is `n` and the minimizers are exactly the star and the binary caterpillar.
    pub pass: bool,
}

/// Counts every tree in the `n`-leaf corpus and checks the minimum and its minimizers.
///
/// The theorem is stated for `n >= 5`; smaller `n` are accepted as boundary
/// reports and fail where the characterization does not hold.
pub fn verify_theorem1(n: usize) -> Result<Theorem1Report> {
    let corpus = generate_topological(n)?;
    let enumerator = Enumerator::default();
    let counts: Vec<BigCount> = corpus
        .codes
        .par_iter()
        .map(|c| enumerator.count(&RootedTree::from_code(c)))
        .collect::<Result<_>>()?;
    let min = counts.iter().min().cloned().unwrap_or_default();
    let minimizers: Vec<CanonicalCode> = corpus
        .codes
        .iter()
        .zip(&counts)
        .filter(|(_, v)| **v == min)
        .map(|(c, _)| c.clone())
        .collect();
    let mut histogram = BTreeMap::new();
    for v in counts {
        *histogram.entry(v).or_insert(0) += 1;
    }
    let expected: BTreeSet<CanonicalCode> = [
        tree::star(n)?.canonical_code(),
        tree::binary_caterpillar(n)?.canonical_code(),
    ]
    .into_iter()
    .collect();
    let actual: BTreeSet<CanonicalCode> = minimizers.iter().cloned().collect();
    Ok(Theorem1Report {
        n,
        corpus_size: corpus.len(),
        pass: min == n as u64 && actual == expected,
        min,
        minimizers,
        histogram,
    })
}

/// Which case of the lower-bound argument applies, with its witnesses.
#[derive(Debug, Clone)]
pub struct CaseWitness {
    /// 1: some vertex has outdegree at least three; 2: binary of height at least three.
    pub case: u8,
    pub witnesses: Vec<(CanonicalCode, bool)>,
}

impl CaseWitness {
    pub fn pass(&self) -> bool {
        self.witnesses.iter().all(|(_, present)| *present)
    }
}

fn max_outdegree(t: &RootedTree) -> usize {
    t.children()
        .iter()
        .map(max_outdegree)
        .fold(t.outdegree(), usize::max)
}

/// Looks for `{S_3, F_3}` (case 1) or `{C^2_2, F_4}` (case 2) among the induced classes of `t`.
pub fn case_witnesses(t: &RootedTree) -> Result<CaseWitness> {
    require_topological(t)?;
    let n = t.leaf_count();
    if n < 5 {
        return Err(Error::PreconditionViolation(format!(
            "need at least 5 leaves, got {n}"
        )));
    }
    let code = t.canonical_code();
    if code == tree::star(n)?.canonical_code()
        || code == tree::binary_caterpillar(n)?.canonical_code()
    {
        return Err(Error::PreconditionViolation(
            "tree is a star or a binary caterpillar".into(),
        ));
    }
    let (case, wanted) = if max_outdegree(t) >= 3 {
        (1, [tree::star(3)?, tree::binary_caterpillar(3)?])
    } else {
        (
            2,
            [tree::complete_dary(2, 2)?, tree::binary_caterpillar(4)?],
        )
    };
    let set = Enumerator::default().induced_set(t)?;
    let witnesses = wanted
        .iter()
        .map(|w| {
            let c = w.canonical_code();
            let present = set.contains(&c);
            (c, present)
        })
        .collect();
    Ok(CaseWitness { case, witnesses })
}
