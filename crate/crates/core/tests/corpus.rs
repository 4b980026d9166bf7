use std::collections::BTreeMap;

use leafsub_core::extremal::{case_witnesses, generate_up_to, verify_theorem1, DEFAULT_CORPUS_CAP};
use leafsub_core::tree::{binary_caterpillar, star};
use leafsub_core::RootedTree;

/// Series-reduced rooted trees by leaf count from the Euler transform:
/// `A = x + E(A) - 1 - A`, solved coefficient by coefficient.
fn series_reduced_counts(n_max: usize) -> Vec<u64> {
    let mut a = vec![0u64; n_max + 1];
    let mut e = vec![0u64; n_max + 1];
    e[0] = 1;
    a[1] = 1;
    e[1] = 1;
    let c = |a: &[u64], k: usize| -> u64 {
        (1..=k)
            .filter(|d| k.is_multiple_of(*d))
            .map(|d| d as u64 * a[d])
            .sum()
    };
    for n in 2..=n_max {
        // n E(n) = Σ_{k=1}^{n} c(k) E(n-k), and E(n) = 2 a(n)
        let mut rest: u64 = (1..n).filter(|d| n % d == 0).map(|d| d as u64 * a[d]).sum();
        for k in 1..n {
            rest += c(&a, k) * e[n - k];
        }
        assert_eq!(rest % n as u64, 0);
        a[n] = rest / n as u64;
        e[n] = 2 * a[n];
    }
    a[1..].to_vec()
}

#[test]
fn corpus_sizes_match_the_euler_transform() {
    let expected = series_reduced_counts(DEFAULT_CORPUS_CAP);
    assert_eq!(&expected[..8], &[1, 1, 2, 5, 12, 33, 90, 261]);
    let sizes: Vec<u64> = generate_up_to(DEFAULT_CORPUS_CAP, DEFAULT_CORPUS_CAP)
        .unwrap()
        .iter()
        .map(|c| c.len() as u64)
        .collect();
    assert_eq!(sizes, expected);
}

#[test]
fn corpora_are_valid_and_distinct() {
    for corpus in generate_up_to(8, DEFAULT_CORPUS_CAP).unwrap() {
        let trees = corpus.trees();
        for (t, code) in trees.iter().zip(&corpus.codes) {
            assert!(t.is_topological());
            assert_eq!(t.leaf_count(), corpus.n);
            assert_eq!(t.canonical_code(), *code);
        }
        assert!(corpus.codes.windows(2).all(|w| w[0] < w[1]));
    }
}

fn histogram(n: usize) -> Vec<(u64, usize)> {
    let report = verify_theorem1(n).unwrap();
    assert!(report.pass, "n = {n}");
    assert_eq!(report.min, n as u64);
    assert_eq!(report.minimizers.len(), 2);
    assert!(report
        .minimizers
        .contains(&star(n).unwrap().canonical_code()));
    assert!(report
        .minimizers
        .contains(&binary_caterpillar(n).unwrap().canonical_code()));
    report
        .histogram
        .iter()
        .map(|(k, v)| (k.to_u64().unwrap(), *v))
        .collect()
}

#[test]
fn theorem_one_for_five_through_eight() {
    let frozen: BTreeMap<usize, Vec<(u64, usize)>> = [
        (5, vec![(5, 2), (6, 2), (7, 7), (8, 1)]),
        (
            6,
            vec![(6, 2), (7, 1), (8, 5), (9, 5), (10, 8), (11, 9), (12, 3)],
        ),
        (
            7,
            vec![
                (7, 2),
                (10, 4),
                (11, 5),
                (12, 7),
                (13, 16),
                (14, 8),
                (15, 13),
                (16, 12),
                (17, 15),
                (18, 3),
                (19, 5),
            ],
        ),
        (
            8,
            vec![
                (8, 2),
                (11, 2),
                (12, 2),
                (13, 7),
                (14, 1),
                (15, 4),
                (16, 22),
                (17, 7),
                (18, 14),
                (19, 17),
                (20, 19),
                (21, 17),
                (22, 32),
                (23, 34),
                (24, 15),
                (25, 16),
                (26, 10),
                (27, 25),
                (28, 6),
                (29, 5),
                (30, 1),
                (31, 1),
                (33, 2),
            ],
        ),
    ]
    .into_iter()
    .collect();
    for (n, expected) in frozen {
        let got = histogram(n);
        assert_eq!(got, expected, "n = {n}");
        let size: usize = got.iter().map(|(_, v)| v).sum();
        assert_eq!(size as u64, series_reduced_counts(n)[n - 1]);
    }
}

#[test]
fn every_non_minimizer_has_a_witness_pair() {
    for n in 5..=7 {
        let corpus = generate_up_to(n, DEFAULT_CORPUS_CAP)
            .unwrap()
            .pop()
            .unwrap();
        let skip = [
            star(n).unwrap().canonical_code(),
            binary_caterpillar(n).unwrap().canonical_code(),
        ];
        for code in corpus.codes.iter().filter(|c| !skip.contains(c)) {
            let w = case_witnesses(&RootedTree::from_code(code)).unwrap();
            assert!(w.pass(), "case {} fails for {code}", w.case);
        }
    }
}
