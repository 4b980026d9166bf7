use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use leafsub_core::asymptotics::{
    cdh_recurrence, find_h, floor_formula, growth_constant, iterated_log, k_partial_sum, kappa,
    kappa_bits, kappa_decimal, lemma1_log_identity, monotone_certificate, prop7_bound_check,
    PolyRecurrence,
};
use leafsub_core::formulas::{complete_dary_count, complete_dary_sequence_capped};

/// Independently computed values of κ(d), d = 2..10.
const KAPPA: [&str; 9] = [
    "1.246020832983662508943152944199935928466524177298381258175252357377411",
    "1.254860390515121964805212513508431931331928182986354845995614111279773",
    "1.218911497608631133690969275286529057130693457381979013037313000062729",
    "1.188845750716619374592001960821811202696032056028078355881421280550708",
    "1.16539460327680123371051189765768262325597022149002144682644270889078",
    "1.146972413490830167328057754768793105245858298750131301972152969781655",
    "1.132218219684995522135308274442064679264919601444409470948024143806939",
    "1.120163947193681776003195836692828741210018077952703037575218906080545",
    "1.11013872938274804330188230356552814914369992654720673866575",
];

fn float(s: &str) -> Float {
    Float::with_val(400, Float::parse(s).unwrap())
}

#[test]
fn kappa_matches_reference_values() {
    for (i, reference) in KAPPA.iter().enumerate() {
        let d = i as u32 + 2;
        let r = kappa(d, 60).unwrap();
        let reference = float(reference);
        let diff = Float::with_val(400, r.kappa.mid() - &reference).abs();
        assert!(diff < 1e-55, "d = {d}: {}", r.kappa);
        assert!(r.kappa.radius().to_f64() < 1e-60);
    }
}

#[test]
fn kappa_exceeds_one() {
    let one = Float::with_val(64, 1);
    for d in 2..=10 {
        assert!(kappa(d, 20).unwrap().kappa.certainly_gt(&one), "d = {d}");
    }
}

#[test]
fn binary_constant_to_fifty_digits() {
    let (_, s) = kappa_decimal(2, 50).unwrap();
    assert_eq!(s, "1.2460208329836625089431529441999359284665241772984");
}

#[test]
fn sixteen_digit_renderings() {
    let expected = [
        (2, "1.246020832983663"),
        (6, "1.165394603276801"),
        (4, "1.218911497608631"),
    ];
    for (d, s) in expected {
        assert_eq!(kappa_decimal(d, 16).unwrap().1, s, "d = {d}");
    }
}

#[test]
fn precision_is_stable() {
    for d in 2..=10 {
        let low = kappa(d, 30).unwrap().kappa.to_sig_digits(28).unwrap();
        let high = kappa(d, 60).unwrap().kappa.to_sig_digits(28).unwrap();
        assert_eq!(low, high, "d = {d}");
    }
}

#[test]
fn tail_bound_dominates_the_remainder() {
    for d in 2..=4 {
        let r = kappa_bits(d, 100).unwrap();
        let partial = k_partial_sum(d, r.terms_used, 300).unwrap();
        let extended = k_partial_sum(d, r.terms_used + 5, 300).unwrap();
        let change = extended.sub(&partial);
        assert!(change.lower() > 0, "d = {d}");
        assert!(change.upper() < r.tail_bound, "d = {d}");
        assert!(r.tail_bound < Float::with_val(64, 1) >> 100u32);
    }
}

#[test]
fn general_route_agrees_with_exact_counts() {
    for d in 2..=10 {
        let general = growth_constant(&cdh_recurrence(d).unwrap(), 200).unwrap();
        let exact = kappa_bits(d, 200).unwrap();
        let diff = Float::with_val(300, general.kappa.mid() - exact.kappa.mid()).abs();
        assert!(diff < 1e-58, "d = {d}");
    }
}

#[test]
fn lemma_one_for_complete_tree_recurrences() {
    for d in 2..=6 {
        let rec = cdh_recurrence(d).unwrap();
        for n in 1..=8 {
            let lhs = lemma1_log_identity(&rec, n, 140).unwrap();
            let rhs = iterated_log(&rec, n, 140).unwrap();
            assert!(
                lhs.sub(&rhs).mid().to_f64().abs() < 1e-20,
                "d = {d}, n = {n}"
            );
        }
    }
}

fn random_recurrence(rng: &mut StdRng) -> PolyRecurrence {
    let degree = rng.gen_range(2..=4);
    let mut coeffs: Vec<Rational> = (0..degree)
        .map(|_| Rational::from((rng.gen_range(0..=5), rng.gen_range(1..=4))))
        .collect();
    coeffs.push(Rational::from((rng.gen_range(1..=3), rng.gen_range(1..=3))));
    let initial = Rational::from((rng.gen_range(1..=6), rng.gen_range(1..=2)));
    PolyRecurrence::new(coeffs, initial).unwrap()
}

#[test]
fn lemma_one_for_random_recurrences() {
    let mut rng = StdRng::seed_from_u64(0x1eaf);
    for _ in 0..5 {
        let rec = random_recurrence(&mut rng);
        for n in 1..=5 {
            let lhs = lemma1_log_identity(&rec, n, 140).unwrap();
            let rhs = iterated_log(&rec, n, 140).unwrap();
            assert!(
                lhs.sub(&rhs).mid().to_f64().abs() < 1e-20,
                "{rec:?}, n = {n}"
            );
        }
    }
}

#[test]
fn recurrence_facts() {
    for d in 2..=10 {
        let rec = cdh_recurrence(d).unwrap();
        assert_eq!(rec.coefficient_sum(), d);
        assert_eq!(rec.coeffs()[0], 1);
        let factorial = Integer::from(Integer::factorial(d));
        assert_eq!(
            *rec.leading(),
            Rational::from((Integer::from(1), factorial))
        );
        let seq = rec.iterate(4);
        let exact = complete_dary_sequence_capped(d, 4, 1 << 20).unwrap();
        for (a, n) in seq.iter().zip(&exact) {
            assert_eq!(*a, Rational::from(n));
        }
    }
}

#[test]
fn growth_ratio_bounds() {
    for d in 2..=10u32 {
        let seq = complete_dary_sequence_capped(d, 10, 1 << 22).unwrap_or_else(|_| {
            // the largest values are out of reach; use what fits
            (1..=10)
                .rev()
                .find_map(|h| complete_dary_sequence_capped(d, h, 1 << 22).ok())
                .unwrap()
        });
        assert!(seq.len() >= 4, "d = {d}");
        let factorial = Integer::from(Integer::factorial(d));
        for w in seq.windows(2) {
            let power = w[0].clone().pow(d);
            assert!(Integer::from(&factorial * &w[1]) > power, "d = {d}");
            assert!(w[1] <= Integer::from(&power * d), "d = {d}");
        }
    }
    // the unweighted inequality fails: N(C^2_3) = 11 < 4^2
    assert!(complete_dary_count(2, 3).unwrap() < 16);
}

#[test]
fn complete_counts_increase_through_height_twelve() {
    for d in 2..=10 {
        let cert = monotone_certificate(d, 12, 1 << 24).unwrap();
        assert!(cert.holds, "d = {d}");
        assert_eq!(cert.exact_through + cert.interval_steps, 12);
    }
}

#[test]
fn prop7_bound() {
    let report = prop7_bound_check(10).unwrap();
    assert!(report.pass());
    assert!(report.decreasing_from_three);
    let last = report.rows.last().unwrap();
    assert!((last.bound.to_f64() - 1.2915496650148839).abs() < 1e-15);
}

#[test]
fn binary_floor_sandwich() {
    for h in 2..=10 {
        let e = floor_formula(2, h).unwrap();
        let n = complete_dary_count(2, h).unwrap();
        assert_eq!(e.value, n);
        let offset = e.offset_from(&n);
        assert!(offset.lower() > 0 && offset.upper() < 1, "h = {h}");
    }
}

#[test]
fn floor_offset_for_higher_arity() {
    // x - N tends to (d + 1)/2, so the floor overshoots at every height
    for d in 3..=5u32 {
        let search = find_h(d, 6).unwrap();
        assert_eq!(search.threshold, None, "d = {d}");
        let last = search.rows.last().unwrap().offset.unwrap();
        assert!(
            (last - f64::from(d + 1) / 2.0).abs() < 1e-3,
            "d = {d}: {last}"
        );
    }
}
