//! Growth constants of polynomial recurrences.
//!
//! For an increasing, unbounded recurrence of degree `d`,
//! `A_n ~ a_d^(-1/(d-1)) · c^(d^n)` with
//! `log c = log A_0 + log(a_d)/(d-1) + K` and
//! `K = Σ_{j≥0} d^(-1-j) log(1 + ε(A_j))`.
//! The series is truncated once the remainder bound
//! `R_n ≤ d^(-n)/(d-1) · ε(A_n)` falls below the requested tolerance; the
//! remainder is then folded into the ball of `K`.

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::real::BigReal;
use super::recurrence::{cdh_recurrence, PolyRecurrence};
use super::GUARD_BITS;
use crate::error::{invalid, Error, Result};
use crate::formulas::complete_dary_step;

/// Fewest series terms summed before the remainder bound may stop the sum.
pub const MIN_TERMS: u32 = 4;

const MAX_TERMS: u32 = 4096;
const ESCAPE_STEPS: u32 = 64;

/// Growth constant together with the series data that produced it.
#[derive(Debug, Clone)]
pub struct KappaResult {
    pub d: u32,
    pub kappa: BigReal,
    pub log_kappa: BigReal,
    /// The series `K`, including the truncation remainder in its radius.
    pub k_sum: BigReal,
    pub terms_used: u32,
    /// Upper bound on the omitted remainder of `K`.
    pub tail_bound: Float,
    /// Requested absolute accuracy, in bits, for `K`.
    pub bits: u32,
}

impl KappaResult {
    /// `kappa` rounded half-even to `digits` significant digits, if the ball
    /// is narrow enough to decide every digit.
    pub fn kappa_digits(&self, digits: u32) -> Option<String> {
        self.kappa.to_sig_digits(digits)
    }
}

/// Bits of absolute accuracy that make the remainder smaller than
/// `10^-(digits + 5)`.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits + 5) * std::f64::consts::LOG2_10).ceil() as u32 + 1
}

fn tolerance(bits: u32) -> Float {
    let mut t = Float::with_val(64, 1);
    t >>= bits as i32;
    t
}

/// `ε · d^-n / (d - 1)`, rounded up.
fn remainder_bound(eps: &Rational, d: u32, n: u32) -> Float {
    let scale = Integer::from(d).pow(n) * (d - 1);
    let q = Rational::from((Integer::from(1), scale)) * eps;
    Float::with_val_round(64, &q, Round::Up).0
}

/// Checks that the sequence escapes to infinity: once `a_d A^(d-1) > 1`,
/// `p(A) - A >= A (a_d A^(d-1) - 1)` keeps growing.
fn check_escape(rec: &PolyRecurrence) -> Result<()> {
    let d = rec.degree();
    let mut a = rec.initial().clone();
    for _ in 0..ESCAPE_STEPS {
        let next = rec.apply(&a);
        if next <= a {
            return Err(Error::PreconditionViolation(format!(
                "sequence is not increasing ({a} -> {next})"
            )));
        }
        let escape = rec.leading() * Rational::from((&a).pow(d - 1));
        if escape > 1 {
            return Ok(());
        }
        a = next;
    }
    Err(Error::PreconditionViolation(format!(
        "sequence does not leave a bounded region within {ESCAPE_STEPS} steps"
    )))
}

/// Growth constant of a general recurrence, with `K` accurate to `2^-bits`.
pub fn growth_constant(rec: &PolyRecurrence, bits: u32) -> Result<KappaResult> {
    check_escape(rec)?;
    let d = rec.degree();
    let prec = bits + GUARD_BITS;
    let target = tolerance(bits);
    let mut a = rec.initial().clone();
    let mut sum = BigReal::zero(prec);
    let mut j = 0u32;
    let tail = loop {
        let eps = rec.correction(&a);
        if j >= MIN_TERMS {
            let tail = remainder_bound(&eps, d, j);
            if tail < target {
                break tail;
            }
        }
        if j >= MAX_TERMS {
            return Err(Error::PrecisionExhausted {
                bits,
                detail: format!("series did not converge within {MAX_TERMS} terms"),
            });
        }
        let weight = Integer::from(d).pow(j + 1);
        let term = BigReal::from_rational(prec, &eps)
            .ln_1p()?
            .div_integer(&weight);
        sum = sum.add(&term);
        let next = rec.apply(&a);
        if next <= a {
            return Err(Error::PreconditionViolation(
                "sequence is not increasing".into(),
            ));
        }
        a = next;
        j += 1;
    };
    let k_sum = fold_remainder(&sum, &tail);
    let log_lead = BigReal::from_rational(prec, rec.leading())
        .ln()?
        .div_integer(&Integer::from(d - 1));
    let log_kappa = BigReal::from_rational(prec, rec.initial())
        .ln()?
        .add(&log_lead)
        .add(&k_sum);
    Ok(KappaResult {
        d,
        kappa: log_kappa.exp(),
        log_kappa,
        k_sum,
        terms_used: j,
        tail_bound: tail,
        bits,
    })
}

/// The true sum lies in `[sum, sum + tail]`.
fn fold_remainder(sum: &BigReal, tail: &Float) -> BigReal {
    let half = Float::with_val_round(64, tail / 2u32, Round::Up).0;
    let shift = BigReal::from_float(sum.prec(), &half);
    sum.add(&shift).widen(&half)
}

/// `κ(d)` with `K(d)` accurate to `2^-bits`, summing
/// `K(d) = Σ d^(-1-j) log(d! N(C^d_{j+1}) / N(C^d_j)^d)` over exact counts.
pub fn kappa_bits(d: u32, bits: u32) -> Result<KappaResult> {
    if d < 2 {
        return Err(invalid(format!(
            "complete tree arity must be at least 2, got {d}"
        )));
    }
    let rec = cdh_recurrence(d)?;
    let prec = bits + GUARD_BITS;
    let target = tolerance(bits);
    let factorial = Integer::from(Integer::factorial(d));
    let mut n = Integer::from(1);
    let mut sum = BigReal::zero(prec);
    let mut j = 0u32;
    let tail = loop {
        if j >= MIN_TERMS {
            let tail = remainder_bound(&rec.correction(&Rational::from(&n)), d, j);
            if tail < target {
                break tail;
            }
        }
        if j >= MAX_TERMS {
            return Err(Error::PrecisionExhausted {
                bits,
                detail: format!("series did not converge within {MAX_TERMS} terms"),
            });
        }
        let next = complete_dary_step(d, &n);
        sum = sum.add(&k_term(d, j, &factorial, &n, &next, prec)?);
        n = next;
        j += 1;
    };
    let k_sum = fold_remainder(&sum, &tail);
    let log_factorial = BigReal::from_integer(prec, &factorial).ln()?;
    let log_kappa = k_sum.sub(&log_factorial.div_integer(&Integer::from(d - 1)));
    Ok(KappaResult {
        d,
        kappa: log_kappa.exp(),
        log_kappa,
        k_sum,
        terms_used: j,
        tail_bound: tail,
        bits,
    })
}

/// `d^(-1-j) log(d! N_{j+1} / N_j^d)`, taken as `log(1 + ε)` with exact `ε`.
fn k_term(
    d: u32,
    j: u32,
    factorial: &Integer,
    n: &Integer,
    next: &Integer,
    prec: u32,
) -> Result<BigReal> {
    let power = Integer::from(n.pow(d));
    let excess = Integer::from(factorial * next) - &power;
    let eps = Rational::from((excess, power));
    let weight = Integer::from(d).pow(j + 1);
    Ok(BigReal::from_rational(prec, &eps)
        .ln_1p()?
        .div_integer(&weight))
}

/// The first `terms` terms of `K(d)`, without any remainder.
pub fn k_partial_sum(d: u32, terms: u32, bits: u32) -> Result<BigReal> {
    if d < 2 {
        return Err(invalid(format!(
            "complete tree arity must be at least 2, got {d}"
        )));
    }
    let prec = bits + GUARD_BITS;
    let factorial = Integer::from(Integer::factorial(d));
    let mut n = Integer::from(1);
    let mut sum = BigReal::zero(prec);
    for j in 0..terms {
        let next = complete_dary_step(d, &n);
        sum = sum.add(&k_term(d, j, &factorial, &n, &next, prec)?);
        n = next;
    }
    Ok(sum)
}

/// `κ(d)` with the remainder below `10^-(digits + 5)`.
pub fn kappa(d: u32, digits: u32) -> Result<KappaResult> {
    kappa_bits(d, bits_for_digits(digits))
}

/// `κ(d)` rendered to `digits` significant digits (round half to even),
/// raising the precision until every printed digit is certain.
pub fn kappa_decimal(d: u32, digits: u32) -> Result<(KappaResult, String)> {
    let mut bits = bits_for_digits(digits);
    for _ in 0..8 {
        let result = kappa_bits(d, bits)?;
        if let Some(s) = result.kappa_digits(digits) {
            return Ok((result, s));
        }
        bits *= 2;
    }
    Err(Error::PrecisionExhausted {
        bits,
        detail: format!("could not decide {digits} digits of κ({d})"),
    })
}
