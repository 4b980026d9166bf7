//! Polynomial recurrences `A_n = Σ a_k A_{n-1}^k` with nonnegative rational
//! coefficients, and the closed expression for `log A_n` obtained by
//! unrolling `log A_n = d log A_{n-1} + log a_d + log(1 + ε(A_{n-1}))`.

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::real::BigReal;
use super::GUARD_BITS;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRecurrence {
    coeffs: Vec<Rational>,
    initial: Rational,
}

impl PolyRecurrence {
    /// `coeffs[k]` multiplies `A^k`; the last entry is the leading coefficient.
    pub fn new(coeffs: Vec<Rational>, initial: Rational) -> Result<Self> {
        if coeffs.len() < 3 {
            return Err(invalid("degree must be at least 2"));
        }
        if coeffs.iter().any(|a| *a < 0) {
            return Err(invalid("coefficients must be nonnegative"));
        }
        if *coeffs.last().unwrap() == 0 {
            return Err(invalid("leading coefficient must be nonzero"));
        }
        if initial <= 0 {
            return Err(invalid("initial value must be positive"));
        }
        Ok(PolyRecurrence { coeffs, initial })
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> &Rational {
        self.coeffs.last().unwrap()
    }

    pub fn initial(&self) -> &Rational {
        &self.initial
    }

    pub fn coefficient_sum(&self) -> Rational {
        self.coeffs.iter().fold(Rational::new(), |acc, a| acc + a)
    }

    /// One step of the recurrence, by Horner's rule.
    pub fn apply(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::new(), |acc, a| acc * x + a)
    }

    /// `A_0, ..., A_n`.
    pub fn iterate(&self, n: u32) -> Vec<Rational> {
        let mut seq = Vec::with_capacity(n as usize + 1);
        seq.push(self.initial.clone());
        for _ in 0..n {
            let next = self.apply(seq.last().unwrap());
            seq.push(next);
        }
        seq
    }

    /// `ε(A) = Σ_{k<d} (a_k / a_d) A^(k-d)`, so that `A_{n+1} = a_d A^d (1 + ε(A))`.
    pub fn correction(&self, x: &Rational) -> Rational {
        let d = self.degree();
        let inv = Rational::from(x.recip_ref());
        let mut sum = Rational::new();
        let mut power = inv.clone();
        for k in (0..d as usize).rev() {
            sum += Rational::from(&self.coeffs[k] * &power);
            power *= &inv;
        }
        sum / self.leading()
    }
}

/// The recurrence of `N(C^d_h)`: `A ↦ -A + binom(A + d, d)` expanded as a
/// polynomial, with `A_0 = 1`.
pub fn cdh_recurrence(d: u32) -> Result<PolyRecurrence> {
    if d < 2 {
        return Err(invalid(format!(
            "complete tree arity must be at least 2, got {d}"
        )));
    }
    // (x + 1)(x + 2)...(x + d), coefficients low to high
    let mut poly = vec![Integer::from(1)];
    for i in 1..=d {
        let mut next = vec![Integer::new(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k] += Integer::from(c * i);
            next[k + 1] += c;
        }
        poly = next;
    }
    let factorial = Integer::from(Integer::factorial(d));
    let mut coeffs: Vec<Rational> = poly
        .into_iter()
        .map(|c| Rational::from((c, factorial.clone())))
        .collect();
    coeffs[1] -= 1u32;
    PolyRecurrence::new(coeffs, Rational::from(1))
}

/// Right-hand side of the unrolled identity
///
/// `log A_n = (d^n - 1)/(d - 1) log a_d + d^n (log A_0 + Σ_{j<n} d^(-1-j) log(1 + ε(A_j)))`
///
/// evaluated with `bits` of precision plus guard bits.
pub fn lemma1_log_identity(rec: &PolyRecurrence, n: u32, bits: u32) -> Result<BigReal> {
    if n == 0 {
        return Err(invalid("the identity is stated for n >= 1"));
    }
    let prec = bits + GUARD_BITS;
    let d = Integer::from(rec.degree());
    let d_pow_n = Integer::from((&d).pow(n));
    let geometric = Integer::from(&d_pow_n - 1u32) / Integer::from(&d - 1u32);

    let log_lead = BigReal::from_rational(prec, rec.leading()).ln()?;
    let log_init = BigReal::from_rational(prec, rec.initial()).ln()?;
    let mut total = log_lead
        .mul_integer(&geometric)
        .add(&log_init.mul_integer(&d_pow_n));

    // d^n · d^(-1-j) = d^(n-1-j)
    let seq = rec.iterate(n - 1);
    for (j, a) in seq.iter().enumerate() {
        let eps = BigReal::from_rational(prec, &rec.correction(a));
        let weight = Integer::from((&d).pow(n - 1 - j as u32));
        total = total.add(&eps.ln_1p()?.mul_integer(&weight));
    }
    Ok(total)
}

/// `log A_n` of the directly iterated sequence.
pub fn iterated_log(rec: &PolyRecurrence, n: u32, bits: u32) -> Result<BigReal> {
    let a_n = rec.iterate(n).pop().unwrap();
    BigReal::from_rational(bits + GUARD_BITS, &a_n).ln()
}
