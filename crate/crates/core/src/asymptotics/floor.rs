//! The floor representation `N(C^d_h) = ⌊d!^(1/(d-1)) κ(d)^(d^h)⌋`.
//!
//! `x = d!^(1/(d-1)) κ^(d^h)` is evaluated as `exp(log d!/(d-1) + d^h log κ)`.
//! The relative error of `x` is the absolute error of its logarithm, so `log κ`
//! is computed to `magnitude + 67 + h log2 d` bits. When the ball around `x`
//! straddles an integer the precision is doubled, up to sixteen times the
//! starting value.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::kappa::kappa_bits;
use super::real::BigReal;
use super::GUARD_BITS;
use crate::error::{invalid, Error, Result};
use crate::formulas::{complete_dary_sequence_capped, BigCount, DEFAULT_BIT_CAP};

/// Largest magnitude of `x`, in bits, the floor evaluation will attempt.
pub const MAGNITUDE_CAP: u64 = 1 << 24;

const CEILING_FACTOR: u32 = 16;

/// A resolved floor together with the ball it came from.
#[derive(Debug, Clone)]
pub struct FloorEvaluation {
    pub d: u32,
    pub h: u32,
    pub value: BigCount,
    pub x: BigReal,
    /// Accuracy of `log κ` that resolved the floor.
    pub bits: u32,
}

impl FloorEvaluation {
    /// `x - n` as a ball, for comparing with an exact count.
    pub fn offset_from(&self, n: &BigCount) -> BigReal {
        self.x.sub(&BigReal::from_integer(self.x.prec(), n))
    }
}

fn log2_magnitude(d: u32, h: u32) -> Result<u64> {
    let estimate = kappa_bits(d, 64)?;
    let log2_kappa = estimate.log_kappa.to_f64() / std::f64::consts::LN_2;
    let log2_fact: f64 = (2..=d).map(|k| f64::from(k).log2()).sum::<f64>() / f64::from(d - 1);
    let mag = f64::from(d).powi(h as i32) * log2_kappa + log2_fact;
    if !mag.is_finite() || mag > MAGNITUDE_CAP as f64 {
        return Err(Error::ResourceLimit {
            what: format!("floor formula for C^{d}_{h} with about {mag:.0} bits"),
            cap: MAGNITUDE_CAP,
        });
    }
    Ok(mag.max(1.0).ceil() as u64)
}

fn evaluate(d: u32, h: u32, bits: u32) -> Result<BigReal> {
    let scale_bits = (f64::from(h) * f64::from(d).log2()).ceil() as u32 + 2;
    let k = kappa_bits(d, bits + scale_bits)?;
    let prec = k.log_kappa.prec().max(bits + GUARD_BITS);
    let d_pow_h = Integer::from(d).pow(h);
    let log_fact = BigReal::from_integer(prec, &Integer::from(Integer::factorial(d)))
        .ln()?
        .div_integer(&Integer::from(d - 1));
    Ok(log_fact.add(&k.log_kappa.mul_integer(&d_pow_h)).exp())
}

/// `⌊d!^(1/(d-1)) κ(d)^(d^h)⌋`, certified by interval arithmetic.
pub fn floor_formula(d: u32, h: u32) -> Result<FloorEvaluation> {
    if d < 2 {
        return Err(invalid(format!(
            "complete tree arity must be at least 2, got {d}"
        )));
    }
    let mag = log2_magnitude(d, h)?;
    let start = u32::try_from(mag + 67).map_err(|_| invalid("magnitude too large"))?;
    let ceiling = start.saturating_mul(CEILING_FACTOR);
    let mut bits = start;
    loop {
        let x = evaluate(d, h, bits)?;
        if let Some(value) = x.floor_if_certain() {
            return Ok(FloorEvaluation {
                d,
                h,
                value,
                x,
                bits,
            });
        }
        if bits >= ceiling {
            return Err(Error::PrecisionExhausted {
                bits,
                detail: format!("floor of {x} for C^{d}_{h} is not resolved"),
            });
        }
        bits = bits.saturating_mul(2).min(ceiling);
    }
}

/// One height in a floor-formula search.
#[derive(Debug, Clone)]
pub struct HRow {
    pub h: u32,
    pub exact: BigCount,
    /// The certified floor, or the reason it could not be produced.
    pub floor: std::result::Result<BigCount, Error>,
    /// `x - N(C^d_h)`, rounded to a double.
    pub offset: Option<f64>,
}

impl HRow {
    pub fn matches(&self) -> bool {
        matches!(&self.floor, Ok(v) if *v == self.exact)
    }
}

/// Result of looking for the threshold height `H`.
#[derive(Debug, Clone)]
pub struct HSearch {
    pub d: u32,
    pub h_max: u32,
    pub rows: Vec<HRow>,
    /// Smallest `H` with a match at every `H <= h <= h_max`.
    pub threshold: Option<u32>,
}

impl HSearch {
    pub fn mismatches(&self) -> Vec<u32> {
        self.rows
            .iter()
            .filter(|r| !r.matches())
            .map(|r| r.h)
            .collect()
    }
}

/// Compares the floor formula against the exact recursion for `0 <= h <= h_max`.
pub fn find_h(d: u32, h_max: u32) -> Result<HSearch> {
    if h_max < 2 {
        return Err(invalid("h_max must be at least 2"));
    }
    let exact = complete_dary_sequence_capped(d, h_max, DEFAULT_BIT_CAP)?;
    let rows: Vec<HRow> = exact
        .into_iter()
        .enumerate()
        .map(|(h, n)| {
            let eval = floor_formula(d, h as u32);
            let offset = eval.as_ref().ok().map(|e| e.offset_from(&n).to_f64());
            HRow {
                h: h as u32,
                exact: n,
                floor: eval.map(|e| e.value),
                offset,
            }
        })
        .collect();
    let threshold = rows
        .iter()
        .rev()
        .take_while(|r| r.matches())
        .last()
        .map(|r| r.h);
    Ok(HSearch {
        d,
        h_max,
        rows,
        threshold,
    })
}

/// Fractional part of `x` as a double, for reporting.
pub fn fractional_part(x: &BigReal) -> f64 {
    let mid = x.mid();
    let floor = Float::with_val(mid.prec(), mid.floor_ref());
    Float::with_val(64, mid - &floor).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::complete_dary_count;

    #[test]
    fn binary_floor_matches_small_heights() {
        assert_eq!(floor_formula(2, 2).unwrap().value, 4);
        assert_eq!(floor_formula(2, 5).unwrap().value, 2279);
        let e = floor_formula(2, 10).unwrap();
        assert_eq!(e.value, complete_dary_count(2, 10).unwrap());
    }

    #[test]
    fn binary_threshold_is_two() {
        let search = find_h(2, 10).unwrap();
        assert_eq!(search.threshold, Some(2));
        assert_eq!(search.mismatches(), vec![0, 1]);
    }

    #[test]
    fn ternary_offset_tends_to_two() {
        // x - N approaches (d + 1)/2 from below, so the floor overshoots
        let search = find_h(3, 6).unwrap();
        let last = search.rows.last().unwrap();
        assert!((last.offset.unwrap() - 2.0).abs() < 1e-6);
        assert_eq!(search.threshold, None);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(floor_formula(1, 3).is_err());
        assert!(find_h(2, 1).is_err());
        assert!(matches!(
            floor_formula(2, 60),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
