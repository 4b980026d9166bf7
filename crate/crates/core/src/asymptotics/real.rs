//! Midpoint-radius reals over MPFR.
//!
//! A [`BigReal`] is a ball: the exact value lies in `[mid - rad, mid + rad]`.
//! Every operation rounds its midpoint to nearest at the working precision
//! and grows the radius by the propagated input error plus one ulp of the
//! result; radii are kept at 64 bits and always rounded up.

use std::cmp::Ordering;
use std::fmt;

use rug::float::{Round, Special};
use rug::ops::AssignRound;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

const RAD_PREC: u32 = 64;

#[derive(Debug, Clone)]
pub struct BigReal {
    mid: Float,
    rad: Float,
}

fn up<T>(value: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(RAD_PREC, value, Round::Up).0
}

/// Rounding error bound for a result produced with ordering `ord`.
fn rounding_error(result: &Float, ord: Ordering) -> Float {
    if ord == Ordering::Equal {
        return Float::new(RAD_PREC);
    }
    match result.get_exp() {
        Some(e) => {
            let mut u = Float::with_val(RAD_PREC, 1);
            u <<= e - result.prec() as i32;
            u
        }
        // an inexact zero only arises on underflow
        None => Float::with_val(RAD_PREC, Special::Infinity),
    }
}

fn abs_up(x: &Float) -> Float {
    up(x.abs_ref())
}

impl BigReal {
    fn from_parts(mid: Float, ord: Ordering, rad: Float) -> Self {
        let err = rounding_error(&mid, ord);
        BigReal {
            rad: up(&rad + &err),
            mid,
        }
    }

    pub fn from_integer(prec: u32, n: &Integer) -> Self {
        let (mid, ord) = Float::with_val_round(prec, n, Round::Nearest);
        Self::from_parts(mid, ord, Float::new(RAD_PREC))
    }

    pub fn from_rational(prec: u32, q: &Rational) -> Self {
        let (mid, ord) = Float::with_val_round(prec, q, Round::Nearest);
        Self::from_parts(mid, ord, Float::new(RAD_PREC))
    }

    pub fn from_float(prec: u32, x: &Float) -> Self {
        let (mid, ord) = Float::with_val_round(prec, x, Round::Nearest);
        Self::from_parts(mid, ord, Float::new(RAD_PREC))
    }

    pub fn from_i64(prec: u32, v: i64) -> Self {
        Self::from_integer(prec, &Integer::from(v))
    }

    pub fn zero(prec: u32) -> Self {
        BigReal {
            mid: Float::new(prec),
            rad: Float::new(RAD_PREC),
        }
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn radius(&self) -> &Float {
        &self.rad
    }

    /// Widens the ball by `extra`.
    pub fn widen(&self, extra: &Float) -> Self {
        BigReal {
            mid: self.mid.clone(),
            rad: up(&self.rad + extra),
        }
    }

    /// Lower edge, rounded down.
    pub fn lower(&self) -> Float {
        Float::with_val_round(self.prec() + RAD_PREC, &self.mid - &self.rad, Round::Down).0
    }

    /// Upper edge, rounded up.
    pub fn upper(&self) -> Float {
        Float::with_val_round(self.prec() + RAD_PREC, &self.mid + &self.rad, Round::Up).0
    }

    pub fn add(&self, other: &BigReal) -> BigReal {
        let (mid, ord) = Float::with_val_round(self.prec(), &self.mid + &other.mid, Round::Nearest);
        Self::from_parts(mid, ord, up(&self.rad + &other.rad))
    }

    pub fn sub(&self, other: &BigReal) -> BigReal {
        let (mid, ord) = Float::with_val_round(self.prec(), &self.mid - &other.mid, Round::Nearest);
        Self::from_parts(mid, ord, up(&self.rad + &other.rad))
    }

    pub fn neg(&self) -> BigReal {
        BigReal {
            mid: Float::with_val(self.prec(), -&self.mid),
            rad: self.rad.clone(),
        }
    }

    pub fn mul(&self, other: &BigReal) -> BigReal {
        let (mid, ord) = Float::with_val_round(self.prec(), &self.mid * &other.mid, Round::Nearest);
        let a = up(&abs_up(&self.mid) * &other.rad);
        let b = up(&abs_up(&other.mid) * &self.rad);
        let c = up(&self.rad * &other.rad);
        let rad = up(&up(&a + &b) + &c);
        Self::from_parts(mid, ord, rad)
    }

    pub fn mul_integer(&self, k: &Integer) -> BigReal {
        let (mid, ord) = Float::with_val_round(self.prec(), &self.mid * k, Round::Nearest);
        let k_abs = up(&Integer::from(k.abs_ref()));
        Self::from_parts(mid, ord, up(&self.rad * &k_abs))
    }

    /// Division by a positive integer.
    pub fn div_integer(&self, k: &Integer) -> BigReal {
        debug_assert!(*k > 0);
        let (mid, ord) = Float::with_val_round(self.prec(), &self.mid / k, Round::Nearest);
        let k_low = Float::with_val_round(RAD_PREC, k, Round::Down).0;
        Self::from_parts(mid, ord, up(&self.rad / &k_low))
    }

    fn positive_lower(&self, what: &str) -> Result<Float> {
        let lo = Float::with_val_round(RAD_PREC, &self.mid - &self.rad, Round::Down).0;
        if lo <= 0 {
            return Err(Error::PreconditionViolation(format!(
                "{what} of a ball that is not strictly positive ({self})"
            )));
        }
        Ok(lo)
    }

    pub fn ln(&self) -> Result<BigReal> {
        let lo = self.positive_lower("logarithm")?;
        let (mid, ord) = Float::with_val_round(self.prec(), self.mid.ln_ref(), Round::Nearest);
        Ok(Self::from_parts(mid, ord, up(&self.rad / &lo)))
    }

    /// `ln(1 + x)`, accurate for small `x`.
    pub fn ln_1p(&self) -> Result<BigReal> {
        let one_plus = Float::with_val_round(RAD_PREC, &self.mid - &self.rad, Round::Down).0 + 1u32;
        if one_plus <= 0 {
            return Err(Error::PreconditionViolation(format!(
                "ln(1 + x) with x = {self} reaching -1"
            )));
        }
        let one_plus_low = Float::with_val_round(RAD_PREC, &one_plus, Round::Down).0;
        let (mid, ord) = Float::with_val_round(self.prec(), self.mid.ln_1p_ref(), Round::Nearest);
        Ok(Self::from_parts(mid, ord, up(&self.rad / &one_plus_low)))
    }

    pub fn exp(&self) -> BigReal {
        let (mid, ord) = Float::with_val_round(self.prec(), self.mid.exp_ref(), Round::Nearest);
        let mut top = up(&self.mid + &self.rad);
        top.exp_round(Round::Up);
        Self::from_parts(mid, ord, up(&top * &self.rad))
    }

    /// `floor(x)` when the whole ball lies in one unit interval.
    pub fn floor_if_certain(&self) -> Option<Integer> {
        let lo = self.lower().to_integer_round(Round::Down)?.0;
        let hi = self.upper().to_integer_round(Round::Down)?.0;
        (lo == hi).then_some(lo)
    }

    /// Both edges strictly above `v`.
    pub fn certainly_gt(&self, v: &Float) -> bool {
        self.lower() > *v
    }

    pub fn certainly_le(&self, v: &Float) -> bool {
        self.upper() <= *v
    }

    /// Round-half-even decimal rendering with `digits` significant digits,
    /// or `None` when the two edges of the ball round differently.
    pub fn to_sig_digits(&self, digits: u32) -> Option<String> {
        let lo = round_sig(&self.lower(), digits)?;
        let hi = round_sig(&self.upper(), digits)?;
        (lo == hi).then_some(lo)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }
}

/// Decimal rounding of a finite float to `digits` significant digits, ties to even.
pub fn round_sig(x: &Float, digits: u32) -> Option<String> {
    let q = x.to_rational()?;
    if q == 0 {
        return Some("0".to_string());
    }
    let negative = q < 0;
    let q = q.abs();
    let e2 = x.get_exp()? as f64;
    let mut e10 = ((e2 - 1.0) * std::f64::consts::LOG10_2).floor() as i64;
    let pow10 = |e: i64| -> Rational {
        if e >= 0 {
            Rational::from(Integer::from(10).pow(e as u32))
        } else {
            Rational::from((Integer::from(1), Integer::from(10).pow((-e) as u32)))
        }
    };
    while pow10(e10 + 1) <= q {
        e10 += 1;
    }
    while pow10(e10) > q {
        e10 -= 1;
    }
    let shift = i64::from(digits) - 1 - e10;
    let scaled = q * pow10(shift);
    let mut n = round_half_even(&scaled);
    if n == Integer::from(10).pow(digits) {
        n /= 10;
        e10 += 1;
    }
    let body = n.to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-6..=30).contains(&e10) {
        if e10 >= 0 {
            let int_len = (e10 + 1) as usize;
            if body.len() <= int_len {
                out.push_str(&body);
                out.extend(std::iter::repeat_n('0', int_len - body.len()));
            } else {
                out.push_str(&body[..int_len]);
                out.push('.');
                out.push_str(&body[int_len..]);
            }
        } else {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-e10 - 1) as usize));
            out.push_str(&body);
        }
    } else {
        out.push_str(&body[..1]);
        if body.len() > 1 {
            out.push('.');
            out.push_str(&body[1..]);
        }
        out.push_str(&format!("e{e10}"));
    }
    Some(out)
}

fn round_half_even(q: &Rational) -> Integer {
    let floor = Integer::from(q.floor_ref());
    let frac = Rational::from(q - &floor);
    let half = Rational::from((1, 2));
    match frac.cmp(&half) {
        Ordering::Less => floor,
        Ordering::Greater => floor + 1u32,
        Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1u32
            }
        }
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown = round_sig(&self.mid, 20).unwrap_or_else(|| self.mid.to_string());
        write!(f, "{shown} ± {:.3e}", self.rad.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_of_e_contains_one() {
        let e = BigReal::from_i64(200, 1).exp();
        let one = e.ln().unwrap();
        assert!(one.lower() <= 1 && one.upper() >= 1);
        assert!(one.radius().to_f64() < 1e-55);
    }

    #[test]
    fn balls_track_error() {
        let third = BigReal::from_rational(100, &Rational::from((1, 3)));
        assert!(third.radius().to_f64() > 0.0);
        let sum = third.add(&third).add(&third);
        assert!(sum.lower() <= 1 && sum.upper() >= 1);
        let exact = BigReal::from_i64(100, 3);
        assert_eq!(exact.radius().to_f64(), 0.0);
    }

    #[test]
    fn rejects_nonpositive_log() {
        assert!(BigReal::from_i64(64, 0).ln().is_err());
        assert!(BigReal::from_i64(64, -1).ln_1p().is_err());
    }

    #[test]
    fn decimal_rounding() {
        let x = Float::with_val(200, Float::parse("1.2460208329836625089").unwrap());
        assert_eq!(round_sig(&x, 16).unwrap(), "1.246020832983663");
        assert_eq!(round_sig(&x, 5).unwrap(), "1.2460");
        let tie = Float::with_val(64, 0.125);
        assert_eq!(round_sig(&tie, 2).unwrap(), "0.12");
        let big = Float::with_val(64, 999.96);
        assert_eq!(round_sig(&big, 4).unwrap(), "1000");
        let small = Float::with_val(64, -0.000123456);
        assert_eq!(round_sig(&small, 3).unwrap(), "-0.000123");
    }

    #[test]
    fn floor_certainty() {
        let x = BigReal::from_rational(128, &Rational::from((7, 2)));
        assert_eq!(x.floor_if_certain(), Some(Integer::from(3)));
        let near = BigReal::from_i64(128, 4).widen(&Float::with_val(64, 0.01));
        assert_eq!(near.floor_if_certain(), None);
    }
}
