//! Bound checks on `κ(d)` and the growth of `N(C^d_h)`.

use rug::float::Round;
use rug::{Float, Integer};

use super::kappa::kappa;
use super::real::BigReal;
use crate::error::{invalid, Error, Result};
use crate::formulas::complete_dary_sequence_capped;

/// Decimal digits used by [`prop7_bound_check`].
pub const PROP7_DIGITS: u32 = 30;

#[derive(Debug, Clone)]
pub struct Prop7Row {
    pub d: u32,
    pub kappa: BigReal,
    /// `d^(1/(d-1))`.
    pub bound: BigReal,
    /// Certified `κ > 1`.
    pub above_one: bool,
    /// Certified `κ <= d^(1/(d-1))`.
    pub below_bound: bool,
    pub lower_margin: f64,
    pub upper_margin: f64,
}

impl Prop7Row {
    pub fn pass(&self) -> bool {
        self.above_one && self.below_bound
    }
}

#[derive(Debug, Clone)]
pub struct Prop7Report {
    pub rows: Vec<Prop7Row>,
    /// `κ(d)` strictly decreasing over `3 <= d <= d_max`.
    pub decreasing_from_three: bool,
}

impl Prop7Report {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(Prop7Row::pass)
    }
}

/// Checks `1 < κ(d) <= d^(1/(d-1))` for `2 <= d <= d_max` at 30 digits.
pub fn prop7_bound_check(d_max: u32) -> Result<Prop7Report> {
    if d_max < 2 {
        return Err(invalid("d_max must be at least 2"));
    }
    let one = Float::with_val(64, 1);
    let mut rows = Vec::new();
    for d in 2..=d_max {
        let k = kappa(d, PROP7_DIGITS)?;
        let prec = k.kappa.prec();
        let bound = BigReal::from_i64(prec, i64::from(d))
            .ln()?
            .div_integer(&Integer::from(d - 1))
            .exp();
        let above_one = k.kappa.certainly_gt(&one);
        let below_bound = k.kappa.upper() <= bound.lower();
        rows.push(Prop7Row {
            d,
            lower_margin: k.kappa.to_f64() - 1.0,
            upper_margin: bound.to_f64() - k.kappa.to_f64(),
            kappa: k.kappa,
            bound,
            above_one,
            below_bound,
        });
    }
    let decreasing_from_three = rows
        .windows(2)
        .filter(|w| w[0].d >= 3)
        .all(|w| w[1].kappa.upper() < w[0].kappa.lower());
    Ok(Prop7Report {
        rows,
        decreasing_from_three,
    })
}

/// Evidence that `N(C^d_0) < N(C^d_1) < ... < N(C^d_{h_max})`.
#[derive(Debug, Clone)]
pub struct MonotoneCertificate {
    pub d: u32,
    pub h_max: u32,
    /// Heights up to here were compared as exact integers.
    pub exact_through: u32,
    /// Remaining heights were certified by logarithm intervals.
    pub interval_steps: u32,
    pub holds: bool,
}

/// Certifies strict growth of the complete-tree counts.
///
/// Values whose bit length stays under `bit_cap` are compared exactly. Past
/// that, `a_d N^d <= N' <= d N^d` (nonnegative coefficients summing to `d`)
/// gives `d L - log d! <= log N' <= d U + log d`, carried forward with
/// directed rounding from the last exact value.
pub fn monotone_certificate(d: u32, h_max: u32, bit_cap: u64) -> Result<MonotoneCertificate> {
    if d < 2 {
        return Err(invalid(format!(
            "complete tree arity must be at least 2, got {d}"
        )));
    }
    let mut exact = vec![Integer::from(1)];
    let mut exact_through = 0;
    for h in 1..=h_max {
        match complete_dary_sequence_capped(d, h, bit_cap) {
            Ok(seq) => {
                exact = seq;
                exact_through = h;
            }
            Err(Error::ResourceLimit { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    let mut holds = exact.windows(2).all(|w| w[1] > w[0]);

    const P: u32 = 128;
    let last = exact.last().unwrap();
    let mut lo = Float::with_val_round(P, last, Round::Down).0;
    lo.ln_round(Round::Down);
    let mut hi = Float::with_val_round(P, last, Round::Up).0;
    hi.ln_round(Round::Up);
    let mut log_fact = Float::with_val_round(P, &Integer::from(Integer::factorial(d)), Round::Up).0;
    log_fact.ln_round(Round::Up);
    let mut log_d = Float::with_val(P, d);
    log_d.ln_round(Round::Up);

    let mut interval_steps = 0;
    for _ in exact_through..h_max {
        let next_lo = Float::with_val_round(P, &lo * d, Round::Down).0;
        let next_lo = Float::with_val_round(P, &next_lo - &log_fact, Round::Down).0;
        let next_hi = Float::with_val_round(P, &hi * d, Round::Up).0;
        let next_hi = Float::with_val_round(P, &next_hi + &log_d, Round::Up).0;
        holds &= next_lo > hi;
        lo = next_lo;
        hi = next_hi;
        interval_steps += 1;
    }
    Ok(MonotoneCertificate {
        d,
        h_max,
        exact_through,
        interval_steps,
        holds,
    })
}
