//! Exact counts for the named families. Integer arithmetic only.

use rug::ops::Pow;
use rug::Integer;

use crate::error::{invalid, Error, Result};

/// Arbitrary-precision nonnegative count.
pub type BigCount = Integer;

/// Largest bit length [`complete_dary_sequence`] will materialize.
pub const DEFAULT_BIT_CAP: u64 = 1 << 28;

pub fn star_count(n: u64) -> Result<BigCount> {
    if n == 0 {
        return Err(invalid("a star needs at least one leaf"));
    }
    Ok(Integer::from(n))
}

pub fn binary_caterpillar_count(n: u64) -> Result<BigCount> {
    if n == 0 {
        return Err(invalid("a caterpillar needs at least one leaf"));
    }
    Ok(Integer::from(n))
}

/// Closed form `((d-1)^((n+d-2)/(d-1)) - 1) / (d-2)` for strict `d`-ary
/// caterpillars, `d >= 3`.
pub fn caterpillar_count(d: u64, n: u64) -> Result<BigCount> {
    if d == 2 {
        return Err(invalid(
            "the closed form is singular at d = 2; use binary_caterpillar_count",
        ));
    }
    if d < 2 {
        return Err(invalid(format!(
            "caterpillar arity must be at least 3, got {d}"
        )));
    }
    if n == 0 || !(n - 1).is_multiple_of(d - 1) {
        return Err(invalid(format!(
            "no strict {d}-ary caterpillar has {n} leaves (need n ≡ 1 mod {})",
            d - 1
        )));
    }
    let exponent = (n + d - 2) / (d - 1);
    let exponent = u32::try_from(exponent).map_err(|_| invalid("caterpillar too large"))?;
    let numerator = Integer::from(d - 1).pow(exponent) - 1u32;
    let (q, r) = numerator.div_rem(Integer::from(d - 2));
    debug_assert_eq!(r, 0);
    Ok(q)
}

/// Exact `binom(n, k)`; zero when `n < k`.
pub fn big_binomial(n: &BigCount, k: u32) -> BigCount {
    Integer::from(n.binomial_ref(k))
}

/// One step of the complete-tree recursion: `-N + binom(d + N, d)`.
pub fn complete_dary_step(d: u32, prev: &BigCount) -> BigCount {
    big_binomial(&(prev.clone() + d), d) - prev
}

/// `N(C^d_0), ..., N(C^d_h)` from `N(C^d_0) = 1`, refusing to materialize a
/// value longer than `bit_cap` bits.
pub fn complete_dary_sequence_capped(d: u32, h: u32, bit_cap: u64) -> Result<Vec<BigCount>> {
    if d < 2 {
        return Err(invalid(format!(
            "complete tree arity must be at least 2, got {d}"
        )));
    }
    let mut seq = Vec::with_capacity(h as usize + 1);
    seq.push(Integer::from(1));
    for level in 1..=h {
        let prev = seq.last().unwrap();
        let estimate = u64::from(d) * u64::from(prev.significant_bits());
        if estimate > bit_cap {
            return Err(Error::ResourceLimit {
                what: format!("N(C^{d}_{level}) with about {estimate} bits"),
                cap: bit_cap,
            });
        }
        let next = complete_dary_step(d, prev);
        seq.push(next);
    }
    Ok(seq)
}

pub fn complete_dary_sequence(d: u32, h: u32) -> Result<Vec<BigCount>> {
    complete_dary_sequence_capped(d, h, DEFAULT_BIT_CAP)
}

/// `N(C^d_h)` by iterating the recursion.
pub fn complete_dary_count(d: u32, h: u32) -> Result<BigCount> {
    complete_dary_sequence(d, h).map(|mut s| s.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_families() {
        assert_eq!(star_count(5).unwrap(), 5);
        assert_eq!(binary_caterpillar_count(1).unwrap(), 1);
        assert_eq!(star_count(12).unwrap(), 12);
        assert!(star_count(0).is_err());
        assert!(binary_caterpillar_count(0).is_err());
    }

    #[test]
    fn caterpillar_examples() {
        assert_eq!(caterpillar_count(3, 7).unwrap(), 15);
        assert_eq!(caterpillar_count(3, 3).unwrap(), 3);
        assert_eq!(caterpillar_count(4, 4).unwrap(), 4);
        assert_eq!(caterpillar_count(3, 5).unwrap(), 7);
        assert_eq!(caterpillar_count(3, 1).unwrap(), 1);
    }

    #[test]
    fn caterpillar_errors() {
        assert!(
            matches!(caterpillar_count(2, 5), Err(Error::InvalidArgument(m)) if m.contains("binary_caterpillar_count"))
        );
        assert!(caterpillar_count(3, 6).is_err());
        assert!(caterpillar_count(3, 0).is_err());
    }

    #[test]
    fn complete_examples() {
        assert_eq!(complete_dary_count(2, 0).unwrap(), 1);
        assert_eq!(complete_dary_count(2, 2).unwrap(), 4);
        assert_eq!(complete_dary_count(2, 5).unwrap(), 2279);
        assert_eq!(complete_dary_count(3, 1).unwrap(), 3);
        assert_eq!(complete_dary_count(3, 2).unwrap(), 17);
        assert_eq!(complete_dary_count(4, 2).unwrap(), 66);
        assert!(complete_dary_count(1, 3).is_err());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(big_binomial(&Integer::from(69), 2), 2346);
        assert_eq!(big_binomial(&Integer::from(13), 2), 78);
        assert_eq!(big_binomial(&Integer::from(1234567), 0), 1);
        assert_eq!(big_binomial(&Integer::from(3), 5), 0);
    }

    #[test]
    fn bit_cap_is_enforced() {
        let err = complete_dary_sequence_capped(2, 20, 1000).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { cap: 1000, .. }));
    }
}
