//! Binomial tails and the sparse-regime parameter `ℓ = ⌊ln d / ln ln d⌋`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `Pr[Bin(n, p) ≥ l]`.
///
/// The smaller of the two tails is summed term by term, anchored at a pmf value
/// evaluated in log space; the terms are monotone away from the anchor, so no
/// overflow or cancellation occurs. Relative error is a few ulps per summed term.
pub fn binom_tail(n: u64, p: f64, l: u64) -> f64 {
    assert!((0.0..=1.0).contains(&p), "probability out of range: {p}");
    if l == 0 {
        return 1.0;
    }
    if l > n || p == 0.0 {
        return 0.0;
    }
    if p == 1.0 {
        return 1.0;
    }
    let mean = n as f64 * p;
    let odds = p / (1.0 - p);
    if l as f64 > mean {
        // upper tail, decreasing from k = l
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = l;
        while k < n {
            term *= (n - k) as f64 / (k + 1) as f64 * odds;
            sum += term;
            k += 1;
            if term < sum * 1e-18 {
                break;
            }
        }
        (ln_pmf(n, p, l) + sum.ln()).exp()
    } else {
        // lower tail below l, increasing up to k = l - 1
        let top = l - 1;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = top;
        while k > 0 {
            term *= k as f64 / (n - k + 1) as f64 / odds;
            sum += term;
            k -= 1;
            if term < sum * 1e-18 {
                break;
            }
        }
        let lower = (ln_pmf(n, p, top) + sum.ln()).exp();
        (1.0 - lower).max(0.0)
    }
}

/// `ln Pr[Bin(n, p) = k]` for `0 < p < 1`.
pub fn ln_pmf(n: u64, p: f64, k: u64) -> f64 {
    let k = k.min(n);
    let kk = k.min(n - k);
    let mut ln_choose = 0.0;
    for i in 0..kk {
        ln_choose += ((n - i) as f64 / (i + 1) as f64).ln();
    }
    ln_choose + k as f64 * p.ln() + (n - k) as f64 * (-p).ln_1p()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("degree parameter {0} is below 16 (ln ln d must exceed 1)")]
pub struct SmallDegree(pub u64);

/// `⌊ln d / ln ln d⌋` (natural logarithms) for `d ≥ 16`.
///
/// When the double-precision quotient lies within `1e-9` of an integer `k`, the
/// decision `ln d ≥ k · ln ln d` is redone in 256-bit fixed point.
pub fn ell_of(d: u64) -> Result<u32, SmallDegree> {
    if d < 16 {
        return Err(SmallDegree(d));
    }
    let ln_d = (d as f64).ln();
    let q = ln_d / ln_d.ln();
    let k = q.round();
    if (q - k).abs() > 1e-9 {
        return Ok(q.floor() as u32);
    }
    let k = k as u32;
    let ln_d = fixed::ln(&fixed::from_int(d));
    let ln_ln_d = fixed::ln(&ln_d);
    let diff = ln_d - ln_ln_d * BigInt::from(k);
    Ok(if diff.is_negative() { k - 1 } else { k })
}

/// Natural logarithm in binary fixed point with [`fixed::BITS`] fractional bits.
mod fixed {
    use super::*;

    pub const BITS: u32 = 256;

    pub fn from_int(v: u64) -> BigInt {
        BigInt::from(v) << BITS
    }

    fn one() -> BigInt {
        BigInt::one() << BITS
    }

    /// `2 atanh(z)` for fixed-point `|z| ≤ 1/3`.
    fn two_atanh(z: &BigInt) -> BigInt {
        let z2 = (z * z) >> BITS;
        let mut power = z.clone();
        let mut sum = BigInt::zero();
        let mut k = 1u32;
        while !power.is_zero() {
            sum += &power / BigInt::from(k);
            power = (&power * &z2) >> BITS;
            k += 2;
        }
        sum << 1
    }

    /// `ln x` for fixed-point `x ≥ 1`.
    pub fn ln(x: &BigInt) -> BigInt {
        assert!(*x >= one());
        let e = x.bits() - 1 - BITS as u64;
        let f = x >> e; // in [1, 2)
        let z = ((&f - one()) << BITS) / (&f + one());
        let ln2 = two_atanh(&((one()) / BigInt::from(3)));
        ln2 * BigInt::from(e) + two_atanh(&z)
    }

    #[cfg(test)]
    pub fn to_f64(x: &BigInt) -> f64 {
        let hi: BigInt = x >> (BITS - 60);
        num_traits::ToPrimitive::to_f64(&hi).unwrap() / (1u64 << 60) as f64
    }
}
