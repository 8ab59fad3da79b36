//! Rational intervals and a certified enclosure of pi.
//!
//! The enclosure uses the Machin identity pi = 16*atan(1/5) - 4*atan(1/239).
//! Each arctangent is bounded on both sides by partial sums of its
//! alternating series, so the endpoints are exact rationals and the interval
//! provably contains pi. Comparisons of `q * pi` against rationals are
//! decidable for q != 0 because the product is irrational: refining the
//! enclosure must eventually separate the two.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Default enclosure width is 2^-128.
pub const DEFAULT_PI_BITS: u32 = 128;
/// Hard cap for refinement loops; reaching it is a structured failure.
pub const PI_BITS_CAP: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("interval refinement exhausted at {bits} bits without a decision")]
    PrecisionExhausted { bits: u32 },
}

/// Closed interval with exact rational endpoints, lo <= hi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RationalInterval { lo, hi }
    }

    pub fn point(q: Rational) -> Self {
        RationalInterval { lo: q.clone(), hi: q }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn add(&self, rhs: &Self) -> Self {
        RationalInterval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        RationalInterval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }

    pub fn neg(&self) -> Self {
        RationalInterval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    /// Endpoint scaling; a negative factor swaps the endpoints.
    pub fn scale_rat(&self, r: &Rational) -> Self {
        let a = &self.lo * r;
        let b = &self.hi * r;
        if r.is_negative() {
            RationalInterval { lo: b, hi: a }
        } else {
            RationalInterval { lo: a, hi: b }
        }
    }

    pub fn floor_pair(&self) -> (BigInt, BigInt) {
        (self.lo.floor().to_integer(), self.hi.floor().to_integer())
    }

    /// The floor of every point of the interval, when that is a single value.
    pub fn certified_floor(&self) -> Option<BigInt> {
        let (f_lo, f_hi) = self.floor_pair();
        (f_lo == f_hi).then_some(f_lo)
    }
}

/// Two-sided bound on atan(1/x) with width at most `target`.
///
/// Partial sums of the alternating series land above the limit after an odd
/// number of terms and below after an even number, and the error is bounded
/// by the first omitted term.
fn atan_recip_enclosure(x: u64, target: &Rational) -> RationalInterval {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut xpow = BigInt::from(x);
    let mut sum = Rational::zero();
    let mut k: u64 = 0;
    loop {
        let term = Rational::new(BigInt::one(), BigInt::from(2 * k + 1) * &xpow);
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        xpow *= &x2;
        let next = Rational::new(BigInt::one(), BigInt::from(2 * k + 3) * &xpow);
        if &next <= target {
            let terms = k + 1;
            return if terms % 2 == 0 {
                RationalInterval::new(sum.clone(), sum + next)
            } else {
                RationalInterval::new(&sum - &next, sum)
            };
        }
        k += 1;
    }
}

/// Enclosure of pi with width at most 2^-bits. Requests below 8 bits are
/// promoted to 8.
pub fn pi_enclosure(bits: u32) -> RationalInterval {
    let bits = bits.max(8);
    let target = Rational::new(BigInt::one(), BigInt::one() << (bits as usize));
    let thirty_two = Rational::from_integer(BigInt::from(32));
    let eight = Rational::from_integer(BigInt::from(8));
    let a = atan_recip_enclosure(5, &(&target / thirty_two));
    let b = atan_recip_enclosure(239, &(&target / eight));
    let sixteen = Rational::from_integer(BigInt::from(16));
    let four = Rational::from_integer(BigInt::from(4));
    a.scale_rat(&sixteen).sub(&b.scale_rat(&four))
}

/// Certified floor(r * pi), refining the enclosure as needed.
pub fn floor_of_pi_multiple(r: &Rational, start_bits: u32) -> Result<BigInt, IntervalError> {
    if r.is_zero() {
        return Ok(BigInt::zero());
    }
    let mut bits = start_bits.max(8);
    loop {
        if let Some(f) = pi_enclosure(bits).scale_rat(r).certified_floor() {
            return Ok(f);
        }
        if bits >= PI_BITS_CAP {
            return Err(IntervalError::PrecisionExhausted { bits });
        }
        bits = (bits * 2).min(PI_BITS_CAP);
    }
}

/// Certified ordering of r * pi against a rational target.
pub fn compare_pi_multiple(
    r: &Rational,
    target: &Rational,
    start_bits: u32,
) -> Result<Ordering, IntervalError> {
    if r.is_zero() {
        return Ok(Rational::zero().cmp(target));
    }
    let mut bits = start_bits.max(8);
    loop {
        let iv = pi_enclosure(bits).scale_rat(r);
        if iv.hi() < target {
            return Ok(Ordering::Less);
        }
        if iv.lo() > target {
            return Ok(Ordering::Greater);
        }
        if bits >= PI_BITS_CAP {
            return Err(IntervalError::PrecisionExhausted { bits });
        }
        bits = (bits * 2).min(PI_BITS_CAP);
    }
}
