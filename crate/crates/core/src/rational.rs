//! Small helpers around [`BigRational`].

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::{Error, Result};

/// Largest bit size tolerated for an exact power before giving up.
pub const MAX_EXACT_BITS: u64 = 1 << 22;

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `q^e` for any integer `e`.
pub fn q_pow(q: u64, e: i64) -> BigRational {
    let p = BigInt::from(q).pow(e.unsigned_abs());
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// `1 - q^{-e}`.
pub fn one_minus_q_inv(q: u64, e: u64) -> BigRational {
    BigRational::one() - q_pow(q, -(e as i64))
}

/// A product of rational powers whose reduction is deferred to [`PowerProduct::finish`].
#[derive(Clone, Debug)]
pub struct PowerProduct {
    num: BigInt,
    den: BigInt,
    bits: u128,
}

impl Default for PowerProduct {
    fn default() -> Self {
        Self::new()
    }
}

impl PowerProduct {
    pub fn new() -> Self {
        PowerProduct {
            num: BigInt::one(),
            den: BigInt::one(),
            bits: 0,
        }
    }

    /// Multiplies in `base^n`, failing once the running size passes [`MAX_EXACT_BITS`].
    pub fn mul_pow(&mut self, base: &BigRational, n: u128) -> Result<()> {
        if n == 0 {
            return Ok(());
        }
        let b = base.numer().bits().max(base.denom().bits()) as u128;
        self.bits = self.bits.saturating_add(b.saturating_mul(n));
        if self.bits > MAX_EXACT_BITS as u128 {
            return Err(Error::Overflow(
                "an exact rational product (use the floating-point evaluation)",
            ));
        }
        let n = n as u32;
        self.num *= base.numer().pow(n);
        self.den *= base.denom().pow(n);
        Ok(())
    }

    pub fn finish(self) -> BigRational {
        BigRational::new(self.num, self.den)
    }

    /// Skips the final gcd. The caller guarantees the numerators multiplied
    /// in are all coprime to the denominators.
    pub fn finish_coprime(self) -> BigRational {
        BigRational::new_raw(self.num, self.den)
    }

    /// `1 - product`, under the same guarantee as [`PowerProduct::finish_coprime`].
    pub fn one_minus_coprime(self) -> BigRational {
        BigRational::new_raw(&self.den - &self.num, self.den)
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// The reduced denominator of `r` divides some power of `q`.
pub fn denominator_divides_power_of(r: &BigRational, q: u64) -> bool {
    let mut d: BigUint = r.denom().magnitude().clone();
    let q = BigUint::from(q);
    loop {
        let g = d.gcd(&q);
        if g.is_one() {
            return d.is_one();
        }
        while (&d % &g).is_zero() {
            d /= &g;
        }
    }
}
