//! Zeta functions of `F` and of holomorphy rings at integer arguments `s >= 2`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, invalid};
use crate::holomorphy::HolomorphySpec;
use crate::polyring::count_monic_irreducibles_f64;
use crate::rational::{one_minus_q_inv, q_pow, PowerProduct};
use crate::Result;

/// Numerator `L(t) = c_0 + c_1 t + ... + c_{2g} t^{2g}` of the zeta function.
///
/// Only `c_0 = 1` and even degree are checked; the caller is responsible
/// for the functional equation and the Weil bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    coeffs: Vec<BigInt>,
}

impl LPolynomial {
    /// `L = 1`, the rational function field.
    pub fn one() -> Self {
        LPolynomial {
            coeffs: alloc::vec![BigInt::one()],
        }
    }

    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.first() != Some(&BigInt::one()) {
            return Err(invalid!("an L-polynomial must satisfy L(0) = 1"));
        }
        if !(coeffs.len() - 1).is_multiple_of(2) {
            return Err(invalid!("an L-polynomial has even degree 2g"));
        }
        Ok(LPolynomial { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn genus(&self) -> usize {
        (self.coeffs.len() - 1) / 2
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * t + BigRational::from_integer(c.clone())
        })
    }
}

fn check_s(s: i64) -> Result<()> {
    if s <= 1 {
        return Err(domain!("zeta is only evaluated at integers s >= 2 (s = {s})"));
    }
    Ok(())
}

/// `zeta_F(s) = L(q^{-s}) / ((1 - q^{-s})(1 - q^{1-s}))`.
pub fn zeta_f(s: i64, q: u64, l: &LPolynomial) -> Result<BigRational> {
    check_s(s)?;
    let num = l.eval(&q_pow(q, -s));
    let den = one_minus_q_inv(q, s as u64) * one_minus_q_inv(q, (s - 1) as u64);
    Ok(num / den)
}

/// `zeta_H(s) = zeta_F(s) * prod_{R in T} (1 - q^{-deg(R) s})`.
///
/// Only the degrees of the excluded places are used.
pub fn zeta_h(s: i64, spec: &HolomorphySpec, l: &LPolynomial) -> Result<BigRational> {
    let q = spec.q() as u64;
    let mut z = zeta_f(s, q, l)?;
    for d in spec.excluded_degrees() {
        z *= one_minus_q_inv(q, d as u64 * s as u64);
    }
    Ok(z)
}

/// `prod_{P in S, deg P <= t} (1 - q^{-deg(P) s})^{-1}`, exactly (genus 0).
pub fn zeta_h_euler_truncated(s: i64, spec: &HolomorphySpec, t: usize) -> Result<BigRational> {
    check_s(s)?;
    if t < 1 {
        return Err(invalid!("truncation degree must be at least 1"));
    }
    let q = spec.q() as u64;
    let mut acc = PowerProduct::new();
    for d in 1..=t {
        let n = spec.count_places_of_degree(d)?;
        acc.mul_pow(&one_minus_q_inv(q, d as u64 * s as u64).recip(), n)?;
    }
    // numerators are powers of q, denominators q^k - 1
    Ok(acc.finish_coprime())
}

/// The same truncated product in floating point, for truncations whose
/// exact value is too large to hold.
pub fn zeta_h_euler_truncated_f64(s: i64, spec: &HolomorphySpec, t: usize) -> Result<f64> {
    check_s(s)?;
    let q = spec.q() as u64;
    let mut log = 0.0;
    for d in 1..=t {
        let removed = spec.excluded_degrees().filter(|&e| e == d).count() as f64;
        let n = count_monic_irreducibles_f64(q, d) + if d == 1 { 1.0 } else { 0.0 } - removed;
        let x = libm::pow(q as f64, -((d as i64 * s) as f64));
        log -= n * libm::log1p(-x);
    }
    Ok(libm::exp(log))
}
