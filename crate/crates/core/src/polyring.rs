//! Univariate polynomials over `F_q`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{domain, invalid};
use crate::gf::{prime_factors, GaloisField, Gf};
use crate::{Error, Result};

/// A polynomial in `F_q[x]`, coefficients least-significant first, with no
/// trailing zeros. The zero polynomial has no coefficients.
///
/// `Ord` is the canonical enumeration order: by degree, then by coefficients
/// from the top down. For polynomials of degree `< d` this is the order of
/// the base-`q` index `c_0 + c_1 q + ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Gf>,
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Gf::ONE] }
    }

    pub fn constant(c: Gf) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Gf::ZERO; k + 1];
        coeffs[k] = Gf::ONE;
        Poly { coeffs }
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn from_coeffs(mut coeffs: Vec<Gf>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Gf] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Gf {
        self.coeffs.get(i).copied().unwrap_or(Gf::ZERO)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Gf::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<Gf> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Gf::ONE)
    }

    /// The polynomial whose coefficient vector is the base-`q` expansion of `index`.
    pub fn from_index(mut index: u64, q: u32) -> Self {
        let mut coeffs = Vec::new();
        while index > 0 {
            coeffs.push(Gf((index % q as u64) as u32));
            index /= q as u64;
        }
        Poly { coeffs }
    }

    /// Inverse of [`Poly::from_index`]; `None` on overflow.
    pub fn index(&self, q: u32) -> Option<u64> {
        self.coeffs
            .iter()
            .rev()
            .try_fold(0u64, |acc, c| acc.checked_mul(q as u64)?.checked_add(c.0 as u64))
    }
}

/// Möbius function, by trial factorisation.
pub fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Arithmetic in `F_q[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: GaloisField,
}

impl PolyRing {
    pub fn new(field: GaloisField) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn add(&self, f: &Poly, g: &Poly) -> Poly {
        let n = f.coeffs.len().max(g.coeffs.len());
        let coeffs = (0..n).map(|i| self.field.add(f.coeff(i), g.coeff(i))).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self, f: &Poly) -> Poly {
        Poly {
            coeffs: f.coeffs.iter().map(|&c| self.field.neg(c)).collect(),
        }
    }

    pub fn sub(&self, f: &Poly, g: &Poly) -> Poly {
        let n = f.coeffs.len().max(g.coeffs.len());
        let coeffs = (0..n).map(|i| self.field.sub(f.coeff(i), g.coeff(i))).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, f: &Poly, c: Gf) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: f.coeffs.iter().map(|&a| self.field.mul(a, c)).collect(),
        }
    }

    /// `f * x^k`.
    pub fn shift_up(&self, f: &Poly, k: usize) -> Poly {
        if f.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Gf::ZERO; k];
        coeffs.extend_from_slice(&f.coeffs);
        Poly { coeffs }
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Poly {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Gf::ZERO; f.coeffs.len() + g.coeffs.len() - 1];
        for (i, &a) in f.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in g.coeffs.iter().enumerate() {
                out[i + j] = self.field.add(out[i + j], self.field.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, f: &Poly, mut n: u64) -> Poly {
        let mut base = f.clone();
        let mut acc = Poly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Euclidean division `f = quo * g + rem`, `deg rem < deg g`.
    pub fn divmod(&self, f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
        let dg = g.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = self.field.inverse(g.coeffs[dg])?;
        let mut rem = f.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Poly::zero(), f.clone()));
        }
        let mut quo = vec![Gf::ZERO; rem.len() - dg];
        for i in (0..quo.len()).rev() {
            let c = self.field.mul(rem[i + dg], inv_lead);
            if c.is_zero() {
                continue;
            }
            quo[i] = c;
            for (j, &b) in g.coeffs.iter().enumerate() {
                rem[i + j] = self.field.sub(rem[i + j], self.field.mul(c, b));
            }
        }
        rem.truncate(dg);
        Ok((Poly::from_coeffs(quo), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        Ok(self.divmod(f, g)?.1)
    }

    /// `f / g` when `g` divides `f`.
    pub fn div_exact(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(f, g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(domain!("polynomial division is not exact"))
        }
    }

    pub fn divides(&self, g: &Poly, f: &Poly) -> bool {
        !g.is_zero() && self.rem(f, g).is_ok_and(|r| r.is_zero())
    }

    pub fn eval(&self, f: &Poly, a: Gf) -> Gf {
        f.coeffs
            .iter()
            .rev()
            .fold(Gf::ZERO, |acc, &c| self.field.add(self.field.mul(acc, a), c))
    }

    pub fn monic(&self, f: &Poly) -> Poly {
        match f.leading() {
            Some(l) if l != Gf::ONE => self.scale(f, self.field.inverse(l).unwrap()),
            _ => f.clone(),
        }
    }

    pub fn derivative(&self, f: &Poly) -> Poly {
        let coeffs = f
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.field.mul(self.field.from_int(i as i64), c))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Monic generator of the ideal `(f, g)`.
    pub fn gcd(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        if f.is_zero() && g.is_zero() {
            return Err(domain!("gcd(0, 0) is undefined"));
        }
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b)?;
            a = b;
            b = r;
        }
        Ok(self.monic(&a))
    }

    /// `(d, s, t)` with `d = s f + t g` monic.
    pub fn ext_gcd(&self, f: &Poly, g: &Poly) -> Result<(Poly, Poly, Poly)> {
        if f.is_zero() && g.is_zero() {
            return Err(domain!("gcd(0, 0) is undefined"));
        }
        let (mut r0, mut r1) = (f.clone(), g.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (quo, rem) = self.divmod(&r0, &r1)?;
            let s2 = self.sub(&s0, &self.mul(&quo, &s1));
            let t2 = self.sub(&t0, &self.mul(&quo, &t1));
            r0 = core::mem::replace(&mut r1, rem);
            s0 = core::mem::replace(&mut s1, s2);
            t0 = core::mem::replace(&mut t1, t2);
        }
        let inv = self.field.inverse(r0.leading().unwrap())?;
        Ok((self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv)))
    }

    /// Inverse of `f` modulo `m`.
    pub fn inverse_mod(&self, f: &Poly, m: &Poly) -> Result<Poly> {
        let (d, s, _) = self.ext_gcd(f, m)?;
        if !d.is_one() {
            return Err(domain!("polynomial is not invertible modulo the given modulus"));
        }
        self.rem(&s, m)
    }

    pub fn mulmod(&self, f: &Poly, g: &Poly, m: &Poly) -> Result<Poly> {
        self.rem(&self.mul(f, g), m)
    }

    pub fn powmod(&self, f: &Poly, mut n: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(f, m)?;
        let mut acc = self.rem(&Poly::one(), m)?;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mulmod(&acc, &base, m)?;
            }
            n >>= 1;
            if n > 0 {
                base = self.mulmod(&base, &base, m)?;
            }
        }
        Ok(acc)
    }

    /// Rabin's test: `f` of degree `n` is irreducible iff `x^{q^n} = x mod f`
    /// and `gcd(x^{q^{n/r}} - x, f) = 1` for every prime `r | n`.
    pub fn is_irreducible(&self, f: &Poly) -> Result<bool> {
        let n = match f.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(domain!("irreducibility is undefined for constants")),
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic(f);
        let q = self.q() as u64;
        let x = Poly::x();
        // frob[k] = x^{q^k} mod f
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(self.rem(&x, &f)?);
        for k in 1..=n {
            let next = self.powmod(&frob[k - 1], q, &f)?;
            frob.push(next);
        }
        if frob[n] != frob[0] {
            return Ok(false);
        }
        for r in prime_factors(n as u64) {
            let h = self.sub(&frob[n / r as usize], &x);
            if h.is_zero() || !self.gcd(&h, &f)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All monic polynomials of degree exactly `d`, in canonical order.
    pub fn monics(&self, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = self.q();
        let count = (q as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
        (0..count).map(move |low| {
            let mut coeffs = Poly::from_index(low, q).coeffs;
            coeffs.resize(d, Gf::ZERO);
            coeffs.push(Gf::ONE);
            Poly { coeffs }
        })
    }

    /// Polynomials of degree `< len` in canonical order (the index order).
    pub fn polys_below(&self, len: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = self.q();
        let count = (q as u64).checked_pow(len as u32).unwrap_or(u64::MAX);
        (0..count).map(move |i| Poly::from_index(i, q))
    }

    /// Monic irreducibles of degree exactly `d`, canonical order.
    pub fn monic_irreducibles(&self, d: usize) -> Result<Vec<Poly>> {
        if d < 1 {
            return Err(invalid!("degree must be at least 1"));
        }
        const CAP: u64 = 1 << 24;
        match (self.q() as u64).checked_pow(d as u32) {
            Some(n) if n <= CAP => {}
            _ => {
                return Err(Error::TooLarge {
                    what: alloc::format!("the set of monic polynomials of degree {d}"),
                    size: alloc::format!("{}^{d}", self.q()),
                    cap: CAP,
                })
            }
        }
        let mut out = Vec::new();
        for f in self.monics(d) {
            if d == 1 || (!f.coeff(0).is_zero() && self.is_irreducible(&f)?) {
                out.push(f);
            }
        }
        Ok(out)
    }

    /// `(1/d) sum_{e | d} mu(e) q^{d/e}`.
    pub fn count_monic_irreducibles(&self, d: usize) -> Result<u128> {
        count_monic_irreducibles(self.q() as u64, d)
    }
}

/// Number of monic irreducibles of degree `d` over `F_q`.
pub fn count_monic_irreducibles(q: u64, d: usize) -> Result<u128> {
    if d < 1 {
        return Err(invalid!("degree must be at least 1"));
    }
    let d = d as u64;
    let mut total: i128 = 0;
    for e in 1..=d {
        if !d.is_multiple_of(e) {
            continue;
        }
        let mu = mobius(e);
        if mu == 0 {
            continue;
        }
        let term = (q as u128)
            .checked_pow((d / e) as u32)
            .filter(|&v| v <= i128::MAX as u128)
            .ok_or(Error::Overflow("irreducible count"))? as i128;
        total += mu as i128 * term;
    }
    Ok((total / d as i128) as u128)
}

/// Approximate count as `f64`, valid for any degree.
pub fn count_monic_irreducibles_f64(q: u64, d: usize) -> f64 {
    if let Ok(n) = count_monic_irreducibles(q, d) {
        return n as f64;
    }
    let d = d as u64;
    let mut total = 0.0;
    for e in 1..=d {
        if d.is_multiple_of(e) {
            total += mobius(e) as f64 * libm::pow(q as f64, (d / e) as f64);
        }
    }
    total / d as f64
}
