//! Finite fields `F_q`, `q = p^e`.
//!
//! Elements are stored as their index `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! where `c_i` are the coordinates in the power basis of the modulus. Index
//! order is the canonical element order used by every enumeration.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain, invalid};
use crate::{Error, Result};

/// Largest field order accepted. Log/exp tables are `O(q)`.
pub const MAX_ORDER: u64 = 1 << 20;

/// An element of a [`GaloisField`], identified by its index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf(pub(crate) u32);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    p: u32,
    e: u32,
    q: u32,
    /// Monic, least-significant first, length `e + 1`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The finite field `F_p[t]/(modulus)`.
///
/// Cloning is cheap; the arithmetic tables are shared.
#[derive(Clone)]
pub struct GaloisField {
    t: Arc<Tables>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.t.p)
            .field("e", &self.t.e)
            .field("modulus", &self.t.modulus)
            .finish()
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t) || (self.t.p == other.t.p && self.t.modulus == other.t.modulus)
    }
}

impl Eq for GaloisField {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q` as `p^e`, if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut e = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        e += 1;
    }
    Some((p as u32, e))
}

// Dense polynomials over F_p on coordinate vectors; only used while building tables.

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m is monic
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap() as u64;
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = (lead * c as u64) % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

fn fp_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    fp_rem(&prod, m, p)
}

fn digits(mut index: u32, p: u32, e: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(e as usize);
    for _ in 0..e {
        v.push(index % p);
        index /= p;
    }
    trim(&mut v);
    v
}

fn undigits(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Irreducibility of a monic polynomial over `F_p` by trial division with
/// every monic polynomial of degree at most half its degree.
fn fp_is_irreducible(m: &[u32], p: u32) -> bool {
    let e = m.len() - 1;
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut cand = digits(low as u32, p, d as u32);
            cand.resize(d, 0);
            cand.push(1);
            if fp_rem(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::extension(p, &[0, 1])
    }

    /// `F_p[t]/(modulus)`; `modulus` is monic, least-significant first, and
    /// must be irreducible over `F_p`.
    pub fn extension(p: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(invalid!("characteristic {p} is not prime"));
        }
        if modulus.len() < 2 {
            return Err(invalid!("modulus must have degree at least 1"));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(invalid!("modulus coefficients must lie in [0, {p})"));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(invalid!("modulus must be monic"));
        }
        let e = (modulus.len() - 1) as u32;
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| invalid!("field order {p}^{e} exceeds {MAX_ORDER}"))?;
        if e > 1 && !fp_is_irreducible(modulus, p) {
            return Err(domain!("modulus is reducible over F_{p}"));
        }
        let q = q as u32;
        let modulus = modulus.to_vec();

        let (exp, log) = if q == 2 {
            (vec![1], vec![0, 0])
        } else {
            let order = (q - 1) as u64;
            let factors = prime_factors(order);
            let pow = |g: &[u32], mut n: u64| {
                let mut base = g.to_vec();
                let mut acc = vec![1u32];
                while n > 0 {
                    if n & 1 == 1 {
                        acc = fp_mulmod(&acc, &base, &modulus, p);
                    }
                    base = fp_mulmod(&base, &base, &modulus, p);
                    n >>= 1;
                }
                acc
            };
            let generator = (2..q)
                .map(|i| digits(i, p, e))
                .find(|g| factors.iter().all(|&r| pow(g, order / r) != [1]))
                .ok_or_else(|| domain!("no primitive element found"))?;
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut log = vec![0u32; q as usize];
            let mut cur = vec![1u32];
            for i in 0..q - 1 {
                let idx = undigits(&cur, p);
                exp.push(idx);
                log[idx as usize] = i;
                cur = fp_mulmod(&cur, &generator, &modulus, p);
            }
            (exp, log)
        };

        Ok(GaloisField {
            t: Arc::new(Tables {
                p,
                e,
                q,
                modulus,
                exp,
                log,
            }),
        })
    }

    /// The field of order `q`. For `q = p^e` with `e > 1` the modulus is the
    /// first monic irreducible of degree `e` in index order.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| invalid!("{q} is not a prime power"))?;
        if e == 1 {
            return Self::prime(p);
        }
        if q > MAX_ORDER {
            return Err(invalid!("field order {q} exceeds {MAX_ORDER}"));
        }
        let count = (p as u64).pow(e);
        for low in 0..count {
            let mut m = digits(low as u32, p, e);
            m.resize(e as usize, 0);
            m.push(1);
            if m[0] != 0 && fp_is_irreducible(&m, p) {
                return Self::extension(p, &m);
            }
        }
        Err(domain!("no irreducible modulus of degree {e} over F_{p}"))
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.t.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.t.e
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.t.q
    }

    /// Modulus coefficients, least-significant first.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn element(&self, index: u32) -> Result<Gf> {
        if index < self.t.q {
            Ok(Gf(index))
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// The element with power-basis coordinates `coeffs` (least-significant first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Gf> {
        if coeffs.len() > self.t.e as usize || coeffs.iter().any(|&c| c >= self.t.p) {
            return Err(invalid!(
                "coordinates {coeffs:?} do not describe an element of F_{}",
                self.t.q
            ));
        }
        Ok(Gf(undigits(coeffs, self.t.p)))
    }

    /// Power-basis coordinates of `a`, always of length `e`.
    pub fn coeffs(&self, a: Gf) -> Vec<u32> {
        let mut d = digits(a.0, self.t.p, self.t.e);
        d.resize(self.t.e as usize, 0);
        d
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Gf {
        Gf(n.rem_euclid(self.t.p as i64) as u32)
    }

    pub fn zero(&self) -> Gf {
        Gf::ZERO
    }

    pub fn one(&self) -> Gf {
        Gf::ONE
    }

    #[inline]
    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        let t = &*self.t;
        if t.e == 1 {
            let s = a.0 + b.0;
            return Gf(if s >= t.p { s - t.p } else { s });
        }
        if t.p == 2 {
            return Gf(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        for _ in 0..t.e {
            let s = (x % t.p + y % t.p) % t.p;
            out += s * place;
            place *= t.p;
            x /= t.p;
            y /= t.p;
        }
        Gf(out)
    }

    #[inline]
    pub fn neg(&self, a: Gf) -> Gf {
        let t = &*self.t;
        if t.p == 2 {
            return a;
        }
        if t.e == 1 {
            return Gf(if a.0 == 0 { 0 } else { t.p - a.0 });
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        for _ in 0..t.e {
            out += ((t.p - x % t.p) % t.p) * place;
            place *= t.p;
            x /= t.p;
        }
        Gf(out)
    }

    #[inline]
    pub fn sub(&self, a: Gf, b: Gf) -> Gf {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        let t = &*self.t;
        if a.0 == 0 || b.0 == 0 {
            return Gf::ZERO;
        }
        if t.e == 1 {
            return Gf(((a.0 as u64 * b.0 as u64) % t.p as u64) as u32);
        }
        let l = t.log[a.0 as usize] + t.log[b.0 as usize];
        let n = t.q - 1;
        Gf(t.exp[(if l >= n { l - n } else { l }) as usize])
    }

    pub fn inverse(&self, a: Gf) -> Result<Gf> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.t;
        let n = t.q - 1;
        let l = t.log[a.0 as usize];
        Ok(Gf(t.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Gf, b: Gf) -> Result<Gf> {
        Ok(self.mul(a, self.inverse(b)?))
    }

    /// `a^n`; negative exponents need `a != 0`.
    pub fn pow(&self, a: Gf, n: i64) -> Result<Gf> {
        if a.0 == 0 {
            return match n {
                0 => Ok(Gf::ONE),
                n if n > 0 => Ok(Gf::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let t = &*self.t;
        let order = (t.q - 1) as i64;
        let l = (t.log[a.0 as usize] as i64 * n.rem_euclid(order)) % order;
        Ok(Gf(t.exp[l as usize]))
    }

    /// All `q` elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Gf> + Clone {
        (0..self.t.q).map(Gf)
    }

    pub fn enumerate_elements(&self) -> Vec<Gf> {
        self.elements().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_prime_fields() {
        let f2 = GaloisField::prime(2).unwrap();
        assert_eq!(f2.add(Gf(1), Gf(1)), Gf(0));
        let f3 = GaloisField::prime(3).unwrap();
        assert_eq!(f3.inverse(Gf(2)).unwrap(), Gf(2));
        assert_eq!(f3.enumerate_elements(), vec![Gf(0), Gf(1), Gf(2)]);
        assert_eq!(f2.enumerate_elements(), vec![Gf(0), Gf(1)]);
    }

    #[test]
    fn f4_multiplication() {
        let f4 = GaloisField::extension(2, &[1, 1, 1]).unwrap();
        let t = f4.from_coeffs(&[0, 1]).unwrap();
        let t_plus_1 = f4.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f4.mul(t, t), t_plus_1);
        let all = f4.enumerate_elements();
        assert_eq!(all.len(), 4);
        assert_eq!(all[0], Gf::ZERO);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(GaloisField::prime(4).is_err());
        assert!(matches!(GaloisField::extension(2, &[1, 0, 1]), Err(Error::Domain(_))));
        assert!(GaloisField::extension(2, &[1, 1, 0]).is_err());
        let f3 = GaloisField::prime(3).unwrap();
        assert_eq!(f3.inverse(Gf::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f3.element(3), Err(Error::FieldMismatch));
    }

    #[test]
    fn with_order_picks_prime_power() {
        let f9 = GaloisField::with_order(9).unwrap();
        assert_eq!((f9.characteristic(), f9.degree(), f9.order()), (3, 2, 9));
        assert!(GaloisField::with_order(6).is_err());
        let f8 = GaloisField::with_order(8).unwrap();
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for field in [
            GaloisField::prime(5).unwrap(),
            GaloisField::with_order(8).unwrap(),
            GaloisField::with_order(9).unwrap(),
        ] {
            let q = field.order() as i64;
            for a in field.elements() {
                if !a.is_zero() {
                    assert_eq!(field.pow(a, q - 1).unwrap(), Gf::ONE);
                    assert_eq!(field.mul(a, field.inverse(a).unwrap()), Gf::ONE);
                }
                assert_eq!(field.add(a, field.neg(a)), Gf::ZERO);
                for b in field.elements() {
                    for c in field.elements() {
                        assert_eq!(field.add(field.add(a, b), c), field.add(a, field.add(b, c)));
                        assert_eq!(
                            field.mul(a, field.add(b, c)),
                            field.add(field.mul(a, b), field.mul(a, c))
                        );
                    }
                }
            }
        }
    }
}
