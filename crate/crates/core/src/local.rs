//! Truncated local rings `O_P/P^e` of `F_q(x)`.
//!
//! `O_P/P^e` is realised as `F_q[y]/(p(y)^e)`, where `y = x` and `p` is the
//! place polynomial for a finite place, and `y = 1/x`, `p = y` at infinity.
//! Elements are indices of polynomials of degree `< e deg P` in `y`. The
//! residue representatives `G_P` are exactly the indices `0..q^{deg P}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::invalid;
use crate::gf::Gf;
use crate::places::{Place, RationalFunction, RationalFunctionField};
use crate::polyring::Poly;
use crate::{Error, Result};

/// Rings up to this size get a full multiplication table.
const TABLE_LIMIT: u32 = 512;

/// Largest ring handled at all.
pub const MAX_LOCAL_SIZE: u64 = 1 << 24;

/// `O_P/P^e` with index-encoded elements.
#[derive(Clone, Debug)]
pub struct LocalRing {
    ff: RationalFunctionField,
    place: Place,
    precision: u32,
    degree: usize,
    q: u32,
    /// `p^e` in the local variable.
    modulus: Poly,
    /// `p` in the local variable.
    prime: Poly,
    size: u32,
    /// `min(v_P(a), e)`.
    val: Vec<u8>,
    mul_table: Option<Vec<u32>>,
    inv_table: Option<Vec<u32>>,
}

impl LocalRing {
    pub fn new(ff: &RationalFunctionField, place: &Place, precision: u32) -> Result<Self> {
        if precision < 1 {
            return Err(invalid!("precision must be at least 1"));
        }
        let q = ff.q();
        let degree = place.degree();
        let len = degree as u64 * precision as u64;
        let size = (q as u64)
            .checked_pow(len as u32)
            .filter(|&s| s <= MAX_LOCAL_SIZE)
            .ok_or_else(|| Error::TooLarge {
                what: alloc::format!("O_P/P^{precision} at a place of degree {degree}"),
                size: alloc::format!("{q}^{len}"),
                cap: MAX_LOCAL_SIZE,
            })? as u32;
        let ring = ff.ring();
        let prime = match place {
            Place::Finite(p) => p.clone(),
            Place::Infinity => Poly::x(),
        };
        let modulus = ring.pow(&prime, precision as u64);
        let mut val = vec![0u8; size as usize];
        for (i, v) in val.iter_mut().enumerate() {
            let mut a = Poly::from_index(i as u64, q);
            let mut k = 0u8;
            while (k as u32) < precision && ring.divides(&prime, &a) {
                if a.is_zero() {
                    k = precision as u8;
                    break;
                }
                a = ring.div_exact(&a, &prime)?;
                k += 1;
            }
            *v = k;
        }
        let mut local = LocalRing {
            ff: ff.clone(),
            place: place.clone(),
            precision,
            degree,
            q,
            modulus,
            prime,
            size,
            val,
            mul_table: None,
            inv_table: None,
        };
        if size <= TABLE_LIMIT {
            let mut table = vec![0u32; (size * size) as usize];
            for a in 0..size {
                for b in a..size {
                    let c = local.mul_slow(a, b);
                    table[(a * size + b) as usize] = c;
                    table[(b * size + a) as usize] = c;
                }
            }
            local.mul_table = Some(table);
        }
        if precision == 1 && size <= TABLE_LIMIT * 16 {
            let mut inv = vec![0u32; size as usize];
            for (a, slot) in inv.iter_mut().enumerate().skip(1) {
                *slot = local.inverse_slow(a as u32)?;
            }
            local.inv_table = Some(inv);
        }
        Ok(local)
    }

    pub fn place(&self) -> &Place {
        &self.place
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `q^{e deg P}`.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// `q^{deg P}`, the number of residue representatives.
    pub fn residue_count(&self) -> u32 {
        self.q.pow(self.degree as u32)
    }

    fn poly(&self, a: u32) -> Poly {
        Poly::from_index(a as u64, self.q)
    }

    fn index(&self, f: &Poly) -> u32 {
        f.index(self.q).expect("local element index fits in u32") as u32
    }

    /// `min(v_P(a), e)`.
    #[inline]
    pub fn val(&self, a: u32) -> u8 {
        self.val[a as usize]
    }

    #[inline]
    pub fn is_unit(&self, a: u32) -> bool {
        self.val[a as usize] == 0
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.q == 2 {
            return a ^ b;
        }
        let field = self.ff.field();
        let (mut x, mut y, mut out, mut place) = (a, b, 0u32, 1u32);
        while x > 0 || y > 0 {
            let s = field.add(Gf(x % self.q), Gf(y % self.q)).index();
            out += s * place;
            place = place.wrapping_mul(self.q);
            x /= self.q;
            y /= self.q;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.q == 2 {
            return a;
        }
        self.index(&self.ff.ring().neg(&self.poly(a)))
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let ring = self.ff.ring();
        let prod = ring.mulmod(&self.poly(a), &self.poly(b), &self.modulus).unwrap();
        self.index(&prod)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.mul_table {
            Some(t) => t[(a * self.size + b) as usize],
            None => self.mul_slow(a, b),
        }
    }

    fn inverse_slow(&self, a: u32) -> Result<u32> {
        let inv = self.ff.ring().inverse_mod(&self.poly(a), &self.modulus)?;
        Ok(self.index(&inv))
    }

    /// Inverse of a unit.
    pub fn inverse(&self, a: u32) -> Result<u32> {
        if !self.is_unit(a) {
            return Err(Error::DivisionByZero);
        }
        match &self.inv_table {
            Some(t) => Ok(t[a as usize]),
            None => self.inverse_slow(a),
        }
    }

    /// The image of an integer.
    pub fn from_int(&self, n: i64) -> u32 {
        self.ff.field().from_int(n).index()
    }

    /// Image of `u` in `O_P/P^e`, or `None` when `v_P(u) < 0`.
    pub fn reduce(&self, u: &RationalFunction) -> Option<u32> {
        let ring = self.ff.ring();
        match &self.place {
            Place::Finite(p) => {
                if u.den().is_one() {
                    return Some(self.index(&ring.rem(u.num(), &self.modulus).unwrap()));
                }
                if ring.divides(p, u.den()) {
                    return None;
                }
                let inv = ring.inverse_mod(u.den(), &self.modulus).ok()?;
                Some(self.index(&ring.mulmod(u.num(), &inv, &self.modulus).unwrap()))
            }
            Place::Infinity => {
                if u.is_zero() {
                    return Some(0);
                }
                let dn = u.num().degree().unwrap();
                let dd = u.den().degree().unwrap();
                if dn > dd {
                    return None;
                }
                let rev = |f: &Poly| {
                    let mut c = f.coeffs().to_vec();
                    c.reverse();
                    Poly::from_coeffs(c)
                };
                let num = ring.shift_up(&rev(u.num()), dd - dn);
                let inv = ring.inverse_mod(&rev(u.den()), &self.modulus).ok()?;
                Some(self.index(&ring.mulmod(&num, &inv, &self.modulus).unwrap()))
            }
        }
    }

    /// The residue representative with index `r < q^{deg P}` as a global function.
    pub fn representative(&self, r: u32) -> RationalFunction {
        RationalFunction::from_poly(self.poly(r))
    }

    /// The local variable's uniformizer `p` as an element.
    pub fn uniformizer(&self) -> u32 {
        self.index(&self.ff.ring().rem(&self.prime, &self.modulus).unwrap())
    }

    /// Horner evaluation of `sum c_i T^i` at `a`.
    pub fn eval(&self, coeffs: &[u32], a: u32) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, a), c))
    }

    /// Coefficients of `f(T + a)` by repeated synthetic division.
    pub fn taylor_shift(&self, coeffs: &[u32], a: u32) -> Vec<u32> {
        let mut c = coeffs.to_vec();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                c[j] = self.add(c[j], self.mul(a, c[j + 1]));
            }
        }
        c
    }

    /// Rank of a `rows x cols` matrix (row-major). Requires precision 1.
    pub fn rank(&self, entries: &[u32], rows: usize, cols: usize) -> Result<usize> {
        if self.precision != 1 {
            return Err(invalid!("rank is only defined over the residue field"));
        }
        let mut m = entries.to_vec();
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] != 0) else {
                continue;
            };
            for c in 0..cols {
                m.swap(rank * cols + c, pivot * cols + c);
            }
            let inv = self.inverse(m[rank * cols + col])?;
            for r in 0..rows {
                if r == rank || m[r * cols + col] == 0 {
                    continue;
                }
                let factor = self.mul(m[r * cols + col], inv);
                for c in col..cols {
                    let t = self.mul(factor, m[rank * cols + c]);
                    m[r * cols + c] = self.sub(m[r * cols + c], t);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        Ok(rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[u32]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| Gf(x)).collect())
    }

    #[test]
    fn valuations_mod_p_squared() {
        let ff = RationalFunctionField::with_order(2).unwrap();
        let ring = LocalRing::new(&ff, &Place::Finite(p(&[0, 1])), 2).unwrap();
        assert_eq!(ring.size(), 4);
        // indices: 0, 1, x, x+1
        assert_eq!([ring.val(0), ring.val(1), ring.val(2), ring.val(3)], [2, 0, 1, 0]);
        assert_eq!(ring.mul(2, 2), 0);
        assert_eq!(ring.mul(3, 3), 1);
    }

    #[test]
    fn reduce_at_infinity() {
        let ff = RationalFunctionField::with_order(3).unwrap();
        let ring = LocalRing::new(&ff, &Place::Infinity, 2).unwrap();
        let inv_x = ff.fraction(&p(&[1]), &p(&[0, 1])).unwrap();
        assert_eq!(ring.reduce(&inv_x), Some(ring.uniformizer()));
        assert_eq!(ring.val(ring.reduce(&inv_x).unwrap()), 1);
        assert_eq!(ring.reduce(&ff.x()), None);
        // (2x + 1)/(x + 1) = 2 - 1/x + ...
        let u = ff.fraction(&p(&[1, 2]), &p(&[1, 1])).unwrap();
        let r = ring.reduce(&u).unwrap();
        assert_eq!(r % 3, 2);
        assert_eq!(r / 3, 2);
    }

    #[test]
    fn reduce_matches_valuation() {
        let ff = RationalFunctionField::with_order(3).unwrap();
        let place = Place::Finite(p(&[1, 0, 1]));
        let ring = LocalRing::new(&ff, &place, 2).unwrap();
        let r = ff.ring();
        for a in r.polys_below(5) {
            for b in r.polys_below(3).skip(1) {
                let u = ff.fraction(&a, &b).unwrap();
                let v = ff.valuation(&u, &place);
                match ring.reduce(&u) {
                    None => assert!(!v.at_least(0)),
                    Some(idx) => {
                        let expect = v.finite().map_or(2, |v| v.min(2)) as u8;
                        assert_eq!(ring.val(idx), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn taylor_shift_matches_expansion() {
        let ff = RationalFunctionField::with_order(2).unwrap();
        let ring = LocalRing::new(&ff, &Place::Finite(p(&[1, 1, 1])), 2).unwrap();
        // (T + 1)^2 = T^2 + 1 in characteristic 2
        assert_eq!(ring.taylor_shift(&[0, 0, 1], 1), vec![1, 0, 1]);
    }

    #[test]
    fn residue_rank() {
        let ff = RationalFunctionField::with_order(2).unwrap();
        let ring = LocalRing::new(&ff, &Place::Finite(p(&[0, 1])), 1).unwrap();
        assert_eq!(ring.rank(&[1, 0, 1, 0, 1, 1], 2, 3).unwrap(), 2);
        assert_eq!(ring.rank(&[1, 0, 1, 1, 0, 1], 2, 3).unwrap(), 1);
        assert_eq!(ring.rank(&[1, 1, 0, 1, 1, 0], 2, 3).unwrap(), 1);
        assert_eq!(ring.rank(&[0, 0], 1, 2).unwrap(), 0);
    }
}
