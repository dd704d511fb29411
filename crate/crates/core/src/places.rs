//! Places of `F_q(x)`, rational functions, and valuations.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{domain, invalid};
use crate::gf::{GaloisField, Gf};
use crate::polyring::{count_monic_irreducibles, Poly, PolyRing};
use crate::{Error, Result};

/// A place of `F_q(x)`: a monic irreducible polynomial or the point at infinity.
///
/// Ordered by degree and then canonically; infinity sorts after every finite place.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinity => None,
        }
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
            (Place::Finite(_), Place::Infinity) => Ordering::Less,
            (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A discrete valuation value; `Infinity` is `v(0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    /// `v >= k`.
    pub fn at_least(self, k: i64) -> bool {
        self >= Valuation::Finite(k)
    }
}

/// An element `num/den` of `F_q(x)` with `den` monic and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn from_poly(num: Poly) -> Self {
        RationalFunction { num, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
}

/// The rational function field `F_q(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunctionField {
    ring: PolyRing,
}

impl RationalFunctionField {
    pub fn new(field: GaloisField) -> Self {
        RationalFunctionField {
            ring: PolyRing::new(field),
        }
    }

    pub fn with_order(q: u64) -> Result<Self> {
        Ok(Self::new(GaloisField::with_order(q)?))
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> &GaloisField {
        self.ring.field()
    }

    pub fn q(&self) -> u32 {
        self.ring.q()
    }

    /// `num/den` in canonical form.
    pub fn fraction(&self, num: &Poly, den: &Poly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let r = &self.ring;
        let (num, den) = if den.is_constant() {
            (num.clone(), den.clone())
        } else {
            let g = r.gcd(num, den)?;
            (r.div_exact(num, &g)?, r.div_exact(den, &g)?)
        };
        let inv = self.field().inverse(den.leading().unwrap())?;
        Ok(RationalFunction {
            num: r.scale(&num, inv),
            den: r.scale(&den, inv),
        })
    }

    pub fn constant(&self, c: Gf) -> RationalFunction {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn from_int(&self, n: i64) -> RationalFunction {
        self.constant(self.field().from_int(n))
    }

    pub fn x(&self) -> RationalFunction {
        RationalFunction::from_poly(Poly::x())
    }

    pub fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        let r = &self.ring;
        if a.den == b.den {
            let num = r.add(&a.num, &b.num);
            return if a.den.is_one() {
                RationalFunction::from_poly(num)
            } else {
                self.fraction(&num, &a.den).unwrap()
            };
        }
        let num = r.add(&r.mul(&a.num, &b.den), &r.mul(&b.num, &a.den));
        self.fraction(&num, &r.mul(&a.den, &b.den)).unwrap()
    }

    pub fn neg(&self, a: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: self.ring.neg(&a.num),
            den: a.den.clone(),
        }
    }

    pub fn sub(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        let r = &self.ring;
        if a.den.is_one() && b.den.is_one() {
            return RationalFunction::from_poly(r.mul(&a.num, &b.num));
        }
        self.fraction(&r.mul(&a.num, &b.num), &r.mul(&a.den, &b.den)).unwrap()
    }

    pub fn inverse(&self, a: &RationalFunction) -> Result<RationalFunction> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.fraction(&a.den, &a.num)
    }

    pub fn div(&self, a: &RationalFunction, b: &RationalFunction) -> Result<RationalFunction> {
        Ok(self.mul(a, &self.inverse(b)?))
    }

    pub fn pow(&self, a: &RationalFunction, n: i64) -> Result<RationalFunction> {
        let base = if n < 0 { self.inverse(a)? } else { a.clone() };
        let e = n.unsigned_abs();
        Ok(RationalFunction {
            num: self.ring.pow(&base.num, e),
            den: self.ring.pow(&base.den, e),
        })
    }

    /// Scales by a field constant.
    pub fn scale(&self, a: &RationalFunction, c: Gf) -> RationalFunction {
        if c.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            num: self.ring.scale(&a.num, c),
            den: a.den.clone(),
        }
    }

    /// Multiplicity of the irreducible `p` in the nonzero polynomial `f`.
    pub fn multiplicity(&self, f: &Poly, p: &Poly) -> u64 {
        let mut f = f.clone();
        let mut k = 0;
        loop {
            let (quo, rem) = self.ring.divmod(&f, p).unwrap();
            if !rem.is_zero() {
                return k;
            }
            f = quo;
            k += 1;
        }
    }

    /// `v_P(u)`; at infinity, `deg den - deg num`.
    pub fn valuation(&self, u: &RationalFunction, place: &Place) -> Valuation {
        if u.is_zero() {
            return Valuation::Infinity;
        }
        match place {
            Place::Infinity => Valuation::Finite(u.den.degree().unwrap() as i64 - u.num.degree().unwrap() as i64),
            Place::Finite(p) => {
                let up = self.multiplicity(&u.num, p) as i64;
                let down = self.multiplicity(&u.den, p) as i64;
                Valuation::Finite(up - down)
            }
        }
    }

    /// `u` lies in the valuation ring `O_P`.
    pub fn in_valuation_ring(&self, u: &RationalFunction, place: &Place) -> bool {
        self.valuation(u, place).at_least(0)
    }

    /// Validates that `p` is monic irreducible and wraps it as a place.
    pub fn finite_place(&self, p: Poly) -> Result<Place> {
        if !p.is_monic() {
            return Err(invalid!("a place must be given by a monic polynomial"));
        }
        if p.degree() == Some(0) || !self.ring.is_irreducible(&p)? {
            return Err(domain!("polynomial is not irreducible"));
        }
        Ok(Place::Finite(p))
    }

    /// A uniformizer: `p` for a finite place, `1/x` at infinity.
    pub fn uniformizer(&self, place: &Place) -> RationalFunction {
        match place {
            Place::Finite(p) => RationalFunction::from_poly(p.clone()),
            Place::Infinity => RationalFunction {
                num: Poly::one(),
                den: Poly::x(),
            },
        }
    }

    /// A set of representatives of `O_P/P` in canonical order: polynomials of
    /// degree `< deg P` for finite places, constants at infinity.
    pub fn residue_representatives(&self, place: &Place) -> Vec<RationalFunction> {
        self.ring
            .polys_below(place.degree())
            .map(RationalFunction::from_poly)
            .collect()
    }

    /// Places of degree exactly `d` not in `excluded`, finite places first.
    pub fn places_of_degree(&self, d: usize, excluded: &BTreeSet<Place>) -> Result<Vec<Place>> {
        if d < 1 {
            return Err(invalid!("place degree must be at least 1"));
        }
        let mut out: Vec<Place> = self
            .ring
            .monic_irreducibles(d)?
            .into_iter()
            .map(Place::Finite)
            .filter(|p| !excluded.contains(p))
            .collect();
        if d == 1 && !excluded.contains(&Place::Infinity) {
            out.push(Place::Infinity);
        }
        Ok(out)
    }

    /// `|places_of_degree(d, excluded)|` from the necklace count.
    pub fn count_places_of_degree(&self, d: usize, excluded: &BTreeSet<Place>) -> Result<u128> {
        count_places_of_degree(self.q() as u64, d, excluded)
    }

    /// All places where `u` has nonzero valuation, with that valuation.
    /// Finite places come from the irreducible factors of `num` and `den`.
    pub fn divisor_of(&self, u: &RationalFunction) -> Result<Vec<(Place, i64)>> {
        if u.is_zero() {
            return Err(domain!("the zero function has no divisor"));
        }
        let mut out = Vec::new();
        for f in [&u.num, &u.den] {
            for p in self.irreducible_factors(f)? {
                let place = Place::Finite(p);
                if let Valuation::Finite(v) = self.valuation(u, &place) {
                    if v != 0 {
                        out.push((place, v));
                    }
                }
            }
        }
        if let Valuation::Finite(v) = self.valuation(u, &Place::Infinity) {
            if v != 0 {
                out.push((Place::Infinity, v));
            }
        }
        Ok(out)
    }

    /// Distinct monic irreducible factors of a nonzero polynomial, by trial
    /// division in degree order. Only meant for the small degrees used in
    /// checks and diagnostics.
    pub fn irreducible_factors(&self, f: &Poly) -> Result<Vec<Poly>> {
        if f.is_zero() {
            return Err(domain!("the zero polynomial has no factorisation"));
        }
        let mut rest = self.ring.monic(f);
        let mut out = Vec::new();
        let mut d = 1;
        while rest.degree().unwrap_or(0) >= 1 {
            if 2 * d > rest.degree().unwrap() {
                out.push(rest);
                break;
            }
            for p in self.ring.monic_irreducibles(d)? {
                if self.ring.divides(&p, &rest) {
                    while let Ok(quo) = self.ring.div_exact(&rest, &p) {
                        rest = quo;
                    }
                    out.push(p);
                }
            }
            d += 1;
        }
        out.sort();
        Ok(out)
    }
}

/// Number of places of `F_q(x)` of degree `d` outside `excluded`.
pub fn count_places_of_degree(q: u64, d: usize, excluded: &BTreeSet<Place>) -> Result<u128> {
    let mut n = count_monic_irreducibles(q, d)?;
    if d == 1 {
        n += 1;
    }
    let removed = excluded.iter().filter(|p| p.degree() == d).count() as u128;
    Ok(n - removed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(c: &[u32]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| Gf(x)).collect())
    }

    #[test]
    fn valuation_examples() {
        let ff = RationalFunctionField::with_order(2).unwrap();
        let u = ff.fraction(&p(&[0, 0, 1]), &p(&[1, 1])).unwrap();
        assert_eq!(ff.valuation(&u, &Place::Finite(p(&[0, 1]))), Valuation::Finite(2));
        assert_eq!(ff.valuation(&ff.x(), &Place::Infinity), Valuation::Finite(-1));
        let v = ff.fraction(&p(&[1]), &p(&[1, 1])).unwrap();
        assert_eq!(ff.valuation(&v, &Place::Finite(p(&[1, 1]))), Valuation::Finite(-1));
        assert_eq!(
            ff.valuation(&RationalFunction::zero(), &Place::Infinity),
            Valuation::Infinity
        );
    }

    #[test]
    fn residue_representative_examples() {
        let ff = RationalFunctionField::with_order(2).unwrap();
        let reps = ff.residue_representatives(&Place::Finite(p(&[0, 1])));
        assert_eq!(reps, vec![RationalFunction::zero(), RationalFunction::one()]);
        let reps = ff.residue_representatives(&Place::Finite(p(&[1, 1, 1])));
        let expect: Vec<RationalFunction> = [p(&[]), p(&[1]), p(&[0, 1]), p(&[1, 1])]
            .into_iter()
            .map(RationalFunction::from_poly)
            .collect();
        assert_eq!(reps, expect);
        let ff3 = RationalFunctionField::with_order(3).unwrap();
        assert_eq!(ff3.residue_representatives(&Place::Infinity).len(), 3);
    }

    #[test]
    fn places_by_degree() {
        let ff = RationalFunctionField::with_order(2).unwrap();
        let inf: BTreeSet<Place> = [Place::Infinity].into_iter().collect();
        let none = BTreeSet::new();
        assert_eq!(
            ff.places_of_degree(1, &inf).unwrap(),
            vec![Place::Finite(p(&[0, 1])), Place::Finite(p(&[1, 1]))]
        );
        assert_eq!(
            ff.places_of_degree(1, &none).unwrap(),
            vec![Place::Finite(p(&[0, 1])), Place::Finite(p(&[1, 1])), Place::Infinity]
        );
        assert_eq!(
            ff.places_of_degree(2, &none).unwrap(),
            vec![Place::Finite(p(&[1, 1, 1]))]
        );
        assert_eq!(ff.count_places_of_degree(1, &inf).unwrap(), 2);
        assert_eq!(ff.count_places_of_degree(3, &none).unwrap(), 2);
        let ff3 = RationalFunctionField::with_order(3).unwrap();
        assert_eq!(ff3.count_places_of_degree(1, &none).unwrap(), 4);
    }

    #[test]
    fn canonical_fractions() {
        let ff = RationalFunctionField::with_order(3).unwrap();
        let u = ff.fraction(&p(&[0, 2, 2]), &p(&[0, 2])).unwrap();
        assert_eq!(u, RationalFunction::from_poly(p(&[1, 1])));
        assert_eq!(ff.fraction(&p(&[1]), &p(&[])), Err(Error::DivisionByZero));
        let z = ff.fraction(&p(&[]), &p(&[2, 1])).unwrap();
        assert_eq!(z, RationalFunction::zero());
    }

    #[test]
    fn divisor_degree_is_zero() {
        let ff = RationalFunctionField::with_order(3).unwrap();
        let u = ff.fraction(&p(&[1, 0, 1, 2]), &p(&[0, 0, 1, 1])).unwrap();
        let total: i64 = ff
            .divisor_of(&u)
            .unwrap()
            .iter()
            .map(|(pl, v)| pl.degree() as i64 * v)
            .sum();
        assert_eq!(total, 0);
    }
}
