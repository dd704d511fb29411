//! Holomorphy rings `H_S` with finite complement `T`, divisors supported on
//! `T`, and Riemann-Roch boxes `L(D)` over `F_q(x)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, invalid};
use crate::gf::Gf;
use crate::places::{Place, RationalFunction, RationalFunctionField, Valuation};
use crate::polyring::Poly;
use crate::{Error, Result};

/// `H_S`, given by the finite set `T` of places outside `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolomorphySpec {
    ff: RationalFunctionField,
    excluded: BTreeSet<Place>,
}

impl HolomorphySpec {
    pub fn new(ff: RationalFunctionField, excluded: BTreeSet<Place>) -> Result<Self> {
        if excluded.is_empty() {
            return Err(invalid!("the excluded set T must be nonempty"));
        }
        for place in &excluded {
            if let Place::Finite(p) = place {
                ff.finite_place(p.clone())?;
            }
        }
        Ok(HolomorphySpec { ff, excluded })
    }

    /// `F_q[x]`, i.e. `T = {inf}`.
    pub fn polynomial_ring(ff: RationalFunctionField) -> Self {
        HolomorphySpec {
            ff,
            excluded: [Place::Infinity].into_iter().collect(),
        }
    }

    pub fn function_field(&self) -> &RationalFunctionField {
        &self.ff
    }

    pub fn q(&self) -> u32 {
        self.ff.q()
    }

    pub fn excluded(&self) -> &BTreeSet<Place> {
        &self.excluded
    }

    /// `P` is in the holomorphy set `S`.
    pub fn in_s(&self, place: &Place) -> bool {
        !self.excluded.contains(place)
    }

    pub fn infinity_in_s(&self) -> bool {
        self.in_s(&Place::Infinity)
    }

    pub fn excluded_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.excluded.iter().map(Place::degree)
    }

    /// Places of `S` of degree `d`.
    pub fn places_of_degree(&self, d: usize) -> Result<Vec<Place>> {
        self.ff.places_of_degree(d, &self.excluded)
    }

    pub fn count_places_of_degree(&self, d: usize) -> Result<u128> {
        self.ff.count_places_of_degree(d, &self.excluded)
    }

    /// Places of `S` with degree at most `t`.
    pub fn places_up_to(&self, t: usize) -> Result<Vec<Place>> {
        let mut out = Vec::new();
        for d in 1..=t {
            out.extend(self.places_of_degree(d)?);
        }
        Ok(out)
    }

    /// Divides out every finite place of `T` from `f`.
    pub fn strip_excluded(&self, f: &Poly) -> Poly {
        let ring = self.ff.ring();
        let mut f = f.clone();
        if f.is_zero() {
            return f;
        }
        for place in &self.excluded {
            if let Place::Finite(p) = place {
                while let Ok(quo) = ring.div_exact(&f, p) {
                    f = quo;
                }
            }
        }
        f
    }

    /// `v_P(u) >= 0` for every `P` in `S`.
    pub fn in_holomorphy_ring(&self, u: &RationalFunction) -> bool {
        if u.is_zero() {
            return true;
        }
        if !self.strip_excluded(u.den()).is_constant() {
            return false;
        }
        !self.infinity_in_s() || self.ff.valuation(u, &Place::Infinity).at_least(0)
    }

    /// `u` is a unit of `H_S`: nonzero with `v_P(u) = 0` for every `P` in `S`.
    pub fn is_unit(&self, u: &RationalFunction) -> bool {
        if u.is_zero() {
            return false;
        }
        self.strip_excluded(u.num()).is_constant()
            && self.strip_excluded(u.den()).is_constant()
            && (!self.infinity_in_s() || self.ff.valuation(u, &Place::Infinity) == Valuation::Finite(0))
    }

    /// The cofinal chain point `j * sum_{R in T} R`.
    pub fn chain_point(&self, j: u64) -> DivisorOnT {
        DivisorOnT {
            coeffs: self.excluded.iter().map(|p| (p.clone(), j)).filter(|_| j > 0).collect(),
        }
    }

    /// `D_0, ..., D_{j_max}` along the default chain.
    pub fn default_chain(&self, j_max: u64) -> Vec<DivisorOnT> {
        (0..=j_max).map(|j| self.chain_point(j)).collect()
    }

    /// `L(D)` as an enumerable, samplable box.
    pub fn riemann_roch_box(&self, divisor: &DivisorOnT) -> Result<RiemannRochBox> {
        divisor.check_support(self)?;
        let ring = self.ff.ring();
        let mut denominator = Poly::one();
        for (place, &n) in &divisor.coeffs {
            if let Place::Finite(p) = place {
                denominator = ring.mul(&denominator, &ring.pow(p, n));
            }
        }
        let degree = divisor.degree();
        Ok(RiemannRochBox {
            ff: self.ff.clone(),
            denominator,
            dim: degree as usize + 1,
        })
    }

    /// A basis of `L(D)`: `x^j / prod p^{n_p}` for `0 <= j <= deg D`.
    /// Each element is checked against `div(u) + D >= 0`.
    pub fn riemann_roch_basis(&self, divisor: &DivisorOnT) -> Result<Vec<RationalFunction>> {
        let b = self.riemann_roch_box(divisor)?;
        let basis = b.basis();
        for u in &basis {
            if !divisor.contains(&self.ff, u) {
                return Err(domain!("basis element outside L(D)"));
            }
        }
        Ok(basis)
    }
}

/// A positive divisor supported on the excluded set `T`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorOnT {
    coeffs: BTreeMap<Place, u64>,
}

impl DivisorOnT {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a divisor, dropping zero coefficients and checking that the
    /// support lies in `T`.
    pub fn new(spec: &HolomorphySpec, terms: impl IntoIterator<Item = (Place, u64)>) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (place, n) in terms {
            if n > 0 {
                *coeffs.entry(place).or_insert(0) += n;
            }
        }
        let d = DivisorOnT { coeffs };
        d.check_support(spec)?;
        Ok(d)
    }

    fn check_support(&self, spec: &HolomorphySpec) -> Result<()> {
        match self.coeffs.keys().find(|p| spec.in_s(p)) {
            Some(p) => Err(invalid!(
                "divisor is supported at {p:?}, which is not an excluded place"
            )),
            None => Ok(()),
        }
    }

    pub fn coefficient(&self, place: &Place) -> u64 {
        self.coeffs.get(place).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Place, u64)> {
        self.coeffs.iter().map(|(p, &n)| (p, n))
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.coeffs.keys()
    }

    /// `sum n_P deg P`.
    pub fn degree(&self) -> u64 {
        self.coeffs.iter().map(|(p, n)| n * p.degree() as u64).sum()
    }

    /// `self <= other` coefficientwise.
    pub fn le(&self, other: &DivisorOnT) -> bool {
        self.coeffs.iter().all(|(p, &n)| other.coefficient(p) >= n)
    }

    /// `u` lies in `L(D)`: `v_P(u) >= -n_P` at every place (checking `inf`
    /// and every place dividing the numerator or denominator).
    pub fn contains(&self, ff: &RationalFunctionField, u: &RationalFunction) -> bool {
        if u.is_zero() {
            return true;
        }
        let ok = |place: &Place| ff.valuation(u, place).at_least(-(self.coefficient(place) as i64));
        if !ok(&Place::Infinity) {
            return false;
        }
        match ff.irreducible_factors(u.den()) {
            Ok(ps) => ps.into_iter().all(|p| ok(&Place::Finite(p))),
            Err(_) => false,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Seeded counter-based stream: `(seed, stream)` fully determines the output.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// The Riemann-Roch space `L(D) = { g / h : deg g <= deg D }` where `h` is
/// the finite part of `D` written as a polynomial.
#[derive(Clone, Debug)]
pub struct RiemannRochBox {
    ff: RationalFunctionField,
    denominator: Poly,
    dim: usize,
}

impl RiemannRochBox {
    /// `l(D) = deg D + 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    /// `q^{l(D)}`, if it fits in a `u64`.
    pub fn len(&self) -> Option<u64> {
        (self.ff.q() as u64).checked_pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn basis(&self) -> Vec<RationalFunction> {
        (0..self.dim).map(|j| self.from_numerator(Poly::monomial(j))).collect()
    }

    /// `g / h` in canonical form.
    pub fn from_numerator(&self, g: Poly) -> RationalFunction {
        if self.denominator.is_one() {
            RationalFunction::from_poly(g)
        } else {
            self.ff.fraction(&g, &self.denominator).unwrap()
        }
    }

    /// The element with coordinate vector `coords` in the monomial basis.
    pub fn element_from_coords(&self, coords: &[Gf]) -> RationalFunction {
        self.from_numerator(Poly::from_coeffs(coords.to_vec()))
    }

    /// The `index`-th element in canonical order.
    pub fn element(&self, index: u64) -> RationalFunction {
        self.from_numerator(Poly::from_index(index, self.ff.q()))
    }

    /// Every element of `L(D)`, canonical order. Fails above `cap` elements.
    pub fn enumerate(&self, cap: u64) -> Result<impl Iterator<Item = RationalFunction> + '_> {
        let len = self.len().filter(|&n| n <= cap).ok_or_else(|| Error::TooLarge {
            what: alloc::format!("L(D) with l(D) = {}", self.dim),
            size: alloc::format!("{}^{}", self.ff.q(), self.dim),
            cap,
        })?;
        Ok((0..len).map(move |i| self.element(i)))
    }

    /// Uniform coordinates drawn from `rng`.
    pub fn sample_coords<R: Rng>(&self, rng: &mut R) -> Vec<Gf> {
        let q = self.ff.q();
        (0..self.dim).map(|_| Gf(rng.random_range(0..q))).collect()
    }

    /// A uniform element of `L(D)`, determined by `(seed, index)`.
    pub fn sample(&self, seed: u64, index: u64) -> RationalFunction {
        let mut rng = stream_rng(seed, index);
        let coords = self.sample_coords(&mut rng);
        self.element_from_coords(&coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(c: &[u32]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| Gf(x)).collect())
    }

    fn f2x() -> HolomorphySpec {
        HolomorphySpec::polynomial_ring(RationalFunctionField::with_order(2).unwrap())
    }

    #[test]
    fn basis_examples() {
        let spec = f2x();
        let d = DivisorOnT::new(&spec, [(Place::Infinity, 3)]).unwrap();
        let basis = spec.riemann_roch_basis(&d).unwrap();
        assert_eq!(
            basis,
            (0..4)
                .map(|j| RationalFunction::from_poly(Poly::monomial(j)))
                .collect::<Vec<_>>()
        );
        assert_eq!(
            spec.riemann_roch_basis(&DivisorOnT::zero()).unwrap(),
            vec![RationalFunction::one()]
        );

        let ff = spec.function_field().clone();
        let x = Place::Finite(p(&[0, 1]));
        let t: BTreeSet<Place> = [Place::Infinity, x.clone()].into_iter().collect();
        let spec2 = HolomorphySpec::new(ff.clone(), t).unwrap();
        let d = DivisorOnT::new(&spec2, [(x, 1), (Place::Infinity, 1)]).unwrap();
        let basis = spec2.riemann_roch_basis(&d).unwrap();
        let expect = vec![
            ff.fraction(&p(&[1]), &p(&[0, 1])).unwrap(),
            RationalFunction::one(),
            ff.x(),
        ];
        assert_eq!(basis, expect);
    }

    #[test]
    fn divisor_support_checked() {
        let spec = f2x();
        assert!(DivisorOnT::new(&spec, [(Place::Finite(p(&[0, 1])), 1)]).is_err());
        let ff = RationalFunctionField::with_order(2).unwrap();
        assert!(HolomorphySpec::new(ff, BTreeSet::new()).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let spec = f2x();
        let d = DivisorOnT::new(&spec, [(Place::Infinity, 1)]).unwrap();
        let b = spec.riemann_roch_box(&d).unwrap();
        let elems: Vec<_> = b.enumerate(1 << 20).unwrap().collect();
        let expect: Vec<_> = [p(&[]), p(&[1]), p(&[0, 1]), p(&[1, 1])]
            .into_iter()
            .map(RationalFunction::from_poly)
            .collect();
        assert_eq!(elems, expect);
        let d2 = DivisorOnT::new(&spec, [(Place::Infinity, 2)]).unwrap();
        assert_eq!(
            spec.riemann_roch_box(&d2).unwrap().enumerate(1 << 20).unwrap().count(),
            8
        );
        assert!(matches!(
            spec.riemann_roch_box(&d2).unwrap().enumerate(4).map(|_| ()),
            Err(Error::TooLarge { .. })
        ));
        let spec3 = HolomorphySpec::polynomial_ring(RationalFunctionField::with_order(3).unwrap());
        let zero_box = spec3.riemann_roch_box(&DivisorOnT::zero()).unwrap();
        assert_eq!(zero_box.enumerate(10).unwrap().count(), 3);
    }

    #[test]
    fn holomorphy_membership() {
        let spec = f2x();
        let ff = spec.function_field().clone();
        let inv_x = ff.fraction(&p(&[1]), &p(&[0, 1])).unwrap();
        assert!(spec.in_holomorphy_ring(&ff.x()));
        assert!(!spec.in_holomorphy_ring(&inv_x));
        let t: BTreeSet<Place> = [Place::Infinity, Place::Finite(p(&[0, 1]))].into_iter().collect();
        let spec2 = HolomorphySpec::new(ff.clone(), t).unwrap();
        assert!(spec2.in_holomorphy_ring(&inv_x));
        assert!(spec2.is_unit(&ff.x()));
        assert!(!spec.is_unit(&ff.x()));
    }

    #[test]
    fn sampling_is_deterministic_and_in_box() {
        let spec = f2x();
        let d = DivisorOnT::new(&spec, [(Place::Infinity, 1)]).unwrap();
        let b = spec.riemann_roch_box(&d).unwrap();
        assert_eq!(b.sample(7, 3), b.sample(7, 3));
        let n = 100_000u64;
        let zeros = (0..n).filter(|&i| b.sample(11, i).is_zero()).count() as f64;
        let sigma = libm::sqrt(n as f64 * 0.25 * 0.75);
        assert!((zeros - n as f64 / 4.0).abs() <= 3.0 * sigma, "zeros = {zeros}");
        for i in 0..100 {
            assert!(d.contains(spec.function_field(), &b.sample(1, i)));
        }
    }
}
