//! Shifted Eisenstein polynomials and nicely totally ramified extensions.
//!
//! A polynomial `f in H[T]` of degree `n` defines a nicely totally ramified
//! extension at `P` exactly when `f(T + a)` is `P`-Eisenstein for some
//! residue representative `a in G_P`, or `T^n f(1/T)` is. Both conditions
//! only depend on the coefficients modulo `P^2`, so membership is decided in
//! the finite ring `O_P/P^2` (see [`LocalEisenstein`]).

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{domain, invalid};
use crate::holomorphy::HolomorphySpec;
use crate::local::LocalRing;
use crate::places::{Place, RationalFunction, RationalFunctionField, Valuation};
use crate::polyring::count_monic_irreducibles_f64;
use crate::rational::{q_pow, PowerProduct};
use crate::{Error, Result};

/// A polynomial `a_0 + a_1 T + ... + a_n T^n` over `F_q(x)` of nominal
/// degree `n >= 1`. The leading coefficient may vanish.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyOverF {
    coeffs: Vec<RationalFunction>,
}

impl PolyOverF {
    pub fn new(coeffs: Vec<RationalFunction>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(invalid!("a polynomial over F needs nominal degree n >= 1"));
        }
        Ok(PolyOverF { coeffs })
    }

    /// Nominal degree `n`.
    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<RationalFunction> {
        self.coeffs
    }
}

/// `f` is Eisenstein at `P`: `v(a_n) = 0`, `v(a_i) >= 1` for `0 < i < n`,
/// `v(a_0) = 1`. Coefficients outside `O_P` make the answer `false`.
pub fn is_eisenstein(ff: &RationalFunctionField, f: &PolyOverF, place: &Place) -> bool {
    let n = f.n();
    f.coeffs.iter().enumerate().all(|(i, a)| {
        let v = ff.valuation(a, place);
        if i == n {
            v == Valuation::Finite(0)
        } else if i == 0 {
            v == Valuation::Finite(1)
        } else {
            v.at_least(1)
        }
    })
}

/// `f(T + a)`.
pub fn shift(ff: &RationalFunctionField, f: &PolyOverF, a: &RationalFunction) -> PolyOverF {
    let mut c = f.coeffs.clone();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            c[j] = ff.add(&c[j], &ff.mul(a, &c[j + 1]));
        }
    }
    PolyOverF { coeffs: c }
}

/// `T^n f(1/T)`: the coefficient vector reversed.
pub fn invert(f: &PolyOverF) -> PolyOverF {
    let mut coeffs = f.coeffs.clone();
    coeffs.reverse();
    PolyOverF { coeffs }
}

fn poly_mul(ff: &RationalFunctionField, a: &[RationalFunction], b: &[RationalFunction]) -> Vec<RationalFunction> {
    let mut out = vec![RationalFunction::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ff.add(&out[i + j], &ff.mul(x, y));
        }
    }
    out
}

/// `(lT + j)^n f((hT + s)/(lT + j))`, with the formal denominator cleared.
pub fn moebius(
    ff: &RationalFunctionField,
    f: &PolyOverF,
    h: &RationalFunction,
    s: &RationalFunction,
    l: &RationalFunction,
    j: &RationalFunction,
) -> Result<PolyOverF> {
    let det = ff.sub(&ff.mul(h, j), &ff.mul(s, l));
    if det.is_zero() {
        return Err(domain!("degenerate transform: hj - sl = 0"));
    }
    let n = f.n();
    let num = [s.clone(), h.clone()];
    let den = [j.clone(), l.clone()];
    // num_pows[i] = (hT + s)^i, den_pows[i] = (lT + j)^i
    let mut num_pows = vec![vec![RationalFunction::one()]];
    let mut den_pows = vec![vec![RationalFunction::one()]];
    for i in 1..=n {
        num_pows.push(poly_mul(ff, &num_pows[i - 1], &num));
        den_pows.push(poly_mul(ff, &den_pows[i - 1], &den));
    }
    let mut out = vec![RationalFunction::zero(); n + 1];
    for (i, a) in f.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let term = poly_mul(ff, &num_pows[i], &den_pows[n - i]);
        for (k, c) in term.iter().enumerate() {
            out[k] = ff.add(&out[k], &ff.mul(a, c));
        }
    }
    Ok(PolyOverF { coeffs: out })
}

/// Which part of `U_P` a polynomial falls in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `f(T + a)` is Eisenstein for the representative `a`.
    Shift(RationalFunction),
    /// `T^n f(1/T)` is Eisenstein.
    Inversion,
}

/// Branch of `U_P` in local coordinates: a representative index or inversion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalBranch {
    Shift(u32),
    Inversion,
}

/// Eisenstein tests in `O_P/P^2` for one place.
#[derive(Clone, Debug)]
pub struct LocalEisenstein {
    ring: LocalRing,
}

impl LocalEisenstein {
    pub fn new(ff: &RationalFunctionField, place: &Place) -> Result<Self> {
        Ok(LocalEisenstein {
            ring: LocalRing::new(ff, place, 2)?,
        })
    }

    pub fn ring(&self) -> &LocalRing {
        &self.ring
    }

    pub fn place(&self) -> &Place {
        self.ring.place()
    }

    /// Coefficients modulo `P^2`, or `None` if some coefficient is not in `O_P`.
    pub fn reduce(&self, f: &[RationalFunction]) -> Option<Vec<u32>> {
        f.iter().map(|a| self.ring.reduce(a)).collect()
    }

    pub fn is_eisenstein(&self, c: &[u32]) -> bool {
        let n = c.len() - 1;
        let r = &self.ring;
        r.val(c[n]) == 0 && r.val(c[0]) == 1 && c[1..n].iter().all(|&a| r.val(a) >= 1)
    }

    /// First representative `a` (canonical order) with `f(T + a)` Eisenstein.
    pub fn witness(&self, c: &[u32]) -> Option<u32> {
        let r = &self.ring;
        if !r.is_unit(c[c.len() - 1]) {
            return None;
        }
        (0..r.residue_count()).find(|&a| r.val(r.eval(c, a)) == 1 && self.is_eisenstein(&r.taylor_shift(c, a)))
    }

    pub fn inversion_holds(&self, c: &[u32]) -> bool {
        let mut rev = c.to_vec();
        rev.reverse();
        self.is_eisenstein(&rev)
    }

    /// Membership in `U_P`, with the first branch found.
    pub fn classify(&self, c: &[u32]) -> Option<LocalBranch> {
        if let Some(a) = self.witness(c) {
            return Some(LocalBranch::Shift(a));
        }
        self.inversion_holds(c).then_some(LocalBranch::Inversion)
    }

    /// Number of branches (shifts by each representative, plus inversion) that hold.
    pub fn branch_count(&self, c: &[u32]) -> usize {
        let r = &self.ring;
        let shifts = (0..r.residue_count())
            .filter(|&a| self.is_eisenstein(&r.taylor_shift(c, a)))
            .count();
        shifts + usize::from(self.inversion_holds(c))
    }
}

/// A representative `a in G_P` with `f(T + a)` Eisenstein at `P`, if any.
pub fn shifted_eisenstein_witness(
    ff: &RationalFunctionField,
    f: &PolyOverF,
    place: &Place,
) -> Result<Option<RationalFunction>> {
    let local = LocalEisenstein::new(ff, place)?;
    Ok(local
        .reduce(&f.coeffs)
        .and_then(|c| local.witness(&c))
        .map(|a| local.ring.representative(a)))
}

/// Branch of `U_P` containing `f`, if any.
pub fn classify(ff: &RationalFunctionField, f: &PolyOverF, place: &Place) -> Result<Option<Branch>> {
    let local = LocalEisenstein::new(ff, place)?;
    Ok(local
        .reduce(&f.coeffs)
        .and_then(|c| local.classify(&c))
        .map(|b| match b {
            LocalBranch::Shift(a) => Branch::Shift(local.ring.representative(a)),
            LocalBranch::Inversion => Branch::Inversion,
        }))
}

/// `f in U_P`: `f` defines a nicely totally ramified extension at `P`.
pub fn in_u_p(ff: &RationalFunctionField, f: &PolyOverF, place: &Place) -> Result<bool> {
    Ok(classify(ff, f, place)?.is_some())
}

/// All `P in S` with `deg P <= t` at which `f` is nicely totally ramified.
pub fn nicely_ramified_places(f: &PolyOverF, t: usize, spec: &HolomorphySpec) -> Result<Vec<(Place, Branch)>> {
    if t < 1 {
        return Err(invalid!("degree bound t must be at least 1"));
    }
    let ff = spec.function_field();
    let mut out = Vec::new();
    for place in spec.places_up_to(t)? {
        if let Some(b) = classify(ff, f, &place)? {
            out.push((place, b));
        }
    }
    Ok(out)
}

/// `mu_P(U_P)` together with the place and degree it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalMeasure {
    pub value: BigRational,
    pub place: Place,
    pub n: usize,
}

/// `mu_P(U_P) = (q^d - 1)^2 (q^d + 1) / q^{d(n+2)}` for `d = deg P`.
///
/// This is `(1 + q^d) mu_P(V_P)` with `mu_P(V_P) = q^{-dn} (1 - q^{-d})^2`,
/// one copy of the Eisenstein set per representative shift plus one for the
/// inversion.
pub fn local_measure_u_for_degree(q: u64, d: usize, n: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(invalid!("the ramified local measure needs n >= 2"));
    }
    let qd = q_pow(q, d as i64);
    let one = BigRational::one();
    let num = (&qd - &one) * (&qd - &one) * (&qd + &one);
    Ok(num * q_pow(q, -((d * (n + 2)) as i64)))
}

pub fn local_measure_u(q: u64, place: &Place, n: usize) -> Result<LocalMeasure> {
    Ok(LocalMeasure {
        value: local_measure_u_for_degree(q, place.degree(), n)?,
        place: place.clone(),
        n,
    })
}

/// Exhaustive census of degree-`n` polynomials over `O_P/P^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamifiedCensus {
    /// `q^{2 deg(P) (n+1)}`.
    pub total: u64,
    /// Tuples in `U_P`.
    pub in_u: u64,
    /// Tuples in `V_P` (Eisenstein without transformation).
    pub in_v: u64,
    /// Largest number of simultaneously satisfied branches.
    pub max_branches: usize,
}

/// Counts every `f mod P^2` by membership in `U_P` and `V_P`.
pub fn ramified_census(ff: &RationalFunctionField, place: &Place, n: usize, cap: u64) -> Result<RamifiedCensus> {
    if n < 2 {
        return Err(invalid!("the ramified census needs n >= 2"));
    }
    let local = LocalEisenstein::new(ff, place)?;
    let size = local.ring.size() as u64;
    let total = size
        .checked_pow((n + 1) as u32)
        .filter(|&t| t <= cap)
        .ok_or_else(|| Error::TooLarge {
            what: alloc::format!("(O_P/P^2)^{}", n + 1),
            size: alloc::format!("{size}^{}", n + 1),
            cap,
        })?;
    let mut census = RamifiedCensus {
        total,
        in_u: 0,
        in_v: 0,
        max_branches: 0,
    };
    let mut c = vec![0u32; n + 1];
    loop {
        if local.classify(&c).is_some() {
            census.in_u += 1;
        }
        if local.is_eisenstein(&c) {
            census.in_v += 1;
        }
        census.max_branches = census.max_branches.max(local.branch_count(&c));
        // odometer
        let mut i = 0;
        loop {
            if i == c.len() {
                return Ok(census);
            }
            c[i] += 1;
            if (c[i] as u64) < size {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

/// `|{f mod P^2 : f in U_P}| / q^{2 deg(P)(n+1)}`.
pub fn local_measure_u_bruteforce(
    ff: &RationalFunctionField,
    place: &Place,
    n: usize,
    cap: u64,
) -> Result<LocalMeasure> {
    let census = ramified_census(ff, place, n, cap)?;
    Ok(LocalMeasure {
        value: BigRational::new(census.in_u.into(), census.total.into()),
        place: place.clone(),
        n,
    })
}

/// `1 - prod_{P in S, deg P <= t} (1 - mu_P(U_P))`, exactly.
pub fn ramified_density_truncated(n: usize, spec: &HolomorphySpec, t: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(invalid!("the ramified density needs n >= 2"));
    }
    let q = spec.q() as u64;
    let mut survive = PowerProduct::new();
    for d in 1..=t {
        let count = spec.count_places_of_degree(d)?;
        survive.mul_pow(&(BigRational::one() - local_measure_u_for_degree(q, d, n)?), count)?;
    }
    // q^{d(n+2)} - (q^d - 1)^2 (q^d + 1) is prime to q; denominators are powers of q
    Ok(survive.one_minus_coprime())
}

fn ramified_places_f64(spec: &HolomorphySpec, d: usize) -> f64 {
    let q = spec.q() as u64;
    let removed = spec.excluded_degrees().filter(|&e| e == d).count() as f64;
    count_monic_irreducibles_f64(q, d) + if d == 1 { 1.0 } else { 0.0 } - removed
}

fn measure_f64(q: u64, d: usize, n: usize) -> f64 {
    let qd = libm::pow(q as f64, d as f64);
    (qd - 1.0) * (qd - 1.0) * (qd + 1.0) * libm::pow(qd, -((n + 2) as f64))
}

/// [`ramified_density_truncated`] in floating point, for large `t`.
pub fn ramified_density_truncated_f64(n: usize, spec: &HolomorphySpec, t: usize) -> Result<f64> {
    if n < 2 {
        return Err(invalid!("the ramified density needs n >= 2"));
    }
    let q = spec.q() as u64;
    let log: f64 = (1..=t)
        .map(|d| ramified_places_f64(spec, d) * libm::log1p(-measure_f64(q, d, n)))
        .sum();
    Ok(-libm::expm1(log))
}

/// Upper bound on how much the places above degree `t` can add to the
/// density: `min(sum_{P in S, deg P > t} mu_P(U_P), 1 - R_t)`. The sum
/// diverges for `n = 2`, leaving `1 - R_t`.
pub fn ramified_tail_bound(n: usize, spec: &HolomorphySpec, t: usize) -> Result<f64> {
    let rest = 1.0 - ramified_density_truncated_f64(n, spec, t)?;
    if n == 2 {
        return Ok(rest);
    }
    let q = spec.q() as u64;
    let mut total = 0.0;
    for d in t + 1..t + 400 {
        let term = ramified_places_f64(spec, d) * measure_f64(q, d, n);
        total += term;
        if term < total * 1e-17 || term == 0.0 {
            break;
        }
    }
    Ok(total.min(rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Poly;
    use crate::Gf;

    fn p(c: &[u32]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| Gf(x)).collect())
    }

    fn rf(c: &[u32]) -> RationalFunction {
        RationalFunction::from_poly(p(c))
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ff2() -> RationalFunctionField {
        RationalFunctionField::with_order(2).unwrap()
    }

    /// T^3 + xT + x
    fn cubic() -> PolyOverF {
        PolyOverF::new(vec![rf(&[0, 1]), rf(&[0, 1]), rf(&[]), rf(&[1])]).unwrap()
    }

    #[test]
    fn eisenstein_examples() {
        let ff = ff2();
        let px = Place::Finite(p(&[0, 1]));
        let px1 = Place::Finite(p(&[1, 1]));
        assert!(is_eisenstein(&ff, &cubic(), &px));
        let t2_x2 = PolyOverF::new(vec![rf(&[0, 0, 1]), rf(&[]), rf(&[1])]).unwrap();
        assert!(!is_eisenstein(&ff, &t2_x2, &px));
        let t2_x = PolyOverF::new(vec![rf(&[0, 1]), rf(&[]), rf(&[1])]).unwrap();
        assert!(!is_eisenstein(&ff, &t2_x, &px1));
    }

    #[test]
    fn transform_examples() {
        let ff = ff2();
        let t2 = PolyOverF::new(vec![rf(&[]), rf(&[]), rf(&[1])]).unwrap();
        assert_eq!(shift(&ff, &t2, &rf(&[1])).coeffs(), &[rf(&[1]), rf(&[]), rf(&[1])]);
        let f = cubic();
        let back = shift(&ff, &shift(&ff, &f, &ff.x()), &ff.neg(&ff.x()));
        assert_eq!(back, f);
        // over F_3: (T + x)^3 = T^3 + x^3
        let ff3 = RationalFunctionField::with_order(3).unwrap();
        let t3 = PolyOverF::new(vec![rf(&[]), rf(&[]), rf(&[]), rf(&[1])]).unwrap();
        assert_eq!(
            shift(&ff3, &t3, &ff3.x()).coeffs(),
            &[rf(&[0, 0, 0, 1]), rf(&[]), rf(&[]), rf(&[1])]
        );
        // over F_5 the binomial coefficients survive
        let ff5 = RationalFunctionField::with_order(5).unwrap();
        assert_eq!(
            shift(&ff5, &t3, &ff5.x()).coeffs(),
            &[rf(&[0, 0, 0, 1]), rf(&[0, 0, 3]), rf(&[0, 3]), rf(&[1])]
        );
        let t3_x = PolyOverF::new(vec![rf(&[0, 1]), rf(&[]), rf(&[]), rf(&[1])]).unwrap();
        assert_eq!(invert(&t3_x).coeffs(), &[rf(&[1]), rf(&[]), rf(&[]), rf(&[0, 1])]);
        assert_eq!(invert(&invert(&f)), f);
    }

    #[test]
    fn moebius_specialisations() {
        let ff = ff2();
        let f = cubic();
        let (zero, one, a) = (RationalFunction::zero(), RationalFunction::one(), rf(&[1, 1]));
        assert_eq!(moebius(&ff, &f, &one, &a, &zero, &one).unwrap(), shift(&ff, &f, &a));
        assert_eq!(moebius(&ff, &f, &zero, &one, &one, &zero).unwrap(), invert(&f));
        assert_eq!(moebius(&ff, &f, &one, &zero, &zero, &one).unwrap(), f);
        assert!(moebius(&ff, &f, &one, &one, &one, &one).is_err());
    }

    #[test]
    fn witness_examples() {
        let ff = ff2();
        let px = Place::Finite(p(&[0, 1]));
        let shifted = shift(&ff, &cubic(), &RationalFunction::one()); // shift by -1 = +1 in char 2
        assert_eq!(
            shifted_eisenstein_witness(&ff, &shifted, &px).unwrap(),
            Some(RationalFunction::one())
        );
        assert_eq!(
            shifted_eisenstein_witness(&ff, &cubic(), &px).unwrap(),
            Some(RationalFunction::zero())
        );
        let t3_1 = PolyOverF::new(vec![rf(&[1]), rf(&[]), rf(&[]), rf(&[1])]).unwrap();
        assert_eq!(shifted_eisenstein_witness(&ff, &t3_1, &px).unwrap(), None);
    }

    #[test]
    fn u_p_examples() {
        let ff = ff2();
        let px = Place::Finite(p(&[0, 1]));
        assert!(in_u_p(&ff, &cubic(), &px).unwrap());
        assert_eq!(classify(&ff, &invert(&cubic()), &px).unwrap(), Some(Branch::Inversion));
        let constant = PolyOverF::new(vec![rf(&[1]), rf(&[1]), rf(&[]), rf(&[1])]).unwrap();
        for place in [
            px,
            Place::Finite(p(&[1, 1])),
            Place::Finite(p(&[1, 1, 1])),
            Place::Infinity,
        ] {
            assert!(!in_u_p(&ff, &constant, &place).unwrap());
        }
    }

    #[test]
    fn nicely_ramified_examples() {
        let ff = ff2();
        let spec = HolomorphySpec::polynomial_ring(ff.clone());
        let found = nicely_ramified_places(&cubic(), 2, &spec).unwrap();
        assert!(found.contains(&(Place::Finite(p(&[0, 1])), Branch::Shift(RationalFunction::zero()))));
        let constant = PolyOverF::new(vec![rf(&[1]), rf(&[1]), rf(&[]), rf(&[1])]).unwrap();
        assert!(nicely_ramified_places(&constant, 3, &spec).unwrap().is_empty());
        let g = PolyOverF::new(vec![rf(&[1, 1]), rf(&[1, 1]), rf(&[]), rf(&[1])]).unwrap();
        let found = nicely_ramified_places(&g, 1, &spec).unwrap();
        assert!(found.contains(&(Place::Finite(p(&[1, 1])), Branch::Shift(RationalFunction::zero()))));
    }

    #[test]
    fn measure_formula_values() {
        assert_eq!(local_measure_u_for_degree(2, 1, 3).unwrap(), r(3, 32));
        assert_eq!(local_measure_u_for_degree(2, 1, 2).unwrap(), r(3, 16));
        assert_eq!(local_measure_u_for_degree(3, 1, 3).unwrap(), r(16, 243));
        assert!(local_measure_u_for_degree(2, 1, 1).is_err());
    }

    #[test]
    fn bruteforce_small() {
        let ff = ff2();
        let px = Place::Finite(p(&[0, 1]));
        let census = ramified_census(&ff, &px, 3, 1 << 20).unwrap();
        assert_eq!(census.total, 256);
        assert_eq!(BigRational::new(census.in_u.into(), 256.into()), r(3, 32));
        assert_eq!(census.in_u, 3 * census.in_v);
        assert!(census.max_branches <= 1);
        assert_eq!(
            local_measure_u_bruteforce(&ff, &px, 2, 1 << 20).unwrap().value,
            r(3, 16)
        );
        assert!(matches!(ramified_census(&ff, &px, 3, 100), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn truncated_density() {
        let spec = HolomorphySpec::polynomial_ring(ff2());
        assert_eq!(ramified_density_truncated(3, &spec, 1).unwrap(), r(183, 1024));
        let exact = crate::rational::to_f64(&ramified_density_truncated(3, &spec, 6).unwrap());
        let approx = ramified_density_truncated_f64(3, &spec, 6).unwrap();
        assert!((exact - approx).abs() < 1e-12);
        let at_30 = ramified_density_truncated_f64(2, &spec, 30).unwrap();
        assert!((at_30 - 0.943_114_257).abs() < 1e-8);
        assert_eq!(
            ramified_density_truncated(3, &spec, 0).unwrap(),
            num_traits::Zero::zero()
        );
    }

    #[test]
    fn tail_bounds() {
        let spec = HolomorphySpec::polynomial_ring(ff2());
        let r8 = ramified_density_truncated_f64(3, &spec, 8).unwrap();
        let r60 = ramified_density_truncated_f64(3, &spec, 60).unwrap();
        let b = ramified_tail_bound(3, &spec, 8).unwrap();
        assert!(r60 - r8 <= b && b < 1e-3);
        let b2 = ramified_tail_bound(2, &spec, 30).unwrap();
        assert!((b2 - (1.0 - 0.943_114_257)).abs() < 1e-8);
    }
}
