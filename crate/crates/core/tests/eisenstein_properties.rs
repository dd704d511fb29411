use ffdensity_core::eisenstein::{
    in_u_p, invert, is_eisenstein, local_measure_u, local_measure_u_bruteforce, moebius, ramified_census,
    ramified_density_truncated, shift, shifted_eisenstein_witness, PolyOverF,
};
use ffdensity_core::{HolomorphySpec, Place, Poly, RationalFunction, RationalFunctionField, Valuation};
use proptest::prelude::*;

fn poly(ff: &RationalFunctionField, c: &[u32]) -> Poly {
    let q = ff.q();
    Poly::from_coeffs(c.iter().map(|&x| ff.field().element(x % q).unwrap()).collect())
}

fn places(ff: &RationalFunctionField) -> Vec<Place> {
    let mut out = ff.places_of_degree(1, &Default::default()).unwrap();
    out.extend(ff.places_of_degree(2, &Default::default()).unwrap());
    out
}

/// An element of `O_P` built from raw coefficients.
fn integral(ff: &RationalFunctionField, place: &Place, c: &[u32]) -> RationalFunction {
    let g = poly(ff, c);
    match place {
        Place::Finite(_) => RationalFunction::from_poly(g),
        Place::Infinity => {
            let k = g.degree().unwrap_or(0);
            ff.fraction(&g, &Poly::monomial(k)).unwrap()
        }
    }
}

/// An element of `P` built from raw coefficients.
fn in_ideal(ff: &RationalFunctionField, place: &Place, c: &[u32]) -> RationalFunction {
    ff.mul(&ff.uniformizer(place), &integral(ff, place, c))
}

/// A unit of `O_P`.
fn unit(ff: &RationalFunctionField, place: &Place, c: &[u32]) -> RationalFunction {
    let u = integral(ff, place, c);
    if ff.valuation(&u, place) == Valuation::Finite(0) {
        u
    } else {
        ff.add(&u, &RationalFunction::one())
    }
}

fn eisenstein(ff: &RationalFunctionField, place: &Place, n: usize, raw: &[Vec<u32>]) -> PolyOverF {
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(ff.mul(&ff.uniformizer(place), &unit(ff, place, &raw[0])));
    for r in &raw[1..n] {
        coeffs.push(in_ideal(ff, place, r));
    }
    coeffs.push(unit(ff, place, &raw[n]));
    PolyOverF::new(coeffs).unwrap()
}

fn generic(ff: &RationalFunctionField, place: &Place, n: usize, raw: &[Vec<u32>]) -> PolyOverF {
    PolyOverF::new((0..=n).map(|i| integral(ff, place, &raw[i])).collect()).unwrap()
}

fn raw_coeffs() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..9, 0..4), 6)
}

fn setup(q_sel: bool, place_sel: usize) -> (RationalFunctionField, Place) {
    let ff = RationalFunctionField::with_order(if q_sel { 3 } else { 2 }).unwrap();
    let ps = places(&ff);
    let place = ps[place_sel % ps.len()].clone();
    (ff, place)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shift_by_ideal_element_preserves_eisenstein(
        q3 in any::<bool>(), psel in 0usize..16, n in 2usize..5,
        raw in raw_coeffs(), p in prop::collection::vec(0u32..9, 0..4), build in any::<bool>(),
    ) {
        let (ff, place) = setup(q3, psel);
        let f = if build { eisenstein(&ff, &place, n, &raw) } else { generic(&ff, &place, n, &raw) };
        let pi = in_ideal(&ff, &place, &p);
        prop_assert_eq!(is_eisenstein(&ff, &f, &place), is_eisenstein(&ff, &shift(&ff, &f, &pi), &place));
        if build {
            prop_assert!(is_eisenstein(&ff, &f, &place));
        }
    }

    #[test]
    fn witness_is_complete(
        q3 in any::<bool>(), psel in 0usize..16, n in 2usize..5,
        raw in raw_coeffs(), u in prop::collection::vec(0u32..9, 0..4),
    ) {
        let (ff, place) = setup(q3, psel);
        let u = integral(&ff, &place, &u);
        // f(T + u) = e(T) is Eisenstein
        let f = shift(&ff, &eisenstein(&ff, &place, n, &raw), &ff.neg(&u));
        prop_assert!(is_eisenstein(&ff, &shift(&ff, &f, &u), &place));
        let w = shifted_eisenstein_witness(&ff, &f, &place).unwrap();
        prop_assert!(w.is_some());
        let w = w.unwrap();
        prop_assert!(is_eisenstein(&ff, &shift(&ff, &f, &w), &place));
        prop_assert!(ff.residue_representatives(&place).contains(&w));
    }

    #[test]
    fn moebius_transform_implies_membership(
        q3 in any::<bool>(), psel in 0usize..16, n in 2usize..5, raw in raw_coeffs(),
        hslj in prop::collection::vec(prop::collection::vec(0u32..9, 0..3), 4), build in any::<bool>(),
    ) {
        let (ff, place) = setup(q3, psel);
        let [h, s, l, j] = [0, 1, 2, 3].map(|i| integral(&ff, &place, &hslj[i]));
        let det = ff.sub(&ff.mul(&h, &j), &ff.mul(&s, &l));
        prop_assume!(ff.valuation(&det, &place) == Valuation::Finite(0));
        let f = if build {
            // the inverse transform of an Eisenstein polynomial
            let e = eisenstein(&ff, &place, n, &raw);
            moebius(&ff, &e, &j, &ff.neg(&s), &ff.neg(&l), &h).unwrap()
        } else {
            generic(&ff, &place, n, &raw)
        };
        let g = moebius(&ff, &f, &h, &s, &l, &j).unwrap();
        if build {
            prop_assert!(is_eisenstein(&ff, &g, &place));
        }
        if is_eisenstein(&ff, &g, &place) {
            prop_assert!(in_u_p(&ff, &f, &place).unwrap());
        }
    }

    #[test]
    fn inversion_and_shift_round_trip(q3 in any::<bool>(), n in 1usize..5, raw in raw_coeffs(), a in prop::collection::vec(0u32..9, 0..4)) {
        let (ff, place) = setup(q3, 0);
        let f = generic(&ff, &place, n, &raw);
        let a = RationalFunction::from_poly(poly(&ff, &a));
        prop_assert_eq!(invert(&invert(&f)), f.clone());
        prop_assert_eq!(shift(&ff, &shift(&ff, &f, &a), &ff.neg(&a)), f.clone());
        let shifted = shift(&ff, &f, &a);
        prop_assert_eq!(f.coeffs().last(), shifted.coeffs().last());
    }
}

#[test]
fn branch_disjointness_exhaustive() {
    let ff = RationalFunctionField::with_order(2).unwrap();
    for place in ff.places_of_degree(1, &Default::default()).unwrap() {
        for n in 2..=3 {
            let census = ramified_census(&ff, &place, n, 1 << 20).unwrap();
            assert!(census.max_branches <= 1, "{place:?} n={n}");
            assert_eq!(census.in_u, 3 * census.in_v);
        }
    }
}

#[test]
fn local_measure_matches_census() {
    for (q, d, n) in [
        (2, 1, 2),
        (2, 1, 3),
        (2, 1, 4),
        (3, 1, 2),
        (3, 1, 3),
        (2, 2, 2),
        (2, 2, 3),
        (4, 1, 2),
    ] {
        let ff = RationalFunctionField::with_order(q).unwrap();
        for place in ff.places_of_degree(d, &Default::default()).unwrap() {
            let exact = local_measure_u(q, &place, n).unwrap();
            let brute = local_measure_u_bruteforce(&ff, &place, n, 1 << 20).unwrap();
            assert_eq!(exact, brute, "q={q} d={d} n={n} {place:?}");
            let census = ramified_census(&ff, &place, n, 1 << 20).unwrap();
            assert_eq!(census.in_u, (q.pow(d as u32) + 1) * census.in_v);
        }
    }
}

#[test]
fn truncated_density_is_monotone() {
    let spec = HolomorphySpec::polynomial_ring(RationalFunctionField::with_order(2).unwrap());
    let mut prev = ramified_density_truncated(3, &spec, 1).unwrap();
    for t in 2..=8 {
        let next = ramified_density_truncated(3, &spec, t).unwrap();
        assert!(next >= prev);
        prev = next;
    }
}

#[test]
fn constant_polynomial_is_never_ramified() {
    let ff = RationalFunctionField::with_order(2).unwrap();
    let one = RationalFunction::one();
    let f = PolyOverF::new(vec![one.clone(), one.clone(), RationalFunction::zero(), one]).unwrap();
    for place in places(&ff)
        .into_iter()
        .chain(ff.places_of_degree(3, &Default::default()).unwrap())
    {
        assert!(!in_u_p(&ff, &f, &place).unwrap());
    }
}
