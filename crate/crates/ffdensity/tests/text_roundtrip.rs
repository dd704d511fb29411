use ffdensity::text::*;
use ffdensity_core::density::TupleForm;
use ffdensity_core::eisenstein::PolyOverF;
use ffdensity_core::{BigRational, HolomorphySpec, Place, Poly, RationalFunctionField};
use proptest::prelude::*;

fn field(sel: usize) -> RationalFunctionField {
    RationalFunctionField::with_order([2, 3, 4, 5, 9][sel % 5]).unwrap()
}

fn poly(ff: &RationalFunctionField, raw: &[u32]) -> Poly {
    Poly::from_coeffs(raw.iter().map(|&c| ff.field().element(c % ff.q()).unwrap()).collect())
}

fn raw_poly() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..81, 0..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn polynomials(sel in 0usize..5, raw in raw_poly()) {
        let ff = field(sel);
        let p = poly(&ff, &raw);
        prop_assert_eq!(parse_poly(ff.field(), &format_poly(&p)).unwrap(), p.clone());
        prop_assert_eq!(parse_poly(ff.field(), &format_poly_list(&p)).unwrap(), p);
    }

    #[test]
    fn rational_functions_and_polys_over_f(sel in 0usize..5, raw in prop::collection::vec((raw_poly(), raw_poly()), 2..5)) {
        let ff = field(sel);
        let coeffs: Vec<_> = raw
            .iter()
            .map(|(n, d)| {
                let d = poly(&ff, d);
                let d = if d.is_zero() { Poly::one() } else { d };
                ff.fraction(&poly(&ff, n), &d).unwrap()
            })
            .collect();
        for u in &coeffs {
            prop_assert_eq!(&parse_rational_function(&ff, &format_rational_function(u)).unwrap(), u);
        }
        let f = PolyOverF::new(coeffs).unwrap();
        prop_assert_eq!(parse_poly_over_f(&ff, &format_poly_over_f(&f)).unwrap(), f);
    }

    #[test]
    fn specs_places_divisors(sel in 0usize..5, picks in prop::collection::vec((1usize..3, 0usize..8, 0u64..5), 0..3), inf in any::<bool>()) {
        let ff = field(sel);
        let mut excluded: std::collections::BTreeSet<Place> = picks
            .iter()
            .map(|&(d, i, _)| {
                let ps = ff.places_of_degree(d, &Default::default()).unwrap();
                ps[i % ps.len()].clone()
            })
            .collect();
        if inf || excluded.is_empty() {
            excluded.insert(Place::Infinity);
        }
        for p in &excluded {
            prop_assert_eq!(&parse_place(&ff, &format_place(p)).unwrap(), p);
        }
        let spec = HolomorphySpec::new(ff.clone(), excluded.clone()).unwrap();
        prop_assert_eq!(parse_spec(&format_spec(&spec)).unwrap(), spec.clone());
        let d = ffdensity_core::DivisorOnT::new(&spec, excluded.iter().cloned().zip(picks.iter().map(|p| p.2).chain([2]))).unwrap();
        prop_assert_eq!(parse_divisor(&spec, &format_divisor(&d)).unwrap(), d);
    }

    #[test]
    fn matrices(raw in prop::collection::vec(raw_poly(), 6), k in 1usize..3) {
        let ff = field(1);
        let spec = HolomorphySpec::polynomial_ring(ff.clone());
        let m = 3;
        let rows: Vec<Vec<_>> = (0..k)
            .map(|i| (0..m).map(|j| ffdensity_core::RationalFunction::from_poly(poly(&ff, &raw[i * m + j]))).collect())
            .collect();
        let mat = ffdensity_core::unimodular::PolyMatrix::from_rows(&spec, rows).unwrap();
        prop_assert_eq!(parse_matrix(&spec, &format_matrix(&mat)).unwrap(), mat);
    }

    #[test]
    fn rationals_lpolys_and_forms(n in any::<i64>(), d in 1i64..i64::MAX, l in prop::collection::vec(-50i64..50, 0..4),
                                 terms in prop::collection::vec((1u32..5, prop::collection::vec(0u32..3, 0..4)), 0..4)) {
        let r = BigRational::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        let mut coeffs = vec![1i64];
        coeffs.extend(&l);
        if let Ok(lp) = ffdensity_core::zeta::LPolynomial::from_i64(&coeffs) {
            prop_assert_eq!(parse_lpoly(&format_lpoly(&lp)).unwrap(), lp);
        }
        let ff = field(3);
        let form = TupleForm::new(terms.iter().map(|(c, e)| (ff.field().element(*c).unwrap(), e.clone())).collect());
        prop_assert_eq!(parse_tuple_form(ff.field(), &format_tuple_form(&form)).unwrap(), form);
    }
}
