use proptest::prelude::*;

use twistq::arith::Fe;
use twistq::diagram::{NodeClass, TwistedDiagram};
use twistq::drinfeld::{
    is_sigma_compatible, poly_from_psi, psi_from_poly, series_law_residual, DrinfeldError, DrinfeldPolynomial, SeriesLaw,
    UPoly, DEGREE_GUARD,
};

fn arb_poly() -> impl Strategy<Value = UPoly> {
    prop::collection::vec((-5i64..=5, 1i64..=4), 0..=5).prop_map(|cs| {
        let n = cs.len();
        let mut coeffs = vec![Fe::one()];
        for (j, (num, den)) in cs.into_iter().enumerate() {
            let num = if j + 1 == n && num == 0 { 1 } else { num };
            coeffs.push(Fe::ratio(num, den));
        }
        UPoly::new(coeffs).unwrap()
    })
}

fn round_trip(p: &UPoly, law: SeriesLaw) -> Result<(), TestCaseError> {
    let order = (p.degree() + DEGREE_GUARD + 1) * law.stride();
    let w = psi_from_poly(p, law, order);
    prop_assert_eq!(&w.k, &law.base().pow(p.degree() as i64));
    prop_assert_eq!(&(w.psi_plus.coeff(0) * w.psi_minus.as_ref().unwrap().coeff(0)), &Fe::one());
    for n in 0..=order {
        if n % law.stride() != 0 {
            prop_assert!(w.psi_plus.coeff(n).is_zero());
            prop_assert!(w.psi_minus.as_ref().unwrap().coeff(n).is_zero());
        }
    }
    prop_assert!(series_law_residual(&w, p, law));
    let back = poly_from_psi(&w, law).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&back.poly, p);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn round_trip_split_linked(p in arb_poly()) {
        round_trip(&p, SeriesLaw::new(NodeClass::SplitLinked, 2))?;
    }

    #[test]
    fn round_trip_split_orthogonal(p in arb_poly(), m in 2i64..=3) {
        round_trip(&p, SeriesLaw::new(NodeClass::SplitOrthogonal, m))?;
    }

    #[test]
    fn round_trip_fixed(p in arb_poly(), m in 2i64..=3) {
        round_trip(&p, SeriesLaw::new(NodeClass::Fixed, m))?;
    }

    #[test]
    fn tensor_preserves_sigma_compat(p in arb_poly(), r in arb_poly()) {
        let d = TwistedDiagram::bundled("d4_3").unwrap();
        let x = DrinfeldPolynomial::from_orbit_reps(&d, &[(1, p), (2, UPoly::one())]);
        // the fixed node needs a polynomial in u^3
        let mut cubed = vec![Fe::zero(); 3 * r.degree() + 1];
        for (j, c) in r.coeffs().iter().enumerate() {
            cubed[3 * j] = c.clone();
        }
        let y = DrinfeldPolynomial::from_orbit_reps(&d, &[(1, r), (2, UPoly::new(cubed).unwrap())]);
        prop_assert!(is_sigma_compatible(&x, &d));
        prop_assert!(is_sigma_compatible(&y, &d));
        prop_assert!(is_sigma_compatible(&x.tensor(&y), &d));
    }
}

#[test]
fn symbolic_tensor_law() {
    let (a, b) = (Fe::named("a"), Fe::named("b"));
    let law = SeriesLaw::new(NodeClass::SplitLinked, 2);
    let pa = UPoly::linear(&a);
    let pb = UPoly::linear(&b);
    let prod = pa.mul(&pb);
    assert_eq!(prod.coeffs(), &[Fe::one(), -(&a + &b), &a * &b]);
    let wa = psi_from_poly(&pa, law, 8);
    let wb = psi_from_poly(&pb, law, 8);
    let wab = psi_from_poly(&prod, law, 8);
    assert_eq!(wa.psi_plus.mul(&wb.psi_plus), wab.psi_plus);
    assert_eq!(wa.psi_minus.unwrap().mul(&wb.psi_minus.unwrap()), wab.psi_minus.unwrap());
}

#[test]
fn unit_tuple_is_neutral() {
    let d = TwistedDiagram::bundled("a2_2").unwrap();
    let p = DrinfeldPolynomial::from_orbit_reps(&d, &[(1, UPoly::linear(&Fe::named("a")))]);
    assert_eq!(p.tensor(&DrinfeldPolynomial::unit(&d)), p);
}

#[test]
fn omega_cubed_compat() {
    let d = TwistedDiagram::bundled("d4_3").unwrap();
    let p = DrinfeldPolynomial::from_orbit_reps(&d, &[(1, UPoly::linear(&Fe::named("a"))), (2, UPoly::one())]);
    assert!(is_sigma_compatible(&p, &d));
    let bad = p.clone().with(3, UPoly::linear(&Fe::named("a")));
    assert!(!is_sigma_compatible(&bad, &d));
}

#[test]
fn nonterminating_series_is_rejected() {
    let law = SeriesLaw::new(NodeClass::SplitLinked, 2);
    let mut w = psi_from_poly(&UPoly::linear(&Fe::named("a")), law, 8);
    w.psi_plus.set(6, Fe::one());
    assert!(matches!(poly_from_psi(&w, law), Err(DrinfeldError::NonTerminating(_))));
}

#[test]
fn infinity_mismatch_is_rejected() {
    let law = SeriesLaw::new(NodeClass::SplitLinked, 2);
    let mut w = psi_from_poly(&UPoly::linear(&Fe::named("a")), law, 8);
    w.psi_minus.as_mut().unwrap().set(1, Fe::zero());
    assert_eq!(poly_from_psi(&w, law), Err(DrinfeldError::Infinity(1)));
}
