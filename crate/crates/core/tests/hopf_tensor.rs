use twistq::arith::Fe;
use twistq::diagram::NodeClass;
use twistq::drinfeld::{poly_from_psi, SeriesLaw, UPoly, WeightSeries};
use twistq::hopf_tensor::{coproduct_report, tensor_highest_weight, verify_divided_powers};
use twistq::repcore::{build_va, find_highest_weight, MatrixRep};

fn law() -> SeriesLaw {
    SeriesLaw::new(NodeClass::SplitLinked, 2)
}

fn pair() -> (MatrixRep, MatrixRep) {
    let va = build_va(None).unwrap();
    let vb = va.with_parameter("a", &Fe::named("b")).unwrap();
    (va, vb)
}

#[test]
fn va_weight_and_polynomial() {
    let va = build_va(None).unwrap();
    let hw = find_highest_weight(&va, 1, 10).unwrap();
    let n = hw.node(1).unwrap();
    let q2 = Fe::q_pow(2);
    assert_eq!(n.k, q2);
    let a = Fe::named("a");
    let gap = &q2 - &Fe::q_pow(-2);
    assert_eq!(n.psi_plus.coeff(0), &q2);
    for k in 1..=10 {
        assert_eq!(n.psi_plus.coeff(k), &(&gap * &a.pow(k as i64)), "k={k}");
    }
    let w = WeightSeries { k: n.k.clone(), psi_plus: n.psi_plus.clone(), psi_minus: Some(n.psi_minus.clone()) };
    let ex = poly_from_psi(&w, law()).unwrap();
    assert_eq!(ex.poly, UPoly::linear(&a));
    assert_eq!(ex.p[1], -a);
    assert!(ex.p[2..=10].iter().all(Fe::is_zero));
}

#[test]
fn tensor_polynomial_is_the_product() {
    let (va, vb) = pair();
    let tw = tensor_highest_weight(&va, &vb, 8).unwrap();
    let (a, b) = (Fe::named("a"), Fe::named("b"));
    assert_eq!(tw.k, Fe::q_pow(4));
    assert_eq!(tw.psi_plus.coeff(1), &(&(&a + &b) * &(&Fe::q_pow(4) - &Fe::one())));
    let w = WeightSeries { k: tw.k.clone(), psi_plus: tw.psi_plus.clone(), psi_minus: None };
    let ex = poly_from_psi(&w, law()).unwrap();
    assert_eq!(ex.poly, UPoly::linear(&a).mul(&UPoly::linear(&b)));
}

#[test]
fn tensor_square_is_a_square() {
    let va = build_va(None).unwrap();
    let tw = tensor_highest_weight(&va, &va, 6).unwrap();
    let w = WeightSeries { k: tw.k, psi_plus: tw.psi_plus, psi_minus: None };
    let pa = UPoly::linear(&Fe::named("a"));
    assert_eq!(poly_from_psi(&w, law()).unwrap().poly, pa.mul(&pa));
}

#[test]
fn coproduct_congruences_through_6() {
    let (va, vb) = pair();
    let r = coproduct_report(&va, &vb, 6).unwrap();
    assert!(r.passed(), "{}", r.to_text(false));
    for k in 0..=6 {
        for id in ["tensor.x-plus", "tensor.psi-plus", "delta.conj"] {
            assert!(r.find(&format!("{id}[k={k}]")).is_some(), "{id}[k={k}]");
        }
    }
    assert!(!r.notes.is_empty());
}

#[test]
fn low_order_identities() {
    let va = build_va(None).unwrap();
    let s = verify_divided_powers(&va, 1).unwrap();
    let bad: Vec<_> = s.report.failures().map(|r| r.id.as_str()).collect();
    assert_eq!(bad, ["id.dx-e0-shift[r=0]", "id.dx-e0-shift[r=1]"]);
    assert!(s.report.find("id.dx-e0-shift.fitted[r=1]").unwrap().pass);
}
