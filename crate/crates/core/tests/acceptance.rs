//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use twistq::arith::{Fe, Matrix};
use twistq::diagram::{NodeClass, TwistedDiagram};
use twistq::drinfeld::{
    is_sigma_compatible, poly_from_psi, psi_from_poly, DrinfeldPolynomial, SeriesLaw, UPoly, WeightSeries, DEGREE_GUARD,
};
use twistq::hopf_tensor::{coproduct_report, tensor_highest_weight, verify_divided_powers};
use twistq::presentations::{chevalley_relations, chevalley_via_iso, iso_image, sl3tau_relations, GenKind, GenSymbol, LinComb};
use twistq::repcore::{build_va, check_relations, find_highest_weight, psi_consistency, MatrixRep};
use twistq::report::Report;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn a2_2() -> TwistedDiagram {
    TwistedDiagram::bundled("a2_2").expect("bundled a2_2")
}

fn va() -> MatrixRep {
    build_va(None).expect("V_a")
}

fn linked() -> SeriesLaw {
    SeriesLaw::new(NodeClass::SplitLinked, 2)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn first_failures(r: &Report) -> String {
    let ids: Vec<_> = r.failures().map(|c| c.id.as_str()).take(6).collect();
    format!("{} failing: {}", r.failures().count(), ids.join(", "))
}

fn relation_suite() -> Outcome {
    let start = Instant::now();
    let rels = sl3tau_relations(3, 2);
    let report = check_relations(&va(), &rels).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.passed(), first_failures(&report))?;
    let families: BTreeSet<_> = rels.iter().map(|r| r.family().to_string()).collect();
    ensure(families.len() >= 7, format!("only {} families generated", families.len()))?;
    ensure(elapsed < Duration::from_secs(120), format!("took {elapsed:.1?}"))?;
    Ok(format!("{} instances in {} families, {elapsed:.1?}", rels.len(), families.len()))
}

fn chevalley_suite() -> Outcome {
    let d = a2_2();
    let v = va();
    let (rels, skipped) = chevalley_via_iso(&d, &chevalley_relations(&d)).map_err(|e| e.to_string())?;
    ensure(skipped.is_empty(), format!("skipped {skipped:?}"))?;
    let report = check_relations(&v, &rels).map_err(|e| e.to_string())?;
    ensure(report.passed(), first_failures(&report))?;
    for id in ["chev.serre+[i=0,j=1]", "chev.serre+[i=1,j=0]", "chev.serre-[i=0,j=1]", "chev.serre-[i=1,j=0]"] {
        ensure(report.find(id).is_some(), format!("missing {id}"))?;
    }
    let ep = iso_image(&d, &GenSymbol::new(GenKind::EPlus, 0, 0)).map_err(|e| e.to_string())?;
    let em = iso_image(&d, &GenSymbol::new(GenKind::EMinus, 0, 0)).map_err(|e| e.to_string())?;
    let k0 = iso_image(&d, &GenSymbol::new(GenKind::KChev, 0, 0)).map_err(|e| e.to_string())?;
    let k0i = iso_image(&d, &GenSymbol::new(GenKind::KChevInv, 0, 0)).map_err(|e| e.to_string())?;
    let comm = v.eval(&ep.commutator(&em)).map_err(|e| e.to_string())?;
    let want = Matrix::diag(vec![Fe::from_int(-1), Fe::zero(), Fe::one()]);
    ensure(comm == want, "[e0+, e0-] is not diag(-1, 0, 1)")?;
    let kk = v.eval(&k0.sub(&k0i)).map_err(|e| e.to_string())?.scale(&(&Fe::q_pow(4) - &Fe::q_pow(-4)).inv());
    ensure(kk == want, "(k0 - k0^-1)/(q^4 - q^-4) is not diag(-1, 0, 1)")?;
    let x = |dg| GenSymbol::x(-1, 1, dg);
    let et = LinComb::term(Fe::one(), vec![x(0), x(1)]).add(&LinComb::term(-Fe::q_pow(2), vec![x(1), x(0)]));
    let a = Fe::named("a");
    let corner = Matrix::unit(3, 2, 0).scale(&(&a * &(&Fe::one() + &Fe::q_pow(4))));
    ensure(v.eval(&et).map_err(|e| e.to_string())? == corner, "e0~ is not a(1+q^4)E31")?;
    Ok(format!("{} relations, [e0+, e0-] = diag(-1, 0, 1)", rels.len()))
}

fn psi_consistency_suite() -> Outcome {
    let r = psi_consistency(&va(), 1, 8).map_err(|e| e.to_string())?;
    ensure(r.passed(), first_failures(&r))?;
    Ok(format!("{} series coefficients through order 8", r.records.len() - 1))
}

fn va_extraction() -> Outcome {
    let hw = find_highest_weight(&va(), 1, 10).map_err(|e| e.to_string())?;
    ensure(hw.vector == vec![Fe::one(), Fe::zero(), Fe::zero()], "unexpected highest-weight vector")?;
    let n = hw.node(1).ok_or("no node 1")?;
    let q2 = Fe::q_pow(2);
    ensure(n.k == q2, format!("K eigenvalue {}", n.k))?;
    let a = Fe::named("a");
    let gap = &q2 - &Fe::q_pow(-2);
    for k in 0..=10 {
        let want = if k == 0 { q2.clone() } else { &gap * &a.pow(k as i64) };
        ensure(n.psi_plus.coeff(k) == &want, format!("psi+_{k} = {}", n.psi_plus.coeff(k)))?;
    }
    let w = WeightSeries { k: n.k.clone(), psi_plus: n.psi_plus.clone(), psi_minus: Some(n.psi_minus.clone()) };
    let ex = poly_from_psi(&w, linked()).map_err(|e| e.to_string())?;
    ensure(ex.poly == UPoly::linear(&a), format!("P(u) = {}", ex.poly))?;
    ensure(ex.p.len() > 10 && ex.p[2..=10].iter().all(Fe::is_zero), "p_r nonzero for some 2 <= r <= 10")?;
    Ok(format!("P(u) = {}", ex.poly))
}

fn tensor_law() -> Outcome {
    let v = va();
    let vb = v.with_parameter("a", &Fe::named("b")).map_err(|e| e.to_string())?;
    let tw = tensor_highest_weight(&v, &vb, 8).map_err(|e| e.to_string())?;
    let (a, b) = (Fe::named("a"), Fe::named("b"));
    let c1 = &(&a + &b) * &(&Fe::q_pow(4) - &Fe::one());
    ensure(tw.psi_plus.coeff(1) == &c1, format!("order-1 coefficient {}", tw.psi_plus.coeff(1)))?;
    let w = WeightSeries { k: tw.k.clone(), psi_plus: tw.psi_plus.clone(), psi_minus: None };
    let ex = poly_from_psi(&w, linked()).map_err(|e| e.to_string())?;
    let want = UPoly::linear(&a).mul(&UPoly::linear(&b));
    ensure(ex.poly == want, format!("P(u) = {}", ex.poly))?;
    Ok(format!("P(u) = {}", ex.poly))
}

fn coproduct_congruences() -> Outcome {
    let v = va();
    let vb = v.with_parameter("a", &Fe::named("b")).map_err(|e| e.to_string())?;
    let r = coproduct_report(&v, &vb, 6).map_err(|e| e.to_string())?;
    for k in 0..=6 {
        for fam in ["tensor.x-plus", "tensor.psi-plus"] {
            let id = format!("{fam}[k={k}]");
            let rec = r.find(&id).ok_or(format!("missing {id}"))?;
            ensure(rec.pass, format!("{id}: {}", rec.residual))?;
        }
    }
    ensure(r.passed(), first_failures(&r))?;
    Ok(format!("{} checks on V_a (x) V_b, k <= 6", r.records.len()))
}

fn r_of(id: &str) -> Option<i64> {
    let i = id.find("[r=")?;
    id[i + 3..].trim_end_matches(']').parse().ok()
}

fn divided_power_suite() -> Outcome {
    let s = verify_divided_powers(&va(), 4).map_err(|e| e.to_string())?;
    let in_scope = |id: &str| {
        if id.ends_with(".fitted") || id.contains(".fitted[") {
            return false;
        }
        match (id.starts_with("id."), id.starts_with("hwv."), r_of(id)) {
            (true, _, _) => true,
            (_, true, Some(r)) => r <= 3,
            _ => false,
        }
    };
    let checked: Vec<_> = s.report.records.iter().filter(|c| in_scope(&c.id)).collect();
    let bad: Vec<_> = checked.iter().filter(|c| !c.pass).map(|c| c.id.as_str()).collect();
    let fitted_ok = s.report.records.iter().filter(|c| c.id.contains(".fitted")).all(|c| c.pass);
    ensure(
        bad.is_empty(),
        format!("{} of {} failing: {} (fitted variant passes: {fitted_ok})", bad.len(), checked.len(), bad.join(", ")),
    )?;
    Ok(format!("{} checks, r <= 4 / r <= 3", checked.len()))
}

fn diagram_data() -> Outcome {
    let d = a2_2();
    ensure(d.cartan_sigma_rows() == [vec![2, -1], vec![-4, 2]], "A^sigma differs")?;
    ensure(d.symmetrizers() == [4, 1], "d differs")?;
    ensure(d.marks() == [1, 2], format!("n = {:?}", d.marks()))?;
    ensure(d.residual().iter().all(|&x| x == 0), format!("residual {:?}", d.residual()))?;
    let v = va();
    let mut w = LinComb::one();
    for (t, n) in d.central_exponents().iter().enumerate() {
        let img = iso_image(&d, &GenSymbol::new(GenKind::KChev, t as u32, 0)).map_err(|e| e.to_string())?;
        w = w.mul(&img.pow(*n as u32));
    }
    ensure(v.eval(&w).map_err(|e| e.to_string())?.is_identity(), "k0 k1^2 is not the identity")?;
    Ok("n = (1, 2), k0 k1^2 = 1".into())
}

fn arb_poly() -> impl Strategy<Value = UPoly> {
    proptest::collection::vec((-5i64..=5, 1i64..=4), 0..=5).prop_map(|cs| {
        let n = cs.len();
        let mut coeffs = vec![Fe::one()];
        for (j, (num, den)) in cs.into_iter().enumerate() {
            let num = if j + 1 == n && num == 0 { 1 } else { num };
            coeffs.push(Fe::ratio(num, den));
        }
        UPoly::new(coeffs).expect("constant term 1")
    })
}

fn samples(n: usize) -> Vec<UPoly> {
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let s = arb_poly();
    (0..n).map(|_| s.new_tree(&mut runner).expect("sample").current()).collect()
}

fn round_trip() -> Outcome {
    let laws = [
        SeriesLaw::new(NodeClass::SplitLinked, 2),
        SeriesLaw::new(NodeClass::SplitOrthogonal, 2),
        SeriesLaw::new(NodeClass::Fixed, 2),
        SeriesLaw::new(NodeClass::Fixed, 3),
    ];
    let polys = samples(50);
    for law in laws {
        for p in &polys {
            let order = (p.degree() + DEGREE_GUARD + 1) * law.stride();
            let back = poly_from_psi(&psi_from_poly(p, law, order), law).map_err(|e| format!("{law:?} {p}: {e}"))?;
            ensure(&back.poly == p, format!("{law:?}: {p} came back as {}", back.poly))?;
        }
    }
    let d = TwistedDiagram::bundled("d4_3").ok_or("no d4_3")?;
    let mut compat = 0;
    for pair in polys.chunks(2) {
        let x = DrinfeldPolynomial::from_orbit_reps(&d, &[(1, pair[0].clone())]);
        let y = DrinfeldPolynomial::from_orbit_reps(&d, &[(1, pair[1].clone())]);
        ensure(is_sigma_compatible(&x, &d) && is_sigma_compatible(&x.tensor(&y), &d), "sigma-compatibility lost")?;
        if pair[0].degree() > 0 {
            let broken = x.clone().with(d.sigma(1), pair[0].clone());
            ensure(!is_sigma_compatible(&broken, &d), format!("unshifted copy of {} accepted", pair[0]))?;
        }
        compat += 1;
    }
    Ok(format!("{} polynomials x {} laws, {compat} sigma-compatible products", polys.len(), laws.len()))
}

fn classification_witness() -> Outcome {
    let v = va();
    let tw = tensor_highest_weight(&v, &v, 6).map_err(|e| e.to_string())?;
    let w = WeightSeries { k: tw.k, psi_plus: tw.psi_plus, psi_minus: None };
    let ex = poly_from_psi(&w, linked()).map_err(|e| e.to_string())?;
    let pa = UPoly::linear(&Fe::named("a"));
    ensure(ex.poly == pa.mul(&pa), format!("V_a (x) V_a gives {}", ex.poly))?;
    Ok(format!("substituted: existence for all P is not checkable; witness V_a (x) V_a has P(u) = {}", ex.poly))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("loop relations in V_a", relation_suite),
        ("Chevalley relations via the isomorphism", chevalley_suite),
        ("Psi/H consistency", psi_consistency_suite),
        ("Drinfeld polynomial of V_a", va_extraction),
        ("tensor product law", tensor_law),
        ("coproduct congruences", coproduct_congruences),
        ("divided-power identities", divided_power_suite),
        ("diagram data", diagram_data),
        ("round trip and sigma-compatibility", round_trip),
        ("classification witness", classification_witness),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", n + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
