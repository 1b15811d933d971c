//! Relation generators, one function per presentation.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::{relation_id, Algebra, Builder, GenKind, GenSymbol, PresentationError, RelationInstance};
use crate::arith::{qbinom, qint, Fe, Var};
use crate::diagram::{BiPoly, NodeClass, TwistedDiagram};

/// Cubic families grow like `window^3 * 18` words; this keeps runs short.
pub const DEFAULT_CUBIC_WINDOW: i64 = 2;

fn degrees(window: i64) -> std::ops::RangeInclusive<i64> {
    -window..=window
}

fn nonzero(window: i64) -> impl Iterator<Item = i64> + Clone {
    degrees(window).filter(|&k| k != 0)
}

fn sym(kind: GenKind, node: u32, degree: i64) -> GenSymbol {
    GenSymbol::new(kind, node, degree)
}

/// `q^r` for a rational `r` with denominator dividing 2.
fn q_rational(r: &BigRational) -> Result<Fe, PresentationError> {
    let twice = r * BigRational::from_integer(BigInt::from(2));
    if !twice.is_integer() {
        return Err(PresentationError::Exponent(r.to_string()));
    }
    let half = twice.to_integer().to_i64().ok_or_else(|| PresentationError::Exponent(r.to_string()))?;
    Ok(Fe::var_half_pow(Var::Q, half))
}

fn torus_family(prefix: &str, alg: &Algebra, node: u32, window: i64, q_conj: &Fe, out: &mut Vec<RelationInstance>) {
    let k = sym(GenKind::K, node, 0);
    let ki = sym(GenKind::KInv, node, 0);
    let mut b = Builder::new();
    b.push(Fe::one(), vec![k, ki]);
    b.push(-Fe::one(), vec![]);
    out.push(b.finish(format!("{prefix}.KKinv"), alg));
    let mut b = Builder::new();
    b.push(Fe::one(), vec![ki, k]);
    b.push(-Fe::one(), vec![]);
    out.push(b.finish(format!("{prefix}.KinvK"), alg));
    for l in nonzero(window) {
        let h = GenSymbol::h(node, l);
        let mut b = Builder::new();
        b.push(Fe::one(), vec![k, h]);
        b.push(-Fe::one(), vec![h, k]);
        out.push(b.finish(relation_id(&format!("{prefix}.KH"), &[("k", l)]), alg));
    }
    for (a, c) in nonzero(window).tuple_combinations() {
        let (ha, hc) = (GenSymbol::h(node, a), GenSymbol::h(node, c));
        let mut b = Builder::new();
        b.push(Fe::one(), vec![ha, hc]);
        b.push(-Fe::one(), vec![hc, ha]);
        out.push(b.finish(relation_id(&format!("{prefix}.HH"), &[("k", a), ("l", c)]), alg));
    }
    for sign in [1, -1] {
        for l in degrees(window) {
            let x = GenSymbol::x(sign, node, l);
            let mut b = Builder::new();
            b.push(Fe::one(), vec![k, x, ki]);
            b.push(-q_conj.pow(sign), vec![x]);
            out.push(b.finish(relation_id(&format!("{prefix}.KX{}", sign_tag(sign)), &[("k", l)]), alg));
        }
    }
}

fn sign_tag(sign: i64) -> &'static str {
    if sign > 0 {
        "+"
    } else {
        "-"
    }
}

fn xpxm_family(prefix: &str, alg: &Algebra, node: u32, window: i64, denom: &Fe, out: &mut Vec<RelationInstance>) {
    let inv = denom.inv();
    for k in degrees(window) {
        for l in degrees(window) {
            let mut b = Builder::new();
            b.push(Fe::one(), vec![GenSymbol::x(1, node, k), GenSymbol::x(-1, node, l)]);
            b.push(-Fe::one(), vec![GenSymbol::x(-1, node, l), GenSymbol::x(1, node, k)]);
            b.push(-&inv, vec![GenSymbol::psi(1, node, k + l)]);
            b.push(inv.clone(), vec![GenSymbol::psi(-1, node, k + l)]);
            out.push(b.finish(relation_id(&format!("{prefix}.XpXm"), &[("k", k), ("l", l)]), alg));
        }
    }
}

fn hx_family(
    prefix: &str,
    alg: &Algebra,
    node: u32,
    window: i64,
    coeff: impl Fn(i64) -> Fe,
    out: &mut Vec<RelationInstance>,
) {
    for sign in [1, -1] {
        for k in nonzero(window) {
            let c = coeff(k);
            for l in degrees(window) {
                let h = GenSymbol::h(node, k);
                let x = GenSymbol::x(sign, node, l);
                let mut b = Builder::new();
                b.push(Fe::one(), vec![h, x]);
                b.push(-Fe::one(), vec![x, h]);
                b.push(-(&c * &Fe::from_int(sign)), vec![GenSymbol::x(sign, node, k + l)]);
                out.push(b.finish(relation_id(&format!("{prefix}.HX{}", sign_tag(sign)), &[("k", k), ("l", l)]), alg));
            }
        }
    }
}

/// Every relation of the Chevalley presentation over the affine index set,
/// plus `c = 1` for the central element.
pub fn chevalley_relations(diag: &TwistedDiagram) -> Vec<RelationInstance> {
    let alg = Algebra::Chevalley(diag.name.clone());
    let n = diag.hat_size();
    let kc = |i: usize| sym(GenKind::KChev, i as u32, 0);
    let kci = |i: usize| sym(GenKind::KChevInv, i as u32, 0);
    let e = |s: i64, i: usize| sym(GenKind::e(s), i as u32, 0);
    let mut out = Vec::new();
    for i in 0..n {
        let mut b = Builder::new();
        b.push(Fe::one(), vec![kc(i), kci(i)]);
        b.push(-Fe::one(), vec![]);
        out.push(b.finish(relation_id("chev.KKinv", &[("i", i as i64)]), &alg));
        let mut b = Builder::new();
        b.push(Fe::one(), vec![kci(i), kc(i)]);
        b.push(-Fe::one(), vec![]);
        out.push(b.finish(relation_id("chev.KinvK", &[("i", i as i64)]), &alg));
    }
    for (i, j) in (0..n).tuple_combinations() {
        let mut b = Builder::new();
        b.push(Fe::one(), vec![kc(i), kc(j)]);
        b.push(-Fe::one(), vec![kc(j), kc(i)]);
        out.push(b.finish(relation_id("chev.KK", &[("i", i as i64), ("j", j as i64)]), &alg));
    }
    for sign in [1, -1] {
        for i in 0..n {
            let qi = diag.q_node(i);
            for j in 0..n {
                let mut b = Builder::new();
                b.push(Fe::one(), vec![kc(i), e(sign, j), kci(i)]);
                b.push(-qi.pow(sign * diag.cartan_sigma(i, j)), vec![e(sign, j)]);
                let fam = format!("chev.conj{}", sign_tag(sign));
                out.push(b.finish(relation_id(&fam, &[("i", i as i64), ("j", j as i64)]), &alg));
            }
        }
    }
    for i in 0..n {
        let qi = diag.q_node(i);
        for j in 0..n {
            let mut b = Builder::new();
            b.push(Fe::one(), vec![e(1, i), e(-1, j)]);
            b.push(-Fe::one(), vec![e(-1, j), e(1, i)]);
            if i == j {
                let c = (&qi - &qi.inv()).inv();
                b.push(-&c, vec![kc(i)]);
                b.push(c, vec![kci(i)]);
            }
            out.push(b.finish(relation_id("chev.comm", &[("i", i as i64), ("j", j as i64)]), &alg));
        }
    }
    for sign in [1, -1] {
        for i in 0..n {
            let qi = diag.q_node(i);
            for j in 0..n {
                if i == j {
                    continue;
                }
                let top = 1 - diag.cartan_sigma(i, j);
                let mut b = Builder::new();
                for r in 0..=top {
                    let c = &qbinom(top, r, &qi).expect("0 <= r <= top") * &Fe::from_int(if r % 2 == 0 { 1 } else { -1 });
                    let mut w = vec![e(sign, i); r as usize];
                    w.push(e(sign, j));
                    w.extend(std::iter::repeat_n(e(sign, i), (top - r) as usize));
                    b.push(c, w);
                }
                let fam = format!("chev.serre{}", sign_tag(sign));
                out.push(b.finish(relation_id(&fam, &[("i", i as i64), ("j", j as i64)]), &alg));
            }
        }
    }
    let mut b = Builder::new();
    let mut w = Vec::new();
    for (i, &ni) in diag.central_exponents().iter().enumerate() {
        w.extend(std::iter::repeat_n(kc(i), ni as usize));
    }
    b.push(Fe::one(), w);
    b.push(-Fe::one(), vec![]);
    out.push(b.finish("chev.central".to_string(), &alg));
    out
}

/// `U_{q^e}(L(sl2))` on node 1, degrees in `[-window, window]`.
pub fn sl2_relations(window: i64, e: i64) -> Vec<RelationInstance> {
    let alg = Algebra::Sl2(e);
    let prefix = if e == 1 { "sl2".to_string() } else { format!("sl2_q{e}") };
    let base = Fe::q_pow(e);
    let mut out = Vec::new();
    torus_family(&prefix, &alg, 1, window, &base.pow(2), &mut out);
    hx_family(&prefix, &alg, 1, window, |k| &qint(2 * k, &base) * &Fe::ratio(1, k), &mut out);
    for sign in [1, -1] {
        let q2 = base.pow(2 * sign);
        for k in degrees(window) {
            for l in degrees(window) {
                let x = |d: i64| GenSymbol::x(sign, 1, d);
                let mut b = Builder::new();
                b.push(Fe::one(), vec![x(k + 1), x(l)]);
                b.push(-&q2, vec![x(l), x(k + 1)]);
                b.push(-&q2, vec![x(k), x(l + 1)]);
                b.push(Fe::one(), vec![x(l + 1), x(k)]);
                let fam = format!("{prefix}.XX{}", sign_tag(sign));
                out.push(b.finish(relation_id(&fam, &[("k", k), ("l", l)]), &alg));
            }
        }
    }
    xpxm_family(&prefix, &alg, 1, window, &(&base - &base.inv()), &mut out);
    out
}

/// The explicit list for the τ-twisted loop algebra of `sl3` on node 1.
/// Cubic families use `cubic_window` (callers usually pass
/// `min(window, DEFAULT_CUBIC_WINDOW)`).
pub fn sl3tau_relations(window: i64, cubic_window: i64) -> Vec<RelationInstance> {
    let alg = Algebra::Sl3Tau;
    let p = "sl3tau";
    let q = Fe::q();
    let mut out = Vec::new();
    torus_family(p, &alg, 1, window, &Fe::q_pow(2), &mut out);
    xpxm_family(p, &alg, 1, window, &(&q - &q.inv()), &mut out);
    hx_family(
        p,
        &alg,
        1,
        window,
        |k| {
            let sign = if k % 2 == 0 { -1 } else { 1 };
            let bracket = &(&Fe::q_pow(2 * k) + &Fe::q_pow(-2 * k)) + &Fe::from_int(sign);
            &(&qint(2 * k, &q) * &Fe::ratio(1, k)) * &bracket
        },
        &mut out,
    );
    for sign in [1, -1] {
        let x = |d: i64| GenSymbol::x(sign, 1, d);
        let a = &Fe::q_pow(-2 * sign) - &Fe::q_pow(4 * sign);
        let q2 = Fe::q_pow(2 * sign);
        for k in degrees(window) {
            for l in degrees(window) {
                let mut b = Builder::new();
                b.push(Fe::one(), vec![x(k + 2), x(l)]);
                b.push(a.clone(), vec![x(k + 1), x(l + 1)]);
                b.push(-&q2, vec![x(k), x(l + 2)]);
                b.push(-&q2, vec![x(l), x(k + 2)]);
                b.push(a.clone(), vec![x(l + 1), x(k + 1)]);
                b.push(Fe::one(), vec![x(l + 2), x(k)]);
                let fam = format!("{p}.quad{}", sign_tag(sign));
                out.push(b.finish(relation_id(&fam, &[("k", k), ("l", l)]), &alg));
            }
        }
    }
    let q1 = &q + &q.inv();
    for sign in [1, -1] {
        for (fam, outer, shift) in [("cubicA", Fe::q_pow(3), -sign), ("cubicB", Fe::q_pow(-3), sign)] {
            for t in sorted_triples(cubic_window) {
                let mut b = Builder::new();
                cubic_sym(&mut b, sign, 1, t, shift, &outer, &q1);
                let id = relation_id(&format!("{p}.{fam}{}", sign_tag(sign)), &[("k", t.0), ("l", t.1), ("m", t.2)]);
                out.push(b.finish(id, &alg));
            }
        }
    }
    out
}

fn sorted_triples(window: i64) -> Vec<(i64, i64, i64)> {
    let mut v = Vec::new();
    for k in degrees(window) {
        for l in k..=window {
            for m in l..=window {
                v.push((k, l, m));
            }
        }
    }
    v
}

/// `Sym(c X_{A+s} X_B X_C - mid X_A X_{B+s} X_C + c^{-1} X_A X_B X_{C+s})`
/// over the permutations of the triple.
fn cubic_sym(b: &mut Builder, sign: i64, node: u32, t: (i64, i64, i64), shift: i64, outer: &Fe, mid: &Fe) {
    let x = |d: i64| GenSymbol::x(sign, node, d);
    let inner = outer.inv();
    for perm in [t.0, t.1, t.2].into_iter().permutations(3) {
        let (a, bb, c) = (perm[0], perm[1], perm[2]);
        b.push(outer.clone(), vec![x(a + shift), x(bb), x(c)]);
        b.push(-mid, vec![x(a), x(bb + shift), x(c)]);
        b.push(inner.clone(), vec![x(a), x(bb), x(c + shift)]);
    }
}

fn u1_u2_degrees(polys: &[&BiPoly]) -> (i64, i64) {
    let mut d = (0i64, 0i64);
    for p in polys {
        for &(a, b) in p.terms.keys() {
            d.0 = d.0.max(a as i64);
            d.1 = d.1.max(b as i64);
        }
    }
    d
}

/// All families of the loop presentation of `diag` over `[-window, window]`.
pub fn drinfeld_relations(diag: &TwistedDiagram, window: i64) -> Result<Vec<RelationInstance>, PresentationError> {
    let alg = Algebra::Drinfeld(diag.name.clone());
    let table = diag.case_table();
    let nodes = diag.nodes();
    let m = diag.m;
    let omega = diag.omega();
    let mut out = Vec::new();

    for &i in &nodes {
        let si = diag.sigma(i);
        for sign in [1, -1] {
            for k in degrees(window) {
                let mut b = Builder::new();
                b.push(Fe::one(), vec![GenSymbol::x(sign, si, k)]);
                b.push(-omega.pow(k), vec![GenSymbol::x(sign, i, k)]);
                let fam = format!("dr.sigmaX{}", sign_tag(sign));
                out.push(b.finish(relation_id(&fam, &[("i", i as i64), ("k", k)]), &alg));
            }
        }
        for k in nonzero(window) {
            let mut b = Builder::new();
            b.push(Fe::one(), vec![GenSymbol::h(si, k)]);
            b.push(-omega.pow(k), vec![GenSymbol::h(i, k)]);
            out.push(b.finish(relation_id("dr.sigmaH", &[("i", i as i64), ("k", k)]), &alg));
        }
        for (fam, kind) in [("dr.sigmaK", GenKind::K), ("dr.sigmaKinv", GenKind::KInv)] {
            let mut b = Builder::new();
            b.push(Fe::one(), vec![sym(kind, si, 0)]);
            b.push(-Fe::one(), vec![sym(kind, i, 0)]);
            out.push(b.finish(relation_id(fam, &[("i", i as i64)]), &alg));
        }
    }

    for &i in &nodes {
        let (k, ki) = (GenSymbol::k(i), GenSymbol::kinv(i));
        for (fam, w) in [("dr.KKinv", vec![k, ki]), ("dr.KinvK", vec![ki, k])] {
            let mut b = Builder::new();
            b.push(Fe::one(), w);
            b.push(-Fe::one(), vec![]);
            out.push(b.finish(relation_id(fam, &[("i", i as i64)]), &alg));
        }
    }
    for (&i, &j) in nodes.iter().tuple_combinations() {
        let mut b = Builder::new();
        b.push(Fe::one(), vec![GenSymbol::k(i), GenSymbol::k(j)]);
        b.push(-Fe::one(), vec![GenSymbol::k(j), GenSymbol::k(i)]);
        out.push(b.finish(relation_id("dr.KK", &[("i", i as i64), ("j", j as i64)]), &alg));
    }
    let hs: Vec<(u32, i64)> = nodes.iter().flat_map(|&i| nonzero(window).map(move |k| (i, k))).collect();
    for (&(i, k), &(j, l)) in hs.iter().tuple_combinations() {
        let mut b = Builder::new();
        b.push(Fe::one(), vec![GenSymbol::h(i, k), GenSymbol::h(j, l)]);
        b.push(-Fe::one(), vec![GenSymbol::h(j, l), GenSymbol::h(i, k)]);
        out.push(b.finish(relation_id("dr.HH", &[("i", i as i64), ("k", k), ("j", j as i64), ("l", l)]), &alg));
    }
    for &i in &nodes {
        for &(j, l) in &hs {
            let mut b = Builder::new();
            b.push(Fe::one(), vec![GenSymbol::k(i), GenSymbol::h(j, l)]);
            b.push(-Fe::one(), vec![GenSymbol::h(j, l), GenSymbol::k(i)]);
            out.push(b.finish(relation_id("dr.KH", &[("i", i as i64), ("j", j as i64), ("l", l)]), &alg));
        }
    }

    for sign in [1, -1] {
        for &i in &nodes {
            let pi = table.get(i, i).p;
            for &j in &nodes {
                let pj = table.get(j, j).p;
                let s: i64 = (0..m).map(|r| diag.a(i, diag.sigma_pow(j, r))).sum();
                let e = BigRational::new(BigInt::from(m * s * sign), BigInt::from(pi * pj));
                let c = q_rational(&e)?;
                for k in degrees(window) {
                    let x = GenSymbol::x(sign, j, k);
                    let mut b = Builder::new();
                    b.push(Fe::one(), vec![GenSymbol::k(i), x, GenSymbol::kinv(i)]);
                    b.push(-&c, vec![x]);
                    let fam = format!("dr.KX{}", sign_tag(sign));
                    out.push(b.finish(relation_id(&fam, &[("i", i as i64), ("j", j as i64), ("k", k)]), &alg));
                }
            }
        }
    }

    for sign in [1, -1] {
        for &i in &nodes {
            let di = diag.d(diag.orbit_of(i));
            let denom = (&Fe::q_pow(di) - &Fe::q_pow(-di)).inv();
            for &j in &nodes {
                for k in nonzero(window) {
                    let mut c = Fe::zero();
                    for r in 0..m {
                        let a = diag.a(i, diag.sigma_pow(j, r));
                        let bracket = &(&Fe::q_pow(k * a) - &Fe::q_pow(-k * a)) * &denom;
                        c += &(&bracket * &omega.pow(k * r));
                    }
                    let c = &c * &Fe::ratio(sign, k);
                    for l in degrees(window) {
                        let (h, x) = (GenSymbol::h(i, k), GenSymbol::x(sign, j, l));
                        let mut b = Builder::new();
                        b.push(Fe::one(), vec![h, x]);
                        b.push(-Fe::one(), vec![x, h]);
                        b.push(-&c, vec![GenSymbol::x(sign, j, k + l)]);
                        let fam = format!("dr.HX{}", sign_tag(sign));
                        let id = relation_id(&fam, &[("i", i as i64), ("k", k), ("j", j as i64), ("l", l)]);
                        out.push(b.finish(id, &alg));
                    }
                }
            }
        }
    }

    for &i in &nodes {
        let di = diag.d(diag.orbit_of(i));
        let inv = (&Fe::q_pow(di) - &Fe::q_pow(-di)).inv();
        for &j in &nodes {
            let hits: Vec<i64> = (0..m).filter(|&r| diag.sigma_pow(i, r) == j).collect();
            for k in degrees(window) {
                for l in degrees(window) {
                    let mut b = Builder::new();
                    b.push(Fe::one(), vec![GenSymbol::x(1, i, k), GenSymbol::x(-1, j, l)]);
                    b.push(-Fe::one(), vec![GenSymbol::x(-1, j, l), GenSymbol::x(1, i, k)]);
                    let mut c = Fe::zero();
                    for &r in &hits {
                        c += &omega.pow(r * l);
                    }
                    let c = &c * &inv;
                    b.push(-&c, vec![GenSymbol::psi(1, i, k + l)]);
                    b.push(c, vec![GenSymbol::psi(-1, i, k + l)]);
                    let id = relation_id("dr.XpXm", &[("i", i as i64), ("k", k), ("j", j as i64), ("l", l)]);
                    out.push(b.finish(id, &alg));
                }
            }
        }
    }

    for sign in [1, -1] {
        for &i in &nodes {
            for &j in &nodes {
                let entry = table.get(i, j);
                let (f, g) = (entry.f_poly(sign), entry.g_poly(sign));
                let (d1, d2) = u1_u2_degrees(&[f, g]);
                let fam = format!("dr.FG{}", sign_tag(sign));
                if window - d1 < -window || window - d2 < -window {
                    return Err(PresentationError::WindowTooSmall { family: fam, window, needed: d1.max(d2) + 1 });
                }
                for kk in -window..=window - d1 {
                    for ll in -window..=window - d2 {
                        let mut b = Builder::new();
                        for (&(a, c), coef) in &f.terms {
                            b.push(coef.clone(), vec![GenSymbol::x(sign, i, kk + a as i64), GenSymbol::x(sign, j, ll + c as i64)]);
                        }
                        for (&(a, c), coef) in &g.terms {
                            b.push(-coef, vec![GenSymbol::x(sign, j, ll + c as i64), GenSymbol::x(sign, i, kk + a as i64)]);
                        }
                        let id = relation_id(&fam, &[("i", i as i64), ("j", j as i64), ("k", kk), ("l", ll)]);
                        out.push(b.finish(id, &alg));
                    }
                }
            }
        }
    }

    for sign in [1, -1] {
        for &i in &nodes {
            for &j in &nodes {
                if diag.a(i, j) != -1 || diag.sigma(i) == j {
                    continue;
                }
                let entry = table.get(i, j);
                let p = entry.p_poly(sign);
                let (d1, d2) = u1_u2_degrees(&[p]);
                let span = d1.max(d2);
                let fam = format!("dr.SymP{}", sign_tag(sign));
                if window - span < -window {
                    return Err(PresentationError::WindowTooSmall { family: fam, window, needed: span + 1 });
                }
                let e = &entry.d * BigRational::from_integer(BigInt::from(2 * m));
                let c = &q_rational(&e)? + &q_rational(&-e)?;
                for k1 in -window..=window - span {
                    for k2 in k1..=window - span {
                        for l in degrees(window) {
                            let mut b = Builder::new();
                            let xj = GenSymbol::x(sign, j, l);
                            for (&(a, bb), coef) in &p.terms {
                                let (a, bb) = (a as i64, bb as i64);
                                // P(u1,u2)E(u1,u2) and P(u2,u1)E(u2,u1)
                                let direct = (GenSymbol::x(sign, i, k1 + a), GenSymbol::x(sign, i, k2 + bb));
                                let swapped = (GenSymbol::x(sign, i, k2 + a), GenSymbol::x(sign, i, k1 + bb));
                                for (x1, x2) in [direct, swapped] {
                                    b.push(coef.clone(), vec![xj, x1, x2]);
                                    b.push(-(coef * &c), vec![x1, xj, x2]);
                                    b.push(coef.clone(), vec![x1, x2, xj]);
                                }
                            }
                            let id = relation_id(&fam, &[("i", i as i64), ("j", j as i64), ("k1", k1), ("k2", k2), ("l", l)]);
                            out.push(b.finish(id, &alg));
                        }
                    }
                }
            }
        }
    }

    let cubic = window.min(DEFAULT_CUBIC_WINDOW);
    let half = |h: i64| Fe::var_half_pow(Var::Q, h);
    let mid = &half(1) + &half(-1);
    for &i in &nodes {
        if diag.node_class(i) != NodeClass::SplitLinked {
            continue;
        }
        for sign in [1, -1] {
            // (2±): q^{3/2} with u^{∓1}; (3±): q^{-3/2} with u^{±1}
            for (fam, outer, shift) in [("dr.rel2", half(3), -sign), ("dr.rel3", half(-3), sign)] {
                for t in sorted_triples(cubic) {
                    let mut b = Builder::new();
                    cubic_sym(&mut b, sign, i, t, shift, &outer, &mid);
                    let id = relation_id(&format!("{fam}{}", sign_tag(sign)), &[("i", i as i64), ("k", t.0), ("l", t.1), ("m", t.2)]);
                    out.push(b.finish(id, &alg));
                }
            }
        }
    }
    Ok(out)
}
