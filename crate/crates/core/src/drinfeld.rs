//! Drinfeld polynomials and highest-weight series: the three series laws,
//! their inversion through the 𝒫-recursion, σ-compatibility and the tensor
//! product law.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::arith::{ArithError, Fe, TruncatedSeries, Var};
use crate::diagram::{NodeClass, TwistedDiagram};
use crate::report::CheckRecord;

/// Extra coefficients that must vanish beyond the degree read off κ.
pub const DEGREE_GUARD: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DrinfeldError {
    #[error("polynomial must have constant coefficient 1 (got {0})")]
    ConstantTerm(String),
    #[error("K-eigenvalue {0} is not a non-negative integer power of {1}")]
    NotTypeOne(String, String),
    #[error("psi+_{0} should vanish: degree not a multiple of m")]
    Support(usize),
    #[error("series of order {have} is too short: need order {need}")]
    TooShort { have: usize, need: usize },
    #[error("recursion does not terminate: p_{0} is nonzero beyond the degree read off K")]
    NonTerminating(usize),
    #[error("degree {found} from the recursion differs from {expected} read off K")]
    Degree { expected: usize, found: usize },
    #[error("expansion at infinity disagrees at u^-{0}")]
    Infinity(usize),
    #[error("psi+ is not of the form K P(b^-2 u)/P(u): mismatch at order {0}")]
    NotRational(usize),
    #[error("bad polynomial data: {0}")]
    Format(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A polynomial in `u` with constant coefficient one. Trailing zero
/// coefficients are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly {
    coeffs: Vec<Fe>,
}

impl UPoly {
    pub fn one() -> UPoly {
        UPoly { coeffs: vec![Fe::one()] }
    }

    pub fn new(mut coeffs: Vec<Fe>) -> Result<UPoly, DrinfeldError> {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        match coeffs.first() {
            Some(c) if c.is_one() => Ok(UPoly { coeffs }),
            Some(c) => Err(DrinfeldError::ConstantTerm(c.to_string())),
            None => Err(DrinfeldError::ConstantTerm("nothing".into())),
        }
    }

    /// `1 − a u`.
    pub fn linear(a: &Fe) -> UPoly {
        UPoly::new(vec![Fe::one(), -a]).expect("constant term 1")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        let mut out = vec![Fe::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::new(out).expect("constant term 1")
    }

    /// `P(c u)`.
    pub fn scale_arg(&self, c: &Fe) -> UPoly {
        let coeffs = self.coeffs.iter().enumerate().map(|(j, x)| x * &c.pow(j as i64)).collect();
        UPoly::new(coeffs).expect("constant term 1")
    }

    fn series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::new(Var::U, order, self.coeffs.iter().take(order + 1).cloned().collect())
    }

    /// Coefficients of `u^{-d} P(u)` as a polynomial in `u^{-1}`.
    fn reversed_series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::new(Var::U, order, self.coeffs.iter().rev().take(order + 1).cloned().collect())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1")?;
        for (j, c) in self.coeffs.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let u = if j == 1 { "u".to_string() } else { format!("u^{j}") };
            let neg = -c;
            let (sign, body) = if neg.term_count() == 2 && neg.to_string().find(['+', ' ']).is_none() && c.to_string().starts_with('-') {
                ("-", neg.to_string())
            } else {
                ("+", c.to_string())
            };
            let body = if body == "1" {
                u
            } else if body.contains(' ') {
                format!("({body})*{u}")
            } else {
                format!("{body}*{u}")
            };
            write!(f, " {sign} {body}")?;
        }
        Ok(())
    }
}

/// The series law of one node: `ψ(u) = b^{deg P} P(b^{-2} u^s) / P(u^s)`
/// with `b = q^m, s = 1` (linked), `b = q, s = 1` (orthogonal) or
/// `b = q^m, s = m` (fixed).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesLaw {
    pub class: NodeClass,
    pub m: i64,
}

impl SeriesLaw {
    pub fn new(class: NodeClass, m: i64) -> SeriesLaw {
        SeriesLaw { class, m }
    }

    pub fn for_node(diag: &TwistedDiagram, i: u32) -> SeriesLaw {
        SeriesLaw::new(diag.node_class(i), diag.m)
    }

    /// Exponent `e` with `b = q^e`.
    pub fn base_exponent(&self) -> i64 {
        match self.class {
            NodeClass::SplitOrthogonal => 1,
            NodeClass::SplitLinked | NodeClass::Fixed => self.m,
        }
    }

    pub fn base(&self) -> Fe {
        Fe::q_pow(self.base_exponent())
    }

    /// Power of `u` the polynomial is evaluated at.
    pub fn stride(&self) -> usize {
        match self.class {
            NodeClass::Fixed => self.m as usize,
            _ => 1,
        }
    }
}

/// ψ^± eigenvalues of one node. `psi_minus` holds `ψ^-_{-n}` at `u^n`; it
/// is absent when only ψ^+ could be computed.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSeries {
    pub k: Fe,
    pub psi_plus: TruncatedSeries,
    pub psi_minus: Option<TruncatedSeries>,
}

/// Expansions of `b^d P(b^{-2}u^s)/P(u^s)` about 0 and about ∞, through `order`.
pub fn psi_from_poly(p: &UPoly, law: SeriesLaw, order: usize) -> WeightSeries {
    let b = law.base();
    let s = law.stride();
    let d = p.degree() as i64;
    let bd = b.pow(d);
    let inner = order / s;
    let binv2 = b.pow(-2);
    let plus = p
        .scale_arg(&binv2)
        .series(inner)
        .mul(&p.series(inner).inv().expect("constant term 1"))
        .scale(&bd);
    let minus = p
        .scale_arg(&binv2)
        .reversed_series(inner)
        .mul(&p.reversed_series(inner).inv().expect("leading coefficient nonzero"))
        .scale(&bd);
    let spread = |t: TruncatedSeries| {
        let mut c = vec![Fe::zero(); order + 1];
        for (n, x) in t.coeffs().iter().enumerate() {
            c[n * s] = x.clone();
        }
        TruncatedSeries::new(Var::U, order, c)
    };
    let (plus, minus) = (spread(plus), spread(minus));
    WeightSeries { k: bd, psi_plus: plus, psi_minus: Some(minus) }
}

/// Result of inverting a weight series.
#[derive(Clone, Debug, PartialEq)]
pub struct Extraction {
    pub poly: UPoly,
    /// Every `p_r` the recursion produced, `r = 0..=` available order.
    pub p: Vec<Fe>,
}

/// Recovers `P` by `p_r = −(1 − b^{−2r})^{−1} Σ_{j<r} ψ_{j+1} p_{r−j−1} κ^{−1}`,
/// with the degree read off `κ = b^{deg}` and cross-checked on ψ^-.
pub fn poly_from_psi(w: &WeightSeries, law: SeriesLaw) -> Result<Extraction, DrinfeldError> {
    let e = law.base_exponent();
    let s = law.stride();
    let kappa = &w.k;
    let half = kappa
        .as_monomial_in(Var::Q)
        .filter(|(c, h)| c.is_one() && *h >= 0 && h % (2 * e) == 0)
        .map(|(_, h)| h)
        .ok_or_else(|| DrinfeldError::NotTypeOne(kappa.to_string(), law.base().to_string()))?;
    let deg = (half / (2 * e)) as usize;
    if w.psi_plus.coeff(0) != kappa {
        return Err(DrinfeldError::NotRational(0));
    }
    for n in 0..=w.psi_plus.order() {
        if n % s != 0 && !w.psi_plus.coeff(n).is_zero() {
            return Err(DrinfeldError::Support(n));
        }
    }
    let avail = w.psi_plus.order() / s;
    if avail < deg + DEGREE_GUARD {
        return Err(DrinfeldError::TooShort { have: w.psi_plus.order(), need: (deg + DEGREE_GUARD) * s });
    }
    let psi: Vec<Fe> = (0..=avail).map(|n| w.psi_plus.coeff(n * s).clone()).collect();
    let b = law.base();
    let kinv = kappa.inv();
    let mut p = vec![Fe::one()];
    for r in 1..=avail {
        let mut acc = Fe::zero();
        for j in 0..r {
            acc += &(&psi[j + 1] * &p[r - j - 1]);
        }
        let c = -(&Fe::one() - &b.pow(-2 * r as i64)).inv();
        p.push(&(&c * &acc) * &kinv);
    }
    if let Some(r) = (deg + 1..=avail).find(|&r| !p[r].is_zero()) {
        return Err(DrinfeldError::NonTerminating(r));
    }
    let found = (0..=deg).rev().find(|&r| !p[r].is_zero()).unwrap_or(0);
    if found != deg {
        return Err(DrinfeldError::Degree { expected: deg, found });
    }
    let poly = UPoly::new(p[..=deg].to_vec())?;
    let check = psi_from_poly(&poly, law, w.psi_plus.order());
    if let Some(n) = (0..=w.psi_plus.order()).find(|&n| check.psi_plus.coeff(n) != w.psi_plus.coeff(n)) {
        return Err(DrinfeldError::NotRational(n));
    }
    if let Some(minus) = &w.psi_minus {
        let want = check.psi_minus.expect("computed");
        let top = minus.order().min(want.order());
        if let Some(n) = (0..=top).find(|&n| want.coeff(n) != minus.coeff(n)) {
            return Err(DrinfeldError::Infinity(n));
        }
    }
    Ok(Extraction { poly, p })
}

/// One polynomial per node.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct DrinfeldPolynomial {
    pub nodes: BTreeMap<u32, UPoly>,
}

impl DrinfeldPolynomial {
    pub fn new() -> DrinfeldPolynomial {
        DrinfeldPolynomial::default()
    }

    pub fn with(mut self, i: u32, p: UPoly) -> DrinfeldPolynomial {
        self.nodes.insert(i, p);
        self
    }

    /// The unit tuple on every node of `diag`.
    pub fn unit(diag: &TwistedDiagram) -> DrinfeldPolynomial {
        DrinfeldPolynomial { nodes: diag.nodes().into_iter().map(|i| (i, UPoly::one())).collect() }
    }

    /// The σ-compatible tuple determined by `P_i` on one node per orbit:
    /// `P_{σ^r(i)}(u) = P_i(ω^r u)`.
    pub fn from_orbit_reps(diag: &TwistedDiagram, reps: &[(u32, UPoly)]) -> DrinfeldPolynomial {
        let omega = diag.omega();
        let mut nodes = BTreeMap::new();
        for (i, p) in reps {
            for r in 0..diag.m {
                nodes.entry(diag.sigma_pow(*i, r)).or_insert_with(|| p.scale_arg(&omega.pow(r)));
            }
        }
        DrinfeldPolynomial { nodes }
    }

    pub fn get(&self, i: u32) -> Option<&UPoly> {
        self.nodes.get(&i)
    }

    /// Nodewise product. Nodes present on one side only keep their polynomial.
    pub fn tensor(&self, other: &DrinfeldPolynomial) -> DrinfeldPolynomial {
        let mut nodes = self.nodes.clone();
        for (i, p) in &other.nodes {
            let merged = nodes.get(i).map_or_else(|| p.clone(), |x| x.mul(p));
            nodes.insert(*i, merged);
        }
        DrinfeldPolynomial { nodes }
    }

    /// `{"1": ["1", "-a"], ...}`: constant term first.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (i, p) in &self.nodes {
            m.insert(i.to_string(), Value::Array(p.coeffs.iter().map(|c| Value::String(c.to_string())).collect()));
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<DrinfeldPolynomial, DrinfeldError> {
        let obj = v.as_object().ok_or_else(|| DrinfeldError::Format("expected an object keyed by node".into()))?;
        let mut nodes = BTreeMap::new();
        for (k, arr) in obj {
            let i: u32 = k.parse().map_err(|_| DrinfeldError::Format(format!("bad node label {k:?}")))?;
            let arr = arr.as_array().ok_or_else(|| DrinfeldError::Format(format!("node {k}: expected a list")))?;
            let mut coeffs = Vec::new();
            for c in arr {
                let s = c.as_str().ok_or_else(|| DrinfeldError::Format(format!("node {k}: coefficients are strings")))?;
                coeffs.push(s.parse::<Fe>()?);
            }
            nodes.insert(i, UPoly::new(coeffs)?);
        }
        Ok(DrinfeldPolynomial { nodes })
    }
}

impl fmt::Display for DrinfeldPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nodes.iter().map(|(i, p)| format!("P_{i}(u) = {p}")).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// `P_{σ(i)}(u) = P_i(ω u)` for every node; missing nodes count as `1`.
pub fn check_sigma_compat(p: &DrinfeldPolynomial, diag: &TwistedDiagram) -> Vec<CheckRecord> {
    let omega = diag.omega();
    let one = UPoly::one();
    let mut out = Vec::new();
    for i in diag.nodes() {
        let pi = p.get(i).unwrap_or(&one);
        let ps = p.get(diag.sigma(i)).unwrap_or(&one);
        let want = pi.scale_arg(&omega);
        let ok = *ps == want;
        let res = if ok { String::new() } else { format!("P_{}(u) = {ps}, P_{i}(omega u) = {want}", diag.sigma(i)) };
        out.push(CheckRecord::new(format!("sigma.compat[i={i}]"), "sigma-compat", ok, res));
    }
    out
}

pub fn is_sigma_compatible(p: &DrinfeldPolynomial, diag: &TwistedDiagram) -> bool {
    check_sigma_compat(p, diag).iter().all(|r| r.pass)
}

/// Cross-multiplied form of the series law at 0:
/// `ψ^+(u) P(u^s) − b^d P(b^{-2} u^s) = 0` through the series order.
pub fn series_law_residual(w: &WeightSeries, p: &UPoly, law: SeriesLaw) -> bool {
    let order = w.psi_plus.order();
    let s = law.stride();
    let spread = |x: &UPoly| {
        let mut c = vec![Fe::zero(); order + 1];
        for (j, v) in x.coeffs().iter().enumerate() {
            if j * s <= order {
                c[j * s] = v.clone();
            }
        }
        TruncatedSeries::new(Var::U, order, c)
    };
    let b = law.base();
    let lhs = w.psi_plus.mul(&spread(p));
    let rhs = spread(&p.scale_arg(&b.pow(-2))).scale(&b.pow(p.degree() as i64));
    lhs.sub(&rhs).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linked() -> SeriesLaw {
        SeriesLaw::new(NodeClass::SplitLinked, 2)
    }

    #[test]
    fn linear_linked_series() {
        let a = Fe::named("a");
        let w = psi_from_poly(&UPoly::linear(&a), linked(), 5);
        assert_eq!(w.k, Fe::q_pow(2));
        for k in 1..=5 {
            assert_eq!(*w.psi_plus.coeff(k), &(&Fe::q_pow(2) - &Fe::q_pow(-2)) * &a.pow(k as i64));
        }
        let minus = w.psi_minus.as_ref().unwrap();
        assert_eq!(*minus.coeff(0), Fe::q_pow(-2));
        assert_eq!(*minus.coeff(1), -(&(&Fe::q_pow(2) - &Fe::q_pow(-2)) * &a.inv()));
        let back = poly_from_psi(&w, linked()).unwrap();
        assert_eq!(back.poly, UPoly::linear(&a));
        assert!(series_law_residual(&w, &back.poly, linked()));
    }

    #[test]
    fn constant_poly() {
        let w = psi_from_poly(&UPoly::one(), SeriesLaw::new(NodeClass::Fixed, 3), 6);
        assert!(w.psi_plus.coeffs().iter().enumerate().all(|(n, c)| if n == 0 { c.is_one() } else { c.is_zero() }));
        assert!(w.psi_minus.unwrap().coeffs()[0].is_one());
    }

    #[test]
    fn fixed_support() {
        let a = Fe::named("a");
        let law = SeriesLaw::new(NodeClass::Fixed, 3);
        let w = psi_from_poly(&UPoly::linear(&a), law, 15);
        for n in 0..=15 {
            assert_eq!(w.psi_plus.coeff(n).is_zero(), n % 3 != 0, "n={n}");
        }
        assert_eq!(poly_from_psi(&w, law).unwrap().poly, UPoly::linear(&a));
    }

    #[test]
    fn display() {
        assert_eq!(UPoly::linear(&Fe::named("a")).to_string(), "1 - a*u");
        let p = UPoly::linear(&Fe::named("a")).mul(&UPoly::linear(&Fe::named("b")));
        assert_eq!(p.to_string(), "1 + (-a - b)*u + a*b*u^2");
    }

    #[test]
    fn sigma_compat() {
        let d = TwistedDiagram::bundled("a2_2").unwrap();
        let a = Fe::named("a");
        let good = DrinfeldPolynomial::from_orbit_reps(&d, &[(1, UPoly::linear(&a))]);
        assert_eq!(good.get(2).unwrap().coeffs()[1], a);
        assert!(is_sigma_compatible(&good, &d));
        assert!(is_sigma_compatible(&DrinfeldPolynomial::unit(&d), &d));
        let bad = DrinfeldPolynomial::new().with(1, UPoly::linear(&a)).with(2, UPoly::linear(&a));
        assert!(!is_sigma_compatible(&bad, &d));
    }

    #[test]
    fn json_round_trip() {
        let d = TwistedDiagram::bundled("a2_2").unwrap();
        let p = DrinfeldPolynomial::from_orbit_reps(&d, &[(1, UPoly::linear(&Fe::named("a")))]);
        assert_eq!(DrinfeldPolynomial::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn wrong_kappa() {
        let mut w = psi_from_poly(&UPoly::linear(&Fe::named("a")), linked(), 6);
        w.k = Fe::q_pow(3);
        assert!(matches!(poly_from_psi(&w, linked()), Err(DrinfeldError::NotTypeOne(..))));
    }
}
