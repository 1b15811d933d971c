//! Sparse multivariate Laurent polynomials over ℚ.
//!
//! Exponents are stored in half units so that `q^(1/2)` is representable; every
//! algorithm below works on the stored integers, i.e. in ℚ[x^(1/2), x^(-1/2), …],
//! which contains the integral-exponent ring. The indeterminate `omega` is reduced
//! modulo ω² + ω + 1 after every product.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::var::Var;

pub type Coef = BigRational;

/// A monomial: sorted `(variable, half-unit exponent)` pairs with nonzero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(SmallVec<[(Var, i32); 4]>);

impl Mono {
    pub fn one() -> Mono {
        Mono(SmallVec::new())
    }

    /// `var^(half/2)`.
    pub fn from_half(var: Var, half: i32) -> Mono {
        let mut m = Mono::one();
        if half != 0 {
            m.0.push((var, half));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn half_exponent(&self, var: Var) -> i32 {
        self.0.iter().find(|(v, _)| *v == var).map_or(0, |(_, e)| *e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Var, i32)> {
        self.0.iter()
    }

    fn combine(&self, other: &Mono, sign: i32) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[(Var, i32); 4]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let pick = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match pick {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, sign * b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + sign * b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Mono(out)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        self.combine(other, 1)
    }

    pub fn div(&self, other: &Mono) -> Mono {
        self.combine(other, -1)
    }

    pub fn inverse(&self) -> Mono {
        Mono(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&(_, e)| e > 0)
    }

    /// Componentwise minimum (missing exponents count as zero).
    pub fn gcd_lattice(&self, other: &Mono) -> Mono {
        let mut out: SmallVec<[(Var, i32); 4]> = SmallVec::new();
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let pick = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match pick {
                Ordering::Less => {
                    if a[i].1 < 0 {
                        out.push(a[i]);
                    }
                    i += 1;
                }
                Ordering::Greater => {
                    if b[j].1 < 0 {
                        out.push(b[j]);
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1.min(b[j].1);
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Mono(out)
    }

    fn without(&self, var: Var) -> Mono {
        Mono(self.0.iter().copied().filter(|(v, _)| *v != var).collect())
    }
}

/// Lexicographic order, smaller variable names more significant.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", MonoDisplay(self))
    }
}

pub(crate) fn fmt_half_exponent(half: i32) -> String {
    if half % 2 == 0 {
        format!("{}", half / 2)
    } else {
        format!("({half}/2)")
    }
}

struct MonoDisplay<'a>(&'a Mono);

impl fmt::Display for MonoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &(v, e) in self.0 .0.iter() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 2 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{}", fmt_half_exponent(e))?;
            }
        }
        Ok(())
    }
}

/// A Laurent polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LPoly {
    terms: BTreeMap<Mono, Coef>,
}

impl LPoly {
    pub fn zero() -> LPoly {
        LPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> LPoly {
        LPoly::constant(Coef::one())
    }

    pub fn constant(c: Coef) -> LPoly {
        LPoly::term(Mono::one(), c)
    }

    pub fn from_int(n: i64) -> LPoly {
        LPoly::constant(Coef::from_integer(BigInt::from(n)))
    }

    pub fn term(m: Mono, c: Coef) -> LPoly {
        let mut p = LPoly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p.reduce_omega()
    }

    pub fn var(v: Var) -> LPoly {
        LPoly::term(Mono::from_half(v, 2), Coef::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Coef)> {
        self.terms.iter()
    }

    pub fn constant_value(&self) -> Option<Coef> {
        if self.is_zero() {
            return Some(Coef::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Mono, &Coef)> {
        self.terms.iter().next_back()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.half_exponent(v) != 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| *v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn scale(&self, c: &Coef) -> LPoly {
        if c.is_zero() {
            return LPoly::zero();
        }
        LPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by a monomial (no omega reduction needed unless `m` carries omega).
    pub fn shift(&self, m: &Mono) -> LPoly {
        let p = LPoly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        };
        if m.half_exponent(Var::OMEGA) != 0 {
            p.reduce_omega()
        } else {
            p
        }
    }

    /// Componentwise minimum exponent over all terms (absent variables count as 0).
    pub fn min_mono(&self) -> Mono {
        let vars = self.vars();
        let mut out: SmallVec<[(Var, i32); 4]> = SmallVec::new();
        for v in vars {
            let e = self.terms.keys().map(|m| m.half_exponent(v)).min().unwrap_or(0);
            if e != 0 {
                out.push((v, e));
            }
        }
        Mono(out)
    }

    /// Returns `(p', m)` with `self = m · p'` and `p'` a polynomial with no monomial factor.
    pub fn split_monomial(&self) -> (LPoly, Mono) {
        let m = self.min_mono();
        if m.is_one() {
            return (self.clone(), m);
        }
        (self.shift(&m.inverse()), m)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.is_nonnegative())
    }

    fn add_term(&mut self, m: Mono, c: Coef) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn reduce_omega(self) -> LPoly {
        if !self.terms.keys().any(|m| m.half_exponent(Var::OMEGA) != 0) {
            return self;
        }
        let mut out = LPoly::zero();
        for (m, c) in self.terms {
            let e = m.half_exponent(Var::OMEGA) / 2;
            let rest = m.without(Var::OMEGA);
            match e.rem_euclid(3) {
                0 => out.add_term(rest, c),
                1 => out.add_term(rest.mul(&Mono::from_half(Var::OMEGA, 2)), c),
                _ => {
                    // ω² = −1 − ω
                    out.add_term(rest.clone(), -c.clone());
                    out.add_term(rest.mul(&Mono::from_half(Var::OMEGA, 2)), -c);
                }
            }
        }
        out
    }

    /// Maps ω to ω² (the nontrivial Galois conjugate over ℚ).
    pub fn omega_conjugate(&self) -> LPoly {
        let mut out = LPoly::zero();
        for (m, c) in &self.terms {
            let e = m.half_exponent(Var::OMEGA);
            let rest = m.without(Var::OMEGA);
            out.add_term(rest.mul(&Mono::from_half(Var::OMEGA, 2 * e)), c.clone());
        }
        out.reduce_omega()
    }

    pub fn pow(&self, n: u32) -> LPoly {
        let mut result = LPoly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exponent range `(min, max)` of `v` in half units.
    pub fn half_degree_range(&self, v: Var) -> (i32, i32) {
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for m in self.terms.keys() {
            let e = m.half_exponent(v);
            lo = lo.min(e);
            hi = hi.max(e);
        }
        if self.terms.is_empty() {
            (0, 0)
        } else {
            (lo, hi)
        }
    }

    /// Splits a polynomial (nonnegative exponents) by powers of `v`;
    /// index = half-unit exponent.
    pub fn to_univariate(&self, v: Var) -> Vec<LPoly> {
        let (_, hi) = self.half_degree_range(v);
        let mut out = vec![LPoly::zero(); (hi.max(0) + 1) as usize];
        for (m, c) in &self.terms {
            let e = m.half_exponent(v);
            debug_assert!(e >= 0);
            out[e as usize].add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn from_univariate(coeffs: &[LPoly], v: Var) -> LPoly {
        let mut out = LPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let m = Mono::from_half(v, e as i32);
            for (k, x) in &c.terms {
                out.add_term(k.mul(&m), x.clone());
            }
        }
        out
    }

    /// Groups terms by the exponents of `vars` (half units).
    pub fn split_by(&self, vars: &[Var]) -> BTreeMap<Vec<i32>, LPoly> {
        let mut out: BTreeMap<Vec<i32>, LPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<i32> = vars.iter().map(|v| m.half_exponent(*v)).collect();
            let mut rest = m.clone();
            for v in vars {
                rest = rest.without(*v);
            }
            out.entry(key).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Exact division of polynomials; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &LPoly) -> Option<LPoly> {
        let (dm, dc) = d.leading()?;
        if d.is_monomial() {
            let inv = dc.recip();
            let minv = dm.inverse();
            return Some(LPoly {
                terms: self.terms.iter().map(|(m, c)| (m.mul(&minv), c * &inv)).collect(),
            });
        }
        let dc_inv = dc.recip();
        let mut rem = self.clone();
        let mut quot = LPoly::zero();
        while let Some((lm, lc)) = rem.leading() {
            let tm = lm.div(dm);
            if !tm.iter().all(|&(_, e)| e >= 0) {
                return None;
            }
            let tc = lc * &dc_inv;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&tm), -(c * &tc));
            }
            quot.add_term(tm, tc);
        }
        Some(quot)
    }

    /// Replaces `v` by `value` (a Laurent polynomial); half-integral exponents of `v`
    /// are only allowed when `value` is a monomial with even half-exponents.
    pub fn substitute(&self, v: Var, value: &LPoly) -> Option<LPoly> {
        let mut out = LPoly::zero();
        let mut cache: BTreeMap<i32, LPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.half_exponent(v);
            let rest = LPoly::term(m.without(v), c.clone());
            let factor = if e == 0 {
                LPoly::one()
            } else if let Some(f) = cache.get(&e) {
                f.clone()
            } else {
                let f = half_power(value, e)?;
                cache.insert(e, f.clone());
                f
            };
            out = &out + &(&rest * &factor);
        }
        Some(out)
    }

    pub fn max_abs_coefficient_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    pub fn leading_coefficient(&self) -> Coef {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Coef::zero)
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.terms.values().any(|c| c.is_negative())
    }
}

fn half_power(value: &LPoly, half: i32) -> Option<LPoly> {
    if half % 2 == 0 {
        let n = half / 2;
        if n >= 0 {
            return Some(value.pow(n as u32));
        }
        if value.is_monomial() {
            let (m, c) = value.leading().unwrap();
            return Some(LPoly::term(m.inverse(), c.recip()).pow((-n) as u32));
        }
        return None;
    }
    if value.is_monomial() {
        let (m, c) = value.leading().unwrap();
        if c.is_one() && m.iter().all(|(_, e)| e % 2 == 0) {
            let root = Mono(m.iter().map(|&(v, e)| (v, e / 2)).collect());
            let rp = LPoly::term(root, Coef::one());
            return half_power_int(&rp, half);
        }
    }
    None
}

fn half_power_int(value: &LPoly, n: i32) -> Option<LPoly> {
    if n >= 0 {
        Some(value.pow(n as u32))
    } else {
        let (m, c) = value.leading()?;
        Some(LPoly::term(m.inverse(), c.recip()).pow((-n) as u32))
    }
}

impl Add for &LPoly {
    type Output = LPoly;
    fn add(self, rhs: &LPoly) -> LPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LPoly {
    type Output = LPoly;
    fn sub(self, rhs: &LPoly) -> LPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        LPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &LPoly {
    type Output = LPoly;
    fn mul(self, rhs: &LPoly) -> LPoly {
        if self.is_zero() || rhs.is_zero() {
            return LPoly::zero();
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let mut out = LPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        let omega = self.contains_var(Var::OMEGA) || rhs.contains_var(Var::OMEGA);
        if omega {
            out.reduce_omega()
        } else {
            out
        }
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{}", fmt_coef(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", MonoDisplay(m))?;
            } else {
                write!(f, "{}*{}", fmt_coef(&abs), MonoDisplay(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn fmt_coef(c: &Coef) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LPoly {
        LPoly::var(Var::Q)
    }

    #[test]
    fn lex_order_puts_higher_powers_last() {
        let a = Mono::from_half(Var::Q, 4);
        let b = Mono::from_half(Var::Q, 2);
        let c = Mono::from_half(Var::Q, -2);
        assert!(c < Mono::one() && Mono::one() < b && b < a);
        let x = Mono::from_half(Var::new("a"), 2);
        // a is the more significant variable
        assert!(a < x);
    }

    #[test]
    fn exact_division() {
        let p = &(&q() + &LPoly::one()) * &(&q() - &LPoly::one());
        let d = &q() - &LPoly::one();
        assert_eq!(p.div_exact(&d).unwrap(), &q() + &LPoly::one());
        assert!(p.div_exact(&(&q() + &LPoly::from_int(2))).is_none());
    }

    #[test]
    fn omega_reduction() {
        let w = LPoly::var(Var::OMEGA);
        let w3 = w.pow(3);
        assert!(w3.is_one());
        let s = &(&LPoly::one() + &w) + &w.pow(2);
        assert!(s.is_zero());
    }

    #[test]
    fn monomial_content() {
        let p = &LPoly::term(Mono::from_half(Var::Q, -4), Coef::one()) + &LPoly::term(Mono::from_half(Var::Q, 2), Coef::one());
        let (rest, m) = p.split_monomial();
        assert_eq!(m, Mono::from_half(Var::Q, -4));
        assert!(rest.is_polynomial());
        assert_eq!(rest.to_string(), "q^3 + 1");
    }
}
