//! Exact rational functions in named indeterminates.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::gcd::gcd;
use super::laurent::{Coef, LPoly, Mono};
use super::var::Var;
use super::ArithError;

/// A reduced fraction `num / den`.
///
/// Canonical form: `den` is a polynomial without monomial factors, free of
/// `omega`, with lex-leading coefficient 1, and shares no factor with `num`.
/// Two elements are equal iff their representations are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fe {
    num: LPoly,
    den: LPoly,
}

impl Default for Fe {
    fn default() -> Self {
        Fe::zero()
    }
}

impl Fe {
    pub fn zero() -> Fe {
        Fe { num: LPoly::zero(), den: LPoly::one() }
    }

    pub fn one() -> Fe {
        Fe { num: LPoly::one(), den: LPoly::one() }
    }

    pub fn from_int(n: i64) -> Fe {
        Fe::from_poly(LPoly::from_int(n))
    }

    pub fn from_rational(c: Coef) -> Fe {
        Fe::from_poly(LPoly::constant(c))
    }

    pub fn ratio(n: i64, d: i64) -> Fe {
        assert!(d != 0, "zero denominator");
        Fe::from_rational(Coef::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_poly(p: LPoly) -> Fe {
        Fe { num: p, den: LPoly::one() }
    }

    pub fn var(v: Var) -> Fe {
        Fe::from_poly(LPoly::var(v))
    }

    pub fn named(name: &str) -> Fe {
        Fe::var(Var::new(name))
    }

    pub fn q() -> Fe {
        Fe::var(Var::Q)
    }

    pub fn omega() -> Fe {
        Fe::var(Var::OMEGA)
    }

    /// `v^n`.
    pub fn var_pow(v: Var, n: i64) -> Fe {
        Fe::var_half_pow(v, 2 * n)
    }

    /// `v^(half/2)`.
    pub fn var_half_pow(v: Var, half: i64) -> Fe {
        let h = i32::try_from(half).expect("exponent out of range");
        Fe::from_poly(LPoly::term(Mono::from_half(v, h), Coef::one()))
    }

    pub fn q_pow(n: i64) -> Fe {
        Fe::var_pow(Var::Q, n)
    }

    pub fn numer(&self) -> &LPoly {
        &self.num
    }

    pub fn denom(&self) -> &LPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Coef> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|c| c.is_integer()).map(|c| c.to_integer())
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.num.vars();
        vs.extend(self.den.vars());
        vs.sort();
        vs.dedup();
        vs
    }

    /// Builds the canonical form of `num / den`.
    pub fn fraction(num: LPoly, den: LPoly) -> Result<Fe, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Fe::normalize(num, den))
    }

    fn normalize(mut num: LPoly, mut den: LPoly) -> Fe {
        if num.is_zero() {
            return Fe::zero();
        }
        if den.contains_var(Var::OMEGA) {
            // (A + ωB)(A + ω²B) = A² − AB + B²
            let conj = den.omega_conjugate();
            num = &num * &conj;
            den = &den * &conj;
        }
        let (dp, dm) = den.split_monomial();
        if !dm.is_one() {
            num = num.shift(&dm.inverse());
        }
        den = dp;
        if let Some(c) = den.constant_value() {
            return Fe { num: num.scale(&c.recip()), den: LPoly::one() };
        }
        let (np, nm) = num.split_monomial();
        let g = gcd(&np, &den);
        if !g.is_one() {
            num = np.div_exact(&g).expect("gcd divides numerator").shift(&nm);
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        let lc = den.leading_coefficient();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if den.is_one() {
            den = LPoly::one();
        }
        Fe { num, den }
    }

    pub fn checked_inv(&self) -> Result<Fe, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Fe::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn inv(&self) -> Fe {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn checked_div(&self, rhs: &Fe) -> Result<Fe, ArithError> {
        Ok(self * &rhs.checked_inv()?)
    }

    pub fn pow(&self, n: i64) -> Fe {
        if n == 0 {
            return Fe::one();
        }
        if n < 0 {
            return self.inv().pow(-n);
        }
        let e = u32::try_from(n).expect("exponent out of range");
        let num = self.num.pow(e);
        let den = self.den.pow(e);
        if self.num.contains_var(Var::OMEGA) {
            Fe::normalize(num, den)
        } else {
            Fe { num, den }
        }
    }

    /// `self^(half/2)`; odd `half` needs `self` to be a monomial `x^e` with
    /// coefficient 1, whose square root is then taken exponentwise.
    pub fn pow_half(&self, half: i64) -> Result<Fe, ArithError> {
        if half % 2 == 0 {
            if half < 0 && self.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            return Ok(self.pow(half / 2));
        }
        if self.den.is_one() && self.num.is_monomial() {
            let (m, c) = self.num.leading().unwrap();
            if c.is_one() && m.iter().all(|&(v, e)| e % 2 == 0 && v != Var::OMEGA) {
                let mut root = Mono::one();
                for &(v, e) in m.iter() {
                    root = root.mul(&Mono::from_half(v, e / 2));
                }
                return Ok(Fe::from_poly(LPoly::term(root, Coef::one())).pow(half));
            }
        }
        Err(ArithError::HalfPower(self.to_string()))
    }

    /// Replaces `v` by `value` everywhere.
    pub fn substitute(&self, v: Var, value: &Fe) -> Result<Fe, ArithError> {
        if !self.contains_var(v) {
            return Ok(self.clone());
        }
        let n = subst_poly(&self.num, v, value)?;
        let d = subst_poly(&self.den, v, value)?;
        n.checked_div(&d)
    }

    /// If `self = c · q^(half/2)` returns `(c, half)`.
    pub fn as_monomial_in(&self, v: Var) -> Option<(Coef, i64)> {
        if !self.den.is_one() || !self.num.is_monomial() {
            return None;
        }
        let (m, c) = self.num.leading()?;
        if m.iter().any(|(w, _)| *w != v) {
            return None;
        }
        Some((c.clone(), m.half_exponent(v) as i64))
    }

    /// Rough size measure, used for pivot-free diagnostics.
    pub fn term_count(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn is_negative_constant(&self) -> bool {
        self.as_rational().is_some_and(|c| c.is_negative())
    }
}

fn subst_poly(p: &LPoly, v: Var, value: &Fe) -> Result<Fe, ArithError> {
    let mut acc = Fe::zero();
    for (m, c) in p.terms() {
        let mut t = Fe::from_rational(c.clone());
        for &(w, e) in m.iter() {
            if w == v {
                t = &t * &value.pow_half(e as i64)?;
            } else {
                t = &t * &Fe::var_half_pow(w, e as i64);
            }
        }
        acc += &t;
    }
    Ok(acc)
}

impl Add for &Fe {
    type Output = Fe;
    fn add(self, rhs: &Fe) -> Fe {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Fe { num: &self.num + &rhs.num, den: LPoly::one() };
        }
        if self.den == rhs.den {
            return Fe::normalize(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() {
            return Fe { num: &(&self.num * &rhs.den) + &rhs.num, den: rhs.den.clone() };
        }
        if rhs.den.is_one() {
            return Fe { num: &self.num + &(&rhs.num * &self.den), den: self.den.clone() };
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() && !self.num.contains_var(Var::OMEGA) && !rhs.num.contains_var(Var::OMEGA) {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return Fe::zero();
            }
            return Fe { num, den: &self.den * &rhs.den };
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        Fe::normalize(num, &self.den * &d2)
    }
}

impl Sub for &Fe {
    type Output = Fe;
    fn sub(self, rhs: &Fe) -> Fe {
        self + &(-rhs)
    }
}

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        Fe { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &Fe {
    type Output = Fe;
    fn mul(self, rhs: &Fe) -> Fe {
        if self.is_zero() || rhs.is_zero() {
            return Fe::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Fe { num: &self.num * &rhs.num, den: LPoly::one() };
        }
        if self.num.contains_var(Var::OMEGA) || rhs.num.contains_var(Var::OMEGA) {
            return Fe::normalize(&self.num * &rhs.num, &self.den * &rhs.den);
        }
        // cross cancellation keeps the result reduced without a final gcd
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        let den = &d1 * &d2;
        Fe { num: &n1 * &n2, den }
    }
}

fn cancel(n: &LPoly, d: &LPoly) -> (LPoly, LPoly) {
    if d.is_one() || n.is_constant() {
        return (n.clone(), d.clone());
    }
    let (np, nm) = n.split_monomial();
    let g = gcd(&np, d);
    if g.is_one() {
        return (n.clone(), d.clone());
    }
    (
        np.div_exact(&g).expect("gcd divides").shift(&nm),
        d.div_exact(&g).expect("gcd divides"),
    )
}

impl Div for &Fe {
    type Output = Fe;
    fn div(self, rhs: &Fe) -> Fe {
        self * &rhs.inv()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Fe {
            type Output = Fe;
            fn $m(self, rhs: Fe) -> Fe {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Fe> for Fe {
            type Output = Fe;
            fn $m(self, rhs: &Fe) -> Fe {
                (&self).$m(rhs)
            }
        }
        impl $tr<Fe> for &Fe {
            type Output = Fe;
            fn $m(self, rhs: Fe) -> Fe {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        -&self
    }
}

impl AddAssign<&Fe> for Fe {
    fn add_assign(&mut self, rhs: &Fe) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Fe> for Fe {
    fn sub_assign(&mut self, rhs: &Fe) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Fe> for Fe {
    fn mul_assign(&mut self, rhs: &Fe) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Fe {
    fn from(n: i64) -> Fe {
        Fe::from_int(n)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.len() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Fe {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Fe, ArithError> {
        super::parse::parse_fe(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(s: &str) -> Fe {
        s.parse().unwrap()
    }

    #[test]
    fn reduces_common_factors() {
        let x = fe("(q^2 - 1)/(q - 1)");
        assert_eq!(x, fe("q + 1"));
        assert!(x.is_laurent());
    }

    #[test]
    fn denominator_monomials_move_up() {
        let x = fe("1/(q^3 + q)");
        assert_eq!(x.denom().to_string(), "q^2 + 1");
        assert_eq!(x.numer().to_string(), "q^-1");
    }

    #[test]
    fn omega_identities() {
        let w = Fe::omega();
        assert!(w.pow(3).is_one());
        assert!((&(&Fe::one() + &w) + &w.pow(2)).is_zero());
        let x = Fe::one() / (&Fe::q() - &w);
        assert!(!x.denom().contains_var(Var::OMEGA));
        assert_eq!(&x * &(&Fe::q() - &w), Fe::one());
    }

    #[test]
    fn half_powers() {
        let h = Fe::q().pow_half(1).unwrap();
        assert_eq!(&h * &h, Fe::q());
        assert_eq!(h.to_string(), "q^(1/2)");
        assert!(fe("q + 1").pow_half(1).is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "1", "-3/4", "q^-2 + 2*a", "(a*q + 1)/(q^2 + 1)", "q^(3/2)*b^-1"] {
            let x = fe(s);
            assert_eq!(fe(&x.to_string()), x, "{s}");
        }
    }

    #[test]
    fn substitution() {
        let x = fe("(a + q)/(a - 1)");
        let y = x.substitute(Var::new("a"), &fe("q^2")).unwrap();
        assert_eq!(y, fe("(q^2 + q)/(q^2 - 1)"));
        assert!(x.substitute(Var::new("a"), &Fe::one()).is_err());
    }
}
