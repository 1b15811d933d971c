//! Power series truncated at a fixed order.

use std::fmt;

use super::field::Fe;
use super::var::Var;
use super::ArithError;

/// `sum_{n=0}^{order} c_n u^n`, exact through `order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    pub var: Var,
    coeffs: Vec<Fe>,
}

impl TruncatedSeries {
    pub fn new(var: Var, order: usize, mut coeffs: Vec<Fe>) -> TruncatedSeries {
        coeffs.resize(order + 1, Fe::zero());
        TruncatedSeries { var, coeffs }
    }

    pub fn zero(var: Var, order: usize) -> TruncatedSeries {
        TruncatedSeries::new(var, order, Vec::new())
    }

    pub fn one(var: Var, order: usize) -> TruncatedSeries {
        TruncatedSeries::constant(var, order, Fe::one())
    }

    pub fn constant(var: Var, order: usize, c: Fe) -> TruncatedSeries {
        TruncatedSeries::new(var, order, vec![c])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Fe {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn set(&mut self, n: usize, c: Fe) {
        self.coeffs[n] = c;
    }

    fn check(&self, other: &TruncatedSeries) {
        assert_eq!(self.var, other.var, "series in different variables");
        assert_eq!(self.order(), other.order(), "series of different orders");
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        TruncatedSeries { var: self.var, coeffs }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        TruncatedSeries { var: self.var, coeffs }
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries { var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Fe) -> TruncatedSeries {
        TruncatedSeries { var: self.var, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check(other);
        let n = self.coeffs.len();
        let mut out = vec![Fe::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        TruncatedSeries { var: self.var, coeffs: out }
    }

    /// Multiplicative inverse; the constant term must be invertible.
    pub fn inv(&self) -> Result<TruncatedSeries, ArithError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(ArithError::NonUnitConstant);
        }
        let c0inv = c0.inv();
        let n = self.coeffs.len();
        let mut out: Vec<Fe> = Vec::with_capacity(n);
        out.push(c0inv.clone());
        for k in 1..n {
            let mut s = Fe::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out.push(-(&s * &c0inv));
        }
        Ok(TruncatedSeries { var: self.var, coeffs: out })
    }

    /// `exp(s)` for `s` with zero constant term, via `n f_n = sum_j j s_j f_{n-j}`.
    pub fn exp(&self) -> Result<TruncatedSeries, ArithError> {
        if !self.coeffs[0].is_zero() {
            return Err(ArithError::NonZeroConstant);
        }
        let n = self.coeffs.len();
        let mut f: Vec<Fe> = Vec::with_capacity(n);
        f.push(Fe::one());
        for k in 1..n {
            let mut s = Fe::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &(&(&Fe::from_int(j as i64) * &self.coeffs[j]) * &f[k - j]);
                }
            }
            f.push(&s * &Fe::ratio(1, k as i64));
        }
        Ok(TruncatedSeries { var: self.var, coeffs: f })
    }

    /// `f(c·u)`.
    pub fn scale_arg(&self, c: &Fe) -> TruncatedSeries {
        let mut p = Fe::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            coeffs.push(x * &p);
            p = &p * c;
        }
        TruncatedSeries { var: self.var, coeffs }
    }

    /// `f(u^m)`, truncated at the same order.
    pub fn compose_power(&self, m: usize) -> TruncatedSeries {
        let n = self.coeffs.len();
        let mut coeffs = vec![Fe::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * m < n {
                coeffs[i * m] = c.clone();
            }
        }
        TruncatedSeries { var: self.var, coeffs }
    }

    pub fn truncate(&self, order: usize) -> TruncatedSeries {
        let mut c = self.coeffs.clone();
        c.truncate(order + 1);
        TruncatedSeries::new(self.var, order, c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{n}", self.var)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> Var {
        Var::U
    }

    #[test]
    fn exp_of_zero_is_one() {
        let z = TruncatedSeries::zero(u(), 6);
        assert_eq!(z.exp().unwrap(), TruncatedSeries::one(u(), 6));
    }

    #[test]
    fn exp_rejects_constant_term() {
        let s = TruncatedSeries::one(u(), 4);
        assert!(matches!(s.exp(), Err(ArithError::NonZeroConstant)));
    }

    #[test]
    fn inverse_of_geometric() {
        let c = Fe::named("c");
        let s = TruncatedSeries::new(u(), 5, vec![Fe::one(), -&c]);
        let inv = s.inv().unwrap();
        for n in 0..=5 {
            assert_eq!(inv.coeff(n), &c.pow(n as i64));
        }
        assert!(TruncatedSeries::zero(u(), 3).inv().is_err());
    }
}
