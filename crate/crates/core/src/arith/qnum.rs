//! q-integers, q-factorials and Gaussian binomials.

use super::field::Fe;
use super::ArithError;

/// `[n]_b = (b^n - b^-n)/(b - b^-1)`, expanded as `sum_{j<n} b^(n-1-2j)`.
pub fn qint(n: i64, base: &Fe) -> Fe {
    if n < 0 {
        return -qint(-n, base);
    }
    let mut acc = Fe::zero();
    for j in 0..n {
        acc += &base.pow(n - 1 - 2 * j);
    }
    acc
}

pub fn qfact(n: i64, base: &Fe) -> Result<Fe, ArithError> {
    if n < 0 {
        return Err(ArithError::BadBinomial { n, r: 0 });
    }
    let mut acc = Fe::one();
    for j in 2..=n {
        acc *= &qint(j, base);
    }
    Ok(acc)
}

/// Gaussian binomial via `[n r] = b^-r [n-1 r] + b^(n-r) [n-1 r-1]`,
/// which never leaves the Laurent polynomials.
pub fn qbinom(n: i64, r: i64, base: &Fe) -> Result<Fe, ArithError> {
    if r < 0 || n < r {
        return Err(ArithError::BadBinomial { n, r });
    }
    let r = r.min(n - r) as usize;
    let n = n as usize;
    // row[j] = [i j] for the current i
    let mut row = vec![Fe::one()];
    for i in 1..=n {
        let mut next = vec![Fe::zero(); (i + 1).min(r + 1)];
        for (j, slot) in next.iter_mut().enumerate() {
            let mut v = Fe::zero();
            if j < row.len() && j < i {
                v += &(&base.pow(-(j as i64)) * &row[j]);
            }
            if j >= 1 && j - 1 < row.len() {
                v += &(&base.pow((i - j) as i64) * &row[j - 1]);
            }
            *slot = v;
        }
        row = next;
    }
    Ok(row[r].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Fe {
        Fe::q()
    }

    #[test]
    fn small_values() {
        assert!(qint(0, &q()).is_zero());
        assert_eq!(qint(2, &q()), "q + q^-1".parse().unwrap());
        for n in 1..=8 {
            assert_eq!(qint(-n, &q()), -qint(n, &q()));
        }
    }

    #[test]
    fn matches_defining_fraction() {
        let b = Fe::q_pow(2);
        for n in 0..7 {
            let frac = (&b.pow(n) - &b.pow(-n)) / (&b - &b.inv());
            assert_eq!(qint(n, &b), frac);
        }
    }

    #[test]
    fn binomials() {
        for n in 0..=6 {
            assert!(qbinom(n, 0, &q()).unwrap().is_one());
        }
        assert_eq!(qbinom(2, 1, &q()).unwrap(), "q + q^-1".parse().unwrap());
        assert_eq!(
            qbinom(4, 2, &q()).unwrap(),
            "q^4 + q^2 + 2 + q^-2 + q^-4".parse().unwrap()
        );
        assert!(qbinom(2, 3, &q()).is_err());
        assert!(qbinom(2, -1, &q()).is_err());
        assert!(qfact(-1, &q()).is_err());
    }

    #[test]
    fn binomial_equals_factorial_ratio() {
        let b = Fe::q_pow(4);
        for n in 0..=6 {
            for r in 0..=n {
                let f = qfact(n, &b).unwrap() / (qfact(r, &b).unwrap() * qfact(n - r, &b).unwrap());
                assert_eq!(qbinom(n, r, &b).unwrap(), f, "n={n} r={r}");
            }
        }
    }
}
