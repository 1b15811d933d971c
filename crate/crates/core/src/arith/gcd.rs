//! Polynomial gcd over ℚ.
//!
//! Inputs are polynomials (nonnegative stored exponents). The result is
//! normalized so that its lex-leading coefficient is 1. `omega` is handled as
//! an ordinary indeterminate here; `field` keeps denominators free of it.

use num_traits::{One, Zero};

use super::laurent::{Coef, LPoly, Mono};
use super::var::Var;

/// Divides by the lex-leading coefficient.
pub fn monic(p: &LPoly) -> LPoly {
    match p.leading() {
        None => LPoly::zero(),
        Some((_, c)) if c.is_one() => p.clone(),
        Some((_, c)) => p.scale(&c.recip()),
    }
}

pub fn gcd(a: &LPoly, b: &LPoly) -> LPoly {
    if a.is_zero() {
        return monic(b);
    }
    if b.is_zero() {
        return monic(a);
    }
    if a.is_constant() || b.is_constant() {
        return LPoly::one();
    }
    // monomial part: componentwise minimum of both supports
    let ma = a.min_mono();
    let mb = b.min_mono();
    let shared = ma.gcd_lattice(&mb);
    if !ma.is_one() || !mb.is_one() {
        let ra = a.shift(&ma.inverse());
        let rb = b.shift(&mb.inverse());
        return gcd(&ra, &rb).shift(&shared);
    }

    let va = a.vars();
    let vb = b.vars();
    if let Some(v) = va.iter().find(|v| !vb.contains(v)) {
        return gcd_with_content(a, *v, b);
    }
    if let Some(v) = vb.iter().find(|v| !va.contains(v)) {
        return gcd_with_content(b, *v, a);
    }
    if va.len() == 1 {
        return univariate_gcd(a, b, va[0]);
    }
    // main variable: the one of lowest total degree keeps the PRS short
    let v = *va
        .iter()
        .min_by_key(|v| {
            let (_, ha) = a.half_degree_range(**v);
            let (_, hb) = b.half_degree_range(**v);
            ha.max(hb)
        })
        .unwrap();
    prs_gcd(a, b, v)
}

/// gcd(a, b) where `v` occurs in `a` but not in `b`: only the content of `a`
/// with respect to `v` can contribute.
fn gcd_with_content(a: &LPoly, v: Var, b: &LPoly) -> LPoly {
    let mut g = b.clone();
    for c in a.to_univariate(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            return g;
        }
    }
    monic(&g)
}

fn content(coeffs: &[LPoly]) -> LPoly {
    let mut g = LPoly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { monic(c) } else { gcd(&g, c) };
        if g.is_one() {
            break;
        }
    }
    g
}

fn trim(p: &mut Vec<LPoly>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn primitive_part(p: &[LPoly]) -> Vec<LPoly> {
    let c = content(p);
    if c.is_one() || c.is_zero() {
        return normalize_lead(p.to_vec());
    }
    let out: Vec<LPoly> = p
        .iter()
        .map(|x| x.div_exact(&c).expect("content divides every coefficient"))
        .collect();
    normalize_lead(out)
}

/// Rescales so the leading coefficient is lex-monic (keeps rational sizes down).
fn normalize_lead(mut p: Vec<LPoly>) -> Vec<LPoly> {
    trim(&mut p);
    if let Some(lc) = p.last() {
        let c = lc.leading_coefficient();
        if !c.is_one() && !c.is_zero() {
            let inv = c.recip();
            for x in p.iter_mut() {
                *x = x.scale(&inv);
            }
        }
    }
    p
}

fn pseudo_rem(a: &[LPoly], b: &[LPoly]) -> Vec<LPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for x in r.iter_mut() {
            *x = &*x * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            if bc.is_zero() {
                continue;
            }
            let t = bc * &lr;
            r[i + shift] = &r[i + shift] - &t;
        }
        trim(&mut r);
    }
    r
}

fn prs_gcd(a: &LPoly, b: &LPoly, v: Var) -> LPoly {
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let ca = content(&ua);
    let cb = content(&ub);
    let gc = gcd(&ca, &cb);
    let mut p = primitive_part(&ua);
    let mut r = primitive_part(&ub);
    if p.len() < r.len() {
        std::mem::swap(&mut p, &mut r);
    }
    loop {
        if r.len() == 1 {
            return monic(&gc);
        }
        let rem = pseudo_rem(&p, &r);
        if rem.is_empty() {
            break;
        }
        p = r;
        r = primitive_part(&rem);
    }
    let g = LPoly::from_univariate(&r, v);
    monic(&(&g * &gc))
}

fn dense(p: &LPoly, v: Var) -> Vec<Coef> {
    p.to_univariate(v)
        .into_iter()
        .map(|c| c.constant_value().expect("univariate input"))
        .collect()
}

fn trim_q(p: &mut Vec<Coef>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn univariate_gcd(a: &LPoly, b: &LPoly, v: Var) -> LPoly {
    let mut x = dense(a, v);
    let mut y = dense(b, v);
    trim_q(&mut x);
    trim_q(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        // x mod y, with y made monic first
        let inv = y.last().unwrap().recip();
        for c in y.iter_mut() {
            *c *= &inv;
        }
        let dy = y.len() - 1;
        while x.len() > dy {
            let dx = x.len() - 1;
            let lead = x[dx].clone();
            if !lead.is_zero() {
                for (i, c) in y.iter().enumerate() {
                    x[i + dx - dy] -= &lead * c;
                }
            }
            x.pop();
            trim_q(&mut x);
        }
        std::mem::swap(&mut x, &mut y);
    }
    let mut out = LPoly::zero();
    let inv = x.last().map(|c| c.recip()).unwrap_or_else(Coef::one);
    for (e, c) in x.iter().enumerate() {
        if !c.is_zero() {
            out = &out + &LPoly::term(Mono::from_half(v, e as i32), c * &inv);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> LPoly {
        LPoly::var(Var::new(name))
    }

    fn c(n: i64) -> LPoly {
        LPoly::from_int(n)
    }

    #[test]
    fn univariate_common_factor() {
        let q = v("q");
        let f = &(&q - &c(1)) * &(&q + &c(2));
        let g = &(&q - &c(1)) * &(&q + &c(3));
        assert_eq!(gcd(&f, &g), &q - &c(1));
    }

    #[test]
    fn multivariate_common_factor() {
        let (q, a, b) = (v("q"), v("a"), v("b"));
        let common = &(&q * &a) + &c(1);
        let f = &common * &(&a + &b);
        let g = &common * &(&(&q * &q) - &b);
        let h = gcd(&f, &g);
        assert_eq!(h, monic(&common));
    }

    #[test]
    fn variable_in_one_argument_only() {
        let (q, a) = (v("q"), v("a"));
        let d = &(&q * &q) + &c(1);
        let f = &(&d * &a) + &(&d * &q);
        assert_eq!(gcd(&f, &d), d);
        assert!(gcd(&(&a + &c(1)), &d).is_one());
    }

    #[test]
    fn monomial_factors() {
        let q = v("q");
        let f = &(&q * &q) * &(&q + &c(1));
        let g = &q * &(&q - &c(1));
        assert_eq!(gcd(&f, &g), q);
    }
}
