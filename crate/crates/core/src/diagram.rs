//! Twisted affine diagram data: σ, orbits, the twisted Cartan matrix,
//! symmetrizers, marks and the per-pair case table of the loop presentation.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::Fe;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("cannot parse diagram: {0}")]
    Parse(String),
    #[error("{field} has {got} entries, expected {want}")]
    Shape { field: &'static str, got: usize, want: usize },
    #[error("m must be 2 or 3, got {0}")]
    BadOrder(i64),
    #[error("sigma is not a permutation of the base nodes")]
    SigmaNotPermutation,
    #[error("sigma is the identity; a twisted diagram needs m > 1")]
    SigmaTrivial,
    #[error("sigma has order {got} but m = {m}")]
    SigmaOrderMismatch { got: usize, m: i64 },
    #[error("{matrix}: diagonal entry ({i},{i}) is {value}, expected 2")]
    Diagonal { matrix: &'static str, i: usize, value: i64 },
    #[error("{matrix}: off-diagonal entry ({i},{j}) = {value} is positive")]
    PositiveOffDiagonal { matrix: &'static str, i: usize, j: usize, value: i64 },
    #[error("{matrix}: zero pattern is not symmetric at ({i},{j})")]
    ZeroPattern { matrix: &'static str, i: usize, j: usize },
    #[error("cartan is not sigma-invariant at ({i},{j})")]
    SigmaNotAutomorphism { i: u32, j: u32 },
    #[error("node {i} and sigma({i}) have a_ij = {value}; only 0 and -1 occur")]
    UnsupportedLink { i: u32, value: i64 },
    #[error("d must be positive integers")]
    NonPositiveSymmetrizer,
    #[error("d entries are not coprime (gcd {0})")]
    SymmetrizerNotCoprime(i64),
    #[error("d_i a_ij is not symmetric at ({i},{j})")]
    NonSymmetrizable { i: usize, j: usize },
    #[error("no positive integer mark vector with n_0 = 1: {0}")]
    Marks(String),
}

impl DiagramError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            DiagramError::Parse(_) => "E_PARSE",
            DiagramError::Shape { .. } => "E_SHAPE",
            DiagramError::BadOrder(_) => "E_ORDER",
            DiagramError::SigmaNotPermutation => "E_SIGMA_PERM",
            DiagramError::SigmaTrivial => "E_SIGMA_TRIVIAL",
            DiagramError::SigmaOrderMismatch { .. } => "E_SIGMA_ORDER",
            DiagramError::Diagonal { .. } => "E_CARTAN_DIAG",
            DiagramError::PositiveOffDiagonal { .. } => "E_CARTAN_OFFDIAG",
            DiagramError::ZeroPattern { .. } => "E_CARTAN_ZEROS",
            DiagramError::SigmaNotAutomorphism { .. } => "E_SIGMA_COMPAT",
            DiagramError::UnsupportedLink { .. } => "E_SIGMA_LINK",
            DiagramError::NonPositiveSymmetrizer => "E_D_POSITIVE",
            DiagramError::SymmetrizerNotCoprime(_) => "E_D_COPRIME",
            DiagramError::NonSymmetrizable { .. } => "E_SYMMETRIZABLE",
            DiagramError::Marks(_) => "E_MARKS",
        }
    }
}

/// On-disk form of a diagram.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    pub name: String,
    pub m: i64,
    pub base_nodes: Vec<u32>,
    /// One-line notation: `sigma[t]` is the image of `base_nodes[t]`.
    pub sigma: Vec<u32>,
    pub cartan: Vec<i64>,
    pub cartan_sigma: Vec<i64>,
    pub d: Vec<i64>,
    #[serde(default)]
    pub externally_sourced: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NodeClass {
    /// σ(i) = i.
    Fixed,
    /// σ(i) ≠ i and a_{iσ(i)} = 0.
    SplitOrthogonal,
    /// σ(i) ≠ i and a_{iσ(i)} ≠ 0.
    SplitLinked,
}

impl fmt::Display for NodeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeClass::Fixed => "FIXED",
            NodeClass::SplitOrthogonal => "SPLIT_ORTHOGONAL",
            NodeClass::SplitLinked => "SPLIT_LINKED",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwistedDiagram {
    pub name: String,
    pub m: i64,
    nodes: Vec<u32>,
    sigma: Vec<usize>,
    cartan: Vec<Vec<i64>>,
    /// Orbits as sorted node labels; orbit `t` (1-based) is `orbits[t - 1]`.
    orbits: Vec<Vec<u32>>,
    cartan_sigma: Vec<Vec<i64>>,
    d: Vec<i64>,
    n: Vec<i64>,
    pub externally_sourced: bool,
}

fn square(v: &[i64], n: usize, field: &'static str) -> Result<Vec<Vec<i64>>, DiagramError> {
    if v.len() != n * n {
        return Err(DiagramError::Shape { field, got: v.len(), want: n * n });
    }
    Ok(v.chunks(n).map(|r| r.to_vec()).collect())
}

fn check_gcm(a: &[Vec<i64>], matrix: &'static str) -> Result<(), DiagramError> {
    for i in 0..a.len() {
        if a[i][i] != 2 {
            return Err(DiagramError::Diagonal { matrix, i, value: a[i][i] });
        }
        for j in 0..a.len() {
            if i == j {
                continue;
            }
            if a[i][j] > 0 {
                return Err(DiagramError::PositiveOffDiagonal { matrix, i, j, value: a[i][j] });
            }
            if (a[i][j] == 0) != (a[j][i] == 0) {
                return Err(DiagramError::ZeroPattern { matrix, i, j });
            }
        }
    }
    Ok(())
}

/// Solves `sum_i n_i d_i a_ij = 0` for all `j` with `n_0 = 1`.
///
/// Works on raw data (no symmetrizability check), so inconsistent input is
/// reported here rather than earlier.
pub fn solve_marks(cartan_sigma: &[Vec<i64>], d: &[i64]) -> Result<Vec<i64>, DiagramError> {
    let size = cartan_sigma.len();
    if d.len() != size {
        return Err(DiagramError::Shape { field: "d", got: d.len(), want: size });
    }
    // rows = equations j, columns = unknowns i
    let mut m: Vec<Vec<BigRational>> = (0..size)
        .map(|j| {
            (0..size)
                .map(|i| BigRational::from_integer(BigInt::from(d[i] * cartan_sigma[i][j])))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..size {
        let Some(p) = (r..size).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..size {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == size {
            break;
        }
    }
    let free: Vec<usize> = (0..size).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return Err(DiagramError::Marks(format!("kernel has dimension {}", free.len())));
    }
    let f = free[0];
    let mut v = vec![BigRational::zero(); size];
    v[f] = BigRational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[row][f].clone();
    }
    if v[0].is_zero() {
        return Err(DiagramError::Marks("kernel vector has n_0 = 0".into()));
    }
    let scale = v[0].recip();
    let mut n = Vec::with_capacity(size);
    for x in v {
        let y = x * &scale;
        if !y.is_integer() || !y.is_positive() {
            return Err(DiagramError::Marks(format!("entry {y} is not a positive integer")));
        }
        n.push(i64::try_from(y.to_integer()).map_err(|_| DiagramError::Marks("entry too large".into()))?);
    }
    debug_assert!(marks_residual(cartan_sigma, d, &n).iter().all(|&x| x == 0));
    Ok(n)
}

/// `sum_i n_i d_i a_ij` for every `j`.
pub fn marks_residual(cartan_sigma: &[Vec<i64>], d: &[i64], n: &[i64]) -> Vec<i64> {
    (0..cartan_sigma.len())
        .map(|j| (0..cartan_sigma.len()).map(|i| n[i] * d[i] * cartan_sigma[i][j]).sum())
        .collect()
}

impl TwistedDiagram {
    pub fn from_file(f: &DiagramFile) -> Result<TwistedDiagram, DiagramError> {
        if f.m != 2 && f.m != 3 {
            return Err(DiagramError::BadOrder(f.m));
        }
        let size = f.base_nodes.len();
        if f.sigma.len() != size {
            return Err(DiagramError::Shape { field: "sigma", got: f.sigma.len(), want: size });
        }
        let cartan = square(&f.cartan, size, "cartan")?;
        check_gcm(&cartan, "cartan")?;

        let pos = |label: u32| f.base_nodes.iter().position(|&x| x == label);
        let mut sigma = Vec::with_capacity(size);
        for &img in &f.sigma {
            sigma.push(pos(img).ok_or(DiagramError::SigmaNotPermutation)?);
        }
        let mut seen = vec![false; size];
        for &s in &sigma {
            if std::mem::replace(&mut seen[s], true) {
                return Err(DiagramError::SigmaNotPermutation);
            }
        }
        let mut sorted = f.base_nodes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != size {
            return Err(DiagramError::SigmaNotPermutation);
        }
        if sigma.iter().enumerate().all(|(i, &s)| i == s) {
            return Err(DiagramError::SigmaTrivial);
        }
        let order = {
            let mut k = 1;
            let mut cur: Vec<usize> = sigma.clone();
            while !cur.iter().enumerate().all(|(i, &s)| i == s) {
                cur = cur.iter().map(|&x| sigma[x]).collect();
                k += 1;
            }
            k
        };
        if order as i64 != f.m {
            return Err(DiagramError::SigmaOrderMismatch { got: order, m: f.m });
        }
        for i in 0..size {
            for j in 0..size {
                if cartan[sigma[i]][sigma[j]] != cartan[i][j] {
                    return Err(DiagramError::SigmaNotAutomorphism { i: f.base_nodes[i], j: f.base_nodes[j] });
                }
            }
        }
        for i in 0..size {
            let v = cartan[i][sigma[i]];
            if sigma[i] != i && v != 0 && v != -1 {
                return Err(DiagramError::UnsupportedLink { i: f.base_nodes[i], value: v });
            }
        }

        let mut orbits: Vec<Vec<u32>> = Vec::new();
        let mut done = vec![false; size];
        let mut order_by_label: Vec<usize> = (0..size).collect();
        order_by_label.sort_by_key(|&i| f.base_nodes[i]);
        for &start in &order_by_label {
            if done[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = start;
            while !done[x] {
                done[x] = true;
                orbit.push(f.base_nodes[x]);
                x = sigma[x];
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }

        let hat = orbits.len() + 1;
        let cartan_sigma = square(&f.cartan_sigma, hat, "cartan_sigma")?;
        check_gcm(&cartan_sigma, "cartan_sigma")?;
        if f.d.len() != hat {
            return Err(DiagramError::Shape { field: "d", got: f.d.len(), want: hat });
        }
        if f.d.iter().any(|&x| x <= 0) {
            return Err(DiagramError::NonPositiveSymmetrizer);
        }
        let g = f.d.iter().fold(0i64, |g, &x| g.gcd(&x));
        if g != 1 {
            return Err(DiagramError::SymmetrizerNotCoprime(g));
        }
        for i in 0..hat {
            for j in 0..hat {
                if f.d[i] * cartan_sigma[i][j] != f.d[j] * cartan_sigma[j][i] {
                    return Err(DiagramError::NonSymmetrizable { i, j });
                }
            }
        }
        let n = solve_marks(&cartan_sigma, &f.d)?;
        Ok(TwistedDiagram {
            name: f.name.clone(),
            m: f.m,
            nodes: f.base_nodes.clone(),
            sigma,
            cartan,
            orbits,
            cartan_sigma,
            d: f.d.clone(),
            n,
            externally_sourced: f.externally_sourced,
        })
    }

    pub fn parse_toml(text: &str) -> Result<TwistedDiagram, DiagramError> {
        let f: DiagramFile = toml::from_str(text).map_err(|e| DiagramError::Parse(e.to_string()))?;
        TwistedDiagram::from_file(&f)
    }

    pub fn load(path: &Path) -> Result<TwistedDiagram, DiagramError> {
        let text = std::fs::read_to_string(path).map_err(|e| DiagramError::Parse(format!("{}: {e}", path.display())))?;
        TwistedDiagram::parse_toml(&text)
    }

    /// One of the diagrams shipped with the crate.
    pub fn bundled(name: &str) -> Option<TwistedDiagram> {
        let text = bundled_source(name)?;
        Some(TwistedDiagram::parse_toml(text).expect("bundled diagram is valid"))
    }

    /// Base nodes in ascending label order.
    pub fn nodes(&self) -> Vec<u32> {
        let mut v = self.nodes.clone();
        v.sort_unstable();
        v
    }

    fn idx(&self, label: u32) -> usize {
        self.nodes.iter().position(|&x| x == label).unwrap_or_else(|| panic!("unknown node {label}"))
    }

    pub fn has_node(&self, label: u32) -> bool {
        self.nodes.contains(&label)
    }

    pub fn sigma(&self, label: u32) -> u32 {
        self.nodes[self.sigma[self.idx(label)]]
    }

    pub fn sigma_pow(&self, label: u32, r: i64) -> u32 {
        let r = r.rem_euclid(self.m);
        (0..r).fold(label, |x, _| self.sigma(x))
    }

    pub fn a(&self, i: u32, j: u32) -> i64 {
        self.cartan[self.idx(i)][self.idx(j)]
    }

    pub fn orbits(&self) -> &[Vec<u32>] {
        &self.orbits
    }

    /// 1-based index of the orbit of `label` in the twisted diagram.
    pub fn orbit_of(&self, label: u32) -> usize {
        1 + self.orbits.iter().position(|o| o.contains(&label)).expect("node in some orbit")
    }

    /// The lowest label in orbit `t`; the section ī ↦ i used throughout.
    pub fn orbit_rep(&self, t: usize) -> u32 {
        self.orbits[t - 1][0]
    }

    /// Size of the twisted (affine) index set Î_σ.
    pub fn hat_size(&self) -> usize {
        self.orbits.len() + 1
    }

    pub fn cartan_sigma(&self, i: usize, j: usize) -> i64 {
        self.cartan_sigma[i][j]
    }

    pub fn cartan_sigma_rows(&self) -> &[Vec<i64>] {
        &self.cartan_sigma
    }

    pub fn d(&self, i: usize) -> i64 {
        self.d[i]
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.d
    }

    pub fn marks(&self) -> &[i64] {
        &self.n
    }

    /// Exponents of `c = prod_i k_i^{n_i}` over Î_σ.
    pub fn central_exponents(&self) -> Vec<i64> {
        self.n.clone()
    }

    pub fn residual(&self) -> Vec<i64> {
        marks_residual(&self.cartan_sigma, &self.d, &self.n)
    }

    pub fn node_class(&self, label: u32) -> NodeClass {
        let s = self.sigma(label);
        if s == label {
            NodeClass::Fixed
        } else if self.a(label, s) == 0 {
            NodeClass::SplitOrthogonal
        } else {
            NodeClass::SplitLinked
        }
    }

    /// `q_t = q^{d_t}` for a node of Î_σ.
    pub fn q_node(&self, t: usize) -> Fe {
        Fe::q_pow(self.d[t])
    }

    /// ω as a field element: −1 for m = 2, the adjoined root for m = 3.
    pub fn omega(&self) -> Fe {
        omega_for(self.m)
    }

    /// True for the A_{2n}^{(2)} family, where relations (2±), (3±) occur.
    pub fn has_linked_nodes(&self) -> bool {
        self.nodes.iter().any(|&i| self.node_class(i) == NodeClass::SplitLinked)
    }

    pub fn case_table(&self) -> CaseTable {
        let mut entries = BTreeMap::new();
        for &i in &self.nodes() {
            for &j in &self.nodes() {
                entries.insert((i, j), self.case_entry(i, j));
            }
        }
        CaseTable { entries }
    }

    fn case_entry(&self, i: u32, j: u32) -> CaseEntry {
        let m = self.m;
        let q = Fe::q();
        let si = self.sigma(i);
        let (p, d, kind) = if si == i {
            (m, BigRational::new(1.into(), 2.into()), PKind::One)
        } else if self.a(i, si) == 0 {
            if self.sigma(j) != j {
                (1, BigRational::new(1.into(), BigInt::from(4 * m)), PKind::One)
            } else {
                (1, BigRational::new(1.into(), 2.into()), PKind::Geometric)
            }
        } else {
            (1, BigRational::new(1.into(), 8.into()), PKind::Linear)
        };
        let p_for = |sign: i64| -> BiPoly {
            match kind {
                PKind::One => BiPoly::constant(Fe::one()),
                PKind::Geometric => {
                    // (u1^m q^{±2m} − u2^m)/(u1 q^{±2} − u2) = sum_t (u1 q^{±2})^{m−1−t} u2^t
                    let mut out = BiPoly::zero();
                    for t in 0..m {
                        let e = (m - 1 - t) as u32;
                        out.add_term(e, t as u32, q.pow(sign * 2 * (m - 1 - t)));
                    }
                    out
                }
                PKind::Linear => {
                    let mut out = BiPoly::zero();
                    out.add_term(1, 0, q.pow(sign));
                    out.add_term(0, 1, Fe::one());
                    out
                }
            }
        };
        let omega = self.omega();
        let fg = |sign: i64, g: bool| -> BiPoly {
            let mut acc = BiPoly::constant(Fe::one());
            for r in 0..m {
                let a = self.a(i, self.sigma_pow(j, r));
                let qa = q.pow(sign * a);
                let w = omega.pow(r);
                let mut factor = BiPoly::zero();
                if g {
                    factor.add_term(1, 0, qa);
                    factor.add_term(0, 1, -w);
                } else {
                    factor.add_term(1, 0, Fe::one());
                    factor.add_term(0, 1, -(&w * &qa));
                }
                acc = acc.mul(&factor);
            }
            acc
        };
        CaseEntry {
            p,
            d,
            p_plus: p_for(1),
            p_minus: p_for(-1),
            f_plus: fg(1, false),
            f_minus: fg(-1, false),
            g_plus: fg(1, true),
            g_minus: fg(-1, true),
        }
    }
}

pub fn omega_for(m: i64) -> Fe {
    if m == 2 {
        Fe::from_int(-1)
    } else {
        Fe::omega()
    }
}

#[derive(Clone, Copy)]
enum PKind {
    One,
    Geometric,
    Linear,
}

/// Polynomial in `u1, u2` with field coefficients, keyed by `(deg u1, deg u2)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    pub terms: BTreeMap<(u32, u32), Fe>,
}

impl BiPoly {
    pub fn zero() -> BiPoly {
        BiPoly::default()
    }

    pub fn constant(c: Fe) -> BiPoly {
        let mut p = BiPoly::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn add_term(&mut self, e1: u32, e2: u32, c: Fe) {
        let slot = self.terms.entry((e1, e2)).or_insert_with(Fe::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&(e1, e2));
        }
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(a1, a2), x) in &self.terms {
            for (&(b1, b2), y) in &other.terms {
                out.add_term(a1 + b1, a2 + b2, x * y);
            }
        }
        out
    }

    pub fn coeff(&self, e1: u32, e2: u32) -> Fe {
        self.terms.get(&(e1, e2)).cloned().unwrap_or_else(Fe::zero)
    }

    /// Swaps the roles of `u1` and `u2`.
    pub fn swapped(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect() }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(a, b)| a + b).max().unwrap_or(0)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(a, b), c)| {
                let mono = match (a, b) {
                    (0, 0) => String::new(),
                    (a, 0) => pw("u1", a),
                    (0, b) => pw("u2", b),
                    (a, b) => format!("{}*{}", pw("u1", a), pw("u2", b)),
                };
                if mono.is_empty() {
                    format!("({c})")
                } else if c.is_one() {
                    mono
                } else {
                    format!("({c})*{mono}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn pw(v: &str, e: u32) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseEntry {
    pub p: i64,
    pub d: BigRational,
    pub p_plus: BiPoly,
    pub p_minus: BiPoly,
    pub f_plus: BiPoly,
    pub f_minus: BiPoly,
    pub g_plus: BiPoly,
    pub g_minus: BiPoly,
}

impl CaseEntry {
    pub fn p_poly(&self, sign: i64) -> &BiPoly {
        if sign > 0 {
            &self.p_plus
        } else {
            &self.p_minus
        }
    }

    pub fn f_poly(&self, sign: i64) -> &BiPoly {
        if sign > 0 {
            &self.f_plus
        } else {
            &self.f_minus
        }
    }

    pub fn g_poly(&self, sign: i64) -> &BiPoly {
        if sign > 0 {
            &self.g_plus
        } else {
            &self.g_minus
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseTable {
    entries: BTreeMap<(u32, u32), CaseEntry>,
}

impl CaseTable {
    pub fn get(&self, i: u32, j: u32) -> &CaseEntry {
        &self.entries[&(i, j)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u32, u32), &CaseEntry)> {
        self.entries.iter()
    }
}

const BUNDLED: &[(&str, &str)] = &[
    ("a2_2", include_str!("../data/diagrams/a2_2.toml")),
    ("a3_2", include_str!("../data/diagrams/a3_2.toml")),
    ("a4_2", include_str!("../data/diagrams/a4_2.toml")),
    ("d4_3", include_str!("../data/diagrams/d4_3.toml")),
];

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

pub fn bundled_source(name: &str) -> Option<&'static str> {
    let key = name.trim_end_matches(".toml");
    let key = key.rsplit('/').next().unwrap_or(key);
    BUNDLED.iter().find(|(n, _)| *n == key).map(|(_, t)| *t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> DiagramFile {
        toml::from_str(bundled_source("a2_2").unwrap()).unwrap()
    }

    #[test]
    fn a2_2_marks() {
        let d = TwistedDiagram::from_file(&a2()).unwrap();
        assert_eq!(d.marks(), &[1, 2]);
        assert_eq!(d.residual(), vec![0, 0]);
        assert_eq!(d.orbits(), &[vec![1, 2]]);
        assert_eq!(d.node_class(1), NodeClass::SplitLinked);
    }

    #[test]
    fn rejects_bad_symmetrizer() {
        let mut f = a2();
        f.d = vec![1, 1];
        let e = TwistedDiagram::from_file(&f).unwrap_err();
        assert_eq!(e.code(), "E_SYMMETRIZABLE");
    }

    #[test]
    fn rejects_identity_sigma() {
        let mut f = a2();
        f.sigma = vec![1, 2];
        assert_eq!(TwistedDiagram::from_file(&f).unwrap_err(), DiagramError::SigmaTrivial);
    }

    #[test]
    fn perturbed_marks_fail() {
        let a = vec![vec![2, -2], vec![-4, 2]];
        let e = solve_marks(&a, &[4, 1]).unwrap_err();
        assert_eq!(e.code(), "E_MARKS");
    }

    #[test]
    fn every_bundled_diagram_loads() {
        for name in bundled_names() {
            let d = TwistedDiagram::bundled(name).unwrap();
            assert!(d.residual().iter().all(|&x| x == 0), "{name}");
            assert_eq!(d.marks()[0], 1);
            assert_eq!(d.externally_sourced, name != "a2_2");
        }
    }
}
