//! Generator symbols, words, formal linear combinations and the relation
//! instances of every presentation the crate knows about.

mod families;
mod maps;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::arith::Fe;

pub use families::{
    chevalley_relations, drinfeld_relations, sl2_relations, sl3tau_relations, DEFAULT_CUBIC_WINDOW,
};
pub use maps::{chevalley_via_iso, iso_image, iso_images, phi_image, phi_images, target_algebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("cannot parse generator symbol {0:?}")]
    BadSymbol(String),
    #[error("window {window} cannot close the coefficient extraction of {family} (needs at least {needed} consecutive degrees)")]
    WindowTooSmall { family: String, window: i64, needed: i64 },
    #[error("exponent {0} of q is not a multiple of 1/2")]
    Exponent(String),
    #[error("explicit affine-node images are only known for the A2(2) diagram, not {0}")]
    NoAffineImage(String),
    #[error("no image for {0}")]
    NoImage(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GenKind {
    XPlus,
    XMinus,
    H,
    K,
    KInv,
    PsiPlus,
    PsiMinus,
    EPlus,
    EMinus,
    KChev,
    KChevInv,
}

impl GenKind {
    pub const ALL: [GenKind; 11] = [
        GenKind::XPlus,
        GenKind::XMinus,
        GenKind::H,
        GenKind::K,
        GenKind::KInv,
        GenKind::PsiPlus,
        GenKind::PsiMinus,
        GenKind::EPlus,
        GenKind::EMinus,
        GenKind::KChev,
        GenKind::KChevInv,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            GenKind::XPlus => "X+",
            GenKind::XMinus => "X-",
            GenKind::H => "H",
            GenKind::K => "K",
            GenKind::KInv => "K^-1",
            GenKind::PsiPlus => "Psi+",
            GenKind::PsiMinus => "Psi-",
            GenKind::EPlus => "E+",
            GenKind::EMinus => "E-",
            GenKind::KChev => "KC",
            GenKind::KChevInv => "KC^-1",
        }
    }

    pub fn from_tag(tag: &str) -> Option<GenKind> {
        GenKind::ALL.into_iter().find(|k| k.tag() == tag)
    }

    pub fn has_degree(self) -> bool {
        matches!(self, GenKind::XPlus | GenKind::XMinus | GenKind::H | GenKind::PsiPlus | GenKind::PsiMinus)
    }

    pub fn is_chevalley(self) -> bool {
        matches!(self, GenKind::EPlus | GenKind::EMinus | GenKind::KChev | GenKind::KChevInv)
    }

    /// `X±` for sign `±1`.
    pub fn x(sign: i64) -> GenKind {
        if sign > 0 {
            GenKind::XPlus
        } else {
            GenKind::XMinus
        }
    }

    pub fn e(sign: i64) -> GenKind {
        if sign > 0 {
            GenKind::EPlus
        } else {
            GenKind::EMinus
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenSymbol {
    pub kind: GenKind,
    pub node: u32,
    /// Zero for kinds without a degree.
    pub degree: i64,
}

impl GenSymbol {
    pub fn new(kind: GenKind, node: u32, degree: i64) -> GenSymbol {
        let degree = if kind.has_degree() { degree } else { 0 };
        GenSymbol { kind, node, degree }
    }

    pub fn x(sign: i64, node: u32, degree: i64) -> GenSymbol {
        GenSymbol::new(GenKind::x(sign), node, degree)
    }

    pub fn h(node: u32, degree: i64) -> GenSymbol {
        assert!(degree != 0, "H has nonzero degree");
        GenSymbol::new(GenKind::H, node, degree)
    }

    pub fn k(node: u32) -> GenSymbol {
        GenSymbol::new(GenKind::K, node, 0)
    }

    pub fn kinv(node: u32) -> GenSymbol {
        GenSymbol::new(GenKind::KInv, node, 0)
    }

    pub fn psi(sign: i64, node: u32, degree: i64) -> GenSymbol {
        let kind = if sign > 0 { GenKind::PsiPlus } else { GenKind::PsiMinus };
        GenSymbol::new(kind, node, degree)
    }

    /// `Ψ^+` at negative degree and `Ψ^-` at positive degree are zero.
    pub fn is_zero_symbol(&self) -> bool {
        match self.kind {
            GenKind::PsiPlus => self.degree < 0,
            GenKind::PsiMinus => self.degree > 0,
            _ => false,
        }
    }

    pub fn with_node(self, node: u32) -> GenSymbol {
        GenSymbol { node, ..self }
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kind.has_degree() {
            write!(f, "{}[{},{}]", self.kind.tag(), self.node, self.degree)
        } else {
            write!(f, "{}[{}]", self.kind.tag(), self.node)
        }
    }
}

impl FromStr for GenSymbol {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<GenSymbol, PresentationError> {
        let bad = || PresentationError::BadSymbol(s.to_string());
        let s = s.trim();
        let open = s.find('[').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(']').ok_or_else(bad)?;
        let kind = GenKind::from_tag(&s[..open]).ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let node: u32 = parts[0].parse().map_err(|_| bad())?;
        match (kind.has_degree(), parts.len()) {
            (true, 2) => {
                let degree: i64 = parts[1].parse().map_err(|_| bad())?;
                if kind == GenKind::H && degree == 0 {
                    return Err(bad());
                }
                Ok(GenSymbol::new(kind, node, degree))
            }
            (false, 1) => Ok(GenSymbol::new(kind, node, 0)),
            _ => Err(bad()),
        }
    }
}

pub type Word = Vec<GenSymbol>;

pub fn word_string(w: &Word) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// Finite formal sum of words with field coefficients. Zero coefficients and
/// words containing a vanishing Ψ symbol are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinComb {
    terms: BTreeMap<Word, Fe>,
}

impl LinComb {
    pub fn zero() -> LinComb {
        LinComb::default()
    }

    pub fn one() -> LinComb {
        LinComb::scalar(Fe::one())
    }

    pub fn scalar(c: Fe) -> LinComb {
        LinComb::term(c, Vec::new())
    }

    pub fn symbol(g: GenSymbol) -> LinComb {
        LinComb::term(Fe::one(), vec![g])
    }

    pub fn term(c: Fe, w: Word) -> LinComb {
        let mut out = LinComb::zero();
        out.add_term(w, c);
        out
    }

    pub fn add_term(&mut self, w: Word, c: Fe) {
        if c.is_zero() || w.iter().any(GenSymbol::is_zero_symbol) {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    e.insert(v);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Fe)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Fe {
        self.terms.get(w).cloned().unwrap_or_else(Fe::zero)
    }

    pub fn add(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Fe) -> LinComb {
        let mut out = LinComb::zero();
        if c.is_zero() {
            return out;
        }
        for (w, x) in &self.terms {
            out.terms.insert(w.clone(), x * c);
        }
        out
    }

    /// Concatenation product.
    pub fn mul(&self, other: &LinComb) -> LinComb {
        let mut out = LinComb::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    pub fn commutator(&self, other: &LinComb) -> LinComb {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, n: u32) -> LinComb {
        (0..n).fold(LinComb::one(), |acc, _| acc.mul(self))
    }

    /// Replaces each symbol by its image and multiplies out.
    pub fn substitute<E>(&self, image: &impl Fn(&GenSymbol) -> Result<LinComb, E>) -> Result<LinComb, E> {
        let mut out = LinComb::zero();
        for (w, c) in &self.terms {
            let mut acc = LinComb::scalar(c.clone());
            for g in w {
                acc = acc.mul(&image(g)?);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// The same combination scaled so the first word has coefficient one.
    pub fn projective(&self) -> LinComb {
        match self.terms.values().next() {
            Some(c) => self.scale(&c.inv()),
            None => LinComb::zero(),
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = &GenSymbol> {
        self.terms.keys().flat_map(|w| w.iter())
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("({c})*{}", word_string(w))).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algebra {
    /// The explicit quantum loop algebra of `sl3` twisted by τ.
    Sl3Tau,
    /// `U_{q^e}(L(sl2))`; `e = 1` is plain quantum affine `sl2`.
    Sl2(i64),
    Chevalley(String),
    Drinfeld(String),
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::Sl3Tau => f.write_str("sl3tau"),
            Algebra::Sl2(1) => f.write_str("sl2"),
            Algebra::Sl2(e) => write!(f, "sl2_q{e}"),
            Algebra::Chevalley(d) => write!(f, "chevalley({d})"),
            Algebra::Drinfeld(d) => write!(f, "drinfeld({d})"),
        }
    }
}

impl FromStr for Algebra {
    type Err = String;

    fn from_str(s: &str) -> Result<Algebra, String> {
        let s = s.trim();
        if s == "sl3tau" {
            return Ok(Algebra::Sl3Tau);
        }
        if s == "sl2" {
            return Ok(Algebra::Sl2(1));
        }
        if let Some(e) = s.strip_prefix("sl2_q") {
            return e.parse().map(Algebra::Sl2).map_err(|_| format!("bad algebra tag {s:?}"));
        }
        let inner = |p: &str| s.strip_prefix(p).and_then(|r| r.strip_suffix(')')).map(str::to_string);
        if let Some(d) = inner("chevalley(") {
            return Ok(Algebra::Chevalley(d));
        }
        if let Some(d) = inner("drinfeld(") {
            return Ok(Algebra::Drinfeld(d));
        }
        Err(format!("bad algebra tag {s:?}"))
    }
}

/// A formal combination asserted to vanish in `algebra`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationInstance {
    pub id: String,
    pub algebra: Algebra,
    pub lhs_minus_rhs: LinComb,
    /// Number of words written down before like terms were combined.
    pub raw_terms: usize,
}

impl RelationInstance {
    pub fn family(&self) -> &str {
        self.id.split('[').next().unwrap_or(&self.id)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (words, coefficients): (Vec<_>, Vec<_>) = self
            .lhs_minus_rhs
            .terms()
            .map(|(w, c)| (w.iter().map(|g| g.to_string()).collect::<Vec<_>>(), c.to_string()))
            .unzip();
        serde_json::json!({
            "id": self.id,
            "algebra": self.algebra.to_string(),
            "words": words,
            "coefficients": coefficients,
        })
    }
}

/// Accumulates the raw terms of one instance.
pub(crate) struct Builder {
    lc: LinComb,
    raw: usize,
}

impl Builder {
    pub(crate) fn new() -> Builder {
        Builder { lc: LinComb::zero(), raw: 0 }
    }

    pub(crate) fn push(&mut self, c: Fe, w: Word) {
        self.raw += 1;
        self.lc.add_term(w, c);
    }

    pub(crate) fn finish(self, id: String, algebra: &Algebra) -> RelationInstance {
        RelationInstance { id, algebra: algebra.clone(), lhs_minus_rhs: self.lc, raw_terms: self.raw }
    }
}

/// `family[k1=v1,k2=v2]`.
pub fn relation_id(family: &str, keys: &[(&str, i64)]) -> String {
    let inner: Vec<String> = keys.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{family}[{}]", inner.join(","))
}

/// Newline-delimited JSON dump of a relation list.
pub fn dump_relations(rels: &[RelationInstance]) -> String {
    let mut out = String::new();
    for r in rels {
        out.push_str(&r.to_json().to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_round_trip() {
        for s in ["X+[1,-2]", "X-[2,0]", "H[1,3]", "K[1]", "K^-1[2]", "Psi+[1,4]", "Psi-[1,-1]", "E+[0]", "E-[1]", "KC[0]", "KC^-1[1]"] {
            let g: GenSymbol = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert!("H[1,0]".parse::<GenSymbol>().is_err());
        assert!("K[1,2]".parse::<GenSymbol>().is_err());
        assert!("Y[1]".parse::<GenSymbol>().is_err());
    }

    #[test]
    fn lincomb_drops_zero_terms() {
        let x = LinComb::symbol(GenSymbol::x(1, 1, 0));
        assert!(x.sub(&x).is_zero());
        assert!(LinComb::symbol(GenSymbol::psi(1, 1, -1)).is_zero());
        assert!(LinComb::symbol(GenSymbol::psi(-1, 1, 2)).is_zero());
        assert!(x.scale(&Fe::zero()).is_zero());
    }

    #[test]
    fn algebra_tags() {
        for a in [Algebra::Sl3Tau, Algebra::Sl2(1), Algebra::Sl2(3), Algebra::Chevalley("a2_2".into()), Algebra::Drinfeld("d4_3".into())] {
            assert_eq!(a.to_string().parse::<Algebra>().unwrap(), a);
        }
    }
}
