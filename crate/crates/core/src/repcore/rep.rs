use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use super::RepError;
use crate::arith::{parse_family_expr, Expr, Fe, Matrix, Var};
use crate::diagram::TwistedDiagram;
use crate::presentations::{phi_image, target_algebra, Algebra, GenKind, GenSymbol, LinComb};

/// Degrees at which a family is nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Degrees {
    #[default]
    All,
    Positive,
    Negative,
    Nonzero,
    Zero,
    Nonnegative,
    Nonpositive,
}

impl Degrees {
    pub fn contains(self, k: i64) -> bool {
        match self {
            Degrees::All => true,
            Degrees::Positive => k > 0,
            Degrees::Negative => k < 0,
            Degrees::Nonzero => k != 0,
            Degrees::Zero => k == 0,
            Degrees::Nonnegative => k >= 0,
            Degrees::Nonpositive => k <= 0,
        }
    }
}

/// One generator family in a representation file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenEntry {
    pub gen: String,
    pub node: u32,
    #[serde(default)]
    pub degrees: Degrees,
    /// Row-major entries; `k` stands for the degree.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub name: String,
    pub algebra: String,
    pub dim: usize,
    #[serde(default)]
    pub parameters: Vec<String>,
    pub generators: Vec<GenEntry>,
}

#[derive(Clone, Debug)]
struct Family {
    degrees: Degrees,
    entries: Vec<Expr>,
}

#[derive(Clone, Debug)]
enum Source {
    Families(BTreeMap<(GenKind, u32), Family>),
    Pullback { base: Arc<MatrixRep>, diag: Box<TwistedDiagram>, node: u32 },
}

/// A finite-dimensional representation, given by closed-form families in the
/// degree or as the pullback of another representation along φ_i.
#[derive(Debug)]
pub struct MatrixRep {
    pub name: String,
    pub algebra: Algebra,
    dim: usize,
    parameters: Vec<Var>,
    source: Source,
    bindings: Vec<(Var, Fe)>,
    overrides: BTreeMap<GenSymbol, Matrix>,
    cache: RwLock<HashMap<GenSymbol, Arc<Matrix>>>,
}

impl Clone for MatrixRep {
    fn clone(&self) -> MatrixRep {
        MatrixRep {
            name: self.name.clone(),
            algebra: self.algebra.clone(),
            dim: self.dim,
            parameters: self.parameters.clone(),
            source: self.source.clone(),
            bindings: self.bindings.clone(),
            overrides: self.overrides.clone(),
            cache: RwLock::new(HashMap::new()),
        }
    }
}

pub const BUNDLED_REPS: &[(&str, &str)] = &[
    ("Va", include_str!("../../data/reps/va.json")),
    ("Va-a2_2", include_str!("../../data/reps/va_drinfeld_a2_2.json")),
    ("fixed-a3_2", include_str!("../../data/reps/fixed_node_a3_2.json")),
];

/// `V_a`; `None` keeps `a` symbolic.
pub fn build_va(a: Option<&Fe>) -> Result<MatrixRep, RepError> {
    let rep = MatrixRep::bundled("Va").expect("bundled V_a");
    match a {
        None => Ok(rep),
        Some(v) => rep.with_parameter("a", v),
    }
}

impl MatrixRep {
    pub fn from_file(f: &RepFile) -> Result<MatrixRep, RepError> {
        let algebra: Algebra = f.algebra.parse().map_err(RepError::Parse)?;
        if f.dim == 0 {
            return Err(RepError::Shape("dim must be positive".into()));
        }
        let mut parameters = Vec::new();
        for p in &f.parameters {
            if !Var::is_valid_name(p) || p == "q" || p == "k" {
                return Err(RepError::Parse(format!("bad parameter name {p:?}")));
            }
            parameters.push(Var::new(p));
        }
        let mut families = BTreeMap::new();
        for g in &f.generators {
            let kind = GenKind::from_tag(&g.gen).ok_or_else(|| RepError::Parse(format!("unknown generator {:?}", g.gen)))?;
            if kind.is_chevalley() {
                return Err(RepError::Parse(format!("{} families are derived, not stored", g.gen)));
            }
            if g.matrix.len() != f.dim || g.matrix.iter().any(|r| r.len() != f.dim) {
                return Err(RepError::Shape(format!("{}[{}] is not {}x{}", g.gen, g.node, f.dim, f.dim)));
            }
            let mut entries = Vec::with_capacity(f.dim * f.dim);
            for row in &g.matrix {
                for s in row {
                    let e = parse_family_expr(s).map_err(|e| RepError::Parse(format!("{}[{}] entry {s:?}: {e}", g.gen, g.node)))?;
                    entries.push(e);
                }
            }
            if families.insert((kind, g.node), Family { degrees: g.degrees, entries }).is_some() {
                return Err(RepError::Parse(format!("{}[{}] given twice", g.gen, g.node)));
            }
        }
        Ok(MatrixRep {
            name: f.name.clone(),
            algebra,
            dim: f.dim,
            parameters,
            source: Source::Families(families),
            bindings: Vec::new(),
            overrides: BTreeMap::new(),
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn from_json(text: &str) -> Result<MatrixRep, RepError> {
        let f: RepFile = serde_json::from_str(text).map_err(|e| RepError::Parse(e.to_string()))?;
        MatrixRep::from_file(&f)
    }

    pub fn load(path: &Path) -> Result<MatrixRep, RepError> {
        let text = std::fs::read_to_string(path).map_err(|e| RepError::Parse(format!("{}: {e}", path.display())))?;
        MatrixRep::from_json(&text)
    }

    pub fn bundled(name: &str) -> Option<MatrixRep> {
        let (_, text) = BUNDLED_REPS.iter().find(|(n, _)| *n == name)?;
        Some(MatrixRep::from_json(text).expect("bundled representation is valid"))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parameters(&self) -> &[Var] {
        &self.parameters
    }

    /// Specializes (or renames) a parameter.
    pub fn with_parameter(&self, name: &str, value: &Fe) -> Result<MatrixRep, RepError> {
        let v = Var::new(name);
        if !self.parameters.contains(&v) {
            return Err(RepError::UnknownParameter(name.to_string()));
        }
        if value.is_zero() {
            return Err(RepError::ZeroParameter(name.to_string()));
        }
        let mut out = self.clone();
        out.bindings.retain(|(w, _)| *w != v);
        out.bindings.push((v, value.clone()));
        Ok(out)
    }

    /// Replaces the image of one symbol; used to build counterexamples.
    pub fn with_override(&self, g: GenSymbol, m: Matrix) -> MatrixRep {
        let mut out = self.clone();
        out.overrides.insert(g, m);
        out
    }

    /// Nodes with at least one generator family.
    pub fn nodes(&self) -> Vec<u32> {
        match &self.source {
            Source::Families(f) => f.keys().map(|(_, n)| *n).collect::<BTreeSet<_>>().into_iter().collect(),
            Source::Pullback { .. } => vec![1],
        }
    }

    pub fn has_family(&self, kind: GenKind, node: u32) -> bool {
        match &self.source {
            Source::Families(f) => f.contains_key(&(kind, node)),
            Source::Pullback { .. } => node == 1 && !kind.is_chevalley(),
        }
    }

    fn unknown(&self, g: &GenSymbol) -> RepError {
        RepError::UnknownSymbol { symbol: g.to_string(), algebra: self.algebra.to_string() }
    }

    fn bind(&self, x: Fe) -> Result<Fe, RepError> {
        let mut x = x;
        for (v, val) in &self.bindings {
            x = x.substitute(*v, val)?;
        }
        Ok(x)
    }

    fn eval_family(&self, fam: &Family, k: i64) -> Result<Matrix, RepError> {
        if !fam.degrees.contains(k) {
            return Ok(Matrix::zeros(self.dim, self.dim));
        }
        let mut data = Vec::with_capacity(fam.entries.len());
        for e in &fam.entries {
            data.push(if e.is_zero_literal() { Fe::zero() } else { self.bind(e.eval(Some(k))?)? });
        }
        Ok(Matrix::from_rows(data.chunks(self.dim).map(|r| r.to_vec()).collect()))
    }

    fn compute(&self, g: &GenSymbol) -> Result<Matrix, RepError> {
        if let Some(m) = self.overrides.get(g) {
            return Ok(m.clone());
        }
        if g.kind == GenKind::H && g.degree == 0 {
            return Err(self.unknown(g));
        }
        if g.is_zero_symbol() {
            return Ok(Matrix::zeros(self.dim, self.dim));
        }
        match &self.source {
            Source::Pullback { base, diag, node } => {
                if g.node != 1 {
                    return Err(self.unknown(g));
                }
                let img = phi_image(diag, *node, g)?;
                base.eval(&img)
            }
            Source::Families(fams) => {
                let direct = fams.get(&(g.kind, g.node));
                match (g.kind, direct) {
                    (GenKind::PsiPlus, _) if g.degree == 0 => Ok((*self.symbol(&GenSymbol::k(g.node))?).clone()),
                    (GenKind::PsiMinus, _) if g.degree == 0 => Ok((*self.symbol(&GenSymbol::kinv(g.node))?).clone()),
                    (_, Some(f)) => self.eval_family(f, g.degree),
                    (GenKind::KInv, None) => Ok(self.symbol(&GenSymbol::k(g.node))?.inverse()?),
                    _ => Err(self.unknown(g)),
                }
            }
        }
    }

    /// Image of a single generator, cached.
    pub fn symbol(&self, g: &GenSymbol) -> Result<Arc<Matrix>, RepError> {
        if let Some(m) = self.cache.read().expect("cache lock").get(g) {
            return Ok(m.clone());
        }
        let m = Arc::new(self.compute(g)?);
        self.cache.write().expect("cache lock").insert(*g, m.clone());
        Ok(m)
    }

    pub fn eval_word(&self, w: &[GenSymbol]) -> Result<Matrix, RepError> {
        let mut acc: Option<Matrix> = None;
        for g in w {
            let m = self.symbol(g)?;
            acc = Some(match acc {
                None => (*m).clone(),
                Some(a) => a.mul(&m),
            });
        }
        Ok(acc.unwrap_or_else(|| Matrix::identity(self.dim)))
    }

    pub fn eval(&self, lc: &LinComb) -> Result<Matrix, RepError> {
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (w, c) in lc.terms() {
            let m = self.eval_word(w)?;
            out.add_scaled(&m, c);
        }
        Ok(out)
    }

    /// Pullback along φ_i: a representation of the algebra φ_i starts from.
    pub fn pullback_of(base: &MatrixRep, diag: &TwistedDiagram, i: u32) -> MatrixRep {
        MatrixRep {
            name: format!("phi_{i}^*({})", base.name),
            algebra: target_algebra(diag, i),
            dim: base.dim,
            parameters: Vec::new(),
            source: Source::Pullback { base: Arc::new(base.clone()), diag: Box::new(diag.clone()), node: i },
            bindings: Vec::new(),
            overrides: BTreeMap::new(),
            cache: RwLock::new(HashMap::new()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn va_generators() {
        let va = build_va(None).unwrap();
        let two = Fe::q() + Fe::q().inv();
        let x0 = va.symbol(&GenSymbol::x(1, 1, 0)).unwrap();
        let want = Matrix::unit(3, 0, 1).add(&Matrix::unit(3, 1, 2)).scale(&two);
        assert_eq!(*x0, want);
        let k = va.symbol(&GenSymbol::k(1)).unwrap();
        assert_eq!(*k, Matrix::diag(vec![Fe::q_pow(2), Fe::one(), Fe::q_pow(-2)]));
        assert_eq!(*va.symbol(&GenSymbol::psi(1, 1, 0)).unwrap(), *k);
        assert!(va.symbol(&GenSymbol::psi(1, 1, -2)).unwrap().is_zero());
        assert!(va.symbol(&GenSymbol::h(2, 1)).is_err());
    }

    #[test]
    fn zero_parameter_rejected() {
        assert_eq!(build_va(Some(&Fe::zero())).unwrap_err(), RepError::ZeroParameter("a".into()));
        assert!(build_va(Some(&Fe::ratio(3, 2))).is_ok());
    }

    #[test]
    fn empty_word_is_identity() {
        let va = build_va(None).unwrap();
        assert!(va.eval_word(&[]).unwrap().is_identity());
    }
}
