//! Images of generators under the Chevalley-to-loop isomorphism and under
//! the subalgebra maps φ_i.

use std::collections::BTreeMap;

use super::{Algebra, GenKind, GenSymbol, LinComb, PresentationError, RelationInstance};
use crate::arith::{qint, Fe};
use crate::diagram::{NodeClass, TwistedDiagram};

/// True for the one diagram whose affine-node images are written out
/// explicitly: A2(2), one linked orbit.
fn is_a2_2(diag: &TwistedDiagram) -> bool {
    diag.m == 2 && diag.hat_size() == 2 && diag.nodes().len() == 2 && diag.has_linked_nodes()
}

fn word(c: Fe, w: Vec<GenSymbol>) -> LinComb {
    LinComb::term(c, w)
}

/// Image of one Chevalley generator. For A2(2) the targets are the node-1
/// symbols of the explicit `sl3tau` list; elsewhere only finite nodes
/// (`t >= 1`) have images, through the lowest label of each orbit.
pub fn iso_image(diag: &TwistedDiagram, g: &GenSymbol) -> Result<LinComb, PresentationError> {
    if !g.kind.is_chevalley() {
        return Err(PresentationError::NoImage(g.to_string()));
    }
    let t = g.node as usize;
    if t >= diag.hat_size() {
        return Err(PresentationError::NoImage(g.to_string()));
    }
    if t == 0 {
        if !is_a2_2(diag) {
            return Err(PresentationError::NoAffineImage(diag.name.clone()));
        }
        let (k, ki) = (GenSymbol::k(1), GenSymbol::kinv(1));
        let x = |s: i64, d: i64| GenSymbol::x(s, 1, d);
        let q2 = Fe::q_pow(2);
        return Ok(match g.kind {
            GenKind::EPlus => word(Fe::one(), vec![ki, ki, x(-1, 0), x(-1, 1)])
                .add(&word(-&q2, vec![ki, ki, x(-1, 1), x(-1, 0)])),
            GenKind::EMinus => {
                let c = qint(4, &Fe::q()).pow(-2);
                word(c.clone(), vec![x(1, -1), x(1, 0), k, k]).add(&word(&-&c * &q2.inv(), vec![x(1, 0), x(1, -1), k, k]))
            }
            GenKind::KChev => word(Fe::one(), vec![ki, ki]),
            GenKind::KChevInv => word(Fe::one(), vec![k, k]),
            _ => unreachable!(),
        });
    }
    let rep = diag.orbit_rep(t);
    let p = diag.case_table().get(rep, rep).p;
    Ok(match g.kind {
        GenKind::EPlus => LinComb::symbol(GenSymbol::x(1, rep, 0)),
        GenKind::EMinus => word(Fe::ratio(1, p), vec![GenSymbol::x(-1, rep, 0)]),
        GenKind::KChev => LinComb::symbol(GenSymbol::k(rep)),
        GenKind::KChevInv => LinComb::symbol(GenSymbol::kinv(rep)),
        _ => unreachable!(),
    })
}

/// All images that exist for `diag`, keyed by source symbol.
pub fn iso_images(diag: &TwistedDiagram) -> Result<BTreeMap<GenSymbol, LinComb>, PresentationError> {
    let mut out = BTreeMap::new();
    let first = if is_a2_2(diag) { 0 } else { 1 };
    for t in first..diag.hat_size() {
        for kind in [GenKind::EPlus, GenKind::EMinus, GenKind::KChev, GenKind::KChevInv] {
            let g = GenSymbol::new(kind, t as u32, 0);
            out.insert(g, iso_image(diag, &g)?);
        }
    }
    Ok(out)
}

/// The algebra φ_i starts from.
pub fn target_algebra(diag: &TwistedDiagram, i: u32) -> Algebra {
    match diag.node_class(i) {
        NodeClass::SplitLinked => Algebra::Sl3Tau,
        NodeClass::SplitOrthogonal => Algebra::Sl2(1),
        NodeClass::Fixed => Algebra::Sl2(diag.m),
    }
}

/// φ_i of a generator of `U_i` (symbols on node 1).
pub fn phi_image(diag: &TwistedDiagram, i: u32, g: &GenSymbol) -> Result<LinComb, PresentationError> {
    if g.node != 1 || g.kind.is_chevalley() {
        return Err(PresentationError::NoImage(g.to_string()));
    }
    let class = diag.node_class(i);
    if class != NodeClass::Fixed {
        return Ok(LinComb::symbol(g.with_node(i)));
    }
    let m = diag.m;
    let di = diag.d(diag.orbit_of(i));
    let scale = &(&Fe::q_pow(di) - &Fe::q_pow(-di)) / &(&Fe::q_pow(m) - &Fe::q_pow(-m));
    let target = GenSymbol::new(g.kind, i, g.degree * m);
    Ok(match g.kind {
        GenKind::XPlus => word(Fe::ratio(1, m), vec![target]),
        GenKind::XMinus | GenKind::H => word(scale, vec![target]),
        GenKind::PsiPlus | GenKind::PsiMinus | GenKind::K | GenKind::KInv => LinComb::symbol(target),
        _ => unreachable!(),
    })
}

/// φ_i on every generator of degree in `[-window, window]`.
pub fn phi_images(diag: &TwistedDiagram, i: u32, window: i64) -> BTreeMap<GenSymbol, LinComb> {
    let mut out = BTreeMap::new();
    for kind in [GenKind::K, GenKind::KInv] {
        let g = GenSymbol::new(kind, 1, 0);
        out.insert(g, phi_image(diag, i, &g).expect("node-1 symbol"));
    }
    for k in -window..=window {
        let mut gens = vec![GenSymbol::x(1, 1, k), GenSymbol::x(-1, 1, k)];
        if k != 0 {
            gens.push(GenSymbol::h(1, k));
        }
        if k >= 0 {
            gens.push(GenSymbol::psi(1, 1, k));
        }
        if k <= 0 {
            gens.push(GenSymbol::psi(-1, 1, k));
        }
        for g in gens {
            out.insert(g, phi_image(diag, i, &g).expect("node-1 symbol"));
        }
    }
    out
}

/// Pushes Chevalley relations through `iso_image`. Instances that mention a
/// generator without an image (node 0 outside A2(2)) are returned in the
/// second list, untouched.
pub fn chevalley_via_iso(
    diag: &TwistedDiagram,
    rels: &[RelationInstance],
) -> Result<(Vec<RelationInstance>, Vec<String>), PresentationError> {
    let images = iso_images(diag)?;
    let algebra = if is_a2_2(diag) { Algebra::Sl3Tau } else { Algebra::Drinfeld(diag.name.clone()) };
    let mut mapped = Vec::new();
    let mut skipped = Vec::new();
    for r in rels {
        if r.lhs_minus_rhs.symbols().any(|g| !images.contains_key(g)) {
            skipped.push(r.id.clone());
            continue;
        }
        let lc = r.lhs_minus_rhs.substitute(&|g: &GenSymbol| Ok::<_, PresentationError>(images[g].clone()))?;
        mapped.push(RelationInstance { id: r.id.clone(), algebra: algebra.clone(), lhs_minus_rhs: lc, raw_terms: r.raw_terms });
    }
    Ok((mapped, skipped))
}
