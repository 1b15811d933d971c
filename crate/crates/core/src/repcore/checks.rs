use rayon::prelude::*;

use super::{MatrixRep, RepError};
use crate::arith::{Fe, Matrix};
use crate::diagram::TwistedDiagram;
use crate::presentations::{Algebra, GenSymbol, RelationInstance};
use crate::report::{CheckRecord, Report};

/// Printed with every relation report: passing in one representation is a
/// necessary condition only.
pub const RELATION_SCOPE: &str =
    "relations are checked in this representation only; it is not claimed to be faithful, so passing does not prove the relations hold in the algebra";

/// Checks every relation in `rep`, in parallel. Records keep the input order.
pub fn check_relations(rep: &MatrixRep, rels: &[RelationInstance]) -> Result<Report, RepError> {
    if let Some(r) = rels.iter().find(|r| r.algebra != rep.algebra) {
        return Err(RepError::AlgebraMismatch {
            id: r.id.clone(),
            relation: r.algebra.to_string(),
            rep: rep.algebra.to_string(),
        });
    }
    let records: Vec<Result<CheckRecord, RepError>> = rels
        .par_iter()
        .map(|r| {
            let m = rep.eval(&r.lhs_minus_rhs)?;
            Ok(CheckRecord::new(r.id.clone(), r.family(), m.is_zero(), m.residual_summary()))
        })
        .collect();
    let mut report = Report::new(format!("relations of {} in {}", rep.algebra, rep.name))
        .header("algebra", &rep.algebra)
        .header("representation", &rep.name)
        .header("dim", rep.dim())
        .header("relations", rels.len());
    for r in records {
        report.push(r?);
    }
    report.notes.push(RELATION_SCOPE.to_string());
    Ok(report)
}

/// The `q` that enters `Ψ^±(u) = K^{±1} exp(±(q_* − q_*^{-1}) Σ H_{±k} u^{±k})`
/// for `node`.
pub fn series_base(algebra: &Algebra, node: u32) -> Result<Fe, RepError> {
    Ok(match algebra {
        Algebra::Sl3Tau | Algebra::Chevalley(_) => Fe::q(),
        Algebra::Sl2(e) => Fe::q_pow(*e),
        Algebra::Drinfeld(name) => {
            let diag = TwistedDiagram::bundled(name).ok_or_else(|| RepError::Parse(format!("unknown diagram {name}")))?;
            diag.q_node(diag.orbit_of(node))
        }
    })
}

/// `exp(Σ_{j≥1} S_j u^j)` for commuting matrices, through order `order`:
/// `n F_n = Σ_{j=1}^n j S_j F_{n−j}`.
fn matrix_exp(s: &[Matrix], dim: usize, order: usize) -> Vec<Matrix> {
    let mut f = vec![Matrix::identity(dim)];
    for n in 1..=order {
        let mut acc = Matrix::zeros(dim, dim);
        for j in 1..=n {
            acc.add_scaled(&s[j].mul(&f[n - j]), &Fe::from_int(j as i64));
        }
        f.push(acc.scale(&Fe::ratio(1, n as i64)));
    }
    f
}

/// Checks that the Ψ^± families agree with the exponential of the H
/// families through `order`. The H matrices must commute first; if they do
/// not, only the commutation failures are reported.
pub fn psi_consistency(rep: &MatrixRep, node: u32, order: usize) -> Result<Report, RepError> {
    let base = series_base(&rep.algebra, node)?;
    let c = &base - &base.inv();
    let mut report = Report::new(format!("psi/H consistency for node {node} of {}", rep.name))
        .header("order", order)
        .header("node", node);
    let degrees: Vec<i64> = (1..=order as i64).flat_map(|k| [k, -k]).collect();
    let hs: Vec<(i64, std::sync::Arc<Matrix>)> =
        degrees.iter().map(|&k| Ok((k, rep.symbol(&GenSymbol::h(node, k))?))).collect::<Result<_, RepError>>()?;
    let mut commute = true;
    for (x, (k, a)) in hs.iter().enumerate() {
        for (l, b) in &hs[x + 1..] {
            let m = a.commutator(b);
            if !m.is_zero() {
                commute = false;
                report.push(CheckRecord::new(format!("psi.commute[k={k},l={l}]"), "h-commute", false, m.residual_summary()));
            }
        }
    }
    if !commute {
        return Ok(report);
    }
    report.push(CheckRecord::new("psi.commute", "h-commute", true, ""));
    let dim = rep.dim();
    for sign in [1i64, -1] {
        let mut s = vec![Matrix::zeros(dim, dim)];
        for j in 1..=order as i64 {
            s.push(rep.symbol(&GenSymbol::h(node, sign * j))?.scale(&(&c * &Fe::from_int(sign))));
        }
        let f = matrix_exp(&s, dim, order);
        let k = if sign > 0 { rep.symbol(&GenSymbol::k(node))? } else { rep.symbol(&GenSymbol::kinv(node))? };
        for (n, fn_) in f.iter().enumerate() {
            let deg = sign * n as i64;
            let want = k.mul(fn_);
            let got = rep.symbol(&GenSymbol::psi(sign, node, deg))?;
            let diff = got.sub(&want);
            let tag = if sign > 0 { "psi+" } else { "psi-" };
            report.push(CheckRecord::new(format!("{tag}[k={deg}]"), "psi-series", diff.is_zero(), diff.residual_summary()));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::sl3tau_relations;
    use crate::repcore::build_va;

    #[test]
    fn va_satisfies_sl3tau_window_2() {
        let va = build_va(None).unwrap();
        let rep = check_relations(&va, &sl3tau_relations(2, 2)).unwrap();
        let bad: Vec<_> = rep.failures().map(|r| r.id.clone()).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn va_psi_consistent() {
        let va = build_va(None).unwrap();
        assert!(psi_consistency(&va, 1, 4).unwrap().passed());
    }

    #[test]
    fn corrupted_x_breaks_hx_not_torus() {
        let va = build_va(None).unwrap();
        let x1 = va.symbol(&GenSymbol::x(1, 1, 1)).unwrap();
        let bad = va.with_override(GenSymbol::x(1, 1, 1), x1.scale(&Fe::q()));
        let rep = check_relations(&bad, &sl3tau_relations(1, 1)).unwrap();
        assert!(rep.failures().any(|r| r.class == "sl3tau.HX+"));
        let torus = ["sl3tau.KKinv", "sl3tau.KinvK", "sl3tau.KH", "sl3tau.HH", "sl3tau.KX+", "sl3tau.KX-"];
        assert!(rep.records.iter().filter(|r| torus.contains(&r.class.as_str())).all(|r| r.pass));
    }
}
