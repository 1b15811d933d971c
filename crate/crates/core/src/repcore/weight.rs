use std::collections::BTreeMap;

use super::{MatrixRep, RepError};
use crate::arith::{Fe, Matrix, TruncatedSeries, Var};
use crate::diagram::TwistedDiagram;
use crate::presentations::{GenKind, GenSymbol};
use crate::report::CheckRecord;

/// Eigenvalues on the highest-weight vector for one node. `psi_minus` holds
/// `ψ^-_{-n}` as the coefficient of `u^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeWeight {
    pub k: Fe,
    pub psi_plus: TruncatedSeries,
    pub psi_minus: TruncatedSeries,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HighestWeightData {
    pub vector: Vec<Fe>,
    pub nodes: BTreeMap<u32, NodeWeight>,
}

impl HighestWeightData {
    pub fn node(&self, i: u32) -> Option<&NodeWeight> {
        self.nodes.get(&i)
    }
}

fn eigenvalue(m: &Matrix, v: &[Fe], what: &GenSymbol) -> Result<Fe, RepError> {
    let mv = m.mul_vec(v);
    let p = v.iter().position(|x| !x.is_zero()).expect("nonzero vector");
    let lambda = mv[p].checked_div(&v[p])?;
    if mv.iter().zip(v).all(|(a, b)| (a - &(&lambda * b)).is_zero()) {
        Ok(lambda)
    } else {
        Err(RepError::NotEigen(what.to_string()))
    }
}

/// Finds the vector killed by every `X^+_{i,k}`, `|k| <= window`, and reads
/// off K and Ψ^± eigenvalues through `order`. The joint kernel must be one
/// dimensional.
pub fn find_highest_weight(rep: &MatrixRep, window: i64, order: usize) -> Result<HighestWeightData, RepError> {
    let nodes: Vec<u32> = rep.nodes().into_iter().filter(|&i| rep.has_family(GenKind::XPlus, i)).collect();
    let mut blocks = Vec::new();
    for &i in &nodes {
        for k in -window..=window {
            blocks.push((*rep.symbol(&GenSymbol::x(1, i, k))?).clone());
        }
    }
    let kernel = if blocks.is_empty() { Matrix::identity(rep.dim()).nullspace() } else { Matrix::vstack(&blocks).nullspace() };
    let vector = match kernel.len() {
        0 => return Err(RepError::NoHighestWeight),
        1 => kernel.into_iter().next().expect("one vector"),
        dim => {
            let basis = kernel.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
            return Err(RepError::AmbiguousHighestWeight { dim, basis });
        }
    };
    let mut out = BTreeMap::new();
    for &i in &nodes {
        let kg = GenSymbol::k(i);
        let k = eigenvalue(&*rep.symbol(&kg)?, &vector, &kg)?;
        let mut plus = Vec::with_capacity(order + 1);
        let mut minus = Vec::with_capacity(order + 1);
        for n in 0..=order as i64 {
            let g = GenSymbol::psi(1, i, n);
            plus.push(eigenvalue(&*rep.symbol(&g)?, &vector, &g)?);
            let g = GenSymbol::psi(-1, i, -n);
            minus.push(eigenvalue(&*rep.symbol(&g)?, &vector, &g)?);
        }
        if !(&plus[0] * &minus[0]).is_one() {
            return Err(RepError::NotEigen(format!("Psi+[{i},0] Psi-[{i},0] = 1 fails")));
        }
        out.insert(i, NodeWeight { k, psi_plus: TruncatedSeries::new(Var::U, order, plus), psi_minus: TruncatedSeries::new(Var::U, order, minus) });
    }
    Ok(HighestWeightData { vector, nodes: out })
}

/// `φ_i^* base`.
pub fn pullback(base: &MatrixRep, diag: &TwistedDiagram, i: u32) -> MatrixRep {
    MatrixRep::pullback_of(base, diag, i)
}

/// `ψ^±_{σ(i),±k} = ω^{±k} ψ^±_{i,±k}` on the highest weight, for each pair
/// of nodes present in `hw`.
pub fn sigma_equivariance(hw: &HighestWeightData, diag: &TwistedDiagram) -> Vec<CheckRecord> {
    let omega = diag.omega();
    let mut out = Vec::new();
    for (&i, w) in &hw.nodes {
        let j = diag.sigma(i);
        let Some(wj) = hw.nodes.get(&j) else { continue };
        if j == i {
            continue;
        }
        for n in 0..=w.psi_plus.order() {
            let e = n as i64;
            let plus = wj.psi_plus.coeff(n) - &(&omega.pow(e) * w.psi_plus.coeff(n));
            let minus = wj.psi_minus.coeff(n) - &(&omega.pow(-e) * w.psi_minus.coeff(n));
            out.push(CheckRecord::new(format!("sigma.psi+[i={i},k={e}]"), "sigma-equivariance", plus.is_zero(), if plus.is_zero() { String::new() } else { plus.to_string() }));
            out.push(CheckRecord::new(format!("sigma.psi-[i={i},k={}]", -e), "sigma-equivariance", minus.is_zero(), if minus.is_zero() { String::new() } else { minus.to_string() }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcore::build_va;

    #[test]
    fn va_highest_weight() {
        let va = build_va(None).unwrap();
        let hw = find_highest_weight(&va, 2, 3).unwrap();
        assert!(hw.vector[1].is_zero() && hw.vector[2].is_zero());
        let w = hw.node(1).unwrap();
        assert_eq!(w.k, Fe::q_pow(2));
        let a = Fe::named("a");
        assert_eq!(*w.psi_plus.coeff(1), &(&Fe::q_pow(2) - &Fe::q_pow(-2)) * &a);
    }

    #[test]
    fn a2_2_drinfeld_rep_is_sigma_equivariant() {
        let rep = MatrixRep::bundled("Va-a2_2").unwrap();
        let diag = TwistedDiagram::bundled("a2_2").unwrap();
        let hw = find_highest_weight(&rep, 1, 3).unwrap();
        assert!(sigma_equivariance(&hw, &diag).iter().all(|r| r.pass));
    }
}
