//! Exact computations with twisted quantum affine algebras: relation
//! instances, explicit matrix representations, coproducts on tensor products
//! and Drinfeld polynomials.

pub mod arith;
pub mod diagram;
pub mod drinfeld;
pub mod hopf_tensor;
pub mod presentations;
pub mod repcore;
pub mod report;
