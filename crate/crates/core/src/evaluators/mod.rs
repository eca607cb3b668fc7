//! Evaluators on germs: evaluation at a regular point, the minimal subtraction
//! evaluator `ev_0 ∘ π_Q`, the one-variable regularised evaluations `e_j` and Speer's
//! iterated evaluators `E^σ`, `E^F`, together with the two relations the evaluators
//! are multiplicative over.

mod finite;
mod speer;

use crate::germs::{dep_subspace, supp, to_polynomial, Germ};
use crate::qlinalg::InnerProductFamily;
use crate::splitq::pi_q;
use crate::{Error, Rat, Result};

pub use finite::finite_part;
pub use speer::{check_permutation, speer_f, speer_f_with, speer_sigma, SpeerOptions};

/// An evaluation scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Minimal subtraction for the given inner product family.
    Ms(InnerProductFamily),
    /// Speer's evaluator along a permutation of `1..=k`.
    SpeerSigma(Vec<usize>),
    /// The permutation average of Speer's evaluators.
    SpeerF,
}

/// Value at zero of a germ that is holomorphic there.
pub fn ev0(f: &Germ) -> Result<Rat> {
    to_polynomial(f).map(|p| p.constant_term()).ok_or(Error::NotHolomorphic)
}

/// `E^MS_Q(f) = ev_0(π_Q(f))`.
pub fn eval_ms(f: &Germ, q: &InnerProductFamily) -> Rat {
    pi_q(f, q).constant_term()
}

pub fn evaluate(f: &Germ, scheme: &Scheme, opts: SpeerOptions) -> Result<Rat> {
    match scheme {
        Scheme::Ms(q) => Ok(eval_ms(f, q)),
        Scheme::SpeerSigma(sigma) => speer_sigma(f, sigma),
        Scheme::SpeerF => speer_f_with(f, opts),
    }
}

/// `f1 ⊥^Q f2`: the dependence subspaces are orthogonal for the dual inner product.
pub fn orth_q(f1: &Germ, f2: &Germ, q: &InnerProductFamily) -> bool {
    let k = f1.nvars().max(f2.nvars());
    let d1 = dep_subspace(&f1.embed(k).expect("k is the larger dimension"));
    let d2 = dep_subspace(&f2.embed(k).expect("k is the larger dimension"));
    q.subspaces_orthogonal(&d1, &d2).expect("common ambient dimension")
}

/// `f1 ⊤ f2`: no variable is in both supports.
pub fn disjoint_support(f1: &Germ, f2: &Germ) -> bool {
    let s2 = supp(f2);
    supp(f1).iter().all(|i| !s2.contains(i))
}
