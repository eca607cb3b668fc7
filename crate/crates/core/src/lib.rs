//! Exact symbolic calculus for meromorphic germs at zero with linear poles.
//!
//! A germ is a finite sum of fractions `p / (L_1^{m_1} ... L_r^{m_r})` where `p` is a
//! polynomial with rational coefficients and the `L_i` are rational linear forms.
//! For an inner product `Q` on the variable space the germs split as a direct sum of
//! holomorphic germs and polar germs; [`splitq::decompose`] computes that splitting
//! and [`splitq::pi_q`] the induced projection. The [`evaluators`] module builds the
//! minimal subtraction evaluator `ev_0 ∘ π_Q` and Speer's iterated evaluators on top.
//!
//! Everything is exact: scalars are arbitrary precision rationals and no floating point
//! enters the algebra (the sampled sup-norm helpers in [`appendix`] are the one
//! numeric exception).

pub mod appendix;
pub mod config;
mod error;
pub mod evaluators;
pub mod germs;
pub mod qlinalg;
mod rat;
pub mod splitq;

pub use error::{Error, Result};
pub use germs::{Germ, GermTerm, GeneratingSetTag, LinearForm, Poly};
pub use qlinalg::{InnerProductFamily, MatQ, Subspace};
pub use rat::{parse_rat, rat, Rat};
pub use splitq::{Decomposition, PolarTerm};
