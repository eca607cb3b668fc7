//! Germs with linear poles: linear forms, polynomials, fractions, parsing and the
//! dependence analysis `Dep`/`Indep`/`Supp`.

mod analysis;
mod factor;
mod form;
mod germ;
mod parse;
mod poly;

pub use analysis::{
    dep_subspace, directional_derivative, indep_subspace, is_holomorphic, poly_dep_subspace, poly_indep_subspace,
    supp, to_polynomial, validate_poles, GeneratingSetTag,
};
pub use factor::linear_factors;
pub use form::LinearForm;
pub use germ::{Denominator, Germ, GermTerm};
pub(crate) use germ::render_denominator;
pub use parse::parse;
pub use poly::{Monomial, Poly};
