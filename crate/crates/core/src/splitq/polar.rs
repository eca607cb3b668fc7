use std::fmt;

use crate::germs::{poly_dep_subspace, render_denominator, Denominator, Germ, GermTerm, LinearForm, Poly};
use crate::qlinalg::{InnerProductFamily, Subspace};
use crate::{Error, Result};

use super::forms_independent;

/// A certified polar term `h / Π L_i^{m_i}`: the forms `L_i` are independent and
/// `Dep(h)` is `Q*`-orthogonal to their span.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolarTerm {
    num: Poly,
    den: Denominator,
}

pub(super) fn certify(num: &Poly, den: &Denominator, q: &InnerProductFamily) -> Result<()> {
    if den.is_empty() {
        return Err(Error::PolarCertificate("empty denominator".into()));
    }
    if !forms_independent(den) {
        return Err(Error::PolarCertificate("denominator forms are linearly dependent".into()));
    }
    let k = num.nvars();
    let span = Subspace::span(k, den.iter().map(|(l, _)| l.to_rats()).collect())?;
    if !q.subspaces_orthogonal(&poly_dep_subspace(num), &span)? {
        return Err(Error::PolarCertificate(format!(
            "Dep({num}) is not orthogonal to the denominator forms {}",
            render_denominator(den, "*")
        )));
    }
    Ok(())
}

impl PolarTerm {
    /// Builds the term after checking its certificate against `q`.
    pub fn new(num: Poly, den: Denominator, q: &InnerProductFamily) -> Result<Self> {
        certify(&num, &den, q)?;
        Ok(PolarTerm { num, den })
    }

    pub(crate) fn new_unchecked(num: Poly, den: Denominator) -> Self {
        PolarTerm { num, den }
    }

    pub(crate) fn into_parts(self) -> (Poly, Denominator) {
        (self.num, self.den)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Denominator {
        &self.den
    }

    /// Generators of the supporting cone: the distinct denominator forms in canonical order.
    pub fn supporting_cone(&self) -> Vec<LinearForm> {
        self.den.iter().map(|(l, _)| l.clone()).collect()
    }

    pub fn certify(&self, q: &InnerProductFamily) -> Result<()> {
        certify(&self.num, &self.den, q)
    }

    pub fn to_term(&self) -> GermTerm {
        GermTerm::new(self.num.clone(), self.den.iter().cloned()).expect("consistent dimension")
    }

    pub fn to_germ(&self) -> Germ {
        Germ::from_term(self.to_term())
    }
}

impl fmt::Display for PolarTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

impl fmt::Debug for PolarTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolarTerm({self})")
    }
}

/// `f = holomorphic + Σ polar` for the family `q`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    holomorphic: Poly,
    polar: Vec<PolarTerm>,
    q: InnerProductFamily,
}

impl Decomposition {
    pub(crate) fn new(holomorphic: Poly, polar: Vec<PolarTerm>, q: InnerProductFamily) -> Self {
        Decomposition { holomorphic, polar, q }
    }

    pub fn holomorphic(&self) -> &Poly {
        &self.holomorphic
    }

    pub fn polar(&self) -> &[PolarTerm] {
        &self.polar
    }

    pub fn q(&self) -> &InnerProductFamily {
        &self.q
    }

    pub fn nvars(&self) -> usize {
        self.holomorphic.nvars()
    }

    pub fn polar_germ(&self) -> Germ {
        let k = self.nvars();
        Germ::from_terms(k, self.polar.iter().map(PolarTerm::to_term)).expect("consistent dimension")
    }

    /// The holomorphic part plus every polar term, as one germ.
    pub fn to_germ(&self) -> Germ {
        &Germ::from_poly(self.holomorphic.clone()) + &self.polar_germ()
    }

    /// Re-checks every polar certificate.
    pub fn verify(&self) -> Result<()> {
        self.polar.iter().try_for_each(|p| p.certify(&self.q))
    }
}

/// Generators of the supporting cone of a polar term.
pub fn supporting_cone(t: &PolarTerm) -> Vec<LinearForm> {
    t.supporting_cone()
}
