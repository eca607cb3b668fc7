use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::form::LinearForm;
use super::germ::{Germ, GermTerm};
use super::poly::{Monomial, Poly};
use crate::qlinalg::{MatQ, Subspace};
use crate::rat::int;
use crate::{Error, Rat, Result};

/// `D_v f`, by the quotient rule term by term.
pub fn directional_derivative(f: &Germ, v: &[Rat]) -> Result<Germ> {
    let k = f.nvars();
    if v.len() != k {
        return Err(Error::DimensionMismatch { expected: k, found: v.len() });
    }
    let mut out = Vec::new();
    for t in f.terms() {
        out.push(t.with_numerator(t.numerator().directional_derivative(v)?));
        for (l, m) in t.denominator() {
            let lv = l.eval(v);
            if lv.is_zero() {
                continue;
            }
            let num = t.numerator().scale(&(-lv * int((*m).into())));
            let factors = t.denominator().iter().cloned().chain([(l.clone(), 1)]);
            out.push(GermTerm::new(num, factors)?);
        }
    }
    Germ::from_terms(k, out)
}

/// `Indep(f) = {v : D_v f = 0}`.
///
/// With `f = p / Π L^{d_L}` and `R = Π L`, `D_v f = 0` is equivalent to the polynomial
/// identity `(D_v p)·R − p·Σ_L d_L L(v)·R/L = 0`, which is linear in `v`; its
/// coefficient matrix is assembled per monomial and the kernel taken exactly. The
/// identity does not need `p` and the denominator to be coprime.
pub fn indep_subspace(f: &Germ) -> Subspace {
    let k = f.nvars();
    let (p, den) = f.as_single_fraction();
    if p.is_zero() {
        return Subspace::full(k);
    }
    let forms: Vec<Poly> = den.iter().map(|(l, _)| Poly::from_form(l)).collect();
    let radical = forms.iter().fold(Poly::one(k), |acc, l| &acc * l);
    // R / L for each form.
    let cofactors: Vec<Poly> = (0..forms.len())
        .map(|i| {
            forms
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Poly::one(k), |acc, (_, l)| &acc * l)
        })
        .collect();
    let columns: Vec<Poly> = (0..k)
        .map(|i| {
            let mut g = &p.derivative(i) * &radical;
            for ((l, d), cof) in den.iter().zip(&cofactors) {
                let c = l.coeff(i);
                if !c.is_zero() {
                    let scale = Rat::from_integer(c * BigInt::from(*d));
                    g = &g - &(&p * cof).scale(&scale);
                }
            }
            g
        })
        .collect();
    kernel_of_columns(k, &columns)
}

/// Kernel of `v ↦ Σ v_i columns[i]` as a map into polynomials.
fn kernel_of_columns(k: usize, columns: &[Poly]) -> Subspace {
    let mut rows: BTreeMap<&Monomial, Vec<Rat>> = BTreeMap::new();
    for (i, col) in columns.iter().enumerate() {
        for (m, c) in col.terms() {
            rows.entry(m).or_insert_with(|| vec![Rat::zero(); k])[i] = c.clone();
        }
    }
    if rows.is_empty() {
        return Subspace::full(k);
    }
    let m = MatQ::with_cols(k, rows.into_values().collect()).expect("rows of width k");
    Subspace::kernel(&m)
}

/// `Indep` of a polynomial: the common kernel of its partial derivatives.
pub fn poly_indep_subspace(p: &Poly) -> Subspace {
    let k = p.nvars();
    let columns: Vec<Poly> = (0..k).map(|i| p.derivative(i)).collect();
    kernel_of_columns(k, &columns)
}

/// `Dep` of a polynomial, the annihilator of its independence subspace.
pub fn poly_dep_subspace(p: &Poly) -> Subspace {
    poly_indep_subspace(p).annihilator()
}

/// `Dep(f) = {L : L|_{Indep(f)} = 0}`, a subspace of covectors.
pub fn dep_subspace(f: &Germ) -> Subspace {
    indep_subspace(f).annihilator()
}

/// Indices `i` (1-based, as in `z_i`) with `e_i ∉ Indep(f)`: the variables `f`
/// genuinely depends on.
pub fn supp(f: &Germ) -> Vec<usize> {
    let indep = indep_subspace(f);
    let k = f.nvars();
    (0..k)
        .filter(|&i| {
            let mut e = vec![Rat::zero(); k];
            e[i] = Rat::one();
            !indep.contains(&e)
        })
        .map(|i| i + 1)
        .collect()
}

/// The polynomial equal to `f`, when `f` is holomorphic at zero.
///
/// The single-fraction numerator is divided by each denominator factor in turn; a
/// linear form divides a polynomial exactly when the restriction of the polynomial to
/// the kernel of the form vanishes.
pub fn to_polynomial(f: &Germ) -> Option<Poly> {
    if f.is_polynomial() {
        return Some(f.polynomial_part());
    }
    let (mut p, den) = f.as_single_fraction();
    for (l, m) in &den {
        for _ in 0..*m {
            p = p.div_linear(l)?;
        }
    }
    Some(p)
}

pub fn is_holomorphic(f: &Germ) -> bool {
    to_polynomial(f).is_some()
}

/// Prescribed families of pole forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum GeneratingSetTag {
    /// Every nonzero rational linear form.
    #[default]
    Free,
    /// `Σ_{i∈I} z_i` for nonempty `I ⊆ {1..k}`.
    FeynmanF,
    /// `z_1 + ... + z_j` for `1 ≤ j ≤ k`.
    ChenC,
}

impl GeneratingSetTag {
    pub fn contains(self, form: &LinearForm) -> bool {
        let zero_one = form.coeffs().iter().all(|c| c.is_zero() || c.is_one());
        match self {
            GeneratingSetTag::Free => true,
            GeneratingSetTag::FeynmanF => zero_one,
            GeneratingSetTag::ChenC => {
                let ones = form.coeffs().iter().take_while(|c| c.is_one()).count();
                zero_one && form.coeffs()[ones..].iter().all(Zero::is_zero)
            }
        }
    }
}

impl FromStr for GeneratingSetTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" | "Free" => Ok(GeneratingSetTag::Free),
            "F" | "feynman" => Ok(GeneratingSetTag::FeynmanF),
            "C" | "chen" => Ok(GeneratingSetTag::ChenC),
            other => Err(Error::Config(format!("unknown generating set {other:?} (expected free, F or C)"))),
        }
    }
}

impl fmt::Display for GeneratingSetTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratingSetTag::Free => "free",
            GeneratingSetTag::FeynmanF => "F",
            GeneratingSetTag::ChenC => "C",
        })
    }
}

/// Every denominator form of every term lies in the tagged generating set.
pub fn validate_poles(f: &Germ, tag: GeneratingSetTag) -> bool {
    f.terms().iter().flat_map(GermTerm::forms).all(|l| tag.contains(l))
}
