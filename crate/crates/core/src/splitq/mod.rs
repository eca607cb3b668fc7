//! The splitting of germs with linear poles into a holomorphic part and polar terms,
//! and the projection `π_Q` onto the holomorphic part.
//!
//! A term is first rewritten so its denominator forms are independent
//! ([`reduce_independent`]). Its numerator is then expanded in coordinates adapted to
//! the denominator: the forms `ℓ_i = L_i` themselves together with a basis `w` of their
//! `Q*`-orthogonal complement. Monomials divisible by the whole denominator are
//! holomorphic, monomials coprime to it give polar terms `w^β / Π ℓ^{s−α}`, and the
//! mixed ones are fractions over strictly fewer forms, which are split again.

mod polar;
mod reduce;

use std::collections::BTreeMap;

use crate::germs::{Denominator, Germ, GermTerm, Monomial, Poly};
use crate::qlinalg::{find_circuit, InnerProductFamily, MatQ, Subspace};
use crate::{Rat, Result};

pub use polar::{supporting_cone, Decomposition, PolarTerm};
pub use reduce::{reduce_independent, Pivot};

/// Order of the complement basis used for the `w` coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ComplementOrder {
    /// Reduced row echelon rows of the complement.
    #[default]
    Rref,
    Reversed,
}

/// Algorithmic choices of the splitting. `π_Q` does not depend on them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct SplitOptions {
    pub pivot: Pivot,
    pub complement: ComplementOrder,
}

/// One expansion layer for a term with independent denominator forms.
#[derive(Clone, Debug)]
pub struct TaylorSplit {
    pub holomorphic: Poly,
    pub polar: Vec<PolarTerm>,
    pub residual: Vec<GermTerm>,
}

/// Expands `t` in coordinates adapted to its denominator.
///
/// # Panics
/// If the denominator forms of `t` are linearly dependent.
pub fn taylor_split(t: &GermTerm, q: &InnerProductFamily, opts: SplitOptions) -> TaylorSplit {
    let k = t.nvars();
    let den = t.denominator();
    if den.is_empty() {
        return TaylorSplit { holomorphic: t.numerator().clone(), polar: vec![], residual: vec![] };
    }
    let n = den.len();
    let forms: Vec<Vec<Rat>> = den.iter().map(|(l, _)| l.to_rats()).collect();
    let span = Subspace::span(k, forms.clone()).expect("forms have k coefficients");
    assert_eq!(span.dim(), n, "taylor_split needs independent denominator forms");
    let mut complement: Vec<Vec<Rat>> = q
        .orth_complement_dual(&span)
        .integer_rows()
        .into_iter()
        .map(|r| r.into_iter().map(Rat::from_integer).collect())
        .collect();
    if opts.complement == ComplementOrder::Reversed {
        complement.reverse();
    }
    // y = M z with the forms first and the complement after.
    let m = MatQ::from_rows(forms.into_iter().chain(complement).collect()).expect("k rows of width k");
    let m_inv = m.inverse().expect("forms and their complement form a basis");
    let z_in_y: Vec<Poly> = (0..k).map(|i| Poly::linear(m_inv.row(i))).collect();
    let y_in_z: Vec<Poly> = (0..k).map(|i| Poly::linear(m.row(i))).collect();
    let p = t.numerator().substitute(&z_in_y);
    let s: Vec<u32> = den.iter().map(|(_, m)| *m).collect();

    let mut holo = Poly::zero(k);
    let mut groups: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
    for (mono, c) in p.terms() {
        let e = &mono.0;
        let mut num_exp = e.clone();
        let mut den_exp = vec![0u32; n];
        for i in 0..n {
            if e[i] >= s[i] {
                num_exp[i] = e[i] - s[i];
            } else {
                num_exp[i] = 0;
                den_exp[i] = s[i] - e[i];
            }
        }
        if den_exp.iter().all(|&d| d == 0) {
            holo.add_term(Monomial(num_exp), c.clone());
        } else {
            groups.entry(den_exp).or_insert_with(|| Poly::zero(k)).add_term(Monomial(num_exp), c.clone());
        }
    }
    let holomorphic = holo.substitute(&y_in_z);
    let mut polar = Vec::new();
    let mut residual = Vec::new();
    for (den_exp, num_y) in groups {
        if num_y.is_zero() {
            continue;
        }
        let num = num_y.substitute(&y_in_z);
        let factors: Denominator =
            den.iter().zip(&den_exp).filter(|(_, &d)| d > 0).map(|((l, _), &d)| (l.clone(), d)).collect();
        if den_exp.iter().all(|&d| d > 0) {
            polar.push(PolarTerm::new_unchecked(num, factors));
        } else {
            residual.push(GermTerm::new(num, factors).expect("same dimension"));
        }
    }
    TaylorSplit { holomorphic, polar, residual }
}

/// Splits `f` into its holomorphic part and certified polar terms with default options.
pub fn decompose(f: &Germ, q: &InnerProductFamily) -> Decomposition {
    decompose_with(f, q, SplitOptions::default())
}

pub fn decompose_with(f: &Germ, q: &InnerProductFamily, opts: SplitOptions) -> Decomposition {
    let k = f.nvars();
    let mut independent: BTreeMap<Denominator, Poly> = BTreeMap::new();
    for t in f.terms() {
        reduce::reduce_into(&mut independent, t.denominator().clone(), t.numerator().clone(), opts.pivot);
    }
    let mut holomorphic = Poly::zero(k);
    let mut polar: BTreeMap<Denominator, Poly> = BTreeMap::new();
    // Pending terms keyed by (number of forms, denominator). Residuals have strictly
    // fewer forms than their parent, so popping the largest key first lets every
    // residual merge with its equals before it is split in turn.
    let mut pending: BTreeMap<(usize, Denominator), Poly> =
        independent.into_iter().map(|(den, num)| ((den.len(), den), num)).collect();
    while let Some(((_, den), num)) = pending.pop_last() {
        let t = GermTerm::new(num, den).expect("same dimension");
        let layer = taylor_split(&t, q, opts);
        holomorphic = &holomorphic + &layer.holomorphic;
        for p in layer.polar {
            let (num, den) = p.into_parts();
            add_to(&mut polar, den, num);
        }
        for r in layer.residual {
            let den = r.denominator().clone();
            add_to(&mut pending, (den.len(), den), r.numerator().clone());
        }
    }
    let polar = polar.into_iter().map(|(den, num)| PolarTerm::new_unchecked(num, den)).collect();
    Decomposition::new(holomorphic, polar, q.clone())
}

fn add_to<K: Ord>(map: &mut BTreeMap<K, Poly>, key: K, num: Poly) {
    let sum = match map.remove(&key) {
        Some(prev) => &prev + &num,
        None => num,
    };
    if !sum.is_zero() {
        map.insert(key, sum);
    }
}

/// `π_Q(f)`, the holomorphic part of the splitting.
pub fn pi_q(f: &Germ, q: &InnerProductFamily) -> Poly {
    decompose(f, q).holomorphic().clone()
}

pub fn pi_q_with(f: &Germ, q: &InnerProductFamily, opts: SplitOptions) -> Poly {
    decompose_with(f, q, opts).holomorphic().clone()
}

/// `f − π_Q(f)`, as the sum of the polar terms.
pub fn pi_minus(f: &Germ, q: &InnerProductFamily) -> Germ {
    decompose(f, q).polar_germ()
}

/// The term has poles, independent denominator forms, and a numerator whose dependence
/// subspace is `Q*`-orthogonal to the span of those forms.
pub fn is_polar(t: &GermTerm, q: &InnerProductFamily) -> bool {
    polar::certify(t.numerator(), t.denominator(), q).is_ok()
}

/// Checks `Dep(num) ⊥ span(den)` for a candidate polar term.
pub fn check_polar(num: &Poly, den: &Denominator, q: &InnerProductFamily) -> Result<()> {
    polar::certify(num, den, q)
}

pub(crate) fn forms_independent(den: &Denominator) -> bool {
    find_circuit(&den.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>()).is_none()
}
