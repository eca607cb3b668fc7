use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::form::LinearForm;
use super::poly::Poly;
use crate::rat::rat_pow;
use crate::{Error, Rat, Result};

/// Denominator `Π L_i^{m_i}`: canonical forms in increasing order, pairwise distinct,
/// powers at least one.
pub type Denominator = Vec<(LinearForm, u32)>;

/// One fraction `numerator / Π L_i^{m_i}`; an empty denominator is a holomorphic term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GermTerm {
    num: Poly,
    den: Denominator,
}

impl GermTerm {
    pub fn new(num: Poly, factors: impl IntoIterator<Item = (LinearForm, u32)>) -> Result<Self> {
        let k = num.nvars();
        let mut merged: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for (form, power) in factors {
            if form.dim() != k {
                return Err(Error::DimensionMismatch { expected: k, found: form.dim() });
            }
            if power > 0 {
                *merged.entry(form).or_insert(0) += power;
            }
        }
        Ok(GermTerm { num, den: merged.into_iter().collect() })
    }

    pub fn holomorphic(num: Poly) -> Self {
        GermTerm { num, den: Vec::new() }
    }

    /// A term whose denominator forms are given by arbitrary rational coefficients; the
    /// scalars are moved into the numerator.
    pub fn with_rational_denominator(num: Poly, factors: Vec<(Vec<Rat>, u32)>) -> Result<Self> {
        let mut scale = Rat::one();
        let mut forms = Vec::with_capacity(factors.len());
        for (coeffs, power) in factors {
            let (c, form) = LinearForm::canonicalize(&coeffs)?;
            scale /= rat_pow(&c, power);
            forms.push((form, power));
        }
        Self::new(num.scale(&scale), forms)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Denominator {
        &self.den
    }

    pub fn forms(&self) -> impl Iterator<Item = &LinearForm> {
        self.den.iter().map(|(l, _)| l)
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn has_poles(&self) -> bool {
        !self.den.is_empty()
    }

    /// Total degree of the denominator.
    pub fn pole_degree(&self) -> u32 {
        self.den.iter().map(|(_, m)| m).sum()
    }

    pub fn denominator_poly(&self) -> Poly {
        self.den.iter().fold(Poly::one(self.nvars()), |acc, (l, m)| &acc * &Poly::from_form(l).pow(*m))
    }

    pub fn embed(&self, k: usize) -> Result<GermTerm> {
        let num = self.num.embed(k)?;
        let den = self.den.iter().map(|(l, m)| Ok((l.embed(k)?, *m))).collect::<Result<_>>()?;
        Ok(GermTerm { num, den })
    }

    pub fn with_numerator(&self, num: Poly) -> GermTerm {
        GermTerm { num, den: self.den.clone() }
    }

    fn mul(&self, other: &GermTerm) -> GermTerm {
        let num = &self.num * &other.num;
        let factors = self.den.iter().chain(&other.den).cloned();
        GermTerm::new(num, factors).expect("same ambient dimension")
    }
}

impl fmt::Display for GermTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, render_denominator(&self.den, "*"))
    }
}

impl fmt::Debug for GermTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GermTerm({self})")
    }
}

pub(crate) fn render_denominator(den: &Denominator, sep: &str) -> String {
    den.iter()
        .map(|(l, m)| if *m == 1 { format!("({l})") } else { format!("({l})^{m}") })
        .collect::<Vec<_>>()
        .join(sep)
}

/// A meromorphic germ at zero on `C^k` with linear poles: a finite sum of
/// [`GermTerm`]s. Terms with identical denominators are merged, so the zero germ may
/// still have a nonzero representation; use [`Germ::equals`] for semantic equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Germ {
    k: usize,
    terms: Vec<GermTerm>,
}

impl Germ {
    pub fn zero(k: usize) -> Self {
        Germ { k, terms: Vec::new() }
    }

    pub fn constant(k: usize, c: Rat) -> Self {
        Self::from_poly(Poly::constant(k, c))
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::from_terms(p.nvars(), [GermTerm::holomorphic(p)]).expect("single dimension")
    }

    pub fn from_term(t: GermTerm) -> Self {
        let k = t.nvars();
        Self::from_terms(k, [t]).expect("single dimension")
    }

    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = GermTerm>) -> Result<Self> {
        let mut merged: BTreeMap<Denominator, Poly> = BTreeMap::new();
        for t in terms {
            if t.nvars() != k {
                return Err(Error::DimensionMismatch { expected: k, found: t.nvars() });
            }
            match merged.entry(t.den) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(t.num);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get() + &t.num;
                    *e.get_mut() = sum;
                }
            }
        }
        let terms = merged
            .into_iter()
            .filter(|(_, num)| !num.is_zero())
            .map(|(den, num)| GermTerm { num, den })
            .collect();
        Ok(Germ { k, terms })
    }

    pub fn nvars(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[GermTerm] {
        &self.terms
    }

    /// No terms at all (structural; see [`Germ::equals`] for semantic zero).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// All terms are free of poles.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|t| !t.has_poles())
    }

    /// Sum of the pole-free terms.
    pub fn polynomial_part(&self) -> Poly {
        self.terms
            .iter()
            .filter(|t| !t.has_poles())
            .fold(Poly::zero(self.k), |acc, t| &acc + t.numerator())
    }

    pub fn embed(&self, k: usize) -> Result<Germ> {
        if k < self.k {
            return Err(Error::DimensionMismatch { expected: self.k, found: k });
        }
        let terms = self.terms.iter().map(|t| t.embed(k)).collect::<Result<Vec<_>>>()?;
        Ok(Germ { k, terms })
    }

    fn common(a: &Germ, b: &Germ) -> (Germ, Germ) {
        let k = a.k.max(b.k);
        (a.embed(k).expect("k >= a.k"), b.embed(k).expect("k >= b.k"))
    }

    pub fn scale(&self, c: &Rat) -> Germ {
        if c.is_zero() {
            return Germ::zero(self.k);
        }
        Germ { k: self.k, terms: self.terms.iter().map(|t| t.with_numerator(t.num.scale(c))).collect() }
    }

    pub fn pow(&self, n: u32) -> Germ {
        (0..n).fold(Germ::constant(self.k, Rat::one()), |acc, _| &acc * self)
    }

    /// `f = p / Π D` with `D` the least common multiple of the term denominators
    /// (maximal power per form). No gcd reduction is attempted.
    pub fn as_single_fraction(&self) -> (Poly, Denominator) {
        let mut lcm: BTreeMap<LinearForm, u32> = BTreeMap::new();
        for t in &self.terms {
            for (l, m) in &t.den {
                let e = lcm.entry(l.clone()).or_insert(0);
                *e = (*e).max(*m);
            }
        }
        let mut powers: HashMap<(LinearForm, u32), Poly> = HashMap::new();
        let mut p = Poly::zero(self.k);
        for t in &self.terms {
            let mut term = t.num.clone();
            for (l, &m) in &lcm {
                let own = t.den.iter().find(|(tl, _)| tl == l).map_or(0, |(_, e)| *e);
                let missing = m - own;
                if missing > 0 {
                    let lp = powers
                        .entry((l.clone(), missing))
                        .or_insert_with(|| Poly::from_form(l).pow(missing));
                    term = &term * lp;
                }
            }
            p = &p + &term;
        }
        (p, lcm.into_iter().collect())
    }

    /// Exact semantic equality: the single-fraction numerator of `self - other` vanishes.
    pub fn equals(&self, other: &Germ) -> bool {
        (self - other).as_single_fraction().0.is_zero()
    }

    /// Semantic zero test.
    pub fn is_zero(&self) -> bool {
        self.as_single_fraction().0.is_zero()
    }
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Holomorphic part first, then pole terms in canonical order.
        let mut first = true;
        for t in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Germ[{}]({self})", self.k)
    }
}

impl Add for &Germ {
    type Output = Germ;
    fn add(self, rhs: &Germ) -> Germ {
        let (a, b) = Germ::common(self, rhs);
        Germ::from_terms(a.k, a.terms.into_iter().chain(b.terms)).expect("common dimension")
    }
}

impl Neg for &Germ {
    type Output = Germ;
    fn neg(self) -> Germ {
        self.scale(&-Rat::one())
    }
}

impl Sub for &Germ {
    type Output = Germ;
    fn sub(self, rhs: &Germ) -> Germ {
        self + &(-rhs)
    }
}

impl Mul for &Germ {
    type Output = Germ;
    fn mul(self, rhs: &Germ) -> Germ {
        let (a, b) = Germ::common(self, rhs);
        let terms = a.terms.iter().flat_map(|s| b.terms.iter().map(move |t| s.mul(t)));
        Germ::from_terms(a.k, terms.collect::<Vec<_>>()).expect("common dimension")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Germ {
            type Output = Germ;
            fn $f(self, rhs: Germ) -> Germ {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
