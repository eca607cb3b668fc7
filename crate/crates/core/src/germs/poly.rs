use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::form::LinearForm;
use crate::rat::{factor_string, int};
use crate::{Error, Rat, Result};

/// Exponent vector of a monomial `z_1^{a_1} ... z_k^{a_k}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(k: usize) -> Self {
        Monomial(vec![0; k])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Graded order: total degree first, then lexicographic on exponents.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse polynomial in `z_1..z_k` with rational coefficients; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    k: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(k: usize) -> Self {
        Poly { k, terms: BTreeMap::new() }
    }

    pub fn constant(k: usize, c: Rat) -> Self {
        let mut p = Self::zero(k);
        p.add_term(Monomial::one(k), c);
        p
    }

    pub fn one(k: usize) -> Self {
        Self::constant(k, Rat::one())
    }

    /// The variable `z_{i+1}` (0-based `i`).
    pub fn var(k: usize, i: usize) -> Self {
        let mut e = vec![0; k];
        e[i] = 1;
        let mut p = Self::zero(k);
        p.add_term(Monomial(e), Rat::one());
        p
    }

    pub fn monomial(exponents: Vec<u32>, c: Rat) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(Monomial(exponents), c);
        p
    }

    pub fn linear(coeffs: &[Rat]) -> Self {
        let k = coeffs.len();
        let mut p = Self::zero(k);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; k];
            e[i] = 1;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    pub fn from_form(form: &LinearForm) -> Self {
        Self::linear(&form.to_rats())
    }

    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Self::zero(k);
        for (e, c) in terms {
            assert_eq!(e.len(), k, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rat {
        self.terms.get(&Monomial(exponents.to_vec())).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&vec![0; self.k])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Poly {
        Poly {
            k: self.k,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Indices of variables that occur in some monomial.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.k).filter(|&i| self.terms.keys().any(|m| m.0[i] > 0)).collect()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.k);
        }
        Poly { k: self.k, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::one(self.k);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = &out * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn embed(&self, k: usize) -> Result<Poly> {
        if k < self.k {
            return Err(Error::DimensionMismatch { expected: self.k, found: k });
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(k, 0);
                (Monomial(e), c.clone())
            })
            .collect();
        Ok(Poly { k, terms })
    }

    /// Partial derivative in `z_{i+1}`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.k);
        for (m, c) in &self.terms {
            if m.0[i] == 0 {
                continue;
            }
            let mut e = m.0.clone();
            let a = e[i];
            e[i] -= 1;
            out.add_term(Monomial(e), c * int(a.into()));
        }
        out
    }

    pub fn directional_derivative(&self, v: &[Rat]) -> Result<Poly> {
        if v.len() != self.k {
            return Err(Error::DimensionMismatch { expected: self.k, found: v.len() });
        }
        let mut out = Poly::zero(self.k);
        for (i, vi) in v.iter().enumerate() {
            if !vi.is_zero() {
                out = &out + &self.derivative(i).scale(vi);
            }
        }
        Ok(out)
    }

    /// Substitutes `z_i ↦ images[i]` (all images share one ambient dimension).
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.k, "one image per variable");
        let target = images.first().map_or(0, Poly::nvars);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.k)]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("nonempty") * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            total += t;
        }
        total
    }

    /// Coefficients of the powers of `z_{i+1}`: `self = Σ_d out[d] · z_i^d`, every `out[d]`
    /// free of `z_{i+1}`.
    pub fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let n = self.degree_in(i) as usize;
        let mut out = vec![Poly::zero(self.k); n + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let d = e[i] as usize;
            e[i] = 0;
            out[d].add_term(Monomial(e), c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// Division by a linear form: `self = form · q + r` with `r` free of the variable
    /// `z_{i+1}` chosen as the last variable the form involves. `r` is the restriction of
    /// `self` to the kernel of the form, parametrised by the remaining variables.
    pub fn div_rem_linear(&self, form: &LinearForm) -> (Poly, Poly) {
        let x = form.support().last().expect("nonzero form");
        let a = Rat::from_integer(form.coeff(x).clone());
        let mut rest = form.to_rats();
        rest[x] = Rat::zero();
        let b = Poly::linear(&rest);
        let c = self.coefficients_in(x);
        if c.len() <= 1 {
            return (Poly::zero(self.k), self.clone());
        }
        let n = c.len() - 1;
        // c_d = a q_{d-1} + b q_d, c_0 = b q_0 + r
        let mut q = vec![Poly::zero(self.k); n];
        q[n - 1] = c[n].scale(&(Rat::one() / &a));
        for d in (1..n).rev() {
            q[d - 1] = (&c[d] - &(&b * &q[d])).scale(&(Rat::one() / &a));
        }
        let r = &c[0] - &(&b * &q[0]);
        let xv = Poly::var(self.k, x);
        let mut quotient = Poly::zero(self.k);
        let mut xp = Poly::one(self.k);
        for qd in &q {
            quotient = &quotient + &(qd * &xp);
            xp = &xp * &xv;
        }
        (quotient, r)
    }

    /// Exact quotient by a linear form, if it divides.
    pub fn div_linear(&self, form: &LinearForm) -> Option<Poly> {
        let (q, r) = self.div_rem_linear(form);
        r.is_zero().then_some(q)
    }

    /// Positive rational content: `self = content · primitive` with `primitive`
    /// having coprime integer coefficients whose leading (first printed) one is positive.
    pub fn content_and_primitive(&self) -> (Rat, Poly) {
        let Some((_, lead)) = self.terms.iter().next_back() else {
            return (Rat::zero(), self.clone());
        };
        let num_gcd = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
        let den_lcm = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut content = Rat::new(num_gcd, den_lcm);
        if lead.is_negative() {
            content = -content;
        }
        let inv = Rat::one() / &content;
        (content, self.scale(&inv))
    }

    /// Monomials in display order (highest degree first).
    fn render_sum(&self) -> String {
        let mut s = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono = render_monomial(m);
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            match mono {
                None => s.push_str(&a.to_string()),
                Some(mono) if a.is_one() => s.push_str(&mono),
                Some(mono) => {
                    s.push_str(&factor_string(&a));
                    s.push('*');
                    s.push_str(&mono);
                }
            }
        }
        s
    }
}

fn render_monomial(m: &Monomial) -> Option<String> {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("z{}", i + 1) } else { format!("z{}^{}", i + 1, e) })
        .collect();
    (!parts.is_empty()).then(|| parts.join("*"))
}

/// Canonical text: rational content factored out, e.g. `(1/2)*(z1-z2)`, `z1^2+1`, `-3`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.is_constant() {
            return write!(f, "{}", self.constant_term());
        }
        let (c, prim) = self.content_and_primitive();
        let body = prim.render_sum();
        if c.is_one() {
            f.write_str(&body)
        } else if c == -Rat::one() {
            if prim.terms.len() == 1 {
                write!(f, "-{body}")
            } else {
                write!(f, "-({body})")
            }
        } else {
            let sign = if c.is_negative() { "-" } else { "" };
            let c = factor_string(&c.abs());
            if prim.terms.len() == 1 {
                write!(f, "{sign}{c}*{body}")
            } else {
                write!(f, "{sign}{c}*({body})")
            }
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({self})", self.k)
    }
}

fn same_k(a: &Poly, b: &Poly) -> usize {
    assert_eq!(a.k, b.k, "polynomials over different variable counts");
    a.k
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        same_k(self, rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        same_k(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { k: self.k, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let k = same_k(self, rhs);
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { k, terms: acc }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn z(k: usize, i: usize) -> Poly {
        Poly::var(k, i)
    }

    #[test]
    fn arithmetic_and_rendering() {
        let p = &z(2, 0) - &z(2, 1);
        assert_eq!(p.to_string(), "z1-z2");
        assert_eq!((&p * &p).to_string(), "z1^2-2*z1*z2+z2^2");
        assert_eq!(p.scale(&rat(1, 2)).to_string(), "(1/2)*(z1-z2)");
        assert_eq!(p.scale(&rat(-2, 1)).to_string(), "-2*(z1-z2)");
        assert_eq!(z(1, 0).scale(&rat(1, 2)).to_string(), "(1/2)*z1");
        assert_eq!((&z(1, 0) + &Poly::one(1)).to_string(), "z1+1");
        assert_eq!(Poly::constant(2, rat(-1, 2)).to_string(), "-1/2");
        assert_eq!((-&p).to_string(), "-(z1-z2)");
    }

    #[test]
    fn linear_division() {
        let s = LinearForm::from_ints(&[1, 1]).unwrap();
        let p = &z(2, 0).pow(2) - &z(2, 1).pow(2);
        let q = p.div_linear(&s).unwrap();
        assert_eq!(q, &z(2, 0) - &z(2, 1));
        assert!(z(2, 0).div_linear(&s).is_none());
        let (q, r) = (&z(2, 0).pow(2) + &Poly::one(2)).div_rem_linear(&LinearForm::from_ints(&[1, 0]).unwrap());
        assert_eq!(q, z(2, 0));
        assert_eq!(r, Poly::one(2));
    }

    #[test]
    fn substitution_and_derivatives() {
        let p = &z(2, 0).pow(2) + &z(2, 1);
        let images = vec![&z(2, 0) + &z(2, 1), Poly::constant(2, rat(3, 1))];
        assert_eq!(p.substitute(&images).to_string(), "z1^2+2*z1*z2+z2^2+3");
        assert_eq!(p.derivative(0), z(2, 0).scale(&rat(2, 1)));
        let dv = p.directional_derivative(&[rat(1, 1), rat(2, 1)]).unwrap();
        assert_eq!(dv.to_string(), "2*(z1+1)");
    }

    #[test]
    fn content_sign_follows_leading_term() {
        let p = Poly::linear(&[rat(-2, 3), rat(4, 3)]);
        let (c, prim) = p.content_and_primitive();
        assert_eq!(c, rat(-2, 3));
        assert_eq!(prim.to_string(), "z1-2*z2");
    }
}
