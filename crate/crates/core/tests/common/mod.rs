//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use merogerm::germs::{Germ, GermTerm, LinearForm, Poly};
use merogerm::{rat, InnerProductFamily, MatQ, Rat, Subspace};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(r: &mut ChaCha8Rng) -> Rat {
    loop {
        let n = r.random_range(-5i64..=5);
        if n != 0 {
            return rat(n, r.random_range(1i64..=3));
        }
    }
}

pub fn int_vector(r: &mut ChaCha8Rng, k: usize, bound: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..k).map(|_| r.random_range(-bound..=bound)).collect();
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    }
}

pub fn form(r: &mut ChaCha8Rng, k: usize) -> LinearForm {
    LinearForm::from_ints(&int_vector(r, k, 2)).unwrap()
}

/// Up to `max_terms` monomials of total degree at most `max_deg` in the variables
/// listed in `vars` (0-based), on `C^k`.
pub fn poly_in(r: &mut ChaCha8Rng, k: usize, vars: &[usize], max_deg: u32, max_terms: usize) -> Poly {
    let n = r.random_range(1..=max_terms);
    let mut p = Poly::zero(k);
    for _ in 0..n {
        let mut e = vec![0u32; k];
        let deg = r.random_range(0..=max_deg);
        for _ in 0..deg {
            if vars.is_empty() {
                break;
            }
            e[vars[r.random_range(0..vars.len())]] += 1;
        }
        p = &p + &Poly::monomial(e, small_rat(r));
    }
    p
}

pub fn poly(r: &mut ChaCha8Rng, k: usize, max_deg: u32, max_terms: usize) -> Poly {
    let vars: Vec<usize> = (0..k).collect();
    poly_in(r, k, &vars, max_deg, max_terms)
}

/// `p / Π L_i^{m_i}` with up to `max_forms` random forms and powers up to `max_power`.
pub fn term(r: &mut ChaCha8Rng, k: usize, max_deg: u32, max_forms: usize, max_power: u32) -> GermTerm {
    let num = poly(r, k, max_deg, 4);
    let count = r.random_range(0..=max_forms);
    let den: Vec<_> = (0..count).map(|_| (form(r, k), r.random_range(1..=max_power))).collect();
    GermTerm::new(num, den).unwrap()
}

/// One or two random terms: the acceptance corpus shape.
pub fn germ(r: &mut ChaCha8Rng, k: usize, max_deg: u32, max_forms: usize, max_power: u32) -> Germ {
    let n = r.random_range(1..=2);
    Germ::from_terms(k, (0..n).map(|_| term(r, k, max_deg, max_forms, max_power))).unwrap()
}

/// A germ whose numerator and pole forms are combinations of the given covectors, so
/// that `Dep` lies in their span.
pub fn germ_from_span(r: &mut ChaCha8Rng, basis: &[Vec<Rat>], k: usize, max_forms: usize) -> Germ {
    let m = basis.len();
    let coords: Vec<Poly> = basis.iter().map(|b| Poly::linear(b)).collect();
    let local = poly(r, m, 3, 3);
    let num = local.substitute(&coords);
    let count = r.random_range(0..=max_forms);
    let mut den = Vec::new();
    for _ in 0..count {
        let c = int_vector(r, m, 2);
        let mut v = vec![Rat::zero(); k];
        for (ci, b) in c.iter().zip(basis) {
            for (vj, bj) in v.iter_mut().zip(b) {
                *vj += bj * Rat::from_integer((*ci).into());
            }
        }
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        den.push((v, r.random_range(1..=2)));
    }
    Germ::from_term(GermTerm::with_rational_denominator(num, den).unwrap())
}

/// A pair `(f1, f2)` with `Dep(f1) ⊆ W` and `Dep(f2) ⊆ W^⊥` for a random `W`.
pub fn orthogonal_pair(r: &mut ChaCha8Rng, q: &InnerProductFamily, k: usize) -> (Germ, Germ) {
    let dim = r.random_range(1..k);
    let w = Subspace::span(k, (0..dim).map(|_| to_rats(&int_vector(r, k, 2))).collect()).unwrap();
    let c = q.orth_complement_dual(&w);
    let f1 = germ_from_span(r, &w.basis_rows(), k, 2);
    let f2 = germ_from_span(r, &c.basis_rows(), k, 2);
    (f1, f2)
}

pub fn to_rats(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x, 1)).collect()
}

/// A coupled positive definite block on the first three coordinates.
pub fn coupled_q() -> InnerProductFamily {
    InnerProductFamily::from_block(MatQ::from_i64(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 3]])).unwrap()
}

/// A coupled 2x2 block, used where the ambient dimension is at least 2.
pub fn coupled_q2() -> InnerProductFamily {
    InnerProductFamily::from_block(MatQ::from_i64(&[&[2, 1], &[1, 2]])).unwrap()
}

/// Univariate Laurent coefficient oracle: the coefficient of `t^m` in
/// `num(t) / (t^shift · den(t))` with `den(0) ≠ 0`, by power-series division.
pub fn laurent_coefficient(num: &[Rat], den: &[Rat], shift: usize, m: i64) -> Rat {
    assert!(!den[0].is_zero());
    let want = m + shift as i64;
    if want < 0 {
        return Rat::zero();
    }
    let want = want as usize;
    // q = num / den as a power series up to t^want.
    let mut q = vec![Rat::zero(); want + 1];
    for n in 0..=want {
        let mut acc = num.get(n).cloned().unwrap_or_else(Rat::zero);
        for i in 1..=n.min(den.len().saturating_sub(1)) {
            acc -= &den[i] * &q[n - i];
        }
        q[n] = acc / &den[0];
    }
    q[want].clone()
}

/// Coefficients in `t` of `p(point with coordinate x replaced by t)`.
pub fn restrict_to_line(p: &Poly, point: &[Rat], x: usize) -> Vec<Rat> {
    let coeffs = p.coefficients_in(x);
    coeffs.iter().map(|c| c.eval(point)).collect()
}

/// `e_j` oracle at a point: writes `f` as one fraction, restricts to the line through
/// `point` in direction `z_j`, and reads the `t^0` Laurent coefficient. `None` when a
/// remaining pole passes through the point.
pub fn finite_part_at(f: &Germ, j: usize, point: &[Rat]) -> Option<Rat> {
    let x = j - 1;
    let (p, den) = f.as_single_fraction();
    let mut shift = 0usize;
    let mut rest = Poly::one(f.nvars());
    for (l, m) in &den {
        if l.is_coordinate(x) {
            shift += *m as usize;
        } else {
            rest = &rest * &Poly::from_form(l).pow(*m);
        }
    }
    let num = restrict_to_line(&p, point, x);
    let dnm = restrict_to_line(&rest, point, x);
    if dnm[0].is_zero() {
        return None;
    }
    Some(laurent_coefficient(&num, &dnm, shift, 0))
}

/// Evaluates a germ at a rational point where no denominator vanishes.
pub fn eval_at(f: &Germ, point: &[Rat]) -> Option<Rat> {
    let mut total = Rat::zero();
    for t in f.terms() {
        let d = t.denominator_poly().eval(point);
        if d.is_zero() {
            return None;
        }
        total += t.numerator().eval(point) / d;
    }
    Some(total)
}

pub fn random_point(r: &mut ChaCha8Rng, k: usize) -> Vec<Rat> {
    (0..k).map(|_| small_rat(r) + Rat::one() / rat(7, 1)).collect()
}
