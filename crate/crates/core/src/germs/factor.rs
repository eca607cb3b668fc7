//! Splitting a polynomial into a scalar times linear forms, when that is possible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::form::LinearForm;
use super::poly::Poly;
use crate::Rat;

/// Integers beyond this are not searched for divisors; such polynomials are reported as
/// not factoring.
const DIVISOR_SEARCH_LIMIT: u64 = 1 << 40;

/// `p = scalar · Π forms` with canonical forms, or `None` when `p` is not a product of
/// linear forms (or is zero).
pub fn linear_factors(p: &Poly) -> Option<(Rat, Vec<LinearForm>)> {
    if p.is_zero() || !p.is_homogeneous() {
        return None;
    }
    let mut rest = p.clone();
    let mut forms = Vec::new();
    while !rest.is_constant() {
        let form = find_linear_factor(&rest)?;
        rest = rest.div_linear(&form)?;
        forms.push(form);
    }
    forms.sort();
    Some((rest.constant_term(), forms))
}

/// One linear factor of a homogeneous polynomial of positive degree.
fn find_linear_factor(p: &Poly) -> Option<LinearForm> {
    let k = p.nvars();
    if p.degree() == Some(1) {
        let coeffs: Vec<Rat> = (0..k)
            .map(|i| {
                let mut e = vec![0; k];
                e[i] = 1;
                p.coefficient(&e)
            })
            .collect();
        return LinearForm::canonicalize(&coeffs).ok().map(|(_, l)| l);
    }
    let vars = p.variables();
    let &j = vars.last()?;
    if vars.len() == 1 {
        return Some(LinearForm::coordinate(k, j));
    }
    let n = p.degree_in(j) as usize;
    let lead = &p.coefficients_in(j)[n];
    if !lead.is_constant() {
        // Factors free of z_j are exactly the factors of the leading coefficient in z_j.
        let (_, fs) = linear_factors(lead)?;
        let f = fs.into_iter().next()?;
        return p.div_linear(&f).map(|_| f);
    }
    // Every factor now has the shape z_j + Σ_m c_m z_m. Setting z_m = 1 and the other
    // variables to zero leaves a univariate polynomial whose roots are the -c_m.
    let others: Vec<usize> = vars[..vars.len() - 1].to_vec();
    let mut choices: Vec<Vec<Rat>> = Vec::with_capacity(others.len());
    for &m in &others {
        let mut u = vec![Rat::zero(); n + 1];
        for (mono, c) in p.terms() {
            if mono.0.iter().enumerate().all(|(i, &e)| e == 0 || i == m || i == j) {
                u[mono.0[j] as usize] += c;
            }
        }
        let roots = rational_roots(&u)?;
        if roots.is_empty() {
            return None;
        }
        choices.push(roots);
    }
    let mut pick = vec![0usize; others.len()];
    loop {
        let mut coeffs = vec![Rat::zero(); k];
        coeffs[j] = Rat::one();
        for (slot, &m) in others.iter().enumerate() {
            coeffs[m] = -&choices[slot][pick[slot]];
        }
        let (_, form) = LinearForm::canonicalize(&coeffs).ok()?;
        if p.div_linear(&form).is_some() {
            return Some(form);
        }
        // Advance the mixed-radix counter over all root combinations.
        let mut slot = 0;
        loop {
            if slot == pick.len() {
                return None;
            }
            pick[slot] += 1;
            if pick[slot] < choices[slot].len() {
                break;
            }
            pick[slot] = 0;
            slot += 1;
        }
    }
}

/// Distinct rational roots of `Σ u_d t^d`, or `None` when the coefficients are too large
/// to search.
fn rational_roots(u: &[Rat]) -> Option<Vec<Rat>> {
    let lcm = u.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut a: Vec<BigInt> = u.iter().map(|c| (c * Rat::from_integer(lcm.clone())).to_integer()).collect();
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    let mut roots = Vec::new();
    let low = a.iter().take_while(|c| c.is_zero()).count();
    if low > 0 {
        roots.push(Rat::zero());
        a.drain(..low);
    }
    if a.len() <= 1 {
        return Some(roots);
    }
    let ps = divisors(a.first()?)?;
    let qs = divisors(a.last()?)?;
    for p in &ps {
        for q in &qs {
            for sign in [1, -1] {
                let r = Rat::new(BigInt::from(sign * *p as i128), BigInt::from(*q));
                if !roots.contains(&r) && horner(&a, &r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    Some(roots)
}

fn horner(a: &[BigInt], t: &Rat) -> Rat {
    a.iter().rev().fold(Rat::zero(), |acc, c| acc * t + Rat::from_integer(c.clone()))
}

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&n| n <= DIVISOR_SEARCH_LIMIT)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}
