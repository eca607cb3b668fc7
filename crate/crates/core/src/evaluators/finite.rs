use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::germs::{Germ, GermTerm, LinearForm};
use crate::rat::rat_pow;
use crate::{Error, Rat, Result};

/// `e_j(f)`: the coefficient of `z_j^0` in the Laurent expansion of `f` at `z_j = 0`,
/// a germ in the other variables. `j` is 1-based; the ambient dimension is kept.
///
/// Per term, the forms proportional to `z_j` contribute a monomial pole `z_j^{-S}`.
/// Every other form is `a z_j + L'` with `L' ≠ 0` and
/// `(a z_j + L')^{-s} = Σ_m (−1)^m C(s+m−1, m) a^m z_j^m / L'^{s+m}`,
/// so the wanted coefficient is the `z_j^S` coefficient of the numerator times these
/// series, a finite sum.
pub fn finite_part(f: &Germ, j: usize) -> Result<Germ> {
    let k = f.nvars();
    if j == 0 || j > k {
        return Err(Error::IndexOutOfRange { index: j, k });
    }
    let x = j - 1;
    let mut out = Vec::new();
    for t in f.terms() {
        finite_part_term(t, x, &mut out)?;
    }
    Germ::from_terms(k, out)
}

struct Shifted {
    /// Coefficient of `z_j` in the form.
    a: Rat,
    /// The form with `z_j` removed, canonicalized: `L' = scale · form`.
    scale: Rat,
    form: LinearForm,
    power: u32,
}

fn finite_part_term(t: &GermTerm, x: usize, out: &mut Vec<GermTerm>) -> Result<()> {
    let mut pole = 0u32;
    let mut fixed = Vec::new();
    let mut shifted = Vec::new();
    for (l, m) in t.denominator() {
        if l.is_coordinate(x) {
            pole += m;
            continue;
        }
        let a = l.coeff(x);
        if a.is_zero() {
            fixed.push((l.clone(), *m));
            continue;
        }
        let mut rest = l.to_rats();
        rest[x] = Rat::zero();
        let (scale, form) = LinearForm::canonicalize(&rest)?;
        shifted.push(Shifted { a: Rat::from_integer(a.clone()), scale, form, power: *m });
    }
    let coeffs = t.numerator().coefficients_in(x);
    let mut ms = vec![0u32; shifted.len()];
    for (d, pd) in coeffs.iter().enumerate() {
        let d = d as u32;
        if d > pole || pd.is_zero() {
            continue;
        }
        compositions(pole - d, &mut ms, 0, &mut |ms| {
            let mut c = Rat::one();
            let mut den = fixed.clone();
            for (sh, &m) in shifted.iter().zip(ms.iter()) {
                let e = sh.power + m;
                let sign = if m % 2 == 0 { Rat::one() } else { -Rat::one() };
                c = c * sign * binomial(e - 1, m) * rat_pow(&sh.a, m) / rat_pow(&sh.scale, e);
                den.push((sh.form.clone(), e));
            }
            out.push(GermTerm::new(pd.scale(&c), den).expect("same dimension"));
        });
    }
    Ok(())
}

/// Calls `visit` with every `ms` of nonnegative entries from `at` on summing to `total`.
fn compositions(total: u32, ms: &mut [u32], at: usize, visit: &mut impl FnMut(&[u32])) {
    if at == ms.len() {
        if total == 0 {
            visit(ms);
        }
        return;
    }
    if at + 1 == ms.len() {
        ms[at] = total;
        visit(ms);
        ms[at] = 0;
        return;
    }
    for m in 0..=total {
        ms[at] = m;
        compositions(total - m, ms, at + 1, visit);
    }
    ms[at] = 0;
}

fn binomial(n: u32, r: u32) -> Rat {
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rat::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::parse;
    use crate::rat;

    fn g(text: &str, k: usize) -> Germ {
        parse(text, k).unwrap()
    }

    #[test]
    fn examples() {
        assert!(finite_part(&g("z1/(z1+z2)", 2), 2).unwrap().equals(&g("1", 2)));
        assert!(finite_part(&g("1/z1", 1), 1).unwrap().is_zero());
        assert!(finite_part(&g("1/(z1+z2)", 2), 1).unwrap().equals(&g("1/z2", 2)));
        assert!(finite_part(&g("z1/(z1+z2)", 2), 1).unwrap().is_zero());
    }

    #[test]
    fn laurent_coefficient_in_one_variable() {
        let f = g("3/z1^2 - 1/z1 + 5 + 2*z1", 1);
        assert!(finite_part(&f, 1).unwrap().equals(&Germ::constant(1, rat(5, 1))));
        // z1^2 / (z1 (z1 + z2)^2) = z1 / (z1+z2)^2 has no z1^0 term at z1 = 0.
        assert!(finite_part(&g("z1/(z1+z2)^2", 2), 1).unwrap().is_zero());
        // (z1 + z2)^{-2} z1^{-1}: the z1^1 coefficient of (z1+z2)^{-2} is -2/z2^3.
        assert!(finite_part(&g("1/(z1*(z1+z2)^2)", 2), 1).unwrap().equals(&g("-2/z2^3", 2)));
    }

    #[test]
    fn scaled_forms() {
        // 1/(2 z1 + 3 z2) at z1 = 0 is 1/(3 z2).
        assert!(finite_part(&g("1/(2*z1+3*z2)", 2), 1).unwrap().equals(&g("1/(3*z2)", 2)));
        // 1/(z1 (2 z1 - z2)): z1^1 coefficient of (2 z1 - z2)^{-1} is -2/z2^2.
        assert!(finite_part(&g("1/(z1*(2*z1-z2))", 2), 1).unwrap().equals(&g("-2/z2^2", 2)));
    }

    #[test]
    fn index_is_checked() {
        assert!(matches!(finite_part(&g("z1", 2), 3), Err(Error::IndexOutOfRange { index: 3, k: 2 })));
        assert!(finite_part(&g("z1", 2), 0).is_err());
    }
}
