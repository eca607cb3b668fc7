//! The splitting-off operator `f = L·g + h` with `h` the restriction of `f` along the
//! `Q`-orthogonal projection onto `ker L`, and a sampled sup norm on circles.

use std::f64::consts::TAU;

use num_traits::{ToPrimitive, Zero};

use crate::germs::{LinearForm, Poly};
use crate::qlinalg::InnerProductFamily;
use crate::{Error, Rat, Result};

/// `f = L·g + h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPair {
    pub g: Poly,
    pub h: Poly,
}

/// `h = f ∘ pr_L` where `pr_L(z) = z − (L(z) / Q*(L, L)) · v_L` and `v_L` is the Riesz
/// vector of `L`.
pub fn kernel_projection_substitute(f: &Poly, l: &LinearForm, q: &InnerProductFamily) -> Result<Poly> {
    let k = f.nvars();
    if l.dim() != k {
        return Err(Error::DimensionMismatch { expected: k, found: l.dim() });
    }
    let v = q.riesz_vector(l);
    let norm = q.dual_inner(l, l)?;
    let lz = Poly::from_form(l);
    let images: Vec<Poly> = (0..k)
        .map(|i| {
            let shift = lz.scale(&(&v[i] / &norm));
            &Poly::var(k, i) - &shift
        })
        .collect();
    Ok(f.substitute(&images))
}

/// Splits `f` as `L·g + h` with `h` constant along the Riesz direction of `L`.
pub fn split_linear(f: &Poly, l: &LinearForm, q: &InnerProductFamily) -> Result<SplitPair> {
    let h = kernel_projection_substitute(f, l, q)?;
    // f - h vanishes on ker L, so the division is exact.
    let g = (f - &h).div_linear(l).expect("f - h vanishes on the kernel of L");
    Ok(SplitPair { g, h })
}

/// `max |f|` over `n_samples` equispaced points of the circle `|z| = r`, for a
/// polynomial in one variable.
pub fn sup_norm_sampled(f: &Poly, r: &Rat, n_samples: usize) -> Result<f64> {
    if f.nvars() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: f.nvars() });
    }
    if r <= &Rat::zero() {
        return Err(Error::Config(format!("radius must be positive, got {r}")));
    }
    if n_samples < 8 {
        return Err(Error::Config(format!("at least 8 samples are needed, got {n_samples}")));
    }
    let deg = f.degree().unwrap_or(0) as usize;
    let coeffs: Vec<f64> = (0..=deg).map(|d| f.coefficient(&[d as u32]).to_f64().unwrap_or(f64::NAN)).collect();
    let r = r.to_f64().unwrap_or(f64::NAN);
    let mut best = 0.0f64;
    for s in 0..n_samples {
        let theta = TAU * s as f64 / n_samples as f64;
        let (zr, zi) = (r * theta.cos(), r * theta.sin());
        let (mut re, mut im) = (0.0, 0.0);
        for c in coeffs.iter().rev() {
            (re, im) = (re * zr - im * zi + c, re * zi + im * zr);
        }
        best = best.max(re.hypot(im));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germs::parse;
    use crate::rat;

    fn p(text: &str, k: usize) -> Poly {
        parse(text, k).unwrap().polynomial_part()
    }

    fn form(c: &[i64]) -> LinearForm {
        LinearForm::from_ints(c).unwrap()
    }

    #[test]
    fn projection_examples() {
        let id = InnerProductFamily::identity();
        assert!(kernel_projection_substitute(&p("z1", 2), &form(&[1, 0]), &id).unwrap().is_zero());
        assert_eq!(kernel_projection_substitute(&p("z2", 2), &form(&[1, 0]), &id).unwrap(), p("z2", 2));
        assert_eq!(
            kernel_projection_substitute(&p("z1^2", 2), &form(&[1, 1]), &id).unwrap(),
            p("((z1-z2)/2)^2", 2)
        );
        assert!(kernel_projection_substitute(&p("z1", 2), &form(&[1, 0, 0]), &id).is_err());
    }

    #[test]
    fn split_examples() {
        let id = InnerProductFamily::identity();
        let s = split_linear(&p("z1", 2), &form(&[1, 0]), &id).unwrap();
        assert_eq!((s.g, s.h), (Poly::one(2), Poly::zero(2)));
        let s = split_linear(&p("z2", 2), &form(&[1, 0]), &id).unwrap();
        assert_eq!((s.g, s.h), (Poly::zero(2), p("z2", 2)));
        let f = p("z1^2", 2);
        let l = form(&[1, 1]);
        let s = split_linear(&f, &l, &id).unwrap();
        assert_eq!(s.g, p("(3*z1-z2)/4", 2));
        assert_eq!(&(&Poly::from_form(&l) * &s.g) + &s.h, f);
    }

    #[test]
    fn sampled_norms() {
        let one = Poly::one(1);
        assert_eq!(sup_norm_sampled(&one, &rat(3, 1), 64).unwrap(), 1.0);
        assert!((sup_norm_sampled(&p("z1", 1), &rat(1, 2), 64).unwrap() - 0.5).abs() < 1e-12);
        assert!((sup_norm_sampled(&p("1+z1", 1), &rat(1, 1), 64).unwrap() - 2.0).abs() < 1e-12);
        assert!(sup_norm_sampled(&one, &rat(1, 1), 4).is_err());
        assert!(sup_norm_sampled(&one, &rat(-1, 1), 16).is_err());
    }
}
