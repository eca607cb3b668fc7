use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::qlinalg::matrix::normalized_int_row;
use crate::{Error, Rat, Result};

/// A nonzero linear form `c_1 z_1 + ... + c_k z_k` in canonical shape: coprime integer
/// coefficients whose first nonzero entry is positive.
///
/// Proportional forms share one canonical representative; the scalar that relates an
/// arbitrary form to its representative is returned by [`LinearForm::canonicalize`] and
/// lives in the numerator of whatever fraction the form appears in. Trailing zero
/// coefficients identify a form on `C^k` with its pull-back to `C^{k+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<BigInt>,
}

impl LinearForm {
    /// Splits `coeffs` into `(scale, form)` with `coeffs = scale · form`.
    pub fn canonicalize(coeffs: &[Rat]) -> Result<(Rat, LinearForm)> {
        let Some(lead) = coeffs.iter().find(|c| !c.is_zero()) else {
            return Err(Error::ZeroForm(0));
        };
        let ints = normalized_int_row(coeffs);
        let first_int = ints.iter().find(|c| !c.is_zero()).expect("nonzero row");
        let scale = lead / Rat::from_integer(first_int.clone());
        Ok((scale, LinearForm { coeffs: ints }))
    }

    /// Canonical form of an integer coefficient vector, dropping the scalar.
    pub fn from_ints(coeffs: &[i64]) -> Result<LinearForm> {
        let rats: Vec<Rat> = coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect();
        Ok(Self::canonicalize(&rats)?.1)
    }

    /// The coordinate form `z_{i+1}` on `C^k` (0-based `i`).
    pub fn coordinate(k: usize, i: usize) -> LinearForm {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs[i] = BigInt::one();
        LinearForm { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn to_rats(&self) -> Vec<Rat> {
        self.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect()
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.coeffs
            .iter()
            .zip(point)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, x)| Rat::from_integer(c.clone()) * x)
            .sum()
    }

    /// Pull-back along `pr: C^{k'} → C^k`, i.e. padding with zero coefficients.
    pub fn embed(&self, k: usize) -> Result<LinearForm> {
        if k < self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: k });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(k, BigInt::zero());
        Ok(LinearForm { coeffs })
    }

    /// Indices of the variables with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }

    /// The form is a multiple of `z_{i+1}`.
    pub fn is_coordinate(&self, i: usize) -> bool {
        self.support().eq(std::iter::once(i))
    }

    fn order_key(&self) -> (usize, Vec<usize>) {
        (self.support().count(), self.support().collect())
    }
}

/// Canonical order: fewer variables first, then by support, then by coefficients. For
/// the coordinate forms and their partial sums this orders `z1 < z2 < z1+z2`.
impl Ord for LinearForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key()
            .cmp(&other.order_key())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for LinearForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "z{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearForm({self})")
    }
}
