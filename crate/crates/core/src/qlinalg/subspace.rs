use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::{normalized_int_row, MatQ};
use crate::{Error, Rat, Result};

/// A rational subspace of `Q^n` (vectors or covectors), stored as the nonzero rows of
/// its reduced row echelon form. Equal subspaces have identical bases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: MatQ,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: MatQ::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: MatQ::identity(ambient) }
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Rat>>) -> Result<Self> {
        let m = MatQ::with_cols(ambient, vectors)?;
        let (r, pivots) = m.rref();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace { ambient, basis: MatQ::with_cols(ambient, rows)? })
    }

    /// The null space of `m`.
    pub fn kernel(m: &MatQ) -> Self {
        Self::span(m.cols(), m.kernel_basis()).expect("kernel vectors have the column count")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatQ {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Rat>> {
        self.basis.to_rows()
    }

    /// Basis rows rescaled to primitive integer vectors (first nonzero entry positive).
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.dim()).map(|i| normalized_int_row(self.basis.row(i))).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut rows = self.basis_rows();
        rows.push(v.to_vec());
        MatQ::with_cols(self.ambient, rows).map(|m| m.rank() == self.dim()).unwrap_or(false)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Self::span(self.ambient, rows)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        self.annihilator().sum(&other.annihilator()).map(|s| s.annihilator())
    }

    /// `{x : <b, x> = 0 for every basis row b}` under the standard pairing. For a space
    /// of vectors this is the space of covectors vanishing on it, and vice versa.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        Subspace::kernel(&self.basis)
    }

    /// Pads every basis row with zeros up to `ambient` coordinates.
    pub fn embed(&self, ambient: usize) -> Result<Subspace> {
        if ambient < self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: ambient });
        }
        let rows = self
            .basis_rows()
            .into_iter()
            .map(|mut r| {
                r.resize(ambient, Rat::zero());
                r
            })
            .collect();
        Subspace::span(ambient, rows)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(ambient={}, basis={:?})", self.ambient, self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, vec![v(&[1, 2, 1]), v(&[2, 1, -1]), v(&[1, 0, -1])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(Subspace::kernel(&MatQ::identity(2)).is_zero());
        let k = Subspace::kernel(&MatQ::from_i64(&[&[1, 1]]));
        assert_eq!(k, Subspace::span(2, vec![v(&[1, -1])]).unwrap());
        assert_eq!(Subspace::kernel(&MatQ::zeros(2, 3)), Subspace::full(3));
    }

    #[test]
    fn annihilator_and_intersection() {
        let w = Subspace::span(3, vec![v(&[1, 0, 0])]).unwrap();
        let ann = w.annihilator();
        assert_eq!(ann, Subspace::span(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap());
        assert_eq!(ann.annihilator(), w);
        assert!(w.intersection(&ann).unwrap().is_zero());
        assert_eq!(w.sum(&ann).unwrap(), Subspace::full(3));
    }

    #[test]
    fn integer_rows_are_primitive() {
        let s = Subspace::span(2, vec![v(&[2, -3])]).unwrap();
        assert_eq!(s.integer_rows(), vec![vec![BigInt::from(2), BigInt::from(-3)]]);
    }
}
