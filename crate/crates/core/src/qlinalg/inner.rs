use num_traits::Zero;

use super::matrix::{dot, MatQ};
use super::subspace::Subspace;
use crate::germs::LinearForm;
use crate::{Error, Rat, Result};

/// A compatible family of real inner products `(Q_k)_k`: a finite symmetric positive
/// definite block on the first `k₀` coordinates, extended by the identity with zero
/// coupling. `gram(k)` is always the leading `k × k` block of `gram(k + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProductFamily {
    block: MatQ,
    /// `leading_inverses[n]` is the inverse of the leading `(n+1) × (n+1)` block.
    leading_inverses: Vec<MatQ>,
}

impl Default for InnerProductFamily {
    fn default() -> Self {
        Self::identity()
    }
}

impl InnerProductFamily {
    /// The canonical family: every `Q_k` is the Euclidean inner product.
    pub fn identity() -> Self {
        InnerProductFamily { block: MatQ::zeros(0, 0), leading_inverses: Vec::new() }
    }

    pub fn from_block(block: MatQ) -> Result<Self> {
        if block.rows() != block.cols() {
            return Err(Error::NotSpd(format!("block is {}×{}", block.rows(), block.cols())));
        }
        if !block.is_symmetric() {
            return Err(Error::NotSpd("block is not symmetric".into()));
        }
        let mut leading_inverses = Vec::with_capacity(block.rows());
        for n in 1..=block.rows() {
            let lead = block.leading_block(n);
            let minor = lead.determinant()?;
            if minor <= Rat::zero() {
                return Err(Error::NotSpd(format!("leading principal minor {n} is {minor}")));
            }
            leading_inverses.push(lead.inverse().expect("positive minor"));
        }
        Ok(InnerProductFamily { block, leading_inverses })
    }

    pub fn block(&self) -> &MatQ {
        &self.block
    }

    pub fn block_dim(&self) -> usize {
        self.block.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.block == MatQ::identity(self.block_dim())
    }

    /// Gram matrix of `Q_k`.
    pub fn gram(&self, k: usize) -> MatQ {
        let mut g = MatQ::identity(k);
        let n = k.min(self.block_dim());
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.block[(i, j)].clone();
            }
        }
        g
    }

    /// Gram matrix of the dual inner product `Q_k^*`, the inverse of `gram(k)`.
    pub fn dual_gram(&self, k: usize) -> MatQ {
        let k0 = self.block_dim();
        if k == 0 {
            return MatQ::zeros(0, 0);
        }
        if k <= k0 {
            return self.leading_inverses[k - 1].clone();
        }
        let mut g = MatQ::identity(k);
        if k0 > 0 {
            let inv = &self.leading_inverses[k0 - 1];
            for i in 0..k0 {
                for j in 0..k0 {
                    g[(i, j)] = inv[(i, j)].clone();
                }
            }
        }
        g
    }

    fn apply(&self, inverse: bool, v: &[Rat]) -> Vec<Rat> {
        let k = v.len();
        let n = k.min(self.block_dim());
        let mut out = v.to_vec();
        if n == 0 {
            return out;
        }
        // The leading n-block of gram(k) inverts to leading_inverses[n-1] because the
        // coordinates past the block are decoupled.
        let m = if inverse { &self.leading_inverses[n - 1] } else { &self.block };
        for i in 0..n {
            out[i] = (0..n).filter(|&j| !v[j].is_zero()).map(|j| &m[(i, j)] * &v[j]).sum();
        }
        out
    }

    pub fn inner(&self, u: &[Rat], v: &[Rat]) -> Result<Rat> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch { expected: u.len(), found: v.len() });
        }
        Ok(dot(u, &self.apply(false, v)))
    }

    /// Riesz vector of a covector given by coefficients: the `v` with `c(x) = Q(x, v)`.
    pub fn riesz_of(&self, covector: &[Rat]) -> Vec<Rat> {
        self.apply(true, covector)
    }

    pub fn riesz_vector(&self, form: &LinearForm) -> Vec<Rat> {
        self.riesz_of(&form.to_rats())
    }

    /// `Q^*(c1, c2) = c1ᵀ gram⁻¹ c2` on coefficient vectors.
    pub fn dual_inner_of(&self, c1: &[Rat], c2: &[Rat]) -> Result<Rat> {
        if c1.len() != c2.len() {
            return Err(Error::DimensionMismatch { expected: c1.len(), found: c2.len() });
        }
        if c1.is_empty() {
            return Ok(Rat::zero());
        }
        Ok(dot(c1, &self.riesz_of(c2)))
    }

    pub fn dual_inner(&self, l1: &LinearForm, l2: &LinearForm) -> Result<Rat> {
        self.dual_inner_of(&l1.to_rats(), &l2.to_rats())
    }

    /// `{L : Q^*(L, w) = 0 for all w ∈ W}` for a subspace `W` of covectors.
    pub fn orth_complement_dual(&self, w: &Subspace) -> Subspace {
        if w.is_zero() {
            return Subspace::full(w.ambient_dim());
        }
        let rows = w.basis_rows().iter().map(|r| self.riesz_of(r)).collect();
        Subspace::kernel(&MatQ::with_cols(w.ambient_dim(), rows).expect("rows have ambient width"))
    }

    /// `W ⊥ W'` for the dual inner product.
    pub fn subspaces_orthogonal(&self, w1: &Subspace, w2: &Subspace) -> Result<bool> {
        if w1.ambient_dim() != w2.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: w1.ambient_dim(), found: w2.ambient_dim() });
        }
        for a in w1.basis_rows() {
            let ra = self.riesz_of(&a);
            for b in w2.basis_rows() {
                if !dot(&ra, &b).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    fn coupled() -> InnerProductFamily {
        InnerProductFamily::from_block(MatQ::from_i64(&[&[2, 1], &[1, 2]])).unwrap()
    }

    #[test]
    fn gram_extends_block_by_identity() {
        assert_eq!(InnerProductFamily::identity().gram(3), MatQ::identity(3));
        assert_eq!(coupled().gram(3), MatQ::from_i64(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, 1]]));
    }

    #[test]
    fn indefinite_block_is_rejected() {
        let err = InnerProductFamily::from_block(MatQ::from_i64(&[&[1, 2], &[2, 1]])).unwrap_err();
        assert!(matches!(err, Error::NotSpd(ref m) if m.contains("-3")), "{err}");
        assert!(InnerProductFamily::from_block(MatQ::from_i64(&[&[1, 2], &[0, 1]])).is_err());
    }

    #[test]
    fn inner_examples() {
        let id = InnerProductFamily::identity();
        assert_eq!(id.inner(&v(&[1, 0]), &v(&[0, 1])).unwrap(), rat(0, 1));
        assert_eq!(id.inner(&v(&[1, 2]), &v(&[1, 2])).unwrap(), rat(5, 1));
        assert_eq!(coupled().inner(&v(&[1, 0]), &v(&[0, 1])).unwrap(), rat(1, 1));
        assert!(id.inner(&v(&[1]), &v(&[1, 2])).is_err());
    }

    #[test]
    fn riesz_examples() {
        let id = InnerProductFamily::identity();
        let l = LinearForm::from_ints(&[2, 3]).unwrap();
        assert_eq!(id.riesz_vector(&l), v(&[2, 3]));
        let q = InnerProductFamily::from_block(MatQ::from_i64(&[&[2, 0], &[0, 1]])).unwrap();
        let z1 = LinearForm::from_ints(&[1, 0]).unwrap();
        assert_eq!(q.riesz_vector(&z1), vec![rat(1, 2), rat(0, 1)]);
    }

    #[test]
    fn dual_inner_examples() {
        let id = InnerProductFamily::identity();
        let d = LinearForm::from_ints(&[1, -1]).unwrap();
        let s = LinearForm::from_ints(&[1, 1]).unwrap();
        let z1 = LinearForm::from_ints(&[1, 0]).unwrap();
        let z2 = LinearForm::from_ints(&[0, 1]).unwrap();
        assert_eq!(id.dual_inner(&d, &s).unwrap(), rat(0, 1));
        assert_eq!(id.dual_inner(&z1, &z1).unwrap(), rat(1, 1));
        assert_eq!(coupled().dual_inner(&z1, &z2).unwrap(), rat(-1, 3));
    }

    #[test]
    fn complement_examples() {
        let id = InnerProductFamily::identity();
        let w = Subspace::span(2, vec![v(&[1, 1])]).unwrap();
        assert_eq!(id.orth_complement_dual(&w), Subspace::span(2, vec![v(&[1, -1])]).unwrap());
        assert_eq!(id.orth_complement_dual(&Subspace::zero(2)), Subspace::full(2));
        let w = Subspace::span(3, vec![v(&[1, 0, 0])]).unwrap();
        assert_eq!(
            id.orth_complement_dual(&w),
            Subspace::span(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap()
        );
    }

    #[test]
    fn dual_gram_inverts_gram_on_and_past_block() {
        let q = InnerProductFamily::from_block(MatQ::from_i64(&[&[3, 1, 0], &[1, 2, 1], &[0, 1, 2]])).unwrap();
        for k in 1..=5 {
            assert_eq!(q.gram(k).mul(&q.dual_gram(k)).unwrap(), MatQ::identity(k), "k={k}");
        }
    }
}
