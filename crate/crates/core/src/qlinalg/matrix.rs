use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rat, Result};

/// Dense rectangular matrix of rationals, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatQ {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl MatQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatQ { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(MatQ { rows: n, cols, data })
    }

    /// Like [`MatQ::from_rows`] with an explicit column count, so that empty row lists
    /// still carry their width.
    pub fn with_cols(cols: usize, rows: Vec<Vec<Rat>>) -> Result<Self> {
        if rows.is_empty() {
            return Ok(Self::zeros(0, cols));
        }
        let m = Self::from_rows(rows)?;
        if m.cols != cols {
            return Err(Error::DimensionMismatch { expected: cols, found: m.cols });
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect()).collect(),
        )
        .expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn mul(&self, other: &MatQ) -> Result<MatQ> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Leading principal `n × n` submatrix.
    pub fn leading_block(&self, n: usize) -> MatQ {
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn determinant(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = a[c * n + c].clone();
            det *= &pivot;
            for r in c + 1..n {
                let f = &a[r * n + c] / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let t = &f * &a[c * n + j];
                    a[r * n + j] -= t;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<MatQ> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let (reduced, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = reduced[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Reduced row echelon form and pivot columns.
    ///
    /// Elimination runs fraction-free on integer rows (each row is scaled to a primitive
    /// integer vector, and row operations are cross-multiplications followed by content
    /// removal); only the final normalisation of pivots to 1 introduces fractions.
    pub fn rref(&self) -> (MatQ, Vec<usize>) {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows).map(|i| primitive_int_row(self.row(i))).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let prow = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let a = &prow[c];
                let b = row[c].clone();
                for j in 0..self.cols {
                    row[j] = a * &row[j] - &b * &prow[j];
                }
                make_primitive(row);
            }
            pivots.push(c);
            r += 1;
        }
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, &c) in pivots.iter().enumerate() {
            let pivot = rows[i][c].clone();
            for j in 0..self.cols {
                out[(i, j)] = Rat::new(rows[i][j].clone(), pivot.clone());
            }
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space `{v : M v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (reduced, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -reduced[(i, free)].clone();
            }
            basis.push(v);
        }
        basis
    }
}

impl std::ops::Index<(usize, usize)> for MatQ {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for MatQ {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for MatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

pub(crate) fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

/// Scales a rational row to coprime integers, preserving the sign of every entry.
pub(crate) fn primitive_int_row(row: &[Rat]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Primitive integer row whose first nonzero entry is positive.
pub(crate) fn normalized_int_row(row: &[Rat]) -> Vec<BigInt> {
    let mut out = primitive_int_row(row);
    if out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in out.iter_mut() {
            *x = -&*x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn determinant_and_inverse_of_2x2() {
        let m = MatQ::from_i64(&[&[2, 1], &[1, 2]]);
        assert_eq!(m.determinant().unwrap(), rat(3, 1));
        let inv = m.inverse().unwrap();
        assert_eq!(inv[(0, 1)], rat(-1, 3));
        assert_eq!(m.mul(&inv).unwrap(), MatQ::identity(2));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = MatQ::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(m.inverse().is_none());
        assert_eq!(m.determinant().unwrap(), rat(0, 1));
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rref_is_reduced() {
        let m = MatQ::from_i64(&[&[2, 4, 6], &[1, 3, 5], &[3, 7, 11]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r.to_rows()[0], vec![rat(1, 1), rat(0, 1), rat(-1, 1)]);
        assert_eq!(r.to_rows()[1], vec![rat(0, 1), rat(1, 1), rat(2, 1)]);
        assert!(r.row(2).iter().all(Zero::is_zero));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = MatQ::from_i64(&[&[1, 1, 0], &[0, 1, 1]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).unwrap().iter().all(Zero::is_zero));
    }
}
