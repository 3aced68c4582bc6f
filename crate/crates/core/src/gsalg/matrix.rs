//! Dense matrices over ℚ(i) and kernels of graded linear maps.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::linalg::{self, SparseVec};
use super::scalar::GQ;
use super::subspace::{Field, GradedDim, GradedSubspace};
use super::GsError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GQ>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![GQ::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = GQ::one();
        }
        m
    }

    /// Matrix unit `E_{rc}`.
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(r, c)] = GQ::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<GQ>>) -> Result<Self, GsError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(GsError::Shape("ragged matrix rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| GQ::from_int(x)).collect())
            .collect();
        Self::from_rows(rows).expect("rectangular literal")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[GQ] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<GQ> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<GQ>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GQ::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &GQ) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn apply(&self, v: &[GQ]) -> Vec<GQ> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = GQ::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Entries flattened row-major.
    pub fn entries(&self) -> &[GQ] {
        &self.data
    }

    pub fn rank(&self) -> usize {
        linalg::rank((0..self.rows).map(|r| linalg::to_sparse(self.row(r))))
    }

    /// Exact inverse by Gauss–Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let rows = (0..n).map(|r| {
            let mut row = self.row(r).to_vec();
            row.extend((0..n).map(|c| if c == r { GQ::one() } else { GQ::zero() }));
            linalg::to_sparse(&row)
        });
        let rref = linalg::rref_rows(rows);
        if rref.len() < n || rref.iter().enumerate().any(|(k, row)| row[0].0 != k) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for (r, row) in rref.iter().enumerate() {
            for (c, x) in row.iter().filter(|(c, _)| *c >= n) {
                inv[(r, c - n)] = x.clone();
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> GQ {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = GQ::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return GQ::zero();
            };
            if p != col {
                for c in 0..n {
                    let tmp = a[(p, c)].clone();
                    a[(p, c)] = a[(col, c)].clone();
                    a[(col, c)] = tmp;
                }
                det = -det;
            }
            let piv = a[(col, col)].clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] * &inv;
                for c in col..n {
                    let d = &f * &a[(col, c)];
                    a[(r, c)] -= &d;
                }
            }
        }
        det
    }

    /// Block-diagonal matrix `diag(a, b)`.
    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        m.set_block(0, 0, a);
        m.set_block(a.rows, a.cols, b);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        m
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self[(r, c)].is_zero() {
                    continue;
                }
                for rr in 0..other.rows {
                    for cc in 0..other.cols {
                        m[(r * other.rows + rr, c * other.cols + cc)] = &self[(r, c)] * &other[(rr, cc)];
                    }
                }
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GQ;
    fn index(&self, (r, c): (usize, usize)) -> &GQ {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut GQ {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|r| self.row(r))).finish()
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut m = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        m[(r, c)] += &(a * b);
                    }
                }
            }
        }
        m
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

/// A linear map between graded coordinate spaces, stored as sparse rows.
///
/// Rows are indexed by the target coordinates, columns by the source
/// coordinates, both in even-first order.
#[derive(Debug, Clone)]
pub struct GradedMatrix {
    pub target: GradedDim,
    pub source: GradedDim,
    pub rows: Vec<SparseVec>,
}

impl GradedMatrix {
    pub fn new(target: GradedDim, source: GradedDim, rows: Vec<SparseVec>) -> Result<Self, GsError> {
        if rows.len() != target.total() {
            return Err(GsError::Shape(format!(
                "{} rows for target dimension {}",
                rows.len(),
                target
            )));
        }
        if rows.iter().flatten().any(|(c, _)| *c >= source.total()) {
            return Err(GsError::Shape("column index out of range".into()));
        }
        Ok(Self { target, source, rows })
    }

    pub fn from_dense(target: GradedDim, source: GradedDim, m: &Matrix) -> Result<Self, GsError> {
        if m.nrows() != target.total() || m.ncols() != source.total() {
            return Err(GsError::Shape(format!(
                "{}x{} matrix for map {} -> {}",
                m.nrows(),
                m.ncols(),
                source,
                target
            )));
        }
        let rows = (0..m.nrows()).map(|r| linalg::to_sparse(m.row(r))).collect();
        Self::new(target, source, rows)
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.rows.iter().cloned())
    }

    /// Kernel as a graded subspace of the source.
    ///
    /// For a homogeneous map the kernel is graded; an inhomogeneous map may
    /// have an inhomogeneous kernel, which is reported as a parity error.
    pub fn kernel(&self) -> Result<GradedSubspace, GsError> {
        let n = self.source.total();
        let basis = linalg::kernel_basis(self.rows.iter().cloned(), n);
        GradedSubspace::from_coords(
            self.source,
            Field::Complex,
            basis.iter().map(|v| linalg::to_dense(v, n)),
        )
    }
}

/// Kernel of a graded matrix; `dim ker + rank = number of columns`.
pub fn kernel(m: &GradedMatrix) -> Result<GradedSubspace, GsError> {
    m.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        let d3 = GradedDim::new(3, 0);
        let id = GradedMatrix::from_dense(d3, d3, &Matrix::identity(3)).unwrap();
        assert!(kernel(&id).unwrap().is_zero());

        let d21 = GradedDim::new(2, 1);
        let z = GradedMatrix::from_dense(d21, d21, &Matrix::zeros(3, 3)).unwrap();
        assert_eq!(kernel(&z).unwrap().dim(), d21);

        let d2 = GradedDim::new(2, 0);
        let m = GradedMatrix::from_dense(d2, d2, &Matrix::from_int_rows(&[&[1, 1], &[2, 2]])).unwrap();
        let k = kernel(&m).unwrap();
        assert_eq!(k.dim(), GradedDim::new(1, 0));
        assert!(k.contains(&[GQ::one(), GQ::from_int(-1)]));
        assert_eq!(k.dim().total() + m.rank(), 2);
    }

    #[test]
    fn shape_mismatch() {
        let d2 = GradedDim::new(2, 0);
        assert!(GradedMatrix::from_dense(d2, d2, &Matrix::identity(3)).is_err());
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_int_rows(&[&[2, 1], &[5, 3]]);
        assert_eq!(m.det(), GQ::one());
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert!(Matrix::from_int_rows(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
