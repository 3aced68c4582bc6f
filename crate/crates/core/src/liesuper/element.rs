//! Homogeneous elements of `gl(V)` and the super commutator.

use crate::gsalg::{GradedDim, HomLayout, Matrix, Parity, GQ};

use super::LieError;

/// A homogeneous endomorphism of `V = V_0 ⊕ V_1` (even coordinates first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GlElement {
    dim: GradedDim,
    parity: Parity,
    matrix: Matrix,
}

/// Parity of the matrix block containing entry `(r, c)`.
fn block_parity(dim: GradedDim, r: usize, c: usize) -> Parity {
    dim.parity_of(r) + dim.parity_of(c)
}

impl GlElement {
    pub fn new(dim: GradedDim, parity: Parity, matrix: Matrix) -> Result<Self, LieError> {
        let n = dim.total();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(LieError::Shape(format!(
                "{}x{} matrix on a space of dimension {dim}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        for r in 0..n {
            for c in 0..n {
                if !matrix[(r, c)].is_zero() && block_parity(dim, r, c) != parity {
                    return Err(LieError::Parity(format!(
                        "{parity} element has a nonzero entry at ({r}, {c})"
                    )));
                }
            }
        }
        Ok(Self { dim, parity, matrix })
    }

    /// Infers the parity from the nonzero blocks; the zero matrix is even.
    pub fn homogeneous(dim: GradedDim, matrix: Matrix) -> Result<Self, LieError> {
        let n = dim.total();
        let mut parity = None;
        for r in 0..n.min(matrix.nrows()) {
            for c in 0..n.min(matrix.ncols()) {
                if !matrix[(r, c)].is_zero() {
                    parity.get_or_insert(block_parity(dim, r, c));
                }
            }
        }
        Self::new(dim, parity.unwrap_or(Parity::Even), matrix)
    }

    pub fn zero(dim: GradedDim, parity: Parity) -> Self {
        let n = dim.total();
        Self { dim, parity, matrix: Matrix::zeros(n, n) }
    }

    pub fn dim(&self) -> GradedDim {
        self.dim
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Coordinates in `Hom(V, V)`: the coefficient of `A v_a` on `v_b` is `A[b][a]`.
    pub fn to_coords(&self, layout: &HomLayout) -> Vec<GQ> {
        let mut out = vec![GQ::zero(); layout.dim().total()];
        for (k, &(a, b)) in layout.pairs().iter().enumerate() {
            out[k] = self.matrix[(b, a)].clone();
        }
        out
    }

    pub fn from_coords(dim: GradedDim, layout: &HomLayout, coords: &[GQ]) -> Result<Self, LieError> {
        if coords.len() != layout.dim().total() {
            return Err(LieError::Shape("coordinate vector does not match gl(V)".into()));
        }
        let n = dim.total();
        let mut m = Matrix::zeros(n, n);
        for (k, &(a, b)) in layout.pairs().iter().enumerate() {
            m[(b, a)] = coords[k].clone();
        }
        Self::homogeneous(dim, m)
    }

    pub fn scale(&self, s: &GQ) -> Self {
        Self { dim: self.dim, parity: self.parity, matrix: self.matrix.scale(s) }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LieError> {
        self.compatible(other)?;
        if self.parity != other.parity {
            return Err(LieError::Parity("sum of elements of different parity".into()));
        }
        Ok(Self { dim: self.dim, parity: self.parity, matrix: &self.matrix + &other.matrix })
    }

    /// `T⁻¹ A T` for an even invertible `T`.
    pub fn conjugate(&self, t: &Matrix, t_inv: &Matrix) -> Self {
        Self { dim: self.dim, parity: self.parity, matrix: &(t_inv * &self.matrix) * t }
    }

    fn compatible(&self, other: &Self) -> Result<(), LieError> {
        if self.dim != other.dim {
            return Err(LieError::Shape(format!("gl({}) vs gl({})", self.dim, other.dim)));
        }
        Ok(())
    }
}

/// `[A, B] = AB − (−1)^{|A||B|} BA`.
pub fn bracket(a: &GlElement, b: &GlElement) -> Result<GlElement, LieError> {
    a.compatible(b)?;
    let ab = &a.matrix * &b.matrix;
    let ba = &b.matrix * &a.matrix;
    let m = if Parity::koszul(a.parity, b.parity) < 0 { &ab + &ba } else { &ab - &ba };
    Ok(GlElement { dim: a.dim, parity: a.parity + b.parity, matrix: m })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(dim: GradedDim, rows: &[&[i64]]) -> GlElement {
        GlElement::homogeneous(dim, Matrix::from_int_rows(rows)).unwrap()
    }

    #[test]
    fn even_self_bracket_vanishes() {
        let d = GradedDim::new(1, 1);
        let a = el(d, &[&[2, 0], &[0, 5]]);
        assert!(bracket(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn odd_self_bracket_is_twice_square() {
        let d = GradedDim::new(1, 1);
        let x = el(d, &[&[0, 1], &[1, 0]]);
        let b = bracket(&x, &x).unwrap();
        assert_eq!(b.parity(), Parity::Even);
        assert_eq!(b.matrix(), &Matrix::identity(2).scale(&GQ::from_int(2)));
    }

    #[test]
    fn e12_e21() {
        let d = GradedDim::new(2, 0);
        let b = bracket(&el(d, &[&[0, 1], &[0, 0]]), &el(d, &[&[0, 0], &[1, 0]])).unwrap();
        assert_eq!(b.matrix(), &Matrix::from_int_rows(&[&[1, 0], &[0, -1]]));
    }

    #[test]
    fn inhomogeneous_rejected() {
        let d = GradedDim::new(1, 1);
        assert!(GlElement::homogeneous(d, Matrix::from_int_rows(&[&[1, 1], &[0, 0]])).is_err());
        assert!(GlElement::new(d, Parity::Odd, Matrix::identity(2)).is_err());
    }

    #[test]
    fn coords_round_trip() {
        let d = GradedDim::new(2, 1);
        let layout = HomLayout::new(d, d);
        let a = el(d, &[&[1, 2, 0], &[3, 4, 0], &[0, 0, 5]]);
        let c = a.to_coords(&layout);
        assert_eq!(GlElement::from_coords(d, &layout, &c).unwrap(), a);
    }
}
