//! Supersymmetric bilinear forms and the algebras preserving them.

use std::collections::BTreeMap;

use crate::gsalg::linalg::{self, SparseVec};
use crate::gsalg::{Field, GradedDim, GradedSubspace, HomLayout, Matrix, Parity, GQ};

use super::algebra::SuperAlgebraBasis;
use super::LieError;

/// A nondegenerate bilinear form `J(v, w) = vᵗ J w` with
/// `J(v, w) = (−1)^{|v||w|} J(w, v)`.
///
/// An even form pairs `V_0` with `V_0` (symmetric) and `V_1` with `V_1`
/// (antisymmetric); an odd form pairs `V_0` with `V_1` (symmetric).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    dim: GradedDim,
    parity: Parity,
    matrix: Matrix,
}

impl BilinearForm {
    pub fn new(dim: GradedDim, parity: Parity, matrix: Matrix) -> Result<Self, LieError> {
        let n = dim.total();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(LieError::Shape(format!("form matrix must be {n}x{n}")));
        }
        for a in 0..n {
            for b in 0..n {
                let (pa, pb) = (dim.parity_of(a), dim.parity_of(b));
                let x = &matrix[(a, b)];
                if !x.is_zero() && pa + pb != parity {
                    return Err(LieError::InvalidForm(format!("{parity} form has an entry at ({a}, {b})")));
                }
                let y = &matrix[(b, a)];
                let ok = if Parity::koszul(pa, pb) < 0 { *x == -y } else { x == y };
                if !ok {
                    return Err(LieError::InvalidForm(format!("not supersymmetric at ({a}, {b})")));
                }
            }
        }
        if parity == Parity::Odd && dim.even != dim.odd {
            return Err(LieError::Degenerate(format!("odd form on {dim} needs equal even and odd dimension")));
        }
        if matrix.det().is_zero() {
            return Err(LieError::Degenerate("determinant is zero".into()));
        }
        Ok(Self { dim, parity, matrix })
    }

    /// `J = I_m ⊕ [[0, I_n], [−I_n, 0]]` on `ℂ^{m|2n}`.
    pub fn standard_even(m: usize, n: usize) -> Self {
        let dim = GradedDim::new(m, 2 * n);
        let mut j = Matrix::zeros(m + 2 * n, m + 2 * n);
        for k in 0..m {
            j[(k, k)] = GQ::one();
        }
        for k in 0..n {
            j[(m + k, m + n + k)] = GQ::one();
            j[(m + n + k, m + k)] = GQ::from_int(-1);
        }
        Self::new(dim, Parity::Even, j).expect("standard even form")
    }

    /// `J = [[0, I_n], [I_n, 0]]` on `ℂ^{n|n}`.
    pub fn standard_odd(n: usize) -> Self {
        let dim = GradedDim::new(n, n);
        let mut j = Matrix::zeros(2 * n, 2 * n);
        for k in 0..n {
            j[(k, n + k)] = GQ::one();
            j[(n + k, k)] = GQ::one();
        }
        Self::new(dim, Parity::Odd, j).expect("standard odd form")
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

    /// `Tᵗ J T`.
    pub fn pullback(&self, t: &Matrix) -> Result<Self, LieError> {
        let m = &(&t.transpose() * &self.matrix) * t;
        Self::new(self.dim, self.parity, m)
    }
}

/// Solves `J(Av, w) + (−1)^{|A||v|} J(v, Aw) = 0` separately in each parity.
fn invariance_algebra(j: &BilinearForm) -> Result<SuperAlgebraBasis, LieError> {
    let v = j.dim;
    let n = v.total();
    let layout = HomLayout::new(v, v);
    let jm = &j.matrix;
    let mut basis = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        let offset = if p == Parity::Even { 0 } else { layout.dim().even };
        let nvars = layout.dim().get(p);
        let var = |a: usize, c: usize| {
            let k = layout.coord(a, c);
            (layout.parity(k) == p).then(|| k - offset)
        };
        let mut rows = Vec::new();
        for a in 0..n {
            let sign = GQ::from_int(Parity::koszul(p, v.parity_of(a)));
            for b in 0..n {
                // (Aᵗ J)[a][b] + sign (J A)[a][b], with A[c][a] = x_(a,c)
                let mut row: BTreeMap<usize, GQ> = BTreeMap::new();
                for c in 0..n {
                    if let Some(x) = var(a, c) {
                        if !jm[(c, b)].is_zero() {
                            *row.entry(x).or_insert_with(GQ::zero) += &jm[(c, b)];
                        }
                    }
                    if let Some(x) = var(b, c) {
                        if !jm[(a, c)].is_zero() {
                            *row.entry(x).or_insert_with(GQ::zero) += &(&sign * &jm[(a, c)]);
                        }
                    }
                }
                let row: SparseVec = row.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
        for k in linalg::kernel_basis(rows, nvars) {
            let mut full = vec![GQ::zero(); layout.dim().total()];
            for (x, val) in k {
                full[x + offset] = val;
            }
            basis.push(full);
        }
    }
    let space = GradedSubspace::from_coords(layout.dim(), Field::Complex, basis)?;
    SuperAlgebraBasis::from_subspace(v, space)
}

/// `osp(V, J)` for an even form.
pub fn osp_algebra(j: &BilinearForm) -> Result<SuperAlgebraBasis, LieError> {
    if j.parity != Parity::Even {
        return Err(LieError::InvalidForm("osp needs an even form".into()));
    }
    invariance_algebra(j)
}

/// `p(V, J)` for an odd form.
pub fn p_algebra(j: &BilinearForm) -> Result<SuperAlgebraBasis, LieError> {
    if j.parity != Parity::Odd {
        return Err(LieError::InvalidForm("p needs an odd form".into()));
    }
    invariance_algebra(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::is_subalgebra;

    #[test]
    fn so2() {
        let g = osp_algebra(&BilinearForm::standard_even(2, 0)).unwrap();
        assert_eq!(g.dim(), GradedDim::new(1, 0));
    }

    #[test]
    fn sp2() {
        let g = osp_algebra(&BilinearForm::standard_even(0, 1)).unwrap();
        assert_eq!(g.dim(), GradedDim::new(3, 0));
    }

    #[test]
    fn osp_2_2() {
        let g = osp_algebra(&BilinearForm::standard_even(2, 1)).unwrap();
        assert_eq!(g.dim(), GradedDim::new(4, 4));
        assert!(is_subalgebra(&g));
    }

    #[test]
    fn p_even_part_is_gl() {
        for n in 1..=3 {
            let g = p_algebra(&BilinearForm::standard_odd(n)).unwrap();
            assert_eq!(g.dim().even, n * n, "n = {n}");
            assert!(is_subalgebra(&g));
        }
    }

    #[test]
    fn degenerate_forms_rejected() {
        let d = GradedDim::new(2, 0);
        let err = BilinearForm::new(d, Parity::Even, Matrix::from_int_rows(&[&[1, 1], &[1, 1]])).unwrap_err();
        assert!(matches!(err, LieError::Degenerate(_)));
        let d = GradedDim::new(2, 1);
        assert!(BilinearForm::new(d, Parity::Odd, Matrix::zeros(3, 3)).is_err());
        let d = GradedDim::new(0, 2);
        assert!(BilinearForm::new(d, Parity::Even, Matrix::identity(2)).is_err());
    }
}
