//! The super-antisymmetrizer `∂: Hom(V, g) → Hom(Λ²V, V)`.

use std::collections::BTreeMap;

use crate::gsalg::linalg::{self, SparseVec};
use crate::gsalg::{Field, GradedDim, GradedMatrix, GradedSubspace, HomLayout, Matrix, Parity, GQ};
use crate::liesuper::SuperAlgebraBasis;

use super::ProlongError;

/// Basis of `Λ²V` in the super sense: pairs `a < b`, plus `a = b` when
/// `v_a` is odd. Pairs are ordered even-first by `|a| + |b|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lambda2Layout {
    v: GradedDim,
    pairs: Vec<(usize, usize)>,
    dim: GradedDim,
}

impl Lambda2Layout {
    pub fn new(v: GradedDim) -> Self {
        let n = v.total();
        let (mut even, mut odd) = (Vec::new(), Vec::new());
        for a in 0..n {
            for b in a..n {
                if a == b && !v.parity_of(a).is_odd() {
                    continue;
                }
                match v.parity_of(a) + v.parity_of(b) {
                    Parity::Even => even.push((a, b)),
                    Parity::Odd => odd.push((a, b)),
                }
            }
        }
        let dim = GradedDim::new(even.len(), odd.len());
        Self { v, pairs: even.into_iter().chain(odd).collect(), dim }
    }

    pub fn dim(&self) -> GradedDim {
        self.dim
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Coordinates of `Hom(Λ²V, V)`.
    pub fn hom_layout(&self) -> HomLayout {
        HomLayout::new(self.dim, self.v)
    }
}

/// A bilinear map `V × V → V` given on all ordered basis pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntisymmetricMap {
    v: GradedDim,
    values: Vec<Vec<GQ>>,
}

impl AntisymmetricMap {
    pub fn value(&self, a: usize, b: usize) -> &[GQ] {
        &self.values[a * self.v.total() + b]
    }

    /// Coordinates in `Hom(Λ²V, V)`.
    pub fn coords(&self) -> Vec<GQ> {
        let l2 = Lambda2Layout::new(self.v);
        let hom = l2.hom_layout();
        let mut out = vec![GQ::zero(); hom.dim().total()];
        for (p, &(a, b)) in l2.pairs().iter().enumerate() {
            for (g, x) in self.value(a, b).iter().enumerate() {
                out[hom.coord(p, g)] = x.clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(GQ::is_zero)
    }
}

/// `(∂S)(v, w) = ½ (S(v)(w) − (−1)^{|v||w|} S(w)(v))`, with `S` given by the
/// matrices `S(v_a)`.
pub fn super_antisymmetrize(v: GradedDim, s: &[Matrix]) -> Result<AntisymmetricMap, ProlongError> {
    let n = v.total();
    if s.len() != n || s.iter().any(|m| m.nrows() != n || m.ncols() != n) {
        return Err(ProlongError::Shape(format!("S needs {n} matrices of size {n}x{n}")));
    }
    let half = GQ::from_ratio(1, 2);
    let mut values = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let sign = GQ::from_int(Parity::koszul(v.parity_of(a), v.parity_of(b)));
            let val = (0..n)
                .map(|g| &half * &(&s[a][(g, b)] - &(&sign * &s[b][(g, a)])))
                .collect();
            values.push(val);
        }
    }
    Ok(AntisymmetricMap { v, values })
}

/// Matrix of `∂` from `Hom(V, g)` (coordinates relative to the canonical
/// basis of `g`) to `Hom(Λ²V, V)`.
pub fn partial_matrix(g: &SuperAlgebraBasis) -> GradedMatrix {
    let v = g.v();
    let n = v.total();
    let els = g.elements();
    let source = HomLayout::new(v, g.dim());
    let l2 = Lambda2Layout::new(v);
    let target = l2.hom_layout();
    let half = GQ::from_ratio(1, 2);
    let mut rows: Vec<BTreeMap<usize, GQ>> = vec![BTreeMap::new(); target.dim().total()];
    for (p, &(a, b)) in l2.pairs().iter().enumerate() {
        let sign = GQ::from_int(Parity::koszul(v.parity_of(a), v.parity_of(b)));
        for (beta, el) in els.iter().enumerate() {
            let m = el.matrix();
            for gamma in 0..n {
                let row = &mut rows[target.coord(p, gamma)];
                let x = &m[(gamma, b)];
                if !x.is_zero() {
                    *row.entry(source.coord(a, beta)).or_insert_with(GQ::zero) += &(&half * x);
                }
                let y = &m[(gamma, a)];
                if !y.is_zero() {
                    *row.entry(source.coord(b, beta)).or_insert_with(GQ::zero) -= &(&(&half * &sign) * y);
                }
            }
        }
    }
    let rows: Vec<SparseVec> = rows
        .into_iter()
        .map(|r| r.into_iter().filter(|(_, x)| !x.is_zero()).collect())
        .collect();
    GradedMatrix::new(target.dim(), source.dim(), rows).expect("consistent layouts")
}

/// `g^(1) = ker ∂` in the coordinates of `Hom(V, g)`.
pub fn first_prolongation(g: &SuperAlgebraBasis) -> Result<GradedSubspace, ProlongError> {
    Ok(partial_matrix(g).kernel()?)
}

/// A subspace of `Hom(V, g)` re-expressed inside `Hom(V, gl(V))`.
pub fn first_prolongation_in_gl(g: &SuperAlgebraBasis, s: &GradedSubspace) -> Result<GradedSubspace, ProlongError> {
    let v = g.v();
    let inner = HomLayout::new(v, g.dim());
    if s.ambient() != inner.dim() {
        return Err(ProlongError::Shape("subspace is not in Hom(V, g)".into()));
    }
    let gl = g.layout();
    let outer = HomLayout::new(v, gl.dim());
    let basis = g.space().basis_all().cloned().collect::<Vec<_>>();
    let vecs = s.basis_all().map(|x| {
        let mut out = vec![GQ::zero(); outer.dim().total()];
        for (k, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, beta) = inner.pair(k);
            for (slot, y) in basis[beta].iter().enumerate() {
                if !y.is_zero() {
                    out[outer.coord(a, slot)] += &(c * y);
                }
            }
        }
        out
    });
    Ok(GradedSubspace::from_coords(outer.dim(), Field::Complex, vecs.collect::<Vec<_>>())?)
}

/// `dim coker ∂ = dim Hom(Λ²V, V) − rank ∂`, per parity.
pub fn h02_dimension(g: &SuperAlgebraBasis) -> GradedDim {
    let m = partial_matrix(g);
    let mut out = m.target;
    // ∂ is even, so the rank splits over the parity of the columns
    for p in [Parity::Even, Parity::Odd] {
        let rows = m.rows.iter().enumerate().filter(|(r, _)| m.target.parity_of(*r) == p);
        let r = linalg::rank(rows.map(|(_, row)| row.clone()));
        match p {
            Parity::Even => out.even -= r,
            Parity::Odd => out.odd -= r,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::{osp_algebra, BilinearForm};

    #[test]
    fn symmetric_s_is_killed() {
        let v = GradedDim::new(2, 0);
        // S(e1)(e1) = e1, S(e1)(e2) = S(e2)(e1) = e2
        let s = [Matrix::from_int_rows(&[&[1, 0], &[0, 1]]), Matrix::from_int_rows(&[&[0, 0], &[1, 0]])];
        assert!(super_antisymmetrize(v, &s).unwrap().is_zero());
    }

    #[test]
    fn odd_pair_is_symmetrized() {
        let v = GradedDim::new(0, 2);
        let s = [Matrix::from_int_rows(&[&[0, 1], &[0, 0]]), Matrix::zeros(2, 2)];
        let d = super_antisymmetrize(v, &s).unwrap();
        assert_eq!(d.value(0, 1), d.value(1, 0));
        assert_eq!(d.value(0, 1), &[GQ::from_ratio(1, 2), GQ::zero()]);
    }

    #[test]
    fn e12_example() {
        let v = GradedDim::new(2, 0);
        let s = [Matrix::from_int_rows(&[&[0, 1], &[0, 0]]), Matrix::zeros(2, 2)];
        let d = super_antisymmetrize(v, &s).unwrap();
        assert_eq!(d.value(0, 1), &[GQ::from_ratio(1, 2), GQ::zero()]);
        assert_eq!(d.value(1, 0), &[GQ::from_ratio(-1, 2), GQ::zero()]);
    }

    #[test]
    fn gl1_first_prolongation() {
        let g = SuperAlgebraBasis::gl(GradedDim::new(1, 0));
        assert_eq!(first_prolongation(&g).unwrap().dim(), GradedDim::new(1, 0));
    }

    #[test]
    fn gl_has_no_torsion_obstruction() {
        for v in [GradedDim::new(2, 0), GradedDim::new(1, 1), GradedDim::new(0, 2)] {
            assert_eq!(h02_dimension(&SuperAlgebraBasis::gl(v)), GradedDim::ZERO, "{v}");
        }
    }

    #[test]
    fn zero_algebra_h02_is_everything() {
        let v = GradedDim::new(2, 1);
        let l2 = Lambda2Layout::new(v);
        assert_eq!(h02_dimension(&SuperAlgebraBasis::zero(v)), l2.hom_layout().dim());
    }

    #[test]
    fn so3_h02_from_rank_nullity() {
        let g = osp_algebra(&BilinearForm::standard_even(3, 0)).unwrap();
        let total = Lambda2Layout::new(g.v()).hom_layout().dim().total();
        let hom = HomLayout::new(g.v(), g.dim()).dim().total();
        assert!(first_prolongation(&g).unwrap().is_zero());
        assert_eq!(h02_dimension(&g).total(), total - hom);
    }

    #[test]
    fn partial_matches_direct_evaluation() {
        let g = SuperAlgebraBasis::gl(GradedDim::new(1, 1));
        let m = partial_matrix(&g);
        let src = HomLayout::new(g.v(), g.dim());
        let els = g.elements();
        for k in 0..src.dim().total() {
            let (a, beta) = src.pair(k);
            let mut s = vec![Matrix::zeros(2, 2); 2];
            s[a] = els[beta].matrix().clone();
            let direct = super_antisymmetrize(g.v(), &s).unwrap().coords();
            let col: Vec<GQ> = m
                .rows
                .iter()
                .map(|r| r.iter().find(|(c, _)| *c == k).map_or(GQ::zero(), |(_, x)| x.clone()))
                .collect();
            assert_eq!(col, direct);
        }
    }
}
