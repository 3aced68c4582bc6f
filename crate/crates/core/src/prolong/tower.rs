//! The tower `g^(k) ⊆ Hom(V, g^(k−1))`.

use std::collections::HashMap;

use crate::gsalg::linalg::SparseVec;
use crate::gsalg::{linalg, Field, GradedDim, GradedSubspace, HomLayout, Parity, GQ};
use crate::liesuper::SuperAlgebraBasis;

use super::ProlongError;

/// Levels `g^(0) = g, g^(1), …`, each stored in the coordinates of
/// `Hom(V, U)` where `U` is the previous level with its canonical basis
/// (even vectors first). The previous level of `g^(0)` is `V` itself.
#[derive(Debug, Clone)]
pub struct ProlongationTower {
    v: GradedDim,
    levels: Vec<GradedSubspace>,
}

impl ProlongationTower {
    pub fn new(g: &SuperAlgebraBasis) -> Self {
        Self { v: g.v(), levels: vec![g.space().clone()] }
    }

    pub fn v(&self) -> GradedDim {
        self.v
    }

    /// Number of levels computed so far.
    pub fn computed(&self) -> usize {
        self.levels.len()
    }

    /// Layout of the ambient `Hom(V, U)` of level `k`.
    pub fn layout(&self, k: usize) -> HomLayout {
        let target = if k == 0 { self.v } else { self.levels[k - 1].dim() };
        HomLayout::new(self.v, target)
    }

    /// Level `k`, computing missing levels on the way.
    pub fn level(&mut self, k: usize) -> Result<&GradedSubspace, ProlongError> {
        while self.levels.len() <= k {
            let next = self.next_level()?;
            self.levels.push(next);
        }
        Ok(&self.levels[k])
    }

    pub fn computed_level(&self, k: usize) -> Option<&GradedSubspace> {
        self.levels.get(k)
    }

    /// Graded dimensions of the computed levels.
    pub fn dims(&self) -> Vec<GradedDim> {
        self.levels.iter().map(GradedSubspace::dim).collect()
    }

    /// `{X ∈ Hom(V, U) | X(v)(w) = (−1)^{|v||w|} X(w)(v)}` with `U` the last
    /// computed level.
    fn next_level(&self) -> Result<GradedSubspace, ProlongError> {
        let k = self.levels.len();
        let prev = &self.levels[k - 1];
        let prev_layout = self.layout(k - 1);
        let layout = HomLayout::new(self.v, prev.dim());
        if prev.is_zero() {
            return Ok(GradedSubspace::zero(layout.dim(), Field::Complex));
        }
        let v = self.v;
        let n = v.total();
        let inner = prev_layout.target().total();
        let row_id = |a: usize, b: usize, g: usize| (a * n + b) * inner + g;
        let mut rows: HashMap<usize, HashMap<usize, GQ>> = HashMap::new();
        for (beta, el) in prev.basis_all().enumerate() {
            for (slot, x) in el.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let (b, g) = prev_layout.pair(slot);
                for a in 0..n {
                    let var = layout.coord(a, beta);
                    let sign = Parity::koszul(v.parity_of(a), v.parity_of(b));
                    // row (a, b, g) gets X(v_a)(v_b), row (b, a, g) gets −s X(v_a)(v_b)
                    *rows.entry(row_id(a, b, g)).or_default().entry(var).or_insert_with(GQ::zero) += x;
                    let y = if sign < 0 { x.clone() } else { -x };
                    *rows.entry(row_id(b, a, g)).or_default().entry(var).or_insert_with(GQ::zero) += &y;
                }
            }
        }
        let mut ids: Vec<usize> = rows.keys().copied().collect();
        ids.sort_unstable();
        let sparse = ids.into_iter().map(|id| {
            let mut r: SparseVec = rows[&id].iter().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (*c, x.clone())).collect();
            r.sort_by_key(|e| e.0);
            r
        });
        let m = layout.dim().total();
        let kernel = linalg::kernel_basis(sparse.collect::<Vec<_>>(), m);
        Ok(GradedSubspace::from_coords(
            layout.dim(),
            Field::Complex,
            kernel.iter().map(|s| linalg::to_dense(s, m)).collect::<Vec<_>>(),
        )?)
    }
}

/// Level `k` of the tower (cached).
pub fn kth_prolongation(tower: &mut ProlongationTower, k: usize) -> Result<&GradedSubspace, ProlongError> {
    tower.level(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiniteType {
    /// `g^(k) = 0` with `k` minimal.
    Finite(usize),
    /// No vanishing level up to and including `kmax`.
    Undecided(usize),
}

pub fn finite_type(g: &SuperAlgebraBasis, kmax: usize) -> Result<FiniteType, ProlongError> {
    let mut tower = ProlongationTower::new(g);
    finite_type_of(&mut tower, kmax)
}

/// [`finite_type`] on an existing tower.
pub fn finite_type_of(tower: &mut ProlongationTower, kmax: usize) -> Result<FiniteType, ProlongError> {
    for k in 0..=kmax {
        if tower.level(k)?.is_zero() {
            return Ok(FiniteType::Finite(k));
        }
    }
    Ok(FiniteType::Undecided(kmax))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liesuper::{osp_algebra, BilinearForm};
    use crate::prolong::first_prolongation;

    #[test]
    fn zero_algebra_vanishes() {
        let g = SuperAlgebraBasis::zero(GradedDim::new(2, 1));
        let mut t = ProlongationTower::new(&g);
        for k in 1..4 {
            assert!(t.level(k).unwrap().is_zero());
        }
        assert_eq!(finite_type(&g, 3).unwrap(), FiniteType::Finite(0));
    }

    #[test]
    fn gl1_never_terminates() {
        let g = SuperAlgebraBasis::gl(GradedDim::new(1, 0));
        let mut t = ProlongationTower::new(&g);
        for k in 0..=6 {
            assert_eq!(t.level(k).unwrap().dim(), GradedDim::new(1, 0));
        }
        assert_eq!(finite_type(&g, 6).unwrap(), FiniteType::Undecided(6));
    }

    #[test]
    fn gl_n_first_prolongation_is_symmetric_maps() {
        for n in 1..=3 {
            let g = SuperAlgebraBasis::gl(GradedDim::new(n, 0));
            let mut t = ProlongationTower::new(&g);
            assert_eq!(t.level(1).unwrap().dim().total(), n * n * (n + 1) / 2);
        }
    }

    #[test]
    fn routes_agree_on_gl_1_1() {
        let g = SuperAlgebraBasis::gl(GradedDim::new(1, 1));
        let mut t = ProlongationTower::new(&g);
        assert_eq!(t.level(1).unwrap(), &first_prolongation(&g).unwrap());
    }

    #[test]
    fn osp_is_finite_of_order_one() {
        let g = osp_algebra(&BilinearForm::standard_even(2, 1)).unwrap();
        assert_eq!(finite_type(&g, 4).unwrap(), FiniteType::Finite(1));
    }
}
