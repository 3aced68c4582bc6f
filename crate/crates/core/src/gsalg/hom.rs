//! Coordinates on `Hom(V, W)`.

use super::subspace::{GradedDim, Parity};

/// Flattening of `Hom(V, W)` for graded `V`, `W` with fixed bases.
///
/// The basis map `v_a ↦ w_b` has parity `|a| + |b|`. Pairs are listed
/// row-major over `(a, b)` and then stably split even-first, so coordinate
/// vectors of `Hom(V, W)` follow the same even-first convention as every
/// other graded space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomLayout {
    source: GradedDim,
    target: GradedDim,
    dim: GradedDim,
    index: Vec<usize>,
    pairs: Vec<(usize, usize)>,
}

impl HomLayout {
    pub fn new(source: GradedDim, target: GradedDim) -> Self {
        let (ns, nt) = (source.total(), target.total());
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for a in 0..ns {
            for b in 0..nt {
                match source.parity_of(a) + target.parity_of(b) {
                    Parity::Even => even.push((a, b)),
                    Parity::Odd => odd.push((a, b)),
                }
            }
        }
        let dim = GradedDim::new(even.len(), odd.len());
        let pairs: Vec<_> = even.into_iter().chain(odd).collect();
        let mut index = vec![0; ns * nt];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            index[a * nt + b] = k;
        }
        Self { source, target, dim, index, pairs }
    }

    pub fn source(&self) -> GradedDim {
        self.source
    }

    pub fn target(&self) -> GradedDim {
        self.target
    }

    pub fn dim(&self) -> GradedDim {
        self.dim
    }

    /// Coordinate of the coefficient of `f(v_a)` on `w_b`.
    pub fn coord(&self, a: usize, b: usize) -> usize {
        self.index[a * self.target.total() + b]
    }

    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn parity(&self, k: usize) -> Parity {
        self.dim.parity_of(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_1_1_layout() {
        let v = GradedDim::new(1, 1);
        let h = HomLayout::new(v, v);
        assert_eq!(h.dim(), GradedDim::new(2, 2));
        assert_eq!(h.pairs(), &[(0, 0), (1, 1), (0, 1), (1, 0)]);
        for k in 0..4 {
            let (a, b) = h.pair(k);
            assert_eq!(h.coord(a, b), k);
        }
    }

    #[test]
    fn dims_multiply() {
        let h = HomLayout::new(GradedDim::new(2, 3), GradedDim::new(4, 1));
        assert_eq!(h.dim(), GradedDim::new(2 * 4 + 3, 2 + 3 * 4));
    }
}
