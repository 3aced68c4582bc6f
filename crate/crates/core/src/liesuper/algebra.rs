//! Subalgebras of `gl(V)` stored as canonical subspaces.

use crate::gsalg::{Field, GradedDim, GradedSubspace, HomLayout, Matrix};

use super::element::{bracket, GlElement};
use super::LieError;

/// A graded subspace of `gl(V)` in the coordinates of [`HomLayout`]`(V, V)`.
///
/// Closure under the bracket is not enforced at construction; use
/// [`is_subalgebra`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperAlgebraBasis {
    v: GradedDim,
    space: GradedSubspace,
}

impl SuperAlgebraBasis {
    pub fn from_elements<I>(v: GradedDim, elements: I) -> Result<Self, LieError>
    where
        I: IntoIterator<Item = GlElement>,
    {
        let layout = HomLayout::new(v, v);
        let mut coords = Vec::new();
        for e in elements {
            if e.dim() != v {
                return Err(LieError::Shape(format!("element of gl({}) in gl({v})", e.dim())));
            }
            coords.push(e.to_coords(&layout));
        }
        let space = GradedSubspace::from_coords(layout.dim(), Field::Complex, coords)?;
        Ok(Self { v, space })
    }

    pub fn from_subspace(v: GradedDim, space: GradedSubspace) -> Result<Self, LieError> {
        let layout = HomLayout::new(v, v);
        if space.ambient() != layout.dim() || space.field() != Field::Complex {
            return Err(LieError::Shape(format!(
                "subspace of {} is not a complex subspace of gl({v})",
                space.ambient()
            )));
        }
        Ok(Self { v, space })
    }

    pub fn zero(v: GradedDim) -> Self {
        let layout = HomLayout::new(v, v);
        Self { v, space: GradedSubspace::zero(layout.dim(), Field::Complex) }
    }

    pub fn gl(v: GradedDim) -> Self {
        let layout = HomLayout::new(v, v);
        Self { v, space: GradedSubspace::full(layout.dim(), Field::Complex) }
    }

    pub fn v(&self) -> GradedDim {
        self.v
    }

    pub fn layout(&self) -> HomLayout {
        HomLayout::new(self.v, self.v)
    }

    pub fn space(&self) -> &GradedSubspace {
        &self.space
    }

    pub fn dim(&self) -> GradedDim {
        self.space.dim()
    }

    /// Canonical basis elements, even ones first.
    pub fn elements(&self) -> Vec<GlElement> {
        let layout = self.layout();
        self.space
            .basis_all()
            .map(|c| GlElement::from_coords(self.v, &layout, c).expect("basis vectors are homogeneous"))
            .collect()
    }

    pub fn contains(&self, e: &GlElement) -> bool {
        e.dim() == self.v && self.space.contains(&e.to_coords(&self.layout()))
    }

    pub fn is_subalgebra_of(&self, other: &Self) -> Result<bool, LieError> {
        Ok(self.space.is_subspace_of(&other.space)?)
    }

    /// `T⁻¹ g T` for an even invertible `T`.
    pub fn conjugate(&self, t: &Matrix) -> Result<Self, LieError> {
        let t_el = GlElement::new(self.v, crate::gsalg::Parity::Even, t.clone())?;
        let t_inv = t_el
            .matrix()
            .inverse()
            .ok_or_else(|| LieError::Degenerate("conjugating matrix is singular".into()))?;
        let conj = self.elements().into_iter().map(|e| e.conjugate(t, &t_inv));
        Self::from_elements(self.v, conj.collect::<Vec<_>>())
    }
}

/// True iff the bracket of any two basis elements lies in the span.
pub fn is_subalgebra(s: &SuperAlgebraBasis) -> bool {
    let els = s.elements();
    for (k, a) in els.iter().enumerate() {
        for b in &els[k..] {
            let c = bracket(a, b).expect("common ambient");
            if !s.contains(&c) {
                return false;
            }
        }
    }
    true
}

/// Smallest subalgebra containing the given homogeneous elements.
pub fn generated_subalgebra<I>(v: GradedDim, gens: I) -> Result<SuperAlgebraBasis, LieError>
where
    I: IntoIterator<Item = GlElement>,
{
    let mut s = SuperAlgebraBasis::from_elements(v, gens)?;
    loop {
        let els = s.elements();
        let mut new = els.clone();
        for (k, a) in els.iter().enumerate() {
            for b in &els[k..] {
                let c = bracket(a, b)?;
                if !s.contains(&c) {
                    new.push(c);
                }
            }
        }
        if new.len() == els.len() {
            return Ok(s);
        }
        s = SuperAlgebraBasis::from_elements(v, new)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(dim: GradedDim, rows: &[&[i64]]) -> GlElement {
        GlElement::homogeneous(dim, Matrix::from_int_rows(rows)).unwrap()
    }

    #[test]
    fn gl_is_closed() {
        let g = SuperAlgebraBasis::gl(GradedDim::new(1, 1));
        assert_eq!(g.dim(), GradedDim::new(2, 2));
        assert!(is_subalgebra(&g));
    }

    #[test]
    fn abelian_line_is_closed() {
        let d = GradedDim::new(2, 0);
        let s = SuperAlgebraBasis::from_elements(d, [el(d, &[&[0, 1], &[0, 0]])]).unwrap();
        assert!(is_subalgebra(&s));
    }

    #[test]
    fn e12_e21_not_closed() {
        let d = GradedDim::new(2, 0);
        let s = SuperAlgebraBasis::from_elements(d, [el(d, &[&[0, 1], &[0, 0]]), el(d, &[&[0, 0], &[1, 0]])])
            .unwrap();
        assert!(!is_subalgebra(&s));
        let closure = generated_subalgebra(d, s.elements()).unwrap();
        assert_eq!(closure.dim(), GradedDim::new(3, 0));
        assert!(is_subalgebra(&closure));
    }

    #[test]
    fn elements_round_trip() {
        let g = SuperAlgebraBasis::gl(GradedDim::new(2, 1));
        let again = SuperAlgebraBasis::from_elements(g.v(), g.elements()).unwrap();
        assert_eq!(again, g);
    }
}
