//! Superdomain maps: the Jacobian criterion for frame automorphisms and the
//! product decomposition of families over odd parameters.
//!
//! A family over `ℝ^{0|p}` of maps `ℝ^{n|m} → ℝ^{n|m}` is stored as the images
//! of the coordinates, as functions on `ℝ^{n | p+m}`: the parameters are the
//! odd generators `η_1..η_p`, the domain's own odd coordinates come after.

use std::collections::BTreeMap;

use crate::gsalg::{Parity, GQ};

use super::field::{vf_bracket, SuperVectorField};
use super::poly::GrassmannPoly;
use super::CalcError;

pub type PolyMatrix = Vec<Vec<GrassmannPoly>>;

/// `φ♯(q_j)` for every coordinate `q_j` of `ℝ^{n|m}`, over `params` odd
/// parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub n_even: usize,
    pub n_odd: usize,
    pub params: usize,
    pub images: Vec<GrassmannPoly>,
}

impl Family {
    pub fn new(n_even: usize, n_odd: usize, params: usize, images: Vec<GrassmannPoly>) -> Result<Self, CalcError> {
        if images.len() != n_even + n_odd {
            return Err(CalcError::Shape(format!("{} images for {} coordinates", images.len(), n_even + n_odd)));
        }
        for (j, f) in images.iter().enumerate() {
            if (f.n_even(), f.n_odd()) != (n_even, params + n_odd) {
                return Err(CalcError::Domain(format!(
                    "image {j} must live on R^{{{n_even}|{}}}",
                    params + n_odd
                )));
            }
            let want = if j < n_even { Parity::Even } else { Parity::Odd };
            if !f.is_homogeneous_of(want) {
                return Err(CalcError::Parity(format!("image of coordinate {j} must be {want}")));
            }
        }
        Ok(Self { n_even, n_odd, params, images })
    }

    /// The identity map, without parameters.
    pub fn identity(n_even: usize, n_odd: usize) -> Self {
        let images = (0..n_even + n_odd).map(|k| GrassmannPoly::coordinate(n_even, n_odd, k)).collect();
        Self { n_even, n_odd, params: 0, images }
    }

    /// `∂_{q_l}` in the parameter-extended coordinates.
    fn partial(&self, f: &GrassmannPoly, l: usize) -> GrassmannPoly {
        if l < self.n_even {
            f.partial_x(l)
        } else {
            f.partial_eta(self.params + l - self.n_even)
        }
    }

    /// `Jf_{ij} = ∂_{q_i} φ♯(q_j)`.
    pub fn jacobian(&self) -> PolyMatrix {
        let dim = self.n_even + self.n_odd;
        (0..dim).map(|i| self.images.iter().map(|f| self.partial(f, i)).collect()).collect()
    }

    fn param_mask(&self, from: usize) -> u32 {
        ((1u32 << self.params) - 1) & !((1u32 << from) - 1)
    }
}

fn mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter().zip(b).fold(GrassmannPoly::zero(row[0].n_even(), row[0].n_odd()), |acc, (x, brow)| {
                        &acc + &(x * &brow[j])
                    })
                })
                .collect()
        })
        .collect()
}

/// Coefficient matrix `A` of a frame, `E_k = Σ_l A_{kl} ∂_l`.
pub fn frame_matrix(frame: &[SuperVectorField]) -> PolyMatrix {
    frame.iter().map(|f| f.coeffs().to_vec()).collect()
}

/// Whether `f` preserves the frame with coefficient matrix `A`, tested as
/// `A·Jf = f♯(A)` (`Jf = A⁻¹ f♯(A)` without the inverse). `f` may depend on
/// odd parameters; `A` lives on the parameter-free domain.
pub fn is_parallelization_automorphism(f: &Family, a: &PolyMatrix) -> Result<bool, CalcError> {
    let dim = f.n_even + f.n_odd;
    if a.len() != dim || a.iter().any(|r| r.len() != dim) {
        return Err(CalcError::Shape(format!("frame matrix must be {dim}x{dim}")));
    }
    let total = f.params + f.n_odd;
    let lifted: PolyMatrix = a.iter().map(|r| r.iter().map(|x| x.embed(total, f.params)).collect()).collect();
    let lhs = mat_mul(&lifted, &f.jacobian());
    for (k, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if x.compose(&f.images)? != lhs[k][j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `φ₀` and the fields `X_I` (parity `|I|`, keyed by parameter bitmask) with
/// `φ♯ = F_p ∘ ⋯ ∘ F_1 ∘ φ₀♯`, `F_k = 1 + Σ_{max I = k} η^I X_I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyDecomposition {
    pub params: usize,
    pub base: Family,
    pub fields: BTreeMap<u32, SuperVectorField>,
}

pub fn family_recompose(d: &FamilyDecomposition) -> Result<Family, CalcError> {
    let b = &d.base;
    let (n, m, p) = (b.n_even, b.n_odd, d.params);
    if b.params != 0 {
        return Err(CalcError::Shape("base map must be parameter free".into()));
    }
    for (&mask, x) in &d.fields {
        if mask == 0 || (p < 32 && mask >> p != 0) {
            return Err(CalcError::Shape(format!("multi-index {mask:#b} outside {p} parameters")));
        }
        if (x.n_even(), x.n_odd()) != (n, m) {
            return Err(CalcError::Domain("field on another domain".into()));
        }
        if x.parity() != Parity::from_bit(mask.count_ones() as usize) {
            return Err(CalcError::Parity(format!("X_I for I = {mask:#b} must have parity |I|")));
        }
    }
    let total = p + m;
    let mut images: Vec<GrassmannPoly> = b.images.iter().map(|f| f.embed(total, p)).collect();
    for k in 0..p {
        let terms: Vec<(GrassmannPoly, SuperVectorField)> = d
            .fields
            .iter()
            .filter(|(&mask, _)| 31 - mask.leading_zeros() == k as u32)
            .map(|(&mask, x)| {
                let eta = GrassmannPoly::from_terms(
                    n,
                    total,
                    [(super::poly::Monomial::new(vec![0; n], mask), GQ::one())],
                );
                (eta, x.embed(total, p))
            })
            .collect();
        for h in images.iter_mut() {
            let mut next = h.clone();
            for (eta, x) in &terms {
                next = &next + &(eta * &x.apply(h)?);
            }
            *h = next;
        }
    }
    Family::new(n, m, p, images)
}

/// Inverse of an even matrix with constant invertible body, as a finite
/// Neumann series around the body.
fn invert(m: &PolyMatrix) -> Result<PolyMatrix, CalcError> {
    let dim = m.len();
    let (ne, no) = (m[0][0].n_even(), m[0][0].n_odd());
    let all_odd = if no >= 32 { u32::MAX } else { (1u32 << no) - 1 };
    let mut body = crate::gsalg::Matrix::zeros(dim, dim);
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let b = x.kill_odd(all_odd);
            if b.terms().any(|(mono, _)| mono.x_degree() > 0) {
                return Err(CalcError::NotInvertible(
                    "body Jacobian must be constant for a polynomial inverse".into(),
                ));
            }
            body[(i, j)] = b.coeff(&super::poly::Monomial::unit(ne));
        }
    }
    let binv = body.inverse().ok_or_else(|| CalcError::NotInvertible("body Jacobian is singular".into()))?;
    let lift = |a: &crate::gsalg::Matrix| -> PolyMatrix {
        (0..dim).map(|i| (0..dim).map(|j| GrassmannPoly::constant(ne, no, a[(i, j)].clone())).collect()).collect()
    };
    let binv_p = lift(&binv);
    // N = M − B, K = −B⁻¹N; M⁻¹ = Σ_r K^r B⁻¹
    let nil: PolyMatrix =
        m.iter().map(|row| row.iter().map(|x| x - &x.kill_odd(all_odd)).collect()).collect();
    let k: PolyMatrix = mat_mul(&binv_p, &nil).iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let mut term = binv_p.clone();
    let mut acc = binv_p;
    loop {
        term = mat_mul(&k, &term);
        if term.iter().flatten().all(GrassmannPoly::is_zero) {
            return Ok(acc);
        }
        acc = acc.iter().zip(&term).map(|(a, t)| a.iter().zip(t).map(|(x, y)| x + y).collect()).collect();
    }
}

/// Splits a family into its base map and the fields `X_I`, level by level
/// in the top parameter. The base map's Jacobian must have constant
/// invertible body.
pub fn family_decompose(f: &Family) -> Result<FamilyDecomposition, CalcError> {
    let (n, m, p) = (f.n_even, f.n_odd, f.params);
    let total = p + m;
    let restrict = |h: &GrassmannPoly| h.kill_odd(f.param_mask(0)).unembed(m, p).expect("parameters removed");
    let base = Family::new(n, m, 0, f.images.iter().map(restrict).collect())?;
    if n + m > 0 {
        invert(&base.jacobian())?;
    }
    let mut fields: BTreeMap<u32, Vec<GrassmannPoly>> = BTreeMap::new();
    for k in 0..p {
        let prev = Family::new(n, m, p, f.images.iter().map(|h| h.kill_odd(f.param_mask(k))).collect())?;
        let cur: Vec<GrassmannPoly> = f.images.iter().map(|h| h.kill_odd(f.param_mask(k + 1))).collect();
        let inv = invert(&prev.jacobian())?;
        for l in 0..n + m {
            let mut d = GrassmannPoly::zero(n, total);
            for (j, (c, q)) in cur.iter().zip(&prev.images).enumerate() {
                d = &d + &(&(c - q) * &inv[j][l]);
            }
            for (mono, c) in d.terms() {
                let mask = mono.odd & f.param_mask(0);
                let rest = super::poly::Monomial::new(mono.exps.clone(), mono.odd >> p);
                if mask >> k != 1 {
                    return Err(CalcError::Shape(format!("term {c} outside the level-{k} product factor")));
                }
                let slot = fields.entry(mask).or_insert_with(|| vec![GrassmannPoly::zero(n, m); n + m]);
                slot[l] = &slot[l] + &GrassmannPoly::monomial(n, m, rest, c.clone());
            }
        }
    }
    let fields = fields
        .into_iter()
        .map(|(mask, coeffs)| {
            SuperVectorField::new(n, m, Parity::from_bit(mask.count_ones() as usize), coeffs).map(|x| (mask, x))
        })
        .collect::<Result<_, _>>()?;
    Ok(FamilyDecomposition { params: p, base, fields })
}

/// `[X, E] = 0` for every frame field `E`.
pub fn commutes_with_frame(x: &SuperVectorField, frame: &[SuperVectorField]) -> Result<bool, CalcError> {
    for e in frame {
        if !vf_bracket(x, e)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Base map preserves the frame and every `X_I` passes `is_infinitesimal`.
pub fn family_is_automorphism(
    d: &FamilyDecomposition,
    frame: &[SuperVectorField],
    is_infinitesimal: impl Fn(&SuperVectorField) -> Result<bool, CalcError>,
) -> Result<bool, CalcError> {
    if !is_parallelization_automorphism(&d.base, &frame_matrix(frame))? {
        return Ok(false);
    }
    for x in d.fields.values() {
        if !is_infinitesimal(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_dim(image: GrassmannPoly) -> Family {
        Family::new(1, 0, 0, vec![image]).unwrap()
    }

    #[test]
    fn identity_preserves_any_frame() {
        let a = vec![vec![&GrassmannPoly::one(1, 0) + &GrassmannPoly::x(1, 0, 0).pow(2)]];
        assert!(is_parallelization_automorphism(&Family::identity(1, 0), &a).unwrap());
    }

    #[test]
    fn doubling_on_one_dimensional_frames() {
        // Z = x∂_x: A Jf = 2x = f♯(A). Z = (1+x)∂_x: 2 + 2x ≠ 1 + 2x.
        let x = GrassmannPoly::x(1, 0, 0);
        let f = one_dim(x.scale(&GQ::from_int(2)));
        assert!(is_parallelization_automorphism(&f, &vec![vec![x.clone()]]).unwrap());
        let a = vec![vec![&GrassmannPoly::one(1, 0) + &x]];
        assert!(!is_parallelization_automorphism(&f, &a).unwrap());
    }

    #[test]
    fn translation_preserves_standard_frame() {
        let f = one_dim(&GrassmannPoly::x(1, 0, 0) + &GrassmannPoly::constant(1, 0, GQ::from_ratio(3, 2)));
        assert!(is_parallelization_automorphism(&f, &vec![vec![GrassmannPoly::one(1, 0)]]).unwrap());
    }

    #[test]
    fn single_parameter_round_trip() {
        // φ♯ = (1 + η X)·id♯ on R^{1|1}, X = η∂_x (odd)
        let x = SuperVectorField::homogeneous(1, 1, vec![GrassmannPoly::eta(1, 1, 0), GrassmannPoly::zero(1, 1)]).unwrap();
        let d = FamilyDecomposition { params: 1, base: Family::identity(1, 1), fields: BTreeMap::from([(1, x)]) };
        let f = family_recompose(&d).unwrap();
        // x ↦ x + η_p η, η ↦ η
        assert_eq!(f.images[0], &GrassmannPoly::x(1, 2, 0) + &(&GrassmannPoly::eta(1, 2, 0) * &GrassmannPoly::eta(1, 2, 1)));
        assert_eq!(family_decompose(&f).unwrap(), d);
    }

    #[test]
    fn no_parameters() {
        let f = Family::identity(2, 1);
        let d = family_decompose(&f).unwrap();
        assert_eq!(d.base, f);
        assert!(d.fields.is_empty());
    }

    #[test]
    fn singular_base_rejected() {
        let f = one_dim(GrassmannPoly::x(1, 0, 0).pow(2));
        assert!(matches!(family_decompose(&f), Err(CalcError::NotInvertible(_))));
        let g = Family::new(1, 0, 1, vec![GrassmannPoly::x(1, 1, 0).pow(2)]).unwrap();
        assert!(matches!(family_decompose(&g), Err(CalcError::NotInvertible(_))));
    }
}
