//! Polynomial super vector fields `X = Σ_k X_k ∂_{q_k}` on `ℝ^{n|m}`.

use std::fmt;

use crate::gsalg::{Parity, GQ};

use super::poly::GrassmannPoly;
use super::CalcError;

/// A homogeneous vector field. Coefficients are ordered like the coordinates
/// (`x_1..x_n`, then `η_1..η_m`) and stand to the left of the derivations.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperVectorField {
    n_even: usize,
    n_odd: usize,
    parity: Parity,
    coeffs: Vec<GrassmannPoly>,
}

fn coord_parity(n_even: usize, k: usize) -> Parity {
    if k < n_even {
        Parity::Even
    } else {
        Parity::Odd
    }
}

impl SuperVectorField {
    /// Checks that `coeffs[k]` has parity `parity + |q_k|`.
    pub fn new(n_even: usize, n_odd: usize, parity: Parity, coeffs: Vec<GrassmannPoly>) -> Result<Self, CalcError> {
        if coeffs.len() != n_even + n_odd {
            return Err(CalcError::Shape(format!(
                "{} coefficients on R^{{{n_even}|{n_odd}}}",
                coeffs.len()
            )));
        }
        for (k, c) in coeffs.iter().enumerate() {
            if (c.n_even(), c.n_odd()) != (n_even, n_odd) {
                return Err(CalcError::Domain(format!("coefficient {k} lives on another domain")));
            }
            let want = Parity::from_bit(parity.bit() + coord_parity(n_even, k).bit());
            if !c.is_homogeneous_of(want) {
                return Err(CalcError::Parity(format!(
                    "coefficient {k} of a {parity} field must be {want}"
                )));
            }
        }
        Ok(Self { n_even, n_odd, parity, coeffs })
    }

    /// Infers the parity from the coefficients; the zero field is even.
    pub fn homogeneous(n_even: usize, n_odd: usize, coeffs: Vec<GrassmannPoly>) -> Result<Self, CalcError> {
        let parity = coeffs
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .and_then(|(k, c)| c.parity().map(|p| Parity::from_bit(p.bit() + coord_parity(n_even, k).bit())))
            .unwrap_or(Parity::Even);
        Self::new(n_even, n_odd, parity, coeffs)
    }

    pub fn zero(n_even: usize, n_odd: usize, parity: Parity) -> Self {
        let coeffs = vec![GrassmannPoly::zero(n_even, n_odd); n_even + n_odd];
        Self { n_even, n_odd, parity, coeffs }
    }

    /// `∂/∂q_k`.
    pub fn coordinate(n_even: usize, n_odd: usize, k: usize) -> Self {
        let mut f = Self::zero(n_even, n_odd, coord_parity(n_even, k));
        f.coeffs[k] = GrassmannPoly::one(n_even, n_odd);
        f
    }

    pub fn n_even(&self) -> usize {
        self.n_even
    }

    pub fn n_odd(&self) -> usize {
        self.n_odd
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn coeffs(&self) -> &[GrassmannPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &GrassmannPoly {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GrassmannPoly::is_zero)
    }

    fn same_domain(&self, other: &Self) -> Result<(), CalcError> {
        if (self.n_even, self.n_odd) != (other.n_even, other.n_odd) {
            return Err(CalcError::Domain("vector fields on different domains".into()));
        }
        Ok(())
    }

    /// `X(f) = Σ X_k ∂_k f`.
    pub fn apply(&self, f: &GrassmannPoly) -> Result<GrassmannPoly, CalcError> {
        let mut acc = GrassmannPoly::zero(f.n_even(), f.n_odd());
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.try_add(&c.try_mul(&f.partial(k))?)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &GQ) -> Self {
        let coeffs = self.coeffs.iter().map(|f| f.scale(c)).collect();
        Self { coeffs, ..self.clone() }
    }

    /// Sum of fields of equal parity.
    pub fn try_add(&self, other: &Self) -> Result<Self, CalcError> {
        self.same_domain(other)?;
        if self.parity != other.parity && !self.is_zero() && !other.is_zero() {
            return Err(CalcError::Parity("sum of fields of different parity".into()));
        }
        let parity = if self.is_zero() { other.parity } else { self.parity };
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self { n_even: self.n_even, n_odd: self.n_odd, parity, coeffs })
    }

    /// The field `f·X`, `f` homogeneous.
    pub fn mul_left(&self, f: &GrassmannPoly) -> Result<Self, CalcError> {
        let p = f.parity().ok_or_else(|| CalcError::Parity("inhomogeneous multiplier".into()))?;
        let coeffs = self.coeffs.iter().map(|c| f.try_mul(c)).collect::<Result<Vec<_>, _>>()?;
        Self::new(self.n_even, self.n_odd, Parity::from_bit(p.bit() + self.parity.bit()), coeffs)
    }

    /// The same field on `ℝ^{n | n_odd}`, its `η_j` renamed `η_{j+offset}`.
    pub fn embed(&self, n_odd: usize, offset: usize) -> Self {
        let n = self.n_even;
        let zero = GrassmannPoly::zero(n, n_odd);
        let mut coeffs: Vec<GrassmannPoly> = self.coeffs[..n].iter().map(|c| c.embed(n_odd, offset)).collect();
        coeffs.extend(std::iter::repeat_n(zero.clone(), offset));
        coeffs.extend(self.coeffs[n..].iter().map(|c| c.embed(n_odd, offset)));
        coeffs.resize(n + n_odd, zero);
        Self { n_even: n, n_odd, parity: self.parity, coeffs }
    }

    /// Even with real-valued bodies in the `∂_x` directions.
    pub fn is_even_real(&self) -> bool {
        self.parity == Parity::Even && self.coeffs[..self.n_even].iter().all(GrassmannPoly::is_real_function)
    }
}

/// `[X,Y]_k = X(Y_k) − (−1)^{|X||Y|} Y(X_k)`.
pub fn vf_bracket(x: &SuperVectorField, y: &SuperVectorField) -> Result<SuperVectorField, CalcError> {
    x.same_domain(y)?;
    let sign = GQ::from_int(Parity::koszul(x.parity, y.parity));
    let mut coeffs = Vec::with_capacity(x.coeffs.len());
    for (xk, yk) in x.coeffs.iter().zip(&y.coeffs) {
        coeffs.push(x.apply(yk)?.try_sub(&y.apply(xk)?.scale(&sign))?);
    }
    SuperVectorField::new(x.n_even, x.n_odd, Parity::from_bit(x.parity.bit() + y.parity.bit()), coeffs)
}

pub fn vf_apply(x: &SuperVectorField, f: &GrassmannPoly) -> Result<GrassmannPoly, CalcError> {
    x.apply(f)
}

pub fn is_even_real_vf(x: &SuperVectorField) -> bool {
    x.is_even_real()
}

impl SuperVectorField {
    /// `(c1)*D[x1] + (c2)*D[th1]`, zero components omitted, `η_j` printed as
    /// `odd_name(j)`.
    pub fn format_with(&self, odd_name: &dyn Fn(usize) -> String) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let d = if k < self.n_even { format!("x{}", k + 1) } else { odd_name(k - self.n_even) };
                format!("({})*D[{d}]", c.format_with(odd_name))
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for SuperVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&|j| format!("th{}", j + 1)))
    }
}

impl fmt::Debug for SuperVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}, {}] {}", self.n_even, self.n_odd, self.parity, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> GrassmannPoly {
        GrassmannPoly::x(1, 1, 0)
    }

    fn eta() -> GrassmannPoly {
        GrassmannPoly::eta(1, 1, 0)
    }

    fn zero() -> GrassmannPoly {
        GrassmannPoly::zero(1, 1)
    }

    #[test]
    fn parity_validation() {
        assert!(SuperVectorField::new(1, 1, Parity::Even, vec![eta(), zero()]).is_err());
        let f = SuperVectorField::homogeneous(1, 1, vec![eta(), zero()]).unwrap();
        assert_eq!(f.parity(), Parity::Odd);
        assert!(SuperVectorField::homogeneous(1, 1, vec![eta(), eta()]).is_err());
        assert!(SuperVectorField::homogeneous(1, 1, vec![eta(), x()]).is_ok());
    }

    #[test]
    fn odd_bracket_is_symmetric() {
        // [η∂_x, x∂_η] = x∂_x + η∂_η
        let a = SuperVectorField::homogeneous(1, 1, vec![eta(), zero()]).unwrap();
        let b = SuperVectorField::homogeneous(1, 1, vec![zero(), x()]).unwrap();
        let c = vf_bracket(&a, &b).unwrap();
        assert_eq!(c, SuperVectorField::homogeneous(1, 1, vec![x(), eta()]).unwrap());
        assert_eq!(vf_bracket(&b, &a).unwrap(), c);
    }

    #[test]
    fn odd_coordinate_field_squares_to_zero() {
        let d = SuperVectorField::coordinate(1, 1, 1);
        assert!(vf_bracket(&d, &d).unwrap().is_zero());
        let q = SuperVectorField::homogeneous(1, 1, vec![eta(), GrassmannPoly::one(1, 1)]).unwrap();
        // [Q, Q] = 2 Q² = 2∂_x
        assert_eq!(vf_bracket(&q, &q).unwrap(), SuperVectorField::coordinate(1, 1, 0).scale(&GQ::from_int(2)));
    }

    #[test]
    fn embedding_keeps_action() {
        let f = SuperVectorField::homogeneous(1, 1, vec![zero(), x()]).unwrap();
        let g = f.embed(3, 1);
        let h = GrassmannPoly::eta(1, 3, 1);
        assert_eq!(g.apply(&h).unwrap(), GrassmannPoly::x(1, 3, 0));
        assert!(g.apply(&GrassmannPoly::eta(1, 3, 0)).unwrap().is_zero());
    }

    #[test]
    fn even_real() {
        let f = SuperVectorField::homogeneous(1, 1, vec![x(), eta().scale(&GQ::i())]).unwrap();
        assert!(f.is_even_real());
        let g = SuperVectorField::homogeneous(1, 1, vec![x().scale(&GQ::i()), zero()]).unwrap();
        assert!(!g.is_even_real());
    }
}
