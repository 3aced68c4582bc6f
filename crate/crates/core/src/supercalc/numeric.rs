//! Floating-point Grassmann numbers and evaluation of polynomials at
//! Grassmann-valued points.

use std::collections::HashMap;

use num_complex::Complex64;

use super::poly::{merge_sign, GrassmannPoly};

/// `Σ_I c_I θ^I` over `gens` generators, indexed by bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannNumber {
    gens: usize,
    coeffs: Vec<Complex64>,
}

impl GrassmannNumber {
    pub fn zero(gens: usize) -> Self {
        Self { gens, coeffs: vec![Complex64::new(0.0, 0.0); 1 << gens] }
    }

    pub fn constant(gens: usize, c: Complex64) -> Self {
        let mut z = Self::zero(gens);
        z.coeffs[0] = c;
        z
    }

    pub fn real(gens: usize, x: f64) -> Self {
        Self::constant(gens, Complex64::new(x, 0.0))
    }

    pub fn generator(gens: usize, j: usize) -> Self {
        let mut z = Self::zero(gens);
        z.coeffs[1 << j] = Complex64::new(1.0, 0.0);
        z
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn coeff(&self, mask: u32) -> Complex64 {
        self.coeffs[mask as usize]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn body(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// Largest coefficient modulus.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// `self + a·other`.
    pub fn axpy(&self, a: f64, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y * a).collect();
        Self { gens: self.gens, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(-1.0, other)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { gens: self.gens, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.gens);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.re == 0.0 && ca.im == 0.0 {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.re == 0.0 && cb.im == 0.0 {
                    continue;
                }
                if let Some(s) = merge_sign(a as u32, b as u32) {
                    out.coeffs[a | b] += ca * cb * s as f64;
                }
            }
        }
        out
    }

    /// Terms containing `θ_j`, with `θ_j` struck from the left.
    pub fn strip_left(&self, j: usize) -> Self {
        let bit = 1usize << j;
        let mut out = Self::zero(self.gens);
        for (m, c) in self.coeffs.iter().enumerate() {
            if m & bit != 0 {
                let before = (m & (bit - 1)).count_ones();
                out.coeffs[m & !bit] = if before % 2 == 0 { *c } else { -c };
            }
        }
        out
    }
}

/// Max coefficient distance between two points.
pub fn state_distance(a: &[GrassmannNumber], b: &[GrassmannNumber]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.sub(y).norm()).fold(0.0, f64::max)
}

pub fn state_norm(a: &[GrassmannNumber]) -> f64 {
    a.iter().map(GrassmannNumber::norm).fold(0.0, f64::max)
}

/// A polynomial with float coefficients, ready for repeated evaluation.
#[derive(Debug, Clone)]
pub struct CompiledPoly {
    terms: Vec<(Complex64, Vec<u32>, u32)>,
}

impl CompiledPoly {
    pub fn new(f: &GrassmannPoly) -> Self {
        Self { terms: f.terms().map(|(m, c)| (c.to_complex(), m.exps.clone(), m.odd)).collect() }
    }

    /// `f(x, η)` at the point with even components `xs`, odd `etas`.
    pub fn eval(&self, xs: &[GrassmannNumber], etas: &[GrassmannNumber], cache: &mut EvalCache) -> GrassmannNumber {
        let gens = xs.first().or(etas.first()).map_or(0, GrassmannNumber::gens);
        let mut acc = GrassmannNumber::zero(gens);
        for (c, exps, odd) in &self.terms {
            let mut t = GrassmannNumber::constant(gens, *c);
            for (k, &e) in exps.iter().enumerate() {
                if e > 0 {
                    t = t.mul(cache.power(xs, k, e));
                }
            }
            if *odd != 0 {
                t = t.mul(cache.eta_product(etas, *odd));
            }
            acc = acc.axpy(1.0, &t);
        }
        acc
    }
}

/// Powers and odd products shared across the components of one evaluation.
#[derive(Debug, Default)]
pub struct EvalCache {
    powers: HashMap<(usize, u32), GrassmannNumber>,
    etas: HashMap<u32, GrassmannNumber>,
}

impl EvalCache {
    fn power(&mut self, xs: &[GrassmannNumber], k: usize, e: u32) -> &GrassmannNumber {
        if !self.powers.contains_key(&(k, e)) {
            let v = if e == 1 { xs[k].clone() } else { self.power(xs, k, e - 1).mul(&xs[k]) };
            self.powers.insert((k, e), v);
        }
        &self.powers[&(k, e)]
    }

    fn eta_product(&mut self, etas: &[GrassmannNumber], mask: u32) -> &GrassmannNumber {
        if !self.etas.contains_key(&mask) {
            let top = 31 - mask.leading_zeros();
            let rest = mask & !(1 << top);
            let v = if rest == 0 { etas[top as usize].clone() } else { self.eta_product(etas, rest).mul(&etas[top as usize]) };
            self.etas.insert(mask, v);
        }
        &self.etas[&mask]
    }
}
