//! Polynomial superfunctions `Σ_I f_I(x) η^I` with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::gsalg::{Parity, GQ};

use super::CalcError;

/// `x^exps η^odd`, the odd part a bitmask of strictly increasing indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub odd: u32,
    pub exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>, odd: u32) -> Self {
        Self { odd, exps }
    }

    pub fn unit(n_even: usize) -> Self {
        Self { odd: 0, exps: vec![0; n_even] }
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.odd.count_ones() as usize)
    }

    pub fn x_degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

/// Sign of `η^a η^b = ± η^{a ∪ b}`, `None` when they share a generator.
pub fn merge_sign(a: u32, b: u32) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if swaps % 2 == 0 { 1 } else { -1 })
}

/// An element of `ℚ(i)[x_1..x_n] ⊗ Λ[η_1..η_m]` in canonical form: no zero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrassmannPoly {
    n_even: usize,
    n_odd: usize,
    terms: BTreeMap<Monomial, GQ>,
}

impl GrassmannPoly {
    pub fn zero(n_even: usize, n_odd: usize) -> Self {
        Self { n_even, n_odd, terms: BTreeMap::new() }
    }

    pub fn constant(n_even: usize, n_odd: usize, c: GQ) -> Self {
        Self::monomial(n_even, n_odd, Monomial::unit(n_even), c)
    }

    pub fn one(n_even: usize, n_odd: usize) -> Self {
        Self::constant(n_even, n_odd, GQ::one())
    }

    /// The even coordinate `x_k` (0-based).
    pub fn x(n_even: usize, n_odd: usize, k: usize) -> Self {
        let mut e = vec![0; n_even];
        e[k] = 1;
        Self::monomial(n_even, n_odd, Monomial::new(e, 0), GQ::one())
    }

    /// The odd coordinate `η_j` (0-based).
    pub fn eta(n_even: usize, n_odd: usize, j: usize) -> Self {
        Self::monomial(n_even, n_odd, Monomial::new(vec![0; n_even], 1 << j), GQ::one())
    }

    /// Coordinate `k` of `ℝ^{n|m}`: `x_k` for `k < n`, else `η_{k−n}`.
    pub fn coordinate(n_even: usize, n_odd: usize, k: usize) -> Self {
        if k < n_even {
            Self::x(n_even, n_odd, k)
        } else {
            Self::eta(n_even, n_odd, k - n_even)
        }
    }

    pub fn monomial(n_even: usize, n_odd: usize, m: Monomial, c: GQ) -> Self {
        assert_eq!(m.exps.len(), n_even, "monomial arity");
        assert!(n_odd >= 32 || m.odd >> n_odd == 0, "odd index out of range");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { n_even, n_odd, terms }
    }

    pub fn from_terms(n_even: usize, n_odd: usize, terms: impl IntoIterator<Item = (Monomial, GQ)>) -> Self {
        let mut p = Self::zero(n_even, n_odd);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn n_even(&self) -> usize {
        self.n_even
    }

    pub fn n_odd(&self) -> usize {
        self.n_odd
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GQ)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> GQ {
        self.terms.get(m).cloned().unwrap_or_else(GQ::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &GQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn same_domain(&self, other: &Self) -> Result<(), CalcError> {
        if (self.n_even, self.n_odd) != (other.n_even, other.n_odd) {
            return Err(CalcError::Domain(format!(
                "R^{{{}|{}}} vs R^{{{}|{}}}",
                self.n_even, self.n_odd, other.n_even, other.n_odd
            )));
        }
        Ok(())
    }

    /// Parity if homogeneous (zero counts as even), `None` otherwise.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, p: Parity) -> bool {
        self.terms.keys().all(|m| m.parity() == p)
    }

    pub fn scale(&self, c: &GQ) -> Self {
        if c.is_zero() {
            return Self::zero(self.n_even, self.n_odd);
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        Self { n_even: self.n_even, n_odd: self.n_odd, terms }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CalcError> {
        self.same_domain(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CalcError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CalcError> {
        self.same_domain(other)?;
        let mut out = Self::zero(self.n_even, self.n_odd);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let Some(sign) = merge_sign(ma.odd, mb.odd) else { continue };
                let exps = ma.exps.iter().zip(&mb.exps).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                let c = if sign < 0 { -c } else { c };
                out.add_term(Monomial::new(exps, ma.odd | mb.odd), &c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.n_even, self.n_odd);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_x(&self, k: usize) -> Self {
        let mut out = Self::zero(self.n_even, self.n_odd);
        for (m, c) in &self.terms {
            let e = m.exps[k];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[k] -= 1;
            out.add_term(Monomial::new(exps, m.odd), &(c * &GQ::from_int(e as i64)));
        }
        out
    }

    /// Left derivative `∂/∂η_j`.
    pub fn partial_eta(&self, j: usize) -> Self {
        let mut out = Self::zero(self.n_even, self.n_odd);
        let bit = 1u32 << j;
        for (m, c) in &self.terms {
            if m.odd & bit == 0 {
                continue;
            }
            let before = (m.odd & (bit - 1)).count_ones();
            let c = if before % 2 == 0 { c.clone() } else { -c };
            out.add_term(Monomial::new(m.exps.clone(), m.odd & !bit), &c);
        }
        out
    }

    /// `∂/∂q_k` for the coordinate ordering of [`GrassmannPoly::coordinate`].
    pub fn partial(&self, k: usize) -> Self {
        if k < self.n_even {
            self.partial_x(k)
        } else {
            self.partial_eta(k - self.n_even)
        }
    }

    /// The `I = ∅` part.
    pub fn body(&self) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.odd == 0).map(|(m, c)| (m.clone(), c.clone())).collect();
        Self { n_even: self.n_even, n_odd: self.n_odd, terms }
    }

    /// Real functions are those with real body.
    pub fn is_real_function(&self) -> bool {
        self.terms.iter().all(|(m, c)| m.odd != 0 || c.is_real())
    }

    /// Exact value of the body at a point.
    pub fn eval_body(&self, x: &[GQ]) -> GQ {
        let mut acc = GQ::zero();
        for (m, c) in self.terms.iter().filter(|(m, _)| m.odd == 0) {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(&m.exps) {
                t = &t * &xi.pow(e);
            }
            acc += &t;
        }
        acc
    }

    pub fn max_x_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::x_degree).max().unwrap_or(0)
    }

    /// Substitutes `x_k ↦ subs[k]`, `η_j ↦ subs[n + j]`; the result lives on
    /// the domain of `subs`.
    pub fn compose(&self, subs: &[GrassmannPoly]) -> Result<Self, CalcError> {
        let n = self.n_even;
        if subs.len() != n + self.n_odd {
            return Err(CalcError::Shape(format!("{} substitutions for {} coordinates", subs.len(), n + self.n_odd)));
        }
        let Some(first) = subs.first() else {
            return Ok(self.clone());
        };
        let (ne, no) = (first.n_even, first.n_odd);
        for (k, s) in subs.iter().enumerate() {
            s.same_domain(first)?;
            let want = if k < n { Parity::Even } else { Parity::Odd };
            if !s.is_homogeneous_of(want) {
                return Err(CalcError::Parity(format!("substitute for coordinate {k} must be {want}")));
            }
        }
        let mut powers: Vec<Vec<GrassmannPoly>> = vec![vec![GrassmannPoly::one(ne, no)]; n];
        let mut out = Self::zero(ne, no);
        for (m, c) in &self.terms {
            let mut t = GrassmannPoly::constant(ne, no, c.clone());
            for (k, &e) in m.exps.iter().enumerate() {
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().unwrap() * &subs[k];
                    powers[k].push(next);
                }
                t = &t * &powers[k][e as usize];
            }
            let mut bits = m.odd;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                t = &t * &subs[n + j];
                bits &= bits - 1;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Same function on `ℝ^{n | n_odd}` with `η_j` renamed to `η_{j + offset}`.
    pub fn embed(&self, n_odd: usize, offset: usize) -> Self {
        assert!(self.n_odd + offset <= n_odd, "embedding does not fit");
        let terms = self.terms.iter().map(|(m, c)| (Monomial::new(m.exps.clone(), m.odd << offset), c.clone())).collect();
        Self { n_even: self.n_even, n_odd, terms }
    }

    /// Inverse of [`GrassmannPoly::embed`]; `None` if a generator below
    /// `offset` occurs.
    pub fn unembed(&self, n_odd: usize, offset: usize) -> Option<Self> {
        let low = (1u32 << offset) - 1;
        if self.terms.keys().any(|m| m.odd & low != 0 || (n_odd < 32 && m.odd >> (offset + n_odd) != 0)) {
            return None;
        }
        let terms = self.terms.iter().map(|(m, c)| (Monomial::new(m.exps.clone(), m.odd >> offset), c.clone())).collect();
        Some(Self { n_even: self.n_even, n_odd, terms })
    }

    /// Sets the odd generators in `mask` to zero.
    pub fn kill_odd(&self, mask: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.odd & mask == 0).map(|(m, c)| (m.clone(), c.clone())).collect();
        Self { n_even: self.n_even, n_odd: self.n_odd, terms }
    }
}

impl std::ops::Add<&GrassmannPoly> for &GrassmannPoly {
    type Output = GrassmannPoly;
    /// Panics on domain mismatch; see [`GrassmannPoly::try_add`].
    fn add(self, rhs: &GrassmannPoly) -> GrassmannPoly {
        self.try_add(rhs).expect("domain mismatch")
    }
}

impl std::ops::Sub<&GrassmannPoly> for &GrassmannPoly {
    type Output = GrassmannPoly;
    fn sub(self, rhs: &GrassmannPoly) -> GrassmannPoly {
        self.try_sub(rhs).expect("domain mismatch")
    }
}

impl std::ops::Mul<&GrassmannPoly> for &GrassmannPoly {
    type Output = GrassmannPoly;
    fn mul(self, rhs: &GrassmannPoly) -> GrassmannPoly {
        self.try_mul(rhs).expect("domain mismatch")
    }
}

impl std::ops::Neg for &GrassmannPoly {
    type Output = GrassmannPoly;
    fn neg(self) -> GrassmannPoly {
        self.scale(&GQ::from_int(-1))
    }
}

pub fn gp_add(f: &GrassmannPoly, g: &GrassmannPoly) -> Result<GrassmannPoly, CalcError> {
    f.try_add(g)
}

pub fn gp_mul(f: &GrassmannPoly, g: &GrassmannPoly) -> Result<GrassmannPoly, CalcError> {
    f.try_mul(g)
}

pub fn gp_scale(f: &GrassmannPoly, c: &GQ) -> GrassmannPoly {
    f.scale(c)
}

pub fn gp_partial(f: &GrassmannPoly, coord: usize) -> GrassmannPoly {
    f.partial(coord)
}

/// Coefficient written so that it can be followed by `*`.
fn fmt_coeff(c: &GQ) -> String {
    if c.is_real() {
        c.to_string()
    } else if c.re.is_zero() {
        if c.im.is_one() { "i".into() } else { c.to_string() }
    } else {
        format!("({c})")
    }
}

impl GrassmannPoly {
    /// Expression syntax (`x1`, `^`, `*`, `+`, `-`, `i`) with `η_j` printed as
    /// `odd_name(j)`.
    pub fn format_with(&self, odd_name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{e}", i + 1)),
                }
            }
            let mut bits = m.odd;
            while bits != 0 {
                factors.push(odd_name(bits.trailing_zeros() as usize));
                bits &= bits - 1;
            }
            let negative = if c.im.is_zero() { c.re.is_negative() } else { c.re.is_zero() && c.im.is_negative() };
            let mag = if negative { -c } else { c.clone() };
            if k > 0 {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            if factors.is_empty() {
                out.push_str(&fmt_coeff(&mag));
            } else if mag.is_one() {
                out.push_str(&factors.join("*"));
            } else {
                out.push_str(&format!("{}*{}", fmt_coeff(&mag), factors.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for GrassmannPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&|j| format!("th{}", j + 1)))
    }
}

impl fmt::Debug for GrassmannPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}] {}", self.n_even, self.n_odd, self)
    }
}
