//! Infinitesimal automorphisms by polynomial ansatz: fields of bounded
//! `x`-degree (all `η`-orders) commuting with a frame, or annihilating a flat
//! metric.

use std::collections::BTreeMap;

use crate::gsalg::linalg::{kernel_basis, RowReducer, SparseVec};
use crate::gsalg::{GradedDim, Matrix, Parity, GQ};
use crate::liesuper::BilinearForm;

use super::field::{vf_bracket, SuperVectorField};
use super::poly::{GrassmannPoly, Monomial};
use super::CalcError;

/// Monomials `x^α η^I` with `|α| ≤ degree` and `|I| ≡ parity`.
fn monomials(n_even: usize, n_odd: usize, degree: u32, parity: Parity) -> Vec<Monomial> {
    let mut exps = vec![vec![]];
    for _ in 0..n_even {
        exps = exps
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=degree - used).map(move |k| {
                    let mut f = e.clone();
                    f.push(k);
                    f
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for odd in 0u32..1 << n_odd {
        if odd.count_ones() as usize % 2 != parity.bit() {
            continue;
        }
        out.extend(exps.iter().map(|e| Monomial::new(e.clone(), odd)));
    }
    out
}

/// Basis of homogeneous fields of the given parity, one per (component,
/// monomial).
fn ansatz(n_even: usize, n_odd: usize, degree: u32, parity: Parity) -> Vec<SuperVectorField> {
    let mut out = Vec::new();
    for k in 0..n_even + n_odd {
        let cp = if k < n_even { parity } else { parity.flip() };
        for m in monomials(n_even, n_odd, degree, cp) {
            let mut coeffs = vec![GrassmannPoly::zero(n_even, n_odd); n_even + n_odd];
            coeffs[k] = GrassmannPoly::monomial(n_even, n_odd, m, GQ::one());
            out.push(SuperVectorField::new(n_even, n_odd, parity, coeffs).expect("ansatz parity"));
        }
    }
    out
}

/// Index of linear conditions: each keyed polynomial contributes one row per
/// monomial.
#[derive(Default)]
struct System {
    rows: BTreeMap<(usize, usize, Monomial), SparseVec>,
}

impl System {
    fn add(&mut self, unknown: usize, group: (usize, usize), p: &GrassmannPoly) {
        for (m, c) in p.terms() {
            self.rows.entry((group.0, group.1, m.clone())).or_default().push((unknown, c.clone()));
        }
    }

    fn solve(self, fields: &[SuperVectorField]) -> Vec<SuperVectorField> {
        let basis = kernel_basis(self.rows.into_values(), fields.len());
        basis.iter().map(|v| combine(fields, v)).collect()
    }
}

fn combine(fields: &[SuperVectorField], v: &SparseVec) -> SuperVectorField {
    let mut acc = fields[0].scale(&GQ::zero());
    for (j, c) in v {
        acc = acc.try_add(&fields[*j].scale(c)).expect("same parity");
    }
    acc
}

/// A solution space, echelonized per parity.
#[derive(Debug, Clone)]
pub struct KillingSolution {
    pub n_even: usize,
    pub n_odd: usize,
    pub degree: u32,
    pub even: Vec<SuperVectorField>,
    pub odd: Vec<SuperVectorField>,
}

impl KillingSolution {
    pub fn dim(&self) -> GradedDim {
        GradedDim::new(self.even.len(), self.odd.len())
    }

    pub fn basis(&self) -> impl Iterator<Item = &SuperVectorField> {
        self.even.iter().chain(&self.odd)
    }

    /// Largest `x`-degree of a coefficient in the basis.
    pub fn top_degree(&self) -> u32 {
        self.basis().flat_map(|f| f.coeffs().iter().map(GrassmannPoly::max_x_degree)).max().unwrap_or(0)
    }

    /// No solution uses the top ansatz degree.
    pub fn tail_is_zero(&self) -> bool {
        self.degree == 0 || self.top_degree() < self.degree
    }

    /// Rank of `X ↦ X(p)` at the body point `p` (odd coordinates zero).
    pub fn evaluation_rank(&self, point: &[GQ]) -> usize {
        let rows: Vec<Vec<GQ>> = self.basis().map(|f| f.coeffs().iter().map(|c| c.eval_body(point)).collect()).collect();
        if rows.is_empty() {
            return 0;
        }
        Matrix::from_rows(rows).expect("rectangular").rank()
    }

    /// Every bracket of basis fields lies in the span.
    pub fn is_bracket_closed(&self) -> Result<bool, CalcError> {
        let mut keys: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
        let mut vectorize = |f: &SuperVectorField| -> SparseVec {
            let mut v: SparseVec = Vec::new();
            for (k, c) in f.coeffs().iter().enumerate() {
                for (m, x) in c.terms() {
                    let next = keys.len();
                    let idx = *keys.entry((k, m.clone())).or_insert(next);
                    v.push((idx, x.clone()));
                }
            }
            v.sort_by_key(|e| e.0);
            v
        };
        let mut span = RowReducer::new();
        for f in self.basis() {
            span.insert(vectorize(f));
        }
        let all: Vec<&SuperVectorField> = self.basis().collect();
        for (i, a) in all.iter().enumerate() {
            for b in &all[i..] {
                let c = vf_bracket(a, b)?;
                if !span.contains(&vectorize(&c)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Body points at which a frame must be invertible.
fn sample_points(n: usize) -> Vec<Vec<GQ>> {
    let mut pts = vec![vec![GQ::zero(); n]];
    for v in [GQ::from_ratio(1, 2), GQ::from_ratio(-1, 2), GQ::from_int(1)] {
        pts.push(vec![v; n]);
    }
    for k in 0..n {
        let mut p = vec![GQ::zero(); n];
        p[k] = GQ::from_ratio(1, 3);
        pts.push(p);
    }
    pts
}

fn check_frame(frame: &[SuperVectorField]) -> Result<(usize, usize), CalcError> {
    let first = frame.first().ok_or_else(|| CalcError::DegenerateFrame("empty frame".into()))?;
    let (n, m) = (first.n_even(), first.n_odd());
    if frame.len() != n + m {
        return Err(CalcError::DegenerateFrame(format!("{} fields on R^{{{n}|{m}}}", frame.len())));
    }
    if frame.iter().any(|f| (f.n_even(), f.n_odd()) != (n, m)) {
        return Err(CalcError::Domain("frame fields on different domains".into()));
    }
    for p in sample_points(n) {
        let rows = frame.iter().map(|f| f.coeffs().iter().map(|c| c.eval_body(&p)).collect()).collect();
        if Matrix::from_rows(rows)?.det().is_zero() {
            let at: Vec<String> = p.iter().map(ToString::to_string).collect();
            return Err(CalcError::DegenerateFrame(format!("frame not invertible at x = ({})", at.join(", "))));
        }
    }
    Ok((n, m))
}

/// Fields of `x`-degree ≤ `max_degree` commuting with every frame field.
pub fn killing_parallelization(frame: &[SuperVectorField], max_degree: u32) -> Result<KillingSolution, CalcError> {
    let (n, m) = check_frame(frame)?;
    let mut sol = KillingSolution { n_even: n, n_odd: m, degree: max_degree, even: vec![], odd: vec![] };
    for parity in [Parity::Even, Parity::Odd] {
        let fields = ansatz(n, m, max_degree, parity);
        let mut sys = System::default();
        for (j, f) in fields.iter().enumerate() {
            for (i, e) in frame.iter().enumerate() {
                let b = vf_bracket(f, e)?;
                for (k, c) in b.coeffs().iter().enumerate() {
                    sys.add(j, (i, k), c);
                }
            }
        }
        let basis = sys.solve(&fields);
        match parity {
            Parity::Even => sol.even = basis,
            Parity::Odd => sol.odd = basis,
        }
    }
    Ok(sol)
}

/// `g(U, W)` for the constant form `J`.
fn pair(j: &Matrix, u: &SuperVectorField, w: &SuperVectorField) -> GrassmannPoly {
    let (n, m) = (u.n_even(), u.n_odd());
    let mut acc = GrassmannPoly::zero(n, m);
    for c in 0..n + m {
        for d in 0..n + m {
            let jcd = &j[(c, d)];
            if jcd.is_zero() || u.coeff(c).is_zero() || w.coeff(d).is_zero() {
                continue;
            }
            let cp = if c < n { 0 } else { 1 };
            let wp = w.parity().bit() + if d < n { 0 } else { 1 };
            let sign = if cp * wp % 2 == 1 { -jcd } else { jcd.clone() };
            acc = &acc + &(u.coeff(c) * w.coeff(d)).scale(&sign);
        }
    }
    acc
}

/// Fields of `x`-degree ≤ `max_degree` with `L_X g = 0` for the flat even
/// metric `g = J` on `ℝ^{n|m}`.
pub fn killing_metric(j: &BilinearForm, max_degree: u32) -> Result<KillingSolution, CalcError> {
    if j.parity() != Parity::Even {
        return Err(CalcError::Parity("metric must be an even form".into()));
    }
    let dim = j.dim();
    let (n, m) = (dim.even, dim.odd);
    let jm = j.matrix();
    let coords: Vec<SuperVectorField> = (0..n + m).map(|a| SuperVectorField::coordinate(n, m, a)).collect();
    let mut sol = KillingSolution { n_even: n, n_odd: m, degree: max_degree, even: vec![], odd: vec![] };
    for parity in [Parity::Even, Parity::Odd] {
        let fields = ansatz(n, m, max_degree, parity);
        let mut sys = System::default();
        for (idx, x) in fields.iter().enumerate() {
            let brackets = coords.iter().map(|d| vf_bracket(x, d)).collect::<Result<Vec<_>, _>>()?;
            for a in 0..n + m {
                for b in 0..n + m {
                    let left = pair(jm, &brackets[a], &coords[b]);
                    let right = pair(jm, &coords[a], &brackets[b]);
                    let sign = GQ::from_int(Parity::koszul(parity, coords[a].parity()));
                    let eq = -&(&left + &right.scale(&sign));
                    sys.add(idx, (a, b), &eq);
                }
            }
        }
        let basis = sys.solve(&fields);
        match parity {
            Parity::Even => sol.even = basis,
            Parity::Odd => sol.odd = basis,
        }
    }
    Ok(sol)
}
