//! Clifford modules and the spinor superization `so ⋉ W`.

use crate::gsalg::{GradedDim, Matrix, Parity, GQ};

use super::algebra::SuperAlgebraBasis;
use super::element::GlElement;
use super::LieError;

/// Generators `γ_1..γ_{p+q}` with `γ_i γ_j + γ_j γ_i = 2 η_ij`,
/// `η = diag(+1 (p times), −1 (q times))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordRep {
    p: usize,
    q: usize,
    gammas: Vec<Matrix>,
}

fn pauli() -> (Matrix, Matrix) {
    let s1 = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
    let mut s2 = Matrix::zeros(2, 2);
    s2[(0, 1)] = -GQ::i();
    s2[(1, 0)] = GQ::i();
    (s1, s2)
}

/// Euclidean generators for `Cl(n)` on `ℂ^{2^{⌊n/2⌋}}`.
fn euclidean(n: usize) -> Vec<Matrix> {
    let (s1, s2) = pauli();
    let mut gammas = vec![Matrix::identity(1)];
    let mut m = 1;
    while m < n {
        if m % 2 == 1 {
            // odd count: Γ_j ⊗ σ1 together with I ⊗ σ2
            let size = gammas[0].nrows();
            let mut next: Vec<Matrix> = gammas.iter().map(|g| g.kron(&s1)).collect();
            next.push(Matrix::identity(size).kron(&s2));
            gammas = next;
            m += 1;
        } else {
            // even count 2k: append i^k γ_1 ⋯ γ_2k
            let k = m / 2;
            let mut chi = Matrix::identity(gammas[0].nrows());
            for g in &gammas {
                chi = &chi * g;
            }
            gammas.push(chi.scale(&GQ::i().pow(k as u32)));
            m += 1;
        }
    }
    gammas.truncate(n);
    gammas
}

impl CliffordRep {
    pub fn new(p: usize, q: usize) -> Result<Self, LieError> {
        if p + q == 0 {
            return Err(LieError::Signature("p + q must be at least 1".into()));
        }
        let mut gammas = euclidean(p + q);
        for g in gammas.iter_mut().skip(p) {
            *g = g.scale(&GQ::i());
        }
        Ok(Self { p, q, gammas })
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn gammas(&self) -> &[Matrix] {
        &self.gammas
    }

    pub fn spinor_dim(&self) -> usize {
        self.gammas[0].nrows()
    }

    pub fn eta(&self, i: usize) -> i64 {
        if i < self.p {
            1
        } else {
            -1
        }
    }

    /// Exact check of `γ_i γ_j + γ_j γ_i = 2 η_ij`.
    pub fn satisfies_relations(&self) -> bool {
        let n = self.spinor_dim();
        for (i, gi) in self.gammas.iter().enumerate() {
            for (j, gj) in self.gammas.iter().enumerate() {
                let ac = &(gi * gj) + &(gj * gi);
                let expect = if i == j {
                    Matrix::identity(n).scale(&GQ::from_int(2 * self.eta(i)))
                } else {
                    Matrix::zeros(n, n)
                };
                if ac != expect {
                    return false;
                }
            }
        }
        true
    }
}

pub fn clifford_rep(p: usize, q: usize) -> Result<CliffordRep, LieError> {
    CliffordRep::new(p, q)
}

/// `so(p, q) ⋉ W` inside `gl(ℂ^{n|s})`, `n = p + q`, `s` the spinor dimension.
///
/// The even part is spanned by `L_ij ⊕ ½ γ_i γ_j` (`i < j`) with
/// `L_ij e_k = η_jk e_i − η_ik e_j`; the odd part by `f_s(e_k) = γ_k s`.
pub fn spin_w_algebra(p: usize, q: usize) -> Result<SuperAlgebraBasis, LieError> {
    let cl = CliffordRep::new(p, q)?;
    let n = p + q;
    let s = cl.spinor_dim();
    let dim = GradedDim::new(n, s);
    let half = GQ::from_ratio(1, 2);
    let mut elements = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut m = Matrix::zeros(n + s, n + s);
            m[(i, j)] = GQ::from_int(cl.eta(j));
            m[(j, i)] = GQ::from_int(-cl.eta(i));
            let spin = (&cl.gammas[i] * &cl.gammas[j]).scale(&half);
            m.set_block(n, n, &spin);
            elements.push(GlElement::new(dim, Parity::Even, m)?);
        }
    }
    for t in 0..s {
        let mut m = Matrix::zeros(n + s, n + s);
        for (k, g) in cl.gammas.iter().enumerate() {
            for r in 0..s {
                m[(n + r, k)] = g[(r, t)].clone();
            }
        }
        elements.push(GlElement::new(dim, Parity::Odd, m)?);
    }
    SuperAlgebraBasis::from_elements(dim, elements)
}
