//! Real prolongation and admissibility.

use crate::gsalg::linalg::{self, SparseVec};
use crate::gsalg::{check_mixed, check_mixed_subspaces, Field, GradedDim, GradedSubspace, MixedData, MixedVerdict, MixedViolation, GQ};
use crate::liesuper::SuperAlgebraBasis;

use super::tower::ProlongationTower;
use super::ProlongError;

pub const DEFAULT_KMAX: usize = 8;

/// A mixed structure on the even part `U_0` of a level, in the coordinates
/// of the level's even basis: `real` is realified, `complex` is complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelMixed {
    pub real: GradedSubspace,
    pub complex: GradedSubspace,
}

impl LevelMixed {
    /// The even part of mixed data on `V`.
    pub fn from_mixed(d: &MixedData) -> Result<Self, ProlongError> {
        let (real, complex) = d.even_part()?;
        Ok(Self { real, complex })
    }

    pub fn real_dim(&self) -> usize {
        self.real.dim().total()
    }

    pub fn check(&self) -> Result<MixedVerdict, ProlongError> {
        Ok(check_mixed_subspaces(&self.real, &self.complex)?)
    }
}

/// Real functionals vanishing on a realified subspace.
fn annihilator(s: &GradedSubspace) -> Vec<Vec<GQ>> {
    let n = s.coord_len();
    let rows = s.basis_all().map(|v| linalg::to_sparse(v));
    linalg::kernel_basis(rows.collect::<Vec<_>>(), n)
        .iter()
        .map(|v| linalg::to_dense(v, n))
        .collect()
}

/// Real even maps `X ∈ (g^(k))_0` with `X(V_R) ⊆ U_R` and `X(V_C) ⊆ U_C`,
/// where `U` is level `k − 1` (or `V` for `k = 0`) carrying `target`.
///
/// Unknowns are the real and imaginary parts of the coefficients on the
/// even basis of level `k`; the result is a real subspace of
/// `ℂ^{dim (g^(k))_0 | 0}` in realified coordinates. Odd parts impose no
/// condition since they are both real and complex.
pub fn hom_mu_real(
    tower: &mut ProlongationTower,
    k: usize,
    source: &LevelMixed,
    target: &LevelMixed,
) -> Result<GradedSubspace, ProlongError> {
    tower.level(k)?;
    let layout = tower.layout(k);
    let level = tower.computed_level(k).expect("computed above");
    let v_even = tower.v().even;
    let u_even = layout.target().even;
    if source.real.ambient() != GradedDim::new(v_even, 0) || target.real.ambient() != GradedDim::new(u_even, 0) {
        return Err(ProlongError::Shape("mixed data does not match the level".into()));
    }
    let basis = level.basis_even();
    let d0 = basis.len();
    let ambient = GradedDim::new(d0, 0);

    // X(r) for X = Y_j: coefficient matrix M[β][j] = Σ_a r_a Y_j(v_a)_β
    let image = |r: &[GQ]| -> Vec<Vec<GQ>> {
        (0..u_even)
            .map(|beta| {
                basis
                    .iter()
                    .map(|y| {
                        let mut acc = GQ::zero();
                        for (a, ra) in r.iter().enumerate() {
                            let c = &y[layout.coord(a, beta)];
                            if !ra.is_zero() && !c.is_zero() {
                                acc += &(ra * c);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut constrain = |gens: Vec<Vec<GQ>>, ann: &[Vec<GQ>]| {
        for r in gens {
            let m = image(&r);
            for phi in ann {
                let mut row = vec![GQ::zero(); 2 * d0];
                for beta in 0..u_even {
                    let (pr, pi) = (&phi[2 * beta], &phi[2 * beta + 1]);
                    for j in 0..d0 {
                        let re = GQ::real(m[beta][j].re.clone());
                        let im = GQ::real(m[beta][j].im.clone());
                        // u_j: Re contributes re, Im contributes im; w_j: −im, re
                        row[2 * j] += &(&(pr * &re) + &(pi * &im));
                        row[2 * j + 1] += &(&(pi * &re) - &(pr * &im));
                    }
                }
                let row = linalg::to_sparse(&row);
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    };
    constrain(source.real.complex_generators(), &annihilator(&target.real));
    constrain(source.complex.basis_all().cloned().collect(), &annihilator(&target.complex.realify()?));

    let sol = linalg::kernel_basis(rows, 2 * d0);
    Ok(GradedSubspace::from_coords(
        ambient,
        Field::Real,
        sol.iter().map(|s| linalg::to_dense(s, 2 * d0)).collect::<Vec<_>>(),
    )?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibleVerdict {
    Admissible,
    Inadmissible { level: usize, violation: MixedViolation },
    Undecided(usize),
}

/// Verdict together with the mixed structures found on the levels checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissibility {
    pub verdict: AdmissibleVerdict,
    pub levels: Vec<LevelMixed>,
}

impl Admissibility {
    pub fn real_even_dims(&self) -> Vec<usize> {
        self.levels.iter().map(LevelMixed::real_dim).collect()
    }
}

/// Checks that every `(g^(k))_{0,ℝ}` defines a mixed structure on
/// `(g^(k))_0`, until the tower vanishes or `kmax` is reached.
pub fn is_admissible(g: &SuperAlgebraBasis, mixed: &MixedData, kmax: usize) -> Result<Admissibility, ProlongError> {
    let mut tower = ProlongationTower::new(g);
    admissibility_of(&mut tower, mixed, kmax)
}

/// [`is_admissible`] on an existing tower, which keeps the computed levels.
pub fn admissibility_of(
    tower: &mut ProlongationTower,
    mixed: &MixedData,
    kmax: usize,
) -> Result<Admissibility, ProlongError> {
    if mixed.ambient() != tower.v() {
        return Err(ProlongError::Shape(format!("mixed data on {} for V = {}", mixed.ambient(), tower.v())));
    }
    if let MixedVerdict::Violation(v) = check_mixed(mixed)? {
        return Err(ProlongError::InvalidMixed(v));
    }
    let source = LevelMixed::from_mixed(mixed)?;
    let mut prev = source.clone();
    let mut levels = Vec::new();
    for k in 0..=kmax {
        if tower.level(k)?.is_zero() {
            return Ok(Admissibility { verdict: AdmissibleVerdict::Admissible, levels });
        }
        let real = hom_mu_real(tower, k, &source, &prev)?;
        let complex = real.induced_complex_part()?;
        let here = LevelMixed { real, complex };
        let verdict = here.check()?;
        levels.push(here.clone());
        if let MixedVerdict::Violation(violation) = verdict {
            return Ok(Admissibility { verdict: AdmissibleVerdict::Inadmissible { level: k, violation }, levels });
        }
        prev = here;
    }
    Ok(Admissibility { verdict: AdmissibleVerdict::Undecided(kmax), levels })
}
