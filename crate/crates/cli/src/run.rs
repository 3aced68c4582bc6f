//! Dispatch from a validated spec to the library, and error classification.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use superprolong::gsalg::{GradedDim, Matrix, MixedData, Parity, GQ};
use superprolong::liesuper::{
    bracket, is_subalgebra, osp_algebra, p_algebra, spin_w_algebra, BilinearForm, GlElement, LieError, SuperAlgebraBasis,
};
use superprolong::prolong::{
    admissibility_of, finite_type_of, first_prolongation, h02_dimension, AdmissibleVerdict, FiniteType, ProlongError,
    ProlongationTower, DEFAULT_KMAX,
};
use superprolong::supercalc::{
    family_decompose, family_recompose, flow, flow_equation_residual, flow_with, group_law_residual, killing_metric,
    killing_parallelization, reality_residual, CalcError, Family, FamilyDecomposition, FlowOptions, GrassmannPoly,
    KillingSolution, Monomial, SuperVectorField,
};

use crate::expr::{parse_field, parse_function, Context};
use crate::report::{CheckEntry, Dim, FieldEntry, Level, MixedLevel, Report, Results, TrajectorySummary};
use crate::spec::{AlgebraSpec, BuiltinName, MixedSpec, ProblemSpec, SpaceSpec, TaskSpec, DEFAULT_DEGREE, SPEC_VERSION};

pub fn tool_name() -> String {
    format!("superprolong {}", env!("CARGO_PKG_VERSION"))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("computation failed: {0}")]
    Computation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Computation(_) => 3,
        }
    }
}

fn invalid(field: &str, e: impl Display) -> CliError {
    CliError::Validation(format!("{field}: {e}"))
}

fn failed(what: &str, e: impl Display) -> CliError {
    CliError::Computation(format!("{what}: {e}"))
}

fn lie_error(field: &str, e: LieError) -> CliError {
    match e {
        LieError::Shape(_) | LieError::Parity(_) | LieError::Linear(_) => invalid(field, e),
        _ => failed(field, e),
    }
}

fn prolong_error(what: &str, e: ProlongError) -> CliError {
    match e {
        ProlongError::Shape(_) => invalid(what, e),
        ProlongError::InvalidMixed(v) => failed(what, format!("mixed data violates the mixed condition: {v}")),
        _ => failed(what, e),
    }
}

fn calc_error(field: &str, e: CalcError) -> CliError {
    match e {
        CalcError::Domain(_) | CalcError::Parity(_) | CalcError::Shape(_) | CalcError::NotEvenReal(_) => invalid(field, e),
        _ => failed(field, e),
    }
}

/// Command-line values that replace the corresponding task options.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub kmax: Option<usize>,
    pub degree: Option<u32>,
    pub tol: Option<f64>,
}

pub fn apply_overrides(spec: &mut ProblemSpec, o: &Overrides) -> Result<(), CliError> {
    let kind = spec.task.kind();
    match &mut spec.task {
        TaskSpec::Prolong { kmax } | TaskSpec::FiniteType { kmax } | TaskSpec::Admissible { kmax, .. } => {
            if o.kmax.is_some() {
                *kmax = o.kmax;
            }
        }
        _ if o.kmax.is_some() => return Err(invalid("--kmax", format!("does not apply to {kind}"))),
        _ => {}
    }
    match &mut spec.task {
        TaskSpec::Killing { max_degree, .. } => {
            if o.degree.is_some() {
                *max_degree = o.degree;
            }
        }
        _ if o.degree.is_some() => return Err(invalid("--degree", format!("does not apply to {kind}"))),
        _ => {}
    }
    match &mut spec.task {
        TaskSpec::Flow { tol, .. } => {
            if o.tol.is_some() {
                *tol = o.tol;
            }
        }
        _ if o.tol.is_some() => return Err(invalid("--tol", format!("does not apply to {kind}"))),
        _ => {}
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    pub timing: bool,
}

pub fn run(spec: &ProblemSpec, opts: &RunOptions) -> Result<Report, CliError> {
    if spec.version != SPEC_VERSION {
        return Err(invalid("version", format!("expected \"{SPEC_VERSION}\", found \"{}\"", spec.version)));
    }
    let start = Instant::now();
    let results = match &spec.task {
        TaskSpec::Prolong { kmax } => prolong(spec, kmax.unwrap_or(DEFAULT_KMAX))?,
        TaskSpec::FiniteType { kmax } => finite(spec, kmax.unwrap_or(DEFAULT_KMAX))?,
        TaskSpec::Admissible { kmax, mixed } => admissible(spec, kmax.unwrap_or(DEFAULT_KMAX), mixed.as_ref())?,
        TaskSpec::H02 {} => h02(spec)?,
        TaskSpec::Killing { frame, metric, max_degree } => {
            killing(spec, frame.as_deref(), metric.as_deref(), max_degree.unwrap_or(DEFAULT_DEGREE))?
        }
        TaskSpec::Flow { field, t_span, bodies, steps, tol } => flow_task(spec, field, *t_span, bodies, *steps, *tol)?,
        TaskSpec::Decompose { params, images } => decompose(spec, *params, images)?,
        TaskSpec::Check {} => Results::Check { checks: self_check(opts.seed) },
    };
    Ok(Report {
        tool: tool_name(),
        seed: opts.seed,
        spec: spec.clone(),
        results,
        timing_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

fn space(spec: &ProblemSpec) -> Result<SpaceSpec, CliError> {
    spec.space.ok_or_else(|| invalid("space", format!("required for {}", spec.task.kind())))
}

fn scalar(field: &str, s: &str) -> Result<GQ, CliError> {
    s.parse().map_err(|e| invalid(field, e))
}

fn algebra(spec: &ProblemSpec) -> Result<SuperAlgebraBasis, CliError> {
    let a = spec.algebra.as_ref().ok_or_else(|| invalid("algebra", format!("required for {}", spec.task.kind())))?;
    let g = match a {
        AlgebraSpec::Builtin(b) => {
            let need_params = |n: usize| {
                if b.params.len() != n {
                    Err(invalid("algebra.builtin.params", format!("expected {n} parameters, found {}", b.params.len())))
                } else {
                    Ok(())
                }
            };
            match b.name {
                BuiltinName::Gl => {
                    need_params(0)?;
                    let s = space(spec)?;
                    SuperAlgebraBasis::gl(GradedDim::new(s.even, s.odd))
                }
                BuiltinName::Osp => {
                    need_params(0)?;
                    let s = space(spec)?;
                    if s.odd % 2 != 0 {
                        return Err(invalid("space.odd", "osp needs an even number of odd dimensions"));
                    }
                    osp_algebra(&BilinearForm::standard_even(s.even, s.odd / 2)).map_err(|e| lie_error("algebra", e))?
                }
                BuiltinName::P => {
                    need_params(0)?;
                    let s = space(spec)?;
                    if s.even != s.odd {
                        return Err(invalid("space", "p needs V = C^{n|n}"));
                    }
                    p_algebra(&BilinearForm::standard_odd(s.even)).map_err(|e| lie_error("algebra", e))?
                }
                BuiltinName::SpinW => {
                    need_params(2)?;
                    spin_w_algebra(b.params[0], b.params[1]).map_err(|e| lie_error("algebra.builtin.params", e))?
                }
            }
        }
        AlgebraSpec::Custom(mats) => {
            let s = space(spec)?;
            let v = GradedDim::new(s.even, s.odd);
            let mut elements = Vec::new();
            for (k, m) in mats.iter().enumerate() {
                let field = format!("algebra.custom[{k}]");
                let rows = m
                    .iter()
                    .enumerate()
                    .map(|(r, row)| {
                        row.iter().enumerate().map(|(c, x)| scalar(&format!("{field}[{r}][{c}]"), x)).collect()
                    })
                    .collect::<Result<Vec<Vec<GQ>>, _>>()?;
                let mat = Matrix::from_rows(rows).map_err(|e| invalid(&field, e))?;
                if mat.nrows() != v.total() || mat.ncols() != v.total() {
                    return Err(invalid(&field, format!("expected a {0}x{0} matrix", v.total())));
                }
                elements.push(GlElement::homogeneous(v, mat).map_err(|e| invalid(&field, e))?);
            }
            let g = SuperAlgebraBasis::from_elements(v, elements).map_err(|e| lie_error("algebra.custom", e))?;
            if !is_subalgebra(&g) {
                return Err(invalid("algebra.custom", "span is not closed under the super bracket"));
            }
            g
        }
    };
    if let Some(s) = spec.space {
        if GradedDim::new(s.even, s.odd) != g.v() {
            return Err(invalid("space", format!("algebra acts on {}, space is {}|{}", g.v(), s.even, s.odd)));
        }
    }
    Ok(g)
}

fn levels_upto(tower: &mut ProlongationTower, kmax: usize) -> Result<(Vec<Level>, Option<usize>), CliError> {
    let mut levels = Vec::new();
    for k in 0..=kmax {
        let d = tower.level(k).map_err(|e| prolong_error("prolongation", e))?.dim();
        levels.push(Level { k, dim: d.into() });
        if d.total() == 0 {
            return Ok((levels, Some(k)));
        }
    }
    Ok((levels, None))
}

fn prolong(spec: &ProblemSpec, kmax: usize) -> Result<Results, CliError> {
    let g = algebra(spec)?;
    let mut tower = ProlongationTower::new(&g);
    let (levels, vanishes_at) = levels_upto(&mut tower, kmax)?;
    Ok(Results::Prolong { v: g.v().into(), levels, vanishes_at })
}

fn finite(spec: &ProblemSpec, kmax: usize) -> Result<Results, CliError> {
    let g = algebra(spec)?;
    let mut tower = ProlongationTower::new(&g);
    let ft = finite_type_of(&mut tower, kmax).map_err(|e| prolong_error("prolongation", e))?;
    let levels = tower.dims().into_iter().enumerate().map(|(k, d)| Level { k, dim: d.into() }).collect();
    let (verdict, k) = match ft {
        FiniteType::Finite(k) => ("finite", k),
        FiniteType::Undecided(k) => ("undecided", k),
    };
    Ok(Results::FiniteType { v: g.v().into(), verdict: verdict.into(), k, levels })
}

fn mixed_data(s: &SpaceSpec, custom: Option<&MixedSpec>) -> Result<MixedData, CliError> {
    let v = GradedDim::new(s.even, s.odd);
    if let Some(m) = custom {
        let gens = |name: &str, vs: &[Vec<String>]| -> Result<Vec<Vec<GQ>>, CliError> {
            vs.iter()
                .enumerate()
                .map(|(k, vec)| {
                    let field = format!("task.mixed.{name}[{k}]");
                    if vec.len() != s.even {
                        return Err(invalid(&field, format!("expected {} even coordinates", s.even)));
                    }
                    let mut out = vec.iter().map(|x| scalar(&field, x)).collect::<Result<Vec<_>, _>>()?;
                    out.resize(v.total(), GQ::zero());
                    Ok(out)
                })
                .collect()
        };
        return MixedData::new(v, gens("real", &m.real)?, gens("complex", &m.complex)?).map_err(|e| invalid("task.mixed", e));
    }
    let (n1, n2) = match (s.n1, s.n2) {
        (None, None) => (s.even, 0),
        (Some(a), None) => (a, s.even.saturating_sub(a)),
        (None, Some(b)) => (s.even.saturating_sub(b), b),
        (Some(a), Some(b)) => (a, b),
    };
    if n1 + n2 != s.even {
        return Err(invalid("space.n2", format!("n1 + n2 = {} but space.even = {}", n1 + n2, s.even)));
    }
    Ok(MixedData::model(n1, n2, s.odd))
}

fn admissible(spec: &ProblemSpec, kmax: usize, custom: Option<&MixedSpec>) -> Result<Results, CliError> {
    let g = algebra(spec)?;
    let s = spec.space.unwrap_or(SpaceSpec { even: g.v().even, odd: g.v().odd, n1: None, n2: None });
    let mixed = mixed_data(&s, custom)?;
    let mut tower = ProlongationTower::new(&g);
    let adm = admissibility_of(&mut tower, &mixed, kmax).map_err(|e| prolong_error("admissibility", e))?;
    let dims = tower.dims();
    let levels = adm
        .levels
        .iter()
        .enumerate()
        .map(|(k, l)| MixedLevel {
            k,
            dim: dims[k].into(),
            real_even: l.real_dim(),
            complex_even: l.complex.dim().even,
        })
        .collect();
    let (verdict, level, violation) = match adm.verdict {
        AdmissibleVerdict::Admissible => ("admissible", None, None),
        AdmissibleVerdict::Inadmissible { level, violation } => ("inadmissible", Some(level), Some(violation.to_string())),
        AdmissibleVerdict::Undecided(k) => ("undecided", Some(k), None),
    };
    Ok(Results::Admissible { v: g.v().into(), verdict: verdict.into(), level, violation, levels })
}

fn h02(spec: &ProblemSpec) -> Result<Results, CliError> {
    let g = algebra(spec)?;
    let g1 = first_prolongation(&g).map_err(|e| prolong_error("prolongation", e))?;
    Ok(Results::H02 { v: g.v().into(), algebra: g.dim().into(), first_prolongation: g1.dim().into(), h02: h02_dimension(&g).into() })
}

fn killing_results(s: &KillingSolution, isometry_dim: Option<Dim>) -> Result<Results, CliError> {
    let ctx = Context::new(s.n_even, s.n_odd);
    Ok(Results::Killing {
        domain: Dim { even: s.n_even, odd: s.n_odd },
        dim: s.dim().into(),
        even: s.even.iter().map(|f| ctx.print_field(f)).collect(),
        odd: s.odd.iter().map(|f| ctx.print_field(f)).collect(),
        top_degree: s.top_degree(),
        tail_zero: s.tail_is_zero(),
        bracket_closed: s.is_bracket_closed().map_err(|e| failed("bracket closure", e))?,
        evaluation_rank: s.evaluation_rank(&vec![GQ::zero(); s.n_even]),
        isometry_dim,
    })
}

fn killing(
    spec: &ProblemSpec,
    frame: Option<&[String]>,
    metric: Option<&[Vec<String>]>,
    degree: u32,
) -> Result<Results, CliError> {
    let s = space(spec)?;
    let ctx = Context::new(s.even, s.odd);
    match (frame, metric) {
        (Some(frame), None) => {
            let fields = frame
                .iter()
                .enumerate()
                .map(|(k, src)| parse_field(src, &ctx).map_err(|e| invalid(&format!("task.frame[{k}]"), e)))
                .collect::<Result<Vec<_>, _>>()?;
            let sol = killing_parallelization(&fields, degree).map_err(|e| calc_error("task.frame", e))?;
            killing_results(&sol, None)
        }
        (None, Some(rows)) => {
            let rows = rows
                .iter()
                .enumerate()
                .map(|(r, row)| row.iter().enumerate().map(|(c, x)| scalar(&format!("task.metric[{r}][{c}]"), x)).collect())
                .collect::<Result<Vec<Vec<GQ>>, _>>()?;
            let m = Matrix::from_rows(rows).map_err(|e| invalid("task.metric", e))?;
            let v = GradedDim::new(s.even, s.odd);
            let j = BilinearForm::new(v, Parity::Even, m).map_err(|e| lie_error("task.metric", e))?;
            let sol = killing_metric(&j, degree).map_err(|e| calc_error("task.metric", e))?;
            let osp = osp_algebra(&j).map_err(|e| lie_error("task.metric", e))?.dim();
            killing_results(&sol, Some(Dim { even: osp.even + v.even, odd: osp.odd + v.odd }))
        }
        _ => Err(invalid("task", "give exactly one of frame, metric")),
    }
}

fn flow_task(
    spec: &ProblemSpec,
    field: &str,
    t_span: [f64; 2],
    bodies: &[Vec<f64>],
    steps: usize,
    tol: Option<f64>,
) -> Result<Results, CliError> {
    let s = space(spec)?;
    let x = parse_field(field, &Context::new(s.even, s.odd)).map_err(|e| invalid("task.field", e))?;
    let mut opts = FlowOptions::default();
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(invalid("task.tol", "must be positive"));
        }
        opts.tol = t;
    }
    let r = flow_with(&x, (t_span[0], t_span[1]), bodies, steps, opts).map_err(|e| calc_error("task", e))?;
    let flow_residual = flow_equation_residual(&x, &r, 1e-3).map_err(|e| calc_error("flow residual", e))?;
    let trajectories = r
        .trajectories
        .iter()
        .map(|t| TrajectorySummary {
            initial: t.initial.clone(),
            escape_time: t.escape_time,
            body: (0..t.states.len()).map(|k| t.body(k).iter().map(|z| z.re).collect()).collect(),
        })
        .collect();
    Ok(Results::Flow { times: r.times.clone(), trajectories, flow_residual, reality_residual: reality_residual(&r) })
}

fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|j| mask >> j & 1 == 1).map(|j| j + 1).collect()
}

fn decompose(spec: &ProblemSpec, params: usize, images: &[String]) -> Result<Results, CliError> {
    let s = space(spec)?;
    if params + s.odd > 16 {
        return Err(invalid("task.params", "at most 16 odd generators in total"));
    }
    let ctx = Context::with_params(s.even, s.odd, params);
    let polys = images
        .iter()
        .enumerate()
        .map(|(k, src)| parse_function(src, &ctx).map_err(|e| invalid(&format!("task.images[{k}]"), e)))
        .collect::<Result<Vec<_>, _>>()?;
    let fam = Family::new(s.even, s.odd, params, polys).map_err(|e| calc_error("task.images", e))?;
    let d = family_decompose(&fam).map_err(|e| calc_error("decomposition", e))?;
    let round_trip = family_recompose(&d).map_err(|e| calc_error("recomposition", e))? == fam;
    let plain = Context::new(s.even, s.odd);
    Ok(Results::Decompose {
        base: d.base.images.iter().map(|f| plain.print_poly(f)).collect(),
        fields: d
            .fields
            .iter()
            .map(|(&mask, x)| FieldEntry {
                index: mask_indices(mask),
                parity: x.parity().to_string(),
                field: plain.print_field(x),
            })
            .collect(),
        round_trip,
    })
}

fn entry(name: &str, passed: bool, detail: impl Into<String>) -> CheckEntry {
    CheckEntry { name: name.into(), passed, detail: detail.into() }
}

fn random_element(rng: &mut ChaCha8Rng, v: GradedDim, parity: Parity) -> GlElement {
    let n = v.total();
    let mut m = Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            if Parity::from_bit(v.parity_of(r).bit() + v.parity_of(c).bit()) == parity {
                m[(r, c)] = GQ::from_int(rng.gen_range(-3..=3));
            }
        }
    }
    GlElement::new(v, parity, m).expect("block pattern")
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, m: usize, parity: Parity) -> GrassmannPoly {
    let mut f = GrassmannPoly::zero(n, m);
    for _ in 0..rng.gen_range(0..=3) {
        let exps = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let mut mask: u32 = rng.gen_range(0..1 << m);
        if mask.count_ones() as usize % 2 != parity.bit() {
            if m == 0 {
                continue;
            }
            mask ^= 1;
        }
        f = &f + &GrassmannPoly::monomial(n, m, Monomial::new(exps, mask), GQ::from_int(rng.gen_range(-3..=3)));
    }
    f
}

fn random_field(rng: &mut ChaCha8Rng, n: usize, m: usize, parity: Parity) -> SuperVectorField {
    let coeffs = (0..n + m)
        .map(|k| random_poly(rng, n, m, if k < n { parity } else { parity.flip() }))
        .collect();
    SuperVectorField::new(n, m, parity, coeffs).expect("parities match")
}

/// Seeded self-test suite.
pub fn self_check(seed: u64) -> Vec<CheckEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let zero_g1 = |g: Result<SuperAlgebraBasis, LieError>| -> (bool, String) {
        match g.map_err(|e| e.to_string()).and_then(|g| first_prolongation(&g).map_err(|e| e.to_string())) {
            Ok(s) => (s.is_zero(), format!("dim g^(1) = {}", s.dim())),
            Err(e) => (false, e),
        }
    };
    let (ok, d) = zero_g1(osp_algebra(&BilinearForm::standard_even(2, 1)));
    out.push(entry("osp(2|2) has vanishing first prolongation", ok, d));
    let (ok, d) = zero_g1(p_algebra(&BilinearForm::standard_odd(2)));
    out.push(entry("p(2) has vanishing first prolongation", ok, d));

    let routes = spin_w_algebra(2, 0).map_err(|e| e.to_string()).and_then(|g| {
        let direct = first_prolongation(&g).map_err(|e| e.to_string())?;
        let mut t = ProlongationTower::new(&g);
        let level = t.level(1).map_err(|e| e.to_string())?.clone();
        Ok((direct == level, direct.dim()))
    });
    out.push(match routes {
        Ok((ok, d)) => entry("kernel of the antisymmetrizer equals tower level 1 for spin_w(2,0)", ok, format!("dim {d}")),
        Err(e) => entry("kernel of the antisymmetrizer equals tower level 1 for spin_w(2,0)", false, e),
    });

    let v = GradedDim::new(1, 1);
    let mut jacobi_ok = true;
    for _ in 0..20 {
        let [a, b, c] = [0, 1, 2].map(|_| {
            let p = if rng.gen_bool(0.5) { Parity::Even } else { Parity::Odd };
            random_element(&mut rng, v, p)
        });
        let lhs = bracket(&a, &bracket(&b, &c).unwrap()).unwrap();
        let s = GQ::from_int(Parity::koszul(a.parity(), b.parity()));
        let r1 = bracket(&bracket(&a, &b).unwrap(), &c).unwrap();
        let r2 = bracket(&b, &bracket(&a, &c).unwrap()).unwrap().scale(&s);
        jacobi_ok &= r1.add(&r2).map(|r| r.matrix() == lhs.matrix()).unwrap_or(false);
    }
    out.push(entry("super Jacobi identity in gl(1|1)", jacobi_ok, "20 random triples"));

    let mut comm_ok = true;
    for _ in 0..50 {
        let (pf, pg) = (Parity::from_bit(rng.gen_range(0..2)), Parity::from_bit(rng.gen_range(0..2)));
        let f = random_poly(&mut rng, 2, 3, pf);
        let g = random_poly(&mut rng, 2, 3, pg);
        comm_ok &= &f * &g == (&g * &f).scale(&GQ::from_int(Parity::koszul(pf, pg)));
    }
    out.push(entry("Grassmann polynomials supercommute", comm_ok, "50 random pairs on R^{2|3}"));

    let x = SuperVectorField::coordinate(1, 1, 0);
    let fl = flow(&x, (0.0, 1.0), &[vec![0.25]], 4)
        .and_then(|r| flow_equation_residual(&x, &r, 1e-3))
        .and_then(|r| Ok((r, group_law_residual(&x, &[vec![0.25]], 0.3, 0.4, &FlowOptions::default())?)));
    out.push(match fl {
        Ok((r, g)) => entry("translation flow axioms", r <= 1e-6 && g <= 1e-6, format!("residual {r:.1e}, group law {g:.1e}")),
        Err(e) => entry("translation flow axioms", false, e.to_string()),
    });

    let frame: Vec<_> = (0..4).map(|k| SuperVectorField::coordinate(2, 2, k)).collect();
    out.push(match killing_parallelization(&frame, 2) {
        Ok(s) => entry("standard frame on R^{2|2} has automorphisms 2|2", s.dim() == GradedDim::new(2, 2), format!("dim {}", s.dim())),
        Err(e) => entry("standard frame on R^{2|2} has automorphisms 2|2", false, e.to_string()),
    });

    let mut fields = BTreeMap::new();
    for mask in 1u32..4 {
        let p = Parity::from_bit(mask.count_ones() as usize);
        let f = random_field(&mut rng, 1, 1, p);
        if !f.is_zero() {
            fields.insert(mask, f);
        }
    }
    let d = FamilyDecomposition { params: 2, base: Family::identity(1, 1), fields };
    let rt = family_recompose(&d).and_then(|f| family_decompose(&f)).map(|e| e == d);
    out.push(entry("family decomposition round trip", rt == Ok(true), format!("{} fields", d.fields.len())));
    out
}
