//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superprolong::gsalg::{GradedDim, MixedData, MixedViolation, Parity, GQ};
use superprolong::liesuper::{
    generated_subalgebra, osp_algebra, p_algebra, spin_w_algebra, BilinearForm, GlElement, SuperAlgebraBasis,
};
use superprolong::prolong::{
    finite_type, first_prolongation, is_admissible, AdmissibleVerdict, FiniteType, ProlongationTower, DEFAULT_KMAX,
};
use superprolong::supercalc::{
    commuting_residual, family_decompose, family_recompose, flow, flow_equation_residual, group_law_residual,
    killing_metric, killing_parallelization, lie_derivative_check, vf_bracket, Family, FamilyDecomposition, FlowOptions,
    GrassmannPoly, Monomial, SuperVectorField,
};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_osp_vanishing() -> Outcome {
    let mut n_cases = 0;
    for m in 0..=4 {
        for n in 0..=2 {
            if m + n == 0 {
                continue;
            }
            let g = osp_algebra(&BilinearForm::standard_even(m, n)).map_err(|e| e.to_string())?;
            let g1 = first_prolongation(&g).map_err(|e| e.to_string())?;
            ensure(g1.is_zero(), || format!("osp({m}|{}) has g^(1) of dim {}", 2 * n, g1.dim()))?;
            n_cases += 1;
        }
    }
    Ok(format!("{n_cases} pairs (m, n), m <= 4, n <= 2"))
}

fn c2_p_vanishing() -> Outcome {
    for n in 1..=3 {
        let g = p_algebra(&BilinearForm::standard_odd(n)).map_err(|e| e.to_string())?;
        let g1 = first_prolongation(&g).map_err(|e| e.to_string())?;
        ensure(g1.is_zero(), || format!("p({n}) has g^(1) of dim {}", g1.dim()))?;
    }
    Ok("n = 1, 2, 3".into())
}

fn c3_spin_w() -> Outcome {
    let mut parts = Vec::new();
    for (p, frozen) in [(3, 1), (4, 1)] {
        let g = spin_w_algebra(p, 0).map_err(|e| e.to_string())?;
        let ft = finite_type(&g, 4).map_err(|e| e.to_string())?;
        ensure(ft == FiniteType::Finite(frozen), || format!("spin_w({p},0): {ft:?}, expected Finite({frozen})"))?;
        parts.push(format!("p={p}: finite({frozen})"));
    }
    let g = spin_w_algebra(2, 0).map_err(|e| e.to_string())?;
    let mut t = ProlongationTower::new(&g);
    let dims: Vec<String> = (0..=4).map(|k| t.level(k).map(|l| l.dim().to_string())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    parts.push(format!("p=2 (reported): dims {}", dims.join(", ")));
    Ok(parts.join("; "))
}

fn c4_admissibility() -> Outcome {
    for (m, n) in [(1, 0), (2, 0), (3, 0), (2, 1), (1, 1), (0, 1)] {
        let g = osp_algebra(&BilinearForm::standard_even(m, n)).map_err(|e| e.to_string())?;
        let a = is_admissible(&g, &MixedData::model(m, 0, 2 * n), DEFAULT_KMAX).map_err(|e| e.to_string())?;
        ensure(a.verdict == AdmissibleVerdict::Admissible, || format!("osp({m}|{}) on the real model: {:?}", 2 * n, a.verdict))?;
    }
    for n in 1..=3 {
        let g = p_algebra(&BilinearForm::standard_odd(n)).map_err(|e| e.to_string())?;
        let a = is_admissible(&g, &MixedData::model(n, 0, n), DEFAULT_KMAX).map_err(|e| e.to_string())?;
        ensure(a.verdict == AdmissibleVerdict::Admissible, || format!("p({n}) on the real model: {:?}", a.verdict))?;
    }
    for (n1, n2, odd) in [(1, 1, 0), (1, 1, 1), (2, 1, 0), (1, 2, 2)] {
        let g = SuperAlgebraBasis::gl(GradedDim::new(n1 + n2, odd));
        let a = is_admissible(&g, &MixedData::model(n1, n2, odd), DEFAULT_KMAX).map_err(|e| e.to_string())?;
        let failed_at_0 = matches!(
            a.verdict,
            AdmissibleVerdict::Inadmissible { level: 0, violation: MixedViolation::SpanDeficient { .. } }
                | AdmissibleVerdict::Inadmissible { level: 0, violation: MixedViolation::IntersectionMismatch { .. } }
        );
        ensure(failed_at_0, || format!("gl on the mixed model ({n1},{n2}|{odd}): {:?}", a.verdict))?;
    }
    Ok("osp admissible on 6 real models, p(1..3) admissible; gl fails level 0 on 4 strictly mixed models".into())
}

fn random_element(rng: &mut ChaCha8Rng, v: GradedDim) -> GlElement {
    let n = v.total();
    let p = Parity::from_bit(rng.gen_range(0..2));
    let mut m = superprolong::gsalg::Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            if v.parity_of(r) + v.parity_of(c) == p && rng.gen_bool(0.6) {
                m[(r, c)] = GQ::from_parts((rng.gen_range(-3..=3), 1), (rng.gen_range(-1..=1), 1));
            }
        }
    }
    GlElement::new(v, p, m).expect("homogeneous by construction")
}

fn c5_route_agreement() -> Outcome {
    let mut corpus = Vec::new();
    for (m, n) in [(1, 0), (2, 0), (3, 0), (4, 0), (0, 1), (1, 1), (2, 1), (2, 2)] {
        corpus.push(osp_algebra(&BilinearForm::standard_even(m, n)).map_err(|e| e.to_string())?);
    }
    for n in 1..=3 {
        corpus.push(p_algebra(&BilinearForm::standard_odd(n)).map_err(|e| e.to_string())?);
    }
    for (p, q) in [(2, 0), (3, 0), (4, 0), (2, 1), (1, 1)] {
        corpus.push(spin_w_algebra(p, q).map_err(|e| e.to_string())?);
    }
    for (e, o) in [(1, 0), (2, 0), (0, 1), (1, 1), (2, 1), (1, 2)] {
        corpus.push(SuperAlgebraBasis::gl(GradedDim::new(e, o)));
    }
    let n_corpus = corpus.len();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let v = GradedDim::new(rng.gen_range(1..=3), rng.gen_range(0..=2));
        let gens: Vec<_> = (0..rng.gen_range(1..=3)).map(|_| random_element(&mut rng, v)).collect();
        corpus.push(generated_subalgebra(v, gens).map_err(|e| e.to_string())?);
    }
    for g in &corpus {
        let direct = first_prolongation(g).map_err(|e| e.to_string())?;
        let mut t = ProlongationTower::new(g);
        let level = t.level(1).map_err(|e| e.to_string())?;
        ensure(&direct == level, || format!("routes differ on a subalgebra of gl({}) of dim {}", g.v(), g.dim()))?;
    }
    Ok(format!("{n_corpus} constructor algebras and 10 random subalgebras"))
}

fn c6_flat_isometries() -> Outcome {
    let mut parts = Vec::new();
    for (n, k) in [(2, 0), (3, 0), (2, 1), (0, 1)] {
        let j = BilinearForm::standard_even(n, k);
        let s = killing_metric(&j, 2).map_err(|e| e.to_string())?;
        let osp = osp_algebra(&j).map_err(|e| e.to_string())?.dim();
        let want = GradedDim::new(osp.even + n, osp.odd + 2 * k);
        ensure(s.dim() == want, || format!("R^{{{n}|{}}}: dim {}, expected {want}", 2 * k, s.dim()))?;
        parts.push(format!("R^{{{n}|{}}}: {want}", 2 * k));
    }
    Ok(parts.join(", "))
}

fn c7_parallelizations() -> Outcome {
    for (n, m) in [(1, 0), (2, 0), (3, 0), (0, 2), (1, 1), (2, 2)] {
        let frame: Vec<_> = (0..n + m).map(|k| SuperVectorField::coordinate(n, m, k)).collect();
        let s = killing_parallelization(&frame, 2).map_err(|e| e.to_string())?;
        ensure(s.dim() == GradedDim::new(n, m), || format!("standard frame on R^{{{n}|{m}}}: dim {}", s.dim()))?;
    }
    let mut dims = Vec::new();
    let mut used = 0;
    for frame in common::perturbed_frames() {
        let s = killing_parallelization(&frame, 2).map_err(|e| e.to_string())?;
        if s.dim().total() == 0 {
            continue;
        }
        let zero = vec![GQ::zero(); s.n_even];
        let half = vec![GQ::from_ratio(1, 2); s.n_even];
        for p in [&zero, &half] {
            let r = s.evaluation_rank(p);
            ensure(r == s.dim().total(), || format!("evaluation rank {r} for solution dim {}", s.dim()))?;
        }
        ensure(s.is_bracket_closed().map_err(|e| e.to_string())?, || "solution space not bracket-closed".into())?;
        dims.push(s.dim().to_string());
        used += 1;
    }
    ensure(used >= 5, || format!("only {used} perturbed frames with nonzero solutions"))?;
    Ok(format!("standard frames n|m; {used} perturbed frames, dims {}", dims.join(", ")))
}

fn c8_flows() -> Outcome {
    let p = |i: usize| GrassmannPoly::eta(1, 2, i);
    let x = GrassmannPoly::x(1, 2, 0);
    let z = GrassmannPoly::zero(1, 2);
    let one = GrassmannPoly::one(1, 2);
    let field = |c: [&GrassmannPoly; 3]| SuperVectorField::homogeneous(1, 2, c.into_iter().cloned().collect()).unwrap();
    let examples = [
        ("translation", field([&one, &z, &z]), 2.0, vec![vec![0.5], vec![-1.0]]),
        ("linear", field([&x, &p(0), &z]), 1.0, vec![vec![0.5], vec![-1.0]]),
        ("blow-up", field([&x.pow(2), &z, &z]), 2.0, vec![vec![0.5], vec![-0.25]]),
    ];
    let (mut worst_flow, mut worst_group) = (0f64, 0f64);
    for (name, v, t1, bodies) in &examples {
        let r = flow(v, (0.0, *t1), bodies, 10).map_err(|e| e.to_string())?;
        let res = flow_equation_residual(v, &r, 1e-3).map_err(|e| e.to_string())?;
        let g = group_law_residual(v, bodies, 0.3, 0.4, &FlowOptions::default()).map_err(|e| e.to_string())?;
        ensure(res <= 1e-6, || format!("{name}: flow residual {res:.2e}"))?;
        ensure(g <= 1e-6, || format!("{name}: group law residual {g:.2e}"))?;
        worst_flow = worst_flow.max(res);
        worst_group = worst_group.max(g);
    }
    let blow = field([&x.pow(2), &z, &z]);
    let r = flow(&blow, (0.0, 2.0), &[vec![1.0]], 4).map_err(|e| e.to_string())?;
    let esc = r.trajectories[0].escape_time.ok_or("blow-up did not escape")?;
    ensure((esc - 1.0).abs() <= 1e-3, || format!("escape time {esc}"))?;

    let euler = field([&x, &z, &z]);
    let y = field([&z, &z, &p(0)]);
    ensure(vf_bracket(&euler, &y).map_err(|e| e.to_string())?.is_zero(), || "commuting pair does not commute".into())?;
    let fl = flow(&euler, (0.0, 1.0), &[vec![0.3], vec![-0.8]], 5).map_err(|e| e.to_string())?;
    let comm = commuting_residual(&euler, &y, &fl).map_err(|e| e.to_string())?;
    ensure(comm <= 1e-5, || format!("commuting residual {comm:.2e}"))?;

    let pairs = [
        (field([&one, &z, &z]), field([&x, &z, &z])),
        (field([&x, &p(0), &z]), field([&z, &z, &(&x * &p(0))])),
        (field([&x.pow(2), &p(1), &z]), field([&p(0), &z, &one])),
        (field([&x, &z, &z]), field([&z, &x, &z])),
    ];
    let mut worst_lie = 0f64;
    for (a, b) in &pairs {
        let d = lie_derivative_check(a, b, &[vec![0.3], vec![-0.8]], 1e-3).map_err(|e| e.to_string())?;
        ensure(d <= 1e-5, || format!("L_X Y vs [X,Y] for X = {a}, Y = {b}: {d:.2e}"))?;
        worst_lie = worst_lie.max(d);
    }
    Ok(format!(
        "flow {worst_flow:.1e}, group law {worst_group:.1e}, escape {esc:.6}, commuting {comm:.1e}, Lie derivative {worst_lie:.1e}"
    ))
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, m: usize, parity: Parity, skip: impl Fn(u32) -> bool) -> GrassmannPoly {
    let mut f = GrassmannPoly::zero(n, m);
    for _ in 0..rng.gen_range(0..=3) {
        let mask: u32 = rng.gen_range(0..1 << m);
        if mask.count_ones() as usize % 2 != parity.bit() || skip(mask) {
            continue;
        }
        let exps = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let c = GQ::from_parts((rng.gen_range(-3..=3), rng.gen_range(1..=2)), (rng.gen_range(-1..=1), 1));
        f = &f + &GrassmannPoly::monomial(n, m, Monomial::new(exps, mask), c);
    }
    f
}

/// Base map with constant invertible body Jacobian on `R^{n|m}`.
fn random_base(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Family {
    let mut images = Vec::new();
    for k in 0..n {
        let mut f = GrassmannPoly::x(n, m, k).scale(&GQ::from_int(rng.gen_range(1..=3)));
        f = &f + &GrassmannPoly::constant(n, m, GQ::from_int(rng.gen_range(-2..=2)));
        f = &f + &random_poly(rng, n, m, Parity::Even, |mask| mask == 0);
        images.push(f);
    }
    for j in 0..m {
        let mut f = GrassmannPoly::eta(n, m, j).scale(&GQ::from_int(rng.gen_range(1..=2)));
        if j + 1 < m {
            f = &f + &GrassmannPoly::eta(n, m, j + 1).scale(&GQ::from_int(rng.gen_range(-1..=1)));
        }
        f = &f + &random_poly(rng, n, m, Parity::Odd, |mask| mask.count_ones() == 1);
        images.push(f);
    }
    Family::new(n, m, 0, images).expect("well-formed base")
}

fn c9_families() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut cases = 0;
    for params in 0..=3 {
        for _ in 0..8 {
            let (n, m) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let base = random_base(&mut rng, n, m);
            let mut fields = BTreeMap::new();
            for mask in 1u32..1 << params {
                let p = Parity::from_bit(mask.count_ones() as usize);
                let coeffs = (0..n + m)
                    .map(|k| random_poly(&mut rng, n, m, if k < n { p } else { p.flip() }, |_| false))
                    .collect();
                let x = SuperVectorField::new(n, m, p, coeffs).expect("parities match");
                if !x.is_zero() {
                    fields.insert(mask, x);
                }
            }
            let d = FamilyDecomposition { params, base, fields };
            let f = family_recompose(&d).map_err(|e| e.to_string())?;
            let back = family_decompose(&f).map_err(|e| e.to_string())?;
            ensure(back == d, || format!("decomposition of a {params}-parameter family differs"))?;
            ensure(family_recompose(&back).map_err(|e| e.to_string())? == f, || "recompose(decompose(f)) != f".into())?;
            cases += 1;
        }
    }
    Ok(format!("{cases} random families, 0 to 3 odd parameters"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("osp first prolongation vanishes", c1_osp_vanishing, 10),
        ("p first prolongation vanishes", c2_p_vanishing, 10),
        ("spinor superizations are of finite type", c3_spin_w, 30),
        ("admissibility verdicts", c4_admissibility, 5),
        ("kernel and inductive first prolongations agree", c5_route_agreement, 30),
        ("flat isometry dimensions", c6_flat_isometries, 20),
        ("parallelization automorphisms", c7_parallelizations, 20),
        ("flow axioms", c8_flows, 30),
        ("family decomposition round trip", c9_families, 30),
    ];
    let mut failed = 0;
    for (k, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let slow = took > Duration::from_secs(budget);
        let (tag, detail) = match (&outcome, slow) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {budget} s budget")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("criterion {} {tag} {name} ({:.2} s): {detail}", k + 1, took.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
