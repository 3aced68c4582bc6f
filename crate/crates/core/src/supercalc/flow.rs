//! Flows of even real vector fields, integrated on Grassmann-valued points.
//!
//! A point of `ℝ^{n|m}` over the Grassmann algebra `Λ[θ]` has `n` even and
//! `m` odd components. Starting from `(x₀, θ)` the flow state at time `t` is
//! `Θ_t♯(q)`, the pullback of every coordinate, expanded in `θ`; its
//! `θ^I`-coefficients solve the triangular variational system. Integration is
//! adaptive RK4 with step doubling and Richardson extrapolation.

use num_complex::Complex64;

use crate::gsalg::Parity;

use super::field::{vf_bracket, SuperVectorField};
use super::numeric::{state_distance, state_norm, CompiledPoly, EvalCache, GrassmannNumber};
use super::CalcError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowOptions {
    /// Local error bound relative to `1 + |state|`.
    pub tol: f64,
    /// State norm treated as blow-up.
    pub escape_norm: f64,
    /// Smallest step before the integration gives up.
    pub min_step: f64,
}

impl Default for FlowOptions {
    fn default() -> Self {
        Self { tol: 1e-12, escape_norm: 1e8, min_step: 1e-14 }
    }
}

type State = Vec<GrassmannNumber>;

struct Rhs {
    n_even: usize,
    comps: Vec<CompiledPoly>,
}

impl Rhs {
    fn new(x: &SuperVectorField) -> Self {
        Self { n_even: x.n_even(), comps: x.coeffs().iter().map(CompiledPoly::new).collect() }
    }

    fn eval(&self, y: &[GrassmannNumber]) -> State {
        let mut cache = EvalCache::default();
        let (xs, etas) = y.split_at(self.n_even);
        self.comps.iter().map(|c| c.eval(xs, etas, &mut cache)).collect()
    }

    fn rk4(&self, y: &[GrassmannNumber], h: f64) -> State {
        let step = |a: &[GrassmannNumber], s: f64, k: &[GrassmannNumber]| -> State {
            a.iter().zip(k).map(|(u, v)| u.axpy(s, v)).collect()
        };
        let k1 = self.eval(y);
        let k2 = self.eval(&step(y, h / 2.0, &k1));
        let k3 = self.eval(&step(y, h / 2.0, &k2));
        let k4 = self.eval(&step(y, h, &k3));
        y.iter()
            .enumerate()
            .map(|(i, u)| u.axpy(h / 6.0, &k1[i]).axpy(h / 3.0, &k2[i]).axpy(h / 3.0, &k3[i]).axpy(h / 6.0, &k4[i]))
            .collect()
    }
}

enum Advance {
    Reached(State),
    Escaped(f64),
}

fn integrate(rhs: &Rhs, y0: State, t0: f64, t1: f64, max_step: f64, opts: &FlowOptions) -> Advance {
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let mut t = t0;
    let mut y = y0;
    let mut h = max_step.min((t1 - t0).abs());
    while (t1 - t).abs() > 1e-15 * (1.0 + t1.abs()) {
        h = h.min((t1 - t).abs());
        let big = rhs.rk4(&y, dir * h);
        let mid = rhs.rk4(&y, dir * h / 2.0);
        let half = rhs.rk4(&mid, dir * h / 2.0);
        let err = state_distance(&half, &big) / 15.0;
        let ratio = err / (opts.tol * (1.0 + state_norm(&half)));
        let escaped = |s: &State| s.iter().any(|g| !g.is_finite()) || state_norm(s) > opts.escape_norm;
        if ratio <= 1.0 && !escaped(&half) {
            let next: State = half.iter().zip(&big).map(|(a, b)| a.axpy(1.0 / 15.0, &a.sub(b))).collect();
            t = if (t1 - t).abs() <= h { t1 } else { t + dir * h };
            if escaped(&next) {
                return Advance::Escaped(t);
            }
            y = next;
            let grow = if ratio == 0.0 { 2.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 2.0) };
            h = (h * grow).min(max_step);
        } else {
            if escaped(&half) {
                // shrink towards the singularity until the norm test decides
                h /= 2.0;
            } else {
                h *= (0.9 * ratio.powf(-0.2)).max(0.1);
            }
            if h < opts.min_step {
                return Advance::Escaped(t);
            }
        }
    }
    Advance::Reached(y)
}

fn integrate_fixed(rhs: &Rhs, y0: State, t0: f64, t1: f64, h: f64) -> State {
    let n = ((t1 - t0).abs() / h).ceil().max(1.0) as usize;
    let dt = (t1 - t0) / n as f64;
    (0..n).fold(y0, |y, _| rhs.rk4(&y, dt))
}

/// `(x₀, η)` with the odd coordinates placed after `extra` leading
/// generators.
pub fn identity_point(n_odd: usize, body: &[f64], extra: usize) -> State {
    let gens = extra + n_odd;
    let mut p: State = body.iter().map(|&x| GrassmannNumber::real(gens, x)).collect();
    p.extend((0..n_odd).map(|j| GrassmannNumber::generator(gens, extra + j)));
    p
}

fn check_flowable(x: &SuperVectorField) -> Result<(), CalcError> {
    if !x.is_even_real() {
        return Err(CalcError::NotEvenReal(format!("cannot integrate {x}")));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub initial: Vec<f64>,
    /// One state per reached grid time.
    pub states: Vec<State>,
    /// Time at which blow-up was detected, if within the span.
    pub escape_time: Option<f64>,
}

impl Trajectory {
    pub fn body(&self, step: usize) -> Vec<Complex64> {
        self.states[step].iter().take(self.initial.len()).map(GrassmannNumber::body).collect()
    }

    /// Coefficient of `η^mask` in `Θ_t♯(q_coord)`.
    pub fn coefficient(&self, step: usize, coord: usize, mask: u32) -> Complex64 {
        self.states[step][coord].coeff(mask)
    }
}

#[derive(Debug, Clone)]
pub struct FlowResult {
    pub times: Vec<f64>,
    pub trajectories: Vec<Trajectory>,
    pub max_step: f64,
    pub options: FlowOptions,
}

fn flow_along(rhs: &Rhs, y0: State, times: &[f64], max_step: f64, opts: &FlowOptions) -> (Vec<State>, Option<f64>) {
    let mut states = Vec::with_capacity(times.len());
    let mut y = y0;
    let mut t = 0.0;
    for &tk in times {
        match integrate(rhs, y, t, tk, max_step, opts) {
            Advance::Reached(next) => {
                states.push(next.clone());
                y = next;
                t = tk;
            }
            Advance::Escaped(te) => return (states, Some(te)),
        }
    }
    (states, None)
}

/// Flow of an even real field on the grid of `steps` equal intervals of
/// `t_span`, from each body point.
pub fn flow(x: &SuperVectorField, t_span: (f64, f64), bodies: &[Vec<f64>], steps: usize) -> Result<FlowResult, CalcError> {
    flow_with(x, t_span, bodies, steps, FlowOptions::default())
}

pub fn flow_with(
    x: &SuperVectorField,
    t_span: (f64, f64),
    bodies: &[Vec<f64>],
    steps: usize,
    options: FlowOptions,
) -> Result<FlowResult, CalcError> {
    check_flowable(x)?;
    if steps == 0 || !(t_span.1 > t_span.0) {
        return Err(CalcError::Shape("flow needs t0 < t1 and at least one step".into()));
    }
    if let Some(b) = bodies.iter().find(|b| b.len() != x.n_even()) {
        return Err(CalcError::Shape(format!("body point of length {} for {} even coordinates", b.len(), x.n_even())));
    }
    let dt = (t_span.1 - t_span.0) / steps as f64;
    let times: Vec<f64> = (0..=steps).map(|k| t_span.0 + dt * k as f64).collect();
    let rhs = Rhs::new(x);
    let trajectories = bodies
        .iter()
        .map(|b| {
            let (states, escape_time) = flow_along(&rhs, identity_point(x.n_odd(), b, 0), &times, dt, &options);
            Trajectory { initial: b.clone(), states, escape_time }
        })
        .collect();
    Ok(FlowResult { times, trajectories, max_step: dt, options })
}

/// `Θ_t` applied to an arbitrary Grassmann-valued point; `None` on escape.
pub fn flow_point(x: &SuperVectorField, point: &[GrassmannNumber], t: f64, opts: &FlowOptions) -> Result<Option<State>, CalcError> {
    check_flowable(x)?;
    let rhs = Rhs::new(x);
    let max_step = t.abs().clamp(1e-6, 0.05);
    Ok(match integrate(&rhs, point.to_vec(), 0.0, t, max_step, opts) {
        Advance::Reached(y) => Some(y),
        Advance::Escaped(_) => None,
    })
}

fn escaped(what: &str) -> CalcError {
    CalcError::Escape(format!("flow left the domain while computing {what}"))
}

/// `max ‖∂_tΘ♯(q) − Θ♯(X(q))‖` over reached grid times, the derivative taken
/// by the 5-point stencil of step `h`.
pub fn flow_equation_residual(x: &SuperVectorField, result: &FlowResult, h: f64) -> Result<f64, CalcError> {
    let rhs = Rhs::new(x);
    let opts = result.options;
    let mut worst: f64 = 0.0;
    for traj in &result.trajectories {
        for y in &traj.states {
            let at = |s: f64| match integrate(&rhs, y.clone(), 0.0, s, h, &opts) {
                Advance::Reached(z) => Ok(z),
                Advance::Escaped(_) => Err(escaped("the flow residual")),
            };
            let (m2, m1, p1, p2) = (at(-2.0 * h)?, at(-h)?, at(h)?, at(2.0 * h)?);
            let exact = rhs.eval(y);
            for k in 0..y.len() {
                let d = m2[k].axpy(-8.0, &m1[k]).axpy(8.0, &p1[k]).axpy(-1.0, &p2[k]);
                let d = d.scale(Complex64::new(1.0 / (12.0 * h), 0.0));
                worst = worst.max(d.sub(&exact[k]).norm());
            }
        }
    }
    Ok(worst)
}

/// `‖Θ_s(Θ_t(p)) − Θ_{s+t}(p)‖`, the left side adaptive, the right side
/// fixed-step RK4 with step `1e−3`.
pub fn group_law_residual(
    x: &SuperVectorField,
    bodies: &[Vec<f64>],
    s: f64,
    t: f64,
    opts: &FlowOptions,
) -> Result<f64, CalcError> {
    check_flowable(x)?;
    let rhs = Rhs::new(x);
    let mut worst: f64 = 0.0;
    for b in bodies {
        let p = identity_point(x.n_odd(), b, 0);
        let lhs = flow_point(x, &p, t, opts)?.ok_or_else(|| escaped("the group law"))?;
        let lhs = flow_point(x, &lhs, s, opts)?.ok_or_else(|| escaped("the group law"))?;
        let rhs_state = integrate_fixed(&rhs, p, 0.0, s + t, 1e-3);
        worst = worst.max(state_distance(&lhs, &rhs_state));
    }
    Ok(worst)
}

/// Largest imaginary part of a body coordinate along all trajectories.
pub fn reality_residual(result: &FlowResult) -> f64 {
    let mut worst: f64 = 0.0;
    for traj in &result.trajectories {
        for k in 0..traj.states.len() {
            for z in traj.body(k) {
                worst = worst.max(z.im.abs());
            }
        }
    }
    worst
}

/// Extra generators carrying an infinitesimal displacement along `Y`: one
/// odd `θ` for odd `Y`, the even nilpotent `ε = θ₁θ₂` for even `Y`.
fn probe_generators(y: &SuperVectorField) -> usize {
    match y.parity() {
        Parity::Odd => 1,
        Parity::Even => 2,
    }
}

/// `p + εY(p)` (or `p + θY(p)`): the point whose flow carries `Y` applied to
/// the flow map in its probe coefficient.
fn displaced(y: &SuperVectorField, p: &[GrassmannNumber]) -> State {
    let probes = probe_generators(y);
    let gens = p[0].gens();
    let probe = if probes == 1 {
        GrassmannNumber::generator(gens, 0)
    } else {
        GrassmannNumber::generator(gens, 0).mul(&GrassmannNumber::generator(gens, 1))
    };
    let yv = Rhs::new(y).eval(p);
    p.iter().zip(&yv).map(|(q, v)| q.axpy(1.0, &probe.mul(v))).collect()
}

/// `Y` applied to the flow map, read off the probe coefficient.
fn y_of_map(y: &SuperVectorField, g: &GrassmannNumber) -> GrassmannNumber {
    match y.parity() {
        Parity::Odd => g.strip_left(0),
        Parity::Even => g.strip_left(0).strip_left(1),
    }
}

/// `max ‖(D_h − D_{−h})/2h − [X,Y](p)‖` with `D_t = Θ_t♯ ∘ Y ∘ Θ_{−t}♯`
/// applied to the coordinates at each body point.
pub fn lie_derivative_check(
    x: &SuperVectorField,
    y: &SuperVectorField,
    bodies: &[Vec<f64>],
    t_step: f64,
) -> Result<f64, CalcError> {
    check_flowable(x)?;
    let bracket = Rhs::new(&vf_bracket(x, y)?);
    let opts = FlowOptions::default();
    let mut worst: f64 = 0.0;
    for b in bodies {
        let p = identity_point(x.n_odd(), b, probe_generators(y));
        let conj = |t: f64| -> Result<State, CalcError> {
            let r = flow_point(x, &p, t, &opts)?.ok_or_else(|| escaped("the Lie derivative"))?;
            let g = flow_point(x, &displaced(y, &r), -t, &opts)?.ok_or_else(|| escaped("the Lie derivative"))?;
            Ok(g.iter().map(|c| y_of_map(y, c)).collect())
        };
        let (plus, minus) = (conj(t_step)?, conj(-t_step)?);
        let exact = bracket.eval(&p);
        for k in 0..p.len() {
            let fd = plus[k].sub(&minus[k]).scale(Complex64::new(0.5 / t_step, 0.0));
            worst = worst.max(fd.sub(&exact[k]).norm());
        }
    }
    Ok(worst)
}

/// `max ‖Θ_t♯(Y(q)) − Y(Θ_t♯(q))‖` over the grid of `result`; small exactly
/// when the flow of `X` commutes with `Y`.
pub fn commuting_residual(x: &SuperVectorField, y: &SuperVectorField, result: &FlowResult) -> Result<f64, CalcError> {
    check_flowable(x)?;
    let rhs = Rhs::new(x);
    let yrhs = Rhs::new(y);
    let mut worst: f64 = 0.0;
    for traj in &result.trajectories {
        let p = identity_point(x.n_odd(), &traj.initial, probe_generators(y));
        let (moved, _) = flow_along(&rhs, displaced(y, &p), &result.times, result.max_step, &result.options);
        let (plain, _) = flow_along(&rhs, p, &result.times, result.max_step, &result.options);
        for (m, q) in moved.iter().zip(&plain) {
            let lhs = yrhs.eval(q);
            for k in 0..q.len() {
                worst = worst.max(lhs[k].sub(&y_of_map(y, &m[k])).norm());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supercalc::GrassmannPoly;

    fn field(coeffs: Vec<GrassmannPoly>) -> SuperVectorField {
        SuperVectorField::homogeneous(1, 1, coeffs).unwrap()
    }

    #[test]
    fn translation() {
        let x = SuperVectorField::coordinate(1, 1, 0);
        let r = flow(&x, (0.0, 1.0), &[vec![0.5]], 4).unwrap();
        let tr = &r.trajectories[0];
        for (k, t) in r.times.iter().enumerate() {
            assert!((tr.body(k)[0].re - (0.5 + t)).abs() < 1e-12);
            assert!((tr.coefficient(k, 1, 1).re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_scaling() {
        let x = field(vec![GrassmannPoly::x(1, 1, 0), GrassmannPoly::eta(1, 1, 0)]);
        let r = flow(&x, (0.0, 1.0), &[vec![2.0]], 5).unwrap();
        let tr = &r.trajectories[0];
        for (k, t) in r.times.iter().enumerate() {
            assert!((tr.body(k)[0].re - 2.0 * t.exp()).abs() < 1e-8);
            assert!((tr.coefficient(k, 1, 1).re - t.exp()).abs() < 1e-8);
        }
    }

    #[test]
    fn blow_up_escapes_at_one() {
        let x = field(vec![GrassmannPoly::x(1, 1, 0).pow(2), GrassmannPoly::zero(1, 1)]);
        let r = flow(&x, (0.0, 2.0), &[vec![1.0]], 10).unwrap();
        let te = r.trajectories[0].escape_time.unwrap();
        assert!((te - 1.0).abs() < 1e-3, "{te}");
        assert_eq!(r.trajectories[0].states.len(), 5);
    }

    #[test]
    fn odd_or_complex_fields_rejected() {
        let odd = field(vec![GrassmannPoly::eta(1, 1, 0), GrassmannPoly::zero(1, 1)]);
        assert!(flow(&odd, (0.0, 1.0), &[vec![0.0]], 1).is_err());
        let cplx = SuperVectorField::coordinate(1, 1, 0).scale(&crate::gsalg::GQ::i());
        assert!(flow(&cplx, (0.0, 1.0), &[vec![0.0]], 1).is_err());
    }
}
