#![allow(dead_code)]

use proptest::prelude::*;
use superprolong::gsalg::{GradedDim, Matrix, GQ};

/// Small Gaussian rationals, zero about a third of the time.
pub fn gq() -> impl Strategy<Value = GQ> {
    prop_oneof![
        1 => Just(GQ::zero()),
        2 => (-3i64..=3, -2i64..=2, 1i64..=3).prop_map(|(a, b, d)| GQ::from_parts((a, d), (b, 1))),
    ]
}

pub fn real_gq() -> impl Strategy<Value = GQ> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, d)| GQ::from_ratio(a, d))
}

pub fn vector(len: usize) -> impl Strategy<Value = Vec<GQ>> {
    prop::collection::vec(gq(), len)
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(gq(), rows * cols).prop_map(move |d| {
        Matrix::from_rows(d.chunks(cols.max(1)).map(<[GQ]>::to_vec).take(rows).collect()).unwrap_or(Matrix::zeros(rows, cols))
    })
}

/// Invertible even matrix on `V` (block diagonal), built as a product of
/// unitriangular factors and a diagonal of nonzero entries.
pub fn invertible_even(v: GradedDim) -> impl Strategy<Value = Matrix> {
    let n = v.total();
    (
        prop::collection::vec(gq(), n * n),
        prop::collection::vec(gq(), n * n),
        prop::collection::vec((1i64..=3, prop::bool::ANY), n),
    )
        .prop_map(move |(l, u, d)| {
            let mut lo = Matrix::identity(n);
            let mut up = Matrix::identity(n);
            let mut di = Matrix::zeros(n, n);
            for r in 0..n {
                for c in 0..n {
                    if v.parity_of(r) != v.parity_of(c) {
                        continue;
                    }
                    if r > c {
                        lo[(r, c)] = l[r * n + c].clone();
                    } else if r < c {
                        up[(r, c)] = u[r * n + c].clone();
                    }
                }
                let (k, neg) = d[r];
                di[(r, r)] = GQ::from_int(if neg { -k } else { k });
            }
            &(&lo * &di) * &up
        })
}

pub fn q(s: &str) -> GQ {
    s.parse().unwrap()
}

use superprolong::gsalg::Parity;
use superprolong::supercalc::{GrassmannPoly, Monomial, SuperVectorField};

/// Random polynomial on `ℝ^{n|m}` with up to `terms` terms of `x`-degree
/// ≤ 2 per variable; homogeneous when `parity` is given.
pub fn poly(n: usize, m: usize, parity: Option<Parity>, terms: usize) -> impl Strategy<Value = GrassmannPoly> {
    let term = (prop::collection::vec(0u32..=2, n), 0u32..(1 << m), gq());
    prop::collection::vec(term, 0..=terms).prop_map(move |ts| {
        let mut f = GrassmannPoly::zero(n, m);
        for (exps, mut mask, c) in ts {
            if let Some(p) = parity {
                if mask.count_ones() as usize % 2 != p.bit() {
                    if m == 0 {
                        continue;
                    }
                    mask ^= 1;
                }
            }
            f = &f + &GrassmannPoly::monomial(n, m, Monomial::new(exps, mask), c);
        }
        f
    })
}

/// Random homogeneous vector field.
pub fn field(n: usize, m: usize, parity: Parity, terms: usize) -> impl Strategy<Value = SuperVectorField> {
    let comps: Vec<_> = (0..n + m)
        .map(|k| {
            let cp = if k < n { parity } else { parity.flip() };
            poly(n, m, Some(cp), terms)
        })
        .collect();
    comps.prop_map(move |c| SuperVectorField::new(n, m, parity, c).unwrap())
}

pub fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

/// Frames with polynomial coefficients; the Heisenberg-type ones are
/// left-invariant, so their automorphisms are the right-invariant fields.
pub fn perturbed_frames() -> Vec<Vec<SuperVectorField>> {
    let frame = |n: usize, m: usize, rows: Vec<Vec<&str>>| -> Vec<SuperVectorField> {
        rows.into_iter()
            .map(|r| {
                let c = r.into_iter().map(|s| parse(n, m, s)).collect();
                SuperVectorField::homogeneous(n, m, c).unwrap()
            })
            .collect()
    };
    vec![
        frame(1, 1, vec![vec!["1", "0"], vec!["0", "1 + x1^2"]]),
        frame(1, 1, vec![vec!["1", "0"], vec!["th1", "1"]]),
        frame(1, 1, vec![vec!["1", "x1*th1"], vec!["0", "1"]]),
        frame(3, 0, vec![vec!["1", "0", "0"], vec!["0", "1", "x1"], vec!["0", "0", "1"]]),
        frame(1, 2, vec![vec!["1", "0", "0"], vec!["th1", "1", "0"], vec!["th2", "0", "1"]]),
        frame(1, 2, vec![vec!["1", "0", "0"], vec!["th2", "1", "0"], vec!["th1", "0", "1"]]),
        frame(
            2,
            2,
            vec![
                vec!["1", "0", "0", "0"],
                vec!["x1*th1*th2", "1", "0", "0"],
                vec!["0", "th2", "1", "0"],
                vec!["0", "0", "0", "1 + x2"],
            ],
        ),
    ]
}

/// Sums of signed monomials like `1 + x1^2` or `x1*th1*th2`.
pub fn parse(n: usize, m: usize, src: &str) -> GrassmannPoly {
    let mut acc = GrassmannPoly::zero(n, m);
    for term in src.split(" + ") {
        let mut t = GrassmannPoly::one(n, m);
        for factor in term.split('*') {
            let f = if let Some(k) = factor.strip_prefix("th") {
                GrassmannPoly::eta(n, m, k.parse::<usize>().unwrap() - 1)
            } else if let Some(rest) = factor.strip_prefix('x') {
                let (k, e) = rest.split_once('^').unwrap_or((rest, "1"));
                GrassmannPoly::x(n, m, k.parse::<usize>().unwrap() - 1).pow(e.parse().unwrap())
            } else {
                GrassmannPoly::constant(n, m, q(factor))
            };
            t = &t * &f;
        }
        acc = &acc + &t;
    }
    acc
}
