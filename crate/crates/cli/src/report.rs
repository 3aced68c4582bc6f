//! Reports: the JSON document and its table view.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use superprolong::gsalg::GradedDim;

use crate::spec::ProblemSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dim {
    pub even: usize,
    pub odd: usize,
}

impl From<GradedDim> for Dim {
    fn from(d: GradedDim) -> Self {
        Self { even: d.even, odd: d.odd }
    }
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}|{}", self.even, self.odd)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    /// Tool name and version.
    pub tool: String,
    pub seed: u64,
    /// The spec as run, command-line overrides applied.
    pub spec: ProblemSpec,
    pub results: Results,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    /// False only for a self-test with a failing check.
    pub fn all_checks_passed(&self) -> bool {
        match &self.results {
            Results::Check { checks } => checks.iter().all(|c| c.passed),
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Level {
    pub k: usize,
    pub dim: Dim,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedLevel {
    pub k: usize,
    pub dim: Dim,
    /// Real dimension of `(g^(k))_{0,ℝ}`.
    pub real_even: usize,
    /// Complex dimension of `(g^(k))_{0,ℂ}`.
    pub complex_even: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldEntry {
    /// 1-based parameter indices.
    pub index: Vec<usize>,
    pub parity: String,
    pub field: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectorySummary {
    pub initial: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub escape_time: Option<f64>,
    /// Body at each reached grid time.
    pub body: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Results {
    Prolong {
        v: Dim,
        levels: Vec<Level>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vanishes_at: Option<usize>,
    },
    FiniteType {
        v: Dim,
        /// `finite` or `undecided`.
        verdict: String,
        /// First vanishing level, or the last level examined.
        k: usize,
        levels: Vec<Level>,
    },
    Admissible {
        v: Dim,
        /// `admissible`, `inadmissible` or `undecided`.
        verdict: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        level: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        violation: Option<String>,
        levels: Vec<MixedLevel>,
    },
    H02 {
        v: Dim,
        algebra: Dim,
        first_prolongation: Dim,
        h02: Dim,
    },
    Killing {
        domain: Dim,
        dim: Dim,
        even: Vec<String>,
        odd: Vec<String>,
        top_degree: u32,
        tail_zero: bool,
        bracket_closed: bool,
        /// Rank of evaluation at the origin.
        evaluation_rank: usize,
        /// `dim osp(V, J) + dim V`, for metric problems.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        isometry_dim: Option<Dim>,
    },
    Flow {
        times: Vec<f64>,
        trajectories: Vec<TrajectorySummary>,
        flow_residual: f64,
        reality_residual: f64,
    },
    Decompose {
        base: Vec<String>,
        fields: Vec<FieldEntry>,
        round_trip: bool,
    },
    Check {
        checks: Vec<CheckEntry>,
    },
}

fn levels_table(out: &mut String, levels: &[Level]) {
    let _ = writeln!(out, "  k  dim");
    for l in levels {
        let _ = writeln!(out, "{:>3}  {}", l.k, l.dim);
    }
}

/// Human-readable view of a report.
pub fn render_table(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} · {} · seed {}", r.tool, r.spec.task.kind(), r.seed);
    match &r.results {
        Results::Prolong { v, levels, vanishes_at } => {
            let _ = writeln!(out, "V = {v}");
            levels_table(&mut out, levels);
            if let Some(k) = vanishes_at {
                let _ = writeln!(out, "vanishes at level {k}");
            }
        }
        Results::FiniteType { v, verdict, k, levels } => {
            let _ = writeln!(out, "V = {v}");
            levels_table(&mut out, levels);
            let _ = writeln!(out, "{verdict}({k})");
        }
        Results::Admissible { v, verdict, level, violation, levels } => {
            let _ = writeln!(out, "V = {v}");
            let _ = writeln!(out, "  k  dim     real_even  complex_even");
            for l in levels {
                let _ = writeln!(out, "{:>3}  {:<7} {:>9}  {:>12}", l.k, l.dim.to_string(), l.real_even, l.complex_even);
            }
            match (level, violation) {
                (Some(k), Some(why)) => {
                    let _ = writeln!(out, "{verdict} at level {k}: {why}");
                }
                _ => {
                    let _ = writeln!(out, "{verdict}");
                }
            }
        }
        Results::H02 { v, algebra, first_prolongation, h02 } => {
            let _ = writeln!(out, "V = {v}, g = {algebra}, g^(1) = {first_prolongation}, H^(0,2) = {h02}");
        }
        Results::Killing { domain, dim, even, odd, top_degree, tail_zero, bracket_closed, evaluation_rank, isometry_dim } => {
            let _ = writeln!(out, "R^{{{domain}}}: dim {dim}, evaluation rank {evaluation_rank}");
            let _ = writeln!(out, "top degree {top_degree}, zero tail {tail_zero}, bracket closed {bracket_closed}");
            if let Some(d) = isometry_dim {
                let _ = writeln!(out, "dim osp(V,J) + dim V = {d}");
            }
            for (p, fields) in [("even", even), ("odd", odd)] {
                for f in fields {
                    let _ = writeln!(out, "  [{p}] {f}");
                }
            }
        }
        Results::Flow { times, trajectories, flow_residual, reality_residual } => {
            let _ = writeln!(out, "{} grid times on [{}, {}]", times.len(), times[0], times[times.len() - 1]);
            for t in trajectories {
                let last = t.body.last().map(|b| format!("{b:?}")).unwrap_or_default();
                match t.escape_time {
                    Some(te) => {
                        let _ = writeln!(out, "  {:?}: escapes at t = {te:.6}, last body {last}", t.initial);
                    }
                    None => {
                        let _ = writeln!(out, "  {:?}: final body {last}", t.initial);
                    }
                }
            }
            let _ = writeln!(out, "flow residual {flow_residual:.3e}, reality residual {reality_residual:.3e}");
        }
        Results::Decompose { base, fields, round_trip } => {
            let _ = writeln!(out, "phi_0 = ({})", base.join(", "));
            for f in fields {
                let _ = writeln!(out, "  X_{:?} [{}] = {}", f.index, f.parity, f.field);
            }
            let _ = writeln!(out, "round trip {round_trip}");
        }
        Results::Check { checks } => {
            for c in checks {
                let _ = writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
        }
    }
    out
}
