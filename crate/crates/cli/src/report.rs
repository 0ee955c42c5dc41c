//! Analysis reports: a serializable record plus a plain-text rendering that
//! shows the same numbers.

use std::fmt::{self, Write as _};

use hyparr::freeness::{FreenessStatus, FreenessVerdict, Witness};
use hyparr::symmetry::{AuditCheck, CheckStatus, RowAudit};
use hyparr::IntPolynomial;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct PoincareSection {
    /// Coefficients of `pi`, lowest degree first.
    pub coefficients: IntPolynomial,
    pub expanded: String,
    /// `(1 + b_1 t)...` when the polynomial splits.
    pub factored: Option<String>,
    pub exponents: Option<Vec<u64>>,
    pub characteristic: IntPolynomial,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteFieldSection {
    pub primes: Vec<u64>,
    pub characteristic: IntPolynomial,
    /// Whether the interpolated polynomial equals the lattice computation.
    pub matches_lattice: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OsSection {
    pub graded_dims: Vec<u64>,
    pub total: u64,
    /// nbc sets by degree, hyperplane indices, natural order.
    pub basis: Option<Vec<Vec<Vec<usize>>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilitySection {
    pub weyl: String,
    pub stable: bool,
    pub counterexample: Option<(String, usize)>,
    /// The Coxeter arrangement of the Weyl group is contained.
    pub coxeter_contained: bool,
    /// The T-tagged hyperplanes are exactly the Coxeter hyperplanes; absent
    /// for untagged input.
    pub t_hyperplanes_are_roots: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ECountSection {
    pub weyl: String,
    pub numerator: String,
    pub denominator: String,
    /// `None` when the quotient is not an integer.
    pub value: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub label: Option<String>,
    pub dim: usize,
    pub n_hyperplanes: usize,
    pub rank: usize,
    pub duplicates_dropped: usize,
    pub poincare: Option<PoincareSection>,
    pub finite_field: Option<FiniteFieldSection>,
    pub os: Option<OsSection>,
    pub freeness: Option<FreenessVerdict>,
    pub stability: Option<StabilitySection>,
    pub orbits: Option<Vec<Vec<usize>>>,
    pub e_count: Option<ECountSection>,
}

fn join<T: fmt::Display>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn status_name(s: FreenessStatus) -> &'static str {
    match s {
        FreenessStatus::InductivelyFree => "InductivelyFree",
        FreenessStatus::NotFree => "NotFree",
        FreenessStatus::Unknown => "Unknown",
    }
}

fn sets(xs: &[Vec<usize>]) -> String {
    xs.iter().map(|s| format!("{{{}}}", join(s, ","))).collect::<Vec<_>>().join(" ")
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        if let Some(l) = &self.label {
            let _ = writeln!(w, "label: {l}");
        }
        let _ = writeln!(w, "dim: {}", self.dim);
        let _ = writeln!(w, "hyperplanes: {}", self.n_hyperplanes);
        let _ = writeln!(w, "rank: {}", self.rank);
        if self.duplicates_dropped > 0 {
            let _ = writeln!(w, "duplicates dropped: {}", self.duplicates_dropped);
        }
        if let Some(p) = &self.poincare {
            let _ = writeln!(w, "poincare: {}", p.expanded);
            if let Some(f) = &p.factored {
                let _ = writeln!(w, "poincare factored: {f}");
            }
            match &p.exponents {
                Some(e) => {
                    let _ = writeln!(w, "exponents: {{{}}}", join(e, ", "));
                }
                None => {
                    let _ = writeln!(w, "exponents: none (no integral linear factorization)");
                }
            }
            let _ = writeln!(w, "characteristic: {}", p.characteristic);
        }
        if let Some(ff) = &self.finite_field {
            let _ = writeln!(w, "finite-field primes: {}", join(&ff.primes, ", "));
            let _ = writeln!(w, "finite-field characteristic: {}", ff.characteristic);
            let _ = writeln!(w, "finite-field matches lattice: {}", ff.matches_lattice);
        }
        if let Some(os) = &self.os {
            let _ = writeln!(w, "os graded dims: ({})", join(&os.graded_dims, ", "));
            let _ = writeln!(w, "os dimension: {}", os.total);
            if let Some(b) = &os.basis {
                for (k, level) in b.iter().enumerate() {
                    let _ = writeln!(w, "nbc degree {k}: {}", sets(level));
                }
            }
        }
        if let Some(v) = &self.freeness {
            let _ = writeln!(w, "freeness: {}", status_name(v.status));
            if let (FreenessStatus::InductivelyFree, Some(e)) = (v.status, &v.exponents) {
                let _ = writeln!(w, "free exponents: {{{}}}", join(e, ", "));
            }
            match &v.witness {
                Some(Witness::Chain { steps }) if steps.is_empty() => {
                    let _ = writeln!(w, "witness: rank at most 2");
                }
                Some(Witness::Chain { steps }) => {
                    let order: Vec<usize> = steps.iter().map(|s| s.hyperplane).collect();
                    let _ = writeln!(w, "witness: deletion chain {}", join(&order, " "));
                }
                Some(Witness::Factorization { residual, .. }) => {
                    let _ = writeln!(w, "witness: non-splitting factor {residual}");
                }
                Some(Witness::Localization { flat, rank, residual, .. }) => {
                    let _ =
                        writeln!(w, "witness: rank-{rank} localization {{{}}} with factor {residual}", join(flat, ","));
                }
                None => {}
            }
            let _ = writeln!(w, "search nodes: {}", v.nodes);
            if v.budget_exhausted {
                let _ = writeln!(w, "budget exhausted: true");
            }
        }
        if let Some(s) = &self.stability {
            let _ = writeln!(w, "stable under {}: {}", s.weyl, s.stable);
            if let Some((g, i)) = &s.counterexample {
                let _ = writeln!(w, "counterexample: {g} moves hyperplane {i}");
            }
            let _ = writeln!(w, "coxeter contained: {}", s.coxeter_contained);
            if let Some(t) = s.t_hyperplanes_are_roots {
                let _ = writeln!(w, "T-hyperplanes are roots: {t}");
            }
        }
        if let Some(o) = &self.orbits {
            let _ = writeln!(w, "orbits: {}", sets(o));
        }
        if let Some(e) = &self.e_count {
            match &e.value {
                Some(v) => {
                    let _ = writeln!(w, "e-count: {}/{} = {v}", e.numerator, e.denominator);
                }
                None => {
                    let _ = writeln!(w, "e-count: {}/{} is not an integer", e.numerator, e.denominator);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub schema_version: u32,
    pub rows: Vec<RowAudit>,
    pub rows_passing_core: usize,
}

fn check_name(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::NotApplicable => "n/a",
    }
}

impl AuditReport {
    pub fn new(rows: Vec<RowAudit>) -> Self {
        let rows_passing_core = rows.iter().filter(|r| r.passes_core()).count();
        AuditReport { schema_version: SCHEMA_VERSION, rows, rows_passing_core }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let _ = write!(out, "{:<4}", r.group);
            for c in &r.checks {
                let _ = write!(out, "  {}={}", c.check, check_name(c.status));
            }
            out.push('\n');
            for c in &r.checks {
                if c.status == CheckStatus::Fail || c.check == AuditCheck::TerminalizationCount {
                    let _ = writeln!(out, "      {}: {}", c.check, c.detail);
                }
            }
        }
        let _ = writeln!(out, "rows passing degree and e-count: {}/{}", self.rows_passing_core, self.rows.len());
        out
    }
}
