//! Namikawa Weyl group actions, terminalization counts and the Table 1
//! consistency audit.
//!
//! `S_m` acts on a block by `sigma(kappa_i) = kappa_{sigma(i)}`. A covector in
//! the essential basis is lifted to the ambient block (with `c_0 = 0`),
//! permuted there and projected back, which is the induced action on the
//! zero-sum subspace.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::exactlin::Covector;
use crate::freeness::exponents_from_poincare;
use crate::generators::{table1_rows, TableRow, WeylSpec};
use crate::polynomial::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("arrangement layout {found} does not match the group {expected}")]
    LayoutMismatch { expected: String, found: String },
    #[error("arrangement is not stable under {0}")]
    NotStable(String),
    #[error("{numerator}/{denominator} is not an integer")]
    NonIntegral { numerator: BigInt, denominator: BigInt },
    #[error("not a Poincaré polynomial: {0}")]
    MalformedPolynomial(IntPolynomial),
    #[error("{0}")]
    InvalidPermutation(String),
}

/// An element of `S_{m_1} x ... x S_{m_k}`: `perms[b][i]` is the image of
/// index `i` in block `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockPermutation {
    spec: WeylSpec,
    perms: Vec<Vec<usize>>,
}

impl BlockPermutation {
    pub fn new(spec: &WeylSpec, perms: Vec<Vec<usize>>) -> Result<Self, SymmetryError> {
        if perms.len() != spec.factors().len() {
            return Err(SymmetryError::InvalidPermutation(format!("expected {} blocks", spec.factors().len())));
        }
        for (p, &m) in perms.iter().zip(spec.factors()) {
            let mut seen = vec![false; m];
            if p.len() != m || p.iter().any(|&i| i >= m || std::mem::replace(&mut seen[i], true)) {
                return Err(SymmetryError::InvalidPermutation(format!("{p:?} is not a permutation of 0..{m}")));
            }
        }
        Ok(BlockPermutation { spec: spec.clone(), perms })
    }

    pub fn identity(spec: &WeylSpec) -> Self {
        BlockPermutation { spec: spec.clone(), perms: spec.factors().iter().map(|&m| (0..m).collect()).collect() }
    }

    /// The transposition of `i` and `j` in `block`.
    pub fn transposition(spec: &WeylSpec, block: usize, i: usize, j: usize) -> Result<Self, SymmetryError> {
        let mut g = Self::identity(spec);
        let p = g.perms.get_mut(block).ok_or_else(|| SymmetryError::InvalidPermutation(format!("no block {block}")))?;
        if i >= p.len() || j >= p.len() {
            return Err(SymmetryError::InvalidPermutation(format!("({i} {j}) out of range")));
        }
        p.swap(i, j);
        Ok(g)
    }

    /// Adjacent transpositions of every block, which generate the group.
    pub fn generators(spec: &WeylSpec) -> Vec<Self> {
        let mut out = Vec::new();
        for (b, &m) in spec.factors().iter().enumerate() {
            for i in 0..m - 1 {
                out.push(Self::transposition(spec, b, i, i + 1).expect("in range"));
            }
        }
        out
    }

    pub fn spec(&self) -> &WeylSpec {
        &self.spec
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.spec, other.spec, "composing elements of different groups");
        let perms = self.perms.iter().zip(&other.perms).map(|(g, h)| h.iter().map(|&i| g[i]).collect()).collect();
        BlockPermutation { spec: self.spec.clone(), perms }
    }

    /// Image of a covector in the essential basis of `spec`.
    pub fn apply(&self, c: &Covector) -> Covector {
        let ambient = self.spec.lift_form(c);
        let mut out = vec![BigInt::zero(); ambient.len()];
        let mut at = 0;
        for p in &self.perms {
            for (i, &pi) in p.iter().enumerate() {
                out[at + pi] = ambient[at + i].clone();
            }
            at += p.len();
        }
        self.spec.essentialize_form(&out).expect("a permuted nonzero form is nonzero on the zero-sum space")
    }
}

impl fmt::Display for BlockPermutation {
    /// Cycle notation per block, e.g. `(0 1)` or `id x (0 2 1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .perms
            .iter()
            .map(|p| {
                let mut seen = vec![false; p.len()];
                let mut cycles = Vec::new();
                for s in 0..p.len() {
                    if seen[s] || p[s] == s {
                        continue;
                    }
                    let mut cyc = Vec::new();
                    let mut i = s;
                    while !seen[i] {
                        seen[i] = true;
                        cyc.push(i.to_string());
                        i = p[i];
                    }
                    cycles.push(format!("({})", cyc.join(" ")));
                }
                if cycles.is_empty() {
                    "id".to_string()
                } else {
                    cycles.concat()
                }
            })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

fn check_layout(arr: &Arrangement, spec: &WeylSpec) -> Result<(), SymmetryError> {
    if arr.layout.as_ref() != Some(spec) || arr.dim() != spec.dim() {
        return Err(SymmetryError::LayoutMismatch {
            expected: spec.to_string(),
            found: arr.layout.as_ref().map_or_else(|| "none".to_string(), WeylSpec::to_string),
        });
    }
    Ok(())
}

/// The image arrangement `g . A`, sorted.
pub fn act(perm: &BlockPermutation, arr: &Arrangement) -> Result<Arrangement, SymmetryError> {
    check_layout(arr, perm.spec())?;
    let items = arr.hyperplanes().iter().zip(arr.tags()).map(|(h, &t)| (perm.apply(h), t));
    let (mut img, _) = Arrangement::from_tagged(arr.dim(), items).expect("dimension preserved");
    img.label = arr.label.clone();
    img.layout = arr.layout.clone();
    Ok(img.sorted())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub stable: bool,
    /// A generator (cycle notation, 0-based per block) and the index of a
    /// hyperplane it maps outside the arrangement.
    pub counterexample: Option<(String, usize)>,
}

/// Set-wise invariance under the adjacent transpositions of every block.
pub fn is_stable(arr: &Arrangement, spec: &WeylSpec) -> Result<StabilityReport, SymmetryError> {
    check_layout(arr, spec)?;
    let set: HashSet<&Covector> = arr.hyperplanes().iter().collect();
    for g in BlockPermutation::generators(spec) {
        if let Some(i) = arr.hyperplanes().iter().position(|h| !set.contains(&g.apply(h))) {
            return Ok(StabilityReport { stable: false, counterexample: Some((g.to_string(), i)) });
        }
    }
    Ok(StabilityReport { stable: true, counterexample: None })
}

/// Orbits of hyperplane indices, each ascending, ordered by least element.
pub fn hyperplane_orbits(arr: &Arrangement, spec: &WeylSpec) -> Result<Vec<Vec<usize>>, SymmetryError> {
    let report = is_stable(arr, spec)?;
    if !report.stable {
        return Err(SymmetryError::NotStable(spec.to_string()));
    }
    let index: HashMap<&Covector, usize> = arr.index_map();
    let gens = BlockPermutation::generators(spec);
    let mut orbit_of = vec![usize::MAX; arr.len()];
    let mut orbits = Vec::new();
    for s in 0..arr.len() {
        if orbit_of[s] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![s];
        orbit_of[s] = id;
        let mut queue = VecDeque::from([s]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let j = index[&g.apply(arr.hyperplane(i))];
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = id;
                    orbit.push(j);
                    queue.push_back(j);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// True iff every hyperplane of `sub` belongs to `arr`. Both must use the
/// same coordinates: equal dimension and, when both declare one, the same
/// layout.
pub fn contains_subarrangement(arr: &Arrangement, sub: &Arrangement) -> Result<bool, SymmetryError> {
    let layouts_clash = matches!((&arr.layout, &sub.layout), (Some(a), Some(b)) if a != b);
    if arr.dim() != sub.dim() || layouts_clash {
        let show = |a: &Arrangement| a.layout.as_ref().map_or_else(|| format!("dim {}", a.dim()), WeylSpec::to_string);
        return Err(SymmetryError::LayoutMismatch { expected: show(arr), found: show(sub) });
    }
    let set: HashSet<&Covector> = arr.hyperplanes().iter().collect();
    Ok(sub.hyperplanes().iter().all(|h| set.contains(h)))
}

/// `E = p(1) / |W|`.
pub fn terminalization_count(p: &IntPolynomial, spec: &WeylSpec) -> Result<BigInt, SymmetryError> {
    if p.coeff(0) != BigInt::one() || !p.is_nonnegative() {
        return Err(SymmetryError::MalformedPolynomial(p.clone()));
    }
    let numerator = p.eval(&BigInt::one());
    let denominator = spec.order();
    let (q, r) = numerator.div_rem(&denominator);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(SymmetryError::NonIntegral { numerator, denominator })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditCheck {
    /// `deg pi = sum (m_i - 1)`.
    Degree,
    /// `pi(1) / |W|` equals the printed E.
    TerminalizationCount,
    /// Rows marked free have a Poincaré polynomial splitting into
    /// factors `1 + b t`.
    Exponents,
    /// The coefficient of `t` equals the printed number of hyperplanes.
    Cardinality,
}

impl fmt::Display for AuditCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuditCheck::Degree => "degree",
            AuditCheck::TerminalizationCount => "e-count",
            AuditCheck::Exponents => "exponents",
            AuditCheck::Cardinality => "cardinality",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: AuditCheck,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowAudit {
    pub group: String,
    pub poincare: IntPolynomial,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub weyl_order: BigInt,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub printed_e: BigInt,
    /// `pi(1) / |W|` when it is an integer.
    #[serde(serialize_with = "crate::ser::opt_bigint")]
    pub computed_e: Option<BigInt>,
    pub checks: Vec<CheckResult>,
}

impl RowAudit {
    pub fn status(&self, check: AuditCheck) -> CheckStatus {
        self.checks.iter().find(|c| c.check == check).map_or(CheckStatus::NotApplicable, |c| c.status)
    }

    /// Both the degree and the E-count checks pass.
    pub fn passes_core(&self) -> bool {
        self.status(AuditCheck::Degree) == CheckStatus::Pass
            && self.status(AuditCheck::TerminalizationCount) == CheckStatus::Pass
    }
}

fn pass_if(ok: bool) -> CheckStatus {
    if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    }
}

/// Audits one reference row without altering it.
pub fn audit_row(row: &TableRow) -> RowAudit {
    let p = row.poincare();
    let mut checks = Vec::new();

    let deg = p.degree().unwrap_or(0);
    let dim = row.weyl.dim();
    checks.push(CheckResult {
        check: AuditCheck::Degree,
        status: pass_if(deg == dim),
        detail: format!("deg = {deg}, dim = {dim}"),
    });

    let numerator = p.eval(&BigInt::one());
    let order = row.weyl.order();
    let computed_e = terminalization_count(&p, &row.weyl).ok();
    let (status, detail) = match &computed_e {
        Some(e) => (pass_if(*e == row.e_count), format!("{numerator}/{order} = {e}, printed {}", row.e_count)),
        None => (CheckStatus::Fail, format!("{numerator}/{order} is not an integer, printed {}", row.e_count)),
    };
    checks.push(CheckResult { check: AuditCheck::TerminalizationCount, status, detail });

    let split = exponents_from_poincare(&p).map(|r| r.exponents).ok().flatten();
    let (status, detail) = match (row.free_flag, &split) {
        (true, Some(e)) => (CheckStatus::Pass, format!("exponents {e:?}")),
        (true, None) => (CheckStatus::Fail, "marked free but does not split".to_string()),
        (false, _) => (CheckStatus::NotApplicable, "marked not free".to_string()),
    };
    checks.push(CheckResult { check: AuditCheck::Exponents, status, detail });

    let w1 = p.coeff(1);
    checks.push(CheckResult {
        check: AuditCheck::Cardinality,
        status: pass_if(w1 == BigInt::from(row.n_hyperplanes)),
        detail: format!("t-coefficient {w1}, printed |E| = {}", row.n_hyperplanes),
    });

    RowAudit {
        group: row.group.clone(),
        poincare: p,
        weyl_order: order,
        printed_e: row.e_count.clone(),
        computed_e,
        checks,
    }
}

/// Audits every bundled Table 1 row.
pub fn audit_table1() -> Vec<RowAudit> {
    table1_rows().iter().map(audit_row).collect()
}
