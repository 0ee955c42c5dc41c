//! Freeness diagnostics built on the addition-deletion theorem.
//!
//! A free arrangement has a Poincaré polynomial `prod (1 + b_i t)`, and so
//! does every localization; failures of either give `NotFree`. The positive
//! side certifies inductive freeness: `A` is inductively free if for some
//! hyperplane `H` the restriction `A''` and the deletion `A'` are
//! inductively free with `exp(A'') ⊂ exp(A')`. Free arrangements that are
//! not inductively free come out as `Unknown`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::exactlin::{self, Covector};
use crate::lattice::{build_lattice, poincare_polynomial, Flat, IntersectionLattice};
use crate::polynomial::IntPolynomial;

/// Default recursion budget (nodes of the search tree).
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreenessError {
    #[error("Poincaré polynomial must have constant term 1 and nonnegative coefficients, got {0}")]
    MalformedPolynomial(IntPolynomial),
    #[error("hyperplane index {index} out of range for {len} hyperplanes")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("flat does not belong to the arrangement's lattice")]
    FlatNotInLattice,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentReport {
    pub factors_integrally: bool,
    /// Ascending; present iff the polynomial factors.
    pub exponents: Option<Vec<u64>>,
    /// What is left after splitting off every factor `1 + b t`; present iff
    /// the polynomial does not factor.
    pub residual: Option<IntPolynomial>,
}

/// Splits `p` into factors `1 + b t` with `b` a positive integer.
///
/// Any such factor has `b` dividing the leading coefficient and, since all
/// factors of a polynomial with nonnegative coefficients and constant term 1
/// found this way have nonnegative coefficients, `b <= p_1`.
pub fn exponents_from_poincare(p: &IntPolynomial) -> Result<ExponentReport, FreenessError> {
    if p.coeff(0) != BigInt::from(1) || !p.is_nonnegative() {
        return Err(FreenessError::MalformedPolynomial(p.clone()));
    }
    let mut rest = p.clone();
    let mut exps = Vec::new();
    'outer: while rest.degree().unwrap_or(0) > 0 {
        let lead = rest.leading();
        let bound = rest.coeff(1).to_u64().unwrap_or(u64::MAX);
        let mut b = 1u64;
        while b <= bound {
            let bb = BigInt::from(b);
            if (&lead % &bb).is_zero() {
                if let Some(q) = rest.div_linear(&bb) {
                    exps.push(b);
                    rest = q;
                    continue 'outer;
                }
            }
            b += 1;
        }
        return Ok(ExponentReport { factors_integrally: false, exponents: None, residual: Some(rest) });
    }
    exps.sort_unstable();
    Ok(ExponentReport { factors_integrally: true, exponents: Some(exps), residual: None })
}

fn check_index(arr: &Arrangement, h: usize) -> Result<(), FreenessError> {
    if h >= arr.len() {
        Err(FreenessError::IndexOutOfRange { index: h, len: arr.len() })
    } else {
        Ok(())
    }
}

/// `A'`: the arrangement without hyperplane `h`.
pub fn deletion(arr: &Arrangement, h: usize) -> Result<Arrangement, FreenessError> {
    check_index(arr, h)?;
    let keep: Vec<usize> = (0..arr.len()).filter(|&i| i != h).collect();
    Ok(arr.select(&keep))
}

/// `A''`: the traces `K ∩ H` of the other hyperplanes on `H`, in the
/// coordinates of the echelon basis of `H`, deduplicated in order of first
/// appearance.
pub fn restriction(arr: &Arrangement, h: usize) -> Result<Arrangement, FreenessError> {
    check_index(arr, h)?;
    let kernel = exactlin::common_kernel(arr.dim(), std::slice::from_ref(arr.hyperplane(h)))
        .expect("dimensions checked on construction");
    let others: Vec<Covector> = (0..arr.len()).filter(|&i| i != h).map(|i| arr.hyperplane(i).clone()).collect();
    let traces = exactlin::restrict_covectors_to(&kernel, &others).expect("dimensions match");
    Ok(Arrangement::new(arr.dim() - 1, traces).expect("restricted covectors share the kernel dimension"))
}

/// `A_X`: the hyperplanes containing the flat, in the original coordinates.
pub fn localization(arr: &Arrangement, flat: &Flat) -> Result<Arrangement, FreenessError> {
    if flat.subspace.dim_ambient != arr.dim() {
        return Err(FreenessError::FlatNotInLattice);
    }
    let containing: Vec<usize> = (0..arr.len()).filter(|&i| flat.subspace.annihilated_by(arr.hyperplane(i))).collect();
    let kernel =
        exactlin::common_kernel(arr.dim(), &containing.iter().map(|&i| arr.hyperplane(i).clone()).collect::<Vec<_>>())
            .expect("dimensions match");
    if containing != flat.contained_hyperplanes || kernel != flat.subspace {
        return Err(FreenessError::FlatNotInLattice);
    }
    Ok(arr.select(&containing))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FreenessStatus {
    InductivelyFree,
    NotFree,
    Unknown,
}

/// One addition-deletion step: `hyperplane` is removed from the current
/// arrangement, whose restriction to it is inductively free by
/// `restriction_chain`. Exponent lists omit zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    /// Index into the arrangement at the head of the chain.
    pub hyperplane: usize,
    pub exponents: Vec<u64>,
    pub restriction_size: usize,
    pub restriction_exponents: Vec<u64>,
    /// Chain for the restriction, indexed in the order produced by
    /// [`restriction`].
    pub restriction_chain: Vec<ChainStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Deletions down to an arrangement of rank at most 2, which is always
    /// inductively free.
    Chain { steps: Vec<ChainStep> },
    /// `poincare` does not split into linear factors.
    Factorization { poincare: IntPolynomial, residual: IntPolynomial },
    /// The localization at the flat cut out by `flat` (hyperplane indices)
    /// has a Poincaré polynomial that does not split.
    Localization { flat: Vec<usize>, rank: usize, poincare: IntPolynomial, residual: IntPolynomial },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessVerdict {
    pub status: FreenessStatus,
    /// Exponents including zeros, ascending; set for `InductivelyFree`, and
    /// for `Unknown` when the Poincaré polynomial factors.
    pub exponents: Option<Vec<u64>>,
    pub witness: Option<Witness>,
    /// Search nodes expanded.
    pub nodes: u64,
    /// True when the search stopped on the budget rather than completing.
    pub budget_exhausted: bool,
}

type Key = Vec<Covector>;

fn key_of(arr: &Arrangement) -> Key {
    let mut hs = arr.essentialize().hyperplanes().to_vec();
    hs.sort();
    hs
}

#[derive(Clone, Debug)]
enum Node {
    /// Inductively free by removing `pivot` (essential coordinates).
    Free {
        pivot: Covector,
    },
    NotInductive,
}

struct BudgetExhausted;

struct Search {
    budget: u64,
    nodes: u64,
    memo: HashMap<Key, Node>,
    poincare_memo: HashMap<Key, IntPolynomial>,
}

fn remove_one(exps: &[u64], b: u64) -> Option<Vec<u64>> {
    let i = exps.iter().position(|&e| e == b)?;
    let mut out = exps.to_vec();
    out.remove(i);
    Some(out)
}

fn with_exponent(exps: &[u64], b: u64) -> Vec<u64> {
    let mut out = exps.to_vec();
    if b > 0 {
        out.push(b);
        out.sort_unstable();
    }
    out
}

fn rank2_exponents(n: usize) -> Vec<u64> {
    match n {
        0 => vec![],
        1 => vec![1],
        n => vec![1, n as u64 - 1],
    }
}

impl Search {
    fn new(budget: u64) -> Self {
        Search { budget, nodes: 0, memo: HashMap::new(), poincare_memo: HashMap::new() }
    }

    fn poincare(&mut self, arr: &Arrangement) -> IntPolynomial {
        let key = key_of(arr);
        self.poincare_memo.entry(key).or_insert_with(|| poincare_polynomial(&build_lattice(arr))).clone()
    }

    /// Exponents (without zeros) of `arr` if its Poincaré polynomial splits.
    fn exponents(&mut self, arr: &Arrangement) -> Option<Vec<u64>> {
        if arr.rank() <= 2 {
            return Some(rank2_exponents(arr.len()));
        }
        let p = self.poincare(arr);
        exponents_from_poincare(&p).expect("Poincaré polynomials are well formed").exponents
    }

    /// Decides inductive freeness of `arr`, whose Poincaré polynomial is
    /// known to be `prod (1 + b t)` over `exps` (zeros omitted).
    fn solve(&mut self, arr: &Arrangement, exps: &[u64]) -> Result<bool, BudgetExhausted> {
        if exps.len() <= 2 {
            return Ok(true);
        }
        let key = key_of(arr);
        if let Some(node) = self.memo.get(&key) {
            return Ok(matches!(node, Node::Free { .. }));
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BudgetExhausted);
        }

        let n = arr.len();
        let mut candidates: Vec<(usize, usize, Arrangement, Vec<u64>)> = Vec::new();
        for h in 0..n {
            let res = restriction(arr, h).expect("index in range");
            let b = (n - res.len()) as u64;
            if let Some(rest) = remove_one(exps, b) {
                candidates.push((res.len(), h, res, rest));
            }
        }
        candidates.sort_by_key(|c| (c.0, c.1));

        let mut found = None;
        for (_, h, res, res_exps) in candidates {
            if self.exponents(&res).as_deref() != Some(res_exps.as_slice()) {
                continue;
            }
            if !self.solve(&res, &res_exps)? {
                continue;
            }
            let b = (n - res.len()) as u64;
            let del = deletion(arr, h).expect("index in range");
            let del_exps = with_exponent(&res_exps, b - 1);
            if self.solve(&del, &del_exps)? {
                found = Some(h);
                break;
            }
        }
        let node = match found {
            Some(h) => Node::Free { pivot: arr.essentialize().hyperplane(h).clone() },
            None => Node::NotInductive,
        };
        let ok = matches!(node, Node::Free { .. });
        self.memo.insert(key, node);
        Ok(ok)
    }

    /// Rebuilds the witness chain of an arrangement already proved free.
    fn chain(&self, arr: &Arrangement, exps: &[u64]) -> Vec<ChainStep> {
        let mut steps = Vec::new();
        let mut cur = arr.clone();
        let mut ids: Vec<usize> = (0..arr.len()).collect();
        let mut exps = exps.to_vec();
        while exps.len() > 2 {
            let Some(Node::Free { pivot }) = self.memo.get(&key_of(&cur)) else {
                unreachable!("chain requested for an arrangement not proved free");
            };
            let h = cur.essentialize().index_of(pivot).expect("pivot belongs to the arrangement");
            let res = restriction(&cur, h).expect("index in range");
            let b = (cur.len() - res.len()) as u64;
            let res_exps = remove_one(&exps, b).expect("pivot was chosen with b in exp(A)");
            steps.push(ChainStep {
                hyperplane: ids[h],
                exponents: exps.clone(),
                restriction_size: res.len(),
                restriction_chain: self.chain(&res, &res_exps),
                restriction_exponents: res_exps.clone(),
            });
            exps = with_exponent(&res_exps, b - 1);
            cur = deletion(&cur, h).expect("index in range");
            ids.remove(h);
        }
        steps
    }
}

fn pad_zeros(mut exps: Vec<u64>, dim: usize) -> Vec<u64> {
    while exps.len() < dim {
        exps.insert(0, 0);
    }
    exps
}

/// Inductive-freeness verdict with a node budget.
pub fn inductive_freeness(arr: &Arrangement, budget: u64) -> FreenessVerdict {
    let lat = build_lattice(arr);
    inductive_freeness_with(arr, &lat, budget)
}

/// As [`inductive_freeness`] with a prebuilt lattice.
pub fn inductive_freeness_with(arr: &Arrangement, lat: &IntersectionLattice, budget: u64) -> FreenessVerdict {
    let p = poincare_polynomial(lat);
    let report = exponents_from_poincare(&p).expect("Poincaré polynomials are well formed");
    let Some(exps) = report.exponents else {
        return FreenessVerdict {
            status: FreenessStatus::NotFree,
            exponents: None,
            witness: Some(Witness::Factorization { poincare: p, residual: report.residual.expect("set on failure") }),
            nodes: 0,
            budget_exhausted: false,
        };
    };

    let mut search = Search::new(budget);
    search.poincare_memo.insert(key_of(arr), p);
    let outcome = search.solve(arr, &exps);
    let nodes = search.nodes;
    if let Ok(true) = outcome {
        let steps = search.chain(arr, &exps);
        return FreenessVerdict {
            status: FreenessStatus::InductivelyFree,
            exponents: Some(pad_zeros(exps, arr.dim())),
            witness: Some(Witness::Chain { steps }),
            nodes,
            budget_exhausted: false,
        };
    }
    if let Some(cert) = localization_certificate(lat) {
        return FreenessVerdict {
            status: FreenessStatus::NotFree,
            exponents: None,
            witness: Some(cert),
            nodes,
            budget_exhausted: outcome.is_err(),
        };
    }
    FreenessVerdict {
        status: FreenessStatus::Unknown,
        exponents: Some(pad_zeros(exps, arr.dim())),
        witness: None,
        nodes,
        budget_exhausted: outcome.is_err(),
    }
}

/// First flat (by increasing rank, then lattice order) whose localization
/// has a non-splitting Poincaré polynomial. Ranks 1 and 2 never fail.
fn localization_certificate(lat: &IntersectionLattice) -> Option<Witness> {
    for r in 3..=lat.rank() {
        for id in lat.rank_level(r) {
            let p = lat.poincare_below(id);
            let rep = exponents_from_poincare(&p).expect("Poincaré polynomials are well formed");
            if !rep.factors_integrally {
                return Some(Witness::Localization {
                    flat: lat.flat(id).contained_hyperplanes.clone(),
                    rank: r,
                    poincare: p,
                    residual: rep.residual.expect("set on failure"),
                });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum LocalizationScan {
    NotFree(FreenessVerdict),
    NoCertificate,
}

/// Looks for a localization certifying that `arr` is not free.
pub fn nonfree_by_localization(arr: &Arrangement) -> LocalizationScan {
    nonfree_by_localization_with(&build_lattice(arr))
}

/// As [`nonfree_by_localization`] with a prebuilt lattice.
pub fn nonfree_by_localization_with(lat: &IntersectionLattice) -> LocalizationScan {
    match localization_certificate(lat) {
        Some(w) => LocalizationScan::NotFree(FreenessVerdict {
            status: FreenessStatus::NotFree,
            exponents: None,
            witness: Some(w),
            nodes: 0,
            budget_exhausted: false,
        }),
        None => LocalizationScan::NoCertificate,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("witness does not match the verdict status")]
    WrongKind,
    #[error("step {step}: {reason}")]
    Step { step: usize, reason: String },
    #[error("chain ends at an arrangement of rank {0}")]
    Incomplete(usize),
    #[error("cited polynomial differs from the recomputed one")]
    PolynomialMismatch,
    #[error("cited polynomial splits into linear factors")]
    Splits,
    #[error("cited hyperplanes do not cut out a flat")]
    NotAFlat,
}

fn product_of(exps: &[u64]) -> IntPolynomial {
    let fs: Vec<IntPolynomial> = exps.iter().map(|&b| IntPolynomial::linear_factor(b as i64)).collect();
    IntPolynomial::product(&fs)
}

fn replay_chain(arr: &Arrangement, steps: &[ChainStep]) -> Result<(), ReplayError> {
    let mut cur = arr.clone();
    let mut ids: Vec<usize> = (0..arr.len()).collect();
    let err = |step: usize, reason: &str| ReplayError::Step { step, reason: reason.to_string() };
    for (k, s) in steps.iter().enumerate() {
        let h = ids.iter().position(|&i| i == s.hyperplane).ok_or_else(|| err(k, "hyperplane already removed"))?;
        if poincare_polynomial(&build_lattice(&cur)) != product_of(&s.exponents) {
            return Err(err(k, "exponents do not give the Poincaré polynomial"));
        }
        let res = restriction(&cur, h).expect("index in range");
        if res.len() != s.restriction_size {
            return Err(err(k, "restriction size differs"));
        }
        let b = (cur.len() - res.len()) as u64;
        if with_exponent(&s.restriction_exponents, b) != s.exponents {
            return Err(err(k, "exp(A) is not exp(A'') plus |A| - |A''|"));
        }
        if poincare_polynomial(&build_lattice(&res)) != product_of(&s.restriction_exponents) {
            return Err(err(k, "restriction exponents do not give its Poincaré polynomial"));
        }
        replay_chain(&res, &s.restriction_chain).map_err(|e| err(k, &format!("restriction: {e}")))?;
        cur = deletion(&cur, h).expect("index in range");
        ids.remove(h);
    }
    if cur.rank() > 2 {
        return Err(ReplayError::Incomplete(cur.rank()));
    }
    Ok(())
}

/// Re-runs every check cited by the verdict's witness.
pub fn replay(arr: &Arrangement, verdict: &FreenessVerdict) -> Result<(), ReplayError> {
    match (&verdict.status, &verdict.witness) {
        (FreenessStatus::InductivelyFree, Some(Witness::Chain { steps })) => replay_chain(arr, steps),
        (FreenessStatus::NotFree, Some(Witness::Factorization { poincare, residual })) => {
            if poincare_polynomial(&build_lattice(arr)) != *poincare {
                return Err(ReplayError::PolynomialMismatch);
            }
            let rep = exponents_from_poincare(poincare).map_err(|_| ReplayError::PolynomialMismatch)?;
            match rep.residual {
                Some(r) if r == *residual => Ok(()),
                Some(_) => Err(ReplayError::PolynomialMismatch),
                None => Err(ReplayError::Splits),
            }
        }
        (FreenessStatus::NotFree, Some(Witness::Localization { flat, poincare, residual, .. })) => {
            if flat.iter().any(|&i| i >= arr.len()) {
                return Err(ReplayError::NotAFlat);
            }
            let sub = arr.select(flat);
            let x = exactlin::common_kernel(arr.dim(), sub.hyperplanes()).expect("dimensions match");
            let closure: Vec<usize> = (0..arr.len()).filter(|&i| x.annihilated_by(arr.hyperplane(i))).collect();
            if closure != *flat {
                return Err(ReplayError::NotAFlat);
            }
            if poincare_polynomial(&build_lattice(&sub)) != *poincare {
                return Err(ReplayError::PolynomialMismatch);
            }
            let rep = exponents_from_poincare(poincare).map_err(|_| ReplayError::PolynomialMismatch)?;
            match rep.residual {
                Some(r) if r == *residual => Ok(()),
                Some(_) => Err(ReplayError::PolynomialMismatch),
                None => Err(ReplayError::Splits),
            }
        }
        (FreenessStatus::Unknown, None) => Ok(()),
        _ => Err(ReplayError::WrongKind),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_coxeter_namikawa, gen_dihedral_even, gen_g8, gen_wreath};

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn exponent_extraction() {
        let g8 = IntPolynomial::product(&[poly(&[1, 1]), poly(&[1, 11]), poly(&[1, 13])]);
        assert_eq!(exponents_from_poincare(&g8).unwrap().exponents, Some(vec![1, 11, 13]));
        let g5_core = poly(&[1, 21, 116]);
        let rep = exponents_from_poincare(&g5_core).unwrap();
        assert!(!rep.factors_integrally);
        assert_eq!(rep.residual, Some(g5_core.clone()));
        let g5 = IntPolynomial::product(&[g5_core.clone(), poly(&[1, 11]), poly(&[1, 1])]);
        assert_eq!(exponents_from_poincare(&g5).unwrap().residual, Some(g5_core));
        assert_eq!(exponents_from_poincare(&poly(&[1, 2, 1])).unwrap().exponents, Some(vec![1, 1]));
        assert_eq!(exponents_from_poincare(&IntPolynomial::one()).unwrap().exponents, Some(vec![]));
        assert!(exponents_from_poincare(&poly(&[2, 1])).is_err());
    }

    #[test]
    fn deletion_and_restriction() {
        let pencil = Arrangement::from_rows(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        let d = deletion(&pencil, 1).unwrap();
        assert_eq!(poincare_polynomial(&build_lattice(&d)), poly(&[1, 2, 1]));
        let r = restriction(&pencil, 0).unwrap();
        assert_eq!((r.dim(), r.len()), (1, 1));
        assert_eq!(deletion(&gen_g8(), 0).unwrap().len(), 24);
        let single = Arrangement::from_rows(2, &[&[1, 0]]);
        assert!(deletion(&single, 0).unwrap().is_empty());
        assert_eq!(restriction(&single, 3), Err(FreenessError::IndexOutOfRange { index: 3, len: 1 }));
        let boolean = Arrangement::from_rows(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(restriction(&boolean, 0).unwrap().len(), 1);
        let r = restriction(&gen_dihedral_even(), 0).unwrap();
        assert_eq!((r.dim(), r.len()), (1, 1));
    }

    #[test]
    fn localizations() {
        let g8 = gen_g8();
        let lat = build_lattice(&g8);
        assert!(localization(&g8, lat.bottom()).unwrap().is_empty());
        let top = lat.flat(lat.len() - 1);
        assert_eq!(localization(&g8, top).unwrap().len(), 25);
        let mut bogus = lat.flat(1).clone();
        bogus.contained_hyperplanes.push(24);
        bogus.contained_hyperplanes.dedup();
        if bogus.contained_hyperplanes != lat.flat(1).contained_hyperplanes {
            assert_eq!(localization(&g8, &bogus), Err(FreenessError::FlatNotInLattice));
        }
    }

    #[test]
    fn rank_two_is_inductively_free() {
        for n in 2..7i64 {
            let rows: Vec<Vec<i64>> = (0..n).map(|k| vec![1, k]).collect();
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let arr = Arrangement::from_rows(2, &refs);
            let v = inductive_freeness(&arr, DEFAULT_BUDGET);
            assert_eq!(v.status, FreenessStatus::InductivelyFree);
            assert_eq!(v.exponents, Some(vec![1, n as u64 - 1]));
        }
    }

    #[test]
    fn g8_is_inductively_free() {
        let g8 = gen_g8();
        let v = inductive_freeness(&g8, DEFAULT_BUDGET);
        assert_eq!(v.status, FreenessStatus::InductivelyFree);
        assert_eq!(v.exponents, Some(vec![1, 11, 13]));
        replay(&g8, &v).unwrap();
    }

    #[test]
    fn coxeter_and_wreath_verdicts_replay() {
        let a3 = gen_coxeter_namikawa(&"S4".parse().unwrap());
        let v = inductive_freeness(&a3, DEFAULT_BUDGET);
        assert_eq!(v.exponents, Some(vec![1, 2, 3]));
        replay(&a3, &v).unwrap();
        let w = gen_wreath("A2", 3, 2).unwrap();
        let v = inductive_freeness(&w, DEFAULT_BUDGET);
        replay(&w, &v).unwrap();
    }

    #[test]
    fn budget_exhaustion_gives_unknown() {
        let g8 = gen_g8();
        let v = inductive_freeness(&g8, 1);
        assert_eq!(v.status, FreenessStatus::Unknown);
        assert!(v.budget_exhausted);
    }

    /// Four generic planes in dim 3: `1 + 4t + 6t^2 + 3t^3`, which is
    /// `(1 + t)(1 + 3t + 3t^2)` with an irreducible quadratic.
    fn generic4() -> Arrangement {
        Arrangement::from_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])
    }

    #[test]
    fn non_factoring_gives_not_free() {
        let arr = generic4();
        let v = inductive_freeness(&arr, DEFAULT_BUDGET);
        assert_eq!(v.status, FreenessStatus::NotFree);
        let Some(Witness::Factorization { residual, .. }) = &v.witness else { panic!() };
        assert_eq!(residual, &poly(&[1, 3, 3]));
        replay(&arr, &v).unwrap();
    }

    #[test]
    fn localization_certificate_found() {
        // The generic core of four planes, plus a plane in a new direction.
        let arr =
            Arrangement::from_rows(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 0], &[0, 0, 0, 1]]);
        let LocalizationScan::NotFree(v) = nonfree_by_localization(&arr) else {
            panic!("expected a certificate");
        };
        let Some(Witness::Localization { flat, rank, .. }) = &v.witness else { panic!() };
        assert_eq!(flat, &vec![0, 1, 2, 3]);
        assert_eq!(*rank, 3);
        replay(&arr, &v).unwrap();
        let boolean = Arrangement::from_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(nonfree_by_localization(&boolean), LocalizationScan::NoCertificate);
    }

    #[test]
    fn tampered_witness_is_rejected() {
        let g8 = gen_g8();
        let mut v = inductive_freeness(&g8, DEFAULT_BUDGET);
        if let Some(Witness::Chain { steps }) = &mut v.witness {
            steps[0].restriction_size += 1;
        }
        assert!(replay(&g8, &v).is_err());
    }
}
