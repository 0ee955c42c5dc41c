//! Orlik-Solomon combinatorics: circuits, broken circuits and nbc bases.
//!
//! The graded pieces of the Orlik-Solomon algebra have bases indexed by the
//! independent sets that contain no broken circuit, so only these sets are
//! enumerated; the exterior-algebra quotient itself is never formed.

use fixedbitset::FixedBitSet;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::exactlin::{solve_in_span, Echelon, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OsError {
    #[error("order is not a permutation of 0..{0}")]
    InvalidOrder(usize),
}

/// Minimal dependent sets of hyperplane indices, each sorted ascending,
/// listed lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircuitSet {
    pub circuits: Vec<Vec<usize>>,
}

/// nbc sets for a fixed total order on the hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NbcBasis {
    /// `order[k]` is the hyperplane in position `k` (smallest first).
    pub order: Vec<usize>,
    /// `sets[k]` holds the nbc sets of size `k`, each listed in increasing
    /// order position, the sets themselves lexicographic in positions.
    pub sets: Vec<Vec<Vec<usize>>>,
}

impl NbcBasis {
    pub fn graded_dims(&self) -> Vec<usize> {
        self.sets.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }
}

struct Ctx<'a> {
    arr: &'a Arrangement,
    rows: Vec<Vec<Rational>>,
}

impl Ctx<'_> {
    fn new(arr: &Arrangement) -> Ctx<'_> {
        Ctx { arr, rows: arr.hyperplanes().iter().map(|h| h.to_rational()).collect() }
    }

    /// Extends the independent set `set` (ascending, spanning `ech`) by all
    /// larger indices, recording circuits whose largest element is added.
    fn circuits_from(&self, set: &mut Vec<usize>, ech: &Echelon, out: &mut Vec<Vec<usize>>) {
        let start = set.last().map_or(0, |&m| m + 1);
        for e in start..self.arr.len() {
            if ech.contains(&self.rows[e]) {
                let basis: Vec<_> = set.iter().map(|&i| self.arr.hyperplane(i)).collect();
                let coeffs = solve_in_span(self.arr.dim(), &basis, self.arr.hyperplane(e))
                    .expect("vector in the span has coordinates");
                if coeffs.iter().all(|c| !c.is_zero()) {
                    let mut c = set.clone();
                    c.push(e);
                    out.push(c);
                }
            } else {
                let mut next = ech.clone();
                next.insert(&self.rows[e]);
                set.push(e);
                self.circuits_from(set, &next, out);
                set.pop();
            }
        }
    }
}

/// All circuits of the arrangement's matroid. A sorted set `C` with largest
/// element `e` is a circuit iff `C - e` is independent and `e` has a
/// representation in terms of `C - e` using every element.
pub fn circuits(arr: &Arrangement) -> CircuitSet {
    let ctx = Ctx::new(arr);
    let per_first: Vec<Vec<Vec<usize>>> = (0..arr.len())
        .into_par_iter()
        .map(|first| {
            let mut ech = Echelon::new(arr.dim());
            ech.insert(&ctx.rows[first]);
            let mut out = Vec::new();
            ctx.circuits_from(&mut vec![first], &ech, &mut out);
            out
        })
        .collect();
    let mut circuits: Vec<Vec<usize>> = per_first.into_iter().flatten().collect();
    circuits.sort();
    CircuitSet { circuits }
}

fn check_order(n: usize, order: &[usize]) -> Result<Vec<usize>, OsError> {
    let mut pos = vec![usize::MAX; n];
    if order.len() != n {
        return Err(OsError::InvalidOrder(n));
    }
    for (k, &h) in order.iter().enumerate() {
        if h >= n || pos[h] != usize::MAX {
            return Err(OsError::InvalidOrder(n));
        }
        pos[h] = k;
    }
    Ok(pos)
}

/// Broken circuits in order positions, bucketed by their largest position.
fn broken_by_max(n: usize, circ: &CircuitSet, pos: &[usize]) -> Vec<Vec<FixedBitSet>> {
    let mut by_max: Vec<Vec<FixedBitSet>> = vec![Vec::new(); n];
    for c in &circ.circuits {
        let mut p: Vec<usize> = c.iter().map(|&h| pos[h]).collect();
        p.sort_unstable();
        let broken = &p[1..];
        let mut bits = FixedBitSet::with_capacity(n);
        bits.extend(broken.iter().copied());
        by_max[*broken.last().expect("circuits have at least two elements")].push(bits);
    }
    by_max
}

struct NbcSearch<'a> {
    rows: Vec<Vec<Rational>>,
    broken: Vec<Vec<FixedBitSet>>,
    dim: usize,
    on_set: &'a mut dyn FnMut(&[usize]),
}

impl NbcSearch<'_> {
    fn dfs(&mut self, positions: &mut Vec<usize>, bits: &mut FixedBitSet, ech: &Echelon) {
        (self.on_set)(positions);
        if ech.rank() == self.dim {
            return;
        }
        let start = positions.last().map_or(0, |&m| m + 1);
        for p in start..self.rows.len() {
            if ech.contains(&self.rows[p]) {
                continue;
            }
            bits.insert(p);
            let blocked = self.broken[p].iter().any(|b| b.is_subset(bits));
            if !blocked {
                let mut next = ech.clone();
                next.insert(&self.rows[p]);
                positions.push(p);
                self.dfs(positions, bits, &next);
                positions.pop();
            }
            bits.set(p, false);
        }
    }
}

fn walk_nbc(
    arr: &Arrangement,
    order: &[usize],
    circ: &CircuitSet,
    on_set: &mut dyn FnMut(&[usize]),
) -> Result<(), OsError> {
    let n = arr.len();
    let pos = check_order(n, order)?;
    let mut search = NbcSearch {
        rows: order.iter().map(|&h| arr.hyperplane(h).to_rational()).collect(),
        broken: broken_by_max(n, circ, &pos),
        dim: arr.dim(),
        on_set,
    };
    let mut bits = FixedBitSet::with_capacity(n);
    search.dfs(&mut Vec::new(), &mut bits, &Echelon::new(arr.dim()));
    Ok(())
}

/// The nbc sets for `order`, reported as hyperplane indices.
pub fn nbc_basis(arr: &Arrangement, order: &[usize]) -> Result<NbcBasis, OsError> {
    nbc_basis_with(arr, &circuits(arr), order)
}

/// As [`nbc_basis`] with precomputed circuits.
pub fn nbc_basis_with(arr: &Arrangement, circ: &CircuitSet, order: &[usize]) -> Result<NbcBasis, OsError> {
    let mut sets: Vec<Vec<Vec<usize>>> = vec![Vec::new(); arr.rank() + 1];
    walk_nbc(arr, order, circ, &mut |p| sets[p.len()].push(p.iter().map(|&k| order[k]).collect()))?;
    Ok(NbcBasis { order: order.to_vec(), sets })
}

/// Number of nbc sets of each size, without storing the sets.
pub fn nbc_counts(arr: &Arrangement, order: &[usize]) -> Result<Vec<u64>, OsError> {
    let circ = circuits(arr);
    let mut counts = vec![0u64; arr.rank() + 1];
    walk_nbc(arr, order, &circ, &mut |p| counts[p.len()] += 1)?;
    Ok(counts)
}

/// Total dimension of the Orlik-Solomon algebra.
pub fn os_dimension(arr: &Arrangement) -> u64 {
    let order: Vec<usize> = (0..arr.len()).collect();
    nbc_counts(arr, &order).expect("identity order is valid").iter().sum()
}
