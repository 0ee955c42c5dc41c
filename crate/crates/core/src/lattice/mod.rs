//! Intersection lattice, Möbius function and the Poincaré/characteristic
//! polynomials of a central arrangement.

mod finite_field;

pub use finite_field::{admissible_primes, char_poly_finite_field, check_prime, count_complement, FiniteFieldError};

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arrangement::Arrangement;
use crate::exactlin::{Echelon, Subspace};
pub use crate::polynomial::IntPolynomial;

/// A flat `X` of the arrangement: an intersection of hyperplanes.
#[derive(Clone, Debug)]
pub struct Flat {
    pub subspace: Subspace,
    /// Indices of all hyperplanes containing `X`, ascending.
    pub contained_hyperplanes: Vec<usize>,
    pub rank: usize,
    pub mobius: i64,
}

/// The lattice of flats ordered by reverse inclusion, graded by rank.
#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    dim: usize,
    n_hyperplanes: usize,
    flats: Vec<Flat>,
    members: Vec<FixedBitSet>,
    /// `rank_start[k]..rank_start[k + 1]` are the flats of rank `k`.
    rank_start: Vec<usize>,
    covers: Vec<Vec<usize>>,
}

struct Pending {
    members: FixedBitSet,
    echelon: Echelon,
}

/// Builds the intersection lattice by rank-level closure: every flat of rank
/// `k + 1` is `X ∩ H` for a flat `X` of rank `k` and a hyperplane `H` not
/// containing `X`. Flats are identified by the set of hyperplanes containing
/// them, which determines the subspace.
pub fn build_lattice(arr: &Arrangement) -> IntersectionLattice {
    let m = arr.len();
    let dim = arr.dim();
    let hyper_rat: Vec<_> = arr.hyperplanes().iter().map(|h| h.to_rational()).collect();

    let mut flats: Vec<Flat> = Vec::new();
    let mut members: Vec<FixedBitSet> = Vec::new();
    let mut covers: Vec<Vec<usize>> = Vec::new();
    let mut rank_start = vec![0];

    let mut level = vec![Pending { members: FixedBitSet::with_capacity(m), echelon: Echelon::new(dim) }];
    let mut rank = 0;
    while !level.is_empty() {
        let base = flats.len();
        // Children of every flat on this level, computed independently.
        let children: Vec<Vec<Pending>> = level
            .par_iter()
            .map(|x| {
                let mut covered = x.members.clone();
                let mut out = Vec::new();
                for h in 0..m {
                    if covered.contains(h) {
                        continue;
                    }
                    let mut echelon = x.echelon.clone();
                    echelon.insert(&hyper_rat[h]);
                    let mut ys = x.members.clone();
                    ys.insert(h);
                    for (g, hg) in hyper_rat.iter().enumerate().skip(h + 1) {
                        if !ys.contains(g) && echelon.contains(hg) {
                            ys.insert(g);
                        }
                    }
                    covered.union_with(&ys);
                    out.push(Pending { members: ys, echelon });
                }
                out
            })
            .collect();

        for x in &level {
            flats.push(Flat {
                subspace: x.echelon.kernel(),
                contained_hyperplanes: x.members.ones().collect(),
                rank,
                mobius: 0,
            });
            members.push(x.members.clone());
        }

        // Deduplicate the next level; order by contained-hyperplane list so
        // the numbering does not depend on scheduling.
        let mut next: HashMap<FixedBitSet, Pending> = HashMap::new();
        let mut edges: Vec<(usize, FixedBitSet)> = Vec::new();
        for (i, kids) in children.into_iter().enumerate() {
            for p in kids {
                edges.push((base + i, p.members.clone()));
                next.entry(p.members.clone()).or_insert(p);
            }
        }
        let mut next: Vec<Pending> = next.into_values().collect();
        next.sort_by(|a, b| a.members.ones().cmp(b.members.ones()));
        let next_base = base + level.len();
        let id_of: HashMap<&FixedBitSet, usize> =
            next.iter().enumerate().map(|(j, p)| (&p.members, next_base + j)).collect();
        covers.resize(next_base, Vec::new());
        for (x, ys) in &edges {
            covers[*x].push(id_of[ys]);
        }
        for c in covers[base..next_base].iter_mut() {
            c.sort_unstable();
            c.dedup();
        }
        rank_start.push(next_base);
        level = next;
        rank += 1;
    }

    let mut lat = IntersectionLattice { dim, n_hyperplanes: m, flats, members, rank_start, covers };
    lat.compute_mobius();
    lat
}

impl IntersectionLattice {
    fn compute_mobius(&mut self) {
        let n = self.flats.len();
        for x in 0..n {
            let r = self.flats[x].rank;
            let mu = match r {
                0 => 1,
                1 => -1,
                2 => self.flats[x].contained_hyperplanes.len() as i64 - 1,
                _ => {
                    let mut s: i64 = 0;
                    for z in 0..self.rank_start[r] {
                        if self.members[z].is_subset(&self.members[x]) {
                            s = s.checked_add(self.flats[z].mobius).expect("Möbius sum overflow");
                        }
                    }
                    -s
                }
            };
            let sign = if r.is_multiple_of(2) { 1 } else { -1 };
            assert!(mu * sign > 0, "Möbius sign violates (-1)^rank at a rank-{r} flat");
            self.flats[x].mobius = mu;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_hyperplanes(&self) -> usize {
        self.n_hyperplanes
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, id: usize) -> &Flat {
        &self.flats[id]
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn bottom(&self) -> &Flat {
        &self.flats[0]
    }

    /// Rank of the arrangement (the top rank of the lattice).
    pub fn rank(&self) -> usize {
        self.rank_start.len() - 2
    }

    /// Flat ids of the given rank.
    pub fn rank_level(&self, rank: usize) -> std::ops::Range<usize> {
        if rank + 1 >= self.rank_start.len() {
            return 0..0;
        }
        self.rank_start[rank]..self.rank_start[rank + 1]
    }

    /// Flats covering `id` (one rank up).
    pub fn covers(&self, id: usize) -> &[usize] {
        &self.covers[id]
    }

    pub fn members(&self, id: usize) -> &FixedBitSet {
        &self.members[id]
    }

    /// True iff flat `a` lies below flat `b` (`b ⊆ a` as subspaces).
    pub fn is_below(&self, a: usize, b: usize) -> bool {
        self.members[a].is_subset(&self.members[b])
    }

    /// Id of the flat whose contained-hyperplane set is exactly `hyperplanes`.
    pub fn find_flat(&self, hyperplanes: &[usize]) -> Option<usize> {
        let mut key = FixedBitSet::with_capacity(self.n_hyperplanes);
        for &h in hyperplanes {
            if h >= self.n_hyperplanes {
                return None;
            }
            key.insert(h);
        }
        (0..self.flats.len()).find(|&i| self.members[i] == key)
    }

    /// Poincaré polynomial of the localization at `id`:
    /// `sum over Z <= X of mu(Z) (-t)^rank(Z)`.
    pub fn poincare_below(&self, id: usize) -> IntPolynomial {
        let r = self.flats[id].rank;
        let mut coeffs = vec![BigInt::from(0); r + 1];
        for z in 0..self.rank_start[r + 1] {
            if self.is_below(z, id) {
                let f = &self.flats[z];
                let sign = if f.rank.is_multiple_of(2) { 1 } else { -1 };
                coeffs[f.rank] += BigInt::from(f.mobius * sign);
            }
        }
        IntPolynomial::new(coeffs)
    }
}

/// `pi(A, t) = sum over flats of mu(X) (-t)^rank(X)`.
pub fn poincare_polynomial(lat: &IntersectionLattice) -> IntPolynomial {
    IntPolynomial::new(whitney_numbers(lat))
}

/// `chi(A, t) = sum over flats of mu(X) t^dim(X)`.
pub fn characteristic_polynomial(lat: &IntersectionLattice) -> IntPolynomial {
    let mut coeffs = vec![BigInt::from(0); lat.dim + 1];
    for f in &lat.flats {
        coeffs[lat.dim - f.rank] += BigInt::from(f.mobius);
    }
    IntPolynomial::new(coeffs)
}

/// Absolute Möbius sums per rank, `(|w_0|, ..., |w_r|)`.
pub fn whitney_numbers(lat: &IntersectionLattice) -> Vec<BigInt> {
    (0..=lat.rank()).map(|k| lat.rank_level(k).map(|i| BigInt::from(lat.flats[i].mobius.abs())).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean2() -> Arrangement {
        Arrangement::from_rows(2, &[&[1, 0], &[0, 1]])
    }

    fn pencil3() -> Arrangement {
        Arrangement::from_rows(2, &[&[1, 0], &[0, 1], &[1, 1]])
    }

    #[test]
    fn boolean_pair() {
        let lat = build_lattice(&boolean2());
        assert_eq!(lat.len(), 4);
        let mus: Vec<i64> = lat.flats().iter().map(|f| f.mobius).collect();
        assert_eq!(mus, vec![1, -1, -1, 1]);
        assert_eq!(characteristic_polynomial(&lat), IntPolynomial::from_i64(&[1, -2, 1]));
        assert_eq!(lat.covers(0), &[1, 2]);
    }

    #[test]
    fn three_concurrent_lines() {
        let lat = build_lattice(&pencil3());
        assert_eq!(lat.len(), 5);
        assert_eq!(lat.flats()[4].mobius, 2);
        assert_eq!(lat.flats()[4].subspace.dim(), 0);
        assert_eq!(characteristic_polynomial(&lat), IntPolynomial::from_i64(&[2, -3, 1]));
        assert_eq!(poincare_polynomial(&lat), IntPolynomial::from_i64(&[1, 3, 2]));
    }

    #[test]
    fn empty_arrangement() {
        let lat = build_lattice(&Arrangement::empty(3));
        assert_eq!(lat.len(), 1);
        assert_eq!(lat.rank(), 0);
        assert_eq!(poincare_polynomial(&lat), IntPolynomial::one());
        assert_eq!(characteristic_polynomial(&lat), IntPolynomial::monomial(3));
    }

    #[test]
    fn single_hyperplane() {
        let lat = build_lattice(&Arrangement::from_rows(1, &[&[1]]));
        assert_eq!(whitney_numbers(&lat), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn localization_polynomial() {
        let lat = build_lattice(&Arrangement::from_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]));
        let x = lat.find_flat(&[0, 1, 2]).unwrap();
        assert_eq!(lat.poincare_below(x), IntPolynomial::from_i64(&[1, 3, 2]));
        assert!(lat.find_flat(&[0, 1]).is_none());
    }
}
