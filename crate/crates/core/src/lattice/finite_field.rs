//! Characteristic polynomial by counting complement points over finite
//! fields, then interpolating.
//!
//! For a prime `q` that preserves the matroid of the arrangement,
//! `chi(A, q)` is the number of points of `F_q^dim` on no hyperplane. The
//! matroid is preserved iff every basis stays independent mod `q`, i.e. `q`
//! divides no nonzero maximal minor. We accept `q` immediately when it
//! exceeds the Hadamard bound on those minors and otherwise test every basis
//! determinant exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::exactlin::{determinant, Covector};
use crate::polynomial::IntPolynomial;

/// Above this many candidate bases the exact admissibility test is refused.
const MAX_EXACT_BASES: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteFieldError {
    #[error("{q} is not an admissible prime: {reason}")]
    BadPrime { q: u64, reason: String },
    #[error("point counts are inconsistent with a monic polynomial of degree {degree} (prime {q})")]
    InconsistentCounts { q: u64, degree: usize },
    #[error("need at least {needed} primes, got {got}")]
    InsufficientPrimes { needed: usize, got: usize },
    #[error("no admissible prime found below {limit}")]
    NoPrimeFound { limit: u64 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn choose(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns false.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Checks that `q` is prime and preserves the matroid of the essential
/// arrangement `ess`.
fn check_prime_essential(ess: &Arrangement, q: u64) -> Result<(), FiniteFieldError> {
    if !is_prime(q) {
        return Err(FiniteFieldError::BadPrime { q, reason: "not prime".into() });
    }
    let r = ess.dim();
    if r == 0 {
        return Ok(());
    }
    let qb = BigInt::from(q);
    // A reduction mod q must keep every covector nonzero and distinct
    // hyperplanes distinct; both are implied by the basis condition when
    // rank >= 2 but not for rank 1.
    if r == 1 {
        return match ess.hyperplanes()[0].coeffs()[0].is_multiple_of(&qb) {
            true => Err(FiniteFieldError::BadPrime { q, reason: "covector vanishes mod q".into() }),
            false => Ok(()),
        };
    }
    let mut sq_norms: Vec<BigInt> = ess.hyperplanes().iter().map(|h| h.coeffs().iter().map(|c| c * c).sum()).collect();
    sq_norms.sort_unstable_by(|a, b| b.cmp(a));
    let hadamard_sq: BigInt = sq_norms.iter().take(r).product();
    if &qb * &qb > hadamard_sq {
        return Ok(());
    }
    let n_bases = choose(ess.len(), r);
    if n_bases > MAX_EXACT_BASES {
        return Err(FiniteFieldError::BadPrime {
            q,
            reason: format!("below the Hadamard bound and {n_bases} bases are too many to test"),
        });
    }
    let mut bad = None;
    for_each_subset(ess.len(), r, |s| {
        let rows: Vec<&[BigInt]> = s.iter().map(|&i| ess.hyperplanes()[i].coeffs()).collect();
        let det = determinant(&rows);
        if !det.is_zero() && det.is_multiple_of(&qb) {
            bad = Some(s.to_vec());
            return false;
        }
        true
    });
    match bad {
        Some(s) => Err(FiniteFieldError::BadPrime { q, reason: format!("divides the minor of hyperplanes {s:?}") }),
        None => Ok(()),
    }
}

/// Checks that `q` is an admissible prime for `arr`.
pub fn check_prime(arr: &Arrangement, q: u64) -> Result<(), FiniteFieldError> {
    check_prime_essential(&arr.essentialize(), q)
}

/// The `count` smallest admissible primes that are at least `start`.
pub fn admissible_primes(arr: &Arrangement, count: usize, start: u64) -> Result<Vec<u64>, FiniteFieldError> {
    let ess = arr.essentialize();
    let limit = start.saturating_add(1_000_000);
    let mut out = Vec::with_capacity(count);
    let mut q = start.max(2);
    while out.len() < count {
        if q > limit {
            return Err(FiniteFieldError::NoPrimeFound { limit });
        }
        if is_prime(q) && check_prime_essential(&ess, q).is_ok() {
            out.push(q);
        }
        q += 1;
    }
    Ok(out)
}

fn reduce_mod(h: &Covector, q: u64) -> Vec<u64> {
    let qb = BigInt::from(q);
    h.coeffs().iter().map(|c| c.mod_floor(&qb).to_u64().expect("residue fits")).collect()
}

fn inv_mod(a: u64, q: u64) -> u64 {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(q));
    e.x.mod_floor(&BigInt::from(q)).to_u64().expect("residue fits")
}

/// Counts projective points with leading coordinate at `lead` whose
/// coordinate `lead + 1` (when free) equals `second`.
fn count_projective_slice(
    rows: &[Vec<u64>],
    inv_last: &[u64],
    r: usize,
    q: u64,
    lead: usize,
    second: Option<u64>,
) -> u64 {
    let last = r - 1;
    if lead == last {
        return rows.iter().all(|h| h[last] != 0) as u64;
    }
    // Free coordinates strictly between lead and last; the first of them
    // (if any) is pinned to `second`.
    let free: Vec<usize> = (lead + 1..last).collect();
    let mut x = vec![0u64; r];
    x[lead] = 1;
    let pinned = usize::from(second.is_some());
    if let Some(v) = second {
        x[free[0]] = v;
    }
    let mut stamp = vec![0u32; q as usize];
    let mut generation = 0u32;
    let mut total = 0u64;
    loop {
        generation += 1;
        let mut forbidden = 0u64;
        let mut dead = false;
        for (h, &inv) in rows.iter().zip(inv_last) {
            let s = (lead..last).fold(0u64, |acc, i| (acc + h[i] * x[i]) % q);
            if h[last] == 0 {
                if s == 0 {
                    dead = true;
                    break;
                }
                continue;
            }
            let v = (q - s) % q * inv % q;
            let slot = &mut stamp[v as usize];
            if *slot != generation {
                *slot = generation;
                forbidden += 1;
            }
        }
        if !dead {
            total += q - forbidden;
        }
        // Odometer over the unpinned free coordinates.
        let mut i = free.len();
        loop {
            if i == pinned {
                return total;
            }
            i -= 1;
            let c = free[i];
            x[c] += 1;
            if x[c] < q {
                break;
            }
            x[c] = 0;
        }
    }
}

/// Number of points of `F_q^dim` lying on no hyperplane of `arr` (reduced
/// mod `q`). Does not check admissibility.
pub fn count_complement(arr: &Arrangement, q: u64) -> BigInt {
    let ess = arr.essentialize();
    let extra = BigInt::from(q).pow((arr.dim() - ess.dim()) as u32);
    count_complement_essential(&ess, q) * extra
}

fn count_complement_essential(ess: &Arrangement, q: u64) -> BigInt {
    let r = ess.dim();
    if r == 0 {
        return BigInt::one();
    }
    let rows: Vec<Vec<u64>> = ess.hyperplanes().iter().map(|h| reduce_mod(h, q)).collect();
    let inv_last: Vec<u64> = rows.iter().map(|h| if h[r - 1] == 0 { 0 } else { inv_mod(h[r - 1], q) }).collect();
    // Complement points come in F_q^* orbits; count normalized
    // representatives (first nonzero coordinate 1).
    let projective: u64 = (0..r)
        .into_par_iter()
        .map(|lead| {
            if lead + 2 < r {
                (0..q).into_par_iter().map(|v| count_projective_slice(&rows, &inv_last, r, q, lead, Some(v))).sum()
            } else {
                count_projective_slice(&rows, &inv_last, r, q, lead, None)
            }
        })
        .sum();
    BigInt::from(projective) * BigInt::from(q - 1)
}

/// Characteristic polynomial from complement point counts at `primes`.
///
/// `chi` is monic of degree `dim`, so `rank` counts pin it down (the factor
/// `t^(dim - rank)` is known); every further prime is used as a residual
/// check.
pub fn char_poly_finite_field(arr: &Arrangement, primes: &[u64]) -> Result<IntPolynomial, FiniteFieldError> {
    let ess = arr.essentialize();
    let r = ess.dim();
    if primes.len() < r {
        return Err(FiniteFieldError::InsufficientPrimes { needed: r, got: primes.len() });
    }
    for &q in primes {
        check_prime_essential(&ess, q)?;
    }
    let mut distinct = primes.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != primes.len() {
        return Err(FiniteFieldError::BadPrime { q: primes[0], reason: "primes must be distinct".into() });
    }
    let counts: Vec<BigInt> = primes.par_iter().map(|&q| count_complement_essential(&ess, q)).collect();

    // g(t) = chi_ess(t) - t^r has degree < r; Lagrange through the first r points.
    let xs: Vec<BigRational> = primes.iter().map(|&q| BigRational::from_integer(q.into())).collect();
    let ys: Vec<BigRational> = primes
        .iter()
        .zip(&counts)
        .map(|(&q, n)| BigRational::from_integer(n - BigInt::from(q).pow(r as u32)))
        .collect();
    let mut g = vec![BigRational::zero(); r];
    for i in 0..r {
        // basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..r {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &xs[j];
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let scale = &ys[i] / denom;
        for (k, b) in basis.iter().enumerate() {
            g[k] += b * &scale;
        }
    }
    let mut coeffs = Vec::with_capacity(r + 1);
    for c in &g {
        if !c.is_integer() {
            return Err(FiniteFieldError::InconsistentCounts { q: primes[0], degree: r });
        }
        coeffs.push(c.to_integer());
    }
    coeffs.push(BigInt::one());
    let chi_ess = IntPolynomial::new(coeffs);
    for (&q, n) in primes.iter().zip(&counts).skip(r) {
        if &chi_ess.eval(&BigInt::from(q)) != n {
            return Err(FiniteFieldError::InconsistentCounts { q, degree: r });
        }
    }
    Ok(&chi_ess * &IntPolynomial::monomial(arr.dim() - r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pencil_count_at_five() {
        let arr = Arrangement::from_rows(2, &[&[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(count_complement(&arr, 5), BigInt::from(12));
    }

    #[test]
    fn boolean_count_at_seven() {
        let arr = Arrangement::from_rows(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(count_complement(&arr, 7), BigInt::from(36));
    }

    #[test]
    fn brute_force_agrees_with_projective_count() {
        let arr = Arrangement::from_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[1, 1, 1], &[1, -2, 3]]);
        let q = 7u64;
        let rows: Vec<Vec<u64>> = arr.hyperplanes().iter().map(|h| reduce_mod(h, q)).collect();
        let mut brute = 0;
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    if rows.iter().all(|h| (h[0] * a + h[1] * b + h[2] * c) % q != 0) {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(count_complement(&arr, q), BigInt::from(brute));
    }

    #[test]
    fn rejects_bad_primes() {
        let arr = Arrangement::from_rows(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, -1]]);
        // det of (1,1),(1,-1) is -2
        assert!(matches!(check_prime(&arr, 2), Err(FiniteFieldError::BadPrime { .. })));
        assert!(matches!(check_prime(&arr, 9), Err(FiniteFieldError::BadPrime { .. })));
        assert!(check_prime(&arr, 3).is_ok());
        assert!(matches!(
            char_poly_finite_field(&arr, &[101]),
            Err(FiniteFieldError::InsufficientPrimes { needed: 2, got: 1 })
        ));
    }

    #[test]
    fn non_essential_arrangement() {
        let arr = Arrangement::from_rows(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]);
        let chi = char_poly_finite_field(&arr, &[11, 13]).unwrap();
        assert_eq!(chi, IntPolynomial::from_i64(&[0, 2, -3, 1]));
    }

    #[test]
    fn subset_enumeration() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
    }
}
