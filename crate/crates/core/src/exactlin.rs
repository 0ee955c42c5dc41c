//! Exact linear algebra over the rationals.
//!
//! Hyperplanes through the origin are stored as primitive integer covectors
//! with a positive leading entry, so two covectors define the same hyperplane
//! exactly when they compare equal. Subspaces are stored by their reduced row
//! echelon basis, which is unique for a given subspace.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("covector has no nonzero entry")]
    ZeroCovector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// A hyperplane `ker(coeffs)` in canonical form: integer entries with gcd 1
/// and positive first nonzero entry.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Covector(Vec<BigInt>);

impl Covector {
    /// Normalizes rational coefficients (see [`normalize_covector`]).
    pub fn new(raw: &[Rational]) -> Result<Self, LinAlgError> {
        normalize_covector(raw)
    }

    pub fn from_ints(raw: &[BigInt]) -> Result<Self, LinAlgError> {
        let mut coeffs = raw.to_vec();
        let g = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return Err(LinAlgError::ZeroCovector);
        }
        let lead_negative = coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
        for c in coeffs.iter_mut() {
            *c /= &g;
            if lead_negative {
                *c = -&*c;
            }
        }
        Ok(Covector(coeffs))
    }

    pub fn from_i64(raw: &[i64]) -> Result<Self, LinAlgError> {
        let ints: Vec<BigInt> = raw.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_ints(&ints)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|c| Rational::from_integer(c.clone())).collect()
    }

    /// Value of the linear form at `point`.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.0.iter().zip(point).fold(Rational::zero(), |acc, (c, x)| acc + x * c)
    }
}

impl fmt::Debug for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Covector{self}")
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Covector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

/// Returns the unique primitive integer covector with positive leading entry
/// defining the same hyperplane as `raw`.
pub fn normalize_covector(raw: &[Rational]) -> Result<Covector, LinAlgError> {
    let lcm = raw.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let ints: Vec<BigInt> = raw.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    Covector::from_ints(&ints)
}

fn check_dims(dim: usize, covectors: &[Covector]) -> Result<(), LinAlgError> {
    match covectors.iter().find(|c| c.dim() != dim) {
        Some(c) => Err(LinAlgError::DimensionMismatch { expected: dim, found: c.dim() }),
        None => Ok(()),
    }
}

/// Incrementally maintained reduced row echelon form.
///
/// Rows are kept sorted by pivot column, every pivot is 1 and every pivot
/// column is zero in all other rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<'a>(dim: usize, rows: impl IntoIterator<Item = &'a [Rational]>) -> Self {
        let mut e = Echelon::new(dim);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    /// True iff `v` lies in the row space.
    pub fn contains(&self, v: &[Rational]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_covector(&self, c: &Covector) -> bool {
        self.contains(&c.to_rational())
    }

    /// Adds `v` to the row space. Returns false if it was already contained.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, v);
        self.pivots.insert(at, p);
        true
    }

    pub fn insert_covector(&mut self, c: &Covector) -> bool {
        self.insert(&c.to_rational())
    }

    /// Canonical basis of the orthogonal complement: the null space of the
    /// rows, in reduced echelon form.
    pub fn kernel(&self) -> Subspace {
        let mut basis = Echelon::new(self.dim);
        for f in 0..self.dim {
            if self.pivots.contains(&f) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.dim];
            v[f] = Rational::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = -row[f].clone();
            }
            basis.insert(&v);
        }
        Subspace { dim_ambient: self.dim, basis: basis.rows }
    }
}

/// A linear subspace of `Q^dim_ambient`, stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    pub dim_ambient: usize,
    pub basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn full(dim: usize) -> Self {
        Echelon::new(dim).kernel()
    }

    pub fn span(dim: usize, vectors: &[Vec<Rational>]) -> Self {
        let e = Echelon::from_rows(dim, vectors.iter().map(Vec::as_slice));
        Subspace { dim_ambient: dim, basis: e.rows }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// True iff the linear form vanishes on the whole subspace.
    pub fn annihilated_by(&self, c: &Covector) -> bool {
        self.basis.iter().all(|b| c.eval(b).is_zero())
    }
}

/// Dimension of the span of `covectors` (all of length `dim`).
pub fn rank_of(dim: usize, covectors: &[Covector]) -> Result<usize, LinAlgError> {
    check_dims(dim, covectors)?;
    let mut e = Echelon::new(dim);
    for c in covectors {
        e.insert_covector(c);
    }
    Ok(e.rank())
}

/// The intersection of the kernels of `covectors`.
pub fn common_kernel(dim: usize, covectors: &[Covector]) -> Result<Subspace, LinAlgError> {
    check_dims(dim, covectors)?;
    let mut e = Echelon::new(dim);
    for c in covectors {
        e.insert_covector(c);
    }
    Ok(e.kernel())
}

/// Restricts each covector to `sub`, expressed in the coordinates of the
/// echelon basis of `sub`. For every input the result records the index of
/// its image in the deduplicated output, or `None` if the form vanishes on
/// `sub`.
pub fn restrict_with_map(
    sub: &Subspace,
    covectors: &[Covector],
) -> Result<(Vec<Covector>, Vec<Option<usize>>), LinAlgError> {
    check_dims(sub.dim_ambient, covectors)?;
    let mut out: Vec<Covector> = Vec::new();
    let mut map = Vec::with_capacity(covectors.len());
    let mut seen = std::collections::HashMap::new();
    for c in covectors {
        let coords: Vec<Rational> = sub.basis.iter().map(|b| c.eval(b)).collect();
        match normalize_covector(&coords) {
            Err(LinAlgError::ZeroCovector) => map.push(None),
            Err(e) => return Err(e),
            Ok(r) => {
                let idx = *seen.entry(r.clone()).or_insert_with(|| {
                    out.push(r);
                    out.len() - 1
                });
                map.push(Some(idx));
            }
        }
    }
    Ok((out, map))
}

/// Restricts each covector to `sub`, dropping those that vanish on it and
/// merging those that coincide.
pub fn restrict_covectors_to(sub: &Subspace, covectors: &[Covector]) -> Result<Vec<Covector>, LinAlgError> {
    restrict_with_map(sub, covectors).map(|(out, _)| out)
}

/// Rewrites the covectors in the coordinates of their own row space.
///
/// If `R` is the reduced echelon basis of the span with pivot columns `p_i`,
/// a covector `c` in the span equals `sum c[p_i] R_i`, so its coordinates are
/// simply its entries at the pivot columns. The result is essential of
/// dimension `rank`.
pub fn essential_coordinates(dim: usize, covectors: &[Covector]) -> Result<(usize, Vec<Covector>), LinAlgError> {
    check_dims(dim, covectors)?;
    let mut e = Echelon::new(dim);
    for c in covectors {
        e.insert_covector(c);
    }
    let pivots = e.pivots().to_vec();
    let out = covectors
        .iter()
        .map(|c| {
            let coords: Vec<BigInt> = pivots.iter().map(|&p| c.coeffs()[p].clone()).collect();
            Covector::from_ints(&coords).expect("nonzero covector has a nonzero pivot entry")
        })
        .collect();
    Ok((pivots.len(), out))
}

/// Coefficients expressing `target` in terms of `vectors`, if possible.
/// `vectors` must be linearly independent.
pub fn solve_in_span(dim: usize, vectors: &[&Covector], target: &Covector) -> Option<Vec<Rational>> {
    let k = vectors.len();
    // Augmented dim x (k + 1) system, eliminated column by column.
    let mut m: Vec<Vec<Rational>> = (0..dim)
        .map(|r| {
            let mut row: Vec<Rational> =
                vectors.iter().map(|v| Rational::from_integer(v.coeffs()[r].clone())).collect();
            row.push(Rational::from_integer(target.coeffs()[r].clone()));
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivot_of_col = vec![usize::MAX; k];
    for (col, slot) in pivot_of_col.iter_mut().enumerate() {
        let r = (pivot_row..dim).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot_row, r);
        let inv = m[pivot_row][col].recip();
        for x in m[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let prow = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        *slot = pivot_row;
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some(pivot_of_col.iter().map(|&r| m[r][k].clone()).collect())
}

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn determinant(rows: &[&[BigInt]]) -> BigInt {
    let n = rows.len();
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &m[n - 1][n - 1]
    }
}
