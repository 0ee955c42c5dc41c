//! Constructors for the Calogero-Moser arrangements with explicit hyperplane
//! lists, plus the bundled table of exceptional-group data.
//!
//! # Coordinates
//!
//! A Namikawa Weyl group `S_{m_1} x ... x S_{m_k}` acts on blocks of
//! coordinates `kappa_{H,0}, ..., kappa_{H,m-1}` constrained by
//! `sum_i kappa_{H,i} = 0`. Every generator works in the essential basis
//! obtained by dropping `kappa_{H,0}` from each block, so a form
//! `sum_i c_i kappa_{H,i}` has essential coefficients `c_i - c_0` for
//! `i >= 1`. Blocks are concatenated in the order of the factor list.
//!
//! Forms written in simple-root coordinates `z_p = <alpha_p, k>` (the bold-k
//! coordinates of the cyclic and wreath examples) are converted with
//! `z_p = m (kappa_{(m - p + 1) mod m} - kappa_{m - p})` on a block of size
//! `m`.

mod roots;
mod table1;

pub use roots::{RootLabel, RootSystem};
pub use table1::{table1_rows, TableRow};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arrangement::{Arrangement, Tag};
use crate::exactlin::{Covector, LinAlgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unsupported root system type {0:?}")]
    UnsupportedType(String),
    #[error("cyclic order must be at least 2, got {0}")]
    InvalidOrder(usize),
    #[error("wreath product needs n >= 2, got {0}")]
    InvalidN(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A product of symmetric groups `S_{m_1} x ... x S_{m_k}`, one factor per
/// conjugacy class of reflection hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylSpec {
    factors: Vec<usize>,
}

impl WeylSpec {
    pub fn new(factors: Vec<usize>) -> Result<Self, GenError> {
        if factors.is_empty() {
            return Err(GenError::InvalidParams("Weyl group needs at least one factor".into()));
        }
        if let Some(&m) = factors.iter().find(|&&m| m < 2) {
            return Err(GenError::InvalidParams(format!("symmetric group factor S{m} is trivial")));
        }
        Ok(WeylSpec { factors })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    /// Essential dimension of each block (`m - 1` for `S_m`).
    pub fn block_dims(&self) -> Vec<usize> {
        self.factors.iter().map(|m| m - 1).collect()
    }

    /// Total essential dimension.
    pub fn dim(&self) -> usize {
        self.factors.iter().map(|m| m - 1).sum()
    }

    /// Number of ambient coordinates (`sum m_i`).
    pub fn ambient_dim(&self) -> usize {
        self.factors.iter().sum()
    }

    /// `|W| = prod m_i!`.
    pub fn order(&self) -> BigInt {
        self.factors.iter().map(|&m| (1..=m).map(BigInt::from).product::<BigInt>()).product()
    }

    /// Essential covector of an ambient form `sum c_{H,i} kappa_{H,i}`.
    pub fn essentialize_form(&self, ambient: &[BigInt]) -> Result<Covector, GenError> {
        if ambient.len() != self.ambient_dim() {
            return Err(LinAlgError::DimensionMismatch { expected: self.ambient_dim(), found: ambient.len() }.into());
        }
        let mut out = Vec::with_capacity(self.dim());
        let mut at = 0;
        for &m in &self.factors {
            let block = &ambient[at..at + m];
            out.extend(block[1..].iter().map(|c| c - &block[0]));
            at += m;
        }
        Ok(Covector::from_ints(&out)?)
    }

    /// Lifts an essential covector to the ambient form with `c_{H,0} = 0`.
    pub fn lift_form(&self, essential: &Covector) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.ambient_dim());
        let mut at = 0;
        for &m in &self.factors {
            out.push(BigInt::from(0));
            out.extend(essential.coeffs()[at..at + m - 1].iter().cloned());
            at += m - 1;
        }
        out
    }
}

impl fmt::Display for WeylSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|m| format!("S{m}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for WeylSpec {
    type Err = GenError;

    /// Parses `S2xS3x...`.
    fn from_str(s: &str) -> Result<Self, GenError> {
        let bad = || GenError::InvalidParams(format!("cannot parse Weyl group {s:?}"));
        let factors = s
            .split(['x', 'X', '*'])
            .map(|part| {
                let part = part.trim();
                part.strip_prefix('S')
                    .or_else(|| part.strip_prefix('s'))
                    .ok_or_else(bad)?
                    .parse::<usize>()
                    .map_err(|_| bad())
            })
            .collect::<Result<Vec<_>, _>>()?;
        WeylSpec::new(factors)
    }
}

impl Serialize for WeylSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Ambient coefficients on a block of size `m` of the simple-root form
/// `sum_p f_p z_p`.
fn simple_root_form_to_block(m: usize, form: &[BigInt]) -> Vec<BigInt> {
    debug_assert_eq!(form.len(), m - 1);
    let mut c = vec![BigInt::from(0); m];
    let mb = BigInt::from(m);
    for (idx, f) in form.iter().enumerate() {
        let p = idx + 1;
        c[(m - p + 1) % m] += &mb * f;
        c[m - p] -= &mb * f;
    }
    c
}

/// Converts a form in simple-root coordinates (blocks concatenated in the
/// order of `spec`) to an essential covector.
pub fn simple_root_to_essential(spec: &WeylSpec, form: &[BigInt]) -> Result<Covector, GenError> {
    if form.len() != spec.dim() {
        return Err(LinAlgError::DimensionMismatch { expected: spec.dim(), found: form.len() }.into());
    }
    let mut ambient = Vec::with_capacity(spec.ambient_dim());
    let mut at = 0;
    for &m in spec.factors() {
        ambient.extend(simple_root_form_to_block(m, &form[at..at + m - 1]));
        at += m - 1;
    }
    spec.essentialize_form(&ambient)
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn build(dim: usize, items: Vec<(Covector, Option<Tag>)>, label: &str, layout: Option<WeylSpec>) -> Arrangement {
    let (mut arr, _) =
        Arrangement::from_tagged(dim, items).expect("generator emits covectors of the ambient dimension");
    arr.label = Some(label.to_string());
    arr.layout = layout;
    arr
}

/// Root hyperplanes `kappa_{H,i} - kappa_{H,j}` of every block, `i < j`.
fn coxeter_items(spec: &WeylSpec) -> Vec<(Covector, Option<Tag>)> {
    let mut items = Vec::new();
    let mut offset = 0;
    for &m in spec.factors() {
        for i in 0..m {
            for j in i + 1..m {
                let mut ambient = vec![BigInt::from(0); spec.ambient_dim()];
                ambient[offset + i] = BigInt::from(1);
                ambient[offset + j] = BigInt::from(-1);
                items.push((spec.essentialize_form(&ambient).expect("root form is nonzero"), Some(Tag::T)));
            }
        }
        offset += m;
    }
    items
}

/// Coxeter arrangement of the Namikawa Weyl group `spec`.
pub fn gen_coxeter_namikawa(spec: &WeylSpec) -> Arrangement {
    build(spec.dim(), coxeter_items(spec), &format!("coxeter-{spec}"), Some(spec.clone()))
}

/// CM-hyperplanes of `Z_ell` acting on `C`: the type `A_{ell-1}` Coxeter
/// arrangement `kappa_i - kappa_j = 0`, listed for `0 <= j < i <= ell - 1`.
pub fn gen_cyclic(ell: usize) -> Result<Arrangement, GenError> {
    if ell < 2 {
        return Err(GenError::InvalidOrder(ell));
    }
    let spec = WeylSpec::new(vec![ell])?;
    let mut items = Vec::new();
    for i in 1..ell {
        for j in 0..i {
            let mut ambient = vec![BigInt::from(0); ell];
            ambient[i] = BigInt::from(1);
            ambient[j] = BigInt::from(-1);
            items.push((spec.essentialize_form(&ambient)?, Some(Tag::T)));
        }
    }
    Ok(build(ell - 1, items, &format!("cyclic-{ell}"), Some(spec)))
}

/// Hyperplanes of `G wr S_n` in simple-root coordinates
/// `(k_{1,sgn}, z_1, ..., z_rank)` where `z_p = <alpha_p, k_2>`:
/// the T-hyperplanes `k_{1,sgn} = 0` and `<beta, k_2> = 0`, and the
/// F-hyperplanes `|G| k_{1,sgn} + 2 j <beta, k_2> = 0` for positive roots
/// `beta` and `j in ±1..±(n-1)` (the sign `i = -1` gives the same hyperplanes).
pub fn wreath_simple_root_forms(
    roots: &RootSystem,
    group_order: usize,
    n: usize,
) -> Result<Vec<(Vec<BigInt>, Tag)>, GenError> {
    if n < 2 {
        return Err(GenError::InvalidN(n));
    }
    let r = roots.rank();
    let positive = roots.positive_roots();
    let mut out = Vec::new();
    let mut first = vec![BigInt::from(0); r + 1];
    first[0] = BigInt::from(1);
    out.push((first, Tag::T));
    for beta in &positive {
        let mut v = vec![BigInt::from(0)];
        v.extend(beta.iter().map(|&b| BigInt::from(b)));
        out.push((v, Tag::T));
    }
    for beta in &positive {
        for jj in 1..n as i64 {
            for j in [jj, -jj] {
                let mut v = vec![BigInt::from(group_order)];
                v.extend(beta.iter().map(|&b| BigInt::from(2 * j * b)));
                out.push((v, Tag::F));
            }
        }
    }
    Ok(out)
}

/// Order of the finite subgroup of `SL(2, C)` matched to the root system by
/// the McKay correspondence.
pub fn mckay_order(label: RootLabel) -> usize {
    match label {
        RootLabel::A(n) => n + 1,
        RootLabel::D(n) => 4 * (n - 2),
        RootLabel::E(6) => 24,
        RootLabel::E(7) => 48,
        RootLabel::E(_) => 120,
    }
}

/// CM-hyperplanes of `G wr S_n`, `G` the McKay partner of `g_type`.
///
/// For type `A_{l-1}` (`G = Z_l`) the result is expressed in the essential
/// kappa basis with layout `S2 x S_l`; it matches term for term
/// `kappa_{1,0} - kappa_{1,1}`, `kappa_{2,i} - kappa_{2,j}` (T) and
/// `k (kappa_{1,0} - kappa_{1,1}) + m (kappa_{2,i} - kappa_{2,j})` (F).
/// Types D and E stay in simple-root coordinates and carry no layout.
pub fn gen_wreath(g_type: &str, group_order: usize, n: usize) -> Result<Arrangement, GenError> {
    let label: RootLabel = g_type.parse()?;
    let expected = mckay_order(label);
    if group_order != expected {
        return Err(GenError::InvalidParams(format!(
            "type {label} corresponds to a group of order {expected}, not {group_order}"
        )));
    }
    let roots = RootSystem::new(label)?;
    let forms = wreath_simple_root_forms(&roots, group_order, n)?;
    let dim = roots.rank() + 1;
    let name = format!("wreath-{label}-{group_order}-n{n}");
    match label {
        RootLabel::A(r) => {
            let spec = WeylSpec::new(vec![2, r + 1])?;
            let items = forms
                .into_iter()
                .map(|(f, t)| Ok((simple_root_to_essential(&spec, &f)?, Some(t))))
                .collect::<Result<Vec<_>, GenError>>()?;
            Ok(build(dim, items, &name, Some(spec)))
        }
        _ => {
            let items = forms
                .into_iter()
                .map(|(f, t)| Ok((Covector::from_ints(&f)?, Some(t))))
                .collect::<Result<Vec<_>, GenError>>()?;
            Ok(build(dim, items, &name, None))
        }
    }
}

/// The four CM-lines of the dihedral group `D_m`, `m` even, in coordinates
/// `(k_{1,1}, k_{2,1})`: T-lines `k_{1,1} = 0`, `k_{2,1} = 0` and F-lines
/// `k_{1,1} ± k_{2,1} = 0`. On each `S2` block the essential coordinate
/// `kappa_{H,1}` is a multiple of `k_{H,1}`, so the covectors coincide in
/// both bases.
pub fn gen_dihedral_even() -> Arrangement {
    let spec = WeylSpec::new(vec![2, 2]).expect("valid");
    let rows: [(&[i64], Tag); 4] = [(&[1, 0], Tag::T), (&[0, 1], Tag::T), (&[1, 1], Tag::F), (&[1, -1], Tag::F)];
    let items = rows.iter().map(|(r, t)| (Covector::from_i64(r).expect("nonzero"), Some(*t))).collect();
    build(2, items, "dihedral", Some(spec))
}

/// CM-hyperplanes of the dihedral group of order `2m`. For even `m` these
/// are the four lines of [`gen_dihedral_even`]; for odd `m` all reflections
/// are conjugate, `W = S2` and there is a single hyperplane.
pub fn gen_dihedral(m: usize) -> Result<Arrangement, GenError> {
    if m < 3 {
        return Err(GenError::InvalidParams(format!("dihedral group needs m >= 3, got {m}")));
    }
    if m.is_multiple_of(2) {
        return Ok(gen_dihedral_even());
    }
    let spec = WeylSpec::new(vec![2])?;
    Ok(build(1, vec![(Covector::from_i64(&[1])?, Some(Tag::T))], &format!("dihedral-{m}"), Some(spec)))
}

/// T- and F-lines of `G4` exactly as printed, in simple-root coordinates
/// `(x, y)` of the `A_2` root system.
pub const G4_PRINTED_T: [[i64; 2]; 3] = [[1, 0], [0, 1], [1, 1]];
pub const G4_PRINTED_F: [[i64; 2]; 3] = [[1, -2], [1, -1], [2, -1]];

/// The S3-stable F-lines: the printed list with `y -> -y` in its first and
/// last entries. The lines fixed by the three reflections are `x - y`,
/// `x + 2y` and `2x + y`; no other triple of lines is permuted by `S3`
/// alongside the root lines.
pub const G4_STABLE_F: [[i64; 2]; 3] = [[1, 2], [1, -1], [2, 1]];

fn g4_from(t: &[[i64; 2]], f: &[[i64; 2]], label: &str) -> Arrangement {
    let spec = WeylSpec::new(vec![3]).expect("valid");
    let items = t
        .iter()
        .map(|r| (r, Tag::T))
        .chain(f.iter().map(|r| (r, Tag::F)))
        .map(|(r, tag)| (simple_root_to_essential(&spec, &ints(r)).expect("nonzero form"), Some(tag)))
        .collect();
    build(2, items, label, Some(spec))
}

/// CM-lines of `G4` in the essential `S3` basis.
pub fn gen_g4() -> Arrangement {
    g4_from(&G4_PRINTED_T, &G4_STABLE_F, "G4")
}

/// The printed `G4` lists taken literally; not stable under `S3`.
pub fn gen_g4_as_printed() -> Arrangement {
    g4_from(&G4_PRINTED_T, &G4_PRINTED_F, "G4-printed")
}

/// The 25 CM-hyperplanes of `G8` in ambient coordinates
/// `(kappa_0, kappa_1, kappa_2, kappa_3)`, in the printed order.
pub const G8_AMBIENT: [[i64; 4]; 25] = [
    [-1, 0, 0, 1],
    [-1, 0, 1, 0],
    [1, 0, 1, -2],
    [0, 0, 1, -1],
    [1, -3, 1, 1],
    [-2, 0, 1, 1],
    [-1, 0, 2, -1],
    [-1, 1, 0, 0],
    [1, 1, 0, -2],
    [0, 1, 0, -1],
    [-2, 1, 0, 1],
    [1, 1, -3, 1],
    [1, 1, -2, 0],
    [0, 1, -2, 1],
    [0, 1, -1, 0],
    [1, 1, -1, -1],
    [-1, 1, -1, 1],
    [-2, 1, 1, 0],
    [1, 1, 1, -3],
    [0, 1, 1, -2],
    [-1, 1, 1, -1],
    [-3, 1, 1, 1],
    [-1, 2, 0, -1],
    [-1, 2, -1, 0],
    [0, 2, -1, -1],
];

/// True for the forms `kappa_i - kappa_j`.
fn is_root_form(ambient: &[i64]) -> bool {
    let mut nz: Vec<i64> = ambient.iter().copied().filter(|&c| c != 0).collect();
    nz.sort_unstable();
    nz == [-1, 1]
}

/// CM-hyperplanes of `G8` restricted to `sum kappa_i = 0`, tagged T on the
/// six root hyperplanes of `S4` and F elsewhere.
pub fn gen_g8() -> Arrangement {
    let spec = WeylSpec::new(vec![4]).expect("valid");
    let items = G8_AMBIENT
        .iter()
        .map(|r| {
            let tag = if is_root_form(r) { Tag::T } else { Tag::F };
            (spec.essentialize_form(&ints(r)).expect("form is nonzero on the zero-sum space"), Some(tag))
        })
        .collect();
    build(3, items, "G8", Some(spec))
}
