//! Exact combinatorics of central hyperplane arrangements, with generators
//! for the Calogero-Moser arrangements of symplectic reflection groups.
//!
//! Everything is computed over the rationals with arbitrary precision:
//! intersection lattices and Möbius functions, Poincaré and characteristic
//! polynomials (also by finite-field point counts), Orlik-Solomon nbc bases,
//! inductive-freeness certificates, and Namikawa Weyl group symmetry.
//!
//! ```
//! use hyparr::{build_lattice, gen_g8, poincare_polynomial, IntPolynomial};
//!
//! let lat = build_lattice(&gen_g8());
//! let expected = IntPolynomial::product(&[
//!     IntPolynomial::linear_factor(1),
//!     IntPolynomial::linear_factor(11),
//!     IntPolynomial::linear_factor(13),
//! ]);
//! assert_eq!(poincare_polynomial(&lat), expected);
//! ```

pub mod arrangement;
pub mod exactlin;
pub mod format;
pub mod freeness;
pub mod generators;
pub mod lattice;
pub mod osalg;
pub mod polynomial;
pub mod symmetry;

pub(crate) mod ser;

pub use arrangement::{Arrangement, Tag};
pub use exactlin::{Covector, LinAlgError, Rational, Subspace};
pub use format::{emit_arrangement, parse_arrangement, FormatError, ParsedFile};
pub use freeness::{
    exponents_from_poincare, inductive_freeness, nonfree_by_localization, ExponentReport, FreenessStatus,
    FreenessVerdict, Witness,
};
pub use generators::{
    gen_coxeter_namikawa, gen_cyclic, gen_dihedral, gen_dihedral_even, gen_g4, gen_g8, gen_wreath, table1_rows,
    GenError, RootSystem, TableRow, WeylSpec,
};
pub use lattice::{
    build_lattice, char_poly_finite_field, characteristic_polynomial, poincare_polynomial, whitney_numbers, Flat,
    IntersectionLattice,
};
pub use osalg::{circuits, nbc_basis, os_dimension, CircuitSet, NbcBasis};
pub use polynomial::IntPolynomial;
pub use symmetry::{
    act, audit_table1, contains_subarrangement, hyperplane_orbits, is_stable, terminalization_count, BlockPermutation,
    SymmetryError,
};
