//! Reference data for the exceptional complex reflection groups, stored as
//! printed (including rows whose numbers disagree with each other).

use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Deserialize;

use super::WeylSpec;
use crate::polynomial::IntPolynomial;

const TABLE1_JSON: &str = include_str!("../../data/table1.json");

#[derive(Clone, Debug)]
pub struct TableRow {
    pub group: String,
    pub n_hyperplanes: usize,
    pub weyl: WeylSpec,
    /// Printed factors, coefficients lowest degree first.
    pub poincare_factors: Vec<IntPolynomial>,
    pub e_count: BigInt,
    pub free_flag: bool,
}

impl TableRow {
    /// The Poincaré polynomial expanded from its printed factors.
    pub fn poincare(&self) -> IntPolynomial {
        IntPolynomial::product(&self.poincare_factors)
    }
}

#[derive(Deserialize)]
struct RawTable {
    schema_version: u32,
    rows: Vec<RawRow>,
}

#[derive(Deserialize)]
struct RawRow {
    group: String,
    n_hyperplanes: usize,
    weyl: String,
    poincare_factors: Vec<Vec<i64>>,
    e_count: u64,
    free: bool,
}

/// The fifteen bundled rows in printed order.
pub fn table1_rows() -> &'static [TableRow] {
    static ROWS: OnceLock<Vec<TableRow>> = OnceLock::new();
    ROWS.get_or_init(|| {
        let raw: RawTable = serde_json::from_str(TABLE1_JSON).expect("bundled table is valid JSON");
        assert_eq!(raw.schema_version, 1, "unexpected table schema version");
        raw.rows
            .into_iter()
            .map(|r| TableRow {
                weyl: r.weyl.parse().expect("bundled Weyl group is valid"),
                group: r.group,
                n_hyperplanes: r.n_hyperplanes,
                poincare_factors: r.poincare_factors.iter().map(|f| IntPolynomial::from_i64(f)).collect(),
                e_count: BigInt::from(r.e_count),
                free_flag: r.free,
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(name: &str) -> &'static TableRow {
        table1_rows().iter().find(|r| r.group == name).unwrap()
    }

    #[test]
    fn fifteen_rows() {
        assert_eq!(table1_rows().len(), 15);
    }

    #[test]
    fn printed_rows() {
        let g4 = row("G4");
        assert_eq!(g4.n_hyperplanes, 6);
        assert_eq!(g4.weyl.to_string(), "S3");
        assert_eq!(g4.poincare(), IntPolynomial::from_i64(&[1, 6, 5]));
        assert_eq!(g4.e_count, BigInt::from(2));
        assert!(g4.free_flag);

        let g5 = row("G5");
        assert_eq!(g5.n_hyperplanes, 33);
        assert_eq!(g5.weyl.to_string(), "S3xS3");
        assert_eq!(g5.poincare_factors[0], IntPolynomial::from_i64(&[1, 21, 116]));
        assert_eq!(g5.e_count, BigInt::from(92));
        assert!(!g5.free_flag);

        let g28 = row("G28");
        assert_eq!(g28.n_hyperplanes, 8);
        assert_eq!(g28.weyl.to_string(), "S2xS2");
        assert_eq!(g28.poincare(), IntPolynomial::from_i64(&[1, 8, 7]));
        assert_eq!(g28.e_count, BigInt::from(4));
    }

    #[test]
    fn linear_coefficient_against_cardinality() {
        for r in table1_rows() {
            let w1 = r.poincare().coeff(1);
            if r.group == "G15" {
                assert_eq!(w1, BigInt::from(33));
            } else {
                assert_eq!(w1, BigInt::from(r.n_hyperplanes), "{}", r.group);
            }
        }
    }
}
