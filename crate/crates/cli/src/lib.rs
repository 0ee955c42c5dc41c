//! Library side of the `hyparr` command: generation, analysis and the
//! Table 1 audit, returning reports instead of printing.

pub mod report;

use hyparr::freeness::{inductive_freeness_with, FreenessStatus, DEFAULT_BUDGET};
use hyparr::generators::{self, GenError, WeylSpec};
use hyparr::lattice::{admissible_primes, char_poly_finite_field, FiniteFieldError};
use hyparr::osalg::{nbc_basis, nbc_counts};
use hyparr::symmetry::{self, SymmetryError};
use hyparr::{
    build_lattice, characteristic_polynomial, emit_arrangement, exponents_from_poincare, parse_arrangement,
    poincare_polynomial, Arrangement, FormatError, Tag,
};
use num_bigint::BigInt;
use thiserror::Error;

pub use report::{AuditReport, Report, SCHEMA_VERSION};

/// Exit code for malformed input files.
pub const EXIT_PARSE: i32 = 1;
/// Exit code for a math audit signal such as a non-integral E-count.
pub const EXIT_AUDIT: i32 = 2;
/// Exit code for an `Unknown` freeness verdict under `--strict`.
pub const EXIT_UNKNOWN: i32 = 3;
/// Exit code for invalid command-line usage or generator parameters.
pub const EXIT_USAGE: i32 = 64;
/// Exit code for unreadable input.
pub const EXIT_IO: i32 = 66;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] FormatError),
    #[error(transparent)]
    Generator(#[from] GenError),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    FiniteField(#[from] FiniteFieldError),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Generator(_) | CliError::UnknownGenerator(_) | CliError::Usage(_) => EXIT_USAGE,
            CliError::FiniteField(_) => EXIT_AUDIT,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

/// Pipeline stages requested from `analyze`.
#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub poincare: bool,
    pub os: bool,
    pub basis: bool,
    pub free: bool,
    pub budget: u64,
    pub stability: bool,
    pub orbits: bool,
    pub e_count: bool,
    /// Number of primes for the finite-field characteristic polynomial.
    pub ff_primes: Option<usize>,
    pub strict: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            poincare: false,
            os: false,
            basis: false,
            free: false,
            budget: DEFAULT_BUDGET,
            stability: false,
            orbits: false,
            e_count: false,
            ff_primes: None,
            strict: false,
        }
    }
}

impl AnalyzeOptions {
    /// Every stage except the explicit nbc basis.
    pub fn all() -> Self {
        AnalyzeOptions {
            poincare: true,
            os: true,
            free: true,
            stability: true,
            orbits: true,
            e_count: true,
            ..Self::default()
        }
    }
}

/// The outcome of `analyze`: the report, warnings for stderr and the
/// process exit code.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub report: Report,
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

fn factored(exps: &[u64]) -> String {
    if exps.is_empty() {
        return "1".to_string();
    }
    exps.iter()
        .map(|&b| if b == 1 { "(1 + t)".to_string() } else { format!("(1 + {b}t)") })
        .collect::<Vec<_>>()
        .concat()
}

fn layout_of(arr: &Arrangement, stage: &str) -> Result<WeylSpec, CliError> {
    arr.layout.clone().ok_or_else(|| CliError::Usage(format!("{stage} needs a weyl layout in the input")))
}

/// Runs the requested stages on the text of an arrangement file.
pub fn run_analyze(text: &str, opts: &AnalyzeOptions) -> Result<Analysis, CliError> {
    let parsed = parse_arrangement(text)?;
    let arr = parsed.arrangement;
    let mut warnings = Vec::new();
    if parsed.duplicates > 0 {
        warnings.push(format!("dropped {} duplicate hyperplane(s)", parsed.duplicates));
    }
    let mut exit_code = 0;

    let needs_lattice = opts.poincare || opts.free || opts.e_count || opts.ff_primes.is_some();
    let lat = needs_lattice.then(|| build_lattice(&arr));
    let pi = lat.as_ref().map(poincare_polynomial);

    let poincare = if opts.poincare {
        let lat = lat.as_ref().expect("built above");
        let p = pi.clone().expect("built above");
        let exps = exponents_from_poincare(&p).expect("lattice polynomials are well formed").exponents;
        Some(report::PoincareSection {
            expanded: p.to_string(),
            factored: exps.as_deref().map(factored),
            exponents: exps,
            coefficients: p,
            characteristic: characteristic_polynomial(lat),
        })
    } else {
        None
    };

    let finite_field = match opts.ff_primes {
        None => None,
        Some(k) => {
            let lat = lat.as_ref().expect("built above");
            let need = arr.rank().max(1);
            if k < need {
                return Err(CliError::Usage(format!(
                    "--ff-primes needs at least {need} primes for rank {}",
                    arr.rank()
                )));
            }
            let primes = admissible_primes(&arr, k, 101)?;
            let chi = char_poly_finite_field(&arr, &primes)?;
            let matches_lattice = chi == characteristic_polynomial(lat);
            if !matches_lattice {
                exit_code = EXIT_AUDIT;
            }
            Some(report::FiniteFieldSection { primes, characteristic: chi, matches_lattice })
        }
    };

    let os = if opts.os || opts.basis {
        let order: Vec<usize> = (0..arr.len()).collect();
        let (graded_dims, basis) = if opts.basis {
            let b = nbc_basis(&arr, &order).expect("identity order");
            (b.graded_dims().iter().map(|&d| d as u64).collect::<Vec<_>>(), Some(b.sets))
        } else {
            (nbc_counts(&arr, &order).expect("identity order"), None)
        };
        Some(report::OsSection { total: graded_dims.iter().sum(), graded_dims, basis })
    } else {
        None
    };

    let freeness = if opts.free {
        let v = inductive_freeness_with(&arr, lat.as_ref().expect("built above"), opts.budget);
        if opts.strict && v.status == FreenessStatus::Unknown {
            exit_code = exit_code.max(EXIT_UNKNOWN);
        }
        Some(v)
    } else {
        None
    };

    let stability = if opts.stability {
        let spec = layout_of(&arr, "--stability")?;
        let st = symmetry::is_stable(&arr, &spec).expect("layout checked");
        let coxeter = generators::gen_coxeter_namikawa(&spec);
        let coxeter_contained = symmetry::contains_subarrangement(&arr, &coxeter).expect("same layout");
        let t_hyperplanes_are_roots = arr.is_tagged().then(|| {
            let t = arr.select(&arr.indices_tagged(Tag::T));
            t.same_hyperplanes(&coxeter)
        });
        Some(report::StabilitySection {
            weyl: spec.to_string(),
            stable: st.stable,
            counterexample: st.counterexample,
            coxeter_contained,
            t_hyperplanes_are_roots,
        })
    } else {
        None
    };

    let orbits = if opts.orbits {
        let spec = layout_of(&arr, "--orbits")?;
        match symmetry::hyperplane_orbits(&arr, &spec) {
            Ok(o) => Some(o),
            Err(SymmetryError::NotStable(w)) => {
                warnings.push(format!("orbits skipped: arrangement is not stable under {w}"));
                exit_code = exit_code.max(EXIT_AUDIT);
                None
            }
            Err(e) => return Err(CliError::Usage(e.to_string())),
        }
    } else {
        None
    };

    let e_count = if opts.e_count {
        let spec = layout_of(&arr, "--e-count")?;
        let p = pi.clone().expect("built above");
        let numerator = p.eval(&BigInt::from(1));
        let value = match symmetry::terminalization_count(&p, &spec) {
            Ok(v) => Some(v.to_string()),
            Err(SymmetryError::NonIntegral { .. }) => {
                exit_code = exit_code.max(EXIT_AUDIT);
                None
            }
            Err(e) => return Err(CliError::Usage(e.to_string())),
        };
        Some(report::ECountSection {
            weyl: spec.to_string(),
            numerator: numerator.to_string(),
            denominator: spec.order().to_string(),
            value,
        })
    } else {
        None
    };

    let report = Report {
        schema_version: SCHEMA_VERSION,
        label: arr.label.clone(),
        dim: arr.dim(),
        n_hyperplanes: arr.len(),
        rank: arr.rank(),
        duplicates_dropped: parsed.duplicates,
        poincare,
        finite_field,
        os,
        freeness,
        stability,
        orbits,
        e_count,
    };
    Ok(Analysis { report, warnings, exit_code })
}

/// Generator selection for `gen`.
#[derive(Clone, Debug)]
pub enum GenRequest {
    Wreath { g: String, order: usize, n: usize },
    Cyclic { ell: usize },
    Dihedral { m: Option<usize> },
    G4,
    G8,
    Coxeter { weyl: String },
}

impl GenRequest {
    /// Builds a request from a generator name and `key=value` parameters.
    pub fn from_name(name: &str, params: &[(&str, &str)]) -> Result<Self, CliError> {
        let get = |k: &str| params.iter().find(|(key, _)| *key == k).map(|(_, v)| *v);
        let num = |k: &str| -> Result<usize, CliError> {
            get(k)
                .ok_or_else(|| CliError::Usage(format!("missing --{k}")))?
                .parse()
                .map_err(|_| CliError::Usage(format!("--{k} must be a nonnegative integer")))
        };
        Ok(match name {
            "wreath" => GenRequest::Wreath {
                g: get("g").ok_or_else(|| CliError::Usage("missing --g".into()))?.to_string(),
                order: num("order")?,
                n: num("n")?,
            },
            "cyclic" => GenRequest::Cyclic { ell: num("ell")? },
            "dihedral" => GenRequest::Dihedral { m: get("m").map(|_| num("m")).transpose()? },
            "g4" => GenRequest::G4,
            "g8" => GenRequest::G8,
            "coxeter" => GenRequest::Coxeter {
                weyl: get("weyl").ok_or_else(|| CliError::Usage("missing --weyl".into()))?.to_string(),
            },
            other => return Err(CliError::UnknownGenerator(other.to_string())),
        })
    }
}

/// Generates an arrangement.
pub fn generate(req: &GenRequest) -> Result<Arrangement, CliError> {
    Ok(match req {
        GenRequest::Wreath { g, order, n } => generators::gen_wreath(g, *order, *n)?,
        GenRequest::Cyclic { ell } => generators::gen_cyclic(*ell)?,
        GenRequest::Dihedral { m: None } => generators::gen_dihedral_even(),
        GenRequest::Dihedral { m: Some(m) } => generators::gen_dihedral(*m)?,
        GenRequest::G4 => generators::gen_g4(),
        GenRequest::G8 => generators::gen_g8(),
        GenRequest::Coxeter { weyl } => generators::gen_coxeter_namikawa(&weyl.parse()?),
    })
}

/// The canonical file text for a generator request.
pub fn run_generate(req: &GenRequest) -> Result<String, CliError> {
    generate(req).map(|a| emit_arrangement(&a))
}

/// Audit of the bundled Table 1 data.
pub fn run_audit_table() -> AuditReport {
    AuditReport::new(symmetry::audit_table1())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn analyze(text: &str, opts: AnalyzeOptions) -> Analysis {
        run_analyze(text, &opts).unwrap()
    }

    #[test]
    fn g8_poincare_and_freeness() {
        let text = run_generate(&GenRequest::G8).unwrap();
        let a = analyze(&text, AnalyzeOptions { poincare: true, free: true, ..Default::default() });
        let p = a.report.poincare.unwrap();
        assert_eq!(p.factored.as_deref(), Some("(1 + t)(1 + 11t)(1 + 13t)"));
        assert_eq!(a.report.freeness.unwrap().status, FreenessStatus::InductivelyFree);
        assert_eq!(a.exit_code, 0);
    }

    #[test]
    fn g4_e_count() {
        let a = analyze(hyparr::format::data::G4_ARR, AnalyzeOptions { e_count: true, ..Default::default() });
        assert_eq!(a.report.e_count.unwrap().value.as_deref(), Some("2"));
    }

    #[test]
    fn dihedral_os() {
        let a = analyze(hyparr::format::data::DIHEDRAL_ARR, AnalyzeOptions { os: true, ..Default::default() });
        let os = a.report.os.unwrap();
        assert_eq!(os.graded_dims, vec![1, 4, 3]);
        assert_eq!(os.total, 8);
    }

    #[test]
    fn generator_examples() {
        let count = |req: GenRequest| parse_arrangement(&run_generate(&req).unwrap()).unwrap().arrangement.len();
        assert_eq!(count(GenRequest::Wreath { g: "A1".into(), order: 2, n: 2 }), 4);
        assert_eq!(count(GenRequest::Cyclic { ell: 2 }), 1);
        assert_eq!(count(GenRequest::Coxeter { weyl: "S4".into() }), 6);
        assert!(matches!(GenRequest::from_name("g9", &[]), Err(CliError::UnknownGenerator(_))));
        let err = run_generate(&GenRequest::Cyclic { ell: 1 }).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn non_integral_e_count_sets_exit_code() {
        // A single line with the S3 layout: pi(1) = 2 is not divisible by 6.
        let a = analyze("dim 2\nweyl S3\nh 1 0\n", AnalyzeOptions { e_count: true, ..Default::default() });
        assert_eq!(a.report.e_count.unwrap().value, None);
        assert_eq!(a.exit_code, EXIT_AUDIT);
    }

    #[test]
    fn strict_unknown_sets_exit_code() {
        let text = run_generate(&GenRequest::G8).unwrap();
        let a = analyze(&text, AnalyzeOptions { free: true, budget: 1, strict: true, ..Default::default() });
        assert_eq!(a.report.freeness.unwrap().status, FreenessStatus::Unknown);
        assert_eq!(a.exit_code, EXIT_UNKNOWN);
    }

    #[test]
    fn parse_errors_map_to_exit_one() {
        let e = run_analyze("dim 2\nh 1 x\n", &AnalyzeOptions::default()).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_PARSE);
    }

    #[test]
    fn duplicate_warning() {
        let a = analyze("dim 2\nh 2 0\nh 1 0\n", AnalyzeOptions::default());
        assert_eq!(a.report.duplicates_dropped, 1);
        assert_eq!(a.warnings.len(), 1);
    }

    #[test]
    fn audit_counts() {
        assert_eq!(run_audit_table().rows_passing_core, 13);
    }
}
