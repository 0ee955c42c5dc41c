//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line.

use std::io::Write as _;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use hyparr::freeness::{inductive_freeness, FreenessStatus, DEFAULT_BUDGET};
use hyparr::lattice::admissible_primes;
use hyparr::osalg::nbc_counts;
use hyparr::symmetry::{act, audit_table1, is_stable, AuditCheck, BlockPermutation, CheckStatus};
use hyparr::{
    build_lattice, char_poly_finite_field, characteristic_polynomial, gen_coxeter_namikawa, gen_cyclic, gen_dihedral,
    gen_dihedral_even, gen_g4, gen_g8, gen_wreath, poincare_polynomial, whitney_numbers, Arrangement, Covector,
    IntPolynomial, WeylSpec,
};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use serde_json::Value;

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, what: impl Into<String>) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn hyparr(args: &[&str], stdin: Option<&str>) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hyparr"))
        .arg("--threads")
        .arg("1")
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut input = child.stdin.take().expect("piped");
        if let Some(s) = stdin {
            input.write_all(s.as_bytes()).expect("write stdin");
        }
    }
    let out = child.wait_with_output().expect("binary finishes");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

/// `gen <family> | analyze <flags> --json`, parsed.
fn pipeline(family: &[&str], flags: &[&str]) -> Result<Value, String> {
    let mut gen_args = vec!["gen"];
    gen_args.extend_from_slice(family);
    let (code, text) = hyparr(&gen_args, None);
    ensure(code == 0, format!("gen exited with {code}"))?;
    let mut an = vec!["analyze", "--json"];
    an.extend_from_slice(flags);
    let (code, json) = hyparr(&an, Some(&text));
    ensure(code == 0, format!("analyze exited with {code}"))?;
    serde_json::from_str(&json).map_err(|e| e.to_string())
}

fn poly(v: &Value) -> Vec<i64> {
    v.as_array()
        .map(|a| a.iter().map(|c| c.as_str().and_then(|s| s.parse().ok()).unwrap_or(i64::MIN)).collect())
        .unwrap_or_default()
}

fn check_g8() -> Outcome {
    let r = pipeline(&["g8"], &["--poincare", "--free", "--stability", "--e-count"])?;
    let exp = IntPolynomial::product(&[
        IntPolynomial::linear_factor(1),
        IntPolynomial::linear_factor(11),
        IntPolynomial::linear_factor(13),
    ]);
    let exp: Vec<i64> = exp.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect();
    ensure(poly(&r["poincare"]["coefficients"]) == exp, format!("pi = {}", r["poincare"]["expanded"]))?;
    ensure(r["poincare"]["factored"] == "(1 + t)(1 + 11t)(1 + 13t)", "factored form")?;
    ensure(r["freeness"]["status"] == "InductivelyFree", format!("freeness {}", r["freeness"]["status"]))?;
    ensure(r["freeness"]["exponents"] == serde_json::json!([1, 11, 13]), "free exponents")?;
    ensure(r["stability"]["stable"] == true, "S4-stability")?;
    ensure(r["stability"]["coxeter_contained"] == true, "Coxeter containment")?;
    let e = &r["e_count"];
    ensure(e["numerator"] == "336" && e["denominator"] == "24" && e["value"] == "14", format!("E = {e}"))?;
    let row = audit_table1().into_iter().find(|row| row.group == "G8").ok_or("no G8 row")?;
    ensure(row.printed_e == BigInt::from(14), "Table 1 G8 row")
}

fn check_g4() -> Outcome {
    let r = pipeline(&["g4"], &["--poincare", "--stability", "--e-count"])?;
    ensure(poly(&r["poincare"]["coefficients"]) == vec![1, 6, 5], format!("pi = {}", r["poincare"]["expanded"]))?;
    ensure(r["e_count"]["value"] == "2", "E")?;
    ensure(r["stability"]["weyl"] == "S3" && r["stability"]["stable"] == true, "S3-stability")?;
    ensure(r["stability"]["t_hyperplanes_are_roots"] == true, "T-hyperplanes are the A2 roots")
}

fn check_dihedral() -> Outcome {
    let r = pipeline(&["dihedral"], &["--basis", "--e-count", "--orbits"])?;
    ensure(r["os"]["total"] == 8, "OS dimension")?;
    ensure(r["os"]["graded_dims"] == serde_json::json!([1, 4, 3]), "nbc sizes")?;
    ensure(r["e_count"]["value"] == "2", "E")?;
    // Hyperplanes are k1, k2, k1 + k2, k1 - k2 in this order.
    let arr = gen_dihedral_even();
    let idx = |row: &[i64]| arr.index_of(&Covector::from_i64(row).unwrap()).unwrap();
    let mut expected = vec![vec![idx(&[1, 0])], vec![idx(&[0, 1])], vec![idx(&[1, 1]), idx(&[1, -1])]];
    expected.iter_mut().for_each(|o| o.sort());
    expected.sort();
    ensure(r["orbits"] == serde_json::json!(expected), format!("orbits {}", r["orbits"]))
}

fn check_table1() -> Outcome {
    let audit = audit_table1();
    let passing: Vec<&str> = audit.iter().filter(|r| r.passes_core()).map(|r| r.group.as_str()).collect();
    ensure(passing.len() == 13, format!("{} rows pass", passing.len()))?;
    ensure(!passing.contains(&"G9") && !passing.contains(&"G15"), "G9 or G15 passes")?;
    let g9 = audit.iter().find(|r| r.group == "G9").ok_or("no G9")?;
    ensure(
        g9.computed_e == Some(BigInt::from(314)) && g9.printed_e == BigInt::from(2),
        format!("G9 computed {:?}", g9.computed_e),
    )?;
    ensure(g9.status(AuditCheck::TerminalizationCount) == CheckStatus::Fail, "G9 e-count status")?;
    let g15 = audit.iter().find(|r| r.group == "G15").ok_or("no G15")?;
    ensure(g15.computed_e.is_none(), "G15 quotient should be non-integral")?;
    ensure(g15.status(AuditCheck::TerminalizationCount) == CheckStatus::Fail, "G15 e-count status")?;
    let (code, json) = hyparr(&["audit-table", "--json"], None);
    let v: Value = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    ensure(code == 0 && v["rows_passing_core"] == 13, "audit-table command")
}

fn corpus() -> Vec<Arrangement> {
    let mut out = Vec::new();
    for ell in 2..=4 {
        out.push(gen_cyclic(ell).unwrap());
        for n in 2..=3 {
            out.push(gen_wreath(&format!("A{}", ell - 1), ell, n).unwrap());
        }
    }
    for m in 3..=4 {
        out.push(gen_dihedral(m).unwrap());
    }
    out.push(gen_dihedral_even());
    for w in ["S2", "S3", "S4", "S2xS2", "S2xS3", "S2xS2xS2"] {
        out.push(gen_coxeter_namikawa(&w.parse().unwrap()));
    }
    out.push(gen_g4());
    out.push(gen_g8());
    out
}

fn check_finite_field() -> Outcome {
    for arr in corpus() {
        let name = arr.label.clone().unwrap_or_default();
        let primes = admissible_primes(&arr, 4, 5).map_err(|e| format!("{name}: {e}"))?;
        let ff = char_poly_finite_field(&arr, &primes).map_err(|e| format!("{name}: {e}"))?;
        let chi = characteristic_polynomial(&build_lattice(&arr));
        ensure(ff == chi, format!("{name}: {ff} vs {chi}"))?;
    }
    Ok(())
}

fn small_arrangement() -> impl Strategy<Value = Arrangement> {
    (1usize..=4).prop_flat_map(|d| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, d), 1..=7).prop_map(move |rows| {
            let rows: Vec<Covector> = rows.iter().filter_map(|r| Covector::from_i64(r).ok()).collect();
            let rows = if rows.is_empty() { vec![Covector::from_i64(&vec![1; d]).unwrap()] } else { rows };
            Arrangement::new(d, rows).unwrap()
        })
    })
}

fn laid_out() -> impl Strategy<Value = (WeylSpec, Arrangement)> {
    prop::collection::vec(2usize..=4, 1..=2).prop_flat_map(|factors| {
        let spec = WeylSpec::new(factors).unwrap();
        let d = spec.dim();
        prop::collection::vec(prop::collection::vec(-2i64..=2, d), 1..=5).prop_map(move |rows| {
            let rows: Vec<Covector> = rows.iter().filter_map(|r| Covector::from_i64(r).ok()).collect();
            let rows = if rows.is_empty() { vec![Covector::from_i64(&vec![1; d]).unwrap()] } else { rows };
            (spec.clone(), Arrangement::new(d, rows).unwrap().with_layout(spec.clone()))
        })
    })
}

fn run_property<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Outcome {
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut runner = TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, rng);
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn check_properties() -> Outcome {
    run_property("mobius zero-sum", 96, small_arrangement(), |arr| {
        let lat = build_lattice(&arr);
        for x in 1..lat.len() {
            let s: i64 = (0..lat.len()).filter(|&z| lat.is_below(z, x)).map(|z| lat.flat(z).mobius).sum();
            prop_assert_eq!(s, 0);
        }
        Ok(())
    })?;
    run_property("degree equals rank", 96, small_arrangement(), |arr| {
        let ess = arr.essentialize();
        let p = poincare_polynomial(&build_lattice(&ess));
        prop_assert_eq!(p.degree(), Some(ess.rank()));
        prop_assert_eq!(ess.rank(), ess.dim());
        Ok(())
    })?;
    let with_orders = small_arrangement().prop_flat_map(|arr| {
        let n = arr.len();
        let order = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
        (Just(arr), prop::collection::vec(order, 3))
    });
    run_property("nbc counts equal Whitney numbers", 64, with_orders, |(arr, orders)| {
        let w: Vec<u64> = whitney_numbers(&build_lattice(&arr)).iter().map(|c| u64::try_from(c).unwrap()).collect();
        for order in orders {
            prop_assert_eq!(nbc_counts(&arr, &order).unwrap(), w.clone());
        }
        Ok(())
    })?;
    run_property("exponent sum", 64, small_arrangement(), |arr| {
        let v = inductive_freeness(&arr, DEFAULT_BUDGET);
        if v.status == FreenessStatus::InductivelyFree {
            let sum: u64 = v.exponents.as_ref().unwrap().iter().sum();
            prop_assert_eq!(sum, arr.len() as u64);
        }
        Ok(())
    })?;
    let words = laid_out().prop_flat_map(|(spec, arr)| {
        let n_gens = BlockPermutation::generators(&spec).len();
        let word = prop::collection::vec(0..n_gens, 0..=6);
        (Just(spec), Just(arr), word.clone(), word)
    });
    run_property("action composition law", 96, words, |(spec, arr, g, h)| {
        let gens = BlockPermutation::generators(&spec);
        let word = |w: &[usize]| w.iter().fold(BlockPermutation::identity(&spec), |acc, &i| acc.compose(&gens[i]));
        let (g, h) = (word(&g), word(&h));
        let lhs = act(&g.compose(&h), &arr).unwrap();
        let rhs = act(&g, &act(&h, &arr).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(act(&BlockPermutation::identity(&spec), &arr).unwrap(), arr.sorted());
        Ok(())
    })
}

fn check_wreath() -> Outcome {
    let w = gen_wreath("A1", 2, 2).map_err(|e| e.to_string())?;
    let d = gen_dihedral_even();
    ensure(w.layout == d.layout && w.same_hyperplanes(&d), "wreath(Z2, 2) differs from the dihedral lines")?;
    let (ws, ds) = (w.sorted(), d.sorted());
    ensure(ws.hyperplanes() == ds.hyperplanes() && ws.tags() == ds.tags(), "T/F tags differ")?;
    for ell in 2..=5 {
        for n in 2..=4 {
            let a = gen_wreath(&format!("A{}", ell - 1), ell, n).map_err(|e| e.to_string())?;
            let expected = 1 + ell * (ell - 1) / 2 + (n - 1) * ell * (ell - 1);
            ensure(a.len() == expected, format!("ell {ell}, n {n}: {} hyperplanes, expected {expected}", a.len()))?;
            let spec = a.layout.clone().ok_or("missing layout")?;
            ensure(is_stable(&a, &spec).map_err(|e| e.to_string())?.stable, format!("ell {ell}, n {n} unstable"))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 G8 pipeline", Duration::from_secs(10), check_g8),
        ("2 G4 pipeline", Duration::from_secs(1), check_g4),
        ("3 dihedral pipeline", Duration::from_secs(1), check_dihedral),
        ("4 Table 1 audit", Duration::from_secs(1), check_table1),
        ("5 finite-field oracle", Duration::from_secs(60), check_finite_field),
        ("6 property suite", Duration::from_secs(60), check_properties),
        ("7 wreath cross-check", Duration::from_secs(5), check_wreath),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| ensure(elapsed <= limit, format!("took {elapsed:.2?}, limit {limit:?}")));
        match result {
            Ok(()) => println!("PASS criterion {name} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
