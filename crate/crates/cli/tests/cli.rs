use std::process::Command;

use detchern_cli::compute::{compute, Request};
use detchern_cli::document::{Kind, OutputDocument};
use detchern_cli::run;
use detchern_cli::scan::{scan_conjectures, scan_instances};
use detchern_cli::tables::{parse_fixtures, reproduce_reference_tables, reproduce_tables};

fn detchern(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("detchern").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn binary(args: &[&str], cache: Option<&std::path::Path>) -> std::process::Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_detchern"));
    cmd.args(args).env_remove("DETCHERN_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("DETCHERN_CACHE_DIR", dir);
    }
    cmd.output().unwrap()
}

#[test]
fn csm_as_csv() {
    let (code, out, _) = detchern(&["csm", "-m", "3", "-n", "3", "-k", "1", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "9,36,78,108,96,54,18,3,0\n");
}

#[test]
fn ged_defaults_to_bare_value() {
    let (code, out, _) = detchern(&["ged", "-m", "6", "-n", "6", "-k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "17730");
}

#[test]
fn amatrix_as_markdown() {
    let (code, out, _) = detchern(&[
        "amatrix", "-m", "4", "-n", "3", "-k", "2", "--format", "markdown",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines.contains(&"| 0 | 3 | 12 | 10 | 0 | 0 |"));
    assert!(lines.contains(&"| 1 | 0 | -12 | -16 | 0 | 0 |"));
    assert!(lines.contains(&"| 2 | 0 | 0 | 6 | 0 | 0 |"));
    assert_eq!(
        lines
            .iter()
            .filter(|l| l.starts_with("| ") && !l.contains("---"))
            .count(),
        6
    );
}

#[test]
fn cycles_use_descending_h1_labels() {
    let (_, out, _) = detchern(&[
        "conormal", "-m", "2", "-n", "2", "-k", "1", "--format", "markdown",
    ]);
    assert!(
        out.starts_with("|  | h1^3 h2 | h1^2 h2^2 | h1 h2^3 |"),
        "{out}"
    );
}

#[test]
fn parameter_errors_exit_with_2() {
    assert_eq!(detchern(&["ged", "-m", "3", "-n", "4", "-k", "1"]).0, 2);
    assert_eq!(detchern(&["ged", "-m", "3", "-n", "3", "-k", "3"]).0, 2);
    assert_eq!(detchern(&["ged", "-m", "3", "-n", "3"]).0, 2);
    assert_eq!(
        detchern(&["conormal", "-m", "3", "-n", "3", "-k", "0"]).0,
        2
    );
    assert_eq!(detchern(&["milnor", "-m", "4", "-n", "3"]).0, 2);
    assert_eq!(detchern(&["nonsense"]).0, 2);
    assert_eq!(
        detchern(&["cm", "-m", "3", "-n", "3", "-k", "1", "--format", "xml"]).0,
        2
    );
}

#[test]
fn oversize_box_needs_override() {
    let out = binary(&["eu", "-m", "13", "-n", "13", "-k", "6"], None);
    assert!(out.status.success(), "Eu does not touch the Grassmannian");
    let out = binary(&["cm", "-m", "14", "-n", "13", "-k", "6"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--max-box"));
    let out = binary(
        &["amatrix", "-m", "7", "-n", "7", "-k", "3", "--max-box", "4"],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    let out = binary(
        &["amatrix", "-m", "3", "-n", "3", "-k", "1", "--max-box", "4"],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn fulton_and_milnor_take_square_size() {
    let (code, out, _) = detchern(&["milnor", "-n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "171,-54,24,0,6,0,0,0,0\n");
    let (_, out, _) = detchern(&["fulton", "-m", "2", "-n", "2"]);
    assert_eq!(out, "4,4,2,0\n");
}

#[test]
fn checks_are_reported_and_pass() {
    for kind in [
        "cm",
        "csm",
        "conormal",
        "charcycle",
        "charcycle_open",
        "ged",
        "dual_check",
        "microlocal",
    ] {
        let (code, out, err) = detchern(&[
            kind, "-m", "4", "-n", "4", "-k", "2", "--check", "--format", "json",
        ]);
        assert_eq!(code, 0, "{kind}: {err}");
        let doc = OutputDocument::from_json(&out).unwrap();
        assert!(!doc.checks.is_empty() && doc.all_checks_pass(), "{kind}");
    }
    let (code, out, _) = detchern(&["symmetry", "-m", "4", "-n", "4"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.ends_with(",pass")));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "charcycle_open",
        "-m",
        "4",
        "-n",
        "3",
        "-k",
        "1",
        "--format",
        "json",
    ];
    assert_eq!(detchern(&args).1, detchern(&args).1);
    assert!(!detchern(&args).1.contains("elapsed_ms"));
    let (_, timed, _) = detchern(&[
        "ged", "-m", "3", "-n", "3", "-k", "1", "--format", "json", "--timing",
    ]);
    assert!(timed.contains("elapsed_ms"));
}

#[test]
fn json_round_trips_for_every_kind() {
    let kinds = [
        (Kind::Cm, Request::new(3, 3, 1)),
        (Kind::Csm, Request::new(3, 3, 0)),
        (Kind::CsmOpen, Request::new(4, 3, 1)),
        (Kind::Eu, Request::new(4, 4, 1)),
        (Kind::Fulton, Request::new(3, 3, 1)),
        (Kind::Milnor, Request::new(3, 3, 1)),
        (Kind::Conormal, Request::new(4, 3, 2)),
        (Kind::Charcycle, Request::new(4, 3, 1)),
        (Kind::CharcycleOpen, Request::new(3, 3, 2)),
        (Kind::Polar, Request::new(4, 4, 1)),
        (Kind::Ged, Request::new(5, 5, 2)),
        (Kind::Microlocal, Request::new(5, 4, 2)),
        (Kind::Amatrix, Request::new(3, 3, 1)),
        (Kind::DualCheck, Request::new(4, 4, 1)),
        (Kind::Symmetry, Request::new(4, 3, 1)),
        (Kind::Scan, Request::new(4, 4, 1)),
    ];
    for (kind, req) in kinds {
        let doc = compute(kind, &req).unwrap();
        assert_eq!(doc.kind, kind);
        let parsed = OutputDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(parsed, doc, "{kind}");
    }
}

#[test]
fn huge_coefficients_stay_exact() {
    let doc = compute(Kind::Cm, &Request::new(9, 9, 1)).unwrap();
    let json = doc.to_json();
    assert!(doc
        .coefficients
        .iter()
        .all(|c| c.chars().all(|ch| ch.is_ascii_digit() || ch == '-')));
    let parsed = OutputDocument::from_json(&json).unwrap();
    let values = parsed.values().unwrap();
    assert!(values.iter().any(|v| v.bits() > 64));
    assert_eq!(parsed, doc);
}

#[test]
fn scan_enumeration() {
    let inst = scan_instances(3, 3);
    let params: Vec<_> = inst.iter().map(|t| (t.m(), t.n(), t.k())).collect();
    assert_eq!(params, [(2, 2, 1), (3, 2, 1), (3, 3, 1), (3, 3, 2)]);
    let report = scan_conjectures(4, 4).unwrap();
    assert!(report.is_clean());
    assert!(scan_conjectures(3, 4).is_err());
    assert!(scan_conjectures(3, 1).is_err());
}

#[test]
fn bundled_tables_reproduce() {
    let report = reproduce_reference_tables().unwrap();
    assert!(
        report.passed(),
        "{:?}",
        report
            .rows
            .iter()
            .filter(|r| !r.mismatches.is_empty())
            .collect::<Vec<_>>()
    );
    assert!(report.cells() > 500);
}

#[test]
fn corrupted_fixture_cell_is_flagged() {
    let rows = parse_fixtures("cm 3 3 1 : 18 54 102 126 102 54 18 4 0\nged 3 3 1 : 39\n").unwrap();
    let report = reproduce_tables(&rows);
    assert_eq!(report.cells(), 10);
    assert_eq!(report.mismatches(), 1);
    let bad = &report.rows[0].mismatches[0];
    assert_eq!(
        (bad.label.as_str(), bad.expected.as_str(), bad.got.as_str()),
        ("P^7", "4", "3")
    );
}

#[test]
fn empty_fixture_set_passes() {
    let report = reproduce_tables(&parse_fixtures("# nothing here\n\n").unwrap());
    assert!(report.passed());
    assert_eq!(report.cells(), 0);
}

#[test]
fn malformed_fixtures_are_rejected() {
    assert!(parse_fixtures("cm 3 3 : 1 2").is_err());
    assert!(parse_fixtures("bogus 3 3 1 : 1").is_err());
    assert!(parse_fixtures("cm 3 3 1 1 2").is_err());
}

#[test]
fn tables_subcommand_exit_code() {
    let (code, out, _) = detchern(&["tables"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("table,cells,mismatches\n"));
}

mod round_trip {
    use detchern_cli::document::{Basis, Check, Kind, OutputDocument};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn arb_kind() -> impl Strategy<Value = Kind> {
        proptest::sample::select(vec![
            Kind::Cm,
            Kind::Csm,
            Kind::Conormal,
            Kind::Polar,
            Kind::Ged,
            Kind::Amatrix,
            Kind::Symmetry,
        ])
    }

    fn arb_big() -> impl Strategy<Value = BigInt> {
        (any::<i64>(), any::<u64>(), 0u32..4)
            .prop_map(|(hi, lo, shift)| (BigInt::from(hi) << (64 * shift)) + BigInt::from(lo))
    }

    proptest! {
        #[test]
        fn parse_of_print_is_identity(
            kind in arb_kind(),
            m in 1usize..20,
            n in 1usize..20,
            k in proptest::option::of(0usize..20),
            values in proptest::collection::vec(arb_big(), 0..20),
            checks in proptest::collection::vec(("[a-z ()=^]{0,12}", any::<bool>()), 0..4),
            rows in proptest::option::of(proptest::collection::vec(proptest::collection::vec(arb_big(), 3), 3)),
            elapsed in proptest::option::of(any::<u64>()),
        ) {
            let labels = (0..values.len()).map(|l| format!("P^{l}")).collect();
            let mut doc = OutputDocument::new(kind, "t".into(), m, n, k, Basis::Points).with_values(labels, &values);
            doc.checks = checks.into_iter().map(|(name, passed)| Check { name, passed }).collect();
            doc.rows = rows.map(|r| r.iter().map(|row| row.iter().map(BigInt::to_string).collect()).collect());
            doc.meta.elapsed_ms = elapsed;
            let parsed = OutputDocument::from_json(&doc.to_json()).unwrap();
            prop_assert_eq!(&parsed, &doc);
            prop_assert_eq!(parsed.values().unwrap(), values);
        }
    }
}
