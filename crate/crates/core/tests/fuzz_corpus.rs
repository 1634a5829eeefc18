//! Replays the checked-in fuzz seeds through the same checks the fuzz targets make.

use std::fs;
use std::path::PathBuf;

use eigenid_core::bench::{parse_bench_csv, parse_plot_csv};
use eigenid_core::io::{
    parse_dense_csv, parse_matrix_market_limited, write_dense_csv, write_matrix_market,
};
use eigenid_core::matrix::SymmetryPolicy;

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let text = fs::read_to_string(&path).unwrap();
            (path, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn dense_csv_seeds_round_trip() {
    let mut parsed = 0;
    for (_, text) in seeds("dense_csv") {
        for policy in [SymmetryPolicy::Strict, SymmetryPolicy::Symmetrize] {
            if let Ok(m) = parse_dense_csv(&text, policy) {
                let again = parse_dense_csv(&write_dense_csv(&m), SymmetryPolicy::Strict).unwrap();
                assert_eq!(again.as_slice(), m.as_slice());
                parsed += 1;
            }
        }
    }
    assert!(parsed > 0);
}

#[test]
fn matrix_market_seeds_round_trip() {
    let mut parsed = 0;
    for (path, text) in seeds("matrix_market") {
        match parse_matrix_market_limited(&text, 64) {
            Ok(m) => {
                let again = parse_matrix_market_limited(&write_matrix_market(&m), 64).unwrap();
                assert_eq!(again.as_slice(), m.as_slice(), "{}", path.display());
                parsed += 1;
            }
            Err(_) => assert!(path.ends_with("upper.mtx"), "{} rejected", path.display()),
        }
    }
    assert!(parsed > 0);
}

#[test]
fn report_seeds_parse() {
    for (path, text) in seeds("bench_csv") {
        assert!(
            !parse_bench_csv(&text).unwrap().is_empty(),
            "{}",
            path.display()
        );
    }
    for (path, text) in seeds("plot_csv") {
        assert!(
            !parse_plot_csv(&text).unwrap().is_empty(),
            "{}",
            path.display()
        );
    }
}
