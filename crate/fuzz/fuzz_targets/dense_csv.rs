#![no_main]

use eigenid_core::io::{parse_dense_csv, write_dense_csv};
use eigenid_core::matrix::SymmetryPolicy;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for policy in [SymmetryPolicy::Strict, SymmetryPolicy::Symmetrize] {
        if let Ok(m) = parse_dense_csv(text, policy) {
            let again = parse_dense_csv(&write_dense_csv(&m), SymmetryPolicy::Strict)
                .expect("written matrix must parse");
            assert_eq!(again.as_slice(), m.as_slice());
        }
    }
});
