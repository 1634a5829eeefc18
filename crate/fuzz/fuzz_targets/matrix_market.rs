#![no_main]

use eigenid_core::io::{parse_matrix_market_limited, write_matrix_market};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // A small cap keeps allocation bounded; the declared size drives it.
    if let Ok(m) = parse_matrix_market_limited(text, 64) {
        let again = parse_matrix_market_limited(&write_matrix_market(&m), 64)
            .expect("written matrix must parse");
        assert_eq!(again.as_slice(), m.as_slice());
    }
});
