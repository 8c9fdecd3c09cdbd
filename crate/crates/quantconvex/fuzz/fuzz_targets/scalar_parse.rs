//! Fuzzes the rational/approximate scalar text parser: arbitrary input must
//! never panic, and accepted exact values must round-trip through render.

#![no_main]

use libfuzzer_sys::fuzz_target;
use quantconvex::scalar::Scalar;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(value) = Scalar::parse(text) {
        if value.is_exact() {
            let back = Scalar::parse(&value.render()).expect("rendered scalar must reparse");
            assert_eq!(back, value);
        }
    }
});
