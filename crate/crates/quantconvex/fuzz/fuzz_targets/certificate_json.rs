//! Fuzzes the certificate JSON decoder: arbitrary bytes must never panic,
//! and parsed certificates must round-trip through serialization.

#![no_main]

use libfuzzer_sys::fuzz_target;
use quantconvex::core::Certificate;

fuzz_target!(|data: &[u8]| {
    let Ok(cert) = serde_json::from_slice::<Certificate>(data) else { return };
    let json = serde_json::to_string(&cert).expect("parsed certificate must serialize");
    let back: Certificate = serde_json::from_str(&json).expect("serialized certificate must reparse");
    assert_eq!(back, cert);
});
