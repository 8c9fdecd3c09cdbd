//! Fuzzes the instance JSON decoder: arbitrary bytes must never panic, and
//! instances that parse and validate must round-trip through serialization.

#![no_main]

use libfuzzer_sys::fuzz_target;
use quantconvex::oracle::Instance;

fuzz_target!(|data: &[u8]| {
    let Ok(instance) = serde_json::from_slice::<Instance>(data) else { return };
    if instance.validate().is_ok() {
        let json = serde_json::to_string(&instance).expect("valid instance must serialize");
        let back: Instance = serde_json::from_str(&json).expect("serialized instance must reparse");
        assert_eq!(back, instance);
    }
});
