//! Fuzzes the JSON decoder for zero-dimensional parametrizations: decoding
//! and validation must never panic, and small validated parametrizations
//! must enumerate their rational points without panicking.

#![no_main]

use libfuzzer_sys::fuzz_target;
use symreal::zerodim::ZeroDimParam;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(param) = serde_json::from_str::<ZeroDimParam>(text) {
            if param.validate().is_ok() && param.q().degree().is_some_and(|d| d <= 6) {
                let _ = param.rational_points();
            }
        }
    }
});
