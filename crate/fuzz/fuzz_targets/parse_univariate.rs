//! Fuzzes the univariate parser: parsing must never panic, and every
//! accepted polynomial must honor the one-variable guarantee that the
//! dense univariate conversion relies on.

#![no_main]

use libfuzzer_sys::fuzz_target;
use symreal::poly::Polynomial;
use symreal::realroot::UniPoly;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(p) = Polynomial::parse_univariate(text) {
            assert!(p.nvars() <= 1, "univariate parse produced extra variables");
            let dense = UniPoly::from_polynomial(&p); // must not panic
            assert_eq!(
                dense.to_polynomial(),
                p,
                "dense round trip changed the polynomial"
            );
        }
    }
});
