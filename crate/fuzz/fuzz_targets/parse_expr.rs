//! Fuzzes the multivariate expression parser: parsing must never panic,
//! and anything it accepts must survive a display/re-parse round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use symreal::poly::Polynomial;

fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else {
        return;
    };
    let nvars = (head % 8) as usize + 1;
    if let Ok(text) = std::str::from_utf8(rest) {
        if let Ok(p) = Polynomial::parse(text, nvars) {
            let shown = p.to_string();
            let again = Polynomial::parse(&shown, nvars).expect("display must re-parse");
            assert_eq!(again, p, "round trip changed the polynomial");
        }
    }
});
