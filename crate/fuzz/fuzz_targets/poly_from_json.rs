#![no_main]

use libfuzzer_sys::fuzz_target;
use veronese_rank3::json::{poly_from_json, poly_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(p) = poly_from_json(src) {
        assert_eq!(poly_from_json(&poly_to_json(&p)).expect("round trip"), p);
    }
});
