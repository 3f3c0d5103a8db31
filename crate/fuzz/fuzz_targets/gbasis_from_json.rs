#![no_main]

use libfuzzer_sys::fuzz_target;
use veronese_rank3::groebner::GBasis;

// Decoding re-verifies the basis, so inputs are bounded by the JSON limits.
fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(gb) = GBasis::from_json(src) {
        assert!(gb.verify());
        let json = gb.to_json();
        assert_eq!(GBasis::from_json(&json).expect("round trip").to_json(), json);
    }
});
