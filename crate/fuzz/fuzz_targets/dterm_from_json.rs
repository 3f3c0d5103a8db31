#![no_main]

use libfuzzer_sys::fuzz_target;
use veronese_rank3::plucker::DTerm;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(t) = DTerm::from_json(src) {
        assert_eq!(DTerm::from_json(&t.to_json()).expect("round trip"), t);
    }
});
