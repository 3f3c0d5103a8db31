#![no_main]

use libfuzzer_sys::fuzz_target;
use veronese_rank3::qmap::AnyAlphaTable;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(t) = AnyAlphaTable::from_json(src) {
        let json = t.to_json();
        assert_eq!(AnyAlphaTable::from_json(&json).expect("round trip").to_json(), json);
    }
});
