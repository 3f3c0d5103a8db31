#![no_main]

use libfuzzer_sys::fuzz_target;
use veronese_rank3::groebner::Ideal;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok((ideal, order)) = Ideal::from_json(src) {
        let json = ideal.to_json(Some(order));
        let (again, order2) = Ideal::from_json(&json).expect("round trip");
        assert_eq!((again.to_json(Some(order2)), order2), (json, order));
    }
});
