#![no_main]

use libfuzzer_sys::fuzz_target;
use veronese_rank3::poly::{parse_poly, parse_poly_infer};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_poly_infer(src) {
        let again = parse_poly(&p.to_string(), p.roster()).expect("display output parses");
        assert_eq!(p, again);
    }
});
