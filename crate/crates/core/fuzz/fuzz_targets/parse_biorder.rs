#![no_main]

use idemgen::biorder::{validate_biorder, Biorder};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(b) = Biorder::from_json(text) {
        let _ = validate_biorder(&b);
        let back = Biorder::from_json(&b.to_json()).expect("round trip");
        assert_eq!(back.to_json(), b.to_json());
    }
});
