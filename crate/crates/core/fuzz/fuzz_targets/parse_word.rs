#![no_main]

use idemgen::biorder::extract_biorder;
use idemgen::corpus::rectangular_band;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let b = extract_biorder(&rectangular_band(2, 2)).expect("band");
    if let Ok(w) = b.parse_word(text) {
        assert!(w.iter().all(|&e| e < b.len()));
        assert_eq!(b.parse_word(&b.format_word(&w)).expect("round trip"), w);
    }
});
