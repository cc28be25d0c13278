#![no_main]

use idemgen::table::{validate_table, MulTable};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = MulTable::from_json(text) {
        // Accepted tables must have every entry in range and survive a round trip.
        if t.len() <= 24 {
            let _ = validate_table(&t);
        }
        let back = MulTable::from_json(&t.to_json()).expect("round trip");
        assert_eq!(back, t);
    }
});
