#![no_main]

use idemgen::group::{GroupPresentation, NormalizedPresentation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = GroupPresentation::from_json(text) {
        let back = GroupPresentation::from_json(&p.to_json()).expect("round trip");
        assert_eq!(back, p);
    }
    if let Ok(np) = NormalizedPresentation::from_json(text) {
        NormalizedPresentation::from_json(&np.to_json()).expect("round trip");
    }
});
