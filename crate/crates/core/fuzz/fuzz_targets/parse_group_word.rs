#![no_main]

use idemgen::group::{free_reduce, GroupPresentation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let p = GroupPresentation::new(vec!["a".into(), "b".into(), "[1,e12]".into()]);
    if let Ok(w) = p.parse_word(text) {
        assert_eq!(p.parse_word(&p.format_word(&w)).expect("round trip"), w);
        let r = free_reduce(&w);
        assert_eq!(free_reduce(&r), r);
    }
});
