#![no_main]

use libfuzzer_sys::fuzz_target;
use swancond::format::{laurent_to_text, multi_to_text, parse_laurent, parse_multi};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for p in [2, 3, 5, 7] {
        if let Ok(f) = parse_laurent(p, text) {
            assert_eq!(parse_laurent(p, &laurent_to_text(&f)).unwrap(), f);
        }
        if let Ok(f) = parse_multi(p, None, text) {
            assert_eq!(parse_multi(p, Some(f.nvars()), &multi_to_text(&f)).unwrap(), f);
        }
    }
});
