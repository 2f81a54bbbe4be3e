#![no_main]

use libfuzzer_sys::fuzz_target;
use swancond::asw::{swan_conductor, AswCharacter};
use swancond::format::{parse_witt, witt_to_text};
use swancond::witt::{WittContext, WittVector};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(comps) = parse_witt(2, text) else { return };
    assert_eq!(parse_witt(2, &witt_to_text(&comps)).unwrap(), comps);
    // Small payloads also go through the conductor computation.
    let small = comps.len() <= 2 && comps.iter().all(|c| c.terms().all(|(e, _)| e.abs() <= 64));
    if small {
        let ctx = WittContext::shared(2, comps.len() - 1).unwrap();
        let chi = AswCharacter::from_witt(WittVector::new(ctx, comps).unwrap());
        assert!(swan_conductor(&chi).unwrap().certified);
    }
});
