#![no_main]

use libfuzzer_sys::fuzz_target;
use swancond::witt::cache;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(ctx) = cache::parse(text) {
        assert_eq!(cache::parse(&cache::serialize(&ctx)).unwrap().length(), ctx.length());
    }
});
