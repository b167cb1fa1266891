#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    if let Ok(text) = std::str::from_utf8(rest) {
        let n = (n % 12) as usize;
        if let Ok(m) = weaksub::instance::parse_matroid(text, n) {
            let _ = m.is_independent(&weaksub::Subset::full(n));
        }
    }
});
