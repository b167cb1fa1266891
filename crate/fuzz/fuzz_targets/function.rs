#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    if let Ok(text) = std::str::from_utf8(rest) {
        let n = (n % 16) as usize;
        if let Ok(f) = weaksub::instance::parse_function(text, Some(n)) {
            let _ = f.evaluate(&weaksub::Subset::full(f.n()));
        }
    }
});
