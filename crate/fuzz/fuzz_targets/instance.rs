#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(inst) = weaksub::instance::parse_instance(text) {
            let _ = inst.function.evaluate(&weaksub::Subset::full(inst.function.n()));
        }
    }
});
