//! State files come from disk and may be malformed or adversarial: decoding
//! plus reconstruction must fail cleanly, never panic or over-allocate.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(file) = beamsplit::cli::parse_state_file(data) {
        let _ = file.to_single();
        let _ = file.to_joint();
    }
});
