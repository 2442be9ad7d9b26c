#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = beamsplit::cli::parse_joint_descriptor(text);
        let _ = beamsplit::cli::parse_single_descriptor(text);
    }
});
