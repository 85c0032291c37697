#![no_main]
use anqg::braided::parse_braid_word;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(w) = parse_braid_word(data) {
        assert!(w.iter().all(|&g| g != 0));
    }
});
