#![no_main]
use anqg::scalar::parse_scalar;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(x) = parse_scalar(data) {
        let again = parse_scalar(&x.to_string()).expect("display output parses");
        assert_eq!(again, x);
    }
});
