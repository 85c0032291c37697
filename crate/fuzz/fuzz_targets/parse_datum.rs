#![no_main]
use anqg::cartan::parse_datum_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(d) = parse_datum_json(data) {
        for i in 0..d.rank() {
            assert_eq!(d.cartan_entry(i, i), 2);
        }
    }
});
