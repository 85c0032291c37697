#![no_main]
use anqg::deform::{parse_ug_element, LieAlgebra, TruncatedUg};
use libfuzzer_sys::fuzz_target;
use std::sync::OnceLock;

static UG: OnceLock<TruncatedUg> = OnceLock::new();

fuzz_target!(|data: &str| {
    let ug = UG.get_or_init(|| TruncatedUg::new(LieAlgebra::sl2(), 4));
    if let Ok(x) = parse_ug_element(data, ug) {
        assert!(x.degree() <= ug.max_degree());
    }
});
