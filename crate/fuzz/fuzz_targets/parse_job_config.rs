#![no_main]
use anqg_cli::{Command, JobConfig};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(c) = JobConfig::from_json(data) {
        for cmd in Command::ALL {
            let _ = c.clone().resolve(cmd);
        }
    }
});
