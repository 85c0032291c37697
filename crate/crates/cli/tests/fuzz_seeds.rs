//! Replays the job-config fuzz corpus on stable.

use anqg_cli::{Command, JobConfig};
use std::path::PathBuf;

#[test]
fn job_config_seeds() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/parse_job_config");
    let mut parsed = 0;
    let mut n = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let Ok(text) = String::from_utf8(std::fs::read(entry.unwrap().path()).unwrap()) else { continue };
        n += 1;
        if let Ok(c) = JobConfig::from_json(&text) {
            parsed += 1;
            for cmd in Command::ALL {
                let _ = c.clone().resolve(cmd);
            }
        }
    }
    assert!(n > 0 && parsed > 0);
}
