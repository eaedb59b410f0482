//! Subcommand implementations for the `latgap` binary. Each command returns
//! a JSON-serialisable report plus the process exit code.

pub mod bench;
pub mod commands;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Exit statuses shared by every subcommand.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const OUT_OF_RANGE: i32 = 2;
    pub const INVALID_INSTANCE: i32 = 3;
    pub const BUDGET: i32 = 4;
    pub const LEMMA_VIOLATION: i32 = 5;
}

/// `sha256:<hex>` of the given bytes.
pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Pretty JSON followed by a newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialise");
    s.push('\n');
    s
}
