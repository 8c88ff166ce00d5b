//! Classifies every catalogued triple and compares with the expected class.

use std::time::Instant;

use jnr::classify::classify;
use jnr::registry;

fn main() {
    for entry in registry::all() {
        let start = Instant::now();
        let got = match classify(&entry.tuple) {
            Ok(c) => c.label.class_name(),
            Err(e) => format!("({e})"),
        };
        let want = entry.expected_class.unwrap_or("-");
        let mark = if entry.expected_class.is_none() || got == want { "ok" } else { "MISMATCH" };
        println!("{:<14} {:<12} {:<12} {:>7.1?} {mark}", entry.id, got, want, start.elapsed());
    }
}
