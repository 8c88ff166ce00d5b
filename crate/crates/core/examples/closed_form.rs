//! Checks the catalogued minor and discriminant formulas at random directions.

use jnr::registry::{self, closed_form_check};

fn main() -> jnr::Result<()> {
    for entry in registry::all().iter().filter(|e| !e.closed_form.is_empty()) {
        let report = closed_form_check(entry, 500, 0)?;
        for c in &report.checks {
            println!(
                "{:<14} {:<28} {:.2e}  {}",
                entry.id,
                c.label,
                c.max_deviation,
                if c.passed { "ok" } else { "FAIL" }
            );
        }
    }
    Ok(())
}
