//! How often a random triple of 3×3 matrices has an oval range.

use jnr::io::{cmd_census, Report};
use jnr::sampling::Ensemble;
use jnr::tolerances::Tolerances;

fn main() -> jnr::Result<()> {
    let count = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50);
    print!("{}", cmd_census(count, 0, Ensemble::Gue, 3, &Tolerances::default())?.to_text());
    Ok(())
}
