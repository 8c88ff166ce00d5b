//! Support function of a joint numerical range along a few directions.

use jnr::pencil::support;
use jnr::registry;

fn main() -> jnr::Result<()> {
    let entry = registry::get("ex12")?;
    for u in [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 2.0, 0.0]] {
        let h = support(&entry.tuple, &u)?;
        println!("h({:>4}, {:>4}, {:>4}) = {h:+.6}", u[0], u[1], u[2]);
    }
    Ok(())
}
