//! A cone over a Bloch ball: one corner, and infinitely many segments.

use jnr::classify::classify;
use jnr::hermitian::{HermitianMatrix, C64};
use jnr::pencil::MatrixTuple;

fn direct_sum(a: f64, x: f64, y: f64, z: f64) -> HermitianMatrix {
    let o = C64::new(0.0, 0.0);
    let r = |v| C64::new(v, 0.0);
    HermitianMatrix::new(3, vec![r(a), o, o, o, r(z), C64::new(x, -y), o, C64::new(x, y), r(-z)]).unwrap()
}

fn main() -> jnr::Result<()> {
    for (label, third) in [("ball", direct_sum(0.0, 0.0, 0.0, 1.0)), ("disc", direct_sum(1.0, 0.0, 0.0, 0.0))] {
        let f = MatrixTuple::new(vec![direct_sum(2.0, 1.0, 0.0, 0.0), direct_sum(0.0, 0.0, 1.0, 0.0), third])?;
        let c = classify(&f)?;
        println!("cone over a {label}: {}", c.label);
        for k in &c.corners {
            println!("  corner at {:.4?}, block rank {:?}", k.point, k.block_range.as_ref().map(|r| r.rank()));
        }
    }
    Ok(())
}
