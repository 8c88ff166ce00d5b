//! The discriminant of a 3×3 hermitian matrix and its sum-of-squares form.

use jnr::hermitian::{discriminant3, sos_certificate, HermitianMatrix};

fn main() -> jnr::Result<()> {
    let m = HermitianMatrix::diag(&[1.0, 2.0, 3.0]);
    let cert = sos_certificate(&m)?;
    println!("discriminant {}", discriminant3(&m)?);
    println!("sum of {} squared minors {}", cert.minors.len(), cert.total);
    let mut top: Vec<_> = cert.minors.iter().filter(|(_, v)| **v > 0.0).collect();
    top.sort_by(|a, b| b.1.total_cmp(a.1));
    for (idx, v) in top.iter().take(5) {
        println!("  |M{{{},{},{}}}|² = {v}", idx[0], idx[1], idx[2]);
    }
    Ok(())
}
