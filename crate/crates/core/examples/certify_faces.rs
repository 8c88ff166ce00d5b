//! Scans for large faces, then certifies that none were missed.

use jnr::classify::{certify_no_other_faces, check_intersection_structure, scan_large_faces};
use jnr::registry;

fn main() -> jnr::Result<()> {
    let id = std::env::args().nth(1).unwrap_or_else(|| "ex04".into());
    let entry = registry::get(&id)?;
    let faces = scan_large_faces(&entry.tuple)?;
    for f in &faces.faces {
        println!("{:?} face at {:.6?}", f.kind, f.normal);
    }
    let cert = certify_no_other_faces(&entry.tuple, &faces)?;
    println!(
        "{:?}: min SOS {:.3e} over {} directions ({} inside caps)",
        cert.status, cert.min_sos, cert.grid_size, cert.excluded
    );
    let s = check_intersection_structure(&entry.tuple, &faces.faces);
    println!("{} face pairs checked, structure {}", s.pairs.len(), if s.passed { "ok" } else { "violated" });
    Ok(())
}
