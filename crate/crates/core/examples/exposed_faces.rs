//! Exposed faces of ex12 at its catalogued normals and at a generic direction.

use jnr::pencil::{exposed_face, ExposedFace};
use jnr::registry;
use jnr::tolerances::Tolerances;

fn main() -> jnr::Result<()> {
    let entry = registry::get("ex12")?;
    let tol = Tolerances::default();
    for u in [[-1.0, 0.0, 0.0], [1.0, 2.0, 0.0], [1.0, -2.0, 0.0], [0.3, 0.4, 0.5]] {
        match exposed_face(&entry.tuple, &u, &tol)? {
            ExposedFace::Face(f) => {
                println!("{u:?}: {:?}, support {:.6}, centre {:.4?}", f.kind, f.support_value, f.center);
                for g in &f.generators {
                    println!("    semi-axis {g:.4?}");
                }
            }
            ExposedFace::Full => println!("{u:?}: the whole range"),
        }
    }
    Ok(())
}
