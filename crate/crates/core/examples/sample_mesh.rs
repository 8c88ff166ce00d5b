//! Samples pure states, meshes the hull and writes a binary STL.

use jnr::registry;
use jnr::sampling::{convex_hull_points, export_stl, sample_states};

fn main() -> jnr::Result<()> {
    let id = std::env::args().nth(1).unwrap_or_else(|| "ex12".into());
    let entry = registry::get(&id)?;
    let cloud = sample_states(&entry.tuple, 100_000, 0)?;
    let mesh = convex_hull_points(&cloud)?;
    println!(
        "{} points -> {} vertices, {} triangles, volume {:.5}, watertight {}",
        cloud.len(),
        mesh.vertices.len(),
        mesh.triangles.len(),
        mesh.volume(),
        mesh.is_watertight()
    );
    let path = std::env::temp_dir().join(format!("{id}.stl"));
    export_stl(&mesh, &path)?;
    println!("wrote {}", path.display());
    Ok(())
}
