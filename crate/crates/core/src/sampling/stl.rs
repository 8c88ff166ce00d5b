//! Binary STL output: an 80-byte header, a little-endian `u32` triangle
//! count, then 50 bytes per triangle (normal, three vertices as `f32`, and a
//! zero attribute word).

use std::io::Write;
use std::path::Path;

use crate::error::Result;

use super::TriangleMesh;

/// Must not begin with `solid`, which readers take as the ASCII variant.
const HEADER: &[u8] = b"jnr binary STL";

pub fn write_stl<W: Write>(mesh: &TriangleMesh, mut w: W) -> Result<()> {
    let mut header = [0u8; 80];
    header[..HEADER.len()].copy_from_slice(HEADER);
    w.write_all(&header)?;
    w.write_all(&(mesh.triangles.len() as u32).to_le_bytes())?;
    for (t, n) in mesh.triangles.iter().zip(mesh.normals()) {
        let mut rec = [0u8; 50];
        let words = n.into_iter().chain(t.iter().flat_map(|&i| mesh.vertices[i]));
        for (k, x) in words.enumerate() {
            rec[4 * k..4 * k + 4].copy_from_slice(&(x as f32).to_le_bytes());
        }
        w.write_all(&rec)?;
    }
    w.flush()?;
    Ok(())
}

pub fn export_stl(mesh: &TriangleMesh, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_stl(mesh, std::io::BufWriter::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let empty = TriangleMesh { vertices: vec![], triangles: vec![] };
        let mut buf = Vec::new();
        write_stl(&empty, &mut buf).unwrap();
        assert_eq!(buf.len(), 84);
        assert!(!buf.starts_with(b"solid"));

        let tet = TriangleMesh {
            vertices: vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            triangles: vec![[0, 2, 1], [0, 1, 3], [1, 2, 3], [2, 0, 3]],
        };
        let mut buf = Vec::new();
        write_stl(&tet, &mut buf).unwrap();
        assert_eq!(buf.len(), 284);
        assert_eq!(&buf[80..84], &4u32.to_le_bytes());
        // First facet normal points to -z.
        assert_eq!(&buf[84 + 8..84 + 12], &(-1.0f32).to_le_bytes());
    }
}
