//! The class of a range does not change under unitary conjugation or
//! invertible affine maps.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use jnr::classify::classify;
use jnr::pencil::{apply_affine, apply_unitary, AffineMap};
use jnr::registry;
use jnr::sampling::random_unitary;

fn main() -> jnr::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let entry = registry::get("ex12")?;
    let u = random_unitary(3, &mut rng);
    let a = AffineMap::new(
        DMatrix::from_row_slice(3, 3, &[1.0, 0.5, 0.0, 0.0, 2.0, -1.0, 0.3, 0.0, 1.0]),
        vec![1.0, -2.0, 0.5],
    )?;
    println!("original:  {}", classify(&entry.tuple)?.label);
    println!("unitary:   {}", classify(&apply_unitary(&entry.tuple, &u)?)?.label);
    println!("affine:    {}", classify(&apply_affine(&entry.tuple, &a)?)?.label);
    Ok(())
}
