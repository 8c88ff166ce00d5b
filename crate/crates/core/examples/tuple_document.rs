//! Reads a tuple from JSON (entries may be constant expressions) and writes it back.

use jnr::io::TupleDocument;

const DOC: &str = r#"{
    "n": 2, "d": 2, "name": "qubit",
    "matrices": [
        [[[0, 0], ["1/sqrt(2)", 0]], [["1/sqrt(2)", 0], [0, 0]]],
        [[["1/2", 0], [0, 0]], [[0, 0], ["-1/2", 0]]]
    ]
}"#;

fn main() -> jnr::Result<()> {
    let doc = TupleDocument::from_json(DOC)?;
    let f = doc.to_tuple(false)?;
    println!("{} matrices of size {}, digest {}", f.n(), f.d(), doc.digest()?);
    println!("{}", TupleDocument::from_tuple(&f, doc.name.clone(), None).to_json());
    Ok(())
}
