//! Building input documents in code and rendering reports.

use torus_brauer::cli::{cmd_qt_brauer, cmd_selftest, GaloisDatumSpec, GeneratorSpec, InputDocument};

fn main() {
    let doc = InputDocument::GaloisDatum(GaloisDatumSpec {
        label: Some("cyclic cubic".into()),
        r: 3,
        modulus: 6,
        generators: vec![GeneratorSpec { perm: vec![2, 3, 1], unit: 1 }],
    });
    println!("{}", serde_json::to_string(&doc).unwrap());
    let report = cmd_qt_brauer(&doc).unwrap();
    print!("{}", report.text);
    print!("{}", cmd_selftest(Some("c2"), 1).unwrap().text);
}
