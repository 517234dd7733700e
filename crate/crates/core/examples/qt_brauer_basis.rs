//! Symbol bases of transcendental Brauer groups of quasi-trivial tori,
//! checked against the invariants of the pair module.

use torus_brauer::brauer::{thm2_basis, verify_basis};
use torus_brauer::gmod::GaloisDatum;

fn show(name: &str, datum: &GaloisDatum) {
    let rep = thm2_basis(datum).unwrap();
    println!("{name}: {} (oracle {}, agree {})", rep.structure, rep.oracle, rep.agrees);
    for (o, s) in rep.orbits.iter().zip(&rep.basis) {
        println!("  orbit of size {} : {}  over E fixed by {}", o.orbit_size, s.render(), s.field);
    }
    assert!(verify_basis(datum).unwrap().ok());
}

fn main() {
    show("Q(i)/Q", &GaloisDatum::from_generators(2, 4, &[(vec![1, 0], 3)]).unwrap());
    show("S3", &GaloisDatum::from_generators(3, 2, &[(vec![1, 0, 2], 1), (vec![1, 2, 0], 1)]).unwrap());
    show("split", &GaloisDatum::from_generators(3, 2, &[]).unwrap());
    // C4 cycling four characters, with a unit of order 2 mod 12
    show("C4", &GaloisDatum::from_generators(4, 12, &[(vec![1, 2, 3, 0], 5)]).unwrap());
}
