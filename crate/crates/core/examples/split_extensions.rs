//! The twisted tensor resolution of `Z^r ⋊ π` and the cohomology of the
//! whole extension.

use num_bigint::BigInt;
use torus_brauer::gmod::{CoeffModule, FiniteGroup, GLattice};
use torus_brauer::hs::{lattice_cohomology, SplitExtension, WallResolution};
use torus_brauer::cohom::cohomology;
use torus_brauer::intlat::IntMatrix;

fn main() {
    let c2 = FiniteGroup::cyclic(2);
    let swap = GLattice::from_involution(&IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])).unwrap();
    let z2 = CoeffModule::trivial(&c2, 1, Some(BigInt::from(2)));
    let ext = SplitExtension::new(c2.clone(), swap.clone(), z2.clone()).unwrap();
    let w = WallResolution::new(&ext, 3).unwrap();
    w.verify().unwrap();
    for n in 0..3 {
        println!("rank of F_{n}: {}", w.generators(n).len());
    }
    for n in 0..3 {
        println!("H^{n}(Z^2 x| C2, Z/2) = {}", w.cohomology(&z2, n).unwrap().group);
    }
    for p in 0..=2 {
        for q in 0..=2 {
            let coeff = lattice_cohomology(&c2, &swap, &z2, q).unwrap();
            print!("  E2[{p},{q}] = {:<12}", cohomology(&c2, &coeff, p).unwrap().structure().to_string());
        }
        println!();
    }
}
