//! Smith normal form, cokernels and homology of a pair of integer maps.

use num_bigint::BigInt;
use torus_brauer::intlat::{cokernel, homology_of_pair, smith, IntMatrix};

fn main() {
    let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = smith(&a);
    println!("A =\n{a}");
    println!("D = U A V =\n{}", s.d);
    println!("U A V == D: {}", &(&s.u * &a) * &s.v == s.d);

    let coker = cokernel(&a);
    println!("Z^3 / A Z^3 = {}", coker.group);

    // Z --2--> Z --0--> Z: homology Z/2 over Z, Z/2 over Z/4
    let f = IntMatrix::from_rows(&[vec![0]]);
    let g = IntMatrix::from_rows(&[vec![2]]);
    println!("ker 0 / im 2 = {}", homology_of_pair(&f, &g, None).unwrap().group);
    println!("same mod 4    = {}", homology_of_pair(&f, &g, Some(&BigInt::from(4))).unwrap().group);
}
