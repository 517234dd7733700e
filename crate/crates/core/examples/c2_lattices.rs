//! Decomposing an integral involution into trivial, sign and induced blocks.

use torus_brauer::gmod::{c2_decompose, canonical_involution};
use torus_brauer::intlat::IntMatrix;

fn main() {
    let s = IntMatrix::from_rows(&[vec![1, 2, 0], vec![0, -1, 0], vec![0, 1, 1]]);
    let d = c2_decompose(&s).unwrap();
    let (a, b, c) = d.triple();
    println!("S =\n{s}");
    println!("S ~ Z^{a} + Z(1)^{b} + Ind^{c}");
    let back = &(&d.base_change * &s) * &d.base_change.inverse_unimodular().unwrap();
    println!("B S B^-1 =\n{back}");
    println!("canonical: {}", back == canonical_involution(a, b, c));
}
