//! `d₂^{0,2}` as the pushforward of `v₂`, on a lattice where both are nonzero.

use num_bigint::BigInt;
use torus_brauer::gmod::{CoeffModule, FiniteGroup, GLattice};
use torus_brauer::hs::{
    alternating_from_coords, cv_formula_check_with, d2_02_with, h2_lattice, invariant_classes, v2_with,
    SplitExtension, WallResolution,
};
use torus_brauer::intlat::IntMatrix;

fn matrix_group(gens: &[IntMatrix]) -> (FiniteGroup, Vec<IntMatrix>) {
    let mut elems = vec![IntMatrix::identity(gens[0].rows())];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let x = &elems[i] * g;
            if !elems.contains(&x) {
                elems.push(x);
            }
        }
        i += 1;
    }
    let table = elems
        .iter()
        .map(|a| elems.iter().map(|b| elems.iter().position(|c| *c == a * b).unwrap()).collect())
        .collect();
    (FiniteGroup::from_table(table).unwrap(), elems)
}

fn main() {
    // a dihedral group of order 8 acting on Z^3
    let a = IntMatrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, -1]]);
    let b = IntMatrix::from_rows(&[vec![1, -1, -1], vec![0, 0, -1], vec![0, -1, 0]]);
    let (pi, mats) = matrix_group(&[a, b]);
    let n = GLattice::new(&pi, 3, mats).unwrap();

    let l2 = h2_lattice(&pi, &n).unwrap();
    let m = CoeffModule::new(&pi, l2.rank(), Some(BigInt::from(2)), l2.matrices().to_vec()).unwrap();
    let ext = SplitExtension::new(pi.clone(), n, m).unwrap();
    let w = WallResolution::new(&ext, 3).unwrap();

    let v = v2_with(&w, &ext).unwrap();
    println!("|pi| = {}", pi.order());
    println!("v2 in {} has coordinates {:?}", v.cohomology.structure(), v.class.coords);
    let d = d2_02_with(&w, &ext).unwrap();
    println!("d2: {} -> {}, zero: {}", d.domain, d.codomain, d.is_zero());
    for g in &invariant_classes(&ext).unwrap().group.generators {
        let alpha = alternating_from_coords(g, 3);
        println!("  pushforward formula for {:?}: {}", g, cv_formula_check_with(&w, &ext, &v, &alpha).unwrap());
    }
}
