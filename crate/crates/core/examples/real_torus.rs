//! Levelwise vanishing of `d₂^{0,2}` for real tori.

use torus_brauer::brauer::real_torus_check;
use torus_brauer::intlat::IntMatrix;

fn main() {
    let tori = [
        ("Gm", IntMatrix::from_rows(&[vec![1]])),
        ("norm-one torus", IntMatrix::from_rows(&[vec![-1]])),
        ("Weil restriction", IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])),
        ("mixed rank 3", IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, -1, 0], vec![0, 0, -1]])),
    ];
    for (name, x) in &tori {
        for n in [2, 3, 4, 8] {
            let rep = real_torus_check(x, n).unwrap();
            println!(
                "{name:<17} {:?} n = {n}: invariants {:<10} d2 zero: {}",
                rep.decomposition,
                rep.invariants.to_string(),
                rep.d2_is_zero()
            );
        }
    }
}
