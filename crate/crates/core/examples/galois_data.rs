//! Galois data of quasi-trivial tori and the module spanned by pairs of
//! characters.

use torus_brauer::gmod::{invariants_finite, pair_module, permutation_lattice, GaloisDatum};

fn main() {
    // Q(zeta_8)/Q acting on two characters through the swap (1 2)
    let datum = GaloisDatum::from_generators(2, 8, &[(vec![1, 0], 3), (vec![0, 1], 5)]).unwrap();
    println!("group order {}", datum.group().order());
    for g in datum.group().elements() {
        println!("  {}", datum.describe_element(g));
    }
    let lattice = permutation_lattice(&datum);
    println!("character lattice rank {}", lattice.rank());
    for m in [2, 4, 8] {
        let module = pair_module(&datum, m).unwrap();
        println!("invariants of pairs mod {m}: {}", invariants_finite(&module, datum.group()).unwrap());
    }
}
