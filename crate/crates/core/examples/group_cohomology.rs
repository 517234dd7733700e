//! Cohomology of finite groups, restriction and corestriction.

use num_bigint::BigInt;
use torus_brauer::cohom::{cohomology, cohomology_with, corestriction, restriction, ResolutionChoice};
use torus_brauer::gmod::{CoeffModule, FiniteGroup};

fn main() {
    let c6 = FiniteGroup::cyclic(6);
    let z = CoeffModule::trivial(&c6, 1, None);
    for n in 0..=3 {
        let periodic = cohomology_with(&c6, &z, n, ResolutionChoice::Periodic).unwrap();
        let bar = cohomology_with(&c6, &z, n, ResolutionChoice::NormalizedBar).unwrap();
        println!("H^{n}(C6, Z) = {} (bar: {})", periodic.structure(), bar.structure());
    }

    let (s3, perms) = FiniteGroup::symmetric(3);
    let inversions = |p: &[usize]| (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    let sign: Vec<i64> = perms.iter().map(|p| if inversions(p) % 2 == 0 { 1 } else { -1 }).collect();
    let module = CoeffModule::scalar(&s3, Some(BigInt::from(6)), &sign).unwrap();
    let c3 = s3.subgroup(&s3.generated(&[perms.iter().position(|p| p == &[1, 2, 0]).unwrap()])).unwrap();
    for n in 0..=2 {
        let g = cohomology(&s3, &module, n).unwrap();
        let h = g.of_subgroup(&c3).unwrap();
        println!("H^{n}(S3, Z/6(sgn)) = {}, on C3: {}", g.structure(), h.structure());
        for x in g.representatives() {
            let back = corestriction(&h, &g, &c3, &restriction(&g, &h, &c3, &x).unwrap()).unwrap();
            let twice = g.class_from_coords(&x.coords.iter().map(|c| c * 2).collect::<Vec<_>>());
            assert!(g.same_class(&back, &twice));
        }
    }
    println!("cores . res = 2 on every class");
}
