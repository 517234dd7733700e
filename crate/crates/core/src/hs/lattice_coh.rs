use num_bigint::BigInt;

use super::wall::subsets;
use crate::error::Result;
use crate::gmod::{CoeffModule, FiniteGroup, GLattice};
use crate::intlat::IntMatrix;

/// `Λ^q A` in the lexicographic basis of `q`-subsets: entry `[S][T]` is the
/// minor of `A` on rows `S` and columns `T`.
pub fn exterior_power(a: &IntMatrix, q: usize) -> IntMatrix {
    let subs = subsets(a.rows(), q);
    IntMatrix::from_fn(subs.len(), subs.len(), |i, j| {
        let rows = &subs[i];
        let cols = &subs[j];
        a.select_rows(rows).select_columns(cols).determinant().expect("square minor")
    })
}

/// `Λ²N` with the induced action on `e_i∧e_j`, `i < j`.
pub fn h2_lattice(group: &FiniteGroup, n: &GLattice) -> Result<CoeffModule> {
    let action = n.matrices().iter().map(|a| exterior_power(a, 2)).collect();
    CoeffModule::new(group, subsets(n.rank(), 2).len(), None, action)
}

/// `Hom(Λ^q N, M)` with `(g·f)(x) = g_M·f(Λ^qρ(g)⁻¹x)`.
///
/// Coordinates are indexed by `(S, l)` at `S·k + l`, where `S` runs over the
/// `q`-subsets in lexicographic order and `l` over the coordinates of `M`.
pub fn lattice_cohomology(group: &FiniteGroup, n: &GLattice, m: &CoeffModule, q: usize) -> Result<CoeffModule> {
    let k = m.rank();
    let action = group
        .elements()
        .map(|g| {
            let wedge_inv = exterior_power(n.rho(group.inv(g)), q);
            let rm = m.action(g);
            let b = wedge_inv.rows();
            // entry [(T, l), (S, l')] = Λ^qρ(g⁻¹)[S][T]·ρ_M(g)[l][l']
            IntMatrix::from_fn(b * k, b * k, |row, col| {
                let (t, l) = (row / k, row % k);
                let (s, l2) = (col / k, col % k);
                &wedge_inv[(s, t)] * &rm[(l, l2)]
            })
        })
        .collect();
    let rank = subsets(n.rank(), q).len() * k;
    CoeffModule::new(group, rank, m.modulus().cloned(), action)
}

/// Index of the pair `{a, b}` among the 2-subsets of `{0,…,r−1}`.
pub(crate) fn wedge_index(r: usize, a: usize, b: usize) -> usize {
    crate::gmod::pair_index(r, a.min(b), a.max(b))
}

pub(crate) fn zero_vec(n: usize) -> Vec<BigInt> {
    vec![BigInt::from(0); n]
}
