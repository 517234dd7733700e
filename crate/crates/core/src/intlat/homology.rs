//! Kernels and subquotients `ker(d_out) / im(d_in)` over `Z` or `Z/n`.
//!
//! Everything is expressed through lattices in `Z^k`: over `Z/n` the cycles
//! are `{x : d_out·x ∈ nZ^m}` and the boundaries are `im(d_in) + nZ^k`, so a
//! single integer Smith engine serves both cases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::abelian::{cokernel, Cokernel, FinAbGroup};
use super::matrix::IntMatrix;
use super::smith::{smith, smith_with, Track};
use crate::error::{Error, Result};

/// Generators of `ker(A)`: a lattice basis over `Z`, a generating set over `Z/n`.
///
/// Over `Z` each vector is normalized so that its first nonzero entry is
/// positive; over `Z/n` entries lie in `[0, n)` and zero vectors are dropped.
pub fn kernel_basis(a: &IntMatrix, modulus: Option<&BigInt>) -> Vec<Vec<BigInt>> {
    let raw = smith_with(a, Track { v: true, ..Track::default() });
    let v = raw.v.clone().unwrap();
    let mut out = Vec::new();
    for i in 0..a.cols() {
        let scale = match (modulus, i < raw.rank) {
            (None, true) => continue,
            (None, false) | (Some(_), false) => BigInt::one(),
            (Some(n), true) => n / n.gcd(raw.diag(i)),
        };
        let mut col: Vec<BigInt> = v.column(i).into_iter().map(|x| x * &scale).collect();
        match modulus {
            Some(n) => {
                col.iter_mut().for_each(|x| *x = x.mod_floor(n));
                if col.iter().all(Zero::is_zero) {
                    continue;
                }
            }
            None => {
                if col.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                    col.iter_mut().for_each(|x| *x = -&*x);
                }
            }
        }
        out.push(col);
    }
    out
}

/// Some integer solution of `A·x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let s = smith(a);
    let ub = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, val) in ub.iter().enumerate() {
        let d = if i < a.cols() { s.d[(i, i)].clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !val.is_zero() {
                return None;
            }
        } else {
            let (q, r) = val.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// The subquotient `ker(d_out) / im(d_in)` with its comparison maps.
///
/// `group.generators` are cycle representatives in the ambient `Z^k`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: FinAbGroup,
    modulus: Option<BigInt>,
    d_out: IntMatrix,
    /// rows of `V⁻¹` for the cycle-lattice coordinates
    coordinate_rows: IntMatrix,
    /// rows of `V⁻¹` that must vanish on cycles (integral case)
    vanishing_rows: IntMatrix,
    scales: Vec<BigInt>,
    coker: Cokernel,
}

impl Subquotient {
    pub fn ambient_rank(&self) -> usize {
        self.d_out.cols()
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    pub fn is_cycle(&self, z: &[BigInt]) -> bool {
        let image = self.d_out.mul_vec(z);
        match &self.modulus {
            Some(n) => image.iter().all(|x| x.mod_floor(n).is_zero()),
            None => image.iter().all(Zero::is_zero),
        }
    }

    /// Coordinates of the class of the cycle `z`.
    pub fn class_of(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        if z.len() != self.ambient_rank() {
            return Err(Error::DimensionMismatch(format!(
                "cycle of length {} in ambient rank {}",
                z.len(),
                self.ambient_rank()
            )));
        }
        if !self.is_cycle(z) {
            return Err(Error::NotACycle);
        }
        debug_assert!(self.vanishing_rows.mul_vec(z).iter().all(Zero::is_zero));
        let w = self.coordinate_rows.mul_vec(z);
        let c: Vec<BigInt> = w
            .iter()
            .zip(&self.scales)
            .map(|(x, s)| {
                let (q, r) = x.div_rem(s);
                debug_assert!(r.is_zero(), "cycle outside the cycle lattice");
                q
            })
            .collect();
        Ok(self.coker.class_of(&c))
    }

    /// A cycle representing the class with the given coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.group.ngens(), "coordinate length mismatch");
        let mut out = vec![BigInt::zero(); self.ambient_rank()];
        for (c, g) in coords.iter().zip(&self.group.generators) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(g) {
                *o += c * x;
            }
        }
        if let Some(n) = &self.modulus {
            out.iter_mut().for_each(|x| *x = x.mod_floor(n));
        }
        out
    }

    /// Whether `z` is a boundary (zero class).
    pub fn is_boundary(&self, z: &[BigInt]) -> Result<bool> {
        Ok(self.group.is_zero_coords(&self.class_of(z)?))
    }
}

/// `ker(d_out) / im(d_in)` inside `Z^k` (or `(Z/n)^k` when a modulus is given).
pub fn homology_of_pair(d_out: &IntMatrix, d_in: &IntMatrix, modulus: Option<&BigInt>) -> Result<Subquotient> {
    let k = d_out.cols();
    if d_in.rows() != k {
        return Err(Error::DimensionMismatch(format!(
            "d_out has {} columns but d_in has {} rows",
            k,
            d_in.rows()
        )));
    }
    if let Some(n) = modulus {
        if !n.is_positive() {
            return Err(Error::DimensionMismatch("modulus must be positive".into()));
        }
    }
    if d_out.rows() > 0 && d_in.cols() > 0 {
        let comp = d_out * d_in;
        let zero = match modulus {
            Some(n) => comp.reduce_mod(n).is_zero(),
            None => comp.is_zero(),
        };
        if !zero {
            return Err(Error::CompositionNonzero);
        }
    }

    let raw = smith_with(d_out, Track { v: true, vinv: true, ..Track::default() });
    let v = raw.v.clone().unwrap();
    let vinv = raw.vinv.clone().unwrap();
    let mut selected = Vec::new();
    let mut scales = Vec::new();
    let mut vanishing = Vec::new();
    for i in 0..k {
        match (modulus, i < raw.rank) {
            (None, true) => vanishing.push(i),
            (Some(n), true) => {
                selected.push(i);
                scales.push(n / n.gcd(raw.diag(i)));
            }
            (_, false) => {
                selected.push(i);
                scales.push(BigInt::one());
            }
        }
    }

    let boundary_gens = match modulus {
        Some(n) => d_in.hstack(&IntMatrix::identity(k).scale(n)),
        None => d_in.clone(),
    };
    let coordinate_rows = vinv.select_rows(&selected);
    let w = &coordinate_rows * &boundary_gens;
    let mut x = IntMatrix::zeros(selected.len(), boundary_gens.cols());
    for t in 0..selected.len() {
        for c in 0..boundary_gens.cols() {
            let (q, r) = w[(t, c)].div_rem(&scales[t]);
            if !r.is_zero() {
                return Err(Error::CompositionNonzero);
            }
            x[(t, c)] = q;
        }
    }
    let coker = cokernel(&x);

    // cycle basis K = V[:, selected] · diag(scales)
    let basis = IntMatrix::from_fn(k, selected.len(), |i, t| &v[(i, selected[t])] * &scales[t]);
    let generators = coker
        .group
        .generators
        .iter()
        .map(|g| {
            let z = basis.mul_vec(g);
            match modulus {
                Some(n) => z.into_iter().map(|e| e.mod_floor(n)).collect(),
                None => z,
            }
        })
        .collect();
    let group = FinAbGroup {
        free_rank: coker.group.free_rank,
        torsion: coker.group.torsion.clone(),
        generators,
    };
    Ok(Subquotient {
        group,
        modulus: modulus.cloned(),
        d_out: d_out.clone(),
        coordinate_rows,
        vanishing_rows: vinv.select_rows(&vanishing),
        scales,
        coker,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&IntMatrix::from_rows(&[vec![1, -1]]), None), vec![ints(&[1, 1])]);
        assert_eq!(kernel_basis(&IntMatrix::from_rows(&[vec![2]]), Some(&BigInt::from(4))), vec![ints(&[2])]);
        assert_eq!(
            kernel_basis(&IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]), None),
            vec![ints(&[1, -1])]
        );
    }

    #[test]
    fn zero_maps_give_ambient() {
        let h = homology_of_pair(&IntMatrix::zeros(0, 2), &IntMatrix::zeros(2, 0), None).unwrap();
        assert_eq!(h.group.free_rank, 2);
        assert!(h.group.torsion.is_empty());
    }

    #[test]
    fn injective_out_map_kills_everything() {
        let h = homology_of_pair(&IntMatrix::from_rows(&[vec![2]]), &IntMatrix::zeros(1, 0), None).unwrap();
        assert!(h.group.is_trivial());
    }

    #[test]
    fn periodic_c2_middle_term() {
        // Z --0--> Z --2--> Z, homology at the middle: ker(0)/im(2) = Z/2
        let h = homology_of_pair(&IntMatrix::from_rows(&[vec![0]]), &IntMatrix::from_rows(&[vec![2]]), None).unwrap();
        assert_eq!(h.group.torsion, ints(&[2]));
        assert_eq!(h.group.free_rank, 0);
    }

    #[test]
    fn nonzero_composition_is_rejected() {
        let e = homology_of_pair(&IntMatrix::from_rows(&[vec![1]]), &IntMatrix::from_rows(&[vec![1]]), None);
        assert_eq!(e.unwrap_err(), Error::CompositionNonzero);
    }

    #[test]
    fn modular_fixed_points() {
        // x = -x mod 4  <=>  2x = 0 mod 4
        let h = homology_of_pair(&IntMatrix::from_rows(&[vec![2]]), &IntMatrix::zeros(1, 0), Some(&BigInt::from(4))).unwrap();
        assert_eq!(h.group.torsion, ints(&[2]));
        assert_eq!(h.group.generators, vec![ints(&[2])]);
        assert_eq!(h.class_of(&ints(&[1])).unwrap_err(), Error::NotACycle);
    }

    #[test]
    fn solve_examples() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let x = solve_integer(&a, &ints(&[2, 6])).unwrap();
        assert_eq!(a.mul_vec(&x), ints(&[2, 6]));
        assert!(solve_integer(&a, &ints(&[1, 0])).is_none());
    }

    proptest! {
        #[test]
        fn lift_project_roundtrip(entries in proptest::collection::vec(-3i64..4, 9), n in proptest::option::of(2i64..9)) {
            // d_in = B arbitrary, d_out = rows spanning the left kernel of B
            let b = IntMatrix::from_fn(3, 3, |i, j| BigInt::from(entries[i * 3 + j]));
            let left = kernel_basis(&b.transpose(), None);
            let a = IntMatrix::from_rows_with_cols(&left, 3);
            let n = n.map(BigInt::from);
            let h = homology_of_pair(&a, &b, n.as_ref()).unwrap();
            for (i, g) in h.group.generators.iter().enumerate() {
                prop_assert!(h.is_cycle(g));
                let mut e = vec![BigInt::zero(); h.group.ngens()];
                e[i] = BigInt::one();
                prop_assert_eq!(h.class_of(g).unwrap(), e);
            }
            let coords: Vec<BigInt> = (0..h.group.ngens()).map(|i| BigInt::from(i as i64 * 2 + 1)).collect();
            let z = h.lift(&coords);
            prop_assert_eq!(h.class_of(&z).unwrap(), h.group.normalize(&coords));
            for k in kernel_basis(&a, n.as_ref()) {
                prop_assert!(h.is_cycle(&k));
            }
            for j in 0..3 {
                prop_assert!(h.is_boundary(&b.column(j)).unwrap());
            }
        }
    }
}
