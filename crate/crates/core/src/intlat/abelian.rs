use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::smith::{smith_with, Track};

/// A finitely generated abelian group `Z^free ⊕ Z/t₁ ⊕ … ⊕ Z/t_k` with
/// `t₁ | t₂ | …` and every `tᵢ ≥ 2`.
///
/// `generators` lists one representative per cyclic summand (torsion summands
/// first, then free ones) as coordinate vectors in whatever ambient group the
/// structure was computed in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub generators: Vec<Vec<BigInt>>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { free_rank: 0, torsion: Vec::new(), generators: Vec::new() }
    }

    /// Number of cyclic summands (length of a coordinate vector).
    pub fn ngens(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of the i-th summand, `None` for free summands.
    pub fn summand_order(&self, i: usize) -> Option<&BigInt> {
        self.torsion.get(i)
    }

    /// Structural isomorphism test (same free rank and invariant factors).
    pub fn same_structure(&self, other: &FinAbGroup) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }

    /// Reduces coordinates modulo the torsion orders.
    pub fn normalize(&self, coords: &[BigInt]) -> Vec<BigInt> {
        coords
            .iter()
            .enumerate()
            .map(|(i, c)| match self.torsion.get(i) {
                Some(t) => c.mod_floor(t),
                None => c.clone(),
            })
            .collect()
    }

    pub fn is_zero_coords(&self, coords: &[BigInt]) -> bool {
        self.normalize(coords).iter().all(Zero::is_zero)
    }

    /// Order of the element with the given coordinates; `None` if infinite.
    pub fn element_order(&self, coords: &[BigInt]) -> Option<BigInt> {
        let c = self.normalize(coords);
        if c[self.torsion.len()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(self.torsion.iter().zip(&c).fold(BigInt::one(), |acc, (t, x)| {
            let ord = t / t.gcd(x);
            acc.lcm(&ord)
        }))
    }

    /// Invariant-factor description such as `Z/2 + Z/4 + Z^1`, or `0`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// `Z^rows / column-span(A)` together with its projection map.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: FinAbGroup,
    ambient: usize,
    /// rows of `U` for the kept summands, torsion first then free
    projection: IntMatrix,
}

impl Cokernel {
    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    /// Coordinates of the class of `x ∈ Z^rows`.
    pub fn class_of(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ambient, "ambient length mismatch");
        self.group.normalize(&self.projection.mul_vec(x))
    }

    /// A representative in `Z^rows` of the class with the given coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.group.ngens(), "coordinate length mismatch");
        let mut out = vec![BigInt::zero(); self.ambient];
        for (c, g) in coords.iter().zip(&self.group.generators) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(g) {
                *o += c * x;
            }
        }
        out
    }
}

/// Structure of `Z^rows / column-span(A)`.
pub fn cokernel(a: &IntMatrix) -> Cokernel {
    let raw = smith_with(a, Track { u: true, uinv: true, ..Track::default() });
    let u = raw.u.as_ref().unwrap();
    let uinv = raw.uinv.as_ref().unwrap();
    let rows = a.rows();
    let mut torsion_idx = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..raw.rank {
        let d = raw.diag(i);
        if !d.is_one() {
            debug_assert!(d.is_positive());
            torsion_idx.push(i);
            torsion.push(d.clone());
        }
    }
    let free_idx: Vec<usize> = (raw.rank..rows).collect();
    let kept: Vec<usize> = torsion_idx.iter().chain(&free_idx).copied().collect();
    let generators = kept.iter().map(|&i| uinv.column(i)).collect();
    Cokernel {
        group: FinAbGroup { free_rank: free_idx.len(), torsion, generators },
        ambient: rows,
        projection: u.select_rows(&kept),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn coprime_torsion_merges() {
        let c = cokernel(&IntMatrix::diagonal([2, 3]));
        assert_eq!(c.group.free_rank, 0);
        assert_eq!(c.group.torsion, ints(&[6]));
    }

    #[test]
    fn zero_map_is_free() {
        let c = cokernel(&IntMatrix::zeros(2, 2));
        assert_eq!(c.group.free_rank, 2);
        assert!(c.group.torsion.is_empty());
    }

    #[test]
    fn torsion_two_four() {
        let c = cokernel(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(c.group.torsion, ints(&[2, 4]));
        assert_eq!(c.group.free_rank, 0);
    }

    #[test]
    fn generators_have_stated_orders() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 0], vec![6, 8, 0], vec![0, 0, 0]]);
        let c = cokernel(&a);
        assert_eq!(c.group.describe(), "Z/2 + Z/4 + Z");
        for (i, g) in c.group.generators.iter().enumerate() {
            let mut e = vec![BigInt::zero(); c.group.ngens()];
            e[i] = BigInt::one();
            assert_eq!(c.class_of(g), e);
        }
        // lifting then projecting is the identity on coordinates
        let coords = ints(&[1, 3, -5]);
        assert_eq!(c.class_of(&c.lift(&coords)), coords);
    }

    #[test]
    fn element_orders() {
        let g = FinAbGroup { free_rank: 0, torsion: ints(&[2, 4]), generators: vec![] };
        assert_eq!(g.element_order(&ints(&[1, 2])), Some(BigInt::from(2)));
        assert_eq!(g.element_order(&ints(&[0, 1])), Some(BigInt::from(4)));
        assert_eq!(g.element_order(&ints(&[0, 0])), Some(BigInt::from(1)));
        assert_eq!(g.order(), Some(BigInt::from(8)));
    }
}
