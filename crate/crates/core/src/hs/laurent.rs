use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::gmod::{CoeffModule, FiniteGroup, GLattice};

/// The split extension `N ⋊ π` with a coefficient module on which `N` acts
/// trivially.
#[derive(Clone, Debug)]
pub struct SplitExtension {
    pi: FiniteGroup,
    lattice: GLattice,
    module: CoeffModule,
}

impl SplitExtension {
    pub fn new(pi: FiniteGroup, lattice: GLattice, module: CoeffModule) -> Result<Self> {
        let n = pi.order();
        if lattice.matrices().len() != n || module.group_order() != n {
            return Err(Error::DimensionMismatch("lattice, module and group disagree on the group order".into()));
        }
        // re-run the group-law checks against this particular table
        GLattice::new(&pi, lattice.rank(), lattice.matrices().to_vec())?;
        CoeffModule::new(&pi, module.rank(), module.modulus().cloned(), module.matrices().to_vec())?;
        Ok(SplitExtension { pi, lattice, module })
    }

    pub fn pi(&self) -> &FiniteGroup {
        &self.pi
    }

    pub fn lattice(&self) -> &GLattice {
        &self.lattice
    }

    pub fn module(&self) -> &CoeffModule {
        &self.module
    }

    pub fn with_module(&self, module: CoeffModule) -> Result<Self> {
        SplitExtension::new(self.pi.clone(), self.lattice.clone(), module)
    }

    /// `ρ(g)` with small entries.
    pub(crate) fn rho_i64(&self) -> Vec<Vec<Vec<i64>>> {
        self.lattice
            .matrices()
            .iter()
            .map(|m| {
                (0..m.rows())
                    .map(|i| m.row(i).iter().map(|x| x.to_i64().expect("lattice entries fit in i64")).collect())
                    .collect()
            })
            .collect()
    }
}

/// An element of `Z[N ⋊ π]`, written as a sum of `c·g·x^a` with `g ∈ π`
/// and `x^a ∈ N = Z^r`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentElement {
    terms: BTreeMap<(usize, Vec<i64>), i64>,
}

impl LaurentElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(g: usize, a: Vec<i64>, c: i64) -> Self {
        let mut x = Self::zero();
        x.add_term(g, a, c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, g: usize, a: Vec<i64>, c: i64) {
        if c == 0 {
            return;
        }
        let key = (g, a);
        let v = self.terms.entry(key.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &LaurentElement) -> LaurentElement {
        let mut out = self.clone();
        for ((g, a), c) in &other.terms {
            out.add_term(*g, a.clone(), *c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &[i64], i64)> + '_ {
        self.terms.iter().map(|((g, a), c)| (*g, a.as_slice(), *c))
    }

    /// `(g x^a)(h x^b) = gh · x^{ρ(h)⁻¹a + b}`
    pub fn mul(&self, other: &LaurentElement, pi: &FiniteGroup, rho: &[Vec<Vec<i64>>]) -> LaurentElement {
        let mut out = LaurentElement::zero();
        for ((g, a), c) in &self.terms {
            for ((h, b), d) in &other.terms {
                let conj = mat_vec(&rho[pi.inv(*h)], a);
                let e: Vec<i64> = conj.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(pi.mul(*g, *h), e, c * d);
            }
        }
        out
    }

    /// Image under the augmentation `Z[G] → Z`.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }
}

pub(crate) fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlat::IntMatrix;

    #[test]
    fn semidirect_multiplication_is_associative() {
        let c2 = FiniteGroup::cyclic(2);
        let ind = GLattice::from_involution(&IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])).unwrap();
        let ext = SplitExtension::new(c2.clone(), ind, CoeffModule::trivial(&c2, 1, None)).unwrap();
        let rho = ext.rho_i64();
        let x = LaurentElement::monomial(1, vec![1, 0], 1).add(&LaurentElement::monomial(0, vec![0, -2], 3));
        let y = LaurentElement::monomial(1, vec![2, 1], -1);
        let z = LaurentElement::monomial(0, vec![1, 1], 1).add(&LaurentElement::monomial(1, vec![0, 0], 1));
        let left = x.mul(&y, &c2, &rho).mul(&z, &c2, &rho);
        let right = x.mul(&y.mul(&z, &c2, &rho), &c2, &rho);
        assert_eq!(left, right);
        // σ x₁ σ⁻¹ = x₂
        let s = LaurentElement::monomial(1, vec![0, 0], 1);
        let conj = s.mul(&LaurentElement::monomial(0, vec![1, 0], 1), &c2, &rho).mul(&s, &c2, &rho);
        assert_eq!(conj, LaurentElement::monomial(0, vec![0, 1], 1));
        assert_eq!(x.augmentation(), 4);
    }
}
