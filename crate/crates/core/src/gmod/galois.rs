use num_integer::Integer;

use super::group::{closure, compose, cycle_notation, is_permutation, FiniteGroup, Perm};
use crate::error::{Error, Result};

/// The image of a Galois group acting on `r` characters, together with the
/// cyclotomic character modulo an even `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisDatum {
    group: FiniteGroup,
    r: usize,
    perms: Vec<Perm>,
    modulus: u64,
    chi: Vec<u64>,
}

impl GaloisDatum {
    /// Validates that `perms` and `chi` are homomorphisms on `group`.
    pub fn new(group: FiniteGroup, r: usize, perms: Vec<Perm>, modulus: u64, chi: Vec<u64>) -> Result<Self> {
        check_modulus(modulus)?;
        let n = group.order();
        if perms.len() != n || chi.len() != n {
            return Err(Error::InvalidDatum("one permutation and one unit per group element required".into()));
        }
        for p in &perms {
            if p.len() != r || !is_permutation(p) {
                return Err(Error::InvalidDatum(format!("{p:?} is not a permutation of {r} points")));
            }
        }
        for &u in &chi {
            check_unit(u, modulus)?;
        }
        let e = group.identity();
        if perms[e] != (0..r).collect::<Perm>() || chi[e] % modulus != 1 % modulus {
            return Err(Error::InvalidDatum("identity must act trivially".into()));
        }
        for a in group.elements() {
            for b in group.elements() {
                let ab = group.mul(a, b);
                if perms[ab] != compose(&perms[a], &perms[b]) {
                    return Err(Error::InvalidDatum(format!("permutation map is not a homomorphism at ({a}, {b})")));
                }
                if chi[ab] % modulus != (chi[a] * chi[b]) % modulus {
                    return Err(Error::InvalidDatum(format!("character is not a homomorphism at ({a}, {b})")));
                }
            }
        }
        let chi = chi.into_iter().map(|u| u % modulus).collect();
        Ok(GaloisDatum { group, r, perms, modulus, chi })
    }

    /// The subgroup of `S_r × (Z/M)^×` generated by `(permutation, unit)` pairs.
    pub fn from_generators(r: usize, modulus: u64, gens: &[(Perm, u64)]) -> Result<Self> {
        check_modulus(modulus)?;
        for (p, u) in gens {
            if p.len() != r || !is_permutation(p) {
                return Err(Error::InvalidDatum(format!("{p:?} is not a permutation of {r} points")));
            }
            check_unit(*u, modulus)?;
        }
        let gens: Vec<(Perm, u64)> = gens.iter().map(|(p, u)| (p.clone(), u % modulus)).collect();
        let start: (Perm, u64) = ((0..r).collect(), 1 % modulus);
        let elements = closure(start, &gens, |(p, u), (q, v)| (compose(p, q), (u * v) % modulus));
        let index: std::collections::BTreeMap<&(Perm, u64), usize> =
            elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let table = elements
            .iter()
            .map(|(p, u)| {
                elements
                    .iter()
                    .map(|(q, v)| index[&(compose(p, q), (u * v) % modulus)])
                    .collect()
            })
            .collect();
        let group = FiniteGroup::from_table(table)?;
        let (perms, chi) = elements.into_iter().unzip();
        Self::new(group, r, perms, modulus, chi)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Number of characters `r`.
    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn perm(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    pub fn chi(&self, g: usize) -> u64 {
        self.chi[g]
    }

    /// `χ(g)⁻¹ mod M`
    pub fn chi_inverse(&self, g: usize) -> u64 {
        self.chi[self.group.inv(g)]
    }

    /// Human-readable element, e.g. `(1 2)·3`.
    pub fn describe_element(&self, g: usize) -> String {
        format!("{}·{}", cycle_notation(&self.perms[g]), self.chi[g])
    }
}

fn check_modulus(modulus: u64) -> Result<()> {
    if modulus < 2 || !modulus.is_multiple_of(2) {
        return Err(Error::InvalidDatum(format!("modulus M = {modulus} must be even and at least 2")));
    }
    Ok(())
}

fn check_unit(u: u64, modulus: u64) -> Result<()> {
    if u.gcd(&modulus) != 1 {
        return Err(Error::InvalidDatum(format!("{u} is not a unit modulo {modulus}")));
    }
    Ok(())
}
