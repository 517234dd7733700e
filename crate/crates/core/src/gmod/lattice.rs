use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::galois::GaloisDatum;
use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::intlat::{homology_of_pair, reduce_vec, IntMatrix, Subquotient};

/// A free `Z`-module of rank `r` with a linear group action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLattice {
    rank: usize,
    rho: Vec<IntMatrix>,
}

impl GLattice {
    /// Checks `ρ(gh) = ρ(g)ρ(h)` over the whole table and `ρ(e) = I`.
    pub fn new(group: &FiniteGroup, rank: usize, rho: Vec<IntMatrix>) -> Result<Self> {
        check_action(group, rank, &rho, None)?;
        Ok(GLattice { rank, rho })
    }

    pub fn trivial(group: &FiniteGroup, rank: usize) -> Self {
        GLattice { rank, rho: vec![IntMatrix::identity(rank); group.order()] }
    }

    /// The lattice generated by one involution `s` over `C₂ = {0, 1}`.
    pub fn from_involution(s: &IntMatrix) -> Result<Self> {
        if !s.is_square() || (s * s) != IntMatrix::identity(s.rows()) {
            return Err(Error::NotAnInvolution);
        }
        Ok(GLattice { rank: s.rows(), rho: vec![IntMatrix::identity(s.rows()), s.clone()] })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rho(&self, g: usize) -> &IntMatrix {
        &self.rho[g]
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.rho
    }

    pub fn direct_sum(&self, other: &GLattice) -> GLattice {
        assert_eq!(self.rho.len(), other.rho.len(), "lattices over different groups");
        GLattice {
            rank: self.rank + other.rank,
            rho: self.rho.iter().zip(&other.rho).map(|(a, b)| a.direct_sum(b)).collect(),
        }
    }

    /// Same module written in the basis given by the columns of `p`: `ρ'(g) = p⁻¹ρ(g)p`.
    pub fn change_basis(&self, p: &IntMatrix) -> Result<GLattice> {
        let pinv = p.inverse_unimodular()?;
        Ok(GLattice { rank: self.rank, rho: self.rho.iter().map(|a| &(&pinv * a) * p).collect() })
    }

    /// Regarded as a free coefficient module.
    pub fn as_module(&self) -> CoeffModule {
        CoeffModule { rank: self.rank, modulus: None, action: self.rho.clone() }
    }

    /// `N/nN` as a finite module.
    pub fn reduce(&self, n: &BigInt) -> CoeffModule {
        CoeffModule {
            rank: self.rank,
            modulus: Some(n.clone()),
            action: self.rho.iter().map(|a| a.reduce_mod(n)).collect(),
        }
    }
}

/// `Z^k` or `(Z/n)^k` with a group action, one matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffModule {
    rank: usize,
    modulus: Option<BigInt>,
    action: Vec<IntMatrix>,
}

impl CoeffModule {
    /// Validates the group law (modulo `n` when present). Matrices are
    /// reduced into `[0, n)`.
    pub fn new(group: &FiniteGroup, rank: usize, modulus: Option<BigInt>, action: Vec<IntMatrix>) -> Result<Self> {
        if let Some(n) = &modulus {
            if n < &BigInt::from(2) {
                return Err(Error::InvalidModule(format!("modulus {n} must be at least 2")));
            }
        }
        let action: Vec<IntMatrix> = match &modulus {
            Some(n) => action.iter().map(|a| a.reduce_mod(n)).collect(),
            None => action,
        };
        check_action(group, rank, &action, modulus.as_ref())?;
        Ok(CoeffModule { rank, modulus, action })
    }

    pub fn trivial(group: &FiniteGroup, rank: usize, modulus: Option<BigInt>) -> Self {
        CoeffModule { rank, modulus, action: vec![IntMatrix::identity(rank); group.order()] }
    }

    /// `Z/n` (or `Z` when `n` is `None`) with `g` acting by the scalar `chi[g]`.
    pub fn scalar(group: &FiniteGroup, modulus: Option<BigInt>, chi: &[i64]) -> Result<Self> {
        let action = chi.iter().map(|&c| IntMatrix::diagonal([c])).collect();
        CoeffModule::new(group, 1, modulus, action)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn group_order(&self) -> usize {
        self.action.len()
    }

    /// Reduces coordinates into canonical form (`[0, n)` when finite).
    pub fn normalize(&self, v: &[BigInt]) -> Vec<BigInt> {
        match &self.modulus {
            Some(n) => reduce_vec(v, n),
            None => v.to_vec(),
        }
    }

    pub fn act(&self, g: usize, v: &[BigInt]) -> Vec<BigInt> {
        self.normalize(&self.action[g].mul_vec(v))
    }

    /// The same module seen through a group homomorphism `φ: H → G`
    /// given as the list `φ(0), φ(1), …`.
    pub fn pull_back(&self, phi: &[usize]) -> CoeffModule {
        CoeffModule {
            rank: self.rank,
            modulus: self.modulus.clone(),
            action: phi.iter().map(|&g| self.action[g].clone()).collect(),
        }
    }

    pub fn direct_sum(&self, other: &CoeffModule) -> Result<CoeffModule> {
        if self.modulus != other.modulus || self.action.len() != other.action.len() {
            return Err(Error::InvalidModule("direct sum of incompatible modules".into()));
        }
        Ok(CoeffModule {
            rank: self.rank + other.rank,
            modulus: self.modulus.clone(),
            action: self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect(),
        })
    }
}

/// A group-equivariant homomorphism between coefficient modules, as a
/// matrix acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub matrix: IntMatrix,
}

impl ModuleMap {
    pub fn new(matrix: IntMatrix) -> Self {
        ModuleMap { matrix }
    }

    pub fn identity(rank: usize) -> Self {
        ModuleMap { matrix: IntMatrix::identity(rank) }
    }

    /// Checks that the map is well defined and commutes with the actions.
    pub fn check(&self, source: &CoeffModule, target: &CoeffModule) -> Result<()> {
        let f = &self.matrix;
        if f.rows() != target.rank || f.cols() != source.rank || source.group_order() != target.group_order() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} map between modules of ranks {} and {}",
                f.rows(),
                f.cols(),
                source.rank,
                target.rank
            )));
        }
        let vanishes = |m: &IntMatrix| match &target.modulus {
            Some(n) => m.reduce_mod(n).is_zero(),
            None => m.is_zero(),
        };
        // n·F must vanish in the target for F to descend from Z^k to (Z/n)^k
        if let Some(n) = &source.modulus {
            if !vanishes(&f.scale(n)) {
                return Err(Error::NotEquivariant);
            }
        }
        for (a, b) in source.action.iter().zip(&target.action) {
            if !vanishes(&(f * a).sub(&(b * f))) {
                return Err(Error::NotEquivariant);
            }
        }
        Ok(())
    }

    pub fn apply(&self, target: &CoeffModule, v: &[BigInt]) -> Vec<BigInt> {
        target.normalize(&self.matrix.mul_vec(v))
    }
}

fn check_action(group: &FiniteGroup, rank: usize, action: &[IntMatrix], modulus: Option<&BigInt>) -> Result<()> {
    let err = Error::InvalidModule;
    if action.len() != group.order() {
        return Err(err(format!("{} action matrices for a group of order {}", action.len(), group.order())));
    }
    if action.iter().any(|a| a.rows() != rank || a.cols() != rank) {
        return Err(err(format!("action matrices must be {rank}x{rank}")));
    }
    let eq = |a: &IntMatrix, b: &IntMatrix| match modulus {
        Some(n) => a.sub(b).reduce_mod(n).is_zero(),
        None => a == b,
    };
    if !eq(&action[group.identity()], &IntMatrix::identity(rank)) {
        return Err(err("identity does not act trivially".into()));
    }
    for g in group.elements() {
        for h in group.elements() {
            if !eq(&action[group.mul(g, h)], &(&action[g] * &action[h])) {
                return Err(err(format!("action is not a homomorphism at ({g}, {h})")));
            }
        }
    }
    Ok(())
}

/// The permutation lattice of a Galois datum: `ρ(g) e_i = e_{g(i)}`.
pub fn permutation_lattice(datum: &GaloisDatum) -> GLattice {
    let r = datum.rank();
    let rho = datum
        .group()
        .elements()
        .map(|g| {
            let p = datum.perm(g);
            IntMatrix::from_fn(r, r, |i, j| if p[j] == i { BigInt::one() } else { BigInt::zero() })
        })
        .collect();
    GLattice { rank: r, rho }
}

/// Permutation lattice of an arbitrary permutation representation.
pub fn permutation_lattice_of(group: &FiniteGroup, perms: &[Vec<usize>]) -> Result<GLattice> {
    let r = perms.first().map_or(0, Vec::len);
    let rho = perms
        .iter()
        .map(|p| IntMatrix::from_fn(r, r, |i, j| if p[j] == i { BigInt::one() } else { BigInt::zero() }))
        .collect();
    GLattice::new(group, r, rho)
}

fn twist_factor(chi: i64, t: i64, modulus: Option<&BigInt>) -> Result<BigInt> {
    let c = BigInt::from(chi);
    match modulus {
        None => {
            if chi != 1 && chi != -1 {
                return Err(Error::NonSignCharacterOnLattice);
            }
            Ok(if chi == -1 && t.rem_euclid(2) == 1 { -BigInt::one() } else { BigInt::one() })
        }
        Some(n) => {
            let base = if t >= 0 {
                c.mod_floor(n)
            } else {
                mod_inverse(&c, n).ok_or_else(|| Error::InvalidModule(format!("{chi} is not a unit modulo {n}")))?
            };
            Ok(base.modpow(&BigInt::from(t.unsigned_abs()), n))
        }
    }
}

/// `M(t)`: the action of `g` multiplied by `chi[g]^t`.
pub fn tate_twist(module: &CoeffModule, group: &FiniteGroup, chi: &[i64], t: i64) -> Result<CoeffModule> {
    if chi.len() != module.action.len() {
        return Err(Error::DimensionMismatch("one character value per group element required".into()));
    }
    let action = module
        .action
        .iter()
        .zip(chi)
        .map(|(a, &c)| Ok(a.scale(&twist_factor(c, t, module.modulus.as_ref())?)))
        .collect::<Result<Vec<_>>>()?;
    CoeffModule::new(group, module.rank, module.modulus.clone(), action)
}

/// Lattice version of [`tate_twist`]; the character must be `±1`-valued.
pub fn tate_twist_lattice(lattice: &GLattice, group: &FiniteGroup, chi: &[i64], t: i64) -> Result<GLattice> {
    let m = tate_twist(&lattice.as_module(), group, chi, t)?;
    Ok(GLattice { rank: m.rank, rho: m.action })
}

/// The sign character of `C₂ = {0, 1}`.
pub fn sign_character() -> Vec<i64> {
    vec![1, -1]
}

/// Fixed points `M^G` as the kernel of the stacked `ρ(g) − I`.
pub fn invariants(module: &CoeffModule) -> Result<Subquotient> {
    let k = module.rank;
    let mut stacked = IntMatrix::zeros(0, k);
    for a in &module.action {
        stacked = stacked.vstack(&a.sub(&IntMatrix::identity(k)));
    }
    homology_of_pair(&stacked, &IntMatrix::zeros(k, 0), module.modulus.as_ref())
}

/// Structure of the fixed submodule.
pub fn invariants_finite(module: &CoeffModule, group: &FiniteGroup) -> Result<crate::intlat::FinAbGroup> {
    if module.group_order() != group.order() {
        return Err(Error::DimensionMismatch("module and group have different orders".into()));
    }
    Ok(invariants(module)?.group)
}

/// Index of the pair `(i, j)`, `i < j`, in lexicographic order among `r` points.
pub fn pair_index(r: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < r);
    i * (2 * r - i - 1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)` with `i < j`, in lexicographic order.
pub fn pairs(r: usize) -> Vec<(usize, usize)> {
    (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect()
}

/// `⊕_{i<j} Z/m·e_ij` with `g·e_ij = χ(g)⁻¹·ε·e_{g(i)g(j)}`, where `ε = −1`
/// when `g` reverses the order of the pair.
pub fn pair_module(datum: &GaloisDatum, m: u64) -> Result<CoeffModule> {
    if m < 2 || !datum.modulus().is_multiple_of(m) {
        return Err(Error::ModulusIncompatible { modulus: m, cyclotomic: datum.modulus() });
    }
    let r = datum.rank();
    let all = pairs(r);
    let n = BigInt::from(m);
    let action = datum
        .group()
        .elements()
        .map(|g| {
            let p = datum.perm(g);
            let unit = BigInt::from(datum.chi_inverse(g) % m);
            let mut a = IntMatrix::zeros(all.len(), all.len());
            for (col, &(i, j)) in all.iter().enumerate() {
                let (x, y) = (p[i], p[j]);
                let (row, sign) = if x < y { (pair_index(r, x, y), 1i64) } else { (pair_index(r, y, x), -1) };
                a[(row, col)] = (&unit * sign).mod_floor(&n);
            }
            a
        })
        .collect();
    CoeffModule::new(datum.group(), all.len(), Some(n), action)
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(n).extended_gcd(n);
    e.gcd.is_one().then(|| e.x.mod_floor(n))
}
