use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gmod::{c2_decompose, sign_character, tate_twist_lattice, CoeffModule, FiniteGroup, GLattice};
use crate::hs::{d2_02, D2Map, SplitExtension};
use crate::intlat::{FinAbGroup, IntMatrix};

/// `d₂^{0,2}` for `π₁(T_ℂ) ⋊ Gal(ℂ/ℝ)` with coefficients `μ_n`.
#[derive(Clone, Debug)]
pub struct RealTorusReport {
    pub modulus: u64,
    /// `(a, b, c)` with `X ≅ Z^a ⊕ Z(1)^b ⊕ Ind^c`
    pub decomposition: (usize, usize, usize),
    pub d2: D2Map,
    /// `H²(N, μ_n)^{C₂}`
    pub invariants: FinAbGroup,
}

impl RealTorusReport {
    pub fn d2_is_zero(&self) -> bool {
        self.d2.is_zero()
    }
}

/// Builds `N = X(1)` and `μ_n` (conjugation acting by `−1`) and computes
/// `d₂^{0,2}`. `x` is the matrix of complex conjugation on `X_*(T)`.
pub fn real_torus_check(x: &IntMatrix, n: u64) -> Result<RealTorusReport> {
    if n < 2 {
        return Err(Error::InvalidModule(format!("coefficient level {n} must be at least 2")));
    }
    let decomposition = c2_decompose(x)?.triple();
    let c2 = FiniteGroup::cyclic(2);
    let lattice = tate_twist_lattice(&GLattice::from_involution(x)?, &c2, &sign_character(), 1)?;
    let mu = CoeffModule::scalar(&c2, Some(BigInt::from(n)), &sign_character())?;
    let ext = SplitExtension::new(c2, lattice, mu)?;
    let d2 = d2_02(&ext)?;
    let invariants = d2.domain.clone();
    Ok(RealTorusReport { modulus: n, decomposition, d2, invariants })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let rep = real_torus_check(&IntMatrix::identity(1), 5).unwrap();
        assert!(rep.d2_is_zero());
        assert!(rep.invariants.is_trivial());
        assert_eq!(rep.decomposition, (1, 0, 0));

        let ind = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let rep = real_torus_check(&ind, 2).unwrap();
        assert!(rep.d2_is_zero());
        assert_eq!(rep.decomposition, (0, 0, 1));

        let mixed = IntMatrix::diagonal([1, -1]);
        let rep = real_torus_check(&mixed, 4).unwrap();
        assert!(rep.d2_is_zero());
        assert_eq!(rep.decomposition, (1, 1, 0));
    }

    #[test]
    fn rejects_non_involutions() {
        let bad = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(real_torus_check(&bad, 2).unwrap_err(), Error::NotAnInvolution);
    }
}
