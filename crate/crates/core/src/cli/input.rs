use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::gmod::{CoeffModule, FiniteGroup, GLattice, GaloisDatum};
use crate::hs::SplitExtension;
use crate::intlat::IntMatrix;

/// One input file. The `kind` field selects the payload.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InputDocument {
    GaloisDatum(GaloisDatumSpec),
    InvolutionLattice(InvolutionSpec),
    SplitExtension(SplitExtensionSpec),
}

/// Permutations are 1-based images: `perm[i − 1] = g(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisDatumSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub r: usize,
    pub modulus: u64,
    pub generators: Vec<GeneratorSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub perm: Vec<usize>,
    pub unit: u64,
}

/// Complex conjugation on the cocharacter lattice, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitExtensionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub group: GroupSpec,
    pub lattice: LatticeSpec,
    pub coefficients: CoefficientSpec,
}

/// Exactly one field must be set. Element `k` of `cyclic` is `g^k`; the
/// elements of `symmetric` are the permutations in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<usize>,
}

/// Either one matrix per group element or the natural permutation lattice of
/// a symmetric group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub natural_permutation: bool,
}

/// `Z/modulus` (or `Z` without a modulus) of the given rank. The action is
/// trivial unless `action` (one matrix per element) or `character` (one
/// scalar per element, rank 1) is given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<Vec<i64>>,
}

fn one() -> usize {
    1
}

fn is_one(x: &usize) -> bool {
    *x == 1
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InputDocument::GaloisDatum(_) => "galois-datum",
            InputDocument::InvolutionLattice(_) => "involution-lattice",
            InputDocument::SplitExtension(_) => "split-extension",
        }
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            InputDocument::GaloisDatum(s) => s.label.as_deref(),
            InputDocument::InvolutionLattice(s) => s.label.as_deref(),
            InputDocument::SplitExtension(s) => s.label.as_deref(),
        }
    }
}

fn matrix(rows: &[Vec<i64>], what: &str) -> Result<IntMatrix, CliError> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Schema(format!("{what} must be a square matrix")));
    }
    Ok(IntMatrix::from_rows_with_cols(rows, n))
}

impl GaloisDatumSpec {
    pub fn build(&self) -> Result<GaloisDatum, CliError> {
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            if g.perm.contains(&0) {
                return Err(CliError::Schema("permutation entries are 1-based".into()));
            }
            gens.push((g.perm.iter().map(|&x| x - 1).collect(), g.unit));
        }
        Ok(GaloisDatum::from_generators(self.r, self.modulus, &gens)?)
    }
}

impl InvolutionSpec {
    pub fn build(&self) -> Result<IntMatrix, CliError> {
        matrix(&self.matrix, "matrix")
    }
}

impl GroupSpec {
    fn build(&self) -> Result<(FiniteGroup, Option<Vec<Vec<usize>>>), CliError> {
        match (&self.table, self.cyclic, self.symmetric) {
            (Some(t), None, None) => Ok((FiniteGroup::from_table(t.clone())?, None)),
            (None, Some(m), None) if m >= 1 => Ok((FiniteGroup::cyclic(m), None)),
            (None, None, Some(n)) if n >= 1 => {
                let (g, perms) = FiniteGroup::symmetric(n);
                Ok((g, Some(perms)))
            }
            _ => Err(CliError::Schema("group needs exactly one of table, cyclic (>= 1), symmetric (>= 1)".into())),
        }
    }
}

impl SplitExtensionSpec {
    pub fn build(&self) -> Result<SplitExtension, CliError> {
        let (group, perms) = self.group.build()?;
        let lattice = match (&self.lattice.action, self.lattice.natural_permutation, perms) {
            (Some(action), false, _) => {
                let mats = action.iter().map(|m| matrix(m, "lattice action")).collect::<Result<Vec<_>, _>>()?;
                let rank = mats.first().map_or(0, IntMatrix::rows);
                GLattice::new(&group, rank, mats)?
            }
            (None, true, Some(perms)) => crate::gmod::permutation_lattice_of(&group, &perms)?,
            (None, true, None) => {
                return Err(CliError::Schema("natural_permutation needs a symmetric group".into()));
            }
            _ => return Err(CliError::Schema("lattice needs exactly one of action, natural_permutation".into())),
        };
        let c = &self.coefficients;
        let modulus = c.modulus.map(BigInt::from);
        let module = match (&c.action, &c.character) {
            (None, None) => CoeffModule::trivial(&group, c.rank, modulus),
            (Some(action), None) => {
                let mats = action.iter().map(|m| matrix(m, "coefficient action")).collect::<Result<Vec<_>, _>>()?;
                CoeffModule::new(&group, c.rank, modulus, mats)?
            }
            (None, Some(chi)) if c.rank == 1 => CoeffModule::scalar(&group, modulus, chi)?,
            _ => return Err(CliError::Schema("coefficients take at most one of action, character (rank 1)".into())),
        };
        Ok(SplitExtension::new(group, lattice, module)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let d = InputDocument::parse(r#"{"kind":"galois-datum","r":2,"modulus":4,"generators":[{"perm":[2,1],"unit":3}]}"#)
            .unwrap();
        let InputDocument::GaloisDatum(payload) = &d else { panic!("wrong kind") };
        assert_eq!(payload.build().unwrap().group().order(), 2);

        let d = InputDocument::parse(r#"{"kind":"involution-lattice","matrix":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(d.kind(), "involution-lattice");

        let d = InputDocument::parse(
            r#"{"kind":"split-extension","group":{"symmetric":3},"lattice":{"natural_permutation":true},
                "coefficients":{"modulus":2}}"#,
        )
        .unwrap();
        let InputDocument::SplitExtension(payload) = &d else { panic!("wrong kind") };
        assert_eq!(payload.build().unwrap().lattice().rank(), 3);
    }

    #[test]
    fn schema_errors() {
        let bad = [
            r#"{"kind":"galois-datum","r":2,"modulus":4,"generators":[],"extra":1}"#,
            r#"{"kind":"mystery"}"#,
            r#"{"kind":"involution-lattice"}"#,
            "not json",
        ];
        for text in bad {
            assert!(matches!(InputDocument::parse(text), Err(CliError::Schema(_))), "{text}");
        }
        let odd = InputDocument::parse(r#"{"kind":"galois-datum","r":2,"modulus":3,"generators":[]}"#).unwrap();
        let InputDocument::GaloisDatum(payload) = &odd else { panic!("wrong kind") };
        assert!(matches!(payload.build(), Err(CliError::Validation(_))));
    }

    #[test]
    fn round_trip() {
        let text = r#"{"kind":"split-extension","label":"x","group":{"cyclic":2},
            "lattice":{"action":[[[1,0],[0,1]],[[0,1],[1,0]]]},"coefficients":{"modulus":4,"character":[1,-1]}}"#;
        let d = InputDocument::parse(text).unwrap();
        let again = InputDocument::parse(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(d, again);
    }
}
