//! The differential `d₂^{0,2}: H²(N,M)^π → H²(π, H¹(N,M))` and the class `v₂`.

use num_bigint::BigInt;

use super::laurent::SplitExtension;
use super::lattice_coh::{h2_lattice, lattice_cohomology, wedge_index, zero_vec};
use super::wall::{mask_of, subsets, Gen, WallResolution};
use crate::cohom::{cohomology, map_on_cohomology, Cohomology, CohomologyClass};
use crate::error::{Error, Result};
use crate::gmod::{invariants, CoeffModule, FiniteGroup, GLattice, ModuleMap};
use crate::intlat::{FinAbGroup, IntMatrix, Subquotient};

/// A bilinear form `a: N × N → M`, which is a 2-cocycle on `N = Z^r` with
/// trivial coefficients; `values[i][j] = a(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearCocycle {
    pub values: Vec<Vec<Vec<BigInt>>>,
}

impl BilinearCocycle {
    /// The form with `a(e_i, e_j) = α̃(e_i∧e_j)` for `i < j` and zero otherwise.
    pub fn from_alternating(r: usize, alpha: &ModuleMap) -> Self {
        let k = alpha.matrix.rows();
        let values = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| if i < j { alpha.matrix.column(wedge_index(r, i, j)) } else { zero_vec(k) })
                    .collect()
            })
            .collect();
        BilinearCocycle { values }
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }
}

/// `α̃(e_i∧e_j) = a(e_i,e_j) − a(e_j,e_i)`, checked to be `π`-equivariant.
pub fn uct_identify(ext: &SplitExtension, a: &BilinearCocycle) -> Result<ModuleMap> {
    let r = ext.lattice().rank();
    let m = ext.module();
    let k = m.rank();
    if a.rank() != r || a.values.iter().any(|row| row.len() != r || row.iter().any(|v| v.len() != k)) {
        return Err(Error::DimensionMismatch(format!("bilinear form must be {r}x{r} with values of length {k}")));
    }
    let pairs = subsets(r, 2);
    let mut mat = IntMatrix::zeros(k, pairs.len());
    for (s, p) in pairs.iter().enumerate() {
        let (i, j) = (p[0], p[1]);
        let v: Vec<BigInt> = a.values[i][j].iter().zip(&a.values[j][i]).map(|(x, y)| x - y).collect();
        for (l, x) in m.normalize(&v).into_iter().enumerate() {
            mat[(l, s)] = x;
        }
    }
    let alpha = ModuleMap::new(mat);
    let hom = lattice_cohomology(ext.pi(), ext.lattice(), m, 2)?;
    let coords = alternating_coords(&alpha);
    for g in ext.pi().elements() {
        if hom.act(g, &coords) != hom.normalize(&coords) {
            return Err(Error::NotInvariant);
        }
    }
    Ok(alpha)
}

/// Coordinates of `α̃` in `Hom(Λ²N, M)` (index `S·k + l`).
pub fn alternating_coords(alpha: &ModuleMap) -> Vec<BigInt> {
    let (k, b) = (alpha.matrix.rows(), alpha.matrix.cols());
    (0..b * k).map(|x| alpha.matrix[(x % k, x / k)].clone()).collect()
}

pub fn alternating_from_coords(coords: &[BigInt], k: usize) -> ModuleMap {
    let b = coords.len().checked_div(k).unwrap_or(0);
    ModuleMap::new(IntMatrix::from_fn(k, b, |l, s| coords[s * k + l].clone()))
}

/// `H²(N, M)^π ≅ Hom_π(Λ²N, M)` as a subgroup of `Hom(Λ²N, M)`.
pub fn invariant_classes(ext: &SplitExtension) -> Result<Subquotient> {
    invariants(&lattice_cohomology(ext.pi(), ext.lattice(), ext.module(), 2)?)
}

/// `H²(π, Hom(N, M))`, the target of `d₂^{0,2}`.
pub fn d2_target(ext: &SplitExtension) -> Result<Cohomology> {
    cohomology(ext.pi(), &lattice_cohomology(ext.pi(), ext.lattice(), ext.module(), 1)?, 2)
}

/// The `(2,1)` cochain `f∘d₂ + g∘d₁` for the `(0,2)` cochain `f = α̃` and an
/// optional `(1,1)` cochain `g` (given blockwise on `W_{1,1}` generators).
///
/// The result is laid out as a normalized bar 2-cochain of `π` with values in
/// `Hom(N, M)` (index `(t·r + i)·k + l`).
pub fn d2_cochain(
    w: &WallResolution,
    module: &CoeffModule,
    alpha: &ModuleMap,
    correction: Option<&[BigInt]>,
) -> Vec<BigInt> {
    let r = w.rank();
    let k = module.rank();
    let f = |e: Gen| -> Vec<BigInt> {
        let (p, _, mask) = e;
        if p == 0 && mask.count_ones() == 2 {
            let s = super::wall::mask_elements(mask);
            alpha.matrix.column(wedge_index(r, s[0], s[1]))
        } else {
            zero_vec(k)
        }
    };
    let g = |e: Gen| -> Vec<BigInt> {
        match correction {
            Some(c) if e.0 == 1 && e.2.count_ones() == 1 => {
                let i = w.local_index(e);
                c[i * k..(i + 1) * k].to_vec()
            }
            _ => zero_vec(k),
        }
    };
    let mut out = Vec::with_capacity(w.bar().count(2) * r * k);
    for t in 0..w.bar().count(2) {
        for i in 0..r {
            let e = (2, t, mask_of(&[i]));
            let mut v = w.evaluate(module, &w.differential(2, e), f);
            if correction.is_some() {
                let u = w.evaluate(module, &w.differential(1, e), g);
                v.iter_mut().zip(u).for_each(|(a, b)| *a += b);
            }
            out.extend(module.normalize(&v));
        }
    }
    out
}

/// The class `d₂(α)` for an invariant alternating map `α̃`.
pub fn d2_class(
    w: &WallResolution,
    module: &CoeffModule,
    alpha: &ModuleMap,
    target: &Cohomology,
) -> Result<CohomologyClass> {
    target.class_of(&d2_cochain(w, module, alpha, None))
}

/// Matrix of `d₂^{0,2}` with respect to the generators of both groups.
#[derive(Clone, Debug)]
pub struct D2Map {
    pub domain: FinAbGroup,
    pub codomain: FinAbGroup,
    /// column `j` holds the codomain coordinates of the image of generator `j`
    pub matrix: IntMatrix,
}

impl D2Map {
    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.codomain.is_zero_coords(&self.matrix.column(j)))
    }
}

/// `d₂^{0,2}` for the extension, building the resolution on the way.
pub fn d2_02(ext: &SplitExtension) -> Result<D2Map> {
    let w = WallResolution::new(ext, 3)?;
    d2_02_with(&w, ext)
}

/// `d₂^{0,2}` reusing a resolution of total degree at least 3.
pub fn d2_02_with(w: &WallResolution, ext: &SplitExtension) -> Result<D2Map> {
    if w.max_degree() < 3 {
        return Err(Error::DegreeTooLarge(w.max_degree()));
    }
    let domain = invariant_classes(ext)?;
    let target = d2_target(ext)?;
    let k = ext.module().rank();
    let cols: Vec<Vec<BigInt>> = domain
        .group
        .generators
        .iter()
        .map(|v| Ok(d2_class(w, ext.module(), &alternating_from_coords(v, k), &target)?.coords))
        .collect::<Result<_>>()?;
    Ok(D2Map {
        domain: domain.group.clone(),
        codomain: target.structure().clone(),
        matrix: IntMatrix::from_columns(&cols, target.structure().ngens()),
    })
}

/// `v₂(N) ∈ H²(π, Hom(N, Λ²N))`.
#[derive(Clone, Debug)]
pub struct V2Class {
    pub cohomology: Cohomology,
    pub class: CohomologyClass,
}

impl V2Class {
    pub fn is_zero(&self) -> bool {
        self.cohomology.is_zero(&self.class)
    }
}

/// `v₂(N) = d₂(id)` for the universal coefficients `Λ²N`.
pub fn v2(pi: &FiniteGroup, n: &GLattice) -> Result<V2Class> {
    let ext = SplitExtension::new(pi.clone(), n.clone(), h2_lattice(pi, n)?)?;
    let w = WallResolution::new(&ext, 3)?;
    v2_with(&w, &ext)
}

/// `v₂` from a resolution of the extension whose module is `Λ²N`.
pub fn v2_with(w: &WallResolution, ext: &SplitExtension) -> Result<V2Class> {
    let univ = h2_lattice(ext.pi(), ext.lattice())?;
    let cohom = cohomology(ext.pi(), &lattice_cohomology(ext.pi(), ext.lattice(), &univ, 1)?, 2)?;
    let class = d2_class(w, &univ, &ModuleMap::identity(univ.rank()), &cohom)?;
    Ok(V2Class { cohomology: cohom, class })
}

/// Whether `d₂(α) = α̃_*v₂` for the class of the bilinear cocycle `a`.
pub fn cv_formula_check(ext: &SplitExtension, a: &BilinearCocycle) -> Result<bool> {
    let alpha = uct_identify(ext, a)?;
    let w = WallResolution::new(ext, 3)?;
    let v = v2(ext.pi(), ext.lattice())?;
    cv_formula_check_with(&w, ext, &v, &alpha)
}

/// [`cv_formula_check`] with a prebuilt resolution and `v₂`.
pub fn cv_formula_check_with(w: &WallResolution, ext: &SplitExtension, v: &V2Class, alpha: &ModuleMap) -> Result<bool> {
    let target = d2_target(ext)?;
    let lhs = d2_class(w, ext.module(), alpha, &target)?;
    let r = ext.lattice().rank();
    let push = ModuleMap::new(IntMatrix::identity(r).kronecker(&alpha.matrix));
    let rhs = map_on_cohomology(&push, &v.cohomology, &v.class, &target)?;
    Ok(target.same_class(&lhs, &rhs))
}

/// A random `(1,1)` cochain for choice-independence checks.
pub fn random_correction(w: &WallResolution, module: &CoeffModule, rng: &mut impl rand::Rng) -> Vec<BigInt> {
    let len = w.bar().count(1) * w.rank() * module.rank();
    let v: Vec<BigInt> = (0..len).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
    module.normalize(&v)
}
