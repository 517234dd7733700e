use num_bigint::BigInt;
use num_traits::Zero;

use super::resolution::{normalized_bar_resolution, BarTuples, FreeElement, FreeResolution, ResolutionChoice};
use crate::error::{Error, Result};
use crate::gmod::{CoeffModule, FiniteGroup, ModuleMap, Subgroup};
use crate::intlat::{FinAbGroup, IntMatrix, Subquotient};

/// Largest cohomological degree supported.
pub const MAX_COHOMOLOGY_DEGREE: usize = 3;

/// Matrix of `f ↦ (e_j ↦ f(x_j))` where `x_j = images[j]` lies in a free
/// module with `source_rank` generators and `f` is stored blockwise.
pub fn hom_matrix(images: &[FreeElement], source_rank: usize, module: &CoeffModule) -> IntMatrix {
    let k = module.rank();
    let mut out = IntMatrix::zeros(images.len() * k, source_rank * k);
    for (j, x) in images.iter().enumerate() {
        for (i, g, c) in x.terms() {
            let a = module.action(g);
            for r in 0..k {
                for s in 0..k {
                    let v = &a[(r, s)];
                    if !v.is_zero() {
                        out[(j * k + r, i * k + s)] += v * c;
                    }
                }
            }
        }
    }
    match module.modulus() {
        Some(n) => out.reduce_mod(n),
        None => out,
    }
}

/// Value of a normalized bar cochain at an arbitrary tuple (zero on
/// tuples containing the identity).
pub fn eval_cochain(bar: &BarTuples, k: usize, f: &[BigInt], tuple: &[usize]) -> Vec<BigInt> {
    match bar.index_of(tuple) {
        Some(i) => f[i * k..(i + 1) * k].to_vec(),
        None => vec![BigInt::zero(); k],
    }
}

/// The inhomogeneous coboundary of a normalized `n`-cochain:
/// `(δf)(g₁,…,g_{n+1}) = g₁f(g₂,…) + Σ (−1)^i f(…,g_i g_{i+1},…) + (−1)^{n+1} f(g₁,…,g_n)`.
pub fn bar_coboundary(group: &FiniteGroup, module: &CoeffModule, n: usize, f: &[BigInt]) -> Vec<BigInt> {
    let k = module.rank();
    let bar = BarTuples::new(group, n + 1, true);
    let mut out = Vec::with_capacity(bar.count(n + 1) * k);
    for t in bar.tuples(n + 1) {
        let mut acc = module.action(t[0]).mul_vec(&eval_cochain(&bar, k, f, &t[1..]));
        for i in 0..n {
            let mut face = t[..i].to_vec();
            face.push(group.mul(t[i], t[i + 1]));
            face.extend_from_slice(&t[i + 2..]);
            let v = eval_cochain(&bar, k, f, &face);
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            acc.iter_mut().zip(v).for_each(|(a, b)| *a += b * sign);
        }
        let v = eval_cochain(&bar, k, f, &t[..n]);
        let sign = if (n + 1).is_multiple_of(2) { 1 } else { -1 };
        acc.iter_mut().zip(v).for_each(|(a, b)| *a += b * sign);
        out.extend(module.normalize(&acc));
    }
    out
}

/// A cohomology class, represented by a normalized bar cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: usize,
    /// values on the normalized bar tuples of the degree, `k` coordinates each
    pub cocycle: Vec<BigInt>,
    /// coordinates in the invariant-factor presentation of `H^n`
    pub coords: Vec<BigInt>,
}

/// `H^n(G, M)` together with the maps between cocycles and classes.
#[derive(Clone, Debug)]
pub struct Cohomology {
    group: FiniteGroup,
    module: CoeffModule,
    degree: usize,
    sub: Subquotient,
    periodic: bool,
    /// normalized bar cochains → resolution cochains, when the resolution is not the bar
    from_bar: Option<IntMatrix>,
    /// resolution cochains → normalized bar cochains
    to_bar: Option<IntMatrix>,
    bar: BarTuples,
}

/// `H^n(G, M)` with the automatic resolution choice.
pub fn cohomology(group: &FiniteGroup, module: &CoeffModule, n: usize) -> Result<Cohomology> {
    cohomology_with(group, module, n, ResolutionChoice::Auto)
}

pub fn cohomology_with(
    group: &FiniteGroup,
    module: &CoeffModule,
    n: usize,
    choice: ResolutionChoice,
) -> Result<Cohomology> {
    if n > MAX_COHOMOLOGY_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    if module.group_order() != group.order() {
        return Err(Error::DimensionMismatch("module and group have different orders".into()));
    }
    let res = FreeResolution::for_group(group, n + 1, choice)?;
    let k = module.rank();
    let d_out = hom_matrix(res.boundaries(n + 1), res.rank(n), module);
    let d_in = if n == 0 {
        IntMatrix::zeros(res.rank(0) * k, 0)
    } else {
        hom_matrix(res.boundaries(n), res.rank(n - 1), module)
    };
    let sub = crate::intlat::homology_of_pair(&d_out, &d_in, module.modulus())?;
    let (from_bar, to_bar) = if res.is_normalized_bar() {
        (None, None)
    } else {
        let b = normalized_bar_resolution(group, n)?;
        let phi = res.chain_map_to(&b, n);
        let psi = b.chain_map_to(&res, n);
        (Some(hom_matrix(&phi[n], b.rank(n), module)), Some(hom_matrix(&psi[n], res.rank(n), module)))
    };
    Ok(Cohomology {
        group: group.clone(),
        module: module.clone(),
        degree: n,
        sub,
        periodic: res.is_periodic(),
        from_bar,
        to_bar,
        bar: BarTuples::new(group, n, true),
    })
}

impl Cohomology {
    pub fn structure(&self) -> &FinAbGroup {
        &self.sub.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module(&self) -> &CoeffModule {
        &self.module
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn uses_periodic_resolution(&self) -> bool {
        self.periodic
    }

    /// Normalized bar tuples of degree `n`, indexing cochain blocks.
    pub fn bar_tuples(&self) -> &[Vec<usize>] {
        self.bar.tuples(self.degree)
    }

    pub fn cochain_len(&self) -> usize {
        self.bar.count(self.degree) * self.module.rank()
    }

    /// Value of a bar cochain of this degree at a tuple.
    pub fn eval(&self, f: &[BigInt], tuple: &[usize]) -> Vec<BigInt> {
        eval_cochain(&self.bar, self.module.rank(), f, tuple)
    }

    pub fn is_cocycle(&self, f: &[BigInt]) -> bool {
        f.len() == self.cochain_len()
            && bar_coboundary(&self.group, &self.module, self.degree, f).iter().all(Zero::is_zero)
    }

    /// Class of a normalized bar cocycle.
    pub fn class_of(&self, f: &[BigInt]) -> Result<CohomologyClass> {
        if f.len() != self.cochain_len() {
            return Err(Error::DimensionMismatch(format!(
                "cochain of length {} in degree {} needs {}",
                f.len(),
                self.degree,
                self.cochain_len()
            )));
        }
        if !self.is_cocycle(f) {
            return Err(Error::NotACycle);
        }
        let z = match &self.from_bar {
            Some(m) => self.module.normalize(&m.mul_vec(f)),
            None => f.to_vec(),
        };
        let coords = self.sub.class_of(&z)?;
        Ok(CohomologyClass { degree: self.degree, cocycle: self.module.normalize(f), coords })
    }

    /// The class with the given coordinates, with a bar cocycle representative.
    pub fn class_from_coords(&self, coords: &[BigInt]) -> CohomologyClass {
        let z = self.sub.lift(coords);
        let cocycle = match &self.to_bar {
            Some(m) => self.module.normalize(&m.mul_vec(&z)),
            None => self.module.normalize(&z),
        };
        CohomologyClass { degree: self.degree, cocycle, coords: self.sub.group.normalize(coords) }
    }

    /// One representative class per cyclic summand of the structure.
    pub fn representatives(&self) -> Vec<CohomologyClass> {
        let r = self.sub.group.ngens();
        (0..r)
            .map(|i| {
                let mut e = vec![BigInt::zero(); r];
                e[i] = 1.into();
                self.class_from_coords(&e)
            })
            .collect()
    }

    pub fn zero_class(&self) -> CohomologyClass {
        self.class_from_coords(&vec![BigInt::zero(); self.sub.group.ngens()])
    }

    pub fn is_zero(&self, class: &CohomologyClass) -> bool {
        self.sub.group.is_zero_coords(&class.coords)
    }

    pub fn same_class(&self, a: &CohomologyClass, b: &CohomologyClass) -> bool {
        self.sub.group.normalize(&a.coords) == self.sub.group.normalize(&b.coords)
    }

    /// Cohomology of the subgroup `h` with the restricted module, same degree.
    pub fn of_subgroup(&self, h: &Subgroup) -> Result<Cohomology> {
        cohomology(&h.group, &self.module.pull_back(&h.parent_ids), self.degree)
    }
}

/// The class of `f ∘ cocycle` for an equivariant module map `f`.
pub fn map_on_cohomology(
    f: &ModuleMap,
    source: &Cohomology,
    class: &CohomologyClass,
    target: &Cohomology,
) -> Result<CohomologyClass> {
    f.check(&source.module, &target.module)?;
    if source.degree != target.degree || source.group != target.group {
        return Err(Error::DimensionMismatch("cohomology groups of different degree or group".into()));
    }
    let (k, k2) = (source.module.rank(), target.module.rank());
    let mut image = Vec::with_capacity(target.cochain_len());
    for i in 0..source.bar.count(source.degree) {
        image.extend(f.apply(&target.module, &class.cocycle[i * k..(i + 1) * k]));
    }
    debug_assert_eq!(image.len(), source.bar.count(source.degree) * k2);
    target.class_of(&image)
}

fn check_subgroup_pair(g: &Cohomology, h: &Cohomology, sub: &Subgroup) -> Result<()> {
    if sub.parent_ids.iter().any(|&x| x >= g.group.order()) || h.group != sub.group {
        return Err(Error::NotASubgroup("subgroup does not match the cohomology groups".into()));
    }
    if h.module != g.module.pull_back(&sub.parent_ids) || g.degree != h.degree {
        return Err(Error::DimensionMismatch("subgroup cohomology uses a different module or degree".into()));
    }
    Ok(())
}

/// Restriction `H^n(G, M) → H^n(H, M)`.
pub fn restriction(
    g_coh: &Cohomology,
    h_coh: &Cohomology,
    sub: &Subgroup,
    class: &CohomologyClass,
) -> Result<CohomologyClass> {
    check_subgroup_pair(g_coh, h_coh, sub)?;
    let mut f = Vec::with_capacity(h_coh.cochain_len());
    for t in h_coh.bar_tuples() {
        let parent: Vec<usize> = t.iter().map(|&x| sub.parent_ids[x]).collect();
        f.extend(g_coh.eval(&class.cocycle, &parent));
    }
    h_coh.class_of(&f)
}

/// Corestriction (transfer) `H^n(H, M) → H^n(G, M)`.
///
/// Uses the chain map `x₀[g₁|…|g_n] ↦ h(x₀)[h(x₀)⁻¹h(x₁)|…]` from the bar
/// resolution of `G` to that of `H`, where `x_i = x₀g₁⋯g_i` and
/// `x = h(x)·s(x)` with `s(x)` the chosen representative of `Hx`.
pub fn corestriction(
    h_coh: &Cohomology,
    g_coh: &Cohomology,
    sub: &Subgroup,
    class: &CohomologyClass,
) -> Result<CohomologyClass> {
    check_subgroup_pair(g_coh, h_coh, sub)?;
    let g = &g_coh.group;
    let module = &g_coh.module;
    let k = module.rank();
    let n = g_coh.degree;
    // h-part of every element, as a local id of H
    let hpart: Vec<usize> = g
        .elements()
        .map(|x| {
            let rep = sub.parent_ids.iter().map(|&h| g.mul(h, x)).min().unwrap();
            let h = g.mul(x, g.inv(rep));
            sub.local_id(h).expect("coset decomposition")
        })
        .collect();
    let transversal = g.left_transversal(&sub.parent_ids);
    let hg = &sub.group;
    let mut f = Vec::with_capacity(g_coh.cochain_len());
    for t in g_coh.bar_tuples() {
        let mut acc = vec![BigInt::zero(); k];
        for &rep in &transversal {
            let mut x = g.inv(rep);
            let h0 = hpart[x];
            let mut prev = h0;
            let mut ks = Vec::with_capacity(n);
            for &gi in t {
                x = g.mul(x, gi);
                let hi = hpart[x];
                ks.push(hg.mul(hg.inv(prev), hi));
                prev = hi;
            }
            let v = h_coh.eval(&class.cocycle, &ks);
            let act = g.mul(rep, sub.parent_ids[h0]);
            let w = module.action(act).mul_vec(&v);
            acc.iter_mut().zip(w).for_each(|(a, b)| *a += b);
        }
        f.extend(module.normalize(&acc));
    }
    g_coh.class_of(&f)
}
