use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::gmod::FiniteGroup;

/// Largest resolution length supported.
pub const MAX_DEGREE: usize = 4;

/// An element of a free `Z[G]`-module: coefficients on the `Z`-basis
/// `g·e_j`, keyed by `(j, g)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeElement(pub BTreeMap<(usize, usize), i64>);

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement(BTreeMap::new())
    }

    pub fn basis(generator: usize, g: usize) -> Self {
        let mut x = Self::zero();
        x.add_term(generator, g, 1);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, generator: usize, g: usize, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.0.entry((generator, g)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&(generator, g));
        }
    }

    pub fn add_scaled(&mut self, other: &FreeElement, c: i64) {
        for (&(j, g), &v) in &other.0 {
            self.add_term(j, g, c * v);
        }
    }

    /// Left multiplication by the group element `g`.
    pub fn act(&self, group: &FiniteGroup, g: usize) -> FreeElement {
        FreeElement(self.0.iter().map(|(&(j, h), &c)| ((j, group.mul(g, h)), c)).collect())
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.0.iter().map(|(&(j, g), &c)| (j, g, c))
    }
}

/// Normalized bar tuples: sequences of non-identity elements, in
/// lexicographic order of ids, for each degree up to a bound.
#[derive(Clone, Debug)]
pub struct BarTuples {
    tuples: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl BarTuples {
    pub fn new(group: &FiniteGroup, max_degree: usize, normalized: bool) -> Self {
        let letters: Vec<usize> = if normalized { group.non_identity().collect() } else { group.elements().collect() };
        let mut tuples = vec![vec![Vec::new()]];
        for n in 1..=max_degree {
            let prev = &tuples[n - 1];
            let next: Vec<Vec<usize>> = prev
                .iter()
                .flat_map(|t| {
                    letters.iter().map(move |&g| {
                        let mut u = t.clone();
                        u.push(g);
                        u
                    })
                })
                .collect();
            tuples.push(next);
        }
        let index = tuples
            .iter()
            .map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect())
            .collect();
        BarTuples { tuples, index }
    }

    pub fn max_degree(&self) -> usize {
        self.tuples.len() - 1
    }

    pub fn count(&self, n: usize) -> usize {
        self.tuples[n].len()
    }

    pub fn tuple(&self, n: usize, i: usize) -> &[usize] {
        &self.tuples[n][i]
    }

    pub fn tuples(&self, n: usize) -> &[Vec<usize>] {
        &self.tuples[n]
    }

    /// Index of a tuple; `None` for tuples containing the identity in the
    /// normalized setting.
    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t.len())?.get(t).copied()
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Bar { normalized: bool, tuples: BarTuples },
    Periodic { exponent: Vec<usize>, generator: usize },
}

/// Which resolution a cohomology computation should use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolutionChoice {
    /// periodic for nontrivial cyclic groups, normalized bar otherwise
    Auto,
    NormalizedBar,
    Periodic,
}

/// A free resolution `P_d → … → P_0 → Z` over `Z[G]` with a `Z`-linear
/// contracting homotopy.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    group: FiniteGroup,
    ranks: Vec<usize>,
    /// `boundaries[n][j] = ∂(e_j) ∈ P_{n−1}` for `n ≥ 1`; `boundaries[0]` is empty
    boundaries: Vec<Vec<FreeElement>>,
    kind: Kind,
}

/// The standard (unnormalized) bar resolution, `P_n` free on `G^n`.
pub fn bar_resolution(group: &FiniteGroup, d: usize) -> Result<FreeResolution> {
    FreeResolution::bar(group, d, false)
}

/// The normalized bar resolution, `P_n` free on tuples of non-identity elements.
pub fn normalized_bar_resolution(group: &FiniteGroup, d: usize) -> Result<FreeResolution> {
    FreeResolution::bar(group, d, true)
}

/// The 2-periodic resolution of a cyclic group with `∂ = t − 1` in odd
/// degrees and `∂ = N` in even degrees.
pub fn periodic_resolution(group: &FiniteGroup, d: usize) -> Result<FreeResolution> {
    if d > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(d));
    }
    let t = group
        .cyclic_generator()
        .ok_or_else(|| Error::InvalidGroup("periodic resolution needs a cyclic group".into()))?;
    let m = group.order();
    let mut exponent = vec![0; m];
    let mut x = group.identity();
    for k in 0..m {
        exponent[x] = k;
        x = group.mul(x, t);
    }
    let e = group.identity();
    let mut boundaries = vec![Vec::new()];
    for n in 1..=d {
        let mut b = FreeElement::zero();
        if n % 2 == 1 {
            b.add_term(0, t, 1);
            b.add_term(0, e, -1);
        } else {
            for g in group.elements() {
                b.add_term(0, g, 1);
            }
        }
        boundaries.push(vec![b]);
    }
    Ok(FreeResolution {
        group: group.clone(),
        ranks: vec![1; d + 1],
        boundaries,
        kind: Kind::Periodic { exponent, generator: t },
    })
}

impl FreeResolution {
    fn bar(group: &FiniteGroup, d: usize, normalized: bool) -> Result<Self> {
        if d > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(d));
        }
        let tuples = BarTuples::new(group, d, normalized);
        let e = group.identity();
        let mut boundaries = vec![Vec::new()];
        for n in 1..=d {
            let bs = tuples
                .tuples(n)
                .iter()
                .map(|t| {
                    let mut b = FreeElement::zero();
                    let mut push = |face: Vec<usize>, g: usize, c: i64| {
                        if let Some(j) = tuples.index_of(&face) {
                            b.add_term(j, g, c);
                        }
                    };
                    push(t[1..].to_vec(), t[0], 1);
                    for i in 0..n - 1 {
                        let mut face = t[..i].to_vec();
                        face.push(group.mul(t[i], t[i + 1]));
                        face.extend_from_slice(&t[i + 2..]);
                        push(face, e, if (i + 1) % 2 == 0 { 1 } else { -1 });
                    }
                    push(t[..n - 1].to_vec(), e, if n % 2 == 0 { 1 } else { -1 });
                    b
                })
                .collect();
            boundaries.push(bs);
        }
        Ok(FreeResolution {
            group: group.clone(),
            ranks: (0..=d).map(|n| tuples.count(n)).collect(),
            boundaries,
            kind: Kind::Bar { normalized, tuples },
        })
    }

    /// The resolution prescribed by `choice` for cohomology up to degree `d − 1`.
    pub fn for_group(group: &FiniteGroup, d: usize, choice: ResolutionChoice) -> Result<Self> {
        match choice {
            ResolutionChoice::NormalizedBar => normalized_bar_resolution(group, d),
            ResolutionChoice::Periodic => periodic_resolution(group, d),
            ResolutionChoice::Auto if group.order() > 1 && group.cyclic_generator().is_some() => {
                periodic_resolution(group, d)
            }
            ResolutionChoice::Auto => normalized_bar_resolution(group, d),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks[n]
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.kind, Kind::Periodic { .. })
    }

    pub fn is_normalized_bar(&self) -> bool {
        matches!(self.kind, Kind::Bar { normalized: true, .. })
    }

    /// Bar tuples labelling the generators, for bar resolutions.
    pub fn bar_tuples(&self) -> Option<&BarTuples> {
        match &self.kind {
            Kind::Bar { tuples, .. } => Some(tuples),
            Kind::Periodic { .. } => None,
        }
    }

    /// `∂(e_j)` for a generator of `P_n`, `n ≥ 1`.
    pub fn boundary_of_generator(&self, n: usize, j: usize) -> &FreeElement {
        &self.boundaries[n][j]
    }

    pub fn boundaries(&self, n: usize) -> &[FreeElement] {
        &self.boundaries[n]
    }

    /// `∂: P_n → P_{n−1}` applied to any element (zero for `n = 0`).
    pub fn boundary(&self, n: usize, x: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        if n == 0 {
            return out;
        }
        for (j, g, c) in x.terms() {
            out.add_scaled(&self.boundaries[n][j].act(&self.group, g), c);
        }
        out
    }

    /// Augmentation `ε: P_0 → Z`.
    pub fn augmentation(&self, x: &FreeElement) -> i64 {
        x.terms().map(|(_, _, c)| c).sum()
    }

    /// `h_{−1}: Z → P_0`, `1 ↦ e_0`.
    pub fn unit(&self) -> FreeElement {
        FreeElement::basis(0, self.group.identity())
    }

    /// Contracting homotopy `h_n: P_n → P_{n+1}`, `n < length`.
    pub fn homotopy(&self, n: usize, x: &FreeElement) -> FreeElement {
        assert!(n < self.length(), "homotopy out of range");
        let mut out = FreeElement::zero();
        for (j, g, c) in x.terms() {
            match &self.kind {
                Kind::Bar { normalized, tuples } => {
                    if *normalized && g == self.group.identity() {
                        continue;
                    }
                    let mut t = vec![g];
                    t.extend_from_slice(tuples.tuple(n, j));
                    let k = tuples.index_of(&t).expect("tuple of the next degree");
                    out.add_term(k, self.group.identity(), c);
                }
                Kind::Periodic { exponent, generator } => {
                    let i = exponent[g];
                    if n.is_multiple_of(2) {
                        // (1 + t + … + t^{i−1}) e_{n+1}
                        let mut x = self.group.identity();
                        for _ in 0..i {
                            out.add_term(0, x, c);
                            x = self.group.mul(x, *generator);
                        }
                    } else if i == self.group.order() - 1 {
                        out.add_term(0, self.group.identity(), c);
                    }
                }
            }
        }
        out
    }

    /// Checks `∂∂ = 0` and `∂h + h∂ = 1 − h_{−1}ε` on every `Z`-basis element.
    pub fn verify(&self) -> Result<()> {
        let d = self.length();
        for n in 2..=d {
            for j in 0..self.ranks[n] {
                let dd = self.boundary(n - 1, &self.boundaries[n][j]);
                if !dd.is_zero() {
                    return Err(Error::CompositionNonzero);
                }
            }
        }
        if d >= 1 && self.boundaries[1].iter().any(|b| self.augmentation(b) != 0) {
            return Err(Error::CompositionNonzero);
        }
        for n in 0..d {
            for j in 0..self.ranks[n] {
                for g in self.group.elements() {
                    let x = FreeElement::basis(j, g);
                    let mut lhs = self.boundary(n + 1, &self.homotopy(n, &x));
                    if n == 0 {
                        let eps = self.augmentation(&x);
                        lhs.add_scaled(&self.unit(), eps);
                    } else {
                        lhs.add_scaled(&self.homotopy(n - 1, &self.boundary(n, &x)), 1);
                    }
                    if lhs != x {
                        return Err(Error::HomotopySolveFailure(format!(
                            "homotopy identity fails in degree {n} on generator {j}, element {g}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// A chain map `self → target` over the identity of `Z`, built degree by
    /// degree with the target's homotopy: `φ_n(e) = h(φ_{n−1}(∂e))`.
    ///
    /// `result[n][j]` is the image of the generator `e_j` of `P_n`.
    pub fn chain_map_to(&self, target: &FreeResolution, degree: usize) -> Vec<Vec<FreeElement>> {
        assert!(degree <= self.length() && degree <= target.length());
        assert_eq!(self.group, target.group, "resolutions over different groups");
        let mut maps: Vec<Vec<FreeElement>> = vec![vec![target.unit(); self.ranks[0]]];
        for n in 1..=degree {
            let images = (0..self.ranks[n])
                .map(|j| {
                    let prev = apply_map(&self.group, &maps[n - 1], &self.boundaries[n][j]);
                    target.homotopy(n - 1, &prev)
                })
                .collect();
            maps.push(images);
        }
        maps
    }
}

/// Extends generator images `Z[G]`-linearly.
pub fn apply_map(group: &FiniteGroup, images: &[FreeElement], x: &FreeElement) -> FreeElement {
    let mut out = FreeElement::zero();
    for (j, g, c) in x.terms() {
        out.add_scaled(&images[j].act(group, g), c);
    }
    out
}
