//! The twisted tensor product resolution of `N ⋊ π` built from the Koszul
//! resolution of `N = Z^r` and the normalized bar resolution of `π`.
//!
//! `W_{p,q}` is free over `Z[N ⋊ π]` on pairs (bar tuple of length `p`,
//! `q`-subset of `{0,…,r−1}`). The differential is `d₀ + d₁ + d₂ + …` with
//! `d_k: W_{p,q} → W_{p−k,q+k−1}`; `d₀` is the Koszul differential, `d₁`
//! lifts the bar differential and the higher `d_k` are solved from `D² = 0`
//! with the Koszul contracting homotopy.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use super::laurent::{mat_vec, SplitExtension};
use crate::cohom::{BarTuples, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::gmod::{CoeffModule, FiniteGroup};
use crate::intlat::{homology_of_pair, IntMatrix, Subquotient};

/// A generator `(p, bar tuple index, subset bitmask)`.
pub type Gen = (usize, usize, u32);

/// An element of `W`: coefficients on `g·x^a·e` keyed by `(e, g, a)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WallChain(BTreeMap<(Gen, usize, Vec<i64>), i64>);

impl WallChain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn add_term(&mut self, e: Gen, g: usize, a: Vec<i64>, c: i64) {
        if c == 0 {
            return;
        }
        let key = (e, g, a);
        let v = self.0.entry(key.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &WallChain, c: i64) {
        for ((e, g, a), v) in &other.0 {
            self.add_term(*e, *g, a.clone(), v * c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Gen, usize, &[i64], i64)> + '_ {
        self.0.iter().map(|((e, g, a), c)| (*e, *g, a.as_slice(), *c))
    }
}

pub fn mask_of(s: &[usize]) -> u32 {
    s.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn mask_elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// All `q`-subsets of `{0,…,r−1}` in lexicographic order.
pub fn subsets(r: usize, q: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, r: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            rec(i + 1, r, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, r, q, &mut Vec::new(), &mut out);
    out
}

/// `(x^b − 1)/(x − 1)` as a list of `(exponent, coefficient)`.
fn geometric(b: i64) -> Vec<(i64, i64)> {
    if b >= 0 {
        (0..b).map(|m| (m, 1)).collect()
    } else {
        (b..0).map(|m| (m, -1)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct WallResolution {
    pi: FiniteGroup,
    rank: usize,
    rho: Vec<Vec<Vec<i64>>>,
    bar: BarTuples,
    max_degree: usize,
    /// `subset_index[q][mask]`
    subset_index: Vec<HashMap<u32, usize>>,
    /// `diffs[k][e] = d_k(e)`
    diffs: Vec<HashMap<Gen, WallChain>>,
}

/// Builds the resolution through total degree `total_degree`.
pub fn wall_resolution(ext: &SplitExtension, total_degree: usize) -> Result<WallResolution> {
    WallResolution::new(ext, total_degree)
}

impl WallResolution {
    pub fn new(ext: &SplitExtension, total_degree: usize) -> Result<Self> {
        if total_degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(total_degree));
        }
        let rank = ext.lattice().rank();
        if rank > 16 {
            return Err(Error::InvalidModule("lattice rank above 16 is not supported".into()));
        }
        let subset_index = (0..=rank)
            .map(|q| subsets(rank, q).iter().enumerate().map(|(i, s)| (mask_of(s), i)).collect())
            .collect();
        let mut w = WallResolution {
            pi: ext.pi().clone(),
            rank,
            rho: ext.rho_i64(),
            bar: BarTuples::new(ext.pi(), total_degree, true),
            max_degree: total_degree,
            subset_index,
            diffs: vec![HashMap::new(); total_degree + 1],
        };
        for n in 1..=total_degree {
            for e in w.generators(n) {
                w.build_generator(e)?;
            }
        }
        Ok(w)
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn pi(&self) -> &FiniteGroup {
        &self.pi
    }

    pub fn bar(&self) -> &BarTuples {
        &self.bar
    }

    /// Generators of total degree `n`, ordered by `p`, then tuple, then subset.
    pub fn generators(&self, n: usize) -> Vec<Gen> {
        let mut out = Vec::new();
        for p in 0..=n.min(self.max_degree) {
            let q = n - p;
            if q > self.rank {
                continue;
            }
            for t in 0..self.bar.count(p) {
                for s in subsets(self.rank, q) {
                    out.push((p, t, mask_of(&s)));
                }
            }
        }
        out
    }

    /// Position of a `(p, q)` generator within its bidegree block.
    pub fn local_index(&self, e: Gen) -> usize {
        let q = e.2.count_ones() as usize;
        e.1 * self.subset_index[q].len() + self.subset_index[q][&e.2]
    }

    /// `d_k(e)` for a generator.
    pub fn differential(&self, k: usize, e: Gen) -> WallChain {
        self.diffs[k].get(&e).cloned().unwrap_or_default()
    }

    /// `(g x^a)·z`
    fn act(&self, g: usize, a: &[i64], z: &WallChain, c: i64, out: &mut WallChain) {
        for (e, h, b, v) in z.terms() {
            let conj = mat_vec(&self.rho[self.pi.inv(h)], a);
            let exp: Vec<i64> = conj.iter().zip(b).map(|(x, y)| x + y).collect();
            out.add_term(e, self.pi.mul(g, h), exp, c * v);
        }
    }

    /// `d_k` applied to an arbitrary chain.
    pub fn apply(&self, k: usize, z: &WallChain) -> WallChain {
        let mut out = WallChain::zero();
        for (e, g, a, c) in z.terms() {
            if let Some(img) = self.diffs[k].get(&e) {
                self.act(g, a, img, c, &mut out);
            }
        }
        out
    }

    /// Total differential `Σ_k d_k`.
    pub fn apply_total(&self, z: &WallChain) -> WallChain {
        let mut out = WallChain::zero();
        for k in 0..self.diffs.len() {
            out.add_scaled(&self.apply(k, z), 1);
        }
        out
    }

    /// Koszul contracting homotopy, applied column-wise:
    /// `h(g x^a e_{σ,S}) = g·h_K(x^a e_S)`.
    pub fn homotopy(&self, z: &WallChain) -> WallChain {
        let mut out = WallChain::zero();
        for ((p, t, mask), g, a, c) in z.terms() {
            let min = if mask == 0 { self.rank } else { mask.trailing_zeros() as usize };
            for j in 0..min {
                for (m, sign) in geometric(a[j]) {
                    let mut exp = vec![0; self.rank];
                    exp[j] = m;
                    exp[j + 1..].copy_from_slice(&a[j + 1..]);
                    out.add_term((p, t, mask | (1 << j)), g, exp, c * sign);
                }
            }
        }
        out
    }

    /// Whether the column augmentation `g x^a e_{σ,∅} ↦ g[σ]` kills `z`.
    fn column_augmentation_vanishes(z: &WallChain) -> bool {
        let mut sums: BTreeMap<(usize, usize, usize), i64> = BTreeMap::new();
        for ((p, t, mask), g, _, c) in z.terms() {
            if mask == 0 {
                *sums.entry((p, t, g)).or_insert(0) += c;
            }
        }
        sums.values().all(|&v| v == 0)
    }

    fn build_generator(&mut self, e: Gen) -> Result<()> {
        let (p, t, mask) = e;
        let s = mask_elements(mask);
        let id = self.pi.identity();
        let zero = vec![0; self.rank];
        // d₀: Koszul
        let mut d0 = WallChain::zero();
        for (k, &sk) in s.iter().enumerate() {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let face = mask & !(1 << sk);
            let mut xs = zero.clone();
            xs[sk] = 1;
            d0.add_term((p, t, face), id, xs, sign);
            d0.add_term((p, t, face), id, zero.clone(), -sign);
        }
        if !d0.is_zero() {
            self.diffs[0].insert(e, d0.clone());
        }
        for k in 1..=p {
            let image = if k == 1 && mask == 0 {
                self.bar_boundary(p, t)
            } else {
                let mut y = self.apply(k, &d0);
                for i in 1..k {
                    let dki = self.differential(k - i, e);
                    y.add_scaled(&self.apply(i, &dki), 1);
                }
                let y = negate(&y);
                if y.is_zero() {
                    continue;
                }
                let q_target = s.len() + k - 2;
                if q_target == 0 && !Self::column_augmentation_vanishes(&y) {
                    return Err(Error::HomotopySolveFailure(format!("augmentation of the obstruction for d_{k} on {e:?}")));
                }
                let z = self.homotopy(&y);
                if self.apply(0, &z) != y {
                    return Err(Error::HomotopySolveFailure(format!("obstruction for d_{k} on {e:?} is not a cycle")));
                }
                z
            };
            if !image.is_zero() {
                self.diffs[k].insert(e, image);
            }
        }
        Ok(())
    }

    /// `d₁(e_{[g₁|…|g_p],∅})`, the normalized bar boundary.
    fn bar_boundary(&self, p: usize, t: usize) -> WallChain {
        let tuple = self.bar.tuple(p, t).to_vec();
        let id = self.pi.identity();
        let zero = vec![0; self.rank];
        let mut out = WallChain::zero();
        let mut push = |face: &[usize], g: usize, c: i64| {
            if let Some(j) = self.bar.index_of(face) {
                out.add_term((p - 1, j, 0), g, zero.clone(), c);
            }
        };
        push(&tuple[1..], tuple[0], 1);
        for i in 0..p - 1 {
            let mut face = tuple[..i].to_vec();
            face.push(self.pi.mul(tuple[i], tuple[i + 1]));
            face.extend_from_slice(&tuple[i + 2..]);
            push(&face, id, if (i + 1) % 2 == 0 { 1 } else { -1 });
        }
        push(&tuple[..p - 1], id, if p.is_multiple_of(2) { 1 } else { -1 });
        out
    }

    /// Checks `D² = 0` on every generator of total degree `≤ max_degree`.
    pub fn verify(&self) -> Result<()> {
        for n in 2..=self.max_degree {
            for e in self.generators(n) {
                let mut single = WallChain::zero();
                single.add_term(e, self.pi.identity(), vec![0; self.rank], 1);
                let dd = self.apply_total(&self.apply_total(&single));
                if !dd.is_zero() {
                    return Err(Error::HomotopySolveFailure(format!("D² ≠ 0 on {e:?}")));
                }
            }
        }
        Ok(())
    }

    /// Value of a cochain `f` (given on generators) on a chain, for a module
    /// with trivial `N`-action.
    pub fn evaluate(&self, module: &CoeffModule, z: &WallChain, f: impl Fn(Gen) -> Vec<BigInt>) -> Vec<BigInt> {
        let mut acc = vec![BigInt::from(0); module.rank()];
        for (e, g, _, c) in z.terms() {
            let v = module.action(g).mul_vec(&f(e));
            acc.iter_mut().zip(v).for_each(|(a, b)| *a += b * c);
        }
        module.normalize(&acc)
    }

    /// Total coboundary `Hom(W_n, M) → Hom(W_{n+1}, M)`, blocks ordered as
    /// in [`WallResolution::generators`].
    pub fn total_coboundary(&self, module: &CoeffModule, n: usize) -> IntMatrix {
        let k = module.rank();
        let src = self.generators(n);
        let dst = self.generators(n + 1);
        let pos: HashMap<Gen, usize> = src.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut m = IntMatrix::zeros(dst.len() * k, src.len() * k);
        for (j, &x) in dst.iter().enumerate() {
            for kk in 0..self.diffs.len() {
                for (e, g, _, c) in self.differential(kk, x).terms() {
                    let i = pos[&e];
                    let a = module.action(g);
                    for r in 0..k {
                        for s in 0..k {
                            m[(j * k + r, i * k + s)] += &a[(r, s)] * c;
                        }
                    }
                }
            }
        }
        match module.modulus() {
            Some(q) => m.reduce_mod(q),
            None => m,
        }
    }

    /// `H^n` of the total cochain complex `Hom_G(W, M)`, `n < max_degree`.
    pub fn cohomology(&self, module: &CoeffModule, n: usize) -> Result<Subquotient> {
        if n >= self.max_degree {
            return Err(Error::DegreeTooLarge(n));
        }
        let d_out = self.total_coboundary(module, n);
        let d_in = if n == 0 {
            IntMatrix::zeros(self.generators(0).len() * module.rank(), 0)
        } else {
            self.total_coboundary(module, n - 1)
        };
        homology_of_pair(&d_out, &d_in, module.modulus())
    }
}

fn negate(z: &WallChain) -> WallChain {
    WallChain(z.0.iter().map(|(k, v)| (k.clone(), -v)).collect())
}
