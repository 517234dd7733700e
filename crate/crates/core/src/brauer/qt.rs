use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gmod::{invariants, pair_index, pair_module, pairs, GaloisDatum};
use crate::intlat::{cokernel, FinAbGroup, IntMatrix};

/// One orbit of `G` on unordered pairs `{i, j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairOrbit {
    /// lexicographically smallest member
    pub representative: (usize, usize),
    /// all members as `(i, j)` with `i < j`, sorted
    pub pairs: Vec<(usize, usize)>,
}

/// The arithmetic attached to one orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub pair: (usize, usize),
    pub orbit_size: usize,
    /// ids fixing both `i` and `j`
    pub stabilizer: Vec<usize>,
    /// ids fixing the set `{i, j}`
    pub unordered_stabilizer: Vec<usize>,
    pub quadratic: bool,
    pub n: u64,
    pub sigma: Option<usize>,
    pub n_prime: Option<u64>,
    pub m_o: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SymbolKind {
    /// `(y_i, y_j)_n`
    I,
    /// `(y_i, y_j − y_i)_{n'}`
    II,
}

/// A corestricted Hilbert symbol, kept formal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolExpr {
    pub kind: SymbolKind,
    /// generators of `H_ij`, the group fixing `E_ij`
    pub field: String,
    /// whether `E_ij` is the base field
    pub field_is_base: bool,
    pub pair: (usize, usize),
    pub modulus: u64,
}

impl SymbolExpr {
    /// E.g. `cores_{E(1,2)/k} (y1, y2 - y1)_{4}` (indices 1-based).
    pub fn render(&self) -> String {
        let (i, j) = (self.pair.0 + 1, self.pair.1 + 1);
        let second = match self.kind {
            SymbolKind::I => format!("y{j}"),
            SymbolKind::II => format!("y{j} - y{i}"),
        };
        let symbol = format!("(y{i}, {second})_{{{}}}", self.modulus);
        if self.field_is_base {
            symbol
        } else {
            format!("cores_{{E({i},{j})/k}} {symbol}")
        }
    }
}

/// The output of [`thm2_basis`].
#[derive(Clone, Debug)]
pub struct BrauerReport {
    pub orbits: Vec<OrbitReport>,
    /// `⊕ Z/m_o`
    pub structure: FinAbGroup,
    pub basis: Vec<SymbolExpr>,
    /// invariants of the pair module at level `M`
    pub oracle: FinAbGroup,
    pub agrees: bool,
    /// coordinates of each orbit-sum element in the oracle's cyclic summands
    pub generator_coords: Vec<Vec<BigInt>>,
}

/// Outcome of [`verify_basis`]; every flag should be true.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVerification {
    pub factors_match: bool,
    pub elements_invariant: bool,
    pub generates: bool,
    pub orders_match: bool,
    pub order_product_matches: bool,
}

impl BasisVerification {
    pub fn ok(&self) -> bool {
        self.factors_match && self.elements_invariant && self.generates && self.orders_match && self.order_product_matches
    }
}

fn image_pair(datum: &GaloisDatum, g: usize, (i, j): (usize, usize)) -> (usize, usize) {
    let p = datum.perm(g);
    let (x, y) = (p[i], p[j]);
    (x.min(y), x.max(y))
}

/// Orbits of `G` on unordered pairs, ordered by representative.
pub fn pair_orbits(datum: &GaloisDatum) -> Result<Vec<PairOrbit>> {
    let r = datum.rank();
    if r < 2 {
        return Err(Error::RankTooSmall(r));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for pair in pairs(r) {
        if seen.contains(&pair) {
            continue;
        }
        let orbit: BTreeSet<(usize, usize)> = datum.group().elements().map(|g| image_pair(datum, g, pair)).collect();
        seen.extend(orbit.iter().copied());
        out.push(PairOrbit { representative: pair, pairs: orbit.into_iter().collect() });
    }
    Ok(out)
}

/// Largest `d | M` with `χ(h) ≡ 1 (mod d)` for every `h` in `subgroup`.
pub fn n_value(datum: &GaloisDatum, subgroup: &[usize]) -> u64 {
    subgroup
        .iter()
        .fold(datum.modulus(), |acc, &h| acc.gcd(&((datum.chi(h) + datum.modulus() - 1) % datum.modulus())))
}

/// `gcd(n_ij, 1 + χ(σ_ij))` with `χ(σ_ij)` reduced mod `n_ij`.
pub fn n_prime(datum: &GaloisDatum, orbit: &OrbitReport) -> Result<u64> {
    match orbit.sigma {
        Some(s) if orbit.quadratic => {
            let n = orbit.n;
            Ok(n.gcd(&(1 + datum.chi(s) % n)))
        }
        _ => Err(Error::NotQuadratic),
    }
}

fn orbit_report(datum: &GaloisDatum, orbit: &PairOrbit) -> OrbitReport {
    let (i, j) = orbit.representative;
    let g = datum.group();
    let stabilizer: Vec<usize> = g.elements().filter(|&h| datum.perm(h)[i] == i && datum.perm(h)[j] == j).collect();
    let unordered: Vec<usize> = g.elements().filter(|&h| image_pair(datum, h, (i, j)) == (i, j)).collect();
    let quadratic = unordered.len() > stabilizer.len();
    let sigma = unordered.iter().copied().find(|h| !stabilizer.contains(h));
    let n = n_value(datum, &stabilizer);
    let mut report = OrbitReport {
        pair: (i, j),
        orbit_size: orbit.pairs.len(),
        stabilizer,
        unordered_stabilizer: unordered,
        quadratic,
        n,
        sigma,
        n_prime: None,
        m_o: n,
    };
    if quadratic {
        let np = n_prime(datum, &report).expect("quadratic orbit");
        report.n_prime = Some(np);
        report.m_o = np;
    }
    report
}

/// A minimal-looking generating list of a subgroup, rendered with
/// [`GaloisDatum::describe_element`].
fn describe_subgroup(datum: &GaloisDatum, ids: &[usize]) -> String {
    let g = datum.group();
    let mut gens: Vec<usize> = Vec::new();
    let mut span = g.generated(&[]);
    for &h in ids {
        if !span.contains(&h) {
            gens.push(h);
            span = g.generated(&gens);
        }
    }
    let items: Vec<String> = gens.iter().map(|&h| datum.describe_element(h)).collect();
    format!("<{}>", items.join(", "))
}

fn symbol(datum: &GaloisDatum, o: &OrbitReport) -> SymbolExpr {
    SymbolExpr {
        kind: if o.quadratic { SymbolKind::II } else { SymbolKind::I },
        field: describe_subgroup(datum, &o.stabilizer),
        field_is_base: o.stabilizer.len() == datum.group().order(),
        pair: o.pair,
        modulus: o.m_o,
    }
}

fn orbit_reports(datum: &GaloisDatum) -> Result<Vec<OrbitReport>> {
    Ok(pair_orbits(datum)?.iter().map(|o| orbit_report(datum, o)).collect())
}

fn cyclic_sum(orders: &[u64]) -> FinAbGroup {
    let diag = IntMatrix::diagonal(orders.iter().map(|&m| m as i64));
    let mut g = cokernel(&diag).group;
    g.generators.clear();
    g
}

/// The symbol basis, its declared structure `⊕ Z/m_o` and the comparison with
/// [`brute_invariants`] at level `M`.
pub fn thm2_basis(datum: &GaloisDatum) -> Result<BrauerReport> {
    let orbits = orbit_reports(datum)?;
    let basis = orbits.iter().map(|o| symbol(datum, o)).collect();
    let structure = cyclic_sum(&orbits.iter().map(|o| o.m_o).collect::<Vec<_>>());
    let m = datum.modulus();
    let module = pair_module(datum, m)?;
    let inv = invariants(&module)?;
    let oracle = inv.group.clone();
    let generator_coords = orbit_sums(datum, &orbits, m)
        .iter()
        .map(|x| inv.class_of(x))
        .collect::<Result<Vec<_>>>()?;
    let agrees = structure.same_structure(&oracle);
    Ok(BrauerReport { orbits, structure, basis, oracle, agrees, generator_coords })
}

fn check_level(datum: &GaloisDatum, m: u64) -> Result<Vec<OrbitReport>> {
    let orbits = orbit_reports(datum)?;
    let needed = orbits.iter().fold(1u64, |acc, o| acc.lcm(&o.n));
    if !m.is_multiple_of(needed) {
        return Err(Error::ModulusTooSmall { modulus: m, needed });
    }
    if !datum.modulus().is_multiple_of(m) {
        return Err(Error::ModulusIncompatible { modulus: m, cyclotomic: datum.modulus() });
    }
    Ok(orbits)
}

/// Invariants of the pair module `⊕ Z/m·e_ij`; the generators are vectors in
/// `(Z/m)^{r(r−1)/2}`.
pub fn brute_invariants(datum: &GaloisDatum, m: u64) -> Result<FinAbGroup> {
    check_level(datum, m)?;
    Ok(invariants(&pair_module(datum, m)?)?.group)
}

/// `(m/m_o)·Σ_{γ ∈ G/H} χ(γ)⁻¹ ε_γ e_{γ(i)γ(j)}` for each orbit, with
/// `H = H_ij` or `H'_ij`.
fn orbit_sums(datum: &GaloisDatum, orbits: &[OrbitReport], m: u64) -> Vec<Vec<BigInt>> {
    orbits.iter().map(|o| orbit_sum_at(datum, o, o.pair, m)).collect()
}

fn orbit_sum_at(datum: &GaloisDatum, o: &OrbitReport, (i, j): (usize, usize), m: u64) -> Vec<BigInt> {
    let r = datum.rank();
    let g = datum.group();
    let h: Vec<usize> = if o.quadratic { unordered_stabilizer(datum, (i, j)) } else { stabilizer(datum, (i, j)) };
    let scale = m / o.m_o;
    let mut out = vec![BigInt::zero(); r * (r - 1) / 2];
    for gamma in g.left_transversal(&h) {
        let p = datum.perm(gamma);
        let (x, y) = (p[i], p[j]);
        let (idx, sign) = if x < y { (pair_index(r, x, y), 1i64) } else { (pair_index(r, y, x), -1) };
        out[idx] += BigInt::from(sign) * BigInt::from(datum.chi_inverse(gamma) % m) * BigInt::from(scale);
    }
    let n = BigInt::from(m);
    out.iter().map(|c| c.mod_floor(&n)).collect()
}

fn stabilizer(datum: &GaloisDatum, (i, j): (usize, usize)) -> Vec<usize> {
    datum.group().elements().filter(|&h| datum.perm(h)[i] == i && datum.perm(h)[j] == j).collect()
}

fn unordered_stabilizer(datum: &GaloisDatum, pair: (usize, usize)) -> Vec<usize> {
    datum.group().elements().filter(|&h| image_pair(datum, h, pair) == pair).collect()
}

/// The orbit-sum elements of the pair module at level `m`, one per orbit.
pub fn orbit_sum_elements(datum: &GaloisDatum, m: u64) -> Result<Vec<Vec<BigInt>>> {
    let orbits = check_level(datum, m)?;
    Ok(orbit_sums(datum, &orbits, m))
}

fn additive_order(x: &[BigInt], m: u64) -> u64 {
    x.iter().fold(1u64, |acc, c| {
        let c = c.to_u64().expect("reduced coordinate");
        acc.lcm(&(m / m.gcd(&c)))
    })
}

/// Compares the symbol basis against the oracle at level `M`.
pub fn verify_basis(datum: &GaloisDatum) -> Result<BasisVerification> {
    let m = datum.modulus();
    let orbits = check_level(datum, m)?;
    let module = pair_module(datum, m)?;
    let inv = invariants(&module)?;
    let elems = orbit_sums(datum, &orbits, m);

    let declared = cyclic_sum(&orbits.iter().map(|o| o.m_o).collect::<Vec<_>>());
    let factors_match = declared.same_structure(&inv.group);
    let elements_invariant = elems
        .iter()
        .all(|x| datum.group().elements().all(|g| module.act(g, x) == module.normalize(x)));
    let orders_match = elems.iter().zip(&orbits).all(|(x, o)| additive_order(x, m) == o.m_o);
    let product: BigInt = orbits.iter().map(|o| BigInt::from(o.m_o)).product();
    let order_product_matches = inv.group.order() == Some(product);

    // the images span iff the quotient of the invariants by them is trivial
    let generates = elements_invariant && {
        let coords = elems.iter().map(|x| inv.class_of(x)).collect::<Result<Vec<_>>>()?;
        let k = inv.group.ngens();
        let mut rel = IntMatrix::from_columns(&coords, k);
        rel = rel.hstack(&IntMatrix::diagonal(inv.group.torsion.iter().cloned()));
        cokernel(&rel).group.is_trivial()
    };
    Ok(BasisVerification { factors_match, elements_invariant, generates, orders_match, order_product_matches })
}

fn cyclic_span(x: &[BigInt], m: u64) -> BTreeSet<Vec<BigInt>> {
    let n = BigInt::from(m);
    (0..additive_order(x, m))
        .map(|k| x.iter().map(|c| (c * BigInt::from(k)).mod_floor(&n)).collect())
        .collect()
}

/// Whether every choice of representative pair in every orbit gives the same
/// `m_o` and the same cyclic subgroup of invariants.
pub fn representative_independence(datum: &GaloisDatum) -> Result<bool> {
    let m = datum.modulus();
    let orbits = pair_orbits(datum)?;
    for orbit in &orbits {
        let base = orbit_report(datum, orbit);
        let reference = cyclic_span(&orbit_sum_at(datum, &base, base.pair, m), m);
        for &pair in &orbit.pairs {
            let alt = orbit_report(datum, &PairOrbit { representative: pair, pairs: orbit.pairs.clone() });
            if alt.m_o != base.m_o || alt.quadratic != base.quadratic {
                return Ok(false);
            }
            if cyclic_span(&orbit_sum_at(datum, &alt, pair, m), m) != reference {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
