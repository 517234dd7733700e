//! Acceptance criteria 1–8. Each criterion prints one PASS/FAIL line; the
//! test fails if any criterion is red.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torus_brauer::brauer::{
    brute_invariants, orbit_sum_elements, real_torus_check, representative_independence, thm2_basis, verify_basis,
    BrauerReport, SymbolKind,
};
use torus_brauer::cohom::{
    bar_resolution, cohomology, cohomology_with, corestriction, map_on_cohomology, normalized_bar_resolution,
    periodic_resolution, restriction, ResolutionChoice,
};
use torus_brauer::gmod::{
    c2_decompose, canonical_involution, pair_index, pair_module, permutation_lattice_of, CoeffModule, FiniteGroup,
    GLattice, GaloisDatum, ModuleMap,
};
use torus_brauer::hs::{
    alternating_from_coords, cv_formula_check, cv_formula_check_with, d2_02, d2_02_with, h2_lattice,
    invariant_classes, lattice_cohomology, v2, v2_with, BilinearCocycle, SplitExtension, WallResolution,
};
use torus_brauer::intlat::{FinAbGroup, IntMatrix};

// time limits
const LIMIT_WORKED: Duration = Duration::from_secs(1);
const LIMIT_RANDOM_DATA: Duration = Duration::from_secs(120);
const LIMIT_C2_LATTICES: Duration = Duration::from_secs(300);
const LIMIT_ENGINE: Duration = Duration::from_secs(300);

// sample sizes and seeds
const RANDOM_DATA: usize = 60;
const RANDOM_CONJUGATES: usize = 24;
const RANDOM_SUMS: usize = 12;
const RANDOM_INVOLUTIONS: usize = 100;
const SEED: u64 = 20_240_601;

/// Written straight to the process stdout so the lines survive output capture.
fn line(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{s}");
    let _ = out.flush();
}

struct Verdict {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict { failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn finish(id: usize, name: &str, start: Instant, limit: Option<Duration>, mut v: Verdict) -> bool {
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        v.check(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"));
    }
    let pass = v.failures.is_empty();
    line(&format!(
        "criterion {id} {}: {name} ({:.2}s){}{}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        if v.notes.is_empty() { String::new() } else { format!("; {}", v.notes.join("; ")) },
        if pass { String::new() } else { format!("; failures: {}", v.failures.join(" | ")) },
    ));
    pass
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

// ---------- test-side oracles ----------

/// `|A[d]|` for every `d | m`; these counts determine a finite abelian group
/// of exponent dividing `m` up to isomorphism.
fn torsion_profile(g: &FinAbGroup, m: u64) -> Vec<u64> {
    assert_eq!(g.free_rank, 0);
    (1..=m)
        .filter(|d| m.is_multiple_of(*d))
        .map(|d| g.torsion.iter().map(|t| t.to_u64().unwrap().gcd(&d)).product())
        .collect()
}

/// The same counts, obtained by listing every invariant vector of the pair
/// module with the action written out directly from the datum.
fn enumerated_profile(datum: &GaloisDatum, m: u64) -> Option<Vec<u64>> {
    let r = datum.rank();
    let dim = r * (r - 1) / 2;
    let total = (m as u128).checked_pow(dim as u32)?;
    if total > 50_000 {
        return None;
    }
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
    let act = |g: usize, x: &[u64]| -> Vec<u64> {
        let p = datum.perm(g);
        let u = datum.chi_inverse(g) % m;
        let mut y = vec![0u64; dim];
        for (idx, &(i, j)) in pairs.iter().enumerate() {
            let (a, b) = (p[i], p[j]);
            let (pos, neg) = if a < b { ((a, b), false) } else { ((b, a), true) };
            let t = pairs.iter().position(|&q| q == pos).unwrap();
            let v = (u * x[idx]) % m;
            y[t] = (y[t] + if neg { (m - v) % m } else { v }) % m;
        }
        y
    };
    let mut invariant = Vec::new();
    let mut x = vec![0u64; dim];
    for _ in 0..total {
        if datum.group().elements().all(|g| act(g, &x) == x) {
            invariant.push(x.clone());
        }
        for c in x.iter_mut() {
            *c += 1;
            if *c < m {
                break;
            }
            *c = 0;
        }
    }
    Some(
        (1..=m)
            .filter(|d| m.is_multiple_of(*d))
            .map(|d| invariant.iter().filter(|v| v.iter().all(|c| (c * d) % m == 0)).count() as u64)
            .collect(),
    )
}

fn random_datum(rng: &mut ChaCha8Rng) -> GaloisDatum {
    let r = rng.gen_range(2..=4);
    let modulus = *[2u64, 4, 6, 8, 12].choose(rng).unwrap();
    let units: Vec<u64> = (1..modulus).filter(|u| u.gcd(&modulus) == 1).collect();
    let count = rng.gen_range(0..=2);
    let gens: Vec<(Vec<usize>, u64)> = (0..count)
        .map(|_| {
            let mut p: Vec<usize> = (0..r).collect();
            p.shuffle(rng);
            (p, *units.choose(rng).unwrap())
        })
        .collect();
    GaloisDatum::from_generators(r, modulus, &gens).unwrap()
}

fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..n + 2 {
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        let c = if rng.gen_bool(0.5) { 1 } else { -1 };
        let e = IntMatrix::from_fn(n, n, |i, j| {
            if i == j {
                big(1)
            } else if i == a && j == b {
                big(c)
            } else {
                big(0)
            }
        });
        m = &e * &m;
    }
    m
}

fn conjugate(s: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    &(b * s) * &b.inverse_unimodular().unwrap()
}

fn triples(max_rank: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..=max_rank {
        for b in 0..=max_rank {
            for c in 0..=max_rank / 2 {
                if (1..=max_rank).contains(&(a + b + 2 * c)) {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

/// The group generated by integer matrices, with the matrices themselves as
/// its representation.
fn matrix_group(gens: &[IntMatrix]) -> (FiniteGroup, Vec<IntMatrix>) {
    let mut elems = vec![IntMatrix::identity(gens[0].rows())];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let x = &elems[i] * g;
            if !elems.contains(&x) {
                elems.push(x);
            }
        }
        i += 1;
        assert!(elems.len() <= 48, "generators span a large group");
    }
    let table = elems
        .iter()
        .map(|a| elems.iter().map(|b| elems.iter().position(|c| *c == a * b).unwrap()).collect())
        .collect();
    (FiniteGroup::from_table(table).unwrap(), elems)
}

/// `|H²(N ⋊ π, M)|` against `|H²(π, M)|·|H¹(π, Hom(N, M))|·|ker d₂^{0,2}|`,
/// which holds for split extensions since no differential reaches the bottom
/// row.
fn order_identity(w: &WallResolution, ext: &SplitExtension) -> Result<(BigInt, BigInt), String> {
    let pi = ext.pi();
    let m = ext.module();
    let total = w.cohomology(m, 2).map_err(|e| e.to_string())?.group.order().ok_or("infinite H2")?;
    let e20 = cohomology(pi, m, 2).map_err(|e| e.to_string())?.structure().order().ok_or("infinite")?;
    let hom = lattice_cohomology(pi, ext.lattice(), m, 1).map_err(|e| e.to_string())?;
    let e11 = cohomology(pi, &hom, 1).map_err(|e| e.to_string())?.structure().order().ok_or("infinite")?;
    let d = d2_02_with(w, ext).map_err(|e| e.to_string())?;
    let sizes: Vec<u64> = d.domain.torsion.iter().map(|t| t.to_u64().unwrap()).collect();
    let count: u64 = sizes.iter().product();
    if count > 1 << 16 {
        return Err("domain too large to enumerate".into());
    }
    let mut kernel = 0u64;
    for idx in 0..count {
        let mut c = idx;
        let coords: Vec<BigInt> = sizes
            .iter()
            .map(|s| {
                let v = c % s;
                c /= s;
                BigInt::from(v)
            })
            .collect();
        if d.codomain.is_zero_coords(&d.matrix.mul_vec(&coords)) {
            kernel += 1;
        }
    }
    Ok((total, e20 * e11 * BigInt::from(kernel)))
}

// ---------- criteria ----------

fn worked_data() -> Vec<(&'static str, GaloisDatum, u64, &'static str)> {
    vec![
        ("Q(i)/Q", GaloisDatum::from_generators(2, 4, &[(vec![1, 0], 3)]).unwrap(), 4, "Z/4"),
        (
            "S3",
            GaloisDatum::from_generators(3, 2, &[(vec![1, 0, 2], 1), (vec![1, 2, 0], 1)]).unwrap(),
            2,
            "Z/2",
        ),
        ("split r=3", GaloisDatum::from_generators(3, 2, &[]).unwrap(), 2, "Z/2 + Z/2 + Z/2"),
    ]
}

fn quadratic_divisibility(datum: &GaloisDatum, rep: &BrauerReport, v: &mut Verdict, tag: &str) -> usize {
    let mut count = 0;
    for o in rep.orbits.iter().filter(|o| o.quadratic) {
        count += 1;
        let (n, np, s) = (o.n, o.n_prime.unwrap_or(0), o.sigma.unwrap_or(usize::MAX));
        let ok = s != usize::MAX && np != 0 && n % np == 0 && (1 + datum.chi(s) % n) % n % np == 0;
        v.check(ok, || format!("{tag}: n' = {np} does not divide 1 + chi(sigma) mod {n}"));
    }
    count
}

fn criterion_1(quadratic: &mut Vec<(GaloisDatum, BrauerReport)>) -> bool {
    let start = Instant::now();
    let mut v = Verdict::new();
    for (name, datum, m, expected) in worked_data() {
        let t = Instant::now();
        let rep = thm2_basis(&datum).unwrap();
        let oracle = brute_invariants(&datum, m).unwrap();
        let elems = orbit_sum_elements(&datum, m).unwrap();
        v.check(rep.structure.describe() == expected, || format!("{name}: basis gives {}", rep.structure));
        v.check(oracle.describe() == expected, || format!("{name}: oracle gives {oracle}"));
        v.check(rep.structure.torsion == oracle.torsion, || format!("{name}: invariant factors differ"));
        v.check(enumerated_profile(&datum, m) == Some(torsion_profile(&oracle, m)), || {
            format!("{name}: enumeration disagrees with the oracle")
        });
        // generator orders against the oracle's cyclic summands
        let mut orders: Vec<u64> = elems
            .iter()
            .map(|x| x.iter().fold(1u64, |acc, c| acc.lcm(&(m / m.gcd(&c.to_u64().unwrap())))))
            .collect();
        orders.sort_unstable();
        let mut oracle_orders: Vec<u64> = oracle.torsion.iter().map(|t| t.to_u64().unwrap()).collect();
        oracle_orders.sort_unstable();
        v.check(orders == oracle_orders, || format!("{name}: generator orders {orders:?}"));
        if name == "Q(i)/Q" {
            let kinds: Vec<SymbolKind> = rep.basis.iter().map(|s| s.kind).collect();
            v.check(kinds == [SymbolKind::II], || format!("{name}: symbol kinds {kinds:?}"));
        }
        v.check(t.elapsed() < LIMIT_WORKED, || format!("{name}: took {:.2?}", t.elapsed()));
        quadratic.push((datum, rep));
    }
    finish(1, "symbol basis vs invariants oracle on the three worked data", start, None, v)
}

fn criterion_2(quadratic: &mut Vec<(GaloisDatum, BrauerReport)>) -> bool {
    let start = Instant::now();
    let mut v = Verdict::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut enumerated = 0;
    let mut orbits = 0;
    for t in 0..RANDOM_DATA {
        let datum = random_datum(&mut rng);
        let m = datum.modulus();
        let rep = thm2_basis(&datum).unwrap();
        let check = verify_basis(&datum).unwrap();
        orbits += rep.orbits.len();
        v.check(rep.agrees && check.ok(), || format!("datum {t}: {check:?}"));
        v.check(representative_independence(&datum).unwrap(), || format!("datum {t}: representative dependence"));
        let oracle = brute_invariants(&datum, m).unwrap();
        if let Some(profile) = enumerated_profile(&datum, m) {
            enumerated += 1;
            v.check(profile == torsion_profile(&oracle, m), || format!("datum {t}: enumeration disagrees"));
        }
        // the level-M oracle also agrees at every admissible smaller level
        let lcm = rep.orbits.iter().fold(1u64, |a, o| a.lcm(&o.n));
        let lower = brute_invariants(&datum, lcm).unwrap();
        v.check(lower.torsion == oracle.torsion, || format!("datum {t}: level {lcm} differs from level {m}"));
        // twice any invariant lies in the span of the orbit sums
        let module = pair_module(&datum, m).unwrap();
        let elems = orbit_sum_elements(&datum, m).unwrap();
        let small = oracle.order().is_some_and(|o| o <= big(4096));
        for g in oracle.generators.iter().filter(|_| small) {
            let doubled: Vec<BigInt> = g.iter().map(|x: &BigInt| (x * big(2)).mod_floor(&BigInt::from(m))).collect();
            v.check(in_span(&doubled, &elems, m), || format!("datum {t}: 2x not in span"));
            v.check(datum.group().elements().all(|h| module.act(h, g) == module.normalize(g)), || {
                format!("datum {t}: oracle generator not invariant")
            });
        }
        quadratic.push((datum, rep));
    }
    v.notes.push(format!("{RANDOM_DATA} data, {orbits} orbits, {enumerated} also enumerated"));
    finish(2, "symbol basis vs oracle on random data", start, Some(LIMIT_RANDOM_DATA), v)
}

fn in_span(x: &[BigInt], gens: &[Vec<BigInt>], m: u64) -> bool {
    let n = BigInt::from(m);
    let mut reach: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    reach.insert(vec![BigInt::zero(); x.len()]);
    for g in gens {
        let mut next = BTreeSet::new();
        for base in &reach {
            for k in 0..m {
                next.insert(base.iter().zip(g).map(|(a, b)| (a + b * BigInt::from(k)).mod_floor(&n)).collect());
            }
        }
        reach = next;
    }
    reach.contains(x)
}

fn criterion_3(quadratic: &[(GaloisDatum, BrauerReport)]) -> bool {
    let start = Instant::now();
    let mut v = Verdict::new();
    let mut count = 0;
    for (i, (datum, rep)) in quadratic.iter().enumerate() {
        count += quadratic_divisibility(datum, rep, &mut v, &format!("datum {i}"));
    }
    v.check(count > 0, || "no quadratic orbits were exercised".into());
    v.notes.push(format!("{count} quadratic orbits"));
    finish(3, "n' divides 1 + chi(sigma) on every quadratic orbit", start, None, v)
}

fn c2() -> FiniteGroup {
    FiniteGroup::cyclic(2)
}

fn mu(n: i64, sign: bool) -> CoeffModule {
    CoeffModule::scalar(&c2(), Some(big(n)), &if sign { vec![1, -1] } else { vec![1, 1] }).unwrap()
}

fn criterion_4() -> bool {
    let start = Instant::now();
    let mut v = Verdict::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let types = triples(4);
    let mut cases: Vec<IntMatrix> = types.iter().map(|&(a, b, c)| canonical_involution(a, b, c)).collect();
    for _ in 0..RANDOM_CONJUGATES {
        let &(a, b, c) = types.choose(&mut rng).unwrap();
        let bmat = random_unimodular(a + b + 2 * c, &mut rng);
        cases.push(conjugate(&canonical_involution(a, b, c), &bmat));
    }
    for (t, s) in cases.iter().enumerate() {
        let n = GLattice::from_involution(s).unwrap();
        let vv = v2(&c2(), &n).unwrap();
        v.check(vv.is_zero(), || format!("lattice {t}: v2 != 0"));
        for level in [2, 4] {
            let ext = SplitExtension::new(c2(), n.clone(), mu(level, true)).unwrap();
            v.check(d2_02(&ext).unwrap().is_zero(), || format!("lattice {t}: d2 != 0 for mu_{level}"));
        }
    }
    v.notes.push(format!("{} lattices ({} canonical, {RANDOM_CONJUGATES} random conjugates)", cases.len(), types.len()));
    finish(4, "v2 and d2 vanish for C2-lattices of rank <= 4", start, Some(LIMIT_C2_LATTICES), v)
}

fn criterion_5() -> bool {
    let start = Instant::now();
    let mut v = Verdict::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut count = 0;
    for (a, b, c) in triples(3) {
        let s = canonical_involution(a, b, c);
        let mut lattices = vec![s.clone()];
        for _ in 0..3 {
            lattices.push(conjugate(&s, &random_unimodular(s.rows(), &mut rng)));
        }
        for x in &lattices {
            for n in [2, 3, 4, 8] {
                count += 1;
                let rep = real_torus_check(x, n).unwrap();
                v.check(rep.decomposition == (a, b, c), || format!("{x}: decomposition {:?}", rep.decomposition));
                v.check(rep.d2_is_zero(), || format!("type {:?} at n = {n}: d2 != 0", (a, b, c)));
            }
        }
    }
    v.notes.push(format!("{count} (lattice, level) pairs"));
    finish(5, "real-torus d2 vanishes levelwise for rank <= 3", start, None, v)
}

struct Family {
    name: &'static str,
    group: FiniteGroup,
    /// a sign character, if the group has one
    sign: Option<Vec<i64>>,
    lattices: Vec<(String, GLattice)>,
}

fn twist(n: &GLattice, g: &FiniteGroup, chi: &[i64]) -> GLattice {
    GLattice::new(g, n.rank(), n.matrices().iter().zip(chi).map(|(m, &c)| m.scale(&big(c))).collect()).unwrap()
}

fn families() -> Vec<Family> {
    let mut out = Vec::new();

    let g = c2();
    let swap = permutation_lattice_of(&g, &[vec![0, 1], vec![1, 0]]).unwrap();
    let sign = vec![1, -1];
    let triv = |r| GLattice::trivial(&g, r);
    out.push(Family {
        name: "C2",
        lattices: vec![
            ("Z".into(), triv(1)),
            ("Z^3".into(), triv(3)),
            ("Z[C2]".into(), swap.clone()),
            ("Z[C2]+Z".into(), swap.direct_sum(&triv(1))),
            ("Z(1)".into(), twist(&triv(1), &g, &sign)),
            ("Z(1)^2".into(), twist(&triv(2), &g, &sign)),
            ("(Z[C2]+Z)(1)".into(), twist(&swap.direct_sum(&triv(1)), &g, &sign)),
        ],
        group: g,
        sign: Some(sign),
    });

    let g = FiniteGroup::cyclic(3);
    let rot = permutation_lattice_of(&g, &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
    out.push(Family {
        name: "C3",
        lattices: vec![("Z^2".into(), GLattice::trivial(&g, 2)), ("Z[C3]".into(), rot)],
        group: g,
        sign: None,
    });

    // C2 x C2 with element (a, b) at id 2a + b
    let g = FiniteGroup::direct_product(&c2(), &c2());
    let first: Vec<i64> = (0..4).map(|x| if x / 2 == 1 { -1 } else { 1 }).collect();
    let second: Vec<i64> = (0..4).map(|x| if x % 2 == 1 { -1 } else { 1 }).collect();
    let perm_first = permutation_lattice_of(&g, &(0..4).map(|x| if x / 2 == 1 { vec![1, 0] } else { vec![0, 1] }).collect::<Vec<_>>()).unwrap();
    let triv1 = GLattice::trivial(&g, 1);
    out.push(Family {
        name: "C2xC2",
        lattices: vec![
            ("Z[V/<b>]".into(), perm_first.clone()),
            ("Z[V/<b>]+Z".into(), perm_first.direct_sum(&triv1)),
            ("Z[V/<b>](chi_b)".into(), twist(&perm_first, &g, &second)),
            ("Z(chi_a)+Z(chi_b)".into(), twist(&triv1, &g, &first).direct_sum(&twist(&triv1, &g, &second))),
        ],
        group: g,
        sign: Some(first),
    });

    let (g, perms) = FiniteGroup::symmetric(3);
    let parity: Vec<i64> = perms.iter().map(|p| if inversions(p).is_multiple_of(2) { 1 } else { -1 }).collect();
    let natural = permutation_lattice_of(&g, &perms).unwrap();
    out.push(Family {
        name: "S3",
        lattices: vec![
            ("Z".into(), GLattice::trivial(&g, 1)),
            ("Z^3".into(), natural.clone()),
            ("Z^3(sgn)".into(), twist(&natural, &g, &parity)),
            ("Z(sgn)+Z".into(), twist(&GLattice::trivial(&g, 1), &g, &parity).direct_sum(&GLattice::trivial(&g, 1))),
        ],
        group: g,
        sign: Some(parity),
    });
    out
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count()
}

/// `Hom(Nₛ, Λ²Nₛ) → Hom(N, Λ²N)` for the summand starting at `offset`.
fn summand_inclusion(rs: usize, offset: usize, r: usize) -> ModuleMap {
    let ks = rs * rs.saturating_sub(1) / 2;
    let k = r * (r - 1) / 2;
    let mut m = IntMatrix::zeros(r * k, rs * ks);
    let small: Vec<(usize, usize)> = (0..rs).flat_map(|i| (i + 1..rs).map(move |j| (i, j))).collect();
    for i in 0..rs {
        for (l, &(a, b)) in small.iter().enumerate() {
            let row = (i + offset) * k + pair_index(r, a + offset, b + offset);
            m[(row, i * ks + l)] = big(1);
        }
    }
    ModuleMap::new(m)
}

fn additivity(g: &FiniteGroup, n1: &GLattice, n2: &GLattice) -> bool {
    let sum = n1.direct_sum(n2);
    let (r1, r2) = (n1.rank(), n2.rank());
    let total = v2(g, &sum).unwrap();
    let mut acc = vec![BigInt::zero(); total.class.coords.len()];
    for (n, offset) in [(n1, 0), (n2, r1)] {
        if n.rank() < 2 {
            continue;
        }
        let part = v2(g, n).unwrap();
        let image = map_on_cohomology(&summand_inclusion(n.rank(), offset, r1 + r2), &part.cohomology, &part.class, &total.cohomology).unwrap();
        acc.iter_mut().zip(&image.coords).for_each(|(a, b)| *a += b);
    }
    let expected = total.cohomology.class_from_coords(&acc);
    total.cohomology.same_class(&total.class, &expected)
}

fn criterion_6() -> bool {
    let start = Instant::now();
    let mut v = Verdict::new();
    let mut generators = 0;
    let mut identities = 0;
    for fam in families() {
        let g = &fam.group;
        for (lname, n) in &fam.lattices {
            let universal = SplitExtension::new(g.clone(), n.clone(), h2_lattice(g, n).unwrap()).unwrap();
            let w = WallResolution::new(&universal, 3).unwrap();
            let vv = v2_with(&w, &universal).unwrap();
            for level in [2i64, 3, 4] {
                let mut actions = vec![vec![1i64; g.order()]];
                actions.extend(fam.sign.clone().filter(|_| level > 2));
                for chi in actions {
                    let tag = format!("{} {lname} mu_{level} chi={chi:?}", fam.name);
                    let m = CoeffModule::scalar(g, Some(big(level)), &chi).unwrap();
                    let ext = universal.with_module(m).unwrap();
                    let inv = invariant_classes(&ext).unwrap();
                    for gen in &inv.group.generators {
                        generators += 1;
                        let alpha = alternating_from_coords(gen, 1);
                        let ok = cv_formula_check_with(&w, &ext, &vv, &alpha).unwrap();
                        v.check(ok, || format!("{tag}: generator {gen:?}"));
                    }
                    match order_identity(&w, &ext) {
                        Ok((a, b)) => {
                            identities += 1;
                            v.check(a == b, || format!("{tag}: |H2| = {a}, E2 product {b}"));
                        }
                        Err(e) => v.check(false, || format!("{tag}: {e}")),
                    }
                }
            }
        }
    }
    // the bilinear-cocycle entry point agrees with the direct one
    let (s3, perms) = FiniteGroup::symmetric(3);
    let natural = permutation_lattice_of(&s3, &perms).unwrap();
    let ext = SplitExtension::new(s3.clone(), natural, CoeffModule::trivial(&s3, 1, Some(big(2)))).unwrap();
    let form = BilinearCocycle { values: (0..3).map(|i| (0..3).map(|j| vec![big(i64::from(i < j))]).collect()).collect() };
    v.check(cv_formula_check(&ext, &form).unwrap(), || "bilinear form on S3 natural lattice".into());

    // control case where v2 and d2 are nonzero
    let a = IntMatrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, -1]]);
    let b = IntMatrix::from_rows(&[vec![1, -1, -1], vec![0, 0, -1], vec![0, -1, 0]]);
    let (d8, mats) = matrix_group(&[a, b]);
    let n = GLattice::new(&d8, 3, mats).unwrap();
    let l2 = h2_lattice(&d8, &n).unwrap();
    let m = CoeffModule::new(&d8, l2.rank(), Some(big(2)), l2.matrices().to_vec()).unwrap();
    let ext = SplitExtension::new(d8.clone(), n.clone(), m).unwrap();
    let w = WallResolution::new(&ext, 3).unwrap();
    let vv = v2_with(&w, &ext).unwrap();
    v.check(!vv.is_zero(), || "control: v2 vanished".into());
    let d = d2_02_with(&w, &ext).unwrap();
    v.check(!d.is_zero(), || "control: d2 vanished".into());
    match order_identity(&w, &ext) {
        Ok((x, y)) => v.check(x == y, || format!("control: |H2| = {x}, E2 product {y}")),
        Err(e) => v.check(false, || format!("control: {e}")),
    }
    for gen in &invariant_classes(&ext).unwrap().group.generators {
        generators += 1;
        let ok = cv_formula_check_with(&w, &ext, &vv, &alternating_from_coords(gen, 3)).unwrap();
        v.check(ok, || format!("control: generator {gen:?}"));
    }

    // additivity on direct sums
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let fams = families();
    let mut sums = 0;
    while sums < RANDOM_SUMS {
        let fam = fams.choose(&mut rng).unwrap();
        let (_, n1) = fam.lattices.choose(&mut rng).unwrap();
        let (_, n2) = fam.lattices.choose(&mut rng).unwrap();
        if n1.rank() + n2.rank() > 3 {
            continue;
        }
        sums += 1;
        v.check(additivity(&fam.group, n1, n2), || format!("{}: additivity fails for ranks {} + {}", fam.name, n1.rank(), n2.rank()));
    }
    v.check(additivity(&FiniteGroup::trivial(), &GLattice::trivial(&FiniteGroup::trivial(), 1), &GLattice::trivial(&FiniteGroup::trivial(), 2)), || "trivial group additivity".into());
    v.notes.push(format!("{generators} generators, {identities} order identities, {sums} direct sums, nonzero control"));
    finish(6, "d2 equals the pushforward of v2; v2 additive", start, None, v)
}

fn criterion_7() -> bool {
    let start = Instant::now();
    let mut v = Verdict::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);

    // resolutions
    let (s3, s3_perms) = FiniteGroup::symmetric(3);
    let v4 = FiniteGroup::direct_product(&c2(), &c2());
    let mut groups: Vec<(String, FiniteGroup)> = (1..=6).map(|m| (format!("C{m}"), FiniteGroup::cyclic(m))).collect();
    groups.push(("S3".into(), s3.clone()));
    groups.push(("C2xC2".into(), v4.clone()));
    for (name, g) in &groups {
        v.check(bar_resolution(g, 3).unwrap().verify().is_ok(), || format!("bar resolution of {name}"));
        v.check(normalized_bar_resolution(g, 4).unwrap().verify().is_ok(), || format!("normalized bar of {name}"));
        if g.cyclic_generator().is_some() {
            v.check(periodic_resolution(g, 4).unwrap().verify().is_ok(), || format!("periodic resolution of {name}"));
        }
    }
    let walls = [
        (c2(), GLattice::from_involution(&IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]])).unwrap()),
        (s3.clone(), permutation_lattice_of(&s3, &s3_perms).unwrap()),
        (FiniteGroup::trivial(), GLattice::trivial(&FiniteGroup::trivial(), 3)),
    ];
    for (g, n) in &walls {
        let ext = SplitExtension::new(g.clone(), n.clone(), CoeffModule::trivial(g, 1, Some(big(2)))).unwrap();
        v.check(WallResolution::new(&ext, 3).unwrap().verify().is_ok(), || format!("twisted resolution, |pi| = {}", g.order()));
    }

    // cohomology of free abelian groups
    let triv = FiniteGroup::trivial();
    for r in 1..=4usize {
        for n in [2i64, 3, 4] {
            let ext = SplitExtension::new(triv.clone(), GLattice::trivial(&triv, r), CoeffModule::trivial(&triv, 1, Some(big(n)))).unwrap();
            let w = WallResolution::new(&ext, 4).unwrap();
            for q in 0..=3usize {
                let order = w.cohomology(ext.module(), q).unwrap().group.order();
                let binom = (0..q).fold(1usize, |acc, i| acc * (r.saturating_sub(i)) / (i + 1));
                let expected = big(n).pow(binom as u32);
                v.check(order == Some(expected.clone()), || format!("H^{q}(Z^{r}, Z/{n}) has order {order:?}, expected {expected}"));
            }
        }
    }

    // corestriction after restriction
    let c4 = FiniteGroup::cyclic(4);
    let find = |p: &[usize]| s3_perms.iter().position(|q| q == p).unwrap();
    let pairs = [
        ("C4 > C2", c4.clone(), c4.generated(&[2]), vec![vec![1i64; 4], vec![1, -1, 1, -1]]),
        ("S3 > C3", s3.clone(), s3.generated(&[find(&[1, 2, 0])]), vec![vec![1i64; 6], s3_perms.iter().map(|p| if inversions(p).is_multiple_of(2) { 1 } else { -1 }).collect()]),
        ("S3 > C2", s3.clone(), s3.generated(&[find(&[1, 0, 2])]), vec![vec![1i64; 6], s3_perms.iter().map(|p| if inversions(p).is_multiple_of(2) { 1 } else { -1 }).collect()]),
    ];
    for (name, g, h_ids, chars) in &pairs {
        let sub = g.subgroup(h_ids).unwrap();
        let index = big((g.order() / sub.order()) as i64);
        for chi in chars {
            for modulus in [None, Some(big(2)), Some(big(3)), Some(big(4)), Some(big(6))] {
                let module = CoeffModule::scalar(g, modulus.clone(), chi).unwrap();
                for deg in 0..=2 {
                    let gc = cohomology(g, &module, deg).unwrap();
                    let hc = gc.of_subgroup(&sub).unwrap();
                    for i in 0..gc.structure().ngens() {
                        let mut e = vec![BigInt::zero(); gc.structure().ngens()];
                        e[i] = big(1);
                        let x = gc.class_from_coords(&e);
                        let back = corestriction(&hc, &gc, &sub, &restriction(&gc, &hc, &sub, &x).unwrap()).unwrap();
                        let scaled = gc.class_from_coords(&x.coords.iter().map(|c| c * &index).collect::<Vec<_>>());
                        v.check(gc.same_class(&back, &scaled), || format!("{name}, chi {chi:?}, {modulus:?}, degree {deg}"));
                    }
                }
            }
        }
    }

    // periodic against bar resolution
    for m in 1..=6usize {
        let g = FiniteGroup::cyclic(m);
        let mut chars = vec![vec![1i64; m]];
        if m % 2 == 0 {
            chars.push((0..m).map(|k| if k % 2 == 1 { -1 } else { 1 }).collect());
        }
        for chi in &chars {
            for modulus in [None, Some(big(2)), Some(big(3)), Some(big(4))] {
                let module = CoeffModule::scalar(&g, modulus.clone(), chi).unwrap();
                for deg in 0..=3 {
                    let a = cohomology_with(&g, &module, deg, ResolutionChoice::Periodic).unwrap();
                    let b = cohomology_with(&g, &module, deg, ResolutionChoice::NormalizedBar).unwrap();
                    v.check(a.structure().same_structure(b.structure()), || format!("C{m} {chi:?} {modulus:?} degree {deg}"));
                }
            }
        }
        // H^*(C_m, Z) = Z, 0, Z/m, 0
        let z = CoeffModule::trivial(&g, 1, None);
        let expected = ["Z".to_string(), "0".to_string(), if m == 1 { "0".to_string() } else { format!("Z/{m}") }, "0".to_string()];
        for (deg, e) in expected.iter().enumerate() {
            let got = cohomology(&g, &z, deg).unwrap().structure().describe();
            v.check(&got == e, || format!("H^{deg}(C{m}, Z) = {got}"));
        }
    }

    // involution decomposition
    let types = triples(4);
    for t in 0..RANDOM_INVOLUTIONS {
        let &(a, b, c) = types.choose(&mut rng).unwrap();
        let s = conjugate(&canonical_involution(a, b, c), &random_unimodular(a + b + 2 * c, &mut rng));
        let d = c2_decompose(&s).unwrap();
        let back = conjugate(&s, &d.base_change);
        v.check(back == canonical_involution(d.a, d.b, d.c), || format!("involution {t}: B S B^-1 not canonical"));
        v.check(d.triple() == (a, b, c), || format!("involution {t}: triple {:?} vs {:?}", d.triple(), (a, b, c)));
        v.check(s.trace() == big(d.a as i64 - d.b as i64), || format!("involution {t}: trace"));
    }
    v.notes.push(format!("{} groups, {RANDOM_INVOLUTIONS} involutions", groups.len()));
    finish(7, "engine invariants", start, Some(LIMIT_ENGINE), v)
}

fn criterion_8() -> bool {
    let start = Instant::now();
    let mut v = Verdict::new();
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    let bin = env!("CARGO_BIN_EXE_torus-brauer");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    for stem in ["qi", "s3", "split3"] {
        let input = root.join("data").join(format!("{stem}.json"));
        for (flag, ext) in [("--json", "json"), ("--text", "txt")] {
            let first = run(&["qt-brauer", input.to_str().unwrap(), flag]);
            let second = run(&["qt-brauer", input.to_str().unwrap(), flag]);
            let golden = std::fs::read(root.join("golden").join(format!("{stem}.qt-brauer.{ext}"))).unwrap_or_default();
            v.check(first.status.code() == Some(0), || format!("{stem} {flag}: exit {:?}", first.status.code()));
            v.check(first.stdout == golden, || format!("{stem} {flag}: differs from golden file"));
            v.check(first.stdout == second.stdout, || format!("{stem} {flag}: not byte-stable"));
        }
    }
    let a = run(&["selftest", "--suite", "qt-brauer", "--seed", "3"]);
    let b = run(&["selftest", "--suite", "qt-brauer", "--seed", "3"]);
    v.check(a.stdout == b.stdout && a.status.code() == Some(0), || "seeded selftest not reproducible".into());
    let data = |n: &str| root.join("data").join(n).to_str().unwrap().to_string();
    let codes = [
        (vec!["qt-brauer".to_string(), data("unknown_field.json")], 2),
        (vec!["qt-brauer".to_string(), data("ind.json")], 2),
        (vec!["qt-brauer".to_string(), data("odd_modulus.json")], 3),
        (vec!["real-torus".to_string(), data("not_involution.json")], 3),
        (vec!["real-torus".to_string(), data("ind.json")], 0),
    ];
    for (args, code) in &codes {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let got = run(&args).status.code();
        v.check(got == Some(*code), || format!("{args:?}: exit {got:?}, expected {code}"));
    }
    finish(8, "CLI golden files and exit codes", start, None, v)
}

#[test]
fn acceptance() {
    let mut quadratic = Vec::new();
    let results = [
        criterion_1(&mut quadratic),
        criterion_2(&mut quadratic),
        criterion_3(&quadratic),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ];
    let passed = results.iter().filter(|&&x| x).count();
    line(&format!("acceptance: {passed}/{} criteria pass", results.len()));
    assert!(results.iter().all(|&x| x), "some acceptance criteria failed");
}
