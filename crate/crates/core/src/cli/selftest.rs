use std::time::Instant;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::report::ReportDocument;
use crate::brauer::{real_torus_check, representative_independence, verify_basis};
use crate::cohom::{cohomology_with, ResolutionChoice};
use crate::error::Result;
use crate::gmod::{c2_decompose, canonical_involution, CoeffModule, FiniteGroup, GLattice, GaloisDatum};
use crate::hs::{cv_formula_check, v2, BilinearCocycle, SplitExtension, WallResolution};
use crate::intlat::{smith, IntMatrix};

/// Names accepted by `--suite`.
pub const SUITES: [&str; 6] = ["smith", "cohomology", "c2", "qt-brauer", "real-torus", "cv"];

/// A unimodular matrix built from `n + 2` random elementary operations with
/// coefficients `±1`, so entries stay small.
pub fn random_unimodular(n: usize, rng: &mut impl Rng) -> IntMatrix {
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n < 2 {
        return IntMatrix::from_rows_with_cols(&rows, n);
    }
    for _ in 0..n + 2 {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b {
            rows.swap(a, (a + 1) % n);
            continue;
        }
        let c = if rng.gen_bool(0.5) { 1 } else { -1 };
        let src = rows[b].clone();
        rows[a].iter_mut().zip(&src).for_each(|(x, y)| *x += c * y);
    }
    IntMatrix::from_rows_with_cols(&rows, n)
}

/// `B·S·B⁻¹` for a canonical `S` of rank `a + b + 2c`.
pub fn random_involution(a: usize, b: usize, c: usize, rng: &mut impl Rng) -> IntMatrix {
    let s = canonical_involution(a, b, c);
    let p = random_unimodular(s.rows(), rng);
    let pinv = p.inverse_unimodular().expect("unimodular");
    &(&p * &s) * &pinv
}

/// A datum on `r ≤ 4` characters generated by at most two random pairs.
pub fn random_datum(rng: &mut impl Rng) -> GaloisDatum {
    let r = rng.gen_range(2..=4);
    let modulus = *[2u64, 4, 6, 8, 12].choose(rng).expect("nonempty");
    let units: Vec<u64> = (1..modulus).filter(|u| num_integer::gcd(*u, modulus) == 1).collect();
    let gens: Vec<(Vec<usize>, u64)> = (0..rng.gen_range(0..=2))
        .map(|_| {
            let mut p: Vec<usize> = (0..r).collect();
            p.shuffle(rng);
            (p, *units.choose(rng).expect("unit"))
        })
        .collect();
    GaloisDatum::from_generators(r, modulus, &gens).expect("generated data are valid")
}

struct Outcome {
    checks: usize,
    failures: Vec<String>,
}

fn suite_smith(rng: &mut ChaCha8Rng) -> Outcome {
    let mut failures = Vec::new();
    let checks = 30;
    for t in 0..checks {
        let (m, n) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let a = IntMatrix::from_fn(m, n, |_, _| BigInt::from(rng.gen_range(-9i64..=9)));
        let s = smith(&a);
        let diag = s.diagonal();
        let chain = diag.windows(2).all(|w| w[1] == BigInt::from(0) || (&w[1] % &w[0]) == BigInt::from(0));
        if &(&s.u * &a) * &s.v != s.d || !s.u.is_unimodular() || !s.v.is_unimodular() || !chain {
            failures.push(format!("case {t}"));
        }
    }
    Outcome { checks, failures }
}

fn suite_cohomology(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut checks = 0;
    for m in 2..=5 {
        let g = FiniteGroup::cyclic(m);
        let n = rng.gen_range(2..=6);
        let chi: Vec<i64> = (0..m).map(|k| if k % 2 == 1 && m % 2 == 0 { -1 } else { 1 }).collect();
        let module = CoeffModule::scalar(&g, Some(BigInt::from(n)), &chi)?;
        for deg in 0..=3 {
            checks += 1;
            let a = cohomology_with(&g, &module, deg, ResolutionChoice::Periodic)?;
            let b = cohomology_with(&g, &module, deg, ResolutionChoice::NormalizedBar)?;
            if !a.structure().same_structure(b.structure()) {
                failures.push(format!("C{m} Z/{n} degree {deg}"));
            }
        }
    }
    for r in 1..=3 {
        let pi = FiniteGroup::trivial();
        let ext = SplitExtension::new(pi.clone(), GLattice::trivial(&pi, r), CoeffModule::trivial(&pi, 1, Some(BigInt::from(2))))?;
        let w = WallResolution::new(&ext, 4)?;
        for q in 0..=3 {
            checks += 1;
            let order = w.cohomology(ext.module(), q)?.group.order();
            let expected = BigInt::from(2).pow(binomial(r, q) as u32);
            if order != Some(expected) {
                failures.push(format!("H^{q}(Z^{r}, Z/2)"));
            }
        }
    }
    Ok(Outcome { checks, failures })
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn random_triple(max_rank: usize, rng: &mut ChaCha8Rng) -> (usize, usize, usize) {
    loop {
        let (a, b, c) = (rng.gen_range(0..=max_rank), rng.gen_range(0..=max_rank), rng.gen_range(0..=max_rank / 2));
        let n = a + b + 2 * c;
        if (1..=max_rank).contains(&n) {
            return (a, b, c);
        }
    }
}

fn suite_c2(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut failures = Vec::new();
    let checks = 40;
    for t in 0..checks {
        let (a, b, c) = random_triple(4, rng);
        let s = random_involution(a, b, c, rng);
        let d = c2_decompose(&s)?;
        let canon = canonical_involution(d.a, d.b, d.c);
        let binv = d.base_change.inverse_unimodular().expect("unimodular base change");
        let trace_ok = s.trace() == BigInt::from(d.a as i64 - d.b as i64);
        if d.triple() != (a, b, c) || &(&d.base_change * &s) * &binv != canon || !trace_ok {
            failures.push(format!("case {t}"));
        }
    }
    Ok(Outcome { checks, failures })
}

fn suite_qt(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut failures = Vec::new();
    let checks = 25;
    for t in 0..checks {
        let d = random_datum(rng);
        if !verify_basis(&d)?.ok() || !representative_independence(&d)? {
            failures.push(format!("datum {t}"));
        }
    }
    Ok(Outcome { checks, failures })
}

fn suite_real(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut checks = 0;
    for t in 0..6 {
        let (a, b, c) = random_triple(3, rng);
        let s = random_involution(a, b, c, rng);
        for n in [2, 3, 4] {
            checks += 1;
            if !real_torus_check(&s, n)?.d2_is_zero() {
                failures.push(format!("lattice {t} at n = {n}"));
            }
        }
    }
    Ok(Outcome { checks, failures })
}

fn suite_cv(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut checks = 0;
    let (s3, perms) = FiniteGroup::symmetric(3);
    let lattices = [
        (FiniteGroup::cyclic(2), GLattice::from_involution(&IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]))?),
        (s3.clone(), crate::gmod::permutation_lattice_of(&s3, &perms)?),
    ];
    for (pi, n) in lattices {
        let r = n.rank();
        let module = CoeffModule::trivial(&pi, 1, Some(BigInt::from(2)));
        let ext = SplitExtension::new(pi.clone(), n.clone(), module)?;
        if !v2(&pi, &n)?.is_zero() {
            failures.push(format!("v2 of rank {r} lattice for a group of order {}", pi.order()));
        }
        // a random alternating form; only invariant ones are admissible
        let inv = crate::hs::invariant_classes(&ext)?;
        for g in &inv.group.generators {
            checks += 1;
            let mut coords = g.clone();
            if rng.gen_bool(0.5) {
                coords.iter_mut().for_each(|x| *x *= 3);
            }
            let alpha = crate::hs::alternating_from_coords(&coords, 1);
            if !cv_formula_check(&ext, &BilinearCocycle::from_alternating(r, &alpha))? {
                failures.push(format!("pushforward for a group of order {}", pi.order()));
            }
        }
    }
    Ok(Outcome { checks, failures })
}

/// Runs the named suites (all when `filter` is `None`) with a fixed seed.
/// Timings go to stderr so the report itself is reproducible.
pub fn cmd_selftest(filter: Option<&str>, seed: u64) -> Result<ReportDocument, super::CliError> {
    if let Some(f) = filter {
        if !SUITES.contains(&f) {
            return Err(super::CliError::Schema(format!("unknown suite {f}; expected one of {}", SUITES.join(", "))));
        }
    }
    let mut rows = Vec::new();
    let mut text = format!("selftest (seed {seed})\n");
    let mut all = true;
    for (idx, name) in SUITES.iter().enumerate() {
        if filter.is_some_and(|f| f != *name) {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(idx as u64));
        let start = Instant::now();
        let outcome = match *name {
            "smith" => suite_smith(&mut rng),
            "cohomology" => suite_cohomology(&mut rng)?,
            "c2" => suite_c2(&mut rng)?,
            "qt-brauer" => suite_qt(&mut rng)?,
            "real-torus" => suite_real(&mut rng)?,
            _ => suite_cv(&mut rng)?,
        };
        eprintln!("{name}: {:.2?}", start.elapsed());
        let pass = outcome.failures.is_empty();
        all &= pass;
        let _ = std::fmt::Write::write_fmt(
            &mut text,
            format_args!("{} {name} ({} checks)\n", if pass { "PASS" } else { "FAIL" }, outcome.checks),
        );
        for f in &outcome.failures {
            text.push_str(&format!("  failed: {f}\n"));
        }
        rows.push(json!({ "suite": name, "passed": pass, "checks": outcome.checks, "failures": outcome.failures }));
    }
    let report = json!({
        "tool": "torus-brauer",
        "version": env!("CARGO_PKG_VERSION"),
        "command": "selftest",
        "seed": seed,
        "suites": Value::Array(rows),
        "passed": all,
    });
    let disagreement = (!all).then(|| "selftest failures".to_string());
    Ok(ReportDocument { json: report, text, disagreement })
}
