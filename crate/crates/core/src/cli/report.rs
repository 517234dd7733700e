use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::input::{GaloisDatumSpec, InputDocument, InvolutionSpec, SplitExtensionSpec};
use super::CliError;
use crate::brauer::{real_torus_check, representative_independence, thm2_basis, verify_basis, SymbolKind};
use crate::hs::{
    alternating_from_coords, cv_formula_check_with, d2_02_with, invariant_classes, v2_with, SplitExtension,
    WallResolution,
};
use crate::intlat::{FinAbGroup, IntMatrix};

/// A finished command: the machine-readable document, its text rendering
/// and whether the computation contradicted an expected identity.
#[derive(Clone, Debug)]
pub struct ReportDocument {
    pub json: Value,
    pub text: String,
    pub disagreement: Option<String>,
}

impl ReportDocument {
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("report serializes");
        s.push('\n');
        s
    }
}

pub(crate) fn num(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub(crate) fn nums(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(num).collect())
}

pub(crate) fn structure(g: &FinAbGroup) -> Value {
    json!({
        "invariant_factors": nums(&g.torsion),
        "free_rank": g.free_rank,
        "text": g.describe(),
    })
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| nums(m.row(i))).collect())
}

fn header(command: &str, input: &InputDocument) -> serde_json::Map<String, Value> {
    let mut map = serde_json::Map::new();
    map.insert("tool".into(), json!("torus-brauer"));
    map.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    map.insert("command".into(), json!(command));
    map.insert("input".into(), serde_json::to_value(input).expect("input serializes"));
    map
}

fn title(command: &str, input: &InputDocument) -> String {
    match input.label() {
        Some(l) => format!("{command}: {l}\n"),
        None => format!("{command}\n"),
    }
}

fn wrong_kind(expected: &str, input: &InputDocument) -> CliError {
    CliError::Schema(format!("expected an input of kind {expected}, got {}", input.kind()))
}

fn pair_json((i, j): (usize, usize)) -> Value {
    json!([i + 1, j + 1])
}

/// Symbol basis, oracle comparison, basis verification and representative
/// independence for a Galois datum.
pub fn cmd_qt_brauer(input: &InputDocument) -> Result<ReportDocument, CliError> {
    let InputDocument::GaloisDatum(payload) = input else { return Err(wrong_kind("galois-datum", input)) };
    qt_brauer(input, payload)
}

fn qt_brauer(input: &InputDocument, payload: &GaloisDatumSpec) -> Result<ReportDocument, CliError> {
    let datum = payload.build()?;
    let report = thm2_basis(&datum)?;
    let check = verify_basis(&datum)?;
    let independent = representative_independence(&datum)?;
    let describe = |ids: &[usize]| -> Vec<String> { ids.iter().map(|&g| datum.describe_element(g)).collect() };

    let orbits: Vec<Value> = report
        .orbits
        .iter()
        .map(|o| {
            json!({
                "pair": pair_json(o.pair),
                "orbit_size": o.orbit_size,
                "stabilizer": describe(&o.stabilizer),
                "unordered_stabilizer": describe(&o.unordered_stabilizer),
                "quadratic": o.quadratic,
                "n": o.n,
                "sigma": o.sigma.map(|s| datum.describe_element(s)),
                "n_prime": o.n_prime,
                "m": o.m_o,
            })
        })
        .collect();
    let symbols: Vec<Value> = report
        .basis
        .iter()
        .map(|s| {
            json!({
                "kind": match s.kind { SymbolKind::I => "I", SymbolKind::II => "II" },
                "pair": pair_json(s.pair),
                "field": s.field,
                "modulus": s.modulus,
                "text": s.render(),
            })
        })
        .collect();
    let agreement = report.agrees && check.ok() && independent;
    let mut map = header("qt-brauer", input);
    map.insert("group_order".into(), json!(datum.group().order()));
    map.insert("orbits".into(), Value::Array(orbits));
    map.insert("structure".into(), structure(&report.structure));
    map.insert("basis".into(), Value::Array(symbols));
    map.insert("oracle".into(), structure(&report.oracle));
    map.insert(
        "generator_coordinates".into(),
        Value::Array(report.generator_coords.iter().map(|c| nums(c)).collect()),
    );
    map.insert(
        "verification".into(),
        json!({
            "factors_match": check.factors_match,
            "elements_invariant": check.elements_invariant,
            "generates": check.generates,
            "orders_match": check.orders_match,
            "order_product_matches": check.order_product_matches,
            "representative_independence": independent,
        }),
    );
    map.insert("agreement".into(), json!(agreement));

    let mut text = title("qt-brauer", input);
    let _ = writeln!(text, "group order {}, r = {}, M = {}", datum.group().order(), datum.rank(), datum.modulus());
    for o in &report.orbits {
        let _ = write!(
            text,
            "orbit {{{},{}}}: size {}, n = {}",
            o.pair.0 + 1,
            o.pair.1 + 1,
            o.orbit_size,
            o.n
        );
        match o.n_prime {
            Some(np) => {
                let _ = writeln!(text, ", quadratic, n' = {np}");
            }
            None => text.push('\n'),
        }
    }
    let _ = writeln!(text, "Br = {}", report.structure);
    for s in &report.basis {
        let _ = writeln!(text, "  {}    E({},{}) fixed by {}", s.render(), s.pair.0 + 1, s.pair.1 + 1, s.field);
    }
    let _ = writeln!(text, "oracle: {}", report.oracle);
    let _ = writeln!(text, "agreement: {}", if agreement { "yes" } else { "NO" });

    let disagreement = (!agreement).then(|| "symbol basis and invariants oracle disagree".to_string());
    Ok(ReportDocument { json: Value::Object(map), text, disagreement })
}

/// `d₂^{0,2}` at each coefficient level for a real torus.
pub fn cmd_real_torus(input: &InputDocument, moduli: &[u64]) -> Result<ReportDocument, CliError> {
    let InputDocument::InvolutionLattice(payload) = input else { return Err(wrong_kind("involution-lattice", input)) };
    real_torus(input, payload, moduli)
}

fn real_torus(input: &InputDocument, payload: &InvolutionSpec, moduli: &[u64]) -> Result<ReportDocument, CliError> {
    let x = payload.build()?;
    let mut levels = Vec::new();
    let mut text = title("real-torus", input);
    let mut triple = None;
    let mut all_zero = true;
    for &n in moduli {
        let rep = real_torus_check(&x, n)?;
        triple = Some(rep.decomposition);
        all_zero &= rep.d2_is_zero();
        levels.push(json!({
            "modulus": n,
            "invariants": structure(&rep.invariants),
            "target": structure(&rep.d2.codomain),
            "d2": matrix_json(&rep.d2.matrix),
            "d2_zero": rep.d2_is_zero(),
        }));
        let _ = writeln!(
            text,
            "n = {n}: H2(N, mu_n)^C2 = {}, d2 {}",
            rep.invariants,
            if rep.d2_is_zero() { "= 0" } else { "!= 0" }
        );
    }
    let (a, b, c) = match triple {
        Some(t) => t,
        None => crate::gmod::c2_decompose(&x)?.triple(),
    };
    let header_line = format!("X = Z^{a} + Z(1)^{b} + Ind^{c}\n");
    text.insert_str(text.find('\n').map_or(0, |i| i + 1), &header_line);
    let mut map = header("real-torus", input);
    map.insert("decomposition".into(), json!({ "a": a, "b": b, "c": c }));
    map.insert("levels".into(), Value::Array(levels));
    map.insert("all_zero".into(), json!(all_zero));
    let disagreement = (!all_zero).then(|| "nonzero d2 for a real torus".to_string());
    Ok(ReportDocument { json: Value::Object(map), text, disagreement })
}

struct CvResults {
    rows: Vec<Value>,
    text: String,
    all_hold: bool,
}

fn cv_checks(w: &WallResolution, ext: &SplitExtension) -> Result<CvResults, CliError> {
    let v = v2_with(w, ext)?;
    let inv = invariant_classes(ext)?;
    let k = ext.module().rank();
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all_hold = true;
    for (idx, g) in inv.group.generators.iter().enumerate() {
        let alpha = alternating_from_coords(g, k);
        let ok = cv_formula_check_with(w, ext, &v, &alpha)?;
        all_hold &= ok;
        rows.push(json!({ "alpha": nums(g), "holds": ok }));
        let _ = writeln!(text, "  alpha_{} = {:?}: {}", idx + 1, g.iter().map(|x| x.to_string()).collect::<Vec<_>>(), if ok { "holds" } else { "FAILS" });
    }
    Ok(CvResults { rows, text, all_hold })
}

/// `d₂^{0,2}` for a split extension, with the pushforward check per generator.
pub fn cmd_d2(input: &InputDocument) -> Result<ReportDocument, CliError> {
    let InputDocument::SplitExtension(payload) = input else { return Err(wrong_kind("split-extension", input)) };
    split_report("d2", input, payload)
}

/// `v₂(N)` for a split extension, with the pushforward check per generator.
pub fn cmd_v2(input: &InputDocument) -> Result<ReportDocument, CliError> {
    let InputDocument::SplitExtension(payload) = input else { return Err(wrong_kind("split-extension", input)) };
    split_report("v2", input, payload)
}

fn split_report(command: &str, input: &InputDocument, payload: &SplitExtensionSpec) -> Result<ReportDocument, CliError> {
    let ext = payload.build()?;
    let w = WallResolution::new(&ext, 3)?;
    let mut map = header(command, input);
    let mut text = title(command, input);
    let _ = writeln!(text, "|pi| = {}, rank N = {}", ext.pi().order(), ext.lattice().rank());
    map.insert("group_order".into(), json!(ext.pi().order()));
    map.insert("lattice_rank".into(), json!(ext.lattice().rank()));
    if command == "d2" {
        let d = d2_02_with(&w, &ext)?;
        let _ = writeln!(text, "H2(N, M)^pi = {}", d.domain);
        let _ = writeln!(text, "H2(pi, H1(N, M)) = {}", d.codomain);
        let _ = writeln!(text, "d2 {}", if d.is_zero() { "= 0" } else { "!= 0" });
        map.insert(
            "d2".into(),
            json!({
                "domain": structure(&d.domain),
                "codomain": structure(&d.codomain),
                "matrix": matrix_json(&d.matrix),
                "zero": d.is_zero(),
            }),
        );
    } else {
        let v = v2_with(&w, &ext)?;
        let _ = writeln!(text, "H2(pi, Hom(N, L2 N)) = {}", v.cohomology.structure());
        let _ = writeln!(text, "v2 = {:?}{}", v.class.coords.iter().map(|x| x.to_string()).collect::<Vec<_>>(), if v.is_zero() { " (zero)" } else { "" });
        map.insert(
            "v2".into(),
            json!({
                "group": structure(v.cohomology.structure()),
                "coordinates": nums(&v.class.coords),
                "zero": v.is_zero(),
            }),
        );
    }
    let cv = cv_checks(&w, &ext)?;
    let _ = writeln!(text, "pushforward formula on {} generator(s):", cv.rows.len());
    text.push_str(&cv.text);
    map.insert("cv_formula".into(), Value::Array(cv.rows));
    map.insert("cv_formula_holds".into(), json!(cv.all_hold));
    let disagreement = (!cv.all_hold).then(|| "d2 differs from the pushforward of v2".to_string());
    Ok(ReportDocument { json: Value::Object(map), text, disagreement })
}
