//! Machine-readable reports and their text rendering.
//!
//! Every command builds one report; `--json` prints it with serde and the
//! default mode renders the same data as text. Scalars are exact `p/q`
//! strings, so parsing the JSON back reproduces the data bit for bit.

use std::collections::BTreeMap;
use std::fmt::Write;

use dgares_core::complexes::FreeComplex;
use dgares_core::dga::{DgaReport, Multiplication, Witness};
use dgares_core::monomial::Multidegree;
use dgares_core::scalar::{self, SparseVec};
use serde::{Deserialize, Serialize};

pub trait Report: Serialize {
    fn text(&self) -> String;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub degree: Vec<i64>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub num_vars: usize,
    pub totals: Vec<usize>,
    pub entries: Vec<BettiEntry>,
}

impl Report for BettiReport {
    fn text(&self) -> String {
        let mut out = format!("total betti numbers: {}\n", join(&self.totals));
        for e in &self.entries {
            let _ = writeln!(out, "beta_{} {}: {}", e.i, mono(&e.degree), e.rank);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Basis {
    pub id: usize,
    pub name: String,
    pub hdeg: usize,
    pub degree: Vec<i64>,
}

/// One matrix entry `scalar · x^exponent` from `source` to `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    pub source: usize,
    pub target: usize,
    pub scalar: String,
    pub exponent: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexReport {
    pub ranks: Vec<usize>,
    pub basis: Vec<Basis>,
    pub differential: Vec<MapEntry>,
}

impl ComplexReport {
    pub fn new(c: &FreeComplex) -> Self {
        Self { ranks: c.ranks(), basis: basis(c), differential: map_entries(c, c, c.diff()) }
    }

    fn name(&self, id: usize) -> &str {
        &self.basis[id].name
    }

    fn text(&self) -> String {
        let mut out = format!("ranks: {}\n", join(&self.ranks));
        let mut diff: BTreeMap<usize, Vec<&MapEntry>> = BTreeMap::new();
        for e in &self.differential {
            diff.entry(e.source).or_default().push(e);
        }
        for b in &self.basis {
            let terms = diff.get(&b.id).map(|v| sum(v.iter().map(|e| (*e, self.name(e.target))))).unwrap_or("0".into());
            let _ = writeln!(out, "{} [{}] {}: d = {}", b.name, b.hdeg, mono(&b.degree), terms);
        }
        out
    }
}

/// One term `scalar · x^exponent · e` of the product `g ∗ h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Product {
    pub g: usize,
    pub h: usize,
    pub e: usize,
    pub scalar: String,
    pub exponent: Vec<i64>,
}

pub fn products(m: &Multiplication) -> Vec<Product> {
    table_products(m.complex(), m.table())
}

pub fn table_products(c: &FreeComplex, table: &BTreeMap<(usize, usize), SparseVec>) -> Vec<Product> {
    let mut out = Vec::new();
    for (&(g, h), v) in table {
        for (&e, x) in v {
            out.push(Product {
                g,
                h,
                e,
                scalar: scalar::format(x),
                exponent: c.mdeg(g).add(c.mdeg(h)).sub(c.mdeg(e)).into_exponents(),
            });
        }
    }
    out
}

fn products_text(basis: &[Basis], products: &[Product]) -> String {
    let mut pairs: BTreeMap<(usize, usize), Vec<&Product>> = BTreeMap::new();
    for p in products {
        pairs.entry((p.g, p.h)).or_default().push(p);
    }
    let mut out = String::new();
    for ((g, h), ps) in pairs {
        let terms = ps.into_iter().map(|p| {
            (
                MapEntry { source: g, target: p.e, scalar: p.scalar.clone(), exponent: p.exponent.clone() },
                basis[p.e].name.as_str(),
            )
        });
        let terms: Vec<_> = terms.collect();
        let _ = writeln!(out, "{} * {} = {}", basis[g].name, basis[h].name, sum(terms.iter().map(|(e, n)| (e, *n))));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub inputs: Vec<String>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub passed: bool,
    pub witnesses: Vec<WitnessReport>,
}

pub fn axioms(m: &Multiplication, report: &DgaReport) -> Vec<AxiomReport> {
    let c = m.complex();
    let witnesses = |ws: &[Witness]| {
        ws.iter()
            .map(|w| WitnessReport {
                inputs: w.inputs.iter().map(|&g| c.name(g)).collect(),
                residual: w.residual.display(c),
            })
            .collect()
    };
    let mut out = vec![
        ("unit", &report.unit),
        ("leibniz", &report.leibniz),
        ("commutativity", &report.commutativity),
    ];
    if report.associativity_checked {
        out.push(("associativity", &report.associativity));
    }
    out.push(("multigraded", &report.multigraded));
    out.into_iter()
        .map(|(axiom, ws)| AxiomReport { axiom: axiom.into(), passed: ws.is_empty(), witnesses: witnesses(ws) })
        .collect()
}

/// Prints at most this many witnesses per axiom in text mode.
const SHOWN_WITNESSES: usize = 5;

fn axioms_text(axioms: &[AxiomReport]) -> String {
    let mut out = String::new();
    for a in axioms {
        let _ = writeln!(out, "{}: {}", a.axiom, verdict(a.passed));
        for w in a.witnesses.iter().take(SHOWN_WITNESSES) {
            let _ = writeln!(out, "  witness ({}): {}", w.inputs.join(", "), w.residual);
        }
        if a.witnesses.len() > SHOWN_WITNESSES {
            let _ = writeln!(out, "  ... {} more", a.witnesses.len() - SHOWN_WITNESSES);
        }
    }
    out
}

pub fn all_pass(axioms: &[AxiomReport]) -> bool {
    axioms.iter().all(|a| a.passed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferReport {
    pub taylor_basis: Vec<Basis>,
    /// Minimal basis element to Taylor basis element.
    pub inclusion: Vec<MapEntry>,
    /// Taylor basis element to minimal basis element.
    pub projection: Vec<MapEntry>,
    /// Taylor to Taylor, raising homological degree by one.
    pub homotopy: Vec<MapEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolveReport {
    pub complex: ComplexReport,
    pub resolution: bool,
    pub minimal: bool,
    pub transfer: Option<TransferReport>,
}

impl Report for ResolveReport {
    fn text(&self) -> String {
        let mut out = self.complex.text();
        let _ = writeln!(out, "resolution: {}\nminimal: {}", verdict(self.resolution), verdict(self.minimal));
        if let Some(t) = &self.transfer {
            let maps = [
                ("inclusion", &t.inclusion, &self.complex.basis, &t.taylor_basis),
                ("projection", &t.projection, &t.taylor_basis, &self.complex.basis),
                ("homotopy", &t.homotopy, &t.taylor_basis, &t.taylor_basis),
            ];
            for (label, entries, from, to) in maps {
                let _ = writeln!(out, "{label}:");
                let mut rows: BTreeMap<usize, Vec<&MapEntry>> = BTreeMap::new();
                for e in entries {
                    rows.entry(e.source).or_default().push(e);
                }
                for (s, es) in rows {
                    let _ = writeln!(out, "  {} -> {}", from[s].name, sum(es.into_iter().map(|e| (e, to[e.target].name.as_str()))));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaylorReport {
    pub complex: ComplexReport,
    pub products: Option<Vec<Product>>,
}

impl Report for TaylorReport {
    fn text(&self) -> String {
        let mut out = self.complex.text();
        if let Some(p) = &self.products {
            out.push_str("products:\n");
            out.push_str(&products_text(&self.complex.basis, p));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScarfReport {
    pub faces: Vec<String>,
    pub f_vector: Vec<u64>,
    pub strongly_generic: bool,
    pub resolution: bool,
    pub betti_totals: Vec<usize>,
}

impl Report for ScarfReport {
    fn text(&self) -> String {
        format!(
            "scarf faces: {}\nf-vector: {}\nstrongly generic: {}\nalgebraic scarf complex is a resolution: {}\ntotal betti numbers: {}\n",
            self.faces.join(" "),
            join(&self.f_vector),
            verdict(self.strongly_generic),
            verdict(self.resolution),
            join(&self.betti_totals)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LyubeznikReport {
    /// 1-indexed generator order.
    pub order: Vec<usize>,
    pub ranks: Vec<usize>,
    pub resolution: bool,
    pub minimal: bool,
    pub minimality_witness: Option<(String, String)>,
}

impl Report for LyubeznikReport {
    fn text(&self) -> String {
        let mut out = format!(
            "order: {}\nranks: {}\nresolution: {}\nminimal: {}\n",
            join(&self.order),
            join(&self.ranks),
            verdict(self.resolution),
            verdict(self.minimal)
        );
        if let Some((g, h)) = &self.minimality_witness {
            let _ = writeln!(out, "  witness: unit coefficient of {h} in d({g})");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicationReport {
    pub complex: ComplexReport,
    pub products: Vec<Product>,
    pub axioms: Vec<AxiomReport>,
    pub supportive: bool,
}

impl Report for MultiplicationReport {
    fn text(&self) -> String {
        let mut out = self.complex.text();
        out.push_str("products:\n");
        out.push_str(&products_text(&self.complex.basis, &self.products));
        out.push_str(&axioms_text(&self.axioms));
        let _ = writeln!(out, "supportive: {}", verdict(self.supportive));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ranks: Vec<usize>,
    pub axioms: Vec<AxiomReport>,
}

impl Report for VerifyReport {
    fn text(&self) -> String {
        format!("ranks: {}\n{}", join(&self.ranks), axioms_text(&self.axioms))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    pub label: String,
    pub params: Vec<String>,
    /// Basis triples with a nonzero associator.
    pub failing: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub seed: u64,
    pub dimension: usize,
    pub basis: Vec<Basis>,
    pub forced: Vec<Product>,
    pub free: Vec<(String, String)>,
    pub samples: Vec<SampleReport>,
}

impl Report for SolveReport {
    fn text(&self) -> String {
        let mut out = format!("solution space dimension: {}\nforced products:\n", self.dimension);
        out.push_str(&products_text(&self.basis, &self.forced));
        let free: Vec<String> = self.free.iter().map(|(g, h)| format!("{g} * {h}")).collect();
        let _ = writeln!(out, "free pairs: {}", if free.is_empty() { "none".into() } else { free.join(", ") });
        let _ = writeln!(out, "associativity scan (seed {}):", self.seed);
        for s in &self.samples {
            let status = if s.failing.is_empty() {
                "associative".to_string()
            } else {
                let shown: Vec<String> = s.failing.iter().take(3).map(|t| format!("({})", t.join(", "))).collect();
                format!("{} failing triples, e.g. {}", s.failing.len(), shown.join(" "))
            };
            let _ = writeln!(out, "  {} [{}]: {}", s.label, s.params.join(", "), status);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaleReport {
    pub shift: Vec<i64>,
    pub ideal: Vec<String>,
    pub ranks: Vec<usize>,
    pub resolution: bool,
    pub minimal: bool,
    pub axioms: Vec<AxiomReport>,
}

impl Report for ScaleReport {
    fn text(&self) -> String {
        format!(
            "shift: {}\nscaled ideal: {}\nranks: {}\nresolution: {}\nminimal: {}\n{}",
            mono(&self.shift),
            self.ideal.join(", "),
            join(&self.ranks),
            verdict(self.resolution),
            verdict(self.minimal),
            axioms_text(&self.axioms)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentReport {
    pub homotopy_verified: bool,
    pub basis: Vec<Basis>,
    pub products: Vec<Product>,
    pub axioms: Vec<AxiomReport>,
}

impl Report for LaurentReport {
    fn text(&self) -> String {
        let mut out = format!("contracting homotopy: {}\nproducts:\n", verdict(self.homotopy_verified));
        out.push_str(&products_text(&self.basis, &self.products));
        out.push_str(&axioms_text(&self.axioms));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportiveReport {
    pub supportive: bool,
    /// `(g, h, e)` with `e` in `g ∗ h` but `supp e ⊄ supp g ∪ supp h`.
    pub witness: Option<Vec<String>>,
}

impl Report for SupportiveReport {
    fn text(&self) -> String {
        let mut out = format!("supportive: {}\n", verdict(self.supportive));
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "  witness: {} * {} involves {}", w[0], w[1], w[2]);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelabelReport {
    pub isomorphic: bool,
    pub ranks: Vec<usize>,
    pub resolution: bool,
    pub minimal: bool,
    pub supportive: bool,
    pub axioms: Vec<AxiomReport>,
}

impl RelabelReport {
    pub fn passes(&self) -> bool {
        self.isomorphic && self.resolution && self.minimal && self.supportive && all_pass(&self.axioms)
    }
}

impl Report for RelabelReport {
    fn text(&self) -> String {
        if !self.isomorphic {
            return "lcm lattices are not isomorphic\n".into();
        }
        format!(
            "ranks: {}\nresolution of target: {}\nminimal: {}\nsupportive: {}\n{}",
            join(&self.ranks),
            verdict(self.resolution),
            verdict(self.minimal),
            verdict(self.supportive),
            axioms_text(&self.axioms)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVectorReport {
    pub vector: Vec<u64>,
    pub kruskal_katona: bool,
    /// Set by the cone check only.
    pub cone: Option<bool>,
    pub base: Option<Vec<u64>>,
}

impl Report for FVectorReport {
    fn text(&self) -> String {
        let v = join(&self.vector);
        match (self.cone, &self.base) {
            (Some(true), Some(b)) => format!("({v}) is a cone f-vector over ({})\n", join(b)),
            (Some(_), _) => format!("({v}) is not a cone f-vector\n"),
            (None, _) if self.kruskal_katona => format!("({v}) is the f-vector of a simplicial complex\n"),
            (None, _) => format!("({v}) is not the f-vector of a simplicial complex\n"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructReport {
    pub f_vector: Vec<u64>,
    /// 1-indexed cone point.
    pub apex: usize,
    pub num_vars: usize,
    pub generators: Vec<String>,
}

impl Report for ConstructReport {
    fn text(&self) -> String {
        let mut out = format!("# cone with apex {} and f-vector ({})\nvars: {}\n", self.apex, join(&self.f_vector), self.num_vars);
        for g in &self.generators {
            let _ = writeln!(out, "{g}");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegressionReport {
    pub name: String,
    pub alias: String,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExamplesReport {
    pub regressions: Vec<RegressionReport>,
}

impl ExamplesReport {
    pub fn passes(&self) -> bool {
        self.regressions.iter().all(|r| r.passed)
    }
}

impl Report for ExamplesReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for r in &self.regressions {
            let _ = writeln!(out, "{} ({}): {}", r.alias, r.name, verdict(r.passed));
            for c in &r.checks {
                let _ = writeln!(out, "  {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
            }
        }
        out
    }
}

pub fn basis(c: &FreeComplex) -> Vec<Basis> {
    (0..c.len())
        .map(|id| Basis { id, name: c.name(id), hdeg: c.hdeg(id), degree: c.mdeg(id).exponents().to_vec() })
        .collect()
}

/// Entries of a map given column-wise by `rows`, from `src` to `dst`.
pub fn map_entries(src: &FreeComplex, dst: &FreeComplex, rows: &[SparseVec]) -> Vec<MapEntry> {
    let mut out = Vec::new();
    for (s, row) in rows.iter().enumerate() {
        for (&t, c) in row {
            out.push(MapEntry {
                source: s,
                target: t,
                scalar: scalar::format(c),
                exponent: src.mdeg(s).sub(dst.mdeg(t)).into_exponents(),
            });
        }
    }
    out
}

fn sum<'a>(terms: impl Iterator<Item = (&'a MapEntry, &'a str)>) -> String {
    let mut out = String::new();
    for (k, (e, name)) in terms.enumerate() {
        let (negative, abs) = match e.scalar.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, e.scalar.as_str()),
        };
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let m = mono(&e.exponent);
        let mut factors: Vec<&str> = Vec::new();
        if abs != "1" {
            factors.push(abs);
        }
        if m != "1" {
            factors.push(&m);
        }
        if factors.is_empty() {
            out.push_str(name);
        } else if name == "1" {
            out.push_str(&factors.join("*"));
        } else {
            let _ = write!(out, "{} {}", factors.join("*"), name);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn mono(exponent: &[i64]) -> String {
    Multidegree::new(exponent.to_vec()).to_string()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn verdict(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_render_like_elements() {
        let e = |s: &str, x: Vec<i64>| MapEntry { source: 0, target: 0, scalar: s.into(), exponent: x };
        let a = e("-1", vec![0, 1]);
        let b = e("1/2", vec![0, 0]);
        let c = e("1", vec![1, 0]);
        assert_eq!(sum([(&a, "g_a"), (&b, "g_b"), (&c, "1")].into_iter()), "-x2 g_a + 1/2 g_b + x1");
        assert_eq!(sum(std::iter::empty()), "0");
    }
}
