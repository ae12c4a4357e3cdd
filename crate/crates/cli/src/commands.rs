//! Command implementations. Each returns the rendered report and whether the
//! computation succeeded or the checked property holds.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dgares_core::comb::{cone_deconvolve, ideal_from_cone_complex, is_cone_fvector, kruskal_katona_check};
use dgares_core::complexes::{
    algebraic_scarf, betti_table, is_minimal, is_resolution, lyubeznik, minimal_resolution, minimality_witness,
    scarf_complex, scarf_faces, taylor_complex, FreeComplex, TAYLOR_CAP,
};
use dgares_core::dga::{
    associativity_scan, check_axioms, check_dga_axioms, forced_products, laurent_dga, leibniz_solution_space, relabel,
    scaled_dga, supportive_witness, taylor_multiplication, transfer_multiplication, Multiplication,
};
use dgares_core::monomial::{lcm_lattice, LatticeIso, MonomialIdeal};
use dgares_core::{regression, scalar};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::input::{self, ParseError};
use crate::report::*;

#[derive(Debug, Parser)]
#[command(name = "dgares", version, about = "Free resolutions of monomial ideals and multiplications on them")]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the random points of the associativity scan.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Reject ideals with more generators than this.
    #[arg(long, global = true, default_value_t = TAYLOR_CAP)]
    pub max_gens: usize,
    /// Worker threads for `examples run all`.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multigraded Betti numbers.
    Betti(IdealArg),
    /// Minimal free resolution obtained from the Taylor complex.
    Resolve {
        #[command(flatten)]
        ideal: IdealArg,
        /// Also print the comparison maps to the Taylor complex.
        #[arg(long)]
        show_transfer: bool,
    },
    /// The Taylor complex.
    Taylor {
        #[command(flatten)]
        ideal: IdealArg,
        /// Also print the Taylor multiplication.
        #[arg(long)]
        with_multiplication: bool,
    },
    /// Scarf faces and the algebraic Scarf complex.
    Scarf(IdealArg),
    /// The Lyubeznik resolution for a generator order.
    Lyubeznik {
        #[command(flatten)]
        ideal: IdealArg,
        /// 1-indexed generator order, e.g. `3,1,2`.
        #[arg(long)]
        order: String,
    },
    /// Multiplications on the minimal resolution.
    Dga {
        #[arg(value_enum)]
        action: DgaAction,
        #[command(flatten)]
        ideal: IdealArg,
        /// Random points sampled by `solve`.
        #[arg(long, default_value_t = 4)]
        samples: usize,
    },
    /// Moves the multiplication on the minimal resolution to an ideal with an
    /// isomorphic lcm lattice.
    Relabel {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long)]
        target: PathBuf,
    },
    /// f-vector checks.
    Fvector {
        #[arg(value_enum)]
        action: FVectorAction,
        /// Comma-separated face counts starting with the empty face.
        #[arg(long)]
        vector: String,
    },
    /// Ideals built from combinatorial data.
    Construct {
        #[arg(value_enum)]
        action: ConstructAction,
        /// Complex file: one face per line.
        file: PathBuf,
    },
    /// Reproducible end-to-end computations on fixed ideals.
    Examples {
        #[arg(value_enum)]
        action: ExamplesAction,
        /// An example id, a regression name or `all`.
        name: String,
    },
}

#[derive(Debug, Args)]
pub struct IdealArg {
    /// Ideal file: one generator per line.
    pub file: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DgaAction {
    Transfer,
    Solve,
    Verify,
    Scale,
    Laurent,
    Supportive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FVectorAction {
    Check,
    Cone,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConstructAction {
    FromComplex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ExamplesAction {
    Run,
}

/// Example ids accepted by `examples run`, with the regression each runs.
pub const EXAMPLE_ALIASES: [(&str, &str); 7] = [
    ("3.2", "nonunique-products"),
    ("3.3", "modified-product-table"),
    ("3.8", "obstruction-certificate"),
    ("4.3", "hexagon-betti"),
    ("5.1", "strongly-generic-obstruction"),
    ("6.8", "betti-poset-construct"),
    ("thm2.1", "scaling"),
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] dgares_core::Error),
}

impl CliError {
    /// 2 for bad input, 1 when a computation fails a check.
    pub fn exit_code(&self) -> u8 {
        use dgares_core::Error as E;
        match self {
            CliError::Core(E::Verification(_) | E::Inconsistent(_) | E::NotResolution(_)) => 1,
            _ => 2,
        }
    }
}

pub struct Outcome {
    pub ok: bool,
    pub text: String,
    pub json: String,
}

impl Outcome {
    fn new<R: Report>(report: &R, ok: bool) -> Self {
        Self { ok, text: report.text(), json: to_json(report) }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let load = |arg: &IdealArg| load_ideal(&arg.file, cli.max_gens);
    match &cli.command {
        Command::Betti(arg) => betti(&load(arg)?),
        Command::Resolve { ideal, show_transfer } => resolve(&load(ideal)?, *show_transfer),
        Command::Taylor { ideal, with_multiplication } => taylor(&load(ideal)?, *with_multiplication),
        Command::Scarf(arg) => scarf(&load(arg)?),
        Command::Lyubeznik { ideal, order } => {
            let ideal = load(ideal)?;
            let order = input::parse_order(order, ideal.num_generators())
                .map_err(|source| CliError::Parse { path: "--order".into(), source })?;
            lyubeznik_cmd(&ideal, &order)
        }
        Command::Dga { action, ideal, samples } => {
            let ideal = load(ideal)?;
            match action {
                DgaAction::Transfer => dga_transfer(&ideal),
                DgaAction::Solve => dga_solve(&ideal, *samples, cli.seed),
                DgaAction::Verify => dga_verify(&ideal),
                DgaAction::Scale => dga_scale(&ideal),
                DgaAction::Laurent => dga_laurent(&ideal),
                DgaAction::Supportive => dga_supportive(&ideal),
            }
        }
        Command::Relabel { ideal, target } => relabel_cmd(&load(ideal)?, &load_ideal(target, cli.max_gens)?),
        Command::Fvector { action, vector } => {
            let f = input::parse_fvector(vector).map_err(|source| CliError::Parse { path: "--vector".into(), source })?;
            Ok(fvector(&f.0, matches!(action, FVectorAction::Cone)))
        }
        Command::Construct { action: ConstructAction::FromComplex, file } => construct(file, cli.max_gens),
        Command::Examples { action: ExamplesAction::Run, name } => examples(name, cli.jobs),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn load_ideal(path: &Path, max_gens: usize) -> Result<MonomialIdeal, CliError> {
    let ideal = input::parse_ideal(&read(path)?)
        .map_err(|source| CliError::Parse { path: path.display().to_string(), source })?;
    if ideal.num_generators() > max_gens {
        return Err(CliError::Input(format!(
            "{}: {} generators exceed --max-gens {max_gens}",
            path.display(),
            ideal.num_generators()
        )));
    }
    Ok(ideal)
}

/// The multiplication on the minimal resolution transferred from the Taylor one.
fn transferred(ideal: &MonomialIdeal) -> Result<Multiplication, CliError> {
    let r = minimal_resolution(ideal)?;
    let mt = taylor_multiplication(Arc::new(r.taylor.clone()))?;
    Ok(transfer_multiplication(&mt, &r.transfer, Arc::new(r.minimal))?)
}

fn betti(ideal: &MonomialIdeal) -> Result<Outcome, CliError> {
    let table = betti_table(ideal)?;
    let report = BettiReport {
        num_vars: ideal.num_vars(),
        totals: table.totals(),
        entries: table
            .entries()
            .map(|(i, a, rank)| BettiEntry { i, degree: a.exponents().to_vec(), rank })
            .collect(),
    };
    Ok(Outcome::new(&report, true))
}

fn resolve(ideal: &MonomialIdeal, show_transfer: bool) -> Result<Outcome, CliError> {
    let r = minimal_resolution(ideal)?;
    let transfer = show_transfer.then(|| TransferReport {
        taylor_basis: basis(&r.taylor),
        inclusion: map_entries(&r.minimal, &r.taylor, &r.transfer.inclusion),
        projection: map_entries(&r.taylor, &r.minimal, &r.transfer.projection),
        homotopy: map_entries(&r.taylor, &r.taylor, &r.transfer.homotopy),
    });
    let report = ResolveReport {
        complex: ComplexReport::new(&r.minimal),
        resolution: is_resolution(&r.minimal, ideal),
        minimal: is_minimal(&r.minimal),
        transfer,
    };
    let ok = report.resolution && report.minimal;
    Ok(Outcome::new(&report, ok))
}

fn taylor(ideal: &MonomialIdeal, with_multiplication: bool) -> Result<Outcome, CliError> {
    let t = Arc::new(taylor_complex(ideal)?);
    let products = if with_multiplication { Some(products(&taylor_multiplication(Arc::clone(&t))?)) } else { None };
    Ok(Outcome::new(&TaylorReport { complex: ComplexReport::new(&t), products }, true))
}

fn scarf(ideal: &MonomialIdeal) -> Result<Outcome, CliError> {
    let faces = scarf_faces(ideal)?.into_iter().map(|w| w.to_string()).collect();
    let report = ScarfReport {
        faces,
        f_vector: scarf_complex(ideal)?.f_vector().0,
        strongly_generic: ideal.is_strongly_generic(),
        resolution: is_resolution(&algebraic_scarf(ideal)?, ideal),
        betti_totals: betti_table(ideal)?.totals(),
    };
    Ok(Outcome::new(&report, true))
}

fn lyubeznik_cmd(ideal: &MonomialIdeal, order: &[usize]) -> Result<Outcome, CliError> {
    let c = lyubeznik(ideal, order)?;
    let report = LyubeznikReport {
        order: order.iter().map(|&i| i + 1).collect(),
        ranks: c.ranks(),
        resolution: is_resolution(&c, ideal),
        minimal: is_minimal(&c),
        minimality_witness: minimality_witness(&c).map(|(g, h)| (c.name(g), c.name(h))),
    };
    let ok = report.resolution;
    Ok(Outcome::new(&report, ok))
}

fn multiplication_report(m: &Multiplication, associativity: bool) -> MultiplicationReport {
    let report = check_axioms(m, associativity);
    MultiplicationReport {
        complex: ComplexReport::new(m.complex()),
        products: products(m),
        axioms: axioms(m, &report),
        supportive: supportive_witness(m).is_none(),
    }
}

fn dga_transfer(ideal: &MonomialIdeal) -> Result<Outcome, CliError> {
    let report = multiplication_report(&transferred(ideal)?, true);
    // Associativity is reported but not required of a transferred product.
    let ok = report.axioms.iter().filter(|a| a.axiom != "associativity").all(|a| a.passed);
    Ok(Outcome::new(&report, ok))
}

fn dga_verify(ideal: &MonomialIdeal) -> Result<Outcome, CliError> {
    let m = transferred(ideal)?;
    let report = VerifyReport { ranks: m.complex().ranks(), axioms: axioms(&m, &check_dga_axioms(&m)) };
    let ok = all_pass(&report.axioms);
    Ok(Outcome::new(&report, ok))
}

fn dga_solve(ideal: &MonomialIdeal, samples: usize, seed: u64) -> Result<Outcome, CliError> {
    let minimal = Arc::new(minimal_resolution(ideal)?.minimal);
    let space = leibniz_solution_space(Arc::clone(&minimal))?;
    let forced = forced_products(&space);
    let scan = associativity_scan(&space, samples, seed)?;
    let c: &FreeComplex = &minimal;
    let report = SolveReport {
        seed,
        dimension: space.dim(),
        basis: basis(c),
        forced: table_products(c, &forced.forced),
        free: forced.free.iter().map(|&(g, h)| (c.name(g), c.name(h))).collect(),
        samples: scan
            .samples
            .iter()
            .map(|s| SampleReport {
                label: s.label.clone(),
                params: s.params.iter().map(scalar::format).collect(),
                failing: s.failing.iter().map(|&(a, b, d)| vec![c.name(a), c.name(b), c.name(d)]).collect(),
            })
            .collect(),
    };
    Ok(Outcome::new(&report, true))
}

fn dga_scale(ideal: &MonomialIdeal) -> Result<Outcome, CliError> {
    let s = scaled_dga(ideal)?;
    let report = ScaleReport {
        shift: s.shift.exponents().to_vec(),
        ideal: s.ideal.generators().iter().map(ToString::to_string).collect(),
        ranks: s.complex.ranks(),
        resolution: is_resolution(&s.complex, &s.ideal),
        minimal: is_minimal(&s.complex),
        axioms: axioms(&s.multiplication, &check_dga_axioms(&s.multiplication)),
    };
    let ok = report.resolution && report.minimal && all_pass(&report.axioms);
    Ok(Outcome::new(&report, ok))
}

fn dga_laurent(ideal: &MonomialIdeal) -> Result<Outcome, CliError> {
    let minimal = Arc::new(minimal_resolution(ideal)?.minimal);
    let l = laurent_dga(Arc::clone(&minimal))?;
    let m = &l.multiplication;
    let report = LaurentReport {
        homotopy_verified: l.homotopy.verify(&minimal).is_ok(),
        basis: basis(&minimal),
        products: products(m),
        axioms: axioms(m, &check_dga_axioms(m)),
    };
    let ok = report.homotopy_verified && all_pass(&report.axioms);
    Ok(Outcome::new(&report, ok))
}

fn dga_supportive(ideal: &MonomialIdeal) -> Result<Outcome, CliError> {
    let m = transferred(ideal)?;
    let c = m.complex();
    let witness = supportive_witness(&m).map(|(g, h, e)| vec![c.name(g), c.name(h), c.name(e)]);
    let report = SupportiveReport { supportive: witness.is_none(), witness };
    let ok = report.supportive;
    Ok(Outcome::new(&report, ok))
}

fn relabel_cmd(source: &MonomialIdeal, target: &MonomialIdeal) -> Result<Outcome, CliError> {
    let failed = |isomorphic: bool, supportive: bool| RelabelReport {
        isomorphic,
        ranks: Vec::new(),
        resolution: false,
        minimal: false,
        supportive,
        axioms: Vec::new(),
    };
    let Some(nu) = LatticeIso::find(&lcm_lattice(source), &lcm_lattice(target))? else {
        return Ok(Outcome::new(&failed(false, false), false));
    };
    let m = transferred(source)?;
    if let Some((g, h, e)) = supportive_witness(&m) {
        let c = m.complex();
        let mut out = Outcome::new(&failed(true, false), false);
        out.text = format!(
            "the multiplication on the source is not supportive\n  witness: {} * {} involves {}\n",
            c.name(g),
            c.name(h),
            c.name(e)
        );
        return Ok(out);
    }
    let moved = relabel(&m, source, &nu, target)?;
    let c = moved.complex();
    let report = RelabelReport {
        isomorphic: true,
        ranks: c.ranks(),
        resolution: is_resolution(c, target),
        minimal: is_minimal(c),
        supportive: supportive_witness(&moved).is_none(),
        axioms: axioms(&moved, &check_dga_axioms(&moved)),
    };
    let ok = report.passes();
    Ok(Outcome::new(&report, ok))
}

fn fvector(v: &[u64], cone: bool) -> Outcome {
    let f = dgares_core::comb::FVector(v.to_vec());
    let kk = kruskal_katona_check(&f);
    let report = if cone {
        let is_cone = is_cone_fvector(&f);
        FVectorReport {
            vector: v.to_vec(),
            kruskal_katona: kk,
            cone: Some(is_cone),
            base: if is_cone { cone_deconvolve(&f).map(|b| b.0) } else { None },
        }
    } else {
        FVectorReport { vector: v.to_vec(), kruskal_katona: kk, cone: None, base: None }
    };
    let ok = report.cone.unwrap_or(kk);
    Outcome::new(&report, ok)
}

fn construct(path: &Path, max_gens: usize) -> Result<Outcome, CliError> {
    let delta = input::parse_complex(&read(path)?)
        .map_err(|source| CliError::Parse { path: path.display().to_string(), source })?;
    let Some(apex) = delta.is_cone() else {
        return Err(CliError::Input(format!("{}: the complex is not a cone", path.display())));
    };
    if delta.num_vertices() > max_gens {
        return Err(CliError::Input(format!(
            "{}: {} vertices exceed --max-gens {max_gens}",
            path.display(),
            delta.num_vertices()
        )));
    }
    let ideal = ideal_from_cone_complex(&delta)?;
    let report = ConstructReport {
        f_vector: delta.f_vector().0,
        apex: apex + 1,
        num_vars: ideal.num_vars(),
        generators: ideal.generators().iter().map(ToString::to_string).collect(),
    };
    Ok(Outcome::new(&report, true))
}

fn examples(name: &str, jobs: usize) -> Result<Outcome, CliError> {
    let selected: Vec<(&str, &str)> = if name == "all" {
        EXAMPLE_ALIASES.to_vec()
    } else {
        let hit = EXAMPLE_ALIASES.iter().find(|(alias, full)| *alias == name || *full == name).copied();
        vec![hit.ok_or_else(|| {
            let known: Vec<&str> = EXAMPLE_ALIASES.iter().map(|(a, _)| *a).collect();
            CliError::Input(format!("unknown example '{name}'; known: {}, all", known.join(", ")))
        })?]
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Input(format!("cannot start {jobs} workers: {e}")))?;
    let regressions = pool.install(|| {
        selected
            .par_iter()
            .map(|&(alias, full)| {
                let r = regression::run(full).expect("aliases name known regressions");
                RegressionReport {
                    name: r.name.clone(),
                    alias: alias.into(),
                    passed: r.passes(),
                    checks: r
                        .checks
                        .into_iter()
                        .map(|c| CheckReport { name: c.name, passed: c.passed, detail: c.detail })
                        .collect(),
                }
            })
            .collect()
    });
    let report = ExamplesReport { regressions };
    let ok = report.passes();
    Ok(Outcome::new(&report, ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases_name_known_regressions() {
        for (_, full) in EXAMPLE_ALIASES {
            assert!(regression::REGRESSIONS.iter().any(|(k, _)| *k == full));
        }
        assert_eq!(EXAMPLE_ALIASES.len(), regression::REGRESSIONS.len());
    }

    #[test]
    fn fvector_outcomes() {
        assert!(!fvector(&[1, 6, 9, 6, 2], true).ok);
        assert!(!fvector(&[1, 6, 9, 6, 2], false).ok);
        assert!(fvector(&[1, 4, 5, 2], false).ok);
        let out = fvector(&[1, 4, 5, 2], true);
        assert!(out.ok);
        assert!(out.text.contains("over (1 3 2)"));
    }
}
