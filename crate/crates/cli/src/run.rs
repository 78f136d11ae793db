//! Command-line surface: argument types and the implementation of every
//! subcommand.
//!
//! Exit codes are part of the contract: 0 means the computation succeeded
//! and every check passed, 1 an input or usage error, 2 a failed
//! verification, and 3 a formality question left undecided.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sullivan::cdga::{
    bigraded_model, cohomology, cohomology_algebra, formality_witness_linear, homotopy_ranks,
    hurewicz_ranks, massey_scan, minimal_model, triple_massey, verify_quasi_iso, Cdga, FiniteCdga,
    Limits, MasseyResult, MasseyWitness, QuasiIsoReport, RankTable, SullivanAlgebra,
};
use sullivan::gca::{HomDegree, Polynomial, Rational};
use sullivan::mapmodel::{
    basis_split, finite_model_from_minimal, haefliger_model, homotopy_formula,
    hurewicz_vanishing_check, theorem2_quotient, thom_splitting_check, HaefligerModel,
    VanishingOutcome,
};
use sullivan::{Error, Violation};

use crate::input::{self, Algebra, SpaceDescription};
use crate::report::{ranks_json, ranks_section, CommandReport, InputDigest};

/// All checks passed or the computation simply succeeded.
pub const EXIT_PASS: i32 = 0;
/// Unreadable input, syntax error, or unusable flags.
pub const EXIT_INPUT: i32 = 1;
/// A verification failed; the report names the failing check.
pub const EXIT_FAIL: i32 = 2;
/// Formality could not be decided either way.
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sullivan",
    version,
    about = "Exact rational-homotopy computations on graded algebra descriptions",
    after_help = "Exit codes: 0 all checks passed, 1 input or usage error, \
                  2 a verification failed, 3 undecided."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Monomial budget for each computation stage.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every algebra law on a description; report the first violation.
    Validate {
        /// Description file.
        file: PathBuf,
    },
    /// Cohomology ranks and representative cocycles through a cutoff.
    Cohomology {
        file: PathBuf,
        /// Largest degree to compute.
        #[arg(long)]
        cutoff: u32,
    },
    /// Minimal free model of a finite-basis description.
    MinimalModel {
        file: PathBuf,
        #[arg(long)]
        cutoff: u32,
    },
    /// Weight-graded free model of a finite-basis algebra with zero
    /// differential.
    BigradedModel {
        file: PathBuf,
        #[arg(long)]
        cutoff: u32,
    },
    /// Rational homotopy ranks of a space.
    Homotopy {
        file: PathBuf,
        #[arg(long)]
        cutoff: u32,
    },
    /// Ranks of the image of homotopy in cohomology.
    Hurewicz {
        file: PathBuf,
        #[arg(long)]
        cutoff: u32,
    },
    /// Free model of the space of maps from SOURCE to TARGET.
    MapModel {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        cutoff: u32,
    },
    /// Homotopy ranks of a mapping space, checked against the rank formula.
    MapHomotopy {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        cutoff: u32,
    },
    /// Compare the model of maps into a high-degree sphere with the
    /// predicted product of Eilenberg-MacLane spaces.
    ThomCheck {
        source: PathBuf,
        /// Degree of the sphere mapped into; must exceed the source's top
        /// degree.
        #[arg(long)]
        r: u32,
        #[arg(long)]
        cutoff: u32,
    },
    /// Vanishing and quotient-differential checks for the connectivity
    /// bound on mapping spaces.
    Theorem2Check {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        cutoff: u32,
    },
    /// Decide formality of a space (one file) or a mapping space (two
    /// files): a direct witness, an obstruction, or undecided.
    Formality {
        /// One space, or a mapping-space pair SOURCE TARGET.
        #[arg(required = true, num_args = 1..=2, value_name = "FILE")]
        files: Vec<PathBuf>,
        #[arg(long)]
        cutoff: u32,
    },
    /// Triple products: scan for a nonzero one, or evaluate ⟨x,y,z⟩ when
    /// all three cocycles are given.
    Massey {
        /// One space, or a mapping-space pair SOURCE TARGET.
        #[arg(required = true, num_args = 1..=2, value_name = "FILE")]
        files: Vec<PathBuf>,
        #[arg(long)]
        cutoff: u32,
        /// First cocycle, e.g. "z1" or "2*v^2 - w".
        #[arg(long)]
        x: Option<String>,
        /// Second cocycle.
        #[arg(long)]
        y: Option<String>,
        /// Third cocycle.
        #[arg(long)]
        z: Option<String>,
    },
}

/// Run a parsed command line to completion and return the process exit code.
pub fn execute(cli: Cli) -> i32 {
    let limits = Limits {
        max_monomials: cli.budget.unwrap_or(Limits::default().max_monomials),
    };
    match dispatch(&cli.command, &limits) {
        Ok((report, code)) => {
            match cli.format {
                Format::Table => print!("{}", report.to_table()),
                Format::Json => print!("{}", report.to_json()),
            }
            code
        }
        Err(e) => {
            eprintln!("error: {:#}", e);
            EXIT_INPUT
        }
    }
}

fn dispatch(command: &Command, limits: &Limits) -> Result<(CommandReport, i32)> {
    match command {
        Command::Validate { file } => cmd_validate(file),
        Command::Cohomology { file, cutoff } => cmd_cohomology(file, *cutoff, limits),
        Command::MinimalModel { file, cutoff } => cmd_minimal_model(file, *cutoff, limits),
        Command::BigradedModel { file, cutoff } => cmd_bigraded_model(file, *cutoff, limits),
        Command::Homotopy { file, cutoff } => cmd_homotopy(file, *cutoff, limits),
        Command::Hurewicz { file, cutoff } => cmd_hurewicz(file, *cutoff, limits),
        Command::MapModel {
            source,
            target,
            cutoff,
        } => cmd_map_model(source, target, *cutoff, limits),
        Command::MapHomotopy {
            source,
            target,
            cutoff,
        } => cmd_map_homotopy(source, target, *cutoff, limits),
        Command::ThomCheck { source, r, cutoff } => cmd_thom_check(source, *r, *cutoff, limits),
        Command::Theorem2Check {
            source,
            target,
            cutoff,
        } => cmd_theorem2_check(source, target, *cutoff, limits),
        Command::Formality { files, cutoff } => cmd_formality(files, *cutoff, limits),
        Command::Massey {
            files,
            cutoff,
            x,
            y,
            z,
        } => cmd_massey(files, *cutoff, x.as_deref(), y.as_deref(), z.as_deref(), limits),
    }
}

struct Loaded {
    desc: SpaceDescription,
    digest: InputDigest,
}

fn load(path: &Path) -> Result<Loaded> {
    let bytes =
        std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| anyhow!("{} is not valid UTF-8", path.display()))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "space".to_string());
    let desc = input::parse(&name, &text).map_err(|e| anyhow!("{}: {}", path.display(), e))?;
    Ok(Loaded {
        desc,
        digest: InputDigest::new(&path.to_string_lossy(), &bytes),
    })
}

fn validate_algebra(desc: &SpaceDescription) -> Result<(), Error> {
    match &desc.algebra {
        Algebra::Free(m) => m.validate(),
        Algebra::Finite(a) => a.validate(),
    }
}

fn cmd_validate(file: &Path) -> Result<(CommandReport, i32)> {
    let bytes =
        std::fs::read(file).with_context(|| format!("cannot read {}", file.display()))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| anyhow!("{} is not valid UTF-8", file.display()))?;
    let name = file
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "space".to_string());
    let digest = InputDigest::new(&file.to_string_lossy(), &bytes);
    let mut report = CommandReport::new("validate", vec![digest], None);
    match input::parse(&name, &text) {
        Err(e) if e.semantic => {
            report.check("construction", false, e.to_string());
            report.result = json!({"valid": false});
            Ok((report, EXIT_FAIL))
        }
        Err(e) => Err(anyhow!("{}: {}", file.display(), e)),
        Ok(desc) => {
            report.section(format!("canonical form\n{}", desc.print()));
            match validate_algebra(&desc) {
                Ok(()) => {
                    report.check("laws", true, "all algebra laws hold");
                    report.result = json!({"valid": true});
                    Ok((report, EXIT_PASS))
                }
                Err(Error::Invalid(Violation { law, witness })) => {
                    report.check("laws", false, format!("{}: {}", law, witness));
                    report.result = json!({"valid": false});
                    Ok((report, EXIT_FAIL))
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn cohomology_data<T: Cdga>(
    alg: &T,
    cutoff: u32,
    limits: &Limits,
) -> Result<(RankTable, Vec<Vec<String>>), Error> {
    let h = cohomology(alg, cutoff, limits)?;
    let reps = h
        .reps
        .iter()
        .map(|per_degree| per_degree.iter().map(|e| alg.display_elem(e)).collect())
        .collect();
    Ok((h.ranks, reps))
}

fn cmd_cohomology(file: &Path, cutoff: u32, limits: &Limits) -> Result<(CommandReport, i32)> {
    let loaded = load(file)?;
    let (ranks, reps) = match &loaded.desc.algebra {
        Algebra::Free(m) => cohomology_data(&**m, cutoff, limits)?,
        Algebra::Finite(a) => cohomology_data(&**a, cutoff, limits)?,
    };
    let mut report = CommandReport::new("cohomology", vec![loaded.digest], Some(cutoff));
    report.section(ranks_section("cohomology ranks", &ranks));
    let mut lines = vec!["representatives".to_string()];
    for (q, per_degree) in reps.iter().enumerate() {
        if !per_degree.is_empty() {
            lines.push(format!("  H^{}: {}", q, per_degree.join(", ")));
        }
    }
    report.section(lines.join("\n"));
    report.result = json!({"ranks": ranks_json(&ranks), "representatives": reps});
    Ok((report, EXIT_PASS))
}

fn require_finite(desc: &SpaceDescription, command: &str) -> Result<Arc<FiniteCdga>> {
    match &desc.algebra {
        Algebra::Finite(a) => Ok(a.clone()),
        Algebra::Free(_) => bail!(
            "{}: {} expects a finite-basis description (basis/mul directives)",
            desc.name,
            command
        ),
    }
}

/// Generators and differentials of a free model, as JSON.
fn model_json(m: &SullivanAlgebra) -> Value {
    let generators: Vec<Value> = m
        .gens()
        .iter()
        .map(|g| json!({"name": g.name(), "degree": g.degree()}))
        .collect();
    let differentials: Vec<Value> = m
        .gens()
        .iter()
        .filter(|g| !m.diff().value(g).is_zero())
        .map(|g| json!({"generator": g.name(), "value": m.diff().value(g).to_string()}))
        .collect();
    json!({
        "generators": generators,
        "differentials": differentials,
        "complete_through": m.complete_through(),
    })
}

/// Generators and differentials of a free model, as description text.
fn model_section(m: &Arc<SullivanAlgebra>) -> String {
    let desc = SpaceDescription {
        name: String::new(),
        algebra: Algebra::Free(m.clone()),
    };
    format!("model\n{}", desc.print())
}

fn quasi_detail(rep: &QuasiIsoReport) -> String {
    match rep {
        QuasiIsoReport::Pass => "chain map and isomorphism on cohomology".to_string(),
        QuasiIsoReport::ChainMapFailure {
            generator,
            f_of_dg,
            d_of_fg,
        } => format!(
            "chain map fails on {}: f(dg) = {} but d(fg) = {}",
            generator, f_of_dg, d_of_fg
        ),
        QuasiIsoReport::CohomologyFailure { degree, detail } => {
            format!("cohomology fails in degree {}: {}", degree, detail)
        }
    }
}

fn cmd_minimal_model(file: &Path, cutoff: u32, limits: &Limits) -> Result<(CommandReport, i32)> {
    let loaded = load(file)?;
    let a = require_finite(&loaded.desc, "minimal-model")?;
    let (model, quotient) = minimal_model(&a, cutoff, limits)?;
    let rep = verify_quasi_iso(&quotient, cutoff, limits)?;
    let mut report = CommandReport::new("minimal-model", vec![loaded.digest], Some(cutoff));
    report.section(model_section(&model));
    report.check("quasi_isomorphism", rep.is_pass(), quasi_detail(&rep));
    report.result = model_json(&model);
    let code = if rep.is_pass() { EXIT_PASS } else { EXIT_FAIL };
    Ok((report, code))
}

fn cmd_bigraded_model(file: &Path, cutoff: u32, limits: &Limits) -> Result<(CommandReport, i32)> {
    let loaded = load(file)?;
    let a = require_finite(&loaded.desc, "bigraded-model")?;
    let model = bigraded_model(&a, cutoff, limits)?;
    let mut report = CommandReport::new("bigraded-model", vec![loaded.digest], Some(cutoff));
    let generators: Vec<Value> = model
        .gens()
        .iter()
        .map(|g| json!({"name": g.name(), "degree": g.degree(), "weight": g.lower()}))
        .collect();
    let differentials: Vec<Value> = model
        .gens()
        .iter()
        .filter(|g| !model.diff().value(g).is_zero())
        .map(|g| json!({"generator": g.name(), "value": model.diff().value(g).to_string()}))
        .collect();
    report.result = json!({
        "generators": generators,
        "differentials": differentials,
        "complete_through": model.complete_through(),
    });
    let mut lines = vec!["model".to_string()];
    for g in model.gens().iter() {
        lines.push(format!(
            "  gen {} : {}  (weight {})",
            g.name(),
            g.degree(),
            g.lower().unwrap_or(0)
        ));
    }
    for g in model.gens().iter() {
        let v = model.diff().value(g);
        if !v.is_zero() {
            lines.push(format!("  d {} = {}", g.name(), v));
        }
    }
    report.section(lines.join("\n"));
    let mut all_pure = true;
    for p in 1..=2u32 {
        let t = sullivan::cdga::weight_cohomology_ranks(&model, p, cutoff, limits)?;
        let pure = t.ranks().iter().all(|&r| r == 0);
        all_pure &= pure;
        report.check(
            &format!("weight_{}_acyclic", p),
            pure,
            if pure {
                format!("weight-{} cohomology vanishes through degree {}", p, cutoff)
            } else {
                format!("weight-{} cohomology is nonzero", p)
            },
        );
    }
    let model_h = cohomology(&*model, cutoff, limits)?.ranks;
    let input_h = cohomology(&*a, cutoff, limits)?.ranks;
    let matches = model_h == input_h;
    report.check(
        "cohomology_match",
        matches,
        if matches {
            "the model's cohomology equals the input algebra".to_string()
        } else {
            "the model's cohomology differs from the input algebra".to_string()
        },
    );
    let code = if all_pure && matches { EXIT_PASS } else { EXIT_FAIL };
    Ok((report, code))
}

/// A free model for any description: free ones directly, finite-basis ones
/// through their minimal model computed through `cutoff`.
fn as_model(
    desc: &SpaceDescription,
    cutoff: u32,
    limits: &Limits,
) -> Result<Arc<SullivanAlgebra>> {
    match &desc.algebra {
        Algebra::Free(m) => Ok(m.clone()),
        Algebra::Finite(a) => Ok(minimal_model(a, cutoff, limits)?.0),
    }
}

fn cmd_homotopy(file: &Path, cutoff: u32, limits: &Limits) -> Result<(CommandReport, i32)> {
    let loaded = load(file)?;
    let model = as_model(&loaded.desc, cutoff, limits)?;
    let ranks = homotopy_ranks(&model, cutoff)?;
    let mut report = CommandReport::new("homotopy", vec![loaded.digest], Some(cutoff));
    report.section(ranks_section("homotopy ranks", &ranks));
    report.result = json!({"ranks": ranks_json(&ranks)});
    Ok((report, EXIT_PASS))
}

fn cmd_hurewicz(file: &Path, cutoff: u32, limits: &Limits) -> Result<(CommandReport, i32)> {
    let loaded = load(file)?;
    let model = as_model(&loaded.desc, cutoff, limits)?;
    let ranks = hurewicz_ranks(&model, cutoff, limits)?;
    let mut report = CommandReport::new("hurewicz", vec![loaded.digest], Some(cutoff));
    report.section(ranks_section("hurewicz ranks", &ranks));
    report.result = json!({"ranks": ranks_json(&ranks)});
    Ok((report, EXIT_PASS))
}

/// A finite-basis algebra for any description: finite ones directly, free
/// ones through the finite quotient model of their top cohomology degree.
fn as_finite(
    desc: &SpaceDescription,
    cutoff: u32,
    limits: &Limits,
) -> Result<Arc<FiniteCdga>> {
    match &desc.algebra {
        Algebra::Finite(a) => Ok(a.clone()),
        Algebra::Free(m) => {
            let ranks = cohomology(&**m, cutoff, limits)?.ranks;
            let n = ranks
                .top_nonzero()
                .ok_or_else(|| anyhow!("{}: cohomology has no nonzero degree", desc.name))?;
            Ok(finite_model_from_minimal(m, n, cutoff, limits)?)
        }
    }
}

struct MapPair {
    source: Arc<FiniteCdga>,
    target: Arc<SullivanAlgebra>,
    /// Top nonzero cohomology degree of the target.
    target_top: u32,
    digests: Vec<InputDigest>,
}

fn load_map_pair(
    source: &Path,
    target: &Path,
    cutoff: u32,
    limits: &Limits,
) -> Result<MapPair> {
    let sx = load(source)?;
    let a = as_finite(&sx.desc, cutoff, limits)?;
    let n = a.top_degree();
    let ty = load(target)?;
    let (v, target_top) = match &ty.desc.algebra {
        Algebra::Free(m) => {
            let top = cohomology(&**m, cutoff, limits)?
                .ranks
                .top_nonzero()
                .ok_or_else(|| anyhow!("{}: cohomology has no nonzero degree", ty.desc.name))?;
            (m.clone(), top)
        }
        Algebra::Finite(h) => (minimal_model(h, cutoff + n, limits)?.0, h.top_degree()),
    };
    Ok(MapPair {
        source: a,
        target: v,
        target_top,
        digests: vec![sx.digest, ty.digest],
    })
}

/// Verify that the evaluation map commutes with the differentials; the
/// construction solves for exactly this, so a failure is reported verbatim.
fn evaluation_chain_check(h: &HaefligerModel) -> (bool, String) {
    let y = h.source_v();
    for v in y.gens().iter() {
        let lhs = match h.evaluation().apply(&y.diff().value(v)) {
            Ok(e) => e,
            Err(e) => return (false, format!("φ(d{}) failed: {}", v.name(), e)),
        };
        let image = match h.evaluation().apply(&Polynomial::generator(v)) {
            Ok(e) => e,
            Err(e) => return (false, format!("φ({}) failed: {}", v.name(), e)),
        };
        let rhs = match h.evaluation().target().d_elem(&image) {
            Ok(e) => e,
            Err(e) => return (false, format!("D(φ({})) failed: {}", v.name(), e)),
        };
        if lhs != rhs {
            return (
                false,
                format!("φ(d{0}) differs from D(φ({0}))", v.name()),
            );
        }
    }
    (
        true,
        format!(
            "φ(dv) = D(φ(v)) for all {} target generators",
            y.gens().len()
        ),
    )
}

fn cmd_map_model(
    source: &Path,
    target: &Path,
    cutoff: u32,
    limits: &Limits,
) -> Result<(CommandReport, i32)> {
    let pair = load_map_pair(source, target, cutoff, limits)?;
    let h = haefliger_model(&pair.source, &pair.target, cutoff, limits)?;
    let mut report = CommandReport::new("map-model", pair.digests, Some(cutoff));
    report.section(model_section(h.model()));
    let (chain_ok, chain_detail) = evaluation_chain_check(&h);
    report.check("chain_map", chain_ok, chain_detail);
    let valid = h.model().validate();
    report.check(
        "model_laws",
        valid.is_ok(),
        match &valid {
            Ok(()) => "d is degree 1 and squares to zero".to_string(),
            Err(e) => e.to_string(),
        },
    );
    let mut result = model_json(h.model());
    result["hypotheses_met"] = json!(h.hypotheses_met());
    report.result = result;
    let code = if report.all_pass() { EXIT_PASS } else { EXIT_FAIL };
    Ok((report, code))
}

fn first_rank_mismatch(a: &RankTable, b: &RankTable) -> Option<u32> {
    a.iter()
        .zip(b.iter())
        .find(|((_, x), (_, y))| x != y)
        .map(|((q, _), _)| q)
}

fn cmd_map_homotopy(
    source: &Path,
    target: &Path,
    cutoff: u32,
    limits: &Limits,
) -> Result<(CommandReport, i32)> {
    let pair = load_map_pair(source, target, cutoff, limits)?;
    let n = pair.source.top_degree();
    let h = haefliger_model(&pair.source, &pair.target, cutoff, limits)?;
    let model_ranks = homotopy_ranks(h.model(), cutoff)?;
    let hx = cohomology(&*pair.source, n, limits)?.ranks;
    let pi_y = homotopy_ranks(&pair.target, cutoff + n)?;
    let formula_ranks = homotopy_formula(&hx, &pi_y, cutoff)?;
    let mut report = CommandReport::new("map-homotopy", pair.digests, Some(cutoff));
    report.section(ranks_section("model homotopy ranks", &model_ranks));
    report.section(ranks_section("rank formula", &formula_ranks));
    let mismatch = first_rank_mismatch(&model_ranks, &formula_ranks);
    report.check(
        "formula_match",
        mismatch.is_none(),
        match mismatch {
            None => format!("ranks agree through degree {}", cutoff),
            Some(q) => format!(
                "degree {}: model rank {}, formula rank {}",
                q,
                model_ranks.rank(q),
                formula_ranks.rank(q)
            ),
        },
    );
    report.result = json!({
        "model_ranks": ranks_json(&model_ranks),
        "formula_ranks": ranks_json(&formula_ranks),
    });
    let code = if mismatch.is_none() { EXIT_PASS } else { EXIT_FAIL };
    Ok((report, code))
}

fn cmd_thom_check(
    source: &Path,
    r: u32,
    cutoff: u32,
    limits: &Limits,
) -> Result<(CommandReport, i32)> {
    let loaded = load(source)?;
    let a = as_finite(&loaded.desc, cutoff, limits)?;
    let out = thom_splitting_check(&a, r, cutoff, limits)?;
    let mut report = CommandReport::new("thom-check", vec![loaded.digest], Some(cutoff));
    report.section(ranks_section("computed cohomology", &out.computed));
    report.section(ranks_section("predicted splitting", &out.expected));
    report.check(
        "splitting",
        out.is_pass(),
        match out.mismatch {
            None => format!("matches the predicted product through degree {}", cutoff),
            Some(q) => format!(
                "degree {}: computed rank {}, predicted rank {}",
                q,
                out.computed.rank(q),
                out.expected.rank(q)
            ),
        },
    );
    report.result = json!({
        "computed": ranks_json(&out.computed),
        "expected": ranks_json(&out.expected),
        "mismatch": out.mismatch,
    });
    let code = if out.is_pass() { EXIT_PASS } else { EXIT_FAIL };
    Ok((report, code))
}

fn cmd_theorem2_check(
    source: &Path,
    target: &Path,
    cutoff: u32,
    limits: &Limits,
) -> Result<(CommandReport, i32)> {
    let pair = load_map_pair(source, target, cutoff, limits)?;
    let split = basis_split(&pair.source);
    let h = haefliger_model(split.algebra(), &pair.target, cutoff, limits)?;
    let vanish = hurewicz_vanishing_check(&h, pair.target_top, cutoff, limits)?;
    let quotient = theorem2_quotient(&h, &split)?;
    let hw = hurewicz_ranks(h.model(), cutoff, limits)?;
    let mut report = CommandReport::new("theorem2-check", pair.digests, Some(cutoff));
    report.section(ranks_section("hurewicz ranks", &hw));
    let mut lines = vec!["reduced differential".to_string()];
    for (g, p) in quotient.dbar() {
        lines.push(format!("  dbar {} = {}", g.name(), p));
    }
    report.section(lines.join("\n"));
    report.check(
        "hurewicz_vanishing",
        vanish.is_pass(),
        match &vanish {
            VanishingOutcome::Pass(_) => format!(
                "hurewicz ranks vanish above degree {} through degree {}",
                pair.target_top, cutoff
            ),
            VanishingOutcome::Fail { degree, witness } => {
                format!("nonzero in degree {}: {}", degree, witness)
            }
        },
    );
    for line in quotient.checks() {
        report.check(line.name, line.pass, line.detail.clone());
    }
    let dbar: Vec<Value> = quotient
        .dbar()
        .iter()
        .map(|(g, p)| json!({"generator": g.name(), "value": p.to_string()}))
        .collect();
    report.result = json!({
        "n_dim": pair.target_top,
        "hurewicz_ranks": ranks_json(&hw),
        "reduced_differential": dbar,
    });
    let code = if report.all_pass() { EXIT_PASS } else { EXIT_FAIL };
    Ok((report, code))
}

/// The free model a formality or Massey question is about: one file names a
/// space, two files name a mapping-space pair.
fn formality_input(
    files: &[PathBuf],
    cutoff: u32,
    limits: &Limits,
) -> Result<(Arc<SullivanAlgebra>, Vec<InputDigest>)> {
    match files {
        [one] => {
            let loaded = load(one)?;
            let m = as_model(&loaded.desc, cutoff, limits)?;
            Ok((m, vec![loaded.digest]))
        }
        [source, target] => {
            let pair = load_map_pair(source, target, cutoff, limits)?;
            let h = haefliger_model(&pair.source, &pair.target, cutoff, limits)?;
            Ok((h.model().clone(), pair.digests))
        }
        _ => bail!("expected one or two description files"),
    }
}

fn rational_strings(row: &[Rational]) -> Vec<String> {
    row.iter().map(|c| c.to_string()).collect()
}

fn massey_result_json<T: Cdga>(alg: &T, r: &MasseyResult<T::Elem>) -> Value {
    json!({
        "representative": alg.display_elem(&r.representative),
        "class": rational_strings(&r.class),
        "indeterminacy": r.indeterminacy.iter().map(|row| rational_strings(row)).collect::<Vec<_>>(),
        "nonzero_mod_indeterminacy": r.nonzero_mod_indeterminacy,
    })
}

fn massey_witness_json<T: Cdga>(alg: &T, w: &MasseyWitness<T::Elem>) -> Value {
    json!({
        "degrees": [w.degrees.0, w.degrees.1, w.degrees.2],
        "x": alg.display_elem(&w.x),
        "y": alg.display_elem(&w.y),
        "z": alg.display_elem(&w.z),
        "result": massey_result_json(alg, &w.result),
    })
}

fn effective_cutoff(m: &SullivanAlgebra, cutoff: u32) -> u32 {
    match m.complete_through() {
        Some(c) => cutoff.min(c),
        None => cutoff,
    }
}

fn cmd_formality(
    files: &[PathBuf],
    cutoff: u32,
    limits: &Limits,
) -> Result<(CommandReport, i32)> {
    let (m, digests) = formality_input(files, cutoff, limits)?;
    let mut report = CommandReport::new("formality", digests, Some(cutoff));
    let eff = effective_cutoff(&m, cutoff);
    if eff < cutoff {
        report.section(format!(
            "the model is only complete through degree {}; verification is capped there",
            eff
        ));
    }
    if m.has_linear_differential() {
        let witness = formality_witness_linear(&m)?;
        let rep = verify_quasi_iso(&witness, eff, limits)?;
        report.check(
            "linear_differential",
            true,
            "the differential is linear on generators",
        );
        report.check("quasi_isomorphism", rep.is_pass(), quasi_detail(&rep));
        let values: Vec<Value> = m
            .gens()
            .iter()
            .map(|g| {
                let v = witness.value(g).cloned().unwrap_or_else(Polynomial::zero);
                json!({
                    "generator": g.name(),
                    "value": witness.target().display_elem(&v),
                })
            })
            .collect();
        report.result = json!({"formal": rep.is_pass(), "witness": values});
        report.section(format!(
            "formal: a direct quasi-isomorphism onto the cohomology exists (verified through degree {})",
            eff
        ));
        let code = if rep.is_pass() { EXIT_PASS } else { EXIT_FAIL };
        return Ok((report, code));
    }
    if let Some(w) = massey_scan(&*m, eff, limits)? {
        report.check(
            "massey_products",
            false,
            format!(
                "nonzero triple product on classes of degrees ({}, {}, {})",
                w.degrees.0, w.degrees.1, w.degrees.2
            ),
        );
        report.section(format!(
            "obstruction\n  x = {}\n  y = {}\n  z = {}\n  representative = {}",
            m.display_elem(&w.x),
            m.display_elem(&w.y),
            m.display_elem(&w.z),
            m.display_elem(&w.result.representative),
        ));
        report.result = json!({
            "formal": false,
            "obstruction": {"kind": "massey_product", "witness": massey_witness_json(&*m, &w)},
        });
        return Ok((report, EXIT_FAIL));
    }
    report.check(
        "massey_products",
        true,
        format!("no nonzero triple products through degree {}", eff),
    );
    let h = cohomology_algebra(&*m, eff, limits)?;
    let simply_connected = h.algebra.degree_indices(1).is_empty();
    if simply_connected && eff > 0 {
        let compare_through = eff - 1;
        let bg = bigraded_model(&Arc::new(h.algebra), eff, limits)?;
        let model_pi = homotopy_ranks(&m, compare_through)?;
        let cohomology_pi = homotopy_ranks(&bg, compare_through)?;
        match first_rank_mismatch(&model_pi, &cohomology_pi) {
            Some(q) => {
                report.check(
                    "homotopy_comparison",
                    false,
                    format!(
                        "degree {}: model homotopy rank {}, cohomology-model rank {}",
                        q,
                        model_pi.rank(q),
                        cohomology_pi.rank(q)
                    ),
                );
                report.result = json!({
                    "formal": false,
                    "obstruction": {
                        "kind": "homotopy_rank_mismatch",
                        "degree": q,
                        "model_rank": model_pi.rank(q),
                        "cohomology_model_rank": cohomology_pi.rank(q),
                    },
                });
                return Ok((report, EXIT_FAIL));
            }
            None => {
                report.check(
                    "homotopy_comparison",
                    true,
                    format!(
                        "homotopy ranks match the model of the cohomology through degree {}",
                        compare_through
                    ),
                );
            }
        }
    } else if !simply_connected {
        report.section(
            "the cohomology is not simply connected; the generator-count comparison was skipped"
                .to_string(),
        );
    }
    report.section(format!(
        "undecided: no obstruction found through degree {}",
        eff
    ));
    report.result = json!({"formal": null});
    Ok((report, EXIT_UNDECIDED))
}

fn expect_degree(p: &Polynomial, flag: &str) -> Result<u32> {
    match p.homogeneous_degree() {
        HomDegree::Degree(q) => Ok(q),
        HomDegree::Zero => bail!("{}: the zero polynomial carries no degree", flag),
        HomDegree::Mixed => bail!("{}: the value must be homogeneous", flag),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_massey(
    files: &[PathBuf],
    cutoff: u32,
    x: Option<&str>,
    y: Option<&str>,
    z: Option<&str>,
    limits: &Limits,
) -> Result<(CommandReport, i32)> {
    let (m, digests) = formality_input(files, cutoff, limits)?;
    let mut report = CommandReport::new("massey", digests, Some(cutoff));
    let eff = effective_cutoff(&m, cutoff);
    match (x, y, z) {
        (Some(x), Some(y), Some(z)) => {
            let px = input::parse_over(x, m.gens()).map_err(|e| anyhow!("--x: {}", e))?;
            let py = input::parse_over(y, m.gens()).map_err(|e| anyhow!("--y: {}", e))?;
            let pz = input::parse_over(z, m.gens()).map_err(|e| anyhow!("--z: {}", e))?;
            let qx = expect_degree(&px, "--x")?;
            let qy = expect_degree(&py, "--y")?;
            let qz = expect_degree(&pz, "--z")?;
            let r = triple_massey(&*m, &px, qx, &py, qy, &pz, qz, limits)?;
            report.section(format!(
                "triple product of ({}, {}, {})\n  representative = {}\n  nonzero modulo indeterminacy: {}",
                px, py, pz, m.display_elem(&r.representative), r.nonzero_mod_indeterminacy
            ));
            report.result = json!({
                "degrees": [qx, qy, qz],
                "product": massey_result_json(&*m, &r),
            });
            Ok((report, EXIT_PASS))
        }
        (None, None, None) => {
            match massey_scan(&*m, eff, limits)? {
                Some(w) => {
                    report.section(format!(
                        "first nonzero triple product (degrees {}, {}, {})\n  x = {}\n  y = {}\n  z = {}\n  representative = {}",
                        w.degrees.0, w.degrees.1, w.degrees.2,
                        m.display_elem(&w.x),
                        m.display_elem(&w.y),
                        m.display_elem(&w.z),
                        m.display_elem(&w.result.representative),
                    ));
                    report.result = json!({"witness": massey_witness_json(&*m, &w)});
                }
                None => {
                    report.section(format!(
                        "no nonzero triple products through degree {}",
                        eff
                    ));
                    report.result = json!({"witness": null});
                }
            }
            Ok((report, EXIT_PASS))
        }
        _ => bail!("--x, --y, and --z must be given together"),
    }
}
