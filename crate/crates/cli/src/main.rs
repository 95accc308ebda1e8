//! `homsplit`: check, construct and compare Hom-type splitting algebras
//! given as structure-constant files.
//!
//! Exit codes: 0 when every check passes, 1 when violations or
//! discrepancies are found, 2 on input errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context as _};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use homsplit::axioms::{self, Sq15Reading};
use homsplit::constructions::{self as cons, Inputs};
use homsplit::corpus::{self, Corpus, VerifyAllOptions};
use homsplit::io::{self, Document, OperatorFile};
use homsplit::morphisms;
use homsplit::operators::{self, OperatorContext, OperatorKind, VerifyOptions};
use homsplit::{bundle_specialize, ActionBundle, AlgebraBundle, Bindings, Error, Kind, Rational, Report};

#[derive(Parser)]
#[command(
    name = "homsplit",
    version,
    about = "Exact verification of Hom-type splitting algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sq15Arg {
    Literal,
    Symmetric,
}

impl From<Sq15Arg> for Sq15Reading {
    fn from(a: Sq15Arg) -> Self {
        match a {
            Sq15Arg::Literal => Sq15Reading::Literal,
            Sq15Arg::Symmetric => Sq15Reading::Symmetric,
        }
    }
}

#[derive(Args, Clone)]
struct Common {
    /// Specialize a parameter before running, e.g. `--bind a=1/2` (repeatable)
    #[arg(long = "bind", value_name = "NAME=VALUE")]
    bind: Vec<String>,
    /// Reading of identity sq15 for six-dendriform checks
    #[arg(long, value_enum, default_value = "literal")]
    sq15: Sq15Arg,
    /// Write the JSON report to this path instead of stdout
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructName {
    /// quadri -> diassociative by summing operations
    SumDias,
    /// six -> triassociative by summing operations
    SumTri,
    /// direct sum of two quadri algebras
    Dsum,
    /// hemi-semidirect quadri algebra of a representation
    Hemi,
    /// semidirect dendriform algebra of an action
    Semidirect,
    /// dendriform quotient of a quadri algebra by I_D
    Quotient,
    /// diassociative algebra induced by an averaging operator (--operator)
    AvgDias,
    /// diassociative algebra induced by a Rota-Baxter operator (--operator)
    RbDias,
    /// quadri algebra induced by a relative averaging operator (--operator)
    RavgQuadri,
    /// six algebra induced by a homomorphic relative averaging operator (--operator)
    HavgSix,
}

impl ConstructName {
    fn label(self) -> &'static str {
        match self {
            ConstructName::SumDias => "sum-dias",
            ConstructName::SumTri => "sum-tri",
            ConstructName::Dsum => "dsum",
            ConstructName::Hemi => "hemi",
            ConstructName::Semidirect => "semidirect",
            ConstructName::Quotient => "quotient",
            ConstructName::AvgDias => "avg-dias",
            ConstructName::RbDias => "rb-dias",
            ConstructName::RavgQuadri => "ravg-quadri",
            ConstructName::HavgSix => "havg-six",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of an algebra, representation or action file
    Check {
        file: PathBuf,
        /// Also check that the twist is multiplicative for every operation
        #[arg(long)]
        multiplicative: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Build a new structure from input files and print it as an algebra file
    Construct {
        #[arg(value_enum)]
        name: ConstructName,
        /// Input structure files (two for dsum)
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Operator file for the operator-induced constructions
        #[arg(long, value_name = "PATH")]
        operator: Option<PathBuf>,
        /// Build even when preconditions fail (the output is then unverified)
        #[arg(long)]
        force: bool,
        /// Write the constructed file here instead of stdout
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Verify an operator file against an algebra, representation or action
    VerifyOp {
        context: PathBuf,
        operator: PathBuf,
        /// Also require commutation with the twist for averaging operators
        #[arg(long)]
        strict_twist: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate operators whose free entries lie in a rational grid
    SolveOp {
        context: PathBuf,
        #[arg(long, value_parser = parse_op_kind)]
        kind: OperatorKind,
        /// Integer range for numerators, e.g. "-2..2"
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        grid: String,
        /// Comma-separated denominators combined with the grid numerators
        #[arg(long, default_value = "1", value_delimiter = ',')]
        denominators: Vec<i64>,
        #[arg(long)]
        strict_twist: bool,
        /// Parameter to treat as the imaginary unit
        #[arg(long, value_name = "NAME")]
        imaginary_unit: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Print the polynomial system defining operators of a kind
    EmitSystem {
        context: PathBuf,
        #[arg(long, value_parser = parse_op_kind)]
        kind: OperatorKind,
        /// Prefix for the unknown matrix entries
        #[arg(long, default_value = "theta")]
        prefix: String,
        #[arg(long)]
        strict_twist: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Print isomorphism invariants of a parameter-free algebra
    Fingerprint {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Search for an isomorphism between two parameter-free algebras
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Integer range for numerators, e.g. "-1..1"
        #[arg(long, default_value = "-1..1", allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value = "1", value_delimiter = ',')]
        denominators: Vec<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Work with the transcribed corpus
    Corpus {
        #[command(subcommand)]
        action: CorpusCommand,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Verify every entry and report disagreements with asserted verdicts
    VerifyAll {
        /// Corpus directory containing manifest.json
        #[arg(long, default_value = "corpus")]
        corpus: PathBuf,
        /// Write the JSON report to this path instead of stdout
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
        /// Also write a markdown discrepancy summary to this path
        #[arg(long, value_name = "PATH")]
        summary: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "literal")]
        sq15: Sq15Arg,
    },
    /// List corpus entries
    List {
        #[arg(long, default_value = "corpus")]
        corpus: PathBuf,
    },
}

fn parse_op_kind(s: &str) -> Result<OperatorKind, String> {
    s.parse().map_err(|_| {
        let all: Vec<&str> = OperatorKind::ALL.iter().map(|k| k.as_str()).collect();
        format!("unknown operator kind '{s}' (one of {})", all.join(", "))
    })
}

/// Failure classes mapped to exit codes.
enum Failure {
    Violations(String),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Closure(r) | Error::Precondition(r) => Failure::Violations(render_report(&r)),
            other => Failure::Input(other.into()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Violations(text)) => {
            eprintln!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Check {
            file,
            multiplicative,
            common,
        } => check(&file, multiplicative, &common),
        Command::Construct {
            name,
            inputs,
            operator,
            force,
            out,
            common,
        } => construct(name, &inputs, operator.as_deref(), force, out.as_deref(), &common),
        Command::VerifyOp {
            context,
            operator,
            strict_twist,
            common,
        } => verify_op(&context, &operator, strict_twist, &common),
        Command::SolveOp {
            context,
            kind,
            grid,
            denominators,
            strict_twist,
            imaginary_unit,
            common,
        } => {
            let grid = parse_grid(&grid, &denominators)?;
            let mut ld = Loader::new(&common)?;
            let ctx = ld.context(&context, kind)?;
            ld.finish()?;
            let opts = VerifyOptions {
                strict_twist,
                imaginary_unit,
            };
            let sols = operators::solve_operators_grid(&ctx, kind, &grid, &opts)?;
            let v = json!({
                "kind": kind.as_str(),
                "grid": grid.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "solutions": sols,
            });
            emit(&v, common.report.as_deref())?;
            summary(&format!("{} solutions", sols.len()), common.report.as_deref());
            Ok(true)
        }
        Command::EmitSystem {
            context,
            kind,
            prefix,
            strict_twist,
            common,
        } => {
            let mut ld = Loader::new(&common)?;
            let ctx = ld.context(&context, kind)?;
            ld.finish()?;
            let opts = VerifyOptions {
                strict_twist,
                imaginary_unit: None,
            };
            let eqs = operators::emit_operator_system(&ctx, kind, &prefix, &opts)?;
            let v = json!({
                "kind": kind.as_str(),
                "equations": eqs.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            emit(&v, common.report.as_deref())?;
            summary(&format!("{} equations", eqs.len()), common.report.as_deref());
            Ok(true)
        }
        Command::Fingerprint { file, common } => {
            let mut ld = Loader::new(&common)?;
            let b = ld.algebra(&file)?;
            ld.finish()?;
            let fp = morphisms::fingerprint(&b)?;
            emit(&serde_json::to_value(&fp).expect("json"), common.report.as_deref())?;
            Ok(true)
        }
        Command::Iso {
            a,
            b,
            grid,
            denominators,
            common,
        } => {
            let grid = parse_grid(&grid, &denominators)?;
            let mut ld = Loader::new(&common)?;
            let (a, b) = (ld.algebra(&a)?, ld.algebra(&b)?);
            ld.finish()?;
            let verdict = morphisms::brute_force_iso_search(&a, &b, &grid)?;
            emit(&serde_json::to_value(&verdict).expect("json"), common.report.as_deref())?;
            let human = match &verdict {
                morphisms::IsoVerdict::Isomorphic { .. } => "isomorphic".to_string(),
                morphisms::IsoVerdict::Distinct { field } => {
                    format!("fingerprints differ ({field}) => non-isomorphic")
                }
                morphisms::IsoVerdict::Unknown => "no isomorphism within grid".to_string(),
            };
            summary(&human, common.report.as_deref());
            Ok(matches!(verdict, morphisms::IsoVerdict::Isomorphic { .. }))
        }
        Command::Corpus { action } => corpus_cmd(action),
    }
}

fn render_report(r: &Report) -> String {
    serde_json::to_string_pretty(&r.to_json()).expect("json")
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(v: &Value, report: Option<&Path>) -> anyhow::Result<()> {
    let text = format!("{}\n", serde_json::to_string_pretty(v).expect("json"));
    match report {
        Some(p) => write_file(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Human summary: stdout when the JSON went to a report file, stderr otherwise.
fn summary(msg: &str, report: Option<&Path>) {
    if report.is_some() {
        println!("{msg}");
    } else {
        eprintln!("{msg}");
    }
}

fn emit_report(r: &Report, report: Option<&Path>) -> anyhow::Result<()> {
    emit(&r.to_json(), report)?;
    if r.passed() {
        summary("pass", report);
    } else {
        summary(&format!("fail: {} violations", r.len()), report);
    }
    Ok(())
}

fn parse_rational(s: &str) -> anyhow::Result<Rational> {
    let p = homsplit::parse(s).map_err(|e| anyhow!("invalid value '{s}': {e}"))?;
    p.as_constant()
        .ok_or_else(|| anyhow!("value '{s}' is not a rational constant"))
}

fn bindings(common: &Common) -> anyhow::Result<Bindings> {
    let mut out = Bindings::new();
    for b in &common.bind {
        let (k, v) = b
            .split_once('=')
            .ok_or_else(|| anyhow!("--bind expects NAME=VALUE, got '{b}'"))?;
        out.insert(k.trim().to_string(), parse_rational(v.trim())?);
    }
    Ok(out)
}

fn parse_grid(range: &str, denominators: &[i64]) -> anyhow::Result<Vec<Rational>> {
    let (lo, hi) = range
        .split_once("..")
        .ok_or_else(|| anyhow!("grid must look like LO..HI, got '{range}'"))?;
    let lo: i64 = lo.trim().parse().context("grid lower bound")?;
    let hi: i64 = hi.trim().parse().context("grid upper bound")?;
    if lo > hi {
        bail!("empty grid {range}");
    }
    let mut out = Vec::new();
    for &d in denominators {
        if d <= 0 {
            bail!("denominators must be positive");
        }
        for n in lo..=hi {
            out.push(Rational::new(n.into(), d.into()));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn restrict(bind: &Bindings, declared: &[String]) -> Bindings {
    bind.iter()
        .filter(|(k, _)| declared.contains(k))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect()
}

fn specialize_action(a: &ActionBundle, bind: &Bindings) -> Result<ActionBundle, Error> {
    let acting = bundle_specialize(&a.acting, &restrict(bind, &a.acting.parameters))?;
    let acted = bundle_specialize(&a.acted, &restrict(bind, &a.acted.parameters))?;
    let mut out = a.clone();
    out.acting = acting;
    out.acted = acted;
    for op in out.actions.values_mut() {
        *op = op.specialize(bind);
    }
    Ok(out)
}

/// Loads the input files of one command. Each file receives the `--bind`
/// values for the parameters it declares; `finish` rejects bindings that no
/// input declares.
struct Loader {
    bind: Bindings,
    declared: BTreeSet<String>,
}

impl Loader {
    fn new(common: &Common) -> anyhow::Result<Self> {
        Ok(Loader {
            bind: bindings(common)?,
            declared: BTreeSet::new(),
        })
    }

    fn local(&mut self, declared: &[String]) -> Bindings {
        self.declared.extend(declared.iter().cloned());
        restrict(&self.bind, declared)
    }

    fn document(&mut self, path: &Path) -> Result<Document, Failure> {
        Ok(match io::load_document(path)? {
            Document::Algebra(b) => {
                let bind = self.local(&b.parameters);
                Document::Algebra(bundle_specialize(&b, &bind)?)
            }
            Document::Representation(r) => {
                let bind = self.local(&r.base.parameters);
                Document::Representation(r.specialize(&bind)?)
            }
            Document::Action(a) => {
                let mut declared = a.acting.parameters.clone();
                declared.extend(a.acted.parameters.iter().cloned());
                let bind = self.local(&declared);
                Document::Action(specialize_action(&a, &bind)?)
            }
        })
    }

    fn algebra(&mut self, path: &Path) -> Result<AlgebraBundle, Failure> {
        match self.document(path)? {
            Document::Algebra(b) => Ok(b),
            _ => Err(Failure::Input(anyhow!("{}: expected an algebra file", path.display()))),
        }
    }

    fn operator(&mut self, path: &Path) -> Result<OperatorFile, Failure> {
        let mut op = io::load_operator(path)?;
        let declared = if op.parameters.is_empty() {
            op.matrix.parameters().into_iter().collect()
        } else {
            op.parameters.clone()
        };
        let bind = self.local(&declared);
        if !bind.is_empty() {
            op.matrix = op.matrix.specialize(&bind);
            op.parameters.retain(|p| !bind.contains_key(p));
        }
        Ok(op)
    }

    fn context(&mut self, path: &Path, kind: OperatorKind) -> Result<OperatorContext, Failure> {
        Ok(match (kind, self.document(path)?) {
            (_, Document::Algebra(b)) => OperatorContext::Algebra(b),
            (OperatorKind::RelativeAveraging, Document::Action(a)) => {
                OperatorContext::Representation(a.representation())
            }
            (_, Document::Representation(r)) => OperatorContext::Representation(r),
            (_, Document::Action(a)) => OperatorContext::Action(a),
        })
    }

    fn finish(&self) -> Result<(), Failure> {
        match self.bind.keys().find(|k| !self.declared.contains(*k)) {
            Some(k) => Err(Error::UndeclaredParameter(k.clone()).into()),
            None => Ok(()),
        }
    }
}

fn check(file: &Path, multiplicative: bool, common: &Common) -> Outcome {
    let sq15 = common.sq15.into();
    let mut ld = Loader::new(common)?;
    let doc = ld.document(file)?;
    ld.finish()?;
    let report = match doc {
        Document::Algebra(b) => {
            let mut r = axioms::check_kind(&b, sq15)?;
            if multiplicative {
                r.merge(axioms::check_multiplicative(&b)?);
            }
            r
        }
        Document::Representation(rep) => axioms::check_representation(&rep)?,
        Document::Action(a) => {
            let mut r = axioms::check_action(&a)?;
            r.merge_prefixed("acting.", axioms::check_dendriform(&a.acting)?);
            r.merge_prefixed("acted.", axioms::check_dendriform(&a.acted)?);
            r
        }
    };
    emit_report(&report, common.report.as_deref())?;
    Ok(report.passed())
}

fn verify_op(context: &Path, operator: &Path, strict_twist: bool, common: &Common) -> Outcome {
    let mut ld = Loader::new(common)?;
    let op = ld.operator(operator)?;
    let ctx = ld.context(context, op.kind)?;
    ld.finish()?;
    let opts = VerifyOptions {
        strict_twist,
        imaginary_unit: op.imaginary_unit.clone(),
    };
    let report = operators::verify_operator(op.kind, &ctx, &op.matrix, &opts)?;
    emit_report(&report, common.report.as_deref())?;
    Ok(report.passed())
}

fn construct(
    name: ConstructName,
    inputs: &[PathBuf],
    operator: Option<&Path>,
    force: bool,
    out: Option<&Path>,
    common: &Common,
) -> Outcome {
    let sq15: Sq15Reading = common.sq15.into();
    let want = if matches!(name, ConstructName::Dsum) { 2 } else { 1 };
    if inputs.len() != want {
        return Err(Failure::Input(anyhow!(
            "construct {} takes {want} input file(s), got {}",
            name.label(),
            inputs.len()
        )));
    }
    let needs_op = matches!(
        name,
        ConstructName::AvgDias | ConstructName::RbDias | ConstructName::RavgQuadri | ConstructName::HavgSix
    );
    let mut ld = Loader::new(common)?;
    let op = match (needs_op, operator) {
        (true, Some(p)) => Some(ld.operator(p)?),
        (true, None) => return Err(Failure::Input(anyhow!("construct {} needs --operator", name.label()))),
        (false, Some(_)) => return Err(Failure::Input(anyhow!("construct {} takes no operator", name.label()))),
        (false, None) => None,
    };
    let doc = ld.document(&inputs[0])?;
    let second = match inputs.get(1) {
        Some(p) => Some(ld.document(p)?),
        None => None,
    };
    ld.finish()?;
    let algebra = |d: Document| -> Result<AlgebraBundle, Failure> {
        match d {
            Document::Algebra(b) => Ok(b),
            _ => Err(Failure::Input(anyhow!("expected an algebra file"))),
        }
    };
    let matrix = op.as_ref().map(|o| o.matrix.clone());
    let (pre, result): (Report, Result<Document, Error>) = match name {
        ConstructName::SumDias => {
            let b = algebra(doc)?;
            b.require_kind(Kind::QuadriDendriform)?;
            (
                cons::preconditions(&Inputs::Algebra(&b), sq15)?,
                cons::quadri_to_diassociative(&b).map(Document::Algebra),
            )
        }
        ConstructName::SumTri => {
            let b = algebra(doc)?;
            b.require_kind(Kind::SixDendriform)?;
            (
                cons::preconditions(&Inputs::Algebra(&b), sq15)?,
                cons::six_to_triassociative(&b).map(Document::Algebra),
            )
        }
        ConstructName::Dsum => {
            let a = algebra(doc)?;
            let b = algebra(second.expect("two inputs"))?;
            a.require_kind(Kind::QuadriDendriform)?;
            (
                cons::preconditions(&Inputs::Pair(&a, &b), sq15)?,
                cons::direct_sum_quadri(&a, &b).map(Document::Algebra),
            )
        }
        ConstructName::Hemi => {
            let r = match doc {
                Document::Representation(r) => r,
                Document::Action(a) => a.representation(),
                Document::Algebra(_) => return Err(Failure::Input(anyhow!("hemi needs a representation file"))),
            };
            (
                cons::preconditions(&Inputs::Representation(&r), sq15)?,
                cons::hemi_semidirect(&r).map(Document::Algebra),
            )
        }
        ConstructName::Semidirect => {
            let Document::Action(a) = doc else {
                return Err(Failure::Input(anyhow!("semidirect needs an action file")));
            };
            (
                cons::preconditions(&Inputs::Action(&a), sq15)?,
                cons::semidirect_dendriform(&a).map(Document::Algebra),
            )
        }
        ConstructName::Quotient => {
            let b = algebra(doc)?;
            b.require_parameter_free()?;
            let mut pre = cons::preconditions(&Inputs::Algebra(&b), sq15)?;
            let ideal = cons::ideal_id(&b)?;
            pre.merge(cons::ideal_closure_report(&b, &ideal)?);
            (
                pre,
                cons::quotient_dendriform_unchecked(&b).map(|q| Document::Algebra(q.algebra)),
            )
        }
        ConstructName::AvgDias | ConstructName::RbDias => {
            let b = algebra(doc)?;
            let h = matrix.expect("operator");
            let built = if matches!(name, ConstructName::AvgDias) {
                b.require_kind(Kind::Associative)?;
                cons::averaging_induced_diassociative(&b, &h)
            } else {
                b.require_kind(Kind::Diassociative)?;
                cons::rota_baxter_induced(&b, &h)
            };
            (
                cons::preconditions(&Inputs::AlgebraOperator(&b, &h), sq15)?,
                built.map(Document::Algebra),
            )
        }
        ConstructName::RavgQuadri => {
            let r = match doc {
                Document::Representation(r) => r,
                Document::Action(a) => a.representation(),
                Document::Algebra(_) => return Err(Failure::Input(anyhow!("ravg-quadri needs a representation file"))),
            };
            let t = matrix.expect("operator");
            (
                cons::preconditions(&Inputs::RepresentationOperator(&r, &t), sq15)?,
                cons::relative_averaging_induced_quadri(&r, &t).map(Document::Algebra),
            )
        }
        ConstructName::HavgSix => {
            let Document::Action(a) = doc else {
                return Err(Failure::Input(anyhow!("havg-six needs an action file")));
            };
            let t = matrix.expect("operator");
            (
                cons::preconditions(&Inputs::ActionOperator(&a, &t), sq15)?,
                cons::homomorphic_averaging_induced_six(&a, &t).map(Document::Algebra),
            )
        }
    };
    if !pre.passed() && !force {
        eprintln!("{}", render_report(&pre));
        eprintln!(
            "preconditions failed for construct {}; rerun with --force to build anyway",
            name.label()
        );
        return Ok(false);
    }
    let built = result?;
    let mut header = vec![format!("construct {}", name.label())];
    for p in inputs {
        header.push(format!("input: {}", p.display()));
    }
    if let Some(p) = operator {
        header.push(format!("operator: {}", p.display()));
    }
    if !common.bind.is_empty() {
        header.push(format!("bindings: {}", common.bind.join(", ")));
    }
    if !pre.passed() {
        header.push(format!(
            "preconditions FAILED ({} entries); built with --force",
            pre.len()
        ));
    }
    let text = io::render(&io::document_to_json(&built), &header);
    match out {
        Some(p) => write_file(p, &text)?,
        None => print!("{text}"),
    }
    if let Some(p) = common.report.as_deref() {
        emit(&pre.to_json(), Some(p))?;
    }
    Ok(pre.passed())
}

fn corpus_cmd(action: CorpusCommand) -> Outcome {
    match action {
        CorpusCommand::List { corpus } => {
            let c = Corpus::open(&corpus)?;
            for a in &c.manifest.algebras {
                for (id, file) in a.instances() {
                    println!("{id}\talgebra\t{file}");
                }
            }
            for o in &c.manifest.operators {
                println!("{}\toperator\t{}\t{}", o.id, o.file, o.target);
            }
            Ok(true)
        }
        CorpusCommand::VerifyAll {
            corpus,
            report,
            summary: summary_md,
            sq15,
        } => {
            let c = Corpus::open(&corpus)?;
            let opts = VerifyAllOptions {
                sq15: sq15.into(),
                ..VerifyAllOptions::default()
            };
            let r = corpus::verify_all(&c, &opts)?;
            let text = r.to_json_string();
            match &report {
                Some(p) => write_file(p, &text)?,
                None => print!("{text}"),
            }
            if let Some(p) = &summary_md {
                write_file(p, &corpus::discrepancies_markdown(&r))?;
            }
            let s = &r.summary;
            let msg = format!(
                "algebras {}/{} pass, operators {}/{} pass, grid runs {}, discrepancies {}",
                s.algebra_passed,
                s.algebra_instances,
                s.operator_passed,
                s.operator_checks,
                s.grid_runs,
                s.discrepancies
            );
            summary(&msg, report.as_deref());
            Ok(!r.has_discrepancies())
        }
    }
}
