//! The transcribed corpus: manifest, batch verification and the
//! discrepancy summary.
//!
//! A manifest lists algebra entries (optionally split into named variants
//! when a table line admits two readings) and operator entries pointing at
//! an algebra id. Expected verdicts are assertions carried from the source
//! tables, never assumed: every disagreement becomes a discrepancy record.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::axioms::{self, Sq15Reading};
use crate::error::{Error, Result};
use crate::io::{self, OperatorFile};
use crate::model::{bundle_specialize, AlgebraBundle, Bindings, LinearMap};
use crate::operators::{self, OperatorContext, OperatorKind, VerifyOptions};
use crate::polyring::{rat, Rational};
use crate::report::{Report, Status};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub verdict: Status,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variant {
    pub name: String,
    pub file: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraEntry {
    pub id: String,
    pub group: String,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub variants: Vec<Variant>,
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transcription_notes: Option<String>,
}

impl AlgebraEntry {
    /// `(instance id, relative file)` for every concrete file of the entry.
    pub fn instances(&self) -> Vec<(String, String)> {
        match &self.file {
            Some(f) => vec![(self.id.clone(), f.clone())],
            None => self
                .variants
                .iter()
                .map(|v| (format!("{}.{}", self.id, v.name), v.file.clone()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorEntry {
    pub id: String,
    pub target: String,
    pub file: String,
    pub source: String,
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transcription_notes: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub algebras: Vec<AlgebraEntry>,
    pub operators: Vec<OperatorEntry>,
}

/// A manifest together with the directory its paths are relative to.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub root: PathBuf,
    pub manifest: Manifest,
}

impl Corpus {
    pub fn open(root: impl AsRef<Path>) -> Result<Self> {
        let root = root.as_ref().to_path_buf();
        let path = root.join("manifest.json");
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Input {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let manifest: Manifest = serde_json::from_str(&text).map_err(|e| Error::Input {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let corpus = Corpus { root, manifest };
        corpus.check_ids()?;
        Ok(corpus)
    }

    fn check_ids(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        let ids = self
            .manifest
            .algebras
            .iter()
            .map(|a| &a.id)
            .chain(self.manifest.operators.iter().map(|o| &o.id));
        for id in ids {
            if !seen.insert(id.clone()) {
                return Err(self.input(format!("duplicate corpus id {id}")));
            }
        }
        for a in &self.manifest.algebras {
            if a.file.is_some() == !a.variants.is_empty() {
                return Err(self.input(format!("{} needs exactly one of \"file\" and \"variants\"", a.id)));
            }
        }
        for o in &self.manifest.operators {
            if self.algebra_entry(&o.target).is_none() {
                return Err(self.input(format!("{} targets unknown algebra {}", o.id, o.target)));
            }
        }
        Ok(())
    }

    fn input(&self, message: String) -> Error {
        Error::Input {
            path: self.root.join("manifest.json").display().to_string(),
            message,
        }
    }

    pub fn algebra_entry(&self, id: &str) -> Option<&AlgebraEntry> {
        self.manifest.algebras.iter().find(|a| a.id == id)
    }

    pub fn load_instance(&self, file: &str) -> Result<AlgebraBundle> {
        io::load_algebra(self.root.join(file))
    }

    /// Every algebra instance (variants expanded) in manifest order.
    pub fn instances(&self) -> Result<Vec<(String, AlgebraBundle)>> {
        let mut out = Vec::new();
        for a in &self.manifest.algebras {
            for (id, file) in a.instances() {
                out.push((id, self.load_instance(&file)?));
            }
        }
        Ok(out)
    }

    pub fn load_operator(&self, entry: &OperatorEntry) -> Result<OperatorFile> {
        io::load_operator(self.root.join(&entry.file))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraResult {
    pub entry: String,
    pub group: String,
    pub kind: String,
    pub dimension: usize,
    pub parameters: Vec<String>,
    pub expected: Expected,
    pub report: Report,
    /// Informational only; never part of the verdict.
    pub multiplicative: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorResult {
    pub entry: String,
    pub kind: OperatorKind,
    pub target: String,
    pub parameters: Vec<String>,
    pub expected: Expected,
    pub report: Report,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridSolution {
    pub matrix: LinearMap,
    pub families: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridResult {
    pub target: String,
    pub bindings: BTreeMap<String, String>,
    pub grid: Vec<String>,
    pub solutions: Vec<GridSolution>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub id: String,
    pub category: String,
    pub expected: String,
    pub found: String,
    pub detail: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub algebra_instances: usize,
    pub algebra_passed: usize,
    pub operator_checks: usize,
    pub operator_passed: usize,
    pub grid_runs: usize,
    pub grid_solutions: usize,
    pub discrepancies: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub summary: Summary,
    pub algebras: BTreeMap<String, AlgebraResult>,
    pub operators: BTreeMap<String, OperatorResult>,
    pub grid: BTreeMap<String, GridResult>,
    pub discrepancies: Vec<Discrepancy>,
}

impl CorpusReport {
    pub fn has_discrepancies(&self) -> bool {
        !self.discrepancies.is_empty()
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("json");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug)]
pub struct VerifyAllOptions {
    pub sq15: Sq15Reading,
    /// Integer grid for the dimension-2 operator solver.
    pub grid: Vec<Rational>,
    /// Each dimension-2 entry is solved with every parameter bound to each
    /// of these values in turn.
    pub grid_specializations: Vec<Rational>,
}

impl Default for VerifyAllOptions {
    fn default() -> Self {
        VerifyAllOptions {
            sq15: Sq15Reading::Literal,
            grid: (-2..=2).map(|n| rat(n, 1)).collect(),
            grid_specializations: vec![rat(0, 1), rat(1, 1)],
        }
    }
}

fn first_failure(report: &Report) -> serde_json::Value {
    let first = report.entries().first();
    serde_json::json!({
        "failed_templates": report.failed_templates(),
        "entries": report.len(),
        "witness": first.map(|e| e.witness.clone()),
        "residual": first.and_then(|e| e.residual.as_ref().map(ToString::to_string)),
        "template": first.map(|e| e.template.clone()),
    })
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
    }
}

pub fn verify_algebra(
    id: &str,
    group: &str,
    b: &AlgebraBundle,
    expected: &Expected,
    sq15: Sq15Reading,
) -> Result<AlgebraResult> {
    let report = axioms::check_kind(b, sq15)?;
    let multiplicative = axioms::check_multiplicative(b)?.status();
    Ok(AlgebraResult {
        entry: id.to_string(),
        group: group.to_string(),
        kind: b.kind.to_string(),
        dimension: b.dim,
        parameters: b.parameters.clone(),
        expected: expected.clone(),
        report,
        multiplicative,
    })
}

fn options_for(op: &OperatorFile) -> VerifyOptions {
    VerifyOptions {
        strict_twist: false,
        imaginary_unit: op.imaginary_unit.clone(),
    }
}

pub fn verify_operator_entry(
    target_id: &str,
    b: &AlgebraBundle,
    entry: &OperatorEntry,
    op: &OperatorFile,
) -> Result<OperatorResult> {
    let ctx = OperatorContext::Algebra(b.clone());
    let report = operators::verify_operator(op.kind, &ctx, &op.matrix, &options_for(op))?;
    Ok(OperatorResult {
        entry: entry.id.clone(),
        kind: op.kind,
        target: target_id.to_string(),
        parameters: op.parameters.clone(),
        expected: entry.expected.clone(),
        report,
    })
}

/// Binds every declared parameter of `b` to `value`.
pub fn uniform_bindings(b: &AlgebraBundle, value: &Rational) -> Bindings {
    b.parameters.iter().map(|p| (p.clone(), value.clone())).collect()
}

fn bindings_label(bind: &Bindings) -> String {
    if bind.is_empty() {
        return "none".into();
    }
    bind.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Solves for averaging operators over the grid and records which listed
/// families contain each solution.
pub fn grid_check(
    target: &str,
    b: &AlgebraBundle,
    bind: &Bindings,
    families: &[(String, LinearMap)],
    grid: &[Rational],
) -> Result<GridResult> {
    let spec = bundle_specialize(b, bind)?;
    let sols = operators::solve_operators_grid(
        &OperatorContext::Algebra(spec),
        OperatorKind::AveragingQuadri,
        grid,
        &VerifyOptions::default(),
    )?;
    let mut solutions = Vec::new();
    for m in sols {
        let mut covering = Vec::new();
        for (id, fam) in families {
            if operators::family_membership(fam, &m)?.is_some() {
                covering.push(id.clone());
            }
        }
        solutions.push(GridSolution {
            matrix: m,
            families: covering,
        });
    }
    Ok(GridResult {
        target: target.to_string(),
        bindings: bind.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        grid: grid.iter().map(ToString::to_string).collect(),
        solutions,
    })
}

enum Job<'a> {
    Algebra(&'a AlgebraEntry, String, String),
    Operator(&'a OperatorEntry, String, String),
    Grid(String, String, Bindings),
}

enum Outcome {
    Algebra(AlgebraResult),
    Operator(OperatorResult),
    Grid(String, GridResult),
}

/// Verifies every entry; output is independent of scheduling.
pub fn verify_all(corpus: &Corpus, opts: &VerifyAllOptions) -> Result<CorpusReport> {
    let mut jobs = Vec::new();
    for a in &corpus.manifest.algebras {
        for (id, file) in a.instances() {
            jobs.push(Job::Algebra(a, id.clone(), file.clone()));
            if a.group == "classification" && id.starts_with("dim2.") {
                let b = corpus.load_instance(&file)?;
                for v in &opts.grid_specializations {
                    jobs.push(Job::Grid(id.clone(), file.clone(), uniform_bindings(&b, v)));
                }
            }
        }
    }
    for o in &corpus.manifest.operators {
        let target = corpus.algebra_entry(&o.target).expect("checked on open");
        for (id, file) in target.instances() {
            jobs.push(Job::Operator(o, id, file));
        }
    }
    let families_for = |target: &str| -> Result<Vec<(String, LinearMap)>> {
        corpus
            .manifest
            .operators
            .iter()
            .filter(|o| o.target == target)
            .map(|o| Ok((o.id.clone(), corpus.load_operator(o)?.matrix)))
            .collect()
    };
    let outcomes: Vec<Outcome> = jobs
        .par_iter()
        .map(|job| -> Result<Outcome> {
            match job {
                Job::Algebra(a, id, file) => {
                    let b = corpus.load_instance(file)?;
                    Ok(Outcome::Algebra(verify_algebra(
                        id,
                        &a.group,
                        &b,
                        &a.expected,
                        opts.sq15,
                    )?))
                }
                Job::Operator(o, target, file) => {
                    let b = corpus.load_instance(file)?;
                    let op = corpus.load_operator(o)?;
                    Ok(Outcome::Operator(verify_operator_entry(target, &b, o, &op)?))
                }
                Job::Grid(target, file, bind) => {
                    let b = corpus.load_instance(file)?;
                    let base = corpus
                        .manifest
                        .algebras
                        .iter()
                        .find(|a| a.instances().iter().any(|(i, _)| i == target))
                        .expect("instance");
                    let fams = families_for(&base.id)?;
                    let g = grid_check(target, &b, bind, &fams, &opts.grid)?;
                    Ok(Outcome::Grid(format!("{target}@{}", bindings_label(bind)), g))
                }
            }
        })
        .collect::<Result<_>>()?;

    let mut algebras = BTreeMap::new();
    let mut ops = BTreeMap::new();
    let mut grid = BTreeMap::new();
    for o in outcomes {
        match o {
            Outcome::Algebra(r) => {
                algebras.insert(r.entry.clone(), r);
            }
            Outcome::Operator(r) => {
                ops.insert(format!("{}@{}", r.entry, r.target), r);
            }
            Outcome::Grid(key, g) => {
                grid.insert(key, g);
            }
        }
    }

    let mut discrepancies = Vec::new();
    for (id, r) in &algebras {
        let found = r.report.status();
        if found != r.expected.verdict {
            discrepancies.push(Discrepancy {
                id: id.clone(),
                category: format!("{} axioms", r.kind),
                expected: status_str(r.expected.verdict).into(),
                found: status_str(found).into(),
                detail: first_failure(&r.report),
            });
        }
    }
    for (key, r) in &ops {
        let found = r.report.status();
        if found != r.expected.verdict {
            discrepancies.push(Discrepancy {
                id: key.clone(),
                category: format!("{} operator", r.kind),
                expected: status_str(r.expected.verdict).into(),
                found: status_str(found).into(),
                detail: first_failure(&r.report),
            });
        }
    }
    for (key, g) in &grid {
        let uncovered: Vec<&LinearMap> = g
            .solutions
            .iter()
            .filter(|s| s.families.is_empty())
            .map(|s| &s.matrix)
            .collect();
        if !uncovered.is_empty() {
            discrepancies.push(Discrepancy {
                id: key.clone(),
                category: "grid solution outside listed families".into(),
                expected: "every grid solution in a listed family".into(),
                found: format!("{} of {} solutions uncovered", uncovered.len(), g.solutions.len()),
                detail: serde_json::json!({
                    "uncovered": uncovered.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                }),
            });
        }
    }
    discrepancies.sort_by(|a, b| a.id.cmp(&b.id).then_with(|| a.category.cmp(&b.category)));

    let summary = Summary {
        algebra_instances: algebras.len(),
        algebra_passed: algebras.values().filter(|r| r.report.passed()).count(),
        operator_checks: ops.len(),
        operator_passed: ops.values().filter(|r| r.report.passed()).count(),
        grid_runs: grid.len(),
        grid_solutions: grid.values().map(|g| g.solutions.len()).sum(),
        discrepancies: discrepancies.len(),
    };
    Ok(CorpusReport {
        summary,
        algebras,
        operators: ops,
        grid,
        discrepancies,
    })
}

/// Markdown summary of every discrepancy.
pub fn discrepancies_markdown(report: &CorpusReport) -> String {
    let s = &report.summary;
    let mut out = String::from("# Discrepancies\n\n");
    out.push_str(&format!(
        "Generated by `homsplit corpus verify-all`. Algebra instances: {} ({} pass). \
         Operator checks: {} ({} pass). Grid runs: {} ({} solutions). Discrepancies: {}.\n\n",
        s.algebra_instances,
        s.algebra_passed,
        s.operator_checks,
        s.operator_passed,
        s.grid_runs,
        s.grid_solutions,
        s.discrepancies
    ));
    out.push_str(
        "A discrepancy is an entry whose computed verdict differs from the verdict asserted by the \
         source tables, or a grid solution not contained in any listed operator family. Witnesses are \
         1-based basis indices followed by the output coordinate; residuals are lhs - rhs.\n\n",
    );
    if report.discrepancies.is_empty() {
        out.push_str("No discrepancies.\n");
        return out;
    }
    out.push_str("| id | check | expected | found | first failing template | witness | residual |\n");
    out.push_str("|---|---|---|---|---|---|---|\n");
    for d in &report.discrepancies {
        let field = |k: &str| -> String {
            match d.detail.get(k) {
                Some(serde_json::Value::String(s)) => s.clone(),
                Some(serde_json::Value::Null) | None => String::new(),
                Some(v) => v.to_string(),
            }
        };
        let extra = if d.detail.get("uncovered").is_some() {
            field("uncovered")
        } else {
            field("residual")
        };
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | `{}` |\n",
            d.id,
            d.category,
            d.expected,
            d.found,
            field("template"),
            field("witness"),
            extra.replace('|', "\\|")
        ));
    }
    out
}
