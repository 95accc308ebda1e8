//! Operator notions: averaging (associative), Rota-Baxter of weight zero
//! (diassociative), relative averaging and homomorphic relative averaging
//! (dendriform), and per-operation averaging on quadri-dendriform
//! algebras. Verification, equation extraction and a grid solver.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::axioms::{self, identity, Template};
use crate::error::{Error, Result};
use crate::linalg;
use crate::model::{ActionBundle, AlgebraBundle, Bindings, Kind, LinearMap, RepresentationBundle, Vector, QUADRI_OPS};
use crate::polyring::{Polynomial, Rational};
use crate::report::{Report, ReportEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    AveragingAssoc,
    RotaBaxter,
    RelativeAveraging,
    HomomorphicRelativeAveraging,
    AveragingQuadri,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 5] = [
        OperatorKind::AveragingAssoc,
        OperatorKind::RotaBaxter,
        OperatorKind::RelativeAveraging,
        OperatorKind::HomomorphicRelativeAveraging,
        OperatorKind::AveragingQuadri,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OperatorKind::AveragingAssoc => "averaging_assoc",
            OperatorKind::RotaBaxter => "rota_baxter",
            OperatorKind::RelativeAveraging => "relative_averaging",
            OperatorKind::HomomorphicRelativeAveraging => "homomorphic_relative_averaging",
            OperatorKind::AveragingQuadri => "averaging_quadri",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OperatorKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

/// What an operator acts on.
#[derive(Clone, Debug)]
pub enum OperatorContext {
    Algebra(AlgebraBundle),
    Representation(RepresentationBundle),
    Action(ActionBundle),
}

impl OperatorContext {
    pub fn parameters(&self) -> BTreeSet<String> {
        match self {
            OperatorContext::Algebra(b) => b.used_parameters(),
            OperatorContext::Representation(r) => {
                let mut s = r.base.used_parameters();
                s.extend(r.module_twist.parameters());
                for op in r.actions.values() {
                    s.extend(op.parameters());
                }
                s
            }
            OperatorContext::Action(a) => {
                let mut s = a.acting.used_parameters();
                s.extend(a.acted.used_parameters());
                for op in a.actions.values() {
                    s.extend(op.parameters());
                }
                s
            }
        }
    }

    /// `(rows, cols)` of an operator of this kind on this context.
    pub fn operator_shape(&self, kind: OperatorKind) -> Result<(usize, usize)> {
        match (kind, self) {
            (OperatorKind::AveragingAssoc, OperatorContext::Algebra(b)) => {
                b.require_kind(Kind::Associative)?;
                Ok((b.dim, b.dim))
            }
            (OperatorKind::RotaBaxter, OperatorContext::Algebra(b)) => {
                b.require_kind(Kind::Diassociative)?;
                Ok((b.dim, b.dim))
            }
            (OperatorKind::AveragingQuadri, OperatorContext::Algebra(b)) => {
                b.require_kind(Kind::QuadriDendriform)?;
                Ok((b.dim, b.dim))
            }
            (OperatorKind::RelativeAveraging, OperatorContext::Representation(r)) => Ok((r.base.dim, r.module_dim)),
            (OperatorKind::RelativeAveraging, OperatorContext::Action(a)) => Ok((a.acting.dim, a.acted.dim)),
            (OperatorKind::HomomorphicRelativeAveraging, OperatorContext::Action(a)) => Ok((a.acting.dim, a.acted.dim)),
            (k, _) => Err(Error::WrongKind {
                expected: format!("a context suitable for {k}"),
                found: self.describe().into(),
            }),
        }
    }

    fn describe(&self) -> &'static str {
        match self {
            OperatorContext::Algebra(_) => "algebra",
            OperatorContext::Representation(_) => "representation",
            OperatorContext::Action(_) => "action",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Also require `H alpha = alpha H` for averaging operators on
    /// associative algebras.
    pub strict_twist: bool,
    /// Parameter to be read as the imaginary unit (`i^2 = -1`).
    pub imaginary_unit: Option<String>,
}

fn twist_template(id: &str, name: &str, vars: &str, inner: &str, outer: &str) -> Template {
    identity(id, vars, &format!("{name}({inner}(x)) = {outer}({name}(x))"), &[])
        .expect("twist template")
        .remove(0)
}

fn averaging_chain(id: &str, map: &str, op: &str) -> Vec<Template> {
    identity(
        id,
        "x y : D",
        "H(x) o H(y) = H(x o H(y)) = H(H(x) o y)",
        &[("H", map), ("o", op)],
    )
    .expect("averaging template")
}

pub fn verify_averaging_assoc(a: &AlgebraBundle, h: &LinearMap) -> Result<Report> {
    verify_averaging_assoc_with(a, h, &VerifyOptions::default())
}

/// `H(x) mu H(y) = H(x mu H(y)) = H(H(x) mu y)`; twist commutation only
/// under `strict_twist`.
pub fn verify_averaging_assoc_with(a: &AlgebraBundle, h: &LinearMap, opts: &VerifyOptions) -> Result<Report> {
    a.require_kind(Kind::Associative)?;
    square_shape(h, a.dim)?;
    let ctx = axioms::bundle_context(a)
        .map("H", h)
        .imaginary_unit(opts.imaginary_unit.as_deref());
    let mut ts = averaging_chain("avg", "H", "mu");
    if opts.strict_twist {
        ts.push(twist_template("avg.twist", "H", "x : D", "alpha", "alpha"));
    }
    ctx.check_all(&ts)
}

pub fn verify_rota_baxter(d: &AlgebraBundle, r: &LinearMap) -> Result<Report> {
    verify_rota_baxter_with(d, r, &VerifyOptions::default())
}

/// `R alpha = alpha R` and `R(x) o R(y) = R(R(x) o y + x o R(y))` for both operations.
pub fn verify_rota_baxter_with(d: &AlgebraBundle, r: &LinearMap, opts: &VerifyOptions) -> Result<Report> {
    d.require_kind(Kind::Diassociative)?;
    square_shape(r, d.dim)?;
    let ctx = axioms::bundle_context(d)
        .map("R", r)
        .imaginary_unit(opts.imaginary_unit.as_deref());
    let mut ts = vec![twist_template("rb.twist", "R", "x : D", "alpha", "alpha")];
    for op in ["dashv", "vdash"] {
        ts.extend(
            identity(
                &format!("rb.{op}"),
                "x y : D",
                "R(x) o R(y) = R(R(x) o y + x o R(y))",
                &[("o", op)],
            )
            .expect("rota-baxter template"),
        );
    }
    ctx.check_all(&ts)
}

pub fn verify_relative_averaging(r: &RepresentationBundle, t: &LinearMap) -> Result<Report> {
    verify_relative_averaging_with(r, t, &VerifyOptions::default())
}

fn relative_templates() -> Vec<Template> {
    let mut ts = Vec::new();
    for flavor in ["prec", "succ"] {
        let l = format!("{flavor}_l");
        let r = format!("{flavor}_r");
        ts.extend(
            identity(
                &format!("ravg.{flavor}"),
                "u v : M",
                "T(u) o T(v) = T(T(u) ol v) = T(u or T(v))",
                &[("o", flavor), ("ol", &l), ("or", &r)],
            )
            .expect("relative averaging template"),
        );
    }
    ts.push(
        identity("ravg.twist", "u : M", "T(beta(u)) = alpha(T(u))", &[])
            .expect("twist template")
            .remove(0),
    );
    ts
}

/// `T(u) o T(v) = T(T(u) o_l v) = T(u o_r T(v))` for `o` in `{prec, succ}`,
/// and `T beta = alpha T`.
pub fn verify_relative_averaging_with(r: &RepresentationBundle, t: &LinearMap, opts: &VerifyOptions) -> Result<Report> {
    if t.rows() != r.base.dim || t.cols() != r.module_dim {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, expected {}x{}",
            t.rows(),
            t.cols(),
            r.base.dim,
            r.module_dim
        )));
    }
    let mut ctx = axioms::bundle_context(&r.base)
        .space("M", r.module_dim)
        .map("beta", &r.module_twist)
        .map("T", t)
        .imaginary_unit(opts.imaginary_unit.as_deref());
    for name in crate::model::ACTION_OPS {
        ctx = ctx.op(name, r.action(name)?);
    }
    ctx.check_all(&relative_templates())
}

pub fn verify_homomorphic_relative_averaging(a: &ActionBundle, t: &LinearMap) -> Result<Report> {
    verify_homomorphic_relative_averaging_with(a, t, &VerifyOptions::default())
}

/// Relative averaging for the action's representation together with the
/// dendriform homomorphism conditions `acted -> acting`.
pub fn verify_homomorphic_relative_averaging_with(
    a: &ActionBundle,
    t: &LinearMap,
    opts: &VerifyOptions,
) -> Result<Report> {
    let mut report = verify_relative_averaging_with(&a.representation(), t, opts)?;
    let hom = axioms::check_homomorphism(Kind::Dendriform, t, &a.acted, &a.acting)?;
    let hom = reduce_report(hom, opts);
    report.merge(hom);
    Ok(report)
}

fn reduce_report(r: Report, opts: &VerifyOptions) -> Report {
    let Some(i) = &opts.imaginary_unit else {
        return r;
    };
    Report::from_entries(
        r.entries()
            .iter()
            .filter_map(|e| match &e.residual {
                Some(p) => {
                    let q = p.reduce_imaginary(i);
                    (!q.is_zero()).then(|| ReportEntry::residual(e.template.clone(), e.witness.clone(), q))
                }
                None => Some(e.clone()),
            })
            .collect(),
    )
}

pub fn verify_averaging_quadri(q: &AlgebraBundle, h: &LinearMap) -> Result<Report> {
    verify_averaging_quadri_with(q, h, &VerifyOptions::default())
}

/// `H alpha = alpha H` and, for each of the four operations,
/// `H(x) o H(y) = H(H(x) o y) = H(x o H(y))`.
pub fn verify_averaging_quadri_with(q: &AlgebraBundle, h: &LinearMap, opts: &VerifyOptions) -> Result<Report> {
    q.require_kind(Kind::QuadriDendriform)?;
    square_shape(h, q.dim)?;
    let ctx = axioms::bundle_context(q)
        .map("H", h)
        .imaginary_unit(opts.imaginary_unit.as_deref());
    let mut ts = vec![twist_template("avgq.twist", "H", "x : D", "alpha", "alpha")];
    for op in QUADRI_OPS {
        ts.extend(
            identity(
                &format!("avgq.{op}"),
                "x y : D",
                "H(x) o H(y) = H(H(x) o y) = H(x o H(y))",
                &[("o", op)],
            )
            .expect("averaging template"),
        );
    }
    ctx.check_all(&ts)
}

fn square_shape(m: &LinearMap, n: usize) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{} on a dim-{n} algebra",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Dispatches to the verifier for `kind`.
pub fn verify_operator(
    kind: OperatorKind,
    ctx: &OperatorContext,
    t: &LinearMap,
    opts: &VerifyOptions,
) -> Result<Report> {
    ctx.operator_shape(kind)?;
    match (kind, ctx) {
        (OperatorKind::AveragingAssoc, OperatorContext::Algebra(b)) => verify_averaging_assoc_with(b, t, opts),
        (OperatorKind::RotaBaxter, OperatorContext::Algebra(b)) => verify_rota_baxter_with(b, t, opts),
        (OperatorKind::AveragingQuadri, OperatorContext::Algebra(b)) => verify_averaging_quadri_with(b, t, opts),
        (OperatorKind::RelativeAveraging, OperatorContext::Representation(r)) => {
            verify_relative_averaging_with(r, t, opts)
        }
        (OperatorKind::RelativeAveraging, OperatorContext::Action(a)) => {
            verify_relative_averaging_with(&a.representation(), t, opts)
        }
        (OperatorKind::HomomorphicRelativeAveraging, OperatorContext::Action(a)) => {
            verify_homomorphic_relative_averaging_with(a, t, opts)
        }
        _ => unreachable!("operator_shape rejects other combinations"),
    }
}

/// Which graph to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphDirection {
    /// Container `D + V` with `dim D = base_dim`, map `T: V -> D`,
    /// graph `{(T u, u)}`.
    ModuleToBase { base_dim: usize },
    /// Container `A + B` with `dim A = source_dim`, map `xi: A -> B`,
    /// graph `{(x, xi x)}`.
    SourceToTarget { source_dim: usize },
}

/// Closure of the graph of `map` under every container operation and the
/// container twist. Residuals measure the distance from the graph.
pub fn graph_is_subalgebra(container: &AlgebraBundle, map: &LinearMap, direction: GraphDirection) -> Result<Report> {
    let n = container.dim;
    let (param_dim, split) = match direction {
        GraphDirection::ModuleToBase { base_dim } => (map.cols(), base_dim),
        GraphDirection::SourceToTarget { source_dim } => (map.cols(), source_dim),
    };
    let expected_rows = match direction {
        GraphDirection::ModuleToBase { base_dim } => base_dim,
        GraphDirection::SourceToTarget { source_dim } => n - source_dim,
    };
    let consistent = match direction {
        GraphDirection::ModuleToBase { base_dim } => base_dim + param_dim == n,
        GraphDirection::SourceToTarget { source_dim } => source_dim == param_dim && source_dim <= n,
    };
    if !consistent || map.rows() != expected_rows {
        return Err(Error::DimensionMismatch(format!(
            "graph map {}x{} does not fit a dim-{n} container",
            map.rows(),
            map.cols()
        )));
    }
    let embed = |u: &Vector| -> Result<Vector> {
        Ok(match direction {
            GraphDirection::ModuleToBase { .. } => map.apply(u)?.concat(u),
            GraphDirection::SourceToTarget { .. } => u.concat(&map.apply(u)?),
        })
    };
    // Distance of z from the graph, zero iff z lies on it.
    let defect = |z: &Vector| -> Result<Vector> {
        let (a, b) = z.split(split);
        match direction {
            GraphDirection::ModuleToBase { .. } => a.sub(&map.apply(&b)?),
            GraphDirection::SourceToTarget { .. } => b.sub(&map.apply(&a)?),
        }
    };
    let mut entries = Vec::new();
    let push = |entries: &mut Vec<ReportEntry>, id: String, w: Vec<usize>, d: Vector| {
        for (k, c) in d.0.into_iter().enumerate() {
            if !c.is_zero() {
                let mut w = w.clone();
                w.push(k + 1);
                entries.push(ReportEntry::residual(id.clone(), w, c));
            }
        }
    };
    for (name, op) in &container.ops {
        for i in 1..=param_dim {
            let gi = embed(&Vector::basis(param_dim, i))?;
            for j in 1..=param_dim {
                let gj = embed(&Vector::basis(param_dim, j))?;
                let z = op.apply(&gi, &gj)?;
                push(&mut entries, format!("graph.{name}"), vec![i, j], defect(&z)?);
            }
        }
    }
    for i in 1..=param_dim {
        let z = container.twist.apply(&embed(&Vector::basis(param_dim, i))?)?;
        push(&mut entries, "graph.twist".into(), vec![i], defect(&z)?);
    }
    Ok(Report::from_entries(entries))
}

/// Name of the unknown in row `i`, column `j` (1-based).
pub fn unknown_name(prefix: &str, i: usize, j: usize, rows: usize, cols: usize) -> String {
    if rows < 10 && cols < 10 {
        format!("{prefix}{i}{j}")
    } else {
        format!("{prefix}_{i}_{j}")
    }
}

/// The fully symbolic operator matrix with unknown entries.
pub fn unknown_matrix(prefix: &str, rows: usize, cols: usize) -> LinearMap {
    LinearMap::from_rows(
        (1..=rows)
            .map(|i| {
                (1..=cols)
                    .map(|j| Polynomial::var(&unknown_name(prefix, i, j, rows, cols)))
                    .collect()
            })
            .collect(),
    )
    .expect("rectangular")
}

/// Scales a nonzero polynomial so its leading coefficient is 1.
fn monic(p: &Polynomial) -> Polynomial {
    match p.terms().first() {
        Some((_, c)) => p.scale(&(Rational::from_integer(1.into()) / c)),
        None => p.clone(),
    }
}

/// Polynomial equations in the unknown matrix entries whose common zero
/// set is the operator variety. Monic, deduplicated, ordered by degree
/// and then text.
pub fn emit_operator_system(
    ctx: &OperatorContext,
    kind: OperatorKind,
    prefix: &str,
    opts: &VerifyOptions,
) -> Result<Vec<Polynomial>> {
    let (rows, cols) = ctx.operator_shape(kind)?;
    let params = ctx.parameters();
    for i in 1..=rows {
        for j in 1..=cols {
            let name = unknown_name(prefix, i, j, rows, cols);
            if params.contains(&name) {
                return Err(Error::NameCollision(name));
            }
        }
    }
    let t = unknown_matrix(prefix, rows, cols);
    let report = verify_operator(kind, ctx, &t, opts)?;
    let mut eqs: Vec<Polynomial> = report
        .entries()
        .iter()
        .filter_map(|e| e.residual.as_ref().map(monic))
        .collect();
    eqs.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    eqs.dedup();
    Ok(eqs)
}

/// Lexicographic comparison on row-major rational entries.
fn cmp_matrices(a: &[Rational], b: &[Rational]) -> std::cmp::Ordering {
    a.cmp(b)
}

pub const MAX_CANDIDATES: u128 = 20_000_000;

/// Every operator whose free coordinates (after exact elimination of the
/// linear equations) lie in `grid`, sorted lexicographically.
pub fn solve_operators_grid(
    ctx: &OperatorContext,
    kind: OperatorKind,
    grid: &[Rational],
    opts: &VerifyOptions,
) -> Result<Vec<LinearMap>> {
    let (rows, cols) = ctx.operator_shape(kind)?;
    if rows > 3 || cols > 3 {
        return Err(Error::TooLarge(rows.max(cols)));
    }
    let used = ctx.parameters();
    let foreign: Vec<String> = used
        .into_iter()
        .filter(|p| Some(p.as_str()) != opts.imaginary_unit.as_deref())
        .collect();
    if !foreign.is_empty() {
        return Err(Error::FreeParameters(foreign));
    }
    let prefix = "theta";
    let eqs = emit_operator_system(ctx, kind, prefix, opts)?;
    let names: Vec<String> = (1..=rows)
        .flat_map(|i| (1..=cols).map(move |j| unknown_name(prefix, i, j, rows, cols)))
        .collect();
    let nvars = names.len();
    let (linear, nonlinear): (Vec<&Polynomial>, Vec<&Polynomial>) = eqs.iter().partition(|p| p.total_degree() <= 1);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for p in &linear {
        let mut row = vec![Rational::from_integer(0.into()); nvars];
        let mut constant = Rational::from_integer(0.into());
        for (m, c) in p.terms() {
            if m.is_one() {
                constant = c.clone();
            } else {
                let (name, _) = m.factors().next().expect("degree one");
                let idx = names.iter().position(|n| n == name).expect("unknown");
                row[idx] = c.clone();
            }
        }
        a.push(row);
        b.push(-constant);
    }
    let Some((x0, _)) = linalg::solve_affine(&a, &b, nvars) else {
        return Ok(Vec::new());
    };
    let (red, pivots) = linalg::rref(&a, nvars);
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    let total = (grid.len() as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
    if total > MAX_CANDIDATES {
        return Err(Error::SearchSpace(format!("{total} candidates")));
    }
    let candidate = |mut idx: u128| -> Vec<Rational> {
        let mut x = x0.clone();
        for &f in &free {
            let g = (idx % grid.len() as u128) as usize;
            idx /= grid.len() as u128;
            x[f] = grid[g].clone();
        }
        // Pivot columns: x_p = x0_p - sum over free f of red[p][f] * x_f.
        for (row, &pc) in red.iter().zip(&pivots) {
            let mut v = x0[pc].clone();
            for &f in &free {
                v -= &row[f] * &x[f];
            }
            x[pc] = v;
        }
        x
    };
    let imaginary = opts.imaginary_unit.clone();
    let mut found: Vec<Vec<Rational>> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let x = candidate(idx);
            let bind: Bindings = names.iter().cloned().zip(x.iter().cloned()).collect();
            let ok = nonlinear.iter().all(|p| {
                let s = p.specialize(&bind);
                match &imaginary {
                    Some(i) => s.reduce_imaginary(i).is_zero(),
                    None => s.is_zero(),
                }
            });
            ok.then_some(x)
        })
        .collect();
    found.sort_by(|a, b| cmp_matrices(a, b));
    found.dedup();
    Ok(found
        .into_iter()
        .map(|x| {
            let m: Vec<Vec<Rational>> = x.chunks(cols).map(<[Rational]>::to_vec).collect();
            linalg::from_rational(&m)
        })
        .collect())
}

/// Parameter values placing `m` in the matrix family, if any. Families
/// must be affine in their parameters.
pub fn family_membership(family: &LinearMap, m: &LinearMap) -> Result<Option<Bindings>> {
    if (family.rows(), family.cols()) != (m.rows(), m.cols()) {
        return Err(Error::DimensionMismatch("family and matrix shapes differ".into()));
    }
    let names: Vec<String> = family.parameters().into_iter().collect();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 1..=m.rows() {
        for j in 1..=m.cols() {
            let diff = family.get(i, j) - m.get(i, j);
            if diff.total_degree() > 1 {
                return Err(Error::Template(format!(
                    "family entry {} is not affine",
                    family.get(i, j)
                )));
            }
            let mut row = vec![Rational::from_integer(0.into()); names.len()];
            let mut constant = Rational::from_integer(0.into());
            for (mono, c) in diff.terms() {
                if mono.is_one() {
                    constant = c.clone();
                } else {
                    let (name, _) = mono.factors().next().expect("degree one");
                    let idx = names.iter().position(|n| n == name).expect("parameter");
                    row[idx] = c.clone();
                }
            }
            a.push(row);
            b.push(-constant);
        }
    }
    Ok(linalg::solve_affine(&a, &b, names.len()).map(|(x, _)| names.into_iter().zip(x).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BilinearOp;
    use crate::polyring::{int, parse};

    fn p(s: &str) -> Polynomial {
        parse(s).unwrap()
    }

    fn unit_assoc() -> AlgebraBundle {
        AlgebraBundle::new(
            Kind::Associative,
            LinearMap::identity(1),
            vec![("mu", BilinearOp::from_entries(1, [(1, 1, 1, p("1"))]))],
        )
    }

    #[test]
    fn scalar_averaging_on_one_dim() {
        let a = unit_assoc();
        for c in [0, 1, 2, -3] {
            let h = LinearMap::scalar(1, Polynomial::from_int(c));
            assert!(verify_averaging_assoc(&a, &h).unwrap().passed(), "c = {c}");
        }
        let sys = emit_operator_system(
            &OperatorContext::Algebra(a),
            OperatorKind::AveragingAssoc,
            "theta",
            &VerifyOptions::default(),
        )
        .unwrap();
        assert!(sys.is_empty());
    }

    #[test]
    fn zero_algebra_grid_is_commutant() {
        let alpha = LinearMap::from_ints(&[&[1, 1], &[0, 1]]);
        let q = AlgebraBundle::zero(Kind::QuadriDendriform, 2, alpha.clone());
        let grid: Vec<Rational> = (-1..=1).map(int).collect();
        let sols = solve_operators_grid(
            &OperatorContext::Algebra(q),
            OperatorKind::AveragingQuadri,
            &grid,
            &VerifyOptions::default(),
        )
        .unwrap();
        // Commutant of a Jordan block: [[s, t], [0, s]].
        assert_eq!(sols.len(), 9);
        for s in &sols {
            assert_eq!(s.compose(&alpha).unwrap(), alpha.compose(s).unwrap());
        }
    }

    #[test]
    fn membership_solves_affine_families() {
        let fam = LinearMap::from_rows(vec![vec![p("t11"), p("0")], vec![p("t21"), p("t11")]]).unwrap();
        let m = LinearMap::from_ints(&[&[2, 0], &[5, 2]]);
        let b = family_membership(&fam, &m).unwrap().unwrap();
        assert_eq!(b["t21"], int(5));
        let bad = LinearMap::from_ints(&[&[2, 0], &[5, 3]]);
        assert!(family_membership(&fam, &bad).unwrap().is_none());
    }

    #[test]
    fn name_collision() {
        let q = AlgebraBundle::new(
            Kind::QuadriDendriform,
            LinearMap::scalar(1, p("theta11")),
            QUADRI_OPS.iter().map(|n| (*n, BilinearOp::square(1))).collect(),
        );
        let r = emit_operator_system(
            &OperatorContext::Algebra(q),
            OperatorKind::AveragingQuadri,
            "theta",
            &VerifyOptions::default(),
        );
        assert!(matches!(r, Err(Error::NameCollision(_))));
    }
}
