//! Axiom checkers. Every check evaluates its templates over all basis
//! tuples and requires each residual to be the zero polynomial.

pub mod engine;
pub mod templates;

use crate::error::Result;
use crate::model::{ActionBundle, AlgebraBundle, Kind, LinearMap, RepresentationBundle};
use crate::report::Report;

pub use engine::{basis_tuples, chain_cross_check, identity, Context, Expr, Template};
pub use templates::Sq15Reading;

/// Evaluation context holding every op of the bundle under its own name
/// and the twist as `alpha`.
pub fn bundle_context(b: &AlgebraBundle) -> Context<'_> {
    let mut ctx = Context::new().space("D", b.dim).map("alpha", &b.twist);
    for (name, op) in &b.ops {
        ctx = ctx.op(name, op);
    }
    ctx
}

fn check_kind_templates(b: &AlgebraBundle, kind: Kind, templates: Vec<Template>) -> Result<Report> {
    b.require_kind(kind)?;
    bundle_context(b).check_all(&templates)
}

pub fn check_dendriform(b: &AlgebraBundle) -> Result<Report> {
    check_kind_templates(b, Kind::Dendriform, templates::dendriform())
}

pub fn check_associative(b: &AlgebraBundle) -> Result<Report> {
    check_kind_templates(b, Kind::Associative, templates::associative())
}

pub fn check_diassociative(b: &AlgebraBundle) -> Result<Report> {
    check_kind_templates(b, Kind::Diassociative, templates::diassociative())
}

pub fn check_quadri(b: &AlgebraBundle) -> Result<Report> {
    check_kind_templates(b, Kind::QuadriDendriform, templates::quadri())
}

pub fn check_triassociative(b: &AlgebraBundle) -> Result<Report> {
    check_kind_templates(b, Kind::Triassociative, templates::triassociative())
}

pub fn check_six(b: &AlgebraBundle, sq15: Sq15Reading) -> Result<Report> {
    check_kind_templates(b, Kind::SixDendriform, templates::six(sq15))
}

/// Dispatches on the bundle's kind.
pub fn check_kind(b: &AlgebraBundle, sq15: Sq15Reading) -> Result<Report> {
    match b.kind {
        Kind::Associative => check_associative(b),
        Kind::Dendriform => check_dendriform(b),
        Kind::Diassociative => check_diassociative(b),
        Kind::Triassociative => check_triassociative(b),
        Kind::QuadriDendriform => check_quadri(b),
        Kind::SixDendriform => check_six(b, sq15),
    }
}

fn representation_context(r: &RepresentationBundle) -> Result<Context<'_>> {
    let mut ctx = bundle_context(&r.base)
        .space("M", r.module_dim)
        .map("beta", &r.module_twist);
    for name in crate::model::ACTION_OPS {
        ctx = ctx.op(name, r.action(name)?);
    }
    Ok(ctx)
}

pub fn check_representation(r: &RepresentationBundle) -> Result<Report> {
    r.base.require_kind(Kind::Dendriform)?;
    representation_context(r)?.check_all(&templates::representation())
}

/// The representation conditions plus the nine cross equations.
pub fn check_action(a: &ActionBundle) -> Result<Report> {
    a.acting.require_kind(Kind::Dendriform)?;
    a.acted.require_kind(Kind::Dendriform)?;
    let rep = a.representation();
    let ctx = representation_context(&rep)?
        .op("prec2", a.acted.op("prec")?)
        .op("succ2", a.acted.op("succ")?);
    let mut all = templates::representation();
    all.extend(templates::action_cross());
    ctx.check_all(&all)
}

/// One template per op: `alpha(x o y) = alpha(x) o alpha(y)`.
pub fn check_multiplicative(b: &AlgebraBundle) -> Result<Report> {
    let ctx = bundle_context(b);
    let ts: Vec<Template> = b.ops.keys().map(|op| templates::multiplicative(op)).collect();
    ctx.check_all(&ts)
}

/// Per-op intertwining `T(x o y) = T(x) o' T(y)` and `T alpha = alpha' T`.
pub fn check_homomorphism(kind: Kind, t: &LinearMap, a: &AlgebraBundle, b: &AlgebraBundle) -> Result<Report> {
    a.require_kind(kind)?;
    b.require_kind(kind)?;
    check_morphism(
        t,
        a,
        b,
        &kind.required_ops().iter().map(|o| (*o, *o)).collect::<Vec<_>>(),
    )
}

/// Intertwining for an explicit correspondence of operations
/// `(op of a, op of b)`, plus the twist condition. Kinds are not compared.
pub fn check_morphism(t: &LinearMap, a: &AlgebraBundle, b: &AlgebraBundle, pairs: &[(&str, &str)]) -> Result<Report> {
    if t.rows() != b.dim || t.cols() != a.dim {
        return Err(crate::error::Error::DimensionMismatch(format!(
            "morphism is {}x{} between dims {} and {}",
            t.rows(),
            t.cols(),
            a.dim,
            b.dim
        )));
    }
    let target_names: Vec<(String, &str)> = pairs.iter().map(|(sa, sb)| (format!("tgt_{sa}"), *sb)).collect();
    let mut ctx = Context::new()
        .space("A", a.dim)
        .map("T", t)
        .map("alpha", &a.twist)
        .map("alpha_tgt", &b.twist);
    for (sa, _) in pairs {
        ctx = ctx.op(sa, a.op(sa)?);
    }
    for (name, sb) in &target_names {
        ctx = ctx.op(name, b.op(sb)?);
    }
    let mut ts: Vec<Template> = pairs.iter().map(|(sa, _)| templates::homomorphism(sa)).collect();
    ts.push(templates::homomorphism_twist());
    ctx.check_all(&ts)
}
