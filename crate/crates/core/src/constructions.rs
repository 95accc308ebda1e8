//! Structure-producing procedures: sum-splittings, products, the quotient
//! by the ideal `I_D`, and operator-induced algebras.
//!
//! Builders never check their preconditions; [`preconditions`] returns the
//! report a caller should inspect before trusting an output.

use num_traits::Zero;

use crate::axioms::{self, Sq15Reading};
use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::model::{ActionBundle, AlgebraBundle, BilinearOp, Kind, LinearMap, RepresentationBundle, Vector};
use crate::polyring::{Polynomial, Rational};
use crate::report::{Report, ReportEntry};

fn sum_ops(b: &AlgebraBundle, x: &str, y: &str) -> Result<BilinearOp> {
    b.op(x)?.sum(b.op(y)?)
}

/// `vdash = prec_vdash + succ_vdash`, `dashv = prec_dashv + succ_dashv`.
pub fn quadri_to_diassociative(b: &AlgebraBundle) -> Result<AlgebraBundle> {
    b.require_kind(Kind::QuadriDendriform)?;
    Ok(b.with_ops(
        Kind::Diassociative,
        vec![
            ("dashv", sum_ops(b, "prec_dashv", "succ_dashv")?),
            ("vdash", sum_ops(b, "prec_vdash", "succ_vdash")?),
        ],
    ))
}

/// Adds `perp = prec_perp + succ_perp` to the diassociative sums.
pub fn six_to_triassociative(b: &AlgebraBundle) -> Result<AlgebraBundle> {
    b.require_kind(Kind::SixDendriform)?;
    Ok(b.with_ops(
        Kind::Triassociative,
        vec![
            ("dashv", sum_ops(b, "prec_dashv", "succ_dashv")?),
            ("vdash", sum_ops(b, "prec_vdash", "succ_vdash")?),
            ("perp", sum_ops(b, "prec_perp", "succ_perp")?),
        ],
    ))
}

/// The four quadri operations of a six-dendriform bundle.
pub fn six_quadri_part(b: &AlgebraBundle) -> Result<AlgebraBundle> {
    b.require_kind(Kind::SixDendriform)?;
    let ops = crate::model::QUADRI_OPS
        .iter()
        .map(|n| Ok((*n, b.op(n)?.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(b.with_ops(Kind::QuadriDendriform, ops))
}

/// `(D, prec_perp, succ_perp, alpha)` as a dendriform bundle.
pub fn six_perp_part(b: &AlgebraBundle) -> Result<AlgebraBundle> {
    b.require_kind(Kind::SixDendriform)?;
    Ok(b.with_ops(
        Kind::Dendriform,
        vec![
            ("prec", b.op("prec_perp")?.clone()),
            ("succ", b.op("succ_perp")?.clone()),
        ],
    ))
}

/// Block-diagonal sum of two bundles of the same kind.
pub fn direct_sum(a: &AlgebraBundle, b: &AlgebraBundle) -> Result<AlgebraBundle> {
    if a.kind != b.kind {
        return Err(Error::WrongKind {
            expected: a.kind.to_string(),
            found: b.kind.to_string(),
        });
    }
    let (n, m) = (a.dim, b.dim);
    let mut ops = Vec::new();
    for name in a.kind.required_ops() {
        let (oa, ob) = (a.op(name)?, b.op(name)?);
        let mut op = BilinearOp::square(n + m);
        for (&(i, j, k), c) in oa.entries() {
            op.set(i, j, k, c.clone());
        }
        for (&(i, j, k), c) in ob.entries() {
            op.set(i + n, j + n, k + n, c.clone());
        }
        ops.push((*name, op));
    }
    let mut out = AlgebraBundle::new(a.kind, a.twist.direct_sum(&b.twist), ops);
    let mut params: Vec<String> = a.parameters.iter().chain(&b.parameters).cloned().collect();
    params.sort();
    params.dedup();
    out.parameters = params;
    Ok(out)
}

pub fn direct_sum_quadri(a: &AlgebraBundle, b: &AlgebraBundle) -> Result<AlgebraBundle> {
    a.require_kind(Kind::QuadriDendriform)?;
    b.require_kind(Kind::QuadriDendriform)?;
    direct_sum(a, b)
}

fn with_declared(mut out: AlgebraBundle, sources: &[&[String]]) -> AlgebraBundle {
    let mut params: Vec<String> = sources.iter().flat_map(|s| s.iter().cloned()).collect();
    params.extend(out.used_parameters());
    params.sort();
    params.dedup();
    out.parameters = params;
    out
}

/// Quadri structure on `D + V`:
/// `(x,u) prec_vdash (y,v) = (x prec y, x prec_l v)`,
/// `(x,u) prec_dashv (y,v) = (x prec y, u prec_r y)`, and likewise for `succ`.
pub fn hemi_semidirect(r: &RepresentationBundle) -> Result<AlgebraBundle> {
    let d = &r.base;
    let (n, m) = (d.dim, r.module_dim);
    let mk = |base: &str, action: &str, left: bool| -> Result<BilinearOp> {
        let bop = d.op(base)?;
        let act = r.action(action)?;
        BilinearOp::tabulate(n + m, n + m, n + m, |p, q| {
            let (x, u) = p.split(n);
            let (y, v) = q.split(n);
            let first = bop.apply(&x, &y)?;
            let second = if left { act.apply(&x, &v)? } else { act.apply(&u, &y)? };
            Ok(first.concat(&second))
        })
    };
    let ops = vec![
        ("prec_vdash", mk("prec", "prec_l", true)?),
        ("prec_dashv", mk("prec", "prec_r", false)?),
        ("succ_vdash", mk("succ", "succ_l", true)?),
        ("succ_dashv", mk("succ", "succ_r", false)?),
    ];
    let out = AlgebraBundle::new(Kind::QuadriDendriform, d.twist.direct_sum(&r.module_twist), ops);
    Ok(with_declared(out, &[&d.parameters]))
}

/// Dendriform structure on `D + D'`:
/// `(x,u) prec (y,v) = (x prec y, x prec_l v + u prec_r y + u prec' v)`.
pub fn semidirect_dendriform(a: &ActionBundle) -> Result<AlgebraBundle> {
    let (n, m) = (a.acting.dim, a.acted.dim);
    let mk = |flavor: &str| -> Result<BilinearOp> {
        let base = a.acting.op(flavor)?;
        let acted = a.acted.op(flavor)?;
        let l = &a.actions[&format!("{flavor}_l")];
        let r = &a.actions[&format!("{flavor}_r")];
        BilinearOp::tabulate(n + m, n + m, n + m, |p, q| {
            let (x, u) = p.split(n);
            let (y, v) = q.split(n);
            let second = l.apply(&x, &v)?.add(&r.apply(&u, &y)?)?.add(&acted.apply(&u, &v)?)?;
            Ok(base.apply(&x, &y)?.concat(&second))
        })
    };
    let ops = vec![("prec", mk("prec")?), ("succ", mk("succ")?)];
    let out = AlgebraBundle::new(Kind::Dendriform, a.acting.twist.direct_sum(&a.acted.twist), ops);
    Ok(with_declared(out, &[&a.acting.parameters, &a.acted.parameters]))
}

/// Parameter-free subspace in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub basis: RatMatrix,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        let (basis, pivots) = linalg::rref(vectors, ambient_dim);
        Subspace {
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Reduces `v` modulo the subspace; the result vanishes on pivot columns.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if out[pc].is_zero() {
                continue;
            }
            let f = out[pc].clone();
            for (o, r) in out.iter_mut().zip(row) {
                *o -= &f * r;
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Standard basis indices (0-based) outside the pivot set.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|c| !self.pivots.contains(c)).collect()
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis
            .iter()
            .map(|r| Vector(r.iter().cloned().map(Polynomial::constant).collect()))
            .collect()
    }
}

/// `I_D = span{e_i pd e_j - e_i pv e_j, e_i sd e_j - e_i sv e_j}`.
pub fn ideal_id(b: &AlgebraBundle) -> Result<Subspace> {
    if b.kind != Kind::QuadriDendriform && b.kind != Kind::SixDendriform {
        return Err(Error::WrongKind {
            expected: Kind::QuadriDendriform.to_string(),
            found: b.kind.to_string(),
        });
    }
    b.require_parameter_free()?;
    let n = b.dim;
    let mut gens = Vec::new();
    for (dashv, vdash) in [("prec_dashv", "prec_vdash"), ("succ_dashv", "succ_vdash")] {
        let (d, v) = (b.op(dashv)?, b.op(vdash)?);
        for i in 1..=n {
            for j in 1..=n {
                let diff = d.row(i, j).sub(&v.row(i, j))?;
                gens.push(linalg::vector_to_rational(&diff)?);
            }
        }
    }
    Ok(Subspace::span(n, &gens))
}

/// The dendriform quotient `D / I_D` with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ideal: Subspace,
    /// 0-based indices of the standard basis vectors that represent the quotient basis.
    pub complement: Vec<usize>,
    pub algebra: AlgebraBundle,
    /// The quotient map `D -> D / I_D` in complement coordinates.
    pub projection: LinearMap,
}

fn projection_matrix(ideal: &Subspace) -> LinearMap {
    let comp = ideal.complement();
    let n = ideal.ambient_dim;
    let mut m = LinearMap::zero(comp.len(), n);
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::from_integer(1.into());
        let r = ideal.reduce(&e);
        for (a, &c) in comp.iter().enumerate() {
            m.set(a + 1, j + 1, Polynomial::constant(r[c].clone()));
        }
    }
    m
}

/// Closure of `I_D` under the four operations from both sides and under
/// the twist, plus agreement of the two flavors of representatives.
pub fn ideal_closure_report(b: &AlgebraBundle, ideal: &Subspace) -> Result<Report> {
    let n = b.dim;
    let mut entries = Vec::new();
    let residue = |v: &Vector, template: String, witness: Vec<usize>, entries: &mut Vec<ReportEntry>| -> Result<()> {
        let r = ideal.reduce(&linalg::vector_to_rational(v)?);
        for (k, c) in r.into_iter().enumerate() {
            if !c.is_zero() {
                let mut w = witness.clone();
                w.push(k + 1);
                entries.push(ReportEntry::residual(template.clone(), w, Polynomial::constant(c)));
            }
        }
        Ok(())
    };
    let gens = ideal.basis_vectors();
    for name in crate::model::QUADRI_OPS {
        let op = b.op(name)?;
        for (g, gv) in gens.iter().enumerate() {
            for j in 1..=n {
                let e = Vector::basis(n, j);
                residue(
                    &op.apply(gv, &e)?,
                    format!("ideal.right.{name}"),
                    vec![g + 1, j],
                    &mut entries,
                )?;
                residue(
                    &op.apply(&e, gv)?,
                    format!("ideal.left.{name}"),
                    vec![j, g + 1],
                    &mut entries,
                )?;
            }
        }
    }
    for (g, gv) in gens.iter().enumerate() {
        residue(&b.twist.apply(gv)?, "ideal.alpha".into(), vec![g + 1], &mut entries)?;
    }
    for (dashv, vdash, tag) in [
        ("prec_dashv", "prec_vdash", "prec"),
        ("succ_dashv", "succ_vdash", "succ"),
    ] {
        let (d, v) = (b.op(dashv)?, b.op(vdash)?);
        for i in 1..=n {
            for j in 1..=n {
                let diff = d.row(i, j).sub(&v.row(i, j))?;
                residue(&diff, format!("quotient.agree.{tag}"), vec![i, j], &mut entries)?;
            }
        }
    }
    Ok(Report::from_entries(entries))
}

/// Builds `D / I_D` on the complement basis using the `vdash`-flavored
/// representatives. Refuses with [`Error::Closure`] when `I_D` is not
/// stable.
pub fn quotient_dendriform(b: &AlgebraBundle) -> Result<Quotient> {
    let ideal = ideal_id(b)?;
    let closure = ideal_closure_report(b, &ideal)?;
    if !closure.passed() {
        return Err(Error::Closure(closure));
    }
    build_quotient(b, ideal)
}

/// Builds the quotient tables even when `I_D` is not stable; the result
/// then depends on the choice of representatives.
pub fn quotient_dendriform_unchecked(b: &AlgebraBundle) -> Result<Quotient> {
    build_quotient(b, ideal_id(b)?)
}

fn build_quotient(b: &AlgebraBundle, ideal: Subspace) -> Result<Quotient> {
    let comp = ideal.complement();
    let q = comp.len();
    let proj = projection_matrix(&ideal);
    let lift = |a: usize| Vector::basis(b.dim, comp[a - 1] + 1);
    let mk = |name: &str| -> Result<BilinearOp> {
        let op = b.op(name)?;
        BilinearOp::tabulate(q, q, q, |x, y| {
            let (i, j) = (pos(x), pos(y));
            proj.apply(&op.apply(&lift(i), &lift(j))?)
        })
    };
    let ops = vec![("prec", mk("prec_vdash")?), ("succ", mk("succ_vdash")?)];
    let mut alpha = LinearMap::zero(q, q);
    for a in 1..=q {
        let img = proj.apply(&b.twist.apply(&lift(a))?)?;
        for (k, c) in img.0.into_iter().enumerate() {
            alpha.set(k + 1, a, c);
        }
    }
    let algebra = AlgebraBundle::new(Kind::Dendriform, alpha, ops);
    Ok(Quotient {
        ideal,
        complement: comp,
        algebra,
        projection: proj,
    })
}

/// 1-based position of the single nonzero coordinate of a basis vector.
fn pos(v: &Vector) -> usize {
    v.0.iter().position(|c| !c.is_zero()).map_or(0, |p| p + 1)
}

/// Representation of `D / I_D` on `D` from lifts:
/// `x prec_l y = x prec_vdash y`, `y prec_r x = y prec_dashv x`, etc.
/// Returns the representation and the quotient map `T: D -> D / I_D`.
pub fn embedding_representation(b: &AlgebraBundle, quotient: &Quotient) -> Result<(RepresentationBundle, LinearMap)> {
    let n = b.dim;
    let q = quotient.complement.len();
    let lift = |a: usize| Vector::basis(n, quotient.complement[a - 1] + 1);
    let left = |name: &str| -> Result<BilinearOp> {
        let op = b.op(name)?;
        BilinearOp::tabulate(q, n, n, |x, y| op.apply(&lift(pos(x)), y))
    };
    let right = |name: &str| -> Result<BilinearOp> {
        let op = b.op(name)?;
        BilinearOp::tabulate(n, q, n, |y, x| op.apply(y, &lift(pos(x))))
    };
    let rep = RepresentationBundle::new(
        quotient.algebra.clone(),
        b.twist.clone(),
        left("prec_vdash")?,
        left("succ_vdash")?,
        right("prec_dashv")?,
        right("succ_dashv")?,
    )?;
    Ok((rep, quotient.projection.clone()))
}

/// For a six-dendriform bundle: the action of `D / I_D` on
/// `D_perp = (D, prec_perp, succ_perp, alpha)` and the quotient map.
pub fn embedding_action(b: &AlgebraBundle) -> Result<(ActionBundle, LinearMap)> {
    b.require_kind(Kind::SixDendriform)?;
    let quotient = quotient_dendriform(b)?;
    let (rep, t) = embedding_representation(b, &quotient)?;
    let acted = six_perp_part(b)?;
    Ok((ActionBundle::from_representation(rep, acted)?, t))
}

/// `a dashv b = mu(a, H b)`, `a vdash b = mu(H a, b)`.
pub fn averaging_induced_diassociative(a: &AlgebraBundle, h: &LinearMap) -> Result<AlgebraBundle> {
    a.require_kind(Kind::Associative)?;
    let n = a.dim;
    let mu = a.op("mu")?;
    let dashv = BilinearOp::tabulate(n, n, n, |x, y| mu.apply(x, &h.apply(y)?))?;
    let vdash = BilinearOp::tabulate(n, n, n, |x, y| mu.apply(&h.apply(x)?, y))?;
    let out = AlgebraBundle::new(
        Kind::Diassociative,
        a.twist.clone(),
        vec![("dashv", dashv), ("vdash", vdash)],
    );
    Ok(with_declared(out, &[&a.parameters]))
}

/// `x dashv' y = R(x) dashv y + x dashv R(y)` and likewise for `vdash`.
pub fn rota_baxter_induced(d: &AlgebraBundle, r: &LinearMap) -> Result<AlgebraBundle> {
    d.require_kind(Kind::Diassociative)?;
    let n = d.dim;
    let mk = |name: &str| -> Result<BilinearOp> {
        let op = d.op(name)?;
        BilinearOp::tabulate(n, n, n, |x, y| {
            op.apply(&r.apply(x)?, y)?.add(&op.apply(x, &r.apply(y)?)?)
        })
    };
    let out = AlgebraBundle::new(
        Kind::Diassociative,
        d.twist.clone(),
        vec![("dashv", mk("dashv")?), ("vdash", mk("vdash")?)],
    );
    Ok(with_declared(out, &[&d.parameters]))
}

fn t_ops(r: &RepresentationBundle, t: &LinearMap) -> Result<Vec<(&'static str, BilinearOp)>> {
    let m = r.module_dim;
    let left = |name: &str| -> Result<BilinearOp> {
        let act = r.action(name)?;
        BilinearOp::tabulate(m, m, m, |u, v| act.apply(&t.apply(u)?, v))
    };
    let right = |name: &str| -> Result<BilinearOp> {
        let act = r.action(name)?;
        BilinearOp::tabulate(m, m, m, |u, v| act.apply(u, &t.apply(v)?))
    };
    Ok(vec![
        ("prec_vdash", left("prec_l")?),
        ("prec_dashv", right("prec_r")?),
        ("succ_vdash", left("succ_l")?),
        ("succ_dashv", right("succ_r")?),
    ])
}

/// Quadri structure on `V`: `u prec_vdash v = T(u) prec_l v`,
/// `u prec_dashv v = u prec_r T(v)`, and likewise for `succ`.
pub fn relative_averaging_induced_quadri(r: &RepresentationBundle, t: &LinearMap) -> Result<AlgebraBundle> {
    check_operator_shape(t, r.base.dim, r.module_dim)?;
    let out = AlgebraBundle::new(Kind::QuadriDendriform, r.module_twist.clone(), t_ops(r, t)?);
    Ok(with_declared(out, &[&r.base.parameters]))
}

/// Six-dendriform structure on `D'`: the acted operations as the `perp`
/// pair plus the four `T`-twisted actions.
pub fn homomorphic_averaging_induced_six(a: &ActionBundle, t: &LinearMap) -> Result<AlgebraBundle> {
    check_operator_shape(t, a.acting.dim, a.acted.dim)?;
    let rep = a.representation();
    let mut ops = t_ops(&rep, t)?;
    ops.push(("prec_perp", a.acted.op("prec")?.clone()));
    ops.push(("succ_perp", a.acted.op("succ")?.clone()));
    let out = AlgebraBundle::new(Kind::SixDendriform, a.acted.twist.clone(), ops);
    Ok(with_declared(out, &[&a.acting.parameters, &a.acted.parameters]))
}

fn check_operator_shape(t: &LinearMap, rows: usize, cols: usize) -> Result<()> {
    if t.rows() != rows || t.cols() != cols {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, expected {rows}x{cols}",
            t.rows(),
            t.cols()
        )));
    }
    Ok(())
}

/// Inputs a construction may need.
pub enum Inputs<'a> {
    Algebra(&'a AlgebraBundle),
    Pair(&'a AlgebraBundle, &'a AlgebraBundle),
    Representation(&'a RepresentationBundle),
    Action(&'a ActionBundle),
    AlgebraOperator(&'a AlgebraBundle, &'a LinearMap),
    RepresentationOperator(&'a RepresentationBundle, &'a LinearMap),
    ActionOperator(&'a ActionBundle, &'a LinearMap),
}

/// The validity report a construction's inputs should satisfy.
pub fn preconditions(inputs: &Inputs<'_>, sq15: Sq15Reading) -> Result<Report> {
    use crate::operators;
    Ok(match inputs {
        Inputs::Algebra(b) => axioms::check_kind(b, sq15)?,
        Inputs::Pair(a, b) => {
            let mut r = Report::new();
            r.merge_prefixed("left.", axioms::check_kind(a, sq15)?);
            r.merge_prefixed("right.", axioms::check_kind(b, sq15)?);
            r
        }
        Inputs::Representation(r) => axioms::check_representation(r)?,
        Inputs::Action(a) => {
            let mut r = axioms::check_action(a)?;
            r.merge_prefixed("acting.", axioms::check_dendriform(&a.acting)?);
            r.merge_prefixed("acted.", axioms::check_dendriform(&a.acted)?);
            r
        }
        Inputs::AlgebraOperator(b, h) => match b.kind {
            Kind::Associative => operators::verify_averaging_assoc(b, h)?,
            Kind::Diassociative => operators::verify_rota_baxter(b, h)?,
            other => {
                return Err(Error::WrongKind {
                    expected: "associative or diassociative".into(),
                    found: other.to_string(),
                })
            }
        },
        Inputs::RepresentationOperator(r, t) => {
            let mut rep = axioms::check_representation(r)?;
            rep.merge(operators::verify_relative_averaging(r, t)?);
            rep
        }
        Inputs::ActionOperator(a, t) => {
            let mut rep = axioms::check_action(a)?;
            rep.merge(operators::verify_homomorphic_relative_averaging(a, t)?);
            rep
        }
    })
}
