//! The defining identities of each algebra kind, written in the template
//! language of [`super::engine`].

use super::engine::{identity, Template};

/// Which reading of the sixth-from-last six-dendriform chain to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Sq15Reading {
    /// As printed: the second and third members use `prec_dashv`.
    #[default]
    Literal,
    /// All three members use `succ_dashv`.
    Symmetric,
}

impl std::str::FromStr for Sq15Reading {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "literal" => Ok(Sq15Reading::Literal),
            "symmetric" => Ok(Sq15Reading::Symmetric),
            other => Err(format!("unknown sq15 reading '{other}' (literal|symmetric)")),
        }
    }
}

const XYZ: &str = "x y z : D";

fn build(prefix: &str, vars: &str, list: &[(&str, &str)], renames: &[(&str, &str)]) -> Vec<Template> {
    list.iter()
        .flat_map(|(id, text)| {
            identity(&format!("{prefix}{id}"), vars, text, renames)
                .unwrap_or_else(|e| panic!("built-in template {id}: {e}"))
        })
        .collect()
}

pub const DENDRIFORM: [(&str, &str); 3] = [
    ("1", "(x prec y) prec alpha(z) = alpha(x) prec (y prec z + y succ z)"),
    ("2", "(x succ y) prec alpha(z) = alpha(x) succ (y prec z)"),
    ("3", "alpha(x) succ (y succ z) = (x prec y + x succ y) succ alpha(z)"),
];

pub fn dendriform() -> Vec<Template> {
    build("dend.", XYZ, &DENDRIFORM, &[])
}

pub fn associative() -> Vec<Template> {
    build(
        "assoc.",
        XYZ,
        &[("1", "alpha(x) mu (y mu z) = (x mu y) mu alpha(z)")],
        &[],
    )
}

pub const DIASSOCIATIVE: [(&str, &str); 5] = [
    ("1", "(x dashv y) dashv alpha(z) = alpha(x) dashv (y dashv z)"),
    ("2", "(x dashv y) dashv alpha(z) = alpha(x) dashv (y vdash z)"),
    ("3", "(x vdash y) dashv alpha(z) = alpha(x) vdash (y dashv z)"),
    ("4", "(x dashv y) vdash alpha(z) = alpha(x) vdash (y vdash z)"),
    ("5", "(x vdash y) vdash alpha(z) = alpha(x) vdash (y vdash z)"),
];

pub fn diassociative() -> Vec<Template> {
    build("dias.", XYZ, &DIASSOCIATIVE, &[])
}

/// Operation names inside quadri templates: `pv = prec_vdash`,
/// `pd = prec_dashv`, `sv = succ_vdash`, `sd = succ_dashv`.
pub const QUADRI_NAMES: [(&str, &str); 6] = [
    ("pv", "prec_vdash"),
    ("pd", "prec_dashv"),
    ("sv", "succ_vdash"),
    ("sd", "succ_dashv"),
    ("pp", "prec_perp"),
    ("sp", "succ_perp"),
];

pub const QUADRI: [(&str, &str); 11] = [
    (
        "Hq1",
        "(x pv y) pv alpha(z) = (x pd y) pv alpha(z) = alpha(x) pv (y pv z + y sv z)",
    ),
    (
        "Hq2",
        "(x sv y) pv alpha(z) = (x sd y) pv alpha(z) = alpha(x) sv (y pv z)",
    ),
    (
        "Hq3",
        "alpha(x) sv (y sv z) = (x pv y + x sv y) sv alpha(z) = (x pd y + x sd y) sv alpha(z)",
    ),
    (
        "Hq4",
        "alpha(x) sv (y sv z) = (x pd y + x sv y) sv alpha(z) = (x pv y + x sd y) sv alpha(z)",
    ),
    ("Hq5", "(x pv y) pd alpha(z) = alpha(x) pv (y pd z + y sd z)"),
    ("Hq6", "(x sv y) pd alpha(z) = alpha(x) sv (y pd z)"),
    ("Hq7", "alpha(x) sv (y sd z) = (x pv y + x sv y) sd alpha(z)"),
    (
        "Hq8",
        "(x pd y) pd alpha(z) = alpha(x) pd (y pv z + y sv z) = alpha(x) pd (y pd z + y sd z)",
    ),
    (
        "Hq9",
        "(x pd y) pd alpha(z) = alpha(x) pd (y pv z + y sd z) = alpha(x) pd (y pd z + y sv z)",
    ),
    (
        "Hq10",
        "(x sd y) pd alpha(z) = alpha(x) sd (y pv z) = alpha(x) sd (y pd z)",
    ),
    (
        "Hq11",
        "alpha(x) sd (y sv z) = alpha(x) sd (y sd z) = (x pd y + x sd y) sd alpha(z)",
    ),
];

pub fn quadri() -> Vec<Template> {
    build("quadri.", XYZ, &QUADRI, &QUADRI_NAMES)
}

pub const TRI_MIXED: [(&str, &str); 5] = [
    ("1", "(x dashv y) dashv alpha(z) = alpha(x) dashv (y perp z)"),
    ("2", "(x vdash y) perp alpha(z) = alpha(x) vdash (y perp z)"),
    ("3", "(x perp y) dashv alpha(z) = alpha(x) perp (y dashv z)"),
    ("4", "(x perp y) vdash alpha(z) = alpha(x) vdash (y vdash z)"),
    ("5", "(x dashv y) perp alpha(z) = alpha(x) perp (y vdash z)"),
];

pub fn triassociative() -> Vec<Template> {
    let mut out = build("tri.dias.", XYZ, &DIASSOCIATIVE, &[]);
    out.extend(build(
        "tri.",
        XYZ,
        &[("assoc", "alpha(x) mu (y mu z) = (x mu y) mu alpha(z)")],
        &[("mu", "perp")],
    ));
    out.extend(build("tri.mix.", XYZ, &TRI_MIXED, &[]));
    out
}

pub const SIX: [(&str, &str); 17] = [
    ("sq1", "(x pv y) pp alpha(z) = alpha(x) pv (y pp z + y sp z)"),
    ("sq2", "(x sv y) pp alpha(z) = alpha(x) sv (y pp z)"),
    ("sq3", "alpha(x) sv (y sp z) = (x pv y + x sv y) sp alpha(z)"),
    ("sq4", "(x pd y) pp alpha(z) = alpha(x) pp (y pv z + y sv z)"),
    ("sq5", "(x sd y) pp alpha(z) = alpha(x) sp (y pv z)"),
    ("sq6", "alpha(x) sp (y sv z) = (x pd y + x sd y) sp alpha(z)"),
    ("sq7", "(x pp y) pd alpha(z) = alpha(x) pp (y pd z + y sd z)"),
    ("sq8", "(x sp y) pd alpha(z) = alpha(x) sp (y pd z)"),
    ("sq9", "alpha(x) sp (y sd z) = (x pp y + x sp y) sd alpha(z)"),
    (
        "sq10",
        "(x pp y) pv alpha(z) = (x pv y) pv alpha(z) = (x pd y) pv alpha(z)",
    ),
    (
        "sq11",
        "(x sp y) pv alpha(z) = (x sv y) pv alpha(z) = (x sd y) pv alpha(z)",
    ),
    (
        "sq12",
        "(x pp y) sv alpha(z) = (x pv y) sv alpha(z) = (x pd y) sv alpha(z)",
    ),
    (
        "sq13",
        "(x sp y) sv alpha(z) = (x sv y) sv alpha(z) = (x sd y) sv alpha(z)",
    ),
    (
        "sq14",
        "alpha(x) pd (y pp z) = alpha(x) pd (y pv z) = alpha(x) pd (y pd z)",
    ),
    (
        "sq15",
        "alpha(x) sd (y pp z) = alpha(x) pd (y pv z) = alpha(x) pd (y pd z)",
    ),
    (
        "sq16",
        "alpha(x) sd (y sp z) = alpha(x) sd (y sv z) = alpha(x) sd (y sd z)",
    ),
    (
        "sq17",
        "alpha(x) pd (y sp z) = alpha(x) pd (y sv z) = alpha(x) pd (y sd z)",
    ),
];

pub const SQ15_SYMMETRIC: &str = "alpha(x) sd (y pp z) = alpha(x) sd (y pv z) = alpha(x) sd (y pd z)";

pub fn six(sq15: Sq15Reading) -> Vec<Template> {
    let mut out = build(
        "six.perp.dend.",
        XYZ,
        &DENDRIFORM,
        &[("prec", "prec_perp"), ("succ", "succ_perp")],
    );
    out.extend(build("six.quadri.", XYZ, &QUADRI, &QUADRI_NAMES));
    let mut own: Vec<(&str, &str)> = SIX.to_vec();
    if sq15 == Sq15Reading::Symmetric {
        own[14].1 = SQ15_SYMMETRIC;
    }
    out.extend(build("six.", XYZ, &own, &QUADRI_NAMES));
    out
}

/// Group I uses `x y : D; m : M`, group II `m : M; x y : D`, group III
/// `x : D; m : M; y : D`.
pub fn representation() -> Vec<Template> {
    let mut out = build(
        "rep.I.",
        "x y : D; m : M",
        &[
            (
                "1",
                "(x prec y) prec_l beta(m) = alpha(x) prec_l (y prec_l m + y succ_l m)",
            ),
            ("2", "(x succ y) prec_l beta(m) = alpha(x) succ_l (y prec_l m)"),
            (
                "3",
                "alpha(x) succ_l (y succ_l m) = (x prec y + x succ y) succ_l beta(m)",
            ),
        ],
        &[],
    );
    out.extend(build(
        "rep.II.",
        "m : M; x y : D",
        &[
            (
                "1",
                "beta(m) prec_r (x prec y + x succ y) = (m prec_r x) prec_r alpha(y)",
            ),
            ("2", "beta(m) succ_r (x prec y) = (m succ_r x) prec_r alpha(y)"),
            (
                "3",
                "(m prec_r x + m succ_r x) succ_r alpha(y) = beta(m) succ_r (x succ y)",
            ),
        ],
        &[],
    ));
    out.extend(build(
        "rep.III.",
        "x : D; m : M; y : D",
        &[
            (
                "1",
                "(x prec_l m) prec_r alpha(y) = alpha(x) prec_l (m prec_r y + m succ_r y)",
            ),
            ("2", "(x succ_l m) prec_r alpha(y) = alpha(x) succ_l (m prec_r y)"),
            (
                "3",
                "(x prec_l m + x succ_l m) succ_r alpha(y) = alpha(x) succ_l (m succ_r y)",
            ),
        ],
        &[],
    ));
    out
}

/// The nine cross equations of an action; the acted algebra's operations
/// are `prec2`, `succ2` and its twist is `beta`.
pub fn action_cross() -> Vec<Template> {
    let mut out = build(
        "act.",
        "x : D; v w : M",
        &[
            (
                "13",
                "(x prec_l v) prec2 beta(w) = alpha(x) prec_l (v prec2 w + v succ2 w)",
            ),
            ("14", "(x succ_l v) prec2 beta(w) = alpha(x) succ_l (v prec2 w)"),
            (
                "15",
                "alpha(x) succ_l (v succ2 w) = (x prec_l v + x succ_l v) succ2 beta(w)",
            ),
        ],
        &[],
    );
    out.extend(build(
        "act.",
        "u : M; y : D; w : M",
        &[
            (
                "16",
                "(u prec_r y) prec2 beta(w) = beta(u) prec2 (y prec_l w + y succ_l w)",
            ),
            ("17", "(u succ_r y) prec2 beta(w) = beta(u) succ2 (y prec_l w)"),
            (
                "18",
                "beta(u) succ2 (y succ_l w) = (u prec_r y + u succ_r y) succ2 beta(w)",
            ),
        ],
        &[],
    ));
    out.extend(build(
        "act.",
        "u v : M; z : D",
        &[
            (
                "19",
                "(u prec2 v) prec_r alpha(z) = beta(u) prec2 (v prec_r z + v succ_r z)",
            ),
            ("20", "(u succ2 v) prec_r alpha(z) = beta(u) succ2 (v prec_r z)"),
            (
                "21",
                "beta(u) succ2 (v succ_r z) = (u prec2 v + u succ2 v) succ_r alpha(z)",
            ),
        ],
        &[],
    ));
    out
}

pub fn multiplicative(op: &str) -> Template {
    identity(
        &format!("mult.{op}"),
        "x y : D",
        "alpha(x op y) = alpha(x) op alpha(y)",
        &[("op", op)],
    )
    .expect("multiplicativity template")
    .remove(0)
}

/// `T(x op y) = T(x) op' T(y)`; the target operation is looked up as
/// `tgt_<op>` and the target twist as `alpha_tgt`.
pub fn homomorphism(op: &str) -> Template {
    let target = format!("tgt_{op}");
    identity(
        &format!("hom.{op}"),
        "x y : A",
        "T(x op y) = T(x) op2 T(y)",
        &[("op", op), ("op2", &target)],
    )
    .expect("homomorphism template")
    .remove(0)
}

pub fn homomorphism_twist() -> Template {
    identity("hom.twist", "x : A", "T(alpha(x)) = alpha_tgt(T(x))", &[])
        .expect("twist template")
        .remove(0)
}
