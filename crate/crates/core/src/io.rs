//! JSON file formats for algebras, representations, actions and operators.
//!
//! Algebra file:
//! `{"kind", "dimension", "parameters", "alpha": [[poly]], "ops": {name: [{"i","j","k","c"}]}}`.
//! A representation file is a dendriform algebra file plus
//! `"module_dimension"`, `"beta"` and `"actions"` (`prec_l`, `succ_l`,
//! `prec_r`, `succ_r`); an action file additionally carries
//! `"module_ops"` (`prec`, `succ`) for the acted algebra, whose twist is `beta`.
//!
//! Leading lines starting with `//` are ignored so that generated files can
//! carry a provenance header.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::model::{
    validate_bundle, ActionBundle, AlgebraBundle, BilinearOp, Kind, LinearMap, RepresentationBundle, ACTION_OPS,
};
use crate::operators::OperatorKind;
use crate::polyring::{parse, Polynomial};

/// Any structure file the loader understands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Algebra(AlgebraBundle),
    Representation(RepresentationBundle),
    Action(ActionBundle),
}

/// An operator matrix with its kind and declared symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorFile {
    pub kind: OperatorKind,
    pub matrix: LinearMap,
    pub parameters: Vec<String>,
    pub imaginary_unit: Option<String>,
}

struct Ctx<'a> {
    origin: &'a str,
}

impl Ctx<'_> {
    fn err(&self, at: &str, message: impl Into<String>) -> Error {
        let message = message.into();
        Error::Input {
            path: self.origin.to_string(),
            message: if at.is_empty() {
                message
            } else {
                format!("{at}: {message}")
            },
        }
    }

    fn field<'v>(&self, obj: &'v Map<String, Value>, key: &str) -> Result<&'v Value> {
        obj.get(key)
            .ok_or_else(|| self.err("", format!("missing field \"{key}\"")))
    }

    fn usize_field(&self, obj: &Map<String, Value>, key: &str) -> Result<usize> {
        let v = self.field(obj, key)?;
        v.as_u64()
            .filter(|&n| n > 0)
            .map(|n| n as usize)
            .ok_or_else(|| self.err(key, "expected a positive integer"))
    }

    fn poly(&self, v: &Value, at: &str, declared: &BTreeSet<String>) -> Result<Polynomial> {
        let text = match v {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => return Err(self.err(at, "expected a polynomial string")),
        };
        let p = parse(&text).map_err(|e| self.err(at, format!("{e} in \"{text}\"")))?;
        for name in p.parameters() {
            if !declared.contains(&name) {
                return Err(self.err(at, format!("parameter '{name}' is not declared")));
            }
        }
        Ok(p)
    }

    fn matrix(&self, v: &Value, at: &str, rows: usize, cols: usize, declared: &BTreeSet<String>) -> Result<LinearMap> {
        let arr = v.as_array().ok_or_else(|| self.err(at, "expected an array of rows"))?;
        if arr.len() != rows {
            return Err(self.err(at, format!("expected {rows} rows, found {}", arr.len())));
        }
        let mut out = Vec::with_capacity(rows);
        for (r, row) in arr.iter().enumerate() {
            let cells = row
                .as_array()
                .ok_or_else(|| self.err(&format!("{at}[{r}]"), "expected an array"))?;
            if cells.len() != cols {
                return Err(self.err(
                    &format!("{at}[{r}]"),
                    format!("expected {cols} entries, found {}", cells.len()),
                ));
            }
            out.push(
                cells
                    .iter()
                    .enumerate()
                    .map(|(c, cell)| self.poly(cell, &format!("{at}[{r}][{c}]"), declared))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        LinearMap::from_rows(out)
    }

    fn tensor(
        &self,
        v: &Value,
        at: &str,
        shape: (usize, usize, usize),
        declared: &BTreeSet<String>,
    ) -> Result<BilinearOp> {
        let arr = v
            .as_array()
            .ok_or_else(|| self.err(at, "expected an array of entries"))?;
        let mut op = BilinearOp::new(shape.0, shape.1, shape.2);
        let mut seen = BTreeSet::new();
        for (n, e) in arr.iter().enumerate() {
            let here = format!("{at}[{n}]");
            let obj = e.as_object().ok_or_else(|| self.err(&here, "expected an object"))?;
            let idx = |key: &str, bound: usize| -> Result<usize> {
                obj.get(key)
                    .and_then(Value::as_u64)
                    .map(|x| x as usize)
                    .filter(|&x| (1..=bound).contains(&x))
                    .ok_or_else(|| self.err(&here, format!("\"{key}\" must be an integer in 1..={bound}")))
            };
            let (i, j, k) = (idx("i", shape.0)?, idx("j", shape.1)?, idx("k", shape.2)?);
            if !seen.insert((i, j, k)) {
                return Err(self.err(&here, format!("duplicate entry ({i},{j},{k})")));
            }
            let c = self.poly(
                obj.get("c").ok_or_else(|| self.err(&here, "missing \"c\""))?,
                &format!("{here}.c"),
                declared,
            )?;
            op.set(i, j, k, c);
        }
        Ok(op)
    }

    fn ops(
        &self,
        v: &Value,
        at: &str,
        names: &[&str],
        shape_of: impl Fn(&str) -> (usize, usize, usize),
        declared: &BTreeSet<String>,
    ) -> Result<BTreeMap<String, BilinearOp>> {
        let obj = v.as_object().ok_or_else(|| self.err(at, "expected an object"))?;
        for name in obj.keys() {
            if !names.contains(&name.as_str()) {
                return Err(self.err(at, format!("unexpected operation \"{name}\"")));
            }
        }
        let mut out = BTreeMap::new();
        for name in names {
            let t = obj
                .get(*name)
                .ok_or_else(|| self.err(at, format!("missing operation \"{name}\"")))?;
            out.insert(
                name.to_string(),
                self.tensor(t, &format!("{at}.{name}"), shape_of(name), declared)?,
            );
        }
        Ok(out)
    }
}

/// Blanks leading `//` lines, keeping line numbers for JSON errors.
fn strip_header(text: &str) -> String {
    let mut body = false;
    text.lines()
        .map(|l| {
            if !body && l.trim_start().starts_with("//") {
                ""
            } else {
                if !l.trim().is_empty() {
                    body = true;
                }
                l
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn parse_json(text: &str, origin: &str) -> Result<Map<String, Value>> {
    let v: Value = serde_json::from_str(&strip_header(text)).map_err(|e| Error::Input {
        path: origin.to_string(),
        message: format!("line {} column {}: {e}", e.line(), e.column()),
    })?;
    match v {
        Value::Object(m) => Ok(m),
        _ => Err(Error::Input {
            path: origin.to_string(),
            message: "top level must be an object".into(),
        }),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn declared_parameters(cx: &Ctx, obj: &Map<String, Value>) -> Result<Vec<String>> {
    let Some(v) = obj.get("parameters") else {
        return Ok(Vec::new());
    };
    let arr = v
        .as_array()
        .ok_or_else(|| cx.err("parameters", "expected an array of names"))?;
    let mut out = Vec::new();
    for p in arr {
        let name = p.as_str().ok_or_else(|| cx.err("parameters", "expected strings"))?;
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(cx.err("parameters", format!("invalid parameter name \"{name}\"")));
        }
        if out.iter().any(|o| o == name) {
            return Err(cx.err("parameters", format!("parameter \"{name}\" declared twice")));
        }
        out.push(name.to_string());
    }
    Ok(out)
}

fn algebra_from(
    cx: &Ctx,
    obj: &Map<String, Value>,
    declared: &BTreeSet<String>,
    params: &[String],
) -> Result<AlgebraBundle> {
    let kind_text = cx
        .field(obj, "kind")?
        .as_str()
        .ok_or_else(|| cx.err("kind", "expected a string"))?;
    let kind: Kind = kind_text
        .parse()
        .map_err(|_| cx.err("kind", format!("unknown kind \"{kind_text}\"")))?;
    let dim = cx.usize_field(obj, "dimension")?;
    let twist = cx.matrix(cx.field(obj, "alpha")?, "alpha", dim, dim, declared)?;
    let ops = cx.ops(
        cx.field(obj, "ops")?,
        "ops",
        kind.required_ops(),
        |_| (dim, dim, dim),
        declared,
    )?;
    let b = AlgebraBundle {
        kind,
        dim,
        ops,
        twist,
        parameters: params.to_vec(),
    };
    let report = validate_bundle(&b);
    if !report.passed() {
        return Err(Error::Invalid(report));
    }
    Ok(b)
}

/// Parses any structure file from text; `origin` labels error messages.
pub fn parse_document(text: &str, origin: &str) -> Result<Document> {
    let cx = Ctx { origin };
    let obj = parse_json(text, origin)?;
    let params = declared_parameters(&cx, &obj)?;
    let declared: BTreeSet<String> = params.iter().cloned().collect();
    let base = algebra_from(&cx, &obj, &declared, &params)?;
    if !obj.contains_key("module_dimension") {
        for key in ["beta", "actions", "module_ops"] {
            if obj.contains_key(key) {
                return Err(cx.err(key, "requires \"module_dimension\""));
            }
        }
        return Ok(Document::Algebra(base));
    }
    if base.kind != Kind::Dendriform {
        return Err(cx.err("kind", "representations and actions need a dendriform base"));
    }
    let (n, m) = (base.dim, cx.usize_field(&obj, "module_dimension")?);
    let beta = cx.matrix(cx.field(&obj, "beta")?, "beta", m, m, &declared)?;
    let mut actions = cx.ops(
        cx.field(&obj, "actions")?,
        "actions",
        &ACTION_OPS,
        |name| if name.ends_with("_l") { (n, m, m) } else { (m, n, m) },
        &declared,
    )?;
    let mut take = |name: &str| actions.remove(name).expect("validated action");
    let (pl, sl, pr, sr) = (take("prec_l"), take("succ_l"), take("prec_r"), take("succ_r"));
    match obj.get("module_ops") {
        None => Ok(Document::Representation(RepresentationBundle::new(
            base, beta, pl, sl, pr, sr,
        )?)),
        Some(v) => {
            let ops = cx.ops(
                v,
                "module_ops",
                Kind::Dendriform.required_ops(),
                |_| (m, m, m),
                &declared,
            )?;
            let acted = AlgebraBundle {
                kind: Kind::Dendriform,
                dim: m,
                ops,
                twist: beta,
                parameters: params.clone(),
            };
            Ok(Document::Action(ActionBundle::new(base, acted, pl, sl, pr, sr)?))
        }
    }
}

pub fn load_document(path: impl AsRef<Path>) -> Result<Document> {
    let path = path.as_ref();
    parse_document(&read(path)?, &path.display().to_string())
}

fn expect_algebra(doc: Document, origin: &str) -> Result<AlgebraBundle> {
    match doc {
        Document::Algebra(b) => Ok(b),
        _ => Err(Error::Input {
            path: origin.to_string(),
            message: "expected an algebra file, found a representation or action".into(),
        }),
    }
}

pub fn parse_algebra(text: &str, origin: &str) -> Result<AlgebraBundle> {
    expect_algebra(parse_document(text, origin)?, origin)
}

/// Loads and structurally validates an algebra file.
pub fn load_algebra(path: impl AsRef<Path>) -> Result<AlgebraBundle> {
    let path = path.as_ref();
    parse_algebra(&read(path)?, &path.display().to_string())
}

pub fn load_representation(path: impl AsRef<Path>) -> Result<RepresentationBundle> {
    let path = path.as_ref();
    match load_document(path)? {
        Document::Representation(r) => Ok(r),
        Document::Action(a) => Ok(a.representation()),
        Document::Algebra(_) => Err(Error::Input {
            path: path.display().to_string(),
            message: "expected a representation file".into(),
        }),
    }
}

pub fn load_action(path: impl AsRef<Path>) -> Result<ActionBundle> {
    let path = path.as_ref();
    match load_document(path)? {
        Document::Action(a) => Ok(a),
        _ => Err(Error::Input {
            path: path.display().to_string(),
            message: "expected an action file (with \"module_ops\")".into(),
        }),
    }
}

fn matrix_json(m: &LinearMap) -> Value {
    Value::Array(
        m.row_vecs()
            .iter()
            .map(|r| Value::Array(r.iter().map(|p| Value::String(p.to_string())).collect()))
            .collect(),
    )
}

fn tensor_json(op: &BilinearOp) -> Value {
    Value::Array(
        op.entries()
            .map(|(&(i, j, k), c)| json!({"i": i, "j": j, "k": k, "c": c.to_string()}))
            .collect(),
    )
}

fn ops_json<'a>(ops: impl Iterator<Item = (&'a String, &'a BilinearOp)>) -> Value {
    Value::Object(ops.map(|(n, o)| (n.clone(), tensor_json(o))).collect())
}

fn sorted_union<'a>(lists: impl IntoIterator<Item = &'a [String]>, extra: BTreeSet<String>) -> Vec<String> {
    let mut all: BTreeSet<String> = extra;
    for l in lists {
        all.extend(l.iter().cloned());
    }
    all.into_iter().collect()
}

pub fn algebra_to_json(b: &AlgebraBundle) -> Value {
    let mut params = b.parameters.clone();
    for p in b.used_parameters() {
        if !params.contains(&p) {
            params.push(p);
        }
    }
    json!({
        "kind": b.kind.as_str(),
        "dimension": b.dim,
        "parameters": params,
        "alpha": matrix_json(&b.twist),
        "ops": ops_json(b.ops.iter()),
    })
}

pub fn representation_to_json(r: &RepresentationBundle) -> Value {
    let mut extra = r.module_twist.parameters();
    for a in r.actions.values() {
        extra.extend(a.parameters());
    }
    extra.extend(r.base.used_parameters());
    let mut v = algebra_to_json(&r.base);
    let obj = v.as_object_mut().expect("object");
    obj.insert(
        "parameters".into(),
        json!(sorted_union([r.base.parameters.as_slice()], extra)),
    );
    obj.insert("module_dimension".into(), json!(r.module_dim));
    obj.insert("beta".into(), matrix_json(&r.module_twist));
    obj.insert(
        "actions".into(),
        ops_json(ACTION_OPS.iter().map(|n| r.actions.get_key_value(*n).expect("action"))),
    );
    v
}

pub fn action_to_json(a: &ActionBundle) -> Value {
    let mut v = representation_to_json(&a.representation());
    let obj = v.as_object_mut().expect("object");
    let prev: Vec<String> = serde_json::from_value(obj["parameters"].clone()).unwrap_or_default();
    obj.insert(
        "parameters".into(),
        json!(sorted_union(
            [prev.as_slice(), a.acted.parameters.as_slice()],
            a.acted.used_parameters()
        )),
    );
    obj.insert("module_ops".into(), ops_json(a.acted.ops.iter()));
    v
}

pub fn document_to_json(doc: &Document) -> Value {
    match doc {
        Document::Algebra(b) => algebra_to_json(b),
        Document::Representation(r) => representation_to_json(r),
        Document::Action(a) => action_to_json(a),
    }
}

/// Pretty JSON with an optional `//` header, newline-terminated.
pub fn render(value: &Value, header: &[String]) -> String {
    let mut out = String::new();
    for line in header {
        out.push_str("// ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&serde_json::to_string_pretty(value).expect("json"));
    out.push('\n');
    out
}

pub fn parse_operator(text: &str, origin: &str) -> Result<OperatorFile> {
    let cx = Ctx { origin };
    let obj = parse_json(text, origin)?;
    let kind_text = cx
        .field(&obj, "kind")?
        .as_str()
        .ok_or_else(|| cx.err("kind", "expected a string"))?;
    let kind: OperatorKind = kind_text
        .parse()
        .map_err(|_| cx.err("kind", format!("unknown operator kind \"{kind_text}\"")))?;
    let imaginary_unit = match obj.get("imaginary_unit") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(cx.err("imaginary_unit", "expected a parameter name")),
    };
    let explicit = obj.contains_key("parameters");
    let parameters = declared_parameters(&cx, &obj)?;
    let rows = cx
        .field(&obj, "matrix")?
        .as_array()
        .ok_or_else(|| cx.err("matrix", "expected an array of rows"))?;
    let nrows = rows.len();
    let ncols = rows.first().and_then(Value::as_array).map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return Err(cx.err("matrix", "matrix must be nonempty"));
    }
    // Without a parameter list every symbol in the matrix is accepted.
    let declared: BTreeSet<String> = if explicit {
        parameters.iter().cloned().chain(imaginary_unit.clone()).collect()
    } else {
        let mut all = BTreeSet::new();
        for row in rows {
            for cell in row.as_array().into_iter().flatten() {
                if let Some(Ok(p)) = cell.as_str().map(parse) {
                    all.extend(p.parameters());
                }
            }
        }
        all
    };
    let matrix = cx.matrix(&obj["matrix"], "matrix", nrows, ncols, &declared)?;
    let parameters = if explicit {
        parameters
    } else {
        declared
            .into_iter()
            .filter(|p| Some(p) != imaginary_unit.as_ref())
            .collect()
    };
    Ok(OperatorFile {
        kind,
        matrix,
        parameters,
        imaginary_unit,
    })
}

pub fn load_operator(path: impl AsRef<Path>) -> Result<OperatorFile> {
    let path = path.as_ref();
    parse_operator(&read(path)?, &path.display().to_string())
}

pub fn operator_to_json(op: &OperatorFile) -> Value {
    let mut v = json!({
        "kind": op.kind.as_str(),
        "parameters": op.parameters,
        "matrix": matrix_json(&op.matrix),
    });
    if let Some(i) = &op.imaginary_unit {
        v.as_object_mut()
            .expect("object")
            .insert("imaginary_unit".into(), json!(i));
    }
    v
}
