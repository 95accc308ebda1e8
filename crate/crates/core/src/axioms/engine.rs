//! Identity templates and their evaluation over basis tuples.
//!
//! A template is written in a small infix language:
//!
//! ```text
//! (x prec y) prec alpha(z) = alpha(x) prec (y prec z + y succ z)
//! ```
//!
//! Variables are declared per template with the space they range over;
//! `name(...)` applies a linear map; any other identifier between two
//! operands is a bilinear operation. Operations do not chain without
//! parentheses. Chains `A = B = C` expand to `A = B` (`.a`) and `A = C` (`.b`).

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{BilinearOp, LinearMap, Vector};
use crate::polyring::Polynomial;
use crate::report::{Report, ReportEntry};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(usize),
    Op(String, Box<Expr>, Box<Expr>),
    Map(String, Box<Expr>),
    Sum(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Template {
    pub id: String,
    /// Variable names with the space each ranges over.
    pub vars: Vec<(String, String)>,
    pub lhs: Expr,
    pub rhs: Expr,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Plus,
    Eq,
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                out.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                out.push(Tok::RParen);
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '=' => {
                chars.next();
                out.push(Tok::Eq);
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        end = j + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(text[i..end].to_string()));
            }
            other => return Err(Error::Template(format!("unexpected character '{other}' in \"{text}\""))),
        }
    }
    Ok(out)
}

struct TemplateParser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a [(String, String)],
    renames: &'a [(&'a str, &'a str)],
    text: &'a str,
}

impl TemplateParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Template(format!("{msg} at token {} in \"{}\"", self.pos, self.text))
    }

    fn rename(&self, name: &str) -> String {
        self.renames
            .iter()
            .find(|(from, _)| *from == name)
            .map(|(_, to)| to.to_string())
            .unwrap_or_else(|| name.to_string())
    }

    fn sides(&mut self) -> Result<Vec<Expr>> {
        let mut sides = vec![self.sum()?];
        while self.peek() == Some(&Tok::Eq) {
            self.pos += 1;
            sides.push(self.sum()?);
        }
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(sides)
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut terms = vec![self.product()?];
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            terms.push(self.product()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            Expr::Sum(terms)
        })
    }

    fn product(&mut self) -> Result<Expr> {
        let left = self.atom()?;
        match self.peek() {
            Some(Tok::Ident(name)) if !self.is_var(name) => {
                let op = self.rename(name);
                self.pos += 1;
                let right = self.atom()?;
                if matches!(self.peek(), Some(Tok::Ident(_))) {
                    return Err(self.err("operations must be parenthesized"));
                }
                Ok(Expr::Op(op, Box::new(left), Box::new(right)))
            }
            _ => Ok(left),
        }
    }

    fn is_var(&self, name: &str) -> bool {
        self.vars.iter().any(|(v, _)| v == name)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(idx) = self.vars.iter().position(|(v, _)| *v == name) {
                    return Ok(Expr::Var(idx));
                }
                if self.peek() != Some(&Tok::LParen) {
                    return Err(self.err(&format!("'{name}' is neither a variable nor a map")));
                }
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected ')' after map argument"));
                }
                self.pos += 1;
                Ok(Expr::Map(self.rename(&name), Box::new(inner)))
            }
            _ => Err(self.err("expected an operand")),
        }
    }
}

/// Parses `"x y z : D; m : M"` into `[(x, D), (y, D), (z, D), (m, M)]`.
fn parse_vars(decl: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for group in decl.split(';') {
        let (names, space) = group
            .split_once(':')
            .ok_or_else(|| Error::Template(format!("bad variable declaration '{decl}'")))?;
        let space = space.trim().to_string();
        for name in names.split_whitespace() {
            out.push((name.to_string(), space.clone()));
        }
    }
    Ok(out)
}

/// Builds the templates for one displayed identity. Two sides give a
/// single template `id`; a chain of three gives `id.a` (first = second)
/// and `id.b` (first = third).
pub fn identity(id: &str, vars: &str, text: &str, renames: &[(&str, &str)]) -> Result<Vec<Template>> {
    let vars = parse_vars(vars)?;
    let mut p = TemplateParser {
        toks: lex(text)?,
        pos: 0,
        vars: &vars,
        renames,
        text,
    };
    let sides = p.sides()?;
    let make = |suffix: &str, lhs: &Expr, rhs: &Expr| Template {
        id: format!("{id}{suffix}"),
        vars: vars.clone(),
        lhs: lhs.clone(),
        rhs: rhs.clone(),
    };
    match sides.len() {
        2 => Ok(vec![make("", &sides[0], &sides[1])]),
        3 => Ok(vec![make(".a", &sides[0], &sides[1]), make(".b", &sides[0], &sides[2])]),
        n => Err(Error::Template(format!("{id}: expected 2 or 3 sides, found {n}"))),
    }
}

/// The implied pairwise identity `second = third` of a chain, used only
/// as a cross-check of the splitting convention.
pub fn chain_cross_check(id: &str, vars: &str, text: &str, renames: &[(&str, &str)]) -> Result<Template> {
    let vars_parsed = parse_vars(vars)?;
    let mut p = TemplateParser {
        toks: lex(text)?,
        pos: 0,
        vars: &vars_parsed,
        renames,
        text,
    };
    let sides = p.sides()?;
    if sides.len() != 3 {
        return Err(Error::Template(format!("{id}: not a chain")));
    }
    Ok(Template {
        id: format!("{id}.c"),
        vars: vars_parsed,
        lhs: sides[1].clone(),
        rhs: sides[2].clone(),
    })
}

/// Names available while evaluating templates.
#[derive(Default, Clone)]
pub struct Context<'a> {
    ops: HashMap<String, &'a BilinearOp>,
    maps: HashMap<String, &'a LinearMap>,
    spaces: BTreeMap<String, usize>,
    /// Parameter treated as the imaginary unit when testing residuals.
    imaginary: Option<String>,
}

impl<'a> Context<'a> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn space(mut self, name: &str, dim: usize) -> Self {
        self.spaces.insert(name.to_string(), dim);
        self
    }

    pub fn op(mut self, name: &str, op: &'a BilinearOp) -> Self {
        self.ops.insert(name.to_string(), op);
        self
    }

    pub fn map(mut self, name: &str, map: &'a LinearMap) -> Self {
        self.maps.insert(name.to_string(), map);
        self
    }

    pub fn imaginary_unit(mut self, name: Option<&str>) -> Self {
        self.imaginary = name.map(str::to_string);
        self
    }

    fn check_names(&self, e: &Expr) -> Result<()> {
        match e {
            Expr::Var(_) => Ok(()),
            Expr::Op(name, l, r) => {
                if !self.ops.contains_key(name) {
                    return Err(Error::UnknownName(name.clone()));
                }
                self.check_names(l)?;
                self.check_names(r)
            }
            Expr::Map(name, inner) => {
                if !self.maps.contains_key(name) {
                    return Err(Error::UnknownName(name.clone()));
                }
                self.check_names(inner)
            }
            Expr::Sum(terms) => terms.iter().try_for_each(|t| self.check_names(t)),
        }
    }

    pub fn eval(&self, e: &Expr, args: &[Vector]) -> Result<Vector> {
        match e {
            Expr::Var(i) => Ok(args[*i].clone()),
            Expr::Op(name, l, r) => {
                let op = self.ops.get(name).ok_or_else(|| Error::UnknownName(name.clone()))?;
                op.apply(&self.eval(l, args)?, &self.eval(r, args)?)
            }
            Expr::Map(name, inner) => {
                let m = self.maps.get(name).ok_or_else(|| Error::UnknownName(name.clone()))?;
                m.apply(&self.eval(inner, args)?)
            }
            Expr::Sum(terms) => {
                let mut it = terms.iter();
                let mut acc = self.eval(it.next().expect("nonempty sum"), args)?;
                for t in it {
                    acc = acc.add(&self.eval(t, args)?)?;
                }
                Ok(acc)
            }
        }
    }

    fn residual_is_zero(&self, p: &Polynomial) -> Option<Polynomial> {
        let p = match &self.imaginary {
            Some(name) => p.reduce_imaginary(name),
            None => p.clone(),
        };
        if p.is_zero() {
            None
        } else {
            Some(p)
        }
    }

    /// Evaluates one template over every basis tuple. Residuals are
    /// `lhs - rhs`, one entry per nonzero coordinate.
    pub fn check(&self, t: &Template) -> Result<Report> {
        self.check_names(&t.lhs)?;
        self.check_names(&t.rhs)?;
        let dims: Vec<usize> = t
            .vars
            .iter()
            .map(|(_, s)| {
                self.spaces
                    .get(s)
                    .copied()
                    .ok_or_else(|| Error::UnknownName(format!("space {s}")))
            })
            .collect::<Result<_>>()?;
        let tuples = basis_tuples(&dims);
        let chunks: Vec<Result<Vec<ReportEntry>>> = tuples
            .par_iter()
            .map(|tuple| {
                let args: Vec<Vector> = tuple.iter().zip(&dims).map(|(&i, &d)| Vector::basis(d, i)).collect();
                let lhs = self.eval(&t.lhs, &args)?;
                let rhs = self.eval(&t.rhs, &args)?;
                let diff = lhs.sub(&rhs)?;
                Ok(diff
                    .0
                    .iter()
                    .enumerate()
                    .filter_map(|(k, p)| {
                        self.residual_is_zero(p).map(|r| {
                            let mut w = tuple.clone();
                            w.push(k + 1);
                            ReportEntry::residual(t.id.clone(), w, r)
                        })
                    })
                    .collect())
            })
            .collect();
        let mut entries = Vec::new();
        for c in chunks {
            entries.extend(c?);
        }
        Ok(Report::from_entries(entries))
    }

    pub fn check_all(&self, templates: &[Template]) -> Result<Report> {
        let mut entries = Vec::new();
        for t in templates {
            entries.extend(self.check(t)?.entries().iter().cloned());
        }
        Ok(Report::from_entries(entries))
    }
}

/// All tuples of 1-based indices, lexicographic.
pub fn basis_tuples(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=d).map(move |i| {
                    let mut t = prefix.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}
