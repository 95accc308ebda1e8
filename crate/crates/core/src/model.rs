//! Based finite-dimensional Hom-algebras: structure-constant tensors,
//! twist maps and the bundles that package them per algebra kind.
//!
//! Basis indices are 1-based throughout (`e_1 .. e_n`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Rational};
use crate::report::{Report, ReportEntry};

pub type Bindings = BTreeMap<String, Rational>;

/// Coordinates of an element in the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(pub Vec<Polynomial>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Polynomial::zero(); dim])
    }

    /// The basis vector `e_i` (1-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i - 1] = Polynomial::one();
        v
    }

    pub fn from_coords<I: IntoIterator<Item = Polynomial>>(coords: I) -> Self {
        Vector(coords.into_iter().collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Coordinate `k` (1-based).
    pub fn coord(&self, k: usize) -> &Polynomial {
        &self.0[k - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector add {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector sub {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, c: &Polynomial) -> Vector {
        Vector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn specialize(&self, bindings: &Bindings) -> Vector {
        Vector(self.0.iter().map(|p| p.specialize(bindings)).collect())
    }

    /// Splits `(x, u)` of a direct sum after the first `n` coordinates.
    pub fn split(&self, n: usize) -> (Vector, Vector) {
        (Vector(self.0[..n].to_vec()), Vector(self.0[n..].to_vec()))
    }

    /// Concatenates coordinates, as the element `(self, other)` of a direct sum.
    pub fn concat(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().chain(&other.0).cloned().collect())
    }
}

/// Sparse structure-constant tensor: `e_i * e_j = sum_k c[i,j,k] e_k`.
///
/// Left, right and output spaces may differ, which lets module actions
/// (`D x M -> M`, `M x D -> M`) share this type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearOp {
    left_dim: usize,
    right_dim: usize,
    out_dim: usize,
    constants: BTreeMap<(usize, usize, usize), Polynomial>,
}

impl BilinearOp {
    pub fn new(left_dim: usize, right_dim: usize, out_dim: usize) -> Self {
        BilinearOp {
            left_dim,
            right_dim,
            out_dim,
            constants: BTreeMap::new(),
        }
    }

    pub fn square(dim: usize) -> Self {
        Self::new(dim, dim, dim)
    }

    /// Builds a square op from `(i, j, k, c)` entries, summing repeats.
    pub fn from_entries<I>(dim: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, usize, Polynomial)>,
    {
        let mut op = Self::square(dim);
        for (i, j, k, c) in entries {
            op.add_to(i, j, k, &c);
        }
        op
    }

    /// Builds an op from its values on basis pairs.
    pub fn tabulate<F>(left_dim: usize, right_dim: usize, out_dim: usize, f: F) -> Result<Self>
    where
        F: Fn(&Vector, &Vector) -> Result<Vector>,
    {
        let mut op = Self::new(left_dim, right_dim, out_dim);
        for i in 1..=left_dim {
            let x = Vector::basis(left_dim, i);
            for j in 1..=right_dim {
                let v = f(&x, &Vector::basis(right_dim, j))?;
                if v.dim() != out_dim {
                    return Err(Error::DimensionMismatch(format!(
                        "tabulated value has dim {}, expected {out_dim}",
                        v.dim()
                    )));
                }
                for (k, c) in v.0.into_iter().enumerate() {
                    op.set(i, j, k + 1, c);
                }
            }
        }
        Ok(op)
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn is_square(&self) -> bool {
        self.left_dim == self.right_dim && self.right_dim == self.out_dim
    }

    /// Sets an entry; zero removes it. Indices are not range-checked here,
    /// see [`BilinearOp::index_violations`].
    pub fn set(&mut self, i: usize, j: usize, k: usize, c: Polynomial) {
        if c.is_zero() {
            self.constants.remove(&(i, j, k));
        } else {
            self.constants.insert((i, j, k), c);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, k: usize, c: &Polynomial) {
        let cur = self.get(i, j, k);
        self.set(i, j, k, &cur + c);
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Polynomial {
        self.constants.get(&(i, j, k)).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Polynomial)> {
        self.constants.iter()
    }

    pub fn nnz(&self) -> usize {
        self.constants.len()
    }

    pub fn is_zero(&self) -> bool {
        self.constants.is_empty()
    }

    pub fn index_violations(&self) -> Vec<(usize, usize, usize)> {
        self.constants
            .keys()
            .filter(|&&(i, j, k)| {
                i == 0 || j == 0 || k == 0 || i > self.left_dim || j > self.right_dim || k > self.out_dim
            })
            .copied()
            .collect()
    }

    /// Bilinear extension of the structure constants.
    pub fn apply(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        if x.dim() != self.left_dim || y.dim() != self.right_dim {
            return Err(Error::DimensionMismatch(format!(
                "op of shape {}x{}->{} applied to vectors of dims {} and {}",
                self.left_dim,
                self.right_dim,
                self.out_dim,
                x.dim(),
                y.dim()
            )));
        }
        let mut out = Vector::zeros(self.out_dim);
        for (i, xi) in x.0.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.0.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let lo = (i + 1, j + 1, 0);
                let hi = (i + 1, j + 1, usize::MAX);
                let mut xy: Option<Polynomial> = None;
                for (&(_, _, k), c) in self.constants.range(lo..=hi) {
                    if k == 0 || k > self.out_dim {
                        return Err(Error::IndexOutOfRange(format!(
                            "output index {k} in a tensor with output dimension {}",
                            self.out_dim
                        )));
                    }
                    let w = xy.get_or_insert_with(|| xi * yj);
                    out.0[k - 1] += &(&*w * c);
                }
            }
        }
        Ok(out)
    }

    /// Value on a pair of basis vectors (the tensor row).
    pub fn row(&self, i: usize, j: usize) -> Vector {
        let mut out = Vector::zeros(self.out_dim);
        for (&(_, _, k), c) in self.constants.range((i, j, 0)..=(i, j, usize::MAX)) {
            if k >= 1 && k <= self.out_dim {
                out.0[k - 1] = c.clone();
            }
        }
        out
    }

    pub fn specialize(&self, bindings: &Bindings) -> BilinearOp {
        let mut out = BilinearOp::new(self.left_dim, self.right_dim, self.out_dim);
        for (&(i, j, k), c) in &self.constants {
            out.set(i, j, k, c.specialize(bindings));
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&Polynomial) -> Polynomial) -> BilinearOp {
        let mut out = BilinearOp::new(self.left_dim, self.right_dim, self.out_dim);
        for (&(i, j, k), c) in &self.constants {
            out.set(i, j, k, f(c));
        }
        out
    }

    /// Entrywise sum of two tensors of the same shape.
    pub fn sum(&self, other: &BilinearOp) -> Result<BilinearOp> {
        if (self.left_dim, self.right_dim, self.out_dim) != (other.left_dim, other.right_dim, other.out_dim) {
            return Err(Error::DimensionMismatch("tensor sum of different shapes".into()));
        }
        let mut out = self.clone();
        for (&(i, j, k), c) in &other.constants {
            out.add_to(i, j, k, c);
        }
        Ok(out)
    }

    pub fn parameters(&self) -> BTreeSet<String> {
        self.constants.values().flat_map(|p| p.parameters()).collect()
    }
}

/// Matrix of polynomials; column `j` is the image of `e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Polynomial>>,
}

impl LinearMap {
    pub fn zero(rows: usize, cols: usize) -> Self {
        LinearMap {
            rows,
            cols,
            entries: vec![vec![Polynomial::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i][i] = Polynomial::one();
        }
        m
    }

    pub fn scalar(n: usize, c: Polynomial) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i][i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(LinearMap {
            rows: r,
            cols: c,
            entries: rows,
        })
    }

    /// Convenience for integer matrices in tests and generators.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Polynomial::from_int(v)).collect())
                .collect(),
        )
        .expect("rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at row `i`, column `j` (1-based).
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i - 1][j - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i - 1][j - 1] = p;
    }

    pub fn row_vecs(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    /// Image of `e_j` (1-based).
    pub fn column(&self, j: usize) -> Vector {
        Vector(self.entries.iter().map(|row| row[j - 1].clone()).collect())
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        if x.dim() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} map applied to vector of dim {}",
                self.rows,
                self.cols,
                x.dim()
            )));
        }
        let mut out = Vector::zeros(self.rows);
        for (j, xj) in x.0.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = &self.entries[i][j];
                if !a.is_zero() {
                    out.0[i] += &(a * xj);
                }
            }
        }
        Ok(out)
    }

    /// Matrix product `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = LinearMap::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero();
                for k in 0..self.cols {
                    let (a, b) = (&self.entries[i][k], &other.entries[k][j]);
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix difference".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[i][j] = &self.entries[i][j] - &other.entries[i][j];
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_zero)
    }

    pub fn specialize(&self, bindings: &Bindings) -> LinearMap {
        self.map_entries(|p| p.specialize(bindings))
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial) -> LinearMap {
        LinearMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    /// Block-diagonal sum `self (+) other`.
    pub fn direct_sum(&self, other: &LinearMap) -> LinearMap {
        let mut out = LinearMap::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[i][j] = self.entries[i][j].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.entries[self.rows + i][self.cols + j] = other.entries[i][j].clone();
            }
        }
        out
    }

    pub fn parameters(&self) -> BTreeSet<String> {
        self.entries.iter().flatten().flat_map(|p| p.parameters()).collect()
    }

    pub fn is_parameter_free(&self) -> bool {
        self.entries.iter().flatten().all(Polynomial::is_constant)
    }
}

/// Serialized as row-major polynomial strings.
impl Serialize for LinearMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, p) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Associative,
    Dendriform,
    Diassociative,
    Triassociative,
    QuadriDendriform,
    SixDendriform,
}

pub const QUADRI_OPS: [&str; 4] = ["prec_vdash", "prec_dashv", "succ_vdash", "succ_dashv"];

impl Kind {
    pub const ALL: [Kind; 6] = [
        Kind::Associative,
        Kind::Dendriform,
        Kind::Diassociative,
        Kind::Triassociative,
        Kind::QuadriDendriform,
        Kind::SixDendriform,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Associative => "associative",
            Kind::Dendriform => "dendriform",
            Kind::Diassociative => "diassociative",
            Kind::Triassociative => "triassociative",
            Kind::QuadriDendriform => "quadri_dendriform",
            Kind::SixDendriform => "six_dendriform",
        }
    }

    pub fn required_ops(self) -> &'static [&'static str] {
        match self {
            Kind::Associative => &["mu"],
            Kind::Dendriform => &["prec", "succ"],
            Kind::Diassociative => &["dashv", "vdash"],
            Kind::Triassociative => &["dashv", "vdash", "perp"],
            Kind::QuadriDendriform => &QUADRI_OPS,
            Kind::SixDendriform => &[
                "prec_vdash",
                "prec_dashv",
                "succ_vdash",
                "succ_dashv",
                "prec_perp",
                "succ_perp",
            ],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

/// One algebra instance: kind tag, named operations and twist map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraBundle {
    pub kind: Kind,
    pub dim: usize,
    pub ops: BTreeMap<String, BilinearOp>,
    pub twist: LinearMap,
    pub parameters: Vec<String>,
}

impl AlgebraBundle {
    /// Bundle with all required ops zero.
    pub fn zero(kind: Kind, dim: usize, twist: LinearMap) -> Self {
        AlgebraBundle {
            kind,
            dim,
            ops: kind
                .required_ops()
                .iter()
                .map(|n| (n.to_string(), BilinearOp::square(dim)))
                .collect(),
            parameters: twist.parameters().into_iter().collect(),
            twist,
        }
    }

    /// Assembles a bundle and declares every parameter that occurs in it.
    pub fn new(kind: Kind, twist: LinearMap, ops: Vec<(&str, BilinearOp)>) -> Self {
        let dim = twist.rows();
        let mut b = AlgebraBundle {
            kind,
            dim,
            ops: ops.into_iter().map(|(n, o)| (n.to_string(), o)).collect(),
            twist,
            parameters: Vec::new(),
        };
        b.parameters = b.used_parameters().into_iter().collect();
        b
    }

    pub fn op(&self, name: &str) -> Result<&BilinearOp> {
        self.ops.get(name).ok_or_else(|| Error::MissingOp(name.to_string()))
    }

    pub fn require_kind(&self, kind: Kind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::WrongKind {
                expected: kind.to_string(),
                found: self.kind.to_string(),
            });
        }
        Ok(())
    }

    pub fn used_parameters(&self) -> BTreeSet<String> {
        let mut out = self.twist.parameters();
        for op in self.ops.values() {
            out.extend(op.parameters());
        }
        out
    }

    pub fn is_parameter_free(&self) -> bool {
        self.used_parameters().is_empty()
    }

    pub fn require_parameter_free(&self) -> Result<()> {
        let used = self.used_parameters();
        if used.is_empty() {
            Ok(())
        } else {
            Err(Error::FreeParameters(used.into_iter().collect()))
        }
    }

    /// Returns a copy with a different kind tag and op set (same twist).
    pub fn with_ops(&self, kind: Kind, ops: Vec<(&str, BilinearOp)>) -> AlgebraBundle {
        AlgebraBundle {
            kind,
            dim: self.dim,
            ops: ops.into_iter().map(|(n, o)| (n.to_string(), o)).collect(),
            twist: self.twist.clone(),
            parameters: self.parameters.clone(),
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&Polynomial) -> Polynomial) -> AlgebraBundle {
        AlgebraBundle {
            kind: self.kind,
            dim: self.dim,
            ops: self
                .ops
                .iter()
                .map(|(n, o)| (n.clone(), o.map_coefficients(&f)))
                .collect(),
            twist: self.twist.map_entries(&f),
            parameters: self.parameters.clone(),
        }
    }
}

/// Substitutes rational values into every entry; bound parameters are
/// removed from the declared list.
pub fn bundle_specialize(b: &AlgebraBundle, bindings: &Bindings) -> Result<AlgebraBundle> {
    for name in bindings.keys() {
        if !b.parameters.iter().any(|p| p == name) {
            return Err(Error::UndeclaredParameter(name.clone()));
        }
    }
    Ok(AlgebraBundle {
        kind: b.kind,
        dim: b.dim,
        ops: b.ops.iter().map(|(n, o)| (n.clone(), o.specialize(bindings))).collect(),
        twist: b.twist.specialize(bindings),
        parameters: b
            .parameters
            .iter()
            .filter(|p| !bindings.contains_key(*p))
            .cloned()
            .collect(),
    })
}

/// Checks the structural invariants of a bundle. Axioms are not checked.
pub fn validate_bundle(b: &AlgebraBundle) -> Report {
    let mut report = Report::new();
    let required: BTreeSet<&str> = b.kind.required_ops().iter().copied().collect();
    for name in b.ops.keys() {
        if !required.contains(name.as_str()) {
            report.push(ReportEntry::violation(
                "structure.unexpected_op",
                vec![],
                format!("unexpected op for kind {}: {name}", b.kind),
            ));
        }
    }
    for name in &required {
        if !b.ops.contains_key(*name) {
            report.push(ReportEntry::violation(
                "structure.missing_op",
                vec![],
                format!("missing op for kind {}: {name}", b.kind),
            ));
        }
    }
    if b.twist.rows() != b.dim || b.twist.cols() != b.dim {
        report.push(ReportEntry::violation(
            "structure.twist_shape",
            vec![b.twist.rows(), b.twist.cols()],
            format!(
                "twist is {}x{} in a dim-{} bundle",
                b.twist.rows(),
                b.twist.cols(),
                b.dim
            ),
        ));
    }
    for (name, op) in &b.ops {
        if !op.is_square() || op.out_dim() != b.dim {
            report.push(ReportEntry::violation(
                "structure.op_shape",
                vec![],
                format!(
                    "op {name} has shape {}x{}->{}",
                    op.left_dim(),
                    op.right_dim(),
                    op.out_dim()
                ),
            ));
        }
        for (i, j, k) in op.index_violations() {
            report.push(ReportEntry::violation(
                "structure.index_range",
                vec![i, j, k],
                format!("op {name} entry ({i},{j},{k}) outside 1..={}", b.dim),
            ));
        }
    }
    let declared: BTreeSet<&str> = b.parameters.iter().map(String::as_str).collect();
    for name in b.used_parameters() {
        if !declared.contains(name.as_str()) {
            report.push(ReportEntry::violation(
                "structure.undeclared_parameter",
                vec![],
                format!("parameter {name} is used but not declared"),
            ));
        }
    }
    report
}

pub const ACTION_OPS: [&str; 4] = ["prec_l", "succ_l", "prec_r", "succ_r"];

/// A dendriform algebra `D` with a module `M`: left actions `D x M -> M`
/// (`prec_l`, `succ_l`), right actions `M x D -> M` (`prec_r`, `succ_r`)
/// and the module twist `beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationBundle {
    pub base: AlgebraBundle,
    pub module_dim: usize,
    pub actions: BTreeMap<String, BilinearOp>,
    pub module_twist: LinearMap,
}

impl RepresentationBundle {
    pub fn new(
        base: AlgebraBundle,
        module_twist: LinearMap,
        prec_l: BilinearOp,
        succ_l: BilinearOp,
        prec_r: BilinearOp,
        succ_r: BilinearOp,
    ) -> Result<Self> {
        base.require_kind(Kind::Dendriform)?;
        let rep = RepresentationBundle {
            module_dim: module_twist.rows(),
            base,
            actions: [
                ("prec_l", prec_l),
                ("succ_l", succ_l),
                ("prec_r", prec_r),
                ("succ_r", succ_r),
            ]
            .into_iter()
            .map(|(n, o)| (n.to_string(), o))
            .collect(),
            module_twist,
        };
        let report = rep.validate();
        if !report.passed() {
            return Err(Error::Invalid(report));
        }
        Ok(rep)
    }

    /// The adjoint representation `prec_l = prec_r = prec`, `succ_l = succ_r = succ`.
    pub fn adjoint(base: &AlgebraBundle) -> Result<Self> {
        base.require_kind(Kind::Dendriform)?;
        let prec = base.op("prec")?.clone();
        let succ = base.op("succ")?.clone();
        Self::new(base.clone(), base.twist.clone(), prec.clone(), succ.clone(), prec, succ)
    }

    /// All actions zero, arbitrary module twist.
    pub fn trivial(base: &AlgebraBundle, module_twist: LinearMap) -> Result<Self> {
        let (n, m) = (base.dim, module_twist.rows());
        Self::new(
            base.clone(),
            module_twist,
            BilinearOp::new(n, m, m),
            BilinearOp::new(n, m, m),
            BilinearOp::new(m, n, m),
            BilinearOp::new(m, n, m),
        )
    }

    pub fn action(&self, name: &str) -> Result<&BilinearOp> {
        self.actions.get(name).ok_or_else(|| Error::MissingOp(name.to_string()))
    }

    pub fn validate(&self) -> Report {
        let mut report = validate_bundle(&self.base);
        let (n, m) = (self.base.dim, self.module_dim);
        if self.module_twist.rows() != m || self.module_twist.cols() != m {
            report.push(ReportEntry::violation(
                "structure.module_twist_shape",
                vec![],
                "module twist does not match module dimension",
            ));
        }
        for name in ACTION_OPS {
            let Some(op) = self.actions.get(name) else {
                report.push(ReportEntry::violation(
                    "structure.missing_action",
                    vec![],
                    format!("missing action {name}"),
                ));
                continue;
            };
            let want = if name.ends_with("_l") { (n, m, m) } else { (m, n, m) };
            if (op.left_dim(), op.right_dim(), op.out_dim()) != want {
                report.push(ReportEntry::violation(
                    "structure.action_shape",
                    vec![],
                    format!("action {name} has the wrong index pattern"),
                ));
            }
            for (i, j, k) in op.index_violations() {
                report.push(ReportEntry::violation(
                    "structure.index_range",
                    vec![i, j, k],
                    format!("action {name} entry ({i},{j},{k}) out of range"),
                ));
            }
        }
        for name in self.actions.keys() {
            if !ACTION_OPS.contains(&name.as_str()) {
                report.push(ReportEntry::violation(
                    "structure.unexpected_action",
                    vec![],
                    format!("unexpected action {name}"),
                ));
            }
        }
        report
    }

    pub fn specialize(&self, bindings: &Bindings) -> Result<RepresentationBundle> {
        let mut base_bind = Bindings::new();
        for (k, v) in bindings {
            if self.base.parameters.contains(k) {
                base_bind.insert(k.clone(), v.clone());
            }
        }
        Ok(RepresentationBundle {
            base: bundle_specialize(&self.base, &base_bind)?,
            module_dim: self.module_dim,
            actions: self
                .actions
                .iter()
                .map(|(n, o)| (n.clone(), o.specialize(bindings)))
                .collect(),
            module_twist: self.module_twist.specialize(bindings),
        })
    }
}

/// A dendriform algebra `D` (acting) together with a dendriform algebra
/// `D'` (acted) and the four cross tensors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionBundle {
    pub acting: AlgebraBundle,
    pub acted: AlgebraBundle,
    pub actions: BTreeMap<String, BilinearOp>,
}

impl ActionBundle {
    pub fn new(
        acting: AlgebraBundle,
        acted: AlgebraBundle,
        prec_l: BilinearOp,
        succ_l: BilinearOp,
        prec_r: BilinearOp,
        succ_r: BilinearOp,
    ) -> Result<Self> {
        acted.require_kind(Kind::Dendriform)?;
        let rep = RepresentationBundle::new(acting.clone(), acted.twist.clone(), prec_l, succ_l, prec_r, succ_r)?;
        let report = validate_bundle(&acted);
        if !report.passed() {
            return Err(Error::Invalid(report));
        }
        Ok(ActionBundle {
            acting,
            acted,
            actions: rep.actions,
        })
    }

    /// `D` acting on itself through its own products.
    pub fn adjoint(base: &AlgebraBundle) -> Result<Self> {
        let rep = RepresentationBundle::adjoint(base)?;
        Self::from_representation(rep, base.clone())
    }

    pub fn from_representation(rep: RepresentationBundle, acted: AlgebraBundle) -> Result<Self> {
        if acted.twist != rep.module_twist {
            return Err(Error::DimensionMismatch(
                "acted algebra twist must equal the module twist".into(),
            ));
        }
        let a = |n: &str| rep.actions[n].clone();
        Self::new(
            rep.base.clone(),
            acted,
            a("prec_l"),
            a("succ_l"),
            a("prec_r"),
            a("succ_r"),
        )
    }

    pub fn representation(&self) -> RepresentationBundle {
        RepresentationBundle {
            base: self.acting.clone(),
            module_dim: self.acted.dim,
            actions: self.actions.clone(),
            module_twist: self.acted.twist.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse;

    fn p(s: &str) -> Polynomial {
        parse(s).unwrap()
    }

    fn d_eta() -> AlgebraBundle {
        let prec = BilinearOp::from_entries(3, [(1, 2, 3, p("eta")), (2, 2, 3, p("-1/2")), (3, 2, 3, p("1"))]);
        let succ = BilinearOp::from_entries(
            3,
            [
                (2, 1, 3, p("1")),
                (2, 2, 1, p("1")),
                (2, 2, 3, p("1/4")),
                (3, 2, 1, p("eta")),
                (3, 2, 3, p("1")),
            ],
        );
        let alpha = LinearMap::from_rows(vec![
            vec![p("0"), p("1"), p("0")],
            vec![p("0"), p("0"), p("0")],
            vec![p("0"), p("0"), p("b")],
        ])
        .unwrap();
        AlgebraBundle::new(Kind::Dendriform, alpha, vec![("prec", prec), ("succ", succ)])
    }

    #[test]
    fn op_apply_reads_rows() {
        let d = d_eta();
        let prec = d.op("prec").unwrap();
        let e = |i| Vector::basis(3, i);
        assert_eq!(
            prec.apply(&e(1), &e(2)).unwrap(),
            Vector(vec![p("0"), p("0"), p("eta")])
        );
        assert!(prec.apply(&Vector::zeros(3), &e(2)).unwrap().is_zero());
        let x = e(2).add(&e(3)).unwrap();
        assert_eq!(prec.apply(&x, &e(2)).unwrap(), Vector(vec![p("0"), p("0"), p("1/2")]));
        assert!(prec.apply(&Vector::zeros(2), &e(1)).is_err());
    }

    #[test]
    fn map_apply() {
        let d = d_eta();
        assert!(d.twist.apply(&Vector::basis(3, 1)).unwrap().is_zero());
        let x = Vector(vec![p("a"), p("b"), p("c")]);
        assert_eq!(LinearMap::identity(3).apply(&x).unwrap(), x);
        let alpha = LinearMap::from_rows(vec![vec![p("a"), p("1")], vec![p("0"), p("a")]]).unwrap();
        assert_eq!(alpha.apply(&Vector::basis(2, 2)).unwrap(), Vector(vec![p("1"), p("a")]));
    }

    #[test]
    fn validation_flags_structure() {
        let mut d = d_eta();
        assert!(validate_bundle(&d).passed());
        d.ops.insert("perp".into(), BilinearOp::square(3));
        let r = validate_bundle(&d);
        assert_eq!(r.failed_templates(), vec!["structure.unexpected_op"]);
        let mut d = d_eta();
        d.ops.get_mut("prec").unwrap().set(1, 1, 4, p("1"));
        let r = validate_bundle(&d);
        assert_eq!(r.entries()[0].template, "structure.index_range");
        assert_eq!(r.entries()[0].witness, vec![1, 1, 4]);
        let mut d = d_eta();
        d.parameters.retain(|x| x != "b");
        assert_eq!(
            validate_bundle(&d).failed_templates(),
            vec!["structure.undeclared_parameter"]
        );
    }

    #[test]
    fn specialize_bundle() {
        let d = d_eta();
        let same = bundle_specialize(&d, &Bindings::new()).unwrap();
        assert_eq!(same, d);
        let mut b = Bindings::new();
        b.insert("eta".into(), crate::polyring::int(2));
        let s = bundle_specialize(&d, &b).unwrap();
        assert_eq!(s.parameters, vec!["b".to_string()]);
        assert_eq!(s.op("prec").unwrap().get(1, 2, 3), p("2"));
        let mut bad = Bindings::new();
        bad.insert("zeta".into(), crate::polyring::int(1));
        assert!(matches!(
            bundle_specialize(&d, &bad),
            Err(Error::UndeclaredParameter(_))
        ));
    }
}
