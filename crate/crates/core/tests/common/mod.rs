//! Shared test support: seeds, a proptest runner and an independent dense
//! oracle for axiom checks that does not go through the template engine.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use homsplit::{AlgebraBundle, Kind, Polynomial, Rational};
use num_traits::{One, Zero};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const DEFAULT_SEED: u64 = 0x5eed_2026;

/// Seed for randomized tests; override with `HOMSPLIT_SEED`.
pub fn seed() -> u64 {
    std::env::var("HOMSPLIT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn runner(cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed().to_le_bytes());
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Evaluates a polynomial at a point by summing its terms directly.
pub fn eval(p: &Polynomial, point: &BTreeMap<String, Rational>) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (name, e) in m.factors() {
            let v = &point[name];
            for _ in 0..e {
                t *= v;
            }
        }
        acc += t;
    }
    acc
}

type V = Vec<Rational>;

/// Dense copy of a parameter-free bundle. `t[i][j][k]` is the coefficient of
/// `e_k` in `e_i o e_j`; `alpha[i][j]` is the `e_i` coordinate of `alpha(e_j)`.
pub struct Dense {
    pub n: usize,
    pub ops: BTreeMap<String, Vec<Vec<V>>>,
    pub alpha: Vec<V>,
}

impl Dense {
    pub fn new(b: &AlgebraBundle) -> Dense {
        let n = b.dim;
        let c = |p: &Polynomial| p.as_constant().expect("parameter-free bundle");
        let ops = b
            .ops
            .iter()
            .map(|(name, op)| {
                let mut t = vec![vec![vec![Rational::zero(); n]; n]; n];
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            t[i][j][k] = c(&op.get(i + 1, j + 1, k + 1));
                        }
                    }
                }
                (name.clone(), t)
            })
            .collect();
        let alpha = (0..n)
            .map(|i| (0..n).map(|j| c(b.twist.get(i + 1, j + 1))).collect())
            .collect();
        Dense { n, ops, alpha }
    }

    pub fn e(&self, i: usize) -> V {
        let mut v = vec![Rational::zero(); self.n];
        v[i] = Rational::one();
        v
    }

    pub fn m(&self, op: &str, x: &V, y: &V) -> V {
        let t = &self.ops[op];
        let mut out = vec![Rational::zero(); self.n];
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if y[j].is_zero() {
                    continue;
                }
                let s = &x[i] * &y[j];
                for k in 0..self.n {
                    out[k] += &s * &t[i][j][k];
                }
            }
        }
        out
    }

    pub fn a(&self, x: &V) -> V {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| &self.alpha[i][j] * &x[j]).sum())
            .collect()
    }
}

pub fn add(x: &V, y: &V) -> V {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// Each identity is a list of expressions that must all be equal.
type Identity = fn(&Dense, &V, &V, &V) -> Vec<V>;

const DEND_IDS: [Identity; 3] = [
    |d, x, y, z| {
        vec![
            d.m("prec", &d.m("prec", x, y), &d.a(z)),
            d.m("prec", &d.a(x), &add(&d.m("prec", y, z), &d.m("succ", y, z))),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("prec", &d.m("succ", x, y), &d.a(z)),
            d.m("succ", &d.a(x), &d.m("prec", y, z)),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("succ", &d.a(x), &d.m("succ", y, z)),
            d.m("succ", &add(&d.m("prec", x, y), &d.m("succ", x, y)), &d.a(z)),
        ]
    },
];

const ASSOC_IDS: [Identity; 1] = [|d, x, y, z| {
    vec![
        d.m("mu", &d.a(x), &d.m("mu", y, z)),
        d.m("mu", &d.m("mu", x, y), &d.a(z)),
    ]
}];

const QUADRI_IDS: [Identity; 11] = [
    |d, x, y, z| {
        vec![
            d.m("prec_vdash", &d.m("prec_vdash", x, y), &d.a(z)),
            d.m("prec_vdash", &d.m("prec_dashv", x, y), &d.a(z)),
            d.m(
                "prec_vdash",
                &d.a(x),
                &add(&d.m("prec_vdash", y, z), &d.m("succ_vdash", y, z)),
            ),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("prec_vdash", &d.m("succ_vdash", x, y), &d.a(z)),
            d.m("prec_vdash", &d.m("succ_dashv", x, y), &d.a(z)),
            d.m("succ_vdash", &d.a(x), &d.m("prec_vdash", y, z)),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("succ_vdash", &d.a(x), &d.m("succ_vdash", y, z)),
            d.m(
                "succ_vdash",
                &add(&d.m("prec_vdash", x, y), &d.m("succ_vdash", x, y)),
                &d.a(z),
            ),
            d.m(
                "succ_vdash",
                &add(&d.m("prec_dashv", x, y), &d.m("succ_dashv", x, y)),
                &d.a(z),
            ),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("succ_vdash", &d.a(x), &d.m("succ_vdash", y, z)),
            d.m(
                "succ_vdash",
                &add(&d.m("prec_dashv", x, y), &d.m("succ_vdash", x, y)),
                &d.a(z),
            ),
            d.m(
                "succ_vdash",
                &add(&d.m("prec_vdash", x, y), &d.m("succ_dashv", x, y)),
                &d.a(z),
            ),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("prec_dashv", &d.m("prec_vdash", x, y), &d.a(z)),
            d.m(
                "prec_vdash",
                &d.a(x),
                &add(&d.m("prec_dashv", y, z), &d.m("succ_dashv", y, z)),
            ),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("prec_dashv", &d.m("succ_vdash", x, y), &d.a(z)),
            d.m("succ_vdash", &d.a(x), &d.m("prec_dashv", y, z)),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("succ_vdash", &d.a(x), &d.m("succ_dashv", y, z)),
            d.m(
                "succ_dashv",
                &add(&d.m("prec_vdash", x, y), &d.m("succ_vdash", x, y)),
                &d.a(z),
            ),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("prec_dashv", &d.m("prec_dashv", x, y), &d.a(z)),
            d.m(
                "prec_dashv",
                &d.a(x),
                &add(&d.m("prec_vdash", y, z), &d.m("succ_vdash", y, z)),
            ),
            d.m(
                "prec_dashv",
                &d.a(x),
                &add(&d.m("prec_dashv", y, z), &d.m("succ_dashv", y, z)),
            ),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("prec_dashv", &d.m("prec_dashv", x, y), &d.a(z)),
            d.m(
                "prec_dashv",
                &d.a(x),
                &add(&d.m("prec_vdash", y, z), &d.m("succ_dashv", y, z)),
            ),
            d.m(
                "prec_dashv",
                &d.a(x),
                &add(&d.m("prec_dashv", y, z), &d.m("succ_vdash", y, z)),
            ),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("prec_dashv", &d.m("succ_dashv", x, y), &d.a(z)),
            d.m("succ_dashv", &d.a(x), &d.m("prec_vdash", y, z)),
            d.m("succ_dashv", &d.a(x), &d.m("prec_dashv", y, z)),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("succ_dashv", &d.a(x), &d.m("succ_vdash", y, z)),
            d.m("succ_dashv", &d.a(x), &d.m("succ_dashv", y, z)),
            d.m(
                "succ_dashv",
                &add(&d.m("prec_dashv", x, y), &d.m("succ_dashv", x, y)),
                &d.a(z),
            ),
        ]
    },
];

const DIAS_IDS: [Identity; 5] = [
    |d, x, y, z| {
        vec![
            d.m("dashv", &d.m("dashv", x, y), &d.a(z)),
            d.m("dashv", &d.a(x), &d.m("dashv", y, z)),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("dashv", &d.m("dashv", x, y), &d.a(z)),
            d.m("dashv", &d.a(x), &d.m("vdash", y, z)),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("dashv", &d.m("vdash", x, y), &d.a(z)),
            d.m("vdash", &d.a(x), &d.m("dashv", y, z)),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("vdash", &d.m("dashv", x, y), &d.a(z)),
            d.m("vdash", &d.a(x), &d.m("vdash", y, z)),
        ]
    },
    |d, x, y, z| {
        vec![
            d.m("vdash", &d.m("vdash", x, y), &d.a(z)),
            d.m("vdash", &d.a(x), &d.m("vdash", y, z)),
        ]
    },
];

/// Number of (identity, basis triple) pairs where the members disagree.
pub fn oracle_failures(b: &AlgebraBundle) -> usize {
    let d = Dense::new(b);
    let ids: &[Identity] = match b.kind {
        Kind::Dendriform => &DEND_IDS,
        Kind::Associative => &ASSOC_IDS,
        Kind::Diassociative => &DIAS_IDS,
        Kind::QuadriDendriform => &QUADRI_IDS,
        other => panic!("no oracle for {other}"),
    };
    let mut failures = 0;
    for i in 0..d.n {
        for j in 0..d.n {
            for k in 0..d.n {
                let (x, y, z) = (d.e(i), d.e(j), d.e(k));
                for f in ids {
                    let members = f(&d, &x, &y, &z);
                    if members.iter().any(|m| m != &members[0]) {
                        failures += 1;
                    }
                }
            }
        }
    }
    failures
}

pub fn oracle_passes(b: &AlgebraBundle) -> bool {
    oracle_failures(b) == 0
}

pub fn corpus_root() -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Every binding of `params` to values in `values`.
pub fn all_bindings(params: &[String], values: &[i64]) -> Vec<homsplit::Bindings> {
    let mut out = vec![homsplit::Bindings::new()];
    for p in params {
        out = out
            .into_iter()
            .flat_map(|b| {
                values.iter().map(move |v| {
                    let mut b = b.clone();
                    b.insert(p.clone(), q(*v, 1));
                    b
                })
            })
            .collect();
    }
    out
}

pub fn corpus() -> homsplit::corpus::Corpus {
    homsplit::corpus::Corpus::open(corpus_root()).unwrap()
}

/// Loads a corpus instance by id (variant ids like `dim2.D3.literal` included).
pub fn instance(id: &str) -> AlgebraBundle {
    corpus()
        .instances()
        .unwrap()
        .into_iter()
        .find(|(i, _)| i == id)
        .unwrap_or_else(|| panic!("no corpus instance {id}"))
        .1
}

use homsplit::operators::{solve_operators_grid, OperatorContext, OperatorKind, VerifyOptions};
use homsplit::sample;
use homsplit::{ActionBundle, LinearMap, RepresentationBundle};
use rand::seq::SliceRandom;
use rand::Rng;

/// Every operator of `kind` on `ctx` with entries in {-1, 0, 1}.
pub fn grid_operators(ctx: &OperatorContext, kind: OperatorKind) -> Vec<LinearMap> {
    solve_operators_grid(ctx, kind, &sample::int_grid(-1, 1), &VerifyOptions::default()).unwrap()
}

/// Picks a nonzero solution when one exists.
fn pick<R: Rng>(rng: &mut R, sols: &[LinearMap]) -> Option<LinearMap> {
    let nonzero: Vec<&LinearMap> = sols.iter().filter(|t| !t.is_zero()).collect();
    match nonzero.choose(rng) {
        Some(t) => Some((*t).clone()),
        None => sols.first().cloned(),
    }
}

/// Random small dendriform algebra with a random representation and a valid
/// relative averaging operator from the grid.
pub fn rep_with_operator<R: Rng>(rng: &mut R) -> (RepresentationBundle, LinearMap) {
    loop {
        let n = rng.gen_range(1..=2);
        let base = sample::random_dendriform(rng, n).unwrap();
        let rep = sample::random_representation(rng, &base).unwrap();
        if rep.module_dim * n > 4 {
            continue;
        }
        let sols = grid_operators(
            &OperatorContext::Representation(rep.clone()),
            OperatorKind::RelativeAveraging,
        );
        if let Some(t) = pick(rng, &sols) {
            return (rep, t);
        }
    }
}

/// Adjoint action of a random small dendriform algebra with a valid
/// homomorphic relative averaging operator from the grid.
pub fn action_with_operator<R: Rng>(rng: &mut R) -> (ActionBundle, LinearMap) {
    loop {
        let n = rng.gen_range(1..=2);
        let base = sample::random_dendriform(rng, n).unwrap();
        let action = ActionBundle::adjoint(&base).unwrap();
        let sols = grid_operators(
            &OperatorContext::Action(action.clone()),
            OperatorKind::HomomorphicRelativeAveraging,
        );
        if let Some(t) = pick(rng, &sols) {
            return (action, t);
        }
    }
}

/// Random associative algebra of dimension at most 3 with an averaging
/// operator: the grid solutions, or 0 / identity.
pub fn associative_with_averaging<R: Rng>(rng: &mut R) -> (AlgebraBundle, LinearMap) {
    let a = sample::random_associative(rng).unwrap();
    let n = a.dim;
    let t = match rng.gen_range(0..4) {
        0 => LinearMap::zero(n, n),
        1 => LinearMap::identity(n),
        _ => {
            let sols = grid_operators(&OperatorContext::Algebra(a.clone()), OperatorKind::AveragingAssoc);
            pick(rng, &sols).unwrap_or_else(|| LinearMap::zero(n, n))
        }
    };
    (a, t)
}

/// Diassociative algebra induced from a random associative algebra with an
/// averaging operator, and a Rota-Baxter operator on it from the grid.
pub fn diassociative_with_rota_baxter<R: Rng>(rng: &mut R) -> (AlgebraBundle, LinearMap) {
    loop {
        let (a, h) = associative_with_averaging(rng);
        if a.dim > 3 {
            continue;
        }
        let d = homsplit::constructions::averaging_induced_diassociative(&a, &h).unwrap();
        let sols = grid_operators(&OperatorContext::Algebra(d.clone()), OperatorKind::RotaBaxter);
        if let Some(r) = pick(rng, &sols) {
            return (d, r);
        }
    }
}
