//! Seeded generators of small valid instances for property and acceptance
//! tests. Every generator is deterministic given the RNG state.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::axioms;
use crate::error::Result;
use crate::linalg;
use crate::model::{ActionBundle, AlgebraBundle, BilinearOp, Kind, LinearMap, RepresentationBundle};
use crate::morphisms::push_forward;
use crate::polyring::{rat, Polynomial, Rational};

pub use rand::SeedableRng;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Polynomial {
    Polynomial::from_int(rng.gen_range(lo..=hi))
}

/// Matrix with entries drawn from `grid`.
pub fn grid_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, grid: &[Rational]) -> LinearMap {
    let entries = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| Polynomial::constant(grid.choose(rng).expect("nonempty grid").clone()))
                .collect()
        })
        .collect();
    LinearMap::from_rows(entries).expect("rectangular")
}

pub fn int_grid(lo: i64, hi: i64) -> Vec<Rational> {
    (lo..=hi).map(|n| rat(n, 1)).collect()
}

/// Invertible matrix with small integer entries.
pub fn invertible<R: Rng>(rng: &mut R, n: usize) -> LinearMap {
    let grid = int_grid(-2, 2);
    loop {
        let s = grid_matrix(rng, n, n, &grid);
        if linalg::inverse(&linalg::to_rational(&s).expect("constant")).is_some() {
            return s;
        }
    }
}

fn random_twist<R: Rng>(rng: &mut R, n: usize) -> LinearMap {
    match rng.gen_range(0..3) {
        0 => LinearMap::identity(n),
        1 => LinearMap::scalar(n, small_int(rng, -2, 2)),
        _ => grid_matrix(rng, n, n, &int_grid(-1, 1)),
    }
}

fn sparse_op<R: Rng>(rng: &mut R, n: usize, density: f64, targets: &[usize], sources: &[usize]) -> BilinearOp {
    let mut op = BilinearOp::square(n);
    for &i in sources {
        for &j in sources {
            for &k in targets {
                if rng.gen_bool(density) {
                    let c = rng.gen_range(-2..=2);
                    if c != 0 {
                        op.set(i, j, k, Polynomial::from_int(c));
                    }
                }
            }
        }
    }
    op
}

/// Products among `e_1..e_{n-1}` land in `span{e_n}` and `e_n` annihilates;
/// every product of three elements vanishes, so any twist works.
pub fn nilpotent_dendriform<R: Rng>(rng: &mut R, n: usize) -> AlgebraBundle {
    let sources: Vec<usize> = (1..n).collect();
    let prec = sparse_op(rng, n, 0.5, &[n], &sources);
    let succ = sparse_op(rng, n, 0.5, &[n], &sources);
    AlgebraBundle::new(
        Kind::Dendriform,
        random_twist(rng, n),
        vec![("prec", prec), ("succ", succ)],
    )
}

/// `k[t]/(t^n)` with basis `e_i = t^(i-1)`.
pub fn truncated_polynomial(n: usize) -> BilinearOp {
    let mut op = BilinearOp::square(n);
    for i in 1..=n {
        for j in 1..=n {
            if i + j - 1 <= n {
                op.set(i, j, i + j - 1, Polynomial::one());
            }
        }
    }
    op
}

/// Integration `t^k -> t^(k+1)/(k+1)` on `k[t]/(t^n)`, a weight-zero
/// Rota-Baxter operator of the truncated product.
pub fn integration(n: usize) -> LinearMap {
    let mut r = LinearMap::zero(n, n);
    for k in 1..n {
        r.set(k + 1, k, Polynomial::constant(rat(1, k as i64)));
    }
    r
}

/// Dendriform structure `x prec y = x R(y)`, `x succ y = R(x) y` from the
/// integration operator, with twist `c id`.
pub fn integration_dendriform(n: usize, c: i64) -> AlgebraBundle {
    let mu = truncated_polynomial(n);
    let r = integration(n);
    let prec = BilinearOp::tabulate(n, n, n, |x, y| mu.apply(x, &r.apply(y)?)).expect("dims");
    let succ = BilinearOp::tabulate(n, n, n, |x, y| mu.apply(&r.apply(x)?, y)).expect("dims");
    AlgebraBundle::new(
        Kind::Dendriform,
        LinearMap::scalar(n, Polynomial::from_int(c)),
        vec![("prec", prec), ("succ", succ)],
    )
}

/// Fully random sparse candidate; usually not dendriform.
pub fn sparse_dendriform_candidate<R: Rng>(rng: &mut R, n: usize, density: f64) -> AlgebraBundle {
    let all: Vec<usize> = (1..=n).collect();
    let prec = sparse_op(rng, n, density, &all, &all);
    let succ = sparse_op(rng, n, density, &all, &all);
    AlgebraBundle::new(
        Kind::Dendriform,
        random_twist(rng, n),
        vec![("prec", prec), ("succ", succ)],
    )
}

/// Draws candidates by randomizing structure constants (sparse random,
/// nilpotent-shaped, integration-based, each pushed through a random change
/// of basis) and keeps the first that passes the dendriform axioms.
pub fn random_dendriform<R: Rng>(rng: &mut R, n: usize) -> Result<AlgebraBundle> {
    loop {
        let candidate = match rng.gen_range(0..4) {
            0 => sparse_dendriform_candidate(rng, n, 0.15),
            1 | 2 => nilpotent_dendriform(rng, n),
            _ => integration_dendriform(n, rng.gen_range(-2..=2)),
        };
        let s = invertible(rng, n);
        let candidate = push_forward(&candidate, &s)?;
        if axioms::check_dendriform(&candidate)?.passed() {
            return Ok(candidate);
        }
    }
}

/// Associative instances with twist `c id`: zero, truncated polynomial,
/// upper-triangular 2x2 matrices, pushed through a random change of basis.
pub fn random_associative<R: Rng>(rng: &mut R) -> Result<AlgebraBundle> {
    let c = Polynomial::from_int(rng.gen_range(-2..=2));
    let (mu, n) = match rng.gen_range(0..4) {
        0 => {
            let n = rng.gen_range(1..=3);
            (BilinearOp::square(n), n)
        }
        1 | 2 => {
            let n = rng.gen_range(1..=3);
            (truncated_polynomial(n), n)
        }
        _ => (upper_triangular(), 3),
    };
    let a = AlgebraBundle::new(Kind::Associative, LinearMap::scalar(n, c), vec![("mu", mu)]);
    let s = invertible(rng, n);
    push_forward(&a, &s)
}

/// Upper-triangular 2x2 matrices on the basis `E11, E12, E22`.
pub fn upper_triangular() -> BilinearOp {
    let one = Polynomial::one;
    BilinearOp::from_entries(
        3,
        [(1, 1, 1, one()), (1, 2, 2, one()), (2, 3, 2, one()), (3, 3, 3, one())],
    )
}

/// Adjoint representation, or a trivial one with a random module twist.
pub fn random_representation<R: Rng>(rng: &mut R, base: &AlgebraBundle) -> Result<RepresentationBundle> {
    if rng.gen_bool(0.7) {
        RepresentationBundle::adjoint(base)
    } else {
        let m = rng.gen_range(1..=2);
        RepresentationBundle::trivial(base, random_twist(rng, m))
    }
}

/// Operator candidates biased toward valid ones: zero, scalars, grid-random.
pub fn operator_candidate<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> LinearMap {
    match rng.gen_range(0..6) {
        0 => LinearMap::zero(rows, cols),
        1 | 2 if rows == cols => LinearMap::scalar(rows, small_int(rng, -2, 2)),
        _ => grid_matrix(rng, rows, cols, &int_grid(-1, 1)),
    }
}

pub fn adjoint_action(base: &AlgebraBundle) -> Result<ActionBundle> {
    ActionBundle::adjoint(base)
}
