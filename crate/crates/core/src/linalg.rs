//! Exact Gaussian elimination over the rationals, plus the few symbolic
//! helpers (determinant, characteristic polynomial) needed elsewhere.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{LinearMap, Vector};
use crate::polyring::{Polynomial, Rational};

pub type RatMatrix = Vec<Vec<Rational>>;

/// Reduced row-echelon form with pivot columns; zero rows dropped.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> (RatMatrix, Vec<usize>) {
    let mut m: RatMatrix = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : A x = 0}`, one vector per free column, with a 1 in that
/// column.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> RatMatrix {
    let (m, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solution set of `A x = b` as `(particular, nullspace basis)`, or `None`
/// when inconsistent.
pub fn solve_affine(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<(Vec<Rational>, RatMatrix)> {
    let aug: RatMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug, ncols + 1);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &pc) in m.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some((x, nullspace(a, ncols)))
}

pub fn inverse(m: &[Vec<Rational>]) -> Option<RatMatrix> {
    let n = m.len();
    let aug: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> RatMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Rational::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &row[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Coefficients `[c_0, .., c_{n-1}]` of `det(tI - A) = t^n + c_{n-1} t^{n-1} + .. + c_0`,
/// by the Faddeev-LeVerrier recursion.
pub fn char_poly(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n];
    let ident = |c: &Rational| -> RatMatrix {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { c.clone() } else { Rational::zero() })
                    .collect()
            })
            .collect()
    };
    let mut m = ident(&Rational::zero());
    let mut c_prev = Rational::one();
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let am = mat_mul(a, &m);
        m = am
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, v)| if i == j { v + &c_prev } else { v })
                    .collect()
            })
            .collect();
        let am = mat_mul(a, &m);
        let tr: Rational = (0..n).map(|i| am[i][i].clone()).fold(Rational::zero(), |s, v| s + v);
        let c = -tr / Rational::from_integer(k.into());
        coeffs[n - k] = c.clone();
        c_prev = c;
    }
    coeffs
}

/// Rational entries of a parameter-free map, row-major.
pub fn to_rational(m: &LinearMap) -> Result<RatMatrix> {
    m.row_vecs()
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| p.as_constant().ok_or_else(|| Error::FreeParameters(p.parameters())))
                .collect()
        })
        .collect()
}

pub fn from_rational(m: &[Vec<Rational>]) -> LinearMap {
    LinearMap::from_rows(
        m.iter()
            .map(|r| r.iter().cloned().map(Polynomial::constant).collect())
            .collect(),
    )
    .expect("rectangular")
}

pub fn vector_to_rational(v: &Vector) -> Result<Vec<Rational>> {
    v.0.iter()
        .map(|p| p.as_constant().ok_or_else(|| Error::FreeParameters(p.parameters())))
        .collect()
}

/// Determinant by cofactor expansion over polynomial entries.
pub fn det(m: &LinearMap) -> Polynomial {
    fn go(rows: &[Vec<Polynomial>], cols: &[usize]) -> Polynomial {
        if cols.is_empty() {
            return Polynomial::one();
        }
        let mut acc = Polynomial::zero();
        for (pos, &c) in cols.iter().enumerate() {
            let e = &rows[0][c];
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = e * &go(&rows[1..], &rest);
            acc = if pos % 2 == 0 { &acc + &minor } else { &acc - &minor };
        }
        acc
    }
    let cols: Vec<usize> = (0..m.cols()).collect();
    go(m.row_vecs(), &cols)
}
