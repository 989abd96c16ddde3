//! Independent oracles and samplers shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use volrig::complex::{k_subsets, Simplex, SimplicialComplex};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Q::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Q>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// `det [1 … 1; p(i_0) … p(i_d)]` for the sorted vertices of `s`.
pub fn volume(points: &[Vec<Q>], s: &Simplex) -> Q {
    let d = points[0].len();
    let mut m = vec![vec![q(1); d + 1]];
    for c in 0..d {
        m.push(
            s.vertices()
                .iter()
                .map(|&v| points[v as usize - 1][c].clone())
                .collect(),
        );
    }
    det(&m)
}

/// Rigidity matrix by unit finite differences. The volume is affine in
/// each single coordinate, so the difference quotient is exact.
pub fn fd_rigidity_matrix(points: &[Vec<Q>], facets: &[Simplex]) -> Vec<Vec<Q>> {
    let (n, d) = (points.len(), points[0].len());
    facets
        .iter()
        .map(|s| {
            let base = volume(points, s);
            let mut row = Vec::with_capacity(n * d);
            for v in 0..n {
                for c in 0..d {
                    let mut moved = points.to_vec();
                    moved[v][c] += q(1);
                    row.push(volume(&moved, s) - &base);
                }
            }
            row
        })
        .collect()
}

/// Rank over ℚ by plain Gaussian elimination.
pub fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for k in c..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn random_points(rng: &mut ChaCha8Rng, n: u32, d: usize) -> Vec<Vec<Q>> {
    (0..n)
        .map(|_| (0..d).map(|_| q(rng.gen_range(-1_000_000..=1_000_000))).collect())
        .collect()
}

/// Generic rank of the rows for `facets`, as the maximum over two
/// random integer configurations.
pub fn oracle_rank(rng: &mut ChaCha8Rng, facets: &[Simplex], n: u32, d: usize) -> usize {
    if facets.is_empty() {
        return 0;
    }
    (0..2)
        .map(|_| rank(fd_rigidity_matrix(&random_points(rng, n, d), facets)))
        .max()
        .unwrap()
}

pub fn oracle_required(n: u32, d: usize) -> usize {
    d * n as usize - (d * d + d - 1)
}

/// `m` distinct random `d`-simplices on `[n]`.
pub fn random_facets(rng: &mut ChaCha8Rng, n: u32, d: usize, m: usize) -> Vec<Simplex> {
    let all: Vec<Simplex> = k_subsets(n, d + 1).collect();
    let m = m.min(all.len());
    let mut idx = sample(rng, all.len(), m).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| all[i].clone()).collect()
}

/// A random pure complex whose facet count sits near the basis size.
pub fn random_complex(rng: &mut ChaCha8Rng, n: u32, d: usize) -> SimplicialComplex {
    let req = oracle_required(n, d);
    let lo = req.saturating_sub(1).max(1);
    let m = rng.gen_range(lo..=req + 2);
    SimplicialComplex::from_simplices(n, random_facets(rng, n, d, m)).unwrap()
}

pub fn is_integral_nonneg(x: &Q) -> bool {
    x.is_integer() && !x.is_negative()
}

pub fn is_one(x: &Q) -> bool {
    x.is_one()
}

/// Solve `a x = b` when `a` has full column rank and the system is
/// consistent; `None` otherwise.
pub fn solve_full_rank(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let cols = a.first()?.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect())
        .collect();
    let rows = m.len();
    let mut r = 0;
    for c in 0..cols {
        let p = (r..rows).find(|&i| !m[i][c].is_zero())?;
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for k in c..=cols {
            m[r][k] = &m[r][k] / &pivot;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    if m[cols..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|i| m[i][cols].clone()).collect())
}

/// The volume of `s` as an affine function `g · x + c` of the position
/// `x` of its vertex `v`.
pub fn affine_in(points: &[Option<Vec<Q>>], s: &Simplex, v: u32, d: usize) -> (Vec<Q>, Q) {
    let at = |x: Vec<Q>| {
        let pts: Vec<Vec<Q>> = points
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if i as u32 + 1 == v {
                    x.clone()
                } else {
                    p.clone().unwrap_or_else(|| vec![q(0); d])
                }
            })
            .collect();
        volume(&pts, s)
    };
    let c = at(vec![q(0); d]);
    let g = (0..d)
        .map(|k| {
            let mut e = vec![q(0); d];
            e[k] = q(1);
            at(e) - &c
        })
        .collect();
    (g, c)
}
