//! The coboundary matrix `D^d` of the complete complex, its restriction `Φ`
//! to columns avoiding vertex 1, and the Grassmannian view of rigidity
//! independence.
//!
//! After translating `p(1)` to the origin, every signed volume is a signed
//! sum of `d × d` minors of the matrix `[p(2) … p(n)]`: the volume vector
//! equals `Φ` applied to the Plücker vector of that matrix. The rank of a
//! set of volumes is therefore the rank of `Φ_S · J`, with `J` the Jacobian
//! of the Plücker map at a generic point of the affine cone over
//! `Gr(d, n-1)`.

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complex::{k_subsets, k_subsets_of, Simplex};
use crate::error::{Error, Result};
use crate::linalg::{determinant, Field, FieldMatrix, PrimeField, Rationals};
use crate::rigidity::{generic_rank, required_rank, GenericOptions};

fn check_size(n: u32, d: usize) -> Result<()> {
    if d == 0 || (n as usize) < d + 1 {
        return Err(Error::TooFewVertices { n, d });
    }
    Ok(())
}

/// `D^d`: rows `C([n], d+1)`, columns `C([n], d)`, entry `(-1)^j` when the
/// column is the row with its `j`-th vertex (0-based) removed.
pub fn coboundary_matrix(n: u32, d: usize) -> Result<FieldMatrix<Rationals, Simplex, Simplex>> {
    check_size(n, d)?;
    let rows: Vec<Simplex> = k_subsets(n, d + 1).collect();
    let cols: Vec<Simplex> = k_subsets(n, d).collect();
    let mut m = FieldMatrix::zeros(Rationals, rows.clone(), cols)?;
    for (i, sigma) in rows.iter().enumerate() {
        for (j, tau) in sigma.boundary_faces().enumerate() {
            let c = m.col_index(&tau).expect("face of a row simplex");
            m.set(i, c, Rationals.from_i64(if j % 2 == 0 { 1 } else { -1 }));
        }
    }
    Ok(m)
}

/// `Φ`: the columns of `D^d` labelled by `d`-subsets of `{2, …, n}`.
pub fn phi_matrix(n: u32, d: usize) -> Result<FieldMatrix<Rationals, Simplex, Simplex>> {
    let dd = coboundary_matrix(n, d)?;
    let cols: Vec<Simplex> = dd.col_labels().iter().filter(|t| !t.contains(1)).cloned().collect();
    dd.restrict_cols(&cols)
}

/// `Φ` restricted to the rows indexed by `facets` (in the given order).
pub fn phi_rows(facets: &[Simplex], n: u32, d: usize) -> Result<FieldMatrix<Rationals, Simplex, Simplex>> {
    let phi = phi_matrix(n, d)?;
    for s in facets {
        if phi.row_index(s).is_none() {
            return Err(Error::SizeMismatch(format!("{s:?} is not a {d}-subset of [{n}]")));
        }
    }
    phi.restrict_rows(facets)
}

/// Lexicographically greedy column basis of `Φ_facets`.
pub fn phi_column_basis(facets: &[Simplex], n: u32, d: usize) -> Result<Vec<Simplex>> {
    if facets.is_empty() {
        return Err(Error::EmptyFacets);
    }
    Ok(phi_rows(facets, n, d)?.greedy_column_basis(|a, b| a.cmp(b)))
}

/// Jacobian of the Plücker coordinates of `λ · [I_d | A]` (columns labelled
/// `2..=n`) with respect to `(λ, A)`, at a random point. Rows are the
/// `d`-subsets of `{2, …, n}` in lexicographic order.
pub fn plucker_jacobian(field: &PrimeField, n: u32, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<u64>>> {
    check_size(n, d)?;
    let m = n as usize - 1;
    let lambda = field.random(rng);
    let a: Vec<Vec<u64>> = (0..d)
        .map(|_| (0..m - d).map(|_| field.random(rng)).collect())
        .collect();
    // column c of the chart matrix (vertex c + 2)
    let chart_col = |c: usize| -> Vec<u64> {
        (0..d)
            .map(|r| {
                let x = if c < d { u64::from(r == c) } else { a[r][c - d] };
                field.mul(&lambda, &x)
            })
            .collect()
    };
    let labels: Vec<u32> = (2..=n).collect();
    let d_elem = field.from_i64(d as i64);
    let lambda_inv = field.inv(&lambda);
    Ok(k_subsets_of(&labels, d)
        .map(|tau| {
            let cols: Vec<Vec<u64>> = tau.vertices().iter().map(|&v| chart_col(v as usize - 2)).collect();
            let sub: Vec<Vec<u64>> = (0..d).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
            let mut row = vec![0u64; 1 + d * (m - d)];
            // P is homogeneous of degree d in λ
            row[0] = field.mul(&d_elem, &field.mul(&lambda_inv, &determinant(field, &sub)));
            for (pos, &v) in tau.vertices().iter().enumerate() {
                let c = v as usize - 2;
                if c < d {
                    continue;
                }
                for r in 0..d {
                    let minor: Vec<Vec<u64>> = (0..d)
                        .filter(|&rr| rr != r)
                        .map(|rr| (0..d).filter(|&cc| cc != pos).map(|cc| sub[rr][cc]).collect())
                        .collect();
                    let mut cof = determinant(field, &minor);
                    if (r + pos) % 2 == 1 {
                        cof = field.neg(&cof);
                    }
                    row[1 + r * (m - d) + (c - d)] = field.mul(&lambda, &cof);
                }
            }
            row
        })
        .collect())
}

/// Generic rank of `Φ_facets · J` over random chart points (maximum over
/// trials).
pub fn grassmann_rank(facets: &[Simplex], n: u32, d: usize, opts: &GenericOptions) -> Result<usize> {
    let phi = phi_rows(facets, n, d)?;
    let field = opts.field()?;
    let ceiling = facets.len().min(required_rank(n, d));
    let phi_mod: Vec<Vec<u64>> = phi
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| field.from_rational(x).expect("integer entries"))
                .collect()
        })
        .collect();
    let mut best = 0;
    for t in 0..opts.trials.max(1) {
        if best == ceiling {
            break;
        }
        let j = plucker_jacobian(&field, n, d, &mut opts.rng(t))?;
        let prod: Vec<Vec<u64>> = phi_mod
            .iter()
            .map(|row| {
                (0..j[0].len())
                    .map(|c| {
                        row.iter().zip(&j).fold(0, |acc, (x, jr)| {
                            if *x == 0 {
                                acc
                            } else {
                                field.add(&acc, &field.mul(x, &jr[c]))
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        let ncols = prod.first().map_or(0, Vec::len);
        best = best.max(FieldMatrix::from_rows(field, ncols, prod)?.rank());
    }
    Ok(best)
}

/// Independence of a facet set judged by two routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    /// Rows of the rigidity matrix independent at random points.
    pub rigidity_independent: bool,
    /// `Φ_facets` has full row rank over ℚ (necessary for independence).
    pub phi_full_row_rank: bool,
    pub phi_rank: usize,
    /// Lexicographically greedy column basis of `Φ_facets`.
    pub column_basis: Vec<Simplex>,
    /// Rows of `Φ_facets · J` independent at random chart points.
    pub grassmann_independent: bool,
    /// Both routes give the same answer and the necessary condition holds.
    pub agree: bool,
}

pub fn cross_check_independence(
    facets: &[Simplex],
    n: u32,
    d: usize,
    opts: &GenericOptions,
) -> Result<IndependenceReport> {
    let rigidity_independent = generic_rank(facets, n, d, opts)?.rank == facets.len();
    let (phi_rank, column_basis) = if facets.is_empty() {
        (0, Vec::new())
    } else {
        let basis = phi_column_basis(facets, n, d)?;
        (basis.len(), basis)
    };
    let phi_full_row_rank = phi_rank == facets.len();
    let grassmann_independent = grassmann_rank(facets, n, d, opts)? == facets.len();
    Ok(IndependenceReport {
        rigidity_independent,
        phi_full_row_rank,
        phi_rank,
        column_basis,
        grassmann_independent,
        agree: rigidity_independent == grassmann_independent && (!rigidity_independent || phi_full_row_rank),
    })
}
