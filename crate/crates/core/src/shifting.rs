//! Exterior algebraic shifting over a prime field, and the shifting test
//! for volume rigidity.
//!
//! `Δ(Σ)_k` is the greedy column basis, in a linear extension of the
//! dominance order, of the `k`-th compound matrix of a random `n × n`
//! matrix restricted to the rows `Σ_k`. Each run is repeated with an
//! independent matrix and the two results must coincide.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::{
    dominance_leq, k_subsets, rigidity_witness_tuple, ComplexJson, FVector, Simplex, SimplicialComplex,
};
use crate::error::{Error, Result};
use crate::homology::{betti, BettiVector};
use crate::linalg::{determinant, Field, FieldMatrix, IncrementalBasis, PrimeField};
use crate::rigidity::GenericOptions;

/// Independent matrix pairs drawn before an unstable shift is fatal.
pub const SHIFT_ATTEMPTS: usize = 3;

/// A total order on equal-size sorted tuples extending dominance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinearExtension {
    #[default]
    Lex,
    Colex,
    /// Tuples of the dominance down-set of the given tuple first, then the
    /// rest; lexicographic within each part. Tuples of another size are
    /// ordered lexicographically.
    DownSetFirst(Simplex),
}

impl LinearExtension {
    pub fn cmp(&self, a: &Simplex, b: &Simplex) -> Ordering {
        match self {
            LinearExtension::Lex => a.vertices().cmp(b.vertices()),
            LinearExtension::Colex => a.vertices().iter().rev().cmp(b.vertices().iter().rev()),
            LinearExtension::DownSetFirst(top) => {
                let below = |s: &Simplex| s.len() == top.len() && dominance_leq(s, top).unwrap_or(false);
                below(b).cmp(&below(a)).then_with(|| a.vertices().cmp(b.vertices()))
            }
        }
    }
}

impl std::str::FromStr for LinearExtension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(Self::Lex),
            "colex" => Ok(Self::Colex),
            other if other.starts_with("downset:") => {
                let v = other["downset:".len()..]
                    .split(',')
                    .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Invalid(e.to_string())))
                    .collect::<Result<Vec<u32>>>()?;
                Ok(Self::DownSetFirst(Simplex::new(v)?))
            }
            other => Err(Error::Invalid(format!("unknown linear extension {other:?}"))),
        }
    }
}

fn minor<F: Field>(field: &F, x: &FieldMatrix<F>, rows: &Simplex, cols: &Simplex) -> F::Elem {
    let m: Vec<Vec<F::Elem>> = rows
        .vertices()
        .iter()
        .map(|&i| {
            cols.vertices()
                .iter()
                .map(|&j| x.get(i as usize - 1, j as usize - 1).clone())
                .collect()
        })
        .collect();
    determinant(field, &m)
}

fn check_rows(n: usize, k: usize, rows: &[Simplex]) -> Result<()> {
    if k >= n {
        return Err(Error::OutOfRange(format!("compound index {k} needs k < {n}")));
    }
    for r in rows {
        if r.len() != k + 1 || r.vertices().iter().any(|&v| v as usize > n) {
            return Err(Error::SizeMismatch(format!("{r:?} is not a {}-subset of [{n}]", k + 1)));
        }
    }
    Ok(())
}

/// `X^∧k` restricted to `rows`: entry `(I, J)` is `det X[I, J]`; columns are
/// all `(k+1)`-subsets of `[n]` in lexicographic order.
pub fn compound_matrix<F: Field>(
    x: &FieldMatrix<F>,
    k: usize,
    rows: &[Simplex],
) -> Result<FieldMatrix<F, Simplex, Simplex>> {
    let n = x.nrows();
    if x.ncols() != n {
        return Err(Error::DimensionMismatch("compound of a non-square matrix".into()));
    }
    check_rows(n, k, rows)?;
    let cols: Vec<Simplex> = k_subsets(n as u32, k + 1).collect();
    let field = x.field().clone();
    let mut m = FieldMatrix::zeros(field.clone(), rows.to_vec(), cols.clone())?;
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            m.set(i, j, minor(&field, x, r, c));
        }
    }
    Ok(m)
}

/// Greedy column basis of `X^∧k` restricted to `rows`, scanning columns in
/// `ext` order and computing only the columns scanned.
pub fn greedy_compound_basis<F: Field>(
    x: &FieldMatrix<F>,
    k: usize,
    rows: &[Simplex],
    ext: &LinearExtension,
) -> Result<Vec<Simplex>> {
    let n = x.nrows();
    check_rows(n, k, rows)?;
    let field = x.field().clone();
    let mut cols: Vec<Simplex> = k_subsets(n as u32, k + 1).collect();
    cols.sort_by(|a, b| ext.cmp(a, b));
    let mut basis = IncrementalBasis::new(field.clone());
    let mut chosen = Vec::new();
    for c in cols {
        if chosen.len() == rows.len() {
            break;
        }
        let column: Vec<F::Elem> = rows.iter().map(|r| minor(&field, x, r, &c)).collect();
        if basis.insert(column) {
            chosen.push(c);
        }
    }
    Ok(chosen)
}

fn random_invertible(field: &PrimeField, n: usize, opts: &GenericOptions, stream: usize) -> FieldMatrix<PrimeField> {
    let mut rng = opts.rng(stream);
    loop {
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..n).map(|_| field.random(&mut rng)).collect())
            .collect();
        let m = FieldMatrix::from_rows(field.clone(), n, rows).expect("square");
        if m.rank() == n {
            return m;
        }
    }
}

/// The shifted complex with the data needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftedComplex {
    pub complex: ComplexJson,
    pub extension: LinearExtension,
    pub seed: u64,
    pub prime: u64,
    /// Chosen column labels, one list per dimension, in scan order.
    pub chosen: Vec<Vec<Simplex>>,
    #[serde(skip)]
    shifted: SimplicialComplex,
}

impl ShiftedComplex {
    pub fn as_complex(&self) -> &SimplicialComplex {
        &self.shifted
    }
}

fn shift_dims(
    complex: &SimplicialComplex,
    dims: &[usize],
    ext: &LinearExtension,
    opts: &GenericOptions,
) -> Result<Vec<Vec<Simplex>>> {
    let n = complex.n() as usize;
    let field = opts.field()?;
    let run = |stream: usize| -> Result<Vec<Vec<Simplex>>> {
        let x = random_invertible(&field, n, opts, stream);
        dims.iter()
            .map(|&k| {
                let rows: Vec<Simplex> = complex.faces(k).iter().cloned().collect();
                greedy_compound_basis(&x, k, &rows, ext)
            })
            .collect()
    };
    let mut last_bad = 0;
    for attempt in 0..SHIFT_ATTEMPTS {
        let a = run(2 * attempt)?;
        let b = run(2 * attempt + 1)?;
        match a.iter().zip(&b).position(|(x, y)| x != y) {
            None => return Ok(a),
            Some(i) => last_bad = dims[i],
        }
    }
    Err(Error::UnstableShift(last_bad))
}

/// Exterior algebraic shift of every dimension of `complex`.
pub fn exterior_shift(
    complex: &SimplicialComplex,
    ext: LinearExtension,
    opts: &GenericOptions,
) -> Result<ShiftedComplex> {
    let dims: Vec<usize> = (0..=complex.dim()).collect();
    let chosen = shift_dims(complex, &dims, &ext, opts)?;
    let faces: Vec<BTreeSet<Simplex>> = chosen.iter().map(|c| c.iter().cloned().collect()).collect();
    let shifted = SimplicialComplex::from_face_sets(complex.n(), faces)?;
    Ok(ShiftedComplex {
        complex: ComplexJson::from(&shifted),
        extension: ext,
        seed: opts.seed,
        prime: opts.prime,
        chosen,
        shifted,
    })
}

/// Outcome of the shifting rigidity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftRigidity {
    pub rigid: bool,
    /// The tuple whose membership in `Δ(Σ)_d` decides rigidity.
    pub witness: Simplex,
    /// `Δ(Σ)_d`.
    pub shifted_top: Vec<Simplex>,
}

/// Rigid iff `w = 1 3 4 … (d+1) n` (or `1 2 … (d+1)` when `n = d+1`) lies
/// in `Δ(Σ)_d` for the extension that lists the dominance down-set of `w`
/// first. For `d ≤ 2` this extension agrees with lex on `(d+1)`-tuples.
/// Only the top dimension is shifted.
pub fn shift_rigidity_test(complex: &SimplicialComplex, opts: &GenericOptions) -> Result<ShiftRigidity> {
    let (n, d) = (complex.n(), complex.dim());
    let witness = rigidity_witness_tuple(n, d)?;
    if !opts.ignore_impure {
        complex.require_pure()?;
    }
    let ext = LinearExtension::DownSetFirst(witness.clone());
    let top = shift_dims(complex, &[d], &ext, opts)?.remove(0);
    Ok(ShiftRigidity {
        rigid: top.contains(&witness),
        witness,
        shifted_top: top,
    })
}

/// The three shifting invariants, plus shiftedness of the output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftReport {
    pub f_vector: FVector,
    pub f_vector_preserved: bool,
    pub betti: BettiVector,
    pub shifted_betti: BettiVector,
    pub betti_preserved: bool,
    /// Top Betti number equals the number of top faces missing vertex 1.
    pub top_betti_counts_faces_missing_one: bool,
    pub is_shifted: bool,
}

impl ShiftReport {
    pub fn all_pass(&self) -> bool {
        self.f_vector_preserved && self.betti_preserved && self.top_betti_counts_faces_missing_one && self.is_shifted
    }
}

pub fn verify_shift_properties(complex: &SimplicialComplex, shifted: &ShiftedComplex) -> ShiftReport {
    let delta = shifted.as_complex();
    let b = betti(complex);
    let bd = betti(delta);
    let missing_one = delta.top_faces().iter().filter(|s| !s.contains(1)).count() as u64;
    ShiftReport {
        f_vector: complex.f_vector(),
        f_vector_preserved: complex.f_vector() == delta.f_vector(),
        top_betti_counts_faces_missing_one: bd.top() == missing_one,
        betti_preserved: b == bd,
        betti: b,
        shifted_betti: bd,
        is_shifted: delta.is_shifted(),
    }
}
