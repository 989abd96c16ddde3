//! Face-number lower bounds for bases of the volume rigidity matroid.

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::rigidity::required_rank;

/// Emitted with every audit: the bounds are necessary, not sufficient.
pub const BOUNDS_CAVEAT: &str =
    "meeting every face-number bound does not imply volume rigidity; use a rank test to decide";

/// `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> u64 {
    if b < 0 || a < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1))
}

/// `C(d+1, k+1) + Σ_{l=0}^{d-1} (n-d-1) C(d-l, k-l)`.
pub fn face_lower_bound(n: u32, d: usize, k: usize) -> Result<u64> {
    if (n as usize) < d + 1 {
        return Err(Error::TooFewVertices { n, d });
    }
    if k > d {
        return Err(Error::OutOfRange(format!("face dimension {k} exceeds d = {d}")));
    }
    let (n, d, k) = (n as i64, d as i64, k as i64);
    let sum: u64 = (0..d).map(|l| binomial(d - l, k - l)).sum();
    Ok(binomial(d + 1, k + 1) + (n - d - 1) as u64 * sum)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub k: usize,
    pub bound: u64,
    pub actual: u64,
    pub meets: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundVerdict {
    BoundsMet,
    /// Has exactly as many `d`-faces as a basis but violates a bound.
    CannotBeBasis,
    /// Violates a bound, so contains no basis whose faces it covers.
    CannotBeRigid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: u32,
    pub d: usize,
    pub rows: Vec<BoundRow>,
    pub verdict: BoundVerdict,
    pub caveat: &'static str,
}

impl BoundReport {
    pub fn meets_all(&self) -> bool {
        self.rows.iter().all(|r| r.meets)
    }

    pub fn at_equality(&self) -> bool {
        self.rows.iter().all(|r| r.actual == r.bound)
    }
}

/// Compare `f(Σ)_k` against the bound for each `0 ≤ k ≤ d`.
///
/// A rigid complex contains a basis, and every face of that basis is a face
/// of the complex, so a violated bound also rules out rigidity.
pub fn audit_f_vector(complex: &SimplicialComplex) -> Result<BoundReport> {
    complex.require_pure()?;
    let (n, d) = (complex.n(), complex.dim());
    let f = complex.f_vector();
    let rows = (0..=d)
        .map(|k| {
            let bound = face_lower_bound(n, d, k)?;
            let actual = f.get(k as isize);
            Ok(BoundRow {
                k,
                bound,
                actual,
                meets: actual >= bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = if rows.iter().all(|r| r.meets) {
        BoundVerdict::BoundsMet
    } else if complex.top_faces().len() == required_rank(n, d) {
        BoundVerdict::CannotBeBasis
    } else {
        BoundVerdict::CannotBeRigid
    };
    Ok(BoundReport {
        n,
        d,
        rows,
        verdict,
        caveat: BOUNDS_CAVEAT,
    })
}
