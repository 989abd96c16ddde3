//! Simplicial boundary matrices and reduced rational Betti numbers.
//!
//! Betti numbers are reduced and computed over ℚ, so integral torsion is
//! invisible. Only the top Betti number feeds rigidity logic, and the top
//! homology group is free, so this does not affect any verdict. `β_0` is the
//! reduced value (number of connected components minus one).

use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{Field, FieldMatrix, Rationals};

/// Reduced Betti numbers `β_0..=β_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<u64>);

impl BettiVector {
    pub fn get(&self, k: usize) -> u64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn top(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }
}

/// `∂_k`: rows `Σ_{k-1}`, columns `Σ_k`, entry `(-1)^j` when the row face is
/// the column face with its `j`-th vertex (0-based) deleted.
pub fn boundary_matrix(complex: &SimplicialComplex, k: usize) -> Result<FieldMatrix<Rationals, Simplex, Simplex>> {
    if k == 0 || k > complex.dim() {
        return Err(Error::OutOfRange(format!(
            "boundary index k = {k} outside 1..={}",
            complex.dim()
        )));
    }
    let rows: Vec<Simplex> = complex.faces(k - 1).iter().cloned().collect();
    let cols: Vec<Simplex> = complex.faces(k).iter().cloned().collect();
    let f = Rationals;
    let mut m = FieldMatrix::zeros(f, rows.clone(), cols.clone())?;
    let index: std::collections::HashMap<&Simplex, usize> = rows.iter().enumerate().map(|(i, s)| (s, i)).collect();
    for (j, sigma) in cols.iter().enumerate() {
        for (pos, face) in sigma.boundary_faces().enumerate() {
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            m.set(index[&face], j, f.from_i64(sign));
        }
    }
    Ok(m)
}

/// Reduced Betti numbers over ℚ.
pub fn betti(complex: &SimplicialComplex) -> BettiVector {
    let d = complex.dim();
    // rank of ∂_k for k = 0..=d+1, with ∂_0 the augmentation and ∂_{d+1} = 0
    let mut ranks = vec![0usize; d + 2];
    ranks[0] = usize::from(!complex.faces(0).is_empty());
    for (k, rank) in ranks.iter_mut().enumerate().take(d + 1).skip(1) {
        *rank = boundary_matrix(complex, k).expect("k in range").rank();
    }
    BettiVector(
        (0..=d)
            .map(|k| (complex.faces(k).len() - ranks[k] - ranks[k + 1]) as u64)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{complete_complex, lgrc, simplex};
    use num_traits::Zero;

    fn bipyramid() -> SimplicialComplex {
        SimplicialComplex::from_facets(5, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 5], [2, 4, 5], [3, 4, 5]]).unwrap()
    }

    #[test]
    fn triangle_boundary_signs() {
        let tri = SimplicialComplex::from_facets(3, [[1, 2, 3]]).unwrap();
        let d2 = boundary_matrix(&tri, 2).unwrap();
        let col = d2.col_index(&simplex(&[1, 2, 3])).unwrap();
        let at = |s: &[u32]| d2.get(d2.row_index(&simplex(s)).unwrap(), col).clone();
        assert_eq!(at(&[2, 3]), Rationals.from_i64(1));
        assert_eq!(at(&[1, 3]), Rationals.from_i64(-1));
        assert_eq!(at(&[1, 2]), Rationals.from_i64(1));
        let d1 = boundary_matrix(&tri, 1).unwrap();
        let composed = d1.mul(&d2).unwrap();
        assert!(composed.rows().iter().flatten().all(|x| x.is_zero()));
    }

    #[test]
    fn bipyramid_boundary_rank() {
        let d2 = boundary_matrix(&bipyramid(), 2).unwrap();
        assert_eq!((d2.nrows(), d2.ncols()), (9, 6));
        assert_eq!(d2.rank(), 5);
        assert!(boundary_matrix(&bipyramid(), 3).is_err());
        assert!(boundary_matrix(&bipyramid(), 0).is_err());
    }

    #[test]
    fn betti_examples() {
        assert_eq!(betti(&bipyramid()), BettiVector(vec![0, 0, 1]));
        let simplex3 = SimplicialComplex::from_facets(4, [[1, 2, 3, 4]]).unwrap();
        assert_eq!(betti(&simplex3), BettiVector(vec![0, 0, 0, 0]));
        for (n, d) in [(5, 2), (7, 2), (6, 3)] {
            assert_eq!(betti(&lgrc(n, d).unwrap()).top(), 0);
        }
        let two_points = SimplicialComplex::from_facets(4, [[1, 2], [3, 4]]).unwrap();
        assert_eq!(betti(&two_points), BettiVector(vec![1, 0]));
        let circle = SimplicialComplex::from_facets(3, [[1, 2], [2, 3], [1, 3]]).unwrap();
        assert_eq!(betti(&circle), BettiVector(vec![0, 1]));
        let sphere = complete_complex(4, 2).unwrap();
        assert_eq!(betti(&sphere), BettiVector(vec![0, 0, 1]));
    }

    #[test]
    fn boundary_of_boundary_vanishes_on_complete_complexes() {
        for (n, d) in [(5, 3), (6, 2), (6, 4)] {
            let c = complete_complex(n, d).unwrap();
            for k in 1..d {
                let prod = boundary_matrix(&c, k)
                    .unwrap()
                    .mul(&boundary_matrix(&c, k + 1).unwrap())
                    .unwrap();
                assert!(prod.rows().iter().flatten().all(|x| x.is_zero()));
            }
        }
    }
}
