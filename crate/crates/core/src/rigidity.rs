//! The signed-volume measurement map, its differential (the rigidity
//! matrix), and the randomized generic-rank oracle behind the volume
//! rigidity matroid.
//!
//! "Generic" is realized by evaluating at uniformly random points of a
//! large prime field. Evaluation can only under-estimate the generic rank,
//! so a full-rank answer is certain; a deficient answer is wrong with
//! probability at most the Schwartz–Zippel bound carried in the verdict.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::complex::{k_subsets, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{
    determinant, format_rational, parse_rational, solve, Field, FieldMatrix, PrimeField, Rationals, DEFAULT_PRIME,
};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5EED_0F_D1CE;
/// Independent evaluation points per randomized rank computation.
pub const DEFAULT_TRIALS: usize = 2;

/// Parameters of the randomized evaluations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericOptions {
    pub prime: u64,
    pub seed: u64,
    pub trials: usize,
    /// Downgrade the non-pure error to a silent pass-through.
    pub ignore_impure: bool,
}

impl Default for GenericOptions {
    fn default() -> Self {
        Self {
            prime: DEFAULT_PRIME,
            seed: DEFAULT_SEED,
            trials: DEFAULT_TRIALS,
            ignore_impure: false,
        }
    }
}

impl GenericOptions {
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn field(&self) -> Result<PrimeField> {
        PrimeField::new(self.prime)
    }

    /// Deterministic RNG for trial `t`.
    pub fn rng(&self, t: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(t as u64);
        rng
    }
}

/// `dn - (d² + d - 1)`: the rank of the complete rigidity matrix.
pub fn required_rank(n: u32, d: usize) -> usize {
    let dn = d * n as usize;
    dn + 1 - d * d - d
}

/// A point configuration: `n` points in `F^d`, vertex `v` at index `v - 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration<F: Field> {
    d: usize,
    points: Vec<Vec<F::Elem>>,
}

impl<F: Field> Configuration<F> {
    pub fn new(d: usize, points: Vec<Vec<F::Elem>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != d) {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} in dimension {d}",
                p.len()
            )));
        }
        Ok(Self { d, points })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.points.len() as u32
    }

    /// Position of vertex `v` (1-based).
    pub fn point(&self, v: u32) -> &[F::Elem] {
        &self.points[v as usize - 1]
    }

    pub fn points(&self) -> &[Vec<F::Elem>] {
        &self.points
    }
}

impl Configuration<PrimeField> {
    pub fn random(field: &PrimeField, n: u32, d: usize, rng: &mut ChaCha8Rng) -> Self {
        let points = (0..n).map(|_| (0..d).map(|_| field.random(rng)).collect()).collect();
        Self { d, points }
    }
}

/// JSON form of a rational configuration: `{"points": [[1, "1/2"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigurationJson {
    pub points: Vec<Vec<serde_json::Value>>,
}

impl ConfigurationJson {
    pub fn into_configuration(self, d: usize) -> Result<Configuration<Rationals>> {
        let points = self
            .points
            .iter()
            .map(|p| p.iter().map(json_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(d, points)
    }

    pub fn from_configuration(p: &Configuration<Rationals>) -> Self {
        Self {
            points: p
                .points()
                .iter()
                .map(|pt| {
                    pt.iter()
                        .map(|x| serde_json::Value::String(format_rational(x)))
                        .collect()
                })
                .collect(),
        }
    }
}

fn json_rational(v: &serde_json::Value) -> Result<BigRational> {
    match v {
        serde_json::Value::Number(x) => parse_rational(&x.to_string()),
        serde_json::Value::String(s) => parse_rational(s),
        other => Err(Error::Invalid(format!("not a coordinate: {other}"))),
    }
}

fn check_framework<F: Field>(n: u32, d: usize, p: &Configuration<F>) -> Result<()> {
    if p.n() != n || p.d() != d {
        return Err(Error::DimensionMismatch(format!(
            "configuration has {} points in dimension {}, complex needs {n} in dimension {d}",
            p.n(),
            p.d()
        )));
    }
    Ok(())
}

fn check_facets(facets: &[Simplex], n: u32, d: usize) -> Result<()> {
    if (n as usize) < d + 1 {
        return Err(Error::TooFewVertices { n, d });
    }
    for s in facets {
        if s.len() != d + 1 {
            return Err(Error::SizeMismatch(format!("{s:?} is not a {d}-simplex")));
        }
        if let Some(&v) = s.vertices().iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::LabelOutOfRange { label: v, n });
        }
    }
    Ok(())
}

/// Signed volume `det [1 ... 1; p(i_1) ... p(i_{d+1})]` with vertices in
/// increasing label order.
pub fn signed_volume<F: Field>(field: &F, p: &Configuration<F>, s: &Simplex) -> F::Elem {
    let d = p.d();
    let mut m = vec![vec![field.one(); d + 1]];
    for c in 0..d {
        m.push(s.vertices().iter().map(|&v| p.point(v)[c].clone()).collect());
    }
    determinant(field, &m)
}

/// Gradient of the signed volume of `s`: entry `[l][c]` is the derivative
/// with respect to coordinate `c` of the `l`-th vertex of `s`.
fn volume_gradient<F: Field>(field: &F, p: &Configuration<F>, s: &Simplex) -> Vec<Vec<F::Elem>> {
    let d = p.d();
    let verts = s.vertices();
    // matrix rows: 0 = ones, 1..=d = coordinates; columns = vertices of s
    let entry = |r: usize, col: usize| -> F::Elem {
        if r == 0 {
            field.one()
        } else {
            p.point(verts[col])[r - 1].clone()
        }
    };
    (0..=d)
        .map(|l| {
            (0..d)
                .map(|c| {
                    let row_out = c + 1;
                    let minor: Vec<Vec<F::Elem>> = (0..=d)
                        .filter(|&r| r != row_out)
                        .map(|r| (0..=d).filter(|&k| k != l).map(|k| entry(r, k)).collect())
                        .collect();
                    let det = determinant(field, &minor);
                    if (row_out + l) % 2 == 0 {
                        det
                    } else {
                        field.neg(&det)
                    }
                })
                .collect()
        })
        .collect()
}

/// `α_Σ(p)`: signed volumes of the `d`-faces, in lexicographic order.
/// Maximal faces below dimension `d` are not measured.
pub fn volume_measurement<F: Field>(
    field: &F,
    complex: &SimplicialComplex,
    p: &Configuration<F>,
) -> Result<Vec<(Simplex, F::Elem)>> {
    check_framework(complex.n(), complex.dim(), p)?;
    Ok(complex
        .top_faces()
        .iter()
        .map(|s| (s.clone(), signed_volume(field, p, s)))
        .collect())
}

/// Column label of the rigidity matrix: `(vertex, coordinate)`, coordinate
/// 0-based.
pub type CoordLabel = (u32, usize);

/// Rows labelled by `d`-simplices, columns by `(vertex, coordinate)`.
pub type RigidityMatrix<F> = FieldMatrix<F, Simplex, CoordLabel>;

/// `R(p)` restricted to the given `d`-simplices.
pub fn rigidity_matrix_for<F: Field>(
    field: &F,
    facets: &[Simplex],
    n: u32,
    p: &Configuration<F>,
) -> Result<RigidityMatrix<F>> {
    let d = p.d();
    check_facets(facets, n, d)?;
    check_framework(n, d, p)?;
    let cols: Vec<CoordLabel> = (1..=n).flat_map(|v| (0..d).map(move |c| (v, c))).collect();
    let mut m = FieldMatrix::zeros(field.clone(), facets.to_vec(), cols)?;
    for (i, s) in facets.iter().enumerate() {
        let grad = volume_gradient(field, p, s);
        for (l, &v) in s.vertices().iter().enumerate() {
            for c in 0..d {
                m.set(i, (v as usize - 1) * d + c, grad[l][c].clone());
            }
        }
    }
    Ok(m)
}

/// `R(p)_{Σ_d}` for a framework `(Σ, p)`.
pub fn rigidity_matrix<F: Field>(
    field: &F,
    complex: &SimplicialComplex,
    p: &Configuration<F>,
) -> Result<RigidityMatrix<F>> {
    check_framework(complex.n(), complex.dim(), p)?;
    let facets: Vec<Simplex> = complex.top_faces().iter().cloned().collect();
    rigidity_matrix_for(field, &facets, complex.n(), p)
}

/// Rank found by randomized evaluation, with its error bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankEstimate {
    pub rank: usize,
    pub trials: usize,
    /// Upper bound on the probability that `rank` is below the generic rank.
    #[serde(serialize_with = "serialize_rational")]
    pub failure_bound: BigRational,
}

pub(crate) fn serialize_rational<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

/// Schwartz–Zippel bound `(deg / q)^trials` for a nonvanishing minor of
/// total degree `deg`.
pub fn schwartz_zippel_bound(degree: usize, prime: u64, trials: usize) -> BigRational {
    if degree == 0 {
        return BigRational::zero();
    }
    let per_trial = BigRational::new(BigInt::from(degree), BigInt::from(prime));
    (0..trials).fold(BigRational::one(), |acc, _| acc * &per_trial)
}

/// Generic rank of the rows of `R(p)` indexed by `facets`: the maximum rank
/// over `trials` independent random prime-field configurations.
pub fn generic_rank(facets: &[Simplex], n: u32, d: usize, opts: &GenericOptions) -> Result<RankEstimate> {
    check_facets(facets, n, d)?;
    if opts.trials == 0 {
        return Err(Error::OutOfRange("at least one trial is required".into()));
    }
    let field = opts.field()?;
    let ceiling = facets.len().min(required_rank(n, d));
    let mut best = 0;
    for t in 0..opts.trials {
        if best == ceiling {
            break;
        }
        let p = Configuration::random(&field, n, d, &mut opts.rng(t));
        let r = rigidity_matrix_for(&field, facets, n, &p)?.rank();
        best = best.max(r);
    }
    Ok(RankEstimate {
        rank: best,
        trials: opts.trials,
        failure_bound: schwartz_zippel_bound(ceiling * d, opts.prime, opts.trials),
    })
}

/// Local rigidity verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityVerdict {
    pub rank: usize,
    pub required: usize,
    pub rigid: bool,
    pub trials: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub failure_bound: BigRational,
}

/// Rigid iff the generic rank of `Σ_d` equals `dn - (d² + d - 1)`.
pub fn is_locally_rigid(complex: &SimplicialComplex, opts: &GenericOptions) -> Result<RigidityVerdict> {
    let (n, d) = (complex.n(), complex.dim());
    if (n as usize) < d + 1 {
        return Err(Error::TooFewVertices { n, d });
    }
    if !opts.ignore_impure {
        complex.require_pure()?;
    }
    let facets: Vec<Simplex> = complex.top_faces().iter().cloned().collect();
    let est = generic_rank(&facets, n, d, opts)?;
    let required = required_rank(n, d);
    Ok(RigidityVerdict {
        rank: est.rank,
        required,
        rigid: est.rank == required,
        trials: est.trials,
        failure_bound: est.failure_bound,
    })
}

/// Rank of a facet set in the rigidity matroid.
pub fn matroid_rank(facets: &[Simplex], n: u32, d: usize, opts: &GenericOptions) -> Result<usize> {
    Ok(generic_rank(facets, n, d, opts)?.rank)
}

pub fn matroid_is_independent(facets: &[Simplex], n: u32, d: usize, opts: &GenericOptions) -> Result<bool> {
    Ok(matroid_rank(facets, n, d, opts)? == facets.len())
}

pub fn is_basis(facets: &[Simplex], n: u32, d: usize, opts: &GenericOptions) -> Result<bool> {
    Ok(facets.len() == required_rank(n, d) && matroid_is_independent(facets, n, d, opts)?)
}

/// Kernel dimension of the complete rigidity matrix at random points.
pub fn trivial_flex_dim(n: u32, d: usize, opts: &GenericOptions) -> Result<usize> {
    if (n as usize) < d + 1 {
        return Err(Error::TooFewVertices { n, d });
    }
    let all: Vec<Simplex> = k_subsets(n, d + 1).collect();
    Ok(d * n as usize - generic_rank(&all, n, d, opts)?.rank)
}

/// Equal signed volumes on every `d`-face of `Σ`.
pub fn are_equivalent<F: Field>(
    field: &F,
    complex: &SimplicialComplex,
    p: &Configuration<F>,
    q: &Configuration<F>,
) -> Result<bool> {
    check_framework(complex.n(), complex.dim(), q)?;
    Ok(volume_measurement(field, complex, p)? == volume_measurement(field, complex, q)?)
}

/// Equal signed volumes on every `(d+1)`-subset of `[n]`.
pub fn are_congruent<F: Field>(
    field: &F,
    n: u32,
    d: usize,
    p: &Configuration<F>,
    q: &Configuration<F>,
) -> Result<bool> {
    check_framework(n, d, p)?;
    check_framework(n, d, q)?;
    Ok(k_subsets(n, d + 1).all(|s| signed_volume(field, p, &s) == signed_volume(field, q, &s)))
}

/// A configuration in normal form together with the volume scale removed.
#[derive(Clone, Debug, PartialEq)]
pub struct PinnedConfiguration<F: Field> {
    pub config: Configuration<F>,
    /// Volume of the leading simplex of the input; every signed volume of
    /// the input equals `scale` times the corresponding pinned volume.
    pub scale: F::Elem,
}

/// Affine normal form: `p̄(1) = 0` and `p̄(i+1) = e_i` for `i = 1..=d`.
///
/// The map is `x ↦ A⁻¹ (x - p(1))` with `A = [p(2)-p(1) … p(d+1)-p(1)]`;
/// it rescales every volume by `1 / det A`, and `det A` is returned.
pub fn pin_configuration<F: Field>(field: &F, p: &Configuration<F>) -> Result<PinnedConfiguration<F>> {
    let d = p.d();
    if (p.n() as usize) < d + 1 {
        return Err(Error::TooFewVertices { n: p.n(), d });
    }
    let origin = p.point(1);
    // a[r][c] = p(c+2)_r - p(1)_r
    let a: Vec<Vec<F::Elem>> = (0..d)
        .map(|r| {
            (0..d)
                .map(|c| field.sub(&p.point(c as u32 + 2)[r], &origin[r]))
                .collect()
        })
        .collect();
    let scale = determinant(field, &a);
    if field.is_zero(&scale) {
        return Err(Error::Degenerate("leading simplex has zero volume".into()));
    }
    let points = p
        .points()
        .iter()
        .map(|x| {
            let rhs: Vec<F::Elem> = x.iter().zip(origin).map(|(xi, oi)| field.sub(xi, oi)).collect();
            solve(field, &a, &rhs).expect("nonsingular")
        })
        .collect();
    Ok(PinnedConfiguration {
        config: Configuration::new(d, points)?,
        scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{complete_complex, lgrc, simplex};
    use rand::Rng;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn rat_config(d: usize, pts: &[&[i64]]) -> Configuration<Rationals> {
        Configuration::new(d, pts.iter().map(|p| p.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    fn random_rat_config(n: u32, d: usize, seed: u64, range: i64) -> Configuration<Rationals> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Configuration::new(
            d,
            (0..n)
                .map(|_| {
                    (0..d)
                        .map(|_| BigRational::new(rng.gen_range(-range..=range).into(), rng.gen_range(1..=5i64).into()))
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    fn opts() -> GenericOptions {
        GenericOptions::default()
    }

    fn facets(v: &[&[u32]]) -> Vec<Simplex> {
        v.iter().map(|s| simplex(s)).collect()
    }

    #[test]
    fn unit_triangle_volume() {
        let c = SimplicialComplex::from_facets(3, [[1, 2, 3]]).unwrap();
        let p = rat_config(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        let m = volume_measurement(&Rationals, &c, &p).unwrap();
        assert_eq!(m, vec![(simplex(&[1, 2, 3]), q(1))]);
    }

    #[test]
    fn repeated_point_gives_zero_volume() {
        let c = complete_complex(4, 2).unwrap();
        let p = rat_config(2, &[&[3, 1], &[3, 1], &[5, -2], &[0, 7]]);
        for (s, v) in volume_measurement(&Rationals, &c, &p).unwrap() {
            if s.contains(1) && s.contains(2) {
                assert_eq!(v, q(0));
            } else {
                assert_ne!(v, q(0));
            }
        }
    }

    #[test]
    fn one_dimensional_volume_is_signed_length() {
        let c = SimplicialComplex::from_facets(2, [[1, 2]]).unwrap();
        let p = rat_config(1, &[&[0], &[5]]);
        assert_eq!(volume_measurement(&Rationals, &c, &p).unwrap()[0].1, q(5));
        let r = rigidity_matrix(&Rationals, &c, &p).unwrap();
        assert_eq!(r.rows()[0], vec![q(-1), q(1)]);
    }

    #[test]
    fn measurement_dimension_mismatch() {
        let c = SimplicialComplex::from_facets(3, [[1, 2, 3]]).unwrap();
        let p = rat_config(2, &[&[0, 0], &[1, 0]]);
        assert!(matches!(
            volume_measurement(&Rationals, &c, &p),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(Configuration::<Rationals>::new(2, vec![vec![q(1)]]).is_err());
    }

    #[test]
    fn rigidity_row_matches_worked_example_up_to_row_sign() {
        // The displayed example matrix lists, for row 123 and vertex 1,
        // (p(3)_2 - p(2)_2, p(2)_1 - p(3)_1); the gradient is its negative.
        let c = SimplicialComplex::from_facets(4, [[1, 2, 3], [1, 2, 4], [1, 3, 4]]).unwrap();
        let p = rat_config(2, &[&[2, 7], &[-3, 5], &[11, -4], &[6, 1]]);
        let r = rigidity_matrix(&Rationals, &c, &p).unwrap();
        let x = |v: u32, c: usize| p.point(v)[c].clone();
        let row = r.row_index(&simplex(&[1, 2, 3])).unwrap();
        let displayed = [
            x(3, 1) - x(2, 1),
            x(2, 0) - x(3, 0),
            x(1, 1) - x(3, 1),
            x(3, 0) - x(1, 0),
        ];
        for (col, want) in displayed.iter().enumerate() {
            assert_eq!(r.get(row, col), &-want.clone());
        }
        let row = r.row_index(&simplex(&[1, 3, 4])).unwrap();
        assert_eq!(r.get(row, 0), &-(x(4, 1) - x(3, 1)));
        assert_eq!(r.get(row, 1), &-(x(3, 0) - x(4, 0)));
        assert_eq!(r.get(row, 2), &q(0));
        assert_eq!(r.get(row, 3), &q(0));
        assert_eq!(r.rank(), 3);
    }

    #[test]
    fn rows_supported_on_simplex_columns() {
        let c = complete_complex(5, 2).unwrap();
        let p = random_rat_config(5, 2, 3, 20);
        let r = rigidity_matrix(&Rationals, &c, &p).unwrap();
        for (i, s) in r.row_labels().iter().enumerate() {
            for (j, (v, _)) in r.col_labels().iter().enumerate() {
                if !s.contains(*v) {
                    assert!(r.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn generic_rank_examples() {
        let f = facets(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4]]);
        let est = generic_rank(&f, 4, 2, &opts()).unwrap();
        assert_eq!(est.rank, 3);
        for d in 1..=4usize {
            let single = vec![Simplex::new((1..=d as u32 + 1).collect()).unwrap()];
            assert_eq!(generic_rank(&single, d as u32 + 1, d, &opts()).unwrap().rank, 1);
        }
        let flexible = facets(&[
            &[1, 2, 3],
            &[1, 2, 4],
            &[1, 2, 5],
            &[1, 2, 8],
            &[1, 3, 4],
            &[1, 3, 5],
            &[1, 3, 8],
            &[2, 3, 7],
            &[2, 6, 7],
            &[2, 5, 6],
            &[3, 4, 5],
        ]);
        assert_eq!(generic_rank(&flexible, 8, 2, &opts()).unwrap().rank, 10);
        assert!(matches!(
            generic_rank(&[], 2, 2, &opts()),
            Err(Error::TooFewVertices { .. })
        ));
    }

    #[test]
    fn failure_bound_is_compounded() {
        let f = facets(&[&[1, 2, 3]]);
        let est = generic_rank(&f, 4, 2, &GenericOptions { trials: 3, ..opts() }).unwrap();
        let per = BigRational::new(2.into(), DEFAULT_PRIME.into());
        assert_eq!(est.failure_bound, &per * &per * &per);
    }

    #[test]
    fn local_rigidity_examples() {
        let c = SimplicialComplex::from_facets(4, [[1, 2, 3], [1, 2, 4], [1, 3, 4]]).unwrap();
        let v = is_locally_rigid(&c, &opts()).unwrap();
        assert!(v.rigid);
        assert_eq!((v.rank, v.required), (3, 3));
        for n in 5..=7 {
            assert!(is_locally_rigid(&lgrc(n, 2).unwrap(), &opts()).unwrap().rigid);
        }
        let path = SimplicialComplex::from_facets(5, [[1, 2], [2, 3], [3, 4], [4, 5]]).unwrap();
        assert!(is_locally_rigid(&path, &opts()).unwrap().rigid);
        let broken = SimplicialComplex::from_facets(5, [[1, 2], [2, 3], [4, 5]]).unwrap();
        assert!(!is_locally_rigid(&broken, &opts()).unwrap().rigid);
    }

    #[test]
    fn non_pure_input_is_rejected_unless_ignored() {
        let c = SimplicialComplex::from_facets(5, [vec![1, 2, 3], vec![4, 5]]).unwrap();
        assert!(matches!(is_locally_rigid(&c, &opts()), Err(Error::NotPure(_))));
        let o = GenericOptions {
            ignore_impure: true,
            ..opts()
        };
        assert!(!is_locally_rigid(&c, &o).unwrap().rigid);
    }

    #[test]
    fn matroid_examples() {
        let basis = facets(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4]]);
        assert!(is_basis(&basis, 4, 2, &opts()).unwrap());
        let bipyramid = facets(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 5], &[2, 4, 5], &[3, 4, 5]]);
        assert!(!matroid_is_independent(&bipyramid, 5, 2, &opts()).unwrap());
        assert_eq!(matroid_rank(&bipyramid, 5, 2, &opts()).unwrap(), 5);
        assert!(matroid_is_independent(&[], 5, 2, &opts()).unwrap());
        assert_eq!(matroid_rank(&[], 5, 2, &opts()).unwrap(), 0);
    }

    #[test]
    fn trivial_flexes() {
        assert_eq!(trivial_flex_dim(4, 2, &opts()).unwrap(), 5);
        assert_eq!(trivial_flex_dim(6, 2, &opts()).unwrap(), 5);
        for d in 1..=4usize {
            assert_eq!(trivial_flex_dim(d as u32 + 1, d, &opts()).unwrap(), d * d + d - 1);
        }
        assert!(trivial_flex_dim(2, 2, &opts()).is_err());
    }

    #[test]
    fn equivalence_and_congruence() {
        let c = lgrc(5, 2).unwrap();
        let p = random_rat_config(5, 2, 11, 30);
        assert!(are_equivalent(&Rationals, &c, &p, &p).unwrap());
        assert!(are_congruent(&Rationals, 5, 2, &p, &p).unwrap());
        // unimodular shear plus translation
        let m = [[q(2), q(3)], [q(1), q(2)]];
        let moved = Configuration::new(
            2,
            p.points()
                .iter()
                .map(|x| {
                    vec![
                        &m[0][0] * &x[0] + &m[0][1] * &x[1] + q(7),
                        &m[1][0] * &x[0] + &m[1][1] * &x[1] - q(4),
                    ]
                })
                .collect(),
        )
        .unwrap();
        assert!(are_congruent(&Rationals, 5, 2, &p, &moved).unwrap());
        assert!(are_equivalent(&Rationals, &c, &p, &moved).unwrap());
        let mut bumped = p.points().to_vec();
        bumped[4][0] += q(1);
        let bumped = Configuration::new(2, bumped).unwrap();
        assert!(!are_congruent(&Rationals, 5, 2, &p, &bumped).unwrap());
    }

    #[test]
    fn pinning() {
        let p = rat_config(2, &[&[0, 0], &[1, 0], &[0, 1], &[4, -3]]);
        let pinned = pin_configuration(&Rationals, &p).unwrap();
        assert_eq!(pinned.config, p);
        assert_eq!(pinned.scale, q(1));

        let p = rat_config(2, &[&[1, 1], &[2, 1], &[1, 2], &[3, 3]]);
        let pinned = pin_configuration(&Rationals, &p).unwrap();
        assert_eq!(pinned.config, rat_config(2, &[&[0, 0], &[1, 0], &[0, 1], &[2, 2]]));

        let p = random_rat_config(6, 2, 5, 40);
        let pinned = pin_configuration(&Rationals, &p).unwrap();
        let k = complete_complex(6, 2).unwrap();
        let before = volume_measurement(&Rationals, &k, &p).unwrap();
        let after = volume_measurement(&Rationals, &k, &pinned.config).unwrap();
        for ((_, a), (_, b)) in before.iter().zip(&after) {
            assert_eq!(a, &(&pinned.scale * b));
        }

        let degenerate = rat_config(2, &[&[0, 0], &[1, 1], &[2, 2], &[0, 1]]);
        assert!(matches!(
            pin_configuration(&Rationals, &degenerate),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn configuration_json() {
        let json: ConfigurationJson =
            serde_json::from_str(r#"{"points": [[0, "1/2"], [1.5, -2], ["3", "-4/6"]]}"#).unwrap();
        let p = json.into_configuration(2).unwrap();
        assert_eq!(p.point(1)[1], BigRational::new(1.into(), 2.into()));
        assert_eq!(p.point(2)[0], BigRational::new(3.into(), 2.into()));
        assert_eq!(p.point(3)[1], BigRational::new((-2).into(), 3.into()));
        let back = ConfigurationJson::from_configuration(&p);
        assert_eq!(back.into_configuration(2).unwrap(), p);
        let bad: ConfigurationJson = serde_json::from_str(r#"{"points": [[true, 1]]}"#).unwrap();
        assert!(bad.into_configuration(2).is_err());
    }
}
