//! Labelled simplicial complexes on the vertex set `1..=n`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simplex: a strictly increasing tuple of vertex labels.
///
/// The empty simplex exists (it is the `(-1)`-face and the link of a facet
/// inside itself) but is never produced from user input.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Simplex(Vec<u32>);

impl Simplex {
    /// Sorts the labels; rejects repeated labels and label 0.
    pub fn new(mut vertices: Vec<u32>) -> Result<Self> {
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        if vertices.first() == Some(&0) {
            return Err(Error::LabelOutOfRange { label: 0, n: 0 });
        }
        Ok(Self(vertices))
    }

    /// Builds from labels already known to be strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<u32>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self(vertices)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    /// Number of vertices, `k + 1` for a `k`-simplex.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// The face with the vertex at position `j` (0-based) removed.
    pub fn delete(&self, j: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(j);
        Simplex(v)
    }

    /// All codimension-one faces, `delete(0), delete(1), ...`.
    pub fn boundary_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.len()).map(|j| self.delete(j))
    }

    pub fn with_vertex(&self, v: u32) -> Result<Simplex> {
        let mut w = self.0.clone();
        w.push(v);
        Simplex::new(w)
    }

    pub fn without_vertex(&self, v: u32) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&x| x != v).collect())
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().chain(&other.0).copied().sorted().dedup().collect())
    }

    pub fn difference(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    /// All nonempty subsets, as simplices.
    fn nonempty_subsets(&self) -> impl Iterator<Item = Simplex> + '_ {
        (1..=self.len()).flat_map(move |k| self.0.iter().copied().combinations(k).map(Simplex::from_sorted))
    }
}

impl TryFrom<Vec<u32>> for Simplex {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<u32> {
    fn from(s: Simplex) -> Vec<u32> {
        s.0
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&v| v < 10) {
            write!(f, "{}", self.0.iter().join(""))
        } else {
            write!(f, "{}", self.0.iter().join(","))
        }
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

/// Shorthand for tests and fixtures: `simplex(&[1, 2, 3])`.
pub fn simplex(v: &[u32]) -> Simplex {
    Simplex::new(v.to_vec()).expect("valid simplex literal")
}

/// Face numbers, indexed `-1..=d`; entry `-1` is always 1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(Vec<u64>);

impl FVector {
    /// `f_k` for `k >= -1`; zero past the dimension.
    pub fn get(&self, k: isize) -> u64 {
        usize::try_from(k + 1)
            .ok()
            .and_then(|i| self.0.get(i).copied())
            .unwrap_or(0)
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 2
    }
}

impl From<Vec<u64>> for FVector {
    fn from(v: Vec<u64>) -> Self {
        FVector(v)
    }
}

/// A simplicial complex on vertex labels `1..=n`, stored as one sorted face
/// set per dimension `0..=d`.
///
/// `n` is the ambient vertex count; labels that appear in no face are not in
/// `Σ_0`, and rigidity computations treat them as unconstrained vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    n: u32,
    faces: Vec<BTreeSet<Simplex>>,
}

impl SimplicialComplex {
    /// Downward closure of the given faces.
    pub fn from_facets<I, T>(n: u32, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[u32]>,
    {
        let mut simplices = Vec::new();
        for f in facets {
            let f = f.as_ref();
            if f.is_empty() {
                return Err(Error::EmptySimplex);
            }
            for &v in f {
                if v == 0 || v > n {
                    return Err(Error::LabelOutOfRange { label: v, n });
                }
            }
            simplices.push(Simplex::new(f.to_vec())?);
        }
        Self::from_simplices(n, simplices)
    }

    /// Downward closure of validated simplices.
    pub fn from_simplices<I>(n: u32, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let facets: Vec<Simplex> = facets.into_iter().collect();
        if facets.is_empty() {
            return Err(Error::EmptyFacets);
        }
        let top_len = facets.iter().map(Simplex::len).max().unwrap_or(0);
        if top_len == 0 {
            return Err(Error::EmptySimplex);
        }
        let mut faces = vec![BTreeSet::new(); top_len];
        for f in &facets {
            if f.is_empty() {
                return Err(Error::EmptySimplex);
            }
            if let Some(&v) = f.vertices().iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::LabelOutOfRange { label: v, n });
            }
            if faces[f.len() - 1].contains(f) {
                continue;
            }
            for s in f.nonempty_subsets() {
                faces[s.len() - 1].insert(s);
            }
        }
        Ok(Self { n, faces })
    }

    /// Builds from explicit per-dimension face sets, checking downward
    /// closure.
    pub fn from_face_sets(n: u32, faces: Vec<BTreeSet<Simplex>>) -> Result<Self> {
        let mut faces = faces;
        while faces.last().is_some_and(|s| s.is_empty()) {
            faces.pop();
        }
        if faces.is_empty() {
            return Err(Error::EmptyFacets);
        }
        for (k, set) in faces.iter().enumerate() {
            for s in set {
                if s.len() != k + 1 {
                    return Err(Error::Invalid(format!("{s:?} stored in dimension {k}")));
                }
                if let Some(&v) = s.vertices().iter().find(|&&v| v == 0 || v > n) {
                    return Err(Error::LabelOutOfRange { label: v, n });
                }
                if k > 0 {
                    if let Some(missing) = s.boundary_faces().find(|b| !faces[k - 1].contains(b)) {
                        return Err(Error::Invalid(format!(
                            "not downward closed: {s} present but {missing} missing"
                        )));
                    }
                }
            }
        }
        Ok(Self { n, faces })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.faces.len() - 1
    }

    /// `Σ_k`; empty for `k > d`.
    pub fn faces(&self, k: usize) -> &BTreeSet<Simplex> {
        static EMPTY: BTreeSet<Simplex> = BTreeSet::new();
        self.faces.get(k).unwrap_or(&EMPTY)
    }

    /// `Σ_d`.
    pub fn top_faces(&self) -> &BTreeSet<Simplex> {
        self.faces.last().expect("nonempty complex")
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        s.is_empty() || self.faces(s.len() - 1).contains(s)
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.faces[0].iter().map(|s| s.vertices()[0]).collect()
    }

    /// Maximal faces, sorted by dimension then lexicographically.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for k in 0..self.faces.len() {
            let covered: BTreeSet<Simplex> = self.faces(k + 1).iter().flat_map(|s| s.boundary_faces()).collect();
            out.extend(self.faces[k].iter().filter(|s| !covered.contains(*s)).cloned());
        }
        out
    }

    pub fn f_vector(&self) -> FVector {
        let mut v = vec![1u64];
        v.extend(self.faces.iter().map(|s| s.len() as u64));
        FVector(v)
    }

    /// Every face lies in some `d`-face.
    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets().iter().all(|f| f.len() == d + 1)
    }

    /// Maximal faces strictly below the top dimension.
    pub fn sub_top_facets(&self) -> Vec<Simplex> {
        let d = self.dim();
        self.facets().into_iter().filter(|f| f.len() != d + 1).collect()
    }

    /// Errors unless pure; the message lists the unmeasured maximal faces.
    pub fn require_pure(&self) -> Result<()> {
        let bad = self.sub_top_facets();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::NotPure(bad.iter().join(", ")))
        }
    }

    fn require_face(&self, s: &Simplex) -> Result<()> {
        if s.is_empty() || !self.contains(s) {
            Err(Error::NotAFace(format!("{s:?}")))
        } else {
            Ok(())
        }
    }

    /// Complements of `σ` in the maximal faces containing it.
    pub fn link(&self, sigma: &Simplex) -> Result<BTreeSet<Simplex>> {
        self.require_face(sigma)?;
        Ok(self
            .facets()
            .iter()
            .filter(|f| sigma.is_subset(f))
            .map(|f| f.difference(sigma))
            .collect())
    }

    /// Subcomplex generated by the maximal faces containing `σ`.
    pub fn star(&self, sigma: &Simplex) -> Result<SimplicialComplex> {
        self.require_face(sigma)?;
        let gens: Vec<Simplex> = self.facets().into_iter().filter(|f| sigma.is_subset(f)).collect();
        Self::from_simplices(self.n, gens)
    }

    /// Every `Σ_k` is a down-set of the dominance order.
    pub fn is_shifted(&self) -> bool {
        self.faces
            .iter()
            .all(|set| set.iter().all(|s| dominance_predecessors(s).all(|p| set.contains(&p))))
    }

    /// Applies a vertex relabelling; `map` must be injective on the vertices
    /// in use and land in `1..=n`.
    pub fn relabel(&self, map: &BTreeMap<u32, u32>) -> Result<Self> {
        let facets = self
            .facets()
            .into_iter()
            .map(|f| {
                f.vertices()
                    .iter()
                    .map(|v| map.get(v).copied().unwrap_or(*v))
                    .collect::<Vec<u32>>()
            })
            .collect::<Vec<_>>();
        Self::from_facets(self.n, facets)
    }
}

/// Complete `d`-dimensional complex on `[n]`.
pub fn complete_complex(n: u32, d: usize) -> Result<SimplicialComplex> {
    if (n as usize) < d + 1 {
        return Err(Error::TooFewVertices { n, d });
    }
    SimplicialComplex::from_simplices(n, k_subsets(n, d + 1))
}

/// All `k`-subsets of `[n]` in lexicographic order.
pub fn k_subsets(n: u32, k: usize) -> impl Iterator<Item = Simplex> {
    (1..=n).combinations(k).map(Simplex::from_sorted)
}

/// All `k`-subsets of the given vertex list in lexicographic order.
pub fn k_subsets_of(vertices: &[u32], k: usize) -> impl Iterator<Item = Simplex> + '_ {
    vertices.iter().copied().combinations(k).map(|mut v| {
        v.sort_unstable();
        Simplex::from_sorted(v)
    })
}

/// Componentwise (Gale) comparison of equal-size sorted tuples.
pub fn dominance_leq(a: &Simplex, b: &Simplex) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch(format!("{a:?} vs {b:?}")));
    }
    Ok(a.vertices().iter().zip(b.vertices()).all(|(x, y)| x <= y))
}

/// Covering predecessors in the dominance order: lower one entry by one.
fn dominance_predecessors(s: &Simplex) -> impl Iterator<Item = Simplex> + '_ {
    let v = s.vertices();
    (0..v.len()).filter_map(move |i| {
        let lowered = v[i] - 1;
        let free = if i == 0 { lowered >= 1 } else { lowered > v[i - 1] };
        free.then(|| {
            let mut w = v.to_vec();
            w[i] = lowered;
            Simplex::from_sorted(w)
        })
    })
}

/// The top tuple `1, 3, 4, ..., d+1, n` of the rigidity down-set; for
/// `n = d + 1` it is the single simplex `1 2 ... d+1`.
pub fn rigidity_witness_tuple(n: u32, d: usize) -> Result<Simplex> {
    if (n as usize) < d + 1 {
        return Err(Error::TooFewVertices { n, d });
    }
    let d32 = d as u32;
    if n == d32 + 1 {
        return Ok(Simplex::from_sorted((1..=n).collect()));
    }
    let mut v = vec![1];
    v.extend(3..=d32 + 1);
    v.push(n);
    Ok(Simplex::from_sorted(v))
}

/// The lexicographically greedy rigid complex: the dominance down-set of
/// `1 3 4 ... (d+1) n` in `C([n], d+1)`, closed downward.
pub fn lgrc(n: u32, d: usize) -> Result<SimplicialComplex> {
    let top = rigidity_witness_tuple(n, d)?;
    let facets = k_subsets(n, d + 1).filter(|s| dominance_leq(s, &top).expect("same size"));
    SimplicialComplex::from_simplices(n, facets)
}

/// JSON exchange format: `{"n": .., "d": .., "facets": [[..], ..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub n: u32,
    pub d: usize,
    pub facets: Vec<Vec<u32>>,
}

impl ComplexJson {
    pub fn into_complex(self) -> Result<SimplicialComplex> {
        let c = SimplicialComplex::from_facets(self.n, &self.facets)?;
        if c.dim() != self.d {
            return Err(Error::DimensionMismatch(format!(
                "declared d = {} but facets have dimension {}",
                self.d,
                c.dim()
            )));
        }
        Ok(c)
    }
}

impl From<&SimplicialComplex> for ComplexJson {
    fn from(c: &SimplicialComplex) -> Self {
        ComplexJson {
            n: c.n(),
            d: c.dim(),
            facets: c.facets().into_iter().map(Vec::from).collect(),
        }
    }
}

impl SimplicialComplex {
    pub fn from_json(s: &str) -> Result<Self> {
        let parsed: ComplexJson =
            serde_json::from_str(s).map_err(|e| Error::Invalid(format!("bad complex JSON: {e}")))?;
        parsed.into_complex()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ComplexJson::from(self)).expect("serializable")
    }
}
