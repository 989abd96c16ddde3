//! Acyclic orientations, alternating closed trails (ACTs), and the
//! combinatorial rigidity tests for `d = 1` and `d = 2`.
//!
//! An ACT of an oriented graph is a closed sequence `i_1 … i_{2k}` with
//! `k ≥ 2` in which every odd-position vertex is the tail of both of its
//! sequence edges and every even-position vertex is the head of both.
//! Two readings are supported: [`ActReading::Trail`] (the default) only
//! requires distinct edges, [`ActReading::Cycle`] also distinct vertices.
//! Only the trail reading matches the algebraic matroid of `Gr(2, N)`; the
//! cycle reading accepts some dependent graphs, e.g. the 8-edge graph
//! `23 24 25 26 34 35 46 56`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::grassmann::phi_rows;
use crate::linalg::{IncrementalBasis, Rationals};

/// How "closed" is read in the ACT definition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActReading {
    /// Pairwise distinct vertices.
    Cycle,
    /// Pairwise distinct edges, vertices may repeat.
    #[default]
    Trail,
}

/// A directed simple graph on an explicit vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    vertices: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

impl Orientation {
    pub fn new(vertices: impl IntoIterator<Item = u32>, edges: Vec<(u32, u32)>) -> Result<Self> {
        let vertices: Vec<u32> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut seen = HashSet::new();
        for &(a, b) in &edges {
            if a == b {
                return Err(Error::Invalid(format!("loop at vertex {a}")));
            }
            for v in [a, b] {
                if vertices.binary_search(&v).is_err() {
                    return Err(Error::Invalid(format!("edge endpoint {v} not in vertex set")));
                }
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::Invalid(format!("edge {{{a},{b}}} listed twice")));
            }
        }
        Ok(Self { vertices, edges })
    }

    /// Vertex set taken from the edges.
    pub fn from_edges(edges: Vec<(u32, u32)>) -> Result<Self> {
        let verts: Vec<u32> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        Self::new(verts, edges)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    fn out_adj(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut m: BTreeMap<u32, Vec<u32>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in &self.edges {
            m.get_mut(&a).expect("vertex").push(b);
        }
        m.values_mut().for_each(|v| v.sort_unstable());
        m
    }

    fn in_adj(&self) -> BTreeMap<u32, Vec<u32>> {
        let mut m: BTreeMap<u32, Vec<u32>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(a, b) in &self.edges {
            m.get_mut(&b).expect("vertex").push(a);
        }
        m.values_mut().for_each(|v| v.sort_unstable());
        m
    }

    fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edges.contains(&(a, b))
    }
}

/// The orientation induced by a vertex ordering: every edge points from the
/// earlier vertex to the later one.
pub fn orientation_from_ordering(order: &[u32], edges: &[(u32, u32)]) -> Result<Orientation> {
    let pos: HashMap<u32, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let directed = edges
        .iter()
        .map(|&(a, b)| match (pos.get(&a), pos.get(&b)) {
            (Some(pa), Some(pb)) => Ok(if pa < pb { (a, b) } else { (b, a) }),
            _ => Err(Error::Invalid(format!("edge {{{a},{b}}} leaves the ordering"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Orientation::new(order.iter().copied(), directed)
}

/// No directed cycle (Kahn's algorithm).
pub fn is_acyclic(o: &Orientation) -> bool {
    let mut indeg: BTreeMap<u32, usize> = o.vertices.iter().map(|&v| (v, 0)).collect();
    for &(_, b) in &o.edges {
        *indeg.get_mut(&b).expect("vertex") += 1;
    }
    let out = o.out_adj();
    let mut ready: Vec<u32> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
    let mut removed = 0;
    while let Some(v) = ready.pop() {
        removed += 1;
        for w in &out[&v] {
            let d = indeg.get_mut(w).expect("vertex");
            *d -= 1;
            if *d == 0 {
                ready.push(*w);
            }
        }
    }
    removed == o.vertices.len()
}

/// An ACT, stored in canonical form: the lexicographically least of its
/// rotations by an even amount and their reversals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActWitness(Vec<u32>);

impl ActWitness {
    /// Validate the alternating pattern against `o` and canonicalize.
    pub fn new(seq: Vec<u32>, o: &Orientation, reading: ActReading) -> Result<Self> {
        let len = seq.len();
        if len < 4 || len % 2 == 1 {
            return Err(Error::Invalid(format!("ACT needs even length at least 4, got {len}")));
        }
        let mut edges = HashSet::new();
        for i in (0..len).step_by(2) {
            let (src, prev, next) = (seq[i], seq[(i + len - 1) % len], seq[i + 1]);
            for sink in [prev, next] {
                if !o.has_edge(src, sink) {
                    return Err(Error::Invalid(format!("missing edge {src}->{sink}")));
                }
                edges.insert((src, sink));
            }
        }
        if edges.len() != len {
            return Err(Error::Invalid("ACT repeats an edge".into()));
        }
        if reading == ActReading::Cycle && seq.iter().collect::<HashSet<_>>().len() != len {
            return Err(Error::Invalid("ACT repeats a vertex".into()));
        }
        Ok(Self(canonical(&seq)))
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }
}

fn canonical(seq: &[u32]) -> Vec<u32> {
    let len = seq.len();
    let mut best: Option<Vec<u32>> = None;
    for start in (0..len).step_by(2) {
        let fwd: Vec<u32> = (0..len).map(|i| seq[(start + i) % len]).collect();
        let rev: Vec<u32> = (0..len).map(|i| seq[(start + len - i) % len]).collect();
        for cand in [fwd, rev] {
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.expect("nonempty")
}

struct ActSearch<'a> {
    out: &'a BTreeMap<u32, Vec<u32>>,
    inn: &'a BTreeMap<u32, Vec<u32>>,
    reading: ActReading,
    start: u32,
    path: Vec<u32>,
    used: HashSet<(u32, u32)>,
}

impl ActSearch<'_> {
    /// `path` ends at a source; extend to a sink via an out-edge.
    fn from_source(&mut self) -> bool {
        let s = *self.path.last().expect("nonempty");
        for &t in &self.out[&s] {
            if !self.edge_ok(s, t) || !self.vertex_ok(t) {
                continue;
            }
            self.used.insert((s, t));
            self.path.push(t);
            if self.from_sink() {
                return true;
            }
            self.path.pop();
            self.used.remove(&(s, t));
        }
        false
    }

    /// `path` ends at a sink; close the ACT or continue to a new source.
    fn from_sink(&mut self) -> bool {
        let t = *self.path.last().expect("nonempty");
        for &s in &self.inn[&t] {
            if !self.edge_ok(s, t) {
                continue;
            }
            if s == self.start {
                if self.path.len() >= 4 {
                    return true;
                }
                continue;
            }
            if s < self.start || !self.vertex_ok(s) {
                continue;
            }
            self.used.insert((s, t));
            self.path.push(s);
            if self.from_source() {
                return true;
            }
            self.path.pop();
            self.used.remove(&(s, t));
        }
        false
    }

    fn edge_ok(&self, s: u32, t: u32) -> bool {
        !self.used.contains(&(s, t))
    }

    fn vertex_ok(&self, v: u32) -> bool {
        self.reading == ActReading::Trail || !self.path.contains(&v)
    }
}

/// Search for an ACT. Returns the lexicographically least canonical witness.
pub fn find_act(o: &Orientation, reading: ActReading) -> Option<ActWitness> {
    let out = o.out_adj();
    let inn = o.in_adj();
    for &start in &o.vertices {
        if out[&start].len() < 2 {
            continue;
        }
        let mut search = ActSearch {
            out: &out,
            inn: &inn,
            reading,
            start,
            path: vec![start],
            used: HashSet::new(),
        };
        if search.from_source() {
            return Some(ActWitness::new(search.path, o, reading).expect("search output is an ACT"));
        }
    }
    None
}

/// Search limits for the combinatorial tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    /// Largest vertex set for which orderings are enumerated.
    pub ordering_vertices: usize,
    /// Largest vertex set passed to the ACT search.
    pub act_vertices: usize,
    /// Largest number of facet subsets examined by the `d = 2` test.
    pub subset_budget: usize,
    pub reading: ActReading,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            ordering_vertices: 10,
            act_vertices: 12,
            subset_budget: 200_000,
            reading: ActReading::Trail,
        }
    }
}

/// First ACT-free orientation induced by a vertex ordering, scanning
/// orderings lexicographically. Prefixes whose induced orientation already
/// contains an ACT are pruned, as are prefixes inducing an orientation seen
/// before.
pub fn exists_acyclic_act_free(
    vertices: &[u32],
    edges: &[(u32, u32)],
    limits: &SearchLimits,
) -> Result<Option<Orientation>> {
    let vs: Vec<u32> = vertices.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let cap = limits.ordering_vertices.min(limits.act_vertices);
    if vs.len() > cap {
        return Err(Error::LimitExceeded(format!(
            "orientation search on {} vertices exceeds the limit of {cap}",
            vs.len()
        )));
    }
    Orientation::new(vs.iter().copied(), edges.to_vec())?;
    let mut search = OrderingSearch {
        vertices: &vs,
        edges,
        reading: limits.reading,
        order: Vec::new(),
        dead: HashSet::new(),
    };
    Ok(search.run())
}

struct OrderingSearch<'a> {
    vertices: &'a [u32],
    edges: &'a [(u32, u32)],
    reading: ActReading,
    order: Vec<u32>,
    dead: HashSet<(Vec<u32>, Vec<(u32, u32)>)>,
}

impl OrderingSearch<'_> {
    fn prefix_orientation(&self) -> Orientation {
        let inside: Vec<(u32, u32)> = self
            .edges
            .iter()
            .filter(|(a, b)| self.order.contains(a) && self.order.contains(b))
            .copied()
            .collect();
        orientation_from_ordering(&self.order, &inside).expect("prefix edges")
    }

    fn run(&mut self) -> Option<Orientation> {
        let o = self.prefix_orientation();
        if find_act(&o, self.reading).is_some() {
            return None;
        }
        if self.order.len() == self.vertices.len() {
            return Some(o);
        }
        let mut key_set = self.order.clone();
        key_set.sort_unstable();
        let mut key_edges = o.edges().to_vec();
        key_edges.sort_unstable();
        if !self.dead.insert((key_set, key_edges)) {
            return None;
        }
        for &v in self.vertices {
            if self.order.contains(&v) {
                continue;
            }
            self.order.push(v);
            if let Some(found) = self.run() {
                return Some(found);
            }
            self.order.pop();
        }
        None
    }
}

/// Outcome of the combinatorial rigidity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombinatorialVerdict {
    pub rigid: bool,
    /// Facets of the spanning subcomplex used as witness (`d = 2`).
    pub witness_facets: Vec<Simplex>,
    /// Column basis of `Φ` on the witness facets (`d = 2`).
    pub column_basis: Vec<Simplex>,
    /// ACT-free acyclic orientation of the column-basis graph (`d = 2`).
    pub orientation: Option<Orientation>,
    pub subsets_examined: usize,
}

/// Combinatorial rigidity: connectivity for `d = 1`; for `d = 2`, a
/// `(2n-5)`-facet subcomplex whose `Φ` column basis graph on
/// `{2, …, n}` has an acyclic ACT-free orientation.
pub fn is_rigid_combinatorial(complex: &SimplicialComplex, limits: &SearchLimits) -> Result<CombinatorialVerdict> {
    complex.require_pure()?;
    let n = complex.n();
    match complex.dim() {
        1 => Ok(CombinatorialVerdict {
            rigid: is_connected(complex),
            witness_facets: Vec::new(),
            column_basis: Vec::new(),
            orientation: None,
            subsets_examined: 0,
        }),
        2 => rigid2(complex, limits),
        d => Err(if (n as usize) < d + 1 {
            Error::TooFewVertices { n, d }
        } else {
            Error::UnsupportedDimension(d)
        }),
    }
}

fn is_connected(complex: &SimplicialComplex) -> bool {
    let n = complex.n();
    let mut parent: Vec<u32> = (0..=n).collect();
    fn find(p: &mut [u32], x: u32) -> u32 {
        let mut r = x;
        while p[r as usize] != r {
            r = p[r as usize];
        }
        p[x as usize] = r;
        r
    }
    let mut components = n;
    for e in complex.faces(1) {
        let (a, b) = (find(&mut parent, e.vertices()[0]), find(&mut parent, e.vertices()[1]));
        if a != b {
            parent[a as usize] = b;
            components -= 1;
        }
    }
    components == 1
}

fn rigid2(complex: &SimplicialComplex, limits: &SearchLimits) -> Result<CombinatorialVerdict> {
    let n = complex.n();
    if n < 3 {
        return Err(Error::TooFewVertices { n, d: 2 });
    }
    let target = 2 * n as usize - 5;
    let facets: Vec<Simplex> = complex.top_faces().iter().cloned().collect();
    let others: Vec<u32> = (2..=n).collect();
    let flexible = |examined| CombinatorialVerdict {
        rigid: false,
        witness_facets: Vec::new(),
        column_basis: Vec::new(),
        orientation: None,
        subsets_examined: examined,
    };
    let phi = phi_rows(&facets, n, 2)?;
    if phi.rank() < target {
        return Ok(flexible(0));
    }
    let mut cache: HashMap<Vec<Simplex>, Option<Orientation>> = HashMap::new();
    let mut try_subset = |s: &[Simplex]| -> Result<Option<(Vec<Simplex>, Orientation)>> {
        for t in column_bases(s, n)? {
            if !cache.contains_key(&t) {
                let edges: Vec<(u32, u32)> = t.iter().map(|e| (e.vertices()[0], e.vertices()[1])).collect();
                cache.insert(t.clone(), exists_acyclic_act_free(&others, &edges, limits)?);
            }
            if let Some(o) = &cache[&t] {
                return Ok(Some((t, o.clone())));
            }
        }
        Ok(None)
    };
    let witness = |s: Vec<Simplex>, (t, o): (Vec<Simplex>, Orientation), examined| CombinatorialVerdict {
        rigid: true,
        witness_facets: s,
        column_basis: t,
        orientation: Some(o),
        subsets_examined: examined,
    };

    let greedy = phi.greedy_row_basis(|a, b| a.cmp(b));
    if greedy.len() == target {
        if let Some(found) = try_subset(&greedy)? {
            return Ok(witness(greedy, found, 1));
        }
    }

    // exhaustive enumeration of Φ-independent facet subsets of size 2n-5
    let rows: Vec<Vec<num_rational::BigRational>> = phi.rows().to_vec();
    let mut examined = 0usize;
    let mut chosen: Vec<usize> = Vec::new();
    let mut stack: Vec<(usize, IncrementalBasis<Rationals>)> = vec![(0, IncrementalBasis::new(Rationals))];
    // iterative DFS over index sets in lexicographic order
    loop {
        let Some((next, basis)) = stack.last().cloned() else {
            break;
        };
        if chosen.len() == target {
            examined += 1;
            if examined > limits.subset_budget {
                return Err(Error::LimitExceeded(format!(
                    "more than {} facet subsets examined",
                    limits.subset_budget
                )));
            }
            let s: Vec<Simplex> = chosen.iter().map(|&i| facets[i].clone()).collect();
            if let Some(found) = try_subset(&s)? {
                return Ok(witness(s, found, examined));
            }
            backtrack(&mut stack, &mut chosen);
            continue;
        }
        if next + (target - chosen.len()) > facets.len() {
            if stack.len() == 1 {
                break;
            }
            backtrack(&mut stack, &mut chosen);
            continue;
        }
        stack.last_mut().expect("nonempty").0 = next + 1;
        let mut extended = basis.clone();
        if extended.insert(rows[next].clone()) {
            chosen.push(next);
            stack.push((next + 1, extended));
        }
    }
    Ok(flexible(examined))
}

/// Candidate column bases of `Φ_S` for a facet set `S`: the greedy column
/// basis under the lexicographic order induced by each linear order of
/// `{2, …, n}`, deduplicated, starting from the natural order. Empty when
/// `Φ_S` is not of full row rank.
///
/// Any such basis whose graph is independent in the Grassmannian matroid
/// certifies that `S` is independent.
pub fn column_bases(s: &[Simplex], n: u32) -> Result<Vec<Vec<Simplex>>> {
    let m = phi_rows(s, n, 2)?;
    if m.rank() != s.len() {
        return Ok(Vec::new());
    }
    let mut out: Vec<Vec<Simplex>> = Vec::new();
    for order in (2..=n).permutations(n as usize - 1) {
        let mut rank = vec![0usize; n as usize + 1];
        for (i, &v) in order.iter().enumerate() {
            rank[v as usize] = i;
        }
        let key = |t: &Simplex| -> Vec<usize> {
            let mut k: Vec<usize> = t.vertices().iter().map(|&v| rank[v as usize]).collect();
            k.sort_unstable();
            k
        };
        let mut t = m.greedy_column_basis(|a, b| key(a).cmp(&key(b)));
        t.sort();
        if !out.contains(&t) {
            out.push(t);
        }
    }
    Ok(out)
}

fn backtrack(stack: &mut Vec<(usize, IncrementalBasis<Rationals>)>, chosen: &mut Vec<usize>) {
    stack.pop();
    chosen.pop();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_orientation() -> Orientation {
        Orientation::from_edges(vec![(2, 3), (2, 4), (2, 5), (3, 4), (5, 3)]).unwrap()
    }

    #[test]
    fn acyclicity() {
        assert!(is_acyclic(&figure_orientation()));
        let tri = Orientation::from_edges(vec![(1, 2), (2, 3), (3, 1)]).unwrap();
        assert!(!is_acyclic(&tri));
        assert!(is_acyclic(&Orientation::new([1, 2, 3], vec![]).unwrap()));
    }

    #[test]
    fn orientation_validation() {
        assert!(Orientation::from_edges(vec![(1, 1)]).is_err());
        assert!(Orientation::from_edges(vec![(1, 2), (2, 1)]).is_err());
        assert!(Orientation::new([1, 2], vec![(1, 3)]).is_err());
    }

    #[test]
    fn act_on_four_cycle() {
        let o = Orientation::from_edges(vec![(1, 2), (3, 2), (3, 4), (1, 4)]).unwrap();
        for reading in [ActReading::Cycle, ActReading::Trail] {
            assert_eq!(find_act(&o, reading).unwrap().vertices(), &[1, 2, 3, 4]);
        }
        // a directed 4-cycle does not alternate
        let o = Orientation::from_edges(vec![(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        assert!(find_act(&o, ActReading::Trail).is_none());
    }

    #[test]
    fn no_act_in_figure_or_trees() {
        for reading in [ActReading::Cycle, ActReading::Trail] {
            assert!(find_act(&figure_orientation(), reading).is_none());
            let tree = Orientation::from_edges(vec![(1, 2), (3, 2), (3, 4), (5, 3), (5, 6)]).unwrap();
            assert!(find_act(&tree, reading).is_none());
        }
    }

    #[test]
    fn witness_is_canonical() {
        let o = Orientation::from_edges(vec![(5, 2), (7, 2), (7, 4), (5, 4)]).unwrap();
        let a = ActWitness::new(vec![7, 4, 5, 2], &o, ActReading::Cycle).unwrap();
        let b = ActWitness::new(vec![5, 4, 7, 2], &o, ActReading::Cycle).unwrap();
        let c = ActWitness::new(vec![5, 2, 7, 4], &o, ActReading::Cycle).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(a.vertices(), &[5, 2, 7, 4]);
        assert!(ActWitness::new(vec![2, 5, 4, 7], &o, ActReading::Cycle).is_err());
    }

    #[test]
    fn trail_reading_allows_repeated_vertices() {
        // two alternating 4-cycles sharing source 1, with 1 also a sink
        // elsewhere: the bowtie 1->2<-3->4<-1 is already a cycle, so build a
        // trail through a vertex visited as source and as sink.
        let edges = vec![(1, 2), (3, 2), (3, 4), (5, 4), (5, 1), (6, 1), (6, 7), (1, 7)];
        let o = Orientation::from_edges(edges).unwrap();
        let cyc = find_act(&o, ActReading::Cycle);
        let trail = find_act(&o, ActReading::Trail).unwrap();
        assert!(cyc.is_none());
        assert!(trail.vertices().len() >= 6);
    }

    #[test]
    fn orderings_give_exactly_the_acyclic_orientations() {
        let edges = vec![(1, 2), (1, 3), (2, 3), (3, 4), (2, 4)];
        let from_orders: BTreeSet<Vec<(u32, u32)>> = (1..=4u32)
            .permutations(4)
            .map(|p| {
                let mut e = orientation_from_ordering(&p, &edges).unwrap().edges().to_vec();
                e.sort_unstable();
                e
            })
            .collect();
        let mut acyclic = BTreeSet::new();
        for mask in 0..(1u32 << edges.len()) {
            let dir: Vec<(u32, u32)> = edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (b, a) } else { (a, b) })
                .collect();
            let o = Orientation::from_edges(dir.clone()).unwrap();
            if is_acyclic(&o) {
                let mut e = dir;
                e.sort_unstable();
                acyclic.insert(e);
            }
        }
        assert_eq!(from_orders, acyclic);
    }

    #[test]
    fn act_free_search_examples() {
        let lim = SearchLimits::default();
        let found = exists_acyclic_act_free(&[2, 3, 4, 5], &[(2, 3), (2, 4), (2, 5), (3, 4), (3, 5)], &lim)
            .unwrap()
            .unwrap();
        assert!(is_acyclic(&found));
        assert!(find_act(&found, ActReading::Trail).is_none());
        assert!(exists_acyclic_act_free(&[1, 2], &[(1, 2)], &lim).unwrap().is_some());
        let k4: Vec<(u32, u32)> = (1..=4u32).tuple_combinations().collect();
        assert!(exists_acyclic_act_free(&[1, 2, 3, 4], &k4, &lim).unwrap().is_none());
        let bowtie = [(2, 3), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (4, 6), (5, 6)];
        let cyc = SearchLimits {
            reading: ActReading::Cycle,
            ..lim
        };
        assert!(exists_acyclic_act_free(&[2, 3, 4, 5, 6], &bowtie, &cyc)
            .unwrap()
            .is_some());
        assert!(exists_acyclic_act_free(&[2, 3, 4, 5, 6], &bowtie, &lim)
            .unwrap()
            .is_none());
        let many: Vec<u32> = (1..=11).collect();
        assert!(matches!(
            exists_acyclic_act_free(&many, &[], &lim),
            Err(Error::LimitExceeded(_))
        ));
    }

    #[test]
    fn combinatorial_examples() {
        let lim = SearchLimits::default();
        let path = SimplicialComplex::from_facets(5, [[1, 2], [2, 3], [3, 4], [4, 5]]).unwrap();
        assert!(is_rigid_combinatorial(&path, &lim).unwrap().rigid);
        let split = SimplicialComplex::from_facets(4, [[1, 2], [3, 4]]).unwrap();
        assert!(!is_rigid_combinatorial(&split, &lim).unwrap().rigid);

        let sigma = SimplicialComplex::from_facets(5, [[1, 2, 3], [1, 2, 4], [1, 2, 5], [1, 3, 4], [1, 3, 5]]).unwrap();
        let v = is_rigid_combinatorial(&sigma, &lim).unwrap();
        assert!(v.rigid);
        assert_eq!(v.column_basis.len(), 5);

        let bip = SimplicialComplex::from_facets(5, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 5], [2, 4, 5], [3, 4, 5]])
            .unwrap();
        assert!(is_rigid_combinatorial(&bip, &lim).unwrap().rigid);

        // rigid, but the natural lex-greedy column basis has no ACT-free orientation
        let relabel_needed = SimplicialComplex::from_facets(
            6,
            [
                [1, 2, 3],
                [1, 3, 4],
                [1, 5, 6],
                [2, 3, 4],
                [2, 3, 5],
                [3, 4, 5],
                [4, 5, 6],
            ],
        )
        .unwrap();
        assert!(is_rigid_combinatorial(&relabel_needed, &lim).unwrap().rigid);
        // flexible, although some column basis of Φ has an ACT-free orientation
        let flexible = SimplicialComplex::from_facets(
            6,
            [
                [1, 5, 6],
                [2, 3, 4],
                [2, 3, 5],
                [2, 3, 6],
                [2, 4, 5],
                [2, 5, 6],
                [3, 4, 6],
            ],
        )
        .unwrap();
        assert!(!is_rigid_combinatorial(&flexible, &lim).unwrap().rigid);

        let tet = SimplicialComplex::from_facets(4, [[1, 2, 3, 4]]).unwrap();
        assert!(matches!(
            is_rigid_combinatorial(&tet, &lim),
            Err(Error::UnsupportedDimension(3))
        ));
    }
}
