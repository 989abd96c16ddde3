//! One-sided certificates of generic global volume rigidity.
//!
//! The certifier alternates three moves on a facet set with an explicit
//! vertex set:
//!
//! * closure: add a `d`-simplex `J` when some vertex `i ∉ J` has all `d+1`
//!   cone facets `{i} ∪ (J - j)`; the volume of `J` is then the signed sum
//!   of the cone volumes, so equivalence classes do not change;
//! * base case: a relabelled LGRC spanning every vertex, which is globally
//!   rigid because each attached vertex solves a nonsingular linear system;
//! * vertex removal: drop a vertex whose facets determine its position
//!   (their volume gradients in that vertex have rank `d`) and recurse.
//!
//! A certified verdict carries a trace that [`replay_certificate`] checks
//! step by step. An unknown verdict claims nothing.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::complex::{k_subsets_of, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{determinant, solve, Field, FieldMatrix, PrimeField};
use crate::rigidity::{Configuration, GenericOptions};

/// A facet set of `d`-simplices together with its vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct State {
    vertices: BTreeSet<u32>,
    facets: BTreeSet<Simplex>,
}

impl State {
    fn of(complex: &SimplicialComplex) -> Self {
        Self {
            vertices: (1..=complex.n()).collect(),
            facets: complex.top_faces().clone(),
        }
    }

    fn through(&self, v: u32) -> Vec<&Simplex> {
        self.facets.iter().filter(|s| s.contains(v)).collect()
    }

    fn without(&self, v: u32) -> Self {
        Self {
            vertices: self.vertices.iter().copied().filter(|&w| w != v).collect(),
            facets: self.facets.iter().filter(|s| !s.contains(v)).cloned().collect(),
        }
    }
}

/// One step of a certificate trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum Step {
    /// `simplex` added because every cone facet over it from `cone_vertex`
    /// is present.
    AddedSimplex { simplex: Simplex, cone_vertex: u32 },
    /// `vertex` and its facets removed; its facet volumes determine it.
    RemovedVertex { vertex: u32, facets_through: usize },
    /// The remaining facets contain a relabelled LGRC: the seed facet
    /// `base_facet` and, for each vertex `j` of `attachment_order`, the `d`
    /// facets `{apex} ∪ T ∪ {j}` with `T ⊂ base_facet - apex`.
    BaseCase {
        apex: u32,
        base_facet: Simplex,
        attachment_order: Vec<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Certified,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalCertificate {
    pub n: u32,
    pub d: usize,
    pub verdict: Verdict,
    pub trace: Vec<Step>,
}

impl GlobalCertificate {
    /// Apply a vertex relabelling to every label in the trace.
    pub fn relabel(&self, map: &BTreeMap<u32, u32>) -> Result<Self> {
        let m = |v: u32| map.get(&v).copied().unwrap_or(v);
        let ms = |s: &Simplex| Simplex::new(s.vertices().iter().map(|&v| m(v)).collect());
        let trace = self
            .trace
            .iter()
            .map(|step| {
                Ok(match step {
                    Step::AddedSimplex { simplex, cone_vertex } => Step::AddedSimplex {
                        simplex: ms(simplex)?,
                        cone_vertex: m(*cone_vertex),
                    },
                    Step::RemovedVertex { vertex, facets_through } => Step::RemovedVertex {
                        vertex: m(*vertex),
                        facets_through: *facets_through,
                    },
                    Step::BaseCase {
                        apex,
                        base_facet,
                        attachment_order,
                    } => {
                        let mut order: Vec<u32> = attachment_order.iter().map(|&v| m(v)).collect();
                        order.sort_unstable();
                        Step::BaseCase {
                            apex: m(*apex),
                            base_facet: ms(base_facet)?,
                            attachment_order: order,
                        }
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { trace, ..self.clone() })
    }
}

fn cone_facets(cone: u32, simplex: &Simplex) -> impl Iterator<Item = Simplex> + '_ {
    simplex
        .boundary_faces()
        .map(move |f| f.with_vertex(cone).expect("cone vertex outside simplex"))
}

/// Closure sweeps in increasing vertex, then simplex, order until nothing
/// changes.
fn close(state: &mut State, d: usize, trace: &mut Vec<Step>) {
    loop {
        let mut changed = false;
        let verts: Vec<u32> = state.vertices.iter().copied().collect();
        for &i in &verts {
            let link: BTreeSet<Simplex> = state.through(i).into_iter().map(|s| s.without_vertex(i)).collect();
            let nbrs: Vec<u32> = link
                .iter()
                .flat_map(|t| t.vertices().to_vec())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            if nbrs.len() < d + 1 {
                continue;
            }
            for cand in k_subsets_of(&nbrs, d + 1) {
                if state.facets.contains(&cand) {
                    continue;
                }
                if cand.boundary_faces().all(|f| link.contains(&f)) {
                    state.facets.insert(cand.clone());
                    trace.push(Step::AddedSimplex {
                        simplex: cand,
                        cone_vertex: i,
                    });
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// Fixpoint of implied-simplex addition.
pub fn implied_simplex_closure(complex: &SimplicialComplex) -> Result<SimplicialComplex> {
    complex.require_pure()?;
    let mut state = State::of(complex);
    close(&mut state, complex.dim(), &mut Vec::new());
    SimplicialComplex::from_simplices(complex.n(), state.facets)
}

fn detect(state: &State, d: usize) -> Option<Step> {
    for f in &state.facets {
        for &apex in f.vertices() {
            let rest = f.without_vertex(apex);
            let ts: Vec<Simplex> = k_subsets_of(rest.vertices(), d - 1).collect();
            let attach: Vec<u32> = state.vertices.iter().copied().filter(|v| !f.contains(*v)).collect();
            let ok = attach.iter().all(|&j| {
                ts.iter().all(|t| {
                    let s = t.with_vertex(apex).and_then(|s| s.with_vertex(j)).expect("distinct");
                    state.facets.contains(&s)
                })
            });
            if ok {
                return Some(Step::BaseCase {
                    apex,
                    base_facet: f.clone(),
                    attachment_order: attach,
                });
            }
        }
    }
    None
}

/// A relabelled LGRC spanning all of `[n]`, if one exists: returned as a
/// [`Step::BaseCase`].
pub fn detect_lgrc_spanning(complex: &SimplicialComplex) -> Result<Option<Step>> {
    complex.require_pure()?;
    Ok(detect(&State::of(complex), complex.dim()))
}

/// `det [1 … 1; x_0 … x_d]`.
fn simplex_volume<F: Field>(field: &F, pts: &[Vec<F::Elem>]) -> F::Elem {
    let d = pts.len() - 1;
    let mut m = vec![vec![field.one(); d + 1]];
    for c in 0..d {
        m.push(pts.iter().map(|p| p[c].clone()).collect());
    }
    determinant(field, &m)
}

/// The signed volume of `simplex` as an affine function `g · x + c` of the
/// position `x` of its vertex `v`, all other vertices placed by `pos`.
fn affine_in_vertex<F: Field>(
    field: &F,
    pos: &dyn Fn(u32) -> Vec<F::Elem>,
    simplex: &Simplex,
    v: u32,
    d: usize,
) -> (Vec<F::Elem>, F::Elem) {
    let place = |x: &[F::Elem]| -> Vec<Vec<F::Elem>> {
        simplex
            .vertices()
            .iter()
            .map(|&w| if w == v { x.to_vec() } else { pos(w) })
            .collect()
    };
    let origin = vec![field.zero(); d];
    let c = simplex_volume(field, &place(&origin));
    let g = (0..d)
        .map(|k| {
            let mut e = origin.clone();
            e[k] = field.one();
            field.sub(&simplex_volume(field, &place(&e)), &c)
        })
        .collect();
    (g, c)
}

/// Whether the volume gradients in `v` of its facets have rank `d` at a
/// random point. A full-rank evaluation proves generic full rank.
fn determines_vertex(state: &State, v: u32, d: usize, opts: &GenericOptions) -> Result<bool> {
    let field = opts.field()?;
    let through = state.through(v);
    if through.len() < d {
        return Ok(false);
    }
    for t in 0..opts.trials.max(1) {
        let mut rng = opts.rng(t);
        let n = state.vertices.iter().max().copied().unwrap_or(0);
        let p = Configuration::random(&field, n, d, &mut rng);
        let pos = |w: u32| p.point(w).to_vec();
        let rows: Vec<Vec<u64>> = through
            .iter()
            .map(|s| affine_in_vertex(&field, &pos, s, v, d).0)
            .collect();
        if FieldMatrix::from_rows(field, d, rows)?.rank() == d {
            return Ok(true);
        }
    }
    Ok(false)
}

struct Certifier<'a> {
    d: usize,
    opts: &'a GenericOptions,
    failed: HashSet<State>,
}

impl Certifier<'_> {
    fn run(&mut self, mut state: State, depth: usize) -> Result<Option<Vec<Step>>> {
        let d = self.d;
        let mut trace = Vec::new();
        close(&mut state, d, &mut trace);
        if state.vertices.len() < d + 1 {
            return Ok(None);
        }
        if let Some(base) = detect(&state, d) {
            trace.push(base);
            return Ok(Some(trace));
        }
        let needed = (d * state.vertices.len() + 1).saturating_sub(d * d + d);
        if depth == 0 || state.facets.len() < needed || self.failed.contains(&state) {
            return Ok(None);
        }
        let verts: Vec<u32> = state.vertices.iter().copied().collect();
        for v in verts {
            let count = state.through(v).len();
            if count < d + 1 || !determines_vertex(&state, v, d, self.opts)? {
                continue;
            }
            if let Some(rest) = self.run(state.without(v), depth - 1)? {
                trace.push(Step::RemovedVertex {
                    vertex: v,
                    facets_through: count,
                });
                trace.extend(rest);
                return Ok(Some(trace));
            }
        }
        self.failed.insert(state);
        Ok(None)
    }
}

/// Certify generic global rigidity or return [`Verdict::Unknown`].
/// `depth_limit` bounds the number of vertex removals (default `n`).
pub fn certify_globally_rigid(
    complex: &SimplicialComplex,
    depth_limit: Option<usize>,
    opts: &GenericOptions,
) -> Result<GlobalCertificate> {
    let (n, d) = (complex.n(), complex.dim());
    if (n as usize) < d + 1 || d == 0 {
        return Err(Error::TooFewVertices { n, d });
    }
    complex.require_pure()?;
    let mut c = Certifier {
        d,
        opts,
        failed: HashSet::new(),
    };
    let found = c.run(State::of(complex), depth_limit.unwrap_or(n as usize))?;
    Ok(match found {
        Some(trace) => GlobalCertificate {
            n,
            d,
            verdict: Verdict::Certified,
            trace,
        },
        None => GlobalCertificate {
            n,
            d,
            verdict: Verdict::Unknown,
            trace: Vec::new(),
        },
    })
}

/// Check every step of a certified trace against `complex`. Structural
/// problems are errors; a failed precondition yields `Ok(false)`.
pub fn replay_certificate(
    complex: &SimplicialComplex,
    cert: &GlobalCertificate,
    opts: &GenericOptions,
) -> Result<bool> {
    let (n, d) = (complex.n(), complex.dim());
    if cert.verdict != Verdict::Certified {
        return Err(Error::MalformedTrace("only certified traces can be replayed".into()));
    }
    if cert.n != n || cert.d != d {
        return Err(Error::MalformedTrace(format!(
            "certificate is for n = {}, d = {}, complex has n = {n}, d = {d}",
            cert.n, cert.d
        )));
    }
    match cert.trace.iter().position(|s| matches!(s, Step::BaseCase { .. })) {
        Some(i) if i + 1 == cert.trace.len() => {}
        _ => return Err(Error::MalformedTrace("trace must end with its only base case".into())),
    }
    complex.require_pure()?;
    let mut state = State::of(complex);
    for step in &cert.trace {
        match step {
            Step::AddedSimplex { simplex, cone_vertex } => {
                if simplex.len() != d + 1 {
                    return Err(Error::MalformedTrace(format!("{simplex:?} is not a {d}-simplex")));
                }
                let inside = simplex.vertices().iter().all(|v| state.vertices.contains(v));
                if simplex.contains(*cone_vertex)
                    || !inside
                    || !state.vertices.contains(cone_vertex)
                    || state.facets.contains(simplex)
                    || !cone_facets(*cone_vertex, simplex).all(|f| state.facets.contains(&f))
                {
                    return Ok(false);
                }
                state.facets.insert(simplex.clone());
            }
            Step::RemovedVertex { vertex, facets_through } => {
                let count = state.through(*vertex).len();
                if !state.vertices.contains(vertex)
                    || count != *facets_through
                    || count < d + 1
                    || !determines_vertex(&state, *vertex, d, opts)?
                {
                    return Ok(false);
                }
                state = state.without(*vertex);
            }
            Step::BaseCase {
                apex,
                base_facet,
                attachment_order,
            } => {
                if base_facet.len() != d + 1 {
                    return Err(Error::MalformedTrace(format!("{base_facet:?} is not a {d}-simplex")));
                }
                let expected: Vec<u32> = state
                    .vertices
                    .iter()
                    .copied()
                    .filter(|v| !base_facet.contains(*v))
                    .collect();
                let mut order = attachment_order.clone();
                order.sort_unstable();
                if !state.facets.contains(base_facet) || !base_facet.contains(*apex) || order != expected {
                    return Ok(false);
                }
                let rest = base_facet.without_vertex(*apex);
                for &j in attachment_order {
                    for t in k_subsets_of(rest.vertices(), d - 1) {
                        let s = t.with_vertex(*apex).and_then(|s| s.with_vertex(j))?;
                        if !state.facets.contains(&s) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Solve the equivalence system of a relabelled LGRC: given `p`, and `q`
/// already fixed on the base facet, each attached vertex `j` gets the
/// unique `q(j)` making its `d` facet volumes agree with `p`. Errors when
/// a system is singular.
pub fn solve_lgrc_equivalent<F: Field>(
    field: &F,
    base: &Step,
    p: &Configuration<F>,
    q_base: &BTreeMap<u32, Vec<F::Elem>>,
) -> Result<Configuration<F>> {
    let Step::BaseCase {
        apex,
        base_facet,
        attachment_order,
    } = base
    else {
        return Err(Error::Invalid("not a base-case step".into()));
    };
    let d = p.d();
    let mut q: BTreeMap<u32, Vec<F::Elem>> = BTreeMap::new();
    for &v in base_facet.vertices() {
        let x = q_base
            .get(&v)
            .ok_or_else(|| Error::Invalid(format!("no base position for vertex {v}")))?;
        q.insert(v, x.clone());
    }
    let rest = base_facet.without_vertex(*apex);
    for &j in attachment_order {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for t in k_subsets_of(rest.vertices(), d - 1) {
            let s = t.with_vertex(*apex).and_then(|s| s.with_vertex(j))?;
            let target = simplex_volume(
                field,
                &s.vertices().iter().map(|&w| p.point(w).to_vec()).collect::<Vec<_>>(),
            );
            let pos = |w: u32| q[&w].clone();
            let (g, c) = affine_in_vertex(field, &pos, &s, j, d);
            a.push(g);
            b.push(field.sub(&target, &c));
        }
        let x = solve(field, &a, &b).ok_or_else(|| Error::Degenerate(format!("singular system at vertex {j}")))?;
        q.insert(j, x);
    }
    if q.len() != p.n() as usize || q.keys().copied().ne(1..=p.n()) {
        return Err(Error::Invalid("base case does not span the configuration".into()));
    }
    Configuration::new(d, q.into_values().collect())
}

/// Convenience for tests and the CLI: a random prime-field configuration.
pub fn random_configuration(
    n: u32,
    d: usize,
    opts: &GenericOptions,
    stream: usize,
) -> Result<Configuration<PrimeField>> {
    let field = opts.field()?;
    Ok(Configuration::random(&field, n, d, &mut opts.rng(stream)))
}
