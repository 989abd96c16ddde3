mod common;

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use volrig::complex::{complete_complex, k_subsets_of, lgrc, Simplex, SimplicialComplex};
use volrig::global::{
    certify_globally_rigid, implied_simplex_closure, replay_certificate, solve_lgrc_equivalent, GlobalCertificate,
    Step, Verdict,
};
use volrig::linalg::Rationals;
use volrig::rigidity::{are_congruent, are_equivalent, is_locally_rigid, Configuration, GenericOptions};

fn opts() -> GenericOptions {
    GenericOptions::default()
}

fn sample(seed: u64, count: usize) -> Vec<SimplicialComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d = rng.gen_range(2..=3);
            let n = rng.gen_range(d as u32 + 2..=6);
            let req = oracle_required(n, d);
            let m = rng.gen_range(req..=req + 4);
            SimplicialComplex::from_simplices(n, random_facets(&mut rng, n, d, m)).unwrap()
        })
        .collect()
}

/// A random affine map of determinant one applied to `x`.
fn unimodular(rng: &mut ChaCha8Rng, d: usize) -> impl Fn(&[Q]) -> Vec<Q> {
    let mut a: Vec<Vec<Q>> = (0..d).map(|i| (0..d).map(|j| q((i == j) as i64)).collect()).collect();
    for _ in 0..3 {
        let (i, j) = (rng.gen_range(0..d), rng.gen_range(0..d));
        if i != j {
            let f = Q::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into());
            for k in 0..d {
                let t = &f * &a[j][k];
                a[i][k] += t;
            }
        }
    }
    let b: Vec<Q> = (0..d).map(|_| q(rng.gen_range(-20..=20))).collect();
    move |x: &[Q]| {
        (0..d)
            .map(|i| (0..d).map(|k| &a[i][k] * &x[k]).sum::<Q>() + &b[i])
            .collect()
    }
}

/// Rebuild a configuration equivalent to `p` by following the trace:
/// the base case first, then the removed vertices in reverse order.
/// Every linear system must have a unique solution.
fn reconstruct(c: &SimplicialComplex, cert: &GlobalCertificate, p: &[Vec<Q>], rng: &mut ChaCha8Rng) -> Vec<Vec<Q>> {
    let d = c.dim();
    let mut facets: BTreeSet<Simplex> = c.top_faces().clone();
    let mut removed: Vec<(u32, Vec<Simplex>)> = Vec::new();
    let mut base = None;
    for step in &cert.trace {
        match step {
            Step::AddedSimplex { simplex, .. } => {
                facets.insert(simplex.clone());
            }
            Step::RemovedVertex { vertex, .. } => {
                let through: Vec<Simplex> = facets.iter().filter(|s| s.contains(*vertex)).cloned().collect();
                facets.retain(|s| !s.contains(*vertex));
                removed.push((*vertex, through));
            }
            Step::BaseCase {
                apex,
                base_facet,
                attachment_order,
            } => base = Some((*apex, base_facet.clone(), attachment_order.clone())),
        }
    }
    let (apex, base_facet, order) = base.expect("base case");
    let map = unimodular(rng, d);
    let mut qs: Vec<Option<Vec<Q>>> = vec![None; p.len()];
    for &v in base_facet.vertices() {
        qs[v as usize - 1] = Some(map(&p[v as usize - 1]));
    }
    let place = |qs: &mut Vec<Option<Vec<Q>>>, v: u32, through: &[Simplex]| {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for s in through {
            let (g, c0) = affine_in(qs, s, v, d);
            a.push(g);
            b.push(volume(p, s) - c0);
        }
        assert_eq!(rank(a.clone()), d, "vertex {v} is not determined");
        qs[v as usize - 1] = Some(solve_full_rank(&a, &b).expect("consistent system"));
    };
    let rest = base_facet.without_vertex(apex);
    for &j in &order {
        let through: Vec<Simplex> = k_subsets_of(rest.vertices(), d - 1)
            .map(|t| t.with_vertex(apex).unwrap().with_vertex(j).unwrap())
            .collect();
        assert_eq!(through.len(), d);
        place(&mut qs, j, &through);
    }
    for (v, through) in removed.iter().rev() {
        place(&mut qs, *v, through);
    }
    qs.into_iter().map(|x| x.expect("every vertex placed")).collect()
}

#[test]
fn certified_complexes_are_sound_on_rational_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut certified = 0;
    for c in sample(11, 60)
        .into_iter()
        .filter(|c| c.n() <= 5 && c.dim() == 2)
        .chain([lgrc(5, 2).unwrap()])
    {
        let cert = certify_globally_rigid(&c, None, &opts()).unwrap();
        if cert.verdict != Verdict::Certified {
            continue;
        }
        certified += 1;
        for _ in 0..50 {
            let p = random_points(&mut rng, c.n(), 2);
            let qv = reconstruct(&c, &cert, &p, &mut rng);
            let pc = Configuration::new(2, p).unwrap();
            let qc = Configuration::new(2, qv).unwrap();
            assert!(are_equivalent(&Rationals, &c, &pc, &qc).unwrap());
            assert!(are_congruent(&Rationals, c.n(), 2, &pc, &qc).unwrap());
        }
    }
    assert!(certified >= 3);
}

#[test]
fn lgrc_equivalence_solves_are_congruent() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, d) in [(5, 2), (6, 3), (7, 2)] {
        let l = lgrc(n, d).unwrap();
        let base = volrig::global::detect_lgrc_spanning(&l).unwrap().unwrap();
        for _ in 0..20 {
            let p = random_points(&mut rng, n, d);
            let map = unimodular(&mut rng, d);
            let q_base: BTreeMap<u32, Vec<Q>> = (1..=d as u32 + 1).map(|v| (v, map(&p[v as usize - 1]))).collect();
            let pc = Configuration::new(d, p).unwrap();
            let qc = solve_lgrc_equivalent(&Rationals, &base, &pc, &q_base).unwrap();
            assert!(are_equivalent(&Rationals, &l, &pc, &qc).unwrap());
            assert!(are_congruent(&Rationals, n, d, &pc, &qc).unwrap());
        }
    }
}

#[test]
fn certified_implies_locally_rigid() {
    let mut seen = 0;
    for c in sample(5, 150) {
        let cert = certify_globally_rigid(&c, None, &opts()).unwrap();
        if cert.verdict == Verdict::Certified {
            seen += 1;
            assert!(is_locally_rigid(&c, &opts()).unwrap().rigid, "{:?}", c.top_faces());
            assert!(replay_certificate(&c, &cert, &opts()).unwrap());
        }
    }
    assert!(seen >= 10, "only {seen} certified");
}

#[test]
fn closure_does_not_change_the_verdict() {
    for c in sample(9, 80) {
        let a = certify_globally_rigid(&c, None, &opts()).unwrap().verdict;
        let closed = implied_simplex_closure(&c).unwrap();
        let b = certify_globally_rigid(&closed, None, &opts()).unwrap().verdict;
        assert_eq!(a, b, "{:?}", c.top_faces());
    }
}

#[test]
fn verdict_and_trace_survive_relabelling() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for c in sample(13, 60) {
        let mut perm: Vec<u32> = (1..=c.n()).collect();
        perm.shuffle(&mut rng);
        let map: BTreeMap<u32, u32> = (1..=c.n()).zip(perm).collect();
        let relabelled = c.relabel(&map).unwrap();
        let cert = certify_globally_rigid(&c, None, &opts()).unwrap();
        assert_eq!(
            cert.verdict,
            certify_globally_rigid(&relabelled, None, &opts()).unwrap().verdict
        );
        if cert.verdict == Verdict::Certified {
            assert!(replay_certificate(&relabelled, &cert.relabel(&map).unwrap(), &opts()).unwrap());
        }
    }
}

#[test]
fn complete_and_lgrc_families_are_certified() {
    for d in 1..=3usize {
        for n in (d as u32 + 1)..=8 {
            for c in [complete_complex(n, d).unwrap(), lgrc(n, d).unwrap()] {
                let cert = certify_globally_rigid(&c, None, &opts()).unwrap();
                assert_eq!(cert.verdict, Verdict::Certified, "n = {n}, d = {d}");
                assert!(replay_certificate(&c, &cert, &opts()).unwrap());
            }
        }
    }
}
