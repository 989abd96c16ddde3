//! The `analyze` pipeline: every applicable oracle on one complex plus the
//! agreement checks between them.

use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::Serialize;
use sha2::{Digest, Sha256};

use volrig::bounds::{audit_f_vector, BoundReport};
use volrig::complex::{FVector, Simplex, SimplicialComplex};
use volrig::global::{certify_globally_rigid, GlobalCertificate, Verdict};
use volrig::grassmann::{cross_check_independence, IndependenceReport};
use volrig::homology::{betti, BettiVector};
use volrig::orientation::{is_rigid_combinatorial, CombinatorialVerdict, SearchLimits};
use volrig::rigidity::{is_locally_rigid, GenericOptions, RigidityVerdict};
use volrig::shifting::{
    exterior_shift, shift_rigidity_test, verify_shift_properties, LinearExtension, ShiftReport, ShiftRigidity,
    ShiftedComplex,
};

/// Which verdict `--inject-fault` flips.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    Rank,
    Shift,
    Combinatorial,
    Grassmann,
}

/// A section either holds a result or the reason it was skipped.
#[derive(Serialize)]
#[serde(untagged)]
pub enum Section<T> {
    Done(T),
    Skipped { skipped: String },
}

impl<T> Section<T> {
    fn of(r: volrig::Result<T>) -> Self {
        match r {
            Ok(v) => Section::Done(v),
            Err(e) => Section::Skipped { skipped: e.to_string() },
        }
    }

    fn get(&self) -> Option<&T> {
        match self {
            Section::Done(v) => Some(v),
            Section::Skipped { .. } => None,
        }
    }

    fn get_mut(&mut self) -> Option<&mut T> {
        match self {
            Section::Done(v) => Some(v),
            Section::Skipped { .. } => None,
        }
    }
}

#[derive(Serialize)]
pub struct ShiftSection {
    pub rigidity: ShiftRigidity,
    pub shifted: ShiftedComplex,
    pub properties: ShiftReport,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub input_sha256: String,
    pub n: u32,
    pub d: usize,
    pub options: GenericOptions,
    pub f_vector: FVector,
    pub betti: BettiVector,
    pub rigidity: Section<RigidityVerdict>,
    pub grassmann: Section<IndependenceReport>,
    pub combinatorial: Section<CombinatorialVerdict>,
    pub shift: Section<ShiftSection>,
    pub bounds: Section<BoundReport>,
    pub global: Section<GlobalCertificate>,
    /// Each applicable check; all must hold.
    pub agreement: BTreeMap<&'static str, bool>,
}

impl AnalysisReport {
    pub fn failed_checks(&self) -> Vec<&'static str> {
        self.agreement.iter().filter(|(_, &ok)| !ok).map(|(&k, _)| k).collect()
    }
}

pub fn analyze(
    c: &SimplicialComplex,
    opts: &GenericOptions,
    depth: Option<usize>,
    limits: &SearchLimits,
    fault: Option<Fault>,
) -> AnalysisReport {
    let (n, d) = (c.n(), c.dim());
    let facets: Vec<Simplex> = c.top_faces().iter().cloned().collect();
    let input_sha256 = hex::encode(Sha256::digest(c.to_json().as_bytes()));

    let mut rigidity = Section::of(is_locally_rigid(c, opts));
    let pure = if opts.ignore_impure { Ok(()) } else { c.require_pure() };
    let mut grassmann = Section::of(pure.and_then(|_| cross_check_independence(&facets, n, d, opts)));
    let mut combinatorial = Section::of(is_rigid_combinatorial(c, limits));
    let mut shift = Section::of(shift_rigidity_test(c, opts).and_then(|rigidity| {
        let shifted = exterior_shift(c, LinearExtension::Lex, opts)?;
        let properties = verify_shift_properties(c, &shifted);
        Ok(ShiftSection {
            rigidity,
            shifted,
            properties,
        })
    }));
    let bounds = Section::of(audit_f_vector(c));
    let global = Section::of(certify_globally_rigid(c, depth, opts));

    match fault {
        Some(Fault::Rank) => rigidity.get_mut().into_iter().for_each(|r| r.rigid = !r.rigid),
        Some(Fault::Shift) => shift
            .get_mut()
            .into_iter()
            .for_each(|s| s.rigidity.rigid = !s.rigidity.rigid),
        Some(Fault::Combinatorial) => combinatorial.get_mut().into_iter().for_each(|v| v.rigid = !v.rigid),
        Some(Fault::Grassmann) => grassmann.get_mut().into_iter().for_each(|g| {
            g.grassmann_independent = !g.grassmann_independent;
            g.agree = g.grassmann_independent == g.rigidity_independent;
        }),
        None => {}
    }

    let b = betti(c);
    let mut agreement = BTreeMap::new();
    if let Some(r) = rigidity.get() {
        if let Some(s) = shift.get() {
            agreement.insert("rank=shift", r.rigid == s.rigidity.rigid);
            agreement.insert("shift-properties", s.properties.all_pass());
        }
        if let Some(v) = combinatorial.get() {
            agreement.insert("rank=combinatorial", r.rigid == v.rigid);
        }
        if let Some(g) = global.get() {
            agreement.insert("global-implies-local", g.verdict == Verdict::Unknown || r.rigid);
        }
        if let Some(bd) = bounds.get() {
            agreement.insert("rigid-implies-bounds", !r.rigid || bd.meets_all());
        }
        if let Some(g) = grassmann.get() {
            agreement.insert(
                "grassmann=rank",
                g.agree && g.rigidity_independent == (r.rank == facets.len()),
            );
        }
        agreement.insert("top-betti-implies-dependent", b.top() == 0 || r.rank < facets.len());
    }

    AnalysisReport {
        input_sha256,
        n,
        d,
        options: *opts,
        f_vector: c.f_vector(),
        betti: b,
        rigidity,
        grassmann,
        combinatorial,
        shift,
        bounds,
        global,
        agreement,
    }
}
