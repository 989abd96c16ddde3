//! `volrig`: command-line front-end for the volume rigidity toolkit.
//!
//! Every subcommand reads JSON (a file path, or stdin when absent or `-`)
//! and writes a JSON report to stdout. Exit codes: 0 success, 2 input
//! error, 3 disagreement between independent oracles.

mod analyze;
mod text;

use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use volrig::complex::{complete_complex, lgrc, ComplexJson, Simplex, SimplicialComplex};
use volrig::global::{certify_globally_rigid, replay_certificate, GlobalCertificate};
use volrig::grassmann::{phi_column_basis, phi_rows};
use volrig::linalg::{format_rational, Field, Rationals};
use volrig::orientation::{exists_acyclic_act_free, find_act, is_acyclic, ActReading, Orientation, SearchLimits};
use volrig::rigidity::{
    generic_rank, is_basis, is_locally_rigid, required_rank, rigidity_matrix, trivial_flex_dim, volume_measurement,
    Configuration, ConfigurationJson, GenericOptions, DEFAULT_SEED,
};
use volrig::shifting::{exterior_shift, verify_shift_properties, LinearExtension};
use volrig::{bounds, homology, orientation};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Library(#[from] volrig::Error),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("theory-violation: oracles disagree on {0}")]
    Disagreement(String, Value),
    #[error("certificate rejected")]
    Rejected(Value),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Disagreement(..) => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "volrig", version, about = "Volume rigidity of simplicial complexes")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalArgs {
    /// RNG seed: an integer (decimal or 0x-hex), or `random`.
    #[arg(long, global = true)]
    seed: Option<String>,
    /// Prime modulus for randomized rank evaluations.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Independent random evaluations per rank estimate.
    #[arg(long, global = true)]
    trials: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest vertex set for the orientation search.
    #[arg(long, global = true)]
    limit_vertices: Option<usize>,
    /// Largest number of vertex removals in global certification.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Measure only the top-dimensional faces of non-pure complexes.
    #[arg(long, global = true)]
    ignore_impure: bool,
    /// Flip one oracle's verdict inside `analyze` (mutation testing).
    #[arg(long, global = true, hide = true, value_enum)]
    inject_fault: Option<analyze::Fault>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Reading {
    Trail,
    Cycle,
}

impl From<Reading> for ActReading {
    fn from(r: Reading) -> Self {
        match r {
            Reading::Trail => ActReading::Trail,
            Reading::Cycle => ActReading::Cycle,
        }
    }
}

#[derive(Args)]
struct Input {
    /// Input JSON file; stdin when omitted or `-`.
    input: Option<PathBuf>,
}

#[derive(Args)]
struct Size {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Local rigidity verdict from the generic rank of the rigidity matrix.
    Rigidity(Input),
    /// Generic rank of the top faces with its failure bound.
    Rank(Input),
    /// Whether the top faces are independent in the rigidity matroid.
    Independent(Input),
    /// Whether the top faces form a basis of the rigidity matroid.
    Basis(Input),
    /// Dimension of the trivial infinitesimal flexes.
    Flexdim(Size),
    /// Signed volumes and rigidity-matrix rank at a rational configuration.
    Measure {
        #[command(flatten)]
        input: Input,
        /// Configuration JSON `{"points": [[..], ..]}`; may also be given as
        /// a `points` field of the input.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Reduced Betti numbers over the rationals.
    Betti(Input),
    /// The Φ matrix on the top faces, its rank and column basis.
    Phi(Input),
    /// Check an orientation for cycles and ACTs, or find an ACT-free one.
    #[command(group(ArgGroup::new("mode").required(true).args(["check", "find"])))]
    Orient {
        #[command(flatten)]
        input: Input,
        /// Input edges are directed; report acyclicity and any ACT.
        #[arg(long)]
        check: bool,
        /// Input edges are undirected; search for an acyclic ACT-free orientation.
        #[arg(long)]
        find: bool,
        #[arg(long, value_enum, default_value_t = Reading::Trail)]
        reading: Reading,
    },
    /// Combinatorial rigidity test (connectivity for d = 1, orientations for d = 2).
    #[command(name = "rigid2-comb")]
    Rigid2Comb(Input),
    /// Exterior algebraic shift with its property report.
    Shift {
        #[command(flatten)]
        input: Input,
        /// Linear extension: `lex`, `colex` or `downset:1,3,4`.
        #[arg(long, default_value = "lex")]
        order: String,
    },
    /// Face-number lower bounds audit.
    Bounds(Input),
    /// The lexicographically greedy rigid complex.
    Lgrc(Size),
    /// The complete d-dimensional complex.
    Complete(Size),
    /// Try to certify generic global rigidity.
    GlobalCertify(Input),
    /// Replay a certificate produced by `global-certify`.
    GlobalReplay(Input),
    /// Run every applicable analysis and cross-check the oracles.
    Analyze(Input),
}

fn parse_seed(s: &str) -> CliResult<u64> {
    if s == "random" {
        return Ok(rand::thread_rng().gen());
    }
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|_| CliError::Input(format!("invalid seed {s:?}")))
}

impl GlobalArgs {
    fn options(&self) -> CliResult<GenericOptions> {
        let mut opts = GenericOptions::default();
        opts.seed = match &self.seed {
            Some(s) => parse_seed(s)?,
            None => DEFAULT_SEED,
        };
        if let Some(p) = self.prime {
            opts.prime = p;
        }
        if let Some(t) = self.trials {
            if t == 0 {
                return Err(CliError::Input("--trials must be at least 1".into()));
            }
            opts.trials = t;
        }
        opts.ignore_impure = self.ignore_impure;
        opts.field()?;
        Ok(opts)
    }

    fn limits(&self, reading: ActReading) -> SearchLimits {
        let mut limits = SearchLimits {
            reading,
            ..SearchLimits::default()
        };
        if let Some(v) = self.limit_vertices {
            limits.ordering_vertices = v;
            limits.act_vertices = limits.act_vertices.max(v);
        }
        limits
    }
}

fn read_text(input: &Input) -> CliResult<String> {
    let mut s = String::new();
    match input.input.as_deref() {
        None => {
            std::io::stdin().read_to_string(&mut s)?;
        }
        Some(p) if p.as_os_str() == "-" => {
            std::io::stdin().read_to_string(&mut s)?;
        }
        Some(p) => s = std::fs::read_to_string(p)?,
    }
    Ok(s)
}

fn read_json(input: &Input) -> CliResult<Value> {
    serde_json::from_str(&read_text(input)?).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value, what: &str) -> CliResult<T> {
    serde_json::from_value(v).map_err(|e| CliError::Input(format!("invalid {what}: {e}")))
}

fn complex_of(v: &Value) -> CliResult<SimplicialComplex> {
    let parsed: ComplexJson = from_value(v.clone(), "complex")?;
    Ok(parsed.into_complex()?)
}

fn read_complex(input: &Input) -> CliResult<(SimplicialComplex, Value)> {
    let v = read_json(input)?;
    Ok((complex_of(&v)?, v))
}

fn warn_impure(c: &SimplicialComplex) {
    if !c.is_pure() {
        let faces: Vec<String> = c.sub_top_facets().iter().map(|s| format!("{s:?}")).collect();
        eprintln!(
            "warning: complex is not pure; sub-top maximal faces: {}",
            faces.join(" ")
        );
    }
}

fn top_facets(c: &SimplicialComplex, opts: &GenericOptions) -> CliResult<Vec<Simplex>> {
    if !opts.ignore_impure {
        c.require_pure()?;
    }
    Ok(c.top_faces().iter().cloned().collect())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

#[derive(Deserialize)]
struct EdgeInput {
    #[serde(default)]
    vertices: Option<Vec<u32>>,
    edges: Vec<(u32, u32)>,
}

#[derive(Deserialize)]
struct CertifiedInput {
    complex: ComplexJson,
    certificate: GlobalCertificate,
}

fn run(cli: &Cli) -> CliResult<Value> {
    let g = &cli.global;
    let opts = g.options()?;
    let options = to_value(&opts);
    Ok(match &cli.command {
        Command::Rigidity(input) => {
            let (c, _) = read_complex(input)?;
            json!({ "verdict": is_locally_rigid(&c, &opts)?, "options": options })
        }
        Command::Rank(input) => {
            let (c, _) = read_complex(input)?;
            let facets = top_facets(&c, &opts)?;
            let est = generic_rank(&facets, c.n(), c.dim(), &opts)?;
            json!({ "facets": facets.len(), "required": required_rank(c.n(), c.dim()), "rank": est, "options": options })
        }
        Command::Independent(input) => {
            let (c, _) = read_complex(input)?;
            let facets = top_facets(&c, &opts)?;
            let est = generic_rank(&facets, c.n(), c.dim(), &opts)?;
            json!({ "independent": est.rank == facets.len(), "facets": facets.len(), "rank": est, "options": options })
        }
        Command::Basis(input) => {
            let (c, _) = read_complex(input)?;
            let facets = top_facets(&c, &opts)?;
            json!({
                "basis": is_basis(&facets, c.n(), c.dim(), &opts)?,
                "facets": facets.len(),
                "required": required_rank(c.n(), c.dim()),
                "options": options,
            })
        }
        Command::Flexdim(Size { n, d }) => json!({
            "n": n,
            "d": d,
            "trivial_flex_dim": trivial_flex_dim(*n, *d, &opts)?,
            "expected": d * d + d - 1,
            "options": options,
        }),
        Command::Measure { input, config } => measure(input, config.as_ref(), &opts)?,
        Command::Betti(input) => {
            let (c, _) = read_complex(input)?;
            json!({ "f_vector": c.f_vector(), "betti": homology::betti(&c) })
        }
        Command::Phi(input) => {
            let (c, _) = read_complex(input)?;
            let facets = top_facets(&c, &opts)?;
            let m = phi_rows(&facets, c.n(), c.dim())?;
            let entries: Vec<Vec<String>> = m
                .rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect();
            json!({
                "rows": m.row_labels(),
                "columns": m.col_labels(),
                "matrix": entries,
                "rank": m.rank(),
                "column_basis": phi_column_basis(&facets, c.n(), c.dim())?,
            })
        }
        Command::Orient {
            input, check, reading, ..
        } => {
            let e: EdgeInput = from_value(read_json(input)?, "edge list")?;
            let reading = ActReading::from(*reading);
            let vertices: Vec<u32> = match e.vertices {
                Some(v) => v,
                None => e.edges.iter().flat_map(|&(a, b)| [a, b]).collect(),
            };
            if *check {
                let o = Orientation::new(vertices, e.edges)?;
                let act = find_act(&o, reading);
                json!({ "acyclic": is_acyclic(&o), "act_free": act.is_none(), "act": act, "reading": reading })
            } else {
                let found = exists_acyclic_act_free(&vertices, &e.edges, &g.limits(reading))?;
                json!({ "found": found.is_some(), "orientation": found, "reading": reading })
            }
        }
        Command::Rigid2Comb(input) => {
            let (c, _) = read_complex(input)?;
            to_value(&orientation::is_rigid_combinatorial(&c, &g.limits(ActReading::Trail))?)
        }
        Command::Shift { input, order } => {
            let (c, _) = read_complex(input)?;
            warn_impure(&c);
            let ext: LinearExtension = order.parse()?;
            let shifted = exterior_shift(&c, ext, &opts)?;
            let report = verify_shift_properties(&c, &shifted);
            if !shifted.as_complex().is_pure() {
                eprintln!("warning: the shifted complex is not pure");
            }
            json!({ "shifted": shifted, "properties": report })
        }
        Command::Bounds(input) => {
            let (c, _) = read_complex(input)?;
            to_value(&bounds::audit_f_vector(&c)?)
        }
        Command::Lgrc(Size { n, d }) => to_value(&ComplexJson::from(&lgrc(*n, *d)?)),
        Command::Complete(Size { n, d }) => to_value(&ComplexJson::from(&complete_complex(*n, *d)?)),
        Command::GlobalCertify(input) => {
            let (c, _) = read_complex(input)?;
            let cert = certify_globally_rigid(&c, g.depth, &opts)?;
            json!({ "complex": ComplexJson::from(&c), "certificate": cert })
        }
        Command::GlobalReplay(input) => {
            let doc: CertifiedInput = from_value(read_json(input)?, "certificate document")?;
            let c = doc.complex.into_complex()?;
            let valid = replay_certificate(&c, &doc.certificate, &opts)?;
            let out = json!({ "valid": valid });
            if !valid {
                return Err(CliError::Rejected(out));
            }
            out
        }
        Command::Analyze(input) => {
            let text = read_text(input)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))?;
            let c = complex_of(&v)?;
            let report = analyze::analyze(&c, &opts, g.depth, &g.limits(ActReading::Trail), g.inject_fault);
            let failed = report.failed_checks();
            let value = to_value(&report);
            if !failed.is_empty() {
                return Err(CliError::Disagreement(failed.join(", "), value));
            }
            value
        }
    })
}

fn measure(input: &Input, config: Option<&PathBuf>, opts: &GenericOptions) -> CliResult<Value> {
    let (c, v) = read_complex(input)?;
    let d = c.dim();
    let (cfg, source) = match (config, v.get("points")) {
        (Some(path), _) => {
            let s = std::fs::read_to_string(path)?;
            let cj: ConfigurationJson =
                serde_json::from_str(&s).map_err(|e| CliError::Input(format!("invalid configuration: {e}")))?;
            (cj.into_configuration(d)?, "file")
        }
        (None, Some(points)) => {
            let cj: ConfigurationJson = from_value(json!({ "points": points }), "configuration")?;
            (cj.into_configuration(d)?, "input")
        }
        (None, None) => {
            let mut rng = opts.rng(0);
            let points = (0..c.n())
                .map(|_| (0..d).map(|_| Rationals.from_i64(rng.gen_range(-50i64..=50))).collect())
                .collect();
            (Configuration::new(d, points)?, "random-integer")
        }
    };
    let vols = volume_measurement(&Rationals, &c, &cfg)?;
    let volumes: BTreeMap<String, String> = vols
        .iter()
        .map(|(s, x)| {
            (
                s.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
                format_rational(x),
            )
        })
        .collect();
    let rank = rigidity_matrix(&Rationals, &c, &cfg)?.rank();
    Ok(json!({
        "configuration": ConfigurationJson::from_configuration(&cfg),
        "source": source,
        "volumes": volumes,
        "rigidity_matrix_rank": rank,
        "required": required_rank(c.n(), d),
    }))
}

fn emit(v: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("serializable")),
        Format::Text => print!("{}", text::render(v)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            emit(&v, cli.global.format);
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                CliError::Disagreement(_, report) | CliError::Rejected(report) => emit(report, cli.global.format),
                _ => {}
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
