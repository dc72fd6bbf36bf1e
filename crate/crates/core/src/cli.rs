//! Command-line driver. Every command prints one JSON report on stdout.
//!
//! Exit codes: 0 when the checked property holds, 1 when it is violated,
//! 2 on usage, parse or other errors.

use crate::correctability::{is_correctable, verify_witness, Region};
use crate::css::{brute_distance, brute_distance_bounded, kunneth_parameters, CssCode, PauliType, TypedBound};
use crate::diaggate::{
    circuit::{parse_circuit, write_circuit},
    hierarchy_level, logical_action, preserves_codespace, transversal_nogo_harness,
};
use crate::error::{Error, Result};
use crate::io;
use crate::yesgo;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Highest hierarchy level a transversal diagonal gate may reach.
const NOGO_LEVEL_BOUND: u32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hgpforge", version, about = "Build and check homological product CSS codes")]
struct Cli {
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel searches.
    #[arg(long, global = true, env = "HGPFORGE_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a product code from seed matrices and write a bundle.
    Build {
        #[arg(required = true)]
        seeds: Vec<PathBuf>,
        #[arg(long)]
        level: usize,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Canonical logical basis of a bundle.
    Logicals { bundle: PathBuf },
    /// Exact X and Z distances.
    Distance {
        bundle: PathBuf,
        /// Only search up to this weight.
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// Decide whether a qubit region is correctable.
    Correctable { bundle: PathBuf, region: PathBuf },
    /// Check a diagonal circuit preserves the codespace and report its logical action.
    VerifyDiagonal {
        bundle: PathBuf,
        circuit: PathBuf,
        #[arg(long, default_value_t = 1)]
        copies: usize,
    },
    /// Search codespace-preserving transversal diagonal gates.
    NogoTransversal {
        bundle: PathBuf,
        #[arg(long = "mod", default_value_t = 3)]
        modulus: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Build and check the multi-copy toric-code controlled-Z construction.
    Yesgo {
        #[arg(long)]
        t: usize,
        #[arg(short = 'L', long = "L")]
        l: usize,
        /// Write the circuit here instead of embedding it in the report.
        #[arg(long)]
        circuit_out: Option<PathBuf>,
        /// Also write the code bundle.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Build { .. } => "build",
            Command::Logicals { .. } => "logicals",
            Command::Distance { .. } => "distance",
            Command::Correctable { .. } => "correctable",
            Command::VerifyDiagonal { .. } => "verify-diagonal",
            Command::NogoTransversal { .. } => "nogo-transversal",
            Command::Yesgo { .. } => "yesgo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violated,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub results: Value,
    pub status: Status,
}

#[derive(Default)]
struct Inputs(Vec<InputDigest>);

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path)?;
        self.0.push(InputDigest { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) });
        String::from_utf8(bytes).map_err(|_| Error::Parse { line: 0, msg: format!("{} is not UTF-8", path.display()) })
    }

    fn bundle(&mut self, path: &Path) -> Result<CssCode> {
        io::parse_bundle(&self.read(path)?)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)?;
    Ok(())
}

fn bound_json(b: TypedBound) -> Value {
    match b {
        TypedBound::Exact { d, witness } => json!({"exact": d, "witness": witness.support()}),
        TypedBound::AtLeast(w) => json!({"at_least": w}),
    }
}

fn kunneth_json(code: &CssCode) -> Value {
    match (code.complex(), code.level()) {
        (Some(pc), Some(l)) => kunneth_parameters(pc, l).map_or(Value::Null, |p| json!(p)),
        _ => Value::Null,
    }
}

fn execute(cmd: &Command, seed: u64, inputs: &mut Inputs) -> Result<(Value, Status)> {
    match cmd {
        Command::Build { seeds, level, output } => {
            let texts = seeds.iter().map(|p| inputs.read(p)).collect::<Result<Vec<_>>>()?;
            let code = io::build_code(&io::parse_seeds(&texts)?, *level)?;
            write_file(output, &io::canonical_json(&io::bundle_of(&code)?)?)?;
            let results = json!({
                "n": code.n(),
                "k": code.k(),
                "rank_x": code.rank_x(),
                "rank_z": code.rank_z(),
                "kunneth": kunneth_json(&code),
                "bundle": output.display().to_string(),
            });
            Ok((results, Status::Ok))
        }
        Command::Logicals { bundle } => {
            let code = inputs.bundle(bundle)?;
            let basis = code.logical_basis()?;
            let pairing: Vec<String> = (0..basis.pairing.rows()).map(|r| basis.pairing.row(r).to_bitstring()).collect();
            let results = json!({
                "n": code.n(),
                "k": code.k(),
                "pairing": pairing,
                "reps": io::logical_basis_json(basis),
            });
            Ok((results, Status::Ok))
        }
        Command::Distance { bundle, max_weight } => {
            let code = inputs.bundle(bundle)?;
            let results = match max_weight {
                None => {
                    let d = brute_distance(&code)?;
                    json!({
                        "n": code.n(),
                        "k": code.k(),
                        "d_x": d.d_x,
                        "d_z": d.d_z,
                        "d": d.d,
                        "witness_x": d.witness_x.support(),
                        "witness_z": d.witness_z.support(),
                        "kunneth": kunneth_json(&code),
                    })
                }
                Some(w) => json!({
                    "n": code.n(),
                    "k": code.k(),
                    "max_weight": w,
                    "x": bound_json(brute_distance_bounded(&code, PauliType::X, *w)?),
                    "z": bound_json(brute_distance_bounded(&code, PauliType::Z, *w)?),
                    "kunneth": kunneth_json(&code),
                }),
            };
            Ok((results, Status::Ok))
        }
        Command::Correctable { bundle, region } => {
            let code = inputs.bundle(bundle)?;
            let region = Region::parse(&inputs.read(region)?, code.n())?;
            let verdict = is_correctable(&code, &region)?;
            let verified = match (&verdict.witness, verdict.witness_type) {
                (Some(w), Some(kind)) => Some(verify_witness(&code, &region, w, kind)?),
                _ => None,
            };
            let mut results = json!(verdict.to_json());
            results["region"] = json!(region.qubits());
            results["witness_verified"] = json!(verified);
            let status = if verdict.correctable { Status::Ok } else { Status::Violated };
            Ok((results, status))
        }
        Command::VerifyDiagonal { bundle, circuit, copies } => {
            let code = inputs.bundle(bundle)?;
            let f = parse_circuit(&inputs.read(circuit)?, code.n() * copies)?;
            let verdict = preserves_codespace(&f, &code, *copies)?;
            let mut results = json!({
                "copies": copies,
                "modulus_log2": f.modulus_log2(),
                "preserves": verdict.preserves,
                "witness": verdict.witness,
            });
            if !verdict.preserves {
                return Ok((results, Status::Violated));
            }
            let logical = logical_action(&f, &code, *copies)?;
            results["logical"] = json!(logical.to_json_terms());
            results["level"] = json!(hierarchy_level(&logical));
            Ok((results, Status::Ok))
        }
        Command::NogoTransversal { bundle, modulus, samples } => {
            let code = inputs.bundle(bundle)?;
            let report = transversal_nogo_harness(&code, *modulus, *samples, seed)?;
            let status = if report.max_level <= NOGO_LEVEL_BOUND { Status::Ok } else { Status::Violated };
            let mut results = json!(report);
            results["level_bound"] = json!(NOGO_LEVEL_BOUND);
            results["seed"] = json!(seed);
            Ok((results, status))
        }
        Command::Yesgo { t, l, circuit_out, output } => {
            let bundle = yesgo::build_bundle(*t, *l)?;
            let invariance = yesgo::verify_invariance(&bundle)?;
            let logical = yesgo::verify_logical_cnz(&bundle)?;
            let text = write_circuit(&bundle.circuit)?;
            let mut results = json!({
                "t": t,
                "L": l,
                "n": bundle.code.n(),
                "k": bundle.code.k(),
                "copies": bundle.copies,
                "invariance": invariance,
                "logical_cnz": logical,
            });
            match circuit_out {
                Some(p) => {
                    write_file(p, &text)?;
                    results["circuit"] = json!(p.display().to_string());
                }
                None => results["circuit"] = json!(text),
            }
            if let Some(p) = output {
                write_file(p, &io::canonical_json(&io::bundle_of(&bundle.code)?)?)?;
                results["bundle"] = json!(p.display().to_string());
            }
            let ok = invariance.preserves && logical.ok;
            Ok((results, if ok { Status::Ok } else { Status::Violated }))
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        builder = builder.num_threads(j);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_ERROR;
        }
    };
    let mut inputs = Inputs::default();
    let outcome = pool.install(|| execute(&cli.command, cli.seed, &mut inputs));
    let (results, status) = match outcome {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            (json!({"error": e.to_string()}), Status::Error)
        }
    };
    let report = Report { command: cli.command.name().to_string(), inputs: inputs.0, results, status };
    match io::canonical_json(&report) {
        Ok(text) => {
            let _ = writeln!(out, "{text}");
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_ERROR;
        }
    }
    match status {
        Status::Ok => EXIT_OK,
        Status::Violated => EXIT_VIOLATED,
        Status::Error => EXIT_ERROR,
    }
}
