//! Batch front end for the lattice computations: every subcommand reads
//! exact rational input, emits machine-readable records (JSON lines by
//! default, CSV on request), and never prints a floating-point number.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use enriques_core::chamber::{enumerate_vertices_oracle, extreme_points, reduce, vertices};
use enriques_core::invariants::{
    alg_capacity, kahler_bounds, non_kahler_witness, phi_bruteforce, phi_closed_form,
    sample_region, symp_radius_squared, witness_fraction, EnumerationBound, NefModel,
};
use enriques_core::k3::{
    anti_invariant_sublattice, invariant_sublattice, period_point_check, K3Vector,
    PeriodCandidate,
};
use enriques_core::lattice::{
    gram, integer_determinant, pairing, psi, r, s, signature, Basis, LatticeVector,
};
use enriques_core::rat::{parse_rat, rat_str, Rat};
use enriques_core::taubes::{classify, connected_rep_exists, gt_dimension, BlowupClass};
use enriques_core::{ChamberPoint, Error};

const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_INVARIANT: u8 = 4;

#[derive(Parser)]
#[command(name = "enriques", version, about = "Exact lattice computations on the Enriques surface")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum NefModelArg {
    Forward,
    Chamber,
}

impl From<NefModelArg> for NefModel {
    fn from(m: NefModelArg) -> Self {
        match m {
            NefModelArg::Forward => NefModel::ForwardCone,
            NefModelArg::Chamber => NefModel::ChamberDual,
        }
    }
}

#[derive(Args)]
struct PointArg {
    /// Chamber point as ten comma-separated rationals
    #[arg(long)]
    point: String,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a class of Q_S into the fundamental cone
    Reduce {
        /// Vector literal, e.g. {"basis":"L","coeffs":["7","-3","-2",...]}
        #[arg(long)]
        vector: String,
        /// Rescale the result to the normalized chamber
        #[arg(long)]
        normalize: bool,
    },
    /// The Phi-invariant of a chamber point
    Phi {
        #[command(flatten)]
        point: PointArg,
        /// Verify by bounded enumeration instead of the closed form
        #[arg(long)]
        brute: bool,
        #[arg(long, default_value_t = 6)]
        cmax: u32,
    },
    /// The k-th algebraic capacity of a chamber point
    Capacity {
        #[command(flatten)]
        point: PointArg,
        #[arg(long, default_value_t = 0)]
        k: i64,
        #[arg(long, default_value_t = 6)]
        cmax: u32,
        #[arg(long, value_enum, default_value_t = NefModelArg::Forward)]
        nef_model: NefModelArg,
    },
    /// The squared symplectic radius 1 - sum b_i^2
    SympRadius {
        #[command(flatten)]
        point: PointArg,
    },
    /// The non-Kahler witness inequality at a chamber point
    Witness {
        #[command(flatten)]
        point: PointArg,
    },
    /// Deterministic region sampling with witness verdicts
    SampleRegion {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 120)]
        denom: u64,
        /// Also emit a 2-column projection, e.g. --project 9,10 (1-based)
        #[arg(long)]
        project: Option<String>,
    },
    /// The nine chamber vertices
    Vertices,
    /// Structural verification suite (exit 4 on any failure)
    CheckLattice,
    /// Ranks and blocks of the covering-lattice sublattices
    K3Info,
    /// Gromov-Taubes / Seiberg-Witten nonvanishing classification
    GrSw {
        /// E-basis vector literal for B
        #[arg(long)]
        vector: String,
        /// Exceptional multiplicity
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        l: i64,
    },
    /// Bounded period-domain membership check
    PeriodCheck {
        /// K3 literal for the real part, {"x":[...],"y":[...],"z1":[...],"z2":[...],"z3":[...]}
        #[arg(long)]
        p: String,
        /// K3 literal for the imaginary part
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 2)]
        cmax: u32,
    },
}

struct Failure {
    kind: &'static str,
    message: String,
    code: u8,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            kind: "usage",
            message: message.into(),
            code: EXIT_USAGE,
        }
    }

    fn invariant(message: impl Into<String>) -> Self {
        Failure {
            kind: "invariant-failure",
            message: message.into(),
            code: EXIT_INVARIANT,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InfeasibleBound(_) | Error::SamplingExhausted { .. } => Failure {
                kind: "infeasible-bound",
                message: e.to_string(),
                code: EXIT_INFEASIBLE,
            },
            other => Failure::usage(other.to_string()),
        }
    }
}

fn parse_point(text: &str) -> Result<ChamberPoint, Failure> {
    let coords: Result<Vec<Rat>, _> = text.split(',').map(|t| parse_rat(t.trim())).collect();
    let coords = coords.map_err(|e| Failure::usage(format!("bad point coordinate: {e}")))?;
    if coords.len() != 10 {
        return Err(Failure::usage(format!(
            "a chamber point needs 10 coordinates, got {}",
            coords.len()
        )));
    }
    ChamberPoint::new(coords).map_err(|e| Failure::usage(e.to_string()))
}

fn parse_vector(text: &str) -> Result<LatticeVector, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::usage(format!("bad vector literal: {e}")))
}

fn parse_k3(text: &str) -> Result<K3Vector, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::usage(format!("bad K3 literal: {e}")))
}

fn point_json(p: &ChamberPoint) -> Value {
    Value::Array(
        p.coords()
            .iter()
            .map(|c| Value::String(rat_str(c)))
            .collect(),
    )
}

fn run(command: Command) -> Result<Vec<Value>, Failure> {
    match command {
        Command::Reduce { vector, normalize } => {
            let input = parse_vector(&vector)?;
            let red = reduce(&input, normalize)?;
            let mut record = json!({
                "input": input,
                "output": red.vector,
                "trace": red.trace,
            });
            if let Some(point) = red.point {
                record["point"] = serde_json::to_value(&point).unwrap();
            }
            Ok(vec![record])
        }
        Command::Phi { point, brute, cmax } => {
            let p = parse_point(&point.point)?;
            let closed = phi_closed_form(&p)?;
            let mut record = json!({
                "point": point_json(&p),
                "phi": rat_str(&closed),
            });
            if brute {
                let (value, argmin) = phi_bruteforce(&p, EnumerationBound(cmax))?;
                record["brute"] = Value::String(rat_str(&value));
                record["minimizer"] = serde_json::to_value(&argmin).unwrap();
                record["cmax"] = json!(cmax);
            }
            Ok(vec![record])
        }
        Command::Capacity {
            point,
            k,
            cmax,
            nef_model,
        } => {
            if k < 0 {
                return Err(Failure::usage("capacities are defined for k >= 0"));
            }
            let p = parse_point(&point.point)?;
            let cap = alg_capacity(&p, k, EnumerationBound(cmax), nef_model.into())?;
            Ok(vec![json!({
                "point": point_json(&p),
                "k": k,
                "cmax": cmax,
                "value": rat_str(&cap.value),
                "argmin": cap.argmin,
                "certified": cap.certified,
            })])
        }
        Command::SympRadius { point } => {
            let p = parse_point(&point.point)?;
            Ok(vec![json!({
                "point": point_json(&p),
                "s_squared": rat_str(&symp_radius_squared(&p)?),
            })])
        }
        Command::Witness { point } => {
            let p = parse_point(&point.point)?;
            let report = non_kahler_witness(&p)?;
            let (lower, upper) = kahler_bounds(&p)?;
            Ok(vec![json!({
                "point": point_json(&p),
                "s_squared": report.s_squared,
                "upper_squared": report.upper_squared,
                "kahler_lower": rat_str(&lower),
                "kahler_upper": rat_str(&upper),
                "verdict": report.verdict,
                "margin": report.margin,
            })])
        }
        Command::SampleRegion {
            n,
            seed,
            denom,
            project,
        } => {
            if n == 0 {
                return Err(Failure::usage("--n must be at least 1"));
            }
            let proj = match project {
                None => None,
                Some(text) => {
                    let idx: Vec<usize> = text
                        .split(',')
                        .map(|t| t.trim().parse::<usize>())
                        .collect::<Result<_, _>>()
                        .map_err(|e| Failure::usage(format!("bad projection: {e}")))?;
                    match idx.as_slice() {
                        [a, b] if (1..=10).contains(a) && (1..=10).contains(b) => {
                            Some((a - 1, b - 1))
                        }
                        _ => {
                            return Err(Failure::usage(
                                "--project takes two coordinate indices in 1..=10",
                            ))
                        }
                    }
                }
            };
            let samples = sample_region(n, seed, denom)?;
            let mut records: Vec<Value> = samples
                .iter()
                .map(|(p, w)| {
                    let mut rec = json!({
                        "b": point_json(p),
                        "s_squared": w.s_squared,
                        "upper_squared": w.upper_squared,
                        "verdict": w.verdict,
                    });
                    if let Some((i, j)) = proj {
                        rec["proj_x"] = Value::String(rat_str(&p.coords()[i]));
                        rec["proj_y"] = Value::String(rat_str(&p.coords()[j]));
                    }
                    rec
                })
                .collect();
            records.push(json!({
                "summary": true,
                "n": n,
                "seed": seed,
                "denom": denom,
                "witness_fraction": rat_str(&witness_fraction(&samples)),
            }));
            Ok(records)
        }
        Command::Vertices => Ok(vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| json!({ "index": i + 1, "b": point_json(v) }))
            .collect()),
        Command::CheckLattice => check_lattice(),
        Command::K3Info => {
            let plus = invariant_sublattice();
            let minus = anti_invariant_sublattice();
            Ok(vec![
                json!({ "sublattice": "invariant", "rank": plus.rank }),
                json!({ "sublattice": "anti_invariant", "rank": minus.rank }),
            ])
        }
        Command::GrSw { vector, l } => {
            let b = parse_vector(&vector)?;
            if b.basis() != Basis::E {
                return Err(Failure::usage("gr-sw takes an E-basis vector for B"));
            }
            let class = BlowupClass::new(b.clone(), l)?;
            let c = classify(&class)?;
            let connected = if class.is_trivial() {
                Value::Null
            } else {
                Value::Bool(connected_rep_exists(&class)?)
            };
            Ok(vec![json!({
                "b": b,
                "l": l,
                "dimension": rat_str(&gt_dimension(&class)),
                "gr_nonzero": c.gr_nonzero,
                "gr_prime_nonzero": c.gr_prime_nonzero,
                "sw_nonzero": c.sw_nonzero,
                "connected_rep": connected,
            })])
        }
        Command::PeriodCheck { p, q, cmax } => {
            let candidate = PeriodCandidate::new(parse_k3(&p)?, parse_k3(&q)?)?;
            let report = period_point_check(&candidate, cmax);
            Ok(vec![serde_json::to_value(&report).unwrap()])
        }
    }
}

fn check(records: &mut Vec<Value>, ok: &mut bool, name: &str, passed: bool) {
    records.push(json!({ "check": name, "ok": passed }));
    *ok &= passed;
}

/// The structural verification suite: the basis isomorphism, the derived
/// Gram matrices, and the vertex oracle.
fn check_lattice() -> Result<Vec<Value>, Failure> {
    let mut records = Vec::new();
    let mut ok = true;

    let mut cols: Vec<LatticeVector> = (0..8).map(|i| psi(&r(i), &Rat::zero()).unwrap()).collect();
    cols.push(psi(&s(1), &Rat::zero()).unwrap());
    cols.push(psi(&s(2), &Rat::zero()).unwrap());
    cols.push(psi(&LatticeVector::zero(Basis::E), &Rat::from_integer(1.into())).unwrap());
    let m: Vec<Vec<i64>> = (0..11)
        .map(|row| {
            cols.iter()
                .map(|c| i64::try_from(c.coeffs()[row].numer()).unwrap())
                .collect()
        })
        .collect();
    let det = integer_determinant(&m);
    check(
        &mut records,
        &mut ok,
        "basis isomorphism unimodular",
        det.abs() == 1.into(),
    );

    let gram_e = gram(Basis::E);
    let mut pairings_ok = true;
    for i in 0..11 {
        for j in 0..11 {
            let expected = if i < 10 && j < 10 {
                gram_e[i][j]
            } else if i == 10 && j == 10 {
                -1
            } else {
                0
            };
            pairings_ok &=
                pairing(&cols[i], &cols[j]).unwrap() == Rat::from_integer(expected.into());
        }
    }
    check(
        &mut records,
        &mut ok,
        "121 basis pairings preserved",
        pairings_ok,
    );

    check(
        &mut records,
        &mut ok,
        "Enriques Gram even",
        gram_e.iter().enumerate().all(|(i, row)| row[i] % 2 == 0),
    );
    check(
        &mut records,
        &mut ok,
        "Enriques Gram determinant -1",
        integer_determinant(&gram_e) == (-1).into(),
    );
    check(
        &mut records,
        &mut ok,
        "Enriques Gram signature (1,9)",
        signature(&gram_e) == (1, 9),
    );

    let gram_k3 = gram(Basis::K3);
    check(
        &mut records,
        &mut ok,
        "covering Gram signature (3,19)",
        signature(&gram_k3) == (3, 19),
    );

    let mut oracle = enumerate_vertices_oracle();
    let mut known = extreme_points();
    oracle.sort_by(|a, b| a.coords().cmp(b.coords()));
    known.sort_by(|a, b| a.coords().cmp(b.coords()));
    check(
        &mut records,
        &mut ok,
        "vertex oracle matches the extreme points",
        oracle == known,
    );

    if ok {
        Ok(records)
    } else {
        for r in &records {
            if r["ok"] == Value::Bool(false) {
                return Err(Failure::invariant(format!(
                    "structural check failed: {}",
                    r["check"].as_str().unwrap_or("?")
                )));
            }
        }
        unreachable!()
    }
}

fn csv_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Flattens records to CSV: array fields become one column per entry,
/// everything else is a single column. All values are rational strings,
/// booleans, or integers, so no quoting is needed.
fn to_csv(records: &[Value]) -> String {
    let mut out = String::new();
    let mut header: Option<Vec<String>> = None;
    for rec in records {
        let Value::Object(map) = rec else { continue };
        let mut cols: Vec<(String, String)> = Vec::new();
        for (key, value) in map {
            match value {
                Value::Array(items) => {
                    for (i, item) in items.iter().enumerate() {
                        cols.push((format!("{key}{}", i + 1), csv_scalar(item)));
                    }
                }
                other => cols.push((key.clone(), csv_scalar(other))),
            }
        }
        let keys: Vec<String> = cols.iter().map(|(k, _)| k.clone()).collect();
        match &header {
            None => {
                out.push_str(&keys.join(","));
                out.push('\n');
                header = Some(keys);
            }
            Some(h) if *h != keys => continue, // summary/odd rows are jsonl-only
            Some(_) => {}
        }
        let row: Vec<String> = cols.into_iter().map(|(_, v)| v).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn emit(records: &[Value], format: Format, out: Option<&PathBuf>) -> std::io::Result<()> {
    let text = match format {
        Format::Jsonl => {
            let mut t = String::new();
            for r in records {
                t.push_str(&serde_json::to_string(r).unwrap());
                t.push('\n');
            }
            t
        }
        Format::Csv => to_csv(records),
    };
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(records) => {
            if let Err(e) = emit(&records, cli.format, cli.out.as_ref()) {
                eprintln!("{{\"error\":\"io\",\"message\":\"{e}\"}}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let record = json!({ "error": f.kind, "message": f.message });
            println!("{}", serde_json::to_string(&record).unwrap());
            ExitCode::from(f.code)
        }
    }
}
