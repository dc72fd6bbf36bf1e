//! Text format for diagonal circuits.
//!
//! ```text
//! MOD 3
//! PHASE 1 0     # adds 1·x_0
//! CZ 0 1        # C^{j−1}Z lines add 2^{m−1}·Π x
//! CCZ 0 1 2
//! CNZ 0 1 2 3
//! ```
//!
//! Qubit `i` of copy `c` is addressed as `c·n + i`.

use super::poly::{poly_from_circuit, DiagonalGate, PhasePolynomial};
use crate::error::{Error, Result};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_circuit(text: &str, nvars: usize) -> Result<PhasePolynomial> {
    let mut modulus: Option<u32> = None;
    let mut gates = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let head = tok.next().expect("nonempty line");
        let args: Vec<&str> = tok.collect();
        let int = |s: &str| s.parse::<i64>().map_err(|_| err(ln, format!("bad integer `{s}`")));
        let qubits = |a: &[&str]| -> Result<Vec<usize>> {
            a.iter()
                .map(|s| {
                    let q: usize = s.parse().map_err(|_| err(ln, format!("bad qubit `{s}`")))?;
                    if q >= nvars {
                        return Err(err(ln, format!("qubit {q} out of {nvars}")));
                    }
                    Ok(q)
                })
                .collect()
        };
        if modulus.is_none() {
            if head != "MOD" || args.len() != 1 {
                return Err(err(ln, "circuit must start with `MOD m`"));
            }
            let m = int(args[0])?;
            if !(1..=i64::from(super::MAX_MODULUS_LOG2)).contains(&m) {
                return Err(err(ln, format!("modulus exponent {m} out of range")));
            }
            modulus = Some(m as u32);
            continue;
        }
        let arity = match head {
            "PHASE" => {
                if args.len() != 2 {
                    return Err(err(ln, "PHASE takes a coefficient and a qubit"));
                }
                let q = qubits(&args[1..])?;
                gates.push(DiagonalGate::Phase { coeff: int(args[0])?, qubit: q[0] });
                continue;
            }
            "CZ" => Some(2),
            "CCZ" => Some(3),
            "CNZ" => None,
            "MOD" => return Err(err(ln, "repeated MOD line")),
            other => return Err(err(ln, format!("unknown gate `{other}`"))),
        };
        if arity.is_some_and(|a| a != args.len()) || args.is_empty() {
            return Err(err(ln, format!("{head} has the wrong number of qubits")));
        }
        let q = qubits(&args)?;
        let mut sorted = q.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(err(ln, "repeated qubit"));
        }
        gates.push(DiagonalGate::Controlled(q));
    }
    let m = modulus.ok_or_else(|| err(0, "missing `MOD m` header"))?;
    poly_from_circuit(&gates, m, nvars)
}

/// Renders `f` as a circuit; every term must be linear or carry the
/// coefficient `2^{m−1}`.
pub fn write_circuit(f: &PhasePolynomial) -> Result<String> {
    let m = f.modulus_log2();
    let half = 1u64 << (m - 1);
    let mut s = format!("MOD {m}\n");
    for (mono, c) in f.terms() {
        let qs: Vec<String> = mono.iter().map(|q| q.to_string()).collect();
        match mono.len() {
            0 => return Err(Error::contract("write_circuit", "constant terms have no gate")),
            1 => s.push_str(&format!("PHASE {c} {}\n", qs[0])),
            d if c == half => {
                let name = match d {
                    2 => "CZ",
                    3 => "CCZ",
                    _ => "CNZ",
                };
                s.push_str(&format!("{name} {}\n", qs.join(" ")));
            }
            _ => return Err(Error::contract("write_circuit", format!("term {mono:?} with coefficient {c}"))),
        }
    }
    Ok(s)
}
