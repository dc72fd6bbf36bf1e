//! Cleaning-lemma decisions on qubit regions.
//!
//! A region `A` is correctable iff no nontrivial logical operator is
//! supported inside it. For X type this asks whether some `v` supported on
//! `A` with `Hz·v = 0` lies outside `rowspace(Hx)`; Z type is symmetric.

use crate::css::{pauli_mul, CssCode, PauliOperator, PauliType};
use crate::error::{Error, Result};
use crate::f2la::{BitVec, EchelonBasis};
use crate::search;
use serde::Serialize;

/// Kernel dimension up to which the witness is a true minimum-weight element.
pub const WITNESS_ENUMERATION_MAX_DIM: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    qubits: Vec<usize>,
}

impl Region {
    /// Sorted, deduplicated; every index must be below `n`.
    pub fn new(qubits: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        let mut qubits: Vec<usize> = qubits.into_iter().collect();
        qubits.sort_unstable();
        qubits.dedup();
        if let Some(&bad) = qubits.iter().find(|&&q| q >= n) {
            return Err(Error::contract("Region::new", format!("qubit {bad} out of {n}")));
        }
        Ok(Self { qubits })
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn len(&self) -> usize {
        self.qubits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qubits.is_empty()
    }

    pub fn indicator(&self, n: usize) -> BitVec {
        BitVec::from_indices(n, self.qubits.iter().copied())
    }

    /// Parses 0-based indices separated by whitespace or commas; braces are
    /// ignored, so `{0, 4}` and `0 4` are the same region.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut qubits = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for tok in line.split(|c: char| c.is_whitespace() || matches!(c, ',' | '{' | '}')).filter(|t| !t.is_empty()) {
                let q = tok
                    .parse::<usize>()
                    .map_err(|_| Error::Parse { line: i + 1, msg: format!("bad qubit index `{tok}`") })?;
                qubits.push(q);
            }
        }
        Self::new(qubits, n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub correctable: bool,
    pub witness: Option<PauliOperator>,
    pub witness_type: Option<PauliType>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictJson {
    pub correctable: bool,
    pub witness: Option<Vec<usize>>,
    pub witness_type: Option<String>,
}

impl Verdict {
    pub fn to_json(&self) -> VerdictJson {
        VerdictJson {
            correctable: self.correctable,
            witness: self.witness.as_ref().map(|w| w.support()),
            witness_type: self.witness_type.map(|t| t.to_string()),
        }
    }
}

/// Nontrivial logical of the given type supported on `region`, if any.
///
/// The minimum-weight one is returned when the restricted kernel is small
/// enough to enumerate; otherwise some basis element.
pub fn logical_inside(code: &CssCode, region: &Region, kind: PauliType) -> Result<Option<BitVec>> {
    let n = code.n();
    let basis = code.logical_basis()?;
    if basis.k() == 0 || region.is_empty() {
        return Ok(None);
    }
    let (check, duals) = match kind {
        PauliType::X => (code.hz(), basis.reps(PauliType::Z)),
        PauliType::Z => (code.hx(), basis.reps(PauliType::X)),
    };
    let q = region.qubits();
    let local = check.select_columns(q).kernel_basis();
    let k = duals.len();
    // Rows of (logical syndrome | vector); echelon pivots inside the syndrome
    // block mark vectors with independent logical content.
    let mut echelon = EchelonBasis::new(k + n);
    for r in 0..local.rows() {
        let v = BitVec::from_indices(n, local.row(r).ones().map(|j| q[j]));
        let syn = BitVec::from_bools(&duals.iter().map(|z| z.part().dot(&v)).collect::<Vec<_>>());
        echelon.insert(BitVec::concat(&[&syn, &v]));
    }
    let rows = echelon.rows().to_vec();
    let (nontrivial, trivial): (Vec<_>, Vec<_>) = rows.into_iter().partition(|(p, _)| *p < k);
    if nontrivial.is_empty() {
        return Ok(None);
    }
    let strip = |v: &BitVec| BitVec::from_indices(n, v.ones().filter(|&i| i >= k).map(|i| i - k));
    let required = nontrivial.len();
    let ordered: Vec<BitVec> = nontrivial.iter().chain(&trivial).map(|(_, v)| strip(v)).collect();
    if ordered.len() <= WITNESS_ENUMERATION_MAX_DIM {
        Ok(search::span_minimum(&ordered, required))
    } else {
        Ok(ordered.into_iter().take(required).min_by_key(|v| (v.weight(), v.support())))
    }
}

/// Decides the cleaning dichotomy. A witness of minimal weight is chosen,
/// X before Z on ties.
pub fn is_correctable(code: &CssCode, region: &Region) -> Result<Verdict> {
    let x = logical_inside(code, region, PauliType::X)?;
    let z = logical_inside(code, region, PauliType::Z)?;
    let pick = match (x, z) {
        (None, None) => None,
        (Some(x), None) => Some((PauliType::X, x)),
        (None, Some(z)) => Some((PauliType::Z, z)),
        (Some(x), Some(z)) => Some(if z.weight() < x.weight() { (PauliType::Z, z) } else { (PauliType::X, x) }),
    };
    Ok(match pick {
        None => Verdict { correctable: true, witness: None, witness_type: None },
        Some((kind, v)) => Verdict {
            correctable: false,
            witness: Some(PauliOperator::of_type(kind, v)),
            witness_type: Some(kind),
        },
    })
}

/// Independent check that `w` is a nontrivial logical supported in `region`.
pub fn verify_witness(code: &CssCode, region: &Region, w: &PauliOperator, kind: PauliType) -> Result<bool> {
    let part = w.part(kind);
    let other = match kind {
        PauliType::X => &w.z,
        PauliType::Z => &w.x,
    };
    let inside = region.indicator(code.n());
    let (check, stab) = match kind {
        PauliType::X => (code.hz(), code.hx()),
        PauliType::Z => (code.hx(), code.hz()),
    };
    let contained = part.and(&inside) == *part && other.is_zero();
    let in_kernel = check.mul_vec(part)?.is_zero();
    let trivial = stab.transpose().solve(part)?.is_some();
    Ok(!part.is_zero() && contained && in_kernel && !trivial)
}

/// `L·S` for a stabilizer `S` making the result vanish on `region`.
pub fn clean_logical(code: &CssCode, l: &PauliOperator, region: &Region) -> Result<PauliOperator> {
    let q = region.qubits();
    let n = code.n();
    if l.n() != n {
        return Err(Error::contract("clean_logical", "operator length differs from n"));
    }
    let mut result = l.clone();
    for kind in [PauliType::X, PauliType::Z] {
        let target = l.part(kind).select(q);
        if target.is_zero() {
            continue;
        }
        let stab = code.stabilizers(kind);
        let coeffs = stab.select_columns(q).transpose().solve(&target)?.ok_or(Error::NotCleanable)?;
        let s = PauliOperator::of_type(kind, stab.combine_rows(&coeffs)?);
        result = pauli_mul(&result, &s)?;
    }
    debug_assert!(result.support().iter().all(|i| q.binary_search(i).is_err()));
    Ok(result)
}

/// True iff no generator row of `Hx` or `Hz` meets both regions.
pub fn union_lemma_check(code: &CssCode, r1: &Region, r2: &Region) -> Result<bool> {
    let n = code.n();
    let (a, b) = (r1.indicator(n), r2.indicator(n));
    if a.intersects(&b) {
        return Err(Error::OverlappingRegions);
    }
    for m in [code.hx(), code.hz()] {
        for r in 0..m.rows() {
            let row = m.row(r);
            if row.intersects(&a) && row.intersects(&b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
