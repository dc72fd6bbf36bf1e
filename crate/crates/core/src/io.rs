//! Code bundles and other JSON documents.

use crate::css::{assemble_css, CssCode, LogicalBasis, LogicalRep};
use crate::error::{Error, Result};
use crate::f2la::{text, BinaryMatrix, BitVec};
use crate::product::{OneComplex, ProductComplex, Sector};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub const CONVENTION: &str = "qubits on level l; Hx = boundary l (rows: level l-1); Hz = transpose of boundary l+1 (rows: level l+1)";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseJson {
    pub rows: usize,
    pub cols: usize,
    pub bits: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseJson {
    pub rows: usize,
    pub cols: usize,
    pub support: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorJson {
    #[serde(rename = "J")]
    pub dirs: Vec<usize>,
    pub shape: Vec<usize>,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleJson {
    pub t: usize,
    pub level: usize,
    pub convention: String,
    pub factors: Vec<DenseJson>,
    pub sectors: Vec<SectorJson>,
    #[serde(rename = "Hx")]
    pub hx: SparseJson,
    #[serde(rename = "Hz")]
    pub hz: SparseJson,
}

impl DenseJson {
    pub fn from_matrix(m: &BinaryMatrix) -> Self {
        Self { rows: m.rows(), cols: m.cols(), bits: (0..m.rows()).map(|r| m.row(r).to_bitstring()).collect() }
    }

    pub fn to_matrix(&self) -> Result<BinaryMatrix> {
        if self.bits.len() != self.rows {
            return Err(Error::Parse { line: 0, msg: format!("factor lists {} rows, header says {}", self.bits.len(), self.rows) });
        }
        let rows = self
            .bits
            .iter()
            .map(|s| match BitVec::parse_bitstring(s) {
                Some(v) if v.len() == self.cols => Ok(v),
                _ => Err(Error::Parse { line: 0, msg: format!("bad factor row `{s}`") }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BinaryMatrix::from_rows(&rows, self.cols))
    }
}

impl SparseJson {
    pub fn from_matrix(m: &BinaryMatrix) -> Self {
        Self { rows: m.rows(), cols: m.cols(), support: m.to_sparse_rows() }
    }

    pub fn to_matrix(&self) -> Result<BinaryMatrix> {
        if self.support.len() != self.rows {
            return Err(Error::Parse { line: 0, msg: "sparse row count mismatch".into() });
        }
        BinaryMatrix::from_sparse_rows(&self.support, self.cols)
    }
}

impl From<&Sector> for SectorJson {
    fn from(s: &Sector) -> Self {
        Self { dirs: s.dirs.clone(), shape: s.shape.clone(), offset: s.offset }
    }
}

/// Builds the product of `seeds` and assembles the code at `level`.
pub fn build_code(seeds: &[BinaryMatrix], level: usize) -> Result<CssCode> {
    let pc = ProductComplex::build(seeds.iter().cloned().map(OneComplex::new).collect())?;
    assemble_css(Arc::new(pc), level)
}

/// Parses seed matrices in the plain-text matrix format.
pub fn parse_seeds(texts: &[String]) -> Result<Vec<BinaryMatrix>> {
    texts.iter().map(|t| text::parse_matrix(t)).collect()
}

pub fn bundle_of(code: &CssCode) -> Result<BundleJson> {
    let pc = code.complex().ok_or(Error::NoProductStructure)?;
    let level = code.level().ok_or(Error::NoProductStructure)?;
    Ok(BundleJson {
        t: pc.t(),
        level,
        convention: CONVENTION.to_string(),
        factors: pc.factors().iter().map(|f| DenseJson::from_matrix(f.matrix())).collect(),
        sectors: pc.level(level).sectors.iter().map(SectorJson::from).collect(),
        hx: SparseJson::from_matrix(code.hx()),
        hz: SparseJson::from_matrix(code.hz()),
    })
}

/// Rebuilds the code from the bundle's factors and checks the stored data.
pub fn code_from_bundle(b: &BundleJson) -> Result<CssCode> {
    if b.factors.len() != b.t {
        return Err(Error::Parse { line: 0, msg: format!("t = {} but {} factors", b.t, b.factors.len()) });
    }
    let seeds = b.factors.iter().map(DenseJson::to_matrix).collect::<Result<Vec<_>>>()?;
    let code = build_code(&seeds, b.level)?;
    let sectors: Vec<SectorJson> =
        code.complex().expect("product code").level(b.level).sectors.iter().map(SectorJson::from).collect();
    if sectors != b.sectors || b.hx.to_matrix()? != *code.hx() || b.hz.to_matrix()? != *code.hz() {
        return Err(Error::Parse { line: 0, msg: "bundle checks disagree with its factors".into() });
    }
    Ok(code)
}

pub fn parse_bundle(text: &str) -> Result<CssCode> {
    let b: BundleJson = serde_json::from_str(text)?;
    code_from_bundle(&b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepJson {
    #[serde(rename = "type")]
    pub kind: String,
    pub sector: Option<usize>,
    pub fixed_dirs: Option<Vec<usize>>,
    pub fixed_values: Option<Vec<usize>>,
    pub support: Vec<usize>,
}

impl From<&LogicalRep> for RepJson {
    fn from(r: &LogicalRep) -> Self {
        let h = r.provenance.as_ref().map(|p| &p.hyperplane);
        Self {
            kind: r.kind.to_string(),
            sector: h.map(|h| h.sector),
            fixed_dirs: h.map(|h| h.fixed_dirs.clone()),
            fixed_values: h.map(|h| h.fixed_values.clone()),
            support: r.part().support(),
        }
    }
}

pub fn logical_basis_json(b: &LogicalBasis) -> Vec<RepJson> {
    b.x_reps.iter().chain(&b.z_reps).map(RepJson::from).collect()
}

/// Serialises with sorted object keys.
pub fn canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&v)?)
}
