//! CSS codes assembled from product complexes, their parameters, logical
//! bases and Pauli algebra.
//!
//! Convention: for qubits on level `l`, `Hx = ∂_l` (one X check per element
//! of level `l−1`) and `Hz = ∂_{l+1}ᵀ` (one Z check per element of level
//! `l+1`). X logicals live in `ker Hz` and Z logicals in `ker Hx`.

mod distance;
mod logical;
mod pauli;

pub use distance::{brute_distance, brute_distance_bounded, BruteDistance, TypedBound};
pub use logical::{alternative_representative, LogicalBasis, LogicalRep, Provenance};
pub use pauli::{group_commutator, pauli_mul, symplectic_product, PauliOperator, PauliType, Sign};

use crate::error::{Error, Result};
use crate::f2la::BinaryMatrix;
use crate::product::{subsets, ProductComplex};
use serde::Serialize;
use std::sync::{Arc, OnceLock};

#[derive(Debug, Clone)]
pub struct CssCode {
    hx: BinaryMatrix,
    hz: BinaryMatrix,
    rank_x: usize,
    rank_z: usize,
    level: Option<usize>,
    complex: Option<Arc<ProductComplex>>,
    logicals: OnceLock<LogicalBasis>,
}

impl CssCode {
    /// Hand-built code; checks `Hx·Hzᵀ = 0`.
    pub fn new(hx: BinaryMatrix, hz: BinaryMatrix) -> Result<Self> {
        if hx.cols() != hz.cols() {
            return Err(Error::contract("CssCode::new", format!("Hx has {} columns, Hz has {}", hx.cols(), hz.cols())));
        }
        if !hx.matmul(&hz.transpose())?.is_zero() {
            return Err(Error::contract("CssCode::new", "Hx·Hzᵀ ≠ 0"));
        }
        Ok(Self {
            rank_x: hx.rank(),
            rank_z: hz.rank(),
            hx,
            hz,
            level: None,
            complex: None,
            logicals: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.hx.cols()
    }

    pub fn k(&self) -> usize {
        self.n() - self.rank_x - self.rank_z
    }

    pub fn hx(&self) -> &BinaryMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BinaryMatrix {
        &self.hz
    }

    pub fn rank_x(&self) -> usize {
        self.rank_x
    }

    pub fn rank_z(&self) -> usize {
        self.rank_z
    }

    pub fn level(&self) -> Option<usize> {
        self.level
    }

    pub fn complex(&self) -> Option<&Arc<ProductComplex>> {
        self.complex.as_ref()
    }

    /// Stabilizer matrix of the given Pauli type.
    pub fn stabilizers(&self, kind: PauliType) -> &BinaryMatrix {
        match kind {
            PauliType::X => &self.hx,
            PauliType::Z => &self.hz,
        }
    }

    /// Maximum row weight over both check matrices.
    pub fn stabilizer_weight(&self) -> usize {
        let hx = (0..self.hx.rows()).map(|r| self.hx.row_weight(r));
        let hz = (0..self.hz.rows()).map(|r| self.hz.row_weight(r));
        hx.chain(hz).max().unwrap_or(0)
    }

    /// Canonical basis for product codes, otherwise a generic symplectic
    /// basis. Computed once.
    pub fn logical_basis(&self) -> Result<&LogicalBasis> {
        if let Some(b) = self.logicals.get() {
            return Ok(b);
        }
        let basis = match (&self.complex, self.level) {
            (Some(pc), Some(l)) => logical::canonical(self, pc, l)?,
            _ => logical::generic(self)?,
        };
        Ok(self.logicals.get_or_init(|| basis))
    }

    pub fn canonical_logical_basis(&self) -> Result<&LogicalBasis> {
        if self.complex.is_none() {
            return Err(Error::NoProductStructure);
        }
        self.logical_basis()
    }
}

/// Qubits on level `l` of the product complex.
pub fn assemble_css(pc: Arc<ProductComplex>, level: usize) -> Result<CssCode> {
    let t = pc.t();
    if level == 0 || level >= t {
        return Err(Error::LevelOutOfRange { level, t });
    }
    let hx = pc.boundary(level)?.clone();
    let hz = pc.boundary(level + 1)?.transpose();
    let mut code = CssCode::new(hx, hz).map_err(|e| Error::Internal(format!("assembled checks do not commute: {e}")))?;
    code.level = Some(level);
    code.complex = Some(pc);
    Ok(code)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KunnethParameters {
    pub n: usize,
    pub k: usize,
    /// `None` when `k = 0`.
    pub d_x: Option<usize>,
    pub d_z: Option<usize>,
}

impl KunnethParameters {
    pub fn d(&self) -> Option<usize> {
        match (self.d_x, self.d_z) {
            (Some(a), Some(b)) => Some(a.min(b)),
            _ => None,
        }
    }
}

/// Closed-form parameters from the seed data.
///
/// Only sectors `J` with `k_i > 0` for `i ∈ J` and `k_jᵀ > 0` for `j ∉ J`
/// carry homology; over those, `d_Z = min Π_{i∈J} d_i` and
/// `d_X = min Π_{j∉J} d_jᵀ`.
pub fn kunneth_parameters(pc: &ProductComplex, level: usize) -> Result<KunnethParameters> {
    let t = pc.t();
    if level == 0 || level >= t {
        return Err(Error::LevelOutOfRange { level, t });
    }
    let f = pc.factors();
    let mut d = Vec::with_capacity(t);
    let mut dt = Vec::with_capacity(t);
    for (i, c) in f.iter().enumerate() {
        d.push(c.d().map_err(|_| Error::SeedDistanceUnavailable { factor: i })?);
        dt.push(c.d_transpose().map_err(|_| Error::SeedDistanceUnavailable { factor: i })?);
    }
    let mut k = 0;
    let (mut d_x, mut d_z): (Option<usize>, Option<usize>) = (None, None);
    for j in subsets(t, level) {
        let inside = |i: usize| j.contains(&i);
        let count: usize = (0..t).map(|i| if inside(i) { f[i].k() } else { f[i].k_transpose() }).product();
        if count == 0 {
            continue;
        }
        k += count;
        let mut z_weight = 1;
        let mut x_weight = 1;
        for i in 0..t {
            if inside(i) {
                z_weight *= d[i].ok_or(Error::SeedDistanceUnavailable { factor: i })?;
            } else {
                x_weight *= dt[i].ok_or(Error::SeedDistanceUnavailable { factor: i })?;
            }
        }
        d_z = Some(d_z.map_or(z_weight, |v| v.min(z_weight)));
        d_x = Some(d_x.map_or(x_weight, |v| v.min(x_weight)));
    }
    Ok(KunnethParameters { n: pc.dim(level), k, d_x, d_z })
}
