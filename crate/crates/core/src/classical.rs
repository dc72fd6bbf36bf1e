//! Classical binary linear codes: distance, information sets, punctures and
//! the classical cleaning primitive.

use crate::error::{Error, Result};
use crate::f2la::{BinaryMatrix, BitVec, EchelonBasis};
use crate::search;
use serde::Serialize;
use std::sync::OnceLock;

/// Full codeword enumeration is used up to this dimension.
pub const ENUMERATION_MAX_K: usize = 20;

/// `ker H` for a parity-check matrix `H` whose rows may be redundant.
#[derive(Debug, Clone)]
pub struct ClassicalCode {
    h: BinaryMatrix,
    g: BinaryMatrix,
    distance: OnceLock<DistanceCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceCertificate {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// Minimum-weight codeword as a bit string.
    pub witness: String,
}

/// Outcome of a weight-capped distance search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistanceBound {
    Exact(DistanceCertificate),
    /// No nonzero codeword of weight below this value exists.
    AtLeast(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InformationSet {
    pub indices: Vec<usize>,
}

impl ClassicalCode {
    pub fn from_parity_check(h: BinaryMatrix) -> Self {
        let g = h.kernel_basis();
        Self { h, g, distance: OnceLock::new() }
    }

    pub fn n(&self) -> usize {
        self.h.cols()
    }

    pub fn k(&self) -> usize {
        self.g.rows()
    }

    pub fn parity_check(&self) -> &BinaryMatrix {
        &self.h
    }

    pub fn generator(&self) -> &BinaryMatrix {
        &self.g
    }

    /// Exact minimum distance, computed once.
    pub fn distance(&self) -> Result<usize> {
        Ok(self.distance_certificate()?.d)
    }

    pub fn distance_certificate(&self) -> Result<&DistanceCertificate> {
        if self.k() == 0 {
            return Err(Error::DistanceUndefined);
        }
        if let Some(c) = self.distance.get() {
            return Ok(c);
        }
        let cert = match self.distance_bounded(self.n())? {
            DistanceBound::Exact(c) => c,
            DistanceBound::AtLeast(_) => return Err(Error::Internal("unbounded distance search came back empty".into())),
        };
        Ok(self.distance.get_or_init(|| cert))
    }

    /// Distance search that gives up above `max_weight`.
    ///
    /// For `k ≤ 20` every codeword is enumerated and the cap is ignored.
    /// Otherwise column subsets of `H` are tried in increasing weight and a
    /// miss certifies `d > max_weight`.
    pub fn distance_bounded(&self, max_weight: usize) -> Result<DistanceBound> {
        let (n, k) = (self.n(), self.k());
        if k == 0 {
            return Err(Error::DistanceUndefined);
        }
        let witness = if k <= ENUMERATION_MAX_K {
            search::span_minimum(&self.g.row_vecs(), k)
        } else {
            let columns: Vec<BitVec> = (0..n).map(|c| self.h.column(c)).collect();
            search::lowest_weight_subset(&columns, self.h.rows(), 0, max_weight)
        };
        Ok(match witness {
            Some(w) => DistanceBound::Exact(DistanceCertificate { n, k, d: w.weight(), witness: w.to_bitstring() }),
            None => DistanceBound::AtLeast(max_weight + 1),
        })
    }

    /// Lexicographically smallest information set contained in `allowed`,
    /// chosen greedily by leftmost independent columns of `G`.
    pub fn find_information_set(&self, allowed: &[usize]) -> Result<InformationSet> {
        let mut allowed: Vec<usize> = allowed.to_vec();
        allowed.sort_unstable();
        allowed.dedup();
        if let Some(&bad) = allowed.iter().find(|&&i| i >= self.n()) {
            return Err(Error::contract("find_information_set", format!("index {bad} out of {}", self.n())));
        }
        let k = self.k();
        let mut span = EchelonBasis::new(k);
        let mut indices = Vec::with_capacity(k);
        for &c in &allowed {
            if indices.len() == k {
                break;
            }
            if span.insert(self.g.column(c)) {
                indices.push(c);
            }
        }
        if indices.len() < k {
            return Err(Error::NoInformationSet { deficiency: k - indices.len() });
        }
        Ok(InformationSet { indices })
    }

    /// Information set avoiding `region`; requires `|region| < d`.
    pub fn disjoint_information_set(&self, region: &[usize]) -> Result<InformationSet> {
        if self.k() == 0 {
            return Ok(InformationSet { indices: vec![] });
        }
        let mut region = region.to_vec();
        region.sort_unstable();
        region.dedup();
        let d = self.distance()?;
        if region.len() >= d {
            return Err(Error::RegionTooLarge { size: region.len(), distance: d });
        }
        let complement: Vec<usize> = (0..self.n()).filter(|i| region.binary_search(i).is_err()).collect();
        self.find_information_set(&complement)
    }

    /// Some `h` in the row space of `H` equal to all-ones on `gamma`.
    ///
    /// Guaranteed to exist when `|gamma| ≤ (d−1)/2`; attempted regardless.
    pub fn classical_clean(&self, gamma: &[usize]) -> Result<BitVec> {
        let target = BitVec::all_ones(gamma.len());
        self.row_space_with_pattern(gamma, &target)
    }

    /// Some `h` in the row space of `H` whose restriction to `gamma`
    /// (in the listed order) equals `pattern`.
    pub fn row_space_with_pattern(&self, gamma: &[usize], pattern: &BitVec) -> Result<BitVec> {
        if gamma.len() != pattern.len() {
            return Err(Error::contract("row_space_with_pattern", "pattern length differs from |gamma|"));
        }
        if gamma.is_empty() {
            return Ok(BitVec::zeros(self.n()));
        }
        let restricted = self.h.select_columns(gamma).transpose();
        let coeffs = restricted.solve(pattern)?.ok_or(Error::NotCleanable)?;
        self.h.combine_rows(&coeffs)
    }

    /// True iff no nonzero element of the row space of `H` is supported
    /// inside `gamma`.
    pub fn is_puncture(&self, gamma: &[usize]) -> bool {
        let mut inside = vec![false; self.n()];
        for &i in gamma {
            inside[i] = true;
        }
        let outside: Vec<usize> = (0..self.n()).filter(|&i| !inside[i]).collect();
        self.h.rank() == self.h.select_columns(&outside).rank()
    }

    pub fn is_codeword(&self, v: &BitVec) -> bool {
        self.h.mul_vec(v).map(|s| s.is_zero()).unwrap_or(false)
    }
}

/// `[n,1,n]` repetition code with the `n−1` adjacent-pair checks.
pub fn repetition_code(n: usize) -> ClassicalCode {
    let h = BinaryMatrix::from_fn(n.saturating_sub(1), n, |r, c| c == r || c == r + 1);
    ClassicalCode::from_parity_check(h)
}

/// `[7,4,3]` Hamming code; column `j` of `H` is the binary expansion of `j+1`.
pub fn hamming_7_4() -> ClassicalCode {
    let h = BinaryMatrix::from_fn(3, 7, |r, c| ((c + 1) >> r) & 1 == 1);
    ClassicalCode::from_parity_check(h)
}

/// Full `L×L` circulant of the check `1 + x`: row `i` has ones at `i` and `i+1 mod L`.
pub fn circulant_repetition(l: usize) -> BinaryMatrix {
    let mut m = BinaryMatrix::zeros(l, l);
    for i in 0..l {
        m.flip(i, i);
        m.flip(i, (i + 1) % l);
    }
    m
}
