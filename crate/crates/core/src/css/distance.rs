use super::pauli::{PauliOperator, PauliType};
use super::CssCode;
use crate::error::{Error, Result};
use crate::f2la::BitVec;
use crate::search::{self, MAX_SPAN_DIM};

/// Operation budget above which an unbounded search is refused.
const SEARCH_BUDGET: f64 = 1.0e10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteDistance {
    pub d_x: usize,
    pub d_z: usize,
    pub d: usize,
    pub witness_x: PauliOperator,
    pub witness_z: PauliOperator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypedBound {
    Exact { d: usize, witness: BitVec },
    /// No nontrivial logical of this type has weight below the value.
    AtLeast(usize),
}

fn binomial_sum(n: usize, upto: usize) -> f64 {
    let mut total = 0.0;
    let mut c = 1.0;
    for w in 1..=upto.min(n) {
        c *= (n + 1 - w) as f64 / w as f64;
        total += c;
    }
    total
}

fn search(code: &CssCode, kind: PauliType, max_weight: Option<usize>) -> Result<TypedBound> {
    let basis = code.logical_basis()?;
    let k = basis.k();
    if k == 0 {
        return Err(Error::NoLogicalOperators);
    }
    let n = code.n();
    let (stab, check) = match kind {
        PauliType::X => (code.hx(), code.hz()),
        PauliType::Z => (code.hz(), code.hx()),
    };
    let duals = basis.reps(match kind {
        PauliType::X => PauliType::Z,
        PauliType::Z => PauliType::X,
    });

    let reps: Vec<BitVec> = basis.reps(kind).iter().map(|r| r.part().clone()).collect();
    let upper = reps.iter().map(BitVec::weight).min().unwrap_or(n);
    let cap = max_weight.unwrap_or(n).min(upper);
    let rr = stab.rref();
    let dim = k + rr.rank;
    let span_cost = if dim <= MAX_SPAN_DIM { 2f64.powi(dim as i32) } else { f64::INFINITY };
    let subset_cost = binomial_sum(n, cap.saturating_sub(1)) * (check.rows() + k).max(1) as f64 / 64.0;

    let witness = if span_cost <= subset_cost {
        if max_weight.is_none() && span_cost > SEARCH_BUDGET {
            return Err(Error::SearchInfeasible(format!("span of dimension {dim} over {n} qubits")));
        }
        let mut rows = reps.clone();
        rows.extend((0..rr.rank).map(|r| rr.reduced.row(r)));
        search::span_minimum(&rows, k).filter(|w| w.weight() <= cap)
    } else {
        if max_weight.is_none() && subset_cost > SEARCH_BUDGET {
            return Err(Error::SearchInfeasible(format!("{n} qubits with weight up to {cap}")));
        }
        let columns: Vec<BitVec> = (0..n)
            .map(|i| {
                let logical = BitVec::from_bools(&duals.iter().map(|z| z.part().get(i)).collect::<Vec<_>>());
                BitVec::concat(&[&check.column(i), &logical])
            })
            .collect();
        // The cheapest representative already certifies weight `upper`.
        let limit = if cap == upper { upper.saturating_sub(1) } else { cap };
        match search::lowest_weight_subset(&columns, check.rows(), k, limit) {
            Some(w) => Some(w),
            None if cap == upper => reps.iter().filter(|r| r.weight() == upper).min_by_key(|r| r.support()).cloned(),
            None => None,
        }
    };
    Ok(match witness {
        Some(w) => TypedBound::Exact { d: w.weight(), witness: w },
        None => TypedBound::AtLeast(cap + 1),
    })
}

/// Exact `d_X`, `d_Z` with minimum-weight witnesses.
///
/// Searches the span of the logical representatives and the stabilizer
/// row space, or column subsets by increasing weight, whichever is cheaper.
pub fn brute_distance(code: &CssCode) -> Result<BruteDistance> {
    let exact = |kind| -> Result<(usize, BitVec)> {
        match search(code, kind, None)? {
            TypedBound::Exact { d, witness } => Ok((d, witness)),
            TypedBound::AtLeast(_) => Err(Error::Internal("unbounded distance search found nothing".into())),
        }
    };
    let (d_z, wz) = exact(PauliType::Z)?;
    let (d_x, wx) = exact(PauliType::X)?;
    Ok(BruteDistance {
        d_x,
        d_z,
        d: d_x.min(d_z),
        witness_x: PauliOperator::x_type(wx),
        witness_z: PauliOperator::z_type(wz),
    })
}

/// Distance of one Pauli type, searched only up to `max_weight`.
pub fn brute_distance_bounded(code: &CssCode, kind: PauliType, max_weight: usize) -> Result<TypedBound> {
    search(code, kind, Some(max_weight))
}
