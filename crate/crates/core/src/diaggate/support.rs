//! Support propagation for group-commutator cascades.

use crate::correctability::{is_correctable, Region};
use crate::css::{CssCode, PauliOperator};
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CircuitKind {
    Transversal,
    ConstantDepth,
}

/// Declared properties of the circuit family; the flags are taken on trust.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CircuitSupportModel {
    pub kind: CircuitKind,
    /// Upper bound on how many hyperplanes the image of one touches.
    pub spread_c: usize,
    pub orientation_preserving: bool,
    pub dimension_preserving: bool,
}

impl CircuitSupportModel {
    pub fn transversal() -> Self {
        Self { kind: CircuitKind::Transversal, spread_c: 1, orientation_preserving: true, dimension_preserving: true }
    }

    pub fn constant_depth(spread_c: usize) -> Self {
        Self { kind: CircuitKind::ConstantDepth, spread_c, orientation_preserving: false, dimension_preserving: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.kind == CircuitKind::Transversal && self.spread_c != 1 {
            return Err(Error::contract("CircuitSupportModel", "transversal circuits have spread 1"));
        }
        Ok(())
    }
}

/// How a circuit enlarges supports; supplied by the caller.
pub trait SupportSpread: Sync {
    fn spread(&self, set: &BTreeSet<usize>) -> BTreeSet<usize>;
}

impl<F> SupportSpread for F
where
    F: Fn(&BTreeSet<usize>) -> BTreeSet<usize> + Sync,
{
    fn spread(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        self(set)
    }
}

/// No enlargement.
pub struct NoSpread;

impl SupportSpread for NoSpread {
    fn spread(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.clone()
    }
}

/// Per-qubit light cones; a set spreads to the union of its cones.
pub struct LightCones(pub Vec<Vec<usize>>);

impl SupportSpread for LightCones {
    fn spread(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter().flat_map(|&q| self.0.get(q).into_iter().flatten().copied()).collect()
    }
}

/// Support bound for the commutator of `U P U†` (support `p_img`) with `Q`.
pub fn commutator_support_bound(
    p_img: &BTreeSet<usize>,
    q_supp: &BTreeSet<usize>,
    model: &CircuitSupportModel,
    spread: &dyn SupportSpread,
) -> BTreeSet<usize> {
    let v: BTreeSet<usize> = p_img.intersection(q_supp).copied().collect();
    match model.kind {
        CircuitKind::Transversal => v,
        CircuitKind::ConstantDepth => {
            let mut out = spread.spread(&v);
            out.extend(v);
            out
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CascadeStep {
    pub j: usize,
    pub bound: Vec<usize>,
    pub correctable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CascadeReport {
    pub steps: Vec<CascadeStep>,
    pub first_correctable: Option<usize>,
    pub conclusion: String,
}

/// Iterates `K_1 = supp(U·P_1·U†)` and `K_j = bound(K_{j−1}, supp P_j)`,
/// testing each bound for correctability. The first correctable `K_j`
/// places `U` in the j-th level of the hierarchy.
pub fn bk_cascade(
    code: &CssCode,
    reps: &[PauliOperator],
    model: &CircuitSupportModel,
    spread: &dyn SupportSpread,
) -> Result<CascadeReport> {
    model.validate()?;
    if reps.is_empty() {
        return Err(Error::contract("bk_cascade", "at least one representative required"));
    }
    let n = code.n();
    let first: BTreeSet<usize> = reps[0].support().into_iter().collect();
    let mut bound = match model.kind {
        CircuitKind::Transversal => first,
        CircuitKind::ConstantDepth => {
            let mut s = spread.spread(&first);
            s.extend(first);
            s
        }
    };
    let mut steps = Vec::new();
    let mut first_correctable = None;
    for j in 1..=reps.len() {
        if j > 1 {
            let q: BTreeSet<usize> = reps[j - 1].support().into_iter().collect();
            bound = commutator_support_bound(&bound, &q, model, spread);
        }
        let region = Region::new(bound.iter().copied(), n)?;
        let correctable = is_correctable(code, &region)?.correctable;
        steps.push(CascadeStep { j, bound: region.qubits().to_vec(), correctable });
        if correctable {
            first_correctable = Some(j);
            break;
        }
    }
    let conclusion = match first_correctable {
        Some(j) => format!("U ∈ P_{j}"),
        None => "inconclusive".to_string(),
    };
    Ok(CascadeReport { steps, first_correctable, conclusion })
}
