//! Exhaustive minimum-weight searches shared by classical and quantum
//! distance computations.
//!
//! Both searches return the lowest-weight hit, ties broken by the
//! lexicographic order of the sorted support. Work is split across rayon
//! workers and merged with the same ordering, so the answer does not depend
//! on the worker count.

use crate::f2la::BitVec;
use rayon::prelude::*;
use std::cmp::Ordering;

fn better(a: &BitVec, b: &BitVec) -> bool {
    match a.weight().cmp(&b.weight()) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => a.support() < b.support(),
    }
}

fn pick(a: Option<BitVec>, b: Option<BitVec>) -> Option<BitVec> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if better(&b, &a) { b } else { a }),
        (a, b) => a.or(b),
    }
}

/// Largest span dimension [`span_minimum`] accepts.
pub const MAX_SPAN_DIM: usize = 40;

/// Minimum-weight vector in the span of `basis` among combinations that use
/// at least one of the first `required` basis rows.
///
/// `required = basis.len()` gives the minimum over all nonzero combinations.
/// Cost is `2^basis.len()` vector updates.
pub fn span_minimum(basis: &[BitVec], required: usize) -> Option<BitVec> {
    let dim = basis.len();
    assert!(dim <= MAX_SPAN_DIM, "span dimension {dim} exceeds {MAX_SPAN_DIM}");
    assert!(required <= dim);
    if dim == 0 || required == 0 {
        return None;
    }
    let len = basis[0].len();
    let low = dim.min(16);
    let high = dim - low;
    let required_mask: u64 = if required >= 64 { u64::MAX } else { (1u64 << required) - 1 };

    (0u64..(1u64 << high))
        .into_par_iter()
        .map(|prefix| {
            let mut v = BitVec::zeros(len);
            for j in 0..high {
                if prefix >> j & 1 == 1 {
                    v.xor_assign(&basis[low + j]);
                }
            }
            let mut best: Option<BitVec> = None;
            let mut best_weight = usize::MAX;
            let base_mask = prefix << low;
            let consider = |v: &BitVec, mask: u64, best: &mut Option<BitVec>, best_weight: &mut usize| {
                if mask & required_mask == 0 {
                    return;
                }
                let w = v.weight();
                if w < *best_weight || (w == *best_weight && best.as_ref().is_some_and(|b| v.support() < b.support())) {
                    *best_weight = w;
                    *best = Some(v.clone());
                }
            };
            consider(&v, base_mask, &mut best, &mut best_weight);
            for i in 1u64..(1u64 << low) {
                let bit = i.trailing_zeros() as usize;
                v.xor_assign(&basis[bit]);
                let gray = i ^ (i >> 1);
                consider(&v, base_mask | gray, &mut best, &mut best_weight);
            }
            best
        })
        .reduce(|| None, pick)
}

/// Lowest-weight index subset `S` (up to `max_weight`) such that the sum of
/// `columns[i]` for `i ∈ S` vanishes on the first `syndrome_len` coordinates
/// and, when `logical_len > 0`, is nonzero on the following `logical_len`.
///
/// Returns the subset as a vector of length `columns.len()`.
pub fn lowest_weight_subset(
    columns: &[BitVec],
    syndrome_len: usize,
    logical_len: usize,
    max_weight: usize,
) -> Option<BitVec> {
    let n = columns.len();
    for w in 1..=max_weight.min(n) {
        let hit = (0..n)
            .into_par_iter()
            .map(|first| {
                let mut chosen = vec![first];
                let mut acc = vec![columns[first].clone()];
                dfs(columns, syndrome_len, logical_len, w, &mut chosen, &mut acc)
            })
            .reduce(|| None, pick);
        if hit.is_some() {
            return hit;
        }
    }
    None
}

fn accepts(v: &BitVec, syndrome_len: usize, logical_len: usize) -> bool {
    let syndrome_clear = v.ones().take_while(|&i| i < syndrome_len).next().is_none();
    syndrome_clear && (logical_len == 0 || v.ones().any(|i| i >= syndrome_len && i < syndrome_len + logical_len))
}

fn dfs(
    columns: &[BitVec],
    syndrome_len: usize,
    logical_len: usize,
    target: usize,
    chosen: &mut Vec<usize>,
    acc: &mut Vec<BitVec>,
) -> Option<BitVec> {
    let n = columns.len();
    if chosen.len() == target {
        let top = acc.last().expect("non-empty accumulator");
        return accepts(top, syndrome_len, logical_len).then(|| BitVec::from_indices(n, chosen.iter().copied()));
    }
    let start = *chosen.last().expect("non-empty choice") + 1;
    let remaining = target - chosen.len();
    for next in start..=n.saturating_sub(remaining) {
        let sum = acc.last().expect("non-empty accumulator").xor(&columns[next]);
        chosen.push(next);
        acc.push(sum);
        let found = dfs(columns, syndrome_len, logical_len, target, chosen, acc);
        chosen.pop();
        acc.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}
