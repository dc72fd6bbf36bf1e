use super::codespace::{logical_action, preserves_codespace};
use super::poly::{hierarchy_level, PhasePolynomial};
use super::zmod::kernel_generators;
use crate::css::CssCode;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NogoReport {
    pub modulus_log2: u32,
    pub constraint_rows: usize,
    /// Generators of the module of codespace-preserving coefficient vectors.
    pub solution_basis: Vec<Vec<u64>>,
    pub basis_levels: Vec<u32>,
    pub samples: usize,
    pub sample_levels: Vec<u32>,
    pub max_level: u32,
}

/// Congruences on `(c_i)` for `f = Σ c_i x_i` to preserve the codespace.
///
/// With `x_i = ⊕_{j∈T_i} u_j` over a basis of `ker Hz`, the difference along
/// a generator `g` is `Σ_{i∈g} c_i (1 − 2x_i)`; each monomial `u_R` with
/// `|R| < m` contributes the row `(−2)^{|R|} Σ_{i∈g, R⊆T_i} c_i` and the
/// constant term contributes `Σ_{i∈g} c_i`.
pub fn transversal_constraints(code: &CssCode, m: u32) -> Vec<Vec<u64>> {
    let n = code.n();
    let mask = (1u64 << m) - 1;
    let b = code.hz().kernel_basis();
    let t: Vec<Vec<usize>> = (0..n).map(|i| b.column(i).support()).collect();
    let hx = code.hx();
    let mut rows = Vec::new();
    for r in 0..hx.rows() {
        let g = hx.row_support(r);
        let mut constant = vec![0u64; n];
        for &i in &g {
            constant[i] = 1;
        }
        rows.push(constant);
        let mut by_monomial: BTreeMap<Vec<usize>, Vec<u64>> = BTreeMap::new();
        for &i in &g {
            for size in 1..m as usize {
                let coeff = if size % 2 == 1 { (1u64 << size).wrapping_neg() } else { 1u64 << size } & mask;
                if coeff == 0 {
                    continue;
                }
                for sub in subsets_of(&t[i], size) {
                    let row = by_monomial.entry(sub).or_insert_with(|| vec![0u64; n]);
                    row[i] = row[i].wrapping_add(coeff) & mask;
                }
            }
        }
        rows.extend(by_monomial.into_values().filter(|r| r.iter().any(|&x| x != 0)));
    }
    rows
}

fn subsets_of(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    crate::product::subsets(items.len(), size)
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| items[i]).collect())
        .collect()
}

fn linear_poly(c: &[u64], m: u32) -> Result<PhasePolynomial> {
    let mut f = PhasePolynomial::new(m, c.len())?;
    for (i, &ci) in c.iter().enumerate() {
        f.add_term(&[i], ci as i64)?;
    }
    Ok(f)
}

fn logical_level(code: &CssCode, c: &[u64], m: u32) -> Result<u32> {
    let f = linear_poly(c, m)?;
    if !preserves_codespace(&f, code, 1)?.preserves {
        return Err(Error::Internal("congruence solution fails the codespace check".into()));
    }
    Ok(hierarchy_level(&logical_action(&f, code, 1)?))
}

/// Solves for all codespace-preserving transversal diagonal gates
/// `f = Σ c_i x_i` over `Z_{2^m}` and reports the highest Clifford level of
/// their logical actions, over the generators and `samples` random
/// combinations drawn with `seed`.
pub fn transversal_nogo_harness(code: &CssCode, m: u32, samples: usize, seed: u64) -> Result<NogoReport> {
    let n = code.n();
    let rows = transversal_constraints(code, m);
    let basis = kernel_generators(&rows, n, m);
    let basis_levels: Vec<u32> =
        basis.par_iter().map(|c| logical_level(code, c, m)).collect::<Result<Vec<_>>>()?;

    let mask = (1u64 << m) - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let combos: Vec<Vec<u64>> = (0..samples)
        .map(|_| {
            let mut c = vec![0u64; n];
            for g in &basis {
                let r: u64 = rng.random_range(0..=mask);
                for (ci, gi) in c.iter_mut().zip(g) {
                    *ci = ci.wrapping_add(r.wrapping_mul(*gi)) & mask;
                }
            }
            c
        })
        .collect();
    let sample_levels: Vec<u32> =
        combos.par_iter().map(|c| logical_level(code, c, m)).collect::<Result<Vec<_>>>()?;
    let max_level = basis_levels.iter().chain(&sample_levels).copied().max().unwrap_or(0);
    Ok(NogoReport {
        modulus_log2: m,
        constraint_rows: rows.len(),
        solution_basis: basis,
        basis_levels,
        samples,
        sample_levels,
        max_level,
    })
}
