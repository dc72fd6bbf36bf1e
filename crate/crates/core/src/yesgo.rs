//! Logical `C^{t−1}Z` on `t` copies of the `t`-dimensional toric code.
//!
//! Qubits sit on edges of an `L^t` periodic lattice. For every cell and
//! every ordering of the `t` directions, the monotone path from the cell's
//! low corner to its high corner selects one edge per step; copy `k` takes
//! the edge of step `k`. The product of these `t` qubits is one physical
//! `C^{t−1}Z`.

use crate::classical::circulant_repetition;
use crate::css::{assemble_css, CssCode};
use crate::diaggate::{hierarchy_level, logical_action, preserves_codespace, CodespaceVerdict, PhasePolynomial};
use crate::error::{Error, Result};
use crate::product::{OneComplex, ProductComplex};
use serde::Serialize;
use std::sync::Arc;

pub const MIN_T: usize = 2;
pub const MAX_T: usize = 4;

#[derive(Debug, Clone)]
pub struct ToricBundle {
    pub t: usize,
    pub l: usize,
    pub copies: usize,
    pub code: CssCode,
    pub circuit: PhasePolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogicalCnzReport {
    pub ok: bool,
    pub level: u32,
    pub logical: Vec<crate::diaggate::TermJson>,
    pub expected: Vec<Vec<u32>>,
    pub missing: Vec<Vec<u32>>,
}

fn check_t(t: usize) -> Result<()> {
    if !(MIN_T..=MAX_T).contains(&t) {
        return Err(Error::UnsupportedDimension(t));
    }
    Ok(())
}

/// `t`-dimensional toric code from `L×L` circulant seeds, qubits on level 1.
pub fn build_toric(t: usize, l: usize) -> Result<CssCode> {
    check_t(t)?;
    if l < 1 {
        return Err(Error::contract("build_toric", "L must be positive"));
    }
    let pc = ProductComplex::build((0..t).map(|_| OneComplex::new(circulant_repetition(l))).collect())?;
    assemble_css(Arc::new(pc), 1)
}

fn permutations(t: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; t], &mut out);
    out
}

/// Flat qubit index of the edge leaving vertex `p` in direction `d`.
///
/// Edge `e` of the circulant seed joins vertices `e−1` and `e`, so the edge
/// from `p_d` to `p_d + 1` has index `p_d + 1 mod L`.
fn edge(pc: &ProductComplex, p: &[usize], d: usize, l: usize) -> Result<usize> {
    let table = pc.level(1);
    let mu = table.sector_of_dirs(&[d]).expect("singleton sector");
    let mut coords = p.to_vec();
    coords[d] = (p[d] + 1) % l;
    table.flat_index(mu, &coords)
}

/// Physical `C^{t−1}Z` circuit over `t` copies (`m = 1`).
pub fn build_cnz_circuit(t: usize, l: usize) -> Result<PhasePolynomial> {
    let code = build_toric(t, l)?;
    let pc = code.complex().expect("product code").clone();
    let n = code.n();
    let mut f = PhasePolynomial::new(1, n * t)?;
    let cells: Vec<Vec<usize>> = {
        let choices: Vec<Vec<usize>> = (0..t).map(|_| (0..l).collect()).collect();
        let mut out = Vec::new();
        crate::product::for_each_product(&choices, |c| out.push(c.to_vec()));
        out
    };
    let perms = permutations(t);
    for cell in &cells {
        for perm in &perms {
            let mut p = cell.clone();
            let mut qubits = Vec::with_capacity(t);
            for (k, &d) in perm.iter().enumerate() {
                qubits.push(k * n + edge(&pc, &p, d, l)?);
                p[d] = (p[d] + 1) % l;
            }
            f.add_term(&qubits, 1)?;
        }
    }
    Ok(f)
}

pub fn build_bundle(t: usize, l: usize) -> Result<ToricBundle> {
    Ok(ToricBundle { t, l, copies: t, code: build_toric(t, l)?, circuit: build_cnz_circuit(t, l)? })
}

pub fn verify_invariance(bundle: &ToricBundle) -> Result<CodespaceVerdict> {
    preserves_codespace(&bundle.circuit, &bundle.code, bundle.copies)
}

/// Logical monomials expected from the construction: one X logical per copy
/// whose orientations together cover every direction exactly once.
pub fn expected_logical_monomials(bundle: &ToricBundle) -> Result<Vec<Vec<u32>>> {
    let basis = bundle.code.logical_basis()?;
    let k = basis.k();
    let dirs: Vec<Vec<usize>> = basis
        .x_reps
        .iter()
        .map(|r| r.provenance.as_ref().map(|p| p.hyperplane.fixed_dirs.clone()).unwrap_or_default())
        .collect();
    let mut out = Vec::new();
    let choices: Vec<Vec<usize>> = (0..bundle.copies).map(|_| (0..k).collect()).collect();
    crate::product::for_each_product(&choices, |pick| {
        let mut seen = vec![false; bundle.t];
        let mut total = 0;
        let mut disjoint = true;
        for &j in pick {
            for &d in &dirs[j] {
                disjoint &= !seen[d];
                seen[d] = true;
                total += 1;
            }
        }
        if disjoint && total == bundle.t {
            out.push(pick.iter().enumerate().map(|(c, &j)| (c * k + j) as u32).collect());
        }
    });
    Ok(out)
}

/// Extracts the logical action and checks it contains every expected
/// logical `C^{t−1}Z` with coefficient 1 and has level `t`.
pub fn verify_logical_cnz(bundle: &ToricBundle) -> Result<LogicalCnzReport> {
    let logical = logical_action(&bundle.circuit, &bundle.code, bundle.copies)?;
    let expected = expected_logical_monomials(bundle)?;
    let missing: Vec<Vec<u32>> = expected.iter().filter(|m| logical.coeff(m) != 1).cloned().collect();
    let level = hierarchy_level(&logical);
    Ok(LogicalCnzReport {
        ok: missing.is_empty() && !expected.is_empty() && level as usize == bundle.t,
        level,
        logical: logical.to_json_terms(),
        expected,
        missing,
    })
}
