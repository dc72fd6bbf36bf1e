//! Reference implementations used as test oracles. Everything here is
//! deliberately naive and shares no code with the library beyond reading
//! matrix entries.

#![allow(dead_code)]

use hgpforge::css::{assemble_css, CssCode};
use hgpforge::f2la::{BinaryMatrix, BitVec};
use hgpforge::product::{OneComplex, ProductComplex};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::Arc;

pub type Row = Vec<bool>;

pub fn rows_of(m: &BinaryMatrix) -> Vec<Row> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect()).collect()
}

pub fn row_of(v: &BitVec) -> Row {
    (0..v.len()).map(|i| v.get(i)).collect()
}

fn xor_into(a: &mut Row, b: &Row) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= *y;
    }
}

/// Row span over GF(2) by plain Gaussian elimination.
#[derive(Clone, Default)]
pub struct Span {
    basis: Vec<(usize, Row)>,
}

impl Span {
    pub fn new(rows: &[Row]) -> Self {
        let mut s = Span::default();
        for r in rows {
            s.insert(r.clone());
        }
        s
    }

    pub fn reduce(&self, v: &Row) -> Row {
        let mut v = v.clone();
        for (p, b) in &self.basis {
            if v[*p] {
                xor_into(&mut v, b);
            }
        }
        v
    }

    pub fn insert(&mut self, v: Row) -> bool {
        let v = self.reduce(&v);
        match v.iter().position(|&b| b) {
            None => false,
            Some(p) => {
                for (_, b) in self.basis.iter_mut() {
                    if b[p] {
                        xor_into(b, &v);
                    }
                }
                self.basis.push((p, v));
                true
            }
        }
    }

    pub fn contains(&self, v: &Row) -> bool {
        self.reduce(v).iter().all(|&b| !b)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Every element of the span (2^rank of them).
    pub fn elements(&self, len: usize) -> Vec<Row> {
        let mut out = vec![vec![false; len]];
        for (_, b) in &self.basis {
            let more: Vec<Row> = out
                .iter()
                .map(|e| {
                    let mut e = e.clone();
                    xor_into(&mut e, b);
                    e
                })
                .collect();
            out.extend(more);
        }
        out
    }
}

pub fn rank(m: &BinaryMatrix) -> usize {
    Span::new(&rows_of(m)).rank()
}

pub fn annihilated_by(rows: &[Row], v: &Row) -> bool {
    rows.iter().all(|r| r.iter().zip(v).filter(|(a, b)| **a && **b).count() % 2 == 0)
}

/// Checks for one Pauli type: `part` must commute with the opposite
/// stabilizers and lie outside the span of the same-type stabilizers.
pub struct LogicalOracle {
    commute_with: Vec<Row>,
    stabilizers: Span,
    pub n: usize,
}

impl LogicalOracle {
    /// X-type logicals: kernel of Hz modulo row space of Hx.
    pub fn x(code: &CssCode) -> Self {
        Self { commute_with: rows_of(code.hz()), stabilizers: Span::new(&rows_of(code.hx())), n: code.n() }
    }

    /// Z-type logicals: kernel of Hx modulo row space of Hz.
    pub fn z(code: &CssCode) -> Self {
        Self { commute_with: rows_of(code.hx()), stabilizers: Span::new(&rows_of(code.hz())), n: code.n() }
    }

    pub fn is_nontrivial(&self, v: &Row) -> bool {
        annihilated_by(&self.commute_with, v) && !self.stabilizers.contains(v)
    }

    pub fn is_nontrivial_on(&self, support: &[usize]) -> bool {
        let mut v = vec![false; self.n];
        for &q in support {
            v[q] = true;
        }
        self.is_nontrivial(&v)
    }

    /// Minimum weight of a nontrivial logical, scanning weights up to
    /// `max_weight`; `None` if nothing is found or the scan exceeds `budget`
    /// candidate supports.
    pub fn min_weight(&self, max_weight: usize, budget: u64) -> Option<usize> {
        let mut spent = 0u64;
        for w in 1..=max_weight.min(self.n) {
            let mut found = false;
            let ok = for_each_combination(self.n, w, &mut |c| {
                spent += 1;
                if spent > budget {
                    return false;
                }
                if self.is_nontrivial_on(c) {
                    found = true;
                    return false;
                }
                true
            });
            if found {
                return Some(w);
            }
            if !ok {
                return None;
            }
        }
        None
    }
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns false; returns false if stopped early.
pub fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return true;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        if !f(&c) {
            return false;
        }
        let mut i = k;
        while i > 0 && c[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return true;
        }
        c[i - 1] += 1;
        for j in i..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

pub fn product_code(seeds: &[BinaryMatrix], level: usize) -> CssCode {
    let pc = ProductComplex::build(seeds.iter().cloned().map(OneComplex::new).collect()).unwrap();
    assemble_css(Arc::new(pc), level).unwrap()
}

/// `L×L` circulant of `1 + x`, built independently of the library helper.
pub fn cycle(l: usize) -> BinaryMatrix {
    BinaryMatrix::from_fn(l, l, |r, c| c == r || c == (r + 1) % l)
}

pub fn toric(t: usize, l: usize) -> CssCode {
    product_code(&vec![cycle(l); t], 1)
}

/// Truth table of `Σ c_S Π_{i∈S} x_i mod 2^m`, with bit `i` of the index
/// holding `x_i`.
pub fn truth_table(terms: &[(Vec<u32>, u64)], nvars: usize, m: u32) -> Vec<u64> {
    let mask = (1u64 << m) - 1;
    (0..1usize << nvars)
        .map(|x| {
            terms
                .iter()
                .filter(|(s, _)| s.iter().all(|&i| (x >> i) & 1 == 1))
                .fold(0u64, |acc, (_, c)| acc.wrapping_add(*c) & mask)
        })
        .collect()
}

fn is_pauli_table(t: &[u64], nvars: usize, m: u32) -> bool {
    let mask = (1u64 << m) - 1;
    let half = 1u64 << (m - 1);
    let base = t[0];
    let a: Vec<u64> = (0..nvars).map(|i| t[1 << i].wrapping_sub(base) & mask).collect();
    if a.iter().any(|&v| v != 0 && v != half) {
        return false;
    }
    (0..t.len()).all(|x| {
        let parity = (0..nvars).filter(|&i| (x >> i) & 1 == 1 && a[i] == half).count() % 2;
        t[x].wrapping_sub(base) & mask == if parity == 1 { half } else { 0 }
    })
}

/// Clifford-hierarchy level of the diagonal gate with phase table `t`, from
/// the recursive definition: constants are level 0, Pauli-Z products with a
/// global phase level 1, otherwise one more than the worst conjugation by
/// an X-type Pauli.
pub fn hierarchy_level_by_differences(t: &[u64], nvars: usize, m: u32, memo: &mut HashMap<(u32, Vec<u64>), u32>) -> u32 {
    if t.iter().all(|&v| v == t[0]) {
        return 0;
    }
    if is_pauli_table(t, nvars, m) {
        return 1;
    }
    if let Some(&l) = memo.get(&(m, t.to_vec())) {
        return l;
    }
    let mask = (1u64 << m) - 1;
    let mut worst = 0;
    for g in 1..t.len() {
        let d: Vec<u64> = (0..t.len()).map(|x| t[x ^ g].wrapping_sub(t[x]) & mask).collect();
        worst = worst.max(hierarchy_level_by_differences(&d, nvars, m, memo));
    }
    memo.insert((m, t.to_vec()), worst + 1);
    worst + 1
}

/// Explicit stabilizer projector acting on a state vector over `n` qubits.
pub struct Projector {
    x_gens: Vec<usize>,
    z_gens: Vec<usize>,
}

fn mask_of(r: &Row) -> usize {
    r.iter().enumerate().filter(|(_, b)| **b).fold(0, |m, (i, _)| m | (1 << i))
}

impl Projector {
    pub fn new(code: &CssCode) -> Self {
        Self {
            x_gens: rows_of(code.hx()).iter().map(mask_of).collect(),
            z_gens: rows_of(code.hz()).iter().map(mask_of).collect(),
        }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut v = v.to_vec();
        for &g in &self.x_gens {
            v = (0..v.len()).map(|x| (v[x] + v[x ^ g]) * 0.5).collect();
        }
        for &h in &self.z_gens {
            for (x, a) in v.iter_mut().enumerate() {
                if (x & h).count_ones() % 2 == 1 {
                    *a = Complex64::new(0.0, 0.0);
                }
            }
        }
        v
    }
}

/// A basis of the codespace: uniform superpositions over the cosets of the
/// X-stabilizer span inside the kernel of Hz.
pub fn codespace_basis(code: &CssCode) -> Vec<Vec<Complex64>> {
    let n = code.n();
    let hz = rows_of(code.hz());
    let sx: Vec<usize> = Span::new(&rows_of(code.hx())).elements(n).iter().map(mask_of).collect();
    let hz_masks: Vec<usize> = hz.iter().map(mask_of).collect();
    let mut seen = vec![false; 1 << n];
    let mut out = Vec::new();
    for x in 0..1usize << n {
        if seen[x] || hz_masks.iter().any(|&h| (h & x).count_ones() % 2 == 1) {
            continue;
        }
        let mut psi = vec![Complex64::new(0.0, 0.0); 1 << n];
        let amp = 1.0 / (sx.len() as f64).sqrt();
        for &s in &sx {
            seen[x ^ s] = true;
            psi[x ^ s] = Complex64::new(amp, 0.0);
        }
        out.push(psi);
    }
    out
}

/// `Π U Π = U Π` for the diagonal gate with phase table `table` (phase
/// `exp(iπ f / 2^{m−1})`), tested on a codespace basis.
pub fn preserves_by_state_vector(code: &CssCode, table: &[u64], m: u32, tol: f64) -> bool {
    let proj = Projector::new(code);
    let unit = std::f64::consts::PI / f64::from(1u32 << (m - 1));
    codespace_basis(code).iter().all(|psi| {
        let u_psi: Vec<Complex64> =
            psi.iter().zip(table).map(|(a, &f)| a * Complex64::from_polar(1.0, unit * f as f64)).collect();
        let back = proj.apply(&u_psi);
        back.iter().zip(&u_psi).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt() < tol
    })
}
