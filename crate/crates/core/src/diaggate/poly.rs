use crate::error::{Error, Result};
use crate::f2la::BitVec;
use serde::Serialize;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

pub const MAX_MODULUS_LOG2: u32 = 32;

/// Multilinear polynomial over binary variables with coefficients in
/// `Z_{2^m}`; the diagonal gate it describes acts as `exp(iπ f(x)/2^{m−1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhasePolynomial {
    modulus_log2: u32,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub monomial: Vec<u32>,
    pub coeff: u64,
}

/// Gates accepted by [`poly_from_circuit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagonalGate {
    /// Adds `coeff · x_q`.
    Phase { coeff: i64, qubit: usize },
    /// `Z^{1/2^{level−1}}`, adding `2^{m−level} · x_q`.
    ZRoot { level: u32, qubit: usize },
    /// `C^{j−1}Z` on `j` qubits, adding `2^{m−1} · Π x_i`.
    Controlled(Vec<usize>),
    /// Adds `coeff · Π x_i`.
    Term { coeff: i64, qubits: Vec<usize> },
}

pub(crate) fn v2(c: u64) -> u32 {
    c.trailing_zeros()
}

/// Sorted union of two sorted variable lists.
pub(crate) fn merge(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl PhasePolynomial {
    pub fn new(modulus_log2: u32, nvars: usize) -> Result<Self> {
        if modulus_log2 == 0 || modulus_log2 > MAX_MODULUS_LOG2 {
            return Err(Error::contract("PhasePolynomial::new", format!("modulus 2^{modulus_log2} out of range")));
        }
        Ok(Self { modulus_log2, nvars, terms: BTreeMap::new() })
    }

    pub fn modulus_log2(&self) -> u32 {
        self.modulus_log2
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn mask(&self) -> u64 {
        (1u64 << self.modulus_log2) - 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], u64)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| k.is_empty())
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn coeff(&self, monomial: &[u32]) -> u64 {
        self.terms.get(monomial).copied().unwrap_or(0)
    }

    /// Adds `coeff · Π x_i`; repeated variables collapse since `x² = x`.
    pub fn add_term(&mut self, vars: &[usize], coeff: i64) -> Result<()> {
        if let Some(&bad) = vars.iter().find(|&&v| v >= self.nvars) {
            return Err(Error::contract("add_term", format!("variable {bad} out of {}", self.nvars)));
        }
        let mut key: Vec<u32> = vars.iter().map(|&v| v as u32).collect();
        key.sort_unstable();
        key.dedup();
        self.add_raw(key, coeff as u64);
        Ok(())
    }

    pub(crate) fn add_raw(&mut self, key: Vec<u32>, coeff: u64) {
        let mask = self.mask();
        let c = coeff & mask;
        if c == 0 {
            return;
        }
        match self.terms.entry(key) {
            Entry::Occupied(mut o) => {
                let v = o.get().wrapping_add(c) & mask;
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn evaluate(&self, x: &BitVec) -> u64 {
        assert_eq!(x.len(), self.nvars, "assignment length");
        let mut acc = 0u64;
        for (k, &c) in &self.terms {
            if k.iter().all(|&v| x.get(v as usize)) {
                acc = acc.wrapping_add(c);
            }
        }
        acc & self.mask()
    }

    pub fn sub(&self, other: &PhasePolynomial) -> Result<PhasePolynomial> {
        self.same_shape(other, "sub")?;
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_raw(k.clone(), c.wrapping_neg());
        }
        Ok(out)
    }

    pub fn add(&self, other: &PhasePolynomial) -> Result<PhasePolynomial> {
        self.same_shape(other, "add")?;
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_raw(k.clone(), c);
        }
        Ok(out)
    }

    fn same_shape(&self, other: &PhasePolynomial, op: &'static str) -> Result<()> {
        if self.nvars != other.nvars || self.modulus_log2 != other.modulus_log2 {
            return Err(Error::contract(op, "polynomials differ in nvars or modulus"));
        }
        Ok(())
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms.iter().map(|(k, &c)| TermJson { monomial: k.clone(), coeff: c }).collect()
    }

    /// Same terms over a larger variable set.
    pub fn widen(&self, nvars: usize) -> Result<PhasePolynomial> {
        if nvars < self.nvars {
            return Err(Error::contract("widen", "cannot drop variables"));
        }
        Ok(PhasePolynomial { nvars, ..self.clone() })
    }

    /// Composes with `x_i = c_i ⊕ (⊕_{j∈T_i} u_j)` for a new variable set `u`.
    ///
    /// Each parity is expanded as `Σ_{∅≠R⊆T} (−2)^{|R|−1} u_R`, truncated at
    /// the precision the monomial's coefficient leaves.
    pub fn substitute(&self, map: &[Parity], new_nvars: usize) -> Result<PhasePolynomial> {
        if map.len() != self.nvars {
            return Err(Error::contract("substitute", format!("{} parities for {} variables", map.len(), self.nvars)));
        }
        let m = self.modulus_log2;
        let mut out = PhasePolynomial::new(m, new_nvars)?;
        let mut cache: HashMap<(usize, u32), Vec<(Vec<u32>, u64)>> = HashMap::new();
        for (mono, &c) in &self.terms {
            let precision = m - v2(c);
            let pmask = (1u64 << precision) - 1;
            let mut acc: HashMap<Vec<u32>, u64> = HashMap::from([(Vec::new(), 1u64)]);
            for &v in mono {
                let e = cache
                    .entry((v as usize, precision))
                    .or_insert_with(|| map[v as usize].expand(precision));
                let mut next: HashMap<Vec<u32>, u64> = HashMap::with_capacity(acc.len() * e.len());
                for (ka, &ca) in &acc {
                    for (kb, cb) in e.iter() {
                        let c = ca.wrapping_mul(*cb) & pmask;
                        if c == 0 {
                            continue;
                        }
                        let slot = next.entry(merge(ka, kb)).or_insert(0);
                        *slot = slot.wrapping_add(c) & pmask;
                    }
                }
                next.retain(|_, c| *c != 0);
                acc = next;
                if acc.is_empty() {
                    break;
                }
            }
            for (k, a) in acc {
                if let Some(&bad) = k.last() {
                    if bad as usize >= new_nvars {
                        return Err(Error::contract("substitute", format!("variable {bad} out of {new_nvars}")));
                    }
                }
                out.add_raw(k, c.wrapping_mul(a));
            }
        }
        Ok(out)
    }

    /// Keeps only the variables `0..nvars`, failing if any term uses others.
    pub fn restrict_vars(&self, nvars: usize) -> Option<PhasePolynomial> {
        if self.terms.keys().any(|k| k.last().is_some_and(|&v| v as usize >= nvars)) {
            return None;
        }
        Some(PhasePolynomial { nvars, ..self.clone() })
    }
}

/// `c ⊕ (⊕_{j ∈ vars} u_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Parity {
    pub vars: Vec<u32>,
    pub constant: bool,
}

impl Parity {
    /// Expansion mod `2^precision` as `(monomial, coefficient)` pairs.
    fn expand(&self, precision: u32) -> Vec<(Vec<u32>, u64)> {
        let pmask = (1u64 << precision) - 1;
        let mut out: Vec<(Vec<u32>, u64)> = Vec::new();
        // (−2)^{r−1} vanishes once r−1 ≥ precision
        let max_r = (precision as usize).min(self.vars.len());
        let mut stack: Vec<u32> = Vec::new();
        fn rec(vars: &[u32], start: usize, max_r: usize, stack: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, u64)>, pmask: u64) {
            if !stack.is_empty() {
                let r = stack.len() as u32;
                let mag = 1u64.checked_shl(r - 1).unwrap_or(0);
                let c = if (r - 1) % 2 == 1 { mag.wrapping_neg() } else { mag } & pmask;
                if c != 0 {
                    out.push((stack.clone(), c));
                }
            }
            if stack.len() == max_r {
                return;
            }
            for i in start..vars.len() {
                stack.push(vars[i]);
                rec(vars, i + 1, max_r, stack, out, pmask);
                stack.pop();
            }
        }
        let mut vars = self.vars.clone();
        vars.sort_unstable();
        vars.dedup();
        rec(&vars, 0, max_r, &mut stack, &mut out, pmask);
        if self.constant {
            // 1 ⊕ p = 1 − p
            for (_, c) in out.iter_mut() {
                *c = c.wrapping_neg() & pmask;
            }
            out.push((Vec::new(), 1 & pmask));
        }
        out.retain(|(_, c)| *c != 0);
        out
    }
}

/// Sums gate contributions into one polynomial over `nvars` variables.
pub fn poly_from_circuit(gates: &[DiagonalGate], modulus_log2: u32, nvars: usize) -> Result<PhasePolynomial> {
    let m = modulus_log2;
    let mut f = PhasePolynomial::new(m, nvars)?;
    for g in gates {
        match g {
            DiagonalGate::Phase { coeff, qubit } => f.add_term(&[*qubit], *coeff)?,
            DiagonalGate::ZRoot { level, qubit } => {
                if *level == 0 || *level > m {
                    return Err(Error::ModulusTooSmall { modulus_log2: m, level: *level });
                }
                f.add_term(&[*qubit], 1i64 << (m - level))?;
            }
            DiagonalGate::Controlled(qs) | DiagonalGate::Term { qubits: qs, .. } => {
                let mut sorted = qs.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) || qs.is_empty() {
                    return Err(Error::contract("poly_from_circuit", "gate qubits must be distinct and nonempty"));
                }
                let coeff = match g {
                    DiagonalGate::Term { coeff, .. } => *coeff,
                    _ => 1i64 << (m - 1),
                };
                f.add_term(qs, coeff)?;
            }
        }
    }
    Ok(f)
}

/// `f(x ⊕ g) − f(x)`, expanded exactly.
pub fn difference(f: &PhasePolynomial, g: &BitVec) -> Result<PhasePolynomial> {
    if g.len() != f.nvars {
        return Err(Error::contract("difference", format!("shift length {} vs {} variables", g.len(), f.nvars)));
    }
    let mut out = PhasePolynomial::new(f.modulus_log2, f.nvars)?;
    for (mono, &c) in &f.terms {
        let (flipped, kept): (Vec<u32>, Vec<u32>) = mono.iter().partition(|&&v| g.get(v as usize));
        if flipped.is_empty() {
            continue;
        }
        // Π_{a∈A}(1 − x_a) Π_{b∈B} x_b − x_S = Σ_{T⊆A} (−1)^{|T|} x_{T∪B} − x_S
        let a = flipped.len();
        for mask in 0u64..(1u64 << a) {
            let t: Vec<u32> = (0..a).filter(|&i| mask >> i & 1 == 1).map(|i| flipped[i]).collect();
            let sign_neg = t.len() % 2 == 1;
            let mut coeff = if sign_neg { c.wrapping_neg() } else { c };
            if t.len() == a {
                coeff = coeff.wrapping_sub(c);
            }
            out.add_raw(merge(&t, &kept), coeff);
        }
    }
    Ok(out)
}

/// Clifford-hierarchy level of the diagonal gate: the largest
/// `|S| + m − 1 − v₂(c)` over nonconstant terms `c·x_S`; 0 for constants.
pub fn hierarchy_level(f: &PhasePolynomial) -> u32 {
    f.terms
        .iter()
        .filter(|(k, _)| !k.is_empty())
        .map(|(k, &c)| k.len() as u32 + f.modulus_log2 - 1 - v2(c))
        .max()
        .unwrap_or(0)
}
