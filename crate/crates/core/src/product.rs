//! Homological products of 1-complexes.
//!
//! The chain space at level `l` is the direct sum, over `l`-subsets `J` of
//! the factor directions, of `⊗_{i∈J} F^{n_i} ⊗ ⊗_{j∉J} F^{m_j}`. Each summand
//! is a sector with a mixed-radix coordinate grid (direction 0 most
//! significant). Sectors are listed in lexicographic order of `J`.
//! Everything is 0-based and, since we work over GF(2), the signs of the
//! Leibniz rule are dropped.

use crate::classical::ClassicalCode;
use crate::error::{Error, Result};
use crate::f2la::{BinaryMatrix, BitVec};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

pub const MAX_FACTORS: usize = 6;

/// Standard-form data of a kernel: a basis whose restriction to the pivot
/// positions is the identity.
#[derive(Debug, Clone)]
pub struct StandardBasis {
    pub vectors: Vec<BitVec>,
    pub pivots: Vec<usize>,
}

impl StandardBasis {
    fn of_kernel(m: &BinaryMatrix) -> Self {
        let rr = m.kernel_basis().rref();
        let vectors = (0..rr.rank).map(|r| rr.reduced.row(r)).collect();
        Self { vectors, pivots: rr.pivot_columns }
    }
}

/// A seed map `A : F^n → F^m` (stored as an `m × n` matrix).
#[derive(Debug, Clone)]
pub struct OneComplex {
    a: BinaryMatrix,
    kernel_code: ClassicalCode,
    cokernel_code: ClassicalCode,
    /// Basis of `ker A` (the ξ vectors) with their pivot positions.
    pub kernel: StandardBasis,
    /// Basis of `ker Aᵀ` (the ζ vectors) with their pivot positions.
    pub cokernel: StandardBasis,
}

impl OneComplex {
    pub fn new(a: BinaryMatrix) -> Self {
        let at = a.transpose();
        let kernel = StandardBasis::of_kernel(&a);
        let cokernel = StandardBasis::of_kernel(&at);
        Self {
            kernel_code: ClassicalCode::from_parity_check(a.clone()),
            cokernel_code: ClassicalCode::from_parity_check(at),
            a,
            kernel,
            cokernel,
        }
    }

    pub fn matrix(&self) -> &BinaryMatrix {
        &self.a
    }

    /// Domain dimension.
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    /// Codomain dimension.
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn k(&self) -> usize {
        self.kernel.vectors.len()
    }

    pub fn k_transpose(&self) -> usize {
        self.cokernel.vectors.len()
    }

    /// Distance of `ker A`; `None` when the kernel is trivial.
    pub fn d(&self) -> Result<Option<usize>> {
        if self.k() == 0 {
            return Ok(None);
        }
        self.kernel_code.distance().map(Some)
    }

    /// Distance of `ker Aᵀ`; `None` when the kernel is trivial.
    pub fn d_transpose(&self) -> Result<Option<usize>> {
        if self.k_transpose() == 0 {
            return Ok(None);
        }
        self.cokernel_code.distance().map(Some)
    }

    pub fn kernel_code(&self) -> &ClassicalCode {
        &self.kernel_code
    }

    pub fn cokernel_code(&self) -> &ClassicalCode {
        &self.cokernel_code
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sector {
    /// Directions carrying the domain space `F^{n_i}`.
    #[serde(rename = "J")]
    pub dirs: Vec<usize>,
    pub shape: Vec<usize>,
    pub offset: usize,
}

impl Sector {
    pub fn size(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn contains_dir(&self, d: usize) -> bool {
        self.dirs.binary_search(&d).is_ok()
    }
}

#[derive(Debug, Clone)]
pub struct SectorTable {
    pub level: usize,
    pub sectors: Vec<Sector>,
    pub dim: usize,
    lookup: HashMap<Vec<usize>, usize>,
}

impl SectorTable {
    fn new(level: usize, factors: &[OneComplex]) -> Self {
        let t = factors.len();
        let mut sectors = Vec::new();
        let mut offset = 0;
        for dirs in subsets(t, level) {
            let shape: Vec<usize> =
                (0..t).map(|i| if dirs.contains(&i) { factors[i].n() } else { factors[i].m() }).collect();
            let s = Sector { dirs, shape, offset };
            offset += s.size();
            sectors.push(s);
        }
        let lookup = sectors.iter().enumerate().map(|(i, s)| (s.dirs.clone(), i)).collect();
        Self { level, sectors, dim: offset, lookup }
    }

    pub fn sector_of_dirs(&self, dirs: &[usize]) -> Option<usize> {
        self.lookup.get(dirs).copied()
    }

    /// Row-major mixed-radix index within the sector plus the sector offset.
    pub fn flat_index(&self, sector: usize, coords: &[usize]) -> Result<usize> {
        let s = self
            .sectors
            .get(sector)
            .ok_or_else(|| Error::contract("flat_index", format!("sector {sector} out of {}", self.sectors.len())))?;
        if coords.len() != s.shape.len() {
            return Err(Error::contract("flat_index", format!("{} coordinates for {} directions", coords.len(), s.shape.len())));
        }
        let mut idx = 0;
        for (&c, &r) in coords.iter().zip(&s.shape) {
            if c >= r {
                return Err(Error::contract("flat_index", format!("coordinate {c} out of range {r}")));
            }
            idx = idx * r + c;
        }
        Ok(s.offset + idx)
    }

    /// Inverse of [`flat_index`](Self::flat_index): `(sector, coords)`.
    pub fn coords_of(&self, index: usize) -> Result<(usize, Vec<usize>)> {
        if index >= self.dim {
            return Err(Error::contract("coords_of", format!("index {index} out of {}", self.dim)));
        }
        let mu = self.sectors.partition_point(|s| s.offset <= index) - 1;
        let s = &self.sectors[mu];
        let mut rem = index - s.offset;
        let mut coords = vec![0; s.shape.len()];
        for (c, &r) in coords.iter_mut().zip(&s.shape).rev() {
            *c = rem % r;
            rem /= r;
        }
        Ok((mu, coords))
    }

    /// Places `⊗_d vectors[d]` into sector `mu` as a vector on the whole level.
    pub fn tensor(&self, mu: usize, vectors: &[&BitVec]) -> BitVec {
        let s = &self.sectors[mu];
        let mut out = BitVec::zeros(self.dim);
        let supports: Vec<Vec<usize>> = vectors.iter().map(|v| v.support()).collect();
        for (v, &len) in vectors.iter().zip(&s.shape) {
            assert_eq!(v.len(), len, "tensor factor length");
        }
        for_each_product(&supports, |coords| {
            let mut idx = 0;
            for (&c, &r) in coords.iter().zip(&s.shape) {
                idx = idx * r + c;
            }
            out.flip(s.offset + idx);
        });
        out
    }
}

/// All `k`-subsets of `0..t` in lexicographic order.
pub fn subsets(t: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, t: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..t {
            if t - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, t, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= t {
        rec(0, t, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Calls `f` on every tuple of the cartesian product of `choices`, in
/// lexicographic order.
pub(crate) fn for_each_product(choices: &[Vec<usize>], mut f: impl FnMut(&[usize])) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut pos = vec![0usize; choices.len()];
    let mut cur: Vec<usize> = choices.iter().map(|c| c[0]).collect();
    loop {
        f(&cur);
        let mut d = choices.len();
        loop {
            if d == 0 {
                return;
            }
            d -= 1;
            pos[d] += 1;
            if pos[d] < choices[d].len() {
                cur[d] = choices[d][pos[d]];
                break;
            }
            pos[d] = 0;
            cur[d] = choices[d][0];
        }
    }
}

/// The t-dimensional product complex with all boundary maps materialised.
#[derive(Debug, Clone)]
pub struct ProductComplex {
    factors: Vec<OneComplex>,
    levels: Vec<SectorTable>,
    /// `boundaries[l-1] = ∂_l : F_l → F_{l-1}` for `l = 1..=t`.
    boundaries: Vec<BinaryMatrix>,
}

impl ProductComplex {
    pub fn build(factors: Vec<OneComplex>) -> Result<Self> {
        let t = factors.len();
        if t == 0 || t > MAX_FACTORS {
            return Err(Error::contract("build_product", format!("t = {t} outside 1..={MAX_FACTORS}")));
        }
        let levels: Vec<SectorTable> = (0..=t).map(|l| SectorTable::new(l, &factors)).collect();
        let column_supports: Vec<Vec<Vec<usize>>> =
            factors.iter().map(|f| (0..f.n()).map(|c| f.matrix().column(c).support()).collect()).collect();

        let mut boundaries = Vec::with_capacity(t);
        for l in 1..=t {
            let (src, dst) = (&levels[l], &levels[l - 1]);
            let mut b = BinaryMatrix::zeros(dst.dim, src.dim);
            for s in &src.sectors {
                for &i in &s.dirs {
                    let target_dirs: Vec<usize> = s.dirs.iter().copied().filter(|&d| d != i).collect();
                    let mu_t = dst.sector_of_dirs(&target_dirs).expect("target sector exists");
                    let ts = &dst.sectors[mu_t];
                    for local in 0..s.size() {
                        let coords = unflatten(local, &s.shape);
                        let mut tc = coords.clone();
                        for &r in &column_supports[i][coords[i]] {
                            tc[i] = r;
                            b.flip(ts.offset + flatten(&tc, &ts.shape), s.offset + local);
                        }
                    }
                }
            }
            boundaries.push(b);
        }
        for l in 1..t {
            if !boundaries[l - 1].matmul(&boundaries[l])?.is_zero() {
                return Err(Error::Internal(format!("boundary composition nonzero at level {l}")));
            }
        }
        Ok(Self { factors, levels, boundaries })
    }

    pub fn t(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[OneComplex] {
        &self.factors
    }

    pub fn level(&self, l: usize) -> &SectorTable {
        &self.levels[l]
    }

    pub fn dim(&self, l: usize) -> usize {
        self.levels[l].dim
    }

    /// `∂_l : F_l → F_{l−1}`, for `1 ≤ l ≤ t`.
    pub fn boundary(&self, l: usize) -> Result<&BinaryMatrix> {
        if l == 0 || l > self.t() {
            return Err(Error::LevelOutOfRange { level: l, t: self.t() });
        }
        Ok(&self.boundaries[l - 1])
    }

    pub fn flat_index(&self, level: usize, sector: usize, coords: &[usize]) -> Result<usize> {
        self.levels[level].flat_index(sector, coords)
    }

    pub fn coords_of(&self, level: usize, index: usize) -> Result<(usize, Vec<usize>)> {
        self.levels[level].coords_of(index)
    }

    /// Flat indices of all qubits on the hyperplane, ascending.
    pub fn hyperplane_support(&self, h: &Hyperplane) -> Result<Vec<usize>> {
        self.validate(h)?;
        let s = &self.levels[h.level].sectors[h.sector];
        let choices: Vec<Vec<usize>> = (0..self.t())
            .map(|d| match h.fixed_dirs.iter().position(|&f| f == d) {
                Some(p) => vec![h.fixed_values[p]],
                None => (0..s.shape[d]).collect(),
            })
            .collect();
        let mut out = Vec::new();
        for_each_product(&choices, |c| out.push(s.offset + flatten(c, &s.shape)));
        Ok(out)
    }

    pub fn validate(&self, h: &Hyperplane) -> Result<()> {
        let table = self
            .levels
            .get(h.level)
            .ok_or_else(|| Error::contract("hyperplane", format!("level {} out of range", h.level)))?;
        let s = table
            .sectors
            .get(h.sector)
            .ok_or_else(|| Error::contract("hyperplane", format!("sector {} out of range", h.sector)))?;
        if h.fixed_dirs.len() != h.fixed_values.len() || !h.fixed_dirs.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::contract("hyperplane", "fixed_dirs must be strictly increasing and match fixed_values"));
        }
        for (&d, &v) in h.fixed_dirs.iter().zip(&h.fixed_values) {
            if d >= self.t() || v >= s.shape[d] {
                return Err(Error::contract("hyperplane", format!("fixed value {v} on direction {d} out of range")));
            }
        }
        Ok(())
    }

    /// Number of distinct value assignments on `dirs` among the support
    /// points of `v` inside sector `mu` of level `level`.
    pub fn block_hamming_weight(&self, level: usize, v: &BitVec, mu: usize, dirs: &[usize]) -> Result<usize> {
        let table = &self.levels[level];
        if v.len() != table.dim {
            return Err(Error::contract("block_hamming_weight", "vector length differs from level dimension"));
        }
        let s = &table.sectors[mu];
        let mut seen = BTreeSet::new();
        for i in v.ones().filter(|&i| i >= s.offset && i < s.offset + s.size()) {
            let coords = unflatten(i - s.offset, &s.shape);
            seen.insert(dirs.iter().map(|&d| coords[d]).collect::<Vec<_>>());
        }
        Ok(seen.len())
    }

    /// Default hypertube thresholds `min(d_i, d_iᵀ)`; directions whose
    /// kernels are both trivial get threshold 1.
    pub fn default_thresholds(&self) -> Result<Vec<usize>> {
        self.factors
            .iter()
            .map(|f| {
                let t = [f.d()?, f.d_transpose()?].into_iter().flatten().min().unwrap_or(1);
                Ok(t)
            })
            .collect()
    }

    pub fn classify_hypertube(
        &self,
        level: usize,
        v: &BitVec,
        mu: usize,
        thresholds: Option<&[usize]>,
    ) -> Result<Hypertube> {
        let thresholds = match thresholds {
            Some(t) if t.len() == self.t() => t.to_vec(),
            Some(_) => return Err(Error::contract("classify_hypertube", "one threshold per direction required")),
            None => self.default_thresholds()?,
        };
        let mut block_weights = Vec::with_capacity(self.t());
        let mut thin_dirs = Vec::new();
        for d in 0..self.t() {
            let w = self.block_hamming_weight(level, v, mu, &[d])?;
            if w < thresholds[d] {
                thin_dirs.push(d);
            }
            block_weights.push(w);
        }
        Ok(Hypertube { sector: mu, dimension: self.t() - thin_dirs.len(), thin_dirs, thresholds, block_weights })
    }
}

pub(crate) fn flatten(coords: &[usize], shape: &[usize]) -> usize {
    coords.iter().zip(shape).fold(0, |acc, (&c, &r)| acc * r + c)
}

pub(crate) fn unflatten(mut idx: usize, shape: &[usize]) -> Vec<usize> {
    let mut coords = vec![0; shape.len()];
    for (c, &r) in coords.iter_mut().zip(shape).rev() {
        *c = idx % r;
        idx /= r;
    }
    coords
}

/// Affine sub-grid of a sector obtained by fixing the coordinates on
/// `fixed_dirs` (the orientation).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Hyperplane {
    pub level: usize,
    pub sector: usize,
    pub fixed_dirs: Vec<usize>,
    pub fixed_values: Vec<usize>,
}

impl Hyperplane {
    pub fn dimension(&self, t: usize) -> usize {
        t - self.fixed_dirs.len()
    }

    pub fn value_on(&self, dir: usize) -> Option<usize> {
        self.fixed_dirs.iter().position(|&d| d == dir).map(|p| self.fixed_values[p])
    }

    /// Intersection within one sector; `None` when two fixed values clash.
    pub fn intersect(&self, other: &Hyperplane) -> Result<Option<Hyperplane>> {
        if self.level != other.level || self.sector != other.sector {
            return Err(Error::DisjointSectors);
        }
        let mut merged: Vec<(usize, usize)> =
            self.fixed_dirs.iter().copied().zip(self.fixed_values.iter().copied()).collect();
        for (&d, &v) in other.fixed_dirs.iter().zip(&other.fixed_values) {
            match self.value_on(d) {
                Some(existing) if existing != v => return Ok(None),
                Some(_) => {}
                None => merged.push((d, v)),
            }
        }
        merged.sort_unstable();
        Ok(Some(Hyperplane {
            level: self.level,
            sector: self.sector,
            fixed_dirs: merged.iter().map(|p| p.0).collect(),
            fixed_values: merged.iter().map(|p| p.1).collect(),
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypertube {
    pub sector: usize,
    pub thin_dirs: Vec<usize>,
    pub thresholds: Vec<usize>,
    pub block_weights: Vec<usize>,
    /// Number of thick directions.
    pub dimension: usize,
}
