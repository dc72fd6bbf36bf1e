use super::pauli::{PauliOperator, PauliType};
use super::CssCode;
use crate::error::{Error, Result};
use crate::f2la::{BinaryMatrix, BitVec, EchelonBasis};
use crate::product::{for_each_product, Hyperplane, ProductComplex};
use serde::Serialize;
use std::collections::BTreeSet;

/// Where a canonical representative came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub hyperplane: Hyperplane,
    /// Pivot (unit-vector) position on each fixed direction.
    pub puncture_indices: Vec<usize>,
    /// Kernel-basis vector used on each free direction.
    pub kernel_indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalRep {
    pub kind: PauliType,
    pub op: PauliOperator,
    pub provenance: Option<Provenance>,
}

impl LogicalRep {
    pub fn part(&self) -> &BitVec {
        self.op.part(self.kind)
    }
}

#[derive(Debug, Clone)]
pub struct LogicalBasis {
    pub x_reps: Vec<LogicalRep>,
    pub z_reps: Vec<LogicalRep>,
    /// `pairing[i][j] = ⟨X_i, Z_j⟩`; the identity for every basis built here.
    pub pairing: BinaryMatrix,
}

impl LogicalBasis {
    pub fn k(&self) -> usize {
        self.x_reps.len()
    }

    pub fn reps(&self, kind: PauliType) -> &[LogicalRep] {
        match kind {
            PauliType::X => &self.x_reps,
            PauliType::Z => &self.z_reps,
        }
    }

    /// Rows are the parts of the representatives of the given type.
    pub fn matrix(&self, kind: PauliType) -> BinaryMatrix {
        let rows: Vec<BitVec> = self.reps(kind).iter().map(|r| r.part().clone()).collect();
        let n = rows.first().map_or(0, |r| r.len());
        BinaryMatrix::from_rows(&rows, n)
    }
}

fn pairing(x: &[LogicalRep], z: &[LogicalRep]) -> BinaryMatrix {
    BinaryMatrix::from_fn(x.len(), z.len(), |i, j| x[i].part().dot(z[j].part()))
}

pub(super) fn canonical(code: &CssCode, pc: &ProductComplex, level: usize) -> Result<LogicalBasis> {
    let t = pc.t();
    let f = pc.factors();
    let table = pc.level(level);
    let mut x_reps = Vec::new();
    let mut z_reps = Vec::new();
    for (mu, sector) in table.sectors.iter().enumerate() {
        let ranges: Vec<Vec<usize>> = (0..t)
            .map(|d| {
                let r = if sector.contains_dir(d) { f[d].k() } else { f[d].k_transpose() };
                (0..r).collect()
            })
            .collect();
        let free_dirs: Vec<usize> = (0..t).filter(|&d| !sector.contains_dir(d)).collect();
        let mut tuples = Vec::new();
        for_each_product(&ranges, |a| tuples.push(a.to_vec()));
        for a in tuples {
            let mut xv = Vec::with_capacity(t);
            let mut zv = Vec::with_capacity(t);
            for d in 0..t {
                if sector.contains_dir(d) {
                    xv.push(BitVec::unit(f[d].n(), f[d].kernel.pivots[a[d]]));
                    zv.push(f[d].kernel.vectors[a[d]].clone());
                } else {
                    xv.push(f[d].cokernel.vectors[a[d]].clone());
                    zv.push(BitVec::unit(f[d].m(), f[d].cokernel.pivots[a[d]]));
                }
            }
            let x = table.tensor(mu, &xv.iter().collect::<Vec<_>>());
            let z = table.tensor(mu, &zv.iter().collect::<Vec<_>>());

            let xp: Vec<usize> = sector.dirs.iter().map(|&d| f[d].kernel.pivots[a[d]]).collect();
            x_reps.push(LogicalRep {
                kind: PauliType::X,
                op: PauliOperator::x_type(x),
                provenance: Some(Provenance {
                    hyperplane: Hyperplane {
                        level,
                        sector: mu,
                        fixed_dirs: sector.dirs.clone(),
                        fixed_values: xp.clone(),
                    },
                    puncture_indices: xp,
                    kernel_indices: free_dirs.iter().map(|&d| a[d]).collect(),
                }),
            });
            let zq: Vec<usize> = free_dirs.iter().map(|&d| f[d].cokernel.pivots[a[d]]).collect();
            z_reps.push(LogicalRep {
                kind: PauliType::Z,
                op: PauliOperator::z_type(z),
                provenance: Some(Provenance {
                    hyperplane: Hyperplane { level, sector: mu, fixed_dirs: free_dirs.clone(), fixed_values: zq.clone() },
                    puncture_indices: zq,
                    kernel_indices: sector.dirs.iter().map(|&d| a[d]).collect(),
                }),
            });
        }
    }
    if x_reps.len() != code.k() {
        return Err(Error::Internal(format!("canonical basis has {} elements, k = {}", x_reps.len(), code.k())));
    }
    let pairing = pairing(&x_reps, &z_reps);
    if pairing != BinaryMatrix::identity(x_reps.len()) {
        return Err(Error::Internal("canonical pairing is not the identity".into()));
    }
    Ok(LogicalBasis { x_reps, z_reps, pairing })
}

/// Complement of `rowspace(stab)` inside `ker check`.
fn complement(stab: &BinaryMatrix, check: &BinaryMatrix) -> Vec<BitVec> {
    let mut span = EchelonBasis::from_matrix(stab);
    let kernel = check.kernel_basis();
    let mut out = Vec::new();
    for r in 0..kernel.rows() {
        let v = kernel.row(r);
        if span.insert(v.clone()) {
            out.push(v);
        }
    }
    out
}

/// Basis for codes without product structure: X logicals complete
/// `rowspace(Hx)` inside `ker Hz`; Z logicals are recombined so that the
/// pairing is the identity.
pub(super) fn generic(code: &CssCode) -> Result<LogicalBasis> {
    let xs = complement(code.hx(), code.hz());
    let zs = complement(code.hz(), code.hx());
    let k = xs.len();
    if k != code.k() || zs.len() != k {
        return Err(Error::Internal("logical complement has the wrong dimension".into()));
    }
    let p = BinaryMatrix::from_fn(k, k, |i, j| xs[i].dot(&zs[j]));
    let m = p.transpose().inverse().ok_or_else(|| Error::Internal("logical pairing is singular".into()))?;
    let zs: Vec<BitVec> = (0..k)
        .map(|j| {
            let mut z = BitVec::zeros(code.n());
            for l in m.row(j).ones() {
                z.xor_assign(&zs[l]);
            }
            z
        })
        .collect();
    let wrap = |kind, v: BitVec| LogicalRep { kind, op: PauliOperator::of_type(kind, v), provenance: None };
    let x_reps: Vec<LogicalRep> = xs.into_iter().map(|v| wrap(PauliType::X, v)).collect();
    let z_reps: Vec<LogicalRep> = zs.into_iter().map(|v| wrap(PauliType::Z, v)).collect();
    let pairing = pairing(&x_reps, &z_reps);
    debug_assert_eq!(pairing, BinaryMatrix::identity(k));
    Ok(LogicalBasis { x_reps, z_reps, pairing })
}

/// Equivalent representative of a canonical `rep` avoiding every hyperplane
/// in `avoid`.
///
/// The avoided hyperplanes must share the sector and orientation of `rep`.
/// For a fixed direction `i` of `rep`, the avoided values on the line
/// through `rep` in direction `i` are cleaned with the seed code of that
/// direction, and the corresponding stabilizer is assembled one level away.
pub fn alternative_representative(code: &CssCode, rep: &LogicalRep, avoid: &[Hyperplane]) -> Result<PauliOperator> {
    let pc = code.complex().ok_or(Error::NoProductStructure)?;
    let prov = rep
        .provenance
        .as_ref()
        .ok_or_else(|| Error::contract("alternative_representative", "representative has no provenance"))?;
    let home = &prov.hyperplane;
    for h in avoid {
        pc.validate(h)?;
        if h.level != home.level || h.sector != home.sector || h.fixed_dirs != home.fixed_dirs {
            return Err(Error::contract(
                "alternative_representative",
                "avoided hyperplanes must share sector and orientation with the representative",
            ));
        }
    }
    let support: BTreeSet<usize> = rep.part().ones().collect();
    let mut touched = false;
    for h in avoid {
        if pc.hyperplane_support(h)?.iter().any(|q| support.contains(q)) {
            touched = true;
            break;
        }
    }
    if !touched {
        return Ok(rep.op.clone());
    }

    let mut first_failure = None;
    for (slot, &dir) in home.fixed_dirs.iter().enumerate() {
        let gamma: Vec<usize> = avoid
            .iter()
            .filter(|h| {
                h.fixed_dirs
                    .iter()
                    .zip(&h.fixed_values)
                    .all(|(&d, &v)| d == dir || home.value_on(d) == Some(v))
            })
            .map(|h| h.fixed_values[slot])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let home_value = home.fixed_values[slot];
        match deform_along(code, pc, rep, prov, dir, &gamma, home_value)? {
            Some(op) => {
                for h in avoid {
                    if pc.hyperplane_support(h)?.iter().any(|&q| op.part(rep.kind).get(q)) {
                        return Err(Error::Internal("deformed representative still meets an avoided hyperplane".into()));
                    }
                }
                return Ok(op);
            }
            None => {
                first_failure.get_or_insert((home.fixed_values.clone(), gamma));
            }
        }
    }
    let (line, residual) = first_failure.unwrap_or_default();
    Err(Error::CleaningInfeasible { line, residual })
}

fn deform_along(
    code: &CssCode,
    pc: &ProductComplex,
    rep: &LogicalRep,
    prov: &Provenance,
    dir: usize,
    gamma: &[usize],
    home_value: usize,
) -> Result<Option<PauliOperator>> {
    let t = pc.t();
    let f = pc.factors();
    let home = &prov.hyperplane;
    let pattern = BitVec::from_bools(&gamma.iter().map(|&g| g == home_value).collect::<Vec<_>>());
    // X reps carry e_p on fixed dirs and ζ on free ones; Z reps carry ξ on
    // free dirs and f_q on fixed ones. Cleaning uses ker A (X) or ker Aᵀ (Z).
    let (seed, lift) = match rep.kind {
        PauliType::X => (f[dir].kernel_code(), f[dir].matrix().transpose()),
        PauliType::Z => (f[dir].cokernel_code(), f[dir].matrix().clone()),
    };
    let h = match seed.row_space_with_pattern(gamma, &pattern) {
        Ok(h) => h,
        Err(Error::NotCleanable) => return Ok(None),
        Err(e) => return Err(e),
    };
    let y_dir = lift
        .solve(&h)?
        .ok_or_else(|| Error::Internal("row-space element has no preimage".into()))?;

    let sector_dirs = &pc.level(home.level).sectors[home.sector].dirs;
    let free: Vec<usize> = (0..t).filter(|d| !home.fixed_dirs.contains(d)).collect();
    let mut vectors = Vec::with_capacity(t);
    for d in 0..t {
        let v = if d == dir {
            y_dir.clone()
        } else if let Some(val) = home.value_on(d) {
            match rep.kind {
                PauliType::X => BitVec::unit(f[d].n(), val),
                PauliType::Z => BitVec::unit(f[d].m(), val),
            }
        } else {
            let idx = prov.kernel_indices[free.iter().position(|&x| x == d).expect("free direction")];
            match rep.kind {
                PauliType::X => f[d].cokernel.vectors[idx].clone(),
                PauliType::Z => f[d].kernel.vectors[idx].clone(),
            }
        };
        vectors.push(v);
    }
    let refs: Vec<&BitVec> = vectors.iter().collect();
    let (stab_level, stab_dirs): (usize, Vec<usize>) = match rep.kind {
        PauliType::X => (home.level - 1, sector_dirs.iter().copied().filter(|&d| d != dir).collect()),
        PauliType::Z => {
            let mut d = sector_dirs.clone();
            d.push(dir);
            d.sort_unstable();
            (home.level + 1, d)
        }
    };
    let table = pc.level(stab_level);
    let mu = table
        .sector_of_dirs(&stab_dirs)
        .ok_or_else(|| Error::Internal("stabilizer sector missing".into()))?;
    let coeffs = table.tensor(mu, &refs);
    let stabilizer = code.stabilizers(rep.kind).combine_rows(&coeffs)?;
    let mut op = rep.op.clone();
    match rep.kind {
        PauliType::X => op.x.xor_assign(&stabilizer),
        PauliType::Z => op.z.xor_assign(&stabilizer),
    }
    Ok(Some(op))
}
