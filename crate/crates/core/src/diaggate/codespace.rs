use super::poly::{difference, Parity, PhasePolynomial};
use crate::css::{CssCode, PauliType};
use crate::error::{Error, Result};
use crate::f2la::{BinaryMatrix, BitVec};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodespaceVerdict {
    pub preserves: bool,
    /// `(copy, row of Hx)` of the first violating generator.
    pub witness: Option<(usize, usize)>,
}

fn check_copies(f: &PhasePolynomial, code: &CssCode, copies: usize, op: &'static str) -> Result<()> {
    if copies == 0 || f.nvars() != code.n() * copies {
        return Err(Error::contract(
            op,
            format!("{} variables for {} copies of {} qubits", f.nvars(), copies, code.n()),
        ));
    }
    Ok(())
}

/// Parities expressing every physical bit of `copies` blocks in terms of the
/// rows of `blocks`, stacked; block `b` of copy `c` gets the variable range
/// starting at `offsets[b] + c·rows(blocks[b])`.
fn parity_map(n: usize, copies: usize, blocks: &[(&BinaryMatrix, usize)]) -> Vec<Parity> {
    let mut map = vec![Parity::default(); n * copies];
    for c in 0..copies {
        for &(m, offset) in blocks {
            let base = offset + c * m.rows();
            for r in 0..m.rows() {
                for i in m.row(r).ones() {
                    map[c * n + i].vars.push((base + r) as u32);
                }
            }
        }
    }
    for p in map.iter_mut() {
        p.vars.sort_unstable();
    }
    map
}

/// Decides `UΠU† = Π` for the diagonal gate `f` on `copies` blocks.
///
/// Each X generator `g` must leave `f` unchanged on codewords, i.e.
/// `f(x ⊕ g) − f(x)` must vanish identically on `ker Hz`. This is checked
/// by substituting `x = B·u` with `B` a basis of `ker Hz` per copy.
pub fn preserves_codespace(f: &PhasePolynomial, code: &CssCode, copies: usize) -> Result<CodespaceVerdict> {
    check_copies(f, code, copies, "preserves_codespace")?;
    let n = code.n();
    let basis = code.hz().kernel_basis();
    let map = parity_map(n, copies, &[(&basis, 0)]);
    let nu = basis.rows() * copies;
    let hx = code.hx();
    let jobs: Vec<(usize, usize)> = (0..copies).flat_map(|c| (0..hx.rows()).map(move |r| (c, r))).collect();
    let violations: Vec<Option<(usize, usize)>> = jobs
        .par_iter()
        .map(|&(c, r)| -> Result<Option<(usize, usize)>> {
            let mut g = BitVec::zeros(n * copies);
            for i in hx.row(r).ones() {
                g.set(c * n + i, true);
            }
            let d = difference(f, &g)?;
            if d.is_zero() {
                return Ok(None);
            }
            let on_code = d.substitute(&map, nu)?;
            Ok((!on_code.is_zero()).then_some((c, r)))
        })
        .collect::<Result<_>>()?;
    let witness = violations.into_iter().flatten().next();
    Ok(CodespaceVerdict { preserves: witness.is_none(), witness })
}

/// Logical action of a codespace-preserving diagonal gate.
///
/// Substitutes `x = L·a + G·b` per copy (`L` the logical X basis, `G` a basis
/// of `rowspace(Hx)`), requires every `b` term to cancel and returns the
/// polynomial in the logical variables, ordered `copy·k + j`.
pub fn logical_action(f: &PhasePolynomial, code: &CssCode, copies: usize) -> Result<PhasePolynomial> {
    check_copies(f, code, copies, "logical_action")?;
    let n = code.n();
    let k = code.k();
    let lx = code.logical_basis()?.matrix(PauliType::X);
    let lx = if lx.cols() == n { lx } else { BinaryMatrix::zeros(0, n) };
    let rr = code.hx().rref();
    let g = rr.reduced.select_rows(&(0..rr.rank).collect::<Vec<_>>());
    let na = k * copies;
    let map = parity_map(n, copies, &[(&lx, 0), (&g, na)]);
    let full = f.substitute(&map, na + g.rows() * copies)?;
    full.restrict_vars(na).ok_or_else(|| {
        Error::contract("logical_action", "circuit does not preserve the codespace: stabilizer coordinates remain")
    })
}
