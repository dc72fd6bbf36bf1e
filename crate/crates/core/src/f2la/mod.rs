//! Bit-packed linear algebra over GF(2).

mod bitvec;
mod matrix;
pub mod text;

pub use bitvec::BitVec;
pub use matrix::{BinaryMatrix, EchelonBasis, RrefResult};

pub fn rref(m: &BinaryMatrix) -> RrefResult {
    m.rref()
}

pub fn rank(m: &BinaryMatrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &BinaryMatrix) -> BinaryMatrix {
    m.kernel_basis()
}

pub fn transpose(m: &BinaryMatrix) -> BinaryMatrix {
    m.transpose()
}

pub fn kron(a: &BinaryMatrix, b: &BinaryMatrix) -> BinaryMatrix {
    a.kron(b)
}

pub fn matmul(a: &BinaryMatrix, b: &BinaryMatrix) -> crate::Result<BinaryMatrix> {
    a.matmul(b)
}

pub fn solve(m: &BinaryMatrix, b: &BitVec) -> crate::Result<Option<BitVec>> {
    m.solve(b)
}
