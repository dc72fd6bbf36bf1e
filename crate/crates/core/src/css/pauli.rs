use crate::error::{Error, Result};
use crate::f2la::BitVec;
use serde::Serialize;
use std::fmt;
use std::ops::Mul;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity((self == Sign::Minus) ^ (rhs == Sign::Minus))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PauliType {
    X,
    Z,
}

impl fmt::Display for PauliType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PauliType::X => "X",
            PauliType::Z => "Z",
        })
    }
}

/// `sign · X^x Z^z` on `n` qubits. Phases of `i` are not tracked.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    pub x: BitVec,
    pub z: BitVec,
    pub sign: Sign,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self { x: BitVec::zeros(n), z: BitVec::zeros(n), sign: Sign::Plus }
    }

    pub fn x_type(x: BitVec) -> Self {
        let n = x.len();
        Self { x, z: BitVec::zeros(n), sign: Sign::Plus }
    }

    pub fn z_type(z: BitVec) -> Self {
        let n = z.len();
        Self { x: BitVec::zeros(n), z, sign: Sign::Plus }
    }

    pub fn of_type(kind: PauliType, part: BitVec) -> Self {
        match kind {
            PauliType::X => Self::x_type(part),
            PauliType::Z => Self::z_type(part),
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn support(&self) -> Vec<usize> {
        let mut u = self.x.clone();
        for i in self.z.ones() {
            u.set(i, true);
        }
        u.support()
    }

    pub fn weight(&self) -> usize {
        self.support().len()
    }

    /// The part of the given type.
    pub fn part(&self, kind: PauliType) -> &BitVec {
        match kind {
            PauliType::X => &self.x,
            PauliType::Z => &self.z,
        }
    }

    fn check_len(&self, other: &PauliOperator, op: &'static str) -> Result<()> {
        if self.n() != other.n() || self.z.len() != self.x.len() || other.z.len() != other.x.len() {
            return Err(Error::contract(op, format!("lengths {} and {}", self.n(), other.n())));
        }
        Ok(())
    }
}

/// `⟨x_P, z_Q⟩ + ⟨z_P, x_Q⟩ mod 2`.
pub fn symplectic_product(p: &PauliOperator, q: &PauliOperator) -> Result<bool> {
    p.check_len(q, "symplectic_product")?;
    Ok(p.x.dot(&q.z) ^ p.z.dot(&q.x))
}

/// Product `P·Q`, reordered into `sign · X^x Z^z` form.
pub fn pauli_mul(p: &PauliOperator, q: &PauliOperator) -> Result<PauliOperator> {
    p.check_len(q, "pauli_mul")?;
    // Z^{z_p} X^{x_q} = (-1)^{z_p·x_q} X^{x_q} Z^{z_p}
    let swap = Sign::from_parity(p.z.dot(&q.x));
    Ok(PauliOperator { x: p.x.xor(&q.x), z: p.z.xor(&q.z), sign: p.sign * q.sign * swap })
}

/// `PQP†Q† = ±I`; returns the scalar.
pub fn group_commutator(p: &PauliOperator, q: &PauliOperator) -> Result<Sign> {
    Ok(Sign::from_parity(symplectic_product(p, q)?))
}
