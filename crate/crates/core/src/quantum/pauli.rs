//! Generalized Pauli matrices `X|i⟩ = |i+1⟩`, `Z|i⟩ = ω^i |i⟩`.

use num_complex::Complex64;

use crate::cyclotomic::{CycMatrix, CycNum, Cyclotomic};
use crate::dft::root_table;
use crate::error::{Error, Result};
use crate::params::is_prime;

use super::linalg::ComplexMatrix;

pub fn pauli_x(d: u32) -> ComplexMatrix {
    let d = d as usize;
    ComplexMatrix::from_fn(d, |i, j| {
        Complex64::new(((j + 1) % d == i) as u8 as f64, 0.0)
    })
}

pub fn pauli_z(d: u32) -> ComplexMatrix {
    ComplexMatrix::diagonal(&root_table(d))
}

pub fn pauli_x_exact(ring: Cyclotomic) -> CycMatrix {
    let d = ring.d() as usize;
    CycMatrix::from_fn(d, |i, j| ring.int(((j + 1) % d == i) as i64))
}

pub fn pauli_z_exact(ring: Cyclotomic) -> CycMatrix {
    CycMatrix::from_fn(ring.d() as usize, |i, j| {
        if i == j {
            ring.root(i as i64)
        } else {
            ring.zero()
        }
    })
}

/// `X^(d-1-r) Z^r`, the operator attached to `A^(d-1-r) B^r`.
pub fn monomial_operator(d: u32, r: u32) -> ComplexMatrix {
    pauli_x(d).pow(d - 1 - r).matmul(&pauli_z(d).pow(r))
}

pub fn monomial_operator_exact(ring: Cyclotomic, r: u32) -> Result<CycMatrix> {
    let d = ring.d();
    pauli_x_exact(ring)
        .pow(d - 1 - r)?
        .checked_mul(&pauli_z_exact(ring).pow(r)?)
}

/// Closed-form spectrum of `XZ^k`: the `ω^j`, rotated by `ρ = exp(iπ/d)`
/// when `d` is even and `k` odd.
pub fn xz_eigenvalues(d: u32, k: u32) -> Vec<Complex64> {
    let roots = root_table(d);
    let twist = if d.is_multiple_of(2) && k % 2 == 1 {
        Complex64::from_polar(1.0, std::f64::consts::PI / d as f64)
    } else {
        Complex64::new(1.0, 0.0)
    };
    roots.into_iter().map(|w| w * twist).collect()
}

/// `(XZ^k)^e = ω^(k e (e-1)/2) X^e Z^(ke)` within `1e-12`.
pub fn pauli_power_identity(d: u32, k: u32, e: u32) -> bool {
    let xzk = pauli_x(d).matmul(&pauli_z(d).pow(k));
    let lhs = xzk.pow(e);
    let phase_exp = (k as u64 * e as u64 * (e as u64).saturating_sub(1) / 2) % d as u64;
    let rhs = pauli_x(d)
        .pow(e)
        .matmul(&pauli_z(d).pow(k * e % d))
        .scale(root_table(d)[phase_exp as usize]);
    lhs.max_abs_diff(&rhs) <= 1e-12
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Observable {
    Z,
    /// `X Z^k`.
    XZ(u32),
}

/// How to read off `E(A^(d-1-r) B^r)` from a single measurement: measure
/// `observable`, raise outcomes to `power` and multiply by `phase`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementPlan {
    pub r: u32,
    pub observable: Observable,
    pub phase: CycNum,
    pub power: u32,
}

pub fn measurement_plan(d: u32, r: u32) -> Result<MeasurementPlan> {
    if !is_prime(d) {
        return Err(Error::CompositeOrder(d));
    }
    if r >= d {
        return Err(Error::InvalidArgument(format!("r = {r} not in 0..{d}")));
    }
    let ring = Cyclotomic::new(d)?;
    if r == d - 1 {
        return Ok(MeasurementPlan {
            r,
            observable: Observable::Z,
            phase: ring.one(),
            power: d - 1,
        });
    }
    let e = d - 1 - r;
    // e is a unit mod d; k = 0 when r = 0
    let k = (0..d).find(|k| k * e % d == r).expect("d is prime");
    let exponent = k as i64 * e as i64 * (e as i64 - 1) / 2;
    Ok(MeasurementPlan {
        r,
        observable: Observable::XZ(k),
        phase: ring.root(-exponent),
        power: e,
    })
}

impl MeasurementPlan {
    /// `phase · O^power` as an exact matrix.
    pub fn operator(&self) -> Result<CycMatrix> {
        let ring = self.phase.ring();
        let base = match self.observable {
            Observable::Z => pauli_z_exact(ring),
            Observable::XZ(k) => pauli_x_exact(ring).checked_mul(&pauli_z_exact(ring).pow(k)?)?,
        };
        Ok(base.pow(self.power)?.scale(&self.phase))
    }

    /// `phase · O^power = X^(d-1-r) Z^r` exactly.
    pub fn is_correct(&self) -> Result<bool> {
        Ok(self.operator()? == monomial_operator_exact(self.phase.ring(), self.r)?)
    }
}
