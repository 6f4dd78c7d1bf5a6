//! Quantum counterparts `Q_f = Σ_r f̂(r) ⊗_i X^(d-1-r_i) Z^(r_i)` and their
//! violations of the facet inequalities.
//!
//! Tensor factors are ordered with party 1 leftmost, so in a basis state
//! `|s_1 ... s_n⟩` party 1 is the most significant digit.

use num_complex::Complex64;

use crate::bellpoly::DitFunction;
use crate::cyclotomic::{CycMatrix, Cyclotomic};
use crate::error::{check_len, Error, Result};
use crate::params::Params;
use crate::polytope::{self, Convention, CorrelationVector};

pub mod linalg;
pub mod pauli;

pub use linalg::{hermitian_eigs, ComplexMatrix, HermitianEigen};
pub use pauli::{
    measurement_plan, monomial_operator, pauli_power_identity, pauli_x, pauli_z, xz_eigenvalues,
    MeasurementPlan, Observable,
};

/// For the entry `(row, col)` of `⊗_i X^(d-1-r_i) Z^(r_i)`, the unique `r`
/// with a non-zero entry and the exponent of that entry.
fn term_at(params: &Params, row: usize, col: usize) -> (usize, u32) {
    let d = params.d() as usize;
    let n = params.n() as usize;
    let (mut i, mut j) = (row, col);
    let mut r_digits = vec![0usize; n];
    let mut phase = 0usize;
    for p in (0..n).rev() {
        let (ip, jp) = (i % d, j % d);
        i /= d;
        j /= d;
        // X^a Z^b has entry ω^(b j) at (j + a, j)
        let a = (ip + d - jp) % d;
        let rp = d - 1 - a;
        r_digits[p] = rp;
        phase += rp * jp;
    }
    let rank = r_digits.iter().rev().fold(0, |acc, &x| acc * d + x);
    (rank, (phase % d) as u32)
}

/// Exact `Q_f` (prime `d`).
pub fn build_q_exact(f: &DitFunction, dim_limit: usize) -> Result<CycMatrix> {
    let params = f.params();
    params.check_matrix_dim(dim_limit)?;
    let hat = f.spectrum()?;
    Ok(CycMatrix::from_fn(params.dim(), |row, col| {
        let (r, k) = term_at(params, row, col);
        hat[r].mul_root(k as i64)
    }))
}

pub fn build_q(f: &DitFunction, dim_limit: usize) -> Result<ComplexMatrix> {
    let params = f.params();
    params.check_matrix_dim(dim_limit)?;
    let hat = polytope::spectrum_f64(f);
    let roots = crate::dft::root_table(params.d());
    Ok(ComplexMatrix::from_fn(params.dim(), |row, col| {
        let (r, k) = term_at(params, row, col);
        hat[r] * roots[k as usize]
    }))
}

/// `⊗_i X^(d-1-r_i) Z^(r_i)` for the monomial of rank `r`.
pub fn monomial_tensor(params: &Params, r: usize) -> ComplexMatrix {
    let digits = params.decode(r);
    digits
        .digits()
        .iter()
        .fold(ComplexMatrix::identity(1), |acc, &ri| {
            acc.kron(&monomial_operator(params.d(), ri))
        })
}

pub fn monomial_tensor_exact(params: &Params, r: usize) -> Result<CycMatrix> {
    let ring = Cyclotomic::new(params.d())?;
    let mut acc = CycMatrix::identity(ring, 1);
    for &ri in params.decode(r).digits() {
        acc = acc.kron(&pauli::monomial_operator_exact(ring, ri)?)?;
    }
    Ok(acc)
}

/// A normalized pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Normalizes `amplitudes`; fails on the zero vector.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument("state has zero or non-finite norm".into()));
        }
        Ok(StateVector {
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Basis index of `|s_1 ... s_n⟩`.
    pub fn basis_index(params: &Params, digits: &[u32]) -> usize {
        digits
            .iter()
            .fold(0usize, |acc, &s| acc * params.d() as usize + s as usize)
    }

    /// `⟨ψ|M|ψ⟩`.
    pub fn expect(&self, m: &ComplexMatrix) -> Result<Complex64> {
        check_len(m.dim(), self.dim())?;
        let mv = m.apply(&self.amplitudes);
        Ok(self.amplitudes.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum())
    }
}

/// `Re(c ⟨ψ|Q|ψ⟩)`.
pub fn expectation(state: &StateVector, q: &ComplexMatrix, c: Complex64) -> Result<f64> {
    Ok((c * state.expect(q)?).re)
}

/// `ξ_r = ⟨ψ| ⊗_i X^(d-1-r_i) Z^(r_i) |ψ⟩`.
pub fn correlation_vector_of_state(
    state: &StateVector,
    params: &Params,
) -> Result<CorrelationVector> {
    check_len(params.dim(), state.dim())?;
    let entries = (0..params.dim())
        .map(|r| state.expect(&monomial_tensor(params, r)))
        .collect::<Result<Vec<_>>>()?;
    CorrelationVector::new(*params, entries)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport {
    pub function: DitFunction,
    pub convention: Convention,
    /// `sup_ψ Re(c⟨ψ|Q_f|ψ⟩)`.
    pub bound: f64,
    pub optimal_state: StateVector,
    /// The facet of `f` evaluated at the correlations of `optimal_state`.
    pub saturating_facet_value: f64,
}

/// Top eigenpair of the Hermitian part of `c Q_f`.
pub fn violation_bound(
    f: &DitFunction,
    convention: Convention,
    dim_limit: usize,
) -> Result<ViolationReport> {
    let params = f.params();
    let c = polytope::normalization(params, convention)?;
    let q = build_q(f, dim_limit)?;
    let eig = hermitian_eigs(&q.scale(c).hermitian_part())?;
    let optimal_state = StateVector::new(eig.vector(0))?;
    let xi = correlation_vector_of_state(&optimal_state, params)?;
    let saturating_facet_value = polytope::facet_vector(f, convention)?.evaluate(&xi)?;
    Ok(ViolationReport {
        function: f.clone(),
        convention,
        bound: eig.values[0],
        optimal_state,
        saturating_facet_value,
    })
}

/// `|det(Q - λI)| ≤ 1e-6 ‖Q‖∞^dim`.
pub fn eigenvalue_certificate(q: &ComplexMatrix, lambda: Complex64) -> bool {
    let dim = q.dim();
    let shifted = q.sub(&ComplexMatrix::identity(dim).scale(lambda));
    let bound = 1e-6 * q.norm_inf().powi(dim as i32);
    shifted.determinant().norm() <= bound
}
