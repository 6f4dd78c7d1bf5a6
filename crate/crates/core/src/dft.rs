//! Multidimensional DFT over Z_d^n:  `f̂(r) = Σ_s ω^(r·s) f(s)`.
//!
//! The exact variants work over [`CycNum`] (prime `d`); the complex variants
//! accept any `d`. Vectors are indexed by rank (first coordinate fastest).

use num_complex::Complex64;

use crate::cyclotomic::{CycMatrix, CycNum, Cyclotomic, RootSum};
use crate::error::{check_len, Error, Result};
use crate::params::{MultiIndex, Params};

fn ring_of(params: &Params) -> Result<Cyclotomic> {
    Cyclotomic::new(params.d())
}

fn check_input(f: &[CycNum], params: &Params) -> Result<Cyclotomic> {
    let ring = ring_of(params)?;
    check_len(params.dim(), f.len())?;
    if let Some(bad) = f.iter().find(|x| x.d() != params.d()) {
        return Err(Error::OrderMismatch(params.d(), bad.d()));
    }
    Ok(ring)
}

/// Exact transform by direct `O(D²)` summation.
pub fn dft(f: &[CycNum], params: &Params) -> Result<Vec<CycNum>> {
    check_input(f, params)?;
    Ok(transform(f, params, 1))
}

/// `Σ_s ω^(sign·r·s) f(s)` for every `r`.
fn transform(f: &[CycNum], params: &Params, sign: i64) -> Vec<CycNum> {
    let dim = params.dim();
    let d = params.d();
    let table = params.dot_table();
    (0..dim)
        .map(|r| {
            let mut acc = RootSum::new(d);
            for (s, fs) in f.iter().enumerate() {
                let k = (sign * table[r * dim + s] as i64).rem_euclid(d as i64) as usize;
                acc.add_rotated(fs, k);
            }
            acc.finish(d)
        })
        .collect()
}

/// Exact transform one coordinate at a time, `O(D n d)`.
pub fn dft_fast(f: &[CycNum], params: &Params) -> Result<Vec<CycNum>> {
    check_input(f, params)?;
    let d = params.d() as usize;
    let dim = params.dim();
    let mut cur = f.to_vec();
    let mut stride = 1;
    for _ in 0..params.n() {
        let mut next = cur.clone();
        for base in 0..dim {
            if (base / stride) % d != 0 {
                continue;
            }
            for r in 0..d {
                let mut acc = RootSum::new(params.d());
                for s in 0..d {
                    acc.add_rotated(&cur[base + s * stride], r * s % d);
                }
                next[base + r * stride] = acc.finish(params.d());
            }
        }
        cur = next;
        stride *= d;
    }
    Ok(cur)
}

/// Exact inverse: `f(s) = D⁻¹ Σ_r ω^(-r·s) g(r)`.
///
/// Fails with [`Error::NotDivisible`] when some component is not divisible
/// by `D` in Z[ω].
pub fn idft(g: &[CycNum], params: &Params) -> Result<Vec<CycNum>> {
    check_input(g, params)?;
    let dim = params.dim() as i64;
    transform(g, params, -1)
        .into_iter()
        .map(|x| x.div_exact(dim).ok_or(Error::NotDivisible(dim as u64)))
        .collect()
}

/// The matrix `H_d^{⊗n}` built by the block recursion
/// `H^{⊗0} = (1)`, `H^{⊗n} = (ω^(ij) H^{⊗(n-1)})_{i,j}`.
///
/// With first-coordinate-fastest ranks the new coordinate is the slowest
/// one, so block `(i, j)` occupies rows `i·D'..` and columns `j·D'..`.
pub fn build_matrix(params: &Params, dim_limit: usize) -> Result<CycMatrix> {
    let ring = ring_of(params)?;
    params.check_matrix_dim(dim_limit)?;
    let d = params.d() as usize;
    let mut h = CycMatrix::identity(ring, 1);
    for _ in 0..params.n() {
        let inner = h.dim();
        h = CycMatrix::from_fn(inner * d, |row, col| {
            let (bi, bj) = (row / inner, col / inner);
            h.get(row % inner, col % inner).mul_root((bi * bj) as i64)
        });
    }
    Ok(h)
}

/// Complex transform with the same index conventions; any `d >= 2`.
pub fn dft_complex(f: &[Complex64], params: &Params) -> Result<Vec<Complex64>> {
    check_len(params.dim(), f.len())?;
    Ok(transform_complex(f, params, 1.0))
}

/// Complex inverse transform, including the `1/D` factor.
pub fn idft_complex(g: &[Complex64], params: &Params) -> Result<Vec<Complex64>> {
    check_len(params.dim(), g.len())?;
    let scale = 1.0 / params.dim() as f64;
    Ok(transform_complex(g, params, -1.0)
        .into_iter()
        .map(|x| x * scale)
        .collect())
}

fn transform_complex(f: &[Complex64], params: &Params, sign: f64) -> Vec<Complex64> {
    let dim = params.dim();
    let roots = root_table(params.d());
    let table = params.dot_table();
    (0..dim)
        .map(|r| {
            f.iter()
                .enumerate()
                .map(|(s, x)| {
                    let k = table[r * dim + s] as usize;
                    let w = if sign > 0.0 { roots[k] } else { roots[k].conj() };
                    w * x
                })
                .sum()
        })
        .collect()
}

/// `ω^k` for `k in 0..d` as floats.
pub fn root_table(d: u32) -> Vec<Complex64> {
    (0..d)
        .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64))
        .collect()
}

/// Hermitian pairing `⟨β, γ⟩ = Σ conj(β_i) γ_i`.
pub fn pairing(beta: &[Complex64], gamma: &[Complex64]) -> Complex64 {
    beta.iter().zip(gamma).map(|(b, g)| b.conj() * g).sum()
}

/// The five transform identities: each builds `g` from `f` so that the
/// stated relation between `ĝ` and `f̂` holds.
pub mod rules {
    use super::*;

    fn check(f: &[CycNum], params: &Params) -> Result<()> {
        check_input(f, params).map(|_| ())
    }

    fn check_shift(delta: &MultiIndex, params: &Params) -> Result<()> {
        if delta.d() != params.d() || delta.digits().len() != params.n() as usize {
            return Err(Error::InvalidArgument(
                "shift vector does not belong to Z_d^n".into(),
            ));
        }
        Ok(())
    }

    /// (a) `g(s) = f(-s)`, so `ĝ(r) = f̂(-r)`.
    pub fn negate(f: &[CycNum], params: &Params) -> Result<Vec<CycNum>> {
        check(f, params)?;
        Ok((0..params.dim())
            .map(|s| f[params.negate_rank(s)].clone())
            .collect())
    }

    /// (b) `g(s) = f(-s)*`, so `ĝ(r) = f̂(r)*`.
    pub fn conj(f: &[CycNum], params: &Params) -> Result<Vec<CycNum>> {
        Ok(negate(f, params)?.iter().map(CycNum::conj).collect())
    }

    /// (c) `g(s) = f(s + δ)`, so `ĝ(r) = ω^(-r·δ) f̂(r)`.
    pub fn shift(f: &[CycNum], delta: &MultiIndex, params: &Params) -> Result<Vec<CycNum>> {
        check(f, params)?;
        check_shift(delta, params)?;
        Ok((0..params.dim())
            .map(|s| f[params.decode(s).add(delta).rank()].clone())
            .collect())
    }

    /// (d) `g(s) = ω^(δ·s) f(s)`, so `ĝ(r) = f̂(r + δ)`.
    pub fn modulate(f: &[CycNum], delta: &MultiIndex, params: &Params) -> Result<Vec<CycNum>> {
        check(f, params)?;
        check_shift(delta, params)?;
        Ok((0..params.dim())
            .map(|s| f[s].mul_root(delta.dot_mod(&params.decode(s)) as i64))
            .collect())
    }

    /// (e) `g(s) = f(σ(s))` with `σ(s) = (s_σ(1), ..., s_σ(n))`, so
    /// `ĝ(r) = f̂(σ(r))`. `sigma` is 0-based.
    pub fn permute(f: &[CycNum], sigma: &[usize], params: &Params) -> Result<Vec<CycNum>> {
        check(f, params)?;
        let n = params.n() as usize;
        let mut seen = vec![false; n];
        if sigma.len() != n || !sigma.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidArgument(format!(
                "{sigma:?} is not a permutation of 0..{n}"
            )));
        }
        Ok((0..params.dim())
            .map(|s| f[permute_rank(params, s, sigma)].clone())
            .collect())
    }

    /// Rank of `σ(s) = (s_σ(1), ..., s_σ(n))`.
    pub fn permute_rank(params: &Params, rank: usize, sigma: &[usize]) -> usize {
        let s = params.decode(rank);
        let digits: Vec<u32> = sigma.iter().map(|&i| s.digits()[i]).collect();
        MultiIndex::new(params.d(), digits)
            .expect("permuted digits stay in range")
            .rank()
    }
}
