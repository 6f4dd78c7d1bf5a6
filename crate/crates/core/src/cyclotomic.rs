//! Exact arithmetic in Z[ω], ω = exp(2iπ/d), for prime d.
//!
//! An element is stored as its coefficient vector on `1, ω, ..., ω^(d-1)`.
//! Since `1 + ω + ... + ω^(d-1) = 0` is the minimal relation for prime `d`,
//! the canonical form subtracts the last coefficient from all others so that
//! `coeffs[d-1] == 0`. Two elements are equal iff their canonical vectors are.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::is_prime;
use crate::quantum::linalg::ComplexMatrix;

/// The ring Z[ω] for a fixed prime order `d`. Hands out elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    d: u32,
}

impl Cyclotomic {
    pub fn new(d: u32) -> Result<Self> {
        if is_prime(d) {
            Ok(Cyclotomic { d })
        } else {
            Err(Error::CompositeOrder(d))
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn zero(&self) -> CycNum {
        CycNum {
            d: self.d,
            coeffs: vec![0; self.d as usize],
        }
    }

    pub fn one(&self) -> CycNum {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> CycNum {
        let mut c = self.zero();
        c.coeffs[0] = v;
        c.canonicalize();
        c
    }

    /// `ω^k`, with `k` taken mod d.
    pub fn root(&self, k: i64) -> CycNum {
        let mut c = self.zero();
        c.coeffs[k.rem_euclid(self.d as i64) as usize] = 1;
        c.canonicalize();
        c
    }

    /// `Σ coeffs[k] ω^k`; the slice may have any length.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<CycNum> {
        let mut acc = vec![0i64; self.d as usize];
        for (k, &c) in coeffs.iter().enumerate() {
            let slot = &mut acc[k % self.d as usize];
            *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
        }
        let mut out = CycNum {
            d: self.d,
            coeffs: acc,
        };
        out.try_canonicalize()?;
        Ok(out)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    d: u32,
    coeffs: Vec<i64>,
}

impl CycNum {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn ring(&self) -> Cyclotomic {
        Cyclotomic { d: self.d }
    }

    /// Canonical coefficients; the last entry is always zero.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn try_canonicalize(&mut self) -> Result<()> {
        let last = self.coeffs[self.d as usize - 1];
        if last != 0 {
            for c in &mut self.coeffs {
                *c = c.checked_sub(last).ok_or(Error::Overflow)?;
            }
        }
        Ok(())
    }

    fn canonicalize(&mut self) {
        self.try_canonicalize()
            .expect("cyclotomic coefficient overflow");
    }

    fn check_order(&self, other: &CycNum) -> Result<()> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.d, other.d))
        }
    }

    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        let mut out = CycNum { d: self.d, coeffs };
        out.try_canonicalize()?;
        Ok(out)
    }

    pub fn checked_sub(&self, other: &CycNum) -> Result<CycNum> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Result<CycNum> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_neg().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycNum { d: self.d, coeffs })
    }

    /// Product modulo `X^d - 1`, then reduced to canonical form.
    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum> {
        self.check_order(other)?;
        let d = self.d as usize;
        let mut acc = vec![0i64; d];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let term = a.checked_mul(b).ok_or(Error::Overflow)?;
                let slot = &mut acc[(i + j) % d];
                *slot = slot.checked_add(term).ok_or(Error::Overflow)?;
            }
        }
        let mut out = CycNum {
            d: self.d,
            coeffs: acc,
        };
        out.try_canonicalize()?;
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> CycNum {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_mul(k).expect("cyclotomic coefficient overflow"))
            .collect();
        CycNum { d: self.d, coeffs }
    }

    /// `ω^k · self`; a rotation of the coefficient vector.
    pub fn mul_root(&self, k: i64) -> CycNum {
        let d = self.d as usize;
        let shift = k.rem_euclid(self.d as i64) as usize;
        let mut coeffs = vec![0i64; d];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(i + shift) % d] = c;
        }
        let mut out = CycNum { d: self.d, coeffs };
        out.canonicalize();
        out
    }

    pub fn pow(&self, e: u32) -> CycNum {
        let mut acc = self.ring().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Complex conjugation: `ω^k ↦ ω^(d-k)`.
    pub fn conj(&self) -> CycNum {
        let d = self.d as usize;
        let mut coeffs = vec![0i64; d];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[(d - k) % d] = c;
        }
        let mut out = CycNum { d: self.d, coeffs };
        out.canonicalize();
        out
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn to_complex(&self) -> Complex64 {
        let d = self.d as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| {
                let (s, co) = (2.0 * std::f64::consts::PI * k as f64 / d).sin_cos();
                Complex64::new(c as f64 * co, c as f64 * s)
            })
            .sum()
    }

    /// Returns `k` if `self == ω^k`.
    pub fn as_root(&self) -> Option<u32> {
        let d = self.d as usize;
        let ones = self.coeffs.iter().filter(|&&c| c == 1).count();
        let zeros = self.coeffs.iter().filter(|&&c| c == 0).count();
        if ones == 1 && zeros == d - 1 {
            return self.coeffs.iter().position(|&c| c == 1).map(|k| k as u32);
        }
        // ω^(d-1) = -(1 + ω + ... + ω^(d-2))
        if self.coeffs[..d - 1].iter().all(|&c| c == -1) {
            return Some(self.d - 1);
        }
        None
    }

    /// `self / m` if every canonical coefficient is divisible by `m`.
    ///
    /// `1, ω, ..., ω^(d-2)` is a Z-basis of Z[ω], so this is exact
    /// divisibility in the ring.
    pub fn div_exact(&self, m: i64) -> Option<CycNum> {
        if m == 0 || self.coeffs.iter().any(|c| c % m != 0) {
            return None;
        }
        Some(CycNum {
            d: self.d,
            coeffs: self.coeffs.iter().map(|c| c / m).collect(),
        })
    }

    /// Largest absolute canonical coefficient.
    pub fn height(&self) -> i64 {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[d={}]({})", self.d, self)
    }
}

impl fmt::Display for CycNum {
    /// Highest power first, e.g. `ω^2 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "ω")?,
                (1, m) => write!(f, "{m}ω")?,
                (k, 1) => write!(f, "ω^{k}")?,
                (k, m) => write!(f, "{m}ω^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.checked_neg().unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

/// Accumulates `Σ ω^k x_k` without reallocating per term.
#[derive(Debug, Clone)]
pub(crate) struct RootSum {
    d: usize,
    acc: Vec<i64>,
}

impl RootSum {
    pub(crate) fn new(d: u32) -> Self {
        RootSum {
            d: d as usize,
            acc: vec![0; d as usize],
        }
    }

    #[inline]
    pub(crate) fn add_root(&mut self, k: usize) {
        self.acc[k % self.d] += 1;
    }

    /// `self += ω^k x`.
    #[inline]
    pub(crate) fn add_rotated(&mut self, x: &CycNum, k: usize) {
        for (i, &c) in x.coeffs.iter().enumerate() {
            if c != 0 {
                self.acc[(i + k) % self.d] += c;
            }
        }
    }

    pub(crate) fn finish(self, d: u32) -> CycNum {
        let mut out = CycNum {
            d,
            coeffs: self.acc,
        };
        out.canonicalize();
        out
    }
}

/// Dense square matrix over Z[ω].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycMatrix {
    dim: usize,
    entries: Vec<CycNum>,
}

impl CycMatrix {
    pub fn from_fn(dim: usize, mut entry: impl FnMut(usize, usize) -> CycNum) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(entry(i, j));
            }
        }
        CycMatrix { dim, entries }
    }

    pub fn identity(ring: Cyclotomic, dim: usize) -> Self {
        Self::from_fn(dim, |i, j| ring.int((i == j) as i64))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CycNum]> {
        self.entries.chunks(self.dim)
    }

    pub fn adjoint(&self) -> CycMatrix {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, k: &CycNum) -> CycMatrix {
        CycMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    pub fn checked_mul(&self, other: &CycMatrix) -> Result<CycMatrix> {
        crate::error::check_len(self.dim, other.dim)?;
        let ring = self.entries[0].ring();
        let mut entries = Vec::with_capacity(self.dim * self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = ring.zero();
                for k in 0..self.dim {
                    acc = acc.checked_add(&self.get(i, k).checked_mul(other.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(CycMatrix {
            dim: self.dim,
            entries,
        })
    }

    pub fn checked_add(&self, other: &CycMatrix) -> Result<CycMatrix> {
        crate::error::check_len(self.dim, other.dim)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(CycMatrix {
            dim: self.dim,
            entries,
        })
    }

    pub fn pow(&self, e: u32) -> Result<CycMatrix> {
        let ring = self.entries[0].ring();
        let mut out = CycMatrix::identity(ring, self.dim);
        for _ in 0..e {
            out = out.checked_mul(self)?;
        }
        Ok(out)
    }

    /// Kronecker product, `self` on the left (most significant index).
    pub fn kron(&self, other: &CycMatrix) -> Result<CycMatrix> {
        let (a, b) = (self.dim, other.dim);
        let mut err = None;
        let m = Self::from_fn(a * b, |i, j| {
            self.get(i / b, j / b)
                .checked_mul(other.get(i % b, j % b))
                .unwrap_or_else(|e| {
                    err = Some(e);
                    self.get(0, 0).ring().zero()
                })
        });
        err.map_or(Ok(m), Err)
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim, |i, j| self.get(i, j).to_complex())
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for row in cells.chunks(self.dim) {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}
