//! Problem dimensions and multi-indices over Z_d^n.
//!
//! Ranks order multi-indices with the first coordinate varying fastest:
//! `rank(s) = s_1 + d s_2 + ... + d^(n-1) s_n`.

use crate::error::{Error, Result};

/// Default cap on `d^(d^n)` for full enumerations.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1 << 26;
/// Default cap on the side length of dense matrices.
pub const DEFAULT_MATRIX_DIM_LIMIT: usize = 1024;

/// `d` outcomes per observable, `n` parties and the derived `D = d^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    d: u32,
    n: u32,
    dim: usize,
}

impl Params {
    pub fn new(d: u32, n: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParams(format!("d must be >= 2, got {d}")));
        }
        let dim = (d as u64)
            .checked_pow(n)
            .filter(|&v| v <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidParams(format!("d^n overflows for d = {d}, n = {n}")))?;
        Ok(Params {
            d,
            n,
            dim: dim as usize,
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `D = d^n`, the number of monomials and of correlation coordinates.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `d^D`, or `None` when it does not fit in a `u64`.
    pub fn function_count(&self) -> Option<u64> {
        (self.d as u64).checked_pow(u32::try_from(self.dim).ok()?)
    }

    /// Fails with [`Error::LimitExceeded`] when `d^D > limit`.
    pub fn check_enumerable(&self, limit: u64) -> Result<u64> {
        match self.function_count() {
            Some(count) if count <= limit => Ok(count),
            count => Err(Error::LimitExceeded {
                what: "the number of dit functions d^(d^n)",
                size: count.map_or(u128::MAX, u128::from),
                limit: limit as u128,
                hint: "use single-function mode (pass --exponents or --index) instead of a full scan",
            }),
        }
    }

    pub fn check_matrix_dim(&self, limit: usize) -> Result<()> {
        if self.dim <= limit {
            Ok(())
        } else {
            Err(Error::LimitExceeded {
                what: "the matrix dimension d^n",
                size: self.dim as u128,
                limit: limit as u128,
                hint: "raise the matrix dimension limit or use fewer parties",
            })
        }
    }

    pub fn is_prime_order(&self) -> bool {
        is_prime(self.d)
    }

    pub fn decode(&self, rank: usize) -> MultiIndex {
        MultiIndex::from_rank(self, rank)
    }

    /// Digits of every rank, in rank order.
    pub fn all_indices(&self) -> Vec<MultiIndex> {
        (0..self.dim).map(|k| self.decode(k)).collect()
    }

    /// Table of `r·s mod d` for all pairs of ranks, row-major in `r`.
    pub fn dot_table(&self) -> Vec<u32> {
        let idx = self.all_indices();
        let mut table = Vec::with_capacity(self.dim * self.dim);
        for r in &idx {
            for s in &idx {
                table.push(r.dot_mod(s));
            }
        }
        table
    }

    /// Rank of `-s`.
    pub fn negate_rank(&self, rank: usize) -> usize {
        let d = self.d as usize;
        let mut out = 0;
        let mut place = 1;
        let mut k = rank;
        for _ in 0..self.n {
            let digit = k % d;
            out += ((d - digit) % d) * place;
            place *= d;
            k /= d;
        }
        out
    }
}

pub fn is_prime(d: u32) -> bool {
    d >= 2 && (2..).take_while(|p| p * p <= d).all(|p| !d.is_multiple_of(p))
}

/// A point of Z_d^n.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    d: u32,
    digits: Vec<u32>,
}

impl MultiIndex {
    pub fn new(d: u32, digits: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = digits.iter().find(|&&x| x >= d) {
            return Err(Error::InvalidArgument(format!(
                "digit {bad} out of range for d = {d}"
            )));
        }
        Ok(MultiIndex { d, digits })
    }

    pub fn zero(params: &Params) -> Self {
        MultiIndex {
            d: params.d,
            digits: vec![0; params.n as usize],
        }
    }

    pub fn from_rank(params: &Params, rank: usize) -> Self {
        debug_assert!(rank < params.dim);
        let d = params.d as usize;
        let mut k = rank;
        let digits = (0..params.n)
            .map(|_| {
                let digit = (k % d) as u32;
                k /= d;
                digit
            })
            .collect();
        MultiIndex { d: params.d, digits }
    }

    pub fn rank(&self) -> usize {
        self.digits
            .iter()
            .rev()
            .fold(0usize, |acc, &x| acc * self.d as usize + x as usize)
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// `r·s mod d`.
    ///
    /// Panics if the two indices live in different spaces.
    pub fn dot_mod(&self, other: &MultiIndex) -> u32 {
        assert_eq!(self.d, other.d, "dot_mod on indices with different d");
        assert_eq!(self.digits.len(), other.digits.len(), "dot_mod on indices with different n");
        let d = self.d as u64;
        let total: u64 = self
            .digits
            .iter()
            .zip(&other.digits)
            .map(|(&a, &b)| a as u64 * b as u64 % d)
            .sum();
        (total % d) as u32
    }

    /// Componentwise sum mod d.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.digits.len(), other.digits.len());
        MultiIndex {
            d: self.d,
            digits: self
                .digits
                .iter()
                .zip(&other.digits)
                .map(|(a, b)| (a + b) % self.d)
                .collect(),
        }
    }

    pub fn neg(&self) -> MultiIndex {
        MultiIndex {
            d: self.d,
            digits: self.digits.iter().map(|&a| (self.d - a) % self.d).collect(),
        }
    }
}
