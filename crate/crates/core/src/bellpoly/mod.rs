//! Dit functions `f: Z_d^n → {1, ω, ..., ω^(d-1)}` and their homogeneous
//! Bell polynomials `P_f = Σ_r f̂(r) A^r`, with
//! `A^r = Π_i A_i^(d-1-r_i) B_i^(r_i)`.

use std::collections::HashSet;
use std::fmt;

use num_complex::Complex64;

use crate::cyclotomic::{CycNum, Cyclotomic, RootSum};
use crate::dft;
use crate::error::{check_len, Error, Result};
use crate::params::Params;

pub mod orbits;
pub mod symmetry;

pub use orbits::{classify_orbits, CensusSummary, Orbit, OrbitTable};
pub use symmetry::{SymmetryGroup, SymmetryOp};

/// A map `Z_d^n → U`, stored as exponents: `f(s) = ω^exponents[rank(s)]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DitFunction {
    params: Params,
    exponents: Vec<u32>,
}

impl DitFunction {
    pub fn new(params: Params, exponents: Vec<u32>) -> Result<Self> {
        check_len(params.dim(), exponents.len())?;
        if let Some(&bad) = exponents.iter().find(|&&e| e >= params.d()) {
            return Err(Error::InvalidArgument(format!(
                "exponent {bad} out of range for d = {}",
                params.d()
            )));
        }
        Ok(DitFunction { params, exponents })
    }

    /// `f ≡ ω^k`.
    pub fn constant(params: Params, k: u32) -> Self {
        DitFunction {
            params,
            exponents: vec![k % params.d(); params.dim()],
        }
    }

    /// Inverse of [`DitFunction::index`].
    pub fn from_index(params: Params, index: u64) -> Result<Self> {
        let count = params.function_count().unwrap_or(u64::MAX);
        if index >= count {
            return Err(Error::InvalidArgument(format!(
                "function index {index} out of range (d^D = {count})"
            )));
        }
        let d = params.d() as u64;
        let mut exponents = vec![0u32; params.dim()];
        let mut k = index;
        for e in exponents.iter_mut().rev() {
            *e = (k % d) as u32;
            k /= d;
        }
        Ok(DitFunction { params, exponents })
    }

    /// Base-d encoding with `exponents[0]` most significant, so that index
    /// order is lexicographic order of exponent vectors.
    pub fn index(&self) -> u64 {
        encode(&self.exponents, self.params.d())
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn values(&self) -> Result<Vec<CycNum>> {
        let ring = Cyclotomic::new(self.params.d())?;
        Ok(self.exponents.iter().map(|&e| ring.root(e as i64)).collect())
    }

    pub fn values_complex(&self) -> Vec<Complex64> {
        let roots = dft::root_table(self.params.d());
        self.exponents.iter().map(|&e| roots[e as usize]).collect()
    }

    /// Exact `f̂`, computed by counting roots of unity.
    pub fn spectrum(&self) -> Result<Vec<CycNum>> {
        Cyclotomic::new(self.params.d())?;
        Ok(spectrum_of(&self.exponents, &self.params.dot_table(), self.params.d()))
    }

    /// Floating `f̂`; valid for every `d`.
    pub fn spectrum_complex(&self) -> Vec<Complex64> {
        dft::dft_complex(&self.values_complex(), &self.params).expect("length matches params")
    }

    /// `ω^k f`.
    pub fn times_root(&self, k: u32) -> DitFunction {
        let d = self.params.d();
        DitFunction {
            params: self.params,
            exponents: self.exponents.iter().map(|&e| (e + k) % d).collect(),
        }
    }
}

pub(crate) fn encode(exponents: &[u32], d: u32) -> u64 {
    exponents
        .iter()
        .fold(0u64, |acc, &e| acc * d as u64 + e as u64)
}

pub(crate) fn decode_into(index: u64, d: u32, out: &mut [u32]) {
    let mut k = index;
    for e in out.iter_mut().rev() {
        *e = (k % d as u64) as u32;
        k /= d as u64;
    }
}

/// `f̂(r) = Σ_s ω^(r·s + e_s)` from a precomputed dot table.
pub(crate) fn spectrum_of(exponents: &[u32], table: &[u32], d: u32) -> Vec<CycNum> {
    let dim = exponents.len();
    (0..dim)
        .map(|r| {
            let mut acc = RootSum::new(d);
            for (s, &e) in exponents.iter().enumerate() {
                acc.add_root((table[r * dim + s] + e) as usize);
            }
            acc.finish(d)
        })
        .collect()
}

/// Recovers the exponents of `f = DFT⁻¹(coeffs)` if every value lies in U.
pub(crate) fn exponents_of_spectrum(coeffs: &[CycNum], table: &[u32], d: u32) -> Option<Vec<u32>> {
    let dim = coeffs.len();
    (0..dim)
        .map(|s| {
            let mut acc = RootSum::new(d);
            for (r, c) in coeffs.iter().enumerate() {
                acc.add_rotated(c, ((d - table[r * dim + s]) % d) as usize);
            }
            acc.finish(d).div_exact(dim as i64)?.as_root()
        })
        .collect()
}

/// Every element of `F_{d,n}` in lexicographic order of exponent vectors.
pub fn enumerate_functions(params: Params, limit: u64) -> Result<FunctionIter> {
    let count = params.check_enumerable(limit)?;
    Ok(FunctionIter {
        params,
        next: 0,
        count,
    })
}

#[derive(Debug, Clone)]
pub struct FunctionIter {
    params: Params,
    next: u64,
    count: u64,
}

impl Iterator for FunctionIter {
    type Item = DitFunction;

    fn next(&mut self) -> Option<DitFunction> {
        if self.next >= self.count {
            return None;
        }
        let mut exponents = vec![0u32; self.params.dim()];
        decode_into(self.next, self.params.d(), &mut exponents);
        self.next += 1;
        Some(DitFunction {
            params: self.params,
            exponents,
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.count - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for FunctionIter {}

/// `Σ_r coeffs[r] A^r`, a member of `H_{d,n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BellPolynomial {
    params: Params,
    coeffs: Vec<CycNum>,
}

/// `P_f`: the coefficient vector is `DFT f`.
pub fn polynomial_of(f: &DitFunction) -> Result<BellPolynomial> {
    Ok(BellPolynomial {
        params: f.params,
        coeffs: f.spectrum()?,
    })
}

/// `P_0 ⋈ ... ⋈ P_(d-1) = Σ_{r_n} (Σ_t ω^(r_n t) P_t) A_n^(d-1-r_n) B_n^(r_n)`.
pub fn bowtie(parts: &[BellPolynomial]) -> Result<BellPolynomial> {
    let first = parts
        .first()
        .ok_or_else(|| Error::InvalidArgument("bowtie needs d parts".into()))?;
    let inner = first.params;
    let d = inner.d();
    check_len(d as usize, parts.len())?;
    if parts.iter().any(|p| p.params != inner) {
        return Err(Error::InvalidArgument(
            "bowtie parts must share (d, n)".into(),
        ));
    }
    let params = Params::new(d, inner.n() + 1)?;
    let inner_dim = inner.dim();
    let mut coeffs = Vec::with_capacity(params.dim());
    // r_n is the slowest coordinate
    for rn in 0..d as usize {
        for r in 0..inner_dim {
            let mut acc = RootSum::new(d);
            for (t, part) in parts.iter().enumerate() {
                acc.add_rotated(&part.coeffs[r], rn * t % d as usize);
            }
            coeffs.push(acc.finish(d));
        }
    }
    Ok(BellPolynomial { params, coeffs })
}

impl BellPolynomial {
    /// Validates that `coeffs` is the spectrum of some dit function.
    pub fn new(params: Params, coeffs: Vec<CycNum>) -> Result<Self> {
        let p = BellPolynomial { params, coeffs };
        p.generating_function()?;
        Ok(p)
    }

    pub(crate) fn new_unchecked(params: Params, coeffs: Vec<CycNum>) -> Self {
        BellPolynomial { params, coeffs }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    /// The `f` with `P_f = self`.
    pub fn generating_function(&self) -> Result<DitFunction> {
        check_len(self.params.dim(), self.coeffs.len())?;
        let ring = Cyclotomic::new(self.params.d())?;
        if let Some(bad) = self.coeffs.iter().find(|c| c.ring() != ring) {
            return Err(Error::OrderMismatch(ring.d(), bad.d()));
        }
        let exponents = exponents_of_spectrum(&self.coeffs, &self.params.dot_table(), ring.d())
            .ok_or_else(|| {
                Error::NotInFamily("inverse transform does not land in the roots of unity".into())
            })?;
        Ok(DitFunction {
            params: self.params,
            exponents,
        })
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(CycNum::is_real)
    }

    /// Every monomial has total degree `n(d-1)`.
    pub fn degree(&self) -> u32 {
        self.params.n() * (self.params.d() - 1)
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(CycNum::to_complex).collect()
    }

    /// Terms with non-zero coefficient, as `(rank, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &CycNum)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

/// `A^r` written out, e.g. `A1^2 A2 B2`.
pub fn monomial_name(params: &Params, rank: usize) -> String {
    let r = params.decode(rank);
    let d = params.d();
    let mut parts = Vec::new();
    for (i, &ri) in r.digits().iter().enumerate() {
        let party = i + 1;
        for (sym, e) in [("A", d - 1 - ri), ("B", ri)] {
            match e {
                0 => {}
                1 => parts.push(format!("{sym}{party}")),
                e => parts.push(format!("{sym}{party}^{e}")),
            }
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

impl fmt::Display for BellPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(r, c)| format!("({c})·{}", monomial_name(&self.params, r)))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `u (3M + (v - 1)(A² + AB + B²))` for d = 3, n = 1, with `u = ω^u_exp`,
/// `v = ω^v_exp` and `M = A^(2-m) B^m`.
pub fn compact_form_polynomial(u_exp: u32, v_exp: u32, m: usize) -> Result<BellPolynomial> {
    if m > 2 {
        return Err(Error::InvalidArgument(format!("monomial index {m} not in 0..3")));
    }
    let ring = Cyclotomic::new(3)?;
    let params = Params::new(3, 1)?;
    let u = ring.root(u_exp as i64);
    let v_minus_one = ring.root(v_exp as i64) - ring.one();
    let coeffs = (0..3)
        .map(|r| {
            let base = if r == m { ring.int(3) } else { ring.zero() };
            &u * &(base + &v_minus_one)
        })
        .collect();
    Ok(BellPolynomial { params, coeffs })
}

/// True iff `H_{3,1}` is exactly the set of compact-form polynomials.
pub fn compact_form_check() -> Result<bool> {
    let params = Params::new(3, 1)?;
    let family: HashSet<Vec<CycNum>> = enumerate_functions(params, u64::MAX)?
        .map(|f| polynomial_of(&f).map(|p| p.coeffs))
        .collect::<Result<_>>()?;
    let mut compact = HashSet::new();
    for u in 0..3 {
        for v in 0..3 {
            for m in 0..3 {
                compact.insert(compact_form_polynomial(u, v, m)?.coeffs);
            }
        }
    }
    Ok(family == compact)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: u32, n: u32) -> Params {
        Params::new(d, n).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_functions(p(3, 1), 1 << 26).unwrap().count(), 27);
        assert_eq!(enumerate_functions(p(3, 2), 1 << 26).unwrap().len(), 19683);
        let consts: Vec<_> = enumerate_functions(p(2, 0), 16).unwrap().collect();
        assert_eq!(consts.len(), 2);
        assert!(matches!(
            enumerate_functions(p(3, 2), 1000),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let fs: Vec<_> = enumerate_functions(p(2, 1), 16).unwrap().collect();
        let exps: Vec<&[u32]> = fs.iter().map(|f| f.exponents()).collect();
        assert_eq!(exps, vec![&[0, 0][..], &[0, 1], &[1, 0], &[1, 1]]);
        for (i, f) in fs.iter().enumerate() {
            assert_eq!(f.index(), i as u64);
            assert_eq!(&DitFunction::from_index(p(2, 1), i as u64).unwrap(), f);
        }
    }

    #[test]
    fn chsh_polynomial() {
        // f = (1, 1, -1, 1) in order s = (0,0), (1,0), (0,1), (1,1)
        let f = DitFunction::new(p(2, 2), vec![0, 0, 1, 0]).unwrap();
        let poly = polynomial_of(&f).unwrap();
        let coeffs: Vec<i64> = poly.coeffs().iter().map(|c| c.coeffs()[0]).collect();
        // 2(A1A2 - B1A2 + A1B2 + B1B2)
        assert_eq!(coeffs, vec![2, -2, 2, 2]);
        assert_eq!(monomial_name(&p(2, 2), 2), "A1 B2");
    }

    #[test]
    fn violating_polynomial_spectrum() {
        let f = DitFunction::new(p(3, 1), vec![1, 2, 2]).unwrap();
        let poly = polynomial_of(&f).unwrap();
        let r = Cyclotomic::new(3).unwrap();
        assert_eq!(poly.coeffs()[0], r.root(2) - r.one());
        assert_eq!(poly.coeffs()[1], r.root(1) - r.root(2));
        assert_eq!(poly.coeffs()[2], r.root(1) - r.root(2));
        assert_eq!(poly.generating_function().unwrap(), f);
    }

    #[test]
    fn zero_parties_constant() {
        let f = DitFunction::constant(p(3, 0), 2);
        let poly = polynomial_of(&f).unwrap();
        assert_eq!(poly.coeffs(), &[Cyclotomic::new(3).unwrap().root(2)]);
        assert_eq!(poly.degree(), 0);
    }

    #[test]
    fn bowtie_examples() {
        let r2 = Cyclotomic::new(2).unwrap();
        let one = BellPolynomial::new(p(2, 0), vec![r2.one()]).unwrap();
        let minus = BellPolynomial::new(p(2, 0), vec![r2.int(-1)]).unwrap();
        let a = bowtie(&[one.clone(), one.clone()]).unwrap();
        assert_eq!(a.coeffs(), &[r2.int(2), r2.zero()]);
        let b = bowtie(&[one, minus]).unwrap();
        assert_eq!(b.coeffs(), &[r2.zero(), r2.int(2)]);

        let r3 = Cyclotomic::new(3).unwrap();
        let one3 = BellPolynomial::new(p(3, 0), vec![r3.one()]).unwrap();
        let three_a2 = bowtie(&[one3.clone(), one3.clone(), one3]).unwrap();
        assert_eq!(
            three_a2,
            polynomial_of(&DitFunction::constant(p(3, 1), 0)).unwrap()
        );
    }

    #[test]
    fn bowtie_rejects_bad_parts() {
        let r3 = Cyclotomic::new(3).unwrap();
        let one = BellPolynomial::new(p(3, 0), vec![r3.one()]).unwrap();
        assert!(bowtie(&[one.clone(), one.clone()]).is_err());
        assert!(bowtie(&[]).is_err());
    }

    #[test]
    fn non_members_are_rejected() {
        let r = Cyclotomic::new(3).unwrap();
        let err = BellPolynomial::new(p(3, 1), vec![r.int(3), r.int(3), r.zero()]);
        assert!(matches!(err, Err(Error::NotInFamily(_)) | Err(Error::NotDivisible(_))));
    }

    #[test]
    fn compact_form() {
        assert!(compact_form_check().unwrap());
        assert_eq!(
            compact_form_polynomial(0, 0, 0).unwrap(),
            polynomial_of(&DitFunction::constant(p(3, 1), 0)).unwrap()
        );
        let q = compact_form_polynomial(0, 2, 0).unwrap();
        let r = Cyclotomic::new(3).unwrap();
        assert_eq!(q.coeffs()[0], r.root(2) + r.int(2));
        assert_eq!(q.coeffs()[1], r.root(2) - r.one());
        assert!(q.generating_function().is_ok());
    }

    #[test]
    fn composite_order_uses_float_spectrum() {
        let f = DitFunction::new(p(4, 1), vec![0, 1, 2, 3]).unwrap();
        assert_eq!(f.spectrum().unwrap_err(), Error::CompositeOrder(4));
        let hat = f.spectrum_complex();
        // Parseval: Σ|f̂|² = D Σ|f|² = D²
        let energy: f64 = hat.iter().map(|z| z.norm_sqr()).sum();
        assert!((energy - 16.0).abs() < 1e-12);
    }
}
