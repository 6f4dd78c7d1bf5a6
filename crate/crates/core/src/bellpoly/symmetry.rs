//! Symmetries of `H_{d,n}`.
//!
//! A [`SymmetryOp`] acts on coefficient vectors: first the index map
//! `r ↦ swap(shift(perm(r)))`, then the coefficient map `c ↦ ω^k c`,
//! then optional conjugation. The same action is available on the exponent
//! vectors of dit functions through [`FunctionMap`], which is what the orbit
//! search uses.

use std::collections::{HashSet, VecDeque};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::params::{MultiIndex, Params};

use super::BellPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymmetryOp {
    /// `perm[i]` is the new position of party `i` (0-based).
    pub party_perm: Vec<usize>,
    /// Per-party monomial shift `r_i ↦ r_i + shifts[i]`.
    pub shifts: Vec<u32>,
    /// Per-party `A_i ↔ B_i`, i.e. `r_i ↦ d - 1 - r_i`.
    pub swaps: Vec<bool>,
    pub global_phase: u32,
    pub conjugate: bool,
}

impl SymmetryOp {
    pub fn identity(n: usize) -> Self {
        SymmetryOp {
            party_perm: (0..n).collect(),
            shifts: vec![0; n],
            swaps: vec![false; n],
            global_phase: 0,
            conjugate: false,
        }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut op = Self::identity(n);
        op.party_perm.swap(i, j);
        op
    }

    pub fn shift(n: usize, party: usize, by: u32) -> Self {
        let mut op = Self::identity(n);
        op.shifts[party] = by;
        op
    }

    pub fn swap(n: usize, party: usize) -> Self {
        let mut op = Self::identity(n);
        op.swaps[party] = true;
        op
    }

    pub fn swap_all(n: usize) -> Self {
        let mut op = Self::identity(n);
        op.swaps = vec![true; n];
        op
    }

    pub fn phase(n: usize, k: u32) -> Self {
        let mut op = Self::identity(n);
        op.global_phase = k;
        op
    }

    pub fn conjugation(n: usize) -> Self {
        let mut op = Self::identity(n);
        op.conjugate = true;
        op
    }

    fn validate(&self, params: &Params) -> Result<()> {
        let n = params.n() as usize;
        let d = params.d();
        let mut seen = vec![false; n];
        let perm_ok = self.party_perm.len() == n
            && self
                .party_perm
                .iter()
                .all(|&p| p < n && !std::mem::replace(&mut seen[p], true));
        if !perm_ok || self.shifts.len() != n || self.swaps.len() != n {
            return Err(Error::InvalidArgument(format!(
                "symmetry does not match n = {n}"
            )));
        }
        if self.shifts.iter().any(|&s| s >= d) || self.global_phase >= d {
            return Err(Error::InvalidArgument(format!(
                "shift or phase out of range for d = {d}"
            )));
        }
        Ok(())
    }

    /// Image of the monomial index `r`.
    pub fn map_index(&self, params: &Params, r: &MultiIndex) -> MultiIndex {
        let d = params.d();
        let mut out = vec![0u32; r.digits().len()];
        for (i, &ri) in r.digits().iter().enumerate() {
            out[self.party_perm[i]] = ri;
        }
        for (i, x) in out.iter_mut().enumerate() {
            *x = (*x + self.shifts[i]) % d;
            if self.swaps[i] {
                *x = d - 1 - *x;
            }
        }
        MultiIndex::new(d, out).expect("digits stay in range")
    }

    pub fn apply(&self, p: &BellPolynomial) -> Result<BellPolynomial> {
        let params = *p.params();
        self.validate(&params)?;
        let mut coeffs: Vec<CycNum> = vec![p.coeffs()[0].ring().zero(); params.dim()];
        for (r, c) in p.coeffs().iter().enumerate() {
            let target = self.map_index(&params, &params.decode(r)).rank();
            let c = c.mul_root(self.global_phase as i64);
            coeffs[target] = if self.conjugate { c.conj() } else { c };
        }
        Ok(BellPolynomial::new_unchecked(params, coeffs))
    }

    /// The induced map on generating functions.
    pub fn function_map(&self, params: &Params) -> Result<FunctionMap> {
        self.validate(params)?;
        let n = params.n() as usize;
        let d = params.d();
        let dim = params.dim();

        // g(t) = f(s) with s_i = t_perm[i]
        let perm = FunctionMap {
            d,
            src: (0..dim)
                .map(|t| {
                    let t = params.decode(t);
                    let s: Vec<u32> = (0..n).map(|i| t.digits()[self.party_perm[i]]).collect();
                    MultiIndex::new(d, s).unwrap().rank()
                })
                .collect(),
            add: vec![0; dim],
            negate: false,
        };
        let mut map = perm;
        for i in 0..n {
            // ĝ(r) = f̂(r - a e_i)  <=>  g(s) = ω^(-a s_i) f(s)
            let a = self.shifts[i];
            if a != 0 {
                let add = (0..dim)
                    .map(|s| (d - a * params.decode(s).digits()[i] % d) % d)
                    .collect();
                map = map.then(&FunctionMap::with_add(d, add));
            }
        }
        for i in 0..n {
            // ĝ(r) = f̂(r with r_i -> -1 - r_i)  <=>  g(t) = ω^(t_i) f(t with t_i negated)
            if self.swaps[i] {
                let mut src = Vec::with_capacity(dim);
                let mut add = Vec::with_capacity(dim);
                for t in 0..dim {
                    let digits = params.decode(t).digits().to_vec();
                    add.push(digits[i]);
                    let mut flipped = digits;
                    flipped[i] = (d - flipped[i]) % d;
                    src.push(MultiIndex::new(d, flipped).unwrap().rank());
                }
                map = map.then(&FunctionMap {
                    d,
                    src,
                    add,
                    negate: false,
                });
            }
        }
        if self.global_phase != 0 {
            map = map.then(&FunctionMap::with_add(d, vec![self.global_phase; dim]));
        }
        if self.conjugate {
            // ĝ = f̂*  <=>  g(s) = f(-s)*
            map = map.then(&FunctionMap {
                d,
                src: (0..dim).map(|s| params.negate_rank(s)).collect(),
                add: vec![0; dim],
                negate: true,
            });
        }
        Ok(map)
    }
}

/// `g[s] = add[s] ± f[src[s]]` on exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionMap {
    d: u32,
    src: Vec<usize>,
    add: Vec<u32>,
    negate: bool,
}

impl FunctionMap {
    fn with_add(d: u32, add: Vec<u32>) -> Self {
        FunctionMap {
            d,
            src: (0..add.len()).collect(),
            add,
            negate: false,
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FunctionMap) -> FunctionMap {
        let d = self.d;
        let src = other.src.iter().map(|&s| self.src[s]).collect();
        let add = other
            .src
            .iter()
            .zip(&other.add)
            .map(|(&s, &a)| {
                let inner = if other.negate { (d - self.add[s]) % d } else { self.add[s] };
                (a + inner) % d
            })
            .collect();
        FunctionMap {
            d,
            src,
            add,
            negate: self.negate ^ other.negate,
        }
    }

    pub fn apply_into(&self, f: &[u32], out: &mut [u32]) {
        let d = self.d;
        for ((o, &s), &a) in out.iter_mut().zip(&self.src).zip(&self.add) {
            let v = if self.negate { (d - f[s]) % d } else { f[s] };
            *o = (a + v) % d;
        }
    }

    pub fn apply(&self, f: &[u32]) -> Vec<u32> {
        let mut out = vec![0; f.len()];
        self.apply_into(f, &mut out);
        out
    }
}

/// A generating set together with its `(d, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroup {
    params: Params,
    generators: Vec<SymmetryOp>,
}

/// Cap on the group elements visited by [`SymmetryGroup::order`].
const ORDER_LIMIT: usize = 1 << 22;

impl SymmetryGroup {
    pub fn new(params: Params, generators: Vec<SymmetryOp>) -> Result<Self> {
        for g in &generators {
            g.validate(&params)?;
        }
        Ok(SymmetryGroup { params, generators })
    }

    fn transpositions(n: usize) -> impl Iterator<Item = SymmetryOp> {
        (1..n).map(move |i| SymmetryOp::transposition(n, i - 1, i))
    }

    /// Party transpositions, per-party shifts, the simultaneous `A ↔ B` swap
    /// and the global phase `ω`. This is the group behind the 243-class
    /// census of `H_{3,2}`.
    pub fn census(params: Params) -> Self {
        let n = params.n() as usize;
        let mut gens: Vec<SymmetryOp> = Self::transpositions(n).collect();
        gens.extend((0..n).map(|i| SymmetryOp::shift(n, i, 1)));
        if n > 0 {
            gens.push(SymmetryOp::swap_all(n));
        }
        gens.push(SymmetryOp::phase(n, 1));
        SymmetryGroup {
            params,
            generators: gens,
        }
    }

    /// Every generator `SymmetryOp` can express: also independent swaps and
    /// conjugation.
    pub fn full(params: Params) -> Self {
        let n = params.n() as usize;
        let mut gens: Vec<SymmetryOp> = Self::transpositions(n).collect();
        gens.extend((0..n).map(|i| SymmetryOp::shift(n, i, 1)));
        gens.extend((0..n).map(|i| SymmetryOp::swap(n, i)));
        gens.push(SymmetryOp::phase(n, 1));
        gens.push(SymmetryOp::conjugation(n));
        SymmetryGroup {
            params,
            generators: gens,
        }
    }

    /// The subgroup generated by the generators that keep real polynomials
    /// real (everything except non-trivial phases).
    pub fn reality_preserving(&self) -> Self {
        SymmetryGroup {
            params: self.params,
            generators: self
                .generators
                .iter()
                .filter(|g| g.global_phase == 0)
                .cloned()
                .collect(),
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn generators(&self) -> &[SymmetryOp] {
        &self.generators
    }

    pub fn function_maps(&self) -> Result<Vec<FunctionMap>> {
        self.generators
            .iter()
            .map(|g| g.function_map(&self.params))
            .collect()
    }

    /// Group order, from the closure of the generators acting on the
    /// `d·D` terms `ω^j A^r`.
    pub fn order(&self) -> Result<u64> {
        let params = &self.params;
        let d = params.d() as usize;
        let dim = params.dim();
        let points = dim * d;
        let gens: Vec<Vec<u32>> = self
            .generators
            .iter()
            .map(|g| {
                let mut perm = vec![0u32; points];
                for r in 0..dim {
                    let target = g.map_index(params, &params.decode(r)).rank();
                    for j in 0..d {
                        let mut k = (j + g.global_phase as usize) % d;
                        if g.conjugate {
                            k = (d - k) % d;
                        }
                        perm[r * d + j] = (target * d + k) as u32;
                    }
                }
                perm
            })
            .collect();
        let identity: Vec<u32> = (0..points as u32).collect();
        let mut seen = HashSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                let q: Vec<u32> = p.iter().map(|&x| g[x as usize]).collect();
                if seen.insert(q.clone()) {
                    if seen.len() > ORDER_LIMIT {
                        return Err(Error::LimitExceeded {
                            what: "the symmetry group order",
                            size: seen.len() as u128,
                            limit: ORDER_LIMIT as u128,
                            hint: "group orders are only computed for small (d, n)",
                        });
                    }
                    queue.push_back(q);
                }
            }
        }
        Ok(seen.len() as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bellpoly::{enumerate_functions, polynomial_of, DitFunction};
    use crate::cyclotomic::Cyclotomic;

    fn p(d: u32, n: u32) -> Params {
        Params::new(d, n).unwrap()
    }

    #[test]
    fn circular_substitution() {
        // A² -> AB -> B² -> A²
        let params = p(3, 1);
        let r = Cyclotomic::new(3).unwrap();
        let poly = BellPolynomial::new_unchecked(params, vec![r.int(1), r.int(2), r.int(3)]);
        let moved = SymmetryOp::shift(1, 0, 1).apply(&poly).unwrap();
        assert_eq!(moved.coeffs(), &[r.int(3), r.int(1), r.int(2)]);
    }

    #[test]
    fn identity_and_involutions() {
        let params = p(3, 2);
        let f = DitFunction::from_index(params, 12345).unwrap();
        let poly = polynomial_of(&f).unwrap();
        assert_eq!(SymmetryOp::identity(2).apply(&poly).unwrap(), poly);
        let conj = SymmetryOp::conjugation(2);
        assert_eq!(conj.apply(&conj.apply(&poly).unwrap()).unwrap(), poly);
    }

    #[test]
    fn function_map_matches_coefficient_action() {
        let params = p(3, 2);
        let mut op = SymmetryOp::identity(2);
        op.party_perm = vec![1, 0];
        op.shifts = vec![2, 1];
        op.swaps = vec![true, false];
        op.global_phase = 1;
        op.conjugate = true;
        let map = op.function_map(&params).unwrap();
        for f in enumerate_functions(params, 1 << 26).unwrap().step_by(97) {
            let g = DitFunction::new(params, map.apply(f.exponents())).unwrap();
            assert_eq!(
                polynomial_of(&g).unwrap(),
                op.apply(&polynomial_of(&f).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn generators_are_closed_on_h31() {
        let params = p(3, 1);
        for g in SymmetryGroup::full(params).generators() {
            for f in enumerate_functions(params, 27).unwrap() {
                let image = g.apply(&polynomial_of(&f).unwrap()).unwrap();
                assert!(image.generating_function().is_ok());
            }
        }
    }

    #[test]
    fn group_orders() {
        // n = 1: shifts, phase and the swap form a group of order 3·3·2
        assert_eq!(SymmetryGroup::census(p(3, 1)).order().unwrap(), 18);
        assert_eq!(SymmetryGroup::full(p(3, 1)).order().unwrap(), 36);
        assert_eq!(SymmetryGroup::census(p(3, 0)).order().unwrap(), 3);
        assert_eq!(SymmetryGroup::full(p(3, 0)).order().unwrap(), 6);
    }

    #[test]
    fn rejects_bad_ops() {
        let params = p(3, 2);
        let mut op = SymmetryOp::identity(2);
        op.party_perm = vec![0, 0];
        assert!(op.function_map(&params).is_err());
        assert!(SymmetryOp::identity(3).function_map(&params).is_err());
        assert!(SymmetryOp::phase(2, 3).function_map(&params).is_err());
    }
}
