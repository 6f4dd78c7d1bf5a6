//! The local domain `Ω = conv{u ξ_r}` and its facets `Re⟨β_f, ξ⟩ ≤ 1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::bellpoly::{decode_into, DitFunction};
use crate::dft;
use crate::error::{check_len, Error, Result};
use crate::params::{MultiIndex, Params};

/// Absolute tolerance on facet evaluations.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
/// Tolerance on the total weight of an LHV mixture.
pub const WEIGHT_TOL: f64 = 1e-12;

/// Prefactor convention. `Regauged` replaces `f` by `ωf` at `d = 3`, which
/// turns the prefactor `-2ω²/3^n` into the real `-2/3^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    #[default]
    Raw,
    Regauged,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Raw => "raw",
            Convention::Regauged => "regauged",
        }
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(Convention::Raw),
            "regauged" => Ok(Convention::Regauged),
            other => Err(Error::InvalidArgument(format!("unknown convention {other:?}"))),
        }
    }
}

/// `ρ = exp(iπ/d)`.
pub fn rho(d: u32) -> Complex64 {
    Complex64::from_polar(1.0, PI / d as f64)
}

/// `c = ρ / (D cos(π/d))`, or `-2/3^n` in the regauged convention.
pub fn normalization(params: &Params, convention: Convention) -> Result<Complex64> {
    let d = params.d();
    if d < 3 {
        return Err(Error::OrderTooSmall(d));
    }
    let dim = params.dim() as f64;
    match convention {
        Convention::Raw => Ok(rho(d) / (dim * (PI / d as f64).cos())),
        Convention::Regauged if d == 3 => Ok(Complex64::new(-2.0 / dim, 0.0)),
        Convention::Regauged => Err(Error::InvalidArgument(
            "the regauged convention is only defined for d = 3".into(),
        )),
    }
}

/// Vertices of the dual of `Hull U`: `exp((2k+1)iπ/d) / cos(π/d)`.
pub fn hull_u_dual_vertices(d: u32) -> Result<Vec<Complex64>> {
    if d < 3 {
        return Err(Error::OrderTooSmall(d));
    }
    let scale = 1.0 / (PI / d as f64).cos();
    Ok((0..d)
        .map(|k| Complex64::from_polar(scale, (2 * k + 1) as f64 * PI / d as f64))
        .collect())
}

/// A point of `C^D`, entry `r` standing for `E(a^r)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationVector {
    params: Params,
    entries: Vec<Complex64>,
}

impl CorrelationVector {
    /// Entries must have modulus at most one.
    pub fn new(params: Params, entries: Vec<Complex64>) -> Result<Self> {
        check_len(params.dim(), entries.len())?;
        if let Some(bad) = entries.iter().find(|z| z.norm().is_nan() || z.norm() > 1.0 + MEMBERSHIP_TOL) {
            return Err(Error::InvalidArgument(format!(
                "correlation entry {bad} has modulus above 1"
            )));
        }
        Ok(CorrelationVector { params, entries })
    }

    pub fn zero(params: Params) -> Self {
        CorrelationVector {
            params,
            entries: vec![Complex64::new(0.0, 0.0); params.dim()],
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn times_root(&self, k: u32) -> CorrelationVector {
        let w = dft::root_table(self.params.d())[(k % self.params.d()) as usize];
        CorrelationVector {
            params: self.params,
            entries: self.entries.iter().map(|z| z * w).collect(),
        }
    }
}

/// `u ξ_r = (ω^(u + r·s))_s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub u: u32,
    pub r: MultiIndex,
}

impl Vertex {
    pub fn vector(&self, params: &Params) -> CorrelationVector {
        let roots = dft::root_table(params.d());
        let d = params.d();
        let entries = (0..params.dim())
            .map(|s| roots[((self.u + self.r.dot_mod(&params.decode(s))) % d) as usize])
            .collect();
        CorrelationVector {
            params: *params,
            entries,
        }
    }
}

/// All `d·D` vertices, phase-major.
pub fn vertices(params: &Params, dim_limit: usize) -> Result<Vec<Vertex>> {
    params.check_matrix_dim(dim_limit)?;
    Ok((0..params.d())
        .flat_map(|u| (0..params.dim()).map(move |r| Vertex { u, r: params.decode(r) }))
        .collect())
}

/// `β_f = (c f̂)*`; the inequality is `Re⟨β_f, ξ⟩ ≤ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FacetVector {
    function: DitFunction,
    convention: Convention,
    c: Complex64,
    beta: Vec<Complex64>,
}

pub fn facet_vector(f: &DitFunction, convention: Convention) -> Result<FacetVector> {
    let c = normalization(f.params(), convention)?;
    let beta = spectrum_f64(f).into_iter().map(|x| (c * x).conj()).collect();
    Ok(FacetVector {
        function: f.clone(),
        convention,
        c,
        beta,
    })
}

/// `f̂` as floats, rounded from the exact value when `d` is prime.
pub(crate) fn spectrum_f64(f: &DitFunction) -> Vec<Complex64> {
    match f.spectrum() {
        Ok(exact) => exact.iter().map(|x| x.to_complex()).collect(),
        Err(_) => f.spectrum_complex(),
    }
}

impl FacetVector {
    pub fn function(&self) -> &DitFunction {
        &self.function
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn normalization(&self) -> Complex64 {
        self.c
    }

    pub fn beta(&self) -> &[Complex64] {
        &self.beta
    }

    pub fn evaluate(&self, xi: &CorrelationVector) -> Result<f64> {
        check_len(self.beta.len(), xi.entries.len())?;
        Ok(dft::pairing(&self.beta, &xi.entries).re)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Inside,
    Boundary,
    Outside,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Inside => "inside",
            Verdict::Boundary => "boundary",
            Verdict::Outside => "outside",
        }
    }

    pub fn from_value(max: f64) -> Verdict {
        if max > 1.0 + MEMBERSHIP_TOL {
            Verdict::Outside
        } else if max >= 1.0 - MEMBERSHIP_TOL {
            Verdict::Boundary
        } else {
            Verdict::Inside
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    pub verdict: Verdict,
    pub worst_facet: DitFunction,
    pub worst_value: f64,
}

/// Scans all `d^D` facets. Ties on the maximal value go to the smallest
/// function index, so the answer does not depend on the thread count.
pub fn membership(
    xi: &CorrelationVector,
    convention: Convention,
    limit: u64,
) -> Result<Membership> {
    let params = xi.params;
    let count = params.check_enumerable(limit)?;
    let c = normalization(&params, convention)?;
    // Σ_r f̂(r) ξ_r = Σ_s f(s) ξ̂(s)
    let xi_hat = dft::dft_complex(&xi.entries, &params)?;
    let c_hat: Vec<Complex64> = xi_hat.iter().map(|z| c * z).collect();
    let roots = dft::root_table(params.d());
    let d = params.d();
    let dim = params.dim();
    let (worst_value, worst_index) = (0..count)
        .into_par_iter()
        .map_init(
            || vec![0u32; dim],
            |exps, k| {
                decode_into(k, d, exps);
                let v: f64 = exps
                    .iter()
                    .zip(&c_hat)
                    .map(|(&e, z)| (roots[e as usize] * z).re)
                    .sum();
                (v, k)
            },
        )
        .reduce(|| (f64::NEG_INFINITY, u64::MAX), pick_worst);
    Ok(Membership {
        verdict: Verdict::from_value(worst_value),
        worst_facet: DitFunction::from_index(params, worst_index)?,
        worst_value,
    })
}

fn pick_worst(a: (f64, u64), b: (f64, u64)) -> (f64, u64) {
    if a.0 > b.0 || (a.0 == b.0 && a.1 < b.1) {
        a
    } else {
        b
    }
}

/// A deterministic local strategy: party `i` answers `ω^a[i]` to `A_i` and
/// `ω^b[i]` to `B_i`, used with probability `weight`.
#[derive(Debug, Clone, PartialEq)]
pub struct Strategy {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub weight: f64,
}

impl Strategy {
    /// The vertex `u ξ_r` with `u = Π a_i^(d-1)` and `ω^(r_i) = b_i / a_i`.
    pub fn vertex(&self, params: &Params) -> Result<Vertex> {
        let d = params.d();
        let n = params.n() as usize;
        if self.a.len() != n || self.b.len() != n {
            return Err(Error::InvalidArgument(format!(
                "strategy must assign {n} outcomes per observable"
            )));
        }
        if self.a.iter().chain(&self.b).any(|&x| x >= d) {
            return Err(Error::InvalidArgument(format!("outcome exponent out of range for d = {d}")));
        }
        let u = self.a.iter().map(|&a| a as u64 * (d - 1) as u64).sum::<u64>() % d as u64;
        let r = self.a.iter().zip(&self.b).map(|(&a, &b)| (b + d - a) % d).collect();
        Ok(Vertex {
            u: u as u32,
            r: MultiIndex::new(d, r)?,
        })
    }

    /// `E(a^s) = Π_i a_i^(d-1-s_i) b_i^(s_i)` evaluated directly.
    pub fn correlations(&self, params: &Params) -> Result<CorrelationVector> {
        self.vertex(params)?;
        let d = params.d();
        let roots = dft::root_table(d);
        let entries = (0..params.dim())
            .map(|s| {
                let s = params.decode(s);
                let e: u32 = s
                    .digits()
                    .iter()
                    .enumerate()
                    .map(|(i, &si)| (self.a[i] * (d - 1 - si) + self.b[i] * si) % d)
                    .sum();
                roots[(e % d) as usize]
            })
            .collect();
        Ok(CorrelationVector {
            params: *params,
            entries,
        })
    }
}

/// The correlation vector of a finite mixture of deterministic strategies.
pub fn lhv_sample(params: &Params, strategies: &[Strategy]) -> Result<CorrelationVector> {
    if strategies.is_empty() {
        return Err(Error::InvalidWeights("no strategies given".into()));
    }
    if let Some(s) = strategies.iter().find(|s| s.weight.is_nan() || s.weight < 0.0) {
        return Err(Error::InvalidWeights(format!("negative weight {}", s.weight)));
    }
    let total: f64 = strategies.iter().map(|s| s.weight).sum();
    if (total - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::InvalidWeights(format!("weights sum to {total}")));
    }
    let mut entries = vec![Complex64::new(0.0, 0.0); params.dim()];
    for s in strategies {
        let v = s.vertex(params)?.vector(params);
        for (e, x) in entries.iter_mut().zip(&v.entries) {
            *e += x * s.weight;
        }
    }
    Ok(CorrelationVector {
        params: *params,
        entries,
    })
}

/// Largest `|β_f − (1/D) DFT((ρ/cos(π/d)) f)*|` entry for one `f`.
pub fn duality_residual(f: &DitFunction) -> Result<f64> {
    let params = f.params();
    let facet = facet_vector(f, Convention::Raw)?;
    let d = params.d();
    let scale = rho(d) / (PI / d as f64).cos();
    let pi_vertex: Vec<Complex64> = f.values_complex().iter().map(|v| v * scale).collect();
    let inv_dim = 1.0 / params.dim() as f64;
    let image = dft::dft_complex(&pi_vertex, params)?;
    Ok(facet
        .beta()
        .iter()
        .zip(&image)
        .map(|(b, x)| (b - (x * inv_dim).conj()).norm())
        .fold(0.0, f64::max))
}

/// The vertices of the dual of `Ω` are the transforms of those of the dual
/// of `Π`; checked for every `f ∈ F_{d,n}`.
pub fn dft_duality_check(params: &Params, limit: u64) -> Result<bool> {
    let count = params.check_enumerable(limit)?;
    if params.d() < 3 {
        return Err(Error::OrderTooSmall(params.d()));
    }
    let worst = (0..count)
        .into_par_iter()
        .map(|k| duality_residual(&DitFunction::from_index(*params, k)?))
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
    Ok(worst <= 1e-12)
}

/// Legacy dichotomic check: for `d = 2` the inequalities read
/// `Re Σ_r f̂(r) E(a^r) ≤ 2^n`. Returns the value divided by `2^n`.
pub fn werner_wolf_value(f: &DitFunction, xi: &CorrelationVector) -> Result<f64> {
    let params = f.params();
    if params.d() != 2 {
        return Err(Error::InvalidArgument("the dichotomic bound needs d = 2".into()));
    }
    check_len(params.dim(), xi.entries.len())?;
    let hat = spectrum_f64(f);
    let total: Complex64 = hat.iter().zip(&xi.entries).map(|(a, b)| a * b).sum();
    Ok(total.re / params.dim() as f64)
}
