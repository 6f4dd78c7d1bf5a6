//! Serializable records for the command-line front end.
//!
//! Complex numbers are written as `[re, im]` pairs; exact cyclotomic values
//! as their coefficient vectors over `1, ω, ..., ω^(d-1)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bellpoly::{CensusSummary, DitFunction};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::params::Params;
use crate::polytope::{FacetVector, Membership};
use crate::quantum::ViolationReport;

pub fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn pairs(zs: &[Complex64]) -> Vec<[f64; 2]> {
    zs.iter().copied().map(pair).collect()
}

pub fn exact_coeffs(xs: &[CycNum]) -> Vec<Vec<i64>> {
    xs.iter().map(|x| x.coeffs().to_vec()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialRecord {
    pub d: u32,
    pub n: u32,
    pub f_exponents: Vec<u32>,
    /// Exact coefficients; present for prime `d`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coeffs: Option<Vec<Vec<i64>>>,
    /// Floating coefficients; present for composite `d`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coeffs_complex: Option<Vec<[f64; 2]>>,
    pub real: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbit_id: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbit_size: Option<u64>,
}

impl PolynomialRecord {
    pub fn new(f: &DitFunction) -> Self {
        let params = f.params();
        let (coeffs, coeffs_complex, real) = match f.spectrum() {
            Ok(hat) => {
                let real = hat.iter().all(CycNum::is_real);
                (Some(exact_coeffs(&hat)), None, real)
            }
            Err(_) => {
                let hat = f.spectrum_complex();
                let real = hat.iter().all(|z| z.im.abs() < 1e-9);
                (None, Some(pairs(&hat)), real)
            }
        };
        PolynomialRecord {
            d: params.d(),
            n: params.n(),
            f_exponents: f.exponents().to_vec(),
            coeffs,
            coeffs_complex,
            real,
            orbit_id: None,
            orbit_size: None,
        }
    }

    pub fn with_orbit(mut self, id: usize, size: u64) -> Self {
        self.orbit_id = Some(id);
        self.orbit_size = Some(size);
        self
    }
}

/// A facet together with its value at some correlation vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FacetRecord {
    pub d: u32,
    pub n: u32,
    pub f_exponents: Vec<u32>,
    pub c_re: f64,
    pub c_im: f64,
    pub beta: Vec<[f64; 2]>,
    pub value: f64,
    pub verdict: String,
}

impl FacetRecord {
    pub fn new(facet: &FacetVector, m: &Membership) -> Self {
        let params = facet.function().params();
        let c = facet.normalization();
        FacetRecord {
            d: params.d(),
            n: params.n(),
            f_exponents: facet.function().exponents().to_vec(),
            c_re: c.re,
            c_im: c.im,
            beta: pairs(facet.beta()),
            value: m.worst_value,
            verdict: m.verdict.name().into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub d: u32,
    pub n: u32,
    pub f_exponents: Vec<u32>,
    pub convention: String,
    pub bound: f64,
    pub optimal_state: Vec<[f64; 2]>,
    pub saturating_facet_value: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbit_id: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbit_size: Option<u64>,
}

impl ViolationRecord {
    pub fn new(r: &ViolationReport) -> Self {
        let params = r.function.params();
        ViolationRecord {
            d: params.d(),
            n: params.n(),
            f_exponents: r.function.exponents().to_vec(),
            convention: r.convention.name().into(),
            bound: r.bound,
            optimal_state: pairs(r.optimal_state.amplitudes()),
            saturating_facet_value: r.saturating_facet_value,
            orbit_id: None,
            orbit_size: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub d: u32,
    pub n: u32,
    pub group: String,
    pub group_order: Option<u64>,
    pub total: u64,
    pub orbits: usize,
    pub real: u64,
    pub real_orbits: usize,
    pub real_orbits_restricted: usize,
}

impl ClassifyRecord {
    pub fn new(params: &Params, group: &str, order: Option<u64>, s: &CensusSummary) -> Self {
        ClassifyRecord {
            d: params.d(),
            n: params.n(),
            group: group.into(),
            group_order: order,
            total: s.total,
            orbits: s.orbits,
            real: s.real,
            real_orbits: s.real_orbits,
            real_orbits_restricted: s.real_orbits_restricted,
        }
    }
}

/// Summary of a violation sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationSummary {
    pub d: u32,
    pub n: u32,
    pub convention: String,
    pub functions: u64,
    pub orbits: usize,
    pub max_bound: f64,
    /// Functions whose bound is within `1e-9` of the maximum.
    pub maximizers: u64,
    pub violating: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub status: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub d: u32,
    pub n: u32,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub f_exponents: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<Vec<Vec<Vec<i64>>>>,
    pub entries: Vec<Vec<[f64; 2]>>,
}

/// Parses a correlation vector given as a JSON array of `[re, im]` pairs.
pub fn parse_correlations(text: &str) -> Result<Vec<Complex64>> {
    let raw: Vec<[f64; 2]> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(raw.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
}

/// Twelve significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = format!("{x:.11e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            fixed
        }
    } else {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exp}")
    }
}

/// `re,im` columns for a complex vector.
pub fn csv_pairs(zs: &[Complex64]) -> String {
    zs.iter()
        .map(|z| format!("{},{}", sig12(z.re), sig12(z.im)))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn exponents_field(e: &[u32]) -> String {
    e.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(-0.5), "-0.5");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(1.532088886237956), "1.53208888624");
        assert_eq!(sig12(123456789.0), "123456789");
        assert_eq!(sig12(1e-9), "1e-9");
        assert_eq!(sig12(0.0), "0");
    }

    #[test]
    fn correlation_input() {
        let v = parse_correlations("[[1, 0], [0.5, -0.25]]").unwrap();
        assert_eq!(v, vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, -0.25)]);
        assert!(matches!(parse_correlations("[1, 2]"), Err(Error::Parse(_))));
    }

    #[test]
    fn polynomial_record_shape() {
        let params = Params::new(3, 1).unwrap();
        let f = DitFunction::new(params, vec![1, 2, 2]).unwrap();
        let json = serde_json::to_string(&PolynomialRecord::new(&f).with_orbit(4, 6)).unwrap();
        assert_eq!(
            json,
            r#"{"d":3,"n":1,"f_exponents":[1,2,2],"coeffs":[[-2,-1,0],[1,2,0],[1,2,0]],"real":false,"orbit_id":4,"orbit_size":6}"#
        );
    }
}
