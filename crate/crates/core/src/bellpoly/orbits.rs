//! Orbit census of `H_{d,n}` by breadth-first closure over function indices.

use std::collections::VecDeque;

use crate::error::Result;
use crate::params::Params;

use super::symmetry::{FunctionMap, SymmetryGroup};
use super::{decode_into, encode, spectrum_of, DitFunction};

const UNSEEN: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub id: usize,
    /// Smallest function index in the orbit (lexicographically minimal exponents).
    pub representative: u64,
    pub size: u64,
    /// Number of members whose polynomial has only real coefficients.
    pub real_members: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTable {
    params: Params,
    orbit_of: Vec<u32>,
    real: Vec<bool>,
    orbits: Vec<Orbit>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusSummary {
    pub total: u64,
    pub orbits: usize,
    pub real: u64,
    /// Orbits of the whole family that contain a real polynomial.
    pub real_orbits: usize,
    /// Orbits of the real subset under the reality-preserving subgroup.
    pub real_orbits_restricted: usize,
}

impl OrbitTable {
    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit_of(&self, index: u64) -> &Orbit {
        &self.orbits[self.orbit_of[index as usize] as usize]
    }

    pub fn is_real(&self, index: u64) -> bool {
        self.real[index as usize]
    }

    pub fn len(&self) -> usize {
        self.orbit_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit_of.is_empty()
    }

    pub fn representatives(&self) -> impl Iterator<Item = DitFunction> + '_ {
        self.orbits
            .iter()
            .map(|o| DitFunction::from_index(self.params, o.representative).expect("index in range"))
    }
}

/// Partitions `F_{d,n}` into orbits of `group`. Orbit ids follow the order
/// of their smallest member.
pub fn classify_orbits(group: &SymmetryGroup, limit: u64) -> Result<OrbitTable> {
    let params = *group.params();
    let count = params.check_enumerable(limit)? as usize;
    let maps = group.function_maps()?;
    let real = real_flags(&params, count)?;
    let (orbit_of, sizes) = closure(&params, &maps, count, None);
    let mut orbits: Vec<Orbit> = sizes
        .iter()
        .enumerate()
        .map(|(id, &(rep, size))| Orbit {
            id,
            representative: rep,
            size,
            real_members: 0,
        })
        .collect();
    for (k, &o) in orbit_of.iter().enumerate() {
        if real[k] {
            orbits[o as usize].real_members += 1;
        }
    }
    Ok(OrbitTable {
        params,
        orbit_of,
        real,
        orbits,
    })
}

impl OrbitTable {
    pub fn summary(&self, group: &SymmetryGroup) -> Result<CensusSummary> {
        let restricted = group.reality_preserving().function_maps()?;
        let (_, real_classes) = closure(&self.params, &restricted, self.len(), Some(&self.real));
        Ok(CensusSummary {
            total: self.len() as u64,
            orbits: self.orbits.len(),
            real: self.real.iter().filter(|&&r| r).count() as u64,
            real_orbits: self.orbits.iter().filter(|o| o.real_members > 0).count(),
            real_orbits_restricted: real_classes.len(),
        })
    }
}

fn real_flags(params: &Params, count: usize) -> Result<Vec<bool>> {
    crate::cyclotomic::Cyclotomic::new(params.d())?;
    let table = params.dot_table();
    let d = params.d();
    let mut exps = vec![0u32; params.dim()];
    Ok((0..count as u64)
        .map(|k| {
            decode_into(k, d, &mut exps);
            spectrum_of(&exps, &table, d).iter().all(|c| c.is_real())
        })
        .collect())
}

/// BFS over indices; when `subset` is given only its members are visited.
/// Returns the orbit of every index and `(representative, size)` per orbit.
fn closure(
    params: &Params,
    maps: &[FunctionMap],
    count: usize,
    subset: Option<&[bool]>,
) -> (Vec<u32>, Vec<(u64, u64)>) {
    let d = params.d();
    let dim = params.dim();
    let mut orbit_of = vec![UNSEEN; count];
    let mut orbits = Vec::new();
    let mut queue = VecDeque::new();
    let mut current = vec![0u32; dim];
    let mut image = vec![0u32; dim];
    for start in 0..count {
        if orbit_of[start] != UNSEEN || subset.is_some_and(|s| !s[start]) {
            continue;
        }
        let id = orbits.len() as u32;
        orbit_of[start] = id;
        queue.push_back(start as u64);
        let mut size = 0u64;
        while let Some(k) = queue.pop_front() {
            size += 1;
            decode_into(k, d, &mut current);
            for map in maps {
                map.apply_into(&current, &mut image);
                let next = encode(&image, d) as usize;
                if orbit_of[next] == UNSEEN {
                    orbit_of[next] = id;
                    queue.push_back(next as u64);
                }
            }
        }
        // starts are scanned in increasing order, so `start` is the minimum
        orbits.push((start as u64, size));
    }
    (orbit_of, orbits)
}
