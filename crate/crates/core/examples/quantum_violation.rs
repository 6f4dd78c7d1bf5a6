//! Quantum violation of a single-party inequality and of the best
//! two-party one.

use ditbell::bellpoly::{enumerate_functions, DitFunction};
use ditbell::polytope::{self, Convention};
use ditbell::quantum::{self, correlation_vector_of_state};
use ditbell::{Params, Result};

fn main() -> Result<()> {
    let one = Params::new(3, 1)?;
    let f = DitFunction::new(one, vec![1, 2, 2])?;
    let report = quantum::violation_bound(&f, Convention::Regauged, 64)?;
    println!("f = {:?}: bound {:.9}", f.exponents(), report.bound);
    for (s, a) in report.optimal_state.amplitudes().iter().enumerate() {
        println!("  |{s}⟩  {:+.4} {:+.4}i", a.re, a.im);
    }

    let xi = correlation_vector_of_state(&report.optimal_state, &one)?;
    let m = polytope::membership(&xi, Convention::Regauged, 1 << 20)?;
    println!("its correlations are {} (worst facet value {:.6})", m.verdict.name(), m.worst_value);

    let two = Params::new(3, 2)?;
    let mut best = (0.0, None);
    for g in enumerate_functions(two, 1 << 20)? {
        let b = quantum::violation_bound(&g, Convention::Regauged, 64)?.bound;
        if b > best.0 + 1e-9 {
            best = (b, Some(g));
        }
    }
    let (bound, g) = best;
    println!("two parties: max bound {bound:.9} at {:?}", g.map(|g| g.exponents().to_vec()));
    Ok(())
}
