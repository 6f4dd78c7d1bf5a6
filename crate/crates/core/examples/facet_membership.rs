//! Facets of the local polytope and membership of correlation vectors.

use ditbell::bellpoly::DitFunction;
use ditbell::polytope::{self, Convention, CorrelationVector, Strategy};
use ditbell::{Params, Result};
use num_complex::Complex64;

fn main() -> Result<()> {
    let params = Params::new(3, 2)?;
    let f = DitFunction::from_index(params, 4242)?;
    let facet = polytope::facet_vector(&f, Convention::Raw)?;
    println!("c = {:.6}", facet.normalization());

    let best = polytope::vertices(&params, 1024)?
        .iter()
        .map(|v| facet.evaluate(&v.vector(&params)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::MIN, f64::max);
    println!("largest value over deterministic vertices: {best:.9}");

    let mixture = [
        Strategy { a: vec![0, 1], b: vec![2, 0], weight: 0.5 },
        Strategy { a: vec![1, 1], b: vec![0, 2], weight: 0.3 },
        Strategy { a: vec![2, 0], b: vec![1, 1], weight: 0.2 },
    ];
    let xi = polytope::lhv_sample(&params, &mixture)?;
    let m = polytope::membership(&xi, Convention::Raw, 1 << 20)?;
    println!("local mixture: {} ({:.6})", m.verdict.name(), m.worst_value);

    let noisy = CorrelationVector::new(params, vec![Complex64::new(0.9, 0.3); 9])?;
    let m = polytope::membership(&noisy, Convention::Raw, 1 << 20)?;
    println!(
        "uniform vector: {} ({:.6}, facet {:?})",
        m.verdict.name(),
        m.worst_value,
        m.worst_facet.exponents()
    );
    Ok(())
}
