//! Two-outcome inequalities: every f gives Re Σ f̂(r) E(a^r) ≤ 2^n on
//! local correlations, with equality somewhere.

use ditbell::bellpoly::enumerate_functions;
use ditbell::polytope::{self, werner_wolf_value};
use ditbell::{Params, Result};

fn main() -> Result<()> {
    let params = Params::new(2, 2)?;
    let vertices = polytope::vertices(&params, 64)?;
    let mut tight = 0;
    for f in enumerate_functions(params, 1 << 20)? {
        let best = vertices
            .iter()
            .map(|v| werner_wolf_value(&f, &v.vector(&params)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(f64::MIN, f64::max);
        assert!(best <= 1.0 + 1e-12);
        if (best - 1.0).abs() < 1e-12 {
            tight += 1;
        }
    }
    println!("{tight} of 16 inequalities are tight at some vertex");
    Ok(())
}
