//! The DFT on Z_d^n, its matrix, and the transform rules.

use ditbell::bellpoly::DitFunction;
use ditbell::dft::{self, rules};
use ditbell::{MultiIndex, Params, Result};

fn main() -> Result<()> {
    let params = Params::new(3, 1)?;
    println!("H_3 =\n{}", dft::build_matrix(&params, 64)?);

    let two = Params::new(3, 2)?;
    let f = DitFunction::new(two, vec![0, 1, 2, 1, 0, 0, 2, 2, 1])?;
    let v = f.values()?;
    let hat = dft::dft(&v, &two)?;
    assert_eq!(dft::dft_fast(&v, &two)?, hat);
    assert_eq!(dft::idft(&hat, &two)?, v);
    for (r, c) in hat.iter().enumerate() {
        println!("f̂{:?} = {c}", two.decode(r).digits());
    }

    // shifting f by δ multiplies f̂(r) by ω^(-r·δ)
    let delta = MultiIndex::new(3, vec![1, 2])?;
    let shifted = dft::dft(&rules::shift(&v, &delta, &two)?, &two)?;
    let ok = (0..two.dim()).all(|r| {
        shifted[r] == hat[r].mul_root(-(two.decode(r).dot_mod(&delta) as i64))
    });
    println!("shift rule holds: {ok}");
    Ok(())
}
