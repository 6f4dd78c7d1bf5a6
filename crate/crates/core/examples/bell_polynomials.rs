//! Bell polynomials from functions, their bowtie composition and CHSH.

use ditbell::bellpoly::{bowtie, compact_form_check, polynomial_of, DitFunction};
use ditbell::{Params, Result};

fn main() -> Result<()> {
    let one = Params::new(3, 1)?;
    let f = DitFunction::new(one, vec![1, 2, 2])?;
    let p = polynomial_of(&f)?;
    println!("f = {:?}", f.exponents());
    println!("P_f = {p}");
    println!("real: {}, degree: {}", p.is_real(), p.degree());
    assert_eq!(p.generating_function()?, f);

    // CHSH: f(s1, s2) = (-1)^(s1 s2) on two bits
    let chsh = DitFunction::new(Params::new(2, 2)?, vec![0, 0, 0, 1])?;
    println!("CHSH = {}", polynomial_of(&chsh)?);

    // three single-party polynomials joined into one two-party polynomial
    let parts = [vec![0, 0, 0], vec![0, 1, 0], vec![0, 2, 0]]
        .into_iter()
        .map(|e| polynomial_of(&DitFunction::new(one, e)?))
        .collect::<Result<Vec<_>>>()?;
    let joined = bowtie(&parts)?;
    println!("bowtie = {joined}");
    println!("generating function: {:?}", joined.generating_function()?.exponents());

    println!("compact form reproduces all 27 single-party polynomials: {}", compact_form_check()?);
    Ok(())
}
