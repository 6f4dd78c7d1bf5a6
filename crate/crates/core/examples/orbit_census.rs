//! Orbits of Bell polynomials under relabelling symmetries.

use ditbell::bellpoly::{classify_orbits, polynomial_of, SymmetryGroup};
use ditbell::{Params, Result};

fn main() -> Result<()> {
    let params = Params::new(3, 2)?;
    for group in [SymmetryGroup::census(params), SymmetryGroup::full(params)] {
        let table = classify_orbits(&group, 1 << 20)?;
        let s = table.summary(&group)?;
        println!(
            "|G| = {:>3}: {} functions, {} orbits, {} real, {} real orbits",
            group.order()?,
            s.total,
            s.orbits,
            s.real,
            s.real_orbits
        );
    }

    let group = SymmetryGroup::census(params);
    let table = classify_orbits(&group, 1 << 20)?;
    println!("real orbit representatives:");
    for orbit in table.orbits().iter().filter(|o| o.real_members > 0) {
        let f = ditbell::bellpoly::DitFunction::from_index(params, orbit.representative)?;
        println!("  size {:>3}: {}", orbit.size, polynomial_of(&f)?);
    }
    Ok(())
}
