//! Exact arithmetic in Z[ω] for ω = e^(2πi/5).

use ditbell::{Cyclotomic, Result};

fn main() -> Result<()> {
    let ring = Cyclotomic::new(5)?;
    let w = ring.root(1);
    let x = &ring.int(2) + &w.pow(3);
    let y = &ring.one() - &w;

    println!("x       = {x}");
    println!("y       = {y}");
    println!("x * y   = {}", &x * &y);
    println!("conj(x) = {}", x.conj());
    println!("x ≈ {:.6}", x.to_complex());

    // 1 + ω + ... + ω^4 = 0
    let sum = (0..5).fold(ring.zero(), |acc, k| &acc + &ring.root(k));
    println!("sum of roots is zero: {}", sum.is_zero());

    // |1 - ω|² is a real cyclotomic integer
    let norm = &y * &y.conj();
    println!("|1 - ω|² = {norm} (real: {})", norm.is_real());

    match Cyclotomic::new(6) {
        Ok(_) => println!("composite order accepted"),
        Err(e) => println!("d = 6: {e}"),
    }
    Ok(())
}
