//! How each monomial X^(d-1-r) Z^r is read off a single observable.

use ditbell::quantum::{measurement_plan, Observable};
use ditbell::Result;

fn main() -> Result<()> {
    for d in [3, 5, 7] {
        println!("d = {d}");
        for r in 0..d {
            let plan = measurement_plan(d, r)?;
            let observable = match plan.observable {
                Observable::Z => "Z".to_string(),
                Observable::XZ(k) => format!("X Z^{k}"),
            };
            let phase = match plan.phase.as_root() {
                Some(0) => "1".to_string(),
                Some(k) => format!("ω^{k}"),
                None => plan.phase.to_string(),
            };
            println!(
                "  r = {r}: measure {observable:<7} raise to {} times {phase:<4} exact: {}",
                plan.power,
                plan.is_correct()?
            );
        }
    }
    Ok(())
}
