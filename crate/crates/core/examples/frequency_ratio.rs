//! The frequency ratio ω₁/ω₂ as a function of α/ε and the two couplings at
//! which it equals 2.

use kerr_chain::closed::{frequency_ratio, resonant_epsilon, resonant_period};
use kerr_chain::Branch;

fn main() -> kerr_chain::Result<()> {
    for r in [0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0] {
        println!(
            "alpha/epsilon = {r:>5}: omega1/omega2 = {:.6}",
            frequency_ratio(r, 1.0)?
        );
    }
    let alpha = 0.001;
    for b in [Branch::Plus, Branch::Minus] {
        let eps = resonant_epsilon(alpha, b);
        println!(
            "{b:?}: epsilon = {eps:.6e}, ratio = {:.12}, T = {:.4}",
            frequency_ratio(alpha, eps)?,
            resonant_period(alpha, b)
        );
    }
    Ok(())
}
