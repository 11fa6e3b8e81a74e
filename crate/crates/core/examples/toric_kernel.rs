//! Presenting a monomial subalgebra: the kernel of `k[a,b,c] -> k[t]`,
//! `(a, b, c) -> (t^3, t^4, t^5)`.

use frobmult::elimination::monomial_map_kernel;
use frobmult::hilbert;
use frobmult::{CoefficientField, Variable};

fn main() -> frobmult::Result<()> {
    let toric = monomial_map_kernel(
        CoefficientField::Rationals,
        &[Variable::new("t", 1)],
        &["t^3", "t^4", "t^5"],
        Some(&["a", "b", "c"]),
    )?;
    println!("{}", toric.ring.describe());
    println!("variable degrees {:?}", toric.ring.ring().weights());
    println!("dimension {}", hilbert::krull_dimension(&toric.ring)?);
    Ok(())
}
