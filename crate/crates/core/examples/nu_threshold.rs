//! The ν table of a pair of ideals and the bracket it gives on the
//! threshold.

use frobmult::frobenius::{nu_table, threshold_bracket};
use frobmult::{CoefficientField, Ideal, RingPresentation, Variable};

fn main() -> frobmult::Result<()> {
    let ring = RingPresentation::polynomial_ring(
        CoefficientField::prime(3)?,
        vec![Variable::new("x", 1), Variable::new("y", 1)],
    )?;
    let a = Ideal::parse(&ring, &["x", "y"])?;
    let j = Ideal::parse(&ring, &["x^2", "y^3"])?;
    let table = nu_table(&a, &j, 3)?;
    print!("{}", table.to_csv_string()?);
    let estimate = threshold_bracket(&table)?;
    println!(
        "lower bound {}, extrapolated {}, monotone {}",
        estimate.lower, estimate.extrapolated, estimate.monotone
    );
    Ok(())
}
