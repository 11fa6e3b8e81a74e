//! Cubic Veronese in characteristic 2: the jump of the test-ideal filtration
//! against the extrapolated ν bracket.

use frobmult::bounds::veronese_fjn_demo;

fn main() -> frobmult::Result<()> {
    let report = veronese_fjn_demo(2, 4)?;
    for row in &report.threshold_estimate.table.rows {
        println!("q = {:>2}: nu = {:>2}, nu/q = {}", row.q, row.nu, row.ratio);
    }
    for (k, gens) in &report.jumps {
        println!("tau at {k}/3: ({})", gens.join(", "));
    }
    println!("fjn = {}, pt estimate = {}", report.t_star, report.threshold_estimate.extrapolated);
    Ok(())
}
