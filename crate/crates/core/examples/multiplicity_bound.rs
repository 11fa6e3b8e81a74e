//! The multiplicity inequality for a pair of ideals, and its per-q form.

use frobmult::bounds::{verify_main_inequality, verify_nu_bounds};
use frobmult::frobenius::nu_table;
use frobmult::{CoefficientField, Ideal, RingPresentation, Variable};

fn main() -> frobmult::Result<()> {
    let vars = ["a", "b", "c", "d"].map(|n| Variable::new(n, 1)).to_vec();
    let ring = RingPresentation::parse(
        CoefficientField::prime(2)?,
        vars,
        &["b^2 - a*c", "c^2 - b*d", "b*c - a*d"],
    )?;
    let a = Ideal::parse(&ring, &["a", "d"])?;
    let j = Ideal::parse(&ring, &["a^2", "d^2"])?;

    let report = verify_main_inequality(&a, &j)?;
    println!(
        "d = {}, e(a) = {}, e(J) = {}, N = {}: {} >= {} ({}, proportional: {})",
        report.d, report.e_a, report.e_j, report.n, report.lhs, report.rhs, report.verdict, report.proportional
    );

    let table = nu_table(&a, &j, 4)?;
    for row in verify_nu_bounds(&a, &j, &table)? {
        println!("q = {:>2}, nu = {:>2}: {} >= {} ({})", row.q, row.nu, row.lhs, row.rhs, row.verdict);
    }
    Ok(())
}
