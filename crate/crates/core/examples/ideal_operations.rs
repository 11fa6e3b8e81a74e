//! Gröbner bases, membership, colon and intersection in a quotient ring.

use frobmult::elimination::{colon_ideal, intersect};
use frobmult::{CoefficientField, Ideal, RingPresentation, Variable};

fn main() -> frobmult::Result<()> {
    let vars = ["a", "b", "c", "d"].map(|n| Variable::new(n, 1)).to_vec();
    let ring = RingPresentation::parse(
        CoefficientField::prime(2)?,
        vars,
        &["b^2 - a*c", "c^2 - b*d", "b*c - a*d"],
    )?;
    println!("ring: {}", ring.describe());

    let j = Ideal::parse(&ring, &["a", "d"])?;
    let gb = j.groebner()?;
    println!("reduced basis of (a, d): {:?}", gb.basis().iter().map(|f| ring.ring().format(f)).collect::<Vec<_>>());

    let m = Ideal::maximal(&ring);
    let m2 = m.power(2)?;
    println!("m^2 inside (a, d): {}", j.contains_ideal(&m2)?);
    println!("m^3 inside (a, d): {}", j.contains_ideal(&m.power(3)?)?);

    let colon = colon_ideal(&j, &m)?;
    println!("(a, d) : m = ({})", colon.format_gens().join(", "));
    let meet = intersect(&j, &Ideal::parse(&ring, &["b", "c"])?)?;
    println!("(a, d) ∩ (b, c) = ({})", meet.format_gens().join(", "));
    Ok(())
}
