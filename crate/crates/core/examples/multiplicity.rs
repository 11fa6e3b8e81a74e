//! Hilbert series, Krull dimension and multiplicities, with the
//! Hilbert–Samuel function as a cross-check.

use frobmult::hilbert;
use frobmult::{CoefficientField, Ideal, RingPresentation, Variable};

fn main() -> frobmult::Result<()> {
    let vars = vec![Variable::new("a", 2), Variable::new("b", 3)];
    let cusp = RingPresentation::parse(CoefficientField::Rationals, vars, &["b^2 - a^3"])?;
    let series = hilbert::hilbert_series(&cusp)?;
    println!("k[t^2, t^3]: numerator {:?}, denominator weights {:?}", series.numerator(), series.denom_weights());
    println!("dimension {}", hilbert::krull_dimension(&cusp)?);

    for gens in [&["a"][..], &["b"], &["a", "b"]] {
        let ideal = Ideal::parse(&cusp, gens)?;
        let e = hilbert::multiplicity(&ideal)?;
        let samuel = hilbert::hilbert_samuel_oracle(&ideal, 6)?;
        let length = hilbert::quotient_length(&ideal)?;
        println!(
            "({}): e = {e}, Hilbert–Samuel {} (stable: {}), length {length:?}",
            gens.join(", "),
            samuel.multiplicity,
            samuel.stabilized
        );
    }
    Ok(())
}
