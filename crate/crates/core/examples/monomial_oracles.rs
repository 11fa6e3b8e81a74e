//! Combinatorial counterparts for monomial ideals of a polynomial ring.

use frobmult::monomial_tools::{monomial_colon, power_containment_nu, staircase_length, MonomialIdeal};
use frobmult::Monomial;

fn main() -> frobmult::Result<()> {
    let j = MonomialIdeal::from_exponents(2, &[&[4, 0], &[0, 6]])?;
    let a = [Monomial::from_exponents(&[1, 0]), Monomial::from_exponents(&[0, 1])];
    println!("length of k[x,y]/(x^4, y^6): {:?}", staircase_length(&j));
    println!("nu of (x, y) against (x^4, y^6): {:?}", power_containment_nu(&j, &a, 20));
    let m = MonomialIdeal::from_exponents(2, &[&[1, 0], &[0, 1]])?;
    let colon = monomial_colon(&j, &m);
    println!("(x^4, y^6) : (x, y) minimal generators: {:?}", colon.gens());
    Ok(())
}
