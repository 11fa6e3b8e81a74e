//! Reference values computed by brute force in this file and frozen as
//! constants; the library must reproduce both.

use num_bigint::BigInt;
use num_rational::BigRational;

use frobmult::case::{Case, CORPUS_DIR};
use frobmult::frobenius;
use frobmult::hilbert;
use frobmult::poly::DEFAULT_STEP_LIMIT;

const DIAGONAL_NU_P2: [u64; 5] = [8, 18, 38, 78, 158];
const VERONESE_NU_P2: [u64; 4] = [3, 7, 15, 31];
const CUSP_LENGTHS: [u64; 3] = [2, 3, 6];

fn load(id: &str) -> frobmult::template::Instance {
    Case::load(&std::path::Path::new(CORPUS_DIR).join(format!("{id}.case")))
        .unwrap()
        .instantiate(None, DEFAULT_STEP_LIMIT)
        .unwrap()
}

/// Largest total degree of a monomial of k[x,y] outside `(x^(2q), y^(3q))`.
fn diagonal_brute(q: u64) -> u64 {
    let mut best = 0;
    for i in 0..4 * q {
        for j in 0..4 * q {
            if i < 2 * q && j < 3 * q {
                best = best.max(i + j);
            }
        }
    }
    best
}

/// In the cubic Veronese of k[s,t], `a = s^3` and `d = t^3`. A product of
/// `r` degree-one generators is some `s^i t^j` with `i + j = 3r`, and it lies
/// in `(s^3q, t^3q)` exactly when `i >= 3q` or `j >= 3q`.
fn veronese_brute(q: u64) -> u64 {
    (0..).take_while(|r| (0..=3 * r).any(|i| i < 3 * q && 3 * r - i < 3 * q)).last().unwrap()
}

/// `dim k[t^2, t^3] / I` for `I` generated by monomials in `t`, counted as
/// semigroup elements outside `I`.
fn numerical_length(semigroup_gaps: &[u64], ideal_exps: &[u64], bound: u64) -> u64 {
    let in_semigroup = |n: u64| !semigroup_gaps.contains(&n);
    (0..bound)
        .filter(|&n| in_semigroup(n))
        .filter(|&n| !ideal_exps.iter().any(|&g| n >= g && in_semigroup(n - g)))
        .count() as u64
}

#[test]
fn diagonal_nu() {
    let brute: Vec<u64> = (1..=5).map(|e| diagonal_brute(1 << e)).collect();
    assert_eq!(brute, DIAGONAL_NU_P2);
    let inst = load("diagonal");
    let table = frobenius::nu_table(inst.ideal("a").unwrap(), inst.ideal("J").unwrap(), 5).unwrap();
    assert_eq!(table.nus(), DIAGONAL_NU_P2);
}

#[test]
fn veronese_nu() {
    let brute: Vec<u64> = (1..=4).map(|e| veronese_brute(1 << e)).collect();
    assert_eq!(brute, VERONESE_NU_P2);
    let inst = load("veronese");
    let table = frobenius::nu_table(inst.ideal("m").unwrap(), inst.ideal("J").unwrap(), 4).unwrap();
    assert_eq!(table.nus(), VERONESE_NU_P2);
}

#[test]
fn cusp_lengths() {
    // k[t^2, t^3]: the only gap is t.
    let brute = [
        numerical_length(&[1], &[2], 64),
        numerical_length(&[1], &[3], 64),
        numerical_length(&[1], &[6], 64),
    ];
    assert_eq!(brute, CUSP_LENGTHS);
    let inst = load("cusp");
    let a = inst.ideal("a").unwrap();
    let j = inst.ideal("J").unwrap();
    assert_eq!(hilbert::quotient_length(a).unwrap(), Some(CUSP_LENGTHS[0]));
    assert_eq!(hilbert::quotient_length(j).unwrap(), Some(CUSP_LENGTHS[1]));
    let jj = j.power(2).unwrap();
    assert_eq!(hilbert::quotient_length(&jj).unwrap(), Some(CUSP_LENGTHS[2]));
}

#[test]
fn veronese_multiplicities() {
    let inst = load("veronese");
    let three = BigRational::from_integer(BigInt::from(3));
    assert_eq!(hilbert::multiplicity(inst.ideal("m").unwrap()).unwrap(), three);
    assert_eq!(hilbert::multiplicity(inst.ideal("a").unwrap()).unwrap(), three);
}
