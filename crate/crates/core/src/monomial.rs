//! Exponent vectors and the monomial orders used throughout the crate.

use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A monomial, stored as its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u64; 6]>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(SmallVec::from_elem(0, arity))
    }

    pub fn from_exponents(exps: &[u64]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    /// The monomial `x_i^e` in `arity` variables.
    pub fn var_power(arity: usize, i: usize, e: u64) -> Self {
        let mut m = Self::one(arity);
        m.0[i] = e;
        m
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `Σ e_i w_i`.
    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = self.0.clone();
        for (a, b) in out.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial(out))
    }

    /// Product where overflow is impossible by construction (e.g. the
    /// result divides an existing monomial).
    pub(crate) fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn checked_pow(&self, n: u64) -> Result<Monomial> {
        let mut out = self.0.clone();
        for a in out.iter_mut() {
            *a = a.checked_mul(n).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable if this is a pure power `x_i^e`, e > 0.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl std::ops::Index<usize> for Monomial {
    type Output = u64;
    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

impl std::ops::IndexMut<usize> for Monomial {
    fn index_mut(&mut self, i: usize) -> &mut u64 {
        &mut self.0[i]
    }
}

/// Weighted degree reverse lexicographic order, optionally refined into
/// an elimination (block) order.
///
/// Within a block: larger weighted degree wins; ties are broken
/// reverse-lexicographically, so the monomial with the smaller exponent in
/// the last differing variable is the larger one. With an elimination
/// order the first `block` variables are compared first, then the rest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    WeightedDegRevLex { weights: Vec<u64> },
    Elimination { block: usize, weights: Vec<u64> },
}

fn degrevlex_cmp(a: &[u64], b: &[u64], weights: &[u64]) -> Ordering {
    let da: u64 = a.iter().zip(weights).map(|(e, w)| e * w).sum();
    let db: u64 = b.iter().zip(weights).map(|(e, w)| e * w).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn weights(&self) -> &[u64] {
        match self {
            MonomialOrder::WeightedDegRevLex { weights } => weights,
            MonomialOrder::Elimination { weights, .. } => weights,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::WeightedDegRevLex { weights } => degrevlex_cmp(&a.0, &b.0, weights),
            MonomialOrder::Elimination { block, weights } => {
                let k = *block;
                match degrevlex_cmp(&a.0[..k], &b.0[..k], &weights[..k]) {
                    Ordering::Equal => degrevlex_cmp(&a.0[k..], &b.0[k..], &weights[k..]),
                    o => o,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u64]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_tie_break() {
        let ord = MonomialOrder::WeightedDegRevLex { weights: vec![1, 1, 1] };
        // x*z < y^2 in degrevlex: last variable exponent decides.
        assert_eq!(ord.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(ord.cmp(&m(&[2, 0, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        // cusp relation: a^3 beats b^2 at weights (2, 3)
        let w = MonomialOrder::WeightedDegRevLex { weights: vec![2, 3] };
        assert_eq!(w.cmp(&m(&[3, 0]), &m(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn elimination_prefers_first_block() {
        let ord = MonomialOrder::Elimination { block: 1, weights: vec![1, 1, 1] };
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    proptest! {
        #[test]
        fn order_is_multiplicative(a in prop::collection::vec(0u64..5, 3),
                                   b in prop::collection::vec(0u64..5, 3),
                                   c in prop::collection::vec(0u64..5, 3),
                                   w in prop::collection::vec(1u64..4, 3)) {
            let ord = MonomialOrder::WeightedDegRevLex { weights: w };
            let (a, b, c) = (m(&a), m(&b), m(&c));
            prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&a.mul(&c), &b.mul(&c)));
            prop_assert_ne!(ord.cmp(&Monomial::one(3), &a), Ordering::Greater);
        }
    }
}
