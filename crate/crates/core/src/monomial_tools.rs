//! Closed-form combinatorics of monomial ideals, used as independent
//! oracles for the Gröbner-based code paths.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{for_each_composition, Ideal};
use crate::monomial::Monomial;
use crate::poly::RingPresentation;

/// A monomial ideal stored by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    arity: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(arity: usize, gens: Vec<Monomial>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.arity() != arity) {
            return Err(Error::ArityMismatch { expected: arity, found: g.arity() });
        }
        Ok(MonomialIdeal { arity, gens: minimalize(gens) })
    }

    pub fn from_exponents(arity: usize, gens: &[&[u64]]) -> Result<Self> {
        Self::new(arity, gens.iter().map(|e| Monomial::from_exponents(e)).collect())
    }

    /// The monomial ideal of an ideal with monomial generators. Coefficients
    /// are ignored; relations are not taken into account.
    pub fn from_ideal(ideal: &Ideal) -> Result<Self> {
        let mut gens = Vec::with_capacity(ideal.gens().len());
        for g in ideal.gens() {
            match g.terms() {
                [(m, _)] => gens.push(m.clone()),
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "`{}` is not a monomial",
                        ideal.ring().ring().format(g)
                    )))
                }
            }
        }
        Self::new(ideal.ring().ring().arity(), gens)
    }

    pub fn to_ideal(&self, ring: &Arc<RingPresentation>) -> Result<Ideal> {
        let r = ring.ring();
        Ideal::new(ring, self.gens.iter().map(|m| r.monomial(m.clone())).collect())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    /// Pure powers `x_i^{k_i}` among the generators, indexed by variable.
    fn pure_powers(&self) -> Vec<Option<u64>> {
        let mut out = vec![None; self.arity];
        for g in &self.gens {
            if let Some(i) = g.pure_power_var() {
                out[i] = Some(out[i].map_or(g[i], |k: u64| k.min(g[i])));
            }
        }
        out
    }
}

/// Keeps only generators not divisible by another; sorted and deduplicated.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.total_degree(), m.clone()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

pub fn staircase_member(m: &Monomial, l: &MonomialIdeal) -> bool {
    l.gens.iter().any(|g| g.divides(m))
}

/// Whether every product of `r` of the `a_gens` (with repetition) lies in `l`.
pub fn power_containment(r: u64, l: &MonomialIdeal, a_gens: &[Monomial]) -> bool {
    for_each_composition(r as usize, a_gens.len(), &mut |exps| {
        let mut prod = Monomial::one(l.arity);
        for (g, &e) in a_gens.iter().zip(exps) {
            for _ in 0..e {
                prod = prod.mul(g);
            }
        }
        if staircase_member(&prod, l) {
            Ok(())
        } else {
            Err(())
        }
    })
    .is_ok()
}

/// `max { r : a^r ⊄ L }` by scanning `r = 0, 1, ...`; `None` if `a^r ⊄ L`
/// for every `r ≤ rmax`.
pub fn power_containment_nu(l: &MonomialIdeal, a_gens: &[Monomial], rmax: u64) -> Option<u64> {
    (0..=rmax).find(|&r| power_containment(r, l, a_gens)).map(|r| r.saturating_sub(1))
}

fn intersect_monomial(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for g in a {
        for h in b {
            out.push(g.lcm(h));
        }
    }
    minimalize(out)
}

/// `L : L' = ⋂_{m' ∈ gens(L')} ⟨ g / gcd(g, m') : g ∈ gens(L) ⟩`.
pub fn monomial_colon(l: &MonomialIdeal, lp: &MonomialIdeal) -> MonomialIdeal {
    let one = Monomial::one(l.arity);
    let mut acc: Option<Vec<Monomial>> = None;
    for mp in &lp.gens {
        let part: Vec<Monomial> = l.gens.iter().map(|g| g.gcd(mp).quotient_of(g)).collect();
        let part = minimalize(part);
        acc = Some(match acc {
            None => part,
            Some(prev) => intersect_monomial(&prev, &part),
        });
    }
    MonomialIdeal { arity: l.arity, gens: acc.unwrap_or_else(|| vec![one]) }
}

/// Number of monomials outside `L`, or `None` when infinite.
///
/// Counts lattice points in the box cut out by the pure-power generators.
pub fn staircase_length(l: &MonomialIdeal) -> Option<u64> {
    let bounds: Vec<u64> = l.pure_powers().into_iter().collect::<Option<Vec<_>>>()?;
    let mut count = 0u64;
    let mut point = vec![0u64; l.arity];
    loop {
        if !staircase_member(&Monomial::from_exponents(&point), l) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == l.arity {
                return Some(count);
            }
            point[i] += 1;
            if point[i] < bounds[i] {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

/// A Taylor-complex basis element: the lcm of a subset of generators and
/// its weighted degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorData {
    pub gens: Vec<Monomial>,
    pub subset: Vec<usize>,
    pub lcm: Monomial,
    pub degree: u64,
}

pub fn taylor_lcm(gens: &[Monomial], subset: &[usize], weights: &[u64]) -> Result<TaylorData> {
    let first = *subset
        .first()
        .ok_or_else(|| Error::InvalidArgument("Taylor subset must be nonempty".into()))?;
    let get = |i: usize| {
        gens.get(i)
            .ok_or_else(|| Error::InvalidArgument(format!("subset index {i} out of range")))
    };
    let mut lcm = get(first)?.clone();
    for &i in &subset[1..] {
        lcm = lcm.lcm(get(i)?);
    }
    let degree = lcm.weighted_degree(weights);
    Ok(TaylorData { gens: gens.to_vec(), subset: subset.to_vec(), lcm, degree })
}

/// `X_1^{t_1}, X_1^{t_1-1} X_2^{t_2}, ..., X_1^{t_1-1}⋯X_{d-1}^{t_{d-1}-1} X_d^{t_d}`.
pub fn staggered_family(t: &[u64]) -> Result<Vec<Monomial>> {
    if t.contains(&0) {
        return Err(Error::InvalidArgument("staggered exponents must be positive".into()));
    }
    let d = t.len();
    Ok((0..d)
        .map(|i| {
            let mut e = vec![0u64; d];
            for j in 0..i {
                e[j] = t[j] - 1;
            }
            e[i] = t[i];
            Monomial::from_exponents(&e)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u64]) -> Monomial {
        Monomial::from_exponents(e)
    }

    fn box_ideal() -> MonomialIdeal {
        MonomialIdeal::from_exponents(2, &[&[2, 0], &[0, 3]]).unwrap()
    }

    #[test]
    fn membership() {
        assert!(!staircase_member(&m(&[1, 2]), &box_ideal()));
        assert!(staircase_member(&m(&[2, 1]), &box_ideal()));
        let zero = MonomialIdeal::new(2, vec![]).unwrap();
        assert!(!staircase_member(&m(&[0, 0]), &zero));
    }

    #[test]
    fn power_containment_thresholds() {
        let vars = [m(&[1, 0]), m(&[0, 1])];
        let l = MonomialIdeal::from_exponents(2, &[&[4, 0], &[0, 4]]).unwrap();
        assert!(power_containment(7, &l, &vars));
        assert!(!power_containment(6, &l, &vars));
        assert_eq!(power_containment_nu(&l, &vars, 20), Some(6));

        let l = MonomialIdeal::from_exponents(2, &[&[4, 0], &[0, 6]]).unwrap();
        assert_eq!(power_containment_nu(&l, &vars, 20), Some(8));
        assert!(!power_containment(0, &l, &vars));
    }

    #[test]
    fn colon_closed_form() {
        let l = MonomialIdeal::from_exponents(2, &[&[2, 1]]).unwrap();
        let y = MonomialIdeal::from_exponents(2, &[&[0, 1]]).unwrap();
        assert_eq!(monomial_colon(&l, &y).gens(), &[m(&[2, 0])]);

        let l = MonomialIdeal::from_exponents(2, &[&[3, 0], &[0, 2]]).unwrap();
        let xy = MonomialIdeal::from_exponents(2, &[&[1, 1]]).unwrap();
        let c = monomial_colon(&l, &xy);
        assert_eq!(c, MonomialIdeal::from_exponents(2, &[&[2, 0], &[0, 1]]).unwrap());

        let unit = MonomialIdeal::from_exponents(2, &[&[0, 0]]).unwrap();
        assert_eq!(monomial_colon(&l, &unit), l);
    }

    #[test]
    fn lengths() {
        assert_eq!(staircase_length(&box_ideal()), Some(6));
        assert_eq!(staircase_length(&MonomialIdeal::from_exponents(2, &[&[1, 0]]).unwrap()), None);
        assert_eq!(
            staircase_length(&MonomialIdeal::from_exponents(2, &[&[1, 0], &[0, 1]]).unwrap()),
            Some(1)
        );
    }

    #[test]
    fn taylor_examples() {
        let gens = [m(&[2, 0]), m(&[1, 3])];
        let td = taylor_lcm(&gens, &[0, 1], &[1, 1]).unwrap();
        assert_eq!(td.lcm, m(&[2, 3]));
        assert_eq!(taylor_lcm(&gens, &[1], &[1, 1]).unwrap().lcm, gens[1]);
        assert!(taylor_lcm(&gens, &[], &[1, 1]).is_err());

        let fam = staggered_family(&[2, 2]).unwrap();
        assert_eq!(fam, vec![m(&[2, 0]), m(&[1, 2])]);
        let td = taylor_lcm(&fam, &[0, 1], &[3, 5]).unwrap();
        assert_eq!(td.lcm, m(&[2, 2]));
        assert_eq!(td.degree, 2 * 3 + 2 * 5);
    }

    /// Diagonal law: (x_1..x_d)^r ⊆ (x_i^{c_i q}) iff r ≥ Σ c_i q − d + 1.
    #[test]
    fn diagonal_formula() {
        for d in 1..=3usize {
            let vars: Vec<Monomial> = (0..d).map(|i| Monomial::var_power(d, i, 1)).collect();
            for c in 1..=3u64 {
                for q in [1u64, 2, 3, 4, 8] {
                    let cs: Vec<u64> = (0..d as u64).map(|i| 1 + (c + i) % 3).collect();
                    let l = MonomialIdeal::new(
                        d,
                        (0..d).map(|i| Monomial::var_power(d, i, cs[i] * q)).collect(),
                    )
                    .unwrap();
                    let expected = cs.iter().sum::<u64>() * q - d as u64;
                    assert_eq!(power_containment_nu(&l, &vars, expected + 2), Some(expected));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn staggered_lcm_closed_form(t in prop::collection::vec(1u64..=4, 1..=4)) {
            let fam = staggered_family(&t).unwrap();
            for i in 0..t.len() {
                let subset: Vec<usize> = (0..=i).collect();
                let td = taylor_lcm(&fam, &subset, &vec![1; t.len()]).unwrap();
                let mut expected = vec![0u64; t.len()];
                expected[..=i].copy_from_slice(&t[..=i]);
                prop_assert_eq!(td.lcm, Monomial::from_exponents(&expected));
            }
        }
    }
}
