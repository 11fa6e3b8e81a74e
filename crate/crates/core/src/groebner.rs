//! Buchberger's algorithm with the Gebauer–Möller pair criteria and the
//! normal selection strategy, plus the [`Ideal`] type built on it.
//!
//! Every ideal of a presentation `B/I` is handled in `B` by adjoining the
//! defining relations.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial, RingPresentation};

/// Counts reduction steps against a cap.
#[derive(Debug)]
pub(crate) struct StepBudget {
    limit: u64,
    used: u64,
}

impl StepBudget {
    pub(crate) fn new(limit: u64) -> Self {
        StepBudget { limit, used: 0 }
    }

    pub(crate) fn unlimited() -> Self {
        StepBudget { limit: u64::MAX, used: 0 }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::ResourceLimit(format!(
                "Gröbner step limit of {} reduction steps exceeded",
                self.limit
            )));
        }
        Ok(())
    }
}

/// Full reduction of `f` by monic `basis`; returns the remainder.
pub(crate) fn reduce(
    ring: &PolyRing,
    f: &Polynomial,
    basis: &[&Polynomial],
    budget: &mut StepBudget,
) -> Result<Polynomial> {
    let mut work = f.terms().to_vec();
    let mut start = 0;
    let mut rem = Vec::new();
    while start < work.len() {
        let (m, c) = &work[start];
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m)));
        match divisor {
            Some(g) => {
                budget.tick()?;
                let lm = g.leading_monomial().expect("nonzero basis element");
                let q = lm.quotient_of(m);
                let c = c.clone();
                // The leading terms cancel exactly, so merge from start + 1.
                let tail = &g.terms()[1..];
                work = ring.sub_mul_term(&work[start + 1..], &c, &q, tail).into_terms();
                start = 0;
            }
            None => {
                rem.push(work[start].clone());
                start += 1;
            }
        }
    }
    Ok(Polynomial::from_sorted_unchecked(rem))
}

fn s_polynomial(ring: &PolyRing, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let lf = f.leading_monomial().expect("nonzero");
    let lg = g.leading_monomial().expect("nonzero");
    let l = lf.lcm(lg);
    let one = ring.field().one();
    let a = ring.sub_mul_term(&[], &ring.field().neg(&one), &lf.quotient_of(&l), &f.terms()[1..]);
    ring.sub_mul_term(a.terms(), &one, &lg.quotient_of(&l), &g.terms()[1..])
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Buchberger<'a> {
    ring: &'a PolyRing,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'a> Buchberger<'a> {
    fn active_refs(&self) -> Vec<&Polynomial> {
        self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p).collect()
    }

    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("basis elements are nonzero")
    }

    /// Gebauer–Möller update with the new monic element `h`.
    fn update(&mut self, h: Polynomial) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.active.push(true);
        let lh = self.lm(hi).clone();

        let cands: Vec<(usize, Monomial)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, lh.lcm(self.lm(g))))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (k, (g1, l1)) in cands.iter().enumerate() {
            let coprime = lh.is_coprime(self.lm(*g1));
            let dominated = cands[k + 1..].iter().any(|(_, l2)| l2.divides(l1))
                || kept.iter().any(|(_, l2)| l2.divides(l1));
            if coprime || !dominated {
                kept.push((*g1, l1.clone()));
            }
        }
        kept.retain(|(g, _)| !lh.is_coprime(self.lm(*g)));

        let polys = &self.polys;
        let lm = |i: usize| polys[i].leading_monomial().expect("nonzero");
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && lm(p.i).lcm(&lh) != p.lcm && lm(p.j).lcm(&lh) != p.lcm)
        });
        self.pairs.extend(kept.into_iter().map(|(g, lcm)| Pair { i: g, j: hi, lcm }));

        for g in 0..hi {
            if self.active[g] && lh.divides(lm(g)) {
                self.active[g] = false;
            }
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.ring.order();
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let ord = order.cmp(&a.lcm, &b.lcm).then((a.j, a.i).cmp(&(b.j, b.i)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of `gens` in `ring`, sorted by increasing leading
/// monomial.
pub(crate) fn groebner_basis(ring: &PolyRing, gens: &[Polynomial], step_limit: u64) -> Result<Vec<Polynomial>> {
    let mut budget = StepBudget::new(step_limit);
    let mut bb = Buchberger { ring, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };

    let mut input: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    input.sort_by(|a, b| ring.order().cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    for f in input {
        let h = reduce(ring, f, &bb.active_refs(), &mut budget)?;
        if !h.is_zero() {
            bb.update(ring.monic(&h));
        }
    }
    while let Some(pair) = bb.pop_pair() {
        let s = s_polynomial(ring, &bb.polys[pair.i], &bb.polys[pair.j]);
        let h = reduce(ring, &s, &bb.active_refs(), &mut budget)?;
        if !h.is_zero() {
            bb.update(ring.monic(&h));
        }
    }

    let mut basis: Vec<Polynomial> = bb.active_refs().into_iter().cloned().collect();
    basis.sort_by(|a, b| ring.order().cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    // A unit swallows everything.
    if basis.iter().any(|g| g.leading_monomial().unwrap().is_one()) {
        return Ok(vec![ring.one()]);
    }
    let mut reduced = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<&Polynomial> =
            basis.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, g)| g).collect();
        let g = &basis[k];
        let head = Polynomial::from_sorted_unchecked(vec![g.terms()[0].clone()]);
        let tail = Polynomial::from_sorted_unchecked(g.terms()[1..].to_vec());
        let tail = reduce(ring, &tail, &others, &mut budget)?;
        reduced.push(ring.add(&head, &tail));
    }
    Ok(reduced)
}

/// A reduced Gröbner basis of an ideal together with the defining
/// relations of its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<RingPresentation>,
    basis: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.leading_monomial().expect("nonzero").clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.leading_monomial().is_some_and(|m| m.is_one()))
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let refs: Vec<&Polynomial> = self.basis.iter().collect();
        reduce(self.ring.ring(), f, &refs, &mut StepBudget::unlimited())
            .expect("unlimited budget cannot be exhausted")
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// An ideal of a presentation, given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Arc<RingPresentation>,
    gens: Vec<Polynomial>,
}

impl Ideal {
    /// Drops zero and duplicate generators.
    pub fn new(ring: &Arc<RingPresentation>, gens: Vec<Polynomial>) -> Result<Self> {
        let mut out: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            ring.ring().check_arity(&g)?;
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(Ideal { ring: Arc::clone(ring), gens: out })
    }

    pub fn parse(ring: &Arc<RingPresentation>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| ring.ring().parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn zero(ring: &Arc<RingPresentation>) -> Self {
        Ideal { ring: Arc::clone(ring), gens: Vec::new() }
    }

    pub fn unit(ring: &Arc<RingPresentation>) -> Self {
        Ideal { ring: Arc::clone(ring), gens: vec![ring.ring().one()] }
    }

    /// The ideal generated by the variables.
    pub fn maximal(ring: &Arc<RingPresentation>) -> Self {
        let gens = (0..ring.ring().arity()).map(|i| ring.ring().var(i)).collect();
        Ideal { ring: Arc::clone(ring), gens }
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    pub fn format_gens(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.ring().format(g)).collect()
    }

    pub(crate) fn same_ring(&self, other: &Ideal) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Reduced Gröbner basis of `gens + relations`.
    pub fn groebner(&self) -> Result<GroebnerBasis> {
        let mut all = self.gens.clone();
        all.extend(self.ring.relations().iter().cloned());
        let basis = groebner_basis(self.ring.ring(), &all, self.ring.step_limit())?;
        Ok(GroebnerBasis { ring: Arc::clone(&self.ring), basis })
    }

    /// `f ∈ I` (modulo the relations).
    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        Ok(self.groebner()?.contains(f))
    }

    /// `B ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        if other.gens.is_empty() {
            return Ok(true);
        }
        let gb = self.groebner()?;
        Ok(other.gens.iter().all(|g| gb.contains(g)))
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let r = self.ring.ring();
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(r.mul(f, g)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `I^r`, generated by all `r`-fold products of generators (one per
    /// multiset of generator indices), deduplicated.
    pub fn power(&self, r: u64) -> Result<Ideal> {
        let ring = self.ring.ring();
        if r == 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        let mu = self.gens.len();
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(mu);
        for g in &self.gens {
            let mut row = vec![ring.one()];
            for k in 1..=r as usize {
                row.push(ring.mul(&row[k - 1], g)?);
            }
            powers.push(row);
        }
        let mut gens = Vec::new();
        for_each_composition(r as usize, mu, &mut |exps| {
            let mut acc = ring.one();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    acc = ring.mul(&acc, &powers[i][e])?;
                }
            }
            gens.push(acc);
            Ok(())
        })?;
        Ideal::new(&self.ring, gens)
    }
}

/// Calls `f` on every vector of `parts` nonnegative integers summing to `total`.
/// Stops at the first `Err`.
pub(crate) fn for_each_composition<E>(
    total: usize,
    parts: usize,
    f: &mut dyn FnMut(&[usize]) -> std::result::Result<(), E>,
) -> std::result::Result<(), E> {
    fn go<E>(
        buf: &mut Vec<usize>,
        left: usize,
        parts: usize,
        f: &mut dyn FnMut(&[usize]) -> std::result::Result<(), E>,
    ) -> std::result::Result<(), E> {
        if buf.len() + 1 == parts {
            buf.push(left);
            f(buf)?;
            buf.pop();
            return Ok(());
        }
        for e in (0..=left).rev() {
            buf.push(e);
            go(buf, left - e, parts, f)?;
            buf.pop();
        }
        Ok(())
    }
    if parts == 0 {
        return if total == 0 { f(&[]) } else { Ok(()) };
    }
    go(&mut Vec::with_capacity(parts), total, parts, f)
}

/// Outcome of a bounded radical-membership search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalReport {
    /// For each generator of `a`, the least `m ≤ maxexp` with `g^m ∈ J`.
    pub witnesses: Vec<Option<u64>>,
    pub maxexp: u64,
}

impl RadicalReport {
    pub fn contains(&self) -> bool {
        self.witnesses.iter().all(|w| w.is_some())
    }

    /// True when the negative verdict is only a consequence of the bound.
    pub fn bound_hit(&self) -> bool {
        !self.contains()
    }
}

impl Ideal {
    /// Default exponent bound for [`Ideal::radical_contains`]: twice the sum
    /// of the variable weights.
    pub fn default_radical_bound(&self) -> u64 {
        2 * self.ring.ring().weights().iter().sum::<u64>()
    }

    /// Bounded check of `a ⊆ √self`: every generator of `a` must have a
    /// power `≤ maxexp` in `self`.
    pub fn radical_contains(&self, a: &Ideal, maxexp: u64) -> Result<RadicalReport> {
        self.same_ring(a)?;
        if maxexp == 0 {
            return Err(Error::InvalidArgument("maxexp must be at least 1".into()));
        }
        let gb = self.groebner()?;
        let ring = self.ring.ring();
        let mut witnesses = Vec::with_capacity(a.gens.len());
        for g in &a.gens {
            let g_nf = gb.normal_form(g);
            let mut acc = g_nf.clone();
            let mut found = None;
            for m in 1..=maxexp {
                if acc.is_zero() {
                    found = Some(m);
                    break;
                }
                if m < maxexp {
                    acc = gb.normal_form(&ring.mul(&acc, &g_nf)?);
                }
            }
            witnesses.push(found);
        }
        Ok(RadicalReport { witnesses, maxexp })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Variable;
    use crate::scalar::CoefficientField;

    fn pres(p: u64, names: &[&str], rels: &[&str]) -> Arc<RingPresentation> {
        let vars = names.iter().map(|n| Variable::new(*n, 1)).collect();
        RingPresentation::parse(CoefficientField::from_characteristic(p).unwrap(), vars, rels).unwrap()
    }

    const VERONESE: [&str; 3] = ["b^2 - a*c", "c^2 - b*d", "b*c - a*d"];

    /// Pairwise S-polynomial check: every S-pair of `basis` reduces to zero.
    fn s_pairs_reduce_to_zero(r: &PolyRing, basis: &[Polynomial]) -> bool {
        let refs: Vec<&Polynomial> = basis.iter().collect();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let s = s_polynomial(r, &basis[i], &basis[j]);
                if !reduce(r, &s, &refs, &mut StepBudget::unlimited()).unwrap().is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn two_quadrics_over_q() {
        // Leading terms x^2 and y^2 are coprime, so the input is already a
        // reduced basis (product criterion); the S-pair check confirms it.
        let r = pres(0, &["x", "y"], &[]);
        let i = Ideal::parse(&r, &["x^2 - y", "y^2 - x"]).unwrap();
        let gb = i.groebner().unwrap();
        let ring = r.ring();
        let expected = vec![ring.parse("y^2 - x").unwrap(), ring.parse("x^2 - y").unwrap()];
        let mut got = gb.basis().to_vec();
        got.sort_by_key(|g| ring.format(g));
        let mut exp = expected.clone();
        exp.sort_by_key(|g| ring.format(g));
        assert_eq!(got, exp);
        assert!(s_pairs_reduce_to_zero(ring, gb.basis()));
        assert!(!gb.contains(&ring.parse("x*y").unwrap()));
        assert!(gb.contains(&ring.parse("x^3 - x*y").unwrap()));
    }

    #[test]
    fn principal_variable_ideal() {
        let r = pres(3, &["x", "y"], &[]);
        let gb = Ideal::parse(&r, &["x"]).unwrap().groebner().unwrap();
        assert_eq!(gb.basis(), &[r.ring().parse("x").unwrap()]);
        assert_eq!(gb.normal_form(&r.ring().parse("y").unwrap()), r.ring().parse("y").unwrap());
    }

    #[test]
    fn veronese_relations_are_a_groebner_basis() {
        let r = pres(2, &["a", "b", "c", "d"], &[]);
        let i = Ideal::parse(&r, &VERONESE).unwrap();
        let gb = i.groebner().unwrap();
        assert_eq!(gb.basis().len(), 3);
        assert!(s_pairs_reduce_to_zero(r.ring(), gb.basis()));
        for g in i.gens() {
            assert!(gb.contains(g));
        }
        let b2 = r.ring().parse("b^2").unwrap();
        assert_eq!(gb.normal_form(&b2), r.ring().parse("a*c").unwrap());
    }

    #[test]
    fn normal_form_of_x_squared() {
        let r = pres(0, &["x", "y"], &[]);
        let gb = Ideal::parse(&r, &["x^2 - y"]).unwrap().groebner().unwrap();
        assert_eq!(gb.normal_form(&r.ring().parse("x^2").unwrap()), r.ring().parse("y").unwrap());
    }

    #[test]
    fn staircase_membership() {
        let r = pres(5, &["x", "y"], &[]);
        let i = Ideal::parse(&r, &["x^2", "y^3"]).unwrap();
        assert!(!i.contains_poly(&r.ring().parse("x*y^2").unwrap()).unwrap());
        assert!(i.contains_poly(&r.ring().parse("x^2*y").unwrap()).unwrap());
        assert!(i.contains_poly(&Polynomial::zero()).unwrap());
    }

    #[test]
    fn containment_of_powers_of_the_maximal_ideal() {
        let r = pres(2, &["x", "y"], &[]);
        let a = Ideal::parse(&r, &["x^2", "y^3"]).unwrap();
        let m = Ideal::maximal(&r);
        assert!(a.contains_ideal(&m.power(4).unwrap()).unwrap());
        assert!(!a.contains_ideal(&m.power(3).unwrap()).unwrap());
        assert!(a.contains_ideal(&a).unwrap());
    }

    #[test]
    fn power_enumerates_multisets() {
        let r = pres(0, &["x", "y", "z"], &[]);
        let m = Ideal::maximal(&r);
        assert_eq!(m.power(2).unwrap().gens().len(), 6);
        assert_eq!(m.power(0).unwrap().gens(), &[r.ring().one()]);
    }

    #[test]
    fn radical_checks() {
        let r = pres(3, &["x", "y"], &[]);
        let j = Ideal::parse(&r, &["x^2", "y^3"]).unwrap();
        let rep = j.radical_contains(&Ideal::maximal(&r), 4).unwrap();
        assert!(rep.contains());
        assert_eq!(rep.witnesses, vec![Some(2), Some(3)]);

        let jx = Ideal::parse(&r, &["x"]).unwrap();
        let ay = Ideal::parse(&r, &["y"]).unwrap();
        assert!(!jx.radical_contains(&ay, 10).unwrap().contains());

        let l = Ideal::parse(&r, &["x + y"]).unwrap();
        assert!(l.radical_contains(&l, 1).unwrap().contains());
    }

    #[test]
    fn step_limit_is_enforced() {
        let vars = ["a", "b", "c", "d"].iter().map(|n| Variable::new(*n, 1)).collect();
        let r = RingPresentation::parse(CoefficientField::Rationals, vars, &VERONESE)
            .unwrap()
            .with_step_limit(1);
        let i = Ideal::parse(&r, &["a^3 + b^3", "c^3 - d^3 + a*b*c"]).unwrap();
        assert!(matches!(i.groebner(), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn deterministic_bases() {
        let r = pres(0, &["a", "b", "c", "d"], &VERONESE);
        let i = Ideal::parse(&r, &["a + b", "c^2 + d^2"]).unwrap();
        let g1 = i.groebner().unwrap();
        let g2 = i.groebner().unwrap();
        let fmt = |g: &GroebnerBasis| g.basis().iter().map(|p| r.ring().format(p)).collect::<Vec<_>>();
        assert_eq!(fmt(&g1), fmt(&g2));
    }
}
