//! Sparse multivariate polynomials over a [`CoefficientField`] with a
//! positive integer grading on the variables.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::scalar::{CoefficientField, Scalar};

/// Default cap on Gröbner reduction steps.
pub const DEFAULT_STEP_LIMIT: u64 = 1_000_000;

/// A named variable with its positive degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub degree: u64,
}

impl Variable {
    pub fn new(name: impl Into<String>, degree: u64) -> Self {
        Variable { name: name.into(), degree }
    }
}

/// A polynomial: terms sorted strictly decreasing in the ring's monomial
/// order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Coefficient of `m`, if present.
    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c)
    }

    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, Scalar)>) -> Self {
        Polynomial { terms }
    }

    pub(crate) fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }
}

/// The ambient polynomial ring `k[T_1, ..., T_n]` with weights and order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: CoefficientField,
    vars: Vec<Variable>,
    order: MonomialOrder,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    /// Polynomial ring with the weighted degrevlex order.
    pub fn new(field: CoefficientField, vars: Vec<Variable>) -> Result<Self> {
        let weights = vars.iter().map(|v| v.degree).collect();
        Self::with_order(field, vars, MonomialOrder::WeightedDegRevLex { weights })
    }

    pub fn with_order(
        field: CoefficientField,
        vars: Vec<Variable>,
        order: MonomialOrder,
    ) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(&v.name) {
                return Err(Error::InvalidVariable(format!("bad name `{}`", v.name)));
            }
            if v.degree == 0 {
                return Err(Error::InvalidVariable(format!("`{}` has degree 0", v.name)));
            }
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::InvalidVariable(format!("duplicate name `{}`", v.name)));
            }
        }
        if order.weights().len() != vars.len() {
            return Err(Error::ArityMismatch { expected: vars.len(), found: order.weights().len() });
        }
        Ok(PolyRing { field, vars, order })
    }

    pub fn field(&self) -> &CoefficientField {
        &self.field
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn weights(&self) -> Vec<u64> {
        self.vars.iter().map(|v| v.degree).collect()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> Polynomial {
        self.term(Monomial::one(self.arity()), c)
    }

    pub fn term(&self, m: Monomial, c: Scalar) -> Polynomial {
        if self.field.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        self.term(m, self.field.one())
    }

    pub fn var(&self, i: usize) -> Polynomial {
        self.monomial(Monomial::var_power(self.arity(), i, 1))
    }

    /// Builds a polynomial from arbitrary terms: sorts, combines equal
    /// monomials and drops zeros.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Polynomial> {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            if m.arity() != self.arity() {
                return Err(Error::ArityMismatch { expected: self.arity(), found: m.arity() });
            }
            match acc.get_mut(&m) {
                Some(old) => *old = self.field.add(old, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Ok(self.collect_sorted(acc))
    }

    fn collect_sorted(&self, acc: HashMap<Monomial, Scalar>) -> Polynomial {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !self.field.is_zero(c)).collect();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        Polynomial { terms }
    }

    pub fn check_arity(&self, f: &Polynomial) -> Result<()> {
        match f.terms.first() {
            Some((m, _)) if m.arity() != self.arity() => {
                Err(Error::ArityMismatch { expected: self.arity(), found: m.arity() })
            }
            _ => Ok(()),
        }
    }

    /// `a·f + b·g` computed by merging the two sorted term lists.
    fn merge(&self, f: &[(Monomial, Scalar)], g: &[(Monomial, Scalar)], neg_g: bool) -> Polynomial {
        let field = &self.field;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let g_coeff = |c: &Scalar| if neg_g { field.neg(c) } else { c.clone() };
        while i < f.len() && j < g.len() {
            match self.order.cmp(&f[i].0, &g[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(f[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((g[j].0.clone(), g_coeff(&g[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if neg_g { field.sub(&f[i].1, &g[j].1) } else { field.add(&f[i].1, &g[j].1) };
                    if !field.is_zero(&c) {
                        out.push((f[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(f[i..].iter().cloned());
        out.extend(g[j..].iter().map(|(m, c)| (m.clone(), g_coeff(c))));
        Polynomial { terms: out }
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.merge(&f.terms, &g.terms, false)
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.merge(&f.terms, &g.terms, true)
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        Polynomial { terms: f.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect() }
    }

    pub fn scale(&self, c: &Scalar, f: &Polynomial) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero();
        }
        Polynomial { terms: f.terms.iter().map(|(m, d)| (m.clone(), self.field.mul(c, d))).collect() }
    }

    /// `c·m·f`. Multiplication by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar, f: &Polynomial) -> Result<Polynomial> {
        if self.field.is_zero(c) {
            return Ok(Polynomial::zero());
        }
        let terms = f
            .terms
            .iter()
            .map(|(t, d)| Ok((t.checked_mul(m)?, self.field.mul(c, d))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial { terms })
    }

    /// Subtracts `c·m·g` from `f`, where the exponents are known not to
    /// overflow (reduction steps).
    pub(crate) fn sub_mul_term(&self, f: &[(Monomial, Scalar)], c: &Scalar, m: &Monomial, g: &[(Monomial, Scalar)]) -> Polynomial {
        let scaled: Vec<_> = g.iter().map(|(t, d)| (t.mul(m), self.field.mul(c, d))).collect();
        self.merge(f, &scaled, true)
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        self.check_arity(f)?;
        self.check_arity(g)?;
        if f.is_zero() || g.is_zero() {
            return Ok(Polynomial::zero());
        }
        if f.len() == 1 {
            return self.mul_term(&f.terms[0].0, &f.terms[0].1, g);
        }
        if g.len() == 1 {
            return self.mul_term(&g.terms[0].0, &g.terms[0].1, f);
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(f.len() * g.len());
        for (m1, c1) in &f.terms {
            for (m2, c2) in &g.terms {
                let m = m1.checked_mul(m2)?;
                let c = self.field.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(old) => *old = self.field.add(old, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(self.collect_sorted(acc))
    }

    /// Raises every term to the `p`-th power; this is `f^p` in characteristic `p`.
    fn frobenius_termwise(&self, f: &Polynomial, p: u64) -> Result<Polynomial> {
        let terms = f
            .terms
            .iter()
            .map(|(m, c)| Ok((m.checked_pow(p)?, self.field.pow(c, p))))
            .collect::<Result<Vec<_>>>()?;
        // m ↦ m^p is strictly monotone for any monomial order, so the
        // order of the terms is unchanged.
        Ok(Polynomial { terms })
    }

    /// `f^n`, by repeated squaring; factors of `p` in `n` are handled by
    /// the termwise Frobenius in characteristic `p`.
    pub fn pow(&self, f: &Polynomial, mut n: u64) -> Result<Polynomial> {
        self.check_arity(f)?;
        if n == 0 {
            return Ok(self.one());
        }
        if f.is_zero() {
            return Ok(Polynomial::zero());
        }
        let mut base = f.clone();
        let p = self.field.characteristic();
        if p > 0 {
            while n.is_multiple_of(p) {
                base = self.frobenius_termwise(&base, p)?;
                n /= p;
            }
        }
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Weighted degree; `Ok(None)` when `f` is not homogeneous.
    pub fn weighted_degree(&self, f: &Polynomial) -> Result<Option<u64>> {
        self.check_arity(f)?;
        let w = self.weights();
        let mut degs = f.terms.iter().map(|(m, _)| m.weighted_degree(&w));
        let first = degs.next().ok_or(Error::ZeroPolynomial)?;
        Ok(if degs.all(|d| d == first) { Some(first) } else { None })
    }

    pub fn is_homogeneous(&self, f: &Polynomial) -> bool {
        f.is_zero() || matches!(self.weighted_degree(f), Ok(Some(_)))
    }

    /// Scales `f` so that its leading coefficient is 1.
    pub fn monic(&self, f: &Polynomial) -> Polynomial {
        match f.leading_coefficient() {
            None => Polynomial::zero(),
            Some(lc) if self.field.is_one(lc) => f.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv, f)
            }
        }
    }

    /// Re-sorts `f` under this ring's order (used after changing orders).
    pub fn resort(&self, f: &Polynomial) -> Polynomial {
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        Polynomial { terms }
    }
}

/// `R = B / I`: a polynomial ring `B` with homogeneous defining relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingPresentation {
    ring: PolyRing,
    relations: Vec<Polynomial>,
    step_limit: u64,
}

impl RingPresentation {
    pub fn new(ring: PolyRing, relations: Vec<Polynomial>) -> Result<Arc<Self>> {
        let mut rels: Vec<Polynomial> = Vec::new();
        for r in relations {
            ring.check_arity(&r)?;
            if r.is_zero() {
                continue;
            }
            if !ring.is_homogeneous(&r) {
                return Err(Error::NotHomogeneous(ring.format(&r)));
            }
            if !rels.contains(&r) {
                rels.push(r);
            }
        }
        Ok(Arc::new(RingPresentation { ring, relations: rels, step_limit: DEFAULT_STEP_LIMIT }))
    }

    /// Parses relation strings against `vars`.
    pub fn parse(field: CoefficientField, vars: Vec<Variable>, relations: &[&str]) -> Result<Arc<Self>> {
        let ring = PolyRing::new(field, vars)?;
        let rels = relations.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, rels)
    }

    /// The polynomial ring itself (no relations).
    pub fn polynomial_ring(field: CoefficientField, vars: Vec<Variable>) -> Result<Arc<Self>> {
        Self::new(PolyRing::new(field, vars)?, Vec::new())
    }

    /// Copy with a different Gröbner step cap.
    pub fn with_step_limit(&self, step_limit: u64) -> Arc<Self> {
        Arc::new(RingPresentation { step_limit, ..self.clone() })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> &CoefficientField {
        self.ring.field()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn step_limit(&self) -> u64 {
        self.step_limit
    }

    pub fn characteristic(&self) -> u64 {
        self.ring.field().characteristic()
    }

    /// Human-readable summary such as `F_2[a,b,c,d]/(b^2 + a*c, ...)`.
    pub fn describe(&self) -> String {
        let vars: Vec<String> = self
            .ring
            .vars()
            .iter()
            .map(|v| if v.degree == 1 { v.name.clone() } else { format!("{}:{}", v.name, v.degree) })
            .collect();
        let mut s = format!("{}[{}]", self.field(), vars.join(","));
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| self.ring.format(r)).collect();
            s.push_str(&format!("/({})", rels.join(", ")));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(p: u64, names: &[&str]) -> PolyRing {
        let field = CoefficientField::from_characteristic(p).unwrap();
        PolyRing::new(field, names.iter().map(|n| Variable::new(*n, 1)).collect()).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(0, &["x", "y"]);
        let f = r.parse("x + y").unwrap();
        let g = r.parse("x - y").unwrap();
        assert_eq!(r.mul(&f, &g).unwrap(), r.parse("x^2 - y^2").unwrap());
        assert!(r.mul(&f, &Polynomial::zero()).unwrap().is_zero());
    }

    #[test]
    fn freshmans_dream_in_char_two() {
        let r = ring(2, &["x", "y"]);
        let f = r.parse("x + y").unwrap();
        assert_eq!(r.mul(&f, &f).unwrap(), r.parse("x^2 + y^2").unwrap());
        assert_eq!(r.pow(&f, 4).unwrap(), r.parse("x^4 + y^4").unwrap());
        assert_eq!(r.pow(&f, 0).unwrap(), r.one());
    }

    #[test]
    fn binomial_cube_over_q() {
        let r = ring(0, &["x", "y"]);
        let f = r.parse("x + y").unwrap();
        assert_eq!(r.pow(&f, 3).unwrap(), r.parse("x^3 + 3*x^2*y + 3*x*y^2 + y^3").unwrap());
    }

    #[test]
    fn weighted_degrees() {
        let r = ring(0, &["x", "y"]);
        assert_eq!(r.weighted_degree(&r.parse("x^2*y").unwrap()).unwrap(), Some(3));
        assert_eq!(r.weighted_degree(&r.parse("x + y^2").unwrap()).unwrap(), None);
        assert_eq!(r.weighted_degree(&Polynomial::zero()), Err(Error::ZeroPolynomial));
        let w = PolyRing::new(
            CoefficientField::Rationals,
            vec![Variable::new("x", 2), Variable::new("y", 3)],
        )
        .unwrap();
        assert_eq!(w.weighted_degree(&w.parse("x").unwrap()).unwrap(), Some(2));
    }

    #[test]
    fn exponent_overflow_is_reported() {
        let r = ring(0, &["x"]);
        let f = r.parse("x").unwrap();
        let big = r.pow(&f, u64::MAX / 2 + 1).unwrap();
        assert_eq!(r.mul(&big, &big), Err(Error::ExponentOverflow));
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let r2 = ring(0, &["x", "y"]);
        let r3 = ring(0, &["x", "y", "z"]);
        let f = r3.parse("z").unwrap();
        assert!(matches!(r2.mul(&r2.one(), &f), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn presentation_rejects_inhomogeneous_relations() {
        let vars = vec![Variable::new("x", 1), Variable::new("y", 1)];
        let err = RingPresentation::parse(CoefficientField::Rationals, vars, &["x - y^2"]);
        assert!(matches!(err, Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn duplicate_variables_rejected() {
        let vars = vec![Variable::new("x", 1), Variable::new("x", 1)];
        assert!(PolyRing::new(CoefficientField::Rationals, vars).is_err());
    }

    fn arb_poly(r: PolyRing) -> impl Strategy<Value = Polynomial> {
        let p = r.field().characteristic().max(7) as i64;
        prop::collection::vec(((0u64..4, 0u64..4, 0u64..3), -p..p), 0..5).prop_map(move |ts| {
            r.from_terms(ts.into_iter().map(|((a, b, c), k)| {
                (Monomial::from_exponents(&[a, b, c]), r.field().from_i64(k))
            }))
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms_over_f3(f in arb_poly(ring(3, &["x","y","z"])),
                               g in arb_poly(ring(3, &["x","y","z"])),
                               h in arb_poly(ring(3, &["x","y","z"]))) {
            let r = ring(3, &["x", "y", "z"]);
            let fg = r.mul(&f, &g).unwrap();
            prop_assert_eq!(&fg, &r.mul(&g, &f).unwrap());
            prop_assert_eq!(r.mul(&fg, &h).unwrap(), r.mul(&f, &r.mul(&g, &h).unwrap()).unwrap());
            prop_assert_eq!(
                r.mul(&f, &r.add(&g, &h)).unwrap(),
                r.add(&fg, &r.mul(&f, &h).unwrap())
            );
        }

        #[test]
        fn frobenius_is_additive(f in arb_poly(ring(3, &["x","y","z"])),
                                 g in arb_poly(ring(3, &["x","y","z"])),
                                 e in 0u32..3) {
            let r = ring(3, &["x", "y", "z"]);
            let q = 3u64.pow(e);
            let lhs = r.pow(&r.add(&f, &g), q).unwrap();
            let rhs = r.add(&r.pow(&f, q).unwrap(), &r.pow(&g, q).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn print_parse_round_trip(f in arb_poly(ring(0, &["x","y","z"]))) {
            let r = ring(0, &["x", "y", "z"]);
            prop_assert_eq!(r.parse(&r.format(&f)).unwrap(), f);
        }

        #[test]
        fn homogeneity_is_preserved(a in 0u64..3, b in 0u64..3, k in 1u64..4) {
            let r = ring(0, &["x", "y", "z"]);
            let f = r.add(&r.monomial(Monomial::from_exponents(&[a, b, 1])),
                          &r.monomial(Monomial::from_exponents(&[a + b + 1, 0, 0])));
            let g = r.parse("x*y - z^2").unwrap();
            let d = r.weighted_degree(&f).unwrap().unwrap();
            let prod = r.mul(&f, &g).unwrap();
            prop_assert_eq!(r.weighted_degree(&prod).unwrap(), Some(d + 2));
            let pw = r.pow(&f, k).unwrap();
            prop_assert_eq!(r.weighted_degree(&pw).unwrap(), Some(d * k));
        }
    }
}
