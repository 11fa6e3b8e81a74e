//! Elimination-based ideal operations: intersections, colon ideals, and
//! toric presentations of monomial subalgebras.

use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, Ideal};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial, RingPresentation, Variable};
use crate::scalar::CoefficientField;

fn fresh_name(base: &PolyRing, stem: &str) -> String {
    let mut k = 0usize;
    loop {
        let name = if k == 0 { stem.to_string() } else { format!("{stem}{k}") };
        if base.var_index(&name).is_none() {
            return name;
        }
        k += 1;
    }
}

/// Prepends `extra` variables to `base` and orders the new block first.
fn eliminating_ring(base: &PolyRing, extra: Vec<Variable>) -> Result<PolyRing> {
    let block = extra.len();
    let mut vars = extra;
    vars.extend(base.vars().iter().cloned());
    let weights = vars.iter().map(|v| v.degree).collect();
    PolyRing::with_order(base.field().clone(), vars, MonomialOrder::Elimination { block, weights })
}

fn embed(f: &Polynomial, shift: usize, ext: &PolyRing) -> Polynomial {
    let terms = f.terms().iter().map(|(m, c)| {
        let mut e = vec![0u64; shift];
        e.extend_from_slice(m.exponents());
        (Monomial::from_exponents(&e), c.clone())
    });
    ext.from_terms(terms).expect("arity matches by construction")
}

/// Drops the first `shift` coordinates; `None` if any of them is nonzero.
fn restrict(f: &Polynomial, shift: usize, base: &PolyRing) -> Option<Polynomial> {
    let mut terms = Vec::with_capacity(f.len());
    for (m, c) in f.terms() {
        if m.exponents()[..shift].iter().any(|&e| e > 0) {
            return None;
        }
        terms.push((Monomial::from_exponents(&m.exponents()[shift..]), c.clone()));
    }
    Some(base.from_terms(terms).expect("arity matches by construction"))
}

/// Exact quotient `h / f`, or `None` if `f` does not divide `h`.
pub fn divide_exact(ring: &PolyRing, h: &Polynomial, f: &Polynomial) -> Result<Option<Polynomial>> {
    let (lm, lc) = match f.terms().first() {
        Some((m, c)) => (m, c),
        None => return Ok(None),
    };
    let field = ring.field();
    let mut rest = h.clone();
    let mut quotient = Polynomial::zero();
    while let Some((m, c)) = rest.terms().first().cloned() {
        if !lm.divides(&m) {
            return Ok(None);
        }
        let q = lm.quotient_of(&m);
        let coef = field.div(&c, lc).expect("nonzero leading coefficient");
        let t = ring.term(q, coef);
        rest = ring.sub(&rest, &ring.mul(&t, f)?);
        quotient = ring.add(&quotient, &t);
    }
    Ok(Some(quotient))
}

/// Removes generators that already lie in the relation ideal and replaces
/// the list by the reduced Gröbner basis of the rest.
fn tidy(ideal: Ideal) -> Result<Ideal> {
    let ring = Arc::clone(ideal.ring());
    let rel = Ideal::zero(&ring).groebner()?;
    let gb = ideal.groebner()?;
    let gens = gb.basis().iter().filter(|g| !rel.contains(g)).cloned().collect();
    Ideal::new(&ring, gens)
}

/// `(A ∩ B) / rel` for ideals of the ambient polynomial ring given by
/// generators, via `t·A + (1 − t)·B` and elimination of `t`.
fn intersect_lifted(pres: &Arc<RingPresentation>, a: &[Polynomial], b: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let base = pres.ring();
    let t = Variable::new(fresh_name(base, "t"), 1);
    let ext = eliminating_ring(base, vec![t])?;
    let tvar = ext.var(0);
    let one_minus_t = ext.sub(&ext.one(), &tvar);

    let mut gens = Vec::with_capacity(a.len() + b.len());
    for f in a {
        gens.push(ext.mul(&tvar, &embed(f, 1, &ext))?);
    }
    for g in b {
        gens.push(ext.mul(&one_minus_t, &embed(g, 1, &ext))?);
    }
    let gb = groebner_basis(&ext, &gens, pres.step_limit())?;
    Ok(gb.iter().filter_map(|g| restrict(g, 1, base)).collect())
}

fn with_relations(ideal: &Ideal) -> Vec<Polynomial> {
    ideal.gens().iter().chain(ideal.ring().relations()).cloned().collect()
}

/// `I ∩ J` in the presentation.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.same_ring(j)?;
    let kept = intersect_lifted(i.ring(), &with_relations(i), &with_relations(j))?;
    Ideal::new(i.ring(), kept)
}

/// `I : J = { f : f·J ⊆ I }`.
pub fn colon_ideal(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.same_ring(j)?;
    let pres = i.ring();
    let base = pres.ring();
    let mut acc: Option<Ideal> = None;
    for f in j.gens() {
        // Lifted to the ambient ring: I : (f) = ((I + rel) ∩ (f)) / f.
        let inter = intersect_lifted(pres, &with_relations(i), std::slice::from_ref(f))?;
        let mut quotients = Vec::with_capacity(inter.len());
        for h in &inter {
            let q = divide_exact(base, h, f)?.ok_or_else(|| {
                Error::Certificate(format!(
                    "{} is not divisible by {}",
                    base.format(h),
                    base.format(f)
                ))
            })?;
            quotients.push(q);
        }
        let c = Ideal::new(pres, quotients)?;
        acc = Some(match acc {
            None => c,
            Some(prev) => intersect(&prev, &c)?,
        });
    }
    match acc {
        None => Ok(Ideal::unit(pres)),
        Some(c) => tidy(c),
    }
}

/// A semigroup ring `k[m_1, ..., m_s]` presented as `k[y_1, ..., y_s]/K`.
#[derive(Clone, Debug)]
pub struct ToricPresentation {
    /// `k[y]/K` with the induced grading.
    pub ring: Arc<RingPresentation>,
    /// The kernel `K` as an ideal of the polynomial ring `k[y]`.
    pub kernel: Ideal,
    /// Exponent vectors of the images, in the target variables.
    pub images: Vec<Monomial>,
    /// Common factor removed from the image degrees.
    pub degree_scale: u64,
}

impl ToricPresentation {
    /// Image in the target ring of a monomial in the presentation variables.
    pub fn image_of(&self, m: &Monomial) -> Result<Monomial> {
        let arity = self.images.first().map_or(0, |i| i.arity());
        let mut out = Monomial::one(arity);
        for (e, img) in m.exponents().iter().zip(&self.images) {
            out = out.checked_mul(&img.checked_pow(*e)?)?;
        }
        Ok(out)
    }

    /// Some presentation monomial mapping onto `target`, if one exists.
    pub fn preimage(&self, target: &Monomial) -> Option<Monomial> {
        fn search(images: &[Monomial], from: usize, rest: &Monomial, acc: &mut Vec<u64>) -> bool {
            if rest.is_one() {
                return true;
            }
            for (i, img) in images.iter().enumerate().skip(from) {
                if img.divides(rest) {
                    acc[i] += 1;
                    if search(images, i, &img.quotient_of(rest), acc) {
                        return true;
                    }
                    acc[i] -= 1;
                }
            }
            false
        }
        let mut acc = vec![0u64; self.images.len()];
        search(&self.images, 0, target, &mut acc).then(|| Monomial::from_exponents(&acc))
    }
}

fn default_names(n: usize, avoid: &PolyRing) -> Vec<String> {
    let letters: Vec<String> = (b'a'..=b'z').map(|c| (c as char).to_string()).collect();
    if n <= 26 && letters[..n].iter().all(|l| avoid.var_index(l).is_none()) {
        return letters[..n].to_vec();
    }
    (1..=n).map(|i| format!("y{i}")).collect()
}

/// Toric ideal of the subalgebra generated by `images` (monomials of the
/// ring over `target`), computed by eliminating the target variables from
/// the graph ideal `(y_i − m_i)`.
///
/// The new variables get degree `deg(m_i) / g` where `g` is the gcd of the
/// image degrees.
pub fn monomial_map_kernel(
    field: CoefficientField,
    target: &[Variable],
    images: &[&str],
    names: Option<&[&str]>,
) -> Result<ToricPresentation> {
    let target_ring = PolyRing::new(field.clone(), target.to_vec())?;
    let mut image_monos = Vec::with_capacity(images.len());
    for src in images {
        let f = target_ring.parse(src)?;
        match f.terms() {
            [(m, c)] if field.is_one(c) && !m.is_one() => image_monos.push(m.clone()),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "`{src}` is not a nonconstant monic monomial"
                )))
            }
        }
    }
    if image_monos.is_empty() {
        return Err(Error::InvalidArgument("no images given".into()));
    }
    let tw = target_ring.weights();
    let degs: Vec<u64> = image_monos.iter().map(|m| m.weighted_degree(&tw)).collect();
    let g = degs.iter().fold(0u64, |acc, d| acc.gcd(d));

    let new_names: Vec<String> = match names {
        Some(ns) if ns.len() == images.len() => ns.iter().map(|s| s.to_string()).collect(),
        Some(ns) => {
            return Err(Error::ArityMismatch { expected: images.len(), found: ns.len() });
        }
        None => default_names(images.len(), &target_ring),
    };
    let new_vars: Vec<Variable> =
        new_names.iter().zip(&degs).map(|(n, d)| Variable::new(n.clone(), *d)).collect();
    let image_ring = PolyRing::new(field.clone(), new_vars.clone())?;

    let ext = eliminating_ring(&image_ring, target.to_vec())?;
    let shift = target.len();
    let mut graph = Vec::with_capacity(images.len());
    for (i, m) in image_monos.iter().enumerate() {
        let y = ext.var(shift + i);
        let mut e = m.exponents().to_vec();
        e.extend(std::iter::repeat_n(0, images.len()));
        let img = ext.monomial(Monomial::from_exponents(&e));
        graph.push(ext.sub(&y, &img));
    }
    let gb = groebner_basis(&ext, &graph, crate::poly::DEFAULT_STEP_LIMIT)?;

    let scaled: Vec<Variable> =
        new_vars.iter().map(|v| Variable::new(v.name.clone(), v.degree / g)).collect();
    let out_ring = PolyRing::new(field, scaled)?;
    let kernel_gens: Vec<Polynomial> = gb
        .iter()
        .filter_map(|p| restrict(p, shift, &image_ring))
        .map(|p| out_ring.resort(&p))
        .collect();
    let poly_ring = RingPresentation::new(out_ring.clone(), Vec::new())?;
    let kernel = Ideal::new(&poly_ring, kernel_gens.clone())?;
    let ring = RingPresentation::new(out_ring, kernel_gens)?;
    Ok(ToricPresentation { ring, kernel, images: image_monos, degree_scale: g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial_tools::{monomial_colon, MonomialIdeal};

    fn pres(p: u64, names: &[&str]) -> Arc<RingPresentation> {
        let vars = names.iter().map(|n| Variable::new(*n, 1)).collect();
        RingPresentation::polynomial_ring(CoefficientField::from_characteristic(p).unwrap(), vars)
            .unwrap()
    }

    #[test]
    fn colon_by_a_variable() {
        let r = pres(0, &["x", "y"]);
        let i = Ideal::parse(&r, &["x^2*y"]).unwrap();
        let c = colon_ideal(&i, &Ideal::parse(&r, &["y"]).unwrap()).unwrap();
        assert_eq!(c.format_gens(), vec!["x^2"]);
    }

    #[test]
    fn colon_gains_a_generator() {
        let r = pres(0, &["x", "y"]);
        let i = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
        let c = colon_ideal(&i, &Ideal::parse(&r, &["x"]).unwrap()).unwrap();
        assert!(c.equals(&Ideal::maximal(&r)).unwrap());
    }

    #[test]
    fn colon_by_unit_ideal() {
        let r = pres(0, &["x", "y"]);
        let i = Ideal::parse(&r, &["x^3", "x*y^2"]).unwrap();
        let c = colon_ideal(&i, &Ideal::unit(&r)).unwrap();
        assert!(c.equals(&i).unwrap());
    }

    #[test]
    fn colon_matches_monomial_closed_form() {
        let r = pres(2, &["x", "y"]);
        let i = Ideal::parse(&r, &["x^3", "y^2"]).unwrap();
        let j = Ideal::parse(&r, &["x*y"]).unwrap();
        let c = colon_ideal(&i, &j).unwrap();
        let closed = monomial_colon(
            &MonomialIdeal::from_ideal(&i).unwrap(),
            &MonomialIdeal::from_ideal(&j).unwrap(),
        );
        assert!(c.equals(&closed.to_ideal(&r).unwrap()).unwrap());
        assert!(c.equals(&Ideal::parse(&r, &["x^2", "y"]).unwrap()).unwrap());
    }

    #[test]
    fn colon_in_a_quotient_ring() {
        // In k[x,y]/(xy): 0 : (x) = (y).
        let vars = vec![Variable::new("x", 1), Variable::new("y", 1)];
        let r = RingPresentation::parse(CoefficientField::Rationals, vars, &["x*y"]).unwrap();
        let c = colon_ideal(&Ideal::zero(&r), &Ideal::parse(&r, &["x"]).unwrap()).unwrap();
        assert!(c.equals(&Ideal::parse(&r, &["y"]).unwrap()).unwrap());
    }

    #[test]
    fn colon_with_non_principal_relations() {
        let vars = ["a", "b", "c", "d"].map(|n| Variable::new(n, 1)).to_vec();
        for p in [0, 2] {
            let field = CoefficientField::from_characteristic(p).unwrap();
            let r = RingPresentation::parse(field, vars.clone(), &["b^2 - a*c", "c^2 - b*d", "b*c - a*d"]).unwrap();
            let i = Ideal::parse(&r, &["a", "d"]).unwrap();
            let m = Ideal::maximal(&r);
            assert!(colon_ideal(&i, &m).unwrap().equals(&m).unwrap());
            let c = colon_ideal(&i, &Ideal::parse(&r, &["b"]).unwrap()).unwrap();
            assert!(c.equals(&Ideal::parse(&r, &["a", "b", "c", "d"]).unwrap()).unwrap());
            let c = colon_ideal(&Ideal::parse(&r, &["a"]).unwrap(), &Ideal::parse(&r, &["b"]).unwrap()).unwrap();
            let gb = c.groebner().unwrap();
            for g in c.gens() {
                assert!(Ideal::parse(&r, &["a"]).unwrap().contains_poly(&r.ring().mul(g, &r.ring().var(1)).unwrap()).unwrap());
            }
            assert!(gb.contains(&r.ring().var(0)) && gb.contains(&r.ring().var(1)));
        }
    }

    #[test]
    fn intersection_of_coordinate_axes() {
        let r = pres(0, &["x", "y"]);
        let i = intersect(
            &Ideal::parse(&r, &["x"]).unwrap(),
            &Ideal::parse(&r, &["y"]).unwrap(),
        )
        .unwrap();
        assert!(i.equals(&Ideal::parse(&r, &["x*y"]).unwrap()).unwrap());
    }

    #[test]
    fn exact_division() {
        let r = pres(0, &["x", "y"]).ring().clone();
        let h = r.parse("x^3 - x*y^2").unwrap();
        let f = r.parse("x + y").unwrap();
        assert_eq!(divide_exact(&r, &h, &f).unwrap(), Some(r.parse("x^2 - x*y").unwrap()));
        assert_eq!(divide_exact(&r, &r.parse("x^2 + 1").unwrap(), &f).unwrap(), None);
    }

    fn t_vars(names: &[&str]) -> Vec<Variable> {
        names.iter().map(|n| Variable::new(*n, 1)).collect()
    }

    #[test]
    fn twisted_cubic_kernel() {
        let tp = monomial_map_kernel(
            CoefficientField::prime(2).unwrap(),
            &t_vars(&["x", "y"]),
            &["x^3", "x^2*y", "x*y^2", "y^3"],
            None,
        )
        .unwrap();
        assert_eq!(tp.degree_scale, 3);
        assert!(tp.ring.ring().weights().iter().all(|&w| w == 1));
        let expected =
            Ideal::parse(tp.kernel.ring(), &["b^2 - a*c", "c^2 - b*d", "b*c - a*d"]).unwrap();
        assert!(tp.kernel.equals(&expected).unwrap());
    }

    #[test]
    fn algebraically_independent_images() {
        let tp = monomial_map_kernel(CoefficientField::Rationals, &t_vars(&["x", "y"]), &["x^2", "y^2"], None)
            .unwrap();
        assert!(tp.kernel.is_zero());
    }

    #[test]
    fn cusp_kernel_has_weights_two_three() {
        let tp = monomial_map_kernel(CoefficientField::Rationals, &t_vars(&["t"]), &["t^2", "t^3"], None)
            .unwrap();
        assert_eq!(tp.ring.ring().weights(), vec![2, 3]);
        let expected = Ideal::parse(tp.kernel.ring(), &["b^2 - a^3"]).unwrap();
        assert!(tp.kernel.equals(&expected).unwrap());
    }

    #[test]
    fn preimages_round_trip() {
        let tp = monomial_map_kernel(
            CoefficientField::Rationals,
            &t_vars(&["x", "y"]),
            &["x^3", "x^2*y", "x*y^2", "y^3"],
            None,
        )
        .unwrap();
        let target = Monomial::from_exponents(&[4, 5]);
        let pre = tp.preimage(&target).unwrap();
        assert_eq!(tp.image_of(&pre).unwrap(), target);
        assert!(tp.preimage(&Monomial::from_exponents(&[1, 1])).is_none());
    }
}
