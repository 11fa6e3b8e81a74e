//! A ring with named ideals, written over `Z` and instantiated over any
//! coefficient field.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{Polynomial, RingPresentation, Variable};
use crate::scalar::{CoefficientField, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingTemplate {
    pub vars: Vec<Variable>,
    pub relations: Vec<String>,
    pub ideals: BTreeMap<String, Vec<String>>,
}

/// A template instantiated over one field.
#[derive(Clone, Debug)]
pub struct Instance {
    pub ring: Arc<RingPresentation>,
    pub ideals: BTreeMap<String, Ideal>,
}

impl Instance {
    pub fn ideal(&self, name: &str) -> Result<&Ideal> {
        self.ideals
            .get(name)
            .ok_or_else(|| Error::InvalidArgument(format!("no ideal named `{name}`")))
    }
}

impl RingTemplate {
    pub fn new(vars: Vec<Variable>, relations: &[&str]) -> Self {
        RingTemplate {
            vars,
            relations: relations.iter().map(|s| s.to_string()).collect(),
            ideals: BTreeMap::new(),
        }
    }

    pub fn with_ideal(mut self, name: &str, gens: &[&str]) -> Self {
        self.ideals.insert(name.to_string(), gens.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn instantiate(&self, characteristic: u64) -> Result<Instance> {
        self.instantiate_with_limit(characteristic, crate::poly::DEFAULT_STEP_LIMIT)
    }

    pub fn instantiate_with_limit(&self, characteristic: u64, step_limit: u64) -> Result<Instance> {
        let field = CoefficientField::from_characteristic(characteristic)?;
        let rels: Vec<&str> = self.relations.iter().map(String::as_str).collect();
        let ring = RingPresentation::parse(field, self.vars.clone(), &rels)?.with_step_limit(step_limit);
        let mut ideals = BTreeMap::new();
        for (name, gens) in &self.ideals {
            let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
            ideals.insert(name.clone(), Ideal::parse(&ring, &gens)?);
        }
        Ok(Instance { ring, ideals })
    }

    fn all_sources(&self) -> impl Iterator<Item = &String> {
        self.relations.iter().chain(self.ideals.values().flatten())
    }

    /// True when every coefficient, read over `Q`, is an integer.
    pub fn has_integer_coefficients(&self) -> Result<bool> {
        let q = self.instantiate(0)?;
        let ring = q.ring.ring();
        for src in self.all_sources() {
            let f = ring.parse(src)?;
            if f.terms().iter().any(|(_, c)| matches!(c, Scalar::Rat(r) if !r.is_integer())) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Why reduction mod `p` changes the data, if it does: a coefficient
    /// that vanishes or is undefined mod `p`.
    pub fn reduction_defect(&self, p: u64) -> Result<Option<String>> {
        let over_q = self.instantiate(0)?;
        let field = CoefficientField::prime(p)?;
        let mod_p = crate::poly::PolyRing::new(field, self.vars.clone())?;
        for src in self.all_sources() {
            let f: Polynomial = over_q.ring.ring().parse(src)?;
            match mod_p.parse(src) {
                Ok(g) if g.len() == f.len() => {}
                Ok(_) => return Ok(Some(format!("a coefficient of `{src}` vanishes mod {p}"))),
                Err(Error::CoefficientNotInField { coeff, .. }) => {
                    return Ok(Some(format!("coefficient {coeff} of `{src}` is undefined mod {p}")))
                }
                Err(e) => return Err(e),
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane() -> Vec<Variable> {
        vec![Variable::new("x", 1), Variable::new("y", 1)]
    }

    #[test]
    fn instantiates_over_several_fields() {
        let t = RingTemplate::new(plane(), &[]).with_ideal("J", &["x^2", "y^3"]);
        for ch in [0, 2, 3] {
            let inst = t.instantiate(ch).unwrap();
            assert_eq!(inst.ideal("J").unwrap().gens().len(), 2);
        }
        assert!(t.instantiate(4).is_err());
        assert!(t.instantiate(2).unwrap().ideal("a").is_err());
    }

    #[test]
    fn detects_bad_primes() {
        let t = RingTemplate::new(plane(), &["x^2 - 3*y^2"]).with_ideal("a", &["x", "1/5*y"]);
        assert!(!t.has_integer_coefficients().unwrap());
        assert!(t.reduction_defect(3).unwrap().unwrap().contains("vanishes"));
        assert!(t.reduction_defect(5).unwrap().unwrap().contains("undefined"));
        assert_eq!(t.reduction_defect(7).unwrap(), None);
    }
}
