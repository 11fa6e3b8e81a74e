//! Exact checks of the multiplicity inequality
//! `(d + N)^d e(a) ≥ d^d e(J)`, its Frobenius-level form, and the worked
//! examples around them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::elimination::monomial_map_kernel;
use crate::error::{Error, Result};
use crate::frobenius::{self, least_power_in, NuProblem, NuTable, ThresholdEstimate};
use crate::groebner::Ideal;
use crate::hilbert::{krull_dimension, multiplicity, multiplicity_hsop};
use crate::monomial::Monomial;
use crate::poly::Variable;
use crate::ratio;
use crate::scalar::CoefficientField;
use crate::template::RingTemplate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "holds-strict")]
    HoldsStrict,
    #[serde(rename = "holds-with-equality")]
    HoldsWithEquality,
    #[serde(rename = "VIOLATION")]
    Violation,
}

impl Verdict {
    fn compare(lhs: &BigRational, rhs: &BigRational) -> Self {
        match lhs.cmp(rhs) {
            std::cmp::Ordering::Greater => Verdict::HoldsStrict,
            std::cmp::Ordering::Equal => Verdict::HoldsWithEquality,
            std::cmp::Ordering::Less => Verdict::Violation,
        }
    }

    pub fn holds(self) -> bool {
        self != Verdict::Violation
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::HoldsStrict => "holds-strict",
            Verdict::HoldsWithEquality => "holds-with-equality",
            Verdict::Violation => "VIOLATION",
        })
    }
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow(base: u64, d: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(base).pow(d as u32))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub d: usize,
    #[serde(with = "ratio")]
    pub e_a: BigRational,
    #[serde(rename = "e_J", with = "ratio")]
    pub e_j: BigRational,
    #[serde(rename = "N")]
    pub n: u64,
    /// `(d + N)^d e(a)`.
    #[serde(with = "ratio")]
    pub lhs: BigRational,
    /// `d^d e(J)`.
    #[serde(with = "ratio")]
    pub rhs: BigRational,
    pub verdict: Verdict,
    pub degrees_a: Vec<u64>,
    #[serde(rename = "degrees_J")]
    pub degrees_j: Vec<u64>,
    pub proportional: bool,
}

impl BoundReport {
    /// Equality is only expected for proportional degree sequences.
    pub fn alarm(&self) -> bool {
        self.verdict == Verdict::HoldsWithEquality && !self.proportional
    }

    pub fn holds(&self) -> bool {
        self.verdict.holds() && !self.alarm()
    }
}

/// Sorted degree lists agree up to one common ratio.
pub fn proportional(a: &[u64], b: &[u64]) -> bool {
    a.len() == b.len()
        && a.first().zip(b.first()).is_none_or(|(a0, b0)| {
            a.iter().zip(b).all(|(ai, bi)| ai * b0 == a0 * bi)
        })
}

pub fn verify_main_inequality(a: &Ideal, j: &Ideal) -> Result<BoundReport> {
    a.same_ring(j)?;
    let ea = multiplicity_hsop(a)?;
    let ej = multiplicity_hsop(j)?;
    let d = ea.ideal_degrees.len();
    let n = least_power_in(a, j)?;
    let lhs = pow(d as u64 + n, d) * &ea.multiplicity;
    let rhs = pow(d as u64, d) * &ej.multiplicity;
    Ok(BoundReport {
        d,
        verdict: Verdict::compare(&lhs, &rhs),
        proportional: proportional(&ea.ideal_degrees, &ej.ideal_degrees),
        e_a: ea.multiplicity,
        e_j: ej.multiplicity,
        n,
        lhs,
        rhs,
        degrees_a: ea.ideal_degrees,
        degrees_j: ej.ideal_degrees,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuBoundReport {
    pub q: u64,
    pub nu: u64,
    pub d: usize,
    #[serde(with = "ratio")]
    pub e_a: BigRational,
    #[serde(rename = "e_J", with = "ratio")]
    pub e_j: BigRational,
    /// `(d + ν)^d e(a)`.
    #[serde(with = "ratio")]
    pub lhs: BigRational,
    /// `(qd)^d e(J)`.
    #[serde(with = "ratio")]
    pub rhs: BigRational,
    pub verdict: Verdict,
}

fn nu_bound_row(q: u64, nu: u64, d: usize, e_a: &BigRational, e_j: &BigRational) -> NuBoundReport {
    let lhs = pow(d as u64 + nu, d) * e_a;
    let rhs = pow(q * d as u64, d) * e_j;
    NuBoundReport { q, nu, d, e_a: e_a.clone(), e_j: e_j.clone(), verdict: Verdict::compare(&lhs, &rhs), lhs, rhs }
}

pub fn verify_nu_bound(a: &Ideal, j: &Ideal, e: u32) -> Result<NuBoundReport> {
    let q = frobenius::prime_power(a.ring().characteristic(), e)?;
    let nu = frobenius::nu(a, j, q)?;
    let ea = multiplicity_hsop(a)?;
    let ej = multiplicity_hsop(j)?;
    Ok(nu_bound_row(q, nu, ea.ideal_degrees.len(), &ea.multiplicity, &ej.multiplicity))
}

/// The per-`q` bound for every row of a table.
pub fn verify_nu_bounds(a: &Ideal, j: &Ideal, table: &NuTable) -> Result<Vec<NuBoundReport>> {
    let ea = multiplicity_hsop(a)?;
    let ej = multiplicity_hsop(j)?;
    let d = ea.ideal_degrees.len();
    Ok(table.rows.iter().map(|r| nu_bound_row(r.q, r.nu, d, &ea.multiplicity, &ej.multiplicity)).collect())
}

/// When the bracket `max ν(q)/q` is at most `d`, `e(a) ≥ e(J)` is expected.
/// Informational only: the bracket is not the limit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralReport {
    pub d: usize,
    #[serde(with = "ratio")]
    pub bracket: BigRational,
    #[serde(with = "ratio")]
    pub e_a: BigRational,
    #[serde(rename = "e_J", with = "ratio")]
    pub e_j: BigRational,
    pub triggered: bool,
    pub consistent: bool,
}

/// `e(a)` and `e(J)` may come from non-parameter ideals of finite colength.
pub fn check_integral_condition(a: &Ideal, j: &Ideal, emax: u32) -> Result<IntegralReport> {
    let table = frobenius::nu_table(a, j, emax)?;
    let est = frobenius::threshold_bracket(&table)?;
    let d = krull_dimension(a.ring())?;
    let e_a = multiplicity(a)?;
    let e_j = multiplicity(j)?;
    let triggered = est.lower <= int(d as u64);
    Ok(IntegralReport { d, consistent: !triggered || e_a >= e_j, bracket: est.lower, e_a, e_j, triggered })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub d: usize,
    #[serde(with = "ratio")]
    pub e_a: BigRational,
    #[serde(rename = "e_J", with = "ratio")]
    pub e_j: BigRational,
    #[serde(rename = "N")]
    pub n: u64,
}

fn invariants(a: &Ideal, j: &Ideal) -> Result<Invariants> {
    let r = verify_main_inequality(a, j)?;
    Ok(Invariants { d: r.d, e_a: r.e_a, e_j: r.e_j, n: r.n })
}

#[derive(Clone, Debug)]
pub enum PrimeOutcome {
    Computed { invariants: Invariants, table: Option<NuTable> },
    BadPrime(String),
    Failed(Error),
}

#[derive(Clone, Debug)]
pub struct MultiPrimeReport {
    pub over_q: Invariants,
    pub per_prime: BTreeMap<u64, PrimeOutcome>,
}

impl MultiPrimeReport {
    /// Every computed prime agrees with `Q`, and no prime failed outright.
    pub fn agrees(&self) -> bool {
        self.per_prime.values().all(|o| match o {
            PrimeOutcome::Computed { invariants, .. } => *invariants == self.over_q,
            PrimeOutcome::BadPrime(_) => true,
            PrimeOutcome::Failed(_) => false,
        })
    }

    pub fn skipped(&self) -> Vec<(u64, String)> {
        self.per_prime
            .iter()
            .filter_map(|(p, o)| match o {
                PrimeOutcome::BadPrime(why) => Some((*p, why.clone())),
                _ => None,
            })
            .collect()
    }
}

/// `(d, e(a), e(J), N)` over `Q` and over each `F_p`; `ν` tables up to
/// `emax` are attached when `emax > 0`.
pub fn multi_prime_compare(
    template: &RingTemplate,
    primes: &[u64],
    a_name: &str,
    j_name: &str,
    emax: u32,
) -> Result<MultiPrimeReport> {
    if !template.has_integer_coefficients()? {
        return Err(Error::InvalidArgument("the presentation has non-integer coefficients".into()));
    }
    let q = template.instantiate(0)?;
    let over_q = invariants(q.ideal(a_name)?, q.ideal(j_name)?)?;
    let mut per_prime = BTreeMap::new();
    for &p in primes {
        let outcome = match template.reduction_defect(p)? {
            Some(why) => PrimeOutcome::BadPrime(why),
            None => {
                let run = || -> Result<PrimeOutcome> {
                    let inst = template.instantiate(p)?;
                    let (a, j) = (inst.ideal(a_name)?, inst.ideal(j_name)?);
                    let invariants = invariants(a, j)?;
                    let table = if emax > 0 { Some(frobenius::nu_table(a, j, emax)?) } else { None };
                    Ok(PrimeOutcome::Computed { invariants, table })
                };
                run().unwrap_or_else(PrimeOutcome::Failed)
            }
        };
        per_prime.insert(p, outcome);
    }
    Ok(MultiPrimeReport { over_q, per_prime })
}

/// `|ν(q)/q − e(J)/e(a)| ≤ C/q` with `C` taken from the first row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneDimensionalReport {
    pub limit: BigRational,
    pub constant: BigRational,
    /// `(q, |ν(q)/q − limit|·q)`.
    pub scaled_gaps: Vec<(u64, BigRational)>,
}

impl OneDimensionalReport {
    pub fn holds(&self) -> bool {
        self.scaled_gaps.iter().all(|(_, g)| *g <= self.constant)
    }
}

pub fn one_dimensional_check(a: &Ideal, j: &Ideal, emax: u32) -> Result<OneDimensionalReport> {
    let d = krull_dimension(a.ring())?;
    if d != 1 {
        return Err(Error::InvalidArgument(format!("the ring has dimension {d}, not 1")));
    }
    let e_a = multiplicity_hsop(a)?.multiplicity;
    let e_j = multiplicity_hsop(j)?.multiplicity;
    let limit = e_j / e_a;
    let table = frobenius::nu_table(a, j, emax)?;
    if let Some(f) = table.failures.first() {
        return Err(f.error.clone());
    }
    let scaled_gaps: Vec<(u64, BigRational)> = table
        .rows
        .iter()
        .map(|r| (r.q, (&r.ratio - &limit).abs() * int(r.q)))
        .collect();
    let constant = scaled_gaps.first().map(|(_, g)| g.clone()).unwrap_or_else(BigRational::zero);
    Ok(OneDimensionalReport { limit, constant, scaled_gaps })
}

/// The test-ideal jump of `J = (x³, y³)` on the third Veronese subring of
/// `F_p[x, y]`, next to the `ν` bracket of `(J, J)`.
#[derive(Clone, Debug)]
pub struct FjnDemoReport {
    pub t_star: BigRational,
    pub threshold_estimate: ThresholdEstimate,
    /// `(k, generators of τ at t = k/3)` for the scanned jump points.
    pub jumps: Vec<(u64, Vec<String>)>,
    /// `τ_{k/3} ⊇ τ_{(k+1)/3}` at every scanned step.
    pub monotone: bool,
}

pub fn veronese_fjn_demo(p: u64, emax: u32) -> Result<FjnDemoReport> {
    let field = CoefficientField::prime(p)?;
    let toric = monomial_map_kernel(
        field,
        &[Variable::new("x", 1), Variable::new("y", 1)],
        &["x^3", "x^2*y", "x*y^2", "y^3"],
        Some(&["a", "b", "c", "d"]),
    )?;
    let ring = &toric.ring;
    let j = Ideal::parse(ring, &["a", "d"])?;

    // τ at t = k/3 is (m_S)^{k-1} ∩ R, generated by the R-monomials of
    // degree 3⌈(k-1)/3⌉.
    let tau = |k: u64| -> Result<Ideal> {
        let deg = 3 * (k - 1).div_ceil(3);
        let gens = (0..=deg)
            .map(|i| {
                let target = Monomial::from_exponents(&[i, deg - i]);
                let pre = toric.preimage(&target).expect("degree divisible by 3 lies in R");
                ring.ring().monomial(pre)
            })
            .collect();
        Ideal::new(ring, gens)
    };

    let mut jumps = Vec::new();
    let mut monotone = true;
    let mut prev: Option<Ideal> = None;
    let mut t_star = None;
    for k in 1..=12u64 {
        let t = tau(k)?;
        if let Some(prev) = &prev {
            monotone &= prev.contains_ideal(&t)?;
        }
        jumps.push((k, t.format_gens()));
        if t_star.is_none() && j.contains_ideal(&t)? {
            t_star = Some(BigRational::new(BigInt::from(k), BigInt::from(3)));
        }
        prev = Some(t);
        if t_star.is_some() && k % 3 == 0 {
            break;
        }
    }
    let t_star = t_star.ok_or_else(|| Error::ResourceLimit("no jump found up to t = 4".into()))?;
    let table = NuProblem::new(&j, &j)?.table(emax)?;
    let threshold_estimate = frobenius::threshold_bracket(&table)?;
    Ok(FjnDemoReport { t_star, threshold_estimate, jumps, monotone })
}
