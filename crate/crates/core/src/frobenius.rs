//! Frobenius powers `J^[q]`, the numbers `ν_a^J(q)`, F-threshold brackets,
//! bounded Frobenius closure and the finite-level scaling identities.

use std::collections::HashMap;
use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{for_each_composition, GroebnerBasis, Ideal};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial, RingPresentation, Variable};
use crate::ratio;
use crate::scalar::CoefficientField;

/// `e` with `q = p^e`.
pub fn frobenius_exponent(p: u64, q: u64) -> Result<u32> {
    if p == 0 {
        return Err(Error::CharacteristicZero);
    }
    let (mut cur, mut e) = (1u64, 0u32);
    while cur < q {
        cur = cur.checked_mul(p).ok_or(Error::NotPowerOfCharacteristic { q, p })?;
        e += 1;
    }
    if cur == q {
        Ok(e)
    } else {
        Err(Error::NotPowerOfCharacteristic { q, p })
    }
}

pub fn prime_power(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e).ok_or(Error::ExponentOverflow)
}

/// `J^[q]`, generated by the `q`-th powers of the given generators.
pub fn frobenius_power(j: &Ideal, q: u64) -> Result<Ideal> {
    frobenius_exponent(j.ring().characteristic(), q)?;
    let ring = j.ring().ring();
    let gens = j.gens().iter().map(|g| ring.pow(g, q)).collect::<Result<Vec<_>>>()?;
    Ideal::new(j.ring(), gens)
}

/// Row-echelon span of polynomials, keyed by leading monomial.
struct Echelon<'a> {
    ring: &'a PolyRing,
    pivots: HashMap<Monomial, usize>,
    rows: Vec<Polynomial>,
}

impl<'a> Echelon<'a> {
    fn new(ring: &'a PolyRing) -> Self {
        Echelon { ring, pivots: HashMap::new(), rows: Vec::new() }
    }

    fn insert(&mut self, mut v: Polynomial) {
        while let Some(lm) = v.leading_monomial() {
            match self.pivots.get(lm) {
                Some(&i) => {
                    let c = v.leading_coefficient().expect("nonzero").clone();
                    v = self.ring.sub(&v, &self.ring.scale(&c, &self.rows[i]));
                }
                None => {
                    let v = self.ring.monic(&v);
                    self.pivots.insert(v.leading_monomial().expect("nonzero").clone(), self.rows.len());
                    self.rows.push(v);
                    return;
                }
            }
        }
    }
}

/// Smallest `r ≤ cap` with `a^r ⊆ I`, where `I` is given by its Gröbner
/// basis. Level `r` holds a basis of the span of `NF(a^r)`; level `r + 1`
/// is spanned by `NF(g · v)` for generators `g` and basis vectors `v`.
fn first_contained_power(gb: &GroebnerBasis, a_gens: &[Polynomial], cap: u64) -> Result<Option<u64>> {
    let ring = gb.ring().ring();
    let gens: Vec<Polynomial> = a_gens.iter().map(|g| gb.normal_form(g)).collect();
    let mut level = vec![gb.normal_form(&ring.one())];
    level.retain(|v| !v.is_zero());
    let mut r = 0;
    while !level.is_empty() {
        if r == cap {
            return Ok(None);
        }
        let mut next = Echelon::new(ring);
        for g in gens.iter().filter(|g| !g.is_zero()) {
            for v in &level {
                next.insert(gb.normal_form(&ring.mul(g, v)?));
            }
        }
        level = next.rows;
        r += 1;
    }
    Ok(Some(r))
}

/// Some product of `depth` generators (as exponents) outside the ideal of
/// `gb`, by enumerating all of them.
fn product_outside(gb: &GroebnerBasis, a_gens: &[Polynomial], depth: u64) -> Result<Option<Vec<usize>>> {
    let ring = gb.ring().ring();
    let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(a_gens.len());
    for g in a_gens {
        let mut row = vec![ring.one()];
        for k in 1..=depth as usize {
            row.push(gb.normal_form(&ring.mul(&row[k - 1], g)?));
        }
        powers.push(row);
    }
    let mut found = None;
    let mut failure = None;
    let _ = for_each_composition(depth as usize, a_gens.len(), &mut |exps| {
        let mut acc = ring.one();
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                acc = match ring.mul(&acc, &powers[i][e]) {
                    Ok(p) => gb.normal_form(&p),
                    Err(err) => {
                        failure = Some(err);
                        return Err(());
                    }
                };
                if acc.is_zero() {
                    return Ok(());
                }
            }
        }
        if !acc.is_zero() {
            found = Some(exps.to_vec());
            return Err(());
        }
        Ok(())
    });
    match failure {
        Some(err) => Err(err),
        None => Ok(found),
    }
}

fn require_nonzero(i: &Ideal, what: &str) -> Result<()> {
    if i.is_zero() {
        Err(Error::InvalidArgument(format!("{what} must be a nonzero ideal")))
    } else {
        Ok(())
    }
}

/// Least `N ≥ 0` with `a^{N+1} ⊆ J`, scanning at most `cap` powers.
pub fn least_power_in_capped(a: &Ideal, j: &Ideal, cap: Option<u64>) -> Result<u64> {
    a.same_ring(j)?;
    require_nonzero(a, "a")?;
    require_nonzero(j, "J")?;
    let bound = j.default_radical_bound()
        + j.gens().iter().filter_map(|g| j.ring().ring().weighted_degree(g).ok().flatten()).sum::<u64>();
    let rad = j.radical_contains(a, bound)?;
    if !rad.contains() {
        let missing: Vec<String> = a
            .gens()
            .iter()
            .zip(&rad.witnesses)
            .filter(|(_, w)| w.is_none())
            .map(|(g, _)| a.ring().ring().format(g))
            .collect();
        return Err(Error::RadicalViolation(format!(
            "no power up to {bound} of {} lies in ({})",
            missing.join(", "),
            j.format_gens().join(", ")
        )));
    }
    // Any product of Σ(m_i − 1) + 1 generators has some g_i to a power ≥ m_i.
    let pigeonhole = rad.witnesses.iter().map(|w| w.expect("checked") - 1).sum::<u64>() + 1;
    let cap = cap.unwrap_or(pigeonhole);
    match first_contained_power(&j.groebner()?, a.gens(), cap)? {
        Some(r) => Ok(r.saturating_sub(1)),
        None => Err(Error::ResourceLimit(format!("no power of a up to {cap} lies in J"))),
    }
}

pub fn least_power_in(a: &Ideal, j: &Ideal) -> Result<u64> {
    least_power_in_capped(a, j, None)
}

/// A validated pair `(a, J)` with `a ⊆ √J` over `F_p`, ready for `ν`
/// evaluations at several `q`.
#[derive(Clone, Debug)]
pub struct NuProblem {
    a: Ideal,
    j: Ideal,
    least_power: u64,
}

impl NuProblem {
    pub fn new(a: &Ideal, j: &Ideal) -> Result<Self> {
        if a.ring().characteristic() == 0 {
            return Err(Error::CharacteristicZero);
        }
        let least_power = least_power_in(a, j)?;
        Ok(NuProblem { a: a.clone(), j: j.clone(), least_power })
    }

    pub fn a(&self) -> &Ideal {
        &self.a
    }

    pub fn j(&self) -> &Ideal {
        &self.j
    }

    pub fn characteristic(&self) -> u64 {
        self.a.ring().characteristic()
    }

    pub fn least_power(&self) -> u64 {
        self.least_power
    }

    /// `μ(q − 1) + (N + 1)q − 1`, an upper bound for `ν(q)`.
    pub fn upper_bound(&self, q: u64) -> u64 {
        let mu = self.a.gens().len() as u64;
        mu * (q - 1) + (self.least_power + 1) * q - 1
    }

    /// `ν_a^J(q)`, certified before it is returned.
    pub fn nu(&self, q: u64) -> Result<u64> {
        let jq = frobenius_power(&self.j, q)?;
        let gb = jq.groebner()?;
        let cap = self.upper_bound(q) + 1;
        let first = first_contained_power(&gb, self.a.gens(), cap)?.ok_or_else(|| {
            Error::Certificate(format!("a^{cap} is not contained in J^[{q}] despite the pigeonhole bound"))
        })?;
        let nu = first.checked_sub(1).ok_or_else(|| Error::InvalidArgument("J is the unit ideal".into()))?;
        if product_outside(&gb, self.a.gens(), nu + 1)?.is_some() {
            return Err(Error::Certificate(format!("a^{} is not contained in J^[{q}]", nu + 1)));
        }
        if product_outside(&gb, self.a.gens(), nu)?.is_none() {
            return Err(Error::Certificate(format!("a^{nu} is contained in J^[{q}]")));
        }
        Ok(nu)
    }

    pub fn row(&self, e: u32) -> Result<NuRow> {
        let q = prime_power(self.characteristic(), e)?;
        Ok(NuRow::new(e, q, self.nu(q)?))
    }

    /// Rows for `e = 1..=emax`, computed in parallel.
    pub fn table(&self, emax: u32) -> Result<NuTable> {
        if emax == 0 {
            return Err(Error::InvalidArgument("emax must be at least 1".into()));
        }
        let results: Vec<(u32, Result<NuRow>)> =
            (1..=emax).into_par_iter().map(|e| (e, self.row(e))).collect();
        let mut rows = Vec::new();
        let mut failures = Vec::new();
        for (e, res) in results {
            match res {
                Ok(row) => rows.push(row),
                Err(error) => failures.push(RowFailure { e, error }),
            }
        }
        Ok(NuTable { p: self.characteristic(), least_power: self.least_power, rows, failures })
    }
}

/// `ν_a^J(q) = max{r : a^r ⊄ J^[q]}`.
pub fn nu(a: &Ideal, j: &Ideal, q: u64) -> Result<u64> {
    frobenius_exponent(a.ring().characteristic(), q)?;
    NuProblem::new(a, j)?.nu(q)
}

pub fn nu_table(a: &Ideal, j: &Ideal, emax: u32) -> Result<NuTable> {
    NuProblem::new(a, j)?.table(emax)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuRow {
    pub e: u32,
    pub q: u64,
    pub nu: u64,
    #[serde(with = "ratio")]
    pub ratio: BigRational,
}

impl NuRow {
    pub fn new(e: u32, q: u64, nu: u64) -> Self {
        NuRow { e, q, nu, ratio: BigRational::new(BigInt::from(nu), BigInt::from(q)) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowFailure {
    pub e: u32,
    pub error: Error,
}

#[derive(Serialize)]
struct CsvRow {
    e: u32,
    q: u64,
    nu: u64,
    ratio_num: String,
    ratio_den: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuTable {
    pub p: u64,
    pub least_power: u64,
    pub rows: Vec<NuRow>,
    pub failures: Vec<RowFailure>,
}

impl NuTable {
    /// CSV with columns `e,q,nu,ratio_num,ratio_den`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.rows {
            w.serialize(CsvRow {
                e: r.e,
                q: r.q,
                nu: r.nu,
                ratio_num: r.ratio.numer().to_string(),
                ratio_den: r.ratio.denom().to_string(),
            })
            .map_err(|e| Error::Format(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn nus(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.nu).collect()
    }

    /// `ν(pq) ≥ p·ν(q)` between consecutive rows.
    pub fn is_regular(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].e != w[0].e + 1 || w[1].nu >= self.p * w[0].nu)
    }
}

/// Bracketed estimate of `lim ν(q)/q` from a finite table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdEstimate {
    pub table: NuTable,
    /// Largest ratio `ν(q)/q` in the table.
    pub lower: BigRational,
    /// Slope `c` of `ν(q) ≈ cq − β` through the last two rows.
    pub extrapolated: BigRational,
    /// Ratios nondecreasing in `e`.
    pub monotone: bool,
    /// Set when `ν(pq) ≥ p·ν(q)` fails somewhere, so `lower` need not bound
    /// the limit.
    pub diagnostic: bool,
}

pub fn threshold_bracket(table: &NuTable) -> Result<ThresholdEstimate> {
    let rows = &table.rows;
    let last = rows.last().ok_or_else(|| Error::InvalidArgument("empty ν table".into()))?;
    let lower = rows.iter().map(|r| r.ratio.clone()).max().expect("nonempty");
    let extrapolated = match rows.len() {
        1 => last.ratio.clone(),
        n => {
            let prev = &rows[n - 2];
            BigRational::new(
                BigInt::from(last.nu) - BigInt::from(prev.nu),
                BigInt::from(last.q) - BigInt::from(prev.q),
            )
        }
    };
    let monotone = rows.windows(2).all(|w| w[0].ratio <= w[1].ratio);
    Ok(ThresholdEstimate {
        table: table.clone(),
        lower,
        extrapolated,
        monotone,
        diagnostic: !table.is_regular(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum ClosureVerdict {
    /// `x^{p^e} ∈ I^[p^e]` for this least `e`.
    Member { e: u32 },
    NotFoundUpTo { emax: u32 },
}

pub const DEFAULT_CLOSURE_EMAX: u32 = 4;

/// Bounded search for `x ∈ I^F`.
pub fn frobenius_closure_member(x: &Polynomial, i: &Ideal, emax: u32) -> Result<ClosureVerdict> {
    let p = i.ring().characteristic();
    if p == 0 {
        return Err(Error::CharacteristicZero);
    }
    let ring = i.ring().ring();
    ring.check_arity(x)?;
    for e in 0..=emax {
        let q = prime_power(p, e)?;
        if frobenius_power(i, q)?.contains_poly(&ring.pow(x, q)?)? {
            return Ok(ClosureVerdict::Member { e });
        }
    }
    Ok(ClosureVerdict::NotFoundUpTo { emax })
}

/// Optional ideals for the monotonicity checks: `larger_j ⊇ J` and
/// `smaller_a ⊆ a`.
#[derive(Clone, Debug, Default)]
pub struct Comparisons {
    pub larger_j: Option<Ideal>,
    pub smaller_a: Option<Ideal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalingReport {
    pub r: u64,
    pub q: u64,
    pub q_prime: u64,
    /// `ν_a^J(q)`.
    pub nu: u64,
    /// `ν_{a^r}^J(q)`.
    pub nu_of_power: u64,
    /// `ν_a^{J^[q′]}(q)`.
    pub nu_bracket: u64,
    /// `ν_a^J(qq′)`.
    pub nu_product: u64,
    pub nu_larger_j: Option<u64>,
    pub nu_smaller_a: Option<u64>,
}

fn violation(identity: &str, detail: String) -> Error {
    Error::IdentityViolation { identity: identity.to_string(), detail }
}

/// Checks `ν_{a^r}(q) = ⌊ν_a(q)/r⌋`, `ν_a^{J^[q′]}(q) = ν_a^J(qq′)` and,
/// when supplied, `ν^I ≤ ν^J` for `I ⊇ J` and `ν_b ≤ ν_a` for `b ⊆ a`.
pub fn check_scaling_identities(
    a: &Ideal,
    j: &Ideal,
    r: u64,
    e: u32,
    e_prime: u32,
    comparisons: &Comparisons,
) -> Result<ScalingReport> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let p = a.ring().characteristic();
    let q = prime_power(p.max(1), e)?;
    let q_prime = prime_power(p.max(1), e_prime)?;
    let base = NuProblem::new(a, j)?;
    let nu = base.nu(q)?;

    let nu_of_power = NuProblem::new(&a.power(r)?, j)?.nu(q)?;
    if nu_of_power != nu / r {
        return Err(violation(
            "power scaling",
            format!("nu(a^{r}, q={q}) = {nu_of_power} but floor({nu}/{r}) = {}", nu / r),
        ));
    }

    let nu_bracket = NuProblem::new(a, &frobenius_power(j, q_prime)?)?.nu(q)?;
    let nu_product = base.nu(q * q_prime)?;
    if nu_bracket != nu_product {
        return Err(violation(
            "bracket composition",
            format!("nu^(J^[{q_prime}])(q={q}) = {nu_bracket} but nu^J({}) = {nu_product}", q * q_prime),
        ));
    }

    let nu_larger_j = match &comparisons.larger_j {
        Some(big) => {
            if !big.contains_ideal(j)? {
                return Err(Error::InvalidArgument("the larger ideal does not contain J".into()));
            }
            let v = NuProblem::new(a, big)?.nu(q)?;
            if v > nu {
                return Err(violation("monotone in J", format!("nu^I(q={q}) = {v} > nu^J = {nu}")));
            }
            Some(v)
        }
        None => None,
    };
    let nu_smaller_a = match &comparisons.smaller_a {
        Some(small) => {
            if !a.contains_ideal(small)? {
                return Err(Error::InvalidArgument("the smaller ideal is not contained in a".into()));
            }
            let v = NuProblem::new(small, j)?.nu(q)?;
            if v > nu {
                return Err(violation("monotone in a", format!("nu_b(q={q}) = {v} > nu_a = {nu}")));
            }
            Some(v)
        }
        None => None,
    };
    Ok(ScalingReport { r, q, q_prime, nu, nu_of_power, nu_bracket, nu_product, nu_larger_j, nu_smaller_a })
}

/// A random small instance for [`check_scaling_identities`] in `F_p[x, y]`.
#[derive(Clone, Debug)]
pub struct ScalingInstance {
    pub a: Ideal,
    pub j: Ideal,
    pub r: u64,
    pub e: u32,
    pub e_prime: u32,
    pub comparisons: Comparisons,
}

impl ScalingInstance {
    pub fn run(&self) -> Result<ScalingReport> {
        check_scaling_identities(&self.a, &self.j, self.r, self.e, self.e_prime, &self.comparisons)
    }

    pub fn describe(&self) -> String {
        format!(
            "{} a=({}) J=({}) r={} e={} e'={}",
            self.a.ring().field(),
            self.a.format_gens().join(", "),
            self.j.format_gens().join(", "),
            self.r,
            self.e,
            self.e_prime
        )
    }
}

fn random_monomial(rng: &mut ChaCha8Rng, min_deg: u64, max_deg: u64) -> Monomial {
    let deg = rng.gen_range(min_deg..=max_deg);
    let i = rng.gen_range(0..=deg);
    Monomial::from_exponents(&[i, deg - i])
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &PolyRing, p: u64) -> Result<Polynomial> {
    let terms = rng.gen_range(1..=2);
    let mut out = Vec::new();
    for _ in 0..terms {
        let c = ring.field().from_i64(rng.gen_range(1..p as i64));
        out.push((random_monomial(rng, 1, 2), c));
    }
    let f = ring.from_terms(out)?;
    if f.is_zero() {
        Ok(ring.var(0))
    } else {
        Ok(f)
    }
}

/// `count` reproducible instances drawn from `seed`.
pub fn random_scaling_instances(seed: u64, count: usize) -> Result<Vec<ScalingInstance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let p = *[2u64, 3].choose(&mut rng).expect("nonempty");
        let field = CoefficientField::prime(p)?;
        let pres = RingPresentation::polynomial_ring(field, vec![Variable::new("x", 1), Variable::new("y", 1)])?;
        let ring = pres.ring();
        let mut j_gens = vec![
            ring.monomial(Monomial::from_exponents(&[rng.gen_range(1..=3), 0])),
            ring.monomial(Monomial::from_exponents(&[0, rng.gen_range(1..=3)])),
        ];
        if rng.gen_bool(0.5) {
            j_gens.push(ring.monomial(random_monomial(&mut rng, 2, 3)));
        }
        let j = Ideal::new(&pres, j_gens.clone())?;
        let a_gens = vec![random_poly(&mut rng, ring, p)?, random_poly(&mut rng, ring, p)?];
        let a = Ideal::new(&pres, a_gens.clone())?;
        j_gens.push(ring.monomial(random_monomial(&mut rng, 1, 2)));
        let larger_j = Ideal::new(&pres, j_gens)?;
        let smaller_a = Ideal::new(&pres, vec![ring.mul(&a_gens[0], &ring.var(rng.gen_range(0..2)))?, a_gens[1].clone()])?;
        out.push(ScalingInstance {
            a,
            j,
            r: rng.gen_range(1..=3),
            e: 1,
            e_prime: 1,
            comparisons: Comparisons { larger_j: Some(larger_j), smaller_a: Some(smaller_a) },
        });
    }
    Ok(out)
}
