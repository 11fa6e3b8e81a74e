//! Hilbert–Poincaré series of weighted graded quotients, dimension,
//! homogeneous systems of parameters and their multiplicities.
//!
//! For an hsop `f_1, ..., f_d` of a `d`-dimensional graded ring `R`,
//! `e(f) = deg f_1 ⋯ deg f_d · lim_{t→1} (1 − t)^d P(R, t)`. The limit is
//! read off the series computed from an initial ideal; an independent
//! Hilbert–Samuel computation is provided as a cross-check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::monomial::Monomial;
use crate::monomial_tools::minimalize;
use crate::poly::{Polynomial, RingPresentation};

type Coeffs = Vec<i64>;

fn trim(mut p: Coeffs) -> Coeffs {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add(a: &[i64], b: &[i64]) -> Coeffs {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += v;
    }
    trim(out)
}

fn shift(a: &[i64], k: usize) -> Coeffs {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; k];
    out.extend_from_slice(a);
    out
}

/// `p · (1 − t^k)`.
fn times_one_minus(p: &[i64], k: usize) -> Coeffs {
    let mut out = vec![0i64; p.len() + k];
    for (i, v) in p.iter().enumerate() {
        out[i] += v;
        out[i + k] -= v;
    }
    trim(out)
}

/// Numerator `N` of `HS(k[x]/L) = N(t) / ∏ (1 − t^{w_i})` for a monomial
/// ideal `L`, by pivoting on powers of variables:
/// `N(L) = N(L + x^e) + t^{e·w} N(L : x^e)`.
fn numerator(gens: Vec<Monomial>, weights: &[u64]) -> Coeffs {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    let coprime = (0..gens.len())
        .all(|i| (i + 1..gens.len()).all(|j| gens[i].is_coprime(&gens[j])));
    if coprime {
        return gens.iter().fold(vec![1], |acc, g| {
            times_one_minus(&acc, g.weighted_degree(weights) as usize)
        });
    }
    let arity = gens[0].arity();
    let pivot_var = (0..arity)
        .max_by_key(|&v| (gens.iter().filter(|g| g[v] > 0).count(), std::cmp::Reverse(v)))
        .expect("nonempty arity");
    let e = gens.iter().map(|g| g[pivot_var]).filter(|&x| x > 0).min().expect("pivot occurs");
    let pivot = Monomial::var_power(arity, pivot_var, e);

    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g[pivot_var] == 0).cloned().collect();
    plus.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[pivot_var] = h[pivot_var].saturating_sub(e);
            h
        })
        .collect();
    let first = numerator(plus, weights);
    let second = numerator(colon, weights);
    add(&first, &shift(&second, (e * weights[pivot_var]) as usize))
}

/// `N(t) / ∏ (1 − t^{w_i})` with its pole order at `t = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "SeriesRepr", into = "SeriesRepr")]
pub struct HilbertSeries {
    numerator: Vec<i64>,
    denom_weights: Vec<u64>,
    pole_order: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesRepr {
    numerator: Vec<i64>,
    denom_weights: Vec<u64>,
}

impl From<SeriesRepr> for HilbertSeries {
    fn from(r: SeriesRepr) -> Self {
        HilbertSeries::from_parts(r.numerator, r.denom_weights)
    }
}

impl From<HilbertSeries> for SeriesRepr {
    fn from(h: HilbertSeries) -> Self {
        SeriesRepr { numerator: h.numerator, denom_weights: h.denom_weights }
    }
}

/// Divides by `(1 − t)` as long as `t = 1` is a root; returns the quotient
/// and the number of divisions.
fn strip_root_at_one(p: &[i64], max: usize) -> (Coeffs, usize) {
    let mut cur = p.to_vec();
    let mut k = 0;
    while k < max && !cur.is_empty() && cur.iter().sum::<i64>() == 0 {
        // cur = (1 − t)·q  ⇒  q_i = Σ_{j ≤ i} cur_j
        let mut q = Vec::with_capacity(cur.len());
        let mut acc = 0i64;
        for v in &cur[..cur.len() - 1] {
            acc += v;
            q.push(acc);
        }
        cur = trim(q);
        k += 1;
    }
    (cur, k)
}

impl HilbertSeries {
    pub fn from_parts(numerator: Vec<i64>, denom_weights: Vec<u64>) -> Self {
        let numerator = trim(numerator);
        let n = denom_weights.len();
        let pole_order = if numerator.is_empty() { 0 } else { n - strip_root_at_one(&numerator, n).1 };
        HilbertSeries { numerator, denom_weights, pole_order }
    }

    /// Series of `k[x]/L` for the monomial ideal generated by `gens`.
    pub fn of_monomial_ideal(gens: &[Monomial], weights: &[u64]) -> Self {
        Self::from_parts(numerator(gens.to_vec(), weights), weights.to_vec())
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn denom_weights(&self) -> &[u64] {
        &self.denom_weights
    }

    /// Order of the pole at `t = 1`; the Krull dimension.
    pub fn pole_order(&self) -> usize {
        self.pole_order
    }

    /// Coefficients of `t^0, ..., t^n_max` in the expansion.
    pub fn coefficients(&self, n_max: usize) -> Vec<i128> {
        let mut c = vec![0i128; n_max + 1];
        for (i, v) in self.numerator.iter().enumerate().take(n_max + 1) {
            c[i] = *v as i128;
        }
        for &w in &self.denom_weights {
            let w = w as usize;
            for n in w..=n_max {
                c[n] += c[n - w];
            }
        }
        c
    }

    /// `lim_{t→1} (1 − t)^d P(t)` with `d` the pole order.
    pub fn leading_constant(&self) -> BigRational {
        if self.numerator.is_empty() {
            return BigRational::zero();
        }
        let n = self.denom_weights.len();
        let (q, _) = strip_root_at_one(&self.numerator, n - self.pole_order);
        let value: i64 = q.iter().sum();
        let denom: BigInt = self.denom_weights.iter().map(|&w| BigInt::from(w)).product();
        BigRational::new(BigInt::from(value), denom)
    }

    /// Total dimension when the series is a polynomial.
    pub fn length(&self) -> Option<u64> {
        if self.pole_order > 0 {
            return None;
        }
        let c = self.leading_constant();
        debug_assert!(c.is_integer());
        Some(u64::try_from(c.to_integer()).expect("length is a nonnegative integer"))
    }
}

/// Hilbert series of `R/I` (the relations are added to `I`).
pub fn ideal_series(ideal: &Ideal) -> Result<HilbertSeries> {
    let gb = ideal.groebner()?;
    let weights = ideal.ring().ring().weights();
    if gb.is_unit() {
        return Ok(HilbertSeries::from_parts(Vec::new(), weights));
    }
    Ok(HilbertSeries::of_monomial_ideal(&gb.leading_monomials(), &weights))
}

pub fn hilbert_series(ring: &std::sync::Arc<RingPresentation>) -> Result<HilbertSeries> {
    ideal_series(&Ideal::zero(ring))
}

pub fn krull_dimension(ring: &std::sync::Arc<RingPresentation>) -> Result<usize> {
    Ok(hilbert_series(ring)?.pole_order())
}

/// `lim_{t→1} (1 − t)^d P(R, t)`.
pub fn multiplicity_constant(ring: &std::sync::Arc<RingPresentation>) -> Result<BigRational> {
    Ok(hilbert_series(ring)?.leading_constant())
}

/// `dim_k R/I`, or `None` when infinite.
pub fn quotient_length(ideal: &Ideal) -> Result<Option<u64>> {
    Ok(ideal_series(ideal)?.length())
}

/// Number of standard monomials (outside the initial ideal of `I`) in each
/// weighted degree `0..=n_max`, by direct enumeration.
pub fn standard_monomial_counts(ideal: &Ideal, n_max: u64) -> Result<Vec<u64>> {
    let gb = ideal.groebner()?;
    let lms = gb.leading_monomials();
    let weights = ideal.ring().ring().weights();
    let mut counts = vec![0u64; n_max as usize + 1];
    let mut exps = vec![0u64; weights.len()];
    fn walk(i: usize, deg: u64, n_max: u64, w: &[u64], e: &mut Vec<u64>, lms: &[Monomial], counts: &mut [u64]) {
        if i == w.len() {
            let m = Monomial::from_exponents(e);
            if !lms.iter().any(|g| g.divides(&m)) {
                counts[deg as usize] += 1;
            }
            return;
        }
        let mut k = 0;
        while deg + k * w[i] <= n_max {
            e[i] = k;
            walk(i + 1, deg + k * w[i], n_max, w, e, lms, counts);
            k += 1;
        }
        e[i] = 0;
    }
    walk(0, 0, n_max, &weights, &mut exps, &lms, &mut counts);
    Ok(counts)
}

fn check_homogeneous_gens(gens: &[Polynomial], ring: &RingPresentation) -> Result<Vec<u64>> {
    let r = ring.ring();
    gens.iter()
        .map(|g| match r.weighted_degree(g) {
            Ok(Some(d)) => Ok(d),
            Ok(None) => Err(Error::NotHomogeneous(r.format(g))),
            Err(e) => Err(e),
        })
        .collect()
}

/// True iff the generators are `dim R` homogeneous elements generating an
/// ideal of finite colength.
pub fn is_hsop(gens: &[Polynomial], ring: &std::sync::Arc<RingPresentation>) -> Result<bool> {
    check_homogeneous_gens(gens, ring)?;
    if gens.len() != krull_dimension(ring)? {
        return Ok(false);
    }
    let ideal = Ideal::new(ring, gens.to_vec())?;
    Ok(quotient_length(&ideal)?.is_some())
}

/// `e(J)` via the degree formula, with its inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityReport {
    /// Sorted generator degrees `b_1 ≤ ... ≤ b_d`.
    pub ideal_degrees: Vec<u64>,
    pub ring_constant: BigRational,
    pub multiplicity: BigRational,
}

pub fn multiplicity_hsop(j: &Ideal) -> Result<MultiplicityReport> {
    let ring = j.ring();
    if !is_hsop(j.gens(), ring)? {
        return Err(Error::NotHsop(j.format_gens().join(", ")));
    }
    let mut degrees = check_homogeneous_gens(j.gens(), ring)?;
    degrees.sort_unstable();
    let ring_constant = multiplicity_constant(ring)?;
    let prod: BigInt = degrees.iter().map(|&d| BigInt::from(d)).product();
    let multiplicity = &ring_constant * BigRational::from_integer(prod);
    Ok(MultiplicityReport { ideal_degrees: degrees, ring_constant, multiplicity })
}

/// Result of the finite-difference Hilbert–Samuel computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamuelReport {
    /// `Δ^d ℓ(n_max)` where `ℓ(n) = length(R/J^n)`.
    pub multiplicity: BigRational,
    /// Whether `Δ^d ℓ(n_max) = Δ^d ℓ(n_max − 1)`.
    pub stabilized: bool,
    /// `(n, ℓ(n))` for the `n` used.
    pub lengths: Vec<(u64, u64)>,
}

fn binomial(n: u64, k: u64) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// `e(J)` as the `d`-th backward difference of `n ↦ length(R/J^n)` at
/// `n_max`. Works for any ideal of finite colength, not only hsops.
pub fn hilbert_samuel_oracle(j: &Ideal, n_max: u64) -> Result<SamuelReport> {
    let ring = j.ring();
    let d = krull_dimension(ring)? as u64;
    if n_max < d + 2 {
        return Err(Error::InvalidArgument(format!("n_max must be at least d + 2 = {}", d + 2)));
    }
    let lo = n_max - d - 1;
    let mut lengths = Vec::with_capacity((d + 2) as usize);
    for n in lo..=n_max {
        let len = if n == 0 {
            0
        } else {
            quotient_length(&j.power(n)?)?
                .ok_or_else(|| Error::InfiniteLength(j.format_gens().join(", ")))?
        };
        lengths.push((n, len));
    }
    let diff_at = |top: usize| -> i128 {
        (0..=d)
            .map(|i| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                sign * binomial(d, i) * lengths[top - i as usize].1 as i128
            })
            .sum()
    };
    let last = lengths.len() - 1;
    let now = diff_at(last);
    let before = diff_at(last - 1);
    Ok(SamuelReport {
        multiplicity: BigRational::from_integer(BigInt::from(now)),
        stabilized: now == before,
        lengths,
    })
}

/// `e(I)` for an ideal of finite colength: the degree formula for hsops,
/// otherwise the Hilbert–Samuel differences with growing `n_max` until two
/// consecutive windows agree.
pub fn multiplicity(ideal: &Ideal) -> Result<BigRational> {
    let ring = ideal.ring();
    let homogeneous = ideal.gens().iter().all(|g| ring.ring().is_homogeneous(g));
    if homogeneous && !ideal.gens().is_empty() && is_hsop(ideal.gens(), ring)? {
        return Ok(multiplicity_hsop(ideal)?.multiplicity);
    }
    if quotient_length(ideal)?.is_none() {
        return Err(Error::InfiniteLength(ideal.format_gens().join(", ")));
    }
    let d = krull_dimension(ring)? as u64;
    let mut n = d + 2;
    let mut prev: Option<BigRational> = None;
    while n <= d + 16 {
        let rep = hilbert_samuel_oracle(ideal, n)?;
        if rep.stabilized && prev.as_ref() == Some(&rep.multiplicity) {
            return Ok(rep.multiplicity);
        }
        prev = rep.stabilized.then_some(rep.multiplicity);
        n += 1;
    }
    Err(Error::ResourceLimit(format!(
        "Hilbert–Samuel differences did not stabilize by n = {}",
        d + 16
    )))
}

/// Convenience: `e(J) / (∏ deg)` is the same for every hsop.
pub fn degree_product(degrees: &[u64]) -> BigRational {
    BigRational::from_integer(degrees.iter().map(|&d| BigInt::from(d)).product())
}

impl MultiplicityReport {
    pub fn is_positive(&self) -> bool {
        self.multiplicity > BigRational::zero()
    }
}
