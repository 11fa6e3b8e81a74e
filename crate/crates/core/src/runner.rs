//! Executes case-file tasks and collects report rows.

use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bounds::{self, PrimeOutcome, Verdict};
use crate::case::{self, Case, Task};
use crate::error::{Error, Result};
use crate::frobenius::{self, Comparisons, NuTable};
use crate::groebner::Ideal;
use crate::hilbert::{self, krull_dimension};
use crate::poly::DEFAULT_STEP_LIMIT;
use crate::ratio::Exact;
use crate::report::{Report, ReportRow, Status};
use crate::template::Instance;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Overrides the characteristic of the case file.
    pub characteristic: Option<u64>,
    pub step_limit: u64,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { characteristic: None, step_limit: DEFAULT_STEP_LIMIT, seed: DEFAULT_SEED }
    }
}

fn exact(r: &num_rational::BigRational) -> Value {
    serde_json::to_value(Exact(r.clone())).expect("rationals in range")
}

fn with_pair(mut row: ReportRow, inst: &Instance, a: &Ideal, j: &Ideal) -> ReportRow {
    row.ring = Some(inst.ring.describe());
    row.a = Some(a.format_gens());
    row.j = Some(j.format_gens());
    row
}

fn record_table(row: &mut ReportRow, table: &NuTable) -> Option<Error> {
    row.n = Some(table.least_power);
    row.nu_rows = Some(table.rows.clone());
    table.failures.first().map(|f| match &f.error {
        Error::ResourceLimit(m) => Error::ResourceLimit(format!("row e={}: {m}", f.e)),
        e => Error::InvalidArgument(format!("row e={}: {e}", f.e)),
    })
}

fn run_task_inner(case: &Case, inst: &Instance, task: &Task, opts: &RunOptions) -> Result<ReportRow> {
    let row = ReportRow::new(&case.id, task.op());
    let pair = |a: &str, j: &str| -> Result<(Ideal, Ideal)> { Ok((inst.ideal(a)?.clone(), inst.ideal(j)?.clone())) };
    match task {
        Task::Verify(p) => {
            let (a, j) = pair(&p.a, &p.j)?;
            let rep = bounds::verify_main_inequality(&a, &j)?;
            let mut row = with_pair(row, inst, &a, &j);
            row.d = Some(rep.d);
            row.e_a = Some(Exact(rep.e_a.clone()));
            row.e_j = Some(Exact(rep.e_j.clone()));
            row.n = Some(rep.n);
            row.verdict = Some(rep.verdict);
            row.proportional = Some(rep.proportional);
            row.detail = Some(json!({
                "lhs": exact(&rep.lhs),
                "rhs": exact(&rep.rhs),
                "degrees_a": rep.degrees_a,
                "degrees_J": rep.degrees_j,
                "alarm": rep.alarm(),
            }));
            if !rep.holds() {
                row.status = Status::Violation;
                row.error = Some(format!(
                    "case {}, op verify: {} (proportional = {})",
                    case.id, rep.verdict, rep.proportional
                ));
            }
            Ok(row)
        }
        Task::Mult(m) => {
            let ideal = inst.ideal(&m.ideal)?;
            let rep = hilbert::multiplicity_hsop(ideal)?;
            let d = rep.ideal_degrees.len() as u64;
            let samuel = hilbert::hilbert_samuel_oracle(ideal, d + 4)?;
            let length = hilbert::quotient_length(ideal)?;
            let mut row = row;
            row.ring = Some(inst.ring.describe());
            row.a = Some(ideal.format_gens());
            row.d = Some(d as usize);
            row.e_a = Some(Exact(rep.multiplicity.clone()));
            row.detail = Some(json!({
                "degrees": rep.ideal_degrees,
                "ring_constant": exact(&rep.ring_constant),
                "samuel": exact(&samuel.multiplicity),
                "samuel_stabilized": samuel.stabilized,
                "length": length,
            }));
            if !samuel.stabilized || samuel.multiplicity != rep.multiplicity {
                return Err(Error::Certificate(format!(
                    "degree formula gives {} but finite differences give {} (stabilized = {})",
                    rep.multiplicity, samuel.multiplicity, samuel.stabilized
                )));
            }
            Ok(row)
        }
        Task::Nu(t) | Task::Threshold(t) => {
            let (a, j) = pair(&t.a, &t.j)?;
            let table = frobenius::nu_table(&a, &j, t.emax)?;
            let mut row = with_pair(row, inst, &a, &j);
            let failure = record_table(&mut row, &table);
            if let Task::Threshold(_) = task {
                if !table.rows.is_empty() {
                    let est = frobenius::threshold_bracket(&table)?;
                    row.detail = Some(json!({
                        "lower": exact(&est.lower),
                        "extrapolated": exact(&est.extrapolated),
                        "monotone": est.monotone,
                        "diagnostic": est.diagnostic,
                    }));
                }
            }
            Ok(match failure {
                Some(e) => row.fail(&e),
                None => row,
            })
        }
        Task::LeastN(p) => {
            let (a, j) = pair(&p.a, &p.j)?;
            let n = frobenius::least_power_in(&a, &j)?;
            let mut row = with_pair(row, inst, &a, &j);
            row.n = Some(n);
            Ok(row)
        }
        Task::NuBound(t) => {
            let (a, j) = pair(&t.a, &t.j)?;
            let table = frobenius::nu_table(&a, &j, t.emax)?;
            let mut row = with_pair(row, inst, &a, &j);
            let failure = record_table(&mut row, &table);
            let reports = bounds::verify_nu_bounds(&a, &j, &table)?;
            let verdict = if reports.iter().any(|r| r.verdict == Verdict::Violation) {
                Verdict::Violation
            } else if reports.iter().all(|r| r.verdict == Verdict::HoldsStrict) {
                Verdict::HoldsStrict
            } else {
                Verdict::HoldsWithEquality
            };
            if let Some(first) = reports.first() {
                row.d = Some(first.d);
                row.e_a = Some(Exact(first.e_a.clone()));
                row.e_j = Some(Exact(first.e_j.clone()));
            }
            row.verdict = Some(verdict);
            row.detail = Some(Value::Array(
                reports
                    .iter()
                    .map(|r| json!({"q": r.q, "nu": r.nu, "lhs": exact(&r.lhs), "rhs": exact(&r.rhs), "verdict": r.verdict}))
                    .collect(),
            ));
            if verdict == Verdict::Violation {
                row.status = Status::Violation;
                row.error = Some(format!("case {}, op nu-bound: per-q bound fails", case.id));
                return Ok(row);
            }
            Ok(match failure {
                Some(e) => row.fail(&e),
                None => row,
            })
        }
        Task::Integral(t) => {
            let (a, j) = pair(&t.a, &t.j)?;
            let rep = bounds::check_integral_condition(&a, &j, t.emax)?;
            let mut row = with_pair(row, inst, &a, &j);
            row.d = Some(rep.d);
            row.e_a = Some(Exact(rep.e_a.clone()));
            row.e_j = Some(Exact(rep.e_j.clone()));
            row.detail = Some(json!({
                "bracket": exact(&rep.bracket),
                "triggered": rep.triggered,
                "consistent": rep.consistent,
            }));
            Ok(row)
        }
        Task::MultiPrime(p) => {
            let rep = bounds::multi_prime_compare(&case.file.template(), &p.primes, &p.a, &p.j, p.emax)?;
            let (a, j) = pair(&p.a, &p.j)?;
            let mut row = with_pair(row, inst, &a, &j);
            row.d = Some(rep.over_q.d);
            row.e_a = Some(Exact(rep.over_q.e_a.clone()));
            row.e_j = Some(Exact(rep.over_q.e_j.clone()));
            row.n = Some(rep.over_q.n);
            let per_prime: Vec<Value> = rep
                .per_prime
                .iter()
                .map(|(prime, o)| match o {
                    PrimeOutcome::Computed { invariants, table } => json!({
                        "p": prime,
                        "outcome": "computed",
                        "invariants": invariants,
                        "nu_rows": table.as_ref().map(|t| t.rows.clone()),
                    }),
                    PrimeOutcome::BadPrime(why) => json!({"p": prime, "outcome": "bad-prime", "reason": why}),
                    PrimeOutcome::Failed(e) => json!({"p": prime, "outcome": "failed", "reason": e.to_string()}),
                })
                .collect();
            row.detail = Some(json!({ "primes": per_prime, "agree": rep.agrees() }));
            if !rep.agrees() {
                return Ok(row.fail(&Error::InvalidArgument("invariants differ between Q and some prime".into())));
            }
            Ok(row)
        }
        Task::OneDim(t) => {
            let (a, j) = pair(&t.a, &t.j)?;
            let rep = bounds::one_dimensional_check(&a, &j, t.emax)?;
            let mut row = with_pair(row, inst, &a, &j);
            row.d = Some(1);
            row.detail = Some(json!({
                "limit": exact(&rep.limit),
                "constant": exact(&rep.constant),
                "scaled_gaps": rep.scaled_gaps.iter().map(|(q, g)| json!([q, exact(g)])).collect::<Vec<_>>(),
                "holds": rep.holds(),
            }));
            if !rep.holds() {
                return Ok(row.fail(&Error::InvalidArgument("a later row exceeds the first-row constant".into())));
            }
            Ok(row)
        }
        Task::Closure(c) => {
            let ideal = inst.ideal(&c.ideal)?;
            let x = inst.ring.ring().parse(&c.element)?;
            let verdict = frobenius::frobenius_closure_member(&x, ideal, c.emax)?;
            let mut row = row;
            row.ring = Some(inst.ring.describe());
            row.j = Some(ideal.format_gens());
            row.detail = Some(json!({ "element": inst.ring.ring().format(&x), "closure": verdict }));
            Ok(row)
        }
        Task::Scaling(s) => {
            let (a, j) = pair(&s.a, &s.j)?;
            let comparisons = Comparisons {
                larger_j: s.larger_j.as_deref().map(|n| inst.ideal(n).cloned()).transpose()?,
                smaller_a: s.smaller_a.as_deref().map(|n| inst.ideal(n).cloned()).transpose()?,
            };
            let mut row = with_pair(row, inst, &a, &j);
            match frobenius::check_scaling_identities(&a, &j, s.r, s.e, s.e_prime, &comparisons) {
                Ok(rep) => {
                    row.detail = Some(serde_json::to_value(rep).expect("report serializes"));
                    Ok(row)
                }
                Err(e @ Error::IdentityViolation { .. }) => {
                    row.status = Status::Violation;
                    row.error = Some(format!("case {}, op scaling: {e}", case.id));
                    Ok(row)
                }
                Err(e) => Err(e),
            }
        }
        Task::RandomScaling(r) => {
            let instances = frobenius::random_scaling_instances(opts.seed, r.count)?;
            let mut failures = Vec::new();
            let mut violated = false;
            for (i, instance) in instances.iter().enumerate() {
                if let Err(e) = instance.run() {
                    violated |= matches!(e, Error::IdentityViolation { .. });
                    failures.push(json!({"index": i, "instance": instance.describe(), "error": e.to_string()}));
                }
            }
            let mut row = row;
            let failed = failures.len();
            row.detail = Some(json!({
                "seed": opts.seed,
                "count": r.count,
                "passed": r.count - failed,
                "failures": failures,
            }));
            if violated {
                row.status = Status::Violation;
                row.error = Some(format!("case {}, op random-scaling: {failed} instance(s) failed", case.id));
            } else if failed > 0 {
                return Ok(row.fail(&Error::InvalidArgument(format!("{failed} instance(s) failed"))));
            }
            Ok(row)
        }
    }
}

pub fn run_task(case: &Case, inst: &Instance, task: &Task, opts: &RunOptions) -> ReportRow {
    run_task_inner(case, inst, task, opts).unwrap_or_else(|e| ReportRow::new(&case.id, task.op()).fail(&e))
}

/// Every task of a case; a presentation that does not build yields one
/// failed `load` row.
pub fn run_case(case: &Case, opts: &RunOptions) -> Vec<ReportRow> {
    match case.instantiate(opts.characteristic, opts.step_limit) {
        Ok(inst) => case.file.tasks.iter().map(|t| run_task(case, &inst, t, opts)).collect(),
        Err(e) => vec![ReportRow::new(&case.id, "load").fail(&e)],
    }
}

pub fn run_path(path: &Path, opts: &RunOptions) -> Vec<ReportRow> {
    match Case::load(path) {
        Ok(case) => run_case(&case, opts),
        Err(e) => vec![ReportRow::new(&case::case_id(path), "load").fail(&e)],
    }
}

/// All case files of `dir`, in file-name order; cases run in parallel.
pub fn run_batch(dir: &Path, opts: &RunOptions, timestamp: bool) -> Result<Report> {
    let paths = case::discover(dir)?;
    if paths.is_empty() {
        return Err(Error::Format(format!("no cases found in {}", dir.display())));
    }
    let rows: Vec<Vec<ReportRow>> = paths.par_iter().map(|p| run_path(p, opts)).collect();
    Ok(Report::new(opts.seed, rows.into_iter().flatten().collect(), timestamp))
}

/// Dimension, Hilbert series and hsop status of the named ideals.
pub fn describe_instance(inst: &Instance) -> Result<Value> {
    let series = hilbert::hilbert_series(&inst.ring)?;
    let mut ideals = serde_json::Map::new();
    for (name, ideal) in &inst.ideals {
        let hsop = ideal.gens().iter().all(|g| inst.ring.ring().is_homogeneous(g))
            && hilbert::is_hsop(ideal.gens(), &inst.ring)?;
        ideals.insert(name.clone(), json!({"generators": ideal.format_gens(), "hsop": hsop}));
    }
    Ok(json!({
        "ring": inst.ring.describe(),
        "dimension": krull_dimension(&inst.ring)?,
        "hilbert_series": series,
        "multiplicity_constant": exact(&series.leading_constant()),
        "ideals": ideals,
    }))
}
