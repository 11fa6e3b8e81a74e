//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or format error, 2 a mathematical
//! violation, 3 a resource limit.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bounds;
use crate::case::{Case, IdealArgs, PairArgs, TableArgs, Task, CASE_EXTENSION, CORPUS_DIR};
use crate::elimination::monomial_map_kernel;
use crate::error::{Error, Result};
use crate::poly::{Variable, DEFAULT_STEP_LIMIT};
use crate::report::{Report, ReportRow};
use crate::runner::{self, RunOptions, DEFAULT_SEED};
use crate::scalar::CoefficientField;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "frobmult", version, about = "Frobenius thresholds and multiplicity bounds in graded rings")]
struct Cli {
    /// Write the JSON report here.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Write the CSV summary here.
    #[arg(long, global = true, value_name = "FILE")]
    csv: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Maximum reduction steps per Gröbner basis.
    #[arg(long = "gb-step-limit", global = true, value_name = "N", default_value_t = DEFAULT_STEP_LIMIT)]
    gb_step_limit: u64,
    /// Seed for randomized checks.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Leave the timestamp out of the JSON report.
    #[arg(long = "no-timestamp", global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CaseArgs {
    /// Case file; bare names are also looked up in the bundled corpus.
    #[arg(long, value_name = "FILE")]
    case: PathBuf,
    /// Work over F_P (or Q for 0) instead of the file's field.
    #[arg(long, value_name = "P")]
    p: Option<u64>,
}

#[derive(Args, Debug)]
struct PairFlags {
    #[arg(long = "ideal-a", value_name = "NAME", default_value = "a")]
    ideal_a: String,
    #[arg(long = "ideal-j", value_name = "NAME", default_value = "J")]
    ideal_j: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a case file and describe its ring and ideals.
    Check(CaseArgs),
    /// Multiplicities of the two named ideals.
    Mult {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        pair: PairFlags,
    },
    /// Table of ν(q) for q = p, ..., p^emax.
    Nu {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        pair: PairFlags,
        #[arg(long, default_value_t = 3)]
        emax: u32,
    },
    /// ν table with the threshold bracket.
    Threshold {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        pair: PairFlags,
        #[arg(long, default_value_t = 3)]
        emax: u32,
    },
    /// Least N with a^(N+1) in J.
    #[command(name = "leastN")]
    LeastN {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        pair: PairFlags,
    },
    /// The multiplicity inequality, and its per-q form when --emax is given.
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        pair: PairFlags,
        #[arg(long)]
        emax: Option<u32>,
    },
    /// Run every task of every case file in a directory.
    Batch {
        dir: PathBuf,
        #[arg(long, value_name = "P")]
        p: Option<u64>,
    },
    /// Relations of the subalgebra generated by monomials.
    Kernel {
        /// Comma-separated target variables.
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// Comma-separated degrees of the target variables (default all 1).
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u64>,
        /// Comma-separated monomials.
        #[arg(long, value_delimiter = ',', required = true)]
        images: Vec<String>,
        /// Comma-separated names for the new variables.
        #[arg(long, value_delimiter = ',')]
        names: Vec<String>,
        #[arg(long, default_value_t = 0)]
        p: u64,
    },
    /// Cubic Veronese: test-ideal jump against the ν bracket.
    DemoVeronese {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        emax: u32,
    },
}

fn resolve_case(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    let bundled = Path::new(CORPUS_DIR).join(path);
    let named = bundled.with_extension(CASE_EXTENSION);
    if bundled.exists() {
        bundled
    } else if path.extension().is_none() && named.exists() {
        named
    } else {
        path.to_path_buf()
    }
}

struct Context<'a> {
    cli: &'a Cli,
    out: &'a mut Vec<u8>,
    err: &'a mut Vec<u8>,
}

impl Context<'_> {
    fn options(&self, p: Option<u64>) -> RunOptions {
        RunOptions { characteristic: p, step_limit: self.cli.gb_step_limit, seed: self.cli.seed }
    }

    fn emit(&mut self, report: &Report) -> Result<i32> {
        if let Some(path) = &self.cli.out {
            std::fs::write(path, report.to_json()? + "\n")
                .map_err(|e| Error::Format(format!("cannot write {}: {e}", path.display())))?;
        }
        if let Some(path) = &self.cli.csv {
            let file = std::fs::File::create(path)
                .map_err(|e| Error::Format(format!("cannot write {}: {e}", path.display())))?;
            report.write_csv(file)?;
        }
        print_table(self.out, &report.rows);
        for row in &report.rows {
            if let Some(e) = &row.error {
                let _ = writeln!(self.err, "{e}");
            }
        }
        Ok(report.exit_code())
    }

    fn run_tasks(&mut self, args: &CaseArgs, tasks: Vec<Task>) -> Result<i32> {
        let path = resolve_case(&args.case);
        let opts = self.options(args.p);
        let rows = match Case::load(&path) {
            Ok(mut case) => {
                case.file.tasks = tasks;
                runner::run_case(&case, &opts)
            }
            Err(e) => vec![ReportRow::new(&crate::case::case_id(&path), "load").fail(&e)],
        };
        let report = Report::new(self.cli.seed, rows, !self.cli.no_timestamp);
        self.emit(&report)
    }
}

fn print_table(out: &mut dyn Write, rows: &[ReportRow]) {
    let header = ["case", "op", "status", "d", "e_a", "e_J", "N", "verdict", "proportional"];
    let mut lines: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
    for r in rows {
        let status = serde_json::to_value(r.status).expect("status serializes");
        lines.push(vec![
            r.case_id.clone(),
            r.op.clone(),
            status.as_str().unwrap_or_default().to_string(),
            r.d.map(|d| d.to_string()).unwrap_or_default(),
            r.e_a.as_ref().map(|e| e.to_string()).unwrap_or_default(),
            r.e_j.as_ref().map(|e| e.to_string()).unwrap_or_default(),
            r.n.map(|n| n.to_string()).unwrap_or_default(),
            r.verdict.map(|v| v.to_string()).unwrap_or_default(),
            r.proportional.map(|p| p.to_string()).unwrap_or_default(),
        ]);
    }
    let widths: Vec<usize> =
        (0..header.len()).map(|c| lines.iter().map(|l| l[c].len()).max().unwrap_or(0)).collect();
    for l in &lines {
        let cells: Vec<String> = l.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
}

fn print_nu_rows(out: &mut dyn Write, rows: &[ReportRow]) {
    for r in rows {
        if let Some(nu_rows) = &r.nu_rows {
            let _ = writeln!(out, "e,q,nu,ratio");
            for n in nu_rows {
                let _ = writeln!(out, "{},{},{},{}/{}", n.e, n.q, n.nu, n.ratio.numer(), n.ratio.denom());
            }
        }
    }
}

fn dispatch(ctx: &mut Context<'_>) -> Result<i32> {
    let cli = ctx.cli;
    match &cli.command {
        Command::Check(args) => {
            let path = resolve_case(&args.case);
            let case = Case::load(&path)?;
            let inst = case.instantiate(args.p, cli.gb_step_limit)?;
            let summary = runner::describe_instance(&inst)?;
            let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
            let _ = writeln!(ctx.out, "{text}");
            let _ = writeln!(ctx.out, "{}: {} task(s), schema ok", case.id, case.file.tasks.len());
            Ok(EXIT_OK)
        }
        Command::Mult { case, pair } => ctx.run_tasks(
            case,
            vec![
                Task::Mult(IdealArgs { ideal: pair.ideal_a.clone() }),
                Task::Mult(IdealArgs { ideal: pair.ideal_j.clone() }),
            ],
        ),
        Command::Nu { case, pair, emax } | Command::Threshold { case, pair, emax } => {
            let args = TableArgs { a: pair.ideal_a.clone(), j: pair.ideal_j.clone(), emax: *emax };
            let task = match &cli.command {
                Command::Nu { .. } => Task::Nu(args),
                _ => Task::Threshold(args),
            };
            let path = resolve_case(&case.case);
            let opts = ctx.options(case.p);
            let rows = match Case::load(&path) {
                Ok(mut c) => {
                    c.file.tasks = vec![task];
                    runner::run_case(&c, &opts)
                }
                Err(e) => vec![ReportRow::new(&crate::case::case_id(&path), "load").fail(&e)],
            };
            print_nu_rows(ctx.out, &rows);
            if let Some(detail) = rows.first().and_then(|r| r.detail.as_ref()) {
                let _ = writeln!(ctx.out, "{detail}");
            }
            let report = Report::new(cli.seed, rows, !cli.no_timestamp);
            ctx.emit(&report)
        }
        Command::LeastN { case, pair } => {
            ctx.run_tasks(case, vec![Task::LeastN(PairArgs { a: pair.ideal_a.clone(), j: pair.ideal_j.clone() })])
        }
        Command::Verify { case, pair, emax } => {
            let mut tasks = vec![Task::Verify(PairArgs { a: pair.ideal_a.clone(), j: pair.ideal_j.clone() })];
            if let Some(emax) = emax {
                tasks.push(Task::NuBound(TableArgs { a: pair.ideal_a.clone(), j: pair.ideal_j.clone(), emax: *emax }));
            }
            ctx.run_tasks(case, tasks)
        }
        Command::Batch { dir, p } => {
            let report = runner::run_batch(dir, &ctx.options(*p), !cli.no_timestamp)?;
            let code = ctx.emit(&report)?;
            let _ = writeln!(
                ctx.out,
                "{} row(s): {} violation(s), {} error(s), {} resource limit(s)",
                report.rows.len(),
                report.count(crate::report::Status::Violation),
                report.count(crate::report::Status::Error),
                report.count(crate::report::Status::ResourceLimit)
            );
            Ok(code)
        }
        Command::Kernel { vars, weights, images, names, p } => {
            if !weights.is_empty() && weights.len() != vars.len() {
                return Err(Error::ArityMismatch { expected: vars.len(), found: weights.len() });
            }
            let target: Vec<Variable> = vars
                .iter()
                .enumerate()
                .map(|(i, v)| Variable::new(v.trim(), weights.get(i).copied().unwrap_or(1)))
                .collect();
            let images: Vec<&str> = images.iter().map(|s| s.trim()).collect();
            let names: Vec<&str> = names.iter().map(|s| s.trim()).collect();
            let toric = monomial_map_kernel(
                CoefficientField::from_characteristic(*p)?,
                &target,
                &images,
                (!names.is_empty()).then_some(names.as_slice()),
            )?;
            let ring = toric.ring.ring();
            let vars: Vec<String> = ring.vars().iter().map(|v| format!("{}:{}", v.name, v.degree)).collect();
            let _ = writeln!(ctx.out, "variables: {}", vars.join(", "));
            for g in toric.kernel.gens() {
                let _ = writeln!(ctx.out, "{}", ring.format(g));
            }
            Ok(EXIT_OK)
        }
        Command::DemoVeronese { p, emax } => {
            let rep = bounds::veronese_fjn_demo(*p, *emax)?;
            let est = &rep.threshold_estimate;
            for row in &est.table.rows {
                let _ = writeln!(ctx.out, "q = {:>3}  nu = {:>4}  nu/q = {}", row.q, row.nu, row.ratio);
            }
            let _ = writeln!(ctx.out, "fjn = {}, pt estimate = {}", rep.t_star, est.extrapolated);
            Ok(if rep.monotone { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    if err.is_resource_limit() {
        EXIT_RESOURCE
    } else {
        EXIT_USAGE
    }
}

/// Runs the command line `args` (including the program name), writing
/// normal output to `out` and diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "cannot start worker threads: {e}");
            return EXIT_USAGE;
        }
    };
    let (mut out_buf, mut err_buf) = (Vec::new(), Vec::new());
    let code = pool.install(|| {
        let mut ctx = Context { cli: &cli, out: &mut out_buf, err: &mut err_buf };
        match dispatch(&mut ctx) {
            Ok(code) => code,
            Err(e) => {
                let _ = writeln!(ctx.err, "error: {e}");
                exit_code_for(&e)
            }
        }
    });
    let _ = out.write_all(&out_buf);
    let _ = err.write_all(&err_buf);
    code
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
