//! Running every task of the bundled corpus and summarizing the report.

use std::path::Path;

use frobmult::case::CORPUS_DIR;
use frobmult::report::Status;
use frobmult::runner::{run_batch, RunOptions};

fn main() -> frobmult::Result<()> {
    let report = run_batch(Path::new(CORPUS_DIR), &RunOptions::default(), false)?;
    report.write_csv(std::io::stdout())?;
    eprintln!(
        "{} rows: {} ok, {} violations, {} errors, exit code {}",
        report.rows.len(),
        report.count(Status::Ok),
        report.count(Status::Violation),
        report.count(Status::Error),
        report.exit_code()
    );
    Ok(())
}
