//! Machine-readable run reports (JSON) and their one-row-per-task CSV
//! summary.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::bounds::Verdict;
use crate::error::{Error, Result};
use crate::frobenius::NuRow;
use crate::ratio::Exact;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    #[default]
    Ok,
    /// A mathematical check failed.
    Violation,
    Error,
    ResourceLimit,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportRow {
    pub case_id: String,
    pub op: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<String>>,
    #[serde(rename = "J", default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_a: Option<Exact>,
    #[serde(rename = "e_J", default, skip_serializing_if = "Option::is_none")]
    pub e_j: Option<Exact>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proportional: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_rows: Option<Vec<NuRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ReportRow {
    pub fn new(case_id: &str, op: &str) -> Self {
        ReportRow { case_id: case_id.to_string(), op: op.to_string(), ..Default::default() }
    }

    pub fn fail(mut self, err: &Error) -> Self {
        self.status = if err.is_resource_limit() { Status::ResourceLimit } else { Status::Error };
        self.error = Some(format!("case {}, op {}: {err}", self.case_id, self.op));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    /// Seconds since the Unix epoch; omitted for reproducible output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    pub seed: u64,
    pub rows: Vec<ReportRow>,
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    case_id: &'a str,
    op: &'a str,
    status: &'a str,
    d: String,
    e_a: String,
    #[serde(rename = "e_J")]
    e_j: String,
    #[serde(rename = "N")]
    n: String,
    verdict: String,
    proportional: String,
    error: &'a str,
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

impl Report {
    pub fn new(seed: u64, rows: Vec<ReportRow>, timestamp: bool) -> Self {
        let generated_at = timestamp.then(|| {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        });
        Report { generated_at, seed, rows }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Format(e.to_string()))
    }

    /// Parses and checks a report against the schema.
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::Format(e.to_string()))
    }

    /// CSV columns: `case_id,op,status,d,e_a,e_J,N,verdict,proportional,error`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.rows {
            let status = serde_json::to_value(r.status).expect("status serializes");
            w.serialize(SummaryRow {
                case_id: &r.case_id,
                op: &r.op,
                status: status.as_str().unwrap_or_default(),
                d: opt(&r.d),
                e_a: opt(&r.e_a),
                e_j: opt(&r.e_j),
                n: opt(&r.n),
                verdict: opt(&r.verdict),
                proportional: opt(&r.proportional),
                error: r.error.as_deref().unwrap_or_default(),
            })
            .map_err(|e| Error::Format(e.to_string()))?;
        }
        w.flush().map_err(|e| Error::Format(e.to_string()))
    }

    pub fn count(&self, status: Status) -> usize {
        self.rows.iter().filter(|r| r.status == status).count()
    }

    /// 0 when every row is ok; otherwise 2 for a violation, then 1 for an
    /// error, then 3 for a resource limit.
    pub fn exit_code(&self) -> i32 {
        if self.count(Status::Violation) > 0 {
            2
        } else if self.count(Status::Error) > 0 {
            1
        } else if self.count(Status::ResourceLimit) > 0 {
            3
        } else {
            0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn sample() -> Report {
        let mut row = ReportRow::new("diagonal", "verify");
        row.d = Some(2);
        row.e_a = Some(Exact(BigRational::from_integer(BigInt::from(1))));
        row.e_j = Some(Exact(BigRational::new(BigInt::from(12), BigInt::from(2))));
        row.n = Some(3);
        row.verdict = Some(Verdict::HoldsStrict);
        row.proportional = Some(false);
        row.nu_rows = Some(vec![NuRow::new(1, 2, 8)]);
        let bad = ReportRow::new("broken", "load").fail(&Error::Format("expected value".into()));
        Report::new(7, vec![row, bad], false)
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let js = r.to_json().unwrap();
        assert!(!js.contains("generated_at"));
        assert!(js.contains("\"e_J\": [\n"));
        assert_eq!(Report::from_json(&js).unwrap(), r);
        assert!(Report::from_json(&js.replace("\"seed\"", "\"extra\": 1, \"seed\"")).is_err());
    }

    #[test]
    fn csv_summary_and_exit_code() {
        let r = sample();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("case_id,op,status,d,e_a,e_J,N,verdict,proportional,error"));
        assert_eq!(lines.next(), Some("diagonal,verify,ok,2,1/1,6/1,3,holds-strict,false,"));
        assert!(lines.next().unwrap().starts_with("broken,load,error,"));
        assert_eq!(r.exit_code(), 1);
    }
}
