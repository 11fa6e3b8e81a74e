//! JSON case files: a presentation, named ideals and a list of tasks.
//!
//! ```json
//! {
//!   "field": {"char": 2},
//!   "vars": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}],
//!   "relations": [],
//!   "ideals": {"a": ["x", "y"], "J": ["x^2", "y^3"]},
//!   "tasks": [{"op": "verify", "args": {"a": "a", "J": "J"}}]
//! }
//! ```
//!
//! Unknown keys are rejected everywhere.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Variable;
use crate::template::{Instance, RingTemplate};

/// File extension of case files.
pub const CASE_EXTENSION: &str = "case";

/// The corpus shipped with the crate.
pub const CORPUS_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    #[serde(rename = "char")]
    pub characteristic: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarSpec {
    pub name: String,
    pub degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairArgs {
    pub a: String,
    #[serde(rename = "J")]
    pub j: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableArgs {
    pub a: String,
    #[serde(rename = "J")]
    pub j: String,
    pub emax: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealArgs {
    pub ideal: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeArgs {
    pub a: String,
    #[serde(rename = "J")]
    pub j: String,
    pub primes: Vec<u64>,
    #[serde(default)]
    pub emax: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosureArgs {
    pub element: String,
    pub ideal: String,
    pub emax: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalingArgs {
    pub a: String,
    #[serde(rename = "J")]
    pub j: String,
    pub r: u64,
    pub e: u32,
    pub e_prime: u32,
    #[serde(rename = "larger_J", default, skip_serializing_if = "Option::is_none")]
    pub larger_j: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smaller_a: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomArgs {
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", content = "args", deny_unknown_fields)]
pub enum Task {
    #[serde(rename = "verify")]
    Verify(PairArgs),
    #[serde(rename = "mult")]
    Mult(IdealArgs),
    #[serde(rename = "nu")]
    Nu(TableArgs),
    #[serde(rename = "threshold")]
    Threshold(TableArgs),
    #[serde(rename = "leastN")]
    LeastN(PairArgs),
    #[serde(rename = "nu-bound")]
    NuBound(TableArgs),
    #[serde(rename = "integral")]
    Integral(TableArgs),
    #[serde(rename = "multi-prime")]
    MultiPrime(PrimeArgs),
    #[serde(rename = "one-dim")]
    OneDim(TableArgs),
    #[serde(rename = "closure")]
    Closure(ClosureArgs),
    #[serde(rename = "scaling")]
    Scaling(ScalingArgs),
    #[serde(rename = "random-scaling")]
    RandomScaling(RandomArgs),
}

impl Task {
    pub fn op(&self) -> &'static str {
        match self {
            Task::Verify(_) => "verify",
            Task::Mult(_) => "mult",
            Task::Nu(_) => "nu",
            Task::Threshold(_) => "threshold",
            Task::LeastN(_) => "leastN",
            Task::NuBound(_) => "nu-bound",
            Task::Integral(_) => "integral",
            Task::MultiPrime(_) => "multi-prime",
            Task::OneDim(_) => "one-dim",
            Task::Closure(_) => "closure",
            Task::Scaling(_) => "scaling",
            Task::RandomScaling(_) => "random-scaling",
        }
    }

    /// Names of the ideals the task refers to.
    pub fn ideal_names(&self) -> Vec<&str> {
        match self {
            Task::Verify(p) | Task::LeastN(p) => vec![&p.a, &p.j],
            Task::Nu(t) | Task::Threshold(t) | Task::NuBound(t) | Task::Integral(t) | Task::OneDim(t) => {
                vec![&t.a, &t.j]
            }
            Task::Mult(i) => vec![&i.ideal],
            Task::MultiPrime(p) => vec![&p.a, &p.j],
            Task::Closure(c) => vec![&c.ideal],
            Task::Scaling(s) => {
                let mut v = vec![s.a.as_str(), s.j.as_str()];
                v.extend(s.larger_j.as_deref());
                v.extend(s.smaller_a.as_deref());
                v
            }
            Task::RandomScaling(_) => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    pub field: FieldSpec,
    pub vars: Vec<VarSpec>,
    #[serde(default)]
    pub relations: Vec<String>,
    pub ideals: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub tasks: Vec<Task>,
}

impl CaseFile {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn template(&self) -> RingTemplate {
        RingTemplate {
            vars: self.vars.iter().map(|v| Variable::new(v.name.clone(), v.degree)).collect(),
            relations: self.relations.clone(),
            ideals: self.ideals.clone(),
        }
    }
}

/// A case file with its id (the file stem).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub id: String,
    pub file: CaseFile,
}

impl Case {
    pub fn from_json(id: impl Into<String>, src: &str) -> Result<Self> {
        Ok(Case { id: id.into(), file: CaseFile::from_json(src)? })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(case_id(path), &src)
    }

    pub fn characteristic(&self) -> u64 {
        self.file.field.characteristic
    }

    /// Instantiates the presentation (over `characteristic` if given) and
    /// checks that every task refers to a defined ideal.
    pub fn instantiate(&self, characteristic: Option<u64>, step_limit: u64) -> Result<Instance> {
        let ch = characteristic.unwrap_or(self.characteristic());
        let inst = self.file.template().instantiate_with_limit(ch, step_limit)?;
        for task in &self.file.tasks {
            for name in task.ideal_names() {
                inst.ideal(name)?;
            }
        }
        Ok(inst)
    }
}

pub fn case_id(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

/// Case files of a directory, sorted by file name.
pub fn discover(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| Error::Format(format!("cannot read directory {}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == CASE_EXTENSION))
        .collect();
    paths.sort();
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIAGONAL: &str = r#"{
        "field": {"char": 2},
        "vars": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}],
        "relations": [],
        "ideals": {"a": ["x", "y"], "J": ["x^2", "y^3"]},
        "tasks": [
            {"op": "verify", "args": {"a": "a", "J": "J"}},
            {"op": "nu", "args": {"a": "a", "J": "J", "emax": 3}},
            {"op": "leastN", "args": {"a": "a", "J": "J"}}
        ]
    }"#;

    #[test]
    fn parses_and_instantiates() {
        let case = Case::from_json("diagonal", DIAGONAL).unwrap();
        assert_eq!(case.file.tasks.len(), 3);
        assert_eq!(case.file.tasks[2].op(), "leastN");
        let inst = case.instantiate(None, 1000).unwrap();
        assert_eq!(inst.ring.characteristic(), 2);
        assert_eq!(case.instantiate(Some(0), 1000).unwrap().ring.characteristic(), 0);
        let back = serde_json::to_string(&case.file).unwrap();
        assert_eq!(CaseFile::from_json(&back).unwrap(), case.file);
    }

    #[test]
    fn rejects_unknown_keys() {
        let extra = DIAGONAL.replace("\"relations\"", "\"colour\": 1, \"relations\"");
        assert!(matches!(CaseFile::from_json(&extra), Err(Error::Format(_))));
        let bad_arg = DIAGONAL.replace("\"emax\": 3", "\"emax\": 3, \"p\": 5");
        assert!(matches!(CaseFile::from_json(&bad_arg), Err(Error::Format(_))));
        let bad_op = DIAGONAL.replace("\"leastN\"", "\"least\"");
        assert!(matches!(CaseFile::from_json(&bad_op), Err(Error::Format(_))));
    }

    #[test]
    fn undefined_ideal_is_reported() {
        let case = Case::from_json("x", &DIAGONAL.replace("\"J\": \"J\", \"emax\"", "\"J\": \"K\", \"emax\"")).unwrap();
        assert!(matches!(case.instantiate(None, 1000), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn bad_polynomial_is_reported() {
        let case = Case::from_json("x", &DIAGONAL.replace("y^3", "z^3")).unwrap();
        assert!(matches!(case.instantiate(None, 1000), Err(Error::UnknownVariable { .. })));
    }
}
