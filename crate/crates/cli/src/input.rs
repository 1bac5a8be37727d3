//! Resolving spaces, maps and modules named on the command line.

use std::path::Path;
use std::sync::Arc;

use omegaq::corpus;
use omegaq::groups::CosetTable;
use omegaq::simplicial::{MapJson, SimplicialSetJson};
use omegaq::twisted::PiModuleJson;
use omegaq::{Error, PiModule, ReducedSimplicialSet, SimplicialMap};
use serde_json::Value;

/// Exit status 1 for rejections from the library, 2 for input that could not
/// be read or parsed.
#[derive(Debug)]
pub enum Failure {
    Rejected(Error),
    Malformed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Malformed(m),
            other => Failure::Rejected(other),
        }
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Rejected(_) => 1,
            Failure::Malformed(_) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, message) = match self {
            Failure::Rejected(e) => (e.kind().to_string(), e.to_string()),
            Failure::Malformed(m) => ("malformed_input".to_string(), m.clone()),
        };
        serde_json::json!({ "error": { "kind": kind, "message": message }, "exit_status": self.exit_code() })
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{path}: {e}")))
}

fn looks_like_file(s: &str) -> bool {
    s.ends_with(".json") || Path::new(s).is_file()
}

/// A corpus name, or a path to a simplicial-set JSON file.
pub fn load_space(arg: &str) -> CliResult<ReducedSimplicialSet> {
    if corpus::names().contains(&arg) || !looks_like_file(arg) {
        return Ok(corpus::space(arg)?);
    }
    let j: SimplicialSetJson = read_json(arg)?;
    Ok(ReducedSimplicialSet::new(j.to_data()?)?)
}

/// `collapse:NAME`, `identity:NAME` or a path to a map JSON file.
pub fn load_map(arg: &str) -> CliResult<SimplicialMap> {
    if let Some(name) = arg.strip_prefix("collapse:") {
        let x = load_space(name)?;
        return Ok(SimplicialMap::collapse(Arc::new(x.into_data()), &omegaq::simplicial::point()));
    }
    if let Some(name) = arg.strip_prefix("identity:") {
        return Ok(SimplicialMap::identity(Arc::new(load_space(name)?.into_data())));
    }
    if !looks_like_file(arg) {
        return Err(Failure::Malformed(format!("map `{arg}` is neither collapse:NAME, identity:NAME nor a file")));
    }
    let j: MapJson = read_json(arg)?;
    Ok(SimplicialMap::from_json(&j)?)
}

/// A module JSON file over the given generators.
pub fn load_module(path: &str, generators: &[String]) -> CliResult<PiModule> {
    let j: PiModuleJson = read_json(path)?;
    Ok(PiModule::from_json(&j, generators)?)
}

/// The coset table, or a rejection naming the budget.
pub fn require_table(t: Option<CosetTable>, budget: usize) -> CliResult<CosetTable> {
    t.ok_or_else(|| {
        Failure::Rejected(Error::InfiniteGroup(format!("coset enumeration did not close within {budget} cosets")))
    })
}
