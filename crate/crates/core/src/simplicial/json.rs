use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{SRef, SimplicialSetData};
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: &str = "ssetv1";

/// `s_{degens[0]} … target` with a strictly decreasing word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerateRef {
    #[serde(default)]
    pub degens: Vec<usize>,
    pub target: String,
}

impl DegenerateRef {
    pub(crate) fn resolve(&self, data: &SimplicialSetData) -> Result<SRef> {
        if !self.degens.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::InvalidSimplicialSet(format!(
                "degeneracy word {:?} on `{}` is not strictly decreasing",
                self.degens, self.target
            )));
        }
        Ok(SRef { degens: self.degens.clone(), target: data.key(&self.target)? })
    }
}

/// Wire form of a simplicial set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialSetJson {
    pub schema: String,
    pub dims: BTreeMap<String, Vec<String>>,
    pub faces: BTreeMap<String, Vec<DegenerateRef>>,
}

fn check_schema(s: &str) -> Result<()> {
    if s != SCHEMA_VERSION {
        return Err(Error::Parse(format!("expected schema `{SCHEMA_VERSION}`, found `{s}`")));
    }
    Ok(())
}

impl SimplicialSetJson {
    pub fn from_data(data: &SimplicialSetData) -> Self {
        let mut dims = BTreeMap::new();
        let mut faces = BTreeMap::new();
        for dim in 0..=data.top_dim() {
            dims.insert(dim.to_string(), data.names(dim).to_vec());
            for key in data.keys(dim) {
                if dim > 0 {
                    let fs = data.stored_faces(key).iter().map(|f| data.to_ref_json(f)).collect();
                    faces.insert(data.name(key).to_string(), fs);
                }
            }
        }
        Self { schema: SCHEMA_VERSION.into(), dims, faces }
    }

    /// Rebuilds the set, adding simplices dimension by dimension in listed
    /// order. Structural problems surface later through `validate`.
    pub fn to_data(&self) -> Result<SimplicialSetData> {
        check_schema(&self.schema)?;
        let mut by_dim: BTreeMap<usize, &Vec<String>> = BTreeMap::new();
        for (k, ids) in &self.dims {
            let dim: usize = k.parse().map_err(|_| Error::Parse(format!("bad dimension key `{k}`")))?;
            by_dim.insert(dim, ids);
        }
        let mut data = SimplicialSetData::new();
        let mut seen = 0;
        for (&dim, ids) in &by_dim {
            for id in ids.iter() {
                let refs = match self.faces.get(id) {
                    Some(fs) => fs.iter().map(|f| f.resolve(&data)).collect::<Result<Vec<_>>>()?,
                    None if dim == 0 => Vec::new(),
                    None => return Err(Error::InvalidSimplicialSet(format!("no faces given for `{id}`"))),
                };
                data.add_simplex(id.clone(), dim, refs)?;
                seen += 1;
            }
        }
        if let Some(extra) = self.faces.keys().find(|id| data.key(id).is_err()) {
            return Err(Error::UnknownSimplex(extra.clone()));
        }
        debug_assert_eq!(seen, (0..=data.top_dim()).map(|d| data.count(d)).sum::<usize>());
        Ok(data)
    }
}

/// Wire form of a simplicial map with both endpoints inlined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub schema: String,
    pub source: SimplicialSetJson,
    pub target: SimplicialSetJson,
    pub assign: BTreeMap<String, DegenerateRef>,
}

impl MapJson {
    pub fn check_schema(&self) -> Result<()> {
        check_schema(&self.schema)
    }
}
