use std::collections::BTreeMap;
use std::sync::Arc;

use super::json::{DegenerateRef, MapJson, SimplicialSetJson, SCHEMA_VERSION};
use super::{normalize_degeneracies, ReducedSimplicialSet, SRef, SimplexKey, SimplicialSetData};
use crate::error::{Error, Result};

/// Simplicial map given on nondegenerate simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: Arc<SimplicialSetData>,
    target: Arc<SimplicialSetData>,
    /// `assign[dim][idx]`
    assign: Vec<Vec<SRef>>,
}

impl SimplicialMap {
    /// Validates dimensions and compatibility with every face map.
    pub fn new(source: Arc<SimplicialSetData>, target: Arc<SimplicialSetData>, assign: Vec<Vec<SRef>>) -> Result<Self> {
        let f = Self { source, target, assign };
        f.validate()?;
        Ok(f)
    }

    pub fn from_names(
        source: Arc<SimplicialSetData>,
        target: Arc<SimplicialSetData>,
        assign: &BTreeMap<String, DegenerateRef>,
    ) -> Result<Self> {
        let mut table: Vec<Vec<Option<SRef>>> =
            (0..=source.top_dim()).map(|d| vec![None; source.count(d)]).collect();
        for (name, img) in assign {
            let k = source.key(name)?;
            table[k.dim][k.idx] = Some(img.resolve(&target)?);
        }
        let assign = table
            .into_iter()
            .enumerate()
            .map(|(dim, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(idx, r)| {
                        r.ok_or_else(|| {
                            Error::InvalidMap(format!("no image for `{}`", source.name(SimplexKey { dim, idx })))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, assign)
    }

    pub fn from_json(j: &MapJson) -> Result<Self> {
        j.check_schema()?;
        let source = Arc::new(j.source.to_data()?);
        let target = Arc::new(j.target.to_data()?);
        Self::from_names(source, target, &j.assign)
    }

    pub fn to_json(&self) -> MapJson {
        let mut assign = BTreeMap::new();
        for (dim, row) in self.assign.iter().enumerate() {
            for (idx, r) in row.iter().enumerate() {
                assign.insert(self.source.name(SimplexKey { dim, idx }).to_string(), self.target.to_ref_json(r));
            }
        }
        MapJson {
            schema: SCHEMA_VERSION.into(),
            source: SimplicialSetJson::from_data(&self.source),
            target: SimplicialSetJson::from_data(&self.target),
            assign,
        }
    }

    pub fn identity(x: Arc<SimplicialSetData>) -> Self {
        let assign = (0..=x.top_dim()).map(|d| x.keys(d).map(SRef::nondegenerate).collect()).collect();
        Self { source: x.clone(), target: x, assign }
    }

    /// The constant map onto the single vertex of `target`.
    pub fn collapse(source: Arc<SimplicialSetData>, target: &ReducedSimplicialSet) -> Self {
        let v = target.vertex();
        let assign = (0..=source.top_dim())
            .map(|d| vec![SimplicialSetData::degenerate_on(v, d); source.count(d)])
            .collect();
        Self { source, target: Arc::new(target.data().clone()), assign }
    }

    pub fn source(&self) -> &SimplicialSetData {
        &self.source
    }

    pub fn target(&self) -> &SimplicialSetData {
        &self.target
    }

    pub fn source_arc(&self) -> Arc<SimplicialSetData> {
        self.source.clone()
    }

    pub fn target_arc(&self) -> Arc<SimplicialSetData> {
        self.target.clone()
    }

    pub fn image(&self, key: SimplexKey) -> &SRef {
        &self.assign[key.dim][key.idx]
    }

    /// `f(s_J y) = s_J f(y)`
    pub fn apply(&self, r: &SRef) -> SRef {
        let img = self.image(r.target);
        let mut word = r.degens.clone();
        word.extend_from_slice(&img.degens);
        SRef { degens: normalize_degeneracies(word), target: img.target }
    }

    pub fn validate(&self) -> Result<()> {
        let shape_ok = self.assign.len() == self.source.top_dim() + 1
            && self.assign.iter().enumerate().all(|(d, row)| row.len() == self.source.count(d));
        if !shape_ok {
            return Err(Error::InvalidMap("assignment does not cover the source".into()));
        }
        for dim in 0..self.assign.len() {
            for key in self.source.keys(dim) {
                let img = self.image(key);
                let name = self.source.name(key);
                if img.dim() != dim {
                    return Err(Error::InvalidMap(format!("`{name}` maps to a simplex of dimension {}", img.dim())));
                }
                if self.target.names(img.target.dim).len() <= img.target.idx {
                    return Err(Error::InvalidMap(format!("image of `{name}` is missing from the target")));
                }
                if dim == 0 {
                    continue;
                }
                let s = SRef::nondegenerate(key);
                for i in 0..=dim {
                    let lhs = self.target.face(img, i);
                    let rhs = self.apply(&self.source.face(&s, i));
                    if lhs != rhs {
                        return Err(Error::InvalidMap(format!(
                            "d{i} of `{name}`: {} vs {}",
                            self.target.describe(&lhs),
                            self.target.describe(&rhs)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `g ∘ self`
    pub fn then(&self, g: &SimplicialMap) -> Result<SimplicialMap> {
        if *self.target != *g.source {
            return Err(Error::InvalidMap("maps are not composable".into()));
        }
        let assign = self.assign.iter().map(|row| row.iter().map(|r| g.apply(r)).collect()).collect();
        Ok(Self { source: self.source.clone(), target: g.target.clone(), assign })
    }
}
