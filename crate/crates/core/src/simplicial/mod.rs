//! Finite simplicial sets stored by their nondegenerate simplices, with
//! faces in Eilenberg–Zilber normal form `s_{j1} … s_{jk} y`,
//! `j1 > … > jk`, `y` nondegenerate.

mod build;
mod cover;
mod json;
mod map;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use build::{build_presentation_complex, delta_quotient, point, wedge_of, StandardModel};
pub use cover::covering_space;
pub use json::{DegenerateRef, MapJson, SimplicialSetJson, SCHEMA_VERSION};
pub use map::SimplicialMap;

/// Position of a nondegenerate simplex: dimension and index within it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexKey {
    pub dim: usize,
    pub idx: usize,
}

/// A possibly degenerate simplex `s_{degens[0]} … s_{degens[k-1]} target`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SRef {
    pub degens: Vec<usize>,
    pub target: SimplexKey,
}

impl SRef {
    pub fn nondegenerate(target: SimplexKey) -> Self {
        Self { degens: Vec::new(), target }
    }

    pub fn dim(&self) -> usize {
        self.target.dim + self.degens.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degens.is_empty()
    }

    /// `Some(key)` when nondegenerate.
    pub fn as_nondegenerate(&self) -> Option<SimplexKey> {
        self.degens.is_empty().then_some(self.target)
    }
}

/// Rewrites a degeneracy word into strictly decreasing normal form using
/// `s_i s_j = s_{j+1} s_i` for `i ≤ j`.
pub fn normalize_degeneracies(mut word: Vec<usize>) -> Vec<usize> {
    let mut changed = true;
    while changed {
        changed = false;
        for k in 0..word.len().saturating_sub(1) {
            if word[k] <= word[k + 1] {
                let (i, j) = (word[k], word[k + 1]);
                word[k] = j + 1;
                word[k + 1] = i;
                changed = true;
            }
        }
    }
    word
}

/// Whether a normal-form degeneracy word can be applied to a simplex of
/// dimension `base_dim`.
fn degeneracy_word_fits(word: &[usize], base_dim: usize) -> bool {
    let k = word.len();
    word.windows(2).all(|w| w[0] > w[1]) && word.iter().enumerate().all(|(t, &j)| j <= base_dim + (k - 1 - t))
}

/// Finite simplicial set; simplices of each dimension are kept in insertion
/// order, which fixes the chain bases.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialSetData {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<SRef>>>,
    index: HashMap<String, SimplexKey>,
}

impl SimplicialSetData {
    pub fn new() -> Self {
        Self { names: Vec::new(), faces: Vec::new(), index: HashMap::new() }
    }

    /// Adds a nondegenerate simplex with the given faces (`dim + 1` of them,
    /// none for vertices). Face targets must already exist.
    pub fn add_simplex(&mut self, name: impl Into<String>, dim: usize, faces: Vec<SRef>) -> Result<SimplexKey> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::InvalidSimplicialSet(format!("duplicate identifier `{name}`")));
        }
        for f in &faces {
            if self.names.get(f.target.dim).map_or(true, |v| f.target.idx >= v.len()) {
                return Err(Error::InvalidSimplicialSet(format!("face of `{name}` references a missing simplex")));
            }
        }
        while self.names.len() <= dim {
            self.names.push(Vec::new());
            self.faces.push(Vec::new());
        }
        let key = SimplexKey { dim, idx: self.names[dim].len() };
        self.names[dim].push(name.clone());
        self.faces[dim].push(faces);
        self.index.insert(name, key);
        Ok(key)
    }

    /// Faces by identifier, with degeneracies given in any order.
    pub fn add_named(&mut self, name: &str, dim: usize, faces: &[(Vec<usize>, &str)]) -> Result<SimplexKey> {
        let refs = faces
            .iter()
            .map(|(d, t)| {
                let target = self.key(t)?;
                Ok(SRef { degens: normalize_degeneracies(d.clone()), target })
            })
            .collect::<Result<Vec<_>>>()?;
        self.add_simplex(name, dim, refs)
    }

    pub fn top_dim(&self) -> usize {
        self.names.iter().rposition(|v| !v.is_empty()).unwrap_or(0)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.top_dim()).map(|n| self.count(n)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts().iter().enumerate().map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    pub fn key(&self, name: &str) -> Result<SimplexKey> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownSimplex(name.to_string()))
    }

    pub fn name(&self, key: SimplexKey) -> &str {
        &self.names[key.dim][key.idx]
    }

    pub fn names(&self, dim: usize) -> &[String] {
        self.names.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn keys(&self, dim: usize) -> impl Iterator<Item = SimplexKey> {
        (0..self.count(dim)).map(move |idx| SimplexKey { dim, idx })
    }

    pub fn stored_faces(&self, key: SimplexKey) -> &[SRef] {
        &self.faces[key.dim][key.idx]
    }

    pub fn is_reduced(&self) -> bool {
        self.count(0) == 1
    }

    /// `d_i` of a possibly degenerate simplex of dimension ≥ 1.
    pub fn face(&self, r: &SRef, i: usize) -> SRef {
        assert!(r.dim() >= 1 && i <= r.dim(), "face index out of range");
        let mut out = Vec::with_capacity(r.degens.len());
        let mut pending = Some(i);
        for &j in &r.degens {
            match pending {
                None => out.push(j),
                Some(ii) if ii < j => out.push(j - 1),
                Some(ii) if ii == j || ii == j + 1 => pending = None,
                Some(ii) => {
                    out.push(j);
                    pending = Some(ii - 1);
                }
            }
        }
        match pending {
            None => SRef { degens: normalize_degeneracies(out), target: r.target },
            Some(ii) => {
                let f = &self.faces[r.target.dim][r.target.idx][ii];
                out.extend_from_slice(&f.degens);
                SRef { degens: normalize_degeneracies(out), target: f.target }
            }
        }
    }

    /// Front `p`-face (vertices `0..=p`).
    pub fn front(&self, r: &SRef, p: usize) -> SRef {
        let mut cur = r.clone();
        while cur.dim() > p {
            let n = cur.dim();
            cur = self.face(&cur, n);
        }
        cur
    }

    /// Back `q`-face (vertices `n-q..=n`).
    pub fn back(&self, r: &SRef, q: usize) -> SRef {
        let mut cur = r.clone();
        while cur.dim() > q {
            cur = self.face(&cur, 0);
        }
        cur
    }

    /// The `k`-fold degenerate simplex on a vertex.
    pub fn degenerate_on(vertex: SimplexKey, k: usize) -> SRef {
        SRef { degens: (0..k).rev().collect(), target: vertex }
    }

    /// Every violated structural rule and simplicial identity.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let mut structurally_sound = true;
        for dim in 0..self.names.len() {
            for key in self.keys(dim) {
                let faces = self.stored_faces(key);
                let expected = if dim == 0 { 0 } else { dim + 1 };
                if faces.len() != expected {
                    issues.push(Issue::FaceCount { simplex: self.name(key).into(), expected, found: faces.len() });
                    structurally_sound = false;
                    continue;
                }
                for (i, f) in faces.iter().enumerate() {
                    if f.dim() + 1 != dim {
                        issues.push(Issue::FaceDimension {
                            simplex: self.name(key).into(),
                            index: i,
                            expected: dim - 1,
                            found: f.dim(),
                        });
                        structurally_sound = false;
                    } else if !degeneracy_word_fits(&f.degens, f.target.dim) {
                        issues.push(Issue::BadDegeneracy { simplex: self.name(key).into(), index: i });
                        structurally_sound = false;
                    }
                }
            }
        }
        if structurally_sound {
            for dim in 2..self.names.len() {
                for key in self.keys(dim) {
                    let s = SRef::nondegenerate(key);
                    for j in 1..=dim {
                        for i in 0..j {
                            let lhs = self.face(&self.face(&s, j), i);
                            let rhs = self.face(&self.face(&s, i), j - 1);
                            if lhs != rhs {
                                issues.push(Issue::SimplicialIdentity {
                                    simplex: self.name(key).into(),
                                    i,
                                    j,
                                    left: self.describe(&lhs),
                                    right: self.describe(&rhs),
                                });
                            }
                        }
                    }
                }
            }
        }
        ValidationReport { issues }
    }

    pub fn describe(&self, r: &SRef) -> String {
        let mut s = String::new();
        for j in &r.degens {
            s.push_str(&format!("s{j} "));
        }
        s.push_str(self.name(r.target));
        s
    }

    pub fn to_ref_json(&self, r: &SRef) -> DegenerateRef {
        DegenerateRef { degens: r.degens.clone(), target: self.name(r.target).to_string() }
    }
}

impl Default for SimplicialSetData {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Debug for SimplicialSetData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialSetData{:?}", self.counts())
    }
}

/// One violated rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Issue {
    FaceCount { simplex: String, expected: usize, found: usize },
    FaceDimension { simplex: String, index: usize, expected: usize, found: usize },
    BadDegeneracy { simplex: String, index: usize },
    SimplicialIdentity { simplex: String, i: usize, j: usize, left: String, right: String },
    Coalgebra { check: String, degrees: Vec<usize> },
    Other { message: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }
}

/// A valid simplicial set with exactly one vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReducedSimplicialSet {
    data: SimplicialSetData,
}

impl ReducedSimplicialSet {
    pub fn new(data: SimplicialSetData) -> Result<Self> {
        let report = data.validate();
        if let Some(issue) = report.issues.first() {
            return Err(Error::InvalidSimplicialSet(format!("{issue:?}")));
        }
        if !data.is_reduced() {
            return Err(Error::NotReduced(data.count(0)));
        }
        Ok(Self { data })
    }

    pub fn data(&self) -> &SimplicialSetData {
        &self.data
    }

    pub fn into_data(self) -> SimplicialSetData {
        self.data
    }

    pub fn vertex(&self) -> SimplexKey {
        SimplexKey { dim: 0, idx: 0 }
    }
}

impl std::ops::Deref for ReducedSimplicialSet {
    type Target = SimplicialSetData;
    fn deref(&self) -> &SimplicialSetData {
        &self.data
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_examples() {
        // s0 s0 = s1 s0
        assert_eq!(normalize_degeneracies(vec![0, 0]), vec![1, 0]);
        assert_eq!(normalize_degeneracies(vec![0, 1]), vec![2, 0]);
        assert_eq!(normalize_degeneracies(vec![3, 1, 0]), vec![3, 1, 0]);
    }

    #[test]
    fn faces_of_degenerate_simplices() {
        let mut x = SimplicialSetData::new();
        x.add_named("v", 0, &[]).unwrap();
        x.add_named("a", 1, &[(vec![], "v"), (vec![], "v")]).unwrap();
        let a = SRef::nondegenerate(x.key("a").unwrap());
        let s0a = SRef { degens: vec![0], target: a.target };
        // d0 s0 = d1 s0 = id, d2 s0 = s0 d1
        assert_eq!(x.face(&s0a, 0), a);
        assert_eq!(x.face(&s0a, 1), a);
        assert_eq!(x.face(&s0a, 2), SRef { degens: vec![0], target: x.key("v").unwrap() });
    }

    #[test]
    fn wrong_face_dimension_is_reported() {
        let mut x = SimplicialSetData::new();
        x.add_named("v", 0, &[]).unwrap();
        x.add_named("a", 1, &[(vec![], "v"), (vec![], "v")]).unwrap();
        x.add_named("t", 2, &[(vec![], "v"), (vec![], "a"), (vec![], "a")]).unwrap();
        let report = x.validate();
        assert_eq!(
            report.issues,
            vec![Issue::FaceDimension { simplex: "t".into(), index: 0, expected: 1, found: 0 }]
        );
    }

    #[test]
    fn identity_violation_is_reported() {
        // two distinct vertices glued inconsistently
        let mut x = SimplicialSetData::new();
        x.add_named("v", 0, &[]).unwrap();
        x.add_named("w", 0, &[]).unwrap();
        x.add_named("a", 1, &[(vec![], "w"), (vec![], "v")]).unwrap();
        x.add_named("t", 2, &[(vec![], "a"), (vec![], "a"), (vec![], "a")]).unwrap();
        let report = x.validate();
        assert!(!report.is_empty());
        assert!(report.issues.iter().all(|i| matches!(i, Issue::SimplicialIdentity { .. })));
    }
}
