use super::{ReducedSimplicialSet, SRef, SimplexKey, SimplicialSetData};
use crate::error::{Error, Result};
use crate::groups::{GroupPresentation, Letter};

/// Recipes for the standard reduced models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardModel {
    /// `Δⁿ/∂Δⁿ`
    DeltaQuotient(usize),
    WedgeOf(Vec<StandardModel>),
}

impl StandardModel {
    pub fn build(&self) -> Result<ReducedSimplicialSet> {
        match self {
            StandardModel::DeltaQuotient(n) => delta_quotient(*n),
            StandardModel::WedgeOf(parts) => {
                let built = parts.iter().map(StandardModel::build).collect::<Result<Vec<_>>>()?;
                wedge_of(&built)
            }
        }
    }
}

const VERTEX: SimplexKey = SimplexKey { dim: 0, idx: 0 };

/// The one-point simplicial set.
pub fn point() -> ReducedSimplicialSet {
    let mut d = SimplicialSetData::new();
    d.add_simplex("v", 0, Vec::new()).expect("fresh set");
    ReducedSimplicialSet::new(d).expect("point is valid")
}

/// `Δⁿ/∂Δⁿ`: vertex `v` and a single `n`-cell `c{n}` with degenerate faces.
pub fn delta_quotient(n: usize) -> Result<ReducedSimplicialSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("delta_quotient needs n >= 1".into()));
    }
    let mut d = SimplicialSetData::new();
    d.add_simplex("v", 0, Vec::new())?;
    let face = SimplicialSetData::degenerate_on(VERTEX, n - 1);
    d.add_simplex(format!("c{n}"), n, vec![face; n + 1])?;
    ReducedSimplicialSet::new(d)
}

/// One-point union; the simplices of summand `k` are renamed `{k}.{id}`.
pub fn wedge_of(parts: &[ReducedSimplicialSet]) -> Result<ReducedSimplicialSet> {
    let mut d = SimplicialSetData::new();
    d.add_simplex("v", 0, Vec::new())?;
    let top = parts.iter().map(|p| p.top_dim()).max().unwrap_or(0);
    // offsets[k][dim]: index of the first simplex of summand k in dimension dim
    let mut offsets = vec![vec![0usize; top + 1]; parts.len()];
    for dim in 1..=top {
        for (k, p) in parts.iter().enumerate() {
            offsets[k][dim] = d.count(dim);
            for key in p.keys(dim) {
                let faces = p
                    .stored_faces(key)
                    .iter()
                    .map(|f| SRef {
                        degens: f.degens.clone(),
                        target: if f.target.dim == 0 {
                            VERTEX
                        } else {
                            SimplexKey { dim: f.target.dim, idx: offsets[k][f.target.dim] + f.target.idx }
                        },
                    })
                    .collect();
                d.add_simplex(format!("{k}.{}", p.name(key)), dim, faces)?;
            }
        }
    }
    ReducedSimplicialSet::new(d)
}

/// Presentation 2-complex of `p` with the prefix-diagonal triangulation.
///
/// Relator `k` (1-based) written `x₁…x_ℓ` gets diagonal edges `r{k}_p{i}`
/// standing for the prefix `x₁…x_i`, and triangles `r{k}_t{i}` encoding
/// `p_{i+1} = p_i·x_{i+1}`. A positive first letter reuses its generator edge
/// as `p₁`; an inverse first letter gets a fresh `r{k}_p1` and an extra
/// triangle `r{k}_t0` encoding `p₁ = x₁`. The last prefix is the degenerate
/// edge.
pub fn build_presentation_complex(p: &GroupPresentation) -> Result<ReducedSimplicialSet> {
    let mut d = SimplicialSetData::new();
    d.add_simplex("v", 0, Vec::new())?;
    let vertex = SRef::nondegenerate(VERTEX);
    for g in p.generators() {
        d.add_simplex(g.clone(), 1, vec![vertex.clone(), vertex.clone()])?;
    }
    let degenerate = SimplicialSetData::degenerate_on(VERTEX, 1);
    let edge = |l: Letter| SRef::nondegenerate(SimplexKey { dim: 1, idx: l.gen });
    let mut triangles: Vec<(String, Vec<SRef>)> = Vec::new();

    for (k, w) in p.relators().iter().enumerate() {
        let k = k + 1;
        let len = w.len();
        if len == 0 {
            return Err(Error::EmptyRelator(k - 1));
        }
        if len == 1 {
            // x = e: both prefixes are trivial
            triangles.push((format!("r{k}_t1"), vec![edge(w[0]), degenerate.clone(), degenerate.clone()]));
            continue;
        }
        let mut prefix: Vec<SRef> = Vec::with_capacity(len + 1);
        prefix.push(degenerate.clone());
        for i in 1..len {
            if i == 1 && !w[0].inv {
                prefix.push(edge(w[0]));
            } else {
                let key = d.add_simplex(format!("r{k}_p{i}"), 1, vec![vertex.clone(), vertex.clone()])?;
                prefix.push(SRef::nondegenerate(key));
            }
        }
        prefix.push(degenerate.clone());
        let first = usize::from(!w[0].inv);
        for i in first..len {
            // p_{i+1} = p_i · x_{i+1}, faces listed (d0, d1, d2)
            let x = w[i];
            let faces = if x.inv {
                vec![edge(x), prefix[i].clone(), prefix[i + 1].clone()]
            } else {
                vec![edge(x), prefix[i + 1].clone(), prefix[i].clone()]
            };
            triangles.push((format!("r{k}_t{i}"), faces));
        }
    }
    for (name, faces) in triangles {
        d.add_simplex(name, 2, faces)?;
    }
    ReducedSimplicialSet::new(d)
}
