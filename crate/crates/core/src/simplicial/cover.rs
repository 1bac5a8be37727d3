use super::{ReducedSimplicialSet, SRef, SimplexKey, SimplicialSetData};
use crate::error::{Error, Result};
use crate::groups::{CosetTable, Letter};

/// Cover of `x` classified by the coset table `t`, whose generators are the
/// nondegenerate edges of `x` in order (as produced by `pi1_presentation`).
///
/// The simplex `(σ, c)` is named `{σ}@{c}` and has its vertex `0` over coset
/// `c`. Faces `d_i` with `i ≥ 1` keep the coset; `d_0` moves it along the
/// front edge of `σ`.
pub fn covering_space(x: &ReducedSimplicialSet, t: &CosetTable) -> Result<SimplicialSetData> {
    let edges = x.names(1);
    if t.generators.len() != edges.len() || t.generators.iter().zip(edges).any(|(g, e)| g != e) {
        return Err(Error::IncompleteCosetTable(format!(
            "table generators {:?} do not match the edges {:?}",
            t.generators, edges
        )));
    }
    let n = t.len();
    let lift = |f: &SRef, c: usize| SRef {
        degens: f.degens.clone(),
        target: SimplexKey { dim: f.target.dim, idx: f.target.idx * n + c },
    };
    let mut out = SimplicialSetData::new();
    for dim in 0..=x.top_dim() {
        for key in x.keys(dim) {
            let s = SRef::nondegenerate(key);
            let shift = if dim == 0 {
                None
            } else {
                x.front(&s, 1).as_nondegenerate().map(|e| Letter::pos(e.idx))
            };
            for c in 0..n {
                let faces = x
                    .stored_faces(key)
                    .iter()
                    .enumerate()
                    .map(|(i, f)| {
                        let c2 = match (i, shift) {
                            (0, Some(l)) => t.act(c, l),
                            _ => c,
                        };
                        lift(f, c2)
                    })
                    .collect();
                out.add_simplex(format!("{}@{c}", x.name(key)), dim, faces)?;
            }
        }
    }
    Ok(out)
}
