//! π₁-modules, twisted tensor products and homology with local coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coalgebra::{induced_chain_map, normalized_chains, DgCoalgebra};
use crate::cobar::pi1_presentation;
use crate::error::{Error, Result};
use crate::groups::{GroupPresentation, Letter, Word};
use crate::linalg::{smith_normal_form, ChainComplex, ChainMap, FGAbelianGroup, IntMatrix};
use crate::simplicial::{ReducedSimplicialSet, SimplicialMap};

/// Free abelian group of finite rank with a left action of a finitely
/// presented group, one invertible matrix per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiModule {
    generators: Vec<String>,
    rank: usize,
    action: Vec<IntMatrix>,
    inverse: Vec<IntMatrix>,
}

fn signed_permutation_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let n = m.rows();
    let mut seen_rows = vec![false; n];
    let mut seen_cols = vec![false; n];
    if m.nnz() != n {
        return None;
    }
    for (i, j, v) in m.entries() {
        if !v.abs().is_one() || seen_rows[i] || seen_cols[j] {
            return None;
        }
        seen_rows[i] = true;
        seen_cols[j] = true;
    }
    Some(m.transpose())
}

/// Inverse over `Z`, or `None` when `m` is not unimodular.
pub fn integer_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    if m.rows() != m.cols() {
        return None;
    }
    if let Some(inv) = signed_permutation_inverse(m) {
        return Some(inv);
    }
    let s = smith_normal_form(m);
    if s.rank() != m.rows() || s.diagonal.iter().any(|d| !d.is_one()) {
        return None;
    }
    // U M V = I
    s.v.mul(&s.u).ok()
}

impl PiModule {
    pub fn from_matrices(generators: Vec<String>, rank: usize, action: Vec<IntMatrix>) -> Result<Self> {
        if action.len() != generators.len() {
            return Err(Error::InvalidModule(format!(
                "{} generators but {} matrices",
                generators.len(),
                action.len()
            )));
        }
        let mut inverse = Vec::with_capacity(action.len());
        for (g, m) in generators.iter().zip(&action) {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::InvalidModule(format!("matrix of `{g}` is not {rank}x{rank}")));
            }
            inverse.push(integer_inverse(m).ok_or_else(|| Error::InvalidModule(format!("`{g}` is not invertible over Z")))?);
        }
        Ok(Self { generators, rank, action, inverse })
    }

    /// Every generator acts as the identity.
    pub fn trivial(generators: Vec<String>, rank: usize) -> Self {
        let action = vec![IntMatrix::identity(rank); generators.len()];
        Self { inverse: action.clone(), generators, rank, action }
    }

    /// Rank one, generator `k` acting by `signs[k] = ±1`.
    pub fn character(generators: Vec<String>, signs: &[i64]) -> Result<Self> {
        let action = signs.iter().map(|&s| IntMatrix::from_dense(&[vec![s]])).collect();
        Self::from_matrices(generators, 1, action)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn letter_matrix(&self, l: Letter) -> &IntMatrix {
        if l.inv {
            &self.inverse[l.gen]
        } else {
            &self.action[l.gen]
        }
    }

    /// `ρ(x₁ … x_k) = ρ(x₁) ⋯ ρ(x_k)`
    pub fn word_matrix(&self, w: &[Letter]) -> IntMatrix {
        w.iter().fold(IntMatrix::identity(self.rank), |acc, &l| acc.mul(self.letter_matrix(l)).expect("square"))
    }

    /// Generator names must agree and every relator must act trivially.
    pub fn check_relators(&self, p: &GroupPresentation) -> Result<()> {
        if p.generators() != self.generators.as_slice() {
            return Err(Error::InvalidModule(format!(
                "module generators {:?} differ from the presentation's {:?}",
                self.generators,
                p.generators()
            )));
        }
        let id = IntMatrix::identity(self.rank);
        for (k, r) in p.relators().iter().enumerate() {
            if self.word_matrix(r) != id {
                return Err(Error::InvalidModule(format!("relator {k} (`{}`) acts nontrivially", p.format_word(r))));
            }
        }
        Ok(())
    }

    /// Pullback along a homomorphism sending source generator `k` to the
    /// word `images[k]` (empty word for the identity).
    pub fn restrict(&self, source_generators: Vec<String>, images: &[Word]) -> Result<PiModule> {
        if images.len() != source_generators.len() {
            return Err(Error::InvalidModule("one image word per source generator required".into()));
        }
        let action = images.iter().map(|w| self.word_matrix(w)).collect::<Vec<_>>();
        let inverse = images.iter().map(|w| self.word_matrix(&crate::groups::invert(w))).collect();
        Ok(PiModule { generators: source_generators, rank: self.rank, action, inverse })
    }

    pub fn to_json(&self) -> PiModuleJson {
        PiModuleJson {
            rank: self.rank,
            action: self.generators.iter().cloned().zip(self.action.iter().cloned()).collect(),
        }
    }

    /// Orders the matrices along `generators`; every generator must be given.
    pub fn from_json(j: &PiModuleJson, generators: &[String]) -> Result<Self> {
        if let Some(extra) = j.action.keys().find(|k| !generators.contains(k)) {
            return Err(Error::UnknownGenerator(extra.clone()));
        }
        let action = generators
            .iter()
            .map(|g| j.action.get(g).cloned().ok_or_else(|| Error::InvalidModule(format!("no matrix for `{g}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_matrices(generators.to_vec(), j.rank, action)
    }
}

/// Wire form `{"rank": r, "action": {"generator": matrix}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiModuleJson {
    pub rank: usize,
    pub action: BTreeMap<String, IntMatrix>,
}

/// Sign of the universal twisting cochain `τ(σ) = sign · [σ]` under the
/// cobar convention of this crate; with it `dτ + τ⋆τ = 0`.
pub const TWISTING_SIGN: i64 = -1;

/// `C ⊗_τ M` for `M` in degree zero acting through `ψ`.
///
/// `∂_τ(σ ⊗ m) = ∂σ ⊗ m + (-1)^n Σ f ⊗ (ρ(g_l) - 1) m` over the
/// `Δ_{n-1,1}` terms `f ⊗ l`. Basis `σ ⊗ e_k` sits at `σ * rank + k`.
pub fn twisted_tensor(c: &DgCoalgebra, m: &PiModule, g: &GroupPresentation) -> Result<ChainComplex> {
    if !c.is_connected() {
        return Err(Error::NotConnected(c.rank(0)));
    }
    if c.names(1) != g.generators() {
        return Err(Error::InvalidModule("presentation generators must be the edges of the coalgebra".into()));
    }
    m.check_relators(g)?;
    let r = m.rank();
    let id = IntMatrix::identity(r);
    let twists: Vec<IntMatrix> = (0..c.rank(1)).map(|e| m.action(e).sub(&id).expect("square")).collect();
    let top = c.top_degree();
    let boundaries: Vec<IntMatrix> = (0..=top)
        .into_par_iter()
        .map(|n| {
            if n == 0 {
                return IntMatrix::zeros(0, c.rank(0) * r);
            }
            let mut b = c.boundary(n).kron(&id);
            let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let r1 = c.rank(1);
            if let Some(d) = c.delta_ref(n - 1, 1) {
                for (row, col, coeff) in d.entries() {
                    let (f, e) = (row / r1, row % r1);
                    let scale = coeff * &sign;
                    for (i, j, v) in twists[e].entries() {
                        b.add_to(f * r + i, col * r + j, &(v * &scale));
                    }
                }
            }
            b
        })
        .collect();
    let ranks = (0..=top).map(|n| c.rank(n) * r).collect();
    ChainComplex::new(ranks, boundaries)
}

/// `H_n(S; M)` for `n ≤ up_to`.
pub fn local_homology(s: &ReducedSimplicialSet, m: &PiModule, up_to: usize) -> Result<Vec<FGAbelianGroup>> {
    let g = pi1_presentation(s)?;
    let c = normalized_chains(s)?;
    Ok(twisted_tensor(&c, m, &g)?.homology_up_to(up_to))
}

/// Image words of the source edges under `f`: a nondegenerate edge maps to
/// its generator, a degenerate one to the identity.
pub fn induced_generator_map(f: &SimplicialMap) -> Vec<Word> {
    f.source()
        .keys(1)
        .map(|k| f.image(k).as_nondegenerate().map(|t| vec![Letter::pos(t.idx)]).unwrap_or_default())
        .collect()
}

/// `f ⊗ id: C(X) ⊗_τ f*M → C(Y) ⊗_τ M` together with the restricted module.
pub fn twisted_chain_map(f: &SimplicialMap, m: &PiModule) -> Result<(ChainMap, PiModule)> {
    let x = ReducedSimplicialSet::new(f.source().clone())?;
    let y = ReducedSimplicialSet::new(f.target().clone())?;
    let gx = pi1_presentation(&x)?;
    let gy = pi1_presentation(&y)?;
    m.check_relators(&gy)?;
    let restricted = m.restrict(gx.generators().to_vec(), &induced_generator_map(f))?;
    let source = twisted_tensor(&normalized_chains(&x)?, &restricted, &gx)?;
    let target = twisted_tensor(&normalized_chains(&y)?, m, &gy)?;
    let plain = induced_chain_map(f)?;
    let id = IntMatrix::identity(m.rank());
    let top = source.top_degree().max(target.top_degree());
    let comps = (0..=top).map(|n| plain.component(n).kron(&id)).collect();
    Ok((ChainMap::new(source, target, comps)?, restricted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{regular_module, todd_coxeter};
    use crate::linalg::homology;
    use crate::simplicial::{build_presentation_complex, covering_space};

    fn rp2() -> ReducedSimplicialSet {
        build_presentation_complex(&GroupPresentation::parse(&["a"], &["a a"]).unwrap()).unwrap()
    }

    #[test]
    fn orientation_system_on_rp2() {
        let x = rp2();
        let m = PiModule::character(vec!["a".into()], &[-1]).unwrap();
        let c = twisted_tensor(&normalized_chains(&x).unwrap(), &m, &pi1_presentation(&x).unwrap()).unwrap();
        assert_eq!(c.boundary(1), IntMatrix::from_dense(&[vec![2]]));
        assert!(c.boundary(2).is_zero());
        let h = local_homology(&x, &m, 2).unwrap();
        assert_eq!(h, vec![FGAbelianGroup::from_cyclic_orders(0, [BigInt::from(2)]), FGAbelianGroup::trivial(), FGAbelianGroup::free(1)]);
    }

    #[test]
    fn trivial_module_gives_ordinary_homology() {
        let x = build_presentation_complex(&GroupPresentation::parse(&["a", "b"], &["a b a^-1 b^-1"]).unwrap()).unwrap();
        let m = PiModule::trivial(x.names(1).to_vec(), 1);
        let h = local_homology(&x, &m, 2).unwrap();
        assert_eq!(h, vec![FGAbelianGroup::free(1), FGAbelianGroup::free(2), FGAbelianGroup::free(1)]);
    }

    #[test]
    fn regular_module_matches_cover() {
        for rel in ["a a", "a a a"] {
            let x = build_presentation_complex(&GroupPresentation::parse(&["a"], &[rel]).unwrap()).unwrap();
            let g = pi1_presentation(&x).unwrap();
            let t = todd_coxeter(&g, 100).unwrap().table().cloned().unwrap();
            let m = regular_module(&t).unwrap();
            let twisted = local_homology(&x, &m, 2).unwrap();
            let cover = crate::coalgebra::chain_complex(&covering_space(&x, &t).unwrap()).unwrap();
            let expected: Vec<_> = (0..=2).map(|n| homology(&cover, n).unwrap()).collect();
            assert_eq!(twisted, expected);
            assert_eq!(twisted[2], FGAbelianGroup::free(t.len() - 1));
        }
    }

    #[test]
    fn module_validation() {
        let g = GroupPresentation::parse(&["a"], &["a a"]).unwrap();
        let bad = PiModule::from_matrices(vec!["a".into()], 1, vec![IntMatrix::from_dense(&[vec![2]])]);
        assert!(matches!(bad, Err(Error::InvalidModule(_))));
        let z3 = PiModule::from_matrices(
            vec!["a".into()],
            2,
            vec![IntMatrix::from_dense(&[vec![0, -1], vec![1, -1]])],
        )
        .unwrap();
        assert!(z3.check_relators(&g).is_err());
        let j = serde_json::to_string(&z3.to_json()).unwrap();
        let back = PiModule::from_json(&serde_json::from_str(&j).unwrap(), &["a".to_string()]).unwrap();
        assert_eq!(back, z3);
        assert_eq!(integer_inverse(&IntMatrix::from_dense(&[vec![2, 1], vec![1, 1]])).unwrap(), IntMatrix::from_dense(&[vec![1, -1], vec![-1, 2]]));
    }
}
