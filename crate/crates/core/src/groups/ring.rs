use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::presentation::{free_reduce, invert, Word};
use super::todd_coxeter::CosetTable;
use crate::error::{Error, Result};

/// Element of `Z[F]` over the free group, words kept freely reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(free_reduce(&w), BigInt::one());
        Self { terms }
    }

    /// `g - e`
    pub fn augmentation_generator(w: Word) -> Self {
        let mut x = Self::word(w);
        x.add_term(Vec::new(), &-BigInt::one());
        x
    }

    pub fn add_term(&mut self, w: Word, c: &BigInt) {
        let w = free_reduce(&w);
        let slot = self.terms.entry(w.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &(c * s));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(a * b));
            }
        }
        out
    }

    /// Image in `Z[G]` for the group enumerated by `table`, as coefficients
    /// indexed by coset.
    pub fn evaluate(&self, table: &CosetTable) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); table.len()];
        for (w, c) in &self.terms {
            out[table.trace(0, w)] += c;
        }
        out
    }
}

/// Finite group realized as the cosets of the trivial subgroup.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Reads the multiplication off a complete table over the trivial
    /// subgroup: `c1 · c2 = 0 · w_{c1} w_{c2}`.
    pub fn from_table(table: &CosetTable) -> Result<Self> {
        let reps: Vec<Word> = table
            .representatives()
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::IncompleteCosetTable("action is not transitive".into()))?;
        let n = table.len();
        let mult: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| table.trace(a, &reps[b])).collect()).collect();
        let inverse = (0..n).map(|a| table.trace(0, &invert(&reps[a]))).collect();
        let g = Self { mult, inverse };
        g.check_axioms()?;
        Ok(g)
    }

    /// Group from an explicit multiplication table with identity `0`.
    pub fn from_multiplication(mult: Vec<Vec<usize>>) -> Result<Self> {
        let n = mult.len();
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| mult[a][b] == 0).ok_or_else(|| Error::InvalidParameter(format!("{a} has no inverse"))))
            .collect::<Result<Vec<_>>>()?;
        let g = Self { mult, inverse };
        g.check_axioms()?;
        Ok(g)
    }

    /// Cyclic group `Z/n`.
    pub fn cyclic(n: usize) -> Self {
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_multiplication(mult).expect("cyclic group")
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            if self.mult[a].len() != n || self.mult[0][a] != a || self.mult[a][0] != a {
                return Err(Error::InvalidParameter("identity must be element 0".into()));
            }
            if self.mult[a][self.inverse[a]] != 0 || self.mult[self.inverse[a]][a] != 0 {
                return Err(Error::InvalidParameter(format!("{a} has no two-sided inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.mult[self.mult[a][b]][c] != self.mult[a][self.mult[b][c]] {
                        return Err(Error::InvalidParameter("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

/// The Hopf algebra `Z[G]` of a finite group in the group basis.
#[derive(Clone, Debug)]
pub struct GroupRing {
    pub group: FiniteGroup,
}

/// `Z[G] ⊗ Z[G]`, coefficient of `g ⊗ h` at `g * |G| + h`.
pub type Tensor2 = Vec<BigInt>;

impl GroupRing {
    pub fn new(group: FiniteGroup) -> Self {
        Self { group }
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn basis(&self, g: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.dim()];
        v[g] = BigInt::one();
        v
    }

    pub fn unit(&self) -> Vec<BigInt> {
        self.basis(0)
    }

    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                out[self.group.mul(a, b)] += xa * yb;
            }
        }
        out
    }

    pub fn counit(&self, x: &[BigInt]) -> BigInt {
        x.iter().sum()
    }

    /// `∇(g) = g ⊗ g`, extended linearly.
    pub fn coproduct(&self, x: &[BigInt]) -> Tensor2 {
        let n = self.dim();
        let mut out = vec![BigInt::zero(); n * n];
        for (g, c) in x.iter().enumerate() {
            out[g * n + g] = c.clone();
        }
        out
    }

    pub fn tensor(&self, x: &[BigInt], y: &[BigInt]) -> Tensor2 {
        let n = self.dim();
        let mut out = vec![BigInt::zero(); n * n];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate() {
                out[a * n + b] = xa * yb;
            }
        }
        out
    }

    /// `s(g) = g⁻¹`
    pub fn antipode(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim()];
        for (g, c) in x.iter().enumerate() {
            out[self.group.inv(g)] += c;
        }
        out
    }

    /// `μ ∘ (s ⊗ id)` on a tensor when `left_antipode`, else `μ ∘ (id ⊗ s)`.
    pub fn contract_with_antipode(&self, t: &Tensor2, left_antipode: bool) -> Vec<BigInt> {
        let n = self.dim();
        let mut out = vec![BigInt::zero(); n];
        for a in 0..n {
            for b in 0..n {
                let c = &t[a * n + b];
                if c.is_zero() {
                    continue;
                }
                let prod = if left_antipode {
                    self.group.mul(self.group.inv(a), b)
                } else {
                    self.group.mul(a, self.group.inv(b))
                };
                out[prod] += c;
            }
        }
        out
    }

    /// Integer solutions of `ε(x) = 1`, `∇(x) = x ⊗ x`.
    ///
    /// In the group basis the coproduct condition reads `x_g² = x_g` and
    /// `x_g x_h = 0` for `g ≠ h`; every coordinate is a root of `t² - t` and
    /// the pairwise products prune the search. Each candidate is re-checked
    /// against the full equations.
    pub fn group_likes(&self) -> Vec<Vec<BigInt>> {
        let n = self.dim();
        let roots = [BigInt::zero(), BigInt::one()];
        let mut out = Vec::new();
        let mut partial: Vec<BigInt> = Vec::with_capacity(n);
        self.search(&roots, &mut partial, &mut out);
        out.retain(|x| self.counit(x).is_one() && self.coproduct(x) == self.tensor(x, x));
        out.sort_by_key(|x| x.iter().position(|c| !c.is_zero()));
        out
    }

    fn search(&self, roots: &[BigInt], partial: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) {
        let n = self.dim();
        if partial.len() == n {
            out.push(partial.clone());
            return;
        }
        for r in roots {
            // x_g x_h = 0 against every earlier coordinate
            if !r.is_zero() && partial.iter().any(|p| !p.is_zero()) {
                continue;
            }
            partial.push(r.clone());
            self.search(roots, partial, out);
            partial.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::presentation::Letter;

    #[test]
    fn group_likes_of_cyclic_groups() {
        for n in 1..=4 {
            let r = GroupRing::new(FiniteGroup::cyclic(n));
            let gl = r.group_likes();
            assert_eq!(gl.len(), n);
            for (g, x) in gl.iter().enumerate() {
                assert_eq!(*x, r.basis(g));
            }
        }
    }

    #[test]
    fn antipode_identity() {
        let r = GroupRing::new(FiniteGroup::cyclic(3));
        let x: Vec<BigInt> = [2, -1, 5].map(BigInt::from).to_vec();
        let eps = r.counit(&x);
        let expected: Vec<BigInt> = r.unit().iter().map(|u| u * &eps).collect();
        assert_eq!(r.contract_with_antipode(&r.coproduct(&x), true), expected);
        assert_eq!(r.contract_with_antipode(&r.coproduct(&x), false), expected);
    }

    #[test]
    fn free_group_ring_products_reduce() {
        let a = GroupRingElement::word(vec![Letter::pos(0)]);
        let ainv = GroupRingElement::word(vec![Letter::neg(0)]);
        assert_eq!(a.mul(&ainv), GroupRingElement::identity());
    }

    #[test]
    fn non_group_rejected() {
        assert!(FiniteGroup::from_multiplication(vec![vec![0, 1], vec![1, 1]]).is_err());
    }
}
