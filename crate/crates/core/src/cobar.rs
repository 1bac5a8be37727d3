//! Truncated cobar construction, the degree-zero ring presentation, `ψ` and
//! the π₁ presentation read off the 2-simplices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coalgebra::DgCoalgebra;
use crate::error::{Error, Result};
use crate::groups::{CosetTable, GroupPresentation, GroupRingElement, Letter, Word};
use crate::simplicial::ReducedSimplicialSet;
use crate::twisted::TWISTING_SIGN;

/// Tensor word in the desuspended generators, by global generator index.
pub type CobarWord = Vec<u32>;

/// Finite integer combination of cobar words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CobarElement {
    terms: BTreeMap<CobarWord, BigInt>,
}

impl CobarElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: CobarWord) -> Self {
        let mut e = Self::zero();
        e.add_term(w, &BigInt::one());
        e
    }

    pub fn add_term(&mut self, w: CobarWord, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &BigInt) {
        for (w, v) in &other.terms {
            self.add_term(w.clone(), &(v * c));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CobarWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Concatenation product.
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
}

/// A desuspended simplex `s⁻¹σ` of degree `dim - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobarGenerator {
    pub name: String,
    pub dim: usize,
    pub idx: usize,
}

/// `ΩC` restricted to words of degree `≤ max_deg` and length `≤ max_len`.
/// Products and differentials are computed exactly in the full tensor
/// algebra; the window only bounds enumeration.
#[derive(Clone, Debug)]
pub struct Cobar {
    generators: Vec<CobarGenerator>,
    offsets: Vec<usize>,
    gen_diff: Vec<CobarElement>,
    pub max_deg: usize,
    pub max_len: usize,
}

pub type TruncatedDgAlgebra = Cobar;

fn sign(i: usize) -> BigInt {
    if i % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `D[σ] = -[∂σ] + Σ_{p=1}^{n-1} (-1)^p [f_p σ | l_{n-p} σ]`, extended as a
/// derivation.
pub fn cobar(c: &DgCoalgebra, max_deg: usize, max_len: usize) -> Result<Cobar> {
    if !c.is_connected() {
        return Err(Error::NotConnected(c.rank(0)));
    }
    let top = c.top_degree();
    let mut generators = Vec::new();
    let mut offsets = vec![0; top + 2];
    for n in 1..=top {
        offsets[n] = generators.len();
        for (idx, name) in c.names(n).iter().enumerate() {
            generators.push(CobarGenerator { name: name.clone(), dim: n, idx });
        }
    }
    offsets[top + 1] = generators.len();
    let gid = |dim: usize, idx: usize| (offsets[dim] + idx) as u32;
    let mut gen_diff = vec![CobarElement::zero(); generators.len()];
    for n in 2..=top {
        let b = c.boundary(n);
        for (row, col, v) in b.entries() {
            gen_diff[offsets[n] + col].add_term(vec![gid(n - 1, row)], &-v);
        }
        for p in 1..n {
            let q = n - p;
            let rq = c.rank(q);
            if let Some(d) = c.delta_ref(p, q) {
                for (row, col, v) in d.entries() {
                    gen_diff[offsets[n] + col].add_term(vec![gid(p, row / rq), gid(q, row % rq)], &(v * sign(p)));
                }
            }
        }
    }
    Ok(Cobar { generators, offsets, gen_diff, max_deg, max_len })
}

/// Outcome of a `D² = 0` verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DSquaredReport {
    pub generators_checked: usize,
    pub generator_failures: Vec<String>,
    /// Degrees whose whole window was enumerated.
    pub exhaustive_degrees: Vec<usize>,
    pub words_checked: usize,
    pub sampled_words: usize,
    pub word_failures: Vec<String>,
}

impl DSquaredReport {
    /// `D²` is a derivation, so vanishing on generators settles every word;
    /// the word checks exercise the derivation code itself.
    pub fn passed(&self) -> bool {
        self.generator_failures.is_empty() && self.word_failures.is_empty()
    }
}

impl Cobar {
    pub fn generators(&self) -> &[CobarGenerator] {
        &self.generators
    }

    pub fn generator_id(&self, dim: usize, idx: usize) -> u32 {
        (self.offsets[dim] + idx) as u32
    }

    /// Generators of a given simplex dimension, i.e. cobar degree `dim - 1`.
    pub fn generators_of_dim(&self, dim: usize) -> std::ops::Range<u32> {
        if dim == 0 || dim + 1 >= self.offsets.len() {
            return 0..0;
        }
        self.offsets[dim] as u32..self.offsets[dim + 1] as u32
    }

    pub fn generator_degree(&self, g: u32) -> usize {
        self.generators[g as usize].dim - 1
    }

    pub fn degree(&self, w: &[u32]) -> usize {
        w.iter().map(|&g| self.generator_degree(g)).sum()
    }

    pub fn in_window(&self, w: &[u32]) -> bool {
        w.len() <= self.max_len && self.degree(w) <= self.max_deg
    }

    pub fn generator_differential(&self, g: u32) -> &CobarElement {
        &self.gen_diff[g as usize]
    }

    /// `D(x₁…x_k) = Σ (-1)^{|x₁|+…+|x_{i-1}|} x₁…Dx_i…x_k`
    pub fn differential_word(&self, w: &[u32]) -> CobarElement {
        let mut out = CobarElement::zero();
        let mut deg = 0;
        for (i, &g) in w.iter().enumerate() {
            let s = sign(deg);
            for (mid, c) in self.gen_diff[g as usize].terms() {
                let mut word = Vec::with_capacity(w.len() + 1);
                word.extend_from_slice(&w[..i]);
                word.extend_from_slice(mid);
                word.extend_from_slice(&w[i + 1..]);
                out.add_term(word, &(c * &s));
            }
            deg += self.generator_degree(g);
        }
        out
    }

    pub fn differential(&self, x: &CobarElement) -> CobarElement {
        let mut out = CobarElement::zero();
        for (w, c) in x.terms() {
            out.add_scaled(&self.differential_word(w), c);
        }
        out
    }

    /// Number of words of exactly degree `deg` and length `≤ max_len`
    /// (including the empty word in degree zero).
    pub fn basis_size(&self, deg: usize) -> u128 {
        let mut per_deg = vec![0u128; deg + 1];
        for g in 0..self.generators.len() as u32 {
            let d = self.generator_degree(g);
            if d <= deg {
                per_deg[d] += 1;
            }
        }
        // ways[l][d]: words of length l and degree d
        let mut ways = vec![vec![0u128; deg + 1]; self.max_len + 1];
        ways[0][0] = 1;
        for l in 1..=self.max_len {
            for d in 0..=deg {
                let mut acc = 0u128;
                for (gd, &count) in per_deg.iter().enumerate().take(d + 1) {
                    acc = acc.saturating_add(ways[l - 1][d - gd].saturating_mul(count));
                }
                ways[l][d] = acc;
            }
        }
        ways.iter().map(|r| r[deg]).fold(0u128, u128::saturating_add)
    }

    /// All words of degree `deg` in the window, or `None` when there are more
    /// than `cap`.
    pub fn basis(&self, deg: usize, cap: usize) -> Option<Vec<CobarWord>> {
        if self.basis_size(deg) > cap as u128 {
            return None;
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enumerate(deg, &mut cur, &mut out);
        out.sort();
        Some(out)
    }

    fn enumerate(&self, remaining: usize, cur: &mut Vec<u32>, out: &mut Vec<CobarWord>) {
        if remaining == 0 {
            out.push(cur.clone());
        }
        if cur.len() == self.max_len {
            return;
        }
        for g in 0..self.generators.len() as u32 {
            let d = self.generator_degree(g);
            if d <= remaining {
                cur.push(g);
                self.enumerate(remaining - d, cur, out);
                cur.pop();
            }
        }
    }

    fn random_word(&self, rng: &mut ChaCha8Rng) -> CobarWord {
        let len = rng.gen_range(1..=self.max_len.max(1));
        let mut w = Vec::with_capacity(len);
        let mut deg = 0;
        let ids: Vec<u32> = (0..self.generators.len() as u32).collect();
        for _ in 0..len {
            let fits: Vec<u32> = ids.iter().copied().filter(|&g| deg + self.generator_degree(g) <= self.max_deg).collect();
            match fits.choose(rng) {
                Some(&g) => {
                    deg += self.generator_degree(g);
                    w.push(g);
                }
                None => break,
            }
        }
        w
    }

    /// Checks `D² = 0` on every generator, on every window word in degrees
    /// whose window has at most `cap` words, and on `samples` random window
    /// words otherwise.
    pub fn check_d_squared(&self, cap: usize, samples: usize, seed: u64) -> DSquaredReport {
        let mut report = DSquaredReport {
            generators_checked: self.generators.len(),
            generator_failures: Vec::new(),
            exhaustive_degrees: Vec::new(),
            words_checked: 0,
            sampled_words: 0,
            word_failures: Vec::new(),
        };
        for g in 0..self.generators.len() as u32 {
            if !self.differential(self.generator_differential(g)).is_zero() {
                report.generator_failures.push(self.generators[g as usize].name.clone());
            }
        }
        let mut sample_needed = false;
        for deg in 0..=self.max_deg {
            match self.basis(deg, cap) {
                Some(words) => {
                    for w in &words {
                        if !self.differential(&self.differential_word(w)).is_zero() {
                            report.word_failures.push(self.format_word(w));
                        }
                    }
                    report.words_checked += words.len();
                    report.exhaustive_degrees.push(deg);
                }
                None => sample_needed = true,
            }
        }
        if sample_needed && !self.generators.is_empty() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let w = self.random_word(&mut rng);
                if !self.differential(&self.differential_word(&w)).is_zero() {
                    report.word_failures.push(self.format_word(&w));
                }
                report.sampled_words += 1;
            }
        }
        report
    }

    pub fn format_word(&self, w: &[u32]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let inner: Vec<&str> = w.iter().map(|&g| self.generators[g as usize].name.as_str()).collect();
        format!("[{}]", inner.join("|"))
    }

    pub fn format_element(&self, x: &CobarElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (w, c)) in x.terms().enumerate() {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                s.push_str(&abs.to_string());
            }
            s.push_str(&self.format_word(w));
        }
        s
    }

    /// `(dτ + τ⋆τ)(σ)` for the universal twisting cochain
    /// `τ(σ) = TWISTING_SIGN · [σ]`, with `d f = D∘f - (-1)^{|f|} f∘∂` and
    /// `(f⋆g) = μ(f ⊗ g)Δ` under the Koszul rule.
    pub fn maurer_cartan_residual(&self, c: &DgCoalgebra, dim: usize, idx: usize) -> CobarElement {
        let t = BigInt::from(TWISTING_SIGN);
        let g = self.generator_id(dim, idx);
        let mut out = CobarElement::zero();
        // D(τσ)
        out.add_scaled(self.generator_differential(g), &t);
        // +τ(∂σ), since |τ| = -1
        if dim >= 2 {
            for (row, col, v) in c.boundary(dim).entries() {
                if col == idx {
                    out.add_term(vec![self.generator_id(dim - 1, row)], &(v * &t));
                }
            }
        }
        // τ⋆τ: (τ ⊗ τ)(a ⊗ b) = (-1)^{|a|} τa ⊗ τb
        for p in 1..dim {
            let q = dim - p;
            let rq = c.rank(q);
            if let Some(d) = c.delta_ref(p, q) {
                for (row, col, v) in d.entries() {
                    if col == idx {
                        let w = vec![self.generator_id(p, row / rq), self.generator_id(q, row % rq)];
                        out.add_term(w, &(v * sign(p) * &t * &t));
                    }
                }
            }
        }
        out
    }
}

/// Degree-zero ring `⟨x_e | relations⟩`, one relation per 2-simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingPresentation {
    pub generators: Vec<String>,
    #[serde(with = "relation_serde")]
    pub relations: Vec<Vec<(BigInt, Vec<String>)>>,
}

mod relation_serde {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    type Rel = Vec<(BigInt, Vec<String>)>;

    pub fn serialize<S: Serializer>(rels: &[Rel], s: S) -> Result<S::Ok, S::Error> {
        let raw: Vec<Vec<(String, &Vec<String>)>> =
            rels.iter().map(|r| r.iter().map(|(c, w)| (c.to_string(), w)).collect()).collect();
        raw.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rel>, D::Error> {
        use serde::de::Error;
        let raw: Vec<Vec<(String, Vec<String>)>> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|(c, w)| c.parse::<BigInt>().map(|c| (c, w)).map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

impl RingPresentation {
    pub fn format_relation(&self, k: usize) -> String {
        let r = &self.relations[k];
        if r.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (c, w)) in r.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let abs = if neg { -c } else { c.clone() };
            s.push_str(match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            if !abs.is_one() {
                s.push_str(&abs.to_string());
            }
            let mono: Vec<String> = w.iter().map(|g| format!("x_{g}")).collect();
            s.push_str(&mono.join("·"));
        }
        s
    }
}

/// `D[τ]` for every 2-simplex `τ`:
/// `x_{d₁τ} - x_{d₀τ} - x_{d₂τ} - x_{d₂τ}·x_{d₀τ}` with degenerate faces `0`.
/// Relations that vanish identically are omitted.
pub fn h0_relations(c: &DgCoalgebra) -> Result<RingPresentation> {
    let cb = cobar(c, 1, 2)?;
    let edges = c.names(1).to_vec();
    let mut relations = Vec::new();
    for idx in 0..c.rank(2) {
        let d = cb.generator_differential(cb.generator_id(2, idx));
        if d.is_zero() {
            continue;
        }
        let rel = d
            .terms()
            .map(|(w, v)| (v.clone(), w.iter().map(|&g| cb.generators()[g as usize].name.clone()).collect()))
            .collect();
        relations.push(rel);
    }
    Ok(RingPresentation { generators: edges, relations })
}

/// `ψ(x_{e₁}⋯x_{e_k}) = (g₁ - e)⋯(g_k - e)` in `Z[F]`, `F` free on the
/// generators of `g`.
pub fn psi(monomial: &[String], g: &GroupPresentation) -> Result<GroupRingElement> {
    let mut out = GroupRingElement::identity();
    for name in monomial {
        let k = g.generator_index(name)?;
        out = out.mul(&GroupRingElement::augmentation_generator(vec![Letter::pos(k)]));
    }
    Ok(out)
}

/// `ψ` extended linearly to a relation.
pub fn psi_relation(rel: &[(BigInt, Vec<String>)], g: &GroupPresentation) -> Result<GroupRingElement> {
    let mut out = GroupRingElement::zero();
    for (c, w) in rel {
        out = out.add(&psi(w, g)?.scale(c));
    }
    Ok(out)
}

/// One generator per nondegenerate edge and the relator `d₂τ · d₀τ · (d₁τ)⁻¹`
/// per 2-simplex; degenerate faces are the identity and relators that reduce
/// to the empty word are dropped.
pub fn pi1_presentation(s: &ReducedSimplicialSet) -> Result<GroupPresentation> {
    let generators = s.names(1).to_vec();
    let mut relators: Vec<Word> = Vec::new();
    for key in s.keys(2) {
        let f = s.stored_faces(key);
        let letter = |i: usize, inv: bool| f[i].as_nondegenerate().map(|e| Letter { gen: e.idx, inv });
        let w: Word = [letter(2, false), letter(0, false), letter(1, true)].into_iter().flatten().collect();
        let w = crate::groups::free_reduce(&w);
        if !w.is_empty() {
            relators.push(w);
        }
    }
    GroupPresentation::new(generators, relators)
}

/// Element of `H₀ ⊗ H₀` on monomials in the edge generators.
pub type H0Tensor = BTreeMap<(Vec<usize>, Vec<usize>), BigInt>;

fn add_to(t: &mut H0Tensor, k: (Vec<usize>, Vec<usize>), c: &BigInt) {
    let slot = t.entry(k.clone()).or_default();
    *slot += c;
    if slot.is_zero() {
        t.remove(&k);
    }
}

/// `∇` extended multiplicatively from `∇x = x⊗x + x⊗1 + 1⊗x`.
pub fn h0_coproduct(monomial: &[usize]) -> H0Tensor {
    let mut acc: H0Tensor = BTreeMap::new();
    acc.insert((Vec::new(), Vec::new()), BigInt::one());
    for &x in monomial {
        let mut next = BTreeMap::new();
        for ((u, w), c) in &acc {
            let mut ux = u.clone();
            ux.push(x);
            let mut wx = w.clone();
            wx.push(x);
            add_to(&mut next, (ux.clone(), wx.clone()), c);
            add_to(&mut next, (ux, w.clone()), c);
            add_to(&mut next, (u.clone(), wx), c);
        }
        acc = next;
    }
    acc
}

pub fn h0_counit(monomial: &[usize]) -> BigInt {
    if monomial.is_empty() {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

/// Coassociativity and both counit laws of `∇` on one monomial.
pub fn h0_coproduct_laws(monomial: &[usize]) -> (bool, bool) {
    let d = h0_coproduct(monomial);
    let mut left: BTreeMap<(Vec<usize>, Vec<usize>, Vec<usize>), BigInt> = BTreeMap::new();
    let mut right = left.clone();
    for ((u, w), c) in &d {
        for ((a, b), c2) in h0_coproduct(u) {
            *left.entry((a, b, w.clone())).or_default() += c * &c2;
        }
        for ((a, b), c2) in h0_coproduct(w) {
            *right.entry((u.clone(), a, b)).or_default() += c * &c2;
        }
    }
    left.retain(|_, v| !v.is_zero());
    right.retain(|_, v| !v.is_zero());
    let mut l_counit: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
    let mut r_counit: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
    for ((u, w), c) in &d {
        *l_counit.entry(w.clone()).or_default() += h0_counit(u) * c;
        *r_counit.entry(u.clone()).or_default() += h0_counit(w) * c;
    }
    l_counit.retain(|_, v| !v.is_zero());
    r_counit.retain(|_, v| !v.is_zero());
    let expected: BTreeMap<Vec<usize>, BigInt> = [(monomial.to_vec(), BigInt::one())].into_iter().collect();
    (left == right, l_counit == expected && r_counit == expected)
}

fn psi_indices(monomial: &[usize]) -> GroupRingElement {
    monomial.iter().fold(GroupRingElement::identity(), |acc, &k| {
        acc.mul(&GroupRingElement::augmentation_generator(vec![Letter::pos(k)]))
    })
}

/// `ψ` on a monomial of generator indices, evaluated in `Z[G]` through `t`.
pub fn psi_evaluated(monomial: &[usize], t: &CosetTable) -> Vec<BigInt> {
    psi_indices(monomial).evaluate(t)
}

/// `(ψ⊗ψ)∇(x) = ∇ψ(x)` in `Z[G] ⊗ Z[G]`, where `∇g = g⊗g`.
pub fn psi_is_coalgebra_map_on(monomial: &[usize], t: &CosetTable) -> bool {
    let n = t.len();
    let mut lhs = vec![BigInt::zero(); n * n];
    for ((u, w), c) in h0_coproduct(monomial) {
        let a = psi_evaluated(&u, t);
        let b = psi_evaluated(&w, t);
        for (i, ai) in a.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                lhs[i * n + j] += &c * ai * bj;
            }
        }
    }
    let mut rhs = vec![BigInt::zero(); n * n];
    for (g, c) in psi_evaluated(monomial, t).into_iter().enumerate() {
        rhs[g * n + g] = c;
    }
    lhs == rhs
}

/// Uniform random monomial of length `len` in `count` generators.
pub fn random_monomial(rng: &mut impl Rng, count: usize, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..count)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::normalized_chains;
    use crate::groups::todd_coxeter;
    use crate::simplicial::{build_presentation_complex, delta_quotient};

    fn complex(gens: &[&str], rels: &[&str]) -> ReducedSimplicialSet {
        build_presentation_complex(&GroupPresentation::parse(gens, rels).unwrap()).unwrap()
    }

    #[test]
    fn circle_cobar() {
        let c = normalized_chains(&delta_quotient(1).unwrap()).unwrap();
        let cb = cobar(&c, 4, 3).unwrap();
        let b = cb.basis(0, 100).unwrap();
        let shown: Vec<String> = b.iter().map(|w| cb.format_word(w)).collect();
        assert_eq!(shown, vec!["1", "[c1]", "[c1|c1]", "[c1|c1|c1]"]);
        assert!(b.iter().all(|w| cb.differential_word(w).is_zero()));
        assert_eq!(cb.basis_size(0), 4);
    }

    #[test]
    fn rp2_differential() {
        let c = normalized_chains(&complex(&["a"], &["a a"])).unwrap();
        let cb = cobar(&c, 4, 6).unwrap();
        let d = cb.generator_differential(cb.generator_id(2, 0));
        assert_eq!(cb.format_element(d), "-2[a] - [a|a]");
        let r = cb.check_d_squared(100_000, 100, 1);
        assert!(r.passed() && r.exhaustive_degrees == vec![0, 1, 2, 3, 4]);
        for idx in 0..c.rank(2) {
            assert!(cb.maurer_cartan_residual(&c, 2, idx).is_zero());
        }
    }

    #[test]
    fn nonconnected_rejected() {
        let x = complex(&["a"], &["a a"]);
        let t = todd_coxeter(&pi1_presentation(&x).unwrap(), 10).unwrap().table().cloned().unwrap();
        let cover = crate::simplicial::covering_space(&x, &t).unwrap();
        let c = normalized_chains(&cover).unwrap();
        assert_eq!(cobar(&c, 2, 2).unwrap_err(), Error::NotConnected(2));
    }

    #[test]
    fn relations() {
        let rp2 = h0_relations(&normalized_chains(&complex(&["a"], &["a a"])).unwrap()).unwrap();
        assert_eq!(rp2.format_relation(0), "-2x_a - x_a·x_a");
        let torus = h0_relations(&normalized_chains(&complex(&["a", "b"], &["a b a^-1 b^-1"])).unwrap()).unwrap();
        // x_{p2} - x_b - x_a - x_a x_b
        assert_eq!(torus.format_relation(0), "-x_a - x_a·x_b - x_b + x_r1_p2");
        let s1 = h0_relations(&normalized_chains(&delta_quotient(1).unwrap()).unwrap()).unwrap();
        assert!(s1.relations.is_empty());
        let j = serde_json::to_string(&rp2).unwrap();
        assert_eq!(j, r#"{"generators":["a"],"relations":[[["-2",["a"]],["-1",["a","a"]]]]}"#);
        assert_eq!(serde_json::from_str::<RingPresentation>(&j).unwrap(), rp2);
    }

    #[test]
    fn psi_values() {
        let g = GroupPresentation::parse(&["a"], &["a a"]).unwrap();
        assert_eq!(psi(&[], &g).unwrap(), GroupRingElement::identity());
        let t = todd_coxeter(&g, 10).unwrap().table().cloned().unwrap();
        // (a - e)² = 2e - 2a
        assert_eq!(psi_evaluated(&[0, 0], &t), vec![BigInt::from(2), BigInt::from(-2)]);
        assert!(matches!(psi(&["b".into()], &g), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn pi1_presentations() {
        let p = pi1_presentation(&complex(&["a"], &["a a"])).unwrap();
        assert_eq!(format!("{p:?}"), "⟨a | a a⟩");
        let t = pi1_presentation(&complex(&["a", "b"], &["a b a^-1 b^-1"])).unwrap();
        assert_eq!(format!("{t:?}"), "⟨a, b, r1_p2, r1_p3 | a b r1_p2^-1, r1_p3 a r1_p2^-1, b r1_p3^-1⟩");
        let s2 = pi1_presentation(&delta_quotient(2).unwrap()).unwrap();
        assert!(s2.generators().is_empty() && s2.relators().is_empty());
    }

    #[test]
    fn coproduct_laws() {
        assert_eq!(h0_coproduct(&[]).len(), 1);
        assert_eq!(h0_coproduct(&[0]).len(), 3);
        for m in [vec![], vec![0], vec![0, 1], vec![1, 0, 1]] {
            assert_eq!(h0_coproduct_laws(&m), (true, true));
        }
        let g = GroupPresentation::parse(&["a"], &["a a a"]).unwrap();
        let t = todd_coxeter(&g, 10).unwrap().table().cloned().unwrap();
        for m in [vec![], vec![0], vec![0, 0], vec![0, 0, 0, 0]] {
            assert!(psi_is_coalgebra_map_on(&m, &t));
        }
    }
}
