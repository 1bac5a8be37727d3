//! Bar and one-sided bar constructions on augmented dg algebras, and the
//! comparison map `ρ: C → BΩC`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coalgebra::DgCoalgebra;
use crate::cobar::{Cobar, CobarWord};
use crate::error::{Error, Result};
use crate::linalg::{homology, ChainComplex, FGAbelianGroup, IntMatrix};
use crate::twisted::PiModule;

/// Augmented dg algebra exposed through a basis of its augmentation ideal.
pub trait AugmentedAlgebra {
    type Key: Clone + Ord + Hash + Debug;

    fn degree(&self, a: &Self::Key) -> usize;
    /// `∂a`, which lies in the augmentation ideal.
    fn differential(&self, a: &Self::Key) -> Vec<(BigInt, Self::Key)>;
    fn product(&self, a: &Self::Key, b: &Self::Key) -> Vec<(BigInt, Self::Key)>;
    /// Whether `a` belongs to the enumerated window.
    fn in_window(&self, a: &Self::Key) -> bool;
    /// Ideal basis of degree `deg` inside the window, `None` above `cap`.
    fn ideal_basis(&self, deg: usize, cap: usize) -> Option<Vec<Self::Key>>;
    fn label(&self, a: &Self::Key) -> String;
}

impl AugmentedAlgebra for Cobar {
    type Key = CobarWord;

    fn degree(&self, a: &CobarWord) -> usize {
        Cobar::degree(self, a)
    }

    fn differential(&self, a: &CobarWord) -> Vec<(BigInt, CobarWord)> {
        self.differential_word(a).terms().map(|(w, c)| (c.clone(), w.clone())).collect()
    }

    fn product(&self, a: &CobarWord, b: &CobarWord) -> Vec<(BigInt, CobarWord)> {
        let mut w = a.clone();
        w.extend_from_slice(b);
        vec![(BigInt::one(), w)]
    }

    fn in_window(&self, a: &CobarWord) -> bool {
        !a.is_empty() && Cobar::in_window(self, a)
    }

    fn ideal_basis(&self, deg: usize, cap: usize) -> Option<Vec<CobarWord>> {
        let mut b = self.basis(deg, cap.saturating_add(1))?;
        b.retain(|w| !w.is_empty());
        Some(b)
    }

    fn label(&self, a: &CobarWord) -> String {
        self.format_word(a)
    }
}

/// Explicit finite dg algebra; basis element `0` is the unit and the
/// augmentation is the coefficient of the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteDga {
    names: Vec<String>,
    degrees: Vec<usize>,
    mult: HashMap<(usize, usize), Vec<(BigInt, usize)>>,
    diff: Vec<Vec<(BigInt, usize)>>,
}

impl FiniteDga {
    /// `names[0]`/`degrees[0]` describe the unit (degree 0). `mult` lists
    /// the nonzero products of ideal elements, `diff` the differentials.
    pub fn new(
        names: Vec<String>,
        degrees: Vec<usize>,
        mult: Vec<((usize, usize), Vec<(i64, usize)>)>,
        diff: Vec<(usize, Vec<(i64, usize)>)>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 || degrees.len() != n || degrees[0] != 0 {
            return Err(Error::NotAugmented("basis must start with a degree-0 unit".into()));
        }
        let conv = |v: Vec<(i64, usize)>| v.into_iter().map(|(c, k)| (BigInt::from(c), k)).collect::<Vec<_>>();
        let mut table = HashMap::new();
        for ((a, b), v) in mult {
            if a == 0 || b == 0 || a >= n || b >= n {
                return Err(Error::InvalidParameter("products are given on ideal elements only".into()));
            }
            let v = conv(v);
            for (_, k) in &v {
                if *k == 0 {
                    return Err(Error::NotAugmented(format!("{} · {} has a unit component", names[a], names[b])));
                }
                if *k >= n || degrees[*k] != degrees[a] + degrees[b] {
                    return Err(Error::InvalidParameter(format!("{} · {} has the wrong degree", names[a], names[b])));
                }
            }
            table.insert((a, b), v);
        }
        let mut d = vec![Vec::new(); n];
        for (a, v) in diff {
            if a == 0 || a >= n {
                return Err(Error::InvalidParameter("the unit is a cycle".into()));
            }
            let v = conv(v);
            for (_, k) in &v {
                if *k == 0 {
                    return Err(Error::NotAugmented(format!("∂{} has a unit component", names[a])));
                }
                if *k >= n || degrees[*k] + 1 != degrees[a] {
                    return Err(Error::InvalidParameter(format!("∂{} has the wrong degree", names[a])));
                }
            }
            d[a] = v;
        }
        let alg = Self { names, degrees, mult: table, diff: d };
        alg.check_axioms()?;
        Ok(alg)
    }

    /// The ground ring `Z`.
    pub fn ground() -> Self {
        Self::new(vec!["1".into()], vec![0], vec![], vec![]).expect("ground ring")
    }

    /// Exterior algebra on one generator `x` of degree `deg`, zero
    /// differential.
    pub fn exterior(deg: usize) -> Self {
        Self::new(vec!["1".into(), "x".into()], vec![0, deg], vec![], vec![]).expect("exterior algebra")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    fn combine(terms: impl IntoIterator<Item = (BigInt, usize)>) -> BTreeMap<usize, BigInt> {
        let mut m: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (c, k) in terms {
            *m.entry(k).or_default() += c;
        }
        m.retain(|_, v| !v.is_zero());
        m
    }

    fn mul_vec(&self, x: &BTreeMap<usize, BigInt>, y: &BTreeMap<usize, BigInt>) -> BTreeMap<usize, BigInt> {
        let mut out = Vec::new();
        for (a, ca) in x {
            for (b, cb) in y {
                for (c, k) in self.product(a, b) {
                    out.push((c * ca * cb, k));
                }
            }
        }
        Self::combine(out)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.dim();
        let single = |k: usize| Self::combine([(BigInt::one(), k)]);
        for a in 1..n {
            let dd = Self::combine(self.diff[a].iter().flat_map(|(c, k)| self.diff[*k].iter().map(move |(c2, k2)| (c * c2, *k2))));
            if !dd.is_empty() {
                return Err(Error::InvalidParameter(format!("∂² ≠ 0 on {}", self.names[a])));
            }
            for b in 1..n {
                for c in 1..n {
                    let l = self.mul_vec(&self.mul_vec(&single(a), &single(b)), &single(c));
                    let r = self.mul_vec(&single(a), &self.mul_vec(&single(b), &single(c)));
                    if l != r {
                        return Err(Error::InvalidParameter("product is not associative".into()));
                    }
                }
                // ∂(ab) = ∂a·b + (-1)^{|a|} a·∂b
                let ab = self.mul_vec(&single(a), &single(b));
                let lhs = Self::combine(ab.iter().flat_map(|(k, c)| self.diff[*k].iter().map(move |(c2, k2)| (c * c2, *k2))));
                let da = Self::combine(self.diff[a].clone());
                let db = Self::combine(self.diff[b].clone());
                let mut rhs: Vec<(BigInt, usize)> = self.mul_vec(&da, &single(b)).into_iter().map(|(k, c)| (c, k)).collect();
                let s = if self.degrees[a] % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                rhs.extend(self.mul_vec(&single(a), &db).into_iter().map(|(k, c)| (c * &s, k)));
                if lhs != Self::combine(rhs) {
                    return Err(Error::InvalidParameter("Leibniz rule fails".into()));
                }
            }
        }
        Ok(())
    }
}

impl AugmentedAlgebra for FiniteDga {
    type Key = usize;

    fn degree(&self, a: &usize) -> usize {
        self.degrees[*a]
    }

    fn differential(&self, a: &usize) -> Vec<(BigInt, usize)> {
        self.diff[*a].clone()
    }

    fn product(&self, a: &usize, b: &usize) -> Vec<(BigInt, usize)> {
        self.mult.get(&(*a, *b)).cloned().unwrap_or_default()
    }

    fn in_window(&self, a: &usize) -> bool {
        *a >= 1 && *a < self.dim()
    }

    fn ideal_basis(&self, deg: usize, cap: usize) -> Option<Vec<usize>> {
        let b: Vec<usize> = (1..self.dim()).filter(|&k| self.degrees[k] == deg).collect();
        (b.len() <= cap).then_some(b)
    }

    fn label(&self, a: &usize) -> String {
        self.names[*a].clone()
    }
}

/// Linear combination of bar words.
pub type BarElement<K> = BTreeMap<Vec<K>, BigInt>;

fn add_term<K: Ord + Clone>(e: &mut BarElement<K>, w: Vec<K>, c: &BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = e.entry(w.clone()).or_default();
    *slot += c;
    if slot.is_zero() {
        e.remove(&w);
    }
}

/// Offset `c` in `ε_i = |a₁| + … + |a_i| - i + c`, degrees taken in `A`.
pub const PRINTED_EPSILON_OFFSET: i64 = 1;

fn parity_sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `D_BA = -d₁ + d₂` on an algebra, with the sign offset fixed.
pub struct Bar<'a, A: AugmentedAlgebra> {
    pub algebra: &'a A,
    pub epsilon_offset: i64,
}

impl<'a, A: AugmentedAlgebra> Bar<'a, A> {
    pub fn new(algebra: &'a A) -> Self {
        Self { algebra, epsilon_offset: PRINTED_EPSILON_OFFSET }
    }

    pub fn with_offset(algebra: &'a A, epsilon_offset: i64) -> Self {
        Self { algebra, epsilon_offset }
    }

    /// `ε_i` for the prefix `a₁ … a_i`.
    pub fn epsilon(&self, w: &[A::Key], i: usize) -> i64 {
        let s: usize = w[..i].iter().map(|a| self.algebra.degree(a)).sum();
        s as i64 - i as i64 + self.epsilon_offset
    }

    /// Total degree `Σ (|a_i| + 1)`.
    pub fn degree(&self, w: &[A::Key]) -> usize {
        w.iter().map(|a| self.algebra.degree(a) + 1).sum()
    }

    pub fn d1(&self, w: &[A::Key]) -> BarElement<A::Key> {
        let mut out = BTreeMap::new();
        for i in 0..w.len() {
            let s = parity_sign(self.epsilon(w, i));
            for (c, da) in self.algebra.differential(&w[i]) {
                let mut word = w.to_vec();
                word[i] = da;
                add_term(&mut out, word, &(c * &s));
            }
        }
        out
    }

    pub fn d2(&self, w: &[A::Key]) -> BarElement<A::Key> {
        let mut out = BTreeMap::new();
        for i in 1..w.len() {
            let s = parity_sign(self.epsilon(w, i));
            for (c, ab) in self.algebra.product(&w[i - 1], &w[i]) {
                let mut word = w[..i - 1].to_vec();
                word.push(ab);
                word.extend_from_slice(&w[i + 1..]);
                add_term(&mut out, word, &(c * &s));
            }
        }
        out
    }

    pub fn differential_word(&self, w: &[A::Key]) -> BarElement<A::Key> {
        let mut out = self.d2(w);
        for (word, c) in self.d1(w) {
            add_term(&mut out, word, &-c);
        }
        out
    }

    pub fn differential(&self, x: &BarElement<A::Key>) -> BarElement<A::Key> {
        let mut out = BTreeMap::new();
        for (w, c) in x {
            for (w2, c2) in self.differential_word(w) {
                add_term(&mut out, w2, &(c * c2));
            }
        }
        out
    }

    /// Deconcatenation coproduct, including the two unit terms.
    pub fn coproduct(&self, w: &[A::Key]) -> Vec<(Vec<A::Key>, Vec<A::Key>)> {
        (0..=w.len()).map(|i| (w[..i].to_vec(), w[i..].to_vec())).collect()
    }

    pub fn format_word(&self, w: &[A::Key]) -> String {
        let inner: Vec<String> = w.iter().map(|a| self.algebra.label(a)).collect();
        format!("{{{}}}", inner.join("|"))
    }
}

/// Left module over an augmented algebra, concentrated in degree zero.
pub trait BarModule<A: AugmentedAlgebra> {
    fn rank(&self) -> usize;
    /// Matrix of `a`, or `None` when `a` acts by zero.
    fn act(&self, a: &A::Key) -> Option<IntMatrix>;
}

/// `Z^rank` on which the augmentation ideal acts by zero.
pub struct AugmentationModule(pub usize);

impl<A: AugmentedAlgebra> BarModule<A> for AugmentationModule {
    fn rank(&self) -> usize {
        self.0
    }

    fn act(&self, _: &A::Key) -> Option<IntMatrix> {
        None
    }
}

/// A π₁-module seen as an `ΩC`-module through `ψ`: a degree-zero word
/// `[e₁|…|e_k]` acts by `(ρ(g₁) - 1)⋯(ρ(g_k) - 1)`.
pub struct CobarModule<'a> {
    pub cobar: &'a Cobar,
    pub module: &'a PiModule,
}

impl BarModule<Cobar> for CobarModule<'_> {
    fn rank(&self) -> usize {
        self.module.rank()
    }

    fn act(&self, a: &CobarWord) -> Option<IntMatrix> {
        if self.cobar.degree(a) > 0 {
            return None;
        }
        let id = IntMatrix::identity(self.module.rank());
        let edges = self.cobar.generators_of_dim(1);
        let mut m = id.clone();
        for &g in a {
            let e = (g - edges.start) as usize;
            m = m.mul(&self.module.action(e).sub(&id).ok()?).ok()?;
        }
        Some(m)
    }
}

/// Element of `B(A, M)`: bar word with a module basis index.
pub type OneSidedElement<K> = BTreeMap<(Vec<K>, usize), BigInt>;

/// `D_{B(A,M)} = D_BA ⊗ id + d`, `d({a₁|…|a_n} ⊗ x) = (-1)^{ε_n} {a₁|…|a_{n-1}} ⊗ a_n·x`.
pub fn one_sided_differential<A: AugmentedAlgebra, M: BarModule<A>>(
    bar: &Bar<'_, A>,
    module: &M,
    w: &[A::Key],
    k: usize,
) -> OneSidedElement<A::Key> {
    let mut out: OneSidedElement<A::Key> = BTreeMap::new();
    let mut push = |key: (Vec<A::Key>, usize), c: BigInt| {
        let slot = out.entry(key.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            out.remove(&key);
        }
    };
    for (w2, c) in bar.differential_word(w) {
        push((w2, k), c);
    }
    if let Some(last) = w.last() {
        if let Some(m) = module.act(last) {
            let s = parity_sign(bar.epsilon(w, w.len()));
            let rest = w[..w.len() - 1].to_vec();
            for (i, j, v) in m.entries() {
                if j == k {
                    push((rest.clone(), i), v * &s);
                }
            }
        }
    }
    out
}

/// Enumeration bounds for a truncated bar complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarWindow {
    /// Maximal number of letters in a bar word.
    pub max_words: usize,
    /// Maximal total degree.
    pub max_degree: usize,
    /// Maximal number of basis words per degree.
    pub cap: usize,
}

/// Truncated `B(A, M)` with closure flags.
#[derive(Clone, Debug)]
pub struct BarComplex {
    /// Boundaries restricted to the window; terms leaving it are dropped.
    pub complex: ChainComplex,
    /// `closed[d]`: every boundary term of a degree-`d` basis element stays
    /// inside the window.
    pub closed: Vec<bool>,
    pub labels: Vec<Vec<String>>,
}

impl BarComplex {
    /// Homology where both adjacent boundaries are closed, `None` elsewhere.
    pub fn reported_homology(&self) -> Vec<Option<FGAbelianGroup>> {
        let top = self.closed.len();
        (0..top)
            .map(|d| {
                let ok = self.closed[d] && d + 1 < top && self.closed[d + 1];
                if ok {
                    homology(&self.complex, d).ok()
                } else {
                    None
                }
            })
            .collect()
    }

    /// `∂∂ = 0` in every degree whose boundary and the one below are closed.
    pub fn square_zero_where_closed(&self) -> bool {
        (2..self.closed.len()).all(|d| {
            !(self.closed[d] && self.closed[d - 1])
                || self.complex.boundary(d - 1).mul(&self.complex.boundary(d)).map_or(false, |m| m.is_zero())
        })
    }
}

fn bar_basis<A: AugmentedAlgebra>(alg: &A, window: &BarWindow) -> Result<Vec<Vec<Vec<A::Key>>>> {
    let too_large = || Error::InvalidParameter("bar window exceeds the basis cap".into());
    let mut letters: Vec<Vec<A::Key>> = Vec::new();
    for deg in 0..window.max_degree {
        letters.push(alg.ideal_basis(deg, window.cap).ok_or_else(too_large)?);
    }
    let mut by_degree: Vec<Vec<Vec<A::Key>>> = vec![Vec::new(); window.max_degree + 1];
    by_degree[0].push(Vec::new());
    // words of k letters, grown one letter at a time
    let mut frontier: Vec<(Vec<A::Key>, usize)> = vec![(Vec::new(), 0)];
    for _ in 0..window.max_words {
        let mut next = Vec::new();
        for (w, d) in &frontier {
            for (deg, ls) in letters.iter().enumerate() {
                let nd = d + deg + 1;
                if nd > window.max_degree {
                    continue;
                }
                for a in ls {
                    let mut w2 = w.clone();
                    w2.push(a.clone());
                    by_degree[nd].push(w2.clone());
                    if by_degree[nd].len() > window.cap {
                        return Err(too_large());
                    }
                    next.push((w2, nd));
                }
            }
        }
        frontier = next;
    }
    for b in &mut by_degree {
        b.sort();
    }
    Ok(by_degree)
}

/// Truncated one-sided bar construction `B(A, M)`.
pub fn one_sided_bar<A: AugmentedAlgebra, M: BarModule<A>>(
    bar: &Bar<'_, A>,
    module: &M,
    window: &BarWindow,
) -> Result<BarComplex> {
    let basis = bar_basis(bar.algebra, window)?;
    let r = module.rank();
    let index: Vec<HashMap<&Vec<A::Key>, usize>> =
        basis.iter().map(|b| b.iter().enumerate().map(|(i, w)| (w, i)).collect()).collect();
    let ranks: Vec<usize> = basis.iter().map(|b| b.len() * r).collect();
    let mut boundaries = vec![IntMatrix::zeros(0, ranks[0])];
    let mut closed = vec![true];
    for d in 1..basis.len() {
        let mut m = IntMatrix::zeros(ranks[d - 1], ranks[d]);
        let mut ok = true;
        for (j, w) in basis[d].iter().enumerate() {
            for k in 0..r {
                for ((w2, i), c) in one_sided_differential(bar, module, w, k) {
                    match index[d - 1].get(&w2) {
                        Some(&row) => m.add_to(row * r + i, j * r + k, &c),
                        None => ok = false,
                    }
                }
            }
        }
        boundaries.push(m);
        closed.push(ok);
    }
    let labels = basis.iter().map(|b| b.iter().map(|w| bar.format_word(w)).collect()).collect();
    Ok(BarComplex { complex: ChainComplex::new_unchecked(ranks, boundaries)?, closed, labels })
}

/// Truncated `BA`, i.e. `B(A, Z)` with the augmentation action.
pub fn bar<A: AugmentedAlgebra>(bar: &Bar<'_, A>, window: &BarWindow) -> Result<BarComplex> {
    one_sided_bar(bar, &AugmentationModule(1), window)
}

/// Sign of `ρ` on an `n`-simplex: `(-1)^{n·c}` for the offset `c`.
pub fn rho_sign(n: usize, epsilon_offset: i64) -> BigInt {
    parity_sign(n as i64 * epsilon_offset)
}

/// `ρ(σ) = ± Σ {[σ₁]|…|[σ_k]}` over the decompositions of `σ` into
/// consecutive faces of positive dimension, read off the iterated `Δ`.
pub fn rho(c: &DgCoalgebra, cb: &Cobar, dim: usize, idx: usize, epsilon_offset: i64) -> BarElement<CobarWord> {
    let mut out = BTreeMap::new();
    if dim == 0 {
        out.insert(Vec::new(), BigInt::one());
        return out;
    }
    for (w, v) in rho_unsigned(c, cb, dim, idx) {
        add_term(&mut out, w, &(v * rho_sign(dim, epsilon_offset)));
    }
    out
}

fn rho_unsigned(c: &DgCoalgebra, cb: &Cobar, dim: usize, idx: usize) -> BarElement<CobarWord> {
    let mut out = BTreeMap::new();
    out.insert(vec![vec![cb.generator_id(dim, idx)]], BigInt::one());
    for p in 1..dim {
        let q = dim - p;
        let rq = c.rank(q);
        let Some(d) = c.delta_ref(p, q) else { continue };
        for (row, col, v) in d.entries() {
            if col != idx {
                continue;
            }
            let head = vec![cb.generator_id(p, row / rq)];
            for (tail, v2) in rho_unsigned(c, cb, q, row % rq) {
                let mut w = vec![head.clone()];
                w.extend(tail);
                add_term(&mut out, w, &(v * v2));
            }
        }
    }
    out
}

/// Checks `D_BA ρ(σ) = ρ(∂σ)` on every basis simplex; returns the failures
/// as `(dim, idx)`.
pub fn rho_chain_map_failures(c: &DgCoalgebra, cb: &Cobar, epsilon_offset: i64) -> Vec<(usize, usize)> {
    let b = Bar::with_offset(cb, epsilon_offset);
    let mut fails = Vec::new();
    for n in 1..=c.top_degree() {
        let bd = c.boundary(n);
        for idx in 0..c.rank(n) {
            let lhs = b.differential(&rho(c, cb, n, idx, epsilon_offset));
            let mut rhs = BTreeMap::new();
            for (row, col, v) in bd.entries() {
                if col == idx {
                    for (w, v2) in rho(c, cb, n - 1, row, epsilon_offset) {
                        add_term(&mut rhs, w, &(v * v2));
                    }
                }
            }
            if lhs != rhs {
                fails.push((n, idx));
            }
        }
    }
    fails
}

/// Checks that `ρ ⊗ id: C ⊗_τ M → B(ΩC, M)` commutes with the differentials,
/// given the twisted complex of `C` and `M`.
pub fn rho_tensor_failures(
    c: &DgCoalgebra,
    cb: &Cobar,
    twisted: &ChainComplex,
    module: &PiModule,
    epsilon_offset: i64,
) -> Vec<(usize, usize, usize)> {
    let b = Bar::with_offset(cb, epsilon_offset);
    let action = CobarModule { cobar: cb, module };
    let r = module.rank();
    let mut fails = Vec::new();
    for n in 1..=c.top_degree() {
        let bd = twisted.boundary(n);
        for idx in 0..c.rank(n) {
            for k in 0..r {
                let mut lhs: OneSidedElement<CobarWord> = BTreeMap::new();
                for (w, v) in rho(c, cb, n, idx, epsilon_offset) {
                    for (key, v2) in one_sided_differential(&b, &action, &w, k) {
                        *lhs.entry(key).or_default() += &v * v2;
                    }
                }
                lhs.retain(|_, v| !v.is_zero());
                let mut rhs: OneSidedElement<CobarWord> = BTreeMap::new();
                for (row, col, v) in bd.entries() {
                    if col != idx * r + k {
                        continue;
                    }
                    for (w, v2) in rho(c, cb, n - 1, row / r, epsilon_offset) {
                        *rhs.entry((w, row % r)).or_default() += v * v2;
                    }
                }
                rhs.retain(|_, v| !v.is_zero());
                if lhs != rhs {
                    fails.push((n, idx, k));
                }
            }
        }
    }
    fails
}

/// `D_BA² = 0` on every window word of the given algebra; returns the
/// failing words.
pub fn bar_square_failures<A: AugmentedAlgebra>(bar: &Bar<'_, A>, window: &BarWindow) -> Result<Vec<String>> {
    let basis = bar_basis(bar.algebra, window)?;
    let mut out = Vec::new();
    for words in &basis {
        for w in words {
            if !bar.differential(&bar.differential_word(w)).is_empty() {
                out.push(bar.format_word(w));
            }
        }
    }
    Ok(out)
}
