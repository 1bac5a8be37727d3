//! Normalized chains with the Alexander–Whitney coproduct.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{ChainComplex, ChainMap, IntMatrix};
use crate::simplicial::{Issue, SRef, SimplicialMap, SimplicialSetData, ValidationReport};

/// Chain complex with coproduct components `Δ_{p,q}: C_{p+q} → C_p ⊗ C_q`.
/// The tensor basis is left-major: `e_i ⊗ e_j` sits at `i * rank(q) + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgCoalgebra {
    complex: ChainComplex,
    names: Vec<Vec<String>>,
    /// `coproduct[n][p] = Δ_{p, n-p}`
    coproduct: Vec<Vec<IntMatrix>>,
}

impl DgCoalgebra {
    /// Checks shapes only; use [`coalgebra_axioms_check`] for the identities.
    pub fn from_parts(complex: ChainComplex, names: Vec<Vec<String>>, coproduct: Vec<Vec<IntMatrix>>) -> Result<Self> {
        let top = complex.top_degree();
        if names.len() != top + 1 || coproduct.len() != top + 1 {
            return Err(Error::Shape("names and coproduct must cover every degree".into()));
        }
        for n in 0..=top {
            if names[n].len() != complex.rank(n) || coproduct[n].len() != n + 1 {
                return Err(Error::Shape(format!("degree {n} data has the wrong length")));
            }
            for (p, m) in coproduct[n].iter().enumerate() {
                if m.cols() != complex.rank(n) || m.rows() != complex.rank(p) * complex.rank(n - p) {
                    return Err(Error::Shape(format!("Δ_{{{p},{}}} has the wrong shape", n - p)));
                }
            }
        }
        Ok(Self { complex, names, coproduct })
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn top_degree(&self) -> usize {
        self.complex.top_degree()
    }

    pub fn rank(&self, n: usize) -> usize {
        self.complex.rank(n)
    }

    pub fn names(&self, n: usize) -> &[String] {
        self.names.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn boundary(&self, n: usize) -> IntMatrix {
        self.complex.boundary(n)
    }

    /// `Δ_{p,q}`, zero outside the stored range.
    pub fn delta(&self, p: usize, q: usize) -> IntMatrix {
        match self.coproduct.get(p + q).and_then(|v| v.get(p)) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(self.rank(p) * self.rank(q), self.rank(p + q)),
        }
    }

    pub(crate) fn delta_ref(&self, p: usize, q: usize) -> Option<&IntMatrix> {
        self.coproduct.get(p + q).and_then(|v| v.get(p))
    }

    pub fn is_connected(&self) -> bool {
        self.rank(0) == 1
    }

    /// Replaces one coproduct component; the caller is responsible for the
    /// axioms.
    pub fn with_delta(mut self, p: usize, q: usize, m: IntMatrix) -> Result<Self> {
        let slot = self
            .coproduct
            .get_mut(p + q)
            .and_then(|v| v.get_mut(p))
            .ok_or_else(|| Error::Shape(format!("no component Δ_{{{p},{q}}}")))?;
        if slot.rows() != m.rows() || slot.cols() != m.cols() {
            return Err(Error::Shape(format!("Δ_{{{p},{q}}} has the wrong shape")));
        }
        *slot = m;
        Ok(self)
    }
}

fn sign(i: usize) -> BigInt {
    if i % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `∂σ = Σ (-1)^i d_i σ`, degenerate faces dropped. Works for any valid set.
pub fn chain_complex(s: &SimplicialSetData) -> Result<ChainComplex> {
    let top = s.top_dim();
    let ranks = s.counts();
    let mut boundaries = vec![IntMatrix::zeros(0, ranks[0])];
    for n in 1..=top {
        let mut b = IntMatrix::zeros(ranks[n - 1], ranks[n]);
        for key in s.keys(n) {
            for (i, f) in s.stored_faces(key).iter().enumerate() {
                if let Some(t) = f.as_nondegenerate() {
                    b.add_to(t.idx, key.idx, &sign(i));
                }
            }
        }
        boundaries.push(b);
    }
    ChainComplex::new(ranks, boundaries)
}

fn check_valid(s: &SimplicialSetData) -> Result<()> {
    match s.validate().issues.first() {
        Some(issue) => Err(Error::InvalidSimplicialSet(format!("{issue:?}"))),
        None => Ok(()),
    }
}

/// Normalized chains `C_*(S)` with `Δ_{p,q}(σ) = f_p σ ⊗ l_q σ`, terms with a
/// degenerate factor dropped.
pub fn normalized_chains(s: &SimplicialSetData) -> Result<DgCoalgebra> {
    check_valid(s)?;
    let complex = chain_complex(s)?;
    let top = s.top_dim();
    let mut coproduct = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut row = Vec::with_capacity(n + 1);
        for p in 0..=n {
            let q = n - p;
            let rq = s.count(q);
            let mut m = IntMatrix::zeros(s.count(p) * rq, s.count(n));
            for key in s.keys(n) {
                let r = SRef::nondegenerate(key);
                if let (Some(a), Some(b)) = (s.front(&r, p).as_nondegenerate(), s.back(&r, q).as_nondegenerate()) {
                    m.set(a.idx * rq + b.idx, key.idx, BigInt::one());
                }
            }
            row.push(m);
        }
        coproduct.push(row);
    }
    let names = (0..=top).map(|n| s.names(n).to_vec()).collect();
    DgCoalgebra::from_parts(complex, names, coproduct)
}

/// `σ ↦ f(σ)` when nondegenerate, else `0`.
pub fn induced_chain_map(f: &SimplicialMap) -> Result<ChainMap> {
    f.validate()?;
    let source = chain_complex(f.source())?;
    let target = chain_complex(f.target())?;
    let top = f.source().top_dim().max(f.target().top_dim());
    let comps = (0..=top)
        .map(|n| {
            let mut m = IntMatrix::zeros(f.target().count(n), f.source().count(n));
            for key in f.source().keys(n) {
                if let Some(t) = f.image(key).as_nondegenerate() {
                    m.set(t.idx, key.idx, BigInt::one());
                }
            }
            m
        })
        .collect();
    ChainMap::new(source, target, comps)
}

/// Whether the chain map of `f` also commutes with every `Δ_{p,q}`.
pub fn commutes_with_coproduct(f: &SimplicialMap, map: &ChainMap) -> Result<bool> {
    let src = normalized_chains(f.source())?;
    let tgt = normalized_chains(f.target())?;
    let top = src.top_degree();
    for n in 0..=top {
        for p in 0..=n {
            let q = n - p;
            let lhs = tgt.delta(p, q).mul(&map.component(n))?;
            let rhs = map.component(p).kron(&map.component(q)).mul(&src.delta(p, q))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn counit_row(c: &DgCoalgebra) -> IntMatrix {
    let r = c.rank(0);
    let mut m = IntMatrix::zeros(1, r);
    for j in 0..r {
        m.set(0, j, BigInt::one());
    }
    m
}

fn issue(check: &str, degrees: Vec<usize>) -> Issue {
    Issue::Coalgebra { check: check.into(), degrees }
}

/// Coassociativity per tridegree, both counit laws, Leibniz with the
/// Koszul sign `∂(x ⊗ y) = ∂x ⊗ y + (-1)^{|x|} x ⊗ ∂y`, and connectedness.
pub fn coalgebra_axioms_check(c: &DgCoalgebra) -> ValidationReport {
    let mut issues = Vec::new();
    let top = c.top_degree();
    if !c.is_connected() {
        issues.push(issue("connected", vec![0]));
    }
    let id = |n: usize| IntMatrix::identity(c.rank(n));
    let eps = counit_row(c);
    for n in 0..=top {
        // counit
        let left = eps.kron(&id(n)).mul(&c.delta(0, n));
        let right = id(n).kron(&eps).mul(&c.delta(n, 0));
        if left.map_or(true, |m| m != id(n)) {
            issues.push(issue("counit_left", vec![n]));
        }
        if right.map_or(true, |m| m != id(n)) {
            issues.push(issue("counit_right", vec![n]));
        }
        // coassociativity
        for p in 0..=n {
            for q in 0..=n - p {
                let r = n - p - q;
                let lhs = c.delta(p, q).kron(&id(r)).mul(&c.delta(p + q, r));
                let rhs = id(p).kron(&c.delta(q, r)).mul(&c.delta(p, q + r));
                let ok = matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b);
                if !ok {
                    issues.push(issue("coassociativity", vec![p, q, r]));
                }
            }
        }
        // Leibniz on C_n → ⊕_{p+q=n-1} C_p ⊗ C_q
        if n >= 1 {
            for p in 0..n {
                let q = n - 1 - p;
                let lhs = c.delta(p, q).mul(&c.boundary(n));
                let t1 = c.boundary(p + 1).kron(&id(q)).mul(&c.delta(p + 1, q));
                let t2 = id(p).kron(&c.boundary(q + 1)).mul(&c.delta(p, q + 1)).map(|m| m.scale(&sign(p)));
                let ok = match (lhs, t1, t2) {
                    (Ok(l), Ok(a), Ok(b)) => a.add(&b).map_or(false, |r| r == l),
                    _ => false,
                };
                if !ok {
                    issues.push(issue("leibniz", vec![p, q]));
                }
            }
        }
    }
    ValidationReport { issues }
}
