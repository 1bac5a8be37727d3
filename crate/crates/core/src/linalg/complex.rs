use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::abelian::FGAbelianGroup;
use super::matrix::IntMatrix;
use super::snf::{elementary_divisors, smith_normal_form};
use crate::error::{Error, Result};

/// Bounded chain complex of finitely generated free abelian groups in degrees
/// `0..ranks.len()`. `boundaries[n]` is the matrix of `∂_n: C_n → C_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Validates shapes and `∂∂ = 0`.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        let c = Self::new_unchecked(ranks, boundaries)?;
        c.check_square_zero()?;
        Ok(c)
    }

    /// Validates shapes only.
    pub fn new_unchecked(ranks: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if ranks.len() != boundaries.len() {
            return Err(Error::Shape(format!(
                "{} ranks but {} boundary matrices",
                ranks.len(),
                boundaries.len()
            )));
        }
        for (n, b) in boundaries.iter().enumerate() {
            let below = if n == 0 { 0 } else { ranks[n - 1] };
            if b.rows() != below || b.cols() != ranks[n] {
                return Err(Error::Shape(format!(
                    "∂_{n} is {}x{}, expected {below}x{}",
                    b.rows(),
                    b.cols(),
                    ranks[n]
                )));
            }
        }
        Ok(Self { ranks, boundaries })
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `∂_n`, zero outside the stored range.
    pub fn boundary(&self, n: usize) -> IntMatrix {
        match self.boundaries.get(n) {
            Some(b) => b.clone(),
            None => IntMatrix::zeros(if n == 0 { 0 } else { self.rank(n - 1) }, self.rank(n)),
        }
    }

    /// First degree `n` with `∂_{n-1} ∂_n ≠ 0`.
    pub fn check_square_zero(&self) -> Result<()> {
        for n in 2..self.boundaries.len() {
            if !self.boundaries[n - 1].mul(&self.boundaries[n])?.is_zero() {
                return Err(Error::NotAComplex(n));
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks.iter().enumerate().map(|(n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    /// Homology in every degree `0..=up_to`, computed concurrently.
    pub fn homology_up_to(&self, up_to: usize) -> Vec<FGAbelianGroup> {
        (0..=up_to).into_par_iter().map(|n| integral_homology(self, n)).collect()
    }
}

/// Coefficient ring for homology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Coefficients {
    #[default]
    Integers,
    Rationals,
    /// `Z/m` with `m ≥ 2`.
    Modular(u64),
}

impl Coefficients {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "z" | "Z" => Ok(Self::Integers),
            "q" | "Q" => Ok(Self::Rationals),
            _ => {
                let m = s
                    .strip_prefix("zmod:")
                    .and_then(|m| m.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown coefficient ring `{s}`")))?;
                if m < 2 {
                    return Err(Error::InvalidParameter(format!("modulus {m} < 2")));
                }
                Ok(Self::Modular(m))
            }
        }
    }

    pub fn symbol(&self) -> String {
        match self {
            Self::Integers => "ℤ".into(),
            Self::Rationals => "ℚ".into(),
            Self::Modular(m) => format!("ℤ/{m}"),
        }
    }
}

fn integral_homology(c: &ChainComplex, n: usize) -> FGAbelianGroup {
    let dn = c.boundary(n);
    let dn1 = c.boundary(n + 1);
    let rank_n = if n == 0 { 0 } else { elementary_divisors(&dn).rank };
    let out = elementary_divisors(&dn1);
    let free = c.rank(n) - rank_n - out.rank;
    FGAbelianGroup::from_cyclic_orders(free, out.torsion())
}

/// `H_n(C; Z)` as free rank plus invariant factors.
pub fn homology(c: &ChainComplex, n: usize) -> Result<FGAbelianGroup> {
    if n >= 1 && n + 1 < c.boundaries.len() && !c.boundaries[n].mul(&c.boundaries[n + 1])?.is_zero() {
        return Err(Error::NotAComplex(n + 1));
    }
    if n >= 2 && n < c.boundaries.len() && !c.boundaries[n - 1].mul(&c.boundaries[n])?.is_zero() {
        return Err(Error::NotAComplex(n));
    }
    Ok(integral_homology(c, n))
}

/// Homology with coefficients, via the universal coefficient theorem.
///
/// Over `Q` the result is reported as a free group whose rank is the
/// dimension. Over `Z/m` the result has no free part.
pub fn homology_with(c: &ChainComplex, n: usize, coeffs: Coefficients) -> Result<FGAbelianGroup> {
    let h = homology(c, n)?;
    match coeffs {
        Coefficients::Integers => Ok(h),
        Coefficients::Rationals => Ok(FGAbelianGroup::free(h.free_rank)),
        Coefficients::Modular(m) => {
            let m = BigInt::from(m);
            let mut orders: Vec<BigInt> = vec![m.clone(); h.free_rank];
            orders.extend(h.torsion.iter().map(|d| d.gcd(&m)));
            if n > 0 {
                let below = homology(c, n - 1)?;
                orders.extend(below.torsion.iter().map(|d| d.gcd(&m)));
            }
            Ok(FGAbelianGroup::from_cyclic_orders(0, orders))
        }
    }
}

/// Chain map between two complexes, one matrix per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    components: Vec<IntMatrix>,
}

impl ChainMap {
    /// Validates shapes and `∂' f = f ∂` in every degree.
    pub fn new(source: ChainComplex, target: ChainComplex, components: Vec<IntMatrix>) -> Result<Self> {
        let f = Self { source, target, components };
        let top = f.source.top_degree().max(f.target.top_degree());
        for n in 0..=top {
            let m = f.component(n);
            if m.rows() != f.target.rank(n) || m.cols() != f.source.rank(n) {
                return Err(Error::Shape(format!("chain map component {n} has wrong shape")));
            }
        }
        for n in 1..=top {
            let lhs = f.target.boundary(n).mul(&f.component(n))?;
            let rhs = f.component(n - 1).mul(&f.source.boundary(n))?;
            if lhs != rhs {
                return Err(Error::NotAChainMap(n));
            }
        }
        Ok(f)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        let components = c.ranks().iter().map(|&r| IntMatrix::identity(r)).collect();
        Self { source: c.clone(), target: c.clone(), components }
    }

    pub fn component(&self, n: usize) -> IntMatrix {
        self.components
            .get(n)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.target.rank(n), self.source.rank(n)))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ChainMap) -> Result<ChainMap> {
        if other.target != self.source {
            return Err(Error::Shape("composable maps must share the middle complex".into()));
        }
        let top = other.source.top_degree().max(self.target.top_degree());
        let comps = (0..=top).map(|n| self.component(n).mul(&other.component(n))).collect::<Result<_>>()?;
        ChainMap::new(other.source.clone(), self.target.clone(), comps)
    }
}

/// Mapping cone of `f`: `Cone_n = C'_n ⊕ C_{n-1}` with
/// `∂(c', c) = (∂'c' + f c, -∂c)`.
pub fn cone(f: &ChainMap) -> Result<ChainComplex> {
    let top = f.source.top_degree().max(f.target.top_degree()) + 1;
    let ranks: Vec<usize> =
        (0..=top).map(|n| f.target.rank(n) + if n == 0 { 0 } else { f.source.rank(n - 1) }).collect();
    let mut boundaries = Vec::with_capacity(ranks.len());
    boundaries.push(IntMatrix::zeros(0, ranks[0]));
    for n in 1..=top {
        let mut b = IntMatrix::zeros(ranks[n - 1], ranks[n]);
        b.place(0, 0, &f.target.boundary(n));
        b.place(0, f.target.rank(n), &f.component(n - 1));
        if n >= 2 {
            b.place(f.target.rank(n - 1), f.target.rank(n), &f.source.boundary(n - 1).neg());
        }
        boundaries.push(b);
    }
    ChainComplex::new(ranks, boundaries)
}

/// Explicit presentation of `H_n(C)` with generating cycles and a coordinate
/// function for arbitrary cycles.
#[derive(Clone, Debug)]
pub struct HomologyPresentation {
    pub degree: usize,
    pub group: FGAbelianGroup,
    /// Order of each nontrivial component; `0` means infinite cyclic.
    pub orders: Vec<BigInt>,
    /// Representative cycles in the basis of `C_n`, one per component.
    pub generators: Vec<Vec<BigInt>>,
    kernel_offset: usize,
    v_inv: IntMatrix,
    p: IntMatrix,
    components: Vec<usize>,
}

impl HomologyPresentation {
    pub fn new(c: &ChainComplex, n: usize) -> Result<Self> {
        homology(c, n)?;
        let dn = c.boundary(n);
        let s1 = smith_normal_form(&dn);
        let r = s1.rank();
        let k = c.rank(n) - r;
        let image = s1.v_inv.mul(&c.boundary(n + 1))?;
        let mut rel = IntMatrix::zeros(k, image.cols());
        for (i, j, v) in image.entries() {
            debug_assert!(i >= r, "boundaries must be cycles");
            if i >= r {
                rel.set(i - r, j, v.clone());
            }
        }
        let s2 = smith_normal_form(&rel);
        let mut orders = Vec::new();
        let mut components = Vec::new();
        let mut generators = Vec::new();
        for i in 0..k {
            let d = s2.diagonal.get(i).cloned().unwrap_or_else(BigInt::zero);
            if d.is_one() {
                continue;
            }
            // cycle = K · P^{-1} e_i, with K the trailing columns of V
            let zcoords = s2.u_inv.column(i);
            let mut full = vec![BigInt::zero(); c.rank(n)];
            full[r..].clone_from_slice(&zcoords);
            generators.push(s1.v.apply(&full));
            orders.push(d);
            components.push(i);
        }
        let group = FGAbelianGroup::from_cyclic_orders(0, orders.iter().cloned());
        Ok(Self { degree: n, group, orders, generators, kernel_offset: r, v_inv: s1.v_inv, p: s2.u, components })
    }

    /// Coordinates of a cycle with respect to the nontrivial components,
    /// reduced modulo finite orders.
    pub fn coordinates(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let y = self.v_inv.apply(cycle);
        let z = y[self.kernel_offset..].to_vec();
        let pz = self.p.apply(&z);
        self.components
            .iter()
            .zip(&self.orders)
            .map(|(&i, d)| if d.is_zero() { pz[i].clone() } else { pz[i].mod_floor(d) })
            .collect()
    }
}

/// Induced map on `H_n` in the coordinates of two homology presentations.
#[derive(Clone, Debug)]
pub struct HomologyMap {
    pub degree: usize,
    pub source: FGAbelianGroup,
    pub target: FGAbelianGroup,
    pub matrix: IntMatrix,
    pub is_iso: bool,
}

pub fn induced_map_on_homology(f: &ChainMap, n: usize) -> Result<HomologyMap> {
    let src = HomologyPresentation::new(&f.source, n)?;
    let tgt = HomologyPresentation::new(&f.target, n)?;
    let fn_ = f.component(n);
    let mut matrix = IntMatrix::zeros(tgt.orders.len(), src.orders.len());
    for (j, z) in src.generators.iter().enumerate() {
        let image = fn_.apply(z);
        for (i, v) in tgt.coordinates(&image).into_iter().enumerate() {
            matrix.set(i, j, v);
        }
    }
    let is_iso = src.group == tgt.group && surjective(&matrix, &tgt.orders)?;
    Ok(HomologyMap { degree: n, source: src.group, target: tgt.group, matrix, is_iso })
}

/// Whether `matrix` maps onto `⊕ Z/orders[i]`.
fn surjective(matrix: &IntMatrix, orders: &[BigInt]) -> Result<bool> {
    let rows = matrix.rows();
    let finite: Vec<(usize, &BigInt)> = orders.iter().enumerate().filter(|(_, d)| !d.is_zero()).collect();
    let mut rel = IntMatrix::zeros(rows, finite.len());
    for (col, (row, d)) in finite.into_iter().enumerate() {
        rel.set(row, col, d.clone());
    }
    let full = matrix.hstack(&rel)?;
    let ed = elementary_divisors(&full);
    Ok(ed.rank == rows && ed.invariant_factors.iter().all(|d| d.abs().is_one()))
}
