use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{DenseMatrix, IntMatrix};

/// Smith normal form `U · M · V = D` with the inverses of both transforms.
#[derive(Clone, Debug)]
pub struct Snf {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub diagonal: Vec<BigInt>,
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct Work {
    a: DenseMatrix,
    u: DenseMatrix,
    u_inv: DenseMatrix,
    v: DenseMatrix,
    v_inv: DenseMatrix,
}

impl Work {
    fn row_add(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_row_multiple(target, source, f);
        self.u.add_row_multiple(target, source, f);
        self.u_inv.add_col_multiple(source, target, &-f);
    }

    fn col_add(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_col_multiple(target, source, f);
        self.v.add_col_multiple(target, source, f);
        self.v_inv.add_row_multiple(source, target, &-f);
    }

    fn row_swap(&mut self, x: usize, y: usize) {
        if x != y {
            self.a.swap_rows(x, y);
            self.u.swap_rows(x, y);
            self.u_inv.swap_cols(x, y);
        }
    }

    fn col_swap(&mut self, x: usize, y: usize) {
        if x != y {
            self.a.swap_cols(x, y);
            self.v.swap_cols(x, y);
            self.v_inv.swap_rows(x, y);
        }
    }

    fn row_negate(&mut self, r: usize) {
        self.a.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }

    /// Minimal nonzero |entry| in the trailing block, ties broken by the
    /// smallest row + column population.
    fn pick_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let a = &self.a;
        let mut best: Option<(BigInt, usize, usize, usize)> = None;
        let row_pop: Vec<usize> =
            (0..a.rows).map(|i| (t..a.cols).filter(|&j| !a.data[i][j].is_zero()).count()).collect();
        let col_pop: Vec<usize> =
            (0..a.cols).map(|j| (t..a.rows).filter(|&i| !a.data[i][j].is_zero()).count()).collect();
        for i in t..a.rows {
            for j in t..a.cols {
                let x = &a.data[i][j];
                if x.is_zero() {
                    continue;
                }
                let abs = x.abs();
                let fill = row_pop[i] + col_pop[j];
                let better = match &best {
                    None => true,
                    Some((b, f, _, _)) => abs < *b || (abs == *b && fill < *f),
                };
                if better {
                    best = Some((abs, fill, i, j));
                }
            }
        }
        best.map(|(_, _, i, j)| (i, j))
    }
}

/// Dense Smith normal form tracking both unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.to_dense(),
        u: DenseMatrix::identity(r),
        u_inv: DenseMatrix::identity(r),
        v: DenseMatrix::identity(c),
        v_inv: DenseMatrix::identity(c),
    };
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = w.pick_pivot(t) else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if w.a.data[i][t].is_zero() {
                    continue;
                }
                let q = &w.a.data[i][t] / &w.a.data[t][t];
                w.row_add(i, t, &-q);
                dirty |= !w.a.data[i][t].is_zero();
            }
            for j in t + 1..c {
                if w.a.data[t][j].is_zero() {
                    continue;
                }
                let q = &w.a.data[t][j] / &w.a.data[t][t];
                w.col_add(j, t, &-q);
                dirty |= !w.a.data[t][j].is_zero();
            }
            if dirty {
                // a remainder is now smaller than the pivot; move it in
                let mut best: Option<(BigInt, usize, usize)> = None;
                for i in t..r {
                    let x = &w.a.data[i][t];
                    if !x.is_zero() && best.as_ref().map_or(true, |(b, _, _)| x.abs() < *b) {
                        best = Some((x.abs(), i, t));
                    }
                }
                for j in t..c {
                    let x = &w.a.data[t][j];
                    if !x.is_zero() && best.as_ref().map_or(true, |(b, _, _)| x.abs() < *b) {
                        best = Some((x.abs(), t, j));
                    }
                }
                let (_, bi, bj) = best.expect("pivot row/col cannot vanish");
                w.row_swap(t, bi);
                w.col_swap(t, bj);
                continue;
            }
            let pivot = w.a.data[t][t].clone();
            let offender = (t + 1..r).find(|&i| {
                (t + 1..c).any(|j| !w.a.data[i][j].is_zero() && !w.a.data[i][j].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => w.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a.data[t][t].is_negative() {
            w.row_negate(t);
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> =
        (0..r.min(c)).map(|i| w.a.data[i][i].clone()).take_while(|x| !x.is_zero()).collect();
    Snf {
        diagonal,
        d: w.a.to_sparse(),
        u: w.u.to_sparse(),
        v: w.v.to_sparse(),
        u_inv: w.u_inv.to_sparse(),
        v_inv: w.v_inv.to_sparse(),
    }
}

/// Rank and invariant factors (including units) of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisors {
    pub rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl Divisors {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Normalizes a list of positive diagonal entries into a divisibility chain.
pub(crate) fn diagonal_to_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for v in &mut d {
        *v = v.abs();
    }
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            if g != d[i] {
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d.sort();
    d
}

struct SparseElim {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
}

impl SparseElim {
    fn new(m: &IntMatrix) -> Self {
        let mut rows = vec![BTreeMap::new(); m.rows()];
        let mut cols = vec![BTreeSet::new(); m.cols()];
        for (i, j, v) in m.entries() {
            rows[i].insert(j, v.clone());
            cols[j].insert(i);
        }
        Self { rows, cols }
    }

    /// `row[target] -= q * row[source]`
    fn row_sub(&mut self, target: usize, source: usize, q: &BigInt) {
        let src: Vec<(usize, BigInt)> = self.rows[source].iter().map(|(&j, v)| (j, v.clone())).collect();
        for (j, v) in src {
            let slot = self.rows[target].entry(j).or_default();
            *slot -= q * v;
            if slot.is_zero() {
                self.rows[target].remove(&j);
                self.cols[j].remove(&target);
            } else {
                self.cols[j].insert(target);
            }
        }
    }

    /// `col[target] -= q * col[source]`
    fn col_sub(&mut self, target: usize, source: usize, q: &BigInt) {
        let src: Vec<usize> = self.cols[source].iter().copied().collect();
        for i in src {
            let v = self.rows[i][&source].clone();
            let slot = self.rows[i].entry(target).or_default();
            *slot -= q * v;
            if slot.is_zero() {
                self.rows[i].remove(&target);
                self.cols[target].remove(&i);
            } else {
                self.cols[target].insert(i);
            }
        }
    }

    fn remove(&mut self, r: usize, c: usize) {
        for (&j, _) in &self.rows[r] {
            self.cols[j].remove(&r);
        }
        self.rows[r].clear();
        for &i in &self.cols[c] {
            self.rows[i].remove(&c);
        }
        self.cols[c].clear();
    }

    fn cost(&self, i: usize, j: usize) -> usize {
        (self.rows[i].len() - 1) * (self.cols[j].len() - 1)
    }

    /// Unit entry with the smallest Markowitz cost.
    fn unit_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                if v.abs().is_one() {
                    let c = self.cost(i, j);
                    if best.map_or(true, |(b, _, _)| c < b) {
                        best = Some((c, i, j));
                        if c == 0 {
                            return Some((i, j));
                        }
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn min_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                let a = v.abs();
                let c = self.cost(i, j);
                let better = match &best {
                    None => true,
                    Some((b, bc, _, _)) => a < *b || (a == *b && c < *bc),
                };
                if better {
                    best = Some((a, c, i, j));
                }
            }
        }
        best.map(|(_, _, i, j)| (i, j))
    }
}

/// Rank and invariant factors by sparse elimination without transforms.
///
/// Unit pivots are eliminated first in Markowitz order; the remaining block is
/// diagonalized by minimal-absolute-value pivoting and the diagonal is then
/// normalized into a divisibility chain.
pub fn elementary_divisors(m: &IntMatrix) -> Divisors {
    let mut e = SparseElim::new(m);
    let mut diag = Vec::new();
    while let Some((r, c)) = e.unit_pivot() {
        let p = e.rows[r][&c].clone();
        let others: Vec<usize> = e.cols[c].iter().copied().filter(|&i| i != r).collect();
        for i in others {
            let q = &e.rows[i][&c] * &p; // p = ±1, so a/p = a*p
            e.row_sub(i, r, &q);
        }
        e.remove(r, c);
        diag.push(BigInt::one());
    }
    while let Some((r, c)) = e.min_pivot() {
        let p = e.rows[r][&c].clone();
        let mut dirty = false;
        let others: Vec<usize> = e.cols[c].iter().copied().filter(|&i| i != r).collect();
        for i in others {
            let q = &e.rows[i][&c] / &p;
            if !q.is_zero() {
                e.row_sub(i, r, &q);
            }
            dirty |= e.rows[i].contains_key(&c);
        }
        if dirty {
            continue;
        }
        let others: Vec<usize> = e.rows[r].keys().copied().filter(|&j| j != c).collect();
        for j in others {
            let q = &e.rows[r][&j] / &p;
            if !q.is_zero() {
                e.col_sub(j, c, &q);
            }
            dirty |= e.rows[r].contains_key(&j);
        }
        if dirty {
            continue;
        }
        e.remove(r, c);
        diag.push(p.abs());
    }
    Divisors { rank: diag.len(), invariant_factors: diagonal_to_chain(diag) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(m.cols()));
        for w in s.diagonal.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn single_entry() {
        let s = check(&IntMatrix::from_dense(&[vec![2]]));
        assert_eq!(s.diagonal, vec![BigInt::from(2)]);
    }

    #[test]
    fn two_by_two_example() {
        // det = -4, gcd of entries = 2, so the form is diag(2, 2)
        let m = IntMatrix::from_dense(&[vec![2, 4], vec![6, 10]]);
        let s = check(&m);
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(elementary_divisors(&m).invariant_factors, s.diagonal);
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntMatrix::zeros(3, 2));
        assert!(s.diagonal.is_empty());
        assert!(s.d.is_zero());
        assert_eq!(elementary_divisors(&IntMatrix::zeros(3, 2)).rank, 0);
    }

    #[test]
    fn chain_normalization() {
        let d = diagonal_to_chain(vec![BigInt::from(4), BigInt::from(6)]);
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn sparse_elimination_handles_non_unit_block() {
        let m = IntMatrix::from_dense(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 0], vec![2, 2, 0]]);
        let ed = elementary_divisors(&m);
        assert_eq!(ed.invariant_factors, smith_normal_form(&m).diagonal);
    }
}
