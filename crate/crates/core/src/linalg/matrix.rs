use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Sparse integer matrix. Entries are keyed by `(row, col)`; zeros are never
/// stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), BigInt::one());
        }
        m
    }

    /// Builds a matrix from triples, summing repeated positions.
    pub fn from_triples<I, T>(rows: usize, cols: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
        T: Into<BigInt>,
    {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in triples {
            if i >= rows || j >= cols {
                return Err(Error::Shape(format!("entry ({i}, {j}) outside {rows}x{cols}")));
            }
            m.add_to(i, j, &v.into());
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged dense matrix");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.entries.insert((i, j), BigInt::from(v));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry((i, j)).or_default();
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            t.entries.insert((j, i), v.clone());
        }
        t
    }

    pub fn neg(&self) -> Self {
        let mut m = self.clone();
        for v in m.entries.values_mut() {
            *v = -v.clone();
        }
        m
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let mut m = self.clone();
        for v in m.entries.values_mut() {
            *v *= s;
        }
        m
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = self.clone();
        for (&(i, j), v) in &other.entries {
            m.add_to(i, j, v);
        }
        Ok(m)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let other_rows = other.row_maps();
        let mut out = Self::zeros(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            for (&j, b) in &other_rows[k] {
                out.add_to(i, j, &(a * b));
            }
        }
        Ok(out)
    }

    /// Kronecker product with left factor major ordering: row `(i, k)` maps to
    /// `i * other.rows + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (&(i, j), a) in &self.entries {
            for (&(k, l), b) in &other.entries {
                out.entries.insert((i * other.rows + k, j * other.cols + l), a * b);
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            if !v[j].is_zero() {
                out[i] += a * &v[j];
            }
        }
        out
    }

    pub fn row_maps(&self) -> Vec<BTreeMap<usize, BigInt>> {
        let mut rows = vec![BTreeMap::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            rows[i].insert(j, v.clone());
        }
        rows
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(i, jj), v) in &self.entries {
            if jj == j {
                out[i] = v.clone();
            }
        }
        out
    }

    /// Block matrix `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        m.entries = self.entries.clone();
        for (&(i, j), v) in &other.entries {
            m.entries.insert((i, j + self.cols), v.clone());
        }
        Ok(m)
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for (&(i, j), v) in &block.entries {
            self.add_to(r0 + i, c0 + j, v);
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut d = DenseMatrix::zeros(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            d.data[i][j] = v.clone();
        }
        d
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries.values().map(|v| v.abs()).max().unwrap_or_default()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows * self.cols <= 144 {
            write!(f, "{:?}", self.to_dense())
        } else {
            write!(f, "IntMatrix({}x{}, nnz={})", self.rows, self.cols, self.nnz())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries().map(|(i, j, v)| (i, j, v.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MatrixJson::deserialize(d)?;
        let mut triples = Vec::with_capacity(raw.entries.len());
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, v) in raw.entries {
            if !seen.insert((i, j)) {
                return Err(D::Error::custom(format!("duplicate entry ({i}, {j})")));
            }
            let v: BigInt = v.parse().map_err(|_| D::Error::custom(format!("bad integer `{v}`")))?;
            triples.push((i, j, v));
        }
        IntMatrix::from_triples(raw.rows, raw.cols, triples).map_err(D::Error::custom)
    }
}

/// Row-major dense integer matrix used by the transform-tracking Smith form.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigInt>>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn to_sparse(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.entries.insert((i, j), v.clone());
                }
            }
        }
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.data {
            row.swap(a, b);
        }
    }

    /// `row[target] += factor * row[source]`
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        let (t, s) = if target < source {
            let (lo, hi) = self.data.split_at_mut(source);
            (&mut lo[target], &hi[0])
        } else {
            let (lo, hi) = self.data.split_at_mut(target);
            (&mut hi[0], &lo[source])
        };
        for (x, y) in t.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x += factor * y;
            }
        }
    }

    /// `col[target] += factor * col[source]`
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for row in &mut self.data {
            if !row[source].is_zero() {
                let add = factor * &row[source];
                row[target] += add;
            }
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for x in &mut self.data[r] {
            *x = -x.clone();
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for row in &mut self.data {
            row[c] = -row[c].clone();
        }
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.data.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_triples_sums_and_drops_zeros() {
        let m = IntMatrix::from_triples(2, 2, [(0, 0, 1), (0, 0, -1), (1, 1, 3)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), BigInt::from(3));
    }

    #[test]
    fn kron_orders_left_factor_major() {
        let a = IntMatrix::from_dense(&[vec![1, 2]]);
        let b = IntMatrix::from_dense(&[vec![3], vec![4]]);
        let k = a.kron(&b);
        assert_eq!(k, IntMatrix::from_dense(&[vec![3, 6], vec![4, 8]]));
    }

    #[test]
    fn json_uses_string_integers() {
        let m = IntMatrix::from_dense(&[vec![0, -7]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"entries":[[0,1,"-7"]]}"#);
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_rejects_duplicates() {
        let s = r#"{"rows":1,"cols":1,"entries":[[0,0,"1"],[0,0,"2"]]}"#;
        assert!(serde_json::from_str::<IntMatrix>(s).is_err());
    }
}
