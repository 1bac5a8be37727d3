use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::snf::diagonal_to_chain;
use crate::error::{Error, Result};

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d1 ⊕ … ⊕ Z/dk` with
/// `d1 | d2 | … | dk` and every `di ≥ 2`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FGAbelianGroup {
    pub free_rank: usize,
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
}

impl FGAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    /// Builds the group from arbitrary cyclic orders; orders `0` count as free
    /// summands and orders `1` are dropped.
    pub fn from_cyclic_orders<I: IntoIterator<Item = BigInt>>(free_rank: usize, orders: I) -> Self {
        let mut free = free_rank;
        let mut finite = Vec::new();
        for d in orders {
            if d.is_zero() {
                free += 1;
            } else {
                finite.push(d);
            }
        }
        let torsion = diagonal_to_chain(finite).into_iter().filter(|d| !d.is_one()).collect();
        Self { free_rank: free, torsion }
    }

    /// Checked constructor for already-normalized data.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let g = Self { free_rank, torsion };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        for d in &self.torsion {
            if *d < BigInt::from(2) {
                return Err(Error::InvalidParameter(format!("torsion coefficient {d} < 2")));
            }
        }
        for w in self.torsion.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(Error::InvalidParameter(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        Ok(())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    /// Unicode rendering, e.g. `ℤ² ⊕ ℤ/2`.
    pub fn pretty(&self) -> String {
        if self.is_trivial() {
            return "0".into();
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            n => parts.push(format!("ℤ{}", superscript(n))),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == d).count();
            if run == 1 {
                parts.push(format!("ℤ/{d}"));
            } else {
                parts.push(format!("(ℤ/{d}){}", superscript(run)));
            }
            i += run;
        }
        parts.join(" ⊕ ")
    }
}

fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        use serde::de::Error;
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| s.parse().map_err(|_| D::Error::custom(format!("bad integer `{s}`")))).collect()
    }
}
