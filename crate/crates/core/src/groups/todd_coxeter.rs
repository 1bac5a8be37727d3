use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::presentation::{GroupPresentation, Letter, Word};
use crate::error::{Error, Result};

/// Complete permutation action of each generator on a finite set of cosets.
/// Coset `0` is the subgroup itself; `action[g][c]` is `c·g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    pub generators: Vec<String>,
    pub action: Vec<Vec<usize>>,
    #[serde(skip)]
    inverse: Vec<Vec<usize>>,
}

impl CosetTable {
    /// Checks that every generator acts by a permutation of the same set.
    pub fn new(generators: Vec<String>, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != generators.len() {
            return Err(Error::IncompleteCosetTable(format!(
                "{} generators but {} permutations",
                generators.len(),
                action.len()
            )));
        }
        let n = action.first().map_or(1, Vec::len);
        let mut inverse = Vec::with_capacity(action.len());
        for (g, perm) in action.iter().enumerate() {
            if perm.len() != n {
                return Err(Error::IncompleteCosetTable(format!("row for `{}` has wrong length", generators[g])));
            }
            let mut inv = vec![usize::MAX; n];
            for (c, &d) in perm.iter().enumerate() {
                if d >= n || inv[d] != usize::MAX {
                    return Err(Error::IncompleteCosetTable(format!("`{}` is not a permutation", generators[g])));
                }
                inv[d] = c;
            }
            inverse.push(inv);
        }
        if n == 0 {
            return Err(Error::IncompleteCosetTable("no cosets".into()));
        }
        Ok(Self { generators, action, inverse })
    }

    /// Restores derived data after deserialization.
    pub fn rebuild(self) -> Result<Self> {
        Self::new(self.generators, self.action)
    }

    pub fn len(&self) -> usize {
        self.action.first().map_or(1, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn act(&self, coset: usize, l: Letter) -> usize {
        if l.inv {
            self.inverse[l.gen][coset]
        } else {
            self.action[l.gen][coset]
        }
    }

    pub fn trace(&self, coset: usize, w: &[Letter]) -> usize {
        w.iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Checks relators fix every coset and the action is transitive.
    pub fn check_against(&self, p: &GroupPresentation) -> Result<()> {
        if p.generators() != self.generators.as_slice() {
            return Err(Error::IncompleteCosetTable("generator names differ from the presentation".into()));
        }
        for (k, r) in p.relators().iter().enumerate() {
            for c in 0..self.len() {
                if self.trace(c, r) != c {
                    return Err(Error::IncompleteCosetTable(format!("relator {k} moves coset {c}")));
                }
            }
        }
        if self.representatives().iter().any(Option::is_none) {
            return Err(Error::IncompleteCosetTable("action is not transitive".into()));
        }
        Ok(())
    }

    /// Shortest-first representative words `w_c` with `0·w_c = c`.
    pub fn representatives(&self) -> Vec<Option<Word>> {
        let n = self.len();
        let mut reps: Vec<Option<Word>> = vec![None; n];
        reps[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for g in 0..self.generators.len() {
                for l in [Letter::pos(g), Letter::neg(g)] {
                    let d = self.act(c, l);
                    if reps[d].is_none() {
                        let mut w = reps[c].clone().unwrap();
                        w.push(l);
                        reps[d] = Some(w);
                        queue.push_back(d);
                    }
                }
            }
        }
        reps
    }
}

/// Outcome of a bounded enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Complete(CosetTable),
    /// The live-coset bound was reached even after a lookahead pass.
    Exhausted { max_cosets: usize },
}

impl Enumeration {
    pub fn table(&self) -> Option<&CosetTable> {
        match self {
            Self::Complete(t) => Some(t),
            Self::Exhausted { .. } => None,
        }
    }
}

struct Enumerator<'a> {
    relators: &'a [Word],
    ncols: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    live: usize,
    max_live: usize,
    queue: VecDeque<usize>,
}

struct Full;

fn inv_col(x: usize) -> usize {
    x ^ 1
}

impl<'a> Enumerator<'a> {
    fn new(p: &'a GroupPresentation, max_live: usize) -> Self {
        let ncols = 2 * p.generators().len();
        Self {
            relators: p.relators(),
            ncols,
            table: vec![vec![None; ncols]],
            parent: vec![0],
            live: 1,
            max_live,
            queue: VecDeque::new(),
        }
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> std::result::Result<(), Full> {
        if self.live >= self.max_live {
            self.lookahead();
            if self.live >= self.max_live {
                return Err(Full);
            }
            if !self.alive(c) || self.table[c][x].is_some() {
                return Ok(());
            }
        }
        let d = self.table.len();
        self.table.push(vec![None; self.ncols]);
        self.parent.push(d);
        self.live += 1;
        self.table[c][x] = Some(d);
        self.table[d][inv_col(x)] = Some(c);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = c;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop] = keep;
        self.live -= 1;
        self.queue.push_back(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for x in 0..self.ncols {
                let Some(f) = self.table[e][x] else { continue };
                if self.table[f][inv_col(x)] == Some(e) {
                    self.table[f][inv_col(x)] = None;
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if let Some(g) = self.table[e1][x] {
                    self.merge(f1, g);
                } else if let Some(g) = self.table[f1][inv_col(x)] {
                    self.merge(e1, g);
                } else {
                    self.table[e1][x] = Some(f1);
                    self.table[f1][inv_col(x)] = Some(e1);
                }
            }
        }
    }

    /// Scans `c` under `w`, optionally defining new cosets to close the gap.
    fn scan(&mut self, c: usize, w: &[Letter], fill: bool) -> std::result::Result<(), Full> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() - 1);
        loop {
            while i <= j {
                match self.table[f][w[i].column()] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                match self.table[b][inv_col(w[j].column())] {
                    Some(n) => {
                        b = n;
                        if j == 0 {
                            // whole word traced backwards; i must be 0 here
                            self.coincidence(f, b);
                            return Ok(());
                        }
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = w[i].column();
                self.table[f][x] = Some(b);
                self.table[b][inv_col(x)] = Some(f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i].column())?;
            if !self.alive(c) {
                return Ok(());
            }
            // restart from the current coset after a possible lookahead
            f = self.rep(f);
            b = self.rep(b);
        }
    }

    fn lookahead(&mut self) {
        let relators = self.relators;
        let mut c = 0;
        while c < self.table.len() {
            if self.alive(c) {
                for r in relators {
                    let _ = self.scan(c, r, false);
                    if !self.alive(c) {
                        break;
                    }
                }
            }
            c += 1;
        }
    }

    fn run(&mut self) -> std::result::Result<(), Full> {
        let relators = self.relators;
        let mut c = 0;
        while c < self.table.len() {
            if self.alive(c) {
                for r in relators {
                    self.scan(c, r, true)?;
                    if !self.alive(c) {
                        break;
                    }
                }
                if self.alive(c) {
                    for x in 0..self.ncols {
                        if self.table[c][x].is_none() {
                            self.define(c, x)?;
                        }
                        if !self.alive(c) {
                            break;
                        }
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn finish(mut self, generators: Vec<String>) -> Result<CosetTable> {
        let n = self.table.len();
        let mut renumber = vec![usize::MAX; n];
        let mut k = 0;
        for c in 0..n {
            if self.alive(c) {
                renumber[c] = k;
                k += 1;
            }
        }
        let ngens = generators.len();
        let mut action = vec![vec![0; k]; ngens];
        for c in 0..n {
            if !self.alive(c) {
                continue;
            }
            for (g, row) in action.iter_mut().enumerate() {
                let d = self.table[c][2 * g]
                    .ok_or_else(|| Error::IncompleteCosetTable(format!("coset {c} lacks an image")))?;
                let d = self.rep(d);
                row[renumber[c]] = renumber[d];
            }
        }
        CosetTable::new(generators, action)
    }
}

/// Coset enumeration over the trivial subgroup (HLT strategy with a lookahead
/// pass when the live-coset bound is reached; cosets are defined in
/// row-then-column order, so the result is deterministic).
pub fn todd_coxeter(p: &GroupPresentation, max_cosets: usize) -> Result<Enumeration> {
    if max_cosets == 0 {
        return Err(Error::InvalidParameter("maxCosets must be at least 1".into()));
    }
    let mut e = Enumerator::new(p, max_cosets);
    match e.run() {
        Ok(()) => {
            let t = e.finish(p.generators().to_vec())?;
            t.check_against(p)?;
            Ok(Enumeration::Complete(t))
        }
        Err(Full) => Ok(Enumeration::Exhausted { max_cosets }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(gens: &[&str], rels: &[&str], bound: usize) -> Option<usize> {
        let p = GroupPresentation::parse(gens, rels).unwrap();
        todd_coxeter(&p, bound).unwrap().table().map(CosetTable::len)
    }

    #[test]
    fn cyclic_groups() {
        assert_eq!(order(&["a"], &["a a"], 100), Some(2));
        assert_eq!(order(&["a"], &["a a a"], 100), Some(3));
        assert_eq!(order(&["a"], &["a"], 100), Some(1));
    }

    #[test]
    fn small_nonabelian_groups() {
        // S3 and the quaternion group
        assert_eq!(order(&["a", "b"], &["a a", "b b b", "a b a b"], 100), Some(6));
        assert_eq!(order(&["i", "j"], &["i i i i", "i i j^-1 j^-1", "j^-1 i j i"], 100), Some(8));
    }

    #[test]
    fn binary_icosahedral_has_order_120() {
        assert_eq!(order(&["s", "t"], &["s t s t s^-1 s^-1 s^-1", "s t s t t^-1 t^-1 t^-1 t^-1 t^-1"], 10000), Some(120));
    }

    #[test]
    fn infinite_group_exhausts() {
        let p = GroupPresentation::parse(&["a", "b"], &["a b a^-1 b^-1"]).unwrap();
        assert_eq!(todd_coxeter(&p, 50).unwrap(), Enumeration::Exhausted { max_cosets: 50 });
    }

    #[test]
    fn zero_bound_rejected() {
        let p = GroupPresentation::parse(&["a"], &["a a"]).unwrap();
        assert!(todd_coxeter(&p, 0).is_err());
    }

    #[test]
    fn table_validation() {
        assert!(CosetTable::new(vec!["a".into()], vec![vec![0, 0]]).is_err());
        let t = CosetTable::new(vec!["a".into()], vec![vec![1, 0]]).unwrap();
        let p = GroupPresentation::parse(&["a"], &["a a a"]).unwrap();
        assert!(t.check_against(&p).is_err());
    }
}
