//! (m,n)-invariant filters of `Z x Z`.
//!
//! The point `(i, j)` sits at level `i*m + j*n`. A filter is an up-closed set
//! of points that is also closed under sharing a level, so it is determined by
//! the set of levels it contains. That set is closed under adding `m` and under
//! adding `n`, hence it is pinned down by its least element in each residue
//! class modulo `m` (the row minima). Those `m` integers are the stored form.
//! The least elements in each class modulo `n` are the column minima.

use std::collections::{BTreeSet, VecDeque};

use crate::arith::{anderson_multiplier, class_minima, require_coprime, triangular};
use crate::error::{Error, Result};
use crate::sweep::{LabeledPath, Step};
use crate::word::{dyck_words, Word};

/// Level of the lattice point `(i, j)`.
pub fn level(i: i64, j: i64, m: usize, n: usize) -> i64 {
    i * m as i64 + j * n as i64
}

/// A coprime (m,n)-filter, stored as row minima indexed by residue mod `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filter {
    m: usize,
    n: usize,
    by_residue: Vec<i64>,
}

/// Which canonical representative a filter is. A filter can be Dyck and
/// balanced at once; `Filter::kind` reports `Dyck` in that case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterKind {
    Dyck,
    Balanced,
    Other,
}

impl Filter {
    /// Builds a filter from its row minima, given in any order.
    pub fn new(m: usize, n: usize, row_minima: &[i64]) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidFilter("m and n must be positive".into()));
        }
        require_coprime(m, n)?;
        if row_minima.len() != m {
            return Err(Error::InvalidFilter(format!(
                "expected {m} row minima, found {}",
                row_minima.len()
            )));
        }
        let mut slots: Vec<Option<i64>> = vec![None; m];
        for &v in row_minima {
            let slot = &mut slots[v.rem_euclid(m as i64) as usize];
            if slot.replace(v).is_some() {
                return Err(Error::InvalidFilter(format!(
                    "two row minima share the residue {} mod {m}",
                    v.rem_euclid(m as i64)
                )));
            }
        }
        let filter = Self { m, n, by_residue: slots.into_iter().flatten().collect() };
        if let Some(v) = row_minima.iter().find(|&&v| !filter.contains_level(v + n as i64)) {
            return Err(Error::InvalidFilter(format!(
                "level {v} is a row minimum but {} is missing",
                v + n as i64
            )));
        }
        Ok(filter)
    }

    /// The balanced filter generated by the single level `(1+m+n-mn)/2`.
    pub fn generator(m: usize, n: usize) -> Result<Self> {
        require_coprime(m, n)?;
        Self::new(m, n, crate::action::staircase(m, n).coords())
    }

    /// The Dyck filter whose column-length multiset is the letters of `word`.
    ///
    /// If `q_l` counts letter `l`, the row at height `j` starts at level
    /// `j*n - m * #{letters >= m - j}`.
    pub fn from_dyck_word(word: &Word) -> Result<Self> {
        let (m, n) = (word.m(), word.n());
        require_coprime(m, n)?;
        word.require_parking()?;
        let hist = word.histogram();
        let minima: Vec<i64> = (0..m)
            .map(|j| {
                let at_least: usize = hist[m - j..].iter().sum();
                (j * n) as i64 - (m * at_least) as i64
            })
            .collect();
        Self::new(m, n, &minima)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row minima in increasing order.
    pub fn row_minima(&self) -> Vec<i64> {
        let mut v = self.by_residue.clone();
        v.sort_unstable();
        v
    }

    /// The least level congruent to `residue` mod `m`.
    pub fn row_minimum(&self, residue: i64) -> i64 {
        self.by_residue[residue.rem_euclid(self.m as i64) as usize]
    }

    pub fn contains_level(&self, v: i64) -> bool {
        v >= self.row_minimum(v)
    }

    /// Column minima in increasing order, one per residue class mod `n`.
    pub fn column_minima(&self) -> Vec<i64> {
        let mut v = class_minima(&self.by_residue, self.m as i64, self.n);
        v.sort_unstable();
        v
    }

    pub fn min_level(&self) -> i64 {
        *self.by_residue.iter().min().expect("m >= 1")
    }

    pub fn is_dyck(&self) -> bool {
        self.min_level() == 0
    }

    pub fn is_balanced(&self) -> bool {
        self.by_residue.iter().sum::<i64>() == triangular(self.m)
    }

    pub fn kind(&self) -> FilterKind {
        if self.is_dyck() {
            FilterKind::Dyck
        } else if self.is_balanced() {
            FilterKind::Balanced
        } else {
            FilterKind::Other
        }
    }

    /// Adds `shift` to every level; translating the lattice by `(x, y)` does
    /// this with `shift = x m + y n`, and coprimality makes every shift
    /// reachable.
    pub fn translate(&self, shift: i64) -> Self {
        let shifted: Vec<i64> = self.by_residue.iter().map(|v| v + shift).collect();
        let mut by_residue = vec![0; self.m];
        for v in shifted {
            by_residue[v.rem_euclid(self.m as i64) as usize] = v;
        }
        Self { m: self.m, n: self.n, by_residue }
    }

    pub fn to_dyck(&self) -> Self {
        self.translate(-self.min_level())
    }

    pub fn to_balanced(&self) -> Result<Self> {
        let gap = triangular(self.m) - self.by_residue.iter().sum::<i64>();
        if gap % self.m as i64 != 0 {
            return Err(Error::InternalInconsistency(format!(
                "row minima {:?} cannot be balanced by a uniform shift",
                self.row_minima()
            )));
        }
        Ok(self.translate(gap / self.m as i64))
    }

    /// Same filter up to translation.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.m == other.m && self.n == other.n && self.to_dyck() == other.to_dyck()
    }

    /// Row minima `v` whose column predecessor `v - n` lies outside the filter,
    /// i.e. the minimal elements of the filter as a poset.
    pub fn removable_levels(&self) -> Vec<i64> {
        let n = self.n as i64;
        self.row_minima().into_iter().filter(|&v| !self.contains_level(v - n)).collect()
    }

    pub fn is_removable(&self, v: i64) -> bool {
        self.row_minimum(v) == v && !self.contains_level(v - self.n as i64)
    }

    /// Deletes the minimal level `v`; the row minimum of its class moves to `v + m`.
    pub fn remove(&self, v: i64) -> Result<Self> {
        if !self.is_removable(v) {
            return Err(Error::LevelNotRemovable(v));
        }
        let mut next = self.clone();
        next.by_residue[v.rem_euclid(self.m as i64) as usize] = v + self.m as i64;
        Ok(next)
    }

    /// Neighbours in the filter graph: remove one level, then shift every level
    /// down by one. Preserves the balanced property.
    pub fn successors(&self) -> Vec<Self> {
        self.removable_levels()
            .into_iter()
            .map(|v| self.remove(v).expect("listed as removable").translate(-1))
            .collect()
    }

    /// The same level set viewed as an (n,m)-filter.
    pub fn mn_swap(&self) -> Self {
        Self {
            m: self.n,
            n: self.m,
            by_residue: class_minima(&self.by_residue, self.m as i64, self.n),
        }
    }

    /// The column-length word of the Dyck representative: `a * c mod m` over
    /// the column minima `c`, sorted, where `a n = -1 (mod m)`.
    pub fn dyck_word(&self) -> Word {
        let a = anderson_multiplier(self.m, self.n);
        let base = self.min_level();
        let mut letters: Vec<usize> = self
            .column_minima()
            .into_iter()
            .map(|c| (a * (c - base)).rem_euclid(self.m as i64) as usize)
            .collect();
        letters.sort_unstable();
        Word::new(self.m, letters).expect("residues lie in the alphabet")
    }

    /// Boundary path from `(0,0)` to `(-n, m)` of a Dyck filter.
    ///
    /// Walking from level 0, a west step lowers the level by `m` and is taken
    /// whenever the level it reaches is in the filter; otherwise the path
    /// steps north, raising the level by `n`. Each step is labeled by the level
    /// of the point it arrives at, which is the west endpoint of a horizontal
    /// step and the north endpoint of a vertical one.
    pub fn to_path(&self) -> Result<LabeledPath> {
        if !self.is_dyck() {
            return Err(Error::NotDyck { min: self.min_level() });
        }
        let (m, n) = (self.m as i64, self.n as i64);
        let mut level = 0i64;
        let mut steps = Vec::with_capacity(self.m + self.n);
        let mut levels = Vec::with_capacity(self.m + self.n);
        for _ in 0..self.m + self.n {
            if self.contains_level(level - m) {
                level -= m;
                steps.push(Step::West);
            } else {
                level += n;
                steps.push(Step::North);
            }
            levels.push(level);
        }
        LabeledPath::new(self.m, self.n, steps, levels)
    }
}

/// Every Dyck filter, in lexicographic order of Dyck words.
pub fn enumerate_dyck(m: usize, n: usize) -> Result<Vec<Filter>> {
    require_coprime(m, n)?;
    dyck_words(m, n).iter().map(Filter::from_dyck_word).collect()
}

/// Every balanced filter, in lexicographic order of Dyck words.
pub fn enumerate_balanced(m: usize, n: usize) -> Result<Vec<Filter>> {
    enumerate_dyck(m, n)?.iter().map(Filter::to_balanced).collect()
}

/// Balanced filters reachable from the generator through the filter graph.
pub fn reachable_balanced(m: usize, n: usize) -> Result<BTreeSet<Filter>> {
    let start = Filter::generator(m, n)?;
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        for g in f.successors() {
            if seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(m: usize, n: usize, minima: &[i64]) -> Filter {
        Filter::new(m, n, minima).unwrap()
    }

    #[test]
    fn levels() {
        assert_eq!(level(0, 0, 3, 4), 0);
        assert_eq!(level(1, 1, 3, 5), 8);
        let residues: BTreeSet<i64> =
            (0..4).flat_map(|i| (0..3).map(move |j| level(i, j, 3, 4).rem_euclid(12))).collect();
        assert_eq!(residues.len(), 12);
    }

    #[test]
    fn membership() {
        let x = f(3, 4, &[-1, 1, 3]);
        for v in [-1, 1, 2, 3, 4] {
            assert!(x.contains_level(v), "{v}");
        }
        for v in [-2, 0] {
            assert!(!x.contains_level(v), "{v}");
        }
        assert!((10..40).all(|v| x.contains_level(v)));
    }

    #[test]
    fn generator_matches_single_level_closure() {
        let (m, n) = (4usize, 7usize);
        let b = Filter::generator(m, n).unwrap();
        let l = (1 + m as i64 + n as i64 - (m * n) as i64) / 2;
        let generated: BTreeSet<i64> = (0..40)
            .flat_map(|a| (0..40).map(move |c| l + a * m as i64 + c * n as i64))
            .collect();
        for v in l - 10..l + 60 {
            assert_eq!(b.contains_level(v), generated.contains(&v), "{v}");
        }
        assert_eq!(b.removable_levels(), vec![l]);
    }

    #[test]
    fn column_minima_examples() {
        assert_eq!(f(3, 4, &[-1, 1, 3]).column_minima(), vec![-1, 1, 2, 4]);
        assert_eq!(f(3, 5, &[2, 4, 6]).column_minima(), vec![2, 4, 5, 6, 8]);
        assert_eq!(f(3, 5, &[-1, 3, 4]).column_minima(), vec![-1, 2, 3, 5, 6]);
    }

    #[test]
    fn representatives() {
        assert_eq!(f(3, 4, &[-1, 1, 3]).to_dyck(), f(3, 4, &[0, 2, 4]));
        assert_eq!(f(3, 5, &[2, 4, 6]).to_dyck(), f(3, 5, &[0, 2, 4]));
        assert_eq!(f(3, 4, &[-1, 1, 3]).to_balanced().unwrap(), f(3, 4, &[0, 2, 4]));
        assert_eq!(f(3, 5, &[0, 2, 4]).to_balanced().unwrap(), f(3, 5, &[0, 2, 4]));
        let b = f(3, 4, &[-1, 1, 3]).to_balanced().unwrap();
        assert_eq!(b.column_minima().iter().sum::<i64>(), 10);
    }

    #[test]
    fn removal_examples() {
        let b = f(3, 5, &[-1, 3, 4]);
        assert_eq!(b.removable_levels(), vec![-1, 3]);
        let after = b.remove(3).unwrap();
        assert_eq!(after.row_minima(), vec![-1, 4, 6]);
        assert_eq!(after.remove(-1).unwrap().row_minima(), vec![2, 4, 6]);
        assert_eq!(b.remove(4), Err(Error::LevelNotRemovable(4)));
    }

    #[test]
    fn swap_examples() {
        let b = f(3, 5, &[-1, 3, 4]);
        let s = b.mn_swap();
        assert_eq!((s.m(), s.n()), (5, 3));
        assert_eq!(s.row_minima(), vec![-1, 2, 3, 5, 6]);
        assert_eq!(s.mn_swap(), b);
    }

    #[test]
    fn balanced_enumeration() {
        let sets = |m, n| -> BTreeSet<Vec<i64>> {
            enumerate_balanced(m, n).unwrap().iter().map(Filter::row_minima).collect()
        };
        let expect34: BTreeSet<Vec<i64>> =
            [vec![1, 2, 3], vec![0, 2, 4], vec![-1, 3, 4], vec![0, 1, 5], vec![-2, 2, 6]].into();
        assert_eq!(sets(3, 4), expect34);
        assert_eq!(sets(3, 5).len(), 7);
        assert!(sets(3, 5).contains(&vec![-3, 2, 7]));
        assert_eq!(sets(1, 6).len(), 1);
    }

    #[test]
    fn dyck_words_of_filters() {
        assert_eq!(f(3, 4, &[0, 2, 4]).dyck_word().to_string(), "0011");
        assert_eq!(f(3, 5, &[0, 2, 4]).dyck_word().to_string(), "00012");
        assert_eq!(Filter::from_dyck_word(&Word::parse(3, "0011").unwrap()).unwrap(), f(3, 4, &[0, 2, 4]));
    }

    #[test]
    fn invalid_filters_rejected() {
        assert!(Filter::new(3, 4, &[0, 3, 4]).is_err());
        assert!(Filter::new(3, 4, &[0, 1]).is_err());
        assert!(Filter::new(3, 3, &[0, 1, 2]).is_err());
        // 0 is a row minimum but 4 = 0 + n is missing.
        assert!(Filter::new(3, 4, &[0, 7, 5]).is_err());
    }
}
