//! Filter tuples, the maps `A` and `B`, zeta, and the area/dinv statistics.
//!
//! A filter tuple starts at a filter and removes `n` minimal levels one at a
//! time, ending at the starting filter shifted up by `n`. It is stored by its
//! balanced starting filter and the removed levels in those coordinates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action::{unique_fixed_point, SolverConfig};
use crate::arith::{anderson_multiplier, require_coprime};
use crate::error::{Error, Result};
use crate::filter::{enumerate_balanced, enumerate_dyck, Filter};
use crate::word::{parking_words, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FilterTuple {
    initial: Filter,
    removals: Vec<i64>,
}

impl FilterTuple {
    /// Validates the chain and translates it to the balanced representative.
    pub fn new(initial: Filter, removals: Vec<i64>) -> Result<Self> {
        let n = initial.n();
        if removals.len() != n {
            return Err(Error::InvalidTuple(format!("expected {n} removals, found {}", removals.len())));
        }
        let mut current = initial.clone();
        for (step, &v) in removals.iter().enumerate() {
            current = current.remove(v).map_err(|_| {
                Error::InvalidTuple(format!(
                    "removal {step} takes level {v}, which is not minimal in {:?}",
                    current.row_minima()
                ))
            })?;
        }
        if current != initial.translate(n as i64) {
            return Err(Error::InvalidTuple(format!(
                "chain ends at {:?} rather than the start shifted by {n}",
                current.row_minima()
            )));
        }
        let balanced = initial.to_balanced()?;
        let shift = balanced.min_level() - initial.min_level();
        Ok(Self { initial: balanced, removals: removals.iter().map(|v| v + shift).collect() })
    }

    pub fn m(&self) -> usize {
        self.initial.m()
    }

    pub fn n(&self) -> usize {
        self.initial.n()
    }

    /// Balanced starting filter.
    pub fn initial(&self) -> &Filter {
        &self.initial
    }

    /// Removed levels, relative to the balanced starting filter.
    pub fn removals(&self) -> &[i64] {
        &self.removals
    }

    /// Starting filter of the parking (Dyck) representative.
    pub fn parking_initial(&self) -> Filter {
        self.initial.to_dyck()
    }

    /// Removed levels of the parking representative.
    pub fn parking_removals(&self) -> Vec<i64> {
        let shift = self.initial.min_level();
        self.removals.iter().map(|v| v - shift).collect()
    }

    /// The `n + 1` filters of the chain, without rebalancing.
    pub fn stages(&self) -> Vec<Filter> {
        let mut stages = vec![self.initial.clone()];
        for &v in &self.removals {
            let next = stages.last().unwrap().remove(v).expect("validated at construction");
            stages.push(next);
        }
        stages
    }

    /// Area-side word: `a * (p_i - k) mod m` with `k` the least removal and
    /// `a n = -1 (mod m)`.
    pub fn map_a(&self) -> Word {
        let (m, n) = (self.m(), self.n());
        let a = anderson_multiplier(m, n);
        let k = self.removals.iter().copied().min().unwrap_or(0);
        let letters = self.removals.iter().map(|p| (a * (p - k)).rem_euclid(m as i64) as usize).collect();
        Word::new(m, letters).expect("residues lie in the alphabet")
    }

    /// Dinv-side word: the 0-indexed rank of each removed level among the row
    /// minima present just before its removal.
    pub fn map_b(&self) -> Word {
        let stages = self.stages();
        let letters = self
            .removals
            .iter()
            .zip(&stages)
            .map(|(p, stage)| stage.row_minima().iter().filter(|&&v| v < *p).count())
            .collect();
        Word::new(self.m(), letters).expect("ranks lie in the alphabet")
    }

    pub fn area(&self) -> usize {
        statistic(self.m(), self.n(), &self.map_a())
    }

    pub fn dinv(&self) -> usize {
        statistic(self.m(), self.n(), &self.map_b())
    }
}

/// `(m-1)(n-1)/2` minus the letter sum.
fn statistic(m: usize, n: usize, word: &Word) -> usize {
    let top = (m - 1) * (n - 1);
    assert!(top.is_multiple_of(2), "(m-1)(n-1) is even for coprime m, n");
    top / 2 - word.letters().iter().sum::<usize>()
}

/// The parking tuple whose `A`-word is `word`.
///
/// The letter multiset fixes the Dyck starting filter. Levels in the same row
/// share a letter, so each letter's positions receive that row's column
/// minima in increasing order.
pub fn map_a_inverse(word: &Word) -> Result<FilterTuple> {
    let (m, n) = (word.m(), word.n());
    require_coprime(m, n)?;
    word.require_parking()?;
    let d = Filter::from_dyck_word(word)?;
    let a = anderson_multiplier(m, n);
    let mut by_letter: Vec<Vec<i64>> = vec![Vec::new(); m];
    for c in d.column_minima().into_iter().rev() {
        by_letter[(a * c).rem_euclid(m as i64) as usize].push(c);
    }
    let removals = word
        .letters()
        .iter()
        .map(|&l| by_letter[l].pop().expect("letter counts match column counts"))
        .collect();
    FilterTuple::new(d, removals)
}

/// The tuple whose `B`-word is `word`.
///
/// The unique fixed point of `word` at coordinate sum `C(m+1, 2)` is the
/// balanced starting filter; replaying the ranks recovers the removals.
pub fn map_b_inverse(word: &Word, config: SolverConfig) -> Result<FilterTuple> {
    let fixed = unique_fixed_point(word, config)?;
    let initial = Filter::new(word.m(), word.n(), fixed.coords())
        .map_err(|e| Error::InternalInconsistency(format!("fixed point {:?} is not a filter: {e}", fixed.coords())))?;
    replay_ranks(initial, word)
}

fn replay_ranks(initial: Filter, word: &Word) -> Result<FilterTuple> {
    let mut current = initial.clone();
    let mut removals = Vec::with_capacity(word.n());
    for &rank in word.letters() {
        let v = current.row_minima()[rank];
        current = current.remove(v).map_err(|_| {
            Error::InternalInconsistency(format!("rank {rank} picks non-removable level {v}"))
        })?;
        removals.push(v);
    }
    FilterTuple::new(initial, removals).map_err(|e| Error::InternalInconsistency(e.to_string()))
}

/// Same as [`map_b_inverse`] but looks the tuple up by exhaustive search.
pub fn map_b_inverse_by_search(word: &Word) -> Result<FilterTuple> {
    require_coprime(word.m(), word.n())?;
    word.require_parking()?;
    search_balanced_tuples(word.m(), word.n())
        .into_iter()
        .find(|t| t.map_b() == *word)
        .ok_or_else(|| Error::InternalInconsistency(format!("no tuple has B-word {word}")))
}

pub fn zeta(word: &Word) -> Result<Word> {
    Ok(map_a_inverse(word)?.map_b())
}

pub fn zeta_inverse(word: &Word, config: SolverConfig) -> Result<Word> {
    Ok(map_b_inverse(word, config)?.map_a())
}

/// Area of a parking word read as an `A`-word.
pub fn area(word: &Word) -> Result<usize> {
    Ok(map_a_inverse(word)?.area())
}

/// Dinv of a parking word read as an `A`-word, i.e. computed from its zeta image.
pub fn dinv(word: &Word) -> Result<usize> {
    Ok(map_a_inverse(word)?.dinv())
}

/// Every balanced tuple, found by depth-first search over removal sequences
/// from every balanced filter. Independent of both inverse maps.
pub fn search_balanced_tuples(m: usize, n: usize) -> Vec<FilterTuple> {
    let mut out = Vec::new();
    let Ok(starts) = enumerate_balanced(m, n) else { return out };
    for start in starts {
        let target = start.translate(n as i64);
        let mut path = Vec::with_capacity(n);
        extend_removals(&start, &start, &target, &mut path, &mut out);
    }
    out
}

fn extend_removals(start: &Filter, current: &Filter, target: &Filter, path: &mut Vec<i64>, out: &mut Vec<FilterTuple>) {
    if path.len() == start.n() {
        if current == target {
            out.push(FilterTuple { initial: start.clone(), removals: path.clone() });
        }
        return;
    }
    for v in current.removable_levels() {
        path.push(v);
        extend_removals(start, &current.remove(v).expect("removable"), target, path, out);
        path.pop();
    }
}

/// Every balanced tuple, one per parking word, via [`map_a_inverse`].
pub fn all_tuples(m: usize, n: usize) -> Result<Vec<FilterTuple>> {
    require_coprime(m, n)?;
    parking_words(m, n).par_iter().map(map_a_inverse).collect()
}

/// Which objects a q,t table counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatDomain {
    ParkingWords,
    DyckWords,
}

/// Joint distribution of (area, dinv); `counts[area][dinv]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QtTable {
    pub m: usize,
    pub n: usize,
    pub over: StatDomain,
    pub counts: Vec<Vec<u64>>,
}

impl QtTable {
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// Number of objects with each area value.
    pub fn area_marginal(&self) -> Vec<u64> {
        self.counts.iter().map(|row| row.iter().sum()).collect()
    }

    /// Number of objects with each dinv value.
    pub fn dinv_marginal(&self) -> Vec<u64> {
        (0..self.counts.len()).map(|d| self.counts.iter().map(|row| row[d]).sum()).collect()
    }

    pub fn to_csv(&self) -> String {
        let size = self.counts.len();
        let mut out = String::from("area\\dinv");
        for d in 0..size {
            out.push_str(&format!(",{d}"));
        }
        out.push('\n');
        for (a, row) in self.counts.iter().enumerate() {
            out.push_str(&a.to_string());
            for c in row {
                out.push_str(&format!(",{c}"));
            }
            out.push('\n');
        }
        out
    }
}

pub fn qt_table(m: usize, n: usize, over: StatDomain) -> Result<QtTable> {
    require_coprime(m, n)?;
    let tuples: Vec<FilterTuple> = match over {
        StatDomain::ParkingWords => all_tuples(m, n)?,
        StatDomain::DyckWords => enumerate_dyck(m, n)?
            .iter()
            .map(crate::sweep::dyck_embedding)
            .collect::<Result<_>>()?,
    };
    let pairs: Vec<(usize, usize)> = tuples.par_iter().map(|t| (t.area(), t.dinv())).collect();
    let size = (m - 1) * (n - 1) / 2 + 1;
    let mut counts = vec![vec![0u64; size]; size];
    for (a, d) in pairs {
        counts[a][d] += 1;
    }
    Ok(QtTable { m, n, over, counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(m: usize, s: &str) -> Word {
        Word::parse(m, s).unwrap()
    }

    fn f(m: usize, n: usize, minima: &[i64]) -> Filter {
        Filter::new(m, n, minima).unwrap()
    }

    #[test]
    fn map_a_examples() {
        let t = map_a_inverse(&w(3, "10001")).unwrap();
        assert_eq!(t.parking_removals(), vec![4, 0, 3, 6, 7]);
        assert_eq!(t.parking_initial(), f(3, 5, &[0, 4, 5]));
        assert_eq!(t.map_a(), w(3, "10001"));
        let t = FilterTuple::new(f(5, 3, &[0, 1, 2, 3, 4]).to_dyck(), vec![0, 1, 2]);
        assert!(t.is_ok());
        let s = map_a_inverse(&w(5, "010")).unwrap();
        assert_eq!(s.parking_removals(), vec![0, 7, 5]);
        let id = FilterTuple::new(f(4, 3, &[1, 2, 3, 4]), vec![1, 2, 3]).unwrap();
        assert_eq!(id.map_a(), w(4, "012"));
        assert_eq!(id.map_b(), w(4, "000"));
        assert_eq!(map_a_inverse(&w(4, "012")).unwrap(), id);
    }

    #[test]
    fn map_b_examples() {
        let t = FilterTuple::new(f(3, 5, &[-1, 3, 4]), vec![3, -1, 2, 5, 6]).unwrap();
        assert_eq!(t.map_b(), w(3, "10011"));
        let chain: Vec<Vec<i64>> = t.stages().iter().map(Filter::row_minima).collect();
        assert_eq!(
            chain,
            vec![vec![-1, 3, 4], vec![-1, 4, 6], vec![2, 4, 6], vec![4, 5, 6], vec![4, 6, 8], vec![4, 8, 9]]
        );
        assert_eq!(map_b_inverse(&w(3, "10011"), SolverConfig::default()).unwrap(), t);
        assert_eq!(map_b_inverse_by_search(&w(3, "10011")).unwrap(), t);
        let top = map_b_inverse(&w(4, "012"), SolverConfig::default()).unwrap();
        assert_eq!(top.initial().row_minima(), vec![-2, 1, 4, 7]);
        assert_eq!(top.removals(), &[-2, 2, 6]);
        assert_eq!(map_a_inverse(&w(5, "031")).unwrap().map_b(), w(5, "000"));
    }

    #[test]
    fn example_statistics() {
        let t = map_a_inverse(&w(3, "10001")).unwrap();
        assert_eq!(t.map_b(), w(3, "10011"));
        assert_eq!((t.area(), t.dinv()), (2, 1));
        let id = map_a_inverse(&w(4, "012")).unwrap();
        assert_eq!((id.area(), id.dinv()), (0, 3));
        assert_eq!(area(&w(4, "000")).unwrap(), 3);
    }

    #[test]
    fn zeta_examples() {
        for (a, b) in [("012", "000"), ("021", "010"), ("001", "011"), ("000", "012")] {
            assert_eq!(zeta(&w(4, a)).unwrap(), w(4, b));
            assert_eq!(zeta_inverse(&w(4, b), SolverConfig::default()).unwrap(), w(4, a));
        }
        for (a, b) in [("031", "000"), ("030", "002"), ("000", "013")] {
            assert_eq!(zeta(&w(5, a)).unwrap(), w(5, b));
            assert_eq!(zeta_inverse(&w(5, b), SolverConfig::default()).unwrap(), w(5, a));
        }
        assert!(matches!(zeta(&w(4, "022")), Err(Error::NotAParkingWord { .. })));
    }

    #[test]
    fn tables() {
        let t = qt_table(4, 3, StatDomain::ParkingWords).unwrap();
        assert_eq!(t.counts, vec![vec![1, 2, 2, 1], vec![2, 3, 1, 0], vec![2, 1, 0, 0], vec![1, 0, 0, 0]]);
        let d = qt_table(4, 3, StatDomain::DyckWords).unwrap();
        assert_eq!(d.counts, vec![vec![0, 0, 0, 1], vec![0, 1, 1, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 0]]);
        assert_eq!(t.to_csv(), "area\\dinv,0,1,2,3\n0,1,2,2,1\n1,2,3,1,0\n2,2,1,0,0\n3,1,0,0,0\n");
    }

    #[test]
    fn search_counts() {
        assert_eq!(search_balanced_tuples(4, 3).len(), 16);
        assert_eq!(search_balanced_tuples(3, 5).len(), 81);
    }

    #[test]
    fn invalid_tuples_rejected() {
        let b = f(3, 5, &[-1, 3, 4]);
        assert!(FilterTuple::new(b.clone(), vec![4, -1, 2, 5, 6]).is_err());
        assert!(FilterTuple::new(b, vec![3, -1]).is_err());
    }
}
