//! Labeled Dyck paths, the sweep map, and its inversion.
//!
//! Paths run from `(0,0)` to `(-n, m)` with north and west steps. Each step is
//! labeled by the level of the point it arrives at. Reading a path backwards
//! from `(-n, m)` starts at level 0 as well; the sweep map reorders the steps
//! so that this backwards reading visits them in increasing level.

use std::fmt;

use crate::action::SolverConfig;
use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::tuple::{map_b_inverse, FilterTuple};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    North,
    West,
}

impl Step {
    pub fn as_char(self) -> char {
        match self {
            Step::North => 'N',
            Step::West => 'W',
        }
    }
}

/// A Dyck path together with the level reached by each step.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledPath {
    m: usize,
    n: usize,
    steps: Vec<Step>,
    levels: Vec<i64>,
}

impl LabeledPath {
    /// Checks step counts, the level labels, and the Dyck condition.
    pub fn new(m: usize, n: usize, steps: Vec<Step>, levels: Vec<i64>) -> Result<Self> {
        let path = Self::from_steps(m, n, steps)?;
        if path.levels != levels {
            return Err(Error::InvalidPath(format!(
                "labels {levels:?} disagree with the step geometry {:?}",
                path.levels
            )));
        }
        Ok(path)
    }

    /// Derives the labels from the steps.
    pub fn from_steps(m: usize, n: usize, steps: Vec<Step>) -> Result<Self> {
        let norths = steps.iter().filter(|&&s| s == Step::North).count();
        if norths != m || steps.len() != m + n {
            return Err(Error::InvalidPath(format!(
                "need {m} north and {n} west steps, found {norths} and {}",
                steps.len() - norths
            )));
        }
        let levels: Vec<i64> = steps
            .iter()
            .scan(0i64, |level, s| {
                *level += match s {
                    Step::North => n as i64,
                    Step::West => -(m as i64),
                };
                Some(*level)
            })
            .collect();
        if let Some(pos) = levels.iter().position(|&l| l < 0) {
            return Err(Error::InvalidPath(format!("step {pos} drops below the diagonal")));
        }
        Ok(Self { m, n, steps, levels })
    }

    /// Parses a string over `{N, W}`.
    pub fn parse(m: usize, n: usize, text: &str) -> Result<Self> {
        let steps = text
            .trim()
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'N' => Ok(Step::North),
                'W' => Ok(Step::West),
                other => Err(Error::InvalidPath(format!("unexpected step `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_steps(m, n, steps)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn levels(&self) -> &[i64] {
        &self.levels
    }

    /// Labels of the north steps, sorted.
    pub fn vertical_levels(&self) -> Vec<i64> {
        self.levels_of(Step::North)
    }

    /// Labels of the west steps, sorted.
    pub fn horizontal_levels(&self) -> Vec<i64> {
        self.levels_of(Step::West)
    }

    fn levels_of(&self, kind: Step) -> Vec<i64> {
        let mut v: Vec<i64> =
            self.steps.iter().zip(&self.levels).filter(|(s, _)| **s == kind).map(|(_, &l)| l).collect();
        v.sort_unstable();
        v
    }

    /// The Dyck filter bounded by this path: a north step arriving at level
    /// `v` sits directly above the row minimum `v - n`.
    pub fn to_filter(&self) -> Result<Filter> {
        let minima: Vec<i64> = self.vertical_levels().iter().map(|v| v - self.n as i64).collect();
        Filter::new(self.m, self.n, &minima)
    }
}

impl fmt::Display for LabeledPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.steps.iter().try_for_each(|s| write!(f, "{}", s.as_char()))
    }
}

/// The parking tuple of a Dyck filter that removes its column minima in
/// increasing order.
pub fn dyck_embedding(d: &Filter) -> Result<FilterTuple> {
    if !d.is_dyck() {
        return Err(Error::NotDyck { min: d.min_level() });
    }
    FilterTuple::new(d.clone(), d.column_minima())
}

/// Reorders the steps of `d`'s boundary by level.
pub fn sweep(d: &Filter) -> Result<Filter> {
    let path = d.to_path()?;
    let mut labeled: Vec<(i64, Step)> = path.levels().iter().copied().zip(path.steps().iter().copied()).collect();
    labeled.sort_unstable_by_key(|&(level, _)| std::cmp::Reverse(level));
    if labeled.windows(2).any(|p| p[0].0 == p[1].0) {
        return Err(Error::InternalInconsistency(format!("repeated step levels in {path}")));
    }
    let swept = LabeledPath::from_steps(d.m(), d.n(), labeled.into_iter().map(|(_, s)| s).collect())
        .map_err(|e| Error::InternalInconsistency(format!("sweep of {path} is not Dyck: {e}")))?;
    swept.to_filter()
}

/// `B` of the embedded tuple. It is weakly increasing and equals the
/// column-length word of `sweep(d)`.
pub fn sweep_column_word(d: &Filter) -> Result<Word> {
    Ok(dyck_embedding(d)?.map_b())
}

/// A sweep preimage together with the level data that identify it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepPreimage {
    pub filter: Filter,
    /// Row minima of the last filter of the embedded tuple: the north-step labels.
    pub vertical_levels: Vec<i64>,
    /// Column minima of the first filter of the embedded tuple: the west-step labels.
    pub horizontal_levels: Vec<i64>,
}

/// The unique Dyck filter `e` with `sweep(e) = d`.
///
/// The column word of `d` is the `B`-word of the embedded tuple of `e`, so the
/// fixed point of that word yields `e`.
pub fn sweep_inverse(d: &Filter, config: SolverConfig) -> Result<SweepPreimage> {
    if !d.is_dyck() {
        return Err(Error::NotDyck { min: d.min_level() });
    }
    let tuple = map_b_inverse(&d.dyck_word(), config)?;
    let removals = tuple.parking_removals();
    if removals.windows(2).any(|p| p[0] > p[1]) {
        return Err(Error::InternalInconsistency(format!(
            "preimage tuple of {:?} removes {removals:?}, not in increasing order",
            d.row_minima()
        )));
    }
    let e = tuple.parking_initial();
    let vertical_levels: Vec<i64> = e.row_minima().iter().map(|v| v + e.n() as i64).collect();
    let horizontal_levels = e.column_minima();
    let path = e.to_path()?;
    if path.vertical_levels() != vertical_levels || path.horizontal_levels() != horizontal_levels {
        return Err(Error::InternalInconsistency("step labels disagree with the tuple".into()));
    }
    if sweep(&e)? != *d {
        return Err(Error::InternalInconsistency(format!(
            "sweep of recovered {:?} is not {:?}",
            e.row_minima(),
            d.row_minima()
        )));
    }
    Ok(SweepPreimage { filter: e, vertical_levels, horizontal_levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::enumerate_dyck;

    fn f(m: usize, n: usize, minima: &[i64]) -> Filter {
        Filter::new(m, n, minima).unwrap()
    }

    #[test]
    fn boundary_walk_of_four_seven_example() {
        let path = f(4, 7, &[0, 6, 7, 9]).to_path().unwrap();
        assert_eq!(path.to_string(), "NNWWNWNWWWW");
        assert_eq!(path.levels(), &[7, 14, 10, 6, 13, 9, 16, 12, 8, 4, 0]);
        assert_eq!(path.vertical_levels(), vec![7, 13, 14, 16]);
        assert_eq!(path.horizontal_levels(), vec![0, 4, 6, 8, 9, 10, 12]);
        assert_eq!(path.to_filter().unwrap(), f(4, 7, &[0, 6, 7, 9]));
    }

    #[test]
    fn sweep_of_four_seven_example() {
        let d = f(4, 7, &[0, 6, 7, 9]);
        let e = sweep(&d).unwrap();
        assert_eq!(e.row_minima(), vec![0, 5, 7, 14]);
        let back = sweep_inverse(&e, SolverConfig::default()).unwrap();
        assert_eq!(back.filter, d);
        assert_eq!(back.vertical_levels, vec![7, 13, 14, 16]);
        assert_eq!(back.horizontal_levels, vec![0, 4, 6, 8, 9, 10, 12]);
    }

    #[test]
    fn singleton_case() {
        let only = enumerate_dyck(2, 1).unwrap();
        assert_eq!(only.len(), 1);
        assert_eq!(sweep(&only[0]).unwrap(), only[0]);
        assert_eq!(sweep_inverse(&only[0], SolverConfig::default()).unwrap().filter, only[0]);
    }

    #[test]
    fn embedding_of_three_four_example() {
        let t = dyck_embedding(&f(3, 4, &[0, 2, 4])).unwrap();
        assert_eq!(t.parking_removals(), vec![0, 2, 3, 5]);
        assert!(matches!(dyck_embedding(&f(3, 4, &[-1, 1, 3])), Err(Error::NotDyck { min: -1 })));
    }

    #[test]
    fn column_words_of_four_three() {
        let words: std::collections::BTreeSet<String> = enumerate_dyck(4, 3)
            .unwrap()
            .iter()
            .map(|d| sweep_column_word(d).unwrap().to_string())
            .collect();
        assert_eq!(words, ["000", "001", "002", "011", "012"].map(String::from).into());
    }

    #[test]
    fn path_parsing() {
        let p = LabeledPath::parse(3, 4, "NNWWNWW").unwrap();
        assert_eq!(p.to_filter().unwrap(), f(3, 4, &[0, 2, 4]));
        assert!(LabeledPath::parse(3, 4, "WNNWNWW").is_err());
        assert!(LabeledPath::parse(3, 4, "NNWW").is_err());
        assert!(LabeledPath::parse(3, 4, "NNXWNWW").is_err());
    }
}
