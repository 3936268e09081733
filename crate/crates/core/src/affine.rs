//! Affine permutations in window notation and the Sommers region.
//!
//! An affine permutation `w` of period `n` is stored as `[w(1), ..., w(n)]` and
//! extended by `w(i + n) = w(i) + n`. Inverses are never built: the position
//! holding a value is found from its residue class.

use std::fmt;

use num_integer::Integer;

use crate::arith::{anderson_multiplier, class_minima, require_coprime, triangular};
use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::tuple::{all_tuples, FilterTuple};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("the window is empty".into()));
        }
        let mut seen = vec![false; n];
        for &v in &window {
            let r = v.rem_euclid(n as i64) as usize;
            if std::mem::replace(&mut seen[r], true) {
                return Err(Error::InvalidPermutation(format!("two entries are congruent to {r} mod {n}")));
            }
        }
        let sum: i64 = window.iter().sum();
        if sum != triangular(n) {
            return Err(Error::InvalidPermutation(format!(
                "entries sum to {sum}, not {}",
                triangular(n)
            )));
        }
        Ok(Self { window })
    }

    pub fn identity(n: usize) -> Self {
        Self { window: (1..=n as i64).collect() }
    }

    /// `[l, l+m, ..., l+(n-1)m]` with `l = (1+m+n-mn)/2`.
    pub fn w_mn(m: usize, n: usize) -> Result<Self> {
        require_coprime(m, n)?;
        Self::new(Filter::generator(n, m)?.row_minima())
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `w(i)` for any integer `i`.
    pub fn eval(&self, i: i64) -> i64 {
        let n = self.n() as i64;
        let (shift, k) = (i - 1).div_mod_floor(&n);
        self.window[k as usize] + shift * n
    }

    /// The unique `j` with `w(j) = v`.
    pub fn value_position(&self, v: i64) -> i64 {
        let n = self.n() as i64;
        let k = self
            .window
            .iter()
            .position(|&x| (x - v).rem_euclid(n) == 0)
            .expect("the window meets every residue class");
        k as i64 + 1 + (v - self.window[k])
    }

    pub fn is_dominant(&self) -> bool {
        self.window.windows(2).all(|p| p[0] < p[1])
    }

    /// Whether no `i < j` has `w(i) - w(j) = m`, i.e. `w^{-1}` labels an
    /// alcove of the Sommers region.
    ///
    /// Shifting both indices by `n` preserves the difference, so it suffices
    /// to take `i` in the window. For such `i` the only candidate partner is
    /// the position of `w(i) - m`, which must come before `i`.
    pub fn in_sommers(&self, m: usize) -> Result<bool> {
        require_coprime(m, self.n())?;
        Ok((1..=self.n() as i64).all(|i| self.value_position(self.eval(i) - m as i64) < i))
    }

    fn require_sommers(&self, m: usize) -> Result<()> {
        if self.in_sommers(m)? {
            Ok(())
        } else {
            Err(Error::NotInSommers { window: self.window.clone(), m })
        }
    }

    fn require_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(self.window.clone()))
        }
    }

    /// Anderson labeling: `a * (w(i) - k) mod m` with `k` the least entry.
    pub fn anderson(&self, m: usize) -> Result<Word> {
        self.require_sommers(m)?;
        let a = anderson_multiplier(m, self.n());
        let k = *self.window.iter().min().expect("nonempty");
        let letters = self.window.iter().map(|v| (a * (v - k)).rem_euclid(m as i64) as usize).collect();
        Word::new(m, letters)
    }

    /// Pak-Stanley labeling: entry `i` counts the `j > i` with
    /// `0 < w(i) - w(j) < m`.
    ///
    /// Those `w(j)` are among the `m - 1` values just below `w(i)`, so each
    /// entry is a finite count of positions.
    pub fn pak_stanley(&self, m: usize) -> Result<Word> {
        self.require_sommers(m)?;
        let letters = (1..=self.n() as i64)
            .map(|i| {
                let top = self.eval(i);
                (top - m as i64 + 1..top).filter(|&v| self.value_position(v) > i).count()
            })
            .collect();
        Word::new(m, letters)
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The balanced (m,n)-filter whose column minima are the window of a dominant
/// Sommers element.
pub fn dominant_to_filter(w: &AffinePermutation, m: usize) -> Result<Filter> {
    w.require_dominant()?;
    w.require_sommers(m)?;
    let swapped = Filter::new(w.n(), m, w.window())
        .map_err(|_| Error::NotInSommers { window: w.window.clone(), m })?;
    swapped.mn_swap().to_balanced()
}

/// The dominant element whose window is the sorted column minima of `b`.
pub fn filter_to_dominant(b: &Filter) -> Result<AffinePermutation> {
    if !b.is_balanced() {
        return Err(Error::InvalidFilter(format!("{:?} is not balanced", b.row_minima())));
    }
    AffinePermutation::new(b.column_minima())
}

/// The `m` least values of `{w(i) : i >= 1}` in each class mod `m`, sorted:
/// a dominant element of period `m`.
pub fn mn_swap_dominant(w: &AffinePermutation, m: usize) -> Result<AffinePermutation> {
    w.require_dominant()?;
    w.require_sommers(m)?;
    let mut minima = class_minima(w.window(), w.n() as i64, m);
    minima.sort_unstable();
    AffinePermutation::new(minima)
}

/// The window listing the removed levels of a tuple.
pub fn tuple_to_window(t: &FilterTuple) -> AffinePermutation {
    AffinePermutation::new(t.removals().to_vec()).expect("removals of a balanced tuple form a window")
}

/// Rebuilds the balanced tuple whose removals are the window of `w`.
///
/// The removals are the column minima of the starting filter, so that filter
/// is recovered by swapping the roles of `m` and `n` on the sorted window.
pub fn window_to_tuple(w: &AffinePermutation, m: usize) -> Result<FilterTuple> {
    w.require_sommers(m)?;
    let not_sommers = || Error::NotInSommers { window: w.window.clone(), m };
    let mut sorted = w.window.clone();
    sorted.sort_unstable();
    let initial = Filter::new(w.n(), m, &sorted).map_err(|_| not_sommers())?.mn_swap();
    FilterTuple::new(initial, w.window.clone()).map_err(|_| not_sommers())
}

/// Every Sommers element, in lexicographic window order.
pub fn enumerate_sommers(m: usize, n: usize) -> Result<Vec<AffinePermutation>> {
    let mut windows: Vec<AffinePermutation> = all_tuples(m, n)?.iter().map(tuple_to_window).collect();
    windows.sort();
    Ok(windows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aff(window: &[i64]) -> AffinePermutation {
        AffinePermutation::new(window.to_vec()).unwrap()
    }

    #[test]
    fn positions() {
        assert_eq!(AffinePermutation::identity(4).value_position(5), 5);
        let w = aff(&[3, -1, 2, 5, 6]);
        assert_eq!(w.value_position(0), -1);
        for v in -20..20 {
            assert_eq!(w.eval(w.value_position(v)), v);
        }
    }

    #[test]
    fn sommers_membership() {
        assert!(aff(&[3, -1, 2, 5, 6]).in_sommers(3).unwrap());
        assert!(AffinePermutation::identity(5).in_sommers(7).unwrap());
        assert!(!aff(&[4, 0, 2]).in_sommers(4).unwrap());
        assert!(matches!(aff(&[1, 2, 3]).in_sommers(3), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn dominance_and_staircases() {
        assert!(aff(&[-2, 2, 6]).is_dominant());
        assert!(!aff(&[3, -1, 2, 5, 6]).is_dominant());
        assert_eq!(AffinePermutation::w_mn(4, 3).unwrap(), aff(&[-2, 2, 6]));
        assert_eq!(AffinePermutation::w_mn(5, 3).unwrap(), aff(&[-3, 2, 7]));
        assert_eq!(AffinePermutation::w_mn(3, 4).unwrap(), aff(&[-2, 1, 4, 7]));
    }

    #[test]
    fn swaps() {
        assert_eq!(mn_swap_dominant(&aff(&[-1, 2, 3, 5, 6]), 3).unwrap(), aff(&[-1, 3, 4]));
        assert_eq!(mn_swap_dominant(&aff(&[-1, 3, 4]), 5).unwrap(), aff(&[-1, 2, 3, 5, 6]));
        let b = dominant_to_filter(&aff(&[-1, 2, 3, 5, 6]), 3).unwrap();
        assert_eq!(b.row_minima(), vec![-1, 3, 4]);
        assert_eq!(filter_to_dominant(&b).unwrap(), aff(&[-1, 2, 3, 5, 6]));
        assert!(matches!(dominant_to_filter(&aff(&[3, -1, 2, 5, 6]), 3), Err(Error::NotDominant(_))));
    }

    #[test]
    fn labelings() {
        let w = aff(&[3, -1, 2, 5, 6]);
        assert_eq!(w.anderson(3).unwrap().to_string(), "10001");
        assert_eq!(w.pak_stanley(3).unwrap().to_string(), "10011");
        assert_eq!(aff(&[5, -2, 3]).anderson(5).unwrap().to_string(), "100");
        assert_eq!(aff(&[5, -2, 3]).pak_stanley(5).unwrap().to_string(), "301");
        assert_eq!(AffinePermutation::identity(3).anderson(4).unwrap().to_string(), "012");
        assert_eq!(AffinePermutation::identity(3).pak_stanley(4).unwrap().to_string(), "000");
        assert!(matches!(aff(&[4, 0, 2]).pak_stanley(4), Err(Error::NotInSommers { .. })));
    }

    #[test]
    fn windows_and_tuples() {
        let w = aff(&[3, -1, 2, 5, 6]);
        let t = window_to_tuple(&w, 3).unwrap();
        assert_eq!(t.initial().row_minima(), vec![-1, 3, 4]);
        assert_eq!(tuple_to_window(&t), w);
        let id = window_to_tuple(&AffinePermutation::identity(3), 4).unwrap();
        assert_eq!(id.initial().row_minima(), vec![1, 2, 3, 4]);
        assert_eq!(enumerate_sommers(4, 3).unwrap().len(), 16);
        assert_eq!(enumerate_sommers(5, 3).unwrap().len(), 25);
    }

    #[test]
    fn bad_windows() {
        assert!(AffinePermutation::new(vec![1, 4, 1]).is_err());
        assert!(AffinePermutation::new(vec![1, 2, 0]).is_err());
        assert!(AffinePermutation::new(vec![]).is_err());
    }
}
