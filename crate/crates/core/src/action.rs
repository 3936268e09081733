//! The action of words on weakly increasing points.
//!
//! Letter `i` acts on a sorted point by adding `m` to its `i`-th smallest
//! coordinate (0-indexed), subtracting one from every coordinate, and sorting
//! again. A word acts letter by letter from the left. The coordinate sum never
//! changes, and all of the solver's work happens at sum `C(m+1, 2)`. At that sum
//! the unique fixed point of a coprime parking word is the vector of row
//! minima of a balanced filter.
//!
//! Points carry an optional common denominator. It is only needed by the
//! touch-point construction for non-coprime words, whose rescaled blocks can
//! land on fractional coordinates.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;

use crate::arith::{gcd, triangular};
use crate::error::{Error, Result};
use crate::word::Word;

/// A weakly increasing m-tuple, stored as integer numerators over a positive
/// common denominator (1 for ordinary integer points).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    coords: Vec<i64>,
    denom: i64,
}

impl Point {
    /// An integer point. The coordinates must already be weakly increasing.
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        Self::with_denominator(coords, 1)
    }

    /// Sorts the coordinates first.
    pub fn from_unsorted(mut coords: Vec<i64>) -> Self {
        coords.sort_unstable();
        Self { coords, denom: 1 }
    }

    /// The point `coords / denom`, reduced to lowest terms.
    pub fn with_denominator(coords: Vec<i64>, denom: i64) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidPoint("a point needs at least one coordinate".into()));
        }
        if denom <= 0 {
            return Err(Error::InvalidPoint(format!("denominator {denom} is not positive")));
        }
        if coords.windows(2).any(|p| p[0] > p[1]) {
            return Err(Error::InvalidPoint(format!("coordinates {coords:?} are not sorted")));
        }
        let common = coords.iter().fold(denom, |g, &c| g.gcd(&c));
        Ok(Self {
            coords: coords.into_iter().map(|c| c / common).collect(),
            denom: denom / common,
        })
    }

    pub fn m(&self) -> usize {
        self.coords.len()
    }

    /// Numerators of the coordinates.
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn denominator(&self) -> i64 {
        self.denom
    }

    pub fn is_integral(&self) -> bool {
        self.denom == 1
    }

    /// Sum of the numerators.
    pub fn sum(&self) -> i64 {
        self.coords.iter().sum()
    }

    /// Adds the same integer to every coordinate.
    pub fn translate(&self, shift: i64) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c + shift * self.denom).collect(),
            denom: self.denom,
        }
    }

    /// The translate of an integer point whose coordinates sum to `target`.
    pub fn normalized_to(&self, target: i64) -> Result<Self> {
        let m = self.m() as i64;
        let gap = target * self.denom - self.sum();
        if !self.is_integral() || gap % m != 0 {
            return Err(Error::InvalidPoint(format!(
                "no integral translate of {self:?} has coordinate sum {target}"
            )));
        }
        Ok(self.translate(gap / m))
    }

    /// The translate with coordinate sum `C(m+1, 2)`.
    pub fn balanced(&self) -> Result<Self> {
        self.normalized_to(triangular(self.m()))
    }

    pub fn apply_letter(&self, letter: usize) -> Result<Self> {
        let m = self.m();
        if letter >= m {
            return Err(Error::LetterOutOfRange { letter, m });
        }
        let mut coords = self.coords.clone();
        coords[letter] += m as i64 * self.denom;
        coords.iter_mut().for_each(|c| *c -= self.denom);
        // Only the bumped coordinate can be out of place, and only upward.
        let mut pos = letter;
        while pos + 1 < m && coords[pos] > coords[pos + 1] {
            coords.swap(pos, pos + 1);
            pos += 1;
        }
        Ok(Self { coords, denom: self.denom })
    }

    pub fn apply_word(&self, word: &Word) -> Result<Self> {
        if word.m() != self.m() {
            return Err(Error::DimensionMismatch { expected: self.m(), found: word.m() });
        }
        word.letters().iter().try_fold(self.clone(), |x, &l| x.apply_letter(l))
    }

    /// `sum over i<j of (x_j - x_i)^2`, evaluated on the numerators.
    ///
    /// For integer points this is the norm itself; otherwise it is the norm
    /// scaled by the squared denominator.
    pub fn norm(&self) -> BigUint {
        quadratic_form(self.coords.iter().map(|&c| BigInt::from(c)))
    }

    /// The same quadratic form applied to `x - y`, over the common denominator
    /// of both points.
    pub fn distance(&self, other: &Self) -> Result<BigUint> {
        if self.m() != other.m() {
            return Err(Error::DimensionMismatch { expected: self.m(), found: other.m() });
        }
        let (a, b) = (BigInt::from(other.denom), BigInt::from(self.denom));
        Ok(quadratic_form(
            self.coords.iter().zip(&other.coords).map(|(&x, &y)| BigInt::from(x) * &a - BigInt::from(y) * &b),
        ))
    }

    /// Residues of the integer coordinates modulo `modulus`.
    pub fn residues(&self, modulus: usize) -> Vec<usize> {
        self.coords.iter().map(|c| c.rem_euclid(modulus as i64) as usize).collect()
    }
}

/// `m * sum(x^2) - (sum x)^2`, which expands to the pairwise squared gaps.
fn quadratic_form(values: impl Iterator<Item = BigInt>) -> BigUint {
    let (mut count, mut sum, mut squares) = (0u64, BigInt::from(0), BigInt::from(0));
    for v in values {
        count += 1;
        squares += &v * &v;
        sum += v;
    }
    let form = BigInt::from(count) * squares - &sum * &sum;
    form.to_biguint().expect("the pairwise form is a sum of squares")
}

/// True when one application of `word` did not increase the distance between
/// `x` and `y`.
pub fn contraction_certificate(word: &Word, x: &Point, y: &Point) -> Result<bool> {
    let before = x.distance(y)?;
    let after = x.apply_word(word)?.distance(&y.apply_word(word)?)?;
    Ok(after <= before)
}

/// The solver's budget in word applications.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverConfig {
    /// `None` means `10 * (m + n)^2`.
    pub max_iterations: Option<usize>,
}

impl SolverConfig {
    pub fn with_budget(max_iterations: usize) -> Self {
        Self { max_iterations: Some(max_iterations) }
    }

    pub fn budget(&self, m: usize, n: usize) -> usize {
        self.max_iterations.unwrap_or(10 * (m + n) * (m + n))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitOutcome {
    Fixed(Point),
    Cycle { period: usize, witness: Point },
    Diverged { step: usize, norm: BigUint },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub outcome: OrbitOutcome,
    /// Word applications performed.
    pub iterations: usize,
}

impl OrbitReport {
    pub fn fixed_point(&self) -> Option<&Point> {
        match &self.outcome {
            OrbitOutcome::Fixed(p) => Some(p),
            _ => None,
        }
    }
}

/// Staircase with gaps `n` and coordinate sum `C(m+1, 2)`.
///
/// For coprime `(m, n)` this is `[l, l+n, ..., l+(m-1)n]` with
/// `l = (1+m+n-mn)/2`, the row minima of the balanced filter generated by a
/// single level. Otherwise the constant is rounded down and the shortfall is
/// spread over the top coordinates.
pub fn staircase(m: usize, n: usize) -> Point {
    let (mi, ni) = (m as i64, n as i64);
    let spread = ni * mi * (mi - 1) / 2;
    let excess = triangular(m) - spread;
    let base = Integer::div_floor(&excess, &mi);
    let extra = (excess - base * mi) as usize;
    let coords = (0..m)
        .map(|k| base + k as i64 * ni + i64::from(k >= m - extra))
        .collect();
    Point { coords, denom: 1 }
}

/// Iterates `x <- word(x)` from the staircase until the orbit repeats, the
/// norm escapes, or the budget runs out.
///
/// The escape threshold is `norm(start) + (m n)^4`. It is an engineering
/// constant: points under a non-parking word drift apart without bound, so any
/// large threshold eventually trips.
pub fn find_fixed_point(word: &Word, config: SolverConfig) -> Result<OrbitReport> {
    let (m, n) = (word.m(), word.n());
    let coprime_parking = gcd(m, n) == 1 && word.is_parking();
    let start = staircase(m, n);
    let escape = start.norm() + BigUint::from((m * n) as u64).pow(4);
    let mut seen: HashMap<Point, usize> = HashMap::new();
    let mut x = start;
    for iteration in 1..=config.budget(m, n) {
        let y = x.apply_word(word)?;
        if y == x {
            return Ok(OrbitReport { outcome: OrbitOutcome::Fixed(y), iterations: iteration });
        }
        if let Some(&first) = seen.get(&y) {
            let period = iteration - first;
            if coprime_parking {
                return Err(Error::InternalInconsistency(format!(
                    "coprime parking word {word} entered a cycle of period {period} through {:?}",
                    y.coords()
                )));
            }
            return Ok(OrbitReport {
                outcome: OrbitOutcome::Cycle { period, witness: y },
                iterations: iteration,
            });
        }
        let norm = y.norm();
        if norm > escape {
            if coprime_parking {
                return Err(Error::InternalInconsistency(format!(
                    "coprime parking word {word} escaped to norm {norm}"
                )));
            }
            return Ok(OrbitReport {
                outcome: OrbitOutcome::Diverged { step: iteration, norm },
                iterations: iteration,
            });
        }
        seen.insert(x, iteration - 1);
        x = y;
    }
    Err(Error::IterationBudgetExhausted { iterations: config.budget(m, n) })
}

/// The unique fixed point at sum `C(m+1, 2)` of a coprime parking word.
pub fn unique_fixed_point(word: &Word, config: SolverConfig) -> Result<Point> {
    crate::arith::require_coprime(word.m(), word.n())?;
    word.require_parking()?;
    match find_fixed_point(word, config)?.outcome {
        OrbitOutcome::Fixed(p) => Ok(p),
        other => Err(Error::InternalInconsistency(format!(
            "coprime parking word {word} produced {other:?}"
        ))),
    }
}

/// Brute-force fixed point: search every parking filter tuple for the one
/// whose `B`-word is `word`, and return its balanced initial row minima.
pub fn fixed_point_oracle(word: &Word) -> Result<Point> {
    let (m, n) = (word.m(), word.n());
    crate::arith::require_coprime(m, n)?;
    word.require_parking()?;
    crate::tuple::search_balanced_tuples(m, n)
        .into_iter()
        .find(|t| t.map_b() == *word)
        .map(|t| Point::from_unsorted(t.initial().row_minima().to_vec()))
        .ok_or_else(|| Error::InternalInconsistency(format!("no tuple has B-word {word}")))
}

/// One block of the touch-point decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Smallest letter of the block in the original alphabet.
    pub first_letter: usize,
    /// The block's letters shifted down to start at zero.
    pub word: Word,
}

/// Splits a parking word at its touch points into sub-parking words.
pub fn touch_point_components(word: &Word) -> Result<Vec<Component>> {
    let mut bounds = vec![0];
    bounds.extend(word.touch_points()?);
    bounds.push(word.m());
    bounds
        .windows(2)
        .map(|b| {
            let letters = word
                .letters()
                .iter()
                .filter(|&&l| (b[0]..b[1]).contains(&l))
                .map(|l| l - b[0])
                .collect();
            Ok(Component { first_letter: b[0], word: Word::new(b[1] - b[0], letters)? })
        })
        .collect()
}

/// Builds a fixed point of any parking word from fixed points of its
/// touch-point components.
///
/// Component `j` has `n_j` letters; its fixed point is stretched by `n / n_j`
/// and shifted by `offsets[j]`. Consecutive offsets must differ by more than
/// `m n`. The result is translated to coordinate sum `C(m+1, 2)` and checked
/// against the word before it is returned.
pub fn construct_fixed_point_general(word: &Word, offsets: &[i64]) -> Result<Point> {
    let components = touch_point_components(word)?;
    if offsets.len() != components.len() {
        return Err(Error::DimensionMismatch { expected: components.len(), found: offsets.len() });
    }
    let mn = (word.m() * word.n()) as i64;
    if let Some(pair) = offsets.windows(2).find(|p| p[1] - p[0] <= mn) {
        return Err(Error::InsufficientGap(format!(
            "offsets {} and {} differ by at most m*n = {mn}",
            pair[0], pair[1]
        )));
    }
    let pieces = component_fixed_points(&components)?;
    let point = assemble(word, &components, &pieces, offsets)?;
    if point.apply_word(word)? != point {
        return Err(Error::InsufficientGap(format!(
            "offsets {offsets:?} let neighbouring blocks interact; spread them further"
        )));
    }
    Ok(point)
}

/// Offsets spaced far enough apart for any component shapes: every block
/// starts more than `m n` above the end of the previous one.
pub fn separated_offsets(word: &Word) -> Result<Vec<i64>> {
    let components = touch_point_components(word)?;
    let pieces = component_fixed_points(&components)?;
    let n = word.n() as i64;
    let mn = (word.m() * word.n()) as i64;
    let mut offsets: Vec<i64> = Vec::with_capacity(pieces.len());
    let mut previous_top: Option<i64> = None;
    for (c, x) in components.iter().zip(&pieces) {
        let nj = c.word.n() as i64;
        let (lo, hi) = (x.coords()[0], *x.coords().last().unwrap());
        // Scaled block spans [lo*n/nj, hi*n/nj]; round outward.
        let low = Integer::div_floor(&(lo * n), &nj);
        let offset = match previous_top {
            None => 0,
            Some(top) => (top + mn + 1 - low).max(offsets.last().unwrap() + mn + 1),
        };
        offsets.push(offset);
        previous_top = Some(Integer::div_ceil(&(hi * n), &nj) + offset);
    }
    Ok(offsets)
}

fn component_fixed_points(components: &[Component]) -> Result<Vec<Point>> {
    components
        .iter()
        .map(|c| {
            let report = find_fixed_point(&c.word, SolverConfig::default())?;
            match report.outcome {
                OrbitOutcome::Fixed(p) => Ok(p),
                other => Err(Error::WitnessNotFound(format!(
                    "iteration on component {} ended in {other:?}",
                    c.word
                ))),
            }
        })
        .collect()
}

fn assemble(word: &Word, components: &[Component], pieces: &[Point], offsets: &[i64]) -> Result<Point> {
    let n = word.n() as i64;
    // Common denominator making every n/n_j stretch integral.
    let denom = components
        .iter()
        .map(|c| {
            let nj = c.word.n() as i64;
            nj / nj.gcd(&n)
        })
        .fold(1i64, |acc, d| acc.lcm(&d));
    let mut coords = Vec::with_capacity(word.m());
    for ((c, x), &offset) in components.iter().zip(pieces).zip(offsets) {
        let nj = c.word.n() as i64;
        coords.extend(x.coords().iter().map(|&v| v * n * denom / nj + offset * denom));
    }
    if coords.windows(2).any(|p| p[0] > p[1]) {
        return Err(Error::InsufficientGap(format!(
            "offsets {offsets:?} make neighbouring blocks overlap"
        )));
    }
    // Translate to sum C(m+1, 2), refining the denominator by m if needed.
    let m = word.m() as i64;
    let target = triangular(word.m());
    let (coords, denom) = {
        let gap = target * denom - coords.iter().sum::<i64>();
        if gap % m == 0 {
            (coords.into_iter().map(|v| v + gap / m).collect::<Vec<_>>(), denom)
        } else {
            (coords.into_iter().map(|v| v * m + gap).collect(), denom * m)
        }
    };
    Point::with_denominator(coords, denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coords: &[i64]) -> Point {
        Point::new(coords.to_vec()).unwrap()
    }

    fn w(m: usize, s: &str) -> Word {
        Word::parse(m, s).unwrap()
    }

    #[test]
    fn letter_examples() {
        assert_eq!(p(&[0, 2, 4]).apply_letter(0).unwrap(), p(&[1, 2, 3]));
        assert_eq!(p(&[-1, 3, 4]).apply_letter(1).unwrap(), p(&[-2, 3, 5]));
        assert_eq!(p(&[0, 0]).apply_letter(1).unwrap(), p(&[-1, 1]));
        assert!(matches!(p(&[0, 0]).apply_letter(2), Err(Error::LetterOutOfRange { .. })));
    }

    #[test]
    fn chain_of_ten_zero_one_one() {
        let word = w(3, "10011");
        let chain: Vec<Point> = word
            .letters()
            .iter()
            .scan(p(&[-1, 3, 4]), |x, &l| {
                *x = x.apply_letter(l).unwrap();
                Some(x.clone())
            })
            .collect();
        let expected = [[-2, 3, 5], [0, 2, 4], [1, 2, 3], [0, 2, 4], [-1, 3, 4]];
        assert_eq!(chain, expected.iter().map(|c| p(c)).collect::<Vec<_>>());
    }

    #[test]
    fn word_examples() {
        assert_eq!(p(&[-3, 1, 2, 4, 6, 11]).apply_word(&w(6, "020101151")).unwrap(), p(&[-3, 1, 2, 4, 6, 11]));
        let x = p(&[5, 9]);
        assert_eq!(x.apply_word(&Word::zeros(2, 0)).unwrap(), x);
        assert!(matches!(x.apply_word(&w(3, "0")), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn norms() {
        assert_eq!(p(&[0, 0, 0]).norm(), BigUint::from(0u8));
        assert_eq!(p(&[-1, 3, 4]).norm(), BigUint::from(42u8));
        assert_eq!(Point::from_unsorted(vec![-2, 5, 3]).norm(), BigUint::from(78u8));
        assert!(Point::new(vec![-2, 5, 3]).is_err());
    }

    #[test]
    fn staircase_is_balanced_generator() {
        assert_eq!(staircase(4, 3), p(&[-2, 1, 4, 7]));
        assert_eq!(staircase(3, 4), p(&[-2, 2, 6]));
        assert_eq!(staircase(3, 5), p(&[-3, 2, 7]));
        assert_eq!(staircase(6, 9).sum(), 21);
        assert_eq!(staircase(2, 4).sum(), 3);
    }

    #[test]
    fn solver_examples() {
        let report = find_fixed_point(&w(3, "10011"), SolverConfig::default()).unwrap();
        assert_eq!(report.fixed_point(), Some(&p(&[-1, 3, 4])));
        let report = find_fixed_point(&w(4, "022"), SolverConfig::default()).unwrap();
        assert!(matches!(report.outcome, OrbitOutcome::Diverged { .. }));
        let report = find_fixed_point(&w(6, "020101151"), SolverConfig::default()).unwrap();
        let x = report.fixed_point().expect("the (6,9) example reaches a fixed point");
        assert_eq!(x.apply_word(&w(6, "020101151")).unwrap(), *x);
        assert!(matches!(
            find_fixed_point(&w(4, "022"), SolverConfig::with_budget(1)),
            Err(Error::IterationBudgetExhausted { iterations: 1 })
        ));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(fixed_point_oracle(&w(3, "10011")).unwrap(), p(&[-1, 3, 4]));
        assert_eq!(fixed_point_oracle(&w(4, "000")).unwrap(), p(&[1, 2, 3, 4]));
        assert_eq!(fixed_point_oracle(&w(4, "012")).unwrap(), p(&[-2, 1, 4, 7]));
        assert!(matches!(fixed_point_oracle(&w(4, "022")), Err(Error::NotAParkingWord { .. })));
    }

    #[test]
    fn touch_point_decomposition_example() {
        let word = w(9, "531030678631");
        let comps = touch_point_components(&word).unwrap();
        let sub: Vec<String> = comps.iter().map(|c| c.word.to_string()).collect();
        assert_eq!(sub, ["1001", "2000", "0120"]);
        let sub_points: Vec<Point> = component_fixed_points(&comps)
            .unwrap()
            .into_iter()
            .map(|x| x.normalized_to(0).unwrap())
            .collect();
        assert_eq!(sub_points, vec![p(&[-2, 0, 2]), p(&[-1, 0, 1]), p(&[-2, -1, 3])]);

        // The hand-assembled witness with second and third offsets 22 and 44.
        let (n2, n3) = (22, 44);
        let manual = p(&[-6, 0, 6, n2 - 3, n2, n2 + 3, n3 - 6, n3 - 3, n3 + 9]);
        assert_eq!(manual.apply_word(&word).unwrap(), manual);

        let offsets = separated_offsets(&word).unwrap();
        let x = construct_fixed_point_general(&word, &offsets).unwrap();
        assert_eq!(x.apply_word(&word).unwrap(), x);
        assert!(matches!(
            construct_fixed_point_general(&word, &[0, 50, 200]),
            Err(Error::InsufficientGap(_))
        ));
    }

    #[test]
    fn general_construction_on_coprime_word_is_the_unique_point() {
        let word = w(3, "10011");
        assert_eq!(construct_fixed_point_general(&word, &[7]).unwrap(), p(&[-1, 3, 4]));
    }

    #[test]
    fn contraction_examples() {
        let word = w(3, "10011");
        let x = p(&[-1, 3, 4]);
        assert!(contraction_certificate(&word, &x, &x).unwrap());
        assert!(contraction_certificate(&word, &x, &p(&[0, 2, 4])).unwrap());
    }
}
