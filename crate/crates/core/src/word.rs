//! Words over the alphabet `{0, ..., m-1}`, parking and Dyck recognition,
//! touch points, and the fixed-point classification of a word's action.

use std::fmt;

use crate::arith::gcd;
use crate::error::{Error, Result};

/// A word of length `n` over the alphabet `{0, ..., m-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    m: usize,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(m: usize, letters: Vec<usize>) -> Result<Self> {
        if m == 0 {
            return Err(Error::LetterOutOfRange { letter: 0, m });
        }
        if let Some(&letter) = letters.iter().find(|&&l| l >= m) {
            return Err(Error::LetterOutOfRange { letter, m });
        }
        Ok(Self { m, letters })
    }

    /// The all-zero word of length `n`.
    pub fn zeros(m: usize, n: usize) -> Self {
        Self { m: m.max(1), letters: vec![0; n] }
    }

    /// Parses either a compact digit string (`"020101151"`, only for `m <= 10`)
    /// or a comma-separated list (`"0,2,0,11"`).
    pub fn parse(m: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let letters = if text.contains(',') {
            text.split(',')
                .map(|piece| {
                    piece.trim().parse::<usize>().map_err(|_| Error::SchemaViolation {
                        path: "letters".into(),
                        message: format!("`{}` is not a nonnegative integer", piece.trim()),
                    })
                })
                .collect::<Result<Vec<_>>>()?
        } else if m <= 10 {
            text.chars()
                .map(|c| {
                    c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::SchemaViolation {
                        path: "letters".into(),
                        message: format!("`{c}` is not a digit"),
                    })
                })
                .collect::<Result<Vec<_>>>()?
        } else if text.is_empty() {
            Vec::new()
        } else {
            // A single multi-digit letter is still unambiguous.
            vec![text.parse::<usize>().map_err(|_| Error::SchemaViolation {
                path: "letters".into(),
                message: format!("digit strings need m <= 10 (m = {m}); use commas"),
            })?]
        };
        Self::new(m, letters)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<usize> {
        self.letters
    }

    /// Occurrence count of each letter.
    pub fn histogram(&self) -> Vec<usize> {
        let mut counts = vec![0; self.m];
        for &l in &self.letters {
            counts[l] += 1;
        }
        counts
    }

    /// `m * #{letters < i}` compared against `i * n`, for every `i` in `1..=m`.
    fn prefix_slack(&self) -> impl Iterator<Item = (usize, i128)> + '_ {
        let (m, n) = (self.m as i128, self.n() as i128);
        let hist = self.histogram();
        (1..=self.m).scan(0usize, move |below, i| {
            *below += hist[i - 1];
            Some((i, m * *below as i128 - i as i128 * n))
        })
    }

    pub fn is_parking(&self) -> bool {
        self.prefix_slack().all(|(_, slack)| slack >= 0)
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] <= p[1])
    }

    /// A Dyck word is a weakly increasing parking word.
    pub fn is_dyck(&self) -> bool {
        self.is_weakly_increasing() && self.is_parking()
    }

    /// Interior indices `i` where the parking inequality is tight.
    pub fn touch_points(&self) -> Result<Vec<usize>> {
        self.require_parking()?;
        Ok(self
            .prefix_slack()
            .filter(|&(i, slack)| i < self.m && slack == 0)
            .map(|(i, _)| i)
            .collect())
    }

    pub fn classify(&self) -> FixClassification {
        if !self.is_parking() {
            FixClassification::NoFixedPoint
        } else if gcd(self.m, self.n()) == 1 {
            FixClassification::UniqueFixedPoint
        } else {
            FixClassification::InfinitelyManyFixedPoints
        }
    }

    pub fn sorted(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.sort_unstable();
        Self { m: self.m, letters }
    }

    pub(crate) fn require_parking(&self) -> Result<()> {
        if self.is_parking() {
            Ok(())
        } else {
            Err(Error::NotAParkingWord { m: self.m, n: self.n(), word: self.to_string() })
        }
    }
}

impl fmt::Display for Word {
    /// Digit string for `m <= 10`, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m <= 10 {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// How many fixed points a word has, decided from the parking test and `gcd(m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixClassification {
    UniqueFixedPoint,
    InfinitelyManyFixedPoints,
    NoFixedPoint,
}

impl FixClassification {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::UniqueFixedPoint => "unique-fixed-point",
            Self::InfinitelyManyFixedPoints => "infinitely-many-fixed-points",
            Self::NoFixedPoint => "no-fixed-point",
        }
    }
}

impl fmt::Display for FixClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which words an enumeration yields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordKind {
    All,
    Parking,
    Dyck,
}

/// Lexicographic stream of words of length `n` over `{0, ..., m-1}`.
pub fn enumerate_words(m: usize, n: usize, kind: WordKind) -> impl Iterator<Item = Word> {
    let m = m.max(1);
    let odometer = Odometer { m, current: Some(vec![0; n]), increasing: kind == WordKind::Dyck };
    odometer
        .map(move |letters| Word { m, letters })
        .filter(move |w| kind == WordKind::All || w.is_parking())
}

struct Odometer {
    m: usize,
    current: Option<Vec<usize>>,
    /// Only visit weakly increasing sequences.
    increasing: bool,
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut pos = next.len();
        while pos > 0 {
            pos -= 1;
            if next[pos] + 1 < self.m {
                next[pos] += 1;
                let reset = if self.increasing { next[pos] } else { 0 };
                next[pos + 1..].iter_mut().for_each(|l| *l = reset);
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// All parking words of shape `(m, n)`, lexicographically.
pub fn parking_words(m: usize, n: usize) -> Vec<Word> {
    enumerate_words(m, n, WordKind::Parking).collect()
}

/// All Dyck words of shape `(m, n)`, lexicographically.
pub fn dyck_words(m: usize, n: usize) -> Vec<Word> {
    enumerate_words(m, n, WordKind::Dyck).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(m: usize, s: &str) -> Word {
        Word::parse(m, s).unwrap()
    }

    #[test]
    fn parking_examples() {
        assert!(w(4, "012").is_parking());
        assert!(!w(4, "022").is_parking());
        assert!(w(5, "000").is_parking());
    }

    #[test]
    fn histograms() {
        assert_eq!(w(3, "10011").histogram(), vec![2, 3, 0]);
        assert_eq!(w(4, "000").histogram(), vec![3, 0, 0, 0]);
        assert_eq!(w(5, "010").histogram(), vec![2, 1, 0, 0, 0]);
    }

    #[test]
    fn touch_point_examples() {
        assert_eq!(w(9, "531030678631").touch_points().unwrap(), vec![3, 6]);
        assert!(w(6, "020101151").touch_points().unwrap().is_empty());
        assert!(w(5, "013").touch_points().unwrap().is_empty());
        assert!(matches!(w(4, "022").touch_points(), Err(Error::NotAParkingWord { .. })));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(w(4, "012").classify(), FixClassification::UniqueFixedPoint);
        assert_eq!(w(3, "000").classify(), FixClassification::InfinitelyManyFixedPoints);
        assert_eq!(w(4, "022").classify(), FixClassification::NoFixedPoint);
        assert_eq!(w(3, "000").classify().to_string(), "infinitely-many-fixed-points");
    }

    #[test]
    fn enumeration_sizes_and_order() {
        assert_eq!(enumerate_words(3, 2, WordKind::All).count(), 9);
        let all: Vec<String> = enumerate_words(2, 2, WordKind::All).map(|w| w.to_string()).collect();
        assert_eq!(all, ["00", "01", "10", "11"]);
        let single: Vec<Word> = enumerate_words(1, 4, WordKind::All).collect();
        assert_eq!(single, vec![Word::zeros(1, 4)]);
        assert_eq!(parking_words(4, 3).len(), 16);
        assert_eq!(dyck_words(4, 3).len(), 5);
        assert_eq!(dyck_words(3, 5).len(), 7);
    }

    #[test]
    fn parsing_and_display() {
        let big = Word::parse(12, "0,11,3").unwrap();
        assert_eq!(big.to_string(), "0,11,3");
        assert_eq!(w(6, "020101151").to_string(), "020101151");
        assert!(matches!(Word::parse(3, "013"), Err(Error::LetterOutOfRange { letter: 3, m: 3 })));
        assert!(Word::parse(12, "0113").is_err());
    }
}
