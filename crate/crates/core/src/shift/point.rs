use std::fmt;

use crate::error::{Error, Result};

use super::matrix::TransitionMatrix;
use super::word::{Symbol, Word};

/// An eventually periodic point `preperiod · period · period · …`.
///
/// Points are kept in a normal form (primitive period, shortest
/// preperiod), so two values are equal iff they denote the same sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EpPoint {
    preperiod: Word,
    period: Word,
}

impl EpPoint {
    /// Builds a normalized point, checking admissibility of the sequence.
    pub fn new(matrix: &TransitionMatrix, preperiod: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::BadInput("period must be nonempty".into()));
        }
        let mut cycle = period.clone().into_symbols();
        cycle.push(period[0]);
        if !matrix.is_admissible(&preperiod) {
            return Err(Error::InadmissibleWord(preperiod));
        }
        if !matrix.is_admissible(&cycle) {
            return Err(Error::InadmissibleWord(period));
        }
        if let Some(last) = preperiod.last() {
            if !matrix.get(last, period[0]) {
                return Err(Error::InadmissibleWord(preperiod.concat(&period)));
            }
        }
        Ok(Self::normalized(preperiod, period))
    }

    /// Normal form without an admissibility check. Callers guarantee the
    /// sequence is admissible.
    pub(crate) fn normalized(preperiod: Word, period: Word) -> Self {
        let mut per = period.into_symbols();
        let p = per.len();
        if let Some(d) =
            (1..=p).find(|&d| p.is_multiple_of(d) && (d..p).all(|i| per[i] == per[i - d]))
        {
            per.truncate(d);
        }
        Self::trimmed(preperiod, Word::new(per))
    }

    /// Shortest preperiod for an already primitive period.
    fn trimmed(preperiod: Word, period: Word) -> Self {
        let mut pre = preperiod.into_symbols();
        let mut per = period.into_symbols();
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        EpPoint {
            preperiod: Word::new(pre),
            period: Word::new(per),
        }
    }

    /// The constant point `s^∞`.
    pub fn constant(matrix: &TransitionMatrix, s: Symbol) -> Result<Self> {
        Self::new(matrix, Word::empty(), Word::from([s]))
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// The symbol at 0-based position `i`.
    pub fn symbol_at(&self, i: usize) -> Symbol {
        let m = self.preperiod.len();
        if i < m {
            self.preperiod[i]
        } else {
            self.period[(i - m) % self.period.len()]
        }
    }

    /// The first `n` symbols.
    pub fn prefix(&self, n: usize) -> Word {
        Word::new((0..n).map(|i| self.symbol_at(i)).collect())
    }

    pub fn starts_with(&self, w: &[Symbol]) -> bool {
        w.iter().enumerate().all(|(i, &s)| self.symbol_at(i) == s)
    }

    /// The shifted point `σⁿ(x)`.
    pub fn shift(&self, n: usize) -> EpPoint {
        let m = self.preperiod.len();
        if n <= m {
            EpPoint {
                preperiod: Word::from(&self.preperiod[n..]),
                period: self.period.clone(),
            }
        } else {
            let mut per = self.period.clone().into_symbols();
            let r = (n - m) % per.len();
            per.rotate_left(r);
            EpPoint {
                preperiod: Word::empty(),
                period: Word::new(per),
            }
        }
    }

    /// The point `w·σᵏ(x)`, with the junction assumed admissible.
    pub fn rewrite_prefix(&self, k: usize, w: &[Symbol]) -> EpPoint {
        let m = self.preperiod.len();
        if k < m {
            let mut pre = Vec::with_capacity(w.len() + m - k);
            pre.extend_from_slice(w);
            pre.extend_from_slice(&self.preperiod[k..]);
            EpPoint {
                preperiod: Word::new(pre),
                period: self.period.clone(),
            }
        } else {
            let mut per = self.period.clone().into_symbols();
            let r = (k - m) % per.len();
            per.rotate_left(r);
            Self::trimmed(Word::from(w), Word::new(per))
        }
    }

    /// The point `w·x`. The caller guarantees admissibility of the junction.
    pub fn prepend(&self, w: &[Symbol]) -> EpPoint {
        let pre = Word::from(w).concat(&self.preperiod);
        if self.preperiod.is_empty() {
            // only the new preperiod can end in a copy of the period
            Self::trimmed(pre, self.period.clone())
        } else {
            EpPoint {
                preperiod: pre,
                period: self.period.clone(),
            }
        }
    }
}

/// `pre|per` with comma-separated words; an empty preperiod is written `|per`.
impl fmt::Display for EpPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.preperiod.is_empty() {
            write!(f, "{}", self.preperiod)?;
        }
        write!(f, "|{}", self.period)
    }
}

impl EpPoint {
    /// Parses `pre|per` and validates against `matrix`.
    pub fn parse(matrix: &TransitionMatrix, s: &str) -> Result<Self> {
        let (pre, per) = s
            .split_once('|')
            .ok_or_else(|| Error::parse(0, format!("point {s:?} lacks '|'")))?;
        let pre: Word = pre.parse()?;
        let per: Word = per.parse()?;
        Self::new(matrix, pre, per)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form() {
        let m = TransitionMatrix::full_shift(2).unwrap();
        let a = EpPoint::new(&m, Word::from([1, 2, 1]), Word::from([2, 1, 2, 1])).unwrap();
        assert_eq!(a.preperiod(), &Word::empty());
        assert_eq!(a.period(), &Word::from([1, 2]));
        let b = EpPoint::new(&m, Word::from([2]), Word::from([1])).unwrap();
        assert_eq!(b.to_string(), "2|1");
        assert_eq!(EpPoint::parse(&m, "2|1,1").unwrap(), b);
        assert_eq!(EpPoint::parse(&m, "|1").unwrap().to_string(), "|1");
    }

    #[test]
    fn shift_and_prefix() {
        let m = TransitionMatrix::golden_mean();
        let x = EpPoint::parse(&m, "2|1,2").unwrap();
        assert_eq!(x.prefix(4), Word::from([2, 1, 2, 1]));
        assert_eq!(x.shift(1), EpPoint::parse(&m, "|1,2").unwrap());
        assert_eq!(x.shift(2), EpPoint::parse(&m, "|2,1").unwrap());
        assert_eq!(x.shift(0), x);
        assert_eq!(x.shift(1).prepend(&[2]), x);
    }

    #[test]
    fn rewrite_prefix_matches_shift_then_prepend() {
        let m = TransitionMatrix::full_shift(2).unwrap();
        let words: Vec<Word> = (0..=3).flat_map(|k| m.admissible_words(k)).collect();
        for pre in &words {
            for per in words.iter().filter(|w| !w.is_empty()) {
                let x = EpPoint::new(&m, pre.clone(), per.clone()).unwrap();
                for k in 0..=5 {
                    let s = x.shift(k);
                    for w in &words {
                        let want =
                            EpPoint::new(&m, w.concat(s.preperiod()), s.period().clone()).unwrap();
                        assert_eq!(x.rewrite_prefix(k, w), want, "{x}, k = {k}, w = {w}");
                        assert_eq!(s.prepend(w), want);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_inadmissible() {
        let m = TransitionMatrix::golden_mean();
        assert!(EpPoint::parse(&m, "|2").is_err());
        assert!(EpPoint::parse(&m, "2|2,1").is_err());
        assert!(EpPoint::parse(&m, "2,2|1").is_err());
        assert!(EpPoint::parse(&m, "1|").is_err());
    }
}
