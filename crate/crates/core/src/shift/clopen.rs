//! Clopen subsets of the shift space.
//!
//! A clopen set is stored as the antichain of its maximal cylinders: no word
//! is a prefix of another and no complete sibling family is present. This
//! form is unique, so set equality is structural equality. The uniform-depth
//! view (every cylinder refined to the largest word length) is derived from
//! it on demand and is what the text format prints.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::matrix::TransitionMatrix;
use super::point::EpPoint;
use super::word::{Symbol, Word};

#[derive(Debug, Clone)]
pub struct ClopenSet {
    matrix: Arc<TransitionMatrix>,
    words: BTreeSet<Word>,
}

impl PartialEq for ClopenSet {
    fn eq(&self, other: &Self) -> bool {
        same_matrix(&self.matrix, &other.matrix) && self.words == other.words
    }
}

impl Eq for ClopenSet {}

/// Relation between two clopen sets, reported by [`ClopenSet::compare`].
/// The first applicable variant in declaration order wins, so `∅` compared
/// to a nonempty set is `Subset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    Subset,
    Superset,
    Disjoint,
    Overlapping,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equal => "equal",
            Relation::Subset => "subset",
            Relation::Superset => "superset",
            Relation::Disjoint => "disjoint",
            Relation::Overlapping => "overlapping",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BooleanOp {
    Union,
    Intersection,
    Difference,
    Complement,
}

pub(crate) fn same_matrix(a: &Arc<TransitionMatrix>, b: &Arc<TransitionMatrix>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Drops words covered by a shorter word of the set, then merges complete
/// sibling families until none is left.
pub(crate) fn normalize_words(matrix: &TransitionMatrix, words: BTreeSet<Word>) -> BTreeSet<Word> {
    let mut set = BTreeSet::new();
    let mut last: Option<Word> = None;
    for w in words {
        if let Some(p) = &last {
            if p.is_prefix_of(&w) {
                continue;
            }
        }
        last = Some(w.clone());
        set.insert(w);
    }
    loop {
        let mut counts: HashMap<Word, usize> = HashMap::new();
        for w in &set {
            if let Some(p) = w.parent() {
                *counts.entry(p).or_default() += 1;
            }
        }
        let complete: Vec<Word> = counts
            .into_iter()
            .filter(|(p, c)| *c == matrix.followers_of(p.last()).len())
            .map(|(p, _)| p)
            .collect();
        if complete.is_empty() {
            return set;
        }
        for p in complete {
            for c in matrix.children(&p) {
                set.remove(&c);
            }
            set.insert(p);
        }
    }
}

impl ClopenSet {
    /// Canonical clopen set denoted by an arbitrary finite set of words.
    pub fn from_words<I>(matrix: &Arc<TransitionMatrix>, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = Word>,
    {
        let mut raw = BTreeSet::new();
        for w in words {
            matrix.check_word(&w)?;
            raw.insert(w);
        }
        Ok(Self::from_admissible(matrix, raw))
    }

    pub(crate) fn from_admissible(matrix: &Arc<TransitionMatrix>, words: BTreeSet<Word>) -> Self {
        ClopenSet {
            words: normalize_words(matrix, words),
            matrix: Arc::clone(matrix),
        }
    }

    pub fn empty(matrix: &Arc<TransitionMatrix>) -> Self {
        ClopenSet {
            matrix: Arc::clone(matrix),
            words: BTreeSet::new(),
        }
    }

    pub fn full(matrix: &Arc<TransitionMatrix>) -> Self {
        ClopenSet {
            matrix: Arc::clone(matrix),
            words: BTreeSet::from([Word::empty()]),
        }
    }

    /// The cylinder `U_w`.
    pub fn cylinder(matrix: &Arc<TransitionMatrix>, w: Word) -> Result<Self> {
        Self::from_words(matrix, [w])
    }

    pub fn matrix(&self) -> &Arc<TransitionMatrix> {
        &self.matrix
    }

    /// The maximal cylinders of the set, sorted.
    pub fn cylinders(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.words.len() == 1 && self.words.contains(&Word::empty())
    }

    /// Depth of the canonical uniform representation.
    pub fn depth(&self) -> usize {
        self.words.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    /// All words of length `d` whose cylinders lie in the set.
    /// `d` is raised to [`depth`](Self::depth) if smaller.
    pub fn words_at_depth(&self, d: usize) -> Vec<Word> {
        let d = d.max(self.depth());
        self.words
            .iter()
            .flat_map(|w| self.matrix.extensions(w, d - w.len()))
            .collect()
    }

    /// The canonical uniform-depth word list.
    pub fn uniform_words(&self) -> Vec<Word> {
        self.words_at_depth(self.depth())
    }

    /// `U_w ⊆ self`.
    pub fn contains_cylinder(&self, w: &[Symbol]) -> bool {
        (0..=w.len()).any(|k| self.words.contains(&Word::from(&w[..k])))
    }

    /// Some maximal cylinder strictly below `w`.
    fn has_proper_extension(&self, w: &Word) -> bool {
        self.words
            .range(w.clone()..)
            .find(|v| *v != w)
            .is_some_and(|v| w.is_prefix_of(v))
    }

    /// `U_w ∩ self ≠ ∅`.
    pub fn meets_cylinder(&self, w: &Word) -> bool {
        self.contains_cylinder(w) || self.has_proper_extension(w)
    }

    pub fn contains_point(&self, x: &EpPoint) -> bool {
        let d = self.depth();
        (0..=d).any(|k| self.words.contains(&x.prefix(k)))
    }

    /// Partition of the set into at least `min` cylinders, obtained by
    /// splitting cylinders in queue order. Sorted.
    pub fn pieces(&self, min: usize) -> Vec<Word> {
        let mut queue: VecDeque<Word> = self.words.iter().cloned().collect();
        if queue.is_empty() {
            return Vec::new();
        }
        while queue.len() < min {
            let w = queue.pop_front().expect("nonempty");
            queue.extend(self.matrix.children(&w));
        }
        let mut v: Vec<Word> = queue.into_iter().collect();
        v.sort();
        v
    }

    /// A deterministic eventually periodic point of a nonempty set: the first
    /// maximal cylinder continued by always taking the smallest follower.
    pub fn sample_point(&self) -> Option<EpPoint> {
        let first = self.words.iter().next()?;
        let mut seq: Vec<Symbol> = if first.is_empty() {
            vec![1]
        } else {
            first.to_vec()
        };
        let start = seq.len() - 1;
        let mut pos: HashMap<Symbol, usize> = HashMap::from([(seq[start], start)]);
        loop {
            let next = self.matrix.followers(*seq.last().unwrap())[0];
            if let Some(&i) = pos.get(&next) {
                let pre = Word::from(&seq[..i]);
                let per = Word::from(&seq[i..]);
                return Some(EpPoint::normalized(pre, per));
            }
            pos.insert(next, seq.len());
            seq.push(next);
        }
    }

    fn check_same(&self, other: &ClopenSet) -> Result<()> {
        if same_matrix(&self.matrix, &other.matrix) {
            Ok(())
        } else {
            Err(Error::MatrixMismatch)
        }
    }

    pub fn complement(&self) -> ClopenSet {
        let mut out = BTreeSet::new();
        self.complement_below(Word::empty(), &mut out);
        Self::from_admissible(&self.matrix, out)
    }

    fn complement_below(&self, node: Word, out: &mut BTreeSet<Word>) {
        if self.words.contains(&node) {
            return;
        }
        if !self.has_proper_extension(&node) {
            out.insert(node);
            return;
        }
        let children: Vec<Word> = self.matrix.children(&node).collect();
        for c in children {
            self.complement_below(c, out);
        }
    }

    pub fn union(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.check_same(other)?;
        let all = self.words.iter().chain(&other.words).cloned().collect();
        Ok(Self::from_admissible(&self.matrix, all))
    }

    pub fn intersection(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.check_same(other)?;
        let mut out = BTreeSet::new();
        for a in &self.words {
            if other.contains_cylinder(a) {
                out.insert(a.clone());
            } else {
                out.extend(
                    other
                        .words
                        .range(a.clone()..)
                        .take_while(|b| a.is_prefix_of(b))
                        .cloned(),
                );
            }
        }
        Ok(Self::from_admissible(&self.matrix, out))
    }

    pub fn difference(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.check_same(other)?;
        self.intersection(&other.complement())
    }

    /// Applies a Boolean operation; `Complement` ignores `other`.
    pub fn boolean_op(&self, op: BooleanOp, other: &ClopenSet) -> Result<ClopenSet> {
        match op {
            BooleanOp::Union => self.union(other),
            BooleanOp::Intersection => self.intersection(other),
            BooleanOp::Difference => self.difference(other),
            BooleanOp::Complement => Ok(self.complement()),
        }
    }

    pub fn is_subset_of(&self, other: &ClopenSet) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.words.iter().all(|w| other.contains_cylinder(w)))
    }

    pub fn is_disjoint_from(&self, other: &ClopenSet) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.words.iter().all(|w| !other.meets_cylinder(w)))
    }

    pub fn compare(&self, other: &ClopenSet) -> Result<Relation> {
        self.check_same(other)?;
        Ok(if self == other {
            Relation::Equal
        } else if self.is_subset_of(other)? {
            Relation::Subset
        } else if other.is_subset_of(self)? {
            Relation::Superset
        } else if self.is_disjoint_from(other)? {
            Relation::Disjoint
        } else {
            Relation::Overlapping
        })
    }

    /// Parses the clopen text format: `D <depth>` followed by one word per
    /// line, or a literal `EMPTY` / `FULL`.
    pub fn parse(matrix: &Arc<TransitionMatrix>, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let mut depth: Option<usize> = None;
        let mut words = Vec::new();
        let mut literal: Option<bool> = None;
        for (ln, line) in lines.by_ref() {
            if let Some(d) = line.strip_prefix("D ") {
                if depth.is_some() || !words.is_empty() || literal.is_some() {
                    return Err(Error::parse(ln, "depth line must come first"));
                }
                depth = Some(
                    d.trim()
                        .parse()
                        .map_err(|_| Error::parse(ln, format!("bad depth {d:?}")))?,
                );
                continue;
            }
            match line {
                "EMPTY" | "FULL" => {
                    if literal.is_some() || !words.is_empty() {
                        return Err(Error::parse(ln, "literal must stand alone"));
                    }
                    literal = Some(line == "FULL");
                }
                _ => {
                    if literal.is_some() {
                        return Err(Error::parse(ln, "literal must stand alone"));
                    }
                    let w: Word = line.parse().map_err(|e| match e {
                        Error::Parse { message, .. } => Error::parse(ln, message),
                        e => e,
                    })?;
                    if let Some(d) = depth {
                        if w.len() != d {
                            return Err(Error::parse(
                                ln,
                                format!("word {w} has length {}, expected {d}", w.len()),
                            ));
                        }
                    }
                    words.push(w);
                }
            }
        }
        match literal {
            Some(true) => Ok(Self::full(matrix)),
            Some(false) => Ok(Self::empty(matrix)),
            None => Self::from_words(matrix, words),
        }
    }
}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "D {}", self.depth())?;
        if self.is_empty() {
            return writeln!(f, "EMPTY");
        }
        if self.is_full() {
            return writeln!(f, "FULL");
        }
        for w in self.uniform_words() {
            writeln!(f, "{w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(m: &Arc<TransitionMatrix>, ws: &[&[Symbol]]) -> ClopenSet {
        ClopenSet::from_words(m, ws.iter().map(|w| Word::from(*w))).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let full = Arc::new(TransitionMatrix::full_shift(2).unwrap());
        let gm = Arc::new(TransitionMatrix::golden_mean());
        let s = set(&full, &[&[1], &[2]]);
        assert!(s.is_full());
        assert_eq!(s.depth(), 0);
        let s = set(&full, &[&[1, 1], &[1, 2]]);
        assert_eq!(s.uniform_words(), vec![Word::from([1])]);
        let s = set(&gm, &[&[1, 1], &[1, 2]]);
        assert_eq!(s.uniform_words(), vec![Word::from([1])]);
        // mixed depths pad to a common depth
        let s = set(&gm, &[&[2], &[1, 1]]);
        assert_eq!(s.depth(), 2);
        assert_eq!(
            s.uniform_words(),
            vec![Word::from([1, 1]), Word::from([2, 1])]
        );
        assert!(matches!(
            ClopenSet::from_words(&gm, [Word::from([2, 2])]),
            Err(Error::InadmissibleWord(_))
        ));
    }

    #[test]
    fn boolean_examples() {
        let full = Arc::new(TransitionMatrix::full_shift(2).unwrap());
        let gm = Arc::new(TransitionMatrix::golden_mean());
        let u1 = set(&full, &[&[1]]);
        let u2 = set(&full, &[&[2]]);
        assert_eq!(u1.complement(), u2);
        assert!(u1.intersection(&u2).unwrap().is_empty());
        let d = ClopenSet::full(&gm)
            .difference(&set(&gm, &[&[1, 1]]))
            .unwrap();
        assert_eq!(d.depth(), 2);
        assert_eq!(
            d.uniform_words(),
            vec![Word::from([1, 2]), Word::from([2, 1])]
        );
        assert!(matches!(
            u1.union(&ClopenSet::full(&gm)),
            Err(Error::MatrixMismatch)
        ));
    }

    #[test]
    fn compare_examples() {
        let full = Arc::new(TransitionMatrix::full_shift(2).unwrap());
        let u1 = set(&full, &[&[1]]);
        assert_eq!(
            set(&full, &[&[1, 1]]).compare(&u1).unwrap(),
            Relation::Subset
        );
        assert_eq!(
            u1.compare(&set(&full, &[&[2]])).unwrap(),
            Relation::Disjoint
        );
        assert_eq!(
            set(&full, &[&[1, 2], &[2, 1]]).compare(&u1).unwrap(),
            Relation::Overlapping
        );
        assert_eq!(
            u1.compare(&set(&full, &[&[1, 1]])).unwrap(),
            Relation::Superset
        );
        assert_eq!(u1.compare(&u1).unwrap(), Relation::Equal);
    }

    #[test]
    fn text_round_trip() {
        let gm = Arc::new(TransitionMatrix::golden_mean());
        for s in [
            ClopenSet::empty(&gm),
            ClopenSet::full(&gm),
            set(&gm, &[&[1, 2], &[2, 1]]),
        ] {
            let text = s.to_string();
            assert_eq!(ClopenSet::parse(&gm, &text).unwrap(), s);
        }
        assert_eq!(
            ClopenSet::parse(&gm, "D 2\n1,2\n2,1\n")
                .unwrap()
                .to_string(),
            "D 2\n1,2\n2,1\n"
        );
        assert!(ClopenSet::parse(&gm, "D 2\n1\n").is_err());
        assert!(ClopenSet::parse(&gm, "FULL\n1\n").is_err());
    }

    #[test]
    fn points_and_pieces() {
        let gm = Arc::new(TransitionMatrix::golden_mean());
        let s = set(&gm, &[&[2]]);
        let x = s.sample_point().unwrap();
        assert!(s.contains_point(&x));
        assert_eq!(x.to_string(), "2|1");
        let p = ClopenSet::full(&gm).pieces(3);
        assert!(p.len() >= 3);
        assert!(ClopenSet::from_words(&gm, p).unwrap().is_full());
    }
}
