use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::word::{Symbol, Word};

/// A validated `N×N` 0-1 transition matrix: essential, irreducible and
/// satisfying condition (I). Symbols are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransitionMatrix {
    n: usize,
    entries: Vec<bool>,
    followers: Vec<Vec<Symbol>>,
    alphabet: Vec<Symbol>,
}

impl TransitionMatrix {
    /// Validates a raw bit array, reporting the first violated property in
    /// the order: shape, essential, irreducible, condition (I).
    pub fn validate(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::MalformedMatrix(format!("size {n} < 2")));
        }
        if n > Symbol::MAX as usize {
            return Err(Error::MalformedMatrix(format!(
                "size {n} exceeds {}",
                Symbol::MAX
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedMatrix(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &b) in row.iter().enumerate() {
                match b {
                    0 => entries.push(false),
                    1 => entries.push(true),
                    _ => {
                        return Err(Error::MalformedMatrix(format!(
                            "entry ({}, {}) is {b}, expected 0 or 1",
                            i + 1,
                            j + 1
                        )))
                    }
                }
            }
        }
        for i in 0..n {
            if !(0..n).any(|j| entries[i * n + j]) {
                return Err(Error::NotEssential {
                    kind: "row",
                    state: (i + 1) as Symbol,
                });
            }
        }
        for j in 0..n {
            if !(0..n).any(|i| entries[i * n + j]) {
                return Err(Error::NotEssential {
                    kind: "column",
                    state: (j + 1) as Symbol,
                });
            }
        }
        for i in 0..n {
            let reach = reachable_from(n, &entries, i);
            if let Some(j) = reach.iter().position(|r| !r) {
                return Err(Error::NotIrreducible {
                    from: (i + 1) as Symbol,
                    to: (j + 1) as Symbol,
                });
            }
        }
        // irreducible with every row of weight one is a permutation matrix
        if (0..n).all(|i| (0..n).filter(|&j| entries[i * n + j]).count() == 1) {
            return Err(Error::ConditionIFails { state: 1 });
        }
        let followers = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| entries[i * n + j])
                    .map(|j| (j + 1) as Symbol)
                    .collect()
            })
            .collect();
        Ok(TransitionMatrix {
            n,
            entries,
            followers,
            alphabet: (1..=n as Symbol).collect(),
        })
    }

    /// The full `n`-shift.
    pub fn full_shift(n: usize) -> Result<Self> {
        Self::validate(&vec![vec![1; n]; n])
    }

    /// The golden-mean shift `[[1,1],[1,0]]`.
    pub fn golden_mean() -> Self {
        Self::validate(&[vec![1, 1], vec![1, 0]]).expect("golden mean matrix is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    /// `A(i, j)` for 1-based symbols.
    pub fn get(&self, i: Symbol, j: Symbol) -> bool {
        self.entries[(i as usize - 1) * self.n + (j as usize - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.entries[i * self.n + j] as u8)
                    .collect()
            })
            .collect()
    }

    pub fn followers(&self, s: Symbol) -> &[Symbol] {
        &self.followers[s as usize - 1]
    }

    /// Symbols that may follow a word ending in `last`; every symbol may
    /// follow the empty word.
    pub fn followers_of(&self, last: Option<Symbol>) -> &[Symbol] {
        match last {
            Some(s) => self.followers(s),
            None => &self.alphabet,
        }
    }

    /// Whether words ending in `a` and `b` admit the same continuations.
    pub fn same_followers(&self, a: Option<Symbol>, b: Option<Symbol>) -> bool {
        self.followers_of(a) == self.followers_of(b)
    }

    pub fn is_admissible(&self, w: &[Symbol]) -> bool {
        w.iter().all(|&s| s >= 1 && (s as usize) <= self.n)
            && w.windows(2).all(|p| self.get(p[0], p[1]))
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        if self.is_admissible(w) {
            Ok(())
        } else {
            Err(Error::InadmissibleWord(w.clone()))
        }
    }

    /// One-symbol extensions of `w`, in symbol order.
    pub fn children<'a>(&'a self, w: &'a Word) -> impl Iterator<Item = Word> + 'a {
        self.followers_of(w.last()).iter().map(move |&s| w.with(s))
    }

    /// All admissible words `w·t` with `|t| = len`, lexicographically sorted.
    pub fn extensions(&self, w: &Word, len: usize) -> Vec<Word> {
        let mut out = vec![w.clone()];
        for _ in 0..len {
            out = out.iter().flat_map(|v| self.children(v)).collect();
        }
        out
    }

    /// The admissible words of length `k`, lexicographically sorted.
    pub fn admissible_words(&self, k: usize) -> Vec<Word> {
        self.extensions(&Word::empty(), k)
    }

    /// Number of admissible words of length `k` extending a word that ends
    /// in `last`, without enumerating them.
    pub fn count_extensions(&self, last: Option<Symbol>, k: usize) -> u128 {
        let mut counts: Vec<u128> = vec![0; self.n];
        for &s in self.followers_of(last) {
            counts[s as usize - 1] += 1;
        }
        if k == 0 {
            return 1;
        }
        for _ in 1..k {
            let mut next = vec![0u128; self.n];
            for (i, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &s in &self.followers[i] {
                    next[s as usize - 1] = next[s as usize - 1].saturating_add(c);
                }
            }
            counts = next;
        }
        counts.iter().fold(0u128, |a, &c| a.saturating_add(c))
    }

    /// Shortest, then lexicographically least, word `ξ` with
    /// `u·ξ·v` admissible. Empty when `A(u, v) = 1`.
    pub fn connect_path(&self, u: Symbol, v: Symbol) -> Word {
        // dist[s] = number of steps from s to v
        let dist = self.distances_to(v);
        let mut path = Word::empty();
        let mut cur = u;
        while dist[cur as usize - 1] > 1 {
            let want = dist[cur as usize - 1] - 1;
            let next = *self
                .followers(cur)
                .iter()
                .find(|&&t| dist[t as usize - 1] == want)
                .expect("irreducible matrix has a path between any two states");
            path.push(next);
            cur = next;
        }
        path
    }

    fn distances_to(&self, v: Symbol) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 1..=self.n as Symbol {
            if self.get(s, v) {
                dist[s as usize - 1] = 1;
                queue.push_back(s);
            }
        }
        while let Some(t) = queue.pop_front() {
            let d = dist[t as usize - 1];
            for s in 1..=self.n as Symbol {
                if self.get(s, t) && dist[s as usize - 1] == usize::MAX {
                    dist[s as usize - 1] = d + 1;
                    queue.push_back(s);
                }
            }
        }
        dist
    }

    /// Two distinct words `s < s'` of equal length that may follow `from`
    /// and both lead into the symbol `u`. Lengths are searched in increasing
    /// order up to `N² + N`; within a length the lexicographically least
    /// triple `(s, s', u)` is returned.
    pub fn distinct_path_pair(&self, from: Symbol) -> Result<(Word, Word, Symbol)> {
        let bound = self.n * self.n + self.n;
        let start = Word::from([from]);
        let mut layer = vec![start];
        for _k in 1..=bound {
            layer = layer.iter().flat_map(|w| self.children(w)).collect();
            let words: Vec<&[Symbol]> = layer.iter().map(|w| &w[1..]).collect();
            for (i, s) in words.iter().enumerate() {
                for t in &words[i + 1..] {
                    let (a, b) = (*s.last().unwrap(), *t.last().unwrap());
                    if let Some(&u) = self.followers(a).iter().find(|&&u| self.get(b, u)) {
                        return Ok((Word::from(*s), Word::from(*t), u));
                    }
                }
            }
        }
        Err(Error::Internal(format!(
            "no distinct path pair from state {from} within length {bound}"
        )))
    }
}

fn reachable_from(n: usize, entries: &[bool], i: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for j in 0..n {
        if entries[i * n + j] {
            seen[j] = true;
            queue.push_back(j);
        }
    }
    while let Some(k) = queue.pop_front() {
        for j in 0..n {
            if entries[k * n + j] && !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen
}

/// First line `N`, then `N` lines of `N` space-separated bits.
impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|b| b.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for TransitionMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing size line"))?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::parse(ln, format!("bad size {first:?}")))?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(ln, format!("expected {n} rows")))?;
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u8>()
                        .map_err(|_| Error::parse(ln, format!("bad entry {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing content after matrix"));
        }
        TransitionMatrix::validate(&rows)
    }
}
