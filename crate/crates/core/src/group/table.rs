use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::shift::{same_matrix, ClopenSet, EpPoint, TransitionMatrix, Word};

/// An element of `Γ_A` given as a prefix-exchange table: a point `ν·x` with
/// `ν` a domain word is sent to `Φ(ν)·x`.
///
/// The table is held as a complete prefix code of domain words (a leaf set),
/// not necessarily of uniform length. [`depth`](Self::depth) is the length of
/// the longest domain word and [`entries`](Self::entries) expands the table to
/// that uniform depth, which is the form used by the text format.
///
/// `==` compares representations; use [`same_element`](Self::same_element)
/// or compare [`canonical`](Self::canonical) forms to compare group elements.
#[derive(Debug, Clone)]
pub struct TableMap {
    pub(crate) matrix: Arc<TransitionMatrix>,
    pub(crate) leaves: BTreeMap<Word, Word>,
}

impl PartialEq for TableMap {
    fn eq(&self, other: &Self) -> bool {
        same_matrix(&self.matrix, &other.matrix) && self.leaves == other.leaves
    }
}

impl Eq for TableMap {}

impl TableMap {
    pub fn identity(matrix: &Arc<TransitionMatrix>) -> Self {
        TableMap {
            matrix: Arc::clone(matrix),
            leaves: BTreeMap::from([(Word::empty(), Word::empty())]),
        }
    }

    /// Validates a uniform-depth table whose domain must be exactly `B_L`.
    pub fn from_uniform<I>(matrix: &Arc<TransitionMatrix>, depth: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Word)>,
    {
        let mut leaves = BTreeMap::new();
        for (d, r) in entries {
            if d.len() != depth {
                return Err(Error::BadDomain(format!(
                    "domain word {d} has length {}, expected {depth}",
                    d.len()
                )));
            }
            if !matrix.is_admissible(&d) {
                return Err(Error::BadDomain(format!(
                    "domain word {d} is not admissible"
                )));
            }
            if leaves.insert(d.clone(), r).is_some() {
                return Err(Error::BadDomain(format!("domain word {d} given twice")));
            }
        }
        let expected = matrix.count_extensions(None, depth);
        if leaves.len() as u128 != expected {
            let missing = matrix
                .admissible_words(depth)
                .into_iter()
                .find(|w| !leaves.contains_key(w))
                .map(|w| w.to_string())
                .unwrap_or_default();
            return Err(Error::BadDomain(format!("missing domain word {missing}")));
        }
        Self::check_images(matrix, &leaves)?;
        Ok(TableMap {
            matrix: Arc::clone(matrix),
            leaves,
        })
    }

    /// Validates a table whose domain is any complete prefix code.
    pub fn from_prefix_code<I>(matrix: &Arc<TransitionMatrix>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Word)>,
    {
        let mut leaves = BTreeMap::new();
        for (d, r) in pairs {
            if !matrix.is_admissible(&d) {
                return Err(Error::BadDomain(format!(
                    "domain word {d} is not admissible"
                )));
            }
            if leaves.insert(d.clone(), r).is_some() {
                return Err(Error::BadDomain(format!("domain word {d} given twice")));
            }
        }
        let domain: Vec<&Word> = leaves.keys().collect();
        if let Some(p) = domain.windows(2).find(|p| p[0].is_prefix_of(p[1])) {
            return Err(Error::BadDomain(format!(
                "domain words {} and {} overlap",
                p[0], p[1]
            )));
        }
        let cover = ClopenSet::from_words(matrix, leaves.keys().cloned())?;
        if !cover.is_full() {
            let gap = cover.complement().cylinders().iter().next().cloned();
            return Err(Error::BadDomain(format!(
                "domain misses cylinder {}",
                gap.unwrap_or_default()
            )));
        }
        Self::check_images(matrix, &leaves)?;
        Ok(TableMap {
            matrix: Arc::clone(matrix),
            leaves,
        })
    }

    fn check_images(matrix: &Arc<TransitionMatrix>, leaves: &BTreeMap<Word, Word>) -> Result<()> {
        for (d, r) in leaves {
            if !matrix.is_admissible(r) {
                return Err(Error::InadmissibleWord(r.clone()));
            }
            if !matrix.same_followers(d.last(), r.last()) {
                return Err(Error::RowMismatch {
                    domain: d.clone(),
                    image: r.clone(),
                });
            }
        }
        let images: BTreeSet<&Word> = leaves.values().collect();
        if images.len() < leaves.len() {
            let mut seen = BTreeSet::new();
            for r in leaves.values() {
                if !seen.insert(r) {
                    return Err(Error::ImagesOverlap {
                        first: r.clone(),
                        second: r.clone(),
                    });
                }
            }
        }
        let sorted: Vec<&Word> = images.into_iter().collect();
        if let Some(p) = sorted.windows(2).find(|p| p[0].is_prefix_of(p[1])) {
            return Err(Error::ImagesOverlap {
                first: p[0].clone(),
                second: p[1].clone(),
            });
        }
        let cover = ClopenSet::from_words(matrix, leaves.values().cloned())?;
        if !cover.is_full() {
            let gap = cover
                .complement()
                .cylinders()
                .iter()
                .next()
                .cloned()
                .unwrap_or_default();
            return Err(Error::ImagesDontCover(gap));
        }
        Ok(())
    }

    /// Trusted constructor for leaf sets produced by the group operations.
    pub(crate) fn from_trusted(
        matrix: &Arc<TransitionMatrix>,
        leaves: BTreeMap<Word, Word>,
    ) -> Self {
        let t = TableMap {
            matrix: Arc::clone(matrix),
            leaves,
        };
        debug_assert!(
            Self::from_prefix_code(matrix, t.leaves.clone()).is_ok(),
            "group operation produced an invalid table"
        );
        t
    }

    /// The involution exchanging the disjoint cylinders `U_a` and `U_b`
    /// and fixing everything else.
    pub fn cylinder_swap(matrix: &Arc<TransitionMatrix>, a: &Word, b: &Word) -> Result<Self> {
        Self::cylinder_swaps(matrix, &[(a.clone(), b.clone())])
    }

    /// The product of the involutions exchanging `U_a` and `U_b` for each
    /// pair; all the cylinders involved must be pairwise disjoint.
    pub fn cylinder_swaps(matrix: &Arc<TransitionMatrix>, pairs: &[(Word, Word)]) -> Result<Self> {
        let mut words: Vec<&Word> = pairs.iter().flat_map(|(a, b)| [a, b]).collect();
        words.sort();
        if words.windows(2).any(|p| p[0].is_prefix_of(p[1])) {
            return Err(Error::NotDisjoint("swapped cylinders overlap"));
        }
        let moves: Vec<(Word, Word)> = pairs
            .iter()
            .flat_map(|(a, b)| [(a.clone(), b.clone()), (b.clone(), a.clone())])
            .collect();
        Self::from_cylinder_moves(matrix, &moves)
    }

    /// The map sending `U_d` onto `U_r` by `d·x ↦ r·x` for each move
    /// `(d, r)` and fixing the rest. The domains must be disjoint and the
    /// images must tile their union; both are checked.
    pub fn from_cylinder_moves(
        matrix: &Arc<TransitionMatrix>,
        moves: &[(Word, Word)],
    ) -> Result<Self> {
        let domains = moves.iter().map(|(d, _)| d.clone());
        let rest = ClopenSet::from_words(matrix, domains)?.complement();
        let leaves = rest
            .cylinders()
            .iter()
            .map(|w| (w.clone(), w.clone()))
            .chain(moves.iter().cloned());
        Self::from_prefix_code(matrix, leaves)
    }

    /// The map acting as `maps[i].0` on `maps[i].1` and as the identity off
    /// their union. The pieces must be pairwise disjoint and the result must
    /// be a bijection; both are checked.
    pub fn piecewise(
        matrix: &Arc<TransitionMatrix>,
        maps: &[(&TableMap, &ClopenSet)],
    ) -> Result<Self> {
        let mut covered = ClopenSet::empty(matrix);
        let mut pairs = Vec::new();
        for (g, s) in maps {
            g.check_matrix(s.matrix())?;
            if !covered.is_disjoint_from(s)? {
                return Err(Error::NotDisjoint("pieces of a piecewise map overlap"));
            }
            covered = covered.union(s)?;
            pairs.extend(g.restricted_leaves(s));
        }
        pairs.extend(
            covered
                .complement()
                .cylinders()
                .iter()
                .map(|w| (w.clone(), w.clone())),
        );
        Self::from_prefix_code(matrix, pairs)
    }

    pub fn matrix(&self) -> &Arc<TransitionMatrix> {
        &self.matrix
    }

    pub(crate) fn check_matrix(&self, other: &Arc<TransitionMatrix>) -> Result<()> {
        if same_matrix(&self.matrix, other) {
            Ok(())
        } else {
            Err(Error::MatrixMismatch)
        }
    }

    /// The domain words and their images, as stored.
    pub fn leaves(&self) -> impl Iterator<Item = (&Word, &Word)> {
        self.leaves.iter()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    /// Uniform depth `L` of the table: the longest domain word.
    pub fn depth(&self) -> usize {
        self.leaves.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// The table expanded to depth `max(d, depth())`, sorted by domain word.
    pub fn entries_at(&self, d: usize) -> Vec<(Word, Word)> {
        let d = d.max(self.depth());
        let mut out = Vec::new();
        for (dom, img) in &self.leaves {
            for ext in self.matrix.extensions(dom, d - dom.len()) {
                let tail = &ext[dom.len()..];
                out.push((ext.clone(), img.concat(tail)));
            }
        }
        out
    }

    /// The uniform-depth table `ν ↦ Φ(ν)` over `B_L`, `L = depth()`.
    pub fn entries(&self) -> Vec<(Word, Word)> {
        self.entries_at(self.depth())
    }

    /// The leaf whose domain word is a prefix of `w`, if any.
    pub(crate) fn leaf_above(&self, w: &[crate::Symbol]) -> Option<(&Word, &Word)> {
        let max = self.depth().min(w.len());
        (0..=max).find_map(|k| self.leaves.get_key_value(&Word::from(&w[..k])))
    }

    /// The table restricted to the clopen set `s`: pairs whose domains
    /// partition `s`.
    pub fn restricted_leaves(&self, s: &ClopenSet) -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        for w in s.cylinders() {
            if let Some((d, r)) = self.leaf_above(w) {
                out.push((w.clone(), r.concat(&w[d.len()..])));
            } else {
                out.extend(
                    self.leaves
                        .range(w.clone()..)
                        .take_while(|(d, _)| w.is_prefix_of(d))
                        .map(|(d, r)| (d.clone(), r.clone())),
                );
            }
        }
        out
    }

    /// `τ(x)`.
    pub fn apply(&self, x: &EpPoint) -> EpPoint {
        // the domain is a complete prefix code, so some prefix of x is a leaf
        let mut p = Vec::new();
        loop {
            if let Some(img) = self.leaves.get(p.as_slice()) {
                return x.rewrite_prefix(p.len(), img);
            }
            p.push(x.symbol_at(p.len()));
        }
    }

    /// The image `τ(X)` of a clopen set.
    pub fn image_clopen(&self, s: &ClopenSet) -> Result<ClopenSet> {
        self.check_matrix(s.matrix())?;
        let words = self.restricted_leaves(s).into_iter().map(|(_, r)| r);
        ClopenSet::from_words(&self.matrix, words)
    }

    /// Parses the table text format: `L <depth>` and then one `ν -> μ` line
    /// per word of `B_L`.
    pub fn parse(matrix: &Arc<TransitionMatrix>, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing depth line"))?;
        let depth: usize = first
            .strip_prefix("L ")
            .and_then(|d| d.trim().parse().ok())
            .ok_or_else(|| Error::parse(ln, format!("expected `L <depth>`, got {first:?}")))?;
        let mut entries = Vec::new();
        for (ln, line) in lines {
            let (d, r) = line
                .split_once("->")
                .ok_or_else(|| Error::parse(ln, "expected `ν -> μ`"))?;
            let relabel = |e: Error| match e {
                Error::Parse { message, .. } => Error::parse(ln, message),
                e => e,
            };
            let d: Word = d.parse().map_err(relabel)?;
            let r: Word = r.parse().map_err(relabel)?;
            entries.push((d, r));
        }
        Self::from_uniform(matrix, depth, entries)
    }
}

impl fmt::Display for TableMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "L {}", self.depth())?;
        for (d, r) in self.entries() {
            writeln!(f, "{d} -> {r}")?;
        }
        Ok(())
    }
}
