use std::sync::Arc;

use crate::group::TableMap;
use crate::shift::{ClopenSet, TransitionMatrix, Word};

/// Limits of [`witness_search`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest table depth `L` tried.
    pub depth: usize,
    /// Largest image word length.
    pub image_len: usize,
    /// Give up after trying this many partial assignments.
    pub max_nodes: Option<u64>,
}

impl SearchBounds {
    pub fn new(depth: usize, image_len: usize) -> Self {
        SearchBounds {
            depth,
            image_len,
            max_nodes: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(TableMap),
    /// Every table within the bounds was tried.
    Exhausted,
    /// The node budget ran out first.
    BudgetExceeded,
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&TableMap> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Enumerates valid uniform tables by increasing depth `L = 0, 1, …`; at a
/// fixed depth the domain words are assigned images in lexicographic order
/// of the domain, each image running through candidates by length and then
/// lexicographically. The first table satisfying `predicate` is returned.
pub fn witness_search(
    matrix: &Arc<TransitionMatrix>,
    bounds: SearchBounds,
    predicate: &dyn Fn(&TableMap) -> bool,
) -> SearchOutcome {
    witness_search_with(matrix, bounds, predicate, &|_, _| true)
}

/// [`witness_search`] with an entry filter: only images `μ` with
/// `filter(ν, μ)` are tried for the domain word `ν`. The filter must be
/// implied by the predicate (every table satisfying the predicate uses only
/// admitted entries at every depth), otherwise witnesses may be skipped.
pub fn witness_search_with(
    matrix: &Arc<TransitionMatrix>,
    bounds: SearchBounds,
    predicate: &dyn Fn(&TableMap) -> bool,
    filter: &dyn Fn(&Word, &Word) -> bool,
) -> SearchOutcome {
    let mut candidates: Vec<Word> = Vec::new();
    for len in 0..=bounds.image_len {
        candidates.extend(matrix.admissible_words(len));
    }
    let mut nodes = 0u64;
    for depth in 0..=bounds.depth {
        let domain = matrix.admissible_words(depth);
        let options: Vec<Vec<&Word>> = domain
            .iter()
            .map(|d| {
                candidates
                    .iter()
                    .filter(|c| matrix.same_followers(c.last(), d.last()) && filter(d, c))
                    .collect()
            })
            .collect();
        let mut search = Search {
            matrix,
            domain: &domain,
            options: &options,
            image_len: bounds.image_len,
            chosen: Vec::with_capacity(domain.len()),
            nodes: &mut nodes,
            max_nodes: bounds.max_nodes,
            predicate,
        };
        match search.run(ClopenSet::full(matrix)) {
            Step::Found(t) => return SearchOutcome::Found(t),
            Step::Budget => return SearchOutcome::BudgetExceeded,
            Step::Continue => {}
        }
    }
    SearchOutcome::Exhausted
}

enum Step {
    Found(TableMap),
    Budget,
    Continue,
}

struct Search<'a> {
    matrix: &'a Arc<TransitionMatrix>,
    domain: &'a [Word],
    options: &'a [Vec<&'a Word>],
    image_len: usize,
    chosen: Vec<Word>,
    nodes: &'a mut u64,
    max_nodes: Option<u64>,
    predicate: &'a dyn Fn(&TableMap) -> bool,
}

impl Search<'_> {
    /// Whether `uncovered` can still be tiled by `remaining` cylinders of
    /// length at most `image_len`.
    fn feasible(&self, uncovered: &ClopenSet, remaining: usize) -> bool {
        let words = uncovered.cylinders();
        if words.len() > remaining || words.iter().any(|w| w.len() > self.image_len) {
            return false;
        }
        let mut most = 0u128;
        for w in words {
            most = most.saturating_add(
                self.matrix
                    .count_extensions(w.last(), self.image_len - w.len()),
            );
            if most >= remaining as u128 {
                return true;
            }
        }
        most >= remaining as u128
    }

    fn run(&mut self, uncovered: ClopenSet) -> Step {
        let i = self.chosen.len();
        if i == self.domain.len() {
            let entries = self.domain.iter().cloned().zip(self.chosen.iter().cloned());
            let depth = self.domain.first().map_or(0, |w| w.len());
            return match TableMap::from_uniform(self.matrix, depth, entries) {
                Ok(t) if (self.predicate)(&t) => Step::Found(t),
                _ => Step::Continue,
            };
        }
        for &c in &self.options[i] {
            if !uncovered.contains_cylinder(c) {
                continue;
            }
            *self.nodes += 1;
            if self.max_nodes.is_some_and(|m| *self.nodes > m) {
                return Step::Budget;
            }
            let cyl = ClopenSet::cylinder(self.matrix, c.clone()).expect("admissible candidate");
            let rest = uncovered.difference(&cyl).expect("same matrix");
            if !self.feasible(&rest, self.domain.len() - i - 1) {
                continue;
            }
            self.chosen.push(c.clone());
            match self.run(rest) {
                Step::Continue => {}
                done => return done,
            }
            self.chosen.pop();
        }
        Step::Continue
    }
}
