//! Random generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use fullgroup::{ClopenSet, EpPoint, Symbol, TableMap, TransitionMatrix, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random valid matrix of size `2..=max_n`, entries 1 with probability
/// one half, resampled until valid.
pub fn random_matrix(rng: &mut ChaCha8Rng, max_n: usize) -> Arc<TransitionMatrix> {
    loop {
        let n = rng.gen_range(2..=max_n);
        let rows: Vec<Vec<u8>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_bool(0.5) as u8).collect())
            .collect();
        if let Ok(m) = TransitionMatrix::validate(&rows) {
            return Arc::new(m);
        }
    }
}

/// A random complete prefix code with words of length at most `max_len`.
pub fn random_code(
    rng: &mut ChaCha8Rng,
    m: &TransitionMatrix,
    max_len: usize,
    split: f64,
) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack = vec![Word::empty()];
    while let Some(w) = stack.pop() {
        let p = if w.is_empty() { split.max(0.9) } else { split };
        if w.len() < max_len && rng.gen_bool(p) {
            stack.extend(m.children(&w).collect::<Vec<_>>());
        } else {
            out.push(w);
        }
    }
    out.sort();
    out
}

fn class(m: &TransitionMatrix, w: &Word) -> Vec<u8> {
    m.followers_of(w.last()).to_vec()
}

/// Replaces the leaves `r·s` (all followers `s`) and `q` by `r` and `q·s`,
/// where `r` and `q` have the same followers. Returns false if no such move
/// fits within `max_len`.
fn rotate(rng: &mut ChaCha8Rng, m: &TransitionMatrix, side: &mut [Word], max_len: usize) -> bool {
    let set: BTreeSet<Word> = side.iter().cloned().collect();
    let mut parents: Vec<Word> = side
        .iter()
        .filter_map(|w| w.parent())
        .filter(|r| m.children(r).all(|c| set.contains(&c)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    parents.shuffle(rng);
    for r in parents {
        let mut qs: Vec<&Word> = side
            .iter()
            .filter(|q| !r.is_prefix_of(q) && class(m, q) == class(m, &r) && q.len() < max_len)
            .collect();
        qs.shuffle(rng);
        let Some(q) = qs.first().map(|q| (*q).clone()) else {
            continue;
        };
        for x in side.iter_mut() {
            if r.is_prefix_of(x) {
                let s = x[r.len()];
                *x = q.with(s);
            } else if *x == q {
                *x = r.clone();
            }
        }
        return true;
    }
    false
}

/// A random table with domain words of length at most `max_depth` and
/// image words of length at most `max_image`: a random prefix code mapped
/// to itself, then reshaped by random rotations of either side and random
/// exchanges of images with equal followers.
pub fn random_table(
    rng: &mut ChaCha8Rng,
    m: &Arc<TransitionMatrix>,
    max_depth: usize,
    max_image: usize,
) -> TableMap {
    let code = random_code(rng, m, max_depth, 0.5);
    let mut dom = code.clone();
    let mut img = code;
    for _ in 0..rng.gen_range(0..6) {
        match rng.gen_range(0..3) {
            0 => {
                // in place, so each image stays with its domain
                rotate(rng, m, &mut dom, max_depth);
            }
            1 => {
                rotate(rng, m, &mut img, max_image);
            }
            _ => {
                let i = rng.gen_range(0..img.len());
                let j = rng.gen_range(0..img.len());
                if class(m, &img[i]) == class(m, &img[j]) {
                    img.swap(i, j);
                }
            }
        }
    }
    TableMap::from_prefix_code(m, dom.into_iter().zip(img)).expect("generator keeps tables valid")
}

/// A random clopen set: a random subset of the leaves of a random code.
pub fn random_clopen(rng: &mut ChaCha8Rng, m: &Arc<TransitionMatrix>, max_len: usize) -> ClopenSet {
    let code = random_code(rng, m, max_len, 0.6);
    let pick: Vec<Word> = code.into_iter().filter(|_| rng.gen_bool(0.5)).collect();
    ClopenSet::from_words(m, pick).expect("leaves are admissible")
}

pub fn random_nonempty_clopen(
    rng: &mut ChaCha8Rng,
    m: &Arc<TransitionMatrix>,
    max_len: usize,
) -> ClopenSet {
    loop {
        let s = random_clopen(rng, m, max_len);
        if !s.is_empty() {
            return s;
        }
    }
}

/// A random nonempty clopen subset of `within`, if `within` is nonempty.
pub fn random_subset(rng: &mut ChaCha8Rng, within: &ClopenSet, extra: usize) -> Option<ClopenSet> {
    if within.is_empty() {
        return None;
    }
    let m = within.matrix();
    let words: Vec<Word> = within
        .cylinders()
        .iter()
        .flat_map(|w| {
            let k = rng.gen_range(0..=extra);
            m.extensions(w, k)
        })
        .collect();
    let mut pick: Vec<Word> = words
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .cloned()
        .collect();
    if pick.is_empty() {
        pick.push(words.choose(rng).expect("nonempty").clone());
    }
    Some(ClopenSet::from_words(m, pick).expect("admissible"))
}

/// A random eventually periodic point of a nonempty clopen set.
pub fn random_point_in(rng: &mut ChaCha8Rng, s: &ClopenSet) -> EpPoint {
    let m = s.matrix();
    let words: Vec<&Word> = s.cylinders().iter().collect();
    let w = (*words.choose(rng).expect("nonempty set")).clone();
    let mut pre = w.into_symbols();
    for _ in 0..rng.gen_range(0..4) {
        let f = m.followers_of(pre.last().copied());
        pre.push(*f.choose(rng).expect("essential"));
    }
    // close a cycle from the last symbol back to itself
    let last = *pre.last().unwrap_or(&m.alphabet()[0]);
    let per = m.connect_path(last, last).with(last);
    EpPoint::new(m, Word::new(pre), per).expect("admissible point")
}

/// All eventually periodic points with `|pre| ≤ max_pre`, `|per| ≤ max_per`.
pub fn ep_points(m: &TransitionMatrix, max_pre: usize, max_per: usize) -> Vec<EpPoint> {
    let mut out = BTreeSet::new();
    let pres: Vec<Word> = (0..=max_pre).flat_map(|k| m.admissible_words(k)).collect();
    let pers: Vec<Word> = (1..=max_per)
        .flat_map(|k| m.admissible_words(k))
        .filter(|w| m.get(w[w.len() - 1], w[0]))
        .collect();
    for pre in &pres {
        for per in &pers {
            if let Ok(x) = EpPoint::new(m, pre.clone(), per.clone()) {
                out.insert(x);
            }
        }
    }
    out.into_iter().collect()
}

/// `τ(x)` read off the leaves of the table: the leaf `ν ↦ μ` with
/// `x ∈ U_ν` sends `x = ν·y` to `μ·y`.
pub struct ApplyOracle {
    depth: usize,
    entries: std::collections::HashMap<Vec<Symbol>, Word>,
}

impl ApplyOracle {
    pub fn new(t: &TableMap) -> Self {
        ApplyOracle {
            depth: t.depth(),
            entries: t
                .leaves()
                .map(|(d, r)| (d.symbols().to_vec(), r.clone()))
                .collect(),
        }
    }

    pub fn apply(&self, x: &EpPoint) -> EpPoint {
        let p = x.prefix(self.depth);
        let (k, mu) = (0..=self.depth)
            .find_map(|k| self.entries.get(&p[..k]).map(|mu| (k, mu)))
            .expect("the domain leaves cover the space");
        x.rewrite_prefix(k, mu)
    }
}
