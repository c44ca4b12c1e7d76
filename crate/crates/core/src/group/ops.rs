use std::collections::{BTreeMap, HashMap};

use crate::error::Result;
use crate::shift::Word;

use super::table::TableMap;

/// Outcome of [`TableMap::power_order`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    ExceedsBound,
}

/// Default cap on the number of table entries while taking powers.
pub const DEFAULT_MAX_ENTRIES: usize = 4096;

impl TableMap {
    /// `outer ∘ inner`, in canonical form.
    ///
    /// Each leaf `d ↦ r` of `inner` is split along the leaves of `outer`
    /// that lie below `r`, or rewritten through the leaf of `outer` above
    /// `r`.
    pub fn compose(outer: &TableMap, inner: &TableMap) -> Result<TableMap> {
        outer.check_matrix(&inner.matrix)?;
        Ok(Self::compose_raw(outer, inner).canonical())
    }

    pub(crate) fn compose_raw(outer: &TableMap, inner: &TableMap) -> TableMap {
        let mut leaves = BTreeMap::new();
        for (d, r) in &inner.leaves {
            if let Some((d2, r2)) = outer.leaf_above(r) {
                leaves.insert(d.clone(), r2.concat(&r[d2.len()..]));
            } else {
                for (d2, r2) in outer
                    .leaves
                    .range(r.clone()..)
                    .take_while(|(d2, _)| r.is_prefix_of(d2))
                {
                    leaves.insert(d.concat(&d2[r.len()..]), r2.clone());
                }
            }
        }
        TableMap::from_trusted(&inner.matrix, leaves)
    }

    /// The inverse map. Its uniform depth is the longest image word of
    /// `self`.
    pub fn inverse(&self) -> TableMap {
        let leaves = self
            .leaves
            .iter()
            .map(|(d, r)| (r.clone(), d.clone()))
            .collect();
        TableMap::from_trusted(&self.matrix, leaves)
    }

    /// The unique minimal table denoting the same homeomorphism: sibling
    /// families `p·a ↦ ρ·a` (all followers `a` of `p`, and `ρ`, `p` with the
    /// same follower set) are merged into `p ↦ ρ` until none remains.
    pub fn canonical(&self) -> TableMap {
        let m = &self.matrix;
        let mut leaves = self.leaves.clone();
        loop {
            let mut families: HashMap<Word, usize> = HashMap::new();
            for d in leaves.keys() {
                if let Some(p) = d.parent() {
                    *families.entry(p).or_default() += 1;
                }
            }
            let mut merged = Vec::new();
            for (p, count) in families {
                let followers = m.followers_of(p.last());
                if count != followers.len() {
                    continue;
                }
                let mut rho: Option<Word> = None;
                let ok = followers.iter().all(|&a| {
                    let img = &leaves[&p.with(a)];
                    if img.last() != Some(a) {
                        return false;
                    }
                    let head = img.parent().expect("nonempty image");
                    match &rho {
                        None => {
                            rho = Some(head);
                            true
                        }
                        Some(r) => *r == head,
                    }
                });
                if let (true, Some(rho)) = (ok, rho) {
                    if m.same_followers(rho.last(), p.last()) {
                        merged.push((p, rho));
                    }
                }
            }
            if merged.is_empty() {
                return TableMap::from_trusted(m, leaves);
            }
            for (p, rho) in merged {
                for a in m.followers_of(p.last()) {
                    leaves.remove(&p.with(*a));
                }
                leaves.insert(p, rho);
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        self.leaves.iter().all(|(d, r)| d == r)
    }

    /// Whether both tables denote the same element of `Γ_A`.
    pub fn same_element(&self, other: &TableMap) -> bool {
        self.canonical() == other.canonical()
    }

    /// Least `k ≤ max_iter` with `τ^k = id`. Powers whose canonical table
    /// exceeds `max_entries` leaves also give up.
    pub fn power_order_capped(&self, max_iter: usize, max_entries: usize) -> Order {
        let base = self.canonical();
        let mut power = base.clone();
        for k in 1..=max_iter {
            if power.is_identity() {
                return Order::Finite(k);
            }
            if k == max_iter {
                break;
            }
            power = Self::compose_raw(&base, &power).canonical();
            if power.leaf_count() > max_entries {
                break;
            }
        }
        Order::ExceedsBound
    }

    pub fn power_order(&self, max_iter: usize) -> Order {
        self.power_order_capped(max_iter, DEFAULT_MAX_ENTRIES)
    }

    /// Whether `τ` is an involution different from the identity.
    pub fn is_involution(&self) -> bool {
        !self.is_identity() && Self::compose_raw(self, self).canonical().is_identity()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::shift::{EpPoint, TransitionMatrix};

    fn w(v: &[u8]) -> Word {
        Word::from(v)
    }

    fn table(m: &Arc<TransitionMatrix>, depth: usize, e: &[(&[u8], &[u8])]) -> TableMap {
        TableMap::from_uniform(m, depth, e.iter().map(|(a, b)| (w(a), w(b)))).unwrap()
    }

    fn full2() -> Arc<TransitionMatrix> {
        Arc::new(TransitionMatrix::full_shift(2).unwrap())
    }

    fn gamma(m: &Arc<TransitionMatrix>) -> TableMap {
        table(
            m,
            2,
            &[
                (&[1, 1], &[1, 1, 1]),
                (&[1, 2], &[1, 1, 2]),
                (&[2, 1], &[1, 2]),
                (&[2, 2], &[2]),
            ],
        )
    }

    #[test]
    fn swap_squared_is_identity() {
        let m = full2();
        let swap = table(&m, 1, &[(&[1], &[2]), (&[2], &[1])]);
        let id = TableMap::compose(&swap, &swap).unwrap();
        assert_eq!(id, TableMap::identity(&m));
        assert_eq!(id.depth(), 0);
        assert_eq!(swap.inverse(), swap);
        assert_eq!(swap.power_order(10), Order::Finite(2));
        assert_eq!(TableMap::identity(&m).power_order(10), Order::Finite(1));
        assert_eq!(TableMap::identity(&m).inverse(), TableMap::identity(&m));
    }

    #[test]
    fn worked_table() {
        let m = full2();
        let g = gamma(&m);
        let inv = g.inverse();
        assert_eq!(inv.depth(), 3);
        let expanded = inv.entries();
        assert!(expanded.contains(&(w(&[1, 1, 1]), w(&[1, 1]))));
        assert!(expanded.contains(&(w(&[1, 1, 2]), w(&[1, 2]))));
        assert!(expanded.contains(&(w(&[1, 2, 1]), w(&[2, 1, 1]))));
        assert!(expanded.contains(&(w(&[2, 1, 2]), w(&[2, 2, 1, 2]))));
        assert!(TableMap::compose(&inv, &g).unwrap().is_identity());
        assert!(TableMap::compose(&g, &inv).unwrap().is_identity());

        let c = g.canonical();
        assert_eq!(c.depth(), 2);
        assert_eq!(c.entries(), g.entries());
        assert_eq!(c.canonical(), c);
        assert_eq!(g.power_order(64), Order::ExceedsBound);

        let x = EpPoint::constant(&m, 1).unwrap();
        assert_eq!(g.apply(&x), x);
    }

    #[test]
    fn redundant_tables_reduce() {
        let m = full2();
        let id2 = table(
            &m,
            2,
            &[
                (&[1, 1], &[1, 1]),
                (&[1, 2], &[1, 2]),
                (&[2, 1], &[2, 1]),
                (&[2, 2], &[2, 2]),
            ],
        );
        assert_eq!(id2.canonical(), TableMap::identity(&m));
        let swap2 = table(
            &m,
            2,
            &[
                (&[1, 1], &[2, 1]),
                (&[1, 2], &[2, 2]),
                (&[2, 1], &[1, 1]),
                (&[2, 2], &[1, 2]),
            ],
        );
        let c = swap2.canonical();
        assert_eq!(c.depth(), 1);
        assert_eq!(c.entries(), vec![(w(&[1]), w(&[2])), (w(&[2]), w(&[1]))]);
    }
}
