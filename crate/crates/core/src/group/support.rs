use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::shift::{ClopenSet, EpPoint, Word};

use super::table::TableMap;

/// The fixed-point set of a table map: a clopen part plus finitely many
/// eventually periodic points lying in moved cylinders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSet {
    pub clopen_part: ClopenSet,
    pub isolated_points: Vec<EpPoint>,
}

impl FixedSet {
    pub fn contains(&self, x: &EpPoint) -> bool {
        self.clopen_part.contains_point(x) || self.isolated_points.contains(x)
    }
}

/// Orbit cocycles of a table: `σ^{k(ν)}(τ(x)) = σ^{l(ν)}(x)` on `U_ν`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocycleTable {
    pub depth: usize,
    /// `(ν, k(ν), l(ν))` for every `ν ∈ B_L`.
    pub entries: Vec<(Word, usize, usize)>,
}

impl CocycleTable {
    /// `(k, l)` on the cylinder containing `x`.
    pub fn at(&self, x: &EpPoint) -> (usize, usize) {
        let p = x.prefix(self.depth);
        let i = self
            .entries
            .binary_search_by(|(w, _, _)| w.cmp(&p))
            .expect("cocycle table covers B_L");
        (self.entries[i].1, self.entries[i].2)
    }
}

impl TableMap {
    /// The support `P_τ` (closure of the moved set, a clopen set) and the
    /// exact fixed-point set.
    ///
    /// A leaf `ν ↦ ν` is fixed pointwise. A leaf `ν ↦ ν·w` fixes exactly
    /// `ν·w^∞`, a leaf `ρ·u ↦ ρ` fixes exactly `ρ·u^∞`, and any other moved
    /// leaf fixes nothing.
    pub fn support_and_fixed_set(&self) -> (ClopenSet, FixedSet) {
        let m = &self.matrix;
        let mut moved = BTreeSet::new();
        let mut fixed = BTreeSet::new();
        let mut points = BTreeSet::new();
        for (d, r) in &self.leaves {
            if d == r {
                fixed.insert(d.clone());
                continue;
            }
            moved.insert(d.clone());
            let (short, long) = if d.len() < r.len() { (d, r) } else { (r, d) };
            if short.is_prefix_of(long) {
                let tail = Word::from(&long[short.len()..]);
                if let Ok(x) = EpPoint::new(m, short.clone(), tail) {
                    points.insert(x);
                }
            }
        }
        let support = ClopenSet::from_admissible(m, moved);
        let fixed = FixedSet {
            clopen_part: ClopenSet::from_admissible(m, fixed),
            isolated_points: points.into_iter().collect(),
        };
        (support, fixed)
    }

    pub fn support(&self) -> ClopenSet {
        self.support_and_fixed_set().0
    }

    pub fn cocycles(&self) -> CocycleTable {
        let depth = self.depth();
        let entries = self
            .entries()
            .into_iter()
            .map(|(d, r)| (d, r.len(), depth))
            .collect();
        CocycleTable { depth, entries }
    }

    pub fn commutes(&self, other: &TableMap) -> Result<bool> {
        self.check_matrix(&other.matrix)?;
        Ok(TableMap::compose(self, other)? == TableMap::compose(other, self)?)
    }

    /// Membership in the local subgroup `Γ_O`: the support lies in `O`.
    ///
    /// Isolated fixed points cannot help: a nonempty clopen set has no
    /// isolated points, so `O^c` is fixed pointwise only if it lies in the
    /// clopen fixed part.
    pub fn in_local_subgroup(&self, o: &ClopenSet) -> Result<bool> {
        self.check_matrix(o.matrix())?;
        self.support().is_subset_of(o)
    }

    /// Splits a map leaving `O` invariant as `τ = τ₁ ∘ τ₂` with
    /// `τ₁ ∈ Γ_O` and `τ₂ ∈ Γ_{O^⊥}`.
    pub fn split_invariant(&self, o: &ClopenSet) -> Result<(TableMap, TableMap)> {
        self.check_matrix(o.matrix())?;
        if self.image_clopen(o)? != *o {
            return Err(Error::NotInvariant);
        }
        let oc = o.complement();
        let inside = TableMap::piecewise(&self.matrix, &[(self, o)])?.canonical();
        let outside = TableMap::piecewise(&self.matrix, &[(self, &oc)])?.canonical();
        Ok((inside, outside))
    }

    /// Re-checks an output of [`TableMap::split_invariant`].
    pub fn verify_split(
        &self,
        o: &ClopenSet,
        inside: &TableMap,
        outside: &TableMap,
    ) -> crate::report::Checks {
        let mut c = crate::report::Checks::new();
        c.push_result("γ(O) = O", self.image_clopen(o).map(|img| img == *o));
        c.push_result("γ₁ ∈ Γ_O", inside.in_local_subgroup(o));
        c.push_result("γ₂ ∈ Γ_{O^c}", outside.in_local_subgroup(&o.complement()));
        c.push(
            "γ = γ₁ γ₂",
            TableMap::compose(inside, outside).is_ok_and(|t| t.same_element(self)),
        );
        c
    }
}
