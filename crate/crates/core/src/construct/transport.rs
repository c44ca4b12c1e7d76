use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::TableMap;
use crate::report::Checks;
use crate::shift::{same_matrix, ClopenSet, TransitionMatrix, Word};

use super::involution::cylinder_involution;
use super::involution_checks;

/// An involution carrying a clopen set into a disjoint one.
#[derive(Debug, Clone)]
pub struct Transport {
    pub u: ClopenSet,
    pub w: ClopenSet,
    pub alpha: TableMap,
}

impl Transport {
    pub fn verify(&self) -> Checks {
        let mut c = Checks::new();
        c.push_result(
            "α(U) ⊆ W",
            self.alpha
                .image_clopen(&self.u)
                .and_then(|i| i.is_subset_of(&self.w)),
        );
        involution_checks(&mut c, "α", &self.alpha, &self.u);
        c
    }
}

fn check_pair(u: &ClopenSet, w: &ClopenSet) -> Result<()> {
    if !same_matrix(u.matrix(), w.matrix()) {
        return Err(Error::MatrixMismatch);
    }
    if u.is_empty() {
        return Err(Error::EmptyInput("U"));
    }
    if w.is_empty() {
        return Err(Error::EmptyInput("W"));
    }
    if !u.is_disjoint_from(w)? {
        return Err(Error::NotDisjoint("U and W meet"));
    }
    Ok(())
}

/// The cylinders of `s`, each refined to length at least 2.
fn long_cylinders(m: &TransitionMatrix, s: &ClopenSet) -> Vec<Word> {
    s.cylinders()
        .iter()
        .flat_map(|w| m.extensions(w, 2usize.saturating_sub(w.len())))
        .collect()
}

/// Swaps each `U_{ν_i}` into the `i`-th piece of `w`. The pieces of `w` are
/// disjoint and disjoint from every `U_{ν_i}`, so the involutions commute
/// and their product is assembled in one table.
fn swap_into_pieces(m: &Arc<TransitionMatrix>, nus: &[Word], w: &ClopenSet) -> Result<TableMap> {
    let pieces = w.pieces(nus.len());
    let mut pairs = Vec::with_capacity(nus.len());
    for (nu, piece) in nus.iter().zip(&pieces) {
        let target = ClopenSet::cylinder(m, piece.clone())?;
        let a = cylinder_involution(m, nu, &target)?;
        let img = a
            .alpha
            .leaves()
            .find(|(d, _)| *d == nu)
            .map(|(_, r)| r.clone());
        let img = img.ok_or_else(|| Error::Internal("swap lost its cylinder".into()))?;
        pairs.push((nu.clone(), img));
    }
    TableMap::cylinder_swaps(m, &pairs)
}

/// For disjoint nonempty `U`, `W`, an involution `α` with `α(U) ⊆ W`,
/// identity off `U ∪ α(U)`.
///
/// `U` is cut into cylinders of length at least 2, `W` into as many
/// pieces, and each cylinder is swapped into its own piece.
pub fn clopen_transport(u: &ClopenSet, w: &ClopenSet) -> Result<Transport> {
    check_pair(u, w)?;
    let m = u.matrix();
    let nus = long_cylinders(m, u);
    let alpha = swap_into_pieces(m, &nus, w)?;
    Ok(Transport {
        u: u.clone(),
        w: w.clone(),
        alpha,
    })
}

/// Matched partitions of `U ⊆ O` and `V ⊆ O^c` with involutions moving the
/// pieces into `W ⊆ O` and `W' ⊆ O^c`.
#[derive(Debug, Clone)]
pub struct PairedTransport {
    pub o: ClopenSet,
    pub u: ClopenSet,
    pub v: ClopenSet,
    pub w: ClopenSet,
    pub w2: ClopenSet,
    pub gamma: TableMap,
    pub u_parts: Vec<Word>,
    pub v_parts: Vec<Word>,
    pub alphas: Vec<TableMap>,
    pub betas: Vec<TableMap>,
}

impl PairedTransport {
    pub fn verify(&self) -> Checks {
        let mut c = Checks::new();
        let m = self.o.matrix();
        let cyl = |w: &Word| ClopenSet::cylinder(m, w.clone()).expect("admissible part");
        let us: Vec<ClopenSet> = self.u_parts.iter().map(cyl).collect();
        let vs: Vec<ClopenSet> = self.v_parts.iter().map(cyl).collect();
        let oc = self.o.complement();
        c.push(
            "same number of parts",
            us.len() == vs.len() && us.len() == self.alphas.len() && us.len() == self.betas.len(),
        );
        c.push("(U_i) partitions U", partitions(&us, &self.u));
        c.push("(V_i) partitions V", partitions(&vs, &self.v));
        c.push(
            "γ(U_i) = V_i",
            us.iter()
                .zip(&vs)
                .all(|(a, b)| self.gamma.image_clopen(a).is_ok_and(|i| i == *b)),
        );
        side_checks(&mut c, "α_i", &self.alphas, &us, &self.w, &self.o);
        side_checks(&mut c, "β_i", &self.betas, &vs, &self.w2, &oc);
        c
    }
}

/// The union of `parts` if they are nonempty and pairwise disjoint.
fn disjoint_union(parts: &[ClopenSet], m: &Arc<TransitionMatrix>) -> Option<ClopenSet> {
    let mut acc = ClopenSet::empty(m);
    for p in parts {
        if p.is_empty() || !acc.is_disjoint_from(p).ok()? {
            return None;
        }
        acc = acc.union(p).ok()?;
    }
    Some(acc)
}

fn partitions(parts: &[ClopenSet], whole: &ClopenSet) -> bool {
    disjoint_union(parts, whole.matrix()).is_some_and(|u| u == *whole)
}

fn side_checks(
    c: &mut Checks,
    name: &str,
    maps: &[TableMap],
    parts: &[ClopenSet],
    target: &ClopenSet,
    local: &ClopenSet,
) {
    let images: Vec<Option<ClopenSet>> = maps
        .iter()
        .zip(parts)
        .map(|(a, p)| a.image_clopen(p).ok())
        .collect();
    c.push(
        format!("{name}(part_i) ⊆ target"),
        images.iter().all(|i| {
            i.as_ref()
                .is_some_and(|i| i.is_subset_of(target).unwrap_or(false))
        }),
    );
    let images: Option<Vec<ClopenSet>> = images.into_iter().collect();
    c.push(
        format!("{name}(part_i) pairwise disjoint"),
        images.is_some_and(|i| disjoint_union(&i, target.matrix()).is_some()),
    );
    let mut all = Checks::new();
    for (a, p) in maps.iter().zip(parts) {
        involution_checks(&mut all, name, a, p);
    }
    c.push(
        format!("{name}^2 = id, identity off part ∪ image"),
        all.all_passed(),
    );
    c.push(
        format!("{name} in local subgroup"),
        maps.iter()
            .all(|a| a.in_local_subgroup(local).unwrap_or(false)),
    );
}

/// For `U ⊆ O`, `V ⊆ O^c` with `γ(U) = V`, and targets `W ⊆ O`, `W' ⊆ O^c`
/// disjoint from `U`, `V` respectively: partitions `U = ⊔ U_i`,
/// `V = ⊔ V_i` with `γ(U_i) = V_i`, and involutions `α_i ∈ Γ_O`,
/// `β_i ∈ Γ_{O^c}` moving `U_i` into `W` and `V_i` into `W'`.
///
/// The pieces are the leaves of the involution exchanging `U` and `V` that
/// [`swap_involution`](super::swap_involution) builds from `γ`.
pub fn paired_transport(
    o: &ClopenSet,
    u: &ClopenSet,
    v: &ClopenSet,
    w: &ClopenSet,
    w2: &ClopenSet,
    gamma: &TableMap,
) -> Result<PairedTransport> {
    let m = o.matrix();
    for s in [u, v, w, w2] {
        if !same_matrix(m, s.matrix()) {
            return Err(Error::MatrixMismatch);
        }
    }
    let oc = o.complement();
    let fail = |what: &str| Err(Error::PreconditionFailed(what.to_string()));
    if u.is_empty() || v.is_empty() || w.is_empty() || w2.is_empty() {
        return fail("U, V, W, W' must be nonempty");
    }
    if !u.is_subset_of(o)? {
        return fail("U ⊄ O");
    }
    if !v.is_subset_of(&oc)? {
        return fail("V ⊄ O^c");
    }
    if !w.is_subset_of(o)? {
        return fail("W ⊄ O");
    }
    if !w2.is_subset_of(&oc)? {
        return fail("W' ⊄ O^c");
    }
    if !u.is_disjoint_from(w)? {
        return fail("U ∩ W ≠ ∅");
    }
    if !v.is_disjoint_from(w2)? {
        return fail("V ∩ W' ≠ ∅");
    }
    if gamma.image_clopen(u)? != *v {
        return fail("γ(U) ≠ V");
    }
    let swap = super::swap_involution(u, v, gamma)?;

    let mut u_parts = Vec::new();
    let mut v_parts = Vec::new();
    for (d, r) in swap.alpha.restricted_leaves(u) {
        let need = 2usize.saturating_sub(d.len().min(r.len()));
        for ext in m.extensions(&d, need) {
            let tail = &ext[d.len()..];
            v_parts.push(r.concat(tail));
            u_parts.push(ext);
        }
    }
    let pieces_w = w.pieces(u_parts.len());
    let pieces_w2 = w2.pieces(v_parts.len());
    let mut alphas = Vec::new();
    let mut betas = Vec::new();
    for i in 0..u_parts.len() {
        let tw = ClopenSet::cylinder(m, pieces_w[i].clone())?;
        alphas.push(cylinder_involution(m, &u_parts[i], &tw)?.alpha);
        let tw2 = ClopenSet::cylinder(m, pieces_w2[i].clone())?;
        betas.push(cylinder_involution(m, &v_parts[i], &tw2)?.alpha);
    }
    Ok(PairedTransport {
        o: o.clone(),
        u: u.clone(),
        v: v.clone(),
        w: w.clone(),
        w2: w2.clone(),
        gamma: gamma.clone(),
        u_parts,
        v_parts,
        alphas,
        betas,
    })
}

/// A map carrying a nonempty part `source` of `U` into `V`.
#[derive(Debug, Clone)]
pub struct MinimalityWitness {
    pub u: ClopenSet,
    pub v: ClopenSet,
    /// `U` itself, except when `U = X_A ≠ V`, where no bijection can carry
    /// all of `U` into `V`; then the first cylinder of `U ∖ V`.
    pub source: ClopenSet,
    pub gamma: TableMap,
}

impl MinimalityWitness {
    pub fn verify(&self) -> Checks {
        let mut c = Checks::new();
        c.push("S nonempty", !self.source.is_empty());
        c.push_result("S ⊆ U", self.source.is_subset_of(&self.u));
        c.push(
            "S = U unless U = X_A ≠ V",
            self.source == self.u || (self.u.is_full() && !self.v.is_full()),
        );
        c.push_result(
            "γ(S) ⊆ V",
            self.gamma
                .image_clopen(&self.source)
                .and_then(|i| i.is_subset_of(&self.v)),
        );
        c
    }
}

/// For nonempty `U`, `V`, an element `γ` with `γ(U) ⊆ V` (see
/// [`MinimalityWitness::source`] for the one exception).
///
/// Disjoint sets use [`clopen_transport`] directly. When `V ∖ U` is
/// nonempty, `U ∖ V` is transported into `V ∖ U` and `U ∩ V` stays put.
/// When `V ⊊ U`, `U` is first moved off itself and then into `V`.
pub fn minimality_witness(u: &ClopenSet, v: &ClopenSet) -> Result<MinimalityWitness> {
    let m = u.matrix();
    if !same_matrix(m, v.matrix()) {
        return Err(Error::MatrixMismatch);
    }
    if u.is_empty() {
        return Err(Error::EmptyInput("U"));
    }
    if v.is_empty() {
        return Err(Error::EmptyInput("V"));
    }
    let out = |source: ClopenSet, gamma: TableMap| MinimalityWitness {
        u: u.clone(),
        v: v.clone(),
        source,
        gamma,
    };
    if u.is_subset_of(v)? {
        return Ok(out(u.clone(), TableMap::identity(m)));
    }
    if u.is_disjoint_from(v)? {
        return Ok(out(u.clone(), clopen_transport(u, v)?.alpha));
    }
    let v_only = v.difference(u)?;
    if !v_only.is_empty() {
        let g = clopen_transport(&u.difference(v)?, &v_only)?.alpha;
        return Ok(out(u.clone(), g));
    }
    if u.is_full() {
        let first = u
            .difference(v)?
            .cylinders()
            .iter()
            .next()
            .cloned()
            .expect("V ⊊ U");
        let s = ClopenSet::cylinder(m, first)?;
        return Ok(out(s.clone(), clopen_transport(&s, v)?.alpha));
    }
    let a1 = clopen_transport(u, &u.complement())?.alpha;
    let moved = a1.image_clopen(u)?;
    let b = clopen_transport(&moved, v)?.alpha;
    Ok(out(u.clone(), TableMap::compose(&b, &a1)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u8]) -> Word {
        Word::from(v)
    }

    fn set(m: &Arc<TransitionMatrix>, ws: &[&[u8]]) -> ClopenSet {
        ClopenSet::from_words(m, ws.iter().map(|x| w(x))).unwrap()
    }

    #[test]
    fn transport_examples() {
        let m = Arc::new(TransitionMatrix::full_shift(2).unwrap());
        let t = clopen_transport(&set(&m, &[&[1]]), &set(&m, &[&[2]])).unwrap();
        assert!(t.verify().all_passed(), "{}", t.verify());
        let t = clopen_transport(&set(&m, &[&[1, 1], &[2, 2]]), &set(&m, &[&[1, 2]])).unwrap();
        assert!(t.verify().all_passed(), "{}", t.verify());
        assert_eq!(
            clopen_transport(&set(&m, &[&[1]]), &set(&m, &[&[1]])).unwrap_err(),
            Error::NotDisjoint("U and W meet")
        );
    }

    #[test]
    fn paired_transport_examples() {
        let m = Arc::new(TransitionMatrix::full_shift(2).unwrap());
        let o = set(&m, &[&[1]]);
        let (u, v) = (set(&m, &[&[1, 1]]), set(&m, &[&[2, 1]]));
        let gamma = TableMap::cylinder_swap(&m, &w(&[1, 1]), &w(&[2, 1])).unwrap();
        let p = paired_transport(
            &o,
            &u,
            &v,
            &set(&m, &[&[1, 2]]),
            &set(&m, &[&[2, 2]]),
            &gamma,
        )
        .unwrap();
        assert!(!p.u_parts.is_empty());
        assert!(p.verify().all_passed(), "{}", p.verify());

        assert!(matches!(
            paired_transport(
                &o,
                &u,
                &o,
                &set(&m, &[&[1, 2]]),
                &set(&m, &[&[2, 2]]),
                &gamma
            ),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn minimality_examples() {
        let m = Arc::new(TransitionMatrix::full_shift(2).unwrap());
        let r = minimality_witness(&set(&m, &[&[1, 1]]), &set(&m, &[&[2, 2]])).unwrap();
        assert!(r.verify().all_passed(), "{}", r.verify());
        let full = ClopenSet::full(&m);
        let r = minimality_witness(&full, &full).unwrap();
        assert!(r.gamma.is_identity());
        let gm = Arc::new(TransitionMatrix::golden_mean());
        let r = minimality_witness(&set(&gm, &[&[2]]), &set(&gm, &[&[1, 1]])).unwrap();
        assert!(r.verify().all_passed(), "{}", r.verify());

        // V strictly inside U, and U the whole space
        let r = minimality_witness(&set(&m, &[&[1]]), &set(&m, &[&[1, 2]])).unwrap();
        assert!(r.verify().all_passed(), "{}", r.verify());
        assert_eq!(r.source, set(&m, &[&[1]]));
        let r = minimality_witness(&full, &set(&m, &[&[1, 2]])).unwrap();
        assert!(r.verify().all_passed(), "{}", r.verify());
        // overlapping sets
        let r = minimality_witness(&set(&m, &[&[1]]), &set(&m, &[&[1, 1], &[2]])).unwrap();
        assert!(r.verify().all_passed(), "{}", r.verify());
    }
}
