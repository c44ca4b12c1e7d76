use crate::error::{Error, Result};
use crate::group::TableMap;
use crate::report::Checks;
use crate::shift::{same_matrix, ClopenSet, Word};

use super::involution::involution_into;

/// An element `γ ∈ Γ_O` such that `γ⁻¹ηγ` moves points of `U`.
#[derive(Debug, Clone)]
pub struct LocalizedConjugate {
    pub eta: TableMap,
    pub u: ClopenSet,
    pub o: ClopenSet,
    pub gamma: TableMap,
    /// `γ⁻¹ η γ`.
    pub conjugate: TableMap,
}

impl LocalizedConjugate {
    pub fn verify(&self) -> Checks {
        let mut c = Checks::new();
        c.push_result("γ ∈ Γ_O", self.gamma.in_local_subgroup(&self.o));
        let conj = TableMap::compose(&self.gamma.inverse(), &self.eta)
            .and_then(|t| TableMap::compose(&t, &self.gamma));
        c.push(
            "γ⁻¹ηγ recomputed",
            conj.as_ref().is_ok_and(|t| t.same_element(&self.conjugate)),
        );
        c.push_result(
            "γ⁻¹ηγ|_U ≠ id",
            conj.and_then(|t| t.support().is_disjoint_from(&self.u))
                .map(|d| !d),
        );
        c
    }
}

/// A cylinder `Y` inside the support with `η(Y) ∩ Y = ∅`, found below the
/// first moved leaf of `η` that admits one, shortest extension first.
fn separated_cylinder(eta: &TableMap) -> Option<(Word, Word)> {
    let m = eta.matrix();
    let budget = 100_000usize;
    let mut seen = 0usize;
    for (d, r) in eta.leaves().filter(|(d, r)| d != r) {
        let limit = d.len() + r.len() + 2 * m.n() + 2;
        for extra in 0..=limit.saturating_sub(d.len()) {
            for e in m.extensions(d, extra) {
                seen += 1;
                let img = r.concat(&e[d.len()..]);
                if !e.overlaps(&img) {
                    return Some((e, img));
                }
                if seen > budget {
                    return None;
                }
            }
        }
    }
    None
}

/// For `η ∈ Γ_O`, `η ≠ id`, and a nonempty clopen `U ⊆ O`, an element
/// `γ ∈ Γ_O` with `γ⁻¹ηγ` not the identity on `U`.
///
/// When `η` already moves points of `U` this is the identity. Otherwise `U`
/// is split as `U_1 ⊔ U_2` and `Y` is a cylinder with `η(Y) ∩ Y = ∅`; an
/// involution `α` moves a part `U'_1` of `U_1` into `Y`, an involution `β`
/// moves a part `U'_2` of `U_2` into `η(α(U'_1))`, and `γ = αβ` carries a
/// part of `U'_2` onto `U'_2`'s image under `γ⁻¹ηγ`, which is disjoint
/// from it.
pub fn localize_conjugate(
    eta: &TableMap,
    u: &ClopenSet,
    o: &ClopenSet,
) -> Result<LocalizedConjugate> {
    let m = eta.matrix();
    if !same_matrix(m, u.matrix()) || !same_matrix(m, o.matrix()) {
        return Err(Error::MatrixMismatch);
    }
    let fail = |what: &str| Err(Error::PreconditionFailed(what.to_string()));
    let eta = eta.canonical();
    if eta.is_identity() {
        return fail("η is the identity");
    }
    if !eta.in_local_subgroup(o)? {
        return fail("η ∉ Γ_O");
    }
    if u.is_empty() {
        return fail("U is empty");
    }
    if !u.is_subset_of(o)? {
        return fail("U ⊄ O");
    }
    let done = |gamma: TableMap, conjugate: TableMap| LocalizedConjugate {
        eta: eta.clone(),
        u: u.clone(),
        o: o.clone(),
        gamma,
        conjugate,
    };
    if !eta.support().is_disjoint_from(u)? {
        return Ok(done(TableMap::identity(m), eta.clone()));
    }

    let pieces = u.pieces(2);
    let u1 = ClopenSet::cylinder(m, pieces[0].clone())?;
    let u2 = ClopenSet::from_words(m, pieces[1..].iter().cloned())?;
    let (y, ey) = separated_cylinder(&eta)
        .ok_or_else(|| Error::Internal("no cylinder separated by η".into()))?;
    let y = ClopenSet::cylinder(m, y)?;
    let ey = ClopenSet::cylinder(m, ey)?;

    let src1 = u1.difference(&ey)?;
    let x1 = src1
        .sample_point()
        .ok_or_else(|| Error::Internal("U_1 ∖ η(Y) is empty".into()))?;
    let a = involution_into(&src1, &y, &x1)?;
    let target2 = eta.image_clopen(&a.alpha.image_clopen(&a.v)?)?;
    let src2 = u2.difference(&y)?;
    let x2 = src2
        .sample_point()
        .ok_or_else(|| Error::Internal("U_2 ∖ Y is empty".into()))?;
    let b = involution_into(&src2, &target2, &x2)?;

    let gamma = TableMap::compose(&a.alpha, &b.alpha)?;
    let conjugate = TableMap::compose(&TableMap::compose(&gamma.inverse(), &eta)?, &gamma)?;
    Ok(done(gamma, conjugate))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::shift::TransitionMatrix;

    fn w(v: &[u8]) -> Word {
        Word::from(v)
    }

    fn set(m: &Arc<TransitionMatrix>, ws: &[&[u8]]) -> ClopenSet {
        ClopenSet::from_words(m, ws.iter().map(|x| w(x))).unwrap()
    }

    #[test]
    fn localize_examples() {
        let m = Arc::new(TransitionMatrix::full_shift(2).unwrap());
        let eta = TableMap::cylinder_swap(&m, &w(&[1, 1]), &w(&[1, 2])).unwrap();
        let o = set(&m, &[&[1]]);
        let r = localize_conjugate(&eta, &set(&m, &[&[1, 1]]), &o).unwrap();
        assert!(r.gamma.is_identity());
        assert!(r.verify().all_passed(), "{}", r.verify());

        let eta = TableMap::cylinder_swap(&m, &w(&[1, 1, 1]), &w(&[1, 1, 2])).unwrap();
        let r = localize_conjugate(&eta, &set(&m, &[&[1, 2]]), &o).unwrap();
        assert!(!r.gamma.is_identity());
        assert!(r.verify().all_passed(), "{}", r.verify());

        assert!(matches!(
            localize_conjugate(&TableMap::identity(&m), &o, &o),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn localize_with_expanding_leaf() {
        let m = Arc::new(TransitionMatrix::full_shift(2).unwrap());
        let eta = TableMap::from_uniform(
            &m,
            2,
            [
                (w(&[1, 1]), w(&[1, 1, 1])),
                (w(&[1, 2]), w(&[1, 1, 2])),
                (w(&[2, 1]), w(&[1, 2])),
                (w(&[2, 2]), w(&[2])),
            ],
        )
        .unwrap();
        let o = ClopenSet::full(&m);
        let r = localize_conjugate(&eta, &set(&m, &[&[2, 1]]), &o).unwrap();
        assert!(r.verify().all_passed(), "{}", r.verify());
    }
}
