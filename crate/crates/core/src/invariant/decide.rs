use std::fmt;

use crate::construct::{witness_search_with, SearchBounds, SearchOutcome};
use crate::error::{Error, Result};
use crate::group::TableMap;
use crate::shift::{same_matrix, ClopenSet, TransitionMatrix};

use super::group::{bowen_franks, bowen_franks_matrix, clopen_class, BfGroup, GroupElement};
use super::orbit::{automorphic, Decision};
use super::snf::determinant;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointedVerdict {
    Isomorphic,
    NotIsomorphic(String),
    Undecided(String),
}

/// Whether an isomorphism `G_A → G_B` carries `u_A` to `u_B`.
pub fn pointed_iso_decide(
    ga: &BfGroup,
    ua: &GroupElement,
    gb: &BfGroup,
    ub: &GroupElement,
) -> PointedVerdict {
    if ga.torsion != gb.torsion {
        return PointedVerdict::NotIsomorphic(format!("groups differ: {ga} vs {gb}"));
    }
    if ga.free_rank != gb.free_rank {
        return PointedVerdict::NotIsomorphic(format!(
            "free ranks differ: {} vs {}",
            ga.free_rank, gb.free_rank
        ));
    }
    match automorphic(&ga.torsion, ua, ub) {
        Decision::Yes => PointedVerdict::Isomorphic,
        Decision::No(why) => {
            PointedVerdict::NotIsomorphic(format!("no isomorphism maps u_A to u_B: {why}"))
        }
        Decision::Undecided(why) => PointedVerdict::Undecided(why),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Isomorphic => "ISOMORPHIC",
            Verdict::NotIsomorphic => "NOT_ISOMORPHIC",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Debug, Clone)]
pub struct IsoReport {
    pub group_a: BfGroup,
    pub u_a: GroupElement,
    pub group_b: BfGroup,
    pub u_b: GroupElement,
    /// `det(A − I)`.
    pub det_a: i128,
    pub det_b: i128,
    pub pointed: PointedVerdict,
    pub verdict: Verdict,
    pub reason: String,
}

/// Decides whether `Γ_A ≅ Γ_B` from the pointed Bowen–Franks groups and the
/// sign of `det(A − I)·det(B − I)`.
pub fn full_group_iso_decide(a: &TransitionMatrix, b: &TransitionMatrix) -> Result<IsoReport> {
    let (group_a, u_a) = bowen_franks(a)?;
    let (group_b, u_b) = bowen_franks(b)?;
    let det_a = determinant(&bowen_franks_matrix(a))?;
    let det_b = determinant(&bowen_franks_matrix(b))?;
    let pointed = pointed_iso_decide(&group_a, &u_a, &group_b, &u_b);
    let same_sign = det_a.signum() * det_b.signum() >= 0;
    let (verdict, reason) = match &pointed {
        PointedVerdict::NotIsomorphic(why) => (Verdict::NotIsomorphic, why.clone()),
        PointedVerdict::Undecided(why) => (
            Verdict::Inconclusive,
            format!("pointed invariant undecided: {why}"),
        ),
        PointedVerdict::Isomorphic if same_sign => (
            Verdict::Isomorphic,
            "pointed invariants agree and det(A - I)·det(B - I) >= 0".to_string(),
        ),
        PointedVerdict::Isomorphic => (
            Verdict::Inconclusive,
            format!("pointed invariants agree but det(A - I)·det(B - I) < 0 ({det_a} and {det_b})"),
        ),
    };
    Ok(IsoReport {
        group_a,
        u_a,
        group_b,
        u_b,
        det_a,
        det_b,
        pointed,
        verdict,
        reason,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    /// `γ` with `γ(U) = V`.
    Equivalent(TableMap),
    NotEquivalent(String),
    Undecided(String),
}

/// Decides whether some `γ ∈ Γ_A` has `γ(U) = V`: different clopen classes
/// certify that none exists, otherwise a witness is searched for.
pub fn gamma_equivalent(u: &ClopenSet, v: &ClopenSet, bounds: SearchBounds) -> Result<Equivalence> {
    let m = u.matrix();
    if !same_matrix(m, v.matrix()) {
        return Err(Error::MatrixMismatch);
    }
    if u == v {
        return Ok(Equivalence::Equivalent(TableMap::identity(m)));
    }
    if u.is_empty() || v.is_empty() {
        return Ok(Equivalence::NotEquivalent(
            "exactly one of the sets is empty".into(),
        ));
    }
    let (g, _) = bowen_franks(m)?;
    let (cu, cv) = (clopen_class(&g, u), clopen_class(&g, v));
    if cu != cv {
        return Ok(Equivalence::NotEquivalent(format!(
            "clopen classes differ: {cu} vs {cv} in {g}"
        )));
    }
    let predicate = |t: &TableMap| t.image_clopen(u).is_ok_and(|img| &img == v);
    // inside U must land inside V, outside U outside V
    let filter = |d: &crate::shift::Word, r: &crate::shift::Word| {
        if u.contains_cylinder(d) {
            v.contains_cylinder(r)
        } else if !u.meets_cylinder(d) {
            !v.meets_cylinder(r)
        } else {
            true
        }
    };
    Ok(match witness_search_with(m, bounds, &predicate, &filter) {
        SearchOutcome::Found(t) => Equivalence::Equivalent(t),
        SearchOutcome::Exhausted => Equivalence::Undecided(format!(
            "classes agree ({cu}) but no witness within depth {} and image length {}",
            bounds.depth, bounds.image_len
        )),
        SearchOutcome::BudgetExceeded => Equivalence::Undecided(format!(
            "classes agree ({cu}) but the search budget ran out"
        )),
    })
}
