//! The pointed Bowen–Franks invariant and the decisions built on it.

mod decide;
mod group;
mod orbit;
mod snf;

pub use decide::{
    full_group_iso_decide, gamma_equivalent, pointed_iso_decide, Equivalence, IsoReport,
    PointedVerdict, Verdict,
};
pub use group::{bowen_franks, bowen_franks_matrix, clopen_class, BfGroup, GroupElement};
pub use orbit::{automorphic, factorize, Decision, PComponent, ORBIT_LIMIT};
pub use snf::{determinant, mat_mul, smith_normal_form, IntMatrix, SmithForm};
