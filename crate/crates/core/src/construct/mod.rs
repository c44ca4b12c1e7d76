//! Witness-producing constructions of elements of `Γ_A`.
//!
//! Every construction returns its witness together with the clopen sets it
//! was built from, and a `verify` method that re-checks the postconditions
//! of the construction from scratch. Where a choice is made, the shortest
//! and then lexicographically least option is taken, so outputs are
//! reproducible.

mod free_pair;
mod involution;
mod localize;
mod search;
mod transport;

pub use free_pair::{free_pair, FreePair};
pub use involution::{
    cylinder_involution, involution_into, swap_involution, CylinderInvolution, InvolutionInto,
    SwapInvolution,
};
pub use localize::{localize_conjugate, LocalizedConjugate};
pub use search::{witness_search, witness_search_with, SearchBounds, SearchOutcome};
pub use transport::{
    clopen_transport, minimality_witness, paired_transport, MinimalityWitness, PairedTransport,
    Transport,
};

use crate::group::{Order, TableMap};
use crate::report::Checks;
use crate::shift::ClopenSet;

/// Records the checks shared by every involution `α` moving a set `S`:
/// `α² = id` and `α` is the identity off `S ∪ α(S)`.
pub(crate) fn involution_checks(checks: &mut Checks, name: &str, alpha: &TableMap, s: &ClopenSet) {
    checks.push(
        format!("{name}^2 = id"),
        alpha.power_order(2) == Order::Finite(2),
    );
    let moved = alpha.image_clopen(s).and_then(|img| img.union(s));
    checks.push_result(
        format!("{name} = id off S ∪ {name}(S)"),
        moved.and_then(|m| alpha.support().is_subset_of(&m)),
    );
}
