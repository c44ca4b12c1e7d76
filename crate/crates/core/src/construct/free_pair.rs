use crate::error::{Error, Result};
use crate::group::{Order, TableMap};
use crate::report::Checks;
use crate::shift::{ClopenSet, Word};

/// An involution `ψ` and an element `φ` of order 3 in `Γ_O`, with a clopen
/// `F ⊆ O` such that `φ(F)` and `φ²(F)` are disjoint and both lie in
/// `ψ(F)`. No `Γ_O`-invariant probability measure can give `F` positive
/// mass.
#[derive(Debug, Clone)]
pub struct FreePair {
    pub o: ClopenSet,
    pub psi: TableMap,
    pub phi: TableMap,
    pub f: ClopenSet,
    /// The blocks `ζ̄`, `ξ̄`, `η̄`: `ξ̄` and `η̄` are return words to the
    /// last symbol of `ζ̄` and neither is a prefix of the other.
    pub zeta: Word,
    pub xi: Word,
    pub eta: Word,
}

impl FreePair {
    pub fn verify(&self) -> Checks {
        let mut c = Checks::new();
        c.push_result("support(ψ) ⊆ O", self.psi.support().is_subset_of(&self.o));
        c.push_result("support(φ) ⊆ O", self.phi.support().is_subset_of(&self.o));
        c.push("ψ has order 2", self.psi.power_order(6) == Order::Finite(2));
        c.push("φ has order 3", self.phi.power_order(6) == Order::Finite(3));
        c.push("F nonempty", !self.f.is_empty());
        c.push_result("F ⊆ O", self.f.is_subset_of(&self.o));
        let images = (|| {
            let p1 = self.phi.image_clopen(&self.f)?;
            let p2 = self.phi.image_clopen(&p1)?;
            let s = self.psi.image_clopen(&self.f)?;
            Ok::<_, Error>((p1, p2, s))
        })();
        match images {
            Ok((p1, p2, s)) => {
                c.push_result("φ(F) ∩ φ²(F) = ∅", p1.is_disjoint_from(&p2));
                c.push_result(
                    "φ(F) ∪ φ²(F) ⊆ ψ(F)",
                    p1.union(&p2).and_then(|u| u.is_subset_of(&s)),
                );
            }
            Err(_) => c.push("images computable", false),
        }
        c
    }
}

/// Builds `ψ`, `φ` and `F` inside a nonempty clopen `O`.
///
/// With `U_ν` the first cylinder of `O` and `u` the least symbol,
/// `ζ̄ = ν·ξ'·u` for a shortest connecting word `ξ'`; `ξ̄` is the first
/// return word to `u` of length at least 2 and `η̄` the first of length at
/// least 3 not prefix-comparable with `ξ̄`. Then `ψ` swaps `U_{ζ̄ξ̄}` and
/// `U_{ζ̄η̄}`, `φ` cycles `U_{ζ̄η̄η̄} → U_{ζ̄η̄ξ̄} → U_{ζ̄ξ̄} → U_{ζ̄η̄η̄}`, and
/// `F = U_{ζ̄ξ̄}`.
pub fn free_pair(o: &ClopenSet) -> Result<FreePair> {
    let m = o.matrix();
    let nu = o
        .cylinders()
        .iter()
        .next()
        .cloned()
        .ok_or(Error::EmptyInput("O"))?;
    let u = m.alphabet()[0];
    let zeta = match nu.last() {
        None => Word::from([u]),
        Some(last) => nu.concat(&m.connect_path(last, u)).with(u),
    };

    let start = Word::from([u]);
    let bound = 4 * m.n() * m.n() + 8;
    let mut xi: Option<Word> = None;
    let mut eta: Option<Word> = None;
    'search: for len in 2..=bound {
        for w in m.extensions(&start, len) {
            if w.last() != Some(u) {
                continue;
            }
            let r = Word::from(&w[1..]);
            match &xi {
                None => {
                    xi = Some(r);
                }
                Some(x) if len >= 3 && !x.overlaps(&r) => {
                    eta = Some(r);
                    break 'search;
                }
                Some(_) => {}
            }
        }
    }
    let (xi, eta) = match (xi, eta) {
        (Some(x), Some(e)) => (x, e),
        _ => {
            return Err(Error::Internal(format!(
                "no pair of return words to {u} within length {bound}"
            )))
        }
    };

    let a = zeta.concat(&eta).concat(&eta);
    let b = zeta.concat(&eta).concat(&xi);
    let c = zeta.concat(&xi);
    let psi = TableMap::cylinder_swap(m, &c, &zeta.concat(&eta))?;
    let phi = TableMap::from_cylinder_moves(
        m,
        &[(a.clone(), b.clone()), (b, c.clone()), (c.clone(), a)],
    )?;
    Ok(FreePair {
        o: o.clone(),
        psi,
        phi,
        f: ClopenSet::cylinder(m, c)?,
        zeta,
        xi,
        eta,
    })
}
