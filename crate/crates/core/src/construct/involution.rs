use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::TableMap;
use crate::report::Checks;
use crate::shift::{same_matrix, ClopenSet, EpPoint, TransitionMatrix, Word};

use super::involution_checks;

/// An involution carrying a clopen neighbourhood `V` of a point into a
/// target set.
#[derive(Debug, Clone)]
pub struct InvolutionInto {
    pub u: ClopenSet,
    pub y: ClopenSet,
    pub x: EpPoint,
    pub v: ClopenSet,
    pub alpha: TableMap,
}

impl InvolutionInto {
    pub fn verify(&self) -> Checks {
        let mut c = Checks::new();
        c.push("x ∈ V", self.v.contains_point(&self.x));
        c.push_result("V ⊆ U", self.v.is_subset_of(&self.u));
        c.push_result(
            "α(V) ⊆ Y",
            self.alpha
                .image_clopen(&self.v)
                .and_then(|i| i.is_subset_of(&self.y)),
        );
        involution_checks(&mut c, "α", &self.alpha, &self.v);
        c
    }
}

/// For `x ∈ U` and a nonempty `Y`, finds a cylinder `V = U_ν` with
/// `x ∈ V ⊆ U` and an involution `α` swapping `V` with a cylinder inside
/// `Y`.
///
/// With `U_μ ⊆ Y` and `s ≠ s'` two paths from `μ_n` into a common state
/// `u`, the target is `μ·s·u·ξ·ν_m` (or the same with `s'`), which is
/// disjoint from `U_ν` once `|ν| > |μ| + |s| + 1`.
pub fn involution_into(u: &ClopenSet, y: &ClopenSet, x: &EpPoint) -> Result<InvolutionInto> {
    let m = u.matrix();
    if !same_matrix(m, y.matrix()) {
        return Err(Error::MatrixMismatch);
    }
    if u.is_empty() {
        return Err(Error::EmptyInput("U"));
    }
    if y.is_empty() {
        return Err(Error::EmptyInput("Y"));
    }
    if !u.contains_point(x) {
        return Err(Error::PreconditionFailed(format!("x = {x} is not in U")));
    }

    let mut mu = y.cylinders().iter().next().cloned().expect("nonempty");
    if mu.is_empty() {
        mu = Word::from([m.alphabet()[0]]);
    }
    let n = mu.len();
    let (s, s2, sym) = m.distinct_path_pair(mu.last().expect("nonempty"))?;
    let k = s.len();

    let mut len = n + k + 2;
    while !u.contains_cylinder(&x.prefix(len)) {
        len += 1;
    }
    let nu = x.prefix(len);
    let last = nu.last().expect("nonempty");
    let xi = m.connect_path(sym, last);

    let build = |s: &Word| mu.concat(s).with(sym).concat(&xi).with(last);
    let mut target = build(&s);
    if target[..n + k + 1] == nu[..n + k + 1] {
        target = build(&s2);
    }
    let alpha = TableMap::cylinder_swap(m, &nu, &target)?;
    Ok(InvolutionInto {
        u: u.clone(),
        y: y.clone(),
        x: x.clone(),
        v: ClopenSet::cylinder(m, nu)?,
        alpha,
    })
}

/// An involution exchanging two disjoint clopen sets.
#[derive(Debug, Clone)]
pub struct SwapInvolution {
    pub u: ClopenSet,
    pub v: ClopenSet,
    pub alpha: TableMap,
}

impl SwapInvolution {
    pub fn verify(&self) -> Checks {
        let mut c = Checks::new();
        c.push_result(
            "α(U) = V",
            self.alpha.image_clopen(&self.u).map(|i| i == self.v),
        );
        involution_checks(&mut c, "α", &self.alpha, &self.u);
        c
    }
}

/// Given `γ` with `γ(U) = V` and `U ∩ V = ∅`, the involution acting as `γ`
/// on `U`, as `γ⁻¹` on `V` and as the identity elsewhere.
pub fn swap_involution(u: &ClopenSet, v: &ClopenSet, gamma: &TableMap) -> Result<SwapInvolution> {
    let m = gamma.matrix();
    if u.is_empty() {
        return Err(Error::EmptyInput("U"));
    }
    if !u.is_disjoint_from(v)? {
        return Err(Error::NotDisjoint("U and V meet"));
    }
    if gamma.image_clopen(u)? != *v {
        return Err(Error::NotAWitness);
    }
    let inv = gamma.inverse();
    let alpha = TableMap::piecewise(m, &[(gamma, u), (&inv, v)])?.canonical();
    Ok(SwapInvolution {
        u: u.clone(),
        v: v.clone(),
        alpha,
    })
}

/// An involution carrying a cylinder `U_ν` into a clopen set.
#[derive(Debug, Clone)]
pub struct CylinderInvolution {
    pub nu: Word,
    pub v: ClopenSet,
    pub alpha: TableMap,
}

impl CylinderInvolution {
    pub fn verify(&self) -> Checks {
        let mut c = Checks::new();
        let m = self.v.matrix();
        match ClopenSet::cylinder(m, self.nu.clone()) {
            Ok(cyl) => {
                c.push_result(
                    "α(U_ν) ⊆ V",
                    self.alpha
                        .image_clopen(&cyl)
                        .and_then(|i| i.is_subset_of(&self.v)),
                );
                involution_checks(&mut c, "α", &self.alpha, &cyl);
            }
            Err(_) => c.push("ν admissible", false),
        }
        c
    }
}

/// For `|ν| > 1` and a nonempty `V ⊄ U_ν`, an involution swapping `U_ν` with
/// a cylinder `U_{μξν}` inside `V`, where `U_μ ⊆ V ∖ U_ν`, `|μ| > |ν|`.
pub fn cylinder_involution(
    matrix: &Arc<TransitionMatrix>,
    nu: &Word,
    v: &ClopenSet,
) -> Result<CylinderInvolution> {
    if nu.len() < 2 {
        return Err(Error::BadInput(format!("|ν| = {} must exceed 1", nu.len())));
    }
    if v.is_empty() {
        return Err(Error::BadInput("V is empty".into()));
    }
    let cyl = ClopenSet::cylinder(matrix, nu.clone())?;
    let rest = v.difference(&cyl)?;
    if rest.is_empty() {
        return Err(Error::BadInput(format!("U_{nu} contains V")));
    }
    let mut mu = rest.cylinders().iter().next().cloned().expect("nonempty");
    while mu.len() <= nu.len() {
        let next = matrix.followers_of(mu.last())[0];
        mu.push(next);
    }
    let xi = matrix.connect_path(mu.last().expect("nonempty"), nu[0]);
    let target = mu.concat(&xi).concat(nu);
    let alpha = TableMap::cylinder_swap(matrix, nu, &target)?;
    Ok(CylinderInvolution {
        nu: nu.clone(),
        v: v.clone(),
        alpha,
    })
}
