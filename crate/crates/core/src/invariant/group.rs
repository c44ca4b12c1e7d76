use std::fmt;

use crate::error::Result;
use crate::shift::{ClopenSet, TransitionMatrix};

use super::snf::{smith_normal_form, IntMatrix, SmithForm};

/// The Bowen–Franks group `ℤᴺ / (Aᵗ − I)ℤᴺ` in Smith coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfGroup {
    pub n: usize,
    pub free_rank: usize,
    /// Invariant factors `d₁ | d₂ | …`, each at least 2.
    pub torsion: Vec<i128>,
    /// Transforms with `P·(Aᵗ − I)·Q = D`.
    pub smith: SmithForm,
}

/// An element of a [`BfGroup`]: torsion coordinates reduced modulo the
/// invariant factors, then free coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub torsion: Vec<i128>,
    pub free: Vec<i128>,
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().chain(&self.free).all(|&x| x == 0)
    }
}

/// `(t₁, …; f₁, …)`; the trivial group's element prints as `0`.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.torsion.is_empty() && self.free.is_empty() {
            return f.write_str("0");
        }
        let join = |v: &[i128]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        if self.free.is_empty() {
            write!(f, "({})", join(&self.torsion))
        } else {
            write!(f, "({}; {})", join(&self.torsion), join(&self.free))
        }
    }
}

/// `ℤ/d₁ ⊕ … ⊕ ℤ^r`, or `0`.
impl fmt::Display for BfGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `Aᵗ − I` as an integer matrix.
pub fn bowen_franks_matrix(a: &TransitionMatrix) -> IntMatrix {
    let n = a.n();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let entry = i128::from(a.get(j as u8 + 1, i as u8 + 1));
                    entry - i128::from(i == j)
                })
                .collect()
        })
        .collect()
}

impl BfGroup {
    pub fn of(a: &TransitionMatrix) -> Result<Self> {
        let smith = smith_normal_form(&bowen_franks_matrix(a))?;
        let torsion = smith.diagonal.iter().copied().filter(|&d| d >= 2).collect();
        let free_rank = smith.diagonal.iter().filter(|&&d| d == 0).count();
        Ok(BfGroup {
            n: a.n(),
            free_rank,
            torsion,
            smith,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Order of the torsion subgroup, saturating.
    pub fn torsion_order(&self) -> u128 {
        self.torsion
            .iter()
            .fold(1u128, |acc, &d| acc.saturating_mul(d as u128))
    }

    /// The class of an integer vector of `ℤᴺ`.
    pub fn element(&self, v: &[i128]) -> GroupElement {
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (row, &d) in self.smith.p.iter().zip(&self.smith.diagonal) {
            if d == 1 {
                continue;
            }
            let x: i128 = row.iter().zip(v).map(|(a, b)| a * b).sum();
            if d == 0 {
                free.push(x);
            } else {
                torsion.push(x.rem_euclid(d));
            }
        }
        GroupElement { torsion, free }
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            torsion: vec![0; self.torsion.len()],
            free: vec![0; self.free_rank],
        }
    }

    /// The class of `e_i` (1-based state `i`).
    pub fn basis_class(&self, i: usize) -> GroupElement {
        let mut v = vec![0i128; self.n];
        v[i - 1] = 1;
        self.element(&v)
    }
}

/// The pointed invariant `(ℤᴺ / (Aᵗ − I)ℤᴺ, [1, …, 1])`.
pub fn bowen_franks(a: &TransitionMatrix) -> Result<(BfGroup, GroupElement)> {
    let g = BfGroup::of(a)?;
    let u = g.element(&vec![1; a.n()]);
    Ok((g, u))
}

/// The class of a clopen set: a cylinder `U_μ` contributes `e_{μ_k}` (the
/// whole space contributes `[1, …, 1]`), summed over a disjoint cover.
pub fn clopen_class(g: &BfGroup, x: &ClopenSet) -> GroupElement {
    let mut v = vec![0i128; g.n];
    for w in x.cylinders() {
        match w.last() {
            Some(s) => v[s as usize - 1] += 1,
            None => v.iter_mut().for_each(|c| *c += 1),
        }
    }
    g.element(&v)
}
