//! Automorphism orbits in finitely generated abelian groups
//! `ℤ/d₁ ⊕ … ⊕ ℤ/d_s ⊕ ℤ^r`.
//!
//! An automorphism acts on `(t, f)` as `(αt + βf, δf)` with `α ∈ Aut(T)`,
//! `β ∈ Hom(ℤ^r, T)` and `δ ∈ GL_r(ℤ)`. So `(t, f)` and `(t', f')` are
//! automorphic iff `gcd(f) = gcd(f')` and `α(t) ≡ t'` modulo `gT` for some
//! `α`, where `g = gcd(f)`. The torsion question splits over the primes
//! dividing `|T|`.

use std::collections::{HashSet, VecDeque};

use super::group::GroupElement;

/// Components of order at most this are decided by enumerating the orbit.
pub const ORBIT_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No(String),
    Undecided(String),
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}

/// Prime factorization by trial division; `None` if a cofactor too large
/// to certify as prime remains.
pub fn factorize(mut n: u128) -> Option<Vec<(u128, u32)>> {
    const TRIAL: u128 = 1_000_000;
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n && p <= TRIAL {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        if p * p <= n {
            return None;
        }
        out.push((n, 1));
    }
    Some(out)
}

fn valuation(mut n: u128, p: u128) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// The `p`-primary part `⊕ ℤ/p^{e_j}` of a torsion group (only `e_j ≥ 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PComponent {
    pub p: u128,
    pub exponents: Vec<u32>,
    /// Which invariant factor each summand comes from.
    index: Vec<usize>,
}

impl PComponent {
    pub fn new(p: u128, invariant_factors: &[i128]) -> Self {
        let mut exponents = Vec::new();
        let mut index = Vec::new();
        for (i, &d) in invariant_factors.iter().enumerate() {
            let e = valuation(d as u128, p);
            if e > 0 {
                exponents.push(e);
                index.push(i);
            }
        }
        PComponent {
            p,
            exponents,
            index,
        }
    }

    fn modulus(&self, j: usize) -> u128 {
        self.p.pow(self.exponents[j])
    }

    pub fn order(&self) -> u128 {
        (0..self.exponents.len()).fold(1u128, |acc, j| acc.saturating_mul(self.modulus(j)))
    }

    /// The `p`-primary coordinates of a torsion vector.
    pub fn project(&self, torsion: &[i128]) -> Vec<u128> {
        self.index
            .iter()
            .enumerate()
            .map(|(j, &i)| (torsion[i] as u128) % self.modulus(j))
            .collect()
    }

    /// The height of `x`: the largest `h` with `x ∈ p^h T_p`.
    pub fn height(&self, x: &[u128]) -> Option<u32> {
        x.iter()
            .filter(|&&c| c != 0)
            .map(|&c| valuation(c, self.p))
            .min()
    }

    /// The Ulm sequence `h(x), h(px), h(p²x), …` up to the first zero.
    pub fn ulm_sequence(&self, x: &[u128]) -> Vec<u32> {
        let mut x = x.to_vec();
        let mut out = Vec::new();
        while let Some(h) = self.height(&x) {
            out.push(h);
            for (j, c) in x.iter_mut().enumerate() {
                *c = (*c * self.p) % self.modulus(j);
            }
        }
        out
    }

    /// Reduction modulo `p^k T_p`.
    pub fn reduce(&self, x: &[u128], k: u32) -> Vec<u128> {
        x.iter()
            .enumerate()
            .map(|(j, &c)| c % self.p.pow(self.exponents[j].min(k)))
            .collect()
    }

    /// Generators of `(ℤ/p^e)^*` valid for every `e`.
    fn unit_generators(&self) -> Vec<u128> {
        if self.p == 2 {
            return vec![5];
        }
        let p = self.p;
        let phi = factorize(p - 1).expect("p - 1 factors below the trial bound");
        let g = (2..p)
            .find(|&g| phi.iter().all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1))
            .expect("a primitive root exists");
        vec![g, 1 + p]
    }

    /// Applies the elementary automorphisms to `x`, calling `visit` on each
    /// image: `−1` and unit scalings of one summand, transvections
    /// `x_i += p^{max(0, e_i − e_j)} x_j`, and swaps of equal summands.
    fn neighbours(&self, x: &[u128], units: &[u128], mut visit: impl FnMut(Vec<u128>)) {
        let n = x.len();
        for i in 0..n {
            let m = self.modulus(i);
            for &u in units.iter().chain([&(m - 1)]) {
                let mut y = x.to_vec();
                y[i] = mul_mod(y[i], u % m, m);
                visit(y);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let m = self.modulus(i);
                let c = self
                    .p
                    .pow(self.exponents[i].saturating_sub(self.exponents[j]));
                let mut y = x.to_vec();
                y[i] = (y[i] + mul_mod(c % m, x[j] % m, m)) % m;
                visit(y);
                if self.exponents[i] == self.exponents[j] && i < j {
                    let mut y = x.to_vec();
                    y.swap(i, j);
                    visit(y);
                }
            }
        }
    }

    /// The orbit of `x` under `Aut(T_p)`, by breadth-first search over the
    /// elementary automorphisms.
    pub fn orbit(&self, x: &[u128]) -> HashSet<Vec<u128>> {
        let units = self.unit_generators();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(x.to_vec());
        queue.push_back(x.to_vec());
        while let Some(cur) = queue.pop_front() {
            self.neighbours(&cur, &units, |y| {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            });
        }
        seen
    }
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    // operands stay below the orbit limit or are reduced by small moduli
    match a.checked_mul(b) {
        Some(x) => x % m,
        None => {
            let (mut a, mut b, mut r) = (a % m, b % m, 0u128);
            while b > 0 {
                if b & 1 == 1 {
                    r = (r + a) % m;
                }
                a = (a + a) % m;
                b >>= 1;
            }
            r
        }
    }
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Whether some automorphism of `ℤ/d₁ ⊕ … ⊕ ℤ/d_s ⊕ ℤ^r` maps `x` to `y`.
pub fn automorphic(invariant_factors: &[i128], x: &GroupElement, y: &GroupElement) -> Decision {
    let g = x.free.iter().fold(0, |acc, &c| gcd(acc, c));
    let g2 = y.free.iter().fold(0, |acc, &c| gcd(acc, c));
    if g != g2 {
        return Decision::No(format!(
            "free parts have different divisibility: gcd {g} vs {g2}"
        ));
    }
    let mut primes = std::collections::BTreeSet::new();
    for &d in invariant_factors {
        match factorize(d as u128) {
            Some(f) => primes.extend(f.into_iter().map(|(p, _)| p)),
            None => {
                return Decision::Undecided(format!("invariant factor {d} could not be factored"))
            }
        }
    }
    let mut undecided = None;
    for p in primes {
        let comp = PComponent::new(p, invariant_factors);
        let top = comp.exponents.iter().copied().max().unwrap_or(0);
        // equality is needed modulo p^k T_p only
        let k = if g == 0 {
            top
        } else {
            valuation(g as u128, p).min(top)
        };
        if k == 0 {
            continue;
        }
        let (a, b) = (comp.project(&x.torsion), comp.project(&y.torsion));
        if comp.order() <= ORBIT_LIMIT {
            let target = comp.reduce(&b, k);
            if !comp.orbit(&a).iter().any(|z| comp.reduce(z, k) == target) {
                return Decision::No(format!("{p}-components lie in different orbits"));
            }
        } else if k == top {
            if comp.ulm_sequence(&a) != comp.ulm_sequence(&b) {
                return Decision::No(format!("{p}-components have different Ulm sequences"));
            }
        } else {
            let (ra, rb) = (comp.reduce(&a, k), comp.reduce(&b, k));
            let quotient = PComponent {
                p,
                exponents: comp.exponents.iter().map(|&e| e.min(k)).collect(),
                index: comp.index.clone(),
            };
            // automorphisms of the quotient need not all lift
            if quotient.ulm_sequence(&ra) != quotient.ulm_sequence(&rb) {
                return Decision::No(format!(
                    "{p}-components differ modulo the free part's divisibility"
                ));
            }
            undecided = Some(format!(
                "{p}-component of order {} exceeds the orbit limit",
                comp.order()
            ));
        }
    }
    match undecided {
        Some(reason) => Decision::Undecided(reason),
        None => Decision::Yes,
    }
}
