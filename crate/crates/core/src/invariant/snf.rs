//! Smith normal form over the integers with the unimodular transforms.

use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i128>>;

/// `P · M · Q = D` with `P`, `Q` unimodular and `D` diagonal, the nonzero
/// diagonal entries positive and each dividing the next, zeros last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub p: IntMatrix,
    pub q: IntMatrix,
    pub diagonal: Vec<i128>,
}

fn overflow() -> Error {
    Error::Internal("integer overflow in Smith normal form".into())
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// `row[i] -= k · row[j]`.
fn row_sub(m: &mut IntMatrix, i: usize, j: usize, k: i128) -> Result<()> {
    for c in 0..m[i].len() {
        let t = m[j][c].checked_mul(k).ok_or_else(overflow)?;
        m[i][c] = m[i][c].checked_sub(t).ok_or_else(overflow)?;
    }
    Ok(())
}

/// `col[i] -= k · col[j]`.
fn col_sub(m: &mut IntMatrix, i: usize, j: usize, k: i128) -> Result<()> {
    for row in m.iter_mut() {
        let t = row[j].checked_mul(k).ok_or_else(overflow)?;
        row[i] = row[i].checked_sub(t).ok_or_else(overflow)?;
    }
    Ok(())
}

fn col_swap(m: &mut IntMatrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// Computes the Smith normal form of a square integer matrix.
pub fn smith_normal_form(m: &[Vec<i128>]) -> Result<SmithForm> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::MalformedMatrix(
            "Smith normal form needs a square matrix".into(),
        ));
    }
    let mut d: IntMatrix = m.to_vec();
    let mut p = identity(n);
    let mut q = identity(n);

    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| d[i][j] != 0)
                .min_by_key(|&(i, j)| (d[i][j].unsigned_abs(), i, j));
            let Some((pi, pj)) = pivot else { break };
            d.swap(t, pi);
            p.swap(t, pi);
            col_swap(&mut d, t, pj);
            col_swap(&mut q, t, pj);

            let mut clean = true;
            for i in t + 1..n {
                let k = d[i][t].div_euclid(d[t][t]);
                if k != 0 {
                    row_sub(&mut d, i, t, k)?;
                    row_sub(&mut p, i, t, k)?;
                }
                clean &= d[i][t] == 0;
            }
            for j in t + 1..n {
                let k = d[t][j].div_euclid(d[t][t]);
                if k != 0 {
                    col_sub(&mut d, j, t, k)?;
                    col_sub(&mut q, j, t, k)?;
                }
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| d[i][j] % d[t][t] != 0));
            match bad {
                Some(i) => {
                    row_sub(&mut d, t, i, -1)?;
                    row_sub(&mut p, t, i, -1)?;
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            for c in 0..n {
                d[t][c] = -d[t][c];
                p[t][c] = -p[t][c];
            }
        }
    }
    let diagonal = (0..n).map(|i| d[i][i]).collect();
    let form = SmithForm { p, q, diagonal };
    form.check(m)?;
    Ok(form)
}

pub fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Result<IntMatrix> {
    let n = a.len();
    let k = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0i128; cols]; n];
    for i in 0..n {
        for j in 0..cols {
            let mut s = 0i128;
            for (l, bl) in b.iter().enumerate().take(k) {
                s = s
                    .checked_add(a[i][l].checked_mul(bl[j]).ok_or_else(overflow)?)
                    .ok_or_else(overflow)?;
            }
            out[i][j] = s;
        }
    }
    Ok(out)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i128>]) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a: IntMatrix = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = a[i][j].checked_mul(a[k][k]).ok_or_else(overflow)?;
                let y = a[i][k].checked_mul(a[k][j]).ok_or_else(overflow)?;
                a[i][j] = x.checked_sub(y).ok_or_else(overflow)? / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

impl SmithForm {
    /// Re-checks `P·M·Q = D`, unimodularity and the divisibility chain.
    pub fn check(&self, m: &[Vec<i128>]) -> Result<()> {
        let n = m.len();
        let pmq = mat_mul(&mat_mul(&self.p, m)?, &self.q)?;
        for (i, row) in pmq.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let want = if i == j { self.diagonal[i] } else { 0 };
                if x != want {
                    return Err(Error::Internal("P·M·Q is not the diagonal form".into()));
                }
            }
        }
        for t in [&self.p, &self.q] {
            if determinant(t)?.abs() != 1 {
                return Err(Error::Internal("transform is not unimodular".into()));
            }
        }
        for i in 0..n.saturating_sub(1) {
            let (a, b) = (self.diagonal[i], self.diagonal[i + 1]);
            let ok = if a == 0 { b == 0 } else { a > 0 && b % a == 0 };
            if !ok {
                return Err(Error::Internal(
                    "diagonal fails the divisibility chain".into(),
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i128]]) -> IntMatrix {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn known_forms() {
        // full 3-shift: J - I
        let f = smith_normal_form(&m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])).unwrap();
        assert_eq!(f.diagonal, vec![1, 1, 2]);
        let f = smith_normal_form(&m(&[&[0, 1], &[1, -1]])).unwrap();
        assert_eq!(f.diagonal, vec![1, 1]);
        let f = smith_normal_form(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).unwrap();
        assert_eq!(f.diagonal, vec![2, 6, 12]);
        let f = smith_normal_form(&m(&[&[0, 0], &[0, 0]])).unwrap();
        assert_eq!(f.diagonal, vec![0, 0]);
        let f = smith_normal_form(&m(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(f.diagonal, vec![1, 6]);
        let f = smith_normal_form(&m(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(f.diagonal, vec![1, 0]);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&m(&[&[0, 1], &[1, -1]])).unwrap(), -1);
        assert_eq!(
            determinant(&m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])).unwrap(),
            2
        );
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])).unwrap(), 0);
        assert_eq!(
            determinant(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).unwrap(),
            -144
        );
    }
}
