use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Signed, Zero};

/// Integer matrix as a list of rows.
pub type IntMatrix = Vec<Vec<BigInt>>;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, `d₁ | d₂ | …`, `dᵢ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..n).map(|i| self.d[i][i].clone()).filter(|x| !x.is_zero()).collect()
    }
}

pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn int_identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| &a[i][t] * &b[t][j]).sum())
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn int_det(a: &IntMatrix) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn is_unimodular(a: &IntMatrix) -> bool {
    int_det(a).abs().is_one()
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row[dst] += f · row[src]
fn add_row(m: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    let src_row = m[src].clone();
    for (x, y) in m[dst].iter_mut().zip(src_row) {
        *x += f * y;
    }
}

fn add_col(m: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    for row in m.iter_mut() {
        let y = row[src].clone();
        row[dst] += f * y;
    }
}

/// Smith normal form by elementary integer row and column operations.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut d = m.clone();
    let mut u = int_identity(rows);
    let mut v = int_identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = d[i][t].div_floor(&d[t][t]);
                if !q.is_zero() {
                    add_row(&mut d, i, t, &-&q);
                    add_row(&mut u, i, t, &-&q);
                }
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = d[t][j].div_floor(&d[t][t]);
                if !q.is_zero() {
                    add_col(&mut d, j, t, &-&q);
                    add_col(&mut v, j, t, &-&q);
                }
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: pull an offending row into the pivot row and retry.
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[i][j].is_multiple_of(&d[t][t])));
            match bad {
                Some(i) => {
                    add_row(&mut d, t, i, &BigInt::one());
                    add_row(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    let out = SmithForm { u, d, v };
    debug_assert_eq!(int_mul(&int_mul(&out.u, m), &out.v), out.d);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(int_mul(&int_mul(&s.u, m), &s.v), s.d);
        assert!(is_unimodular(&s.u) && is_unimodular(&s.v));
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn two_by_two() {
        let s = check(&int_matrix(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.d, int_matrix(&[&[2, 0], &[0, 4]]));
    }

    #[test]
    fn identity_and_zero() {
        let id = int_identity(3);
        assert_eq!(check(&id).d, id);
        let z = int_matrix(&[&[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(check(&z).d, z);
    }

    #[test]
    fn divisibility_needs_mixing() {
        // diag(2, 3) has invariant factors 1, 6.
        let s = check(&int_matrix(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }
}
