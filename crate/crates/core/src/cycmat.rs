//! Dense matrices and vectors over `Q(zeta_N)`, acting on column vectors.
//!
//! The Hermitian pairing between the standard basis of `V` and the dual basis
//! of `W` is `<v, w> = sum_i v_i * conj(w_i)`.

use crate::cyclo::CycNum;
use crate::error::Error;
use crate::Result;

pub type CycVec = Vec<CycNum>;
pub type CycMat = Vec<Vec<CycNum>>;

pub fn identity(n: usize, conductor: u64) -> CycMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        CycNum::one(conductor)
                    } else {
                        CycNum::zero(conductor)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn zeros(rows: usize, cols: usize, conductor: u64) -> CycMat {
    vec![vec![CycNum::zero(conductor); cols]; rows]
}

pub fn mat_mul(a: &CycMat, b: &CycMat) -> CycMat {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = zeros(n, m, a[0][0].conductor());
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] = out[i][j].add(&a[i][l].mul(&b[l][j]));
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &CycMat, v: &CycVec) -> CycVec {
    a.iter()
        .map(|row| {
            let mut acc = CycNum::zero(v[0].conductor());
            for (c, x) in row.iter().zip(v) {
                if !c.is_zero() && !x.is_zero() {
                    acc = acc.add(&c.mul(x));
                }
            }
            acc
        })
        .collect()
}

pub fn mat_sub(a: &CycMat, b: &CycMat) -> CycMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x.sub(y)).collect())
        .collect()
}

pub fn transpose(a: &CycMat) -> CycMat {
    let n = a.len();
    let m = a[0].len();
    (0..m)
        .map(|j| (0..n).map(|i| a[i][j].clone()).collect())
        .collect()
}

pub fn conj_mat(a: &CycMat) -> CycMat {
    a.iter()
        .map(|r| r.iter().map(|c| c.conj()).collect())
        .collect()
}

pub fn is_identity(a: &CycMat) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, c)| if i == j { c.is_one() } else { c.is_zero() })
    })
}

pub fn mat_eq(a: &CycMat, b: &CycMat) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| x == y))
}

/// Hermitian pairing of a vector in `V` with a vector in `W` (dual-basis
/// coordinates): linear on the left, semilinear on the right.
pub fn pairing(v: &CycVec, w: &CycVec) -> CycNum {
    let mut acc = CycNum::zero(v[0].conductor());
    for (x, y) in v.iter().zip(w) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc.add(&x.mul(&y.conj()));
        }
    }
    acc
}

/// Gaussian elimination data: returns `(rank, rref, pivot columns)`.
fn rref(a: &CycMat) -> (usize, CycMat, Vec<usize>) {
    let mut m = a.to_vec();
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for j in 0..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    m[i][j] = m[i][j].sub(&f.mul(&m[r][j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots.len(), m, pivots)
}

pub fn rank(a: &CycMat) -> usize {
    rref(a).0
}

pub fn det(a: &CycMat) -> CycNum {
    let n = a.len();
    let cond = a[0][0].conductor();
    let mut m = a.to_vec();
    let mut d = CycNum::one(cond);
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return CycNum::zero(cond);
        };
        if pr != c {
            m.swap(c, pr);
            d = d.neg();
        }
        d = d.mul(&m[c][c]);
        let inv = m[c][c].inv().expect("nonzero pivot");
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].mul(&inv);
            for j in c..n {
                m[i][j] = m[i][j].sub(&f.mul(&m[c][j]));
            }
        }
    }
    d
}

pub fn inverse(a: &CycMat) -> Result<CycMat> {
    let n = a.len();
    let cond = a[0][0].conductor();
    let mut aug: CycMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j {
                    CycNum::one(cond)
                } else {
                    CycNum::zero(cond)
                });
            }
            r
        })
        .collect();
    let (rk, reduced, pivots) = rref(&aug);
    if rk < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return Err(Error::Degenerate("singular matrix".into()));
    }
    aug = reduced;
    Ok(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Basis of the right kernel `{v : a v = 0}`.
pub fn kernel(a: &CycMat) -> Vec<CycVec> {
    let cols = a[0].len();
    let cond = a[0][0].conductor();
    let (_, reduced, pivots) = rref(a);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut out = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![CycNum::zero(cond); cols];
        v[free] = CycNum::one(cond);
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = reduced[r][free].neg();
        }
        out.push(v);
    }
    out
}

/// Solve `a x = b` for a column vector `x` (unique solution assumed to exist
/// when `Some`); `None` when inconsistent.
pub fn solve(a: &CycMat, b: &CycVec) -> Option<CycVec> {
    let cols = a[0].len();
    let mut aug: CycMat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (_, reduced, pivots) = rref(&aug);
    aug = reduced;
    let cond = a[0][0].conductor();
    let mut x = vec![CycNum::zero(cond); cols];
    for (r, &c) in pivots.iter().enumerate() {
        if c == cols {
            return None;
        }
        x[c] = aug[r][cols].clone();
    }
    // verify (the system may be underdetermined; any solution is fine)
    let recon = mat_vec(a, &x);
    if recon.iter().zip(b).all(|(u, v)| u == v) {
        Some(x)
    } else {
        None
    }
}

/// First-nonzero-normalized representative of the line spanned by `v`.
pub fn normalize_line(v: &CycVec) -> CycVec {
    let Some(first) = v.iter().find(|c| !c.is_zero()) else {
        return v.clone();
    };
    let inv = first.inv().expect("nonzero");
    v.iter().map(|c| c.mul(&inv)).collect()
}

/// Deterministic byte key of a matrix (entries must share a conductor).
pub fn canonical_key(a: &CycMat) -> Vec<u8> {
    let mut out = Vec::new();
    for row in a {
        for c in row {
            out.extend_from_slice(&c.canonical_key());
            out.push(b'|');
        }
        out.push(b';');
    }
    out
}

pub fn vec_key(v: &CycVec) -> Vec<u8> {
    let mut out = Vec::new();
    for c in v {
        out.extend_from_slice(&c.canonical_key());
        out.push(b'|');
    }
    out
}

/// Lift all entries to a common conductor.
pub fn embed_mat(a: &CycMat, conductor: u64) -> CycMat {
    a.iter()
        .map(|r| r.iter().map(|c| c.lift_to(conductor)).collect())
        .collect()
}

pub fn embed_vec(v: &CycVec, conductor: u64) -> CycVec {
    v.iter().map(|c| c.lift_to(conductor)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zi(v: i64, n: u64) -> CycNum {
        CycNum::from_integer(v).lift_to(n)
    }

    #[test]
    fn inverse_round_trip() {
        let z = CycNum::zeta(3);
        let m = vec![vec![zi(1, 3), z.clone()], vec![zi(0, 3), zi(1, 3).add(&z)]];
        let inv = inverse(&m).unwrap();
        assert!(is_identity(&mat_mul(&m, &inv)));
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![zi(1, 4), zi(1, 4)], vec![zi(2, 4), zi(2, 4)]];
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        let img = mat_vec(&m, &k[0]);
        assert!(img.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn pairing_is_sesquilinear() {
        let v = vec![CycNum::zeta(8), zi(2, 8)];
        let w = vec![zi(1, 8), CycNum::zeta(8)];
        let lam = CycNum::zeta(8);
        let scaled: Vec<CycNum> = w.iter().map(|c| c.mul(&lam)).collect();
        assert_eq!(pairing(&v, &scaled), pairing(&v, &w).mul(&lam.conj()));
    }
}
