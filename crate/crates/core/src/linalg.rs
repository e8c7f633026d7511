//! Exact linear algebra over the rationals and the integers: Gaussian
//! elimination, Hermite normal forms, lattices with denominators, and a small
//! LLL reduction used by the principal-generator search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QVec = Vec<BigRational>;
pub type QMat = Vec<Vec<BigRational>>;
pub type ZMat = Vec<Vec<BigInt>>;

pub fn qmat_identity(n: usize) -> QMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn qmat_mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![BigRational::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let v = &out[i][j] + &a[i][l] * &b[l][j];
                out[i][j] = v;
            }
        }
    }
    out
}

/// Reduced row echelon form; returns (rref, pivot columns).
pub fn qmat_rref(mat: &QMat) -> (QMat, Vec<usize>) {
    let mut m = mat.clone();
    let rows = m.len();
    if rows == 0 {
        return (m, Vec::new());
    }
    let cols = m[0].len();
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
        let inv = m[r][c].clone().recip();
        for j in c..cols {
            let v = &m[r][j] * &inv;
            m[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn qmat_rank(mat: &QMat) -> usize {
    qmat_rref(mat).1.len()
}

/// Solve `x * a = b` for a row vector `x`; `None` when inconsistent.
/// When the solution is not unique an arbitrary particular solution is
/// returned.
pub fn qmat_solve_left(a: &QMat, b: &QVec) -> Option<QVec> {
    // transpose to solve a^T x^T = b^T by column reduction
    let n = a.len(); // unknowns
    if n == 0 {
        return if b.iter().all(|v| v.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let cols = a[0].len();
    assert_eq!(cols, b.len());
    // augmented system over equations = columns of a
    let mut aug: QMat = (0..cols)
        .map(|j| {
            let mut row: QVec = (0..n).map(|i| a[i][j].clone()).collect();
            row.push(b[j].clone());
            row
        })
        .collect();
    let (rref, pivots) = qmat_rref(&aug);
    aug = rref;
    let mut x = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        if c == n {
            return None; // pivot in the augmented column: inconsistent
        }
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

/// Basis of the left kernel `{x : x * a = 0}` over Q.
pub fn qmat_left_kernel(a: &QMat) -> QMat {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    // kernel of the transpose acting on the right
    let t: QMat = (0..a[0].len())
        .map(|j| (0..n).map(|i| a[i][j].clone()).collect())
        .collect();
    let (rref, pivots) = qmat_rref(&t);
    let mut kernel = Vec::new();
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    for free in 0..n {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); n];
        v[free] = BigRational::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -rref[r][free].clone();
        }
        kernel.push(v);
    }
    kernel
}

pub fn qmat_det(mat: &QMat) -> BigRational {
    let n = mat.len();
    let mut m = mat.clone();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if pr != c {
            m.swap(c, pr);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].clone().recip();
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let v = &m[i][j] - &f * &m[c][j];
                m[i][j] = v;
            }
        }
    }
    det
}

pub fn qmat_inv(mat: &QMat) -> Option<QMat> {
    let n = mat.len();
    let mut aug: QMat = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
            }
            r
        })
        .collect();
    let (rref, pivots) = qmat_rref(&aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    aug = rref;
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

// ---------------------------------------------------------------------------
// Integer matrices: HNF and kernels
// ---------------------------------------------------------------------------

/// Row-style Hermite normal form. Returns the nonzero rows: every pivot is
/// positive, entries above a pivot are reduced into `[0, pivot)`, rows are
/// ordered by pivot column. The row span over Z is preserved.
pub fn hnf(rows: &ZMat) -> ZMat {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut m: ZMat = rows
        .iter()
        .filter(|r| !r.iter().all(|c| c.is_zero()))
        .cloned()
        .collect();
    let mut fixed = 0usize;
    for col in 0..cols {
        if fixed >= m.len() {
            break;
        }
        loop {
            // rows at or below `fixed` with a nonzero entry in `col`
            let mut idx: Vec<usize> = (fixed..m.len()).filter(|&i| !m[i][col].is_zero()).collect();
            if idx.is_empty() {
                break;
            }
            if idx.len() == 1 {
                let i = idx[0];
                m.swap(fixed, i);
                if m[fixed][col].is_negative() {
                    for v in m[fixed].iter_mut() {
                        *v = -std::mem::take(v);
                    }
                }
                // reduce entries above the pivot
                let pivot = m[fixed][col].clone();
                for i in 0..fixed {
                    if !m[i][col].is_zero() {
                        let q = m[i][col].div_floor(&pivot);
                        if !q.is_zero() {
                            for j in 0..cols {
                                let v = &m[i][j] - &q * &m[fixed][j];
                                m[i][j] = v;
                            }
                        }
                    }
                }
                fixed += 1;
                break;
            }
            // pick the row with the smallest nonzero |entry| as the reducer
            idx.sort_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()));
            let r0 = idx[0];
            for &i in &idx[1..] {
                let q = {
                    let (q, _) = m[i][col].div_rem(&m[r0][col]);
                    q
                };
                if !q.is_zero() {
                    for j in 0..cols {
                        let v = &m[i][j] - &q * &m[r0][j];
                        m[i][j] = v;
                    }
                }
            }
            m.retain(|r| !r.iter().all(|c| c.is_zero()));
        }
        m.retain(|r| !r.iter().all(|c| c.is_zero()));
    }
    m.retain(|r| !r.iter().all(|c| c.is_zero()));
    m
}

/// Left kernel over Z of an integer matrix: primitive basis of
/// `{x in Z^rows : x * a = 0}`.
pub fn left_kernel_int(a: &ZMat) -> ZMat {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    // HNF of [a | I]; kernel rows are those whose `a` part vanished
    let aug: ZMat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..rows {
                r.push(if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                });
            }
            r
        })
        .collect();
    let h = hnf(&aug);
    h.into_iter()
        .filter(|r| r[..cols].iter().all(|c| c.is_zero()))
        .map(|r| r[cols..].to_vec())
        .collect()
}

// ---------------------------------------------------------------------------
// Lattices: full-rank-in-their-span Z-modules of rational vectors
// ---------------------------------------------------------------------------

/// A finitely generated subgroup of `Q^n`, stored as `rows / den` with `rows`
/// in HNF. Equality of lattices is equality of the normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub rows: ZMat,
    pub den: BigInt,
    pub ambient: usize,
}

impl Lattice {
    pub fn from_rational_rows(rows: &QMat, ambient: usize) -> Lattice {
        let mut den = BigInt::one();
        for r in rows {
            for c in r {
                den = den.lcm(c.denom());
            }
        }
        let int_rows: ZMat = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| (c * BigRational::from(den.clone())).to_integer())
                    .collect()
            })
            .collect();
        Lattice::from_int_rows(&int_rows, &den, ambient)
    }

    pub fn from_int_rows(rows: &ZMat, den: &BigInt, ambient: usize) -> Lattice {
        let h = hnf(rows);
        let mut lat = Lattice {
            rows: h,
            den: den.clone(),
            ambient,
        };
        lat.normalize();
        lat
    }

    fn normalize(&mut self) {
        // divide out gcd(all entries, den)
        let mut g = self.den.clone();
        for r in &self.rows {
            for c in r {
                g = g.gcd(c);
            }
        }
        if g > BigInt::one() {
            for r in self.rows.iter_mut() {
                for c in r.iter_mut() {
                    *c = &*c / &g;
                }
            }
            self.den = &self.den / &g;
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis_rational(&self) -> QMat {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| BigRational::new(c.clone(), self.den.clone()))
                    .collect()
            })
            .collect()
    }

    /// Membership test for a rational vector.
    pub fn contains(&self, v: &QVec) -> bool {
        // solve c * rows = v * den over Z by forward substitution on the HNF
        let mut target: Vec<BigRational> = v
            .iter()
            .map(|x| x * BigRational::from(self.den.clone()))
            .collect();
        for row in &self.rows {
            let pcol = row.iter().position(|c| !c.is_zero()).unwrap();
            if target[pcol].is_zero() {
                continue;
            }
            let c = &target[pcol] / BigRational::from(row[pcol].clone());
            if !c.is_integer() {
                return false;
            }
            for j in 0..target.len() {
                let v = &target[j] - &c * BigRational::from(row[j].clone());
                target[j] = v;
            }
        }
        target.iter().all(|x| x.is_zero())
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis_rational().iter().all(|r| self.contains(r))
    }

    /// Sum of two lattices in the same ambient space.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis_rational();
        rows.extend(other.basis_rational());
        Lattice::from_rational_rows(&rows, self.ambient)
    }

    /// Intersection of two lattices in the same ambient space.
    pub fn intersect(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.ambient, other.ambient);
        // common denominator d; solve a*B1 = b*B2 over Z
        let d = self.den.lcm(&other.den);
        let f1 = &d / &self.den;
        let f2 = &d / &other.den;
        let b1: ZMat = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c * &f1).collect())
            .collect();
        let b2: ZMat = other
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c * &f2).collect())
            .collect();
        let mut stacked = b1.clone();
        for r in &b2 {
            stacked.push(r.iter().map(|c| -c).collect());
        }
        let kernel = left_kernel_int(&stacked);
        let rows: ZMat = kernel
            .iter()
            .map(|k| {
                let mut v = vec![BigInt::zero(); self.ambient];
                for (i, ki) in k.iter().take(b1.len()).enumerate() {
                    for j in 0..self.ambient {
                        v[j] += ki * &b1[i][j];
                    }
                }
                v
            })
            .collect();
        Lattice::from_int_rows(&rows, &d, self.ambient)
    }

    /// Index `[self : other]` for `other ⊆ self` of equal rank, as a positive
    /// rational (an integer when the inclusion holds).
    pub fn index_of(&self, other: &Lattice) -> BigRational {
        assert_eq!(self.rank(), other.rank());
        let det = |l: &Lattice| -> BigRational {
            // product of pivots / den^rank (HNF rows are echelon)
            let mut p = BigRational::one();
            for row in &l.rows {
                let pivot = row.iter().find(|c| !c.is_zero()).unwrap();
                p *= BigRational::from(pivot.clone());
            }
            let mut d = BigRational::one();
            for _ in 0..l.rank() {
                d *= BigRational::from(l.den.clone());
            }
            p / d
        };
        (det(other) / det(self)).abs()
    }
}

/// The lattice `{x in Q^n : x * M_k integral for all k}` where the `M_k` are
/// stacked side by side as one rational `n x m` matrix of full row rank `n`.
pub fn preimage_of_integral(m: &QMat) -> Lattice {
    let n = m.len();
    assert!(n > 0);
    // clear denominators: m = u / s
    let mut s = BigInt::one();
    for row in m {
        for c in row {
            s = s.lcm(c.denom());
        }
    }
    let u: ZMat = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| (c * BigRational::from(s.clone())).to_integer())
                .collect()
        })
        .collect();
    // column-HNF of u via row-HNF of the transpose
    let ut: ZMat = (0..u[0].len())
        .map(|j| (0..n).map(|i| u[i][j].clone()).collect())
        .collect();
    let h = hnf(&ut); // rows span the column space of u, h is r x n with r = rank
    assert_eq!(h.len(), n, "preimage_of_integral requires full row rank");
    // {x : x * h^T integral} = Z^n * (h^T)^{-1}
    let ht: QMat = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from(h[j][i].clone())).collect())
        .collect();
    let inv = qmat_inv(&ht).expect("full rank");
    // result = s * inv rows
    let rows: QMat = inv
        .iter()
        .map(|r| r.iter().map(|c| c * BigRational::from(s.clone())).collect())
        .collect();
    Lattice::from_rational_rows(&rows, n)
}

// ---------------------------------------------------------------------------
// LLL reduction (exact, rational Gram–Schmidt)
// ---------------------------------------------------------------------------

/// Plain LLL with delta = 3/4 on integer row vectors. Inputs in this crate
/// are small (rank at most ~24), so the textbook algorithm suffices.
pub fn lll(basis: &ZMat) -> ZMat {
    let mut b: ZMat = basis.to_vec();
    let n = b.len();
    if n <= 1 {
        return b;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));

    // rational Gram-Schmidt data recomputed on demand
    let gram = |b: &ZMat| -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let n = b.len();
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        let mut norms = vec![BigRational::zero(); n];
        let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut v: Vec<BigRational> =
                b[i].iter().map(|c| BigRational::from(c.clone())).collect();
            for j in 0..i {
                if norms[j].is_zero() {
                    continue;
                }
                let mut num = BigRational::zero();
                for (k, c) in b[i].iter().enumerate() {
                    num += BigRational::from(c.clone()) * &star[j][k];
                }
                mu[i][j] = num / &norms[j];
                for k in 0..v.len() {
                    let t = &v[k] - &mu[i][j] * &star[j][k];
                    v[k] = t;
                }
            }
            let mut nv = BigRational::zero();
            for c in &v {
                nv += c * c;
            }
            norms[i] = nv;
            star.push(v);
        }
        (mu, norms)
    };

    let mut k = 1usize;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        if guard > 10_000 {
            break; // inputs are tiny; bail out rather than loop forever
        }
        let (mu, norms) = gram(&b);
        // size reduction of b_k against b_{k-1..0}
        let mut bk = b[k].clone();
        let mut mu_k = mu[k].clone();
        for j in (0..k).rev() {
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            if mu_k[j].abs() > half {
                let q = (&mu_k[j] + &half).floor().to_integer();
                for t in 0..bk.len() {
                    let v = &bk[t] - &q * &b[j][t];
                    bk[t] = v;
                }
                for t in 0..j {
                    let v = &mu_k[t] - BigRational::from(q.clone()) * &mu[j][t];
                    mu_k[t] = v;
                }
                mu_k[j] -= BigRational::from(q);
            }
        }
        b[k] = bk;
        let (mu, norms2) = gram(&b);
        let _ = norms;
        let lhs = &norms2[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms2[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = k.max(2) - 1;
            if k == 0 {
                k = 1;
            }
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zm(rows: &[&[i64]]) -> ZMat {
        rows.iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect()
    }

    #[test]
    fn hnf_normalizes_generating_sets() {
        // rows generate the same lattice as [[1,0],[0,2]]
        let a = zm(&[&[1, 2], &[1, 0], &[3, 4]]);
        let h = hnf(&a);
        assert_eq!(h, zm(&[&[1, 0], &[0, 2]]));
        // order and signs of input rows do not matter
        let b = zm(&[&[-3, -4], &[1, 2], &[-1, 0]]);
        assert_eq!(hnf(&b), h);
    }

    #[test]
    fn hnf_index_two_sublattice() {
        let a = zm(&[&[1, 1], &[1, -1]]);
        let h = hnf(&a);
        assert_eq!(h, zm(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn kernel_finds_integer_relations() {
        let a = zm(&[&[2, 4], &[1, 2], &[0, 0]]);
        let k = left_kernel_int(&a);
        // rank of kernel = 2 (row1 - 2*row2, row3)
        assert_eq!(k.len(), 2);
        for v in &k {
            let mut s = vec![BigInt::zero(); 2];
            for (i, vi) in v.iter().enumerate() {
                for j in 0..2 {
                    s[j] += vi * &a[i][j];
                }
            }
            assert!(s.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn lattice_membership_and_index() {
        let l1 = Lattice::from_int_rows(&zm(&[&[1, 0], &[0, 1]]), &BigInt::one(), 2);
        let l2 = Lattice::from_int_rows(&zm(&[&[1, 1], &[1, -1]]), &BigInt::one(), 2);
        assert!(l1.contains_lattice(&l2));
        assert!(!l2.contains_lattice(&l1));
        assert_eq!(l1.index_of(&l2), BigRational::from(BigInt::from(2)));
        let inter = l1.intersect(&l2);
        assert_eq!(inter, l2);
        let sum = l1.sum(&l2);
        assert_eq!(sum, l1);
    }

    #[test]
    fn preimage_lattice_inverts_scaling() {
        // x * M integral with M = diag(2, 3): preimage = (1/2)Z x (1/3)Z
        let m = vec![
            vec![BigRational::from(BigInt::from(2)), BigRational::zero()],
            vec![BigRational::zero(), BigRational::from(BigInt::from(3))],
        ];
        let l = preimage_of_integral(&m);
        assert!(l.contains(&vec![
            BigRational::new(BigInt::one(), BigInt::from(2)),
            BigRational::zero()
        ]));
        assert!(!l.contains(&vec![
            BigRational::new(BigInt::one(), BigInt::from(4)),
            BigRational::zero()
        ]));
    }

    #[test]
    fn lll_reduces_skewed_basis() {
        let b = zm(&[&[1, 0], &[10_000, 1]]);
        let r = lll(&b);
        // the reduced basis must still generate Z^2 and consist of short rows
        let h = hnf(&r);
        assert_eq!(h, zm(&[&[1, 0], &[0, 1]]));
        for row in &r {
            let norm: BigInt = row.iter().map(|c| c * c).sum();
            assert!(norm <= BigInt::from(2));
        }
    }

    #[test]
    fn solve_left_consistency() {
        let a = vec![
            vec![
                BigRational::from(BigInt::from(1)),
                BigRational::from(BigInt::from(2)),
            ],
            vec![
                BigRational::from(BigInt::from(0)),
                BigRational::from(BigInt::from(1)),
            ],
        ];
        let b = vec![
            BigRational::from(BigInt::from(3)),
            BigRational::from(BigInt::from(7)),
        ];
        let x = qmat_solve_left(&a, &b).unwrap();
        assert_eq!(x[0], BigRational::from(BigInt::from(3)));
        assert_eq!(x[1], BigRational::from(BigInt::from(1)));
    }
}
