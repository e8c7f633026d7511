//! Exact sign determination for real cyclotomic numbers.
//!
//! A real element of `Q(zeta_N)` equals `sum_j c_j cos(2 pi j / N)`. Signs
//! are decided with rational interval arithmetic: enclosures of `pi` (Machin
//! series) and of each cosine (Taylor with an explicit remainder bound) are
//! refined until the enclosing interval excludes zero. No floating point is
//! involved, and zero is tested exactly beforehand, so the loop terminates.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cyclo::CycNum;
use crate::error::Error;
use crate::Result;

#[derive(Debug, Clone)]
struct Iv {
    lo: BigRational,
    hi: BigRational,
}

impl Iv {
    fn point(q: BigRational) -> Iv {
        Iv {
            lo: q.clone(),
            hi: q,
        }
    }

    fn add(&self, other: &Iv) -> Iv {
        Iv {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    fn scale(&self, q: &BigRational) -> Iv {
        if q.is_negative() {
            Iv {
                lo: &self.hi * q,
                hi: &self.lo * q,
            }
        } else {
            Iv {
                lo: &self.lo * q,
                hi: &self.hi * q,
            }
        }
    }

    fn widen(&self, e: &BigRational) -> Iv {
        Iv {
            lo: &self.lo - e,
            hi: &self.hi + e,
        }
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Alternating series for `atan(1/x)`, bracketed by consecutive partial sums.
fn atan_inv(x: i64, eps: &BigRational) -> Iv {
    let x2 = BigRational::from(BigInt::from(x * x));
    let mut term = ratio(1, x);
    let mut sum = BigRational::zero();
    let mut k = 0u32;
    loop {
        // term = (-1)^k / ((2k+1) x^{2k+1})
        let contrib = &term / BigRational::from(BigInt::from(2 * k as i64 + 1));
        let prev = sum.clone();
        if k % 2 == 0 {
            sum += &contrib;
        } else {
            sum -= &contrib;
        }
        if contrib.abs() < *eps {
            let (lo, hi) = if sum < prev {
                (sum.clone(), prev)
            } else {
                (prev, sum.clone())
            };
            return Iv { lo, hi };
        }
        term = term / &x2;
        k += 1;
    }
}

/// Rational enclosure of `pi` via Machin's formula.
fn pi_interval(eps: &BigRational) -> Iv {
    let e = eps / BigRational::from(BigInt::from(64));
    let a = atan_inv(5, &e);
    let b = atan_inv(239, &e);
    let sixteen_a = a.scale(&BigRational::from(BigInt::from(16)));
    let four_b = b.scale(&BigRational::from(BigInt::from(-4)));
    sixteen_a.add(&four_b)
}

/// Enclosure of `cos(t)` for a rational point `t` with `|t| <= 7`, with
/// output error below `eps`.
fn cos_point(t: &BigRational, eps: &BigRational) -> Iv {
    // Taylor at 0: remainder after K terms bounded by |t|^{2K+2} / (2K+2)!
    let t2 = t * t;
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    let mut k = 1u32;
    loop {
        // term_k = t^{2k} / (2k)!
        term = &term * &t2 / BigRational::from(BigInt::from((2 * k as i64 - 1) * (2 * k as i64)));
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        // bound for the next term (|t| <= 7 so terms shrink once 2k >= 7)
        let next =
            &term * &t2 / BigRational::from(BigInt::from((2 * k as i64 + 1) * (2 * k as i64 + 2)));
        if 2 * k >= 8 && next.abs() < eps / BigRational::from(BigInt::from(2)) {
            let bound = next.abs() * BigRational::from(BigInt::from(2));
            return Iv::point(sum).widen(&bound);
        }
        k += 1;
    }
}

/// Enclosure of `cos(2 pi j / n)`, memoized per `(j, n, precision level)`
/// (the sign loop refines in fixed steps, so levels recur constantly).
fn cos_2pi(j: u64, n: u64, level: u32) -> Iv {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64, u32), Iv>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(iv) = cache.lock().unwrap().get(&(j, n, level)) {
        return iv.clone();
    }
    let eps = level_eps(level);
    let frac = BigRational::new(BigInt::from(2 * j), BigInt::from(n));
    let pi = pi_interval(&(&eps / BigRational::from(BigInt::from(16))));
    let theta = pi.scale(&frac);
    let mid = (&theta.lo + &theta.hi) / BigRational::from(BigInt::from(2));
    let halfwidth = (&theta.hi - &theta.lo) / BigRational::from(BigInt::from(2));
    // |cos a - cos b| <= |a - b|
    let iv = cos_point(&mid, &(&eps / BigRational::from(BigInt::from(4)))).widen(&halfwidth);
    cache.lock().unwrap().insert((j, n, level), iv.clone());
    iv
}

fn level_eps(level: u32) -> BigRational {
    let mut eps = ratio(1, 1 << 16);
    for _ in 0..level {
        eps = &eps * &ratio(1, 1 << 16);
    }
    eps
}

/// Exact sign of a real cyclotomic number under the canonical embedding
/// `zeta_N -> exp(2 pi i / N)`.
pub fn sign(x: &CycNum) -> Result<Ordering> {
    if !x.is_real() {
        return Err(Error::Degenerate(
            "sign requested for a non-real element".into(),
        ));
    }
    if x.is_zero() {
        return Ok(Ordering::Equal);
    }
    if let Some(q) = x.as_rational() {
        return Ok(q.cmp(&BigRational::zero()));
    }
    let n = x.conductor();
    for level in 0..64 {
        let mut acc = Iv::point(BigRational::zero());
        for (j, c) in x.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j == 0 {
                acc = acc.add(&Iv::point(c.clone()));
            } else {
                acc = acc.add(&cos_2pi(j as u64, n, level).scale(c));
            }
        }
        if acc.lo.is_positive() {
            return Ok(Ordering::Greater);
        }
        if acc.hi.is_negative() {
            return Ok(Ordering::Less);
        }
    }
    Err(Error::Degenerate(
        "sign determination did not converge (element may be extremely close to zero)".into(),
    ))
}

pub fn is_positive(x: &CycNum) -> Result<bool> {
    Ok(sign(x)? == Ordering::Greater)
}

/// Compare two real cyclotomic numbers exactly.
pub fn compare(a: &CycNum, b: &CycNum) -> Result<Ordering> {
    sign(&a.sub(b))
}

/// Signs of a totally real element under every real embedding: the Galois
/// images are grouped by complex conjugation, one representative per pair.
pub fn embedding_signs(x: &CycNum) -> Result<Vec<Ordering>> {
    let n = x.conductor();
    if n <= 2 {
        return Ok(vec![sign(x)?]);
    }
    let mut reps: Vec<u64> = Vec::new();
    let mut seen: Vec<u64> = Vec::new();
    for a in 1..n {
        if num_integer::Integer::gcd(&a, &n) == 1 && !seen.contains(&a) {
            reps.push(a);
            seen.push(a);
            seen.push(n - a);
        }
    }
    reps.iter().map(|&a| sign(&x.galois(a))).collect()
}

/// Positivity in every real embedding (totally positive).
pub fn totally_positive(x: &CycNum) -> Result<bool> {
    Ok(embedding_signs(x)?
        .into_iter()
        .all(|s| s == Ordering::Greater))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_signs() {
        assert_eq!(sign(&CycNum::from_integer(3)).unwrap(), Ordering::Greater);
        assert_eq!(sign(&CycNum::from_integer(-2)).unwrap(), Ordering::Less);
        assert_eq!(sign(&CycNum::zero(5)).unwrap(), Ordering::Equal);
    }

    #[test]
    fn cosine_signs() {
        // 2 cos(2 pi / 5) = z5 + z5^4 > 0
        let c5 = CycNum::zeta(5).add(&CycNum::root_of_unity(5, 4));
        assert_eq!(sign(&c5).unwrap(), Ordering::Greater);
        // 2 cos(4 pi / 5) < 0
        let c52 = CycNum::root_of_unity(5, 2).add(&CycNum::root_of_unity(5, 3));
        assert_eq!(sign(&c52).unwrap(), Ordering::Less);
        // golden ratio: phi = -(z5^2 + z5^3) > 0, and phi > 1
        let phi = c52.neg();
        assert_eq!(sign(&phi).unwrap(), Ordering::Greater);
        assert_eq!(compare(&phi, &CycNum::one(5)).unwrap(), Ordering::Greater);
        // sqrt(2) = z8 + z8^7 with sqrt(2) - 1 > 0 and sqrt(2) - 2 < 0
        let r2 = CycNum::zeta(8).add(&CycNum::root_of_unity(8, 7));
        assert_eq!(compare(&r2, &CycNum::one(8)).unwrap(), Ordering::Greater);
        assert_eq!(
            compare(&r2, &CycNum::from_integer(2).lift_to(8)).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn non_real_rejected() {
        assert!(sign(&CycNum::zeta(3)).is_err());
    }

    #[test]
    fn embeddings_of_golden_ratio() {
        // phi > 0 in the canonical embedding, phi' = (1-sqrt 5)/2 < 0: not
        // totally positive; phi^2 is totally positive
        let phi = CycNum::root_of_unity(5, 2)
            .add(&CycNum::root_of_unity(5, 3))
            .neg();
        assert!(!totally_positive(&phi).unwrap());
        assert!(totally_positive(&phi.mul(&phi)).unwrap());
        // 2 + z5 + z5^-1 = phi^2 restated: totally positive as well
        let x = CycNum::from_integer(2)
            .lift_to(5)
            .add(&CycNum::zeta(5))
            .add(&CycNum::root_of_unity(5, 4));
        assert!(totally_positive(&x).unwrap());
    }
}
