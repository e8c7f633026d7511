//! Dense polynomial arithmetic: integer and rational coefficients, cyclotomic
//! polynomials, and factorization over prime fields.
//!
//! Polynomials are coefficient vectors, lowest degree first, with no trailing
//! zeros (the zero polynomial is the empty vector).

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZPoly = Vec<BigInt>;
pub type QPoly = Vec<BigRational>;

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut pk = 1;
            while n % p == 0 {
                n /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += 1;
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            divs.push(d);
            if d != n / d {
                divs.push(n / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    divs
}

/// Prime factorization of a small integer by trial division.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime factorization of a positive `BigInt` by trial division.
///
/// Norms and lattice indices in this crate stay desk-sized, so trial division
/// is adequate.
pub fn factor_bigint(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(n.is_positive(), "factor_bigint needs a positive argument");
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut e = 0;
            while (&n % &p).is_zero() {
                n = &n / &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

fn trim_z(mut p: ZPoly) -> ZPoly {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

fn trim_q(mut p: QPoly) -> QPoly {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn zpoly_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim_z(out)
}

/// Exact division of integer polynomials (panics on a nonzero remainder).
pub fn zpoly_div_exact(num: &ZPoly, den: &ZPoly) -> ZPoly {
    let mut rem = num.clone();
    let mut quo = vec![BigInt::zero(); num.len().saturating_sub(den.len()) + 1];
    let dlead = den.last().expect("division by zero polynomial");
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let coeff = rem.last().unwrap() / dlead;
        assert!(
            (rem.last().unwrap() % dlead).is_zero(),
            "inexact polynomial division"
        );
        quo[shift] = coeff.clone();
        for (i, d) in den.iter().enumerate() {
            let v = &rem[shift + i] - d * &coeff;
            rem[shift + i] = v;
        }
        rem = trim_z(rem);
    }
    assert!(rem.is_empty(), "inexact polynomial division");
    trim_z(quo)
}

pub fn zpoly_eval(p: &ZPoly, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Substitute `X -> X^k`.
pub fn zpoly_inflate(p: &ZPoly, k: usize) -> ZPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); (p.len() - 1) * k + 1];
    for (i, c) in p.iter().enumerate() {
        out[i * k] = c.clone();
    }
    out
}

/// Substitute `X -> -X`.
pub fn zpoly_negate_var(p: &ZPoly) -> ZPoly {
    let mut out = p.clone();
    for (i, c) in out.iter_mut().enumerate() {
        if i % 2 == 1 {
            *c = -(c.clone());
        }
    }
    // normalize sign so the result is monic when the input is monic
    if out.last().map_or(false, |c| c.is_negative()) {
        for c in out.iter_mut() {
            *c = -(c.clone());
        }
    }
    trim_z(out)
}

static CYCLO_CACHE: OnceLock<Mutex<HashMap<u64, ZPoly>>> = OnceLock::new();

/// The `n`-th cyclotomic polynomial, monic of degree `phi(n)`.
///
/// Computed from `X^n - 1 = prod_{d | n} Phi_d` and memoized; the cache is a
/// pure memo and safe to share between threads.
pub fn cyclotomic_polynomial(n: u64) -> ZPoly {
    assert!(n >= 1);
    let cache = CYCLO_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let result = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // X^n - 1
        let mut xn1 = vec![BigInt::zero(); (n + 1) as usize];
        xn1[0] = BigInt::from(-1);
        xn1[n as usize] = BigInt::from(1);
        let mut num = xn1;
        for d in divisors(n) {
            if d < n {
                let pd = cyclotomic_polynomial(d);
                num = zpoly_div_exact(&num, &pd);
            }
        }
        num
    };
    cache.lock().unwrap().insert(n, result.clone());
    result
}

pub fn zpoly_to_q(p: &ZPoly) -> QPoly {
    p.iter().map(|c| BigRational::from(c.clone())).collect()
}

pub fn qpoly_add(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim_q(out)
}

pub fn qpoly_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim_q(out)
}

pub fn qpoly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let v = &out[i + j] + ai * bj;
            out[i + j] = v;
        }
    }
    trim_q(out)
}

pub fn qpoly_scale(a: &QPoly, s: &BigRational) -> QPoly {
    trim_q(a.iter().map(|c| c * s).collect())
}

/// Division with remainder in `Q[X]`; returns `(quotient, remainder)`.
pub fn qpoly_divrem(num: &QPoly, den: &QPoly) -> (QPoly, QPoly) {
    assert!(!den.is_empty(), "division by zero polynomial");
    let mut rem = num.clone();
    if num.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quo = vec![BigRational::zero(); num.len() - den.len() + 1];
    let dlead = den.last().unwrap().clone();
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let coeff = rem.last().unwrap() / &dlead;
        quo[shift] = coeff.clone();
        for (i, d) in den.iter().enumerate() {
            let v = &rem[shift + i] - d * &coeff;
            rem[shift + i] = v;
        }
        rem = trim_q(rem);
    }
    (trim_q(quo), rem)
}

/// Extended gcd in `Q[X]`: returns `(g, u, v)` with `u*a + v*b = g`, `g` monic
/// (or zero).
pub fn qpoly_ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
    let one = || vec![BigRational::one()];
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (one(), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), one());
    while !r1.is_empty() {
        let (q, r) = qpoly_divrem(&r0, &r1);
        let s = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
        let t = qpoly_sub(&t0, &qpoly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = lead.recip();
        r0 = qpoly_scale(&r0, &inv);
        s0 = qpoly_scale(&s0, &inv);
        t0 = qpoly_scale(&t0, &inv);
    }
    (r0, s0, t0)
}

/// Resultant of two rational polynomials via the Euclidean remainder sequence.
pub fn qpoly_resultant(a: &QPoly, b: &QPoly) -> BigRational {
    let a = &trim_q(a.clone());
    let b = &trim_q(b.clone());
    fn go(a: &QPoly, b: &QPoly) -> BigRational {
        if b.is_empty() {
            return if a.len() == 1 {
                // constant vs zero: res = a^0 = 1 only when deg a = 0
                BigRational::one()
            } else {
                BigRational::zero()
            };
        }
        if a.is_empty() {
            return BigRational::zero();
        }
        let (da, db) = (a.len() - 1, b.len() - 1);
        if db == 0 {
            // res(a, c) = c^{deg a}
            let mut acc = BigRational::one();
            for _ in 0..da {
                acc *= &b[0];
            }
            return acc;
        }
        let (_, r) = qpoly_divrem(a, b);
        let dr = r.len().checked_sub(1);
        let blead = b.last().unwrap().clone();
        let sign = if (da * db) % 2 == 1 {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        match dr {
            None => BigRational::zero(),
            Some(dr) => {
                let mut lead_pow = BigRational::one();
                for _ in 0..(da - dr) {
                    lead_pow *= &blead;
                }
                sign * lead_pow * go(b, &r)
            }
        }
    }
    go(a, b)
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[X] for small primes, used to split ideals above p.
// ---------------------------------------------------------------------------

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

pub type PPoly = Vec<u64>; // coefficients in [0, p)

fn ptrim(mut a: PPoly) -> PPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn ppoly_from_z(p: &ZPoly, q: u64) -> PPoly {
    let m = BigInt::from(q);
    ptrim(
        p.iter()
            .map(|c| {
                let r = ((c % &m) + &m) % &m;
                let digits = r.to_u64_digits().1;
                if digits.is_empty() {
                    0
                } else {
                    digits[0]
                }
            })
            .collect(),
    )
}

pub fn ppoly_mul(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + ai as u128 * bj as u128) % p as u128) as u64;
        }
    }
    ptrim(out)
}

pub fn ppoly_rem(a: &PPoly, m: &PPoly, p: u64) -> PPoly {
    let mut r = a.clone();
    let dlead_inv = mod_inv(*m.last().expect("zero modulus"), p);
    while r.len() >= m.len() && !r.is_empty() {
        let shift = r.len() - m.len();
        let c = (*r.last().unwrap() as u128 * dlead_inv as u128 % p as u128) as u64;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c as u128 * mi as u128) % p as u128;
            let cur = r[shift + i] as u128;
            r[shift + i] = ((cur + p as u128 * p as u128 - sub) % p as u128) as u64;
        }
        r = ptrim(r);
    }
    r
}

pub fn ppoly_gcd(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    while !r1.is_empty() {
        let r = ppoly_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
    }
    // monic normalization
    if let Some(&lead) = r0.last() {
        let inv = mod_inv(lead, p);
        for c in r0.iter_mut() {
            *c = (*c as u128 * inv as u128 % p as u128) as u64;
        }
    }
    r0
}

pub fn ppoly_powmod(base: &PPoly, mut e: u128, m: &PPoly, p: u64) -> PPoly {
    let mut acc = vec![1u64];
    let mut b = ppoly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = ppoly_rem(&ppoly_mul(&acc, &b, p), m, p);
        }
        b = ppoly_rem(&ppoly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn ppoly_deriv(a: &PPoly, p: u64) -> PPoly {
    if a.len() <= 1 {
        return Vec::new();
    }
    ptrim(
        (1..a.len())
            .map(|i| (a[i] as u128 * (i as u128 % p as u128) % p as u128) as u64)
            .collect(),
    )
}

fn ppoly_divexact(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    // quotient in F_p[X]; remainder assumed zero
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - b.len() + 1];
    let dlead_inv = mod_inv(*b.last().unwrap(), p);
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = (*r.last().unwrap() as u128 * dlead_inv as u128 % p as u128) as u64;
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (c as u128 * bi as u128) % p as u128;
            let cur = r[shift + i] as u128;
            r[shift + i] = ((cur + p as u128 * p as u128 - sub) % p as u128) as u64;
        }
        r = ptrim(r);
    }
    assert!(r.is_empty());
    ptrim(q)
}

/// Full factorization of a monic squarefree-or-not polynomial over `F_p`,
/// returning `(irreducible factor, multiplicity)` pairs sorted canonically.
///
/// Distinct-degree splitting followed by deterministic equal-degree
/// splitting; inputs here are tiny (degree `phi(n)` with `n <= 60`).
pub fn ppoly_factor(f: &PPoly, p: u64) -> Vec<(PPoly, u32)> {
    assert!(f.len() >= 2, "constant polynomial");
    // make monic
    let mut f = f.clone();
    let inv = mod_inv(*f.last().unwrap(), p);
    for c in f.iter_mut() {
        *c = (*c as u128 * inv as u128 % p as u128) as u64;
    }

    let mut result: Vec<(PPoly, u32)> = Vec::new();
    // squarefree decomposition by repeated gcd with the derivative
    let mut todo: Vec<(PPoly, u32)> = vec![(f, 1)];
    while let Some((g, mult)) = todo.pop() {
        if g.len() <= 1 {
            continue;
        }
        let d = ppoly_deriv(&g, p);
        if d.is_empty() {
            // g = h(X^p); over F_p this equals h(X)^p
            let mut h = Vec::with_capacity((g.len() - 1) / p as usize + 1);
            for i in (0..g.len()).step_by(p as usize) {
                h.push(g[i]);
            }
            todo.push((ptrim(h), mult * p as u32));
            continue;
        }
        let s = ppoly_gcd(&g, &d, p);
        if s.len() <= 1 {
            for (q, e) in factor_squarefree(&g, p) {
                result.push((q, e * mult));
            }
        } else {
            let rest = ppoly_divexact(&g, &s, p);
            todo.push((s, mult));
            // factors of `rest` are squarefree
            for (q, e) in factor_squarefree(&rest, p) {
                result.push((q, e * mult));
            }
        }
    }
    // merge duplicates and sort
    let mut merged: Vec<(PPoly, u32)> = Vec::new();
    result.sort();
    for (q, e) in result {
        if let Some(last) = merged.last_mut() {
            if last.0 == q {
                last.1 += e;
                continue;
            }
        }
        merged.push((q, e));
    }
    merged.sort();
    merged
}

fn factor_squarefree(f: &PPoly, p: u64) -> Vec<(PPoly, u32)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    // distinct degree
    let x = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0usize;
    while f.len() > 1 {
        d += 1;
        if 2 * d + 1 > f.len() {
            out.push((f.clone(), 1));
            break;
        }
        h = ppoly_powmod(&h, p as u128, &f, p);
        let mut hx = h.clone();
        // h - x
        if hx.len() < 2 {
            hx.resize(2, 0);
        }
        hx[1] = (hx[1] + p - 1) % p;
        let hx = ptrim(hx);
        let g = if hx.is_empty() {
            f.clone()
        } else {
            ppoly_gcd(&f, &hx, p)
        };
        if g.len() > 1 {
            for q in equal_degree_split(&g, d, p) {
                out.push((q, 1));
            }
            f = ppoly_divexact(&f, &g, p);
            h = ppoly_rem(&h, &f, p);
        }
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting with a deterministic sequence of
/// trial elements, so runs are reproducible.
fn equal_degree_split(f: &PPoly, d: usize, p: u64) -> Vec<PPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    let mut stack = vec![f.clone()];
    let mut done = Vec::new();
    let mut counter = 0u64;
    while let Some(g) = stack.pop() {
        if g.len() - 1 == d {
            done.push(g);
            continue;
        }
        loop {
            counter += 1;
            // deterministic trial polynomial of degree < deg g
            let mut t: PPoly = Vec::new();
            let mut seed = counter;
            for _ in 0..(g.len() - 1) {
                seed = seed
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                t.push((seed >> 33) % p);
            }
            let t = ptrim(t);
            if t.is_empty() {
                continue;
            }
            let split = if p == 2 {
                // trace polynomial t + t^2 + t^4 + ... + t^{2^{d-1}}
                let mut tr = Vec::new();
                let mut cur = ppoly_rem(&t, &g, p);
                for _ in 0..d {
                    tr = ptrim({
                        let mut s = tr.clone();
                        s.resize(s.len().max(cur.len()), 0);
                        for (i, &c) in cur.iter().enumerate() {
                            s[i] ^= c & 1;
                        }
                        s
                    });
                    cur = ppoly_rem(&ppoly_mul(&cur, &cur, p), &g, p);
                }
                tr
            } else {
                let e = (p as u128).pow(d as u32) / 2;
                let mut s = ppoly_powmod(&t, e, &g, p);
                // s - 1
                if s.is_empty() {
                    s = vec![p - 1];
                } else {
                    s[0] = (s[0] + p - 1) % p;
                    s = ptrim(s);
                }
                s
            };
            if split.is_empty() {
                continue;
            }
            let h = ppoly_gcd(&g, &split, p);
            if h.len() > 1 && h.len() < g.len() {
                stack.push(ppoly_divexact(&g, &h, p));
                stack.push(h);
                break;
            }
        }
    }
    done.sort();
    done
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(cyclotomic_polynomial(4), vec![z(1), z(0), z(1)]);
        assert_eq!(cyclotomic_polynomial(1), vec![z(-1), z(1)]);
        assert_eq!(cyclotomic_polynomial(2), vec![z(1), z(1)]);
        assert_eq!(
            cyclotomic_polynomial(12),
            vec![z(1), z(0), z(-1), z(0), z(1)]
        );
        for n in 1..=60u64 {
            assert_eq!(cyclotomic_polynomial(n).len() as u64 - 1, euler_phi(n));
        }
    }

    #[test]
    fn cyclotomic_at_one() {
        // composite order: 1, prime power p^m: p
        assert_eq!(zpoly_eval(&cyclotomic_polynomial(12), &z(1)), z(1));
        assert_eq!(zpoly_eval(&cyclotomic_polynomial(9), &z(1)), z(3));
        assert_eq!(zpoly_eval(&cyclotomic_polynomial(8), &z(1)), z(2));
        // product over nontrivial divisors of n equals n
        for n in 2..=60u64 {
            let mut prod = BigInt::one();
            for d in divisors(n) {
                if d > 1 {
                    prod *= zpoly_eval(&cyclotomic_polynomial(d), &z(1));
                }
            }
            assert_eq!(prod, z(n as i64), "n = {n}");
        }
    }

    #[test]
    fn cyclotomic_negate_variable() {
        for d in (3..=33u64).step_by(2) {
            if d > 1 {
                assert_eq!(
                    zpoly_negate_var(&cyclotomic_polynomial(d)),
                    cyclotomic_polynomial(2 * d),
                    "odd d = {d}"
                );
            }
        }
        for d in (4..=32u64).step_by(4) {
            assert_eq!(
                zpoly_negate_var(&cyclotomic_polynomial(d)),
                cyclotomic_polynomial(d),
                "4 | d = {d}"
            );
        }
    }

    #[test]
    fn cyclotomic_inflation_identity() {
        for n in 1..=30u64 {
            for p in [2u64, 3, 5] {
                let lhs = zpoly_inflate(&cyclotomic_polynomial(n), p as usize);
                let rhs = if n % p == 0 {
                    cyclotomic_polynomial(p * n)
                } else {
                    zpoly_mul(&cyclotomic_polynomial(n), &cyclotomic_polynomial(p * n))
                };
                assert_eq!(lhs, rhs, "n = {n}, p = {p}");
            }
        }
    }

    #[test]
    fn ext_gcd_inverts_mod_cyclotomic() {
        let phi12 = zpoly_to_q(&cyclotomic_polynomial(12));
        // invert 1 + zeta (i.e. 1 + X) mod Phi_12
        let a = vec![BigRational::one(), BigRational::one()];
        let (g, u, _) = qpoly_ext_gcd(&a, &phi12);
        assert_eq!(g, vec![BigRational::one()]);
        let prod = qpoly_divrem(&qpoly_mul(&a, &u), &phi12).1;
        assert_eq!(prod, vec![BigRational::one()]);
    }

    #[test]
    fn factor_mod_p_splits_cyclotomics() {
        // Phi_3 mod 13 = (X-3)(X-9)
        let f = ppoly_from_z(&cyclotomic_polynomial(3), 13);
        let factors = ppoly_factor(&f, 13);
        assert_eq!(factors.len(), 2);
        for (q, e) in &factors {
            assert_eq!(*e, 1);
            assert_eq!(q.len(), 2);
        }
        // roots must be 3 and 9
        let mut roots: Vec<u64> = factors.iter().map(|(q, _)| (13 - q[0]) % 13).collect();
        roots.sort_unstable();
        assert_eq!(roots, vec![3, 9]);

        // Phi_4 mod 3 stays irreducible (ord_3 mod 4 = 2)
        let f = ppoly_from_z(&cyclotomic_polynomial(4), 3);
        let factors = ppoly_factor(&f, 3);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0.len(), 3);

        // Phi_8 mod 2 = (X+1)^4
        let f = ppoly_from_z(&cyclotomic_polynomial(8), 2);
        let factors = ppoly_factor(&f, 2);
        assert_eq!(factors, vec![(vec![1, 1], 4)]);
    }

    #[test]
    fn factor_mod_p_consistent_degrees() {
        // all irreducible factors of Phi_n mod p (p coprime to n) share the
        // degree ord_p(n)
        for n in 2..=40u64 {
            for p in [2u64, 3, 5, 7, 11, 13] {
                if n % p == 0 {
                    continue;
                }
                let mut r = 1u64;
                let mut acc = p % n;
                while acc != 1 {
                    acc = acc * p % n;
                    r += 1;
                }
                let f = ppoly_from_z(&cyclotomic_polynomial(n), p);
                let factors = ppoly_factor(&f, p);
                let count = euler_phi(n) / r;
                assert_eq!(factors.len() as u64, count, "n={n} p={p}");
                for (q, e) in factors {
                    assert_eq!(e, 1);
                    assert_eq!(q.len() as u64 - 1, r, "n={n} p={p}");
                }
            }
        }
    }

    #[test]
    fn resultant_matches_product_of_differences() {
        // res(X^2 - 1, X^2 - 4) = (1-2)(1+2)(-1-2)(-1+2) = 9
        let a = zpoly_to_q(&vec![z(-1), z(0), z(1)]);
        let b = zpoly_to_q(&vec![z(-4), z(0), z(1)]);
        assert_eq!(qpoly_resultant(&a, &b), BigRational::from(z(9)));
    }
}
