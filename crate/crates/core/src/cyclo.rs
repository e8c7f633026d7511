//! Exact arithmetic in `Q(zeta_N)` and in Galois-stable subrings of its ring
//! of integers.
//!
//! An element is a rational coefficient vector over the power basis
//! `1, zeta, ..., zeta^{phi(N)-1}`, always reduced modulo the `N`-th
//! cyclotomic polynomial, so equality of vectors is equality of numbers.
//! Elements of different conductors are lifted to the lcm conductor before
//! being combined; results are never descended automatically.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::linalg::{self, QMat, ZMat};
use crate::poly::{self, euler_phi};
use crate::Result;

/// Cached per-conductor data: the reduction of every power `zeta^m`
/// (`0 <= m < N`) over the power basis.
struct ConductorData {
    phi: usize,
    /// `pow_rows[m]` = integer coordinates of `zeta^m` over the power basis.
    pow_rows: Vec<Vec<BigInt>>,
}

static CONDUCTOR_CACHE: OnceLock<Mutex<HashMap<u64, Arc<ConductorData>>>> = OnceLock::new();

fn conductor_data(n: u64) -> Arc<ConductorData> {
    let cache = CONDUCTOR_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().unwrap().get(&n) {
        return d.clone();
    }
    let phi = euler_phi(n) as usize;
    let cyclo = poly::cyclotomic_polynomial(n);
    let mut pow_rows: Vec<Vec<BigInt>> = Vec::with_capacity(n as usize);
    for m in 0..n as usize {
        if m < phi {
            let mut row = vec![BigInt::zero(); phi];
            row[m] = BigInt::one();
            pow_rows.push(row);
        } else {
            // zeta^m = zeta * zeta^{m-1}, reduced via
            // zeta^phi = -(c_0 + c_1 zeta + ... + c_{phi-1} zeta^{phi-1})
            let prev = &pow_rows[m - 1];
            let mut row = vec![BigInt::zero(); phi];
            let top = prev[phi - 1].clone();
            for k in (1..phi).rev() {
                row[k] = prev[k - 1].clone();
            }
            if !top.is_zero() {
                for k in 0..phi {
                    let v = &row[k] - &top * &cyclo[k];
                    row[k] = v;
                }
            }
            pow_rows.push(row);
        }
    }
    let data = Arc::new(ConductorData { phi, pow_rows });
    cache.lock().unwrap().insert(n, data.clone());
    data
}

/// An element of `Q(zeta_N)` in canonical form.
#[derive(Clone)]
pub struct CycNum {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({}; {})", self.conductor, self.to_display())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_display())
    }
}

impl CycNum {
    pub fn zero(conductor: u64) -> CycNum {
        let phi = euler_phi(conductor) as usize;
        CycNum {
            conductor,
            coeffs: vec![BigRational::zero(); phi],
        }
    }

    pub fn one(conductor: u64) -> CycNum {
        CycNum::from_rational_at(BigRational::one(), conductor)
    }

    pub fn from_rational_at(q: BigRational, conductor: u64) -> CycNum {
        let mut x = CycNum::zero(conductor);
        x.coeffs[0] = q;
        x
    }

    pub fn from_integer(v: i64) -> CycNum {
        CycNum::from_rational_at(BigRational::from(BigInt::from(v)), 1)
    }

    pub fn from_rational(q: BigRational) -> CycNum {
        CycNum::from_rational_at(q, 1)
    }

    /// `zeta_n`, at conductor `n`.
    pub fn zeta(n: u64) -> CycNum {
        CycNum::root_of_unity(n, 1)
    }

    /// `zeta_n^k`, at conductor `n`.
    pub fn root_of_unity(n: u64, k: i64) -> CycNum {
        let kk = k.rem_euclid(n as i64) as u64;
        let data = conductor_data(n);
        let row = &data.pow_rows[kk as usize];
        CycNum {
            conductor: n,
            coeffs: row.iter().map(|c| BigRational::from(c.clone())).collect(),
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Lift to a larger conductor (`self.conductor` must divide `m`, except
    /// that rational values may move to any conductor).
    pub fn lift_to(&self, m: u64) -> CycNum {
        if m == self.conductor {
            return self.clone();
        }
        if m % self.conductor != 0 {
            if let Some(q) = self.as_rational() {
                return CycNum::from_rational_at(q, m);
            }
            panic!("cannot lift conductor {} to {}", self.conductor, m);
        }
        let step = m / self.conductor;
        let data = conductor_data(m);
        let mut out = vec![BigRational::zero(); data.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &data.pow_rows[(k as u64 * step) as usize % m as usize];
            for (j, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    let v = &out[j] + c * BigRational::from(r.clone());
                    out[j] = v;
                }
            }
        }
        CycNum {
            conductor: m,
            coeffs: out,
        }
    }

    /// Lift a pair of elements to their joint conductor (rational values
    /// follow the other operand's conductor).
    pub fn unify(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        if a.as_rational().is_some() {
            return (a.lift_to(b.conductor), b.clone());
        }
        if b.as_rational().is_some() {
            return (a.clone(), b.lift_to(a.conductor));
        }
        let m = a.conductor.lcm(&b.conductor);
        (a.lift_to(m), b.lift_to(m))
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        let (mut a, b) = CycNum::unify(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        let (mut a, b) = CycNum::unify(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> CycNum {
        let mut a = self.clone();
        for x in a.coeffs.iter_mut() {
            *x = -std::mem::take(x);
        }
        a
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        let (a, b) = CycNum::unify(self, other);
        let n = a.conductor;
        let data = conductor_data(n);
        let phi = data.phi;
        // integer kernels: numerators over a common denominator
        let mut da = BigInt::one();
        for c in &a.coeffs {
            da = da.lcm(c.denom());
        }
        let mut db = BigInt::one();
        for c in &b.coeffs {
            db = db.lcm(c.denom());
        }
        let an: Vec<BigInt> = a
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from(da.clone())).to_integer())
            .collect();
        let bn: Vec<BigInt> = b
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from(db.clone())).to_integer())
            .collect();
        let mut conv = vec![BigInt::zero(); 2 * phi - 1];
        for (i, ai) in an.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in bn.iter().enumerate() {
                if !bj.is_zero() {
                    conv[i + j] += ai * bj;
                }
            }
        }
        let mut out = vec![BigInt::zero(); phi];
        for (m, c) in conv.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if m < phi {
                out[m] += c;
            } else {
                let row = &data.pow_rows[m % n as usize];
                // m < 2*phi - 1 <= 2(N-1), and m >= phi; reduce via zeta^N = 1
                // only when m < N fails
                if (m as u64) < n {
                    for (j, r) in row.iter().enumerate() {
                        if !r.is_zero() {
                            out[j] += c * r;
                        }
                    }
                } else {
                    let row = &data.pow_rows[(m as u64 % n) as usize];
                    for (j, r) in row.iter().enumerate() {
                        if !r.is_zero() {
                            out[j] += c * r;
                        }
                    }
                }
            }
        }
        let den = da * db;
        CycNum {
            conductor: n,
            coeffs: out
                .into_iter()
                .map(|c| BigRational::new(c, den.clone()))
                .collect(),
        }
    }

    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::Degenerate("division by zero".into()));
        }
        let n = self.conductor;
        let cyclo = poly::zpoly_to_q(&poly::cyclotomic_polynomial(n));
        let mut a: Vec<BigRational> = self.coeffs.clone();
        while a.last().map_or(false, |c| c.is_zero()) {
            a.pop();
        }
        let (g, u, _) = poly::qpoly_ext_gcd(&a, &cyclo);
        debug_assert_eq!(g, vec![BigRational::one()]);
        let mut coeffs = poly::qpoly_divrem(&u, &cyclo).1;
        coeffs.resize(euler_phi(n) as usize, BigRational::zero());
        Ok(CycNum {
            conductor: n,
            coeffs,
        })
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum> {
        let (a, b) = CycNum::unify(self, other);
        Ok(a.mul(&b.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<CycNum> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// The Galois image under `zeta -> zeta^a`; requires `gcd(a, N) = 1`.
    pub fn galois(&self, a: u64) -> CycNum {
        let n = self.conductor;
        let a = a % n.max(1);
        if n <= 2 {
            return self.clone();
        }
        assert_eq!(n.gcd(&a), 1, "galois exponent {a} not a unit mod {n}");
        let data = conductor_data(n);
        let mut out = vec![BigRational::zero(); data.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &data.pow_rows[(k as u64 * a % n) as usize];
            for (j, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    let v = &out[j] + c * BigRational::from(r.clone());
                    out[j] = v;
                }
            }
        }
        CycNum {
            conductor: n,
            coeffs: out,
        }
    }

    /// Complex conjugation, the ring automorphism induced by
    /// `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> CycNum {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.galois(self.conductor - 1)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// When the element is a root of unity, return `(order, exponent)` with
    /// the value equal to `zeta_order^exponent` and `gcd(exponent, order) = 1`
    /// (order 1 and 2 give exponents 0 and 1).
    pub fn as_root_of_unity(&self) -> Option<(u64, u64)> {
        if self.is_zero() {
            return None;
        }
        let n = self.conductor;
        let bound = if n % 2 == 0 { n } else { 2 * n };
        // quick check: torsion elements satisfy x^bound = 1
        let xb = self.pow(bound as i64).ok()?;
        if !xb.is_one() {
            return None;
        }
        let mut order = bound;
        for d in poly::divisors(bound) {
            if self.pow(d as i64).ok()?.is_one() {
                order = d;
                break;
            }
        }
        if order == 1 {
            return Some((1, 0));
        }
        // find the exponent
        let lifted = self.lift_to(n.lcm(&order));
        for j in 0..order {
            if order.gcd(&j) == 1 {
                let cand = CycNum::root_of_unity(order, j as i64).lift_to(n.lcm(&order));
                if cand == lifted {
                    return Some((order, j));
                }
            }
        }
        None
    }

    /// Deterministic byte key of the canonical form, for canonical ordering
    /// of aggregates. Only meaningful between elements of equal conductor.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&self.conductor.to_be_bytes());
        for c in &self.coeffs {
            let s = format!("{}/{};", c.numer(), c.denom());
            out.extend_from_slice(s.as_bytes());
        }
        out
    }

    fn to_display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = if k == 0 {
                format!("{c}")
            } else {
                let var = if k == 1 {
                    format!("z{}", self.conductor)
                } else {
                    format!("z{}^{}", self.conductor, k)
                };
                if c.is_one() {
                    var
                } else if *c == -BigRational::one() {
                    format!("-{var}")
                } else {
                    format!("{c}*{var}")
                }
            };
            parts.push(body);
        }
        let mut s = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i > 0 && !p.starts_with('-') {
                s.push('+');
            }
            s.push_str(p);
        }
        s
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = CycNum::unify(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl PartialOrd for CycNum {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycNum {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (a, b) = CycNum::unify(self, other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let nums: Vec<i64> = self
            .coeffs
            .iter()
            .map(|c| {
                (c * BigRational::from(den.clone()))
                    .to_integer()
                    .to_i64()
                    .ok_or_else(|| serde::ser::Error::custom("coefficient exceeds i64"))
            })
            .collect::<std::result::Result<_, S::Error>>()?;
        let den = den
            .to_u64()
            .ok_or_else(|| serde::ser::Error::custom("denominator exceeds u64"))?;
        let mut st = serializer.serialize_struct("CycNum", 3)?;
        st.serialize_field("conductor", &self.conductor)?;
        st.serialize_field("num", &nums)?;
        st.serialize_field("den", &den)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            conductor: u64,
            num: Vec<i64>,
            den: u64,
        }
        let raw = Raw::deserialize(deserializer)?;
        let phi = euler_phi(raw.conductor) as usize;
        if raw.num.len() != phi {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for conductor {}",
                phi, raw.conductor
            )));
        }
        if raw.den == 0 {
            return Err(D::Error::custom("denominator must be positive"));
        }
        Ok(CycNum {
            conductor: raw.conductor,
            coeffs: raw
                .num
                .iter()
                .map(|&n| BigRational::new(BigInt::from(n), BigInt::from(raw.den)))
                .collect(),
        })
    }
}

// ---------------------------------------------------------------------------
// Rings of integers of Galois-stable subfields
// ---------------------------------------------------------------------------

struct RingInner {
    conductor: u64,
    fixed_by: Vec<u64>,
    zbasis: ZMat,
    solver: OnceLock<CoordSolver>,
}

/// Cached elimination data for expressing field elements over the Z-basis.
struct CoordSolver {
    /// rref of `[zbasis^T | I_phi]`
    transform: QMat,
    pivots: Vec<usize>,
}

/// The ring of integers `Z_k` of the subfield of `Q(zeta_N)` fixed by a
/// subgroup of Galois exponents, presented as a sublattice of `Z[zeta_N]`.
#[derive(Clone)]
pub struct RingSpec(Arc<RingInner>);

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RingSpec(conductor {}, fixed by {:?}, rank {})",
            self.0.conductor,
            self.0.fixed_by,
            self.rank()
        )
    }
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        self.0.conductor == other.0.conductor && self.0.fixed_by == other.0.fixed_by
    }
}
impl Eq for RingSpec {}

impl std::hash::Hash for RingSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.conductor.hash(state);
        self.0.fixed_by.hash(state);
    }
}

/// Construct the ring of integers fixed by the exponents `fixing` inside
/// `Z[zeta_N]`. The exponent set must be a subgroup of `(Z/N)^x`.
pub fn make_ring(conductor: u64, fixing: &[u64]) -> Result<RingSpec> {
    assert!(conductor >= 1);
    let n = conductor;
    let mut h: Vec<u64> = fixing
        .iter()
        .map(|&a| if n == 1 { 1 } else { a % n })
        .collect();
    h.sort_unstable();
    h.dedup();
    if n == 1 {
        h = vec![1];
    }
    // subgroup check: contains 1, consists of units, closed under product
    let is_unit = |a: u64| n <= 1 || (a > 0 && a.gcd(&n) == 1);
    let fmt_set = || {
        h.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    if !h.contains(&1) || !h.iter().all(|&a| is_unit(a)) {
        return Err(Error::NotASubgroup(fmt_set(), n));
    }
    if n > 1 {
        for &a in &h {
            for &b in &h {
                if !h.contains(&(a * b % n)) {
                    return Err(Error::NotASubgroup(fmt_set(), n));
                }
            }
        }
    }
    let phi = euler_phi(n) as usize;
    let zbasis: ZMat = if h.len() == 1 {
        (0..phi)
            .map(|i| {
                (0..phi)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    } else {
        // fixed sublattice: common kernel of (G_a - 1) over Z
        let data = conductor_data(n);
        let mut stacked: ZMat = Vec::new();
        let nontrivial: Vec<u64> = h.iter().copied().filter(|&a| a != 1).collect();
        for i in 0..phi {
            let mut row: Vec<BigInt> = Vec::with_capacity(phi * nontrivial.len());
            for &a in &nontrivial {
                let img = &data.pow_rows[(i as u64 * a % n) as usize];
                for j in 0..phi {
                    let mut v = img[j].clone();
                    if i == j {
                        v -= BigInt::one();
                    }
                    row.push(v);
                }
            }
            stacked.push(row);
        }
        linalg::left_kernel_int(&stacked)
    };
    let zbasis = linalg::hnf(&zbasis);
    let expected_rank = phi / h.len();
    if zbasis.len() != expected_rank {
        return Err(Error::Degenerate(format!(
            "fixed lattice has rank {} (expected {})",
            zbasis.len(),
            expected_rank
        )));
    }
    Ok(RingSpec(Arc::new(RingInner {
        conductor: n,
        fixed_by: h,
        zbasis,
        solver: OnceLock::new(),
    })))
}

/// The full cyclotomic ring `Z[zeta_N]`.
pub fn full_ring(conductor: u64) -> RingSpec {
    make_ring(conductor, &[1]).expect("trivial subgroup")
}

/// The ring of integers of the maximal real subfield of `Q(zeta_N)`.
pub fn real_subfield_ring(conductor: u64) -> Result<RingSpec> {
    if conductor <= 2 {
        return Ok(full_ring(1));
    }
    make_ring(conductor, &[1, conductor - 1])
}

impl RingSpec {
    pub fn conductor(&self) -> u64 {
        self.0.conductor
    }

    pub fn fixed_by(&self) -> &[u64] {
        &self.0.fixed_by
    }

    pub fn zbasis(&self) -> &ZMat {
        &self.0.zbasis
    }

    /// Degree of the subfield over `Q`.
    pub fn rank(&self) -> usize {
        self.0.zbasis.len()
    }

    pub fn is_full(&self) -> bool {
        self.0.fixed_by == [1]
    }

    /// True when the subfield is fixed by complex conjugation.
    pub fn is_real(&self) -> bool {
        let n = self.0.conductor;
        n <= 2 || self.0.fixed_by.contains(&(n - 1))
    }

    /// Lift an element to the ring's conductor; error when impossible.
    pub fn embed(&self, x: &CycNum) -> Result<CycNum> {
        let n = self.0.conductor;
        if n % x.conductor() == 0 || x.as_rational().is_some() {
            Ok(x.lift_to(n))
        } else {
            Err(Error::NotInField)
        }
    }

    /// Membership in the subfield `k`: fixed by every exponent of `H`.
    pub fn contains(&self, x: &CycNum) -> bool {
        let Ok(x) = self.embed(x) else {
            return false;
        };
        self.0.fixed_by.iter().all(|&a| a == 1 || x.galois(a) == x)
    }

    fn solver(&self) -> &CoordSolver {
        self.0.solver.get_or_init(|| {
            let phi = euler_phi(self.0.conductor) as usize;
            let d = self.0.zbasis.len();
            // rref of [zbasis^T | I]
            let aug: QMat = (0..phi)
                .map(|j| {
                    let mut row: Vec<BigRational> = (0..d)
                        .map(|i| BigRational::from(self.0.zbasis[i][j].clone()))
                        .collect();
                    for k in 0..phi {
                        row.push(if k == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        });
                    }
                    row
                })
                .collect();
            let (rref, pivots) = linalg::qmat_rref(&aug);
            CoordSolver {
                transform: rref,
                pivots,
            }
        })
    }

    /// Coordinates of `x` over the Z-basis of the ring; `None` when `x` does
    /// not lie in the subfield.
    pub fn coords(&self, x: &CycNum) -> Option<Vec<BigRational>> {
        let x = self.embed(x).ok()?;
        let phi = euler_phi(self.0.conductor) as usize;
        let d = self.0.zbasis.len();
        let solver = self.solver();
        // z = rref-transform applied to target vector
        let mut out = vec![BigRational::zero(); d];
        for (r, &c) in solver.pivots.iter().enumerate() {
            if c >= d {
                // consistency row: transform row applied to x must vanish
                continue;
            }
            let mut v = BigRational::zero();
            for j in 0..phi {
                if !x.coeffs()[j].is_zero() {
                    v += &solver.transform[r][d + j] * &x.coeffs()[j];
                }
            }
            out[c] = v;
        }
        // verify: out * zbasis == x
        let mut recon = vec![BigRational::zero(); phi];
        for (i, ci) in out.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for j in 0..phi {
                if !self.0.zbasis[i][j].is_zero() {
                    let v = &recon[j] + ci * BigRational::from(self.0.zbasis[i][j].clone());
                    recon[j] = v;
                }
            }
        }
        if recon == x.coeffs() {
            Some(out)
        } else {
            None
        }
    }

    /// Integrality over the ring: integer coordinates over the Z-basis.
    pub fn is_integral(&self, x: &CycNum) -> bool {
        match self.coords(x) {
            Some(c) => c.iter().all(|v| v.is_integer()),
            None => false,
        }
    }

    /// Build the element with the given rational coordinates over the
    /// Z-basis.
    pub fn from_coords(&self, coords: &[BigRational]) -> CycNum {
        let phi = euler_phi(self.0.conductor) as usize;
        let mut out = vec![BigRational::zero(); phi];
        for (i, ci) in coords.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for j in 0..phi {
                if !self.0.zbasis[i][j].is_zero() {
                    let v = &out[j] + ci * BigRational::from(self.0.zbasis[i][j].clone());
                    out[j] = v;
                }
            }
        }
        CycNum {
            conductor: self.0.conductor,
            coeffs: out,
        }
    }

    pub fn from_int_coords(&self, coords: &[BigInt], den: &BigInt) -> CycNum {
        let q: Vec<BigRational> = coords
            .iter()
            .map(|c| BigRational::new(c.clone(), den.clone()))
            .collect();
        self.from_coords(&q)
    }

    /// The matrix of multiplication by `x` on `k`, in Z-basis coordinates
    /// (row `i` = coordinates of `b_i * x`).
    pub fn mult_matrix(&self, x: &CycNum) -> Option<QMat> {
        let x = self.embed(x).ok()?;
        let d = self.rank();
        let mut rows = Vec::with_capacity(d);
        for i in 0..d {
            let bi = self.basis_element(i);
            let prod = bi.mul(&x);
            rows.push(self.coords(&prod)?);
        }
        Some(rows)
    }

    pub fn basis_element(&self, i: usize) -> CycNum {
        let phi = euler_phi(self.0.conductor) as usize;
        CycNum {
            conductor: self.0.conductor,
            coeffs: (0..phi)
                .map(|j| BigRational::from(self.0.zbasis[i][j].clone()))
                .collect(),
        }
    }

    /// Representatives of the cosets of the fixing subgroup in `(Z/N)^x`:
    /// one Galois automorphism per embedding of `k` (up to nothing), i.e. a
    /// transversal for the conjugates of `k/Q`.
    pub fn galois_transversal(&self) -> Vec<u64> {
        let n = self.0.conductor;
        if n <= 2 {
            return vec![1];
        }
        let units: Vec<u64> = (1..n).filter(|a| a.gcd(&n) == 1).collect();
        let mut seen: Vec<u64> = Vec::new();
        let mut reps = Vec::new();
        for &a in &units {
            if seen.contains(&a) {
                continue;
            }
            reps.push(a);
            for &s in &self.0.fixed_by {
                seen.push(a * s % n);
            }
        }
        reps
    }

    /// Field norm `N_{k/Q}(x)`: the product of the images of `x` under a
    /// transversal of the Galois conjugates of `k` over `Q`.
    pub fn norm(&self, x: &CycNum) -> Result<BigRational> {
        let x = self.embed(x)?;
        if !self.contains(&x) {
            return Err(Error::NotInField);
        }
        if x.is_zero() {
            return Ok(BigRational::zero());
        }
        let mut acc = CycNum::one(self.0.conductor);
        for a in self.galois_transversal() {
            acc = acc.mul(&x.galois(a));
        }
        acc.as_rational()
            .ok_or_else(|| Error::Degenerate("norm is not rational".into()))
    }

    /// Unit test in `Z_k`: integral with norm `+-1`. Non-integral input is
    /// rejected.
    pub fn is_unit(&self, x: &CycNum) -> Result<bool> {
        if !self.is_integral(x) {
            return Err(Error::NotIntegral);
        }
        let n = self.norm(x)?;
        Ok(n.abs() == BigRational::one())
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("RingSpec", 2)?;
        st.serialize_field("conductor", &self.0.conductor)?;
        st.serialize_field("fixed_by", &self.0.fixed_by)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            conductor: u64,
            fixed_by: Vec<u64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        make_ring(raw.conductor, &raw.fixed_by).map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn basic_arithmetic_closes_at_fixed_conductor() {
        let z = CycNum::zeta(5);
        let x = z.add(&CycNum::one(5));
        let y = x.mul(&x);
        assert_eq!(y.conductor(), 5);
        // (1 + z)^2 = 1 + 2z + z^2
        let mut expect = CycNum::one(5);
        expect =
            expect.add(&CycNum::root_of_unity(5, 1).mul(&CycNum::from_rational_at(q(2, 1), 5)));
        expect = expect.add(&CycNum::root_of_unity(5, 2));
        assert_eq!(y, expect);
    }

    #[test]
    fn product_of_conjugates_of_one_minus_zeta3() {
        // (1 - z3)(1 - z3^2) = 3
        let a = CycNum::one(3).sub(&CycNum::zeta(3));
        let b = CycNum::one(3).sub(&CycNum::root_of_unity(3, 2));
        assert_eq!(a.mul(&b), CycNum::from_rational_at(q(3, 1), 3));
    }

    #[test]
    fn conjugation_is_an_involution_and_homomorphism() {
        let x = CycNum::zeta(12).add(&CycNum::from_rational_at(q(3, 7), 12));
        let y = CycNum::root_of_unity(12, 5).sub(&CycNum::one(12));
        assert_eq!(x.conj().conj(), x);
        assert_eq!(x.add(&y).conj(), x.conj().add(&y.conj()));
        assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
    }

    #[test]
    fn conj_examples() {
        // conj(z3) = z3^2 = -1 - z3
        let z3 = CycNum::zeta(3);
        assert_eq!(z3.conj(), CycNum::root_of_unity(3, 2));
        // (1+i)(1-i) = 2
        let i = CycNum::zeta(4);
        let a = CycNum::one(4).add(&i);
        assert_eq!(a.mul(&a.conj()), CycNum::from_rational_at(q(2, 1), 4));
        // conj(1 - z5) = 1 - z5^4
        let z5 = CycNum::zeta(5);
        assert_eq!(
            CycNum::one(5).sub(&z5).conj(),
            CycNum::one(5).sub(&CycNum::root_of_unity(5, 4))
        );
    }

    #[test]
    fn cross_conductor_lifting() {
        let z3 = CycNum::zeta(3);
        let z4 = CycNum::zeta(4);
        let prod = z3.mul(&z4);
        assert_eq!(prod.conductor(), 12);
        assert_eq!(prod, CycNum::root_of_unity(12, 7));
        // i at conductor 12 equals zeta_12^3
        assert_eq!(z4.lift_to(12), CycNum::root_of_unity(12, 3));
    }

    #[test]
    fn inversion_in_the_field() {
        let x = CycNum::one(7).sub(&CycNum::zeta(7));
        let inv = x.inv().unwrap();
        assert!(x.mul(&inv).is_one());
    }

    #[test]
    fn root_of_unity_detection() {
        assert_eq!(CycNum::zeta(8).as_root_of_unity(), Some((8, 1)));
        assert_eq!(CycNum::from_integer(-1).as_root_of_unity(), Some((2, 1)));
        assert_eq!(CycNum::one(5).as_root_of_unity(), Some((1, 0)));
        // -z3 has order 6
        let m = CycNum::zeta(3).neg();
        assert_eq!(m.as_root_of_unity(), Some((6, 5)));
        assert_eq!(CycNum::from_integer(2).as_root_of_unity(), None);
    }

    #[test]
    fn full_ring_has_power_basis() {
        let r = full_ring(12);
        assert_eq!(r.rank(), 4);
        assert!(r.is_integral(&CycNum::zeta(12)));
        assert!(!r.is_integral(&CycNum::from_rational_at(q(1, 2), 12)));
    }

    #[test]
    fn sqrt_minus7_ring() {
        // N = 7, H = {1,2,4}: rank 2 ring containing (1 + sqrt(-7))/2
        let r = make_ring(7, &[1, 2, 4]).unwrap();
        assert_eq!(r.rank(), 2);
        // sqrt(-7) = z7 + z7^2 - z7^3 + z7^4 - z7^5 - z7^6 (quadratic Gauss sum)
        let mut s = CycNum::zero(7);
        for a in 1..7u64 {
            let sq = [1, 2, 4].contains(&(a % 7));
            let term = CycNum::root_of_unity(7, a as i64);
            s = if sq { s.add(&term) } else { s.sub(&term) };
        }
        assert_eq!(s.mul(&s), CycNum::from_rational_at(q(-7, 1), 7));
        let half = CycNum::one(7)
            .add(&s)
            .mul(&CycNum::from_rational_at(q(1, 2), 7));
        assert!(r.contains(&half));
        assert!(r.is_integral(&half), "(1+sqrt(-7))/2 must be integral");
    }

    #[test]
    fn golden_ratio_ring() {
        // N = 5, H = {1,4}: real quadratic ring containing (1+sqrt 5)/2
        let r = make_ring(5, &[1, 4]).unwrap();
        assert_eq!(r.rank(), 2);
        assert!(r.is_real());
        // phi = -(z5^2 + z5^3)
        let phi = CycNum::root_of_unity(5, 2)
            .add(&CycNum::root_of_unity(5, 3))
            .neg();
        assert!(r.is_integral(&phi));
        // phi^2 = phi + 1
        assert_eq!(phi.mul(&phi), phi.add(&CycNum::one(5)));
        // norm(phi) = -1, so phi is a unit
        assert_eq!(r.norm(&phi).unwrap(), q(-1, 1));
        assert!(r.is_unit(&phi).unwrap());
    }

    #[test]
    fn subgroup_validation() {
        assert!(make_ring(12, &[1, 5]).is_ok());
        assert!(matches!(
            make_ring(12, &[1, 2]),
            Err(Error::NotASubgroup(..))
        ));
        assert!(matches!(
            make_ring(12, &[1, 5, 7]),
            Err(Error::NotASubgroup(..))
        ));
    }

    #[test]
    fn norm_examples() {
        let full3 = full_ring(3);
        let x = CycNum::one(3).sub(&CycNum::zeta(3));
        assert_eq!(full3.norm(&x).unwrap(), q(3, 1));
        assert_eq!(full3.norm(&CycNum::zero(3)).unwrap(), q(0, 1));

        // norm of 2 - z5 - z5^{-1} over the real subfield of Q(zeta_5) is 5
        let real5 = real_subfield_ring(5).unwrap();
        let x = CycNum::from_rational_at(q(2, 1), 5)
            .sub(&CycNum::zeta(5))
            .sub(&CycNum::root_of_unity(5, 4));
        assert_eq!(real5.norm(&x).unwrap(), q(5, 1));
    }

    #[test]
    fn norm_multiplicative() {
        let ring = full_ring(12);
        let x = CycNum::zeta(12).add(&CycNum::from_integer(2));
        let y = CycNum::root_of_unity(12, 7).sub(&CycNum::from_integer(3));
        let nx = ring.norm(&x).unwrap();
        let ny = ring.norm(&y).unwrap();
        assert_eq!(ring.norm(&x.mul(&y)).unwrap(), nx * ny);
    }

    #[test]
    fn norm_as_resultant_cross_check() {
        // the full-field norm equals res(Phi_N, f) for x = f(zeta)
        let x = CycNum::zeta(12)
            .mul(&CycNum::from_integer(2))
            .add(&CycNum::one(12));
        let ring = full_ring(12);
        let norm = ring.norm(&x).unwrap();
        let f: Vec<BigRational> = x.coeffs().to_vec();
        let phi = poly::zpoly_to_q(&poly::cyclotomic_polynomial(12));
        let res = poly::qpoly_resultant(&phi, &f);
        assert_eq!(norm, res);
    }

    #[test]
    fn unit_tests_from_norms() {
        // 1 + z5 is a unit (5 is not twice a prime power)
        let r5 = full_ring(5);
        assert!(r5.is_unit(&CycNum::one(5).add(&CycNum::zeta(5))).unwrap());
        // 1 + i is not a unit
        let r4 = full_ring(4);
        assert!(!r4.is_unit(&CycNum::one(4).add(&CycNum::zeta(4))).unwrap());
        assert!(r4.is_unit(&CycNum::one(4)).unwrap());
        // rejection of non-integral input
        assert!(matches!(
            r4.is_unit(&CycNum::from_rational_at(q(1, 2), 4)),
            Err(Error::NotIntegral)
        ));
    }

    #[test]
    fn real_subfield_contains_cosine() {
        let r = real_subfield_ring(7).unwrap();
        assert_eq!(r.rank(), 3);
        let c = CycNum::zeta(7).add(&CycNum::root_of_unity(7, 6));
        assert!(r.is_integral(&c));
        assert!(!r.contains(&CycNum::zeta(7)));
    }

    #[test]
    fn json_round_trip() {
        let x = CycNum::zeta(12)
            .mul(&CycNum::from_rational(q(-7, 3)))
            .add(&CycNum::one(12));
        let s = serde_json::to_string(&x).unwrap();
        let y: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        let r = make_ring(15, &[1, 4]).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"conductor\":15"));
        let r2: RingSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(r, r2);
    }
}
