//! Fractional ideals of the rings of [`crate::cyclo`], in canonical Hermite
//! normal form, together with the explicit factorizations of the ideals
//! generated by `1 - zeta` and of small rational primes.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclo::{full_ring, CycNum, RingSpec};
use crate::error::Error;
use crate::linalg::{self, Lattice, QMat};
use crate::poly;
use crate::Result;

/// Upper bound on the cached generating sets carried by ideals. Products use
/// the generators instead of full bases when available, which keeps the HNF
/// sizes small.
const MAX_GENS: usize = 6;

/// A nonzero fractional ideal of `Z_k`, stored as an integer lattice in
/// Z-basis coordinates with a denominator. The pair `(hnf, den)` is a normal
/// form: two ideals are equal iff their normal forms agree.
#[derive(Clone)]
pub struct FracIdeal {
    ring: RingSpec,
    lat: Lattice,
    gens: Vec<CycNum>,
}

impl fmt::Debug for FracIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(g) = self.known_generator() {
            write!(f, "Ideal({g})")
        } else {
            write!(f, "Ideal(norm {}, den {})", self.norm(), self.lat.den)
        }
    }
}

impl PartialEq for FracIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.lat == other.lat
    }
}
impl Eq for FracIdeal {}

impl std::hash::Hash for FracIdeal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ring.hash(state);
        self.lat.hash(state);
    }
}

impl FracIdeal {
    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn hnf_rows(&self) -> &linalg::ZMat {
        &self.lat.rows
    }

    pub fn den(&self) -> &BigInt {
        &self.lat.den
    }

    /// The unit ideal `Z_k`.
    pub fn unit(ring: &RingSpec) -> FracIdeal {
        let d = ring.rank();
        let rows: linalg::ZMat = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        FracIdeal {
            ring: ring.clone(),
            lat: Lattice::from_int_rows(&rows, &BigInt::one(), d),
            gens: vec![CycNum::one(ring.conductor())],
        }
    }

    /// Smallest `Z_k`-submodule of `k` containing the generators.
    pub fn from_generators(ring: &RingSpec, gens: &[CycNum]) -> Result<FracIdeal> {
        let nonzero: Vec<CycNum> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        if nonzero.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let d = ring.rank();
        let mut rows: QMat = Vec::with_capacity(d * nonzero.len());
        for g in &nonzero {
            if !ring.contains(g) {
                return Err(Error::NotInField);
            }
            for i in 0..d {
                let prod = ring.basis_element(i).mul(g);
                rows.push(ring.coords(&prod).ok_or(Error::NotInField)?);
            }
        }
        let lat = Lattice::from_rational_rows(&rows, d);
        if lat.rank() != d {
            return Err(Error::Degenerate("ideal lattice not of full rank".into()));
        }
        Ok(FracIdeal {
            ring: ring.clone(),
            lat,
            gens: nonzero,
        })
    }

    pub fn from_element(ring: &RingSpec, g: &CycNum) -> Result<FracIdeal> {
        FracIdeal::from_generators(ring, std::slice::from_ref(g))
    }

    pub fn from_integer(ring: &RingSpec, n: i64) -> Result<FracIdeal> {
        FracIdeal::from_element(ring, &CycNum::from_integer(n))
    }

    /// The `i`-th basis element of the underlying lattice, as a field element.
    pub fn basis_element(&self, i: usize) -> CycNum {
        self.ring.from_int_coords(&self.lat.rows[i], &self.lat.den)
    }

    pub fn basis_elements(&self) -> Vec<CycNum> {
        (0..self.lat.rank())
            .map(|i| self.basis_element(i))
            .collect()
    }

    fn working_gens(&self) -> Vec<CycNum> {
        if !self.gens.is_empty() && self.gens.len() <= MAX_GENS {
            self.gens.clone()
        } else {
            self.basis_elements()
        }
    }

    /// A generator, when the ideal carries a verified single cached one.
    pub fn known_generator(&self) -> Option<CycNum> {
        if self.gens.len() == 1 {
            Some(self.gens[0].clone())
        } else {
            None
        }
    }

    pub fn is_integral(&self) -> bool {
        self.lat.den.is_one()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.lat.den.is_one()
            && self.lat.rows.iter().enumerate().all(|(i, row)| {
                row.iter()
                    .enumerate()
                    .all(|(j, c)| if i == j { c.is_one() } else { c.is_zero() })
            })
    }

    pub fn contains_element(&self, x: &CycNum) -> bool {
        match self.ring.coords(x) {
            Some(c) => self.lat.contains(&c),
            None => false,
        }
    }

    pub fn contains_ideal(&self, other: &FracIdeal) -> bool {
        self.ring == other.ring && self.lat.contains_lattice(&other.lat)
    }

    /// Absolute norm: the generalized index `[Z_k : a]`, a positive rational,
    /// multiplicative, equal to `|Z_k / a|` for integral ideals.
    pub fn norm(&self) -> BigRational {
        let unit = FracIdeal::unit(&self.ring);
        unit.lat.index_of(&self.lat)
    }

    pub fn mul(&self, other: &FracIdeal) -> Result<FracIdeal> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        if self.is_unit_ideal() {
            return Ok(other.clone());
        }
        if other.is_unit_ideal() {
            return Ok(self.clone());
        }
        let ga = self.working_gens();
        let gb = other.working_gens();
        // products of one full basis against the smaller generating set
        let (basis_side, gen_side) = if ga.len() <= gb.len() {
            (other, &ga)
        } else {
            (self, &gb)
        };
        let d = self.ring.rank();
        let mut rows: QMat = Vec::new();
        for g in gen_side.iter() {
            for b in basis_side.basis_elements() {
                let prod = b.mul(g);
                rows.push(self.ring.coords(&prod).ok_or(Error::NotInField)?);
            }
        }
        let lat = Lattice::from_rational_rows(&rows, d);
        let gens = if !self.gens.is_empty()
            && !other.gens.is_empty()
            && self.gens.len() * other.gens.len() <= MAX_GENS
        {
            let mut v = Vec::new();
            for x in &self.gens {
                for y in &other.gens {
                    v.push(x.mul(y));
                }
            }
            v
        } else {
            Vec::new()
        };
        Ok(FracIdeal {
            ring: self.ring.clone(),
            lat,
            gens,
        })
    }

    pub fn mul_element(&self, x: &CycNum) -> Result<FracIdeal> {
        if x.is_one() {
            return Ok(self.clone());
        }
        self.mul(&FracIdeal::from_element(&self.ring, x)?)
    }

    /// Ideal inverse `{x in k : x * a ⊆ Z_k}`, computed by linear algebra on
    /// the multiplication matrices of a basis.
    pub fn inv(&self) -> FracIdeal {
        let d = self.ring.rank();
        let mut stacked: QMat = vec![Vec::with_capacity(d * d); d];
        for i in 0..self.lat.rank() {
            let g = self.basis_element(i);
            let m = self.ring.mult_matrix(&g).expect("basis element in field");
            for (j, row) in m.iter().enumerate() {
                stacked[j].extend(row.iter().cloned());
            }
        }
        let lat = linalg::preimage_of_integral(&stacked);
        FracIdeal {
            ring: self.ring.clone(),
            lat,
            gens: Vec::new(),
        }
    }

    pub fn pow(&self, e: i64) -> Result<FracIdeal> {
        let mut base = if e < 0 { self.inv() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = FracIdeal::unit(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Image under complex conjugation.
    pub fn conj(&self) -> FracIdeal {
        if self.is_unit_ideal() {
            return self.clone();
        }
        let gens: Vec<CycNum> = self.working_gens().iter().map(|g| g.conj()).collect();
        let mut out =
            FracIdeal::from_generators(&self.ring, &gens).expect("conjugate of nonzero ideal");
        if !self.gens.is_empty() && self.gens.len() <= MAX_GENS {
            out.gens = self.gens.iter().map(|g| g.conj()).collect();
        } else {
            out.gens = Vec::new();
        }
        out
    }

    /// `a^{-*} = (a^{-1})^*`, the scaling used on coroot sides.
    pub fn inv_conj(&self) -> FracIdeal {
        self.inv().conj()
    }

    /// Divisibility `a | b`, i.e. `b ⊆ a` with integral quotient.
    pub fn divides(&self, other: &FracIdeal) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        Ok(self.inv().mul(other)?.is_integral())
    }

    /// Ideal gcd: the sum of the two modules.
    pub fn gcd(&self, other: &FracIdeal) -> Result<FracIdeal> {
        if self.ring != other.ring {
            return Err(Error::MixedRings);
        }
        let lat = self.lat.sum(&other.lat);
        let mut gens = Vec::new();
        if !self.gens.is_empty()
            && !other.gens.is_empty()
            && self.gens.len() + other.gens.len() <= MAX_GENS
        {
            gens.extend(self.gens.iter().cloned());
            gens.extend(other.gens.iter().cloned());
        }
        Ok(FracIdeal {
            ring: self.ring.clone(),
            lat,
            gens,
        })
    }

    /// Valuation at a prime ideal.
    pub fn valuation(&self, prime: &FracIdeal) -> Result<i64> {
        if !self.is_integral() {
            // split into numerator and denominator parts
            let den = self.lat.den.clone();
            let den_elem = CycNum::from_rational(BigRational::from(den));
            let num = self.mul_element(&den_elem)?;
            let den_ideal = FracIdeal::from_element(&self.ring, &den_elem)?;
            return Ok(num.valuation(prime)? - den_ideal.valuation(prime)?);
        }
        let pinv = prime.inv();
        let mut v = 0i64;
        let mut cur = self.clone();
        loop {
            let next = cur.mul(&pinv)?;
            if next.is_integral() {
                v += 1;
                cur = next;
            } else {
                return Ok(v);
            }
        }
    }

    /// Deterministic sort key: (norm, denominator, HNF rows).
    pub fn sort_key(&self) -> (BigRational, BigInt, Vec<Vec<BigInt>>) {
        (self.norm(), self.lat.den.clone(), self.lat.rows.clone())
    }

    /// Search for a principal generator: short vectors of the (LLL-reduced)
    /// lattice are enumerated in a deterministic order and tested exactly.
    /// `budget` caps the number of candidates; absence of a witness proves
    /// nothing unless the ring is known to be principal.
    pub fn principality_witness(&self, budget: usize) -> Option<CycNum> {
        if let Some(g) = self.known_generator() {
            if let Ok(gen_ideal) = FracIdeal::from_element(&self.ring, &g) {
                if gen_ideal == *self {
                    return Some(g);
                }
            }
        }
        let d = self.ring.rank();
        let den = self.lat.den.clone();
        // target |norm| of a generator of the numerator lattice
        let target_norm = {
            let mut n = self.norm();
            for _ in 0..d {
                n *= BigRational::from(den.clone());
            }
            n.abs()
        };
        let reduced = linalg::lll(&self.lat.rows);
        let mut steps = 0usize;
        let mut radius = 1i64;
        loop {
            let mut c = vec![-radius; d];
            'shell: loop {
                // every odometer step counts against the budget so that
                // large-rank searches stay bounded
                steps += 1;
                if steps > budget {
                    return None;
                }
                // only points on the shell of max-norm == radius, with the
                // first nonzero coefficient positive (signs give unit factors)
                if c.iter().any(|&x| x.abs() == radius)
                    && c.iter().find(|&&x| x != 0).map_or(false, |&x| x > 0)
                {
                    let mut coords = vec![BigInt::zero(); d];
                    for (i, &ci) in c.iter().enumerate() {
                        if ci != 0 {
                            for j in 0..d {
                                coords[j] += BigInt::from(ci) * &reduced[i][j];
                            }
                        }
                    }
                    let elem = self.ring.from_int_coords(&coords, &BigInt::one());
                    if !elem.is_zero() {
                        if let Ok(n) = self.ring.norm(&elem) {
                            if n.abs() == target_norm {
                                let g = elem.mul(&CycNum::from_rational(BigRational::new(
                                    BigInt::one(),
                                    den.clone(),
                                )));
                                if let Ok(gi) = FracIdeal::from_element(&self.ring, &g) {
                                    if gi == *self {
                                        return Some(g);
                                    }
                                }
                            }
                        }
                    }
                }
                // advance the odometer
                let mut i = 0;
                loop {
                    if i == d {
                        break 'shell;
                    }
                    c[i] += 1;
                    if c[i] > radius {
                        c[i] = -radius;
                        i += 1;
                    } else {
                        break;
                    }
                }
            }
            radius += 1;
            if radius > 64 {
                return None;
            }
        }
    }
}

impl Serialize for FracIdeal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<i64>> = self
            .lat
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| {
                        c.to_i64()
                            .ok_or_else(|| serde::ser::Error::custom("entry exceeds i64"))
                    })
                    .collect::<std::result::Result<_, S::Error>>()
            })
            .collect::<std::result::Result<_, S::Error>>()?;
        let den = self
            .lat
            .den
            .to_u64()
            .ok_or_else(|| serde::ser::Error::custom("denominator exceeds u64"))?;
        let mut st = serializer.serialize_struct("FracIdeal", 3)?;
        st.serialize_field("ring", &self.ring)?;
        st.serialize_field("hnf", &rows)?;
        st.serialize_field("den", &den)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FracIdeal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            ring: RingSpec,
            hnf: Vec<Vec<i64>>,
            den: u64,
        }
        let raw = Raw::deserialize(deserializer)?;
        let rows: linalg::ZMat = raw
            .hnf
            .iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        let d = raw.ring.rank();
        let lat = Lattice::from_int_rows(&rows, &BigInt::from(raw.den), d);
        if lat.rank() != d {
            return Err(serde::de::Error::custom("ideal lattice not of full rank"));
        }
        Ok(FracIdeal {
            ring: raw.ring,
            lat,
            gens: Vec::new(),
        })
    }
}

// ---------------------------------------------------------------------------
// Factorizations
// ---------------------------------------------------------------------------

/// A factored ideal: `value = prod primes[i]^{exponents[i]}`.
#[derive(Debug, Clone)]
pub struct IdealFactorization {
    pub value: FracIdeal,
    pub primes: Vec<FracIdeal>,
    pub exponents: Vec<i64>,
    pub residue_degrees: Vec<u64>,
}

impl IdealFactorization {
    /// Recompute the product and compare with the stored value.
    pub fn verify(&self) -> Result<bool> {
        let mut acc = FracIdeal::unit(self.value.ring());
        for (p, &e) in self.primes.iter().zip(&self.exponents) {
            acc = acc.mul(&p.pow(e)?)?;
        }
        Ok(acc == self.value)
    }

    /// All divisors `prod primes^{f_i}` with `0 <= f_i <= e_i`, deduplicated
    /// and canonically ordered by (norm, denominator, HNF).
    pub fn divisors(&self) -> Result<Vec<FracIdeal>> {
        let ring = self.value.ring();
        let mut out = vec![FracIdeal::unit(ring)];
        for (p, &e) in self.primes.iter().zip(&self.exponents) {
            assert!(e >= 0, "divisor enumeration needs an integral ideal");
            let mut next = Vec::new();
            let mut pk = FracIdeal::unit(ring);
            for k in 0..=e {
                if k > 0 {
                    pk = pk.mul(p)?;
                }
                for q in &out {
                    next.push(q.mul(&pk)?);
                }
            }
            out = next;
        }
        out.sort_by_key(|i| i.sort_key());
        out.dedup();
        Ok(out)
    }
}

/// Factorization of the ideal generated by `1 - zeta` for `zeta` of order `m`
/// inside the full cyclotomic ring of conductor `n`.
///
/// For composite `m` the ideal is the unit ideal and the factorization is
/// empty. For `m = p^a` with `n = p^{a+h} n'` (`p` prime to `n'`) there are
/// `phi(n')/r` distinct primes of residue degree `r = ord_p mod n'`, each with
/// exponent `p^h`; each prime is generated by `1 - zeta_{p^{a+h}}` together
/// with an irreducible factor of `Phi_{n'} mod p` evaluated at `zeta_{n'}`.
pub fn factor_one_minus_zeta(ring: &RingSpec, m: u64) -> Result<IdealFactorization> {
    if !ring.is_full() {
        return Err(Error::UnsupportedGroup(
            "factor_one_minus_zeta needs the full cyclotomic ring".into(),
        ));
    }
    let n = ring.conductor();
    if m <= 1 || n % m != 0 {
        return Err(Error::NotADivisor(m, n));
    }
    let one_minus = CycNum::one(n).sub(&CycNum::root_of_unity(n, (n / m) as i64));
    let value = FracIdeal::from_element(ring, &one_minus)?;
    let mfact = poly::factor_u64(m);
    if mfact.len() > 1 {
        // composite order: 1 - zeta is a unit
        debug_assert!(value.is_unit_ideal());
        return Ok(IdealFactorization {
            value,
            primes: Vec::new(),
            exponents: Vec::new(),
            residue_degrees: Vec::new(),
        });
    }
    let (p, _) = mfact[0];
    // n = p^{a+h} * n'
    let mut nprime = n;
    let mut pah = 1u64;
    while nprime % p == 0 {
        nprime /= p;
        pah *= p;
    }
    let h_pow = pah / m; // p^h
    let uniformizer = CycNum::one(n).sub(&CycNum::root_of_unity(n, (n / pah) as i64));
    let mut primes = Vec::new();
    let mut degrees = Vec::new();
    if nprime == 1 {
        let prime = FracIdeal::from_element(ring, &uniformizer)?;
        debug_assert_eq!(prime.norm(), BigRational::from(BigInt::from(p)));
        primes.push(prime);
        degrees.push(1);
    } else {
        let r = {
            let mut r = 1u64;
            let mut acc = p % nprime;
            while acc != 1 {
                acc = acc * p % nprime;
                r += 1;
            }
            r
        };
        let phi_np = poly::ppoly_from_z(&poly::cyclotomic_polynomial(nprime), p);
        let factors = poly::ppoly_factor(&phi_np, p);
        let zeta_np = CycNum::root_of_unity(n, (n / nprime) as i64);
        for (g, e) in &factors {
            debug_assert_eq!(*e, 1);
            debug_assert_eq!(g.len() as u64 - 1, r);
            // evaluate the lifted factor at zeta_{n'}
            let mut val = CycNum::zero(n);
            let mut pow = CycNum::one(n);
            for (k, &c) in g.iter().enumerate() {
                if c != 0 {
                    val = val.add(&pow.mul(&CycNum::from_integer(c as i64)));
                }
                if k + 1 < g.len() {
                    pow = pow.mul(&zeta_np);
                }
            }
            let prime = FracIdeal::from_generators(ring, &[uniformizer.clone(), val])?;
            let norm = prime.norm();
            let expected = BigRational::from(BigInt::from(p).pow(r as u32));
            if norm != expected {
                return Err(Error::Verification(format!(
                    "prime above {p} has norm {norm}, expected {expected}"
                )));
            }
            primes.push(prime);
            degrees.push(r);
        }
        primes.sort_by_key(|i| i.sort_key());
        for w in primes.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Verification("repeated prime factor".into()));
            }
        }
    }
    let exponents = vec![h_pow as i64; primes.len()];
    Ok(IdealFactorization {
        value,
        primes,
        exponents,
        residue_degrees: degrees,
    })
}

/// Splitting of a rational prime in the full cyclotomic ring `Z[zeta_N]`,
/// read off the factorization of `Phi_N` modulo `p`.
pub fn factor_rational_prime(ring: &RingSpec, p: u64) -> Result<IdealFactorization> {
    if !ring.is_full() {
        return Err(Error::UnsupportedGroup(
            "factor_rational_prime needs the full cyclotomic ring".into(),
        ));
    }
    let n = ring.conductor();
    let value = FracIdeal::from_integer(ring, p as i64)?;
    if poly::euler_phi(n) == 1 {
        // Z_k = Z
        let prime = value.clone();
        return Ok(IdealFactorization {
            value,
            primes: vec![prime],
            exponents: vec![1],
            residue_degrees: vec![1],
        });
    }
    let phi_mod = poly::ppoly_from_z(&poly::cyclotomic_polynomial(n), p);
    let factors = poly::ppoly_factor(&phi_mod, p);
    let mut primes = Vec::new();
    let mut exps = Vec::new();
    let mut degs = Vec::new();
    for (g, e) in &factors {
        let mut val = CycNum::zero(n);
        let mut pow = CycNum::one(n);
        for (k, &c) in g.iter().enumerate() {
            if c != 0 {
                val = val.add(&pow.mul(&CycNum::from_integer(c as i64)));
            }
            if k + 1 < g.len() {
                pow = pow.mul(&CycNum::zeta(n));
            }
        }
        let prime = FracIdeal::from_generators(ring, &[CycNum::from_integer(p as i64), val])?;
        let norm = prime.norm();
        let expected = BigRational::from(BigInt::from(p).pow(g.len() as u32 - 1));
        if norm != expected {
            return Err(Error::Verification(format!(
                "prime above {p} has norm {norm}, expected {expected}"
            )));
        }
        primes.push(prime);
        exps.push(*e as i64);
        degs.push(g.len() as u64 - 1);
    }
    Ok(IdealFactorization {
        value,
        primes,
        exponents: exps,
        residue_degrees: degs,
    })
}

/// Primes of an arbitrary ring in scope above a rational prime, obtained by
/// contracting the primes of the ambient full cyclotomic ring. Returns
/// `(prime, residue degree, ramification exponent)` triples, canonically
/// ordered.
pub fn primes_above(ring: &RingSpec, p: u64) -> Result<Vec<(FracIdeal, u64, i64)>> {
    let n = ring.conductor();
    if ring.is_full() {
        let f = factor_rational_prime(ring, p)?;
        let mut out: Vec<(FracIdeal, u64, i64)> = f
            .primes
            .into_iter()
            .zip(f.residue_degrees)
            .zip(f.exponents)
            .map(|((q, d), e)| (q, d, e))
            .collect();
        out.sort_by_key(|(q, _, _)| q.sort_key());
        return Ok(out);
    }
    let ambient = full_ring(n);
    let above = factor_rational_prime(&ambient, p)?;
    let phi = poly::euler_phi(n) as usize;
    // the ring as a lattice in power-basis coordinates
    let ring_lat = Lattice::from_int_rows(ring.zbasis(), &BigInt::one(), phi);
    let mut seen: Vec<FracIdeal> = Vec::new();
    for prime in &above.primes {
        // contraction: intersect with Z_k inside Z[zeta_N]
        let plat = Lattice::from_int_rows(prime.hnf_rows(), &BigInt::one(), phi);
        let inter = plat.intersect(&ring_lat);
        // re-express the intersection basis in ring coordinates
        let mut rows: QMat = Vec::new();
        for r in inter.basis_rational() {
            let mut elem = CycNum::zero(n);
            for (j, c) in r.iter().enumerate() {
                if !c.is_zero() {
                    elem = elem.add(
                        &CycNum::root_of_unity(n, j as i64).mul(&CycNum::from_rational(c.clone())),
                    );
                }
            }
            rows.push(ring.coords(&elem).ok_or(Error::NotInField)?);
        }
        let lat = Lattice::from_rational_rows(&rows, ring.rank());
        let contracted = FracIdeal {
            ring: ring.clone(),
            lat,
            gens: Vec::new(),
        };
        if !seen.contains(&contracted) {
            seen.push(contracted);
        }
    }
    let p_ideal = FracIdeal::from_integer(ring, p as i64)?;
    let mut out = Vec::new();
    for q in seen {
        let f = {
            let norm = q.norm();
            let mut f = 0u64;
            let mut acc = BigRational::one();
            let pr = BigRational::from(BigInt::from(p));
            while acc < norm {
                acc *= &pr;
                f += 1;
            }
            if acc != norm {
                return Err(Error::Verification(format!(
                    "contracted prime has norm {norm}, not a power of {p}"
                )));
            }
            f
        };
        let e = p_ideal.valuation(&q)?;
        out.push((q, f, e));
    }
    out.sort_by_key(|(q, _, _)| q.sort_key());
    // verify the reconstruction
    let mut acc = FracIdeal::unit(ring);
    for (q, _, e) in &out {
        acc = acc.mul(&q.pow(*e)?)?;
    }
    if acc != p_ideal {
        return Err(Error::Verification(format!(
            "primes above {p} do not multiply back to ({p})"
        )));
    }
    Ok(out)
}

/// Factor an arbitrary nonzero fractional ideal over any ring in scope.
pub fn factor_ideal(a: &FracIdeal) -> Result<IdealFactorization> {
    let ring = a.ring().clone();
    // reduce to the integral case
    if !a.is_integral() {
        let den = a.den().clone();
        let den_elem = CycNum::from_rational(BigRational::from(den));
        let num = a.mul_element(&den_elem)?;
        let den_ideal = FracIdeal::from_element(&ring, &den_elem)?;
        let fn_num = factor_ideal(&num)?;
        let fn_den = factor_ideal(&den_ideal)?;
        let mut primes = fn_num.primes;
        let mut exps = fn_num.exponents;
        let mut degs = fn_num.residue_degrees;
        for (q, (e, f)) in fn_den
            .primes
            .into_iter()
            .zip(fn_den.exponents.into_iter().zip(fn_den.residue_degrees))
        {
            if let Some(i) = primes.iter().position(|x| *x == q) {
                exps[i] -= e;
            } else {
                primes.push(q);
                exps.push(-e);
                degs.push(f);
            }
        }
        let keep: Vec<usize> = (0..primes.len()).filter(|&i| exps[i] != 0).collect();
        return Ok(IdealFactorization {
            value: a.clone(),
            primes: keep.iter().map(|&i| primes[i].clone()).collect(),
            exponents: keep.iter().map(|&i| exps[i]).collect(),
            residue_degrees: keep.iter().map(|&i| degs[i]).collect(),
        });
    }
    let norm = a.norm().to_integer();
    let mut primes = Vec::new();
    let mut exps = Vec::new();
    let mut degs = Vec::new();
    for (p, _) in poly::factor_bigint(&norm) {
        let p64 = p.to_u64().ok_or_else(|| {
            Error::Degenerate("ideal norm has a prime factor exceeding u64".into())
        })?;
        for (q, f, _) in primes_above(&ring, p64)? {
            let v = a.valuation(&q)?;
            if v > 0 {
                primes.push(q);
                exps.push(v);
                degs.push(f);
            }
        }
    }
    let fact = IdealFactorization {
        value: a.clone(),
        primes,
        exponents: exps,
        residue_degrees: degs,
    };
    if !fact.verify()? {
        return Err(Error::Verification(
            "prime factorization does not reconstruct the ideal".into(),
        ));
    }
    Ok(fact)
}

/// The splitting behaviour of the rational prime 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoPattern {
    /// `(2)` stays prime.
    Inert,
    /// `(2) = p^2`.
    Ramified(FracIdeal),
    /// `(2) = p p*` with `p != p*`.
    Split(FracIdeal, FracIdeal),
}

/// Factor the ideal `(2)` and classify its splitting pattern.
pub fn factor_two(ring: &RingSpec) -> Result<TwoPattern> {
    let fact = factor_ideal(&FracIdeal::from_integer(ring, 2)?)?;
    match (fact.primes.len(), fact.exponents.as_slice()) {
        (1, [1]) => Ok(TwoPattern::Inert),
        (1, [2]) => Ok(TwoPattern::Ramified(fact.primes[0].clone())),
        (2, [1, 1]) => {
            let p = fact.primes[0].clone();
            let q = fact.primes[1].clone();
            if p.conj() == q && p != q {
                Ok(TwoPattern::Split(p, q))
            } else {
                Err(Error::UnknownPattern(format!(
                    "two primes above 2 that are not conjugate (ring {:?})",
                    ring
                )))
            }
        }
        _ => Err(Error::UnknownPattern(format!(
            "(2) = product of {} primes with exponents {:?}",
            fact.primes.len(),
            fact.exponents
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{make_ring, real_subfield_ring};

    fn ideal_i(ring: &RingSpec, elems: &[CycNum]) -> FracIdeal {
        FracIdeal::from_generators(ring, elems).unwrap()
    }

    #[test]
    fn principal_ideal_examples() {
        let zi = full_ring(4);
        let one_plus_i = CycNum::one(4).add(&CycNum::zeta(4));
        let one_minus_i = CycNum::one(4).sub(&CycNum::zeta(4));
        // 1+i and 1-i generate the same ideal of norm 2
        let a = ideal_i(&zi, &[one_plus_i.clone(), one_minus_i.clone()]);
        let b = ideal_i(&zi, &[one_plus_i.clone()]);
        assert_eq!(a, b);
        assert_eq!(a.norm(), BigRational::from(BigInt::from(2)));
        // unit ideal
        let u = ideal_i(&full_ring(3), &[CycNum::one(3)]);
        assert!(u.is_unit_ideal());
        // (1 - z3, 1 - z3^2) has norm 3
        let z3 = full_ring(3);
        let j = ideal_i(
            &z3,
            &[
                CycNum::one(3).sub(&CycNum::zeta(3)),
                CycNum::one(3).sub(&CycNum::root_of_unity(3, 2)),
            ],
        );
        assert_eq!(j.norm(), BigRational::from(BigInt::from(3)));
    }

    #[test]
    fn zero_ideal_rejected() {
        let r = full_ring(3);
        assert!(matches!(
            FracIdeal::from_generators(&r, &[CycNum::zero(3)]),
            Err(Error::ZeroIdeal)
        ));
    }

    #[test]
    fn product_and_inverse() {
        let zi = full_ring(4);
        let p = ideal_i(&zi, &[CycNum::one(4).add(&CycNum::zeta(4))]);
        let q = ideal_i(&zi, &[CycNum::one(4).sub(&CycNum::zeta(4))]);
        let two = ideal_i(&zi, &[CycNum::from_integer(2)]);
        assert_eq!(p.mul(&q).unwrap(), two);
        // inv((2)) = (1/2)
        let inv2 = two.inv();
        let half = ideal_i(
            &zi,
            &[CycNum::from_rational(BigRational::new(
                BigInt::one(),
                BigInt::from(2),
            ))],
        );
        assert_eq!(inv2, half);
        // a * a^{-1} = (1)
        assert!(p.mul(&p.inv()).unwrap().is_unit_ideal());
        // divisibility: (1 - z3) divides (3)
        let z3 = full_ring(3);
        let j = ideal_i(&z3, &[CycNum::one(3).sub(&CycNum::zeta(3))]);
        let three = ideal_i(&z3, &[CycNum::from_integer(3)]);
        assert!(j.divides(&three).unwrap());
        assert!(!three.divides(&j).unwrap());
    }

    #[test]
    fn dedekind_inverse_on_nonprincipal_ideals() {
        let r = full_ring(39);
        let f = factor_one_minus_zeta(&r, 13).unwrap();
        for p in &f.primes {
            assert!(p.mul(&p.inv()).unwrap().is_unit_ideal());
        }
    }

    #[test]
    fn norm_is_multiplicative() {
        let r = full_ring(12);
        let a = ideal_i(&r, &[CycNum::zeta(12).add(&CycNum::from_integer(2))]);
        let b = ideal_i(
            &r,
            &[
                CycNum::from_integer(3),
                CycNum::one(12).sub(&CycNum::zeta(12)),
            ],
        );
        assert_eq!(a.mul(&b).unwrap().norm(), a.norm() * b.norm());
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = ideal_i(&full_ring(3), &[CycNum::one(3)]);
        let b = ideal_i(&full_ring(4), &[CycNum::one(4)]);
        assert!(matches!(a.mul(&b), Err(Error::MixedRings)));
    }

    #[test]
    fn factorization_of_thirteen_in_conductor_39() {
        let r = full_ring(39);
        let f = factor_one_minus_zeta(&r, 13).unwrap();
        assert_eq!(f.primes.len(), 2);
        assert_eq!(f.residue_degrees, vec![1, 1]);
        assert_eq!(f.exponents, vec![1, 1]);
        for p in &f.primes {
            assert_eq!(p.norm(), BigRational::from(BigInt::from(13)));
        }
        assert!(f.verify().unwrap());
        // the primes are non-principal; a bounded search finds no witness
        assert!(f.primes[0].principality_witness(2000).is_none());
    }

    #[test]
    fn factorization_of_two_in_conductor_8() {
        let r = full_ring(8);
        let f = factor_one_minus_zeta(&r, 2).unwrap();
        assert_eq!(f.primes.len(), 1);
        assert_eq!(f.exponents, vec![4]);
        assert!(f.verify().unwrap());
        let pi = ideal_i(&r, &[CycNum::one(8).sub(&CycNum::zeta(8))]);
        assert_eq!(f.primes[0], pi);
    }

    #[test]
    fn composite_order_gives_unit_ideal() {
        let r = full_ring(12);
        let f = factor_one_minus_zeta(&r, 12).unwrap();
        assert!(f.primes.is_empty());
        assert!(f.value.is_unit_ideal());
    }

    #[test]
    fn power_coherence_between_orders() {
        // the uniformizer ideal for order m' is the (m/m')-th power of the one
        // for order m, for m' | m prime powers
        for (n, m, mp) in [
            (8u64, 8u64, 2u64),
            (8, 8, 4),
            (12, 4, 2),
            (9, 9, 3),
            (27, 27, 9),
        ] {
            let r = full_ring(n);
            let im = factor_one_minus_zeta(&r, m).unwrap().value;
            let imp = factor_one_minus_zeta(&r, mp).unwrap().value;
            assert_eq!(imp, im.pow((m / mp) as i64).unwrap(), "n={n} m={m} m'={mp}");
        }
    }

    #[test]
    fn divisor_enumeration() {
        // (1 - z3) in Z[z3]: two divisors
        let z3 = full_ring(3);
        let f = factor_one_minus_zeta(&z3, 3).unwrap();
        let divs = f.divisors().unwrap();
        assert_eq!(divs.len(), 2);
        assert!(divs[0].is_unit_ideal());
        assert_eq!(divs[1], f.value);

        // (2) in Z[i]: 1, (1+i), (2)
        let zi = full_ring(4);
        let two = factor_ideal(&FracIdeal::from_integer(&zi, 2).unwrap()).unwrap();
        let divs = two.divisors().unwrap();
        assert_eq!(divs.len(), 3);
        assert_eq!(divs[1].norm(), BigRational::from(BigInt::from(2)));

        // (1 - z3) in Z[z3, sqrt(-2)]: two distinct primes above 3, 4 divisors
        let k = make_ring(24, &[1, 19]).unwrap();
        let j =
            FracIdeal::from_element(&k, &CycNum::one(3).sub(&CycNum::zeta(3)).lift_to(24)).unwrap();
        let f = factor_ideal(&j).unwrap();
        assert_eq!(f.primes.len(), 2);
        assert_eq!(f.exponents, vec![1, 1]);
        assert_ne!(f.primes[0], f.primes[1]);
        assert_eq!(f.primes[0].conj(), f.primes[1]);
        assert_eq!(f.divisors().unwrap().len(), 4);
    }

    #[test]
    fn witness_search_small_cases() {
        // (2) in Z
        let z = full_ring(1);
        let two = FracIdeal::from_integer(&z, 2).unwrap();
        let w = two.principality_witness(100).unwrap();
        assert_eq!(FracIdeal::from_element(&z, &w).unwrap(), two);
        // the prime above 2 in Z[i]
        let zi = full_ring(4);
        let f = factor_ideal(&FracIdeal::from_integer(&zi, 2).unwrap()).unwrap();
        assert_eq!(f.primes.len(), 1);
        let w = f.primes[0].principality_witness(1000).unwrap();
        assert_eq!(FracIdeal::from_element(&zi, &w).unwrap(), f.primes[0]);
        assert_eq!(
            zi.norm(&w).unwrap().abs(),
            BigRational::from(BigInt::from(2))
        );
    }

    #[test]
    fn conjugation_fixes_uniformizer_ideals() {
        for (n, m) in [(12u64, 3u64), (8, 8), (39, 13), (20, 5)] {
            let r = full_ring(n);
            let f = factor_one_minus_zeta(&r, m).unwrap();
            assert_eq!(f.value.conj(), f.value, "n={n} m={m}");
        }
    }

    #[test]
    fn splitting_patterns_of_two() {
        // inert: Q and Q(zeta_3)
        assert_eq!(factor_two(&full_ring(1)).unwrap(), TwoPattern::Inert);
        assert_eq!(factor_two(&full_ring(3)).unwrap(), TwoPattern::Inert);
        // ramified: Q(i), Q(zeta_12), Q(sqrt(-2), zeta_3)
        for ring in [
            full_ring(4),
            full_ring(12),
            make_ring(24, &[1, 19]).unwrap(),
        ] {
            match factor_two(&ring).unwrap() {
                TwoPattern::Ramified(p) => {
                    assert_eq!(
                        FracIdeal::from_integer(&ring, 2).unwrap(),
                        p.mul(&p).unwrap()
                    );
                }
                other => panic!("expected ramified, got {other:?}"),
            }
        }
        // split: Q(sqrt(-7)) and Q(sqrt(5), zeta_3)
        for ring in [
            make_ring(7, &[1, 2, 4]).unwrap(),
            make_ring(15, &[1, 4]).unwrap(),
        ] {
            match factor_two(&ring).unwrap() {
                TwoPattern::Split(p, q) => {
                    assert_ne!(p, q);
                    assert_eq!(p.conj(), q);
                }
                other => panic!("expected split, got {other:?}"),
            }
        }
    }

    #[test]
    fn ramified_prime_in_sqrt_minus_2_field() {
        // (2) = (sqrt(-2))^2 in Z[sqrt(-2), zeta_3]
        let ring = make_ring(24, &[1, 19]).unwrap();
        // sqrt(-2) = z8 + z8^3
        let s = CycNum::root_of_unity(8, 1)
            .add(&CycNum::root_of_unity(8, 3))
            .lift_to(24);
        assert_eq!(s.mul(&s), CycNum::from_integer(-2).lift_to(24));
        let p = FracIdeal::from_element(&ring, &s).unwrap();
        match factor_two(&ring).unwrap() {
            TwoPattern::Ramified(q) => assert_eq!(p, q),
            other => panic!("expected ramified, got {other:?}"),
        }
    }

    #[test]
    fn real_subfield_prime() {
        // (2 - z5 - z5^4) is prime in Z[z5 + z5^-1] (norm 5)
        let r = real_subfield_ring(5).unwrap();
        let x = CycNum::from_integer(2)
            .lift_to(5)
            .sub(&CycNum::zeta(5))
            .sub(&CycNum::root_of_unity(5, 4));
        let a = FracIdeal::from_element(&r, &x).unwrap();
        let f = factor_ideal(&a).unwrap();
        assert_eq!(f.primes.len(), 1);
        assert_eq!(f.exponents, vec![1]);
        assert_eq!(a.norm(), BigRational::from(BigInt::from(5)));
    }

    #[test]
    fn json_round_trip() {
        let zi = full_ring(4);
        let p = ideal_i(&zi, &[CycNum::one(4).add(&CycNum::zeta(4))]);
        let s = serde_json::to_string(&p).unwrap();
        let q: FracIdeal = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
