//! Symbols (tuples of beta-sets), their denominators, and bad prime ideals:
//! the arithmetic around the divisibility of `|G| / (c_G * r!)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::cyclo::{full_ring, CycNum, RingSpec};
use crate::error::Error;
use crate::exceptional;
use crate::ideals::{factor_ideal, FracIdeal};
use crate::refgroups::{GroupKind, GroupSpec};
use crate::Result;

/// Which series a symbol parameterizes: shape `(m+1, m, ..., m)` for the
/// one-extra-entry series, `(m, ..., m)` for the balanced series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SymbolSeries {
    FirstLonger,
    Balanced,
}

/// A `d`-symbol: a tuple of strictly increasing finite integer sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Symbol {
    pub d: u64,
    pub series: SymbolSeries,
    pub components: Vec<Vec<u64>>,
}

impl Symbol {
    pub fn new(d: u64, series: SymbolSeries, components: Vec<Vec<u64>>) -> Result<Symbol> {
        if components.len() != d as usize {
            return Err(Error::Degenerate("wrong number of components".into()));
        }
        for c in &components {
            if c.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Degenerate(
                    "beta-sets must be strictly increasing".into(),
                ));
            }
        }
        let s = Symbol {
            d,
            series,
            components,
        };
        let sizes: Vec<usize> = s.components.iter().map(|c| c.len()).collect();
        match series {
            SymbolSeries::FirstLonger => {
                if d > 1
                    && (sizes[0] != sizes[1] + 1 || sizes[1..].windows(2).any(|w| w[0] != w[1]))
                {
                    return Err(Error::Degenerate("shape must be (m+1, m, ..., m)".into()));
                }
            }
            SymbolSeries::Balanced => {
                if sizes.windows(2).any(|w| w[0] != w[1]) {
                    return Err(Error::Degenerate("shape must be (m, ..., m)".into()));
                }
            }
        }
        Ok(s)
    }

    /// The common component size `m` of the shape.
    pub fn shape_m(&self) -> u64 {
        match self.series {
            SymbolSeries::FirstLonger => {
                if self.d == 1 {
                    self.components[0].len() as u64 - 1
                } else {
                    self.components[1].len() as u64
                }
            }
            SymbolSeries::Balanced => self.components[0].len() as u64,
        }
    }

    /// Simultaneous shift: every beta-set becomes `{0} ∪ (S + 1)`.
    pub fn shift(&self) -> Symbol {
        let components = self
            .components
            .iter()
            .map(|c| {
                let mut v = vec![0u64];
                v.extend(c.iter().map(|&x| x + 1));
                v
            })
            .collect();
        Symbol {
            d: self.d,
            series: self.series,
            components,
        }
    }

    /// The denominator element
    /// `f_S = prod_{i<j} (zeta^i - zeta^j)^{m - |S_i ∩ S_j|}`,
    /// an integral element of `Z[zeta_d]`, well defined up to a unit.
    pub fn f_value(&self) -> Result<CycNum> {
        let d = self.d;
        let n = d.max(1);
        let m = self.shape_m();
        let mut acc = CycNum::one(n);
        for i in 0..d as usize {
            for j in (i + 1)..d as usize {
                let inter = self.components[i]
                    .iter()
                    .filter(|x| self.components[j].contains(x))
                    .count() as u64;
                if m < inter {
                    return Err(Error::Degenerate(
                        "shape too small for the intersection sizes".into(),
                    ));
                }
                let base =
                    CycNum::root_of_unity(n, i as i64).sub(&CycNum::root_of_unity(n, j as i64));
                acc = acc.mul(&base.pow((m - inter) as i64)?);
            }
        }
        Ok(acc)
    }

    pub fn f_ideal(&self, ring: &RingSpec) -> Result<FracIdeal> {
        FracIdeal::from_element(ring, &ring.embed(&self.f_value()?)?)
    }

    /// Order of the cyclic rotation stabilizer: the number of `i` in `Z/d`
    /// with `S_{j+i} = S_j` for all `j`.
    pub fn gamma(&self) -> u64 {
        let d = self.d as usize;
        let mut count = 0;
        for i in 0..d {
            let mut ok = true;
            for j in 0..d {
                if self.components[(j + i) % d] != self.components[j] {
                    ok = false;
                    break;
                }
            }
            if ok {
                count += 1;
            }
        }
        count
    }

    pub fn display(&self) -> String {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                format!(
                    "{{{}}}",
                    c.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        format!("({})", comps.join(","))
    }
}

fn partitions_of(n: u64) -> Vec<Vec<u64>> {
    fn go(n: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        let top = n.min(max);
        for k in (1..=top).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn beta_set(partition: &[u64], size: usize) -> Vec<u64> {
    // pad with zeros to `size` parts, descending; entries lambda_j + (size-j)
    let mut padded = partition.to_vec();
    padded.resize(size, 0);
    let mut out: Vec<u64> = padded
        .iter()
        .enumerate()
        .map(|(idx, &l)| l + (size - 1 - idx) as u64)
        .collect();
    out.sort_unstable();
    out
}

/// All `d`-symbols of rank `r` for the given series: images of the
/// `d`-multipartitions of `r` under the beta-set map with component sizes
/// fixed by the shape.
pub fn symbols_of_rank(d: u64, r: u64, series: SymbolSeries) -> Result<Vec<Symbol>> {
    if d == 0 {
        return Err(Error::Degenerate("d must be positive".into()));
    }
    if d > 12 || r > 12 {
        return Err(Error::CapExceeded(
            "symbol enumeration capped at d, r <= 12".into(),
        ));
    }
    let m = r as usize;
    // all ordered d-tuples of partitions with total size r
    let mut tuples: Vec<Vec<Vec<u64>>> = vec![Vec::new()];
    for comp in 0..d {
        let mut next = Vec::new();
        for t in &tuples {
            let used: u64 = t.iter().map(|p| p.iter().sum::<u64>()).sum();
            let remaining = r - used;
            let choices: Vec<u64> = if comp + 1 == d {
                vec![remaining]
            } else {
                (0..=remaining).collect()
            };
            for k in choices {
                for p in partitions_of(k) {
                    let mut t2 = t.clone();
                    t2.push(p);
                    next.push(t2);
                }
            }
        }
        tuples = next;
    }
    let mut out = Vec::new();
    for t in tuples {
        let components: Vec<Vec<u64>> = t
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let size = match series {
                    SymbolSeries::FirstLonger if i == 0 => m + 1,
                    _ => m,
                };
                beta_set(p, size.max(p.len()))
            })
            .collect();
        out.push(Symbol::new(d, series, components)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Bad prime ideals
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct SymbolRow {
    pub symbol: String,
    pub gamma: u64,
    pub divides: bool,
}

#[derive(Debug, Serialize)]
pub struct BadReport {
    pub group: String,
    /// The ideal `|G| / (c_G * r!)`.
    pub quotient: FracIdeal,
    pub quotient_primes: Vec<FracIdeal>,
    pub bad_divides_quotient: Option<bool>,
    pub primes_divide_bad: Option<bool>,
    pub symbol_rows: Vec<SymbolRow>,
    pub all_symbols_divide: bool,
}

impl BadReport {
    pub fn passed(&self) -> bool {
        self.bad_divides_quotient.unwrap_or(true)
            && self.primes_divide_bad.unwrap_or(true)
            && self.all_symbols_divide
    }
}

fn factorial(r: usize) -> BigRational {
    let mut f = BigInt::from(1);
    for k in 2..=r {
        f *= BigInt::from(k as i64);
    }
    BigRational::from(f)
}

/// The quotient ideal `|G| / (c_G * r!)` with the divisibility verified;
/// failure is a hard error.
pub fn bad_quotient(group: &GroupSpec) -> Result<(FracIdeal, Vec<FracIdeal>)> {
    let ring = &group.ring;
    let n = ring.conductor();
    let (order, rank, c_gen): (u64, usize, CycNum) = match &group.kind {
        GroupKind::Imprimitive { d, e, r } => {
            let de = d * e;
            if de == 1 {
                // the symmetric group on r letters: essential rank r - 1,
                // connection index r
                let c = CycNum::from_integer(*r as i64).lift_to(n);
                (group.order(), *r - 1, c)
            } else {
                let c = if *e == 1 {
                    // connection index generator 1 - zeta_d
                    CycNum::one(n).sub(&CycNum::root_of_unity(*d, 1).lift_to(n))
                } else if *d == 1 {
                    let z = CycNum::root_of_unity(de, 1).lift_to(n);
                    CycNum::one(n).sub(&z).mul(&CycNum::one(n).sub(&z.conj()))
                } else {
                    return Err(Error::UnsupportedGroup(
                        "bad primes are defined for well-generated groups".into(),
                    ));
                };
                (group.order(), *r, c)
            }
        }
        GroupKind::Cyclic { d } => (
            *d,
            1,
            CycNum::one(n).sub(&CycNum::root_of_unity(*d, 1).lift_to(n)),
        ),
        GroupKind::Exceptional { name } => {
            let data = exceptional::lookup(name)?;
            if !data.well_generated {
                return Err(Error::UnsupportedGroup(
                    "bad primes are defined for well-generated groups".into(),
                ));
            }
            (data.order, data.rank, data.connection_index.clone())
        }
        GroupKind::DihedralReal { e } => {
            let z = CycNum::zeta(n);
            (
                2 * e,
                2,
                CycNum::one(n).sub(&z).mul(&CycNum::one(n).sub(&z.conj())),
            )
        }
    };
    let order_e = CycNum::from_rational(BigRational::from(BigInt::from(order)));
    let denom = c_gen.mul(&CycNum::from_rational(factorial(rank)));
    let quotient_elem = order_e.lift_to(n).div(&ring.embed(&denom)?)?;
    let quotient = FracIdeal::from_element(ring, &quotient_elem)?;
    if !quotient.is_integral() {
        return Err(Error::Verification(format!(
            "c_G * r! does not divide |G| for {:?}",
            group.kind
        )));
    }
    let primes = if quotient.is_unit_ideal() {
        Vec::new()
    } else {
        factor_ideal(&quotient)?.primes
    };
    Ok((quotient, primes))
}

/// Check the symbol divisibilities and the table data for a group, at the
/// given series caps.
pub fn verify_bad_divisibility(group: &GroupSpec) -> Result<BadReport> {
    let (quotient, quotient_primes) = bad_quotient(group)?;
    let ring = &group.ring;
    let mut rows = Vec::new();
    let mut all = true;
    let mut bad_divides_quotient = None;
    let mut primes_divide_bad = None;
    match &group.kind {
        GroupKind::Imprimitive { d, e, r } if *e == 1 && *d >= 2 => {
            // one-extra-entry series over Z[zeta_d]
            let full = full_ring(*d);
            let _ = full;
            for s in symbols_of_rank(*d, *r as u64, SymbolSeries::FirstLonger)? {
                let f = s.f_ideal(ring)?;
                let divides = f.divides(&quotient)?;
                all &= divides;
                rows.push(SymbolRow {
                    symbol: s.display(),
                    gamma: s.gamma(),
                    divides,
                });
            }
        }
        GroupKind::Imprimitive { d, e, r } if *d == 1 && *e >= 2 => {
            // balanced series: the effective denominator is f_S * gamma / e
            for s in symbols_of_rank(*e, *r as u64, SymbolSeries::Balanced)? {
                let f = s.f_value()?;
                let gamma = s.gamma();
                let eff = f
                    .mul(&CycNum::from_rational(BigRational::new(
                        BigInt::from(gamma),
                        BigInt::from(*e),
                    )))
                    .lift_to(ring.conductor());
                let eff_ideal = FracIdeal::from_element(ring, &eff)?;
                let divides = eff_ideal.divides(&quotient)?;
                all &= divides;
                rows.push(SymbolRow {
                    symbol: s.display(),
                    gamma,
                    divides,
                });
            }
        }
        GroupKind::Exceptional { name } => {
            let data = exceptional::lookup(name)?;
            let bad = data.bad.clone().ok_or_else(|| {
                Error::UnsupportedGroup(format!("{name} has no bad-number entry"))
            })?;
            let bad_ideal = FracIdeal::from_element(ring, &bad)?;
            let bd = bad_ideal.divides(&quotient)?;
            bad_divides_quotient = Some(bd);
            let pd = quotient_primes
                .iter()
                .map(|p| p.divides(&bad_ideal))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|x| x);
            primes_divide_bad = Some(pd);
        }
        _ => {
            return Err(Error::UnsupportedGroup(
                "divisibility report covers the two monomial series and the exceptional tables"
                    .into(),
            ))
        }
    }
    Ok(BadReport {
        group: format!("{:?}", group.kind),
        quotient,
        quotient_primes,
        bad_divides_quotient,
        primes_divide_bad,
        symbol_rows: rows,
        all_symbols_divide: all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    /// Independent count of d-multipartitions of r (generating function DP).
    fn multipartition_count(d: u64, r: u64) -> u64 {
        let r = r as usize;
        let mut coeffs = vec![0u64; r + 1];
        coeffs[0] = 1;
        for _ in 0..d {
            // multiply by prod_k 1/(1 - x^k)
            for k in 1..=r {
                for i in k..=r {
                    coeffs[i] += coeffs[i - k];
                }
            }
        }
        coeffs[r]
    }

    #[test]
    fn symbol_counts_match_multipartitions() {
        for (d, r) in [(1u64, 2u64), (2, 1), (3, 1), (2, 3), (3, 2), (4, 2), (5, 3)] {
            let syms = symbols_of_rank(d, r, SymbolSeries::FirstLonger).unwrap();
            assert_eq!(syms.len() as u64, multipartition_count(d, r), "d={d} r={r}");
            // all symbols distinct
            let mut keys: Vec<String> = syms.iter().map(|s| s.display()).collect();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), syms.len());
        }
        assert_eq!(
            symbols_of_rank(1, 2, SymbolSeries::FirstLonger)
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            symbols_of_rank(2, 1, SymbolSeries::FirstLonger)
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            symbols_of_rank(3, 1, SymbolSeries::FirstLonger)
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn shift_invariance_of_f() {
        let ring = full_ring(3);
        for s in symbols_of_rank(3, 2, SymbolSeries::FirstLonger).unwrap() {
            let f1 = s.f_ideal(&ring).unwrap();
            let f2 = s.shift().f_ideal(&ring).unwrap();
            assert_eq!(f1, f2, "{}", s.display());
        }
        let ring = full_ring(4);
        for s in symbols_of_rank(4, 2, SymbolSeries::Balanced).unwrap() {
            let f1 = s.f_ideal(&ring).unwrap();
            let f2 = s.shift().f_ideal(&ring).unwrap();
            assert_eq!(f1, f2);
        }
    }

    #[test]
    fn gamma_values() {
        let a = Symbol::new(2, SymbolSeries::Balanced, vec![vec![0, 2], vec![0, 2]]).unwrap();
        assert_eq!(a.gamma(), 2);
        let b = Symbol::new(2, SymbolSeries::Balanced, vec![vec![1, 2], vec![0, 3]]).unwrap();
        assert_eq!(b.gamma(), 1);
        let c = Symbol::new(
            3,
            SymbolSeries::Balanced,
            vec![vec![0, 1], vec![0, 1], vec![0, 1]],
        )
        .unwrap();
        assert_eq!(c.gamma(), 3);
    }

    #[test]
    fn rank_one_denominator() {
        // the symbol with the one-box partition in component 1 has
        // f = d / (zeta - 1) up to a unit
        for d in [3u64, 4, 5] {
            let ring = full_ring(d);
            let syms = symbols_of_rank(d, 1, SymbolSeries::FirstLonger).unwrap();
            let expect = {
                let dd = CycNum::from_integer(d as i64).lift_to(d);
                let den = CycNum::zeta(d).sub(&CycNum::one(d));
                FracIdeal::from_element(&ring, &dd.div(&den).unwrap()).unwrap()
            };
            let hit = syms
                .iter()
                .any(|s| s.f_ideal(&ring).map(|f| f == expect).unwrap_or(false));
            assert!(hit, "d = {d}");
            // and the trivial-character symbol has unit denominator
            let unit = syms
                .iter()
                .any(|s| s.f_ideal(&ring).map(|f| f.is_unit_ideal()).unwrap_or(false));
            assert!(unit);
        }
    }

    #[test]
    fn d4_spot_value() {
        // ({1,2},{0,3}) for the balanced 2-series: effective denominator 2
        let s = Symbol::new(2, SymbolSeries::Balanced, vec![vec![1, 2], vec![0, 3]]).unwrap();
        let f = s.f_value().unwrap();
        assert_eq!(f, CycNum::from_integer(4));
        assert_eq!(s.gamma(), 1);
        // f * gamma / d = 2
        let eff = f.mul(&CycNum::from_rational(BigRational::new(
            BigInt::one(),
            BigInt::from(2),
        )));
        assert_eq!(eff, CycNum::from_integer(2));
    }

    #[test]
    fn g333_spot_value() {
        // ({0,1},{1,2},{0,2}): effective denominator (1 - zeta_3) up to unit
        let ring = full_ring(3);
        let s = Symbol::new(
            3,
            SymbolSeries::Balanced,
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        assert_eq!(s.gamma(), 1);
        let eff = s
            .f_value()
            .unwrap()
            .mul(&CycNum::from_rational(BigRational::new(
                BigInt::one(),
                BigInt::from(3),
            )));
        let ideal = FracIdeal::from_element(&ring, &eff).unwrap();
        let expect = FracIdeal::from_element(&ring, &CycNum::one(3).sub(&CycNum::zeta(3))).unwrap();
        assert_eq!(ideal, expect);
    }

    #[test]
    fn concatenation_lemma() {
        // S = gamma copies of S' has f_S = f_{S'}^gamma up to unit
        let ring6 = full_ring(6);
        for dprime in [2u64, 3] {
            let gamma = 6 / dprime;
            for sp in symbols_of_rank(dprime, 2, SymbolSeries::Balanced).unwrap() {
                let mut comps = Vec::new();
                for _ in 0..gamma {
                    comps.extend(sp.components.clone());
                }
                // concatenation interleaves by residue: S_j = S'_{j mod d'}
                let comps: Vec<Vec<u64>> = (0..6)
                    .map(|j| sp.components[(j % dprime) as usize].clone())
                    .collect();
                let s = Symbol::new(6, SymbolSeries::Balanced, comps).unwrap();
                assert_eq!(s.gamma() % gamma, 0);
                let f_s = s.f_ideal(&ring6).unwrap();
                let f_sp =
                    FracIdeal::from_element(&ring6, &sp.f_value().unwrap().lift_to(6)).unwrap();
                assert_eq!(f_s, f_sp.pow(gamma as i64).unwrap(), "d'={dprime}");
            }
        }
    }

    #[test]
    fn hook_step_multiplies_by_divisor_of_d() {
        let d = 3u64;
        let ring = full_ring(d);
        let dd = FracIdeal::from_integer(&ring, d as i64).unwrap();
        for s in symbols_of_rank(d, 2, SymbolSeries::FirstLonger).unwrap() {
            for (ci, comp) in s.components.iter().enumerate() {
                for (k, &entry) in comp.iter().enumerate() {
                    if comp.contains(&(entry + 1)) {
                        continue;
                    }
                    let mut comps = s.components.clone();
                    comps[ci][k] = entry + 1;
                    comps[ci].sort_unstable();
                    let s2 = Symbol::new(d, s.series, comps).unwrap();
                    let f1 = s.f_ideal(&ring).unwrap();
                    let f2 = s2.f_ideal(&ring).unwrap();
                    // f2 / f1 divides (d)
                    let ratio = f2.mul(&f1.inv()).unwrap();
                    assert!(
                        ratio.divides(&dd).unwrap(),
                        "{} -> {}",
                        s.display(),
                        s2.display()
                    );
                }
            }
        }
    }

    #[test]
    fn quotients_for_weyl_series() {
        // type A: trivial quotient
        let a = GroupSpec::imprimitive(1, 1, 4).unwrap();
        let (q, primes) = bad_quotient(&a).unwrap();
        assert!(q.is_unit_ideal());
        assert!(primes.is_empty());
        // type B_r: quotient 2^{r-1}
        let b = GroupSpec::imprimitive(2, 1, 3).unwrap();
        let (q, primes) = bad_quotient(&b).unwrap();
        assert_eq!(q.norm(), BigRational::from(BigInt::from(4)));
        assert_eq!(primes.len(), 1);
        // D4: quotient 2
        let d4 = GroupSpec::imprimitive(2, 2, 4).unwrap();
        let (q, primes) = bad_quotient(&d4).unwrap();
        assert_eq!(q.norm(), BigRational::from(BigInt::from(2)));
        assert_eq!(primes.len(), 1);
    }

    #[test]
    fn exceptional_table_divisibilities() {
        for name in ["G23", "G28", "G35", "G36", "G37"] {
            let g = GroupSpec::exceptional(name).unwrap();
            let report = verify_bad_divisibility(&g).unwrap();
            assert!(report.passed(), "{name}");
        }
        // E6 numbers: quotient norm 24, bad primes {2, 3}
        let e6 = GroupSpec::exceptional("G35").unwrap();
        let (q, primes) = bad_quotient(&e6).unwrap();
        assert_eq!(q.norm(), BigRational::from(BigInt::from(24)));
        assert_eq!(primes.len(), 2);
    }

    #[test]
    fn monomial_series_divisibilities() {
        let g = GroupSpec::imprimitive(3, 1, 2).unwrap();
        let report = verify_bad_divisibility(&g).unwrap();
        assert_eq!(report.symbol_rows.len(), 9);
        assert!(report.all_symbols_divide);
        let g = GroupSpec::imprimitive(4, 4, 2).unwrap();
        let report = verify_bad_divisibility(&g).unwrap();
        assert!(report.all_symbols_divide);
        // quotient = 4 / ((1-i)(1+i)) = 2
        assert_eq!(report.quotient.norm(), BigRational::from(BigInt::from(4)));
    }
}
