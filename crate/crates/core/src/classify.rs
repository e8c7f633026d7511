//! Genus enumeration of root systems.
//!
//! Everything rests on one principle: any two complete-reduced (or
//! distinguished) systems for the same group differ by rescaling each root
//! orbit by a fractional ideal, and the rescaled pairings stay integral iff,
//! at every prime, the orbit valuations satisfy difference bounds read off
//! the base pairings. Genera therefore correspond to per-prime valuation
//! patterns, normalized to integral jointly-coprime families.

use num_traits::ToPrimitive;

use crate::cyclo::{CycNum, RingSpec};
use crate::cycmat::{self, CycMat};
use crate::error::Error;
use crate::exceptional;
use crate::ideals::{factor_ideal, FracIdeal};
use crate::refgroups::{self, GroupSpec};
use crate::roots::{
    dihedral_real_system, root_pairing, standard_cyclic_system, standard_imprimitive_system,
    Flavor, Root, RootSystem, DEFAULT_ORBIT_CAP,
};
use crate::Result;

/// Cap on the number of enumerated genera.
pub const DEFAULT_GENUS_CAP: usize = 100_000;

/// One genus of root systems: named per-orbit scaling ideals and a lazily
/// constructed representative.
#[derive(Debug, Clone)]
pub struct GenusDescriptor {
    pub group: String,
    pub flavor: Flavor,
    pub ideal_params: Vec<(String, FracIdeal)>,
    base: RootSystem,
    orbits: Vec<Vec<usize>>,
}

impl GenusDescriptor {
    /// Build the representative system by rescaling each orbit of the base.
    pub fn representative(&self) -> Result<RootSystem> {
        let mut roots: Vec<Root> = Vec::new();
        for (orbit, (_, ideal)) in self.orbits.iter().zip(&self.ideal_params) {
            for &i in orbit {
                roots.push(self.base.roots()[i].rescale(ideal)?);
            }
        }
        Ok(RootSystem::new(self.base.ring(), self.base.dim(), roots))
    }

    /// Canonical sort key over the parameter ideals.
    fn sort_key(&self) -> Vec<(num_rational::BigRational, num_bigint::BigInt)> {
        self.ideal_params
            .iter()
            .map(|(_, i)| {
                let k = i.sort_key();
                (k.0, k.1)
            })
            .collect()
    }
}

/// Classify all genera obtained by rescaling the orbits of a base system.
///
/// `orbit_names` labels the parameters in the output; when `None`, names are
/// generated.
pub fn classify_by_orbit_rescaling(
    group_name: &str,
    flavor: Flavor,
    base: &RootSystem,
    orbit_names: Option<Vec<String>>,
    cap: usize,
) -> Result<Vec<GenusDescriptor>> {
    let orbits = base.orbits()?;
    let m = orbits.len();
    let names: Vec<String> = match orbit_names {
        Some(n) => {
            assert_eq!(n.len(), m);
            n
        }
        None => (0..m).map(|i| format!("a{}", i + 1)).collect(),
    };
    // directional gcds of pairings between orbits
    let mut gcds: Vec<Vec<Option<FracIdeal>>> = vec![vec![None; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let mut acc: Option<FracIdeal> = None;
            for &a in &orbits[i] {
                for &b in &orbits[j] {
                    if let Some(p) = root_pairing(&base.roots()[a], &base.roots()[b])? {
                        acc = Some(match acc {
                            None => p,
                            Some(q) => q.gcd(&p)?,
                        });
                    }
                }
            }
            gcds[i][j] = acc;
        }
    }
    // connectivity of the constraint graph
    if m > 1 {
        let mut seen = vec![false; m];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..m {
                if !seen[j] && (gcds[i][j].is_some() || gcds[j][i].is_some()) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::UnsupportedGroup(
                "orbit pairing graph is disconnected (reducible system)".into(),
            ));
        }
    }
    // primes appearing in any gcd
    let mut primes: Vec<FracIdeal> = Vec::new();
    for row in &gcds {
        for g in row.iter().flatten() {
            if !g.is_unit_ideal() {
                for p in factor_ideal(g)?.primes {
                    if !primes.contains(&p) {
                        primes.push(p);
                    }
                }
            }
        }
    }
    primes.sort_by_key(|p| p.sort_key());
    // per-prime constraint bounds c[i][j] = v_p(gcd_{ij}); the scaled system
    // is integral iff v_j - v_i <= c[i][j] for every constrained pair
    let mut per_prime_patterns: Vec<Vec<Vec<i64>>> = Vec::new();
    for p in &primes {
        let mut c = vec![vec![None; m]; m];
        for i in 0..m {
            for j in 0..m {
                if let Some(g) = &gcds[i][j] {
                    c[i][j] = Some(g.valuation(p)?);
                }
            }
        }
        let patterns = enumerate_patterns(m, &c, cap)?;
        per_prime_patterns.push(patterns);
    }
    // combine primes multiplicatively
    let mut total: usize = 1;
    for pp in &per_prime_patterns {
        total = total
            .checked_mul(pp.len())
            .ok_or_else(|| Error::CapExceeded("genus count overflow".into()))?;
        if total > cap {
            return Err(Error::CapExceeded(format!("more than {cap} genera")));
        }
    }
    let ring = base.ring().clone();
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_prime_patterns.len()];
    loop {
        // assemble a family from the current pattern combination
        let mut ideals: Vec<FracIdeal> = vec![FracIdeal::unit(&ring); m];
        for (pi, p) in primes.iter().enumerate() {
            let pat = &per_prime_patterns[pi][idx[pi]];
            for k in 0..m {
                if pat[k] != 0 {
                    ideals[k] = ideals[k].mul(&p.pow(pat[k])?)?;
                }
            }
        }
        out.push(GenusDescriptor {
            group: group_name.to_string(),
            flavor,
            ideal_params: names.iter().cloned().zip(ideals).collect(),
            base: base.clone(),
            orbits: orbits.clone(),
        });
        // advance the odometer
        let mut carry = 0;
        loop {
            if carry == idx.len() {
                out.sort_by_key(|d| d.sort_key());
                return Ok(out);
            }
            idx[carry] += 1;
            if idx[carry] < per_prime_patterns[carry].len() {
                break;
            }
            idx[carry] = 0;
            carry += 1;
        }
        if idx.is_empty() {
            out.sort_by_key(|d| d.sort_key());
            return Ok(out);
        }
    }
}

/// Enumerate nonnegative integer vectors with min = 0 subject to
/// `v[j] - v[i] <= c[i][j]` (when the bound is present).
///
/// Any valid pattern is chained to a zero entry through the constraint
/// graph, so every entry is at most `(m - 1) * max_c`; the first node ranges
/// over that interval and the rest are pinned by the bounds of already
/// assigned neighbours.
fn enumerate_patterns(m: usize, c: &[Vec<Option<i64>>], cap: usize) -> Result<Vec<Vec<i64>>> {
    if m == 0 {
        return Ok(vec![Vec::new()]);
    }
    if m == 1 {
        return Ok(vec![vec![0]]);
    }
    // BFS order so every later node is constrained against an assigned one
    let mut order = vec![0usize];
    let mut placed = vec![false; m];
    placed[0] = true;
    while order.len() < m {
        let next = (0..m).find(|&j| {
            !placed[j]
                && order
                    .iter()
                    .any(|&i| c[i][j].is_some() || c[j][i].is_some())
        });
        let Some(j) = next else {
            return Err(Error::UnsupportedGroup(
                "disconnected constraint graph".into(),
            ));
        };
        placed[j] = true;
        order.push(j);
    }
    let max_c = c.iter().flatten().flatten().copied().max().unwrap_or(0);
    let anchor_bound = max_c * (m as i64 - 1);
    let mut out = Vec::new();
    let mut v = vec![0i64; m];
    fn dfs(
        pos: usize,
        order: &[usize],
        c: &[Vec<Option<i64>>],
        anchor_bound: i64,
        v: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
        cap: usize,
    ) -> Result<()> {
        let m = order.len();
        if pos == m {
            if v.iter().min() == Some(&0) {
                out.push(v.clone());
                if out.len() > cap {
                    return Err(Error::CapExceeded(format!(
                        "more than {cap} valuation patterns"
                    )));
                }
            }
            return Ok(());
        }
        let k = order[pos];
        let (mut lo, mut hi) = if pos == 0 {
            (0i64, anchor_bound)
        } else {
            (0i64, i64::MAX)
        };
        for &i in &order[..pos] {
            if let Some(cik) = c[i][k] {
                hi = hi.min(v[i] + cik);
            }
            if let Some(cki) = c[k][i] {
                lo = lo.max(v[i] - cki);
            }
        }
        if hi == i64::MAX {
            return Err(Error::UnsupportedGroup(
                "unbounded scaling direction".into(),
            ));
        }
        for val in lo..=hi {
            v[k] = val;
            dfs(pos + 1, order, c, anchor_bound, v, out, cap)?;
            v[k] = 0;
        }
        Ok(())
    }
    dfs(0, &order, c, anchor_bound, &mut v, &mut out, cap)?;
    out.sort();
    out.dedup();
    Ok(out)
}

// ---------------------------------------------------------------------------
// Named classifiers
// ---------------------------------------------------------------------------

/// Genera of complete reduced systems for the cyclic group of order `d` over
/// a ring containing `zeta_d`.
pub fn classify_cyclic(d: u64, ring: &RingSpec) -> Result<Vec<GenusDescriptor>> {
    let base = standard_cyclic_system(d, ring, None)?;
    let names = (1..d).map(|j| format!("a{j}")).collect();
    classify_by_orbit_rescaling(
        &format!("mu({d})"),
        Flavor::CompleteReduced,
        &base,
        Some(names),
        DEFAULT_GENUS_CAP,
    )
}

/// Genera of complete-reduced or distinguished systems for the monomial
/// groups over their field of definition.
pub fn classify_imprimitive(
    de: u64,
    e: u64,
    r: usize,
    flavor: Flavor,
) -> Result<Vec<GenusDescriptor>> {
    let group = GroupSpec::imprimitive(de, e, r)?;
    let base = standard_imprimitive_system(&group, flavor)?;
    let orbits = base.orbits()?;
    // name orbits by inspecting a representative root: diagonal roots are
    // supported on one coordinate, involutive ones on two
    let mut names = Vec::new();
    let mut seen_inv = 0;
    let inv_orbits = orbits
        .iter()
        .filter(|o| {
            let r = &base.roots()[o[0]];
            r.vec_v.iter().filter(|c| !c.is_zero()).count() == 2
        })
        .count();
    for orbit in &orbits {
        let root = &base.roots()[orbit[0]];
        let support = root.vec_v.iter().filter(|c| !c.is_zero()).count();
        if support == 2 && de > 1 {
            if inv_orbits > 1 {
                names.push(format!("b{seen_inv}"));
                seen_inv += 1;
            } else {
                names.push("b".to_string());
            }
        } else {
            let (order, exp) = root.zeta.as_root_of_unity().unwrap();
            let d = de / e;
            // power i with zeta = zeta_d^i
            let i = exp * (d / order);
            names.push(format!("a{i}"));
        }
    }
    classify_by_orbit_rescaling(
        &format!("G({de},{e},{r})"),
        flavor,
        &base,
        Some(names),
        DEFAULT_GENUS_CAP,
    )
}

/// Genera of the dihedral group of order `2e` over its real field of
/// definition.
pub fn classify_dihedral_real(e: u64) -> Result<Vec<GenusDescriptor>> {
    let base = dihedral_real_system(e)?;
    classify_by_orbit_rescaling(
        &format!("dihedral-real({e})"),
        Flavor::Distinguished,
        &base,
        None,
        DEFAULT_GENUS_CAP,
    )
}

/// A genus of distinguished systems for an exceptional group, presented by
/// the diagonal rescaling of the standard Cartan matrix.
#[derive(Debug, Clone)]
pub struct ExceptionalGenus {
    pub name: String,
    /// Valuation data per generator position: the scaling ideals.
    pub diagonal: Vec<FracIdeal>,
}

/// Count and present the genera of distinguished root systems for G4..G37 by
/// searching diagonal conjugations of the standard Cartan matrix that keep
/// all entries integral, up to unit diagonals and global scalars.
pub fn classify_exceptional(name: &str) -> Result<Vec<ExceptionalGenus>> {
    let data = exceptional::lookup(name)?;
    let ring = &data.ring;
    // single orbit of distinguished reflections => single genus, no search
    let group = GroupSpec::exceptional(name)?;
    let gens = group.standard_generators()?;
    let dist = group.distinguished_reflections()?;
    let classes = refgroups::reflection_classes(&dist, &gens);
    if classes.len() == 1 {
        return Ok(vec![ExceptionalGenus {
            name: name.to_string(),
            diagonal: vec![FracIdeal::unit(ring); data.cartan.len()],
        }]);
    }
    let side = data.cartan.len();
    // entry ideals and their primes
    let mut entry_ideals: Vec<Vec<Option<FracIdeal>>> = vec![vec![None; side]; side];
    let mut primes: Vec<FracIdeal> = Vec::new();
    for i in 0..side {
        for j in 0..side {
            if i == j || data.cartan[i][j].is_zero() {
                continue;
            }
            let ideal = FracIdeal::from_element(ring, &data.cartan[i][j])?;
            if !ideal.is_unit_ideal() {
                for p in factor_ideal(&ideal)?.primes {
                    if !primes.contains(&p) {
                        primes.push(p);
                    }
                }
            }
            entry_ideals[i][j] = Some(ideal);
        }
    }
    primes.sort_by_key(|p| p.sort_key());
    // per prime: vectors (v_1 = 0, v_2, ..) with v_j - v_i + v_p(C_ij) >= 0
    let mut per_prime: Vec<Vec<Vec<i64>>> = Vec::new();
    for p in &primes {
        let mut c: Vec<Vec<Option<i64>>> = vec![vec![None; side]; side];
        for i in 0..side {
            for j in 0..side {
                if let Some(e) = &entry_ideals[i][j] {
                    c[i][j] = Some(e.valuation(p)?);
                }
            }
        }
        let mut pats = Vec::new();
        let mut v = vec![0i64; side];
        dfs_anchor(1, &c, &mut v, &mut pats)?;
        per_prime.push(pats);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_prime.len()];
    loop {
        let mut diag = vec![FracIdeal::unit(ring); side];
        for (pi, p) in primes.iter().enumerate() {
            for k in 0..side {
                let v = per_prime[pi][idx[pi]][k];
                if v != 0 {
                    diag[k] = diag[k].mul(&p.pow(v)?)?;
                }
            }
        }
        out.push(ExceptionalGenus {
            name: name.to_string(),
            diagonal: diag,
        });
        let mut carry = 0;
        loop {
            if carry == idx.len() {
                out.sort_by_key(|g| g.diagonal.iter().map(|i| i.sort_key()).collect::<Vec<_>>());
                return Ok(out);
            }
            idx[carry] += 1;
            if idx[carry] < per_prime[carry].len() {
                break;
            }
            idx[carry] = 0;
            carry += 1;
        }
        if idx.is_empty() {
            return Ok(out);
        }
    }
}

/// DFS for the anchored (v_1 = 0) integer patterns of the Cartan diagonal
/// search: `v_j - v_i + c[i][j] >= 0` whenever `C_ij != 0`.
fn dfs_anchor(
    pos: usize,
    c: &[Vec<Option<i64>>],
    v: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) -> Result<()> {
    let side = c.len();
    if pos == side {
        out.push(v.clone());
        return Ok(());
    }
    // bounds from assigned nodes (0..pos)
    let mut lo = i64::MIN;
    let mut hi = i64::MAX;
    for i in 0..pos {
        // constraint (i, pos): v_pos >= v_i - c[i][pos]
        if let Some(cij) = c[i][pos] {
            lo = lo.max(v[i] - cij);
        }
        // constraint (pos, i): v_pos <= v_i + c[pos][i]
        if let Some(cji) = c[pos][i] {
            hi = hi.min(v[i] + cji);
        }
    }
    if lo == i64::MIN || hi == i64::MAX {
        return Err(Error::UnsupportedGroup(
            "diagonal search is unbounded (disconnected Cartan matrix)".into(),
        ));
    }
    for val in lo..=hi {
        v[pos] = val;
        dfs_anchor(pos + 1, c, v, out)?;
        v[pos] = 0;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// The rank-two special case over rings where (2) has an ideal square root
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct B2Report {
    pub ring: RingSpec,
    pub sqrt_of_two: Option<FracIdeal>,
    /// Pairwise non-equivalent systems (two without a square root, three with).
    pub genera: Vec<RootSystem>,
    /// Swap automorphism checks, when the square root exists.
    pub automorphism_squares_to_two: bool,
    pub automorphism_preserves_genus: bool,
}

/// Root systems of the rank-two hyperoctahedral group over `ring`, together
/// with the behaviour of the automorphism `phi` with `phi^2 = 2`.
pub fn b2_special(ring: &RingSpec) -> Result<B2Report> {
    let n = ring.conductor();
    let unit = FracIdeal::unit(ring);
    let two = FracIdeal::from_integer(ring, 2)?;
    let m1 = CycNum::from_integer(-1).lift_to(n);
    let vs = vec![CycNum::one(n), CycNum::zero(n)];
    let vs_dual = vec![CycNum::from_integer(2).lift_to(n), CycNum::zero(n)];
    let vt = vec![CycNum::from_integer(-1).lift_to(n), CycNum::one(n)];
    let seed = |scale: &FracIdeal| -> Result<RootSystem> {
        let rs = Root::new(ring, scale, &vs, &vs_dual, &m1)?;
        let rt = Root::new(ring, &unit, &vt, &vt, &m1)?;
        RootSystem::orbit_closure(ring, &[rs, rt], DEFAULT_ORBIT_CAP)
    };
    // square root of (2) as an ideal, from the prime factorization
    let fact = factor_ideal(&two)?;
    let sqrt = if fact.exponents.iter().all(|e| e % 2 == 0) {
        let mut a = FracIdeal::unit(ring);
        for (p, e) in fact.primes.iter().zip(&fact.exponents) {
            a = a.mul(&p.pow(e / 2)?)?;
        }
        Some(a)
    } else {
        None
    };
    let mut genera = vec![seed(&unit)?, seed(&two)?];
    if let Some(a) = &sqrt {
        genera.push(seed(a)?);
    }
    // pairwise distinct genera
    for i in 0..genera.len() {
        for j in (i + 1)..genera.len() {
            if genera[i].same_genus(&genera[j])?.is_some() {
                return Err(Error::Verification(
                    "expectedly distinct genera coincide".into(),
                ));
            }
        }
    }
    // the automorphism exchanging the two generator classes
    let phi: CycMat = vec![
        vec![CycNum::from_integer(-1).lift_to(n), CycNum::one(n)],
        vec![CycNum::one(n), CycNum::one(n)],
    ];
    let phi2 = cycmat::mat_mul(&phi, &phi);
    let two_id = {
        let mut m = cycmat::identity(2, n);
        for row in m.iter_mut() {
            for v in row.iter_mut() {
                *v = v.mul(&CycNum::from_integer(2).lift_to(n));
            }
        }
        m
    };
    let automorphism_squares_to_two = cycmat::mat_eq(&phi2, &two_id);
    let automorphism_preserves_genus = match &sqrt {
        None => false,
        Some(a) => {
            let ra = genera[2].clone();
            let image = ra.transform(&phi)?;
            let scaled = ra.rescale(a)?;
            let ok =
                image.len() == scaled.len() && image.roots().iter().all(|r| scaled.contains(r));
            ok
        }
    };
    Ok(B2Report {
        ring: ring.clone(),
        sqrt_of_two: sqrt,
        genera,
        automorphism_squares_to_two,
        automorphism_preserves_genus,
    })
}

/// Convenience: the number of genera, for closed-form count checks.
pub fn count_imprimitive(de: u64, e: u64, r: usize, flavor: Flavor) -> Result<usize> {
    Ok(classify_imprimitive(de, e, r, flavor)?.len())
}

pub fn count_exceptional(name: &str) -> Result<usize> {
    Ok(classify_exceptional(name)?.len())
}

#[allow(dead_code)]
fn unused_to_u64(x: &num_rational::BigRational) -> Option<u64> {
    x.to_integer().to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{full_ring, make_ring};

    #[test]
    fn cyclic_genera_over_small_fields() {
        // coprime families dividing the prime j = (1 - zeta_3):
        // (1,1), (j,1), (1,j)
        let r3 = full_ring(3);
        let genera = classify_cyclic(3, &r3).unwrap();
        assert_eq!(genera.len(), 3);
        let nontrivial: Vec<&GenusDescriptor> = genera
            .iter()
            .filter(|g| g.ideal_params.iter().any(|(_, i)| !i.is_unit_ideal()))
            .collect();
        assert_eq!(nontrivial.len(), 2);
        let r12 = full_ring(12);
        assert_eq!(classify_cyclic(3, &r12).unwrap().len(), 3);
        // mu_2: one genus over any field
        for ring in [
            full_ring(4),
            full_ring(12),
            make_ring(7, &[1, 2, 4]).unwrap(),
        ] {
            assert_eq!(classify_cyclic(2, &ring).unwrap().len(), 1);
        }
    }

    #[test]
    fn nine_genera_over_sqrt_minus_two_field() {
        let ring = make_ring(24, &[1, 19]).unwrap();
        let genera = classify_cyclic(3, &ring).unwrap();
        assert_eq!(genera.len(), 9);
        // every representative passes the axioms and they are pairwise of
        // different genus
        let reps: Vec<RootSystem> = genera.iter().map(|g| g.representative().unwrap()).collect();
        for r in &reps {
            assert!(r.verify_axioms().unwrap().passed());
        }
        for i in 0..reps.len() {
            for j in (i + 1)..reps.len() {
                assert!(reps[i].same_genus(&reps[j]).unwrap().is_none());
            }
        }
    }

    #[test]
    fn distinguished_imprimitive_counts() {
        // two genera for prime-power d, one for composite d
        for d in [2u64, 3, 4, 5, 7, 8] {
            assert_eq!(
                count_imprimitive(d, 1, 2, Flavor::Distinguished).unwrap(),
                2,
                "d = {d}"
            );
        }
        assert_eq!(
            count_imprimitive(6, 1, 2, Flavor::Distinguished).unwrap(),
            1
        );
        assert_eq!(
            count_imprimitive(6, 1, 3, Flavor::Distinguished).unwrap(),
            1
        );
        // G(e,e,r), r > 2: single genus
        assert_eq!(
            count_imprimitive(4, 4, 3, Flavor::Distinguished).unwrap(),
            1
        );
        assert_eq!(
            count_imprimitive(5, 5, 3, Flavor::Distinguished).unwrap(),
            1
        );
    }

    #[test]
    fn rank_two_special_counts() {
        // 3e' + 1 distinguished genera for the split rank-two cases
        assert_eq!(
            count_imprimitive(4, 2, 2, Flavor::Distinguished).unwrap(),
            7
        );
        assert_eq!(
            count_imprimitive(6, 2, 2, Flavor::Distinguished).unwrap(),
            4
        );
    }

    #[test]
    fn dihedral_real_counts() {
        assert_eq!(classify_dihedral_real(5).unwrap().len(), 1);
        assert_eq!(classify_dihedral_real(8).unwrap().len(), 2);
        assert_eq!(classify_dihedral_real(12).unwrap().len(), 1);
        assert_eq!(classify_dihedral_real(6).unwrap().len(), 2);
        assert_eq!(classify_dihedral_real(7).unwrap().len(), 1);
    }

    #[test]
    fn exceptional_counts() {
        assert_eq!(count_exceptional("G5").unwrap(), 2);
        assert_eq!(count_exceptional("G6").unwrap(), 2);
        assert_eq!(count_exceptional("G7").unwrap(), 4);
        assert_eq!(count_exceptional("G13").unwrap(), 3);
        assert_eq!(count_exceptional("G15").unwrap(), 3);
        assert_eq!(count_exceptional("G26").unwrap(), 2);
        assert_eq!(count_exceptional("G28").unwrap(), 2);
        assert_eq!(count_exceptional("G4").unwrap(), 1);
        assert_eq!(count_exceptional("G14").unwrap(), 1);
        assert_eq!(count_exceptional("G23").unwrap(), 1);
    }

    #[test]
    fn b2_reports() {
        // over Q: no square root, two genera
        let q = full_ring(1);
        let rep = b2_special(&q).unwrap();
        assert!(rep.sqrt_of_two.is_none());
        assert_eq!(rep.genera.len(), 2);
        assert!(rep.automorphism_squares_to_two);
        // over Q(i): square root (1+i), three genera, swap stability
        let qi = full_ring(4);
        let rep = b2_special(&qi).unwrap();
        assert!(rep.sqrt_of_two.is_some());
        assert_eq!(rep.genera.len(), 3);
        assert!(rep.automorphism_squares_to_two);
        assert!(rep.automorphism_preserves_genus);
        // over Q(sqrt 2): the square root is (sqrt 2)
        let r2 = make_ring(8, &[1, 7]).unwrap();
        let rep = b2_special(&r2).unwrap();
        let a = rep.sqrt_of_two.unwrap();
        let s = CycNum::zeta(8).add(&CycNum::root_of_unity(8, 7));
        assert_eq!(a, FracIdeal::from_element(&r2, &s).unwrap());
        assert!(rep.automorphism_preserves_genus);
    }

    #[test]
    fn representatives_verify_and_distinguish() {
        let genera = classify_imprimitive(4, 2, 2, Flavor::Distinguished).unwrap();
        assert_eq!(genera.len(), 7);
        let reps: Vec<RootSystem> = genera.iter().map(|g| g.representative().unwrap()).collect();
        for r in &reps {
            assert!(r.verify_axioms().unwrap().passed());
            assert!(r.is_reduced().unwrap());
        }
        for i in 0..reps.len() {
            for j in (i + 1)..reps.len() {
                assert!(
                    reps[i].same_genus(&reps[j]).unwrap().is_none(),
                    "{i} vs {j}"
                );
            }
        }
    }
}
