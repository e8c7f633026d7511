//! Geometry of real reflection groups: admissible preorders, the unique
//! family of simple reflections, bounded Coxeter/length verification, highest
//! half-lines, and simple root bases.
//!
//! All order comparisons are exact: elements of the real field are
//! sign-determined by interval arithmetic (see [`crate::realsign`]); no
//! floating point enters.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::cyclo::{CycNum, RingSpec};
use crate::cycmat::{self, CycMat, CycVec};
use crate::error::Error;
use crate::realsign;
use crate::refgroups::{self, GroupSpec, Reflection};
use crate::roots::RootSystem;
use crate::Result;

pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

/// A finite real reflection group with its elements, reflections and a
/// positive definite invariant form.
pub struct RealGroup {
    pub name: String,
    pub ring: RingSpec,
    pub dim: usize,
    pub generators: Vec<Reflection>,
    pub elements: Vec<CycMat>,
    pub reflections: Vec<Reflection>,
    pub gram: CycMat,
}

#[derive(Debug, Clone)]
pub enum RealGroupKind {
    /// Dihedral of order `2e` over the real subfield.
    Dihedral { e: u64 },
    /// The symmetric group on `rank + 1` letters, essential realization.
    TypeA { rank: usize },
    /// The hyperoctahedral group of rank `rank` (signed permutations).
    TypeB { rank: usize },
    /// A real exceptional group from the embedded tables (G23, G28, G30).
    Exceptional { name: String },
}

impl RealGroup {
    pub fn build(kind: &RealGroupKind, cap: usize) -> Result<RealGroup> {
        let (name, spec) = match kind {
            RealGroupKind::Dihedral { e } => {
                (format!("G({e},{e},2) real"), GroupSpec::dihedral_real(*e)?)
            }
            RealGroupKind::TypeB { rank } => {
                (format!("B{rank}"), GroupSpec::imprimitive(2, 1, *rank)?)
            }
            RealGroupKind::Exceptional { name } => {
                let spec = GroupSpec::exceptional(name)?;
                if !spec.ring.is_real() {
                    return Err(Error::UnsupportedGroup(format!(
                        "{name} is not defined over a real field"
                    )));
                }
                (name.clone(), spec)
            }
            RealGroupKind::TypeA { rank } => {
                // essential realization from the type-A Cartan matrix
                let ring = crate::cyclo::full_ring(1);
                let n = 1;
                let mut gens = Vec::new();
                for t in 0..*rank {
                    let x: CycVec = (0..*rank)
                        .map(|i| {
                            if i == t {
                                CycNum::one(n)
                            } else {
                                CycNum::zero(n)
                            }
                        })
                        .collect();
                    let y: CycVec = (0..*rank)
                        .map(|j| {
                            let c: i64 = if j == t {
                                2
                            } else if j + 1 == t || j == t + 1 {
                                -1
                            } else {
                                0
                            };
                            CycNum::from_integer(c)
                        })
                        .collect();
                    gens.push(refgroups::reflection_from_triple(
                        &x,
                        &y,
                        &CycNum::from_integer(-1),
                        n,
                    )?);
                }
                return RealGroup::from_generators(format!("A{rank}"), &ring, *rank, gens, cap);
            }
        };
        let gens = spec.standard_generators()?;
        RealGroup::from_generators(name, &spec.ring, spec.dim, gens, cap)
    }

    fn from_generators(
        name: String,
        ring: &RingSpec,
        dim: usize,
        generators: Vec<Reflection>,
        cap: usize,
    ) -> Result<RealGroup> {
        let n = ring.conductor();
        // BFS enumeration
        let mut seen: HashMap<Vec<u8>, usize> = HashMap::new();
        let id = cycmat::identity(dim, n);
        seen.insert(cycmat::canonical_key(&id), 0);
        let mut elements = vec![id];
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for g in &generators {
                let prod = cycmat::mat_mul(&g.matrix, &elements[i]);
                let key = cycmat::canonical_key(&prod);
                if !seen.contains_key(&key) {
                    seen.insert(key, elements.len());
                    frontier.push(elements.len());
                    elements.push(prod);
                    if elements.len() > cap {
                        return Err(Error::CapExceeded(format!(
                            "group enumeration exceeded {cap}"
                        )));
                    }
                }
            }
        }
        let mut reflections = Vec::new();
        for m in &elements {
            if let Some(r) = refgroups::detect_reflection(m, n) {
                reflections.push(r);
            }
        }
        reflections.sort_by_key(|r| r.key());
        let gram = refgroups::averaged_invariant_form(&elements, dim, n)?;
        Ok(RealGroup {
            name,
            ring: ring.clone(),
            dim,
            generators,
            elements,
            reflections,
            gram,
        })
    }

    /// The invariant symmetric form `(v | w)`.
    pub fn form(&self, v: &CycVec, w: &CycVec) -> CycNum {
        let n = self.ring.conductor();
        let mut acc = CycNum::zero(n);
        for i in 0..self.dim {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if !w[j].is_zero() && !self.gram[i][j].is_zero() {
                    acc = acc.add(&v[i].mul(&self.gram[i][j]).mul(&w[j].conj()));
                }
            }
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Admissible preorders and half-line families
// ---------------------------------------------------------------------------

/// A family of positive half-lines determined by an admissible vector `v0`:
/// per reflection, the direction of its line with `(x | v0) > 0`.
pub struct HalfLineFamily<'g> {
    pub group: &'g RealGroup,
    pub seed: u64,
    pub v0: CycVec,
    pub positive_dirs: Vec<CycVec>,
}

fn lcg_next(state: &mut u64) -> u64 {
    *state = state
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407);
    *state >> 33
}

impl<'g> HalfLineFamily<'g> {
    /// Draw a deterministic admissible `v0` from the seed, redrawing on
    /// hyperplane collisions.
    pub fn new(group: &'g RealGroup, seed: u64) -> Result<HalfLineFamily<'g>> {
        let n = group.ring.conductor();
        let mut state = seed.wrapping_add(0x9e3779b97f4a7c15);
        'draw: for _ in 0..256 {
            let v0: CycVec = (0..group.dim)
                .map(|_| {
                    let num = (lcg_next(&mut state) % 41) as i64 - 20;
                    let den = (lcg_next(&mut state) % 7) as i64 + 1;
                    CycNum::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
                        .lift_to(n)
                })
                .collect();
            // admissibility: v0 avoids every reflecting hyperplane, and its
            // form-image avoids every dual hyperplane
            let mut dirs = Vec::with_capacity(group.reflections.len());
            for s in &group.reflections {
                // v0 not in H_s: <v0, y_s> != 0
                let dual_pair = cycmat::pairing(&v0, &s.dual_line);
                if dual_pair.is_zero() {
                    continue 'draw;
                }
                let val = group.form(&s.line, &v0);
                if val.is_zero() {
                    continue 'draw;
                }
                match realsign::sign(&val)? {
                    Ordering::Greater => dirs.push(s.line.clone()),
                    Ordering::Less => dirs.push(s.line.iter().map(|c| c.neg()).collect()),
                    Ordering::Equal => continue 'draw,
                }
            }
            return Ok(HalfLineFamily {
                group,
                seed,
                v0,
                positive_dirs: dirs,
            });
        }
        Err(Error::Degenerate(
            "no admissible vector found (degenerate group data?)".into(),
        ))
    }

    /// Positivity of an arbitrary vector in the preorder.
    pub fn is_positive(&self, v: &CycVec) -> Result<bool> {
        let val = self.group.form(v, &self.v0);
        Ok(realsign::sign(&val)? == Ordering::Greater)
    }
}

// ---------------------------------------------------------------------------
// Exact cone membership (phase-1 simplex over the real field)
// ---------------------------------------------------------------------------

/// Does `target` lie in the cone of nonnegative combinations of `dirs`?
/// Exact phase-1 simplex with Bland's rule; all comparisons go through the
/// interval sign oracle.
pub fn cone_member(dirs: &[&CycVec], target: &CycVec, conductor: u64) -> Result<bool> {
    let m = target.len();
    let n = dirs.len();
    if n == 0 {
        return Ok(target.iter().all(|c| c.is_zero()));
    }
    // rows: A lambda = b with b >= 0 after sign flips
    let mut a: Vec<Vec<CycNum>> = Vec::with_capacity(m);
    let mut b: Vec<CycNum> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<CycNum> = dirs.iter().map(|d| d[i].lift_to(conductor)).collect();
        let mut rhs = target[i].lift_to(conductor);
        if realsign::sign(&rhs)? == Ordering::Less {
            for v in row.iter_mut() {
                *v = v.neg();
            }
            rhs = rhs.neg();
        }
        a.push(row);
        b.push(rhs);
    }
    // artificial columns n..n+m; basis starts as the artificials
    let total = n + m;
    for (i, row) in a.iter_mut().enumerate() {
        for j in 0..m {
            row.push(if i == j {
                CycNum::one(conductor)
            } else {
                CycNum::zero(conductor)
            });
        }
    }
    let mut basis: Vec<usize> = (n..total).collect();
    // objective: minimize sum of artificials; reduced-cost row = -sum of
    // constraint rows on non-artificial columns
    let mut obj: Vec<CycNum> = vec![CycNum::zero(conductor); total];
    let mut obj_val = CycNum::zero(conductor);
    for i in 0..m {
        for j in 0..n {
            obj[j] = obj[j].sub(&a[i][j]);
        }
        obj_val = obj_val.sub(&b[i]);
    }
    let max_iter = 64 * (total + 1);
    for _ in 0..max_iter {
        // entering: smallest index with negative reduced cost
        let mut entering = None;
        for (j, c) in obj.iter().enumerate() {
            if realsign::sign(c)? == Ordering::Less {
                entering = Some(j);
                break;
            }
        }
        let Some(e) = entering else {
            // optimal: feasible iff the objective value is zero
            return Ok(obj_val.is_zero());
        };
        // leaving: Bland — smallest basis index among minimal ratios
        let mut best: Option<(usize, CycNum)> = None;
        for i in 0..m {
            if realsign::sign(&a[i][e])? == Ordering::Greater {
                let ratio = b[i].div(&a[i][e])?;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => match realsign::compare(&ratio, &br)? {
                        Ordering::Less => Some((i, ratio)),
                        Ordering::Equal if basis[i] < basis[bi] => Some((i, ratio)),
                        _ => Some((bi, br)),
                    },
                };
            }
        }
        let Some((pivot_row, _)) = best else {
            // unbounded phase-1 cannot happen; treat as infeasible
            return Ok(false);
        };
        // pivot
        let inv = a[pivot_row][e].inv()?;
        for j in 0..total {
            a[pivot_row][j] = a[pivot_row][j].mul(&inv);
        }
        b[pivot_row] = b[pivot_row].mul(&inv);
        for i in 0..m {
            if i != pivot_row && !a[i][e].is_zero() {
                let f = a[i][e].clone();
                for j in 0..total {
                    a[i][j] = a[i][j].sub(&f.mul(&a[pivot_row][j]));
                }
                b[i] = b[i].sub(&f.mul(&b[pivot_row]));
            }
        }
        if !obj[e].is_zero() {
            let f = obj[e].clone();
            for j in 0..total {
                obj[j] = obj[j].sub(&f.mul(&a[pivot_row][j]));
            }
            obj_val = obj_val.sub(&f.mul(&b[pivot_row]));
        }
        basis[pivot_row] = e;
    }
    Err(Error::Degenerate("simplex iteration cap reached".into()))
}

// ---------------------------------------------------------------------------
// Simple reflections
// ---------------------------------------------------------------------------

/// The unique family of simple reflections for the preorder: the reflections
/// whose positive direction is extremal in the cone of all positive
/// directions. Verified to satisfy the direct-sum and nonpositive-product
/// conditions before returning.
pub fn simple_reflections(family: &HalfLineFamily) -> Result<Vec<usize>> {
    let n = family.group.ring.conductor();
    let dirs = &family.positive_dirs;
    let mut simple = Vec::new();
    for (i, d) in dirs.iter().enumerate() {
        let others: Vec<&CycVec> = dirs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v)
            .collect();
        if !cone_member(&others, d, n)? {
            simple.push(i);
        }
    }
    // (A): the simple lines are a basis of V
    let mat: CycMat = simple.iter().map(|&i| dirs[i].clone()).collect();
    if simple.len() != family.group.dim || cycmat::rank(&mat) != family.group.dim {
        return Err(Error::Verification(
            "simple directions do not form a basis".into(),
        ));
    }
    // (B): every positive direction is in the cone of the simple ones
    let simple_dirs: Vec<&CycVec> = simple.iter().map(|&i| &dirs[i]).collect();
    for d in dirs {
        if !cone_member(&simple_dirs, d, n)? {
            return Err(Error::Verification(
                "a positive direction escapes the simple cone".into(),
            ));
        }
    }
    // pairwise nonpositive products
    for (ai, &i) in simple.iter().enumerate() {
        for &j in simple.iter().skip(ai + 1) {
            let p = family.group.form(&dirs[i], &dirs[j]);
            if realsign::sign(&p)? == Ordering::Greater {
                return Err(Error::Verification(
                    "simple directions with positive product".into(),
                ));
            }
        }
    }
    Ok(simple)
}

/// Greedy cross-check: prune reflections while the remainder still spans the
/// positive cone; the fixed point must be the simple family.
pub fn simple_by_greedy(family: &HalfLineFamily) -> Result<Vec<usize>> {
    let n = family.group.ring.conductor();
    let dirs = &family.positive_dirs;
    let mut kept: Vec<usize> = (0..dirs.len()).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for pos in 0..kept.len() {
            let candidate = kept[pos];
            let rest: Vec<&CycVec> = kept
                .iter()
                .filter(|&&k| k != candidate)
                .map(|&k| &dirs[k])
                .collect();
            // removal is allowed when every direction stays inside the cone
            let mut ok = true;
            for d in dirs {
                if !cone_member(&rest, d, n)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                kept.remove(pos);
                changed = true;
                break;
            }
        }
    }
    Ok(kept)
}

// ---------------------------------------------------------------------------
// Coxeter verification and highest half-lines
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct CoxeterReport {
    pub simple_count: usize,
    /// Orders of the pairwise products of simple reflections.
    pub coxeter_matrix: Vec<Vec<u64>>,
    pub words_checked: usize,
    pub length_condition_holds: bool,
}

/// Check, for all words up to the cap, that `l(g sigma) = l(g) + 1` exactly
/// when `g` keeps the positive half-line of `sigma` positive.
pub fn verify_coxeter(
    family: &HalfLineFamily,
    simple: &[usize],
    word_cap: usize,
) -> Result<CoxeterReport> {
    let group = family.group;
    let n = group.ring.conductor();
    let gens: Vec<&Reflection> = simple
        .iter()
        .map(|&i| {
            group
                .reflections
                .iter()
                .find(|s| {
                    cycmat::vec_key(&cycmat::normalize_line(&family.positive_dirs[i]))
                        == cycmat::vec_key(&s.line)
                })
                .expect("simple reflection")
        })
        .collect();
    // Coxeter matrix
    let k = gens.len();
    let mut cox = vec![vec![0u64; k]; k];
    for i in 0..k {
        for j in 0..k {
            let prod = cycmat::mat_mul(&gens[i].matrix, &gens[j].matrix);
            let mut m = prod.clone();
            let mut order = 1u64;
            while !cycmat::is_identity(&m) {
                m = cycmat::mat_mul(&m, &prod);
                order += 1;
                if order > 10_000 {
                    return Err(Error::Degenerate(
                        "product of simple reflections has runaway order".into(),
                    ));
                }
            }
            cox[i][j] = order;
        }
    }
    // BFS lengths
    let mut length: BTreeMap<Vec<u8>, (usize, CycMat)> = BTreeMap::new();
    let id = cycmat::identity(group.dim, n);
    length.insert(cycmat::canonical_key(&id), (0, id));
    let mut frontier: Vec<Vec<u8>> = vec![cycmat::canonical_key(&cycmat::identity(group.dim, n))];
    for l in 0..word_cap {
        let mut next = Vec::new();
        for key in &frontier {
            let g = length[key].1.clone();
            for s in &gens {
                let prod = cycmat::mat_mul(&g, &s.matrix);
                let pkey = cycmat::canonical_key(&prod);
                if !length.contains_key(&pkey) {
                    length.insert(pkey.clone(), (l + 1, prod));
                    next.push(pkey);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    // length condition
    let mut checked = 0usize;
    let snapshot: Vec<(usize, CycMat)> = length.values().cloned().collect();
    for (lg, g) in &snapshot {
        for (si, s) in gens.iter().enumerate() {
            let prod = cycmat::mat_mul(g, &s.matrix);
            let pkey = cycmat::canonical_key(&prod);
            let Some((lgs, _)) = length.get(&pkey) else {
                continue; // beyond the cap
            };
            if *lg + 1 < word_cap || *lgs <= word_cap {
                let dir = &family.positive_dirs[simple[si]];
                let img = cycmat::mat_vec(g, dir);
                let positive = family.is_positive(&img)?;
                let ascent = *lgs == *lg + 1;
                if *lgs > word_cap || (*lg + 1 == word_cap && !ascent) {
                    continue;
                }
                if positive != ascent {
                    return Ok(CoxeterReport {
                        simple_count: k,
                        coxeter_matrix: cox,
                        words_checked: checked,
                        length_condition_holds: false,
                    });
                }
                checked += 1;
            }
        }
    }
    Ok(CoxeterReport {
        simple_count: k,
        coxeter_matrix: cox,
        words_checked: checked,
        length_condition_holds: true,
    })
}

/// For each conjugacy class of reflections, the indices of the half-lines
/// pairing nonnegatively with every positive half-line; there must be
/// exactly one per class.
pub fn highest_half_lines(family: &HalfLineFamily) -> Result<Vec<(usize, Vec<usize>)>> {
    let group = family.group;
    let classes = refgroups::reflection_classes(&group.reflections, &group.generators);
    let mut out = Vec::new();
    for class in &classes {
        let mut highest = Vec::new();
        for member in class {
            let idx = group
                .reflections
                .iter()
                .position(|s| s.key() == member.key())
                .unwrap();
            let dir = &family.positive_dirs[idx];
            let mut ok = true;
            for other in &family.positive_dirs {
                let p = group.form(dir, other);
                if realsign::sign(&p)? == Ordering::Less {
                    ok = false;
                    break;
                }
            }
            if ok {
                highest.push(idx);
            }
        }
        let repr = group
            .reflections
            .iter()
            .position(|s| s.key() == class[0].key())
            .unwrap();
        out.push((repr, highest));
    }
    Ok(out)
}

/// Simple root basis of a reduced system over a real field: the roots
/// attached to the simple reflections, verified to be a root lattice basis,
/// with every positive root direction in their nonnegative span.
pub fn simple_root_basis(
    system: &RootSystem,
    family: &HalfLineFamily,
    simple: &[usize],
) -> Result<Vec<crate::roots::Root>> {
    let n = family.group.ring.conductor();
    let mut chosen = Vec::new();
    for &i in simple {
        let dir = cycmat::normalize_line(&family.positive_dirs[i]);
        let root = system
            .roots()
            .iter()
            .find(|r| cycmat::vec_key(&r.vec_v) == cycmat::vec_key(&dir))
            .ok_or_else(|| Error::Degenerate("no root on a simple line".into()))?;
        chosen.push(root.clone());
    }
    // lattice check: sum of the chosen I_r equals Q_R and ranks add up
    let q = system.root_lattice()?;
    let sub = RootSystem::new(system.ring(), system.dim(), chosen.clone());
    let qs = sub.root_lattice()?;
    if q != qs {
        return Err(Error::Verification(
            "simple roots do not span the root lattice".into(),
        ));
    }
    // direct sum: Z-rank of the sum equals the sum of the summand ranks
    let dk = system.ring().rank();
    if qs.rank() != dk * system.dim() {
        return Err(Error::Verification(
            "root lattice is not of full rank".into(),
        ));
    }
    // positivity: every positive direction in the cone of the simple ones
    let simple_dirs: Vec<&CycVec> = simple.iter().map(|&i| &family.positive_dirs[i]).collect();
    for d in &family.positive_dirs {
        if !cone_member(&simple_dirs, d, n)? {
            return Err(Error::Verification(
                "a positive root direction escapes the simple cone".into(),
            ));
        }
    }
    Ok(chosen)
}

/// Are two simple families conjugate under the group?
pub fn families_conjugate(
    group: &RealGroup,
    fam1: &HalfLineFamily,
    simple1: &[usize],
    fam2: &HalfLineFamily,
    simple2: &[usize],
) -> Result<bool> {
    let keys2: std::collections::BTreeSet<Vec<u8>> = simple2
        .iter()
        .map(|&i| cycmat::vec_key(&cycmat::normalize_line(&fam2.positive_dirs[i])))
        .collect();
    for g in &group.elements {
        let gi = cycmat::inverse(g)?;
        let mut all = true;
        for &i in simple1 {
            let line = cycmat::normalize_line(&fam1.positive_dirs[i]);
            // conjugated reflection line = g(line)
            let img = cycmat::normalize_line(&cycmat::mat_vec(g, &line));
            if !keys2.contains(&cycmat::vec_key(&img)) {
                all = false;
                break;
            }
        }
        let _ = gi;
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family_of(group: &RealGroup, seed: u64) -> HalfLineFamily<'_> {
        HalfLineFamily::new(group, seed).unwrap()
    }

    #[test]
    fn dihedral_simple_systems() {
        for e in [3u64, 4, 5, 6, 7] {
            let g = RealGroup::build(&RealGroupKind::Dihedral { e }, 10_000).unwrap();
            assert_eq!(g.reflections.len() as u64, e);
            let fam = family_of(&g, 7);
            let simple = simple_reflections(&fam).unwrap();
            assert_eq!(simple.len(), 2, "e = {e}");
            // greedy removal agrees
            let mut greedy = simple_by_greedy(&fam).unwrap();
            greedy.sort_unstable();
            assert_eq!(greedy, simple, "e = {e}");
            // the product of the two simple reflections has order e
            let rep = verify_coxeter(&fam, &simple, 6).unwrap();
            assert_eq!(rep.coxeter_matrix[0][1], e);
            assert!(rep.length_condition_holds);
        }
    }

    #[test]
    fn symmetric_group_simples() {
        let g = RealGroup::build(&RealGroupKind::TypeA { rank: 2 }, 1000).unwrap();
        assert_eq!(g.elements.len(), 6);
        assert_eq!(g.reflections.len(), 3);
        let fam = family_of(&g, 3);
        let simple = simple_reflections(&fam).unwrap();
        assert_eq!(simple.len(), 2);
    }

    #[test]
    fn b2_length_condition() {
        let g = RealGroup::build(&RealGroupKind::TypeB { rank: 2 }, 1000).unwrap();
        let fam = family_of(&g, 11);
        let simple = simple_reflections(&fam).unwrap();
        let rep = verify_coxeter(&fam, &simple, 8).unwrap();
        assert!(rep.length_condition_holds);
        assert_eq!(rep.coxeter_matrix[0][1], 4);
    }

    #[test]
    fn families_from_different_seeds_are_conjugate() {
        let g = RealGroup::build(&RealGroupKind::Dihedral { e: 5 }, 1000).unwrap();
        let f1 = family_of(&g, 1);
        let f2 = family_of(&g, 2);
        let s1 = simple_reflections(&f1).unwrap();
        let s2 = simple_reflections(&f2).unwrap();
        assert!(families_conjugate(&g, &f1, &s1, &f2, &s2).unwrap());
    }

    #[test]
    fn highest_half_line_counts() {
        // odd dihedral: one class, one highest line; even: two classes
        let g = RealGroup::build(&RealGroupKind::Dihedral { e: 5 }, 1000).unwrap();
        let fam = family_of(&g, 5);
        let hl = highest_half_lines(&fam).unwrap();
        assert_eq!(hl.len(), 1);
        assert_eq!(hl[0].1.len(), 1);
        let g = RealGroup::build(&RealGroupKind::Dihedral { e: 6 }, 1000).unwrap();
        let fam = family_of(&g, 5);
        let hl = highest_half_lines(&fam).unwrap();
        assert_eq!(hl.len(), 2);
        for (_, h) in &hl {
            assert_eq!(h.len(), 1);
        }
    }

    #[test]
    fn number_of_positive_half_lines() {
        let g = RealGroup::build(&RealGroupKind::TypeA { rank: 3 }, 1000).unwrap();
        let fam = family_of(&g, 9);
        assert_eq!(fam.positive_dirs.len(), g.reflections.len());
    }

    #[test]
    fn simple_root_bases() {
        // the two generator roots of the odd dihedral system form a root
        // basis attached to the simple family
        let e = 5;
        let g = RealGroup::build(&RealGroupKind::Dihedral { e }, 1000).unwrap();
        let fam = family_of(&g, 1);
        let simple = simple_reflections(&fam).unwrap();
        let sys = crate::roots::dihedral_real_system(e).unwrap();
        let basis = simple_root_basis(&sys, &fam, &simple).unwrap();
        assert_eq!(basis.len(), 2);
        // type A: simple roots span with positive cone containing all roots
        let g = RealGroup::build(&RealGroupKind::TypeA { rank: 2 }, 1000).unwrap();
        let fam = family_of(&g, 2);
        let simple = simple_reflections(&fam).unwrap();
        let group = crate::refgroups::GroupSpec::imprimitive(1, 1, 3).unwrap();
        let sys = crate::roots::standard_imprimitive_system(
            &group,
            crate::roots::Flavor::CompleteReduced,
        )
        .unwrap();
        let basis = simple_root_basis(&sys, &fam, &simple).unwrap();
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn simple_reflection_permutes_other_positives() {
        // a simple reflection makes exactly its own half-line negative
        let g = RealGroup::build(&RealGroupKind::Dihedral { e: 7 }, 1000).unwrap();
        let fam = family_of(&g, 4);
        let simple = simple_reflections(&fam).unwrap();
        for &si in &simple {
            let s = &g.reflections[si];
            let mut negated = 0;
            for (j, dir) in fam.positive_dirs.iter().enumerate() {
                let img = cycmat::mat_vec(&s.matrix, dir);
                if !fam.is_positive(&img).unwrap() {
                    negated += 1;
                    assert_eq!(j, si, "only the own half-line may turn negative");
                }
            }
            assert_eq!(negated, 1);
        }
    }

    #[test]
    fn cone_membership_basics() {
        let e1 = vec![CycNum::from_integer(1), CycNum::from_integer(0)];
        let e2 = vec![CycNum::from_integer(0), CycNum::from_integer(1)];
        let sum = vec![CycNum::from_integer(2), CycNum::from_integer(3)];
        let neg = vec![CycNum::from_integer(-1), CycNum::from_integer(1)];
        assert!(cone_member(&[&e1, &e2], &sum, 1).unwrap());
        assert!(!cone_member(&[&e1, &e2], &neg, 1).unwrap());
        assert!(cone_member(&[&e1], &e1, 1).unwrap());
        assert!(!cone_member(&[], &e1, 1).unwrap());
    }
}
