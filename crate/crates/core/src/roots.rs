//! Roots as (ideal, vector) pairs and finite root systems: axioms, orbits,
//! completion/reduction, lattices, Cartan matrices, connection indices, and
//! genus comparison.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cyclo::{CycNum, RingSpec};
use crate::cycmat::{self, CycMat, CycVec};
use crate::error::Error;
use crate::ideals::FracIdeal;
use crate::linalg::{self, Lattice, QMat};
use crate::refgroups::{self, GroupSpec, Reflection};
use crate::Result;

/// Default cap for root-orbit closures.
pub const DEFAULT_ORBIT_CAP: usize = 100_000;
/// Default candidate budget for principal-generator searches.
pub const DEFAULT_WITNESS_BUDGET: usize = 50_000;

/// A root `(I, J, zeta)`: `I = ideal_i * vec_v` and `J = ideal_j * vec_w` are
/// rank-one modules in `V` and `W` with `<I, J> = (1 - zeta)`; the vectors
/// are scaled so their first nonzero coordinate is 1, the scaling being
/// absorbed into the ideals.
#[derive(Clone)]
pub struct Root {
    pub ideal_i: FracIdeal,
    pub vec_v: CycVec,
    pub ideal_j: FracIdeal,
    pub vec_w: CycVec,
    pub zeta: CycNum,
}

impl std::fmt::Debug for Root {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Root(I = {:?} * {:?}, zeta = {})",
            self.ideal_i,
            self.vec_v
                .iter()
                .map(|c| format!("{c}"))
                .collect::<Vec<_>>(),
            self.zeta
        )
    }
}

impl PartialEq for Root {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}
impl Eq for Root {}

impl Root {
    /// Construct the root with `I = scale * v` along the line of `v`, dual
    /// direction `w`, and eigenvalue `zeta`; `J` is determined by the pairing
    /// constraint.
    pub fn new(
        ring: &RingSpec,
        scale: &FracIdeal,
        v: &CycVec,
        w: &CycVec,
        zeta: &CycNum,
    ) -> Result<Root> {
        let n = ring.conductor();
        let zeta = ring.embed(zeta)?;
        if zeta.is_one() || zeta.is_zero() {
            return Err(Error::Degenerate(
                "zeta must be a root of unity != 1".into(),
            ));
        }
        let v = cycmat::embed_vec(v, n);
        let w = cycmat::embed_vec(w, n);
        // canonicalize directions, absorbing scalars into the ideals
        let vc = cycmat::normalize_line(&v);
        let wc = cycmat::normalize_line(&w);
        let lam = v
            .iter()
            .zip(&vc)
            .find(|(a, _)| !a.is_zero())
            .map(|(a, b)| a.div(b).expect("nonzero"))
            .ok_or_else(|| Error::Degenerate("zero root vector".into()))?;
        let ideal_i = scale.mul_element(&lam)?;
        let pair = cycmat::pairing(&vc, &wc);
        if pair.is_zero() {
            return Err(Error::Degenerate(
                "root line and dual line are orthogonal".into(),
            ));
        }
        // <I, J> = ideal_i * conj(ideal_j) * (pair) = (1 - zeta)
        let one_minus = CycNum::one(n).sub(&zeta);
        let target = one_minus.div(&pair)?;
        let ideal_j = ideal_i.inv().mul_element(&target)?.conj();
        Ok(Root {
            ideal_i,
            vec_v: vc,
            ideal_j,
            vec_w: wc,
            zeta,
        })
    }

    pub fn from_reflection(ring: &RingSpec, refl: &Reflection, scale: &FracIdeal) -> Result<Root> {
        Root::new(ring, scale, &refl.line, &refl.dual_line, &refl.zeta)
    }

    pub fn ring(&self) -> &RingSpec {
        self.ideal_i.ring()
    }

    pub fn dim(&self) -> usize {
        self.vec_v.len()
    }

    /// The reflection determined by the root.
    pub fn reflection(&self) -> Result<Reflection> {
        refgroups::reflection_from_triple(
            &self.vec_v,
            &self.vec_w,
            &self.zeta,
            self.ring().conductor(),
        )
    }

    /// The dual root `(J, I, zeta)` on the swapped spaces.
    pub fn dual(&self) -> Root {
        Root {
            ideal_i: self.ideal_j.clone(),
            vec_v: self.vec_w.clone(),
            ideal_j: self.ideal_i.clone(),
            vec_w: self.vec_v.clone(),
            zeta: self.zeta.clone(),
        }
    }

    /// `a . r = (a I, a^{-*} J, zeta)`.
    pub fn rescale(&self, a: &FracIdeal) -> Result<Root> {
        Ok(Root {
            ideal_i: self.ideal_i.mul(a)?,
            vec_v: self.vec_v.clone(),
            ideal_j: self.ideal_j.mul(&a.inv_conj())?,
            vec_w: self.vec_w.clone(),
            zeta: self.zeta.clone(),
        })
    }

    /// The power root `r^i = ((1-zeta^i)/(1-zeta) I, J, zeta^i)`, defining
    /// the `i`-th power of the reflection.
    pub fn power(&self, i: u64) -> Result<Root> {
        let n = self.ring().conductor();
        let zi = self.zeta.pow(i as i64)?;
        if zi.is_one() {
            return Err(Error::Degenerate("power root with zeta^i = 1".into()));
        }
        let num = CycNum::one(n).sub(&zi);
        let den = CycNum::one(n).sub(&self.zeta);
        let factor = num.div(&den)?;
        Ok(Root {
            ideal_i: self.ideal_i.mul_element(&factor)?,
            vec_v: self.vec_v.clone(),
            ideal_j: self.ideal_j.clone(),
            vec_w: self.vec_w.clone(),
            zeta: zi,
        })
    }

    /// Left action `g . r = (g(I), g^v(J), zeta)`.
    pub fn act(&self, g: &CycMat, g_dual: &CycMat) -> Result<Root> {
        let v = cycmat::mat_vec(g, &self.vec_v);
        let w = cycmat::mat_vec(g_dual, &self.vec_w);
        let vc = cycmat::normalize_line(&v);
        let wc = cycmat::normalize_line(&w);
        let lam = v
            .iter()
            .zip(&vc)
            .find(|(a, _)| !a.is_zero())
            .map(|(a, b)| a.div(b).expect("nonzero"))
            .unwrap();
        let mu = w
            .iter()
            .zip(&wc)
            .find(|(a, _)| !a.is_zero())
            .map(|(a, b)| a.div(b).expect("nonzero"))
            .unwrap();
        Ok(Root {
            ideal_i: self.ideal_i.mul_element(&lam)?,
            vec_v: vc,
            ideal_j: self.ideal_j.mul_element(&mu)?,
            vec_w: wc,
            zeta: self.zeta.clone(),
        })
    }

    pub fn key(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend(format!("{:?};{:?};", self.ideal_i.hnf_rows(), self.ideal_i.den()).into_bytes());
        out.extend(cycmat::vec_key(&self.vec_v));
        out.extend(format!("{:?};{:?};", self.ideal_j.hnf_rows(), self.ideal_j.den()).into_bytes());
        out.extend(cycmat::vec_key(&self.vec_w));
        out.extend(self.zeta.canonical_key());
        out
    }

    /// Verify the defining constraint `<I, J> = (1 - zeta)`.
    pub fn check_invariant(&self) -> Result<()> {
        let n = self.ring().conductor();
        let pair = cycmat::pairing(&self.vec_v, &self.vec_w);
        let prod = self.ideal_i.mul(&self.ideal_j.conj())?.mul_element(&pair)?;
        let target = FracIdeal::from_element(self.ring(), &CycNum::one(n).sub(&self.zeta))?;
        if prod == target {
            Ok(())
        } else {
            Err(Error::Verification(
                "root pairing constraint violated".into(),
            ))
        }
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Side<'a> {
            ideal: &'a FracIdeal,
            vec: &'a [CycNum],
        }
        #[derive(Serialize)]
        struct Zeta {
            order: u64,
            exponent: u64,
        }
        let (order, exponent) = self
            .zeta
            .as_root_of_unity()
            .ok_or_else(|| serde::ser::Error::custom("zeta is not a root of unity"))?;
        let mut st = serializer.serialize_struct("Root", 3)?;
        st.serialize_field(
            "I",
            &Side {
                ideal: &self.ideal_i,
                vec: &self.vec_v,
            },
        )?;
        st.serialize_field(
            "J",
            &Side {
                ideal: &self.ideal_j,
                vec: &self.vec_w,
            },
        )?;
        st.serialize_field("zeta", &Zeta { order, exponent })?;
        st.end()
    }
}

/// The pairing `n(r1, r2) = <I_1, J_2>`; `None` encodes the zero ideal
/// (orthogonal roots).
pub fn root_pairing(r1: &Root, r2: &Root) -> Result<Option<FracIdeal>> {
    let pair = cycmat::pairing(&r1.vec_v, &r2.vec_w);
    if pair.is_zero() {
        return Ok(None);
    }
    Ok(Some(
        r1.ideal_i.mul(&r2.ideal_j.conj())?.mul_element(&pair)?,
    ))
}

// ---------------------------------------------------------------------------
// Root systems
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub struct RootSystem {
    ring: RingSpec,
    dim: usize,
    roots: Vec<Root>,
}

impl std::fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "RootSystem({} roots, dim {}, ring conductor {})",
            self.roots.len(),
            self.dim,
            self.ring.conductor()
        )
    }
}

/// Outcome of the axiom verification, with witnesses on failure.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub finite_and_spanning: bool,
    pub stable_under_reflections: bool,
    pub pairings_integral: bool,
    pub witness: Option<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.finite_and_spanning && self.stable_under_reflections && self.pairings_integral
    }
}

impl RootSystem {
    pub fn new(ring: &RingSpec, dim: usize, roots: Vec<Root>) -> RootSystem {
        let mut map: BTreeMap<Vec<u8>, Root> = BTreeMap::new();
        for r in roots {
            map.insert(r.key(), r);
        }
        RootSystem {
            ring: ring.clone(),
            dim,
            roots: map.into_values().collect(),
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, r: &Root) -> bool {
        let key = r.key();
        self.roots.iter().any(|x| x.key() == key)
    }

    /// The reflections `s_r` of all roots, deduplicated canonically.
    pub fn reflections(&self) -> Result<Vec<Reflection>> {
        let mut map: BTreeMap<Vec<u8>, Reflection> = BTreeMap::new();
        for r in &self.roots {
            let s = r.reflection()?;
            map.insert(s.key(), s);
        }
        Ok(map.into_values().collect())
    }

    /// Orbit closure of seed roots under the reflections attached to the
    /// seeds (hence under the group they generate).
    pub fn orbit_closure(ring: &RingSpec, seeds: &[Root], cap: usize) -> Result<RootSystem> {
        if seeds.is_empty() {
            return Err(Error::Degenerate("no seed roots".into()));
        }
        let dim = seeds[0].dim();
        // seed pairings must be integral for the closure to be a root system
        for a in seeds {
            for b in seeds {
                if let Some(p) = root_pairing(a, b)? {
                    if !p.is_integral() {
                        return Err(Error::Degenerate("seed pairings are not integral".into()));
                    }
                }
            }
        }
        let actions: Vec<(CycMat, CycMat)> = seeds
            .iter()
            .map(|r| {
                let s = r.reflection()?;
                let d = s.dual_matrix();
                Ok((s.matrix, d))
            })
            .collect::<Result<_>>()?;
        let mut map: BTreeMap<Vec<u8>, Root> = BTreeMap::new();
        let mut frontier: Vec<Root> = Vec::new();
        for r in seeds {
            if map.insert(r.key(), r.clone()).is_none() {
                frontier.push(r.clone());
            }
        }
        while let Some(r) = frontier.pop() {
            for (g, gd) in &actions {
                let img = r.act(g, gd)?;
                let key = img.key();
                if !map.contains_key(&key) {
                    map.insert(key, img.clone());
                    frontier.push(img);
                    if map.len() > cap {
                        return Err(Error::CapExceeded(format!("root orbit exceeded {cap}")));
                    }
                }
            }
        }
        Ok(RootSystem {
            ring: ring.clone(),
            dim,
            roots: map.into_values().collect(),
        })
    }

    /// Verify the three axioms, cross-validating the integrality condition
    /// against the lattice-inclusion formulation.
    pub fn verify_axioms(&self) -> Result<AxiomReport> {
        let mut witness = None;
        // finiteness is structural; check the spanning condition
        let span: CycMat = self.roots.iter().map(|r| r.vec_v.clone()).collect();
        let finite_and_spanning = !self.roots.is_empty() && cycmat::rank(&span) == self.dim;
        if !finite_and_spanning {
            witness = Some("root lines do not span the ambient space".into());
        }

        let keys: std::collections::HashSet<Vec<u8>> = self.roots.iter().map(|r| r.key()).collect();
        let mut stable = true;
        'outer: for r in &self.roots {
            let s = r.reflection()?;
            let d = s.dual_matrix();
            for x in &self.roots {
                let img = x.act(&s.matrix, &d)?;
                if !keys.contains(&img.key()) {
                    stable = false;
                    witness = Some(format!(
                        "reflection of {:?} maps {:?} outside the system",
                        r, x
                    ));
                    break 'outer;
                }
            }
        }

        let mut integral = true;
        'pairs: for r1 in &self.roots {
            let s1 = r1.reflection()?;
            for r2 in &self.roots {
                let p = root_pairing(r2, r1)?;
                let route_a = match &p {
                    None => true,
                    Some(ideal) => ideal.is_integral(),
                };
                // equivalent form: (s_{r1} - 1) I_{r2} inside I_{r1}
                let diff = cycmat::mat_sub(
                    &s1.matrix,
                    &cycmat::identity(self.dim, self.ring.conductor()),
                );
                let img = cycmat::mat_vec(&diff, &r2.vec_v);
                let route_b = if img.iter().all(|c| c.is_zero()) {
                    true
                } else {
                    // img = c * v_{r1}; need ideal_i2 * c inside ideal_i1
                    let c = img
                        .iter()
                        .zip(&r1.vec_v)
                        .find(|(a, _)| !a.is_zero())
                        .map(|(a, b)| a.div(b).expect("line vector"))
                        .unwrap();
                    let scaled = r2.ideal_i.mul_element(&c).expect("scale");
                    r1.ideal_i.contains_ideal(&scaled)
                };
                if route_a != route_b {
                    return Err(Error::Verification("integrality routes disagree".into()));
                }
                if !route_a {
                    integral = false;
                    witness = Some(format!("pairing of {:?} with {:?} is not integral", r2, r1));
                    break 'pairs;
                }
            }
        }

        Ok(AxiomReport {
            finite_and_spanning,
            stable_under_reflections: stable,
            pairings_integral: integral,
            witness,
        })
    }

    /// Orbit decomposition under the reflections of the system.
    pub fn orbits(&self) -> Result<Vec<Vec<usize>>> {
        let actions: Vec<(CycMat, CycMat)> = self
            .reflections()?
            .into_iter()
            .map(|s| {
                let d = s.dual_matrix();
                (s.matrix, d)
            })
            .collect();
        let index: BTreeMap<Vec<u8>, usize> = self
            .roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.key(), i))
            .collect();
        let mut assigned = vec![usize::MAX; self.roots.len()];
        let mut orbits = Vec::new();
        for start in 0..self.roots.len() {
            if assigned[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            assigned[start] = id;
            let mut members = vec![start];
            let mut frontier = vec![start];
            while let Some(i) = frontier.pop() {
                for (g, gd) in &actions {
                    let img = self.roots[i].act(g, gd)?;
                    if let Some(&j) = index.get(&img.key()) {
                        if assigned[j] == usize::MAX {
                            assigned[j] = id;
                            members.push(j);
                            frontier.push(j);
                        }
                    }
                }
            }
            members.sort_unstable();
            orbits.push(members);
        }
        Ok(orbits)
    }

    /// Adjoin all power roots `r^i`; the result is complete when the input is
    /// distinguished.
    pub fn complete(&self) -> Result<RootSystem> {
        let mut out = self.roots.clone();
        for r in &self.roots {
            let (order, _) = r
                .zeta
                .as_root_of_unity()
                .ok_or_else(|| Error::Degenerate("zeta not of finite order".into()))?;
            for i in 2..order {
                out.push(r.power(i)?);
            }
        }
        Ok(RootSystem::new(&self.ring, self.dim, out))
    }

    /// Extract a reduced subsystem with the same group: per hyperplane orbit
    /// a minimal generating set of roots is kept and its orbits taken.
    pub fn reduce(&self) -> Result<RootSystem> {
        // group roots by reflecting line
        let mut by_line: BTreeMap<Vec<u8>, Vec<&Root>> = BTreeMap::new();
        for r in &self.roots {
            by_line
                .entry(cycmat::vec_key(&r.vec_v))
                .or_default()
                .push(r);
        }
        // per line choose a minimal subset of roots whose reflections
        // generate the full (cyclic) fixator
        let mut chosen: Vec<Root> = Vec::new();
        for (_, group) in by_line {
            let full: std::collections::BTreeSet<Vec<u8>> = {
                let mut set = std::collections::BTreeSet::new();
                let mats: Vec<CycMat> = group
                    .iter()
                    .map(|r| r.reflection().map(|s| s.matrix))
                    .collect::<Result<_>>()?;
                // closure of all reflections at this line
                let id = cycmat::identity(self.dim, self.ring.conductor());
                let mut frontier = vec![id.clone()];
                set.insert(cycmat::canonical_key(&id));
                while let Some(m) = frontier.pop() {
                    for g in &mats {
                        let p = cycmat::mat_mul(&m, g);
                        if set.insert(cycmat::canonical_key(&p)) {
                            frontier.push(p);
                        }
                    }
                }
                set
            };
            // greedy minimal generating subset, preferring high orders
            let mut idx: Vec<usize> = (0..group.len()).collect();
            idx.sort_by_key(|&i| std::cmp::Reverse(group[i].zeta.as_root_of_unity().unwrap().0));
            let mut selected: Vec<usize> = Vec::new();
            let closure_of = |sel: &[usize]| -> std::collections::BTreeSet<Vec<u8>> {
                let mut set = std::collections::BTreeSet::new();
                let id = cycmat::identity(self.dim, self.ring.conductor());
                set.insert(cycmat::canonical_key(&id));
                let mats: Vec<CycMat> = sel
                    .iter()
                    .map(|&i| group[i].reflection().unwrap().matrix)
                    .collect();
                let mut frontier = vec![id];
                while let Some(m) = frontier.pop() {
                    for g in &mats {
                        let p = cycmat::mat_mul(&m, g);
                        if set.insert(cycmat::canonical_key(&p)) {
                            frontier.push(p);
                        }
                    }
                }
                set
            };
            for &i in &idx {
                if closure_of(&selected) == full {
                    break;
                }
                selected.push(i);
            }
            // drop redundant members
            let mut k = 0;
            while k < selected.len() {
                let mut trial = selected.clone();
                trial.remove(k);
                if closure_of(&trial) == full {
                    selected = trial;
                } else {
                    k += 1;
                }
            }
            for &i in &selected {
                chosen.push(group[i].clone());
            }
        }
        // union of orbits of the chosen roots under the whole group
        let actions: Vec<(CycMat, CycMat)> = self
            .reflections()?
            .into_iter()
            .map(|s| {
                let d = s.dual_matrix();
                (s.matrix, d)
            })
            .collect();
        let mut map: BTreeMap<Vec<u8>, Root> = BTreeMap::new();
        let mut frontier = Vec::new();
        for r in chosen {
            if map.insert(r.key(), r.clone()).is_none() {
                frontier.push(r);
            }
        }
        while let Some(r) = frontier.pop() {
            for (g, gd) in &actions {
                let img = r.act(g, gd)?;
                if !map.contains_key(&img.key()) {
                    map.insert(img.key(), img.clone());
                    frontier.push(img);
                }
            }
        }
        let out = RootSystem {
            ring: self.ring.clone(),
            dim: self.dim,
            roots: map.into_values().collect(),
        };
        if !out.is_reduced()? {
            return Err(Error::Verification("reduction failed".into()));
        }
        Ok(out)
    }

    /// Keep the distinguished roots, then reduce. Requires a complete system.
    pub fn distinguished_subsystem(&self) -> Result<RootSystem> {
        // |C(H)| per line from the reflections of the system (complete input)
        let refs = self.reflections()?;
        let mut per_line: BTreeMap<Vec<u8>, u64> = BTreeMap::new();
        for s in &refs {
            *per_line.entry(cycmat::vec_key(&s.line)).or_insert(0) += 1;
        }
        let mut kept = Vec::new();
        for r in &self.roots {
            let c = per_line[&cycmat::vec_key(&r.vec_v)] + 1;
            if r.zeta == CycNum::root_of_unity(c, 1) {
                kept.push(r.clone());
            }
        }
        let sys = RootSystem::new(&self.ring, self.dim, kept);
        if sys.is_reduced()? {
            Ok(sys)
        } else {
            sys.reduce()
        }
    }

    /// Dual system on the swapped spaces.
    pub fn dualize(&self) -> RootSystem {
        RootSystem::new(
            &self.ring,
            self.dim,
            self.roots.iter().map(|r| r.dual()).collect(),
        )
    }

    pub fn is_reduced(&self) -> Result<bool> {
        let mut seen = std::collections::HashSet::new();
        for r in &self.roots {
            if !seen.insert(r.reflection()?.key()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Complete = the map to the reflections of the generated group is onto.
    pub fn is_complete(&self) -> Result<bool> {
        let own: std::collections::HashSet<Vec<u8>> =
            self.reflections()?.iter().map(|s| s.key()).collect();
        Ok(self
            .generated_reflections()?
            .iter()
            .all(|s| own.contains(&s.key())))
    }

    /// All reflections of the group generated by the system's reflections
    /// (conjugation closure plus powers; the group itself is not enumerated).
    pub fn generated_reflections(&self) -> Result<Vec<Reflection>> {
        let gens = self.reflections()?;
        let n = self.ring.conductor();
        let mut seen: BTreeMap<Vec<u8>, Reflection> = BTreeMap::new();
        let mut frontier: Vec<Reflection> = Vec::new();
        for g in &gens {
            if seen.insert(g.key(), g.clone()).is_none() {
                frontier.push(g.clone());
            }
        }
        while let Some(t) = frontier.pop() {
            for g in &gens {
                let gi = cycmat::inverse(&g.matrix)?;
                let c = cycmat::mat_mul(&g.matrix, &cycmat::mat_mul(&t.matrix, &gi));
                let key = cycmat::canonical_key(&c);
                if !seen.contains_key(&key) {
                    let refl = refgroups::detect_reflection(&c, n)
                        .ok_or_else(|| Error::Degenerate("conjugate not a reflection".into()))?;
                    seen.insert(key, refl.clone());
                    frontier.push(refl);
                }
            }
        }
        let closure: Vec<Reflection> = seen.values().cloned().collect();
        for s in closure {
            let mut m = cycmat::mat_mul(&s.matrix, &s.matrix);
            for _ in 2..s.order {
                let key = cycmat::canonical_key(&m);
                if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(key) {
                    if let Some(r) = refgroups::detect_reflection(&m, n) {
                        e.insert(r);
                    }
                }
                m = cycmat::mat_mul(&m, &s.matrix);
            }
        }
        Ok(seen.into_values().collect())
    }

    // -- lattices ----------------------------------------------------------

    fn flatten(&self, vecs: &[(FracIdeal, CycVec)]) -> Result<Lattice> {
        let dk = self.ring.rank();
        let ambient = dk * self.dim;
        let mut rows: QMat = Vec::new();
        for (ideal, v) in vecs {
            for b in ideal.basis_elements() {
                let mut flat = Vec::with_capacity(ambient);
                for x in v {
                    let coord = b.mul(x);
                    flat.extend(self.ring.coords(&coord).ok_or(Error::NotInField)?);
                }
                rows.push(flat);
            }
        }
        Ok(Lattice::from_rational_rows(&rows, ambient))
    }

    /// The root lattice `Q = sum_r I_r` as a Z-lattice in flat coordinates.
    pub fn root_lattice(&self) -> Result<Lattice> {
        self.flatten(
            &self
                .roots
                .iter()
                .map(|r| (r.ideal_i.clone(), r.vec_v.clone()))
                .collect::<Vec<_>>(),
        )
    }

    pub fn coroot_lattice(&self) -> Result<Lattice> {
        self.flatten(
            &self
                .roots
                .iter()
                .map(|r| (r.ideal_j.clone(), r.vec_w.clone()))
                .collect::<Vec<_>>(),
        )
    }

    /// The weight lattice `P = {x : <x, Q^v> in Z_k}` in flat coordinates.
    pub fn weight_lattice(&self) -> Result<Lattice> {
        let dk = self.ring.rank();
        let ambient = dk * self.dim;
        // constraints: for each root and each generator w of J_r,
        // x -> coords(<x, w>) must be integral
        let mut stacked: QMat = vec![Vec::new(); ambient];
        for r in &self.roots {
            let mut gens = Vec::new();
            if let Some(g) = r.ideal_j.known_generator() {
                gens.push(g);
            } else {
                gens.extend(r.ideal_j.basis_elements());
            }
            for g in gens {
                // image of flat basis vector (b_a ; position j)
                for j in 0..self.dim {
                    for a in 0..dk {
                        let b = self.ring.basis_element(a);
                        // <b e_j, g w> = b * conj(g w_j)
                        let val = b.mul(&g.mul(&r.vec_w[j]).conj());
                        let coords = self.ring.coords(&val).ok_or(Error::NotInField)?;
                        stacked[j * dk + a].extend(coords);
                    }
                }
            }
        }
        Ok(linalg::preimage_of_integral(&stacked))
    }

    /// `[P : Q]` as a positive integer.
    pub fn weight_index(&self) -> Result<BigInt> {
        let q = self.root_lattice()?;
        let p = self.weight_lattice()?;
        if !p.contains_lattice(&q) {
            return Err(Error::Verification("Q is not inside P".into()));
        }
        let idx = p.index_of(&q);
        Ok(idx.to_integer())
    }

    // -- Cartan matrices and connection index -------------------------------

    /// Find the unique root attached to a reflection.
    pub fn root_of_reflection(&self, s: &Reflection) -> Result<&Root> {
        let key = s.key();
        let mut found = None;
        for r in &self.roots {
            if r.reflection()?.key() == key {
                if found.is_some() {
                    return Err(Error::Degenerate(
                        "reflection has several roots (system not reduced)".into(),
                    ));
                }
                found = Some(r);
            }
        }
        found.ok_or_else(|| Error::Degenerate("reflection has no root in the system".into()))
    }

    /// Principal generators `(alpha, beta)` for a root, with
    /// `<alpha, beta> = 1 - zeta`.
    fn principal_vectors(&self, r: &Root, budget: usize) -> Result<(CycVec, CycVec)> {
        let g = r
            .ideal_i
            .principality_witness(budget)
            .or_else(|| r.ideal_i.principality_witness(budget * 4))
            .ok_or_else(|| {
                Error::NonPrincipalRoot(format!("no generator found for {:?}", r.ideal_i))
            })?;
        let n = self.ring.conductor();
        let alpha: CycVec = r.vec_v.iter().map(|c| c.mul(&g)).collect();
        let pair = cycmat::pairing(&r.vec_v, &r.vec_w);
        let hconj = CycNum::one(n).sub(&r.zeta).div(&g.mul(&pair))?;
        let h = hconj.conj();
        let beta: CycVec = r.vec_w.iter().map(|c| c.mul(&h)).collect();
        Ok((alpha, beta))
    }

    /// Cartan matrix `C[s][t] = <alpha_s, beta_t>` for an ordered list of
    /// reflections whose roots must be principal.
    pub fn cartan_matrix(&self, order: &[Reflection], budget: usize) -> Result<CycMat> {
        let mut alphas = Vec::new();
        let mut betas = Vec::new();
        for s in order {
            let r = self.root_of_reflection(s)?;
            let (a, b) = self.principal_vectors(r, budget)?;
            alphas.push(a);
            betas.push(b);
        }
        let m: CycMat = alphas
            .iter()
            .map(|a| betas.iter().map(|b| cycmat::pairing(a, b)).collect())
            .collect();
        for row in &m {
            for entry in row {
                if !self.ring.is_integral(entry) {
                    return Err(Error::Verification("Cartan entry is not integral".into()));
                }
            }
        }
        Ok(m)
    }

    /// Connection index. For a well-generated group this is the determinant
    /// ideal of the Cartan matrix of `gens` (`dim` reflections); otherwise
    /// the matrix is `(dim+1)`-sided and a row `i0` and column `j0` that are
    /// integral combinations of the others are dropped first.
    pub fn connection_index(&self, gens: &[Reflection], budget: usize) -> Result<FracIdeal> {
        let c = self.cartan_matrix(gens, budget)?;
        if gens.len() == self.dim {
            let det = cycmat::det(&c);
            return FracIdeal::from_element(&self.ring, &det);
        }
        if gens.len() != self.dim + 1 {
            return Err(Error::Degenerate(
                "connection index needs dim or dim+1 generators".into(),
            ));
        }
        let side = gens.len();
        let droppable_rows: Vec<usize> = (0..side)
            .filter(|&i| is_integral_combination(&self.ring, &c, i, true))
            .collect();
        let droppable_cols: Vec<usize> = (0..side)
            .filter(|&j| is_integral_combination(&self.ring, &c, j, false))
            .collect();
        for &i0 in &droppable_rows {
            for &j0 in &droppable_cols {
                let minor: CycMat = (0..side)
                    .filter(|&i| i != i0)
                    .map(|i| {
                        (0..side)
                            .filter(|&j| j != j0)
                            .map(|j| c[i][j].clone())
                            .collect()
                    })
                    .collect();
                let det = cycmat::det(&minor);
                if !det.is_zero() {
                    return FracIdeal::from_element(&self.ring, &det);
                }
            }
        }
        Err(Error::NoLatticeBasis)
    }

    /// Restriction to the flat cut out by the chosen reflections: the roots
    /// whose reflection fixes the flat pointwise.
    pub fn restrict_to_flat(&self, chosen: &[Reflection]) -> Result<RootSystem> {
        let n = self.ring.conductor();
        if chosen.is_empty() {
            return Ok(self.clone());
        }
        // flat = common kernel of (s - 1)
        let mut stacked: CycMat = Vec::new();
        for s in chosen {
            let diff = cycmat::mat_sub(&s.matrix, &cycmat::identity(self.dim, n));
            stacked.extend(diff);
        }
        let flat = cycmat::kernel(&stacked);
        let kept: Vec<Root> = self
            .roots
            .iter()
            .filter(|r| {
                let s = r.reflection().expect("root reflection");
                flat.iter().all(|f| {
                    let img = cycmat::mat_vec(&s.matrix, f);
                    img.iter().zip(f).all(|(a, b)| a == b)
                })
            })
            .cloned()
            .collect();
        Ok(RootSystem {
            ring: self.ring.clone(),
            dim: self.dim,
            roots: kept,
        })
    }

    /// Search for a fractional ideal `a` with `other = a . self`.
    pub fn same_genus(&self, other: &RootSystem) -> Result<Option<FracIdeal>> {
        if self.len() != other.len() || self.ring != other.ring {
            return Ok(None);
        }
        let r1 = &self.roots[0];
        // candidates: match r1 against roots of `other` with the same
        // direction data
        for r2 in &other.roots {
            if r2.vec_v != r1.vec_v || r2.vec_w != r1.vec_w || r2.zeta != r1.zeta {
                continue;
            }
            let cand = r2.ideal_i.mul(&r1.ideal_i.inv())?;
            // verify globally
            let mut ok = true;
            for r in &self.roots {
                let scaled = r.rescale(&cand)?;
                if !other.contains(&scaled) {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(Some(cand));
            }
        }
        Ok(None)
    }

    /// Apply a group element to every root.
    pub fn transform(&self, g: &CycMat) -> Result<RootSystem> {
        let gd = refgroups::dual_of(g);
        let roots: Vec<Root> = self
            .roots
            .iter()
            .map(|r| r.act(g, &gd))
            .collect::<Result<_>>()?;
        Ok(RootSystem::new(&self.ring, self.dim, roots))
    }

    /// Rescale every root by an ideal.
    pub fn rescale(&self, a: &FracIdeal) -> Result<RootSystem> {
        let roots: Vec<Root> = self
            .roots
            .iter()
            .map(|r| r.rescale(a))
            .collect::<Result<_>>()?;
        Ok(RootSystem::new(&self.ring, self.dim, roots))
    }
}

/// The (row, column) pairs of a square matrix that are integral linear
/// combinations of the remaining rows (resp. columns): candidates for the
/// minor-determinant computation of connection indices.
pub fn droppable_pairs(ring: &RingSpec, c: &CycMat) -> Vec<(usize, usize)> {
    let side = c.len();
    let rows: Vec<usize> = (0..side)
        .filter(|&i| is_integral_combination(ring, c, i, true))
        .collect();
    let cols: Vec<usize> = (0..side)
        .filter(|&j| is_integral_combination(ring, c, j, false))
        .collect();
    let mut out = Vec::new();
    for &i in &rows {
        for &j in &cols {
            out.push((i, j));
        }
    }
    out
}

fn is_integral_combination(ring: &RingSpec, c: &CycMat, idx: usize, row: bool) -> bool {
    let side = c.len();
    // express row/col idx as a combination of the others: solve x * A = b
    // over the field, then test integrality
    let others: Vec<usize> = (0..side).filter(|&i| i != idx).collect();
    let a: CycMat = if row {
        others.iter().map(|&i| c[i].clone()).collect()
    } else {
        others
            .iter()
            .map(|&j| (0..side).map(|i| c[i][j].clone()).collect())
            .collect()
    };
    let b: CycVec = if row {
        c[idx].clone()
    } else {
        (0..side).map(|i| c[i][idx].clone()).collect()
    };
    // transpose to use the column solver: a^T x = b
    let at = cycmat::transpose(&a);
    match cycmat::solve(&at, &b) {
        Some(x) => x.iter().all(|v| ring.is_integral(v)),
        None => false,
    }
}

// ---------------------------------------------------------------------------
// Standard systems
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    CompleteReduced,
    Distinguished,
}

/// The standard complete reduced (or distinguished) system for the monomial
/// groups: diagonal roots `(e_k, (1 - zeta_d^{-i}) e'_k, zeta_d^i)` together
/// with the involutive roots `(e_k - zeta^j e_l, e'_k - zeta^j e'_l, -1)`.
pub fn standard_imprimitive_system(group: &GroupSpec, flavor: Flavor) -> Result<RootSystem> {
    let (d, e, r) = match &group.kind {
        refgroups::GroupKind::Imprimitive { d, e, r } => (*d, *e, *r),
        _ => {
            return Err(Error::UnsupportedGroup(
                "standard system needs an imprimitive group".into(),
            ))
        }
    };
    let ring = &group.ring;
    let n = ring.conductor();
    let de = d * e;
    let unit = FracIdeal::unit(ring);
    if de == 1 {
        // the symmetric group: the monomial realization is not essential, so
        // the system is built on the span of the roots via the type-A Cartan
        // matrix (simple roots as basis vectors)
        let rank = r - 1;
        let mut seeds = Vec::new();
        for t in 0..rank {
            let mut v = vec![CycNum::zero(n); rank];
            v[t] = CycNum::one(n);
            let w: CycVec = (0..rank)
                .map(|j| {
                    let c: i64 = if j == t {
                        2
                    } else if j + 1 == t || j == t + 1 {
                        -1
                    } else {
                        0
                    };
                    CycNum::from_integer(c).lift_to(n)
                })
                .collect();
            seeds.push(Root::new(ring, &unit, &v, &w, &CycNum::from_integer(-1))?);
        }
        return RootSystem::orbit_closure(ring, &seeds, DEFAULT_ORBIT_CAP);
    }
    let mut roots = Vec::new();
    let diag_powers: Vec<u64> = match flavor {
        Flavor::CompleteReduced => (1..d).collect(),
        Flavor::Distinguished => {
            if d > 1 {
                vec![1]
            } else {
                vec![]
            }
        }
    };
    for k in 0..r {
        for &i in &diag_powers {
            let mut v = vec![CycNum::zero(n); r];
            v[k] = CycNum::one(n);
            let mut w = vec![CycNum::zero(n); r];
            w[k] = CycNum::one(n).sub(&CycNum::root_of_unity(d, -(i as i64)).lift_to(n));
            let zeta = CycNum::root_of_unity(d, i as i64).lift_to(n);
            roots.push(Root::new(ring, &unit, &v, &w, &zeta)?);
        }
    }
    for k in 0..r {
        for l in (k + 1)..r {
            for j in 0..de {
                let zj = CycNum::root_of_unity(de, j as i64).lift_to(n);
                let mut v = vec![CycNum::zero(n); r];
                v[k] = CycNum::one(n);
                v[l] = zj.neg();
                let w = v.clone();
                let minus_one = CycNum::from_integer(-1).lift_to(n);
                roots.push(Root::new(ring, &unit, &v, &w, &minus_one)?);
            }
        }
    }
    Ok(RootSystem::new(ring, r, roots))
}

/// Complete reduced system for the cyclic group over a chosen ring: roots
/// `(a_j, (1-zeta^j)^* a_j^{-*}, zeta^j)` on a one-dimensional space.
pub fn standard_cyclic_system(
    d: u64,
    ring: &RingSpec,
    family: Option<&[FracIdeal]>,
) -> Result<RootSystem> {
    if d < 2 {
        return Err(Error::UnsupportedGroup("cyclic systems need d >= 2".into()));
    }
    if !ring.contains(&CycNum::zeta(d)) {
        return Err(Error::UnsupportedGroup(format!(
            "ring does not contain a primitive {d}-th root of unity"
        )));
    }
    let n = ring.conductor();
    let unit = FracIdeal::unit(ring);
    let mut roots = Vec::new();
    for j in 1..d {
        let scale = match family {
            Some(f) => f[(j - 1) as usize].clone(),
            None => unit.clone(),
        };
        let zeta = CycNum::root_of_unity(d, j as i64).lift_to(n);
        let v = vec![CycNum::one(n)];
        let w = vec![CycNum::one(n)];
        roots.push(Root::new(ring, &scale, &v, &w, &zeta)?);
    }
    Ok(RootSystem::new(ring, 1, roots))
}

/// The principal roots attached to the generators of the real dihedral
/// group, and their orbit.
pub fn dihedral_real_system(e: u64) -> Result<RootSystem> {
    let group = GroupSpec::dihedral_real(e)?;
    let ring = &group.ring;
    let n = ring.conductor();
    let unit = FracIdeal::unit(ring);
    let c = CycNum::from_integer(2)
        .lift_to(n)
        .add(&CycNum::zeta(n))
        .add(&CycNum::root_of_unity(n, -1));
    let minus_one = CycNum::from_integer(-1).lift_to(n);
    let r_s = Root::new(
        ring,
        &unit,
        &vec![CycNum::one(n), CycNum::zero(n)],
        &vec![CycNum::from_integer(2).lift_to(n), c.neg()],
        &minus_one,
    )?;
    let r_t = Root::new(
        ring,
        &unit,
        &vec![CycNum::zero(n), CycNum::one(n)],
        &vec![
            CycNum::from_integer(-1).lift_to(n),
            CycNum::from_integer(2).lift_to(n),
        ],
        &minus_one,
    )?;
    RootSystem::orbit_closure(ring, &[r_s, r_t], DEFAULT_ORBIT_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::full_ring;
    use num_rational::BigRational;
    use num_traits::Signed;

    fn unit(ring: &RingSpec) -> FracIdeal {
        FracIdeal::unit(ring)
    }

    #[test]
    fn root_invariant_and_reflection() {
        // diagonal root of G(3,1,2)
        let g = GroupSpec::imprimitive(3, 1, 2).unwrap();
        let sys = standard_imprimitive_system(&g, Flavor::Distinguished).unwrap();
        assert_eq!(sys.len(), 5);
        for r in sys.roots() {
            r.check_invariant().unwrap();
            let s = r.reflection().unwrap();
            assert_eq!(s.zeta, r.zeta);
        }
    }

    #[test]
    fn imprimitive_complete_system_passes_axioms() {
        for (de, e, r) in [(6u64, 2u64, 2usize), (3, 1, 2), (4, 4, 3), (2, 1, 3)] {
            let g = GroupSpec::imprimitive(de, e, r).unwrap();
            let sys = standard_imprimitive_system(&g, Flavor::CompleteReduced).unwrap();
            let report = sys.verify_axioms().unwrap();
            assert!(report.passed(), "G({de},{e},{r}): {:?}", report.witness);
            assert!(sys.is_reduced().unwrap());
            assert!(sys.is_complete().unwrap());
        }
    }

    #[test]
    fn symmetric_group_system() {
        let g = GroupSpec::imprimitive(1, 1, 4).unwrap();
        let sys = standard_imprimitive_system(&g, Flavor::CompleteReduced).unwrap();
        assert_eq!(sys.len(), 6);
        assert_eq!(sys.dim(), 3);
        assert!(sys.verify_axioms().unwrap().passed());
        // single orbit, all reflections involutive, distinguished = complete
        assert_eq!(sys.orbits().unwrap().len(), 1);
        assert!(sys.is_complete().unwrap());
    }

    #[test]
    fn axiom_failure_detected() {
        // scale one root of the S_3 system by a non-divisor ideal
        let g = GroupSpec::imprimitive(1, 1, 3).unwrap();
        let sys = standard_imprimitive_system(&g, Flavor::CompleteReduced).unwrap();
        let ring = sys.ring().clone();
        let three = FracIdeal::from_integer(&ring, 3).unwrap();
        let mut roots = sys.roots().to_vec();
        roots[0] = roots[0].rescale(&three.inv()).unwrap();
        let bad = RootSystem::new(&ring, 3, roots);
        let report = bad.verify_axioms().unwrap();
        assert!(!report.pairings_integral);
        assert!(report.witness.is_some());
    }

    #[test]
    fn orbit_closure_of_b2() {
        // seeds: the two roots attached to the standard generators of B2
        let ring = full_ring(1);
        let unit = unit(&ring);
        let m1 = CycNum::from_integer(-1);
        let r_s = Root::new(
            &ring,
            &unit,
            &vec![CycNum::one(1), CycNum::zero(1)],
            &vec![CycNum::from_integer(2), CycNum::zero(1)],
            &m1,
        )
        .unwrap();
        let r_t = Root::new(
            &ring,
            &unit,
            &vec![CycNum::from_integer(-1), CycNum::one(1)],
            &vec![CycNum::from_integer(-1), CycNum::one(1)],
            &m1,
        )
        .unwrap();
        let sys = RootSystem::orbit_closure(&ring, &[r_s, r_t], 100).unwrap();
        assert_eq!(sys.len(), 4);
        assert!(sys.verify_axioms().unwrap().passed());
    }

    #[test]
    fn cyclic_systems_and_completion() {
        let ring = full_ring(3);
        let sys = standard_cyclic_system(3, &ring, None).unwrap();
        assert_eq!(sys.len(), 2);
        assert!(sys.verify_axioms().unwrap().passed());
        // distinguished part is the single zeta_3 root; completing it again
        // recovers both roots
        let dist = sys.distinguished_subsystem().unwrap();
        assert_eq!(dist.len(), 1);
        let completed = dist.complete().unwrap();
        assert_eq!(completed.len(), 2);
        for r in completed.roots() {
            assert!(sys.contains(r));
        }
    }

    #[test]
    fn reduce_then_complete_is_idempotent() {
        let g = GroupSpec::imprimitive(3, 1, 2).unwrap();
        let sys = standard_imprimitive_system(&g, Flavor::CompleteReduced).unwrap();
        let red = sys.reduce().unwrap();
        assert!(red.is_reduced().unwrap());
        let dist = sys.distinguished_subsystem().unwrap();
        let completed = dist.complete().unwrap();
        // the distinguished core regenerates the complete system
        assert_eq!(completed.len(), sys.len());
        for r in completed.roots() {
            assert!(sys.contains(r));
        }
    }

    #[test]
    fn pairing_table_for_imprimitive_roots() {
        let g = GroupSpec::imprimitive(6, 2, 2).unwrap();
        let sys = standard_imprimitive_system(&g, Flavor::CompleteReduced).unwrap();
        let ring = sys.ring();
        let n = ring.conductor();
        // diagonal roots at different coordinates are orthogonal
        let diags: Vec<&Root> = sys
            .roots()
            .iter()
            .filter(|r| r.zeta != CycNum::from_integer(-1).lift_to(n))
            .collect();
        let d1 = diags.iter().find(|r| !r.vec_v[0].is_zero()).unwrap();
        let d2 = diags.iter().find(|r| !r.vec_v[1].is_zero()).unwrap();
        assert!(root_pairing(d1, d2).unwrap().is_none());
        // self-pairing is (1 - zeta)
        for r in sys.roots() {
            let p = root_pairing(r, r).unwrap().unwrap();
            let expect = FracIdeal::from_element(ring, &CycNum::one(n).sub(&r.zeta)).unwrap();
            assert_eq!(p, expect);
        }
        // orthogonality is symmetric and forces commuting reflections
        for a in sys.roots() {
            for b in sys.roots() {
                if root_pairing(a, b).unwrap().is_none() {
                    assert!(root_pairing(b, a).unwrap().is_none());
                    let sa = a.reflection().unwrap();
                    let sb = b.reflection().unwrap();
                    assert!(cycmat::mat_eq(
                        &cycmat::mat_mul(&sa.matrix, &sb.matrix),
                        &cycmat::mat_mul(&sb.matrix, &sa.matrix)
                    ));
                }
            }
        }
    }

    #[test]
    fn involution_pair_pairing_value() {
        // n(r_{kl}^{(a)}, r_{kl}^{(b)}) = (1 + zeta_de^{a-b})
        let g = GroupSpec::imprimitive(5, 1, 2).unwrap();
        let sys = standard_imprimitive_system(&g, Flavor::CompleteReduced).unwrap();
        let ring = sys.ring();
        let n = ring.conductor();
        let invs: Vec<&Root> = sys
            .roots()
            .iter()
            .filter(|r| r.zeta == CycNum::from_integer(-1).lift_to(n))
            .collect();
        // find roots with j = 0 and j = 1: vectors e1 - e2 and e1 - z e2
        let r0 = invs
            .iter()
            .find(|r| r.vec_v[1] == CycNum::from_integer(-1).lift_to(n))
            .unwrap();
        let r1 = invs
            .iter()
            .find(|r| r.vec_v[1] == CycNum::zeta(5).lift_to(n).neg())
            .unwrap();
        let p = root_pairing(r0, r1).unwrap().unwrap();
        let expect = FracIdeal::from_element(
            ring,
            &CycNum::one(n).add(&CycNum::root_of_unity(5, -1).lift_to(n)),
        )
        .unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn lattices_of_cyclic_systems() {
        // standard mu_d system: Q = Z_k and [P : Q] = |Norm(1 - zeta_d)|
        for d in [3u64, 4, 5] {
            let ring = full_ring(d);
            let sys = standard_cyclic_system(d, &ring, None).unwrap();
            let q = sys.root_lattice().unwrap();
            let unit_lat = crate::linalg::Lattice::from_int_rows(
                ring.zbasis(),
                &num_bigint::BigInt::from(1),
                ring.rank(),
            );
            assert_eq!(q, unit_lat, "d = {d}");
            let idx = sys.weight_index().unwrap();
            let norm = ring
                .norm(&CycNum::one(d).sub(&CycNum::zeta(d)))
                .unwrap()
                .abs()
                .to_integer();
            assert_eq!(idx, norm, "d = {d}");
        }
    }

    #[test]
    fn action_is_trivial_on_weight_quotient() {
        let g = GroupSpec::imprimitive(3, 1, 2).unwrap();
        let sys = standard_imprimitive_system(&g, Flavor::Distinguished).unwrap();
        let q = sys.root_lattice().unwrap();
        let p = sys.weight_lattice().unwrap();
        assert!(p.contains_lattice(&q));
        let dk = sys.ring().rank();
        // each generator must act trivially on P/Q
        for s in g.standard_generators().unwrap() {
            for b in p.basis_rational() {
                // unflatten, apply, flatten back
                let vec: CycVec = (0..sys.dim())
                    .map(|j| {
                        let coords = &b[j * dk..(j + 1) * dk];
                        sys.ring().from_coords(coords)
                    })
                    .collect();
                let img = cycmat::mat_vec(&s.matrix, &vec);
                let mut flat = Vec::new();
                for x in &img {
                    flat.extend(sys.ring().coords(x).unwrap());
                }
                let diff: Vec<BigRational> = flat.iter().zip(&b).map(|(a, c)| a - c).collect();
                assert!(q.contains(&diff));
            }
        }
    }

    #[test]
    fn cartan_matrix_of_g_d_1_r() {
        let g = GroupSpec::imprimitive(3, 1, 2).unwrap();
        let sys = standard_imprimitive_system(&g, Flavor::Distinguished).unwrap();
        let gens = g.standard_generators().unwrap();
        let c = sys.cartan_matrix(&gens, 1000).unwrap();
        let n = sys.ring().conductor();
        // expected [[2, -(1-z3)], [-1, 1-z3]]
        let z = CycNum::zeta(3).lift_to(n);
        assert_eq!(c[0][0], CycNum::from_integer(2).lift_to(n));
        assert_eq!(c[1][1], CycNum::one(n).sub(&z));
        assert_eq!(c[1][0], CycNum::from_integer(-1).lift_to(n));
        assert_eq!(c[0][1], CycNum::one(n).sub(&z).neg());
        // connection index = (1 - zeta_3)
        let ci = sys.connection_index(&gens, 1000).unwrap();
        let expect = FracIdeal::from_element(sys.ring(), &CycNum::one(n).sub(&z)).unwrap();
        assert_eq!(ci, expect);
    }

    #[test]
    fn connection_index_of_g_e_e_r() {
        for (e, r) in [(3u64, 3usize), (4, 3), (5, 2)] {
            let g = GroupSpec::imprimitive(e, e, r).unwrap();
            let sys = standard_imprimitive_system(&g, Flavor::CompleteReduced).unwrap();
            let gens = g.standard_generators().unwrap();
            let ci = sys.connection_index(&gens, 1000).unwrap();
            let n = sys.ring().conductor();
            let z = CycNum::zeta(e).lift_to(n);
            let expect = FracIdeal::from_element(
                sys.ring(),
                &CycNum::one(n).sub(&z).mul(&CycNum::one(n).sub(&z.conj())),
            )
            .unwrap();
            assert_eq!(ci, expect, "G({e},{e},{r})");
        }
    }

    #[test]
    fn not_well_generated_minor_procedure() {
        // the principal distinguished system of G(de,e,r), d,e > 1 has
        // connection index (1 - zeta_de^{-1})
        for (de, e, r) in [(4u64, 2u64, 2usize), (6, 2, 2), (9, 3, 2)] {
            let g = GroupSpec::imprimitive(de, e, r).unwrap();
            let sys = standard_imprimitive_system(&g, Flavor::Distinguished).unwrap();
            let gens = g.standard_generators().unwrap();
            assert_eq!(gens.len(), r + 1);
            let ci = sys.connection_index(&gens, 1000).unwrap();
            let n = sys.ring().conductor();
            let expect = FracIdeal::from_element(
                sys.ring(),
                &CycNum::one(n).sub(&CycNum::root_of_unity(de, -1).lift_to(n)),
            )
            .unwrap();
            assert_eq!(ci, expect, "G({de},{e},{r})");
        }
    }

    #[test]
    fn restriction_to_flats() {
        let g = GroupSpec::imprimitive(2, 1, 2).unwrap();
        let sys = standard_imprimitive_system(&g, Flavor::CompleteReduced).unwrap();
        // restrict to the hyperplane of the diagonal reflection at e1
        let diag = sys
            .roots()
            .iter()
            .find(|r| r.vec_v[1].is_zero() && r.zeta == CycNum::from_integer(-1).lift_to(2))
            .unwrap()
            .reflection()
            .unwrap();
        let restricted = sys.restrict_to_flat(&[diag.clone()]).unwrap();
        assert_eq!(restricted.len(), 1);
        assert!(!restricted.roots()[0].vec_v[0].is_zero());
        // restricting to the zero flat (all hyperplanes) keeps everything
        let alls: Vec<Reflection> = sys.reflections().unwrap();
        let full = sys.restrict_to_flat(&alls).unwrap();
        assert_eq!(full.len(), sys.len());
        // restriction to a generic flat is empty
        let generic = sys.restrict_to_flat(&[]).unwrap();
        assert_eq!(generic.len(), sys.len());
    }

    #[test]
    fn genus_comparison() {
        let ring = full_ring(3);
        let sys = standard_cyclic_system(3, &ring, None).unwrap();
        // rescaling by a principal ideal preserves the genus
        let lam = FracIdeal::from_element(&ring, &CycNum::one(3).sub(&CycNum::zeta(3))).unwrap();
        let scaled = sys.rescale(&lam).unwrap();
        let found = sys.same_genus(&scaled).unwrap().unwrap();
        assert_eq!(found, lam);
        // the two mu_3 systems R1, R2 are not of the same genus
        let j = lam;
        let r1 = standard_cyclic_system(3, &ring, None).unwrap();
        let r2 =
            standard_cyclic_system(3, &ring, Some(&[j.clone(), FracIdeal::unit(&ring)])).unwrap();
        assert!(r1.same_genus(&r2).unwrap().is_none());
    }

    #[test]
    fn duality_swaps_b2_and_c2() {
        // over Q: Pi(B2) orbit and Pi(C2) orbit are mutually dual
        let ring = full_ring(1);
        let u = unit(&ring);
        let m1 = CycNum::from_integer(-1);
        let vs = vec![CycNum::one(1), CycNum::zero(1)];
        let vs_dual = vec![CycNum::from_integer(2), CycNum::zero(1)];
        let vt = vec![CycNum::from_integer(-1), CycNum::one(1)];
        let two = FracIdeal::from_integer(&ring, 2).unwrap();
        let b2 = RootSystem::orbit_closure(
            &ring,
            &[
                Root::new(&ring, &u, &vs, &vs_dual, &m1).unwrap(),
                Root::new(&ring, &u, &vt, &vt, &m1).unwrap(),
            ],
            100,
        )
        .unwrap();
        let c2 = RootSystem::orbit_closure(
            &ring,
            &[
                Root::new(&ring, &two, &vs, &vs_dual, &m1).unwrap(),
                Root::new(&ring, &u, &vt, &vt, &m1).unwrap(),
            ],
            100,
        )
        .unwrap();
        let dual_b2 = b2.dualize();
        // as sets of roots, dual(B2) = C2
        assert_eq!(dual_b2.len(), c2.len());
        for r in dual_b2.roots() {
            assert!(c2.contains(r), "missing {:?}", r);
        }
    }

    #[test]
    fn rescaled_lattices() {
        let g = GroupSpec::imprimitive(3, 1, 2).unwrap();
        let sys = standard_imprimitive_system(&g, Flavor::Distinguished).unwrap();
        let a = FracIdeal::from_element(sys.ring(), &CycNum::one(3).sub(&CycNum::zeta(3))).unwrap();
        let scaled = sys.rescale(&a).unwrap();
        let q1 = sys.root_lattice().unwrap();
        let q2 = scaled.root_lattice().unwrap();
        // Q_{aR} = a Q_R: the Z-index is Norm(a)^dim = 3^2
        assert!(q1.contains_lattice(&q2));
        assert_eq!(q1.index_of(&q2), BigRational::from(BigInt::from(9)));
        // same for the weight lattices
        let p1 = sys.weight_lattice().unwrap();
        let p2 = scaled.weight_lattice().unwrap();
        assert!(p1.contains_lattice(&p2));
        assert_eq!(p1.index_of(&p2), BigRational::from(BigInt::from(9)));
    }

    #[test]
    fn hermitian_dual_side_formula() {
        // when V = W with the positive coordinate pairing, the dual module is
        // J = (1 - conj(zeta)) <I, I>^{-1} I; the involutive roots of the
        // monomial systems have w = v, so the formula must reproduce ideal_j
        let g = GroupSpec::imprimitive(5, 1, 2).unwrap();
        let sys = standard_imprimitive_system(&g, Flavor::CompleteReduced).unwrap();
        let ring = sys.ring();
        let n = ring.conductor();
        for r in sys.roots().iter().filter(|r| r.vec_w == r.vec_v) {
            let pair_ii = r
                .ideal_i
                .mul(&r.ideal_i.conj())
                .unwrap()
                .mul_element(&cycmat::pairing(&r.vec_v, &r.vec_v))
                .unwrap();
            let expect = r
                .ideal_i
                .mul(&pair_ii.inv())
                .unwrap()
                .mul_element(&CycNum::one(n).sub(&r.zeta.conj()))
                .unwrap();
            assert_eq!(r.ideal_j, expect);
        }
    }

    #[test]
    fn lattice_equivalence_does_not_imply_same_genus() {
        // the two asymmetric cyclic systems share root and weight lattices
        // but are of different genus
        let ring = full_ring(3);
        let j = FracIdeal::from_element(&ring, &CycNum::one(3).sub(&CycNum::zeta(3))).unwrap();
        let unit = FracIdeal::unit(&ring);
        let r_1j = standard_cyclic_system(3, &ring, Some(&[unit.clone(), j.clone()])).unwrap();
        let r_j1 = standard_cyclic_system(3, &ring, Some(&[j.clone(), unit])).unwrap();
        assert!(r_1j.same_genus(&r_j1).unwrap().is_none());
        assert_eq!(r_1j.root_lattice().unwrap(), r_j1.root_lattice().unwrap());
        assert_eq!(
            r_1j.weight_lattice().unwrap(),
            r_j1.weight_lattice().unwrap()
        );
    }

    #[test]
    fn json_shape() {
        let ring = full_ring(3);
        let sys = standard_cyclic_system(3, &ring, None).unwrap();
        let s = serde_json::to_string(&sys.roots()[0]).unwrap();
        assert!(s.contains("\"zeta\""));
        assert!(s.contains("\"order\":3"));
    }
}
