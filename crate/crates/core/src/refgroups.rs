//! Matrix reflection groups over cyclotomic rings: the imprimitive series,
//! cyclic groups, the exceptional groups built from the embedded Cartan
//! tables, and dihedral groups over their real field of definition.

use std::collections::{BTreeMap, HashSet};

use num_rational::BigRational;

use crate::cyclo::{full_ring, real_subfield_ring, CycNum, RingSpec};
use crate::cycmat::{self, CycMat, CycVec};
use crate::error::Error;
use crate::exceptional;
use crate::realsign;
use crate::Result;

/// Default cap on explicit element enumeration.
pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

// ---------------------------------------------------------------------------
// Reflections
// ---------------------------------------------------------------------------

/// A reflection together with its reflecting data: the line `L` (image of
/// `s - 1`), the dual line `M` (image of `s^v - 1` in dual-basis
/// coordinates), the hyperplane `H = ker(s - 1)`, and the nontrivial
/// eigenvalue `zeta = det(s)`.
#[derive(Debug, Clone)]
pub struct Reflection {
    pub matrix: CycMat,
    pub line: CycVec,
    pub dual_line: CycVec,
    pub hyperplane: Vec<CycVec>,
    pub zeta: CycNum,
    pub order: u64,
}

impl PartialEq for Reflection {
    fn eq(&self, other: &Self) -> bool {
        cycmat::mat_eq(&self.matrix, &other.matrix)
    }
}
impl Eq for Reflection {}

impl Reflection {
    pub fn key(&self) -> Vec<u8> {
        cycmat::canonical_key(&self.matrix)
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// The dual reflection `s^v` acting on `W` (dual-basis coordinates):
    /// the inverse of the conjugate transpose.
    pub fn dual_matrix(&self) -> CycMat {
        dual_of(&self.matrix)
    }
}

/// `g^v`, the unique matrix with `<g v, g^v w> = <v, w>`.
pub fn dual_of(g: &CycMat) -> CycMat {
    cycmat::inverse(&cycmat::conj_mat(&cycmat::transpose(g))).expect("invertible group element")
}

/// Inspect a matrix and extract its reflection data. Returns `None` when the
/// matrix is not a reflection of finite order.
pub fn detect_reflection(m: &CycMat, conductor: u64) -> Option<Reflection> {
    let n = m.len();
    let m = cycmat::embed_mat(m, conductor);
    let diff = cycmat::mat_sub(&m, &cycmat::identity(n, conductor));
    if cycmat::rank(&diff) != 1 {
        return None;
    }
    let zeta = cycmat::det(&m);
    let (order, _) = zeta.as_root_of_unity()?;
    if order <= 1 {
        return None;
    }
    // the line: any nonzero column of (m - 1)
    let col = (0..n).find(|&j| diff.iter().any(|row| !row[j].is_zero()))?;
    let line: CycVec = cycmat::normalize_line(&(0..n).map(|i| diff[i][col].clone()).collect());
    let hyperplane = cycmat::kernel(&diff);
    // dual line from the dual reflection
    let dual = dual_of(&m);
    let ddiff = cycmat::mat_sub(&dual, &cycmat::identity(n, conductor));
    let dcol = (0..n).find(|&j| ddiff.iter().any(|row| !row[j].is_zero()))?;
    let dual_line: CycVec =
        cycmat::normalize_line(&(0..n).map(|i| ddiff[i][dcol].clone()).collect());
    Some(Reflection {
        matrix: m,
        line,
        dual_line,
        hyperplane,
        zeta,
        order,
    })
}

/// Build the reflection with line spanned by `x`, dual line spanned by `y`
/// and determinant `zeta`:
/// `s(v) = v - <v, y>/<x, y> (1 - zeta) x`.
pub fn reflection_from_triple(
    x: &CycVec,
    y: &CycVec,
    zeta: &CycNum,
    conductor: u64,
) -> Result<Reflection> {
    let n = x.len();
    let x = cycmat::embed_vec(x, conductor);
    let y = cycmat::embed_vec(y, conductor);
    let zeta = zeta.lift_to(conductor);
    let denom = cycmat::pairing(&x, &y);
    if denom.is_zero() {
        return Err(Error::Degenerate(
            "line and dual line are orthogonal".into(),
        ));
    }
    let scale = CycNum::one(conductor)
        .sub(&zeta)
        .div(&denom)
        .expect("nonzero pairing");
    let mut m = cycmat::identity(n, conductor);
    for i in 0..n {
        for j in 0..n {
            // s(e_j) = e_j - conj(y_j) * scale * x_i on coordinate i
            let t = y[j].conj().mul(&scale).mul(&x[i]);
            m[i][j] = m[i][j].sub(&t);
        }
    }
    detect_reflection(&m, conductor)
        .ok_or_else(|| Error::Degenerate("triple does not define a finite-order reflection".into()))
}

// ---------------------------------------------------------------------------
// Group specifications
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    /// The group of monomial `r x r` matrices with entries in the `de`-th
    /// roots of unity whose entry product is a `d`-th root of unity
    /// (parameters stored as `(d, e, r)` for the group usually written with
    /// first parameter `de`).
    Imprimitive { d: u64, e: u64, r: usize },
    /// The cyclic group of order `d` acting on a line.
    Cyclic { d: u64 },
    /// One of G4..G37, built from the embedded Cartan data.
    Exceptional { name: String },
    /// The dihedral group of order `2e` over the real subfield.
    DihedralReal { e: u64 },
}

#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub ring: RingSpec,
    pub dim: usize,
}

impl GroupSpec {
    /// `G(de, e, r)` with `de = d * e`.
    pub fn imprimitive(de: u64, e: u64, r: usize) -> Result<GroupSpec> {
        if e == 0 || de == 0 || de % e != 0 || r == 0 {
            return Err(Error::UnsupportedGroup(format!(
                "G({de},{e},{r}) is not a valid parameter triple"
            )));
        }
        let d = de / e;
        if de == 1 && r == 1 {
            return Err(Error::UnsupportedGroup("G(1,1,1) is trivial".into()));
        }
        if r == 1 && d == 1 {
            return Err(Error::UnsupportedGroup(
                "rank-one imprimitive groups need d > 1".into(),
            ));
        }
        let ring = full_ring(de.max(1));
        Ok(GroupSpec {
            kind: GroupKind::Imprimitive { d, e, r },
            ring,
            dim: r,
        })
    }

    pub fn cyclic(d: u64) -> Result<GroupSpec> {
        if d == 0 {
            return Err(Error::UnsupportedGroup("cyclic group of order 0".into()));
        }
        Ok(GroupSpec {
            kind: GroupKind::Cyclic { d },
            ring: full_ring(d),
            dim: 1,
        })
    }

    /// Cyclic group over an explicitly chosen (possibly larger) ring.
    pub fn cyclic_over(d: u64, ring: &RingSpec) -> Result<GroupSpec> {
        if !ring.contains(&CycNum::zeta(d)) {
            return Err(Error::UnsupportedGroup(format!(
                "the ring does not contain a primitive {d}-th root of unity"
            )));
        }
        Ok(GroupSpec {
            kind: GroupKind::Cyclic { d },
            ring: ring.clone(),
            dim: 1,
        })
    }

    pub fn exceptional(name: &str) -> Result<GroupSpec> {
        let data = exceptional::lookup(name)?;
        Ok(GroupSpec {
            kind: GroupKind::Exceptional {
                name: name.to_string(),
            },
            ring: data.ring.clone(),
            dim: data.rank,
        })
    }

    pub fn dihedral_real(e: u64) -> Result<GroupSpec> {
        if e < 3 {
            return Err(Error::UnsupportedGroup(
                "real dihedral groups need e >= 3".into(),
            ));
        }
        Ok(GroupSpec {
            kind: GroupKind::DihedralReal { e },
            ring: real_subfield_ring(e)?,
            dim: 2,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.ring.conductor()
    }

    /// Exact group order.
    pub fn order(&self) -> u64 {
        match &self.kind {
            GroupKind::Imprimitive { d, e, r } => {
                let de = d * e;
                let mut o = 1u64;
                for _ in 0..*r {
                    o *= de;
                }
                for k in 2..=*r as u64 {
                    o *= k;
                }
                o / e
            }
            GroupKind::Cyclic { d } => *d,
            GroupKind::Exceptional { name } => exceptional::lookup(name).unwrap().order,
            GroupKind::DihedralReal { e } => 2 * e,
        }
    }

    pub fn is_well_generated(&self) -> bool {
        match &self.kind {
            GroupKind::Imprimitive { d, e, .. } => *d == 1 || *e == 1,
            GroupKind::Cyclic { .. } => true,
            GroupKind::Exceptional { name } => exceptional::lookup(name).unwrap().well_generated,
            GroupKind::DihedralReal { .. } => true,
        }
    }

    fn zeta_de(&self, power: i64) -> CycNum {
        let n = self.conductor();
        match &self.kind {
            GroupKind::Imprimitive { d, e, .. } => {
                let de = d * e;
                CycNum::root_of_unity(de, power).lift_to(n)
            }
            _ => unreachable!(),
        }
    }

    /// The diagonal reflection multiplying coordinate `k` by `zeta_d^i`.
    fn diag_reflection(&self, k: usize, i: u64) -> Reflection {
        let (d, e, r) = match &self.kind {
            GroupKind::Imprimitive { d, e, r } => (*d, *e, *r),
            _ => unreachable!(),
        };
        let n = self.conductor();
        let mut m = cycmat::identity(r, n);
        m[k][k] = self.zeta_de((e * i) as i64);
        let _ = d;
        detect_reflection(&m, n).expect("diagonal reflection")
    }

    /// The involution swapping `e_k -> zeta_de^j e_l`, `e_l -> zeta_de^{-j} e_k`.
    fn swap_reflection(&self, k: usize, l: usize, j: i64) -> Reflection {
        let r = match &self.kind {
            GroupKind::Imprimitive { r, .. } => *r,
            _ => unreachable!(),
        };
        let n = self.conductor();
        let mut m = cycmat::identity(r, n);
        m[k][k] = CycNum::zero(n);
        m[l][l] = CycNum::zero(n);
        m[k][l] = self.zeta_de(j);
        m[l][k] = self.zeta_de(-j);
        detect_reflection(&m, n).expect("swap reflection")
    }

    /// All reflections of the group, in a deterministic order.
    pub fn reflections(&self) -> Result<Vec<Reflection>> {
        let n = self.conductor();
        match &self.kind {
            GroupKind::Cyclic { d } => {
                if *d == 1 {
                    return Ok(Vec::new());
                }
                Ok((1..*d)
                    .map(|i| {
                        let m = vec![vec![CycNum::root_of_unity(*d, i as i64).lift_to(n)]];
                        detect_reflection(&m, n).expect("cyclic reflection")
                    })
                    .collect())
            }
            GroupKind::Imprimitive { d, e, r } => {
                let mut out = Vec::new();
                if *d > 1 {
                    for k in 0..*r {
                        for i in 1..*d {
                            out.push(self.diag_reflection(k, i));
                        }
                    }
                }
                let de = d * e;
                if *r >= 2 {
                    for k in 0..*r {
                        for l in (k + 1)..*r {
                            for j in 0..de {
                                out.push(self.swap_reflection(k, l, j as i64));
                            }
                        }
                    }
                }
                Ok(out)
            }
            GroupKind::DihedralReal { e } => {
                // reflections are (st)^k s for 0 <= k < e
                let (s, t) = dihedral_generators(*e)?;
                let st = cycmat::mat_mul(&s.matrix, &t.matrix);
                let mut out = Vec::new();
                let mut rot = cycmat::identity(2, n);
                for _ in 0..*e {
                    let m = cycmat::mat_mul(&rot, &s.matrix);
                    out.push(
                        detect_reflection(&m, n)
                            .ok_or_else(|| Error::Degenerate("dihedral reflection".into()))?,
                    );
                    rot = cycmat::mat_mul(&rot, &st);
                }
                out.sort_by_key(|s| s.key());
                Ok(out)
            }
            GroupKind::Exceptional { .. } => {
                let gens = self.standard_generators()?;
                // conjugation closure of the generators
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
                        let conj = cycmat::mat_mul(&g.matrix, &cycmat::mat_mul(&t.matrix, &gi));
                        let key = cycmat::canonical_key(&conj);
                        if !seen.contains_key(&key) {
                            let refl = detect_reflection(&conj, n)
                                .ok_or_else(|| Error::Degenerate("conjugate".into()))?;
                            seen.insert(key, refl.clone());
                            frontier.push(refl);
                        }
                    }
                }
                // close under powers
                let closure: Vec<Reflection> = seen.values().cloned().collect();
                for s in closure {
                    let mut m = cycmat::mat_mul(&s.matrix, &s.matrix);
                    for _ in 2..s.order {
                        let key = cycmat::canonical_key(&m);
                        if !seen.contains_key(&key) {
                            if let Some(refl) = detect_reflection(&m, n) {
                                seen.insert(key, refl);
                            }
                        }
                        m = cycmat::mat_mul(&m, &s.matrix);
                    }
                }
                Ok(seen.into_values().collect())
            }
        }
    }

    /// The standard generating reflections.
    pub fn standard_generators(&self) -> Result<Vec<Reflection>> {
        match &self.kind {
            GroupKind::Cyclic { d } => {
                if *d == 1 {
                    return Ok(Vec::new());
                }
                let n = self.conductor();
                let m = vec![vec![CycNum::zeta(*d).lift_to(n)]];
                Ok(vec![detect_reflection(&m, n).expect("cyclic generator")])
            }
            GroupKind::Imprimitive { d, e, r } => {
                let mut gens = Vec::new();
                if *r >= 2 {
                    for k in 0..(*r - 1) {
                        gens.push(self.swap_reflection(k, k + 1, 0));
                    }
                    if *e > 1 {
                        gens.push(self.swap_reflection(*r - 2, *r - 1, 1));
                    }
                }
                if *d > 1 {
                    gens.push(self.diag_reflection(*r - 1, 1));
                }
                Ok(gens)
            }
            GroupKind::DihedralReal { e } => {
                let (s, t) = dihedral_generators(*e)?;
                Ok(vec![s, t])
            }
            GroupKind::Exceptional { name } => {
                let data = exceptional::lookup(name)?;
                let n = data.ring.conductor();
                let side = data.cartan.len();
                let r = data.rank;
                // Roots alpha_1..alpha_side span an r-dimensional space. For
                // side = r they are a basis; for side = r + 1 one root is a
                // combination of the others, read off the kernel of C.
                let (basis_idx, dependent): (Vec<usize>, Option<(usize, Vec<CycNum>)>) =
                    if side == r {
                        ((0..side).collect(), None)
                    } else {
                        let kernel = {
                            // left kernel of C: lambda * C = 0
                            let ct = cycmat::transpose(&data.cartan);
                            cycmat::kernel(&ct)
                        };
                        if kernel.len() != 1 {
                            return Err(Error::Data(format!(
                                "{name}: Cartan matrix has corank {}",
                                kernel.len()
                            )));
                        }
                        let lambda = &kernel[0];
                        let t0 = (0..side)
                            .rev()
                            .find(|&i| !lambda[i].is_zero())
                            .expect("nonzero kernel vector");
                        // alpha_{t0} = sum_{i != t0} mu_i alpha_i
                        let inv = lambda[t0].inv()?.neg();
                        let mu: Vec<CycNum> = (0..side)
                            .filter(|&i| i != t0)
                            .map(|i| lambda[i].mul(&inv))
                            .collect();
                        ((0..side).filter(|&i| i != t0).collect(), Some((t0, mu)))
                    };
                let pos = |i: usize| basis_idx.iter().position(|&b| b == i);
                let mut gens = Vec::new();
                for t in 0..side {
                    let mut m = cycmat::identity(r, n);
                    // s_t(alpha_j) = alpha_j - C[j][t] alpha_t
                    match (pos(t), &dependent) {
                        (Some(tp), _) => {
                            for (jp, &j) in basis_idx.iter().enumerate() {
                                m[tp][jp] = m[tp][jp].sub(&data.cartan[j][t]);
                            }
                        }
                        (None, Some((_, mu))) => {
                            for (jp, &j) in basis_idx.iter().enumerate() {
                                for ip in 0..r {
                                    let v = data.cartan[j][t].mul(&mu[ip]);
                                    m[ip][jp] = m[ip][jp].sub(&v);
                                }
                            }
                        }
                        (None, None) => unreachable!(),
                    }
                    let zeta = CycNum::one(n).sub(&data.cartan[t][t]);
                    let refl = detect_reflection(&m, n).ok_or_else(|| {
                        Error::Data(format!("{name}: generator {t} is not a reflection"))
                    })?;
                    if refl.zeta != zeta {
                        return Err(Error::Data(format!(
                            "{name}: generator {t} has determinant {} instead of {zeta}",
                            refl.zeta
                        )));
                    }
                    gens.push(refl);
                }
                Ok(gens)
            }
        }
    }

    /// Explicit element enumeration (BFS over the generators), capped.
    pub fn elements(&self, cap: usize) -> Result<Vec<CycMat>> {
        let gens = self.standard_generators()?;
        let n = self.conductor();
        let dim = self.dim;
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let id = cycmat::identity(dim, n);
        seen.insert(cycmat::canonical_key(&id));
        let mut out = vec![id.clone()];
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for m in &frontier {
                for g in &gens {
                    let prod = cycmat::mat_mul(&g.matrix, m);
                    let key = cycmat::canonical_key(&prod);
                    if seen.insert(key) {
                        out.push(prod.clone());
                        next.push(prod);
                        if out.len() > cap {
                            return Err(Error::CapExceeded(format!(
                                "group enumeration exceeded {cap} elements"
                            )));
                        }
                    }
                }
            }
            frontier = next;
        }
        Ok(out)
    }

    /// Reflections whose hyperplane contains every vector of `xs`; by
    /// Steinberg's theorem these generate the pointwise fixator.
    pub fn parabolic_fixator(&self, xs: &[CycVec]) -> Result<Vec<Reflection>> {
        let n = self.conductor();
        let out: Vec<Reflection> = self
            .reflections()?
            .into_iter()
            .filter(|s| {
                xs.iter().all(|x| {
                    let x = cycmat::embed_vec(x, n);
                    let img = cycmat::mat_vec(&s.matrix, &x);
                    img.iter().zip(&x).all(|(a, b)| a == b)
                })
            })
            .collect();
        Ok(out)
    }

    /// The reflections with determinant `exp(2 pi i / |C_G(H)|)`: exactly one
    /// per reflecting hyperplane.
    pub fn distinguished_reflections(&self) -> Result<Vec<Reflection>> {
        let refs = self.reflections()?;
        distinguished_among(&refs)
    }

    /// A `G`-invariant positive definite Hermitian form, as the Gram matrix
    /// over the standard basis: the average of `g^T conj(g)` over the group.
    pub fn invariant_hermitian_form(&self, cap: usize) -> Result<CycMat> {
        if (self.order() as usize) > cap {
            return Err(Error::CapExceeded(
                "invariant form needs an enumerable group".into(),
            ));
        }
        let elems = self.elements(cap)?;
        averaged_invariant_form(&elems, self.dim, self.conductor())
    }
}

/// Average `g^T conj(g)` over a full list of group elements; verified to be
/// Hermitian and positive definite (leading minors totally positive).
pub fn averaged_invariant_form(elems: &[CycMat], dim: usize, n: u64) -> Result<CycMat> {
    let count = CycNum::from_rational(BigRational::new(
        num_bigint::BigInt::from(1),
        num_bigint::BigInt::from(elems.len() as i64),
    ));
    let mut acc = cycmat::zeros(dim, dim, n);
    for g in elems {
        let gt = cycmat::transpose(g);
        let gc = cycmat::conj_mat(g);
        let term = cycmat::mat_mul(&gt, &gc);
        for i in 0..dim {
            for j in 0..dim {
                acc[i][j] = acc[i][j].add(&term[i][j]);
            }
        }
    }
    for row in acc.iter_mut() {
        for v in row.iter_mut() {
            *v = v.mul(&count);
        }
    }
    for i in 0..dim {
        for j in 0..dim {
            if acc[i][j] != acc[j][i].conj() {
                return Err(Error::Verification("form is not Hermitian".into()));
            }
        }
    }
    if !is_positive_definite(&acc)? {
        return Err(Error::Verification("form is not positive definite".into()));
    }
    Ok(acc)
}

/// Positive definiteness of a Hermitian Gram matrix: all leading principal
/// minors totally positive (positive in every real embedding).
pub fn is_positive_definite(gram: &CycMat) -> Result<bool> {
    let n = gram.len();
    for k in 1..=n {
        let sub: CycMat = (0..k)
            .map(|i| (0..k).map(|j| gram[i][j].clone()).collect())
            .collect();
        let d = cycmat::det(&sub);
        if !realsign::totally_positive(&d)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pick out the distinguished reflections from a saturated reflection set.
pub fn distinguished_among(refs: &[Reflection]) -> Result<Vec<Reflection>> {
    // group by reflecting line (equivalently hyperplane)
    let mut by_line: BTreeMap<Vec<u8>, Vec<&Reflection>> = BTreeMap::new();
    for s in refs {
        by_line.entry(cycmat::vec_key(&s.line)).or_default().push(s);
    }
    let mut out = Vec::new();
    for (_, group) in by_line {
        let c = group.len() as u64 + 1;
        let target = CycNum::root_of_unity(c, 1);
        let found = group.iter().find(|s| s.zeta == target).ok_or_else(|| {
            Error::Degenerate("no distinguished reflection for a hyperplane".into())
        })?;
        out.push((*found).clone());
    }
    Ok(out)
}

/// Partition a saturated set of reflections into conjugacy classes under the
/// group generated by `gens`.
pub fn reflection_classes(refs: &[Reflection], gens: &[Reflection]) -> Vec<Vec<Reflection>> {
    let mut index: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for (i, r) in refs.iter().enumerate() {
        index.insert(r.key(), i);
    }
    let mut assigned = vec![usize::MAX; refs.len()];
    let mut classes: Vec<Vec<Reflection>> = Vec::new();
    for start in 0..refs.len() {
        if assigned[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut frontier = vec![start];
        assigned[start] = id;
        let mut members = vec![refs[start].clone()];
        while let Some(i) = frontier.pop() {
            for g in gens {
                let gi = cycmat::inverse(&g.matrix).expect("invertible");
                let c = cycmat::mat_mul(&g.matrix, &cycmat::mat_mul(&refs[i].matrix, &gi));
                if let Some(&j) = index.get(&cycmat::canonical_key(&c)) {
                    if assigned[j] == usize::MAX {
                        assigned[j] = id;
                        members.push(refs[j].clone());
                        frontier.push(j);
                    }
                }
            }
        }
        classes.push(members);
    }
    classes
}

/// Generators of the dihedral group of order `2e` over the real subfield.
pub fn dihedral_generators(e: u64) -> Result<(Reflection, Reflection)> {
    let ring = real_subfield_ring(e)?;
    let n = ring.conductor();
    let c = CycNum::from_integer(2)
        .lift_to(n)
        .add(&CycNum::zeta(n))
        .add(&CycNum::root_of_unity(n, -1));
    let zero = CycNum::zero(n);
    let one = CycNum::one(n);
    let s = vec![vec![one.neg(), c], vec![zero.clone(), one.clone()]];
    let t = vec![
        vec![one.clone(), zero.clone()],
        vec![one.clone(), one.neg()],
    ];
    let s = detect_reflection(&s, n).ok_or_else(|| Error::Degenerate("dihedral s".into()))?;
    let t = detect_reflection(&t, n).ok_or_else(|| Error::Degenerate("dihedral t".into()))?;
    Ok((s, t))
}
