//! Isomorphism decision: quandle tables by pruned backtracking, meshes by
//! homology search, and the criterion for meshes with one cyclic main orbit.

use std::collections::HashMap;

use serde::Serialize;

use crate::abelian::{isomorphisms, subgroup_generated, GroupElem, GroupHom};
use crate::congruence::{all_congruences, Congruence};
use crate::construct::SiqSpec;
use crate::error::{Error, Result};
use crate::mesh::{canonical_mesh, AffineMesh};
use crate::quandle::Quandle;

/// Default bound on summand orders for enumerating group isomorphisms.
pub const DEFAULT_AUT_CAP: usize = 256;

/// Cheap isomorphism invariants of a quandle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct InvariantFingerprint {
    pub size: usize,
    pub orbit_sizes: Vec<usize>,
    pub reductivity: Option<usize>,
    pub involutory: bool,
    pub row_cycle_types: Vec<Vec<usize>>,
    /// Number of congruences, when the lattice fits under the cap.
    pub congruence_count: Option<usize>,
}

pub fn fingerprint(q: &Quandle, lattice_cap: usize) -> InvariantFingerprint {
    let mut orbit_sizes: Vec<usize> = q.orbits().iter().map(Vec::len).collect();
    orbit_sizes.sort_unstable_by(|a, b| b.cmp(a));
    let mut row_cycle_types: Vec<Vec<usize>> =
        (0..q.size()).map(|a| q.left_translation(a).cycle_type()).collect();
    row_cycle_types.sort();
    InvariantFingerprint {
        size: q.size(),
        orbit_sizes,
        reductivity: q.reductivity_degree(),
        involutory: q.is_involutory(),
        row_cycle_types,
        congruence_count: all_congruences(q, lattice_cap).ok().map(|l| l.len()),
    }
}

/// Per-element invariants preserved by isomorphisms.
fn element_invariants(q: &Quandle) -> Vec<Vec<usize>> {
    let n = q.size();
    let orbits = q.orbits();
    let orbit_size: Vec<usize> = {
        let mut v = vec![0; n];
        for o in &orbits {
            for &x in o {
                v[x] = o.len();
            }
        }
        v
    };
    (0..n)
        .map(|x| {
            let mut inv = vec![orbit_size[x]];
            inv.extend(q.left_translation(x).cycle_type());
            let mut column = vec![false; n];
            let mut fixed = 0;
            for y in 0..n {
                column[q.op(y, x)] = true;
                if q.op(y, x) == x {
                    fixed += 1;
                }
            }
            inv.push(usize::MAX);
            inv.push(column.iter().filter(|&&b| b).count());
            inv.push(fixed);
            inv.push((0..n).filter(|&y| q.row(y) == q.row(x)).count());
            inv
        })
        .collect()
}

struct TableSearch<'a> {
    q1: &'a Quandle,
    q2: &'a Quandle,
    class1: Vec<usize>,
    class2: Vec<usize>,
    by_class: Vec<Vec<usize>>,
    order: Vec<usize>,
    f: Vec<usize>,
    g: Vec<usize>,
    trail: Vec<usize>,
}

const UNMAPPED: usize = usize::MAX;

impl TableSearch<'_> {
    /// Maps `x ↦ y` and everything it forces; `false` on contradiction.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((u, v)) = queue.pop() {
            if self.f[u] == v {
                continue;
            }
            if self.f[u] != UNMAPPED || self.g[v] != UNMAPPED || self.class1[u] != self.class2[v] {
                return false;
            }
            self.f[u] = v;
            self.g[v] = u;
            self.trail.push(u);
            for k in 0..self.trail.len() {
                let w = self.trail[k];
                let fw = self.f[w];
                queue.push((self.q1.op(u, w), self.q2.op(v, fw)));
                queue.push((self.q1.op(w, u), self.q2.op(fw, v)));
                queue.push((self.q1.ldiv(u, w), self.q2.ldiv(v, fw)));
                queue.push((self.q1.ldiv(w, u), self.q2.ldiv(fw, v)));
            }
        }
        true
    }

    fn undo(&mut self, len: usize) {
        while self.trail.len() > len {
            let u = self.trail.pop().expect("non-empty");
            self.g[self.f[u]] = UNMAPPED;
            self.f[u] = UNMAPPED;
        }
    }

    fn search(&mut self) -> bool {
        let Some(&x) = self.order.iter().find(|&&x| self.f[x] == UNMAPPED) else {
            return true;
        };
        let candidates = self.by_class[self.class1[x]].clone();
        for y in candidates {
            if self.g[y] != UNMAPPED {
                continue;
            }
            let len = self.trail.len();
            if self.assign(x, y) && self.search() {
                return true;
            }
            self.undo(len);
        }
        false
    }
}

/// Checks that `f` is a bijection with `f(a * b) = f(a) * f(b)`.
pub fn is_isomorphism(q1: &Quandle, q2: &Quandle, f: &[usize]) -> bool {
    let n = q1.size();
    if q2.size() != n || f.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in f {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    (0..n).all(|a| (0..n).all(|b| f[q1.op(a, b)] == q2.op(f[a], f[b])))
}

/// An isomorphism `q1 → q2` as an image vector, if one exists.
pub fn quandle_isomorphic(q1: &Quandle, q2: &Quandle) -> Option<Vec<usize>> {
    let n = q1.size();
    if q2.size() != n {
        return None;
    }
    let inv1 = element_invariants(q1);
    let inv2 = element_invariants(q2);
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut class = |inv: &Vec<usize>| {
        let next = ids.len();
        *ids.entry(inv.clone()).or_insert(next)
    };
    let class1: Vec<usize> = inv1.iter().map(&mut class).collect();
    let class2: Vec<usize> = inv2.iter().map(&mut class).collect();
    let mut count1 = vec![0usize; ids.len()];
    let mut by_class = vec![Vec::new(); ids.len()];
    for &c in &class1 {
        count1[c] += 1;
    }
    for (y, &c) in class2.iter().enumerate() {
        by_class[c].push(y);
    }
    if count1.iter().zip(&by_class).any(|(&a, b)| a != b.len()) {
        return None;
    }
    // orbit representatives first, largest orbits first
    let mut orbits = q1.orbits();
    orbits.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let mut order: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
    order.extend(orbits.iter().flat_map(|o| o[1..].iter().copied()));
    let mut s = TableSearch {
        q1,
        q2,
        class1,
        class2,
        by_class,
        order,
        f: vec![UNMAPPED; n],
        g: vec![UNMAPPED; n],
        trail: Vec::with_capacity(n),
    };
    if !s.search() {
        return None;
    }
    debug_assert!(is_isomorphism(q1, q2, &s.f));
    Some(s.f)
}

/// A homology `(σ, ψ_i, d_i)` from one mesh to another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeshIsoWitness {
    pub sigma: Vec<usize>,
    pub psi: Vec<GroupHom>,
    pub d: Vec<GroupElem>,
}

fn h1_holds(m1: &AffineMesh, m2: &AffineMesh, w: &MeshIsoWitness, i: usize, j: usize) -> bool {
    let lhs = w.psi[j].compose(m1.phi(i, j)).expect("composable");
    let rhs = m2.phi(w.sigma[i], w.sigma[j]).compose(&w.psi[i]).expect("composable");
    lhs == rhs
}

fn h2_holds(m1: &AffineMesh, m2: &AffineMesh, w: &MeshIsoWitness, i: usize, j: usize) -> bool {
    let (si, sj) = (w.sigma[i], w.sigma[j]);
    let g = m2.group(sj);
    let lhs = w.psi[j].map(m1.c(i, j));
    let rhs = g.sub(
        &g.add(m2.c(si, sj), &m2.phi(si, sj).map(&w.d[i])),
        &m2.phi(sj, sj).map(&w.d[j]),
    );
    lhs == rhs
}

impl MeshIsoWitness {
    /// Replays (H1) and (H2) for every pair of indices.
    pub fn verify(&self, m1: &AffineMesh, m2: &AffineMesh) -> bool {
        let k = m1.len();
        if m2.len() != k || self.sigma.len() != k || self.psi.len() != k || self.d.len() != k {
            return false;
        }
        let mut seen = vec![false; k];
        for i in 0..k {
            let s = self.sigma[i];
            if s >= k
                || std::mem::replace(&mut seen[s], true)
                || self.psi[i].source() != m1.group(i)
                || self.psi[i].target() != m2.group(s)
                || !self.psi[i].is_injective()
                || !self.psi[i].is_surjective()
                || !m2.group(s).contains(&self.d[i])
            {
                return false;
            }
        }
        (0..k).all(|i| (0..k).all(|j| h1_holds(m1, m2, self, i, j) && h2_holds(m1, m2, self, i, j)))
    }
}

/// Homology-invariant data of summand `i`, used to restrict `σ`.
fn summand_signature(m: &AffineMesh, i: usize) -> Vec<Vec<u64>> {
    let k = m.len();
    let mut sig = vec![
        m.group(i).elementary_divisors(),
        vec![m.phi(i, i).image().len() as u64],
    ];
    let mut rows: Vec<Vec<u64>> = (0..k)
        .map(|j| {
            let mut gens: Vec<GroupElem> = vec![m.c(i, j).clone()];
            for h in [m.phi(i, j), m.phi(j, j)] {
                gens.extend((0..h.source().rank()).map(|g| h.image_of_generator(g)));
            }
            let span = subgroup_generated(m.group(j), &gens).expect("elements of A_j").len();
            let mut row = m.group(j).elementary_divisors();
            row.push(0);
            row.extend([
                m.phi(i, j).image().len() as u64,
                m.phi(j, i).image().len() as u64,
                span as u64,
            ]);
            row
        })
        .collect();
    rows.sort();
    sig.extend(rows);
    sig
}

struct HomologySearch<'a> {
    m1: &'a AffineMesh,
    m2: &'a AffineMesh,
    order: Vec<usize>,
    /// `isos[i][j]`: isomorphisms `A_i → A'_j` intertwining `φ_{i,i}` and `φ'_{j,j}`.
    isos: Vec<Vec<Vec<GroupHom>>>,
    witness: MeshIsoWitness,
    assigned: Vec<bool>,
    used: Vec<bool>,
}

impl HomologySearch<'_> {
    fn consistent(&self, i: usize) -> bool {
        let w = &self.witness;
        (0..self.m1.len()).filter(|&l| self.assigned[l]).all(|l| {
            h1_holds(self.m1, self.m2, w, i, l)
                && h1_holds(self.m1, self.m2, w, l, i)
                && h2_holds(self.m1, self.m2, w, i, l)
                && h2_holds(self.m1, self.m2, w, l, i)
        })
    }

    fn h1_consistent(&self, i: usize) -> bool {
        let w = &self.witness;
        (0..self.m1.len())
            .filter(|&l| self.assigned[l])
            .all(|l| h1_holds(self.m1, self.m2, w, i, l) && h1_holds(self.m1, self.m2, w, l, i))
    }

    fn search(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let i = self.order[depth];
        for j in 0..self.m2.len() {
            if self.used[j] || self.isos[i][j].is_empty() {
                continue;
            }
            self.witness.sigma[i] = j;
            self.used[j] = true;
            for p in 0..self.isos[i][j].len() {
                self.witness.psi[i] = self.isos[i][j][p].clone();
                if !self.h1_consistent(i) {
                    continue;
                }
                let target = self.m2.group(j).clone();
                for d in target.elements() {
                    self.witness.d[i] = d;
                    self.assigned[i] = true;
                    let ok = self.consistent(i);
                    if ok && self.search(depth + 1) {
                        return true;
                    }
                    self.assigned[i] = false;
                }
            }
            self.used[j] = false;
        }
        false
    }
}

/// Searches for a homology `m1 → m2`. Errors if a summand is larger than `cap`.
pub fn are_homologous(m1: &AffineMesh, m2: &AffineMesh, cap: usize) -> Result<Option<MeshIsoWitness>> {
    let k = m1.len();
    if m2.len() != k {
        return Ok(None);
    }
    let sig1: Vec<_> = (0..k).map(|i| summand_signature(m1, i)).collect();
    let sig2: Vec<_> = (0..k).map(|i| summand_signature(m2, i)).collect();
    let (mut s1, mut s2) = (sig1.clone(), sig2.clone());
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(None);
    }
    let mut isos = vec![vec![Vec::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            if sig1[i] != sig2[j] {
                continue;
            }
            isos[i][j] = isomorphisms(m1.group(i), m2.group(j), cap)?
                .into_iter()
                .filter(|psi| {
                    psi.compose(m1.phi(i, i)).expect("composable")
                        == m2.phi(j, j).compose(psi).expect("composable")
                })
                .collect();
        }
    }
    // large summands first so that trivial summands never cause backtracking
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| m1.group(b).order().cmp(&m1.group(a).order()).then(a.cmp(&b)));
    let mut s = HomologySearch {
        m1,
        m2,
        order,
        isos,
        witness: MeshIsoWitness {
            sigma: vec![0; k],
            psi: (0..k).map(|i| GroupHom::identity(m1.group(i))).collect(),
            d: (0..k).map(|i| m1.group(i).zero()).collect(),
        },
        assigned: vec![false; k],
        used: vec![false; k],
    };
    if !s.search(0) {
        return Ok(None);
    }
    debug_assert!(s.witness.verify(m1, m2));
    Ok(Some(s.witness))
}

/// Decides isomorphism of two medial quandles both by table search and by
/// homology of their canonical meshes; errors if the two disagree.
pub fn iso_equiv_check(q1: &Quandle, q2: &Quandle, cap: usize) -> Result<bool> {
    let (m1, _) = canonical_mesh(q1)?;
    let (m2, _) = canonical_mesh(q2)?;
    let by_table = quandle_isomorphic(q1, q2);
    if let Some(f) = &by_table {
        if !is_isomorphism(q1, q2, f) {
            return Err(Error::ConsistencyFailure("table witness does not replay".into()));
        }
    }
    let by_mesh = are_homologous(&m1, &m2, cap)?;
    if let Some(w) = &by_mesh {
        if !w.verify(&m1, &m2) {
            return Err(Error::ConsistencyFailure("homology witness does not replay".into()));
        }
    }
    if by_table.is_some() != by_mesh.is_some() {
        return Err(Error::ConsistencyFailure(format!(
            "table isomorphism says {}, mesh homology says {}",
            by_table.is_some(),
            by_mesh.is_some()
        )));
    }
    Ok(by_table.is_some())
}

/// The data of a mesh over `Z_{p^s}` presenting a `siq` with `φ = p^k·a`.
struct CyclicShape {
    p: u64,
    k: u32,
    t: i64,
    /// `c_{i,0}` for the non-main indices, as residues mod `p^s`.
    c: Vec<u64>,
}

fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut s = 0;
    while m.is_multiple_of(p) {
        m /= p;
        s += 1;
    }
    (m == 1).then_some((p, s))
}

fn cyclic_shape(m: &AffineMesh) -> Result<CyclicShape> {
    let a = m.group(0);
    let orders = a.orders();
    let (p, s) = match orders {
        [n] => prime_power(*n).ok_or_else(|| Error::ShapeMismatch(format!("{a} is not a cyclic p-group")))?,
        _ => return Err(Error::ShapeMismatch(format!("{a} is not cyclic"))),
    };
    let n = orders[0];
    let phi = m.phi(0, 0).matrix()[0][0];
    if phi == 0 {
        return Err(Error::ShapeMismatch("phi is zero".into()));
    }
    let mut k = 0;
    let mut rest = phi;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    if k == 0 || k >= s {
        return Err(Error::ShapeMismatch(format!("phi = {phi} is not p^k a with 0 < k < s")));
    }
    let t = (1 + n as i64 - phi as i64) % n as i64;
    let c: Vec<u64> = (1..m.len()).map(|i| m.c(i, 0).0[0]).collect();
    let module = crate::abelian::LaurentModule::cyclic(n, t)?;
    let elems = c.iter().map(|&x| GroupElem(vec![x])).collect();
    let spec = SiqSpec::new_allow_non_si_module(module, elems)
        .map_err(|e| Error::ShapeMismatch(format!("constants: {e}")))?;
    let expected = spec.mesh()?;
    let same = expected.len() == m.len()
        && (0..m.len()).all(|i| {
            expected.group(i) == m.group(i)
                && (0..m.len()).all(|j| expected.phi(i, j) == m.phi(i, j) && expected.c(i, j) == m.c(i, j))
        });
    if !same {
        return Err(Error::ShapeMismatch("mesh is not of siq shape".into()));
    }
    Ok(CyclicShape { p, k, t, c })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out.sort();
    out
}

/// Isomorphism test for two siq-shaped meshes over the same `(Z_{p^s}, t)`
/// with `φ = p^k a`. The sums are isomorphic iff some unit `u` and some
/// permutation `σ` of the non-main indices give `u·c_i ≡ c'_{σ(i)} (mod p^k)`;
/// the fast path checks the equivalent bilinear condition
/// `c_i c'_{σ(j)} − c_j c'_{σ(i)} ≡ 0 (mod p^k)`. Both are evaluated and must agree.
pub fn cyclic_iso_criterion(m1: &AffineMesh, m2: &AffineMesh) -> Result<bool> {
    let a = cyclic_shape(m1)?;
    let b = cyclic_shape(m2)?;
    if m1.group(0) != m2.group(0) || a.t != b.t {
        return Err(Error::ShapeMismatch("meshes are over different modules".into()));
    }
    if a.c.len() != b.c.len() {
        return Err(Error::ShapeMismatch("meshes have different index sets".into()));
    }
    let pk = a.p.pow(a.k);
    let in_image = |x: u64| x.is_multiple_of(pk);
    let zeros_a = a.c.iter().filter(|&&x| in_image(x)).count();
    let zeros_b = b.c.iter().filter(|&&x| in_image(x)).count();
    if !((zeros_a == 0 && zeros_b == 0) || (zeros_a == 1 && zeros_b == 1)) {
        return Err(Error::ShapeMismatch(
            "constants must all avoid phi(A), or exactly one in each mesh lies in it".into(),
        ));
    }
    let n = a.c.len();
    let ca: Vec<u64> = a.c.iter().map(|x| x % pk).collect();
    let cb: Vec<u64> = b.c.iter().map(|x| x % pk).collect();
    let perms = permutations(n);
    let bilinear = perms.iter().any(|s| {
        (0..n).all(|i| (0..n).all(|j| (ca[i] * cb[s[j]] + pk * pk - (ca[j] * cb[s[i]]) % pk).is_multiple_of(pk)))
    });
    let units: Vec<u64> = (1..pk).filter(|u| u % a.p != 0).collect();
    let linear = perms
        .iter()
        .any(|s| units.iter().any(|u| (0..n).all(|i| (u * ca[i]) % pk == cb[s[i]])));
    if bilinear != linear {
        return Err(Error::ConsistencyFailure(format!(
            "bilinear condition says {bilinear}, unit search says {linear}"
        )));
    }
    Ok(linear)
}

/// Block-size profile of the whole congruence lattice (sorted).
pub fn lattice_shape(q: &Quandle, cap: usize) -> Result<Vec<Vec<usize>>> {
    let lat: Vec<Congruence> = all_congruences(q, cap)?;
    Ok(crate::congruence::lattice_profile(&lat))
}
