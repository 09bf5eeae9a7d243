//! Congruences of finite quandles: principal congruences, the full lattice,
//! monolith and SI tests, the orbit/row congruences, and the correspondence
//! between congruences below the orbit partition and submodule families of a
//! mesh.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abelian::{subgroup_generated, GroupHom, Subgroup};
use crate::error::{Error, Result};
use crate::mesh::{AffineMesh, LabeledSum};
use crate::quandle::Quandle;

/// Default cap on the number of congruences materialised by [`all_congruences`].
pub const DEFAULT_LATTICE_CAP: usize = 100_000;

/// A partition of `0..n`, stored as sorted blocks ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Serialize for Congruence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Congruence {
    /// Deserialises the partition only; use [`Congruence::from_blocks`] to
    /// check compatibility with a quandle.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(d)?;
        Congruence::partition(blocks).map_err(serde::de::Error::custom)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let n = self.parent.len();
        let labels: Vec<usize> = (0..n).map(|x| self.find(x)).collect();
        Congruence::from_labels(&labels)
    }
}

impl Congruence {
    fn from_labels(labels: &[usize]) -> Congruence {
        let n = labels.len();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0; n];
        let mut id_of = std::collections::HashMap::new();
        for x in 0..n {
            let id = *id_of.entry(labels[x]).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[id].push(x);
            block_of[x] = id;
        }
        Congruence { blocks, block_of }
    }

    /// A partition of `0..n` (no compatibility check).
    pub fn partition(blocks: Vec<Vec<usize>>) -> Result<Congruence> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut labels = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::Format("empty block".into()));
            }
            for &x in b {
                if x >= n || labels[x] != usize::MAX {
                    return Err(Error::Format(format!("blocks do not partition 0..{n}")));
                }
                labels[x] = i;
            }
        }
        Ok(Congruence::from_labels(&labels))
    }

    /// A partition of the quandle's carrier, verified compatible with `*` and `\`.
    pub fn from_blocks(q: &Quandle, blocks: Vec<Vec<usize>>) -> Result<Congruence> {
        let c = Congruence::partition(blocks)?;
        if c.size() != q.size() {
            return Err(Error::Format(format!(
                "partition of {} elements for a quandle of size {}",
                c.size(),
                q.size()
            )));
        }
        if let Some((x, y)) = c.incompatibility(q) {
            return Err(Error::Format(format!(
                "partition is not a congruence: translates of ({x}, {y}) split"
            )));
        }
        Ok(c)
    }

    /// A pair in a common block whose translates fall in different blocks.
    fn incompatibility(&self, q: &Quandle) -> Option<(usize, usize)> {
        let n = q.size();
        for b in &self.blocks {
            for w in b.windows(2) {
                let (x, y) = (w[0], w[1]);
                for z in 0..n {
                    if !self.related(q.op(z, x), q.op(z, y))
                        || !self.related(q.op(x, z), q.op(y, z))
                        || !self.related(q.ldiv(z, x), q.ldiv(z, y))
                        || !self.related(q.ldiv(x, z), q.ldiv(y, z))
                    {
                        return Some((x, y));
                    }
                }
            }
        }
        None
    }

    pub fn is_compatible_with(&self, q: &Quandle) -> bool {
        self.size() == q.size() && self.incompatibility(q).is_none()
    }

    pub fn diagonal(n: usize) -> Congruence {
        Congruence::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn full(n: usize) -> Congruence {
        Congruence::from_labels(&vec![0; n])
    }

    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, x: usize) -> &[usize] {
        &self.blocks[self.block_of[x]]
    }

    pub fn block_index(&self, x: usize) -> usize {
        self.block_of[x]
    }

    /// Least element of the block of `x`.
    pub fn representative(&self, x: usize) -> usize {
        self.blocks[self.block_of[x]][0]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn is_diagonal(&self) -> bool {
        self.blocks.len() == self.size()
    }

    pub fn is_full(&self) -> bool {
        self.blocks.len() <= 1
    }

    /// Blocks with more than one element.
    pub fn nontrivial_blocks(&self) -> Vec<&[usize]> {
        self.blocks.iter().filter(|b| b.len() > 1).map(Vec::as_slice).collect()
    }

    /// Block sizes in non-increasing order.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// `self ⊆ other` as relations.
    pub fn is_below(&self, other: &Congruence) -> bool {
        self.blocks.iter().all(|b| b.iter().all(|&x| other.related(x, b[0])))
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let n = self.size();
        let labels: Vec<usize> = (0..n)
            .map(|x| self.block_of[x] * other.num_blocks() + other.block_of[x])
            .collect();
        Congruence::from_labels(&labels)
    }

    /// Join as equivalence relations (for congruences this is the congruence join).
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.size());
        for c in [self, other] {
            for b in &c.blocks {
                for &x in &b[1..] {
                    uf.union(b[0], x);
                }
            }
        }
        uf.into_congruence()
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (k, x) in b.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

fn check_index(q: &Quandle, x: usize) -> Result<()> {
    if x >= q.size() {
        return Err(Error::IndexOutOfRange {
            index: x,
            size: q.size(),
        });
    }
    Ok(())
}

/// Least congruence collapsing all the given pairs, by congruence closure:
/// whenever `x ≡ y` is newly merged, its translates by every `z` are queued.
pub fn generated_congruence(q: &Quandle, pairs: &[(usize, usize)]) -> Result<Congruence> {
    for &(a, b) in pairs {
        check_index(q, a)?;
        check_index(q, b)?;
    }
    let n = q.size();
    let mut uf = UnionFind::new(n);
    let mut queue: VecDeque<(usize, usize)> = pairs.iter().copied().collect();
    while let Some((x, y)) = queue.pop_front() {
        if !uf.union(x, y) {
            continue;
        }
        for z in 0..n {
            queue.push_back((q.op(z, x), q.op(z, y)));
            queue.push_back((q.op(x, z), q.op(y, z)));
            queue.push_back((q.ldiv(z, x), q.ldiv(z, y)));
            queue.push_back((q.ldiv(x, z), q.ldiv(y, z)));
        }
    }
    Ok(uf.into_congruence())
}

/// `Θ(a, b)`, the least congruence collapsing `a` and `b`.
pub fn principal_congruence(q: &Quandle, a: usize, b: usize) -> Result<Congruence> {
    generated_congruence(q, &[(a, b)])
}

/// Distinct principal congruences `Θ(a, b)` for `a < b`.
pub fn distinct_principals(q: &Quandle) -> Vec<Congruence> {
    let n = q.size();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let c = principal_congruence(q, a, b).expect("indices in range");
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
    }
    out
}

/// The whole congruence lattice, sorted by decreasing number of blocks and
/// then by block encoding. Every congruence is a join of principals, so the
/// lattice is the closure of `{⊥} ∪ principals` under joins with principals.
pub fn all_congruences(q: &Quandle, cap: usize) -> Result<Vec<Congruence>> {
    let n = q.size();
    let principals = distinct_principals(q);
    let mut seen: HashSet<Congruence> = HashSet::new();
    let mut queue = VecDeque::new();
    for c in std::iter::once(Congruence::diagonal(n)).chain(principals.iter().cloned()) {
        if seen.insert(c.clone()) {
            queue.push_back(c);
        }
    }
    while let Some(c) = queue.pop_front() {
        for p in &principals {
            if p.is_below(&c) {
                continue;
            }
            let j = c.join(p);
            if !seen.contains(&j) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "congruence lattice",
                        cap,
                    });
                }
                seen.insert(j.clone());
                queue.push_back(j);
            }
        }
    }
    let mut out: Vec<Congruence> = seen.into_iter().collect();
    out.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.blocks.cmp(&b.blocks)));
    Ok(out)
}

/// Atoms of a lattice given as a list of congruences.
pub fn minimal_nontrivial(lattice: &[Congruence]) -> Vec<Congruence> {
    let nontrivial: Vec<&Congruence> = lattice.iter().filter(|c| !c.is_diagonal()).collect();
    nontrivial
        .iter()
        .filter(|c| !nontrivial.iter().any(|d| d != *c && d.is_below(c)))
        .map(|c| (*c).clone())
        .collect()
}

/// Meet of all principal congruences, stopping early once it is diagonal.
fn principal_meet(q: &Quandle) -> Congruence {
    let n = q.size();
    let mut meet: Option<Congruence> = None;
    for a in 0..n {
        for b in a + 1..n {
            let c = principal_congruence(q, a, b).expect("indices in range");
            let m = match meet {
                None => c,
                Some(m) => m.meet(&c),
            };
            if m.is_diagonal() {
                return m;
            }
            meet = Some(m);
        }
    }
    meet.unwrap_or_else(|| Congruence::diagonal(n))
}

/// The least non-trivial congruence, present exactly when `q` is SI.
pub fn monolith(q: &Quandle) -> Option<Congruence> {
    if q.size() < 2 {
        return None;
    }
    let m = principal_meet(q);
    (!m.is_diagonal()).then_some(m)
}

pub fn is_subdirectly_irreducible(q: &Quandle) -> bool {
    monolith(q).is_some()
}

/// Exactly two congruences.
pub fn is_simple(q: &Quandle) -> bool {
    let n = q.size();
    n >= 2
        && (0..n).all(|a| {
            (a + 1..n).all(|b| principal_congruence(q, a, b).expect("in range").is_full())
        })
}

/// `π`: the orbit partition.
pub fn pi_congruence(q: &Quandle) -> Result<Congruence> {
    Congruence::from_blocks(q, q.orbits())
}

/// `λ`: `a λ b` iff the rows of `a` and `b` coincide.
pub fn lambda_congruence(q: &Quandle) -> Result<Congruence> {
    let n = q.size();
    let labels: Vec<usize> = (0..n)
        .map(|a| (0..=a).find(|&b| q.row(b) == q.row(a)).expect("a itself"))
        .collect();
    let c = Congruence::from_labels(&labels);
    Congruence::from_blocks(q, c.blocks)
}

/// `θ = π ∩ λ`.
pub fn theta_congruence(q: &Quandle) -> Result<Congruence> {
    let t = pi_congruence(q)?.meet(&lambda_congruence(q)?);
    Congruence::from_blocks(q, t.blocks)
}

/// A family `(M_i)` of submodules of the summands of a mesh with
/// `φ_{k,j}(M_k) ⊆ M_j` for all `k, j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleFamily {
    members: Vec<Subgroup>,
}

impl SubmoduleFamily {
    pub fn new(mesh: &AffineMesh, members: Vec<Subgroup>) -> Result<Self> {
        if members.len() != mesh.len() {
            return Err(Error::FamilyViolation(members.len(), mesh.len()));
        }
        for (i, m) in members.iter().enumerate() {
            if m.parent() != mesh.group(i) || !m.is_closed() || !mesh.module(i).is_t_closed(m) {
                return Err(Error::FamilyViolation(i, i));
            }
        }
        for (k, mk) in members.iter().enumerate() {
            for (j, mj) in members.iter().enumerate() {
                let h = mesh.phi(k, j);
                if !mk.elements().iter().all(|x| mj.contains(&h.map(x))) {
                    return Err(Error::FamilyViolation(k, j));
                }
            }
        }
        Ok(SubmoduleFamily { members })
    }

    pub fn zero(mesh: &AffineMesh) -> Self {
        SubmoduleFamily {
            members: mesh.groups().iter().map(Subgroup::trivial).collect(),
        }
    }

    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &Subgroup {
        &self.members[i]
    }
}

/// `a ρ b` iff `a, b` lie in one summand `A_i` and `a − b ∈ M_i`.
pub fn congruence_from_family(ls: &LabeledSum, family: &SubmoduleFamily) -> Result<Congruence> {
    let q = ls.quandle();
    let mesh = ls.mesh();
    let family = SubmoduleFamily::new(mesh, family.members.clone())?;
    let labels: Vec<usize> = (0..q.size())
        .map(|x| {
            let (i, a) = ls.element_of(x);
            let g = mesh.group(i);
            let m = family.member(i);
            // least element of the coset a + M_i, in group-index order
            let rep = m
                .elements()
                .iter()
                .map(|s| g.index_of(&g.add(&a, s)))
                .min()
                .expect("subgroups are non-empty");
            ls.index_of(i, &g.element(rep))
        })
        .collect();
    let c = Congruence::from_labels(&labels);
    let c = Congruence::from_blocks(q, c.blocks)?;
    if !c.is_below(&Congruence::partition(ls.summand_partition())?) {
        return Err(Error::NotBelowPi);
    }
    Ok(c)
}

/// `M_i` = class of `0_i` under `ρ`, for a congruence below the summand partition.
pub fn family_from_congruence(ls: &LabeledSum, rho: &Congruence) -> Result<SubmoduleFamily> {
    let q = ls.quandle();
    if rho.size() != q.size() {
        return Err(Error::Format("congruence size does not match the quandle".into()));
    }
    if !rho.is_below(&Congruence::partition(ls.summand_partition())?) {
        return Err(Error::NotBelowPi);
    }
    let mesh = ls.mesh();
    let members = (0..mesh.len())
        .map(|i| {
            let g = mesh.group(i);
            let zero = ls.index_of(i, &g.zero());
            let elems: Vec<_> = rho.block_of(zero).iter().map(|&x| ls.element_of(x).1).collect();
            let s = subgroup_generated(g, &elems)?;
            if s.len() != elems.len() {
                return Err(Error::ConsistencyFailure(format!(
                    "class of 0 in summand {i} is not a subgroup"
                )));
            }
            Ok(s)
        })
        .collect::<Result<Vec<_>>>()?;
    SubmoduleFamily::new(mesh, members)
}

/// `⋂_n φ^n(A)` for an endomorphism of a finite group.
fn stable_image(phi: &GroupHom) -> Subgroup {
    let mut cur = Subgroup::full(phi.source());
    loop {
        let next = cur.map(phi).expect("endomorphism");
        if next.len() == cur.len() {
            return cur;
        }
        cur = next;
    }
}

/// For a fixed index `j`, the three families
/// `(Ker φ_{i,j})_i`, `(⋂_n φ_{i,i}^n(A_i))_i` and `(φ_{j,i}(⋂_n φ_{j,j}^n(A_j)))_i`.
pub fn kernel_families(ls: &LabeledSum, j: usize) -> Result<[SubmoduleFamily; 3]> {
    let mesh = ls.mesh();
    if j >= mesh.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            size: mesh.len(),
        });
    }
    let k = mesh.len();
    let kernels = (0..k).map(|i| mesh.phi(i, j).kernel()).collect();
    let stables: Vec<Subgroup> = (0..k).map(|i| stable_image(mesh.phi(i, i))).collect();
    let pushed = (0..k)
        .map(|i| stables[j].map(mesh.phi(j, i)))
        .collect::<Result<Vec<_>>>()?;
    Ok([
        SubmoduleFamily::new(mesh, kernels)?,
        SubmoduleFamily::new(mesh, stables)?,
        SubmoduleFamily::new(mesh, pushed)?,
    ])
}

/// Sorted list of block-size profiles over a lattice: a shape invariant.
pub fn lattice_profile(lattice: &[Congruence]) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = lattice.iter().map(Congruence::block_sizes).collect();
    v.sort();
    v
}

/// Number of covering pairs in a lattice (another cheap shape invariant).
pub fn covering_count(lattice: &[Congruence]) -> usize {
    let below: Vec<BTreeSet<usize>> = lattice
        .iter()
        .map(|c| {
            (0..lattice.len())
                .filter(|&d| lattice[d] != *c && lattice[d].is_below(c))
                .collect()
        })
        .collect();
    below
        .iter()
        .map(|set| {
            set.iter()
                .filter(|&&d| !set.iter().any(|&e| e != d && below[e].contains(&d)))
                .count()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{alexander_cyclic, projection_quandle, two_orbit_mesh, SiqSpec};

    fn blocks(c: &Congruence) -> Vec<Vec<usize>> {
        c.blocks().to_vec()
    }

    #[test]
    fn principal_examples() {
        let q = alexander_cyclic(4, 3).unwrap();
        assert!(principal_congruence(&q, 1, 1).unwrap().is_diagonal());
        assert_eq!(blocks(&principal_congruence(&q, 0, 2).unwrap()), vec![vec![0, 2], vec![1], vec![3]]);
        assert_eq!(blocks(&principal_congruence(&q, 1, 3).unwrap()), vec![vec![0], vec![1, 3], vec![2]]);
        assert!(matches!(principal_congruence(&q, 0, 9), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(all_congruences(&projection_quandle(4), 1000).unwrap().len(), 15);
        assert_eq!(all_congruences(&projection_quandle(2), 1000).unwrap().len(), 2);
        let q = alexander_cyclic(4, 3).unwrap();
        let lat = all_congruences(&q, 1000).unwrap();
        let mins: Vec<_> = minimal_nontrivial(&lat).iter().map(blocks).collect();
        assert_eq!(mins, vec![vec![vec![0], vec![1, 3], vec![2]], vec![vec![0, 2], vec![1], vec![3]]]);
        assert!(matches!(all_congruences(&projection_quandle(5), 10), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn monolith_and_simplicity() {
        assert!(!is_subdirectly_irreducible(&alexander_cyclic(4, 3).unwrap()));
        assert!(is_subdirectly_irreducible(&projection_quandle(2)));
        assert!(!is_subdirectly_irreducible(&projection_quandle(3)));
        let six = SiqSpec::cyclic(4, 3, &[1]).unwrap().quandle().unwrap();
        let m = monolith(&six).unwrap();
        // cosets of the socle {0, 2} of (Z_4, 3)
        assert_eq!(m.nontrivial_blocks(), vec![&[0usize, 2][..], &[1, 3][..]]);
        assert!(is_simple(&alexander_cyclic(3, 2).unwrap()));
        assert!(!is_simple(&alexander_cyclic(4, 3).unwrap()));
        assert!(is_simple(&projection_quandle(2)));
    }

    #[test]
    fn distinguished_congruences() {
        let latin = alexander_cyclic(5, 2).unwrap();
        assert!(lambda_congruence(&latin).unwrap().is_diagonal());
        assert!(theta_congruence(&latin).unwrap().is_diagonal());
        let p = projection_quandle(3);
        assert!(lambda_congruence(&p).unwrap().is_full());
        assert!(pi_congruence(&p).unwrap().is_diagonal());
        assert!(theta_congruence(&p).unwrap().is_diagonal());
        let six = SiqSpec::cyclic(4, 3, &[1]).unwrap().quandle().unwrap();
        assert_eq!(theta_congruence(&six).unwrap().nontrivial_blocks(), vec![&[0usize, 2][..], &[1, 3][..]]);
    }

    #[test]
    fn families() {
        let ls = two_orbit_mesh().sum().unwrap();
        let mesh = ls.mesh();
        let fam = SubmoduleFamily::new(
            mesh,
            vec![Subgroup::full(mesh.group(0)), Subgroup::trivial(mesh.group(1))],
        )
        .unwrap();
        let rho = congruence_from_family(&ls, &fam).unwrap();
        assert_eq!(rho.nontrivial_blocks(), vec![ls.summand_partition()[0].as_slice()]);
        assert_eq!(family_from_congruence(&ls, &rho).unwrap(), fam);
        let zero = congruence_from_family(&ls, &SubmoduleFamily::zero(mesh)).unwrap();
        assert!(zero.is_diagonal());
        assert!(matches!(
            family_from_congruence(&ls, &Congruence::full(4)),
            Err(Error::NotBelowPi)
        ));
        let [ker, stable, pushed] = kernel_families(&ls, 0).unwrap();
        assert!(ker.members().iter().all(Subgroup::is_full));
        assert!(stable.members().iter().all(Subgroup::is_trivial));
        assert!(pushed.members().iter().all(Subgroup::is_trivial));
    }

    #[test]
    fn siq_family_gives_monolith() {
        let ls = SiqSpec::cyclic(4, 3, &[1]).unwrap().build().unwrap();
        let mesh = ls.mesh();
        let socle = mesh.module(0).socle(100).unwrap();
        let fam = SubmoduleFamily::new(mesh, vec![socle.clone(), Subgroup::trivial(mesh.group(1))]).unwrap();
        let rho = congruence_from_family(&ls, &fam).unwrap();
        assert_eq!(Some(rho.clone()), monolith(ls.quandle()));
        assert_eq!(family_from_congruence(&ls, &rho).unwrap().member(0), &socle);
    }

    #[test]
    fn partition_json() {
        let c = Congruence::partition(vec![vec![1, 3], vec![0], vec![2]]).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), "[[0],[1,3],[2]]");
        assert!(Congruence::partition(vec![vec![0, 0]]).is_err());
    }
}
