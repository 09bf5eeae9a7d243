//! Affine meshes, their sums, and the canonical mesh of a medial quandle.
//!
//! A mesh over `0..k` is `(A_i; φ_{i,j}; c_{i,j})` with `φ_{i,j}: A_i → A_j`
//! and `c_{i,j} ∈ A_j`. Its sum lives on the disjoint union of the `A_i` with
//!
//! ```text
//! a * b = c_{i,j} + φ_{i,j}(a) + (1 - φ_{j,j})(b)        (a ∈ A_i, b ∈ A_j)
//! ```

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::abelian::{identify_abelian, subgroup_generated, FinAbGroup, GroupElem, GroupHom, LaurentModule};
use crate::error::{Error, MeshCondition, Result};
use crate::perm::Permutation;
use crate::quandle::Quandle;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMesh {
    groups: Vec<FinAbGroup>,
    phi: Vec<Vec<GroupHom>>,
    c: Vec<Vec<GroupElem>>,
    /// Optional embedding of each abstract summand into an ambient group
    /// (e.g. `φ(A) ≤ A` stored as an abstract `Z_2` plus its inclusion).
    carriers: Vec<Option<GroupHom>>,
}

fn violation(condition: MeshCondition, indices: Vec<usize>) -> Error {
    Error::MeshViolation { condition, indices }
}

impl AffineMesh {
    /// Validates (M1)–(M4).
    pub fn new(
        groups: Vec<FinAbGroup>,
        phi: Vec<Vec<GroupHom>>,
        c: Vec<Vec<GroupElem>>,
    ) -> Result<Self> {
        let k = groups.len();
        if k == 0 || phi.len() != k || c.len() != k {
            return Err(violation(MeshCondition::Shape, vec![]));
        }
        for i in 0..k {
            if phi[i].len() != k || c[i].len() != k {
                return Err(violation(MeshCondition::Shape, vec![i]));
            }
            for j in 0..k {
                if phi[i][j].source() != &groups[i] || phi[i][j].target() != &groups[j] {
                    return Err(violation(MeshCondition::Shape, vec![i, j]));
                }
                if !groups[j].contains(&c[i][j]) {
                    return Err(violation(MeshCondition::Shape, vec![i, j]));
                }
            }
        }
        let mesh = AffineMesh {
            carriers: vec![None; k],
            groups,
            phi,
            c,
        };
        mesh.check()?;
        Ok(mesh)
    }

    fn check(&self) -> Result<()> {
        let k = self.len();
        for i in 0..k {
            let t = GroupHom::identity(&self.groups[i]).sub(&self.phi[i][i])?;
            if !t.is_automorphism()? {
                return Err(violation(MeshCondition::M1, vec![i]));
            }
            if self.c[i][i] != self.groups[i].zero() {
                return Err(violation(MeshCondition::M2, vec![i, i]));
            }
        }
        for i in 0..k {
            for kk in 0..k {
                let reference = self.phi[0][kk].compose(&self.phi[i][0])?;
                for j in 1..k {
                    if self.phi[j][kk].compose(&self.phi[i][j])? != reference {
                        return Err(violation(MeshCondition::M3, vec![i, j, 0, kk]));
                    }
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                for kk in 0..k {
                    let g = &self.groups[kk];
                    let lhs = self.phi[j][kk].map(&self.c[i][j]);
                    let rhs = self.phi[kk][kk].map(&g.sub(&self.c[i][kk], &self.c[j][kk]));
                    if lhs != rhs {
                        return Err(violation(MeshCondition::M4, vec![i, j, kk]));
                    }
                }
            }
        }
        Ok(())
    }

    /// Attaches ambient embeddings for summands that are concretely subgroups.
    pub fn with_carriers(mut self, carriers: Vec<Option<GroupHom>>) -> Result<Self> {
        if carriers.len() != self.len() {
            return Err(violation(MeshCondition::Shape, vec![]));
        }
        for (i, emb) in carriers.iter().enumerate() {
            if let Some(e) = emb {
                if e.source() != &self.groups[i] || !e.is_injective() {
                    return Err(violation(MeshCondition::Shape, vec![i]));
                }
            }
        }
        self.carriers = carriers;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn groups(&self) -> &[FinAbGroup] {
        &self.groups
    }

    pub fn group(&self, i: usize) -> &FinAbGroup {
        &self.groups[i]
    }

    pub fn phi(&self, i: usize, j: usize) -> &GroupHom {
        &self.phi[i][j]
    }

    pub fn c(&self, i: usize, j: usize) -> &GroupElem {
        &self.c[i][j]
    }

    pub fn carriers(&self) -> &[Option<GroupHom>] {
        &self.carriers
    }

    pub fn total_size(&self) -> usize {
        self.groups.iter().map(FinAbGroup::order).sum()
    }

    /// `t = 1 - φ_{i,i}`, the module structure of summand `i`.
    pub fn module(&self, i: usize) -> LaurentModule {
        let t = GroupHom::identity(&self.groups[i])
            .sub(&self.phi[i][i])
            .expect("endomorphism");
        LaurentModule::new(self.groups[i].clone(), t).expect("(M1) holds")
    }

    /// Each `A_j` is generated by the constants `c_{i,j}` and the images of `φ_{i,j}`.
    pub fn is_indecomposable(&self) -> bool {
        (0..self.len()).all(|j| self.column_generates(j))
    }

    fn column_generates(&self, j: usize) -> bool {
        let mut gens = Vec::new();
        for i in 0..self.len() {
            gens.push(self.c[i][j].clone());
            for g in 0..self.groups[i].rank() {
                gens.push(self.phi[i][j].image_of_generator(g));
            }
        }
        subgroup_generated(&self.groups[j], &gens)
            .map(|s| s.is_full())
            .unwrap_or(false)
    }

    pub fn all_phi_zero(&self) -> bool {
        self.phi.iter().flatten().all(GroupHom::is_zero)
    }

    /// Least `m` with `φ_{i,i}^{m-1} = 0` for every `i`; `None` if some
    /// `φ_{i,i}` is not nilpotent.
    pub fn reductivity_from_phis(&self) -> Option<usize> {
        let mut m = 1;
        for i in 0..self.len() {
            let phi = &self.phi[i][i];
            if !phi.is_nilpotent() {
                return None;
            }
            let mut p = GroupHom::identity(&self.groups[i]);
            let mut e = 0;
            while !p.is_zero() {
                p = phi.compose(&p).expect("endomorphism");
                e += 1;
            }
            m = m.max(e + 1);
        }
        Some(m)
    }

    /// The sum quandle, summands laid out in index order and each summand in
    /// group-element order.
    pub fn sum(&self) -> Result<LabeledSum> {
        let k = self.len();
        let mut offsets = Vec::with_capacity(k + 1);
        let mut total = 0;
        for g in &self.groups {
            offsets.push(total);
            total += g.order();
        }
        offsets.push(total);
        let labels: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (0..self.groups[i].order()).map(move |x| (i, x)))
            .collect();
        let phi_tables: Vec<Vec<Vec<usize>>> = (0..k)
            .map(|i| (0..k).map(|j| self.phi[i][j].table()).collect())
            .collect();
        let t_tables: Vec<Vec<usize>> = (0..k).map(|j| self.module(j).t().table()).collect();
        let c_idx: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).map(|j| self.groups[j].index_of(&self.c[i][j])).collect())
            .collect();
        let add = |j: usize, a: usize, b: usize| self.groups[j].add_idx(a, b);
        let q = Quandle::from_fn(total, |a, b| {
            let (i, x) = labels[a];
            let (j, y) = labels[b];
            let v = add(j, add(j, c_idx[i][j], phi_tables[i][j][x]), t_tables[j][y]);
            offsets[j] + v
        })?;
        let index_of = (0..k)
            .map(|i| (0..self.groups[i].order()).map(|x| offsets[i] + x).collect())
            .collect();
        Ok(LabeledSum {
            quandle: q,
            mesh: self.clone(),
            labels,
            index_of,
        })
    }
}

/// A quandle identified element-by-element with the sum of a mesh.
#[derive(Clone, Debug)]
pub struct LabeledSum {
    quandle: Quandle,
    mesh: AffineMesh,
    /// `labels[x] = (summand, group index)`.
    labels: Vec<(usize, usize)>,
    /// `index_of[i][g]` = quandle element labelled `(i, g)`.
    index_of: Vec<Vec<usize>>,
}

impl LabeledSum {
    /// Pairs a quandle with a mesh through explicit labels, verifying that the
    /// sum formula reproduces the quandle's table.
    pub fn new(quandle: Quandle, mesh: AffineMesh, labels: Vec<(usize, usize)>) -> Result<Self> {
        let n = quandle.size();
        if labels.len() != n || mesh.total_size() != n {
            return Err(Error::ConsistencyFailure("label count does not match mesh size".into()));
        }
        let mut index_of: Vec<Vec<usize>> = mesh
            .groups()
            .iter()
            .map(|g| vec![usize::MAX; g.order()])
            .collect();
        for (x, &(i, g)) in labels.iter().enumerate() {
            if i >= mesh.len() || g >= mesh.group(i).order() || index_of[i][g] != usize::MAX {
                return Err(Error::ConsistencyFailure(format!("bad label for element {x}")));
            }
            index_of[i][g] = x;
        }
        let ls = LabeledSum {
            quandle,
            mesh,
            labels,
            index_of,
        };
        for a in 0..n {
            for b in 0..n {
                if ls.formula(a, b) != ls.quandle.op(a, b) {
                    return Err(Error::ConsistencyFailure(format!(
                        "sum formula disagrees with the table at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(ls)
    }

    fn formula(&self, a: usize, b: usize) -> usize {
        let (i, x) = self.element_of(a);
        let (j, y) = self.element_of(b);
        let m = &self.mesh;
        let g = m.group(j);
        let t = m.module(j);
        let v = g.add(&g.add(m.c(i, j), &m.phi(i, j).map(&x)), &t.t().map(&y));
        self.index_of(j, &v)
    }

    pub fn quandle(&self) -> &Quandle {
        &self.quandle
    }

    pub fn mesh(&self) -> &AffineMesh {
        &self.mesh
    }

    pub fn element_of(&self, x: usize) -> (usize, GroupElem) {
        let (i, g) = self.labels[x];
        (i, self.mesh.group(i).element(g))
    }

    pub fn label(&self, x: usize) -> (usize, usize) {
        self.labels[x]
    }

    pub fn index_of(&self, i: usize, g: &GroupElem) -> usize {
        self.index_of[i][self.mesh.group(i).index_of(g)]
    }

    /// Quandle elements of each summand, sorted.
    pub fn summand_partition(&self) -> Vec<Vec<usize>> {
        self.index_of
            .iter()
            .map(|v| {
                let mut v = v.clone();
                v.sort_unstable();
                v
            })
            .collect()
    }
}

/// The Z[t,t^-1]-module carried by one orbit of a medial quandle.
#[derive(Clone, Debug)]
pub struct OrbitModule {
    base: usize,
    carrier: Vec<usize>,
    /// Local addition and negation tables over positions in `carrier`.
    add: Vec<usize>,
    neg: Vec<usize>,
    /// `t·a = e * a`, local positions.
    t: Vec<usize>,
    group: FinAbGroup,
    to_group: Vec<usize>,
    from_group: Vec<usize>,
}

impl OrbitModule {
    pub fn base(&self) -> usize {
        self.base
    }

    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    fn pos(&self, x: usize) -> usize {
        self.carrier.binary_search(&x).expect("element of the orbit")
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let m = self.len();
        self.carrier[self.add[self.pos(a) * m + self.pos(b)]]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.carrier[self.neg[self.pos(a)]]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn t(&self, a: usize) -> usize {
        self.carrier[self.t[self.pos(a)]]
    }

    /// Addition table over carrier positions (row-major).
    pub fn addition_table(&self) -> &[usize] {
        &self.add
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn coords(&self, x: usize) -> GroupElem {
        self.group.element(self.to_group[self.pos(x)])
    }

    pub fn element(&self, g: &GroupElem) -> usize {
        self.carrier[self.from_group[self.group.index_of(g)]]
    }

    /// The module in group coordinates.
    pub fn module(&self) -> Result<LaurentModule> {
        let t = GroupHom::from_fn(self.group.clone(), self.group.clone(), |g| {
            self.coords(self.t(self.element(g)))
        })
        .map_err(|e| Error::ConsistencyFailure(format!("orbit t-action: {e}")))?;
        LaurentModule::new(self.group.clone(), t)
    }

    /// Checks the abelian group axioms on the stored tables.
    pub fn verify_abelian(&self) -> bool {
        let m = self.len();
        let z = self.pos(self.base);
        let add = |a: usize, b: usize| self.add[a * m + b];
        (0..m).all(|a| {
            add(z, a) == a
                && add(a, self.neg[a]) == z
                && (0..m).all(|b| {
                    add(a, b) == add(b, a) && (0..m).all(|c| add(add(a, b), c) == add(a, add(b, c)))
                })
        })
    }
}

/// The orbit module of the orbit of `e`. Addition uses displacement-group
/// witnesses found during the orbit BFS: `a + b = α_a(b)` where `α_a(e) = a`.
pub fn orbit_module(q: &Quandle, e: usize) -> Result<OrbitModule> {
    if e >= q.size() {
        return Err(Error::IndexOutOfRange {
            index: e,
            size: q.size(),
        });
    }
    q.require_medial()?;
    orbit_module_unchecked(q, e)
}

fn orbit_module_unchecked(q: &Quandle, e: usize) -> Result<OrbitModule> {
    let n = q.size();
    let gens = q.displacement_generators();
    let mut witness: Vec<Option<Permutation>> = vec![None; n];
    witness[e] = Some(Permutation::identity(n));
    let mut order = vec![e];
    let mut k = 0;
    while k < order.len() {
        let x = order[k];
        let wx = witness[x].clone().expect("visited");
        for g in &gens {
            let y = g.apply(x);
            if witness[y].is_none() {
                witness[y] = Some(g.compose(&wx));
                order.push(y);
            }
        }
        k += 1;
    }
    let mut carrier = order.clone();
    carrier.sort_unstable();
    let m = carrier.len();
    let pos: HashMap<usize, usize> = carrier.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut add = vec![0; m * m];
    let mut neg = vec![0; m];
    let mut t = vec![0; m];
    for (pa, &a) in carrier.iter().enumerate() {
        let wa = witness[a].as_ref().expect("in orbit");
        for (pb, &b) in carrier.iter().enumerate() {
            add[pa * m + pb] = pos[&wa.apply(b)];
        }
        neg[pa] = pos[&wa.inverse().apply(e)];
        t[pa] = *pos
            .get(&q.op(e, a))
            .ok_or_else(|| Error::ConsistencyFailure("e * a left the orbit".into()))?;
    }
    let ident = identify_abelian(&add, m, pos[&e])
        .map_err(|err| Error::ConsistencyFailure(format!("orbit of {e} is not an abelian group: {err}")))?;
    let om = OrbitModule {
        base: e,
        carrier,
        add,
        neg,
        t,
        group: ident.group,
        to_group: ident.to_group,
        from_group: ident.from_group,
    };
    if !om.verify_abelian() {
        return Err(Error::ConsistencyFailure(format!(
            "orbit of {e} fails the abelian group axioms"
        )));
    }
    Ok(om)
}

/// The canonical mesh over the transversal of least orbit elements:
/// `φ_{e,f}(x) = x*f − e*f` and `c_{e,f} = e*f`. The returned labelled sum is
/// `q` itself, labelled by orbit-module coordinates.
pub fn canonical_mesh(q: &Quandle) -> Result<(AffineMesh, LabeledSum)> {
    q.require_medial()?;
    let orbits = q.orbits();
    let modules: Vec<OrbitModule> = orbits
        .iter()
        .map(|o| orbit_module_unchecked(q, o[0]))
        .collect::<Result<_>>()?;
    let k = orbits.len();
    let groups: Vec<FinAbGroup> = modules.iter().map(|m| m.group().clone()).collect();
    let mut phi = Vec::with_capacity(k);
    let mut c = Vec::with_capacity(k);
    for (i, mi) in modules.iter().enumerate() {
        let e = mi.base();
        let mut row_phi = Vec::with_capacity(k);
        let mut row_c = Vec::with_capacity(k);
        for mj in &modules {
            let f = mj.base();
            let ef = q.op(e, f);
            let h = GroupHom::from_fn(groups[i].clone(), mj.group().clone(), |g| {
                let x = mi.element(g);
                mj.coords(mj.sub(q.op(x, f), ef))
            })
            .map_err(|err| Error::ConsistencyFailure(format!("canonical phi: {err}")))?;
            row_phi.push(h);
            row_c.push(mj.coords(ef));
        }
        phi.push(row_phi);
        c.push(row_c);
    }
    let mesh = AffineMesh::new(groups, phi, c)?;
    let mut labels = vec![(0, 0); q.size()];
    for (i, m) in modules.iter().enumerate() {
        for &x in m.carrier() {
            labels[x] = (i, m.group().index_of(&m.coords(x)));
        }
    }
    let ls = LabeledSum::new(q.clone(), mesh.clone(), labels)?;
    Ok((mesh, ls))
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PhiEntry {
    Zero(u8),
    Hom(Vec<Vec<i64>>),
    Full(GroupHom),
}

#[derive(Serialize, Deserialize)]
struct MeshRepr {
    groups: Vec<FinAbGroup>,
    phi: Vec<Vec<PhiEntry>>,
    c: Vec<Vec<GroupElem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    embeddings: Option<Vec<Option<GroupHom>>>,
}

impl Serialize for AffineMesh {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let phi = self
            .phi
            .iter()
            .map(|row| {
                row.iter()
                    .map(|h| {
                        if h.is_zero() {
                            PhiEntry::Zero(0)
                        } else {
                            PhiEntry::Hom(
                                h.matrix()
                                    .iter()
                                    .map(|r| r.iter().map(|&x| x as i64).collect())
                                    .collect(),
                            )
                        }
                    })
                    .collect()
            })
            .collect();
        let embeddings = self
            .carriers
            .iter()
            .any(Option::is_some)
            .then(|| self.carriers.clone());
        MeshRepr {
            groups: self.groups.clone(),
            phi,
            c: self.c.clone(),
            embeddings,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffineMesh {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = MeshRepr::deserialize(d)?;
        let k = r.groups.len();
        if r.phi.len() != k {
            return Err(D::Error::custom("phi must be a k x k array"));
        }
        let mut phi = Vec::with_capacity(k);
        for (i, row) in r.phi.into_iter().enumerate() {
            if row.len() != k {
                return Err(D::Error::custom("phi must be a k x k array"));
            }
            let mut out = Vec::with_capacity(k);
            for (j, entry) in row.into_iter().enumerate() {
                let (src, tgt) = (&r.groups[i], &r.groups[j]);
                let h = match entry {
                    PhiEntry::Zero(0) => GroupHom::zero(src, tgt),
                    PhiEntry::Zero(x) => {
                        return Err(D::Error::custom(format!("scalar phi entry {x} must be 0")))
                    }
                    PhiEntry::Hom(m) => {
                        GroupHom::new(src.clone(), tgt.clone(), m).map_err(D::Error::custom)?
                    }
                    PhiEntry::Full(h) => h,
                };
                out.push(h);
            }
            phi.push(out);
        }
        let mesh = AffineMesh::new(r.groups, phi, r.c).map_err(D::Error::custom)?;
        match r.embeddings {
            Some(e) => mesh.with_carriers(e).map_err(D::Error::custom),
            None => Ok(mesh),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{alexander_cyclic, projection_quandle};

    fn z(n: u64) -> FinAbGroup {
        FinAbGroup::cyclic(n)
    }

    fn e(v: &[u64]) -> GroupElem {
        GroupElem(v.to_vec())
    }

    /// ((Z_2, Z_2); 0; (0 1; 1 0))
    pub(crate) fn two_orbit_mesh() -> AffineMesh {
        let g = z(2);
        let zero = GroupHom::zero(&g, &g);
        AffineMesh::new(
            vec![g.clone(), g.clone()],
            vec![vec![zero.clone(), zero.clone()], vec![zero.clone(), zero]],
            vec![vec![e(&[0]), e(&[1])], vec![e(&[1]), e(&[0])]],
        )
        .unwrap()
    }

    /// ((Z_4, 2Z_4 ≅ Z_2); (2 0; 1 2); (0 −2; 1 0)), the second summand stored abstractly.
    fn z4_mesh() -> AffineMesh {
        let a = z(4);
        let b = z(2);
        AffineMesh::new(
            vec![a.clone(), b.clone()],
            vec![
                vec![GroupHom::scalar(&a, 2), GroupHom::zero(&a, &b)],
                vec![GroupHom::new(b.clone(), a.clone(), vec![vec![2]]).unwrap(), GroupHom::zero(&b, &b)],
            ],
            vec![vec![e(&[0]), e(&[1])], vec![e(&[1]), e(&[0])]],
        )
        .unwrap()
    }

    #[test]
    fn validates_worked_meshes() {
        assert_eq!(two_orbit_mesh().len(), 2);
        assert!(z4_mesh().is_indecomposable());
    }

    #[test]
    fn m2_violation() {
        let g = z(2);
        let zero = GroupHom::zero(&g, &g);
        let err = AffineMesh::new(vec![g], vec![vec![zero]], vec![vec![e(&[1])]]).unwrap_err();
        assert!(matches!(
            err,
            Error::MeshViolation { condition: MeshCondition::M2, ref indices } if indices == &vec![0, 0]
        ));
    }

    #[test]
    fn m1_m3_m4_violations() {
        let g = z(2);
        // 1 - 1 = 0 is not an automorphism
        let err = AffineMesh::new(vec![g.clone()], vec![vec![GroupHom::identity(&g)]], vec![vec![e(&[0])]])
            .unwrap_err();
        assert!(matches!(err, Error::MeshViolation { condition: MeshCondition::M1, .. }));
        // phi_{0,1} = 1 but phi_{1,1} phi_{0,1} = 0 != phi_{0,1} phi_{0,0} ... choose a failing M3
        let a = z(4);
        let two = GroupHom::scalar(&a, 2);
        let zero = GroupHom::zero(&a, &a);
        let id = GroupHom::identity(&a);
        let err = AffineMesh::new(
            vec![a.clone(), a.clone()],
            vec![vec![zero.clone(), id], vec![zero.clone(), two]],
            vec![vec![e(&[0]), e(&[0])], vec![e(&[0]), e(&[0])]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::MeshViolation { condition: MeshCondition::M3, .. }));
        // M4: phi_{1,1} = 2 on Z_4, c_{0,1} = 1: phi_{0,1}(c_{0,0}) = 0 vs phi_{1,1}(c_{0,1} - c_{0,1})
        // use phi_{1,0} = 0, phi_{1,1} = 2, c_{1,0} = 0, c_{0,1} = 1: (i,j,k) = (0,1,1):
        // phi_{1,1}(c_{0,1}) = 2 vs phi_{1,1}(c_{0,1} - c_{1,1}) = 2 ok; (i,j,k) = (1,0,1):
        // phi_{0,1}(c_{1,0}) = 0 vs phi_{1,1}(c_{1,1} - c_{0,1}) = -2 != 0
        let err = AffineMesh::new(
            vec![a.clone(), a.clone()],
            vec![vec![zero.clone(), zero.clone()], vec![zero.clone(), GroupHom::scalar(&a, 2)]],
            vec![vec![e(&[0]), e(&[1])], vec![e(&[0]), e(&[0])]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::MeshViolation { condition: MeshCondition::M4, .. }));
    }

    #[test]
    fn indecomposability() {
        assert!(two_orbit_mesh().is_indecomposable());
        let g = z(2);
        let zero = GroupHom::zero(&g, &g);
        let m = AffineMesh::new(
            vec![g.clone(), g.clone()],
            vec![vec![zero.clone(), zero.clone()], vec![zero.clone(), zero]],
            vec![vec![e(&[0]), e(&[0])], vec![e(&[0]), e(&[0])]],
        )
        .unwrap();
        assert!(!m.is_indecomposable());
    }

    #[test]
    fn sum_of_two_orbit_mesh_is_z4_3() {
        let s = two_orbit_mesh().sum().unwrap();
        let q = s.quandle();
        assert_eq!(q.size(), 4);
        assert!(q.is_medial());
        assert_eq!(q.orbits(), s.summand_partition());
        assert!(crate::iso::quandle_isomorphic(q, &alexander_cyclic(4, 3).unwrap()).is_some());
    }

    #[test]
    fn single_summand_sum_is_alexander() {
        let g = z(5);
        let m = AffineMesh::new(vec![g.clone()], vec![vec![GroupHom::scalar(&g, -1)]], vec![vec![e(&[0])]]).unwrap();
        // 1 - (-1) = 2
        assert_eq!(m.sum().unwrap().quandle(), &alexander_cyclic(5, 2).unwrap());
    }

    #[test]
    fn orbit_modules() {
        let q = alexander_cyclic(4, 3).unwrap();
        let m = orbit_module(&q, 0).unwrap();
        assert_eq!(m.carrier(), &[0, 2]);
        assert_eq!(m.group().orders(), &[2]);
        assert!(m.verify_abelian());
        let p = projection_quandle(3);
        let m = orbit_module(&p, 1).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m.group().is_trivial());
    }

    #[test]
    fn orbit_module_rejects_non_medial() {
        // conjugation quandle of the transpositions of S_4 is not medial
        let q = Quandle::from_table(&[
            vec![0, 3, 4, 1, 2, 5],
            vec![3, 1, 5, 0, 4, 2],
            vec![4, 5, 2, 3, 0, 1],
            vec![1, 0, 2, 3, 5, 4],
            vec![2, 1, 0, 5, 4, 3],
            vec![0, 2, 1, 4, 3, 5],
        ])
        .unwrap();
        assert!(!q.is_medial());
        assert!(matches!(orbit_module(&q, 0), Err(Error::NonMedial(_))));
        assert!(matches!(canonical_mesh(&q), Err(Error::NonMedial(_))));
    }

    #[test]
    fn canonical_mesh_of_alexander_z5_2() {
        let (mesh, ls) = canonical_mesh(&alexander_cyclic(5, 2).unwrap()).unwrap();
        assert_eq!(mesh.len(), 1);
        assert_eq!(mesh.group(0).order(), 5);
        // phi = 1 - t = -1
        assert_eq!(mesh.phi(0, 0), &GroupHom::scalar(mesh.group(0), -1));
        assert_eq!(ls.quandle().size(), 5);
    }

    #[test]
    fn canonical_mesh_round_trips() {
        for q in [alexander_cyclic(4, 3).unwrap(), alexander_cyclic(9, 2).unwrap(), projection_quandle(3)] {
            let (mesh, _) = canonical_mesh(&q).unwrap();
            assert!(mesh.is_indecomposable());
            let s = mesh.sum().unwrap();
            assert!(crate::iso::quandle_isomorphic(s.quandle(), &q).is_some());
        }
    }

    #[test]
    fn reductivity_from_phis() {
        assert_eq!(two_orbit_mesh().reductivity_from_phis(), Some(2));
        assert_eq!(z4_mesh().reductivity_from_phis(), Some(3));
    }

    #[test]
    fn json_format() {
        let m = z4_mesh();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"groups":[{"orders":[4]},{"orders":[2]}],"phi":[[[[2]],0],[[[2]],0]],"c":[[[0],[1]],[[1],[0]]]}"#
        );
        let back: AffineMesh = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let bad = s.replace(r#""c":[[[0],[1]]"#, r#""c":[[[1],[1]]"#);
        assert!(serde_json::from_str::<AffineMesh>(&bad).is_err());
    }
}
