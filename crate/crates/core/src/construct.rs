//! Builders: projection and Alexander quandles, `siq(A, t, C)`, the mesh
//! presenting `siq(A, t, C)`, and a gallery of worked examples.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::abelian::{
    subgroup_as_group, subgroup_generated, FinAbGroup, GroupElem, GroupHom, LaurentModule, Subgroup,
    DEFAULT_SUBMODULE_CAP,
};
use crate::error::{Error, Result};
use crate::mesh::{AffineMesh, LabeledSum};
use crate::quandle::Quandle;

/// `a * b = b`.
pub fn projection_quandle(n: usize) -> Quandle {
    assert!(n >= 1, "projection quandle needs at least one element");
    Quandle::from_fn(n, |_, b| b).expect("projection quandles satisfy the axioms")
}

/// The Alexander quandle `x * y = (1 - f)(x) + f(y)` on the elements of `A`
/// in group-index order.
pub fn alexander(group: &FinAbGroup, f: &GroupHom) -> Result<Quandle> {
    if f.source() != group || f.target() != group {
        return Err(Error::GroupMismatch(format!("{f} is not an endomorphism of {group}")));
    }
    if !f.is_automorphism()? {
        return Err(Error::NotAutomorphism(format!("{f}")));
    }
    let phi = GroupHom::identity(group).sub(f)?.table();
    let t = f.table();
    Quandle::from_fn(group.order(), |x, y| group.add_idx(phi[x], t[y]))
}

/// `(Z_n, k)`.
pub fn alexander_cyclic(n: u64, k: i64) -> Result<Quandle> {
    let g = FinAbGroup::cyclic(n);
    alexander(&g, &GroupHom::scalar(&g, k))
}

/// Input to the `siq` construction: an SI module `(A, t)` and representatives
/// `C` of distinct cosets of `φ(A)`, where `φ = 1 - t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SiqRepr", into = "SiqRepr")]
pub struct SiqSpec {
    module: LaurentModule,
    c: Vec<GroupElem>,
    module_si: bool,
}

#[derive(Serialize, Deserialize)]
struct SiqRepr {
    module: LaurentModule,
    c: Vec<GroupElem>,
}

impl TryFrom<SiqRepr> for SiqSpec {
    type Error = Error;
    fn try_from(r: SiqRepr) -> Result<Self> {
        SiqSpec::new(r.module, r.c)
    }
}

impl From<SiqSpec> for SiqRepr {
    fn from(s: SiqSpec) -> Self {
        SiqRepr {
            module: s.module,
            c: s.c,
        }
    }
}

impl SiqSpec {
    /// Validates every hypothesis, including that the module is SI.
    pub fn new(module: LaurentModule, c: Vec<GroupElem>) -> Result<Self> {
        let spec = Self::new_allow_non_si_module(module, c)?;
        if !spec.module_si {
            return Err(Error::SpecViolation("module is not subdirectly irreducible".into()));
        }
        Ok(spec)
    }

    /// As [`SiqSpec::new`] but builds even when the module is not SI; the
    /// result then carries no SI guarantee.
    pub fn new_allow_non_si_module(module: LaurentModule, c: Vec<GroupElem>) -> Result<Self> {
        let g = module.group();
        for x in &c {
            g.check(x)
                .map_err(|_| Error::SpecViolation(format!("{x} is not an element of {g}")))?;
        }
        let phi = module.phi();
        let image = phi.image();
        for (i, a) in c.iter().enumerate() {
            for b in &c[i + 1..] {
                if image.contains(&g.sub(a, b)) {
                    return Err(Error::SpecViolation(format!(
                        "{a} and {b} lie in the same coset of phi(A)"
                    )));
                }
            }
        }
        let mut gens = c.clone();
        gens.extend(image.elements());
        if !subgroup_generated(g, &gens)?.is_full() {
            return Err(Error::SpecViolation("C together with phi(A) does not generate A".into()));
        }
        if !c.is_empty() && phi.is_injective() {
            return Err(Error::SpecViolation("phi = 1 - t is injective but C is non-empty".into()));
        }
        let module_si = module.is_si(DEFAULT_SUBMODULE_CAP)?;
        Ok(SiqSpec { module, c, module_si })
    }

    /// `(Z_n, k)` with constants given as residues.
    pub fn cyclic(n: u64, k: i64, c: &[i64]) -> Result<Self> {
        let module = LaurentModule::cyclic(n, k)?;
        let g = module.group().clone();
        let c = c.iter().map(|&x| g.reduce(&[x])).collect::<Result<_>>()?;
        SiqSpec::new(module, c)
    }

    pub fn module(&self) -> &LaurentModule {
        &self.module
    }

    pub fn c(&self) -> &[GroupElem] {
        &self.c
    }

    pub fn module_is_si(&self) -> bool {
        self.module_si
    }

    pub fn phi(&self) -> GroupHom {
        self.module.phi()
    }

    /// `|A| + |φ(A)|·|C|`.
    pub fn size(&self) -> usize {
        self.module.group().order() + self.phi().image().len() * self.c.len()
    }

    /// The mesh presenting `siq(A, t, C)`: index 0 is `A`, index `i ≥ 1` is a
    /// copy of `φ(A)` for the `i`-th element of `C`, stored abstractly with its
    /// inclusion into `A` as carrier. `φ_{0,0} = φ`, `φ_{i,0}` = inclusion,
    /// `φ_{0,j} = φ²`, `φ_{i,j} = φ|`, `c_{i,0} = c_i`, `c_{0,j} = −φ(c_j)`,
    /// `c_{i,j} = φ(c_i − c_j)`.
    pub fn mesh(&self) -> Result<AffineMesh> {
        Ok(self.mesh_parts()?.0)
    }

    fn mesh_parts(&self) -> Result<(AffineMesh, Subgroup, HashMap<usize, GroupElem>)> {
        let a = self.module.group();
        let phi = self.phi();
        let image = phi.image();
        let (b, incl) = subgroup_as_group(&image)?;
        // parent index -> abstract element of φ(A)
        let abs_of: HashMap<usize, GroupElem> = b
            .elements()
            .map(|x| (a.index_of(&incl.map(&x)), x))
            .collect();
        let to_b = |x: &GroupElem| abs_of[&a.index_of(x)].clone();
        let k = self.c.len() + 1;
        let mut groups = vec![a.clone()];
        groups.extend(std::iter::repeat_n(b.clone(), k - 1));
        let phi_sq = GroupHom::from_fn(a.clone(), b.clone(), |x| to_b(&phi.map(&phi.map(x))))?;
        let phi_b = GroupHom::from_fn(b.clone(), b.clone(), |x| to_b(&phi.map(&incl.map(x))))?;
        let mut phis = Vec::with_capacity(k);
        let mut cs = Vec::with_capacity(k);
        for i in 0..k {
            let mut prow = Vec::with_capacity(k);
            let mut crow = Vec::with_capacity(k);
            for j in 0..k {
                let (h, c) = match (i, j) {
                    (0, 0) => (phi.clone(), a.zero()),
                    (_, 0) => (incl.clone(), self.c[i - 1].clone()),
                    (0, _) => (phi_sq.clone(), to_b(&a.neg(&phi.map(&self.c[j - 1])))),
                    _ => (
                        phi_b.clone(),
                        to_b(&phi.map(&a.sub(&self.c[i - 1], &self.c[j - 1]))),
                    ),
                };
                prow.push(h);
                crow.push(c);
            }
            phis.push(prow);
            cs.push(crow);
        }
        let mut carriers = vec![None];
        carriers.extend(std::iter::repeat_n(Some(incl), k - 1));
        let mesh = AffineMesh::new(groups, phis, cs)?.with_carriers(carriers)?;
        Ok((mesh, image, abs_of))
    }

    /// Builds `siq(A, t, C)` directly from its four defining clauses. Elements:
    /// all of `A` in group-index order, then one block `φ(A) × {c}` per element
    /// of `C` (in `C` order), each block in increasing index order of `A`.
    /// The result is labelled by [`SiqSpec::mesh`] and checked against it.
    pub fn build(&self) -> Result<LabeledSum> {
        let a = self.module.group();
        let t = self.module.t();
        let phi = self.phi();
        let (mesh, image, abs_of) = self.mesh_parts()?;
        let na = a.order();
        let nb = image.len();
        let n = na + nb * self.c.len();
        let decode = |x: usize| -> (Option<usize>, GroupElem) {
            if x < na {
                (None, a.element(x))
            } else {
                let (blk, p) = ((x - na) / nb, (x - na) % nb);
                (Some(blk), a.element(image.indices()[p]))
            }
        };
        let encode = |blk: Option<usize>, v: &GroupElem| -> usize {
            match blk {
                None => a.index_of(v),
                Some(blk) => {
                    let p = image
                        .indices()
                        .binary_search(&a.index_of(v))
                        .expect("block element lies in phi(A)");
                    na + blk * nb + p
                }
            }
        };
        let q = Quandle::from_fn(n, |x, y| {
            let (bx, ax) = decode(x);
            let (by, ay) = decode(y);
            let tb = t.map(&ay);
            match (bx, by) {
                (None, None) => encode(None, &a.add(&phi.map(&ax), &tb)),
                (Some(i), Some(j)) => {
                    let s = a.sub(&a.add(&ax, &self.c[i]), &self.c[j]);
                    encode(Some(j), &a.add(&phi.map(&s), &tb))
                }
                (Some(i), None) => encode(None, &a.add(&a.add(&ax, &tb), &self.c[i])),
                (None, Some(j)) => {
                    let s = a.sub(&phi.map(&ax), &self.c[j]);
                    encode(Some(j), &a.add(&phi.map(&s), &tb))
                }
            }
        })?;
        let b = mesh.group(1.min(mesh.len() - 1));
        let labels = (0..n)
            .map(|x| match decode(x) {
                (None, v) => (0, a.index_of(&v)),
                (Some(blk), v) => (blk + 1, b.index_of(&abs_of[&a.index_of(&v)])),
            })
            .collect();
        LabeledSum::new(q, mesh, labels)
    }

    pub fn quandle(&self) -> Result<Quandle> {
        Ok(self.build()?.quandle().clone())
    }
}

/// What a gallery entry is built from.
#[derive(Clone, Debug)]
pub enum GalleryObject {
    Quandle(Quandle),
    Siq(SiqSpec),
    Mesh(AffineMesh),
}

#[derive(Clone, Debug)]
pub struct GalleryEntry {
    pub name: String,
    pub note: String,
    pub object: GalleryObject,
}

impl GalleryEntry {
    pub fn quandle(&self) -> Result<Quandle> {
        match &self.object {
            GalleryObject::Quandle(q) => Ok(q.clone()),
            GalleryObject::Siq(s) => s.quandle(),
            GalleryObject::Mesh(m) => Ok(m.sum()?.quandle().clone()),
        }
    }

    /// The mesh carried by the entry, if it is a mesh or a siq specification.
    pub fn mesh(&self) -> Result<Option<AffineMesh>> {
        match &self.object {
            GalleryObject::Quandle(_) => Ok(None),
            GalleryObject::Siq(s) => Ok(Some(s.mesh()?)),
            GalleryObject::Mesh(m) => Ok(Some(m.clone())),
        }
    }
}

fn klein() -> FinAbGroup {
    FinAbGroup::new(vec![2, 2]).expect("valid orders")
}

/// The Z_2² module with `t = (1 0; 1 1)`.
pub fn klein_module() -> LaurentModule {
    let g = klein();
    let t = GroupHom::new(g.clone(), g.clone(), vec![vec![1, 0], vec![1, 1]]).expect("well defined");
    LaurentModule::new(g, t).expect("t is invertible")
}

fn klein_siq(c: &[[u64; 2]]) -> SiqSpec {
    let c = c.iter().map(|v| GroupElem(v.to_vec())).collect();
    SiqSpec::new(klein_module(), c).expect("valid specification")
}

fn cyclic_siq(n: u64, k: i64, c: &[i64]) -> SiqSpec {
    SiqSpec::cyclic(n, k, c).expect("valid specification")
}

/// Mesh `((Z_2, Z_2); 0; (0 1; 1 0))`, whose sum is `(Z_4, 3)`.
pub fn two_orbit_mesh() -> AffineMesh {
    let g = FinAbGroup::cyclic(2);
    let zero = GroupHom::zero(&g, &g);
    let e = |x| GroupElem(vec![x]);
    AffineMesh::new(
        vec![g.clone(), g],
        vec![vec![zero.clone(), zero.clone()], vec![zero.clone(), zero]],
        vec![vec![e(0), e(1)], vec![e(1), e(0)]],
    )
    .expect("valid mesh")
}

/// Every worked finite example, in a fixed order.
pub fn gallery() -> Vec<GalleryEntry> {
    let q = |name: &str, note: &str, q: Quandle| GalleryEntry {
        name: name.into(),
        note: note.into(),
        object: GalleryObject::Quandle(q),
    };
    let s = |name: &str, note: &str, s: SiqSpec| GalleryEntry {
        name: name.into(),
        note: note.into(),
        object: GalleryObject::Siq(s),
    };
    let alex = |n, k| alexander_cyclic(n, k).expect("unit");
    vec![
        q("projection-2", "the two-element SI medial quandle; also (Z_2, 1)", projection_quandle(2)),
        q("projection-3", "not SI: every partition is a congruence", projection_quandle(3)),
        q("alexander-Z4-3", "two orbits, not SI", alex(4, 3)),
        GalleryEntry {
            name: "mesh-Z2-Z2".into(),
            note: "((Z_2, Z_2); 0; (0 1; 1 0)), sums to (Z_4, 3)".into(),
            object: GalleryObject::Mesh(two_orbit_mesh()),
        },
        q("alexander-Z3-2", "simple latin quandle", alex(3, 2)),
        q("alexander-Z5-2", "latin", alex(5, 2)),
        q("alexander-Z9-2", "SI latin", alex(9, 2)),
        q("alexander-Z9-8", "involutory (Z_9, -1)", alex(9, -1)),
        q("alexander-Z6-5", "(Z_6, -1): quasi-reductive, not reductive, not SI", alex(6, -1)),
        s("siq-Z4-3-{1}", "size 6, SI, strictly 3-reductive; also siq(Z_4, -1, {1})", cyclic_siq(4, 3, &[1])),
        s("siq-Z2^2-{(1,0)}", "size 6, SI, strictly 3-reductive", klein_siq(&[[1, 0]])),
        s("siq-Z4-3-{0,1}", "size 8, SI, strictly 3-reductive; also siq(Z_4, -1, {0, 1})", cyclic_siq(4, 3, &[0, 1])),
        s("siq-Z2^2-{(0,0),(1,0)}", "size 8, SI, strictly 3-reductive", klein_siq(&[[0, 0], [1, 0]])),
        s("siq-Z49-43-{1,3,4}", "70 elements", cyclic_siq(49, 43, &[1, 3, 4])),
        s("siq-Z49-43-{2,5,6}", "70 elements, not isomorphic to the previous entry", cyclic_siq(49, 43, &[2, 5, 6])),
        s("siq-Z9-7-{1}", "siq(Z_{3^2}, 1 - 3, {1})", cyclic_siq(9, 7, &[1])),
        s("siq-Z9-7-{1,2}", "siq(Z_{3^2}, 1 - 3, {1, 2})", cyclic_siq(9, 7, &[1, 2])),
        s("siq-Z2-1-{1}", "2-reductive", cyclic_siq(2, 1, &[1])),
        s("siq-Z3-1-{1}", "2-reductive", cyclic_siq(3, 1, &[1])),
        s("siq-Z3-1-{0,1}", "2-reductive", cyclic_siq(3, 1, &[0, 1])),
        s("siq-Z4-1-{1}", "2-reductive", cyclic_siq(4, 1, &[1])),
        s("siq-Z4-1-{1,2}", "2-reductive", cyclic_siq(4, 1, &[1, 2])),
    ]
}
