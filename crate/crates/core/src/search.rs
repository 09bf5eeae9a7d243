//! Exhaustive and randomised enumeration of affine meshes over given groups,
//! with (M3)/(M4) checked incrementally during the search.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::abelian::{all_homs, FinAbGroup, GroupElem, GroupHom};
use crate::iso::quandle_isomorphic;
use crate::mesh::AffineMesh;
use crate::quandle::Quandle;

/// Knobs for [`for_each_mesh`].
#[derive(Clone, Debug, Default)]
pub struct MeshFilter {
    /// Only nilpotent `φ_{i,i}` (the sum is then reductive).
    pub reductive_only: bool,
    /// Skip assignments where every `φ_{i,j}` is zero.
    pub nonzero_phi: bool,
    /// Only assignments where every `φ_{i,j}` is zero.
    pub zero_phi: bool,
    /// Keep only indecomposable meshes.
    pub indecomposable: bool,
}

struct GroupTables {
    group: FinAbGroup,
    add: Vec<usize>,
    neg: Vec<usize>,
    gens: Vec<usize>,
}

impl GroupTables {
    fn new(group: &FinAbGroup) -> Self {
        let n = group.order();
        let add = (0..n * n).map(|k| group.add_idx(k / n, k % n)).collect();
        let neg = (0..n)
            .map(|x| group.index_of(&group.neg(&group.element(x))))
            .collect();
        let gens = (0..group.rank())
            .map(|g| group.index_of(&group.generator(g)))
            .collect();
        GroupTables {
            group: group.clone(),
            add,
            neg,
            gens,
        }
    }

    fn sub(&self, a: usize, b: usize) -> usize {
        self.add[a * self.group.order() + self.neg[b]]
    }
}

struct Candidate {
    hom: GroupHom,
    table: Vec<usize>,
    zero: bool,
}

/// Search state shared by the exhaustive and randomised walks.
struct Space<'a, R> {
    k: usize,
    tables: Vec<GroupTables>,
    cands: Vec<Vec<Vec<Candidate>>>,
    phi_order: Vec<(usize, usize)>,
    c_order: Vec<(usize, usize)>,
    phi: Vec<Vec<Option<usize>>>,
    c: Vec<Vec<Option<usize>>>,
    filter: &'a MeshFilter,
    rng: Option<&'a mut R>,
    /// Remaining node budget (randomised walks only).
    budget: Option<usize>,
}

fn pair_order(k: usize, diagonal: bool) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|&(i, j)| diagonal || i != j)
        .collect();
    v.sort_by_key(|&(i, j)| (i.max(j), i.min(j), i, j));
    v
}

impl<R: Rng> Space<'_, R> {
    fn hom_table(&self, i: usize, j: usize) -> Option<&[usize]> {
        self.phi[i][j].map(|h| self.cands[i][j][h].table.as_slice())
    }

    /// `φ_{j,k} φ_{i,j}` agree on generators for every assigned `j`.
    fn m3_ok(&self, i: usize, kk: usize) -> bool {
        let mut reference: Option<Vec<usize>> = None;
        for j in 0..self.k {
            let (Some(a), Some(b)) = (self.hom_table(i, j), self.hom_table(j, kk)) else {
                continue;
            };
            let v: Vec<usize> = self.tables[i].gens.iter().map(|&g| b[a[g]]).collect();
            match &reference {
                None => reference = Some(v),
                Some(r) if *r != v => return false,
                _ => {}
            }
        }
        true
    }

    fn m4_ok(&self, a: usize, b: usize) -> bool {
        let k = self.k;
        let cval = |i: usize, j: usize| -> Option<usize> {
            if i == j {
                Some(0)
            } else {
                self.c[i][j]
            }
        };
        for i in 0..k {
            for j in 0..k {
                for kk in 0..k {
                    let involved = (i, j) == (a, b) || (i, kk) == (a, b) || (j, kk) == (a, b);
                    if !involved {
                        continue;
                    }
                    let (Some(cij), Some(cik), Some(cjk)) = (cval(i, j), cval(i, kk), cval(j, kk)) else {
                        continue;
                    };
                    let lhs = self.hom_table(j, kk).expect("assigned")[cij];
                    let rhs = self.hom_table(kk, kk).expect("assigned")[self.tables[kk].sub(cik, cjk)];
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn tick(&mut self) -> bool {
        match &mut self.budget {
            Some(0) => false,
            Some(b) => {
                *b -= 1;
                true
            }
            None => true,
        }
    }

    fn order_for(&mut self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        if let Some(rng) = self.rng.as_deref_mut() {
            v.shuffle(rng);
        }
        v
    }

    fn walk_phi(&mut self, depth: usize, emit: &mut dyn FnMut(AffineMesh) -> bool) -> bool {
        if !self.tick() {
            return false;
        }
        if depth == self.phi_order.len() {
            let all_zero = (0..self.k)
                .all(|i| (0..self.k).all(|j| self.cands[i][j][self.phi[i][j].expect("set")].zero));
            if (self.filter.nonzero_phi && all_zero) || (self.filter.zero_phi && !all_zero) {
                return true;
            }
            return self.walk_c(0, emit);
        }
        let (i, j) = self.phi_order[depth];
        for h in self.order_for(self.cands[i][j].len()) {
            if self.filter.zero_phi && !self.cands[i][j][h].zero {
                continue;
            }
            self.phi[i][j] = Some(h);
            let ok = (0..self.k).all(|kk| self.m3_ok(i, kk)) && (0..self.k).all(|ii| self.m3_ok(ii, j));
            if ok && !self.walk_phi(depth + 1, emit) {
                self.phi[i][j] = None;
                return false;
            }
        }
        self.phi[i][j] = None;
        true
    }

    fn walk_c(&mut self, depth: usize, emit: &mut dyn FnMut(AffineMesh) -> bool) -> bool {
        if !self.tick() {
            return false;
        }
        if depth == self.c_order.len() {
            let k = self.k;
            let groups: Vec<FinAbGroup> = self.tables.iter().map(|t| t.group.clone()).collect();
            let phi = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| self.cands[i][j][self.phi[i][j].expect("set")].hom.clone())
                        .collect()
                })
                .collect();
            let c = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            let g = &self.tables[j].group;
                            if i == j {
                                g.zero()
                            } else {
                                g.element(self.c[i][j].expect("set"))
                            }
                        })
                        .collect()
                })
                .collect();
            let mesh = AffineMesh::new(groups, phi, c).expect("search enforces M1-M4");
            if self.filter.indecomposable && !mesh.is_indecomposable() {
                return true;
            }
            return emit(mesh);
        }
        let (i, j) = self.c_order[depth];
        for x in self.order_for(self.tables[j].group.order()) {
            self.c[i][j] = Some(x);
            if self.m4_ok(i, j) && !self.walk_c(depth + 1, emit) {
                self.c[i][j] = None;
                return false;
            }
        }
        self.c[i][j] = None;
        true
    }
}

fn build_space<'a, R: Rng>(
    groups: &[FinAbGroup],
    filter: &'a MeshFilter,
    rng: Option<&'a mut R>,
    budget: Option<usize>,
) -> Space<'a, R> {
    let k = groups.len();
    let tables: Vec<GroupTables> = groups.iter().map(GroupTables::new).collect();
    let cands = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    all_homs(&groups[i], &groups[j])
                        .into_iter()
                        .filter(|h| {
                            if i != j {
                                return true;
                            }
                            let t = GroupHom::identity(&groups[i]).sub(h).expect("endomorphism");
                            t.is_automorphism().expect("endomorphism")
                                && (!filter.reductive_only || h.is_nilpotent())
                        })
                        .map(|h| Candidate {
                            table: h.table(),
                            zero: h.is_zero(),
                            hom: h,
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Space {
        k,
        tables,
        cands,
        phi_order: pair_order(k, true),
        c_order: pair_order(k, false),
        phi: vec![vec![None; k]; k],
        c: vec![vec![None; k]; k],
        filter,
        rng,
        budget,
    }
}

/// Calls `emit` on every mesh over `groups` (in this order) passing `filter`,
/// until `emit` returns `false`.
pub fn for_each_mesh(groups: &[FinAbGroup], filter: &MeshFilter, mut emit: impl FnMut(AffineMesh) -> bool) {
    let mut space = build_space::<rand_chacha::ChaCha8Rng>(groups, filter, None, None);
    space.walk_phi(0, &mut emit);
}

/// Multisets of abelian groups (one per isomorphism type) with orders summing
/// to `n`, each listed in non-increasing order.
pub fn group_lists(n: usize) -> Vec<Vec<FinAbGroup>> {
    let types: Vec<FinAbGroup> = (1..=n as u64).flat_map(FinAbGroup::all_of_order).collect();
    let mut out = Vec::new();
    fn rec(types: &[FinAbGroup], max: usize, left: usize, cur: &mut Vec<FinAbGroup>, out: &mut Vec<Vec<FinAbGroup>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for t in (0..=max.min(types.len() - 1)).rev() {
            if types[t].order() <= left {
                cur.push(types[t].clone());
                rec(types, t, left - types[t].order(), cur, out);
                cur.pop();
            }
        }
    }
    if n > 0 {
        rec(&types, types.len() - 1, n, &mut Vec::new(), &mut out);
    }
    out
}

/// A cheap isomorphism-invariant key used to bucket quandles before exact tests.
pub fn quick_key(q: &Quandle) -> Vec<usize> {
    let mut orbit_sizes: Vec<usize> = q.orbits().iter().map(Vec::len).collect();
    orbit_sizes.sort_unstable();
    let mut rows: Vec<Vec<usize>> = (0..q.size()).map(|a| q.left_translation(a).cycle_type()).collect();
    rows.sort();
    let mut key = vec![q.size(), q.reductivity_degree().unwrap_or(0), q.is_involutory() as usize];
    key.extend(orbit_sizes);
    for r in rows {
        key.push(usize::MAX);
        key.extend(r);
    }
    key
}

/// Isomorphism-class representatives, in first-seen order.
#[derive(Default)]
pub struct IsoClasses {
    reps: Vec<Quandle>,
    buckets: HashMap<Vec<usize>, Vec<usize>>,
}

impl IsoClasses {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `q` unless an isomorphic quandle is already present; returns the
    /// index of its class.
    pub fn insert(&mut self, q: Quandle) -> (usize, bool) {
        let key = quick_key(&q);
        let bucket = self.buckets.entry(key).or_default();
        for &r in bucket.iter() {
            if quandle_isomorphic(&self.reps[r], &q).is_some() {
                return (r, false);
            }
        }
        bucket.push(self.reps.len());
        self.reps.push(q);
        (self.reps.len() - 1, true)
    }

    pub fn reps(&self) -> &[Quandle] {
        &self.reps
    }

    pub fn into_reps(self) -> Vec<Quandle> {
        self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// Medial quandles of order `n` (up to isomorphism) whose canonical meshes
/// pass `filter` and whose tables satisfy `keep`, found by enumerating
/// indecomposable meshes over every group multiset.
pub fn enumerate_medial(n: usize, filter: &MeshFilter, keep: impl Fn(&Quandle) -> bool + Sync) -> Vec<Quandle> {
    use rayon::prelude::*;
    let mut filter = filter.clone();
    filter.indecomposable = true;
    let per_list: Vec<Vec<Quandle>> = group_lists(n)
        .par_iter()
        .map(|groups| {
            let mut local = IsoClasses::new();
            for_each_mesh(groups, &filter, |m| {
                let q = m.sum().expect("valid mesh").quandle().clone();
                if keep(&q) {
                    local.insert(q);
                }
                true
            });
            local.into_reps()
        })
        .collect();
    let mut classes = IsoClasses::new();
    for q in per_list.into_iter().flatten() {
        classes.insert(q);
    }
    classes.into_reps()
}

/// A random indecomposable mesh with total size at most `max_size`, found by
/// a randomised depth-first walk (retrying on dead ends).
pub fn random_mesh<R: Rng>(rng: &mut R, max_size: usize) -> AffineMesh {
    let filter = MeshFilter {
        indecomposable: true,
        ..MeshFilter::default()
    };
    loop {
        let total = rng.gen_range(1..=max_size);
        let lists = group_lists(total);
        let groups = lists[rng.gen_range(0..lists.len())].clone();
        if let Some(m) = random_mesh_over(rng, &groups, &filter) {
            return m;
        }
    }
}

/// A random mesh over the given groups, or `None` if the walk's budget runs out.
pub fn random_mesh_over<R: Rng>(rng: &mut R, groups: &[FinAbGroup], filter: &MeshFilter) -> Option<AffineMesh> {
    let mut found = None;
    let mut space = build_space(groups, filter, Some(rng), Some(20_000));
    space.walk_phi(0, &mut |m| {
        found = Some(m);
        false
    });
    found
}

/// The same mesh with the summands permuted: summand `i` moves to `perm[i]`.
pub fn permute_mesh(m: &AffineMesh, perm: &[usize]) -> AffineMesh {
    let k = m.len();
    let mut inv = vec![0; k];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let groups = (0..k).map(|p| m.group(inv[p]).clone()).collect();
    let phi = (0..k)
        .map(|p| (0..k).map(|q| m.phi(inv[p], inv[q]).clone()).collect())
        .collect();
    let c: Vec<Vec<GroupElem>> = (0..k)
        .map(|p| (0..k).map(|q| m.c(inv[p], inv[q]).clone()).collect())
        .collect();
    AffineMesh::new(groups, phi, c).expect("permuting preserves the conditions")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn group_list_counts() {
        // partitions of 4 refined by group types: 4 = Z4 | Z2^2 | 3+1 | 2+2 | 2+1+1 | 1*4
        assert_eq!(group_lists(4).len(), 6);
        assert!(group_lists(4).iter().all(|l| l.iter().map(FinAbGroup::order).sum::<usize>() == 4));
    }

    #[test]
    fn medial_quandles_of_order_3() {
        // all three quandles of order 3 are medial
        let all = enumerate_medial(3, &MeshFilter::default(), |_| true);
        assert_eq!(all.len(), 3);
    }

    #[test]
    fn random_meshes_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let m = random_mesh(&mut rng, 8);
            assert!(m.is_indecomposable());
            assert!(m.total_size() <= 8);
            let q = m.sum().unwrap();
            assert_eq!(q.quandle().orbits().len(), m.len());
        }
    }
}
