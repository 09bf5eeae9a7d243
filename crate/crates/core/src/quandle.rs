//! Finite quandles as multiplication tables, with the structural predicates
//! used throughout the crate.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Axiom, Error, Result};
use crate::perm::{PermGroupClosure, Permutation};

/// A finite quandle on `0..n`. `mult[a * n + b] = a * b`, and `ldiv` holds the
/// left division derived by inverting rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quandle {
    n: usize,
    mult: Vec<u32>,
    ldiv: Vec<u32>,
}

/// Which of the three mediality identities failed, with the quadruple `(x, y, u, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MedialWitness {
    pub identity: u8,
    pub quadruple: [usize; 4],
}

#[derive(Serialize, Deserialize)]
struct QuandleRepr {
    size: usize,
    table: Vec<Vec<usize>>,
}

impl Serialize for Quandle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuandleRepr {
            size: self.n,
            table: self.table(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quandle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = QuandleRepr::deserialize(d)?;
        if r.table.len() != r.size {
            return Err(serde::de::Error::custom(format!(
                "size {} but {} table rows",
                r.size,
                r.table.len()
            )));
        }
        Quandle::from_table(&r.table).map_err(serde::de::Error::custom)
    }
}

impl Quandle {
    /// Validates a table against the quandle axioms and fills in left division.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::AxiomViolation {
                kind: Axiom::Shape,
                witness: vec![],
            });
        }
        let mut mult = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::AxiomViolation {
                    kind: Axiom::Shape,
                    witness: vec![a],
                });
            }
            for (b, &x) in row.iter().enumerate() {
                if x >= n {
                    return Err(Error::AxiomViolation {
                        kind: Axiom::Range,
                        witness: vec![a, b],
                    });
                }
                mult.push(x as u32);
            }
        }
        Quandle::from_flat(n, mult)
    }

    /// Builds and validates the table `a * b = f(a, b)`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        Quandle::from_table(&table)
    }

    fn from_flat(n: usize, mult: Vec<u32>) -> Result<Self> {
        let mut ldiv = vec![u32::MAX; n * n];
        for a in 0..n {
            for b in 0..n {
                let x = mult[a * n + b] as usize;
                if ldiv[a * n + x] != u32::MAX {
                    return Err(Error::AxiomViolation {
                        kind: Axiom::LeftQuasigroup,
                        witness: vec![a],
                    });
                }
                ldiv[a * n + x] = b as u32;
            }
        }
        for a in 0..n {
            if mult[a * n + a] as usize != a {
                return Err(Error::AxiomViolation {
                    kind: Axiom::Idempotency,
                    witness: vec![a],
                });
            }
        }
        let q = Quandle { n, mult, ldiv };
        for x in 0..n {
            for y in 0..n {
                let xy = q.op(x, y);
                for z in 0..n {
                    if q.op(x, q.op(y, z)) != q.op(xy, q.op(x, z)) {
                        return Err(Error::AxiomViolation {
                            kind: Axiom::LeftDistributivity,
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }
        Ok(q)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.n + b] as usize
    }

    #[inline]
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.ldiv[a * self.n + b] as usize
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.mult[a * self.n..(a + 1) * self.n]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| self.row(a).iter().map(|&x| x as usize).collect())
            .collect()
    }

    /// The isomorphic copy obtained by renaming `x` to `relabel[x]`.
    pub fn relabel(&self, relabel: &[usize]) -> Result<Quandle> {
        let p = Permutation::new(relabel.iter().map(|&x| x as u32).collect())?;
        let n = self.n;
        if p.len() != n {
            return Err(Error::Format("relabelling has the wrong length".into()));
        }
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[p.apply(a) * n + p.apply(b)] = p.apply(self.op(a, b)) as u32;
            }
        }
        Quandle::from_flat(n, mult)
    }

    /// First failure of the three mediality identities over all quadruples.
    pub fn medial_counterexample(&self) -> Option<MedialWitness> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.op(x, y);
                let xly = self.ldiv(x, y);
                for u in 0..n {
                    let xu = self.op(x, u);
                    let xlu = self.ldiv(x, u);
                    for v in 0..n {
                        let w = [x, y, u, v];
                        if self.op(xy, self.op(u, v)) != self.op(xu, self.op(y, v)) {
                            return Some(MedialWitness { identity: 1, quadruple: w });
                        }
                        if self.ldiv(xly, self.ldiv(u, v)) != self.ldiv(xlu, self.ldiv(y, v)) {
                            return Some(MedialWitness { identity: 2, quadruple: w });
                        }
                        if self.op(xly, self.ldiv(u, v)) != self.ldiv(xu, self.op(y, v)) {
                            return Some(MedialWitness { identity: 3, quadruple: w });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_medial(&self) -> bool {
        self.medial_counterexample().is_none()
    }

    pub(crate) fn require_medial(&self) -> Result<()> {
        match self.medial_counterexample() {
            None => Ok(()),
            Some(w) => Err(Error::NonMedial(w.quadruple.to_vec())),
        }
    }

    pub fn left_translation(&self, a: usize) -> Permutation {
        Permutation::from_vec_unchecked(self.row(a).to_vec())
    }

    pub fn left_translations(&self) -> Vec<Permutation> {
        (0..self.n).map(|a| self.left_translation(a)).collect()
    }

    /// `{L_a L_0⁻¹ : a ∈ Q}`, a generating set of the displacement group.
    pub fn displacement_generators(&self) -> Vec<Permutation> {
        let l0_inv = self.left_translation(0).inverse();
        (0..self.n)
            .map(|a| self.left_translation(a).compose(&l0_inv))
            .collect()
    }

    pub fn lmlt(&self, cap: usize) -> PermGroupClosure {
        PermGroupClosure::generate(self.n, self.left_translations(), cap)
    }

    pub fn dis(&self, cap: usize) -> PermGroupClosure {
        PermGroupClosure::generate(self.n, self.displacement_generators(), cap)
    }

    /// Orbits under the displacement group, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_under(self.n, &self.displacement_generators())
    }

    /// `orbit_index[x]` = position of the orbit containing `x` in [`Self::orbits`].
    pub fn orbit_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for (k, orbit) in self.orbits().iter().enumerate() {
            for &x in orbit {
                idx[x] = k;
            }
        }
        idx
    }

    pub fn is_connected(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Every right translation `x ↦ x * e` is a bijection.
    pub fn is_latin(&self) -> bool {
        (0..self.n).all(|b| {
            let mut seen = vec![false; self.n];
            (0..self.n).all(|a| !std::mem::replace(&mut seen[self.op(a, b)], true))
        })
    }

    /// Least `m ≤ n + 1` with `(((x*y)*y)*…)*y = y` (m factors of y) for all x, y.
    pub fn reductivity_degree(&self) -> Option<usize> {
        let n = self.n;
        let mut cur: Vec<usize> = (0..n * n).map(|k| k / n).collect();
        for m in 1..=n + 1 {
            let mut done = true;
            for x in 0..n {
                for y in 0..n {
                    let v = self.op(cur[x * n + y], y);
                    cur[x * n + y] = v;
                    done &= v == y;
                }
            }
            if done {
                return Some(m);
            }
        }
        None
    }

    pub fn is_involutory(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.op(a, self.op(a, b)) == b))
    }

    pub fn is_projection(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.op(a, b) == b))
    }

    /// Two distinct elements of one orbit with equal left translations.
    pub fn quasi_reductive_witness(&self) -> Option<(usize, usize)> {
        for orbit in self.orbits() {
            for (i, &a) in orbit.iter().enumerate() {
                for &b in &orbit[i + 1..] {
                    if self.row(a) == self.row(b) {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    pub fn is_quasi_reductive(&self) -> bool {
        self.quasi_reductive_witness().is_some()
    }

    /// Nilpotency class of LMlt(Q). `Ok(None)` if not nilpotent.
    pub fn lmlt_nilpotency_degree(&self, cap: usize) -> Result<Option<usize>> {
        let g = self.lmlt(cap);
        g.nilpotency_class(cap)
    }
}

/// Connected components of the action generated by `gens` on `0..n`.
pub(crate) fn orbits_under(n: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Reads a table from CSV text, one row per line, 0-indexed entries.
pub fn quandle_from_csv(text: &str) -> Result<Quandle> {
    let table = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|e| Error::Format(format!("bad CSV entry {s:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Quandle::from_table(&table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{alexander_cyclic, projection_quandle};

    fn z43() -> Quandle {
        Quandle::from_table(&[
            vec![0, 3, 2, 1],
            vec![2, 1, 0, 3],
            vec![0, 3, 2, 1],
            vec![2, 1, 0, 3],
        ])
        .unwrap()
    }

    #[test]
    fn validates_alexander_z4_3_table() {
        let q = z43();
        assert_eq!(q, alexander_cyclic(4, 3).unwrap());
        assert_eq!(q.ldiv(0, 3), 1);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(q.ldiv(a, q.op(a, b)), b);
                assert_eq!(q.op(a, q.ldiv(a, b)), b);
            }
        }
    }

    #[test]
    fn trivial_table() {
        assert_eq!(Quandle::from_table(&[vec![0]]).unwrap().size(), 1);
    }

    #[test]
    fn axiom_violations() {
        let err = Quandle::from_table(&[vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(
            err,
            Error::AxiomViolation { kind: Axiom::Idempotency, ref witness } if witness == &vec![0]
        ));
        let err = Quandle::from_table(&[vec![0, 0], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { kind: Axiom::LeftQuasigroup, .. }));
        let err = Quandle::from_table(&[vec![0, 2], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { kind: Axiom::Range, .. }));
        let err = Quandle::from_table(&[vec![0, 1], vec![0]]).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { kind: Axiom::Shape, .. }));
        // idempotent left quasigroup that is not left distributive: rows are
        // permutations fixing the diagonal but not automorphisms
        let t = vec![
            vec![0, 2, 1, 3],
            vec![3, 1, 2, 0],
            vec![0, 1, 2, 3],
            vec![0, 1, 2, 3],
        ];
        let err = Quandle::from_table(&t).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { kind: Axiom::LeftDistributivity, .. }));
    }

    #[test]
    fn mediality() {
        assert!(z43().is_medial());
        assert!(projection_quandle(3).is_medial());
    }

    /// Exhaustive search over 4-element idempotent left-quasigroup tables for
    /// quandles that are not medial.
    #[test]
    fn smallest_non_medial_quandle_found_by_search() {
        let perms: Vec<Vec<usize>> = {
            let mut out = Vec::new();
            let mut v = vec![0, 1, 2, 3];
            fn heap(k: usize, v: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if k == 1 {
                    out.push(v.clone());
                    return;
                }
                for i in 0..k {
                    heap(k - 1, v, out);
                    if k.is_multiple_of(2) {
                        v.swap(i, k - 1);
                    } else {
                        v.swap(0, k - 1);
                    }
                }
            }
            heap(4, &mut v, &mut out);
            out
        };
        let rows: Vec<Vec<Vec<usize>>> = (0..4)
            .map(|a| perms.iter().filter(|p| p[a] == a).cloned().collect())
            .collect();
        let mut non_medial = None;
        let mut quandles = 0;
        'search: for r0 in &rows[0] {
            for r1 in &rows[1] {
                for r2 in &rows[2] {
                    for r3 in &rows[3] {
                        let t = vec![r0.clone(), r1.clone(), r2.clone(), r3.clone()];
                        if let Ok(q) = Quandle::from_table(&t) {
                            quandles += 1;
                            if let Some(w) = q.medial_counterexample() {
                                non_medial = Some((q, w));
                                break 'search;
                            }
                        }
                    }
                }
            }
        }
        let (q, w) = non_medial.expect("a non-medial 4-element quandle exists");
        assert!(quandles > 0);
        assert!(!q.is_medial());
        let [x, y, u, v] = w.quadruple;
        let lhs = (q.op(q.op(x, y), q.op(u, v)), q.ldiv(q.ldiv(x, y), q.ldiv(u, v)), q.op(q.ldiv(x, y), q.ldiv(u, v)));
        let rhs = (q.op(q.op(x, u), q.op(y, v)), q.ldiv(q.ldiv(x, u), q.ldiv(y, v)), q.ldiv(q.op(x, u), q.op(y, v)));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn translations_of_z4_3() {
        let q = z43();
        assert_eq!(q.left_translation(0).to_string(), "(1 3)");
        assert_eq!(q.left_translation(1).to_string(), "(0 2)");
        assert!(projection_quandle(3)
            .left_translations()
            .iter()
            .all(Permutation::is_identity));
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(z43().orbits(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(alexander_cyclic(5, 2).unwrap().orbits().len(), 1);
        assert_eq!(projection_quandle(4).orbits().len(), 4);
    }

    #[test]
    fn dis_and_lmlt_orbits_agree() {
        for q in [z43(), alexander_cyclic(5, 2).unwrap(), alexander_cyclic(9, 2).unwrap()] {
            assert_eq!(orbits_under(q.size(), &q.left_translations()), q.orbits());
        }
    }

    #[test]
    fn connected_and_latin() {
        let q5 = alexander_cyclic(5, 2).unwrap();
        assert!(q5.is_connected() && q5.is_latin());
        let q = z43();
        assert!(!q.is_connected() && !q.is_latin());
    }

    #[test]
    fn reductivity() {
        assert_eq!(projection_quandle(3).reductivity_degree(), Some(1));
        assert_eq!(alexander_cyclic(5, 2).unwrap().reductivity_degree(), None);
        // (Z_4, 3): x*y = y + 2(x - y), so (x*y)*y = y + 4(x - y) = y
        assert_eq!(z43().reductivity_degree(), Some(2));
    }

    #[test]
    fn involutory() {
        assert!(alexander_cyclic(9, -1).unwrap().is_involutory());
        assert!(z43().is_involutory());
        assert!(!alexander_cyclic(5, 2).unwrap().is_involutory());
    }

    #[test]
    fn quasi_reductivity() {
        assert_eq!(z43().quasi_reductive_witness(), Some((0, 2)));
        assert!(!alexander_cyclic(5, 2).unwrap().is_quasi_reductive());
        // equal rows of (Z_6, -1) lie in different orbits
        assert!(!alexander_cyclic(6, -1).unwrap().is_quasi_reductive());
    }

    #[test]
    fn quasi_reductive_but_not_reductive() {
        let g = crate::abelian::FinAbGroup::new(vec![3, 3, 3]).unwrap();
        let f = crate::abelian::GroupHom::new(g.clone(), g.clone(), vec![vec![2, 0, 0], vec![0, 1, 1], vec![0, 0, 1]])
            .unwrap();
        let q = crate::construct::alexander(&g, &f).unwrap();
        assert!(q.is_quasi_reductive());
        assert_eq!(q.reductivity_degree(), None);
    }

    #[test]
    fn nilpotency_of_small_cases() {
        assert_eq!(projection_quandle(3).lmlt_nilpotency_degree(1000).unwrap(), Some(0));
        assert_eq!(projection_quandle(2).lmlt_nilpotency_degree(1000).unwrap(), Some(0));
        assert_eq!(alexander_cyclic(5, 2).unwrap().lmlt_nilpotency_degree(1000).unwrap(), None);
    }

    #[test]
    fn csv_import() {
        let q = quandle_from_csv("0,3,2,1\n2,1,0,3\n# comment\n0 3 2 1\n2,1,0,3\n").unwrap();
        assert_eq!(q, z43());
        assert!(quandle_from_csv("0,x\n").is_err());
    }

    #[test]
    fn json_round_trip() {
        let q = z43();
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"{"size":4,"table":[[0,3,2,1],[2,1,0,3],[0,3,2,1],[2,1,0,3]]}"#);
        let back: Quandle = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Quandle>(r#"{"size":2,"table":[[1,0],[0,1]]}"#).is_err());
    }
}
