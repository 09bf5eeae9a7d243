//! Naive oracles shared by the integration tests. Nothing here calls the
//! library's own algorithms beyond reading tables.

#![allow(dead_code)]

use std::collections::BTreeSet;

use qforge::Quandle;

/// The principal congruence generated by `(a, b)` as the union of the
/// sequence `X_0 ⊆ X_1 ⊆ …`: `X_0` is the diagonal plus `(a,b),(b,a)`, and
/// `X_{n+1}` adds products and left quotients of pairs of pairs in `X_n`
/// together with the composites of pairs in `X_n`.
pub fn xn_principal(q: &Quandle, a: usize, b: usize) -> Vec<Vec<usize>> {
    let n = q.size();
    let mut x: BTreeSet<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    x.insert((a, b));
    x.insert((b, a));
    loop {
        let pairs: Vec<(usize, usize)> = x.iter().copied().collect();
        let mut next = x.clone();
        for &(x1, y1) in &pairs {
            for &(x2, y2) in &pairs {
                next.insert((q.op(x1, x2), q.op(y1, y2)));
                next.insert((q.ldiv(x1, x2), q.ldiv(y1, y2)));
                if y1 == x2 {
                    next.insert((x1, y2));
                }
            }
        }
        if next.len() == x.len() {
            break;
        }
        x = next;
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; n];
    for i in 0..n {
        if !seen[i] {
            let block: Vec<usize> = (0..n).filter(|&j| x.contains(&(i, j))).collect();
            for &j in &block {
                seen[j] = true;
            }
            blocks.push(block);
        }
    }
    blocks
}

/// Every quandle table on `0..n` (not up to isomorphism), by brute force.
pub fn all_quandle_tables(n: usize) -> Vec<Quandle> {
    fn perms_fixing(n: usize, a: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        fn rec(n: usize, a: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            let pos = cur.len();
            for v in 0..n {
                if cur.contains(&v) || (pos == a) != (v == a) {
                    continue;
                }
                cur.push(v);
                rec(n, a, cur, out);
                cur.pop();
            }
        }
        rec(n, a, &mut cur, &mut out);
        out
    }
    let rows: Vec<Vec<Vec<usize>>> = (0..n).map(|a| perms_fixing(n, a)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let table: Vec<Vec<usize>> = (0..n).map(|a| rows[a][idx[a]].clone()).collect();
        let ld = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| table[a][table[b][c]] == table[table[a][b]][table[a][c]]))
        });
        if ld {
            out.push(Quandle::from_table(&table).expect("quandle axioms hold"));
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            idx[k] += 1;
            if idx[k] < rows[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Isomorphism by trying every permutation.
pub fn brute_isomorphic(q1: &Quandle, q2: &Quandle) -> bool {
    let n = q1.size();
    if n != q2.size() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let is_iso =
        |f: &[usize]| (0..n).all(|a| (0..n).all(|b| f[q1.op(a, b)] == q2.op(f[a], f[b])));
    // Heap's algorithm
    let mut c = vec![0usize; n];
    if is_iso(&perm) {
        return true;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if is_iso(&perm) {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

/// Isomorphism classes of `qs` by brute force.
pub fn brute_classes(qs: &[Quandle]) -> Vec<Quandle> {
    let mut reps: Vec<Quandle> = Vec::new();
    for q in qs {
        if !reps.iter().any(|r| brute_isomorphic(r, q)) {
            reps.push(q.clone());
        }
    }
    reps
}

pub fn naive_medial(q: &Quandle) -> bool {
    let n = q.size();
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| (0..n).all(|d| q.op(q.op(a, b), q.op(c, d)) == q.op(q.op(a, c), q.op(b, d))))
        })
    })
}

/// Whether a row-major `m × m` table is an abelian group operation.
pub fn is_abelian_group_table(add: &[usize], m: usize) -> bool {
    let op = |a: usize, b: usize| add[a * m + b];
    let Some(zero) = (0..m).find(|&z| (0..m).all(|a| op(z, a) == a)) else {
        return false;
    };
    (0..m).all(|a| {
        (0..m).any(|b| op(a, b) == zero)
            && (0..m).all(|b| op(a, b) == op(b, a) && (0..m).all(|c| op(op(a, b), c) == op(a, op(b, c))))
    })
}

/// Naive orbit partition: closure of `{x}` under all left translations and
/// their inverses.
pub fn naive_orbits(q: &Quandle) -> Vec<Vec<usize>> {
    let n = q.size();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for s in 0..n {
        if orbit_of[s] != usize::MAX {
            continue;
        }
        let mut orbit = vec![s];
        orbit_of[s] = orbits.len();
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for a in 0..n {
                for y in [q.op(a, x), q.ldiv(a, x)] {
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = orbits.len();
                        orbit.push(y);
                    }
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}
