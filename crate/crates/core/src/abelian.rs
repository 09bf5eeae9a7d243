//! Finite abelian groups presented as explicit products of cyclic factors,
//! integer-matrix homomorphisms between them, and the Z[t,t^-1]-module layer
//! (a group together with an automorphism `t`).
//!
//! Elements are residue vectors. Every group also carries a mixed-radix
//! indexing of its elements (first coordinate most significant), so index
//! order coincides with lexicographic order on coordinate vectors.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default element cap for submodule enumeration.
pub const DEFAULT_SUBMODULE_CAP: usize = 10_000;

/// Largest group handled at all; indices must fit comfortably in `u32` tables.
const MAX_GROUP_ORDER: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct FinAbGroup {
    orders: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    orders: Vec<u64>,
}

impl TryFrom<GroupRepr> for FinAbGroup {
    type Error = Error;
    fn try_from(r: GroupRepr) -> Result<Self> {
        FinAbGroup::new(r.orders)
    }
}

impl From<FinAbGroup> for GroupRepr {
    fn from(g: FinAbGroup) -> Self {
        GroupRepr { orders: g.orders }
    }
}

/// A residue vector; meaningful only relative to a parent [`FinAbGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElem(pub Vec<u64>);

impl GroupElem {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [] => write!(f, "0"),
            [x] => write!(f, "{x}"),
            xs => {
                write!(f, "(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl FinAbGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidGroup(format!("zero order in {orders:?}")));
        }
        let mut total: u64 = 1;
        for &n in &orders {
            total = total
                .checked_mul(n)
                .filter(|&t| t <= MAX_GROUP_ORDER)
                .ok_or_else(|| Error::InvalidGroup(format!("group {orders:?} too large")))?;
        }
        Ok(FinAbGroup { orders })
    }

    /// Z_n. Panics if `n == 0`.
    pub fn cyclic(n: u64) -> Self {
        FinAbGroup::new(vec![n]).expect("cyclic group order must be positive")
    }

    pub fn trivial() -> Self {
        FinAbGroup { orders: vec![] }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem(vec![0; self.rank()])
    }

    /// The `i`-th standard generator.
    pub fn generator(&self, i: usize) -> GroupElem {
        let mut v = vec![0; self.rank()];
        v[i] = 1 % self.orders[i];
        GroupElem(v)
    }

    pub fn contains(&self, a: &GroupElem) -> bool {
        a.0.len() == self.rank() && a.0.iter().zip(&self.orders).all(|(x, n)| x < n)
    }

    pub fn check(&self, a: &GroupElem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::ElementMismatch {
                elem: a.0.clone(),
                group: self.orders.clone(),
            })
        }
    }

    /// Reduces an arbitrary integer vector into the group.
    pub fn reduce(&self, v: &[i64]) -> Result<GroupElem> {
        if v.len() != self.rank() {
            return Err(Error::ElementMismatch {
                elem: v.iter().map(|&x| x as u64).collect(),
                group: self.orders.clone(),
            });
        }
        Ok(GroupElem(
            v.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| x.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    pub fn add(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        GroupElem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElem) -> GroupElem {
        GroupElem(
            a.0.iter()
                .zip(&self.orders)
                .map(|(x, n)| (n - x) % n)
                .collect(),
        )
    }

    pub fn sub(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElem) -> GroupElem {
        GroupElem(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| {
                    let k = k.rem_euclid(n as i64) as u64;
                    ((k as u128 * x as u128) % n as u128) as u64
                })
                .collect(),
        )
    }

    pub fn index_of(&self, a: &GroupElem) -> usize {
        a.0.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    pub fn element(&self, mut idx: usize) -> GroupElem {
        let mut v = vec![0; self.rank()];
        for (slot, &n) in v.iter_mut().zip(&self.orders).rev() {
            *slot = (idx % n as usize) as u64;
            idx /= n as usize;
        }
        GroupElem(v)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        self.index_of(&self.add(&self.element(a), &self.element(b)))
    }

    pub fn element_order(&self, a: &GroupElem) -> u64 {
        a.0.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&x, &n)| lcm(acc, n / gcd(x, n)))
    }

    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &n| lcm(acc, n))
    }

    /// Prime-power orders of the primary decomposition, sorted ascending.
    pub fn elementary_divisors(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .orders
            .iter()
            .flat_map(|&n| factorize(n).into_iter().map(|(p, e)| p.pow(e)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Invariant factors `d_1 | d_2 | ... | d_r`, each > 1. Display-only
    /// normalisation; groups are never silently rewritten into this form.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
        for q in self.elementary_divisors() {
            let p = factorize(q)[0].0;
            by_prime.entry(p).or_default().push(q);
        }
        let width = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![1u64; width];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (k, q) in powers.iter().enumerate() {
                out[width - 1 - k] *= q;
            }
        }
        out
    }

    pub fn is_isomorphic_to(&self, other: &FinAbGroup) -> bool {
        self.elementary_divisors() == other.elementary_divisors()
    }

    /// One representative per isomorphism class of abelian groups of order
    /// `n`, presented by elementary divisors (prime by prime, larger powers first).
    pub fn all_of_order(n: u64) -> Vec<FinAbGroup> {
        if n == 1 {
            return vec![FinAbGroup::trivial()];
        }
        let mut out = vec![vec![]];
        for (p, e) in factorize(n) {
            let mut next = Vec::new();
            for prefix in &out {
                for part in partitions(e, e) {
                    let mut v: Vec<u64> = prefix.clone();
                    v.extend(part.iter().map(|&k| p.pow(k)));
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter()
            .map(|orders| FinAbGroup::new(orders).expect("valid orders"))
            .collect()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        for (i, n) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}

/// Homomorphism given by an integer matrix: entry `(r, c)` is the coefficient
/// of source generator `c` in target coordinate `r`. Entries are stored reduced
/// modulo the target orders, so derived equality is hom equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HomRepr", into = "HomRepr")]
pub struct GroupHom {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct HomRepr {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: Vec<Vec<i64>>,
}

impl TryFrom<HomRepr> for GroupHom {
    type Error = Error;
    fn try_from(r: HomRepr) -> Result<Self> {
        GroupHom::new(r.source, r.target, r.matrix)
    }
}

impl From<GroupHom> for HomRepr {
    fn from(h: GroupHom) -> Self {
        HomRepr {
            matrix: h
                .matrix
                .iter()
                .map(|row| row.iter().map(|&x| x as i64).collect())
                .collect(),
            source: h.source,
            target: h.target,
        }
    }
}

impl GroupHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if matrix.len() != target.rank() && !(target.rank() == 0 && matrix.is_empty()) {
            return Err(Error::NotWellDefined(format!(
                "matrix has {} rows, target rank is {}",
                matrix.len(),
                target.rank()
            )));
        }
        if matrix.iter().any(|row| row.len() != source.rank()) {
            return Err(Error::NotWellDefined(format!(
                "matrix rows must have {} columns",
                source.rank()
            )));
        }
        let reduced: Vec<Vec<u64>> = matrix
            .iter()
            .zip(target.orders())
            .map(|(row, &m)| row.iter().map(|&x| x.rem_euclid(m as i64) as u64).collect())
            .collect();
        for (c, &n) in source.orders().iter().enumerate() {
            for (r, &m) in target.orders().iter().enumerate() {
                if !(reduced[r][c] as u128 * n as u128).is_multiple_of(m as u128) {
                    return Err(Error::NotWellDefined(format!(
                        "generator {c} of order {n} maps to coordinate {r} value {} of Z{m}",
                        reduced[r][c]
                    )));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix: reduced,
        })
    }

    /// Builds the homomorphism sending the `c`-th source generator to `images[c]`.
    pub fn from_images(
        source: FinAbGroup,
        target: FinAbGroup,
        images: &[GroupElem],
    ) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::NotWellDefined(format!(
                "{} generator images given for rank {}",
                images.len(),
                source.rank()
            )));
        }
        for img in images {
            target.check(img)?;
        }
        let matrix = (0..target.rank())
            .map(|r| images.iter().map(|img| img.0[r] as i64).collect())
            .collect();
        GroupHom::new(source, target, matrix)
    }

    /// Builds a homomorphism from a function by sampling generators, then
    /// verifies the result agrees with `f` on every element.
    pub fn from_fn(
        source: FinAbGroup,
        target: FinAbGroup,
        f: impl Fn(&GroupElem) -> GroupElem,
    ) -> Result<Self> {
        let images: Vec<GroupElem> = (0..source.rank()).map(|c| f(&source.generator(c))).collect();
        let h = GroupHom::from_images(source, target, &images)?;
        for a in h.source.elements() {
            if h.map(&a) != f(&a) {
                return Err(Error::NotWellDefined(format!(
                    "function is not additive at {a}"
                )));
            }
        }
        Ok(h)
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        GroupHom::scalar(g, 1)
    }

    pub fn zero(source: &FinAbGroup, target: &FinAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: vec![vec![0; source.rank()]; target.rank()],
        }
    }

    /// Multiplication by `k`.
    pub fn scalar(g: &FinAbGroup, k: i64) -> Self {
        let r = g.rank();
        let matrix = (0..r)
            .map(|i| (0..r).map(|j| if i == j { k } else { 0 }).collect())
            .collect();
        GroupHom::new(g.clone(), g.clone(), matrix).expect("scalar maps are well defined")
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.matrix
    }

    pub fn apply(&self, a: &GroupElem) -> Result<GroupElem> {
        self.source.check(a)?;
        Ok(self.map(a))
    }

    /// Unchecked application; `a` must belong to the source.
    pub fn map(&self, a: &GroupElem) -> GroupElem {
        GroupElem(
            self.matrix
                .iter()
                .zip(self.target.orders())
                .map(|(row, &m)| {
                    let s: u128 = row
                        .iter()
                        .zip(&a.0)
                        .map(|(&x, &y)| x as u128 * y as u128)
                        .sum();
                    (s % m as u128) as u64
                })
                .collect(),
        )
    }

    pub fn image_of_generator(&self, c: usize) -> GroupElem {
        GroupElem(self.matrix.iter().map(|row| row[c]).collect())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom> {
        if inner.target != self.source {
            return Err(Error::GroupMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source, self.target, inner.source, inner.target
            )));
        }
        let images: Vec<GroupElem> = (0..inner.source.rank())
            .map(|c| self.map(&inner.image_of_generator(c)))
            .collect();
        GroupHom::from_images(inner.source.clone(), self.target.clone(), &images)
    }

    fn same_shape(&self, other: &GroupHom) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::GroupMismatch(
                "homomorphisms have different source or target".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        self.same_shape(other)?;
        let images: Vec<GroupElem> = (0..self.source.rank())
            .map(|c| {
                self.target
                    .add(&self.image_of_generator(c), &other.image_of_generator(c))
            })
            .collect();
        GroupHom::from_images(self.source.clone(), self.target.clone(), &images)
    }

    pub fn neg(&self) -> GroupHom {
        let images: Vec<GroupElem> = (0..self.source.rank())
            .map(|c| self.target.neg(&self.image_of_generator(c)))
            .collect();
        GroupHom::from_images(self.source.clone(), self.target.clone(), &images)
            .expect("negation preserves well-definedness")
    }

    pub fn sub(&self, other: &GroupHom) -> Result<GroupHom> {
        self.add(&other.neg())
    }

    /// `k`-fold composite of an endomorphism (`k = 0` gives the identity).
    pub fn pow(&self, k: u32) -> Result<GroupHom> {
        if self.source != self.target {
            return Err(Error::GroupMismatch("pow needs an endomorphism".into()));
        }
        let mut acc = GroupHom::identity(&self.source);
        for _ in 0..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|row| row.iter().all(|&x| x == 0))
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == GroupHom::identity(&self.source)
    }

    /// Image of every source element, by index.
    pub fn table(&self) -> Vec<usize> {
        self.source
            .elements()
            .map(|a| self.target.index_of(&self.map(&a)))
            .collect()
    }

    pub fn kernel(&self) -> Subgroup {
        let zero = self.target.zero();
        let elements: Vec<usize> = self
            .source
            .elements()
            .enumerate()
            .filter(|(_, a)| self.map(a) == zero)
            .map(|(i, _)| i)
            .collect();
        Subgroup::from_indices(self.source.clone(), elements, vec![])
    }

    pub fn image(&self) -> Subgroup {
        let gens: Vec<GroupElem> = (0..self.source.rank())
            .map(|c| self.image_of_generator(c))
            .collect();
        subgroup_generated(&self.target, &gens).expect("images lie in the target")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().is_full()
    }

    pub fn is_automorphism(&self) -> Result<bool> {
        if self.source != self.target {
            return Err(Error::GroupMismatch(format!(
                "automorphism test needs equal carriers, got {} -> {}",
                self.source, self.target
            )));
        }
        Ok(self.is_injective())
    }

    pub fn is_nilpotent(&self) -> bool {
        if self.source != self.target {
            return false;
        }
        // An endomorphism of a group of order k is nilpotent iff its k-th power vanishes.
        let mut acc = self.clone();
        for _ in 0..self.source.order() {
            if acc.is_zero() {
                return true;
            }
            acc = self.compose(&acc).expect("endomorphism");
        }
        acc.is_zero()
    }

    pub fn inverse(&self) -> Result<GroupHom> {
        if !self.is_automorphism()? {
            return Err(Error::NotAutomorphism(format!("{self:?}")));
        }
        let table = self.table();
        let mut inv = vec![0usize; table.len()];
        for (i, &j) in table.iter().enumerate() {
            inv[j] = i;
        }
        let images: Vec<GroupElem> = (0..self.source.rank())
            .map(|c| {
                self.source
                    .element(inv[self.source.index_of(&self.source.generator(c))])
            })
            .collect();
        GroupHom::from_images(self.source.clone(), self.source.clone(), &images)
    }

    /// `self` transported to abstract subgroup copies: the result sends `x` to
    /// the preimage under `target_embedding` of `self(embedding(x))`.
    pub fn conjugate_through(
        &self,
        embedding: &GroupHom,
        target_embedding: &GroupHom,
    ) -> Result<GroupHom> {
        let tgt_table = target_embedding.table();
        let mut back = std::collections::HashMap::new();
        for (i, &j) in tgt_table.iter().enumerate() {
            back.insert(j, i);
        }
        let src = embedding.source.clone();
        let tgt = target_embedding.source.clone();
        let images = (0..src.rank())
            .map(|c| {
                let x = self.map(&embedding.map(&src.generator(c)));
                back.get(&self.target.index_of(&x))
                    .map(|&i| tgt.element(i))
                    .ok_or_else(|| {
                        Error::GroupMismatch("image leaves the target subgroup".into())
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        GroupHom::from_images(src, tgt, &images)
    }
}

impl fmt::Display for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.source, self.target, self.matrix)
    }
}

/// All homomorphisms `source -> target`, in lexicographic order of generator images.
pub fn all_homs(source: &FinAbGroup, target: &FinAbGroup) -> Vec<GroupHom> {
    let choices: Vec<Vec<GroupElem>> = source
        .orders()
        .iter()
        .map(|&n| {
            target
                .elements()
                .filter(|x| target.scale(n as i64, x) == target.zero())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(choices.len());
    fn rec(
        choices: &[Vec<GroupElem>],
        current: &mut Vec<GroupElem>,
        source: &FinAbGroup,
        target: &FinAbGroup,
        out: &mut Vec<GroupHom>,
    ) {
        if current.len() == choices.len() {
            out.push(
                GroupHom::from_images(source.clone(), target.clone(), current)
                    .expect("orders respected"),
            );
            return;
        }
        for x in &choices[current.len()] {
            current.push(x.clone());
            rec(choices, current, source, target, out);
            current.pop();
        }
    }
    rec(&choices, &mut current, source, target, &mut out);
    out
}

/// All isomorphisms `source -> target`. Errors when `|source|` exceeds `cap`.
pub fn isomorphisms(source: &FinAbGroup, target: &FinAbGroup, cap: usize) -> Result<Vec<GroupHom>> {
    if source.order() > cap {
        return Err(Error::CapExceeded {
            what: "automorphism enumeration group order",
            cap,
        });
    }
    if !source.is_isomorphic_to(target) {
        return Ok(vec![]);
    }
    // Injective maps preserve element orders, so each generator image must have
    // exactly the generator's order.
    let choices: Vec<Vec<GroupElem>> = source
        .orders()
        .iter()
        .map(|&n| {
            target
                .elements()
                .filter(|x| target.element_order(x) == n)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<GroupElem> = Vec::new();
    let mut span: HashSet<usize> = HashSet::from([target.index_of(&target.zero())]);
    fn rec(
        choices: &[Vec<GroupElem>],
        current: &mut Vec<GroupElem>,
        span: &HashSet<usize>,
        source: &FinAbGroup,
        target: &FinAbGroup,
        out: &mut Vec<GroupHom>,
    ) {
        let k = current.len();
        if k == choices.len() {
            if span.len() == target.order() {
                out.push(
                    GroupHom::from_images(source.clone(), target.clone(), current)
                        .expect("orders respected"),
                );
            }
            return;
        }
        let n = source.orders()[k] as usize;
        for x in &choices[k] {
            // the new cyclic factor must meet the current span trivially
            let mut next = HashSet::with_capacity(span.len() * n);
            let mut ok = true;
            let mut mult = target.zero();
            for step in 0..n {
                if step > 0 {
                    mult = target.add(&mult, x);
                    if span.contains(&target.index_of(&mult)) {
                        ok = false;
                        break;
                    }
                }
                for &s in span {
                    next.insert(target.index_of(&target.add(&target.element(s), &mult)));
                }
            }
            if !ok {
                continue;
            }
            current.push(x.clone());
            rec(choices, current, &next, source, target, out);
            current.pop();
        }
    }
    rec(&choices, &mut current, &span, source, target, &mut out);
    span.clear();
    Ok(out)
}

pub fn automorphisms(g: &FinAbGroup, cap: usize) -> Result<Vec<GroupHom>> {
    isomorphisms(g, g, cap)
}

/// Explicit subgroup: sorted element indices plus the generators it came from.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: FinAbGroup,
    elements: Vec<usize>,
    generators: Vec<GroupElem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.parent.hash(state);
        self.elements.hash(state);
    }
}

impl Subgroup {
    fn from_indices(parent: FinAbGroup, mut elements: Vec<usize>, generators: Vec<GroupElem>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Subgroup {
            parent,
            elements,
            generators,
        }
    }

    pub fn trivial(parent: &FinAbGroup) -> Self {
        Subgroup::from_indices(parent.clone(), vec![0], vec![])
    }

    pub fn full(parent: &FinAbGroup) -> Self {
        let gens = (0..parent.rank()).map(|i| parent.generator(i)).collect();
        Subgroup::from_indices(parent.clone(), (0..parent.order()).collect(), gens)
    }

    pub fn parent(&self) -> &FinAbGroup {
        &self.parent
    }

    pub fn generators(&self) -> &[GroupElem] {
        &self.generators
    }

    pub fn indices(&self) -> &[usize] {
        &self.elements
    }

    pub fn elements(&self) -> Vec<GroupElem> {
        self.elements.iter().map(|&i| self.parent.element(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.elements.binary_search(&idx).is_ok()
    }

    pub fn contains(&self, a: &GroupElem) -> bool {
        self.parent.contains(a) && self.contains_index(self.parent.index_of(a))
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_full(&self) -> bool {
        self.elements.len() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.elements.iter().all(|&i| other.contains_index(i))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let elements = self
            .elements
            .iter()
            .copied()
            .filter(|&i| other.contains_index(i))
            .collect();
        Subgroup::from_indices(self.parent.clone(), elements, vec![])
    }

    /// Smallest subgroup containing both (the sumset).
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let g = &self.parent;
        let mut set = BTreeSet::new();
        for &a in &self.elements {
            let ea = g.element(a);
            for &b in &other.elements {
                set.insert(g.index_of(&g.add(&ea, &g.element(b))));
            }
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Subgroup::from_indices(g.clone(), set.into_iter().collect(), gens)
    }

    /// Direct closure check under `+` and `-`.
    pub fn is_closed(&self) -> bool {
        let g = &self.parent;
        self.contains_index(g.index_of(&g.zero()))
            && self.elements.iter().all(|&a| {
                let ea = g.element(a);
                self.contains(&g.neg(&ea))
                    && self
                        .elements
                        .iter()
                        .all(|&b| self.contains(&g.add(&ea, &g.element(b))))
            })
    }

    /// Image of this subgroup under `h` (a subgroup of `h.target()`).
    pub fn map(&self, h: &GroupHom) -> Result<Subgroup> {
        if h.source() != &self.parent {
            return Err(Error::GroupMismatch("subgroup image under foreign hom".into()));
        }
        let t = h.target();
        let elements = self
            .elements
            .iter()
            .map(|&i| t.index_of(&h.map(&self.parent.element(i))))
            .collect();
        Ok(Subgroup::from_indices(t.clone(), elements, vec![]))
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, &i) in self.elements.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.parent.element(i))?;
        }
        write!(f, "}}")
    }
}

/// Closure of `gens` under addition (BFS from zero).
pub fn subgroup_generated(g: &FinAbGroup, gens: &[GroupElem]) -> Result<Subgroup> {
    for x in gens {
        g.check(x)?;
    }
    let mut seen = vec![false; g.order()];
    let zero = g.index_of(&g.zero());
    seen[zero] = true;
    let mut stack = vec![g.zero()];
    let mut elements = vec![zero];
    while let Some(x) = stack.pop() {
        for s in gens {
            let y = g.add(&x, s);
            let iy = g.index_of(&y);
            if !seen[iy] {
                seen[iy] = true;
                elements.push(iy);
                stack.push(y);
            }
        }
    }
    Ok(Subgroup::from_indices(g.clone(), elements, gens.to_vec()))
}

/// Partition of `g` into cosets of `s`, each sorted, ordered by least element.
pub fn cosets(g: &FinAbGroup, s: &Subgroup) -> Result<Vec<Vec<GroupElem>>> {
    if s.parent() != g {
        return Err(Error::GroupMismatch("subgroup of a different group".into()));
    }
    let mut assigned = vec![false; g.order()];
    let mut out = Vec::new();
    for i in 0..g.order() {
        if assigned[i] {
            continue;
        }
        let x = g.element(i);
        let mut coset: Vec<usize> = s
            .indices()
            .iter()
            .map(|&k| g.index_of(&g.add(&x, &g.element(k))))
            .collect();
        coset.sort_unstable();
        for &k in &coset {
            assigned[k] = true;
        }
        out.push(coset.into_iter().map(|k| g.element(k)).collect());
    }
    Ok(out)
}

/// Lexicographically least representative of every coset of `s`.
pub fn transversal(g: &FinAbGroup, s: &Subgroup) -> Result<Vec<GroupElem>> {
    Ok(cosets(g, s)?.into_iter().map(|c| c[0].clone()).collect())
}

/// An abelian group with a chosen automorphism `t`: a Z[t,t^-1]-module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ModuleRepr", into = "ModuleRepr")]
pub struct LaurentModule {
    group: FinAbGroup,
    t: GroupHom,
}

#[derive(Serialize, Deserialize)]
struct ModuleRepr {
    group: FinAbGroup,
    t: Vec<Vec<i64>>,
}

impl TryFrom<ModuleRepr> for LaurentModule {
    type Error = Error;
    fn try_from(r: ModuleRepr) -> Result<Self> {
        let t = GroupHom::new(r.group.clone(), r.group.clone(), r.t)?;
        LaurentModule::new(r.group, t)
    }
}

impl From<LaurentModule> for ModuleRepr {
    fn from(m: LaurentModule) -> Self {
        ModuleRepr {
            t: HomRepr::from(m.t).matrix,
            group: m.group,
        }
    }
}

impl LaurentModule {
    pub fn new(group: FinAbGroup, t: GroupHom) -> Result<Self> {
        if t.source() != &group || t.target() != &group {
            return Err(Error::GroupMismatch("t must be an endomorphism of the group".into()));
        }
        if !t.is_automorphism()? {
            return Err(Error::NotAutomorphism(format!("t = {t}")));
        }
        Ok(LaurentModule { group, t })
    }

    /// Cyclic module `(Z_n, t = k)`.
    pub fn cyclic(n: u64, k: i64) -> Result<Self> {
        let g = FinAbGroup::cyclic(n);
        let t = GroupHom::scalar(&g, k);
        LaurentModule::new(g, t)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn t(&self) -> &GroupHom {
        &self.t
    }

    /// `1 - t`.
    pub fn phi(&self) -> GroupHom {
        GroupHom::identity(&self.group)
            .sub(&self.t)
            .expect("same carrier")
    }

    pub fn is_t_closed(&self, s: &Subgroup) -> bool {
        s.parent() == &self.group
            && s.indices()
                .iter()
                .all(|&i| s.contains(&self.t.map(&self.group.element(i))))
    }

    /// Smallest submodule containing `a`: the subgroup generated by its t-orbit.
    pub fn cyclic_submodule(&self, a: &GroupElem) -> Subgroup {
        let mut orbit = vec![a.clone()];
        let mut x = self.t.map(a);
        while &x != a {
            orbit.push(x.clone());
            x = self.t.map(&x);
        }
        subgroup_generated(&self.group, &orbit).expect("orbit lies in the group")
    }

    /// Every t-closed subgroup, sorted by size then elements. The cyclic
    /// submodules are computed first, then closed under joins.
    pub fn submodules(&self, cap: usize) -> Result<Vec<Subgroup>> {
        if self.group.order() > cap {
            return Err(Error::CapExceeded {
                what: "submodule scan group order",
                cap,
            });
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut all: Vec<Subgroup> = Vec::new();
        for a in self.group.elements() {
            let s = self.cyclic_submodule(&a);
            if seen.insert(s.indices().to_vec()) {
                all.push(s);
            }
        }
        let cyclic_count = all.len();
        let mut k = 0;
        while k < all.len() {
            for c in 0..cyclic_count {
                let j = all[k].join(&all[c]);
                if seen.insert(j.indices().to_vec()) {
                    all.push(j);
                }
            }
            k += 1;
        }
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.indices().cmp(b.indices())));
        Ok(all)
    }

    /// Nonzero submodules containing no smaller nonzero submodule.
    pub fn minimal_submodules(&self, cap: usize) -> Result<Vec<Subgroup>> {
        let subs = self.submodules(cap)?;
        let nonzero: Vec<&Subgroup> = subs.iter().filter(|s| !s.is_trivial()).collect();
        Ok(nonzero
            .iter()
            .filter(|s| {
                !nonzero
                    .iter()
                    .any(|o| o.len() < s.len() && o.is_subset_of(s))
            })
            .map(|s| (*s).clone())
            .collect())
    }

    /// Subdirectly irreducible iff there is exactly one minimal nonzero submodule.
    pub fn is_si(&self, cap: usize) -> Result<bool> {
        Ok(self.minimal_submodules(cap)?.len() == 1)
    }

    /// Join of all minimal submodules (the unique one when SI).
    pub fn socle(&self, cap: usize) -> Result<Subgroup> {
        Ok(self
            .minimal_submodules(cap)?
            .iter()
            .fold(Subgroup::trivial(&self.group), |acc, s| acc.join(s)))
    }
}

/// A finite abelian group recovered from an addition table on `0..n`:
/// the cyclic presentation plus the coordinates of every abstract element.
#[derive(Clone, Debug)]
pub struct Identified {
    pub group: FinAbGroup,
    /// `coords[x]` = index in `group` of abstract element `x`.
    pub to_group: Vec<usize>,
    /// Inverse of `to_group`.
    pub from_group: Vec<usize>,
}

/// Finds a product-of-cyclic presentation of the abelian group given by
/// `add` (row-major `n x n` table) with identity `zero`. Generators are chosen
/// greedily by largest order with backtracking, so the orders come out
/// non-increasing.
pub fn identify_abelian(add: &[usize], n: usize, zero: usize) -> Result<Identified> {
    if add.len() != n * n || zero >= n {
        return Err(Error::InvalidGroup("malformed addition table".into()));
    }
    let order_of = |x: usize| -> usize {
        let mut k = 1;
        let mut y = x;
        while y != zero {
            y = add[y * n + x];
            k += 1;
            if k > n {
                return 0;
            }
        }
        k
    };
    let orders: Vec<usize> = (0..n).map(order_of).collect();
    if orders.contains(&0) {
        return Err(Error::InvalidGroup("element of infinite order in table".into()));
    }
    let mut candidates: Vec<usize> = (0..n).collect();
    candidates.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));

    fn rec(
        add: &[usize],
        n: usize,
        zero: usize,
        orders: &[usize],
        candidates: &[usize],
        span: Vec<usize>,
        gens: &mut Vec<usize>,
    ) -> bool {
        if span.len() == n {
            return true;
        }
        let mut in_span = vec![false; n];
        for &s in &span {
            in_span[s] = true;
        }
        for &g in candidates {
            if in_span[g] {
                continue;
            }
            let k = orders[g];
            // multiples of g must avoid the span except for 0
            let mut mult = g;
            let mut clash = false;
            for _ in 1..k {
                if in_span[mult] {
                    clash = true;
                    break;
                }
                mult = add[mult * n + g];
            }
            if clash || !n.is_multiple_of(span.len() * k) {
                continue;
            }
            let mut next = Vec::with_capacity(span.len() * k);
            let mut mult = zero;
            for _ in 0..k {
                for &s in &span {
                    next.push(add[s * n + mult]);
                }
                mult = add[mult * n + g];
            }
            gens.push(g);
            if rec(add, n, zero, orders, candidates, next, gens) {
                return true;
            }
            gens.pop();
        }
        false
    }

    let mut gens = Vec::new();
    if !rec(add, n, zero, &orders, &candidates, vec![zero], &mut gens) {
        return Err(Error::InvalidGroup("table is not an abelian group".into()));
    }
    let group = FinAbGroup::new(gens.iter().map(|&g| orders[g] as u64).collect())?;
    let mut from_group = vec![usize::MAX; n];
    let mut to_group = vec![usize::MAX; n];
    for (gi, coords) in group.elements().enumerate() {
        let mut x = zero;
        for (c, &g) in coords.0.iter().zip(&gens) {
            for _ in 0..*c {
                x = add[x * n + g];
            }
        }
        from_group[gi] = x;
        to_group[x] = gi;
    }
    if to_group.contains(&usize::MAX) {
        return Err(Error::InvalidGroup("generators do not give a direct product".into()));
    }
    Ok(Identified {
        group,
        to_group,
        from_group,
    })
}

/// Abstract copy of a subgroup together with its inclusion map.
pub fn subgroup_as_group(s: &Subgroup) -> Result<(FinAbGroup, GroupHom)> {
    let g = s.parent();
    let idx = s.indices();
    let n = idx.len();
    let pos: std::collections::HashMap<usize, usize> =
        idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut add = vec![0; n * n];
    for (a, &ia) in idx.iter().enumerate() {
        let ea = g.element(ia);
        for (b, &ib) in idx.iter().enumerate() {
            add[a * n + b] = pos[&g.index_of(&g.add(&ea, &g.element(ib)))];
        }
    }
    let zero = pos[&g.index_of(&g.zero())];
    let ident = identify_abelian(&add, n, zero)?;
    let abs = ident.group.clone();
    let images: Vec<GroupElem> = (0..abs.rank())
        .map(|c| {
            let local = ident.from_group[abs.index_of(&abs.generator(c))];
            g.element(idx[local])
        })
        .collect();
    let incl = GroupHom::from_images(abs.clone(), g.clone(), &images)?;
    Ok((abs, incl))
}
