//! Permutations of `0..n` and naive materialised permutation-group closures.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Default element cap for materialised group closures.
pub const DEFAULT_GROUP_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Checks bijectivity.
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::Format(format!("not a permutation: {images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub(crate) fn from_vec_unchecked(images: Vec<u32>) -> Self {
        Permutation(images)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Permutation) -> Permutation {
        self.compose(other).compose(&self.inverse())
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b).compose(&a.inverse()).compose(&b.inverse())
    }

    /// Sorted cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A permutation group given by generators, optionally materialised.
#[derive(Clone, Debug)]
pub struct PermGroupClosure {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    capped: bool,
}

impl PermGroupClosure {
    /// BFS closure of `generators` (right multiplication by generators). Stops
    /// with `capped = true` once more than `cap` elements are found.
    pub fn generate(degree: usize, generators: Vec<Permutation>, cap: usize) -> Self {
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        let mut capped = false;
        'outer: while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    if elements.len() >= cap {
                        capped = true;
                        break 'outer;
                    }
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        PermGroupClosure {
            degree,
            generators,
            elements,
            capped,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Materialised elements; incomplete when [`Self::is_capped`].
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn is_capped(&self) -> bool {
        self.capped
    }

    pub fn order(&self) -> Option<usize> {
        (!self.capped).then_some(self.elements.len())
    }

    pub fn is_trivial(&self) -> bool {
        !self.capped && self.elements.len() == 1
    }

    pub fn is_commutative(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// Smallest normal subgroup of `self` containing `gens`.
    fn normal_closure(&self, gens: Vec<Permutation>, cap: usize) -> Result<PermGroupClosure> {
        let mut gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        gens.sort();
        gens.dedup();
        loop {
            let h = PermGroupClosure::generate(self.degree, gens.clone(), cap);
            if h.capped {
                return Err(Error::CapExceeded {
                    what: "permutation group closure",
                    cap,
                });
            }
            let members: HashSet<&Permutation> = h.elements.iter().collect();
            let mut extra = Vec::new();
            for s in &self.generators {
                for g in &gens {
                    let c = s.conjugate(g);
                    if !members.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return Ok(h);
            }
            gens.extend(extra);
            gens.sort();
            gens.dedup();
        }
    }

    /// `[self, other]` for `other` normal in `self`, as the normal closure of
    /// commutators of generators.
    pub fn commutator_with(&self, other: &PermGroupClosure, cap: usize) -> Result<PermGroupClosure> {
        let mut gens = Vec::new();
        for x in &other.generators {
            for s in &self.generators {
                gens.push(Permutation::commutator(x, s));
            }
        }
        self.normal_closure(gens, cap)
    }

    /// Nilpotency class via the lower central series: 0 for the trivial group,
    /// `None` if the series stabilises at a nontrivial subgroup.
    pub fn nilpotency_class(&self, cap: usize) -> Result<Option<usize>> {
        if self.capped {
            return Err(Error::CapExceeded {
                what: "permutation group closure",
                cap,
            });
        }
        let mut term = self.clone();
        let mut class = 0;
        while !term.is_trivial() {
            let next = self.commutator_with(&term, cap)?;
            if next.elements.len() == term.elements.len() {
                return Ok(None);
            }
            term = next;
            class += 1;
        }
        Ok(Some(class))
    }
}
