use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::group::{Backend, Element};

/// Default element cap for closures.
pub const DEFAULT_CAP: usize = 1 << 16;

/// A finite group given by generators, fully enumerated.
///
/// Element `0` is always the identity. Indices are stable for the
/// lifetime of the group and follow breadth-first discovery order, so
/// they are deterministic for a fixed generator list.
#[derive(Clone)]
pub struct Group {
    backend: Arc<dyn Backend>,
    generators: Vec<u32>,
    elements: Vec<Element>,
    index: FxHashMap<Element, u32>,
    inverses: OnceLock<Vec<u32>>,
    orders: OnceLock<Vec<u32>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("backend", &self.backend.kind())
            .field("order", &self.order())
            .field("generators", &self.generators.len())
            .finish()
    }
}

impl Group {
    /// Enumerates the group generated by `generators` by breadth-first
    /// right multiplication. An empty generator list gives the trivial group.
    pub fn closure(
        backend: Arc<dyn Backend>,
        generators: Vec<Element>,
        cap: usize,
    ) -> Result<Group> {
        let width = backend.width();
        if let Some(g) = generators.iter().find(|g| g.width() != width) {
            return Err(Error::BadParameter(format!(
                "generator {g:?} does not match backend width {width}"
            )));
        }
        let identity = backend.identity();
        let mut elements = vec![identity.clone()];
        let mut index = FxHashMap::default();
        index.insert(identity, 0u32);
        let mut buf = Vec::with_capacity(width);
        let mut head = 0;
        while head < elements.len() {
            for g in &generators {
                backend.multiply_into(elements[head].words(), g.words(), &mut buf);
                if !index.contains_key(&buf[..]) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    let e = Element::from_slice(&buf);
                    index.insert(e.clone(), elements.len() as u32);
                    elements.push(e);
                }
            }
            head += 1;
        }
        let generators = generators.iter().map(|g| index[g]).collect();
        Ok(Group {
            backend,
            generators,
            elements,
            index,
            inverses: OnceLock::new(),
            orders: OnceLock::new(),
        })
    }

    pub fn trivial(backend: Arc<dyn Backend>) -> Group {
        Group::closure(backend, Vec::new(), 1).expect("trivial group fits any cap")
    }

    pub fn backend(&self) -> &Arc<dyn Backend> {
        &self.backend
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `log2 |G|` when the order is a power of two.
    pub fn log2_order(&self) -> Option<u32> {
        let n = self.order();
        n.is_power_of_two().then(|| n.trailing_zeros())
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn generator_elements(&self) -> Vec<Element> {
        self.generators
            .iter()
            .map(|&g| self.elements[g as usize].clone())
            .collect()
    }

    pub fn element(&self, i: u32) -> &Element {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn index_of(&self, words: &[u32]) -> Option<u32> {
        self.index.get(words).copied()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index.contains_key(e)
    }

    pub fn format(&self, i: u32) -> String {
        self.backend.format(self.element(i).words())
    }

    pub fn parse(&self, s: &str) -> Result<u32> {
        let e = self.backend.parse(s)?;
        self.index_of(e.words()).ok_or(Error::ContextMismatch)
    }

    /// Checked product of two elements of this group.
    pub fn multiply(&self, g: &Element, h: &Element) -> Result<Element> {
        if !self.contains(g) || !self.contains(h) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.backend.multiply(g.words(), h.words()))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut buf = Vec::with_capacity(self.backend.width());
        self.mul_with(a, b, &mut buf)
    }

    /// Index product reusing a scratch buffer.
    pub fn mul_with(&self, a: u32, b: u32, buf: &mut Vec<u32>) -> u32 {
        self.backend
            .multiply_into(self.element(a).words(), self.element(b).words(), buf);
        match self.index.get(&buf[..]) {
            Some(&i) => i,
            None => panic!("group is not closed under multiplication"),
        }
    }

    pub fn inverses(&self) -> &[u32] {
        self.inverses.get_or_init(|| {
            self.elements
                .iter()
                .map(|e| {
                    let inv = self.backend.inverse(e.words());
                    self.index[&inv]
                })
                .collect()
        })
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverses()[a as usize]
    }

    /// Element orders, indexed like the elements.
    pub fn element_orders(&self) -> &[u32] {
        self.orders.get_or_init(|| {
            let mut buf = Vec::new();
            (0..self.order() as u32)
                .map(|x| {
                    let mut k = 1;
                    let mut p = x;
                    while p != 0 {
                        p = self.mul_with(p, x, &mut buf);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.element_orders()[a as usize]
    }

    pub fn is_involution(&self, a: u32) -> bool {
        a != 0 && self.element_order(a) == 2
    }

    pub fn commute(&self, a: u32, b: u32) -> bool {
        let x = self.backend.multiply(self.element(a).words(), self.element(b).words());
        let y = self.backend.multiply(self.element(b).words(), self.element(a).words());
        x == y
    }

    /// `g x g^-1`.
    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        let gx = self.mul(g, x);
        self.mul(gx, self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.commute(a, b)))
    }

    /// Checks associativity, identity and inverse laws over all elements
    /// (or on generators only for the associativity sweep when the group is large).
    pub fn check_axioms(&self) -> bool {
        let n = self.order() as u32;
        let inv_ok = (0..n).all(|a| self.mul(a, self.inv(a)) == 0 && self.mul(self.inv(a), a) == 0);
        let id_ok = (0..n).all(|a| self.mul(a, 0) == a && self.mul(0, a) == a);
        let probe: Vec<u32> = if n <= 64 {
            (0..n).collect()
        } else {
            self.generators.clone()
        };
        let assoc_ok = probe.iter().all(|&a| {
            probe.iter().all(|&b| {
                (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))
            })
        });
        inv_ok && id_ok && assoc_ok
    }

    /// Subgroup generated by the given elements.
    pub fn subgroup(&self, gens: &[u32]) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order());
        mask.insert(0);
        let mut members = vec![0u32];
        let mut queue = VecDeque::from([0u32]);
        let mut buf = Vec::new();
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul_with(x, g, &mut buf);
                if !mask.put(y as usize) {
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup {
            members,
            mask,
            basis: gens.to_vec(),
        }
    }

    /// Subgroup from a known member set; the basis is an irredundant
    /// generating list picked greedily in index order.
    pub fn subgroup_from_members(&self, members: &[u32]) -> Subgroup {
        let mut basis = Vec::new();
        let mut span = self.subgroup(&[]);
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        for &m in &sorted {
            if !span.contains(m) {
                basis.push(m);
                span = self.subgroup(&basis);
            }
        }
        span
    }

    pub fn whole(&self) -> Subgroup {
        let mut s = self.subgroup(&self.generators);
        s.basis = self.generators.clone();
        s
    }

    pub fn centralizer(&self, x: u32) -> Subgroup {
        let members: Vec<u32> = (0..self.order() as u32)
            .filter(|&g| self.commute(g, x))
            .collect();
        self.subgroup_from_members(&members)
    }

    pub fn center(&self) -> Subgroup {
        let members: Vec<u32> = (0..self.order() as u32)
            .filter(|&g| self.generators.iter().all(|&h| self.commute(g, h)))
            .collect();
        self.subgroup_from_members(&members)
    }

    /// Orbit of `x` under conjugation, sorted.
    pub fn conjugacy_class(&self, x: u32) -> Vec<u32> {
        let mut seen = FixedBitSet::with_capacity(self.order());
        seen.insert(x as usize);
        let mut class = vec![x];
        let mut head = 0;
        while head < class.len() {
            let y = class[head];
            for &g in &self.generators {
                let z = self.conjugate(g, y);
                if !seen.put(z as usize) {
                    class.push(z);
                }
            }
            head += 1;
        }
        class.sort_unstable();
        class
    }

    /// Partition of the elements into conjugacy classes, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        self.classes_of(0..self.order() as u32)
    }

    /// Conjugacy classes meeting `elements` (which should be conjugation-closed).
    pub fn classes_of(&self, elements: impl IntoIterator<Item = u32>) -> Vec<Vec<u32>> {
        let mut done = FixedBitSet::with_capacity(self.order());
        let mut classes = Vec::new();
        for x in elements {
            if done.contains(x as usize) {
                continue;
            }
            let class = self.conjugacy_class(x);
            for &y in &class {
                done.insert(y as usize);
            }
            classes.push(class);
        }
        classes
    }

    /// True iff `gHg^-1 = H` for every generator `g` of the group.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generators.iter().all(|&g| {
            h.basis
                .iter()
                .all(|&x| h.contains(self.conjugate(g, x)))
        })
    }

    /// Standalone copy of a subgroup, sharing this group's backend.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Group {
        let gens = h.basis.iter().map(|&i| self.element(i).clone()).collect();
        Group::closure(self.backend.clone(), gens, h.order())
            .expect("subgroup closure stays within its member count")
    }
}

/// A subgroup of an enumerated parent group, stored by parent indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<u32>,
    mask: FixedBitSet,
    basis: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn contains(&self, x: u32) -> bool {
        self.mask.contains(x as usize)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn dimension(&self) -> Option<u32> {
        let n = self.order();
        n.is_power_of_two().then(|| n.trailing_zeros())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}
