//! Normal 2-rank by search over conjugacy classes of involutions.
//!
//! A normal elementary abelian subgroup is `{1}` plus a union of classes,
//! so classes are the atoms. A class is admissible only if its elements
//! commute pairwise. Including a class closes the current subgroup under
//! products; if the closure swallows an excluded class the branch is
//! already covered by the sibling that excluded it.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::group::Group;

#[derive(Clone, Debug, Default)]
pub struct NormalOutcome {
    pub dimension: u32,
    /// Sorted group indices of the witness subgroup, identity included.
    pub members: Vec<u32>,
    pub nodes: u64,
    pub classes: usize,
}

struct ClassData {
    members: Vec<Vec<u32>>,
    class_of: Vec<u32>,
}

const NO_CLASS: u32 = u32::MAX;

fn floor_log2(x: usize) -> u32 {
    usize::BITS - 1 - x.leading_zeros()
}

struct Searcher<'a> {
    g: &'a Group,
    classes: &'a ClassData,
    /// Classes that may never be part of the subgroup.
    barred: &'a FixedBitSet,
    best: u32,
    best_members: Option<Vec<u32>>,
    nodes: u64,
}

impl Searcher<'_> {
    /// Adds a class to the subgroup `members` (with membership `mask`),
    /// returning `None` if the closure meets an excluded class.
    fn close(&self, members: &[u32], mask: &FixedBitSet, class: usize, excluded: &FixedBitSet) -> Option<(Vec<u32>, FixedBitSet)> {
        let mut members = members.to_vec();
        let mut mask = mask.clone();
        for &x in &self.classes.members[class] {
            if mask.contains(x as usize) {
                continue;
            }
            let coset: Vec<u32> = members.iter().map(|&e| self.g.mul(x, e)).collect();
            for y in coset {
                let c = self.classes.class_of[y as usize];
                if c == NO_CLASS || excluded.contains(c as usize) || self.barred.contains(c as usize) {
                    return None;
                }
                mask.insert(y as usize);
                members.push(y);
            }
        }
        Some((members, mask))
    }

    /// Classes outside the subgroup whose representative centralizes it;
    /// by normality the whole class then does.
    fn candidates(&self, members: &[u32], mask: &FixedBitSet, excluded: &FixedBitSet) -> Vec<usize> {
        (0..self.classes.members.len())
            .filter(|&c| {
                let rep = self.classes.members[c][0];
                !excluded.contains(c)
                    && !self.barred.contains(c)
                    && !mask.contains(rep as usize)
                    && members.iter().all(|&b| self.g.commute(rep, b))
            })
            .collect()
    }

    fn search(&mut self, members: Vec<u32>, mask: FixedBitSet, mut excluded: FixedBitSet) {
        self.nodes += 1;
        let dim = floor_log2(members.len());
        if dim > self.best {
            self.best = dim;
            self.best_members = Some(members.clone());
        }
        let mut cand = self.candidates(&members, &mask, &excluded);
        while !cand.is_empty() {
            let mass: usize = cand.iter().map(|&c| self.classes.members[c].len()).sum();
            if floor_log2(members.len() + mass) <= self.best {
                return;
            }
            let c = cand.remove(0);
            if let Some((m2, mask2)) = self.close(&members, &mask, c, &excluded) {
                self.search(m2, mask2, excluded.clone());
            }
            excluded.insert(c);
        }
    }
}

/// Involution classes, ordered by size then smallest member; classes whose
/// members do not commute pairwise are dropped.
fn admissible_classes(g: &Group) -> ClassData {
    let invs: Vec<u32> = (1..g.order() as u32).filter(|&x| g.is_involution(x)).collect();
    let mut classes: Vec<Vec<u32>> = g
        .classes_of(invs)
        .into_iter()
        .filter(|c| c.iter().all(|&a| c.iter().all(|&b| g.commute(a, b))))
        .collect();
    classes.sort_by_key(|c| (c.len(), c[0]));
    let mut class_of = vec![NO_CLASS; g.order()];
    for (i, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x as usize] = i as u32;
        }
    }
    ClassData {
        members: classes,
        class_of,
    }
}

/// Largest normal elementary abelian subgroup, optionally restricted to
/// subgroups whose elements all satisfy `allowed`.
pub fn max_normal_elementary_abelian<F>(g: &Group, allowed: F, parallel: bool) -> NormalOutcome
where
    F: Fn(u32) -> bool + Sync,
{
    let classes = admissible_classes(g);
    let k = classes.members.len();
    let mut barred = FixedBitSet::with_capacity(k);
    for (i, c) in classes.members.iter().enumerate() {
        if !c.iter().all(|&x| allowed(x)) {
            barred.insert(i);
        }
    }
    let mut root_mask = FixedBitSet::with_capacity(g.order());
    root_mask.insert(0);
    let run = |i: usize| {
        let mut s = Searcher {
            g,
            classes: &classes,
            barred: &barred,
            best: 0,
            best_members: None,
            nodes: 0,
        };
        if !barred.contains(i) {
            let mut excluded = FixedBitSet::with_capacity(k);
            excluded.insert_range(..i);
            if let Some((m, mask)) = s.close(&[0], &root_mask, i, &excluded) {
                s.search(m, mask, excluded);
            }
        }
        (s.best, s.best_members, s.nodes)
    };
    let outcomes: Vec<_> = if parallel {
        (0..k).into_par_iter().map(run).collect()
    } else {
        (0..k).map(run).collect()
    };
    let nodes = 1 + outcomes.iter().map(|o| o.2).sum::<u64>();
    let mut best = NormalOutcome {
        dimension: 0,
        members: vec![0],
        nodes,
        classes: k,
    };
    for (dim, members, _) in outcomes {
        if let Some(mut m) = members {
            if dim > best.dimension {
                m.sort_unstable();
                best.dimension = dim;
                best.members = m;
            }
        }
    }
    best
}
