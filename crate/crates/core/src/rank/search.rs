//! Branch and bound for the largest elementary abelian subgroup.
//!
//! A node holds an elementary abelian subgroup `E` (as the vertex list of
//! its involutions), the candidate set `C` of involutions outside `E` that
//! commute with all of `E` and are not yet ruled out, and the excluded
//! involutions `F`. Including `y` doubles `E` to `E ∪ yE`; excluding `y`
//! removes the coset `yE` from `C`. Once `y` is excluded, every later
//! inclusion of `y'` also removes `f y' E` for the excluded `f`, since any
//! subgroup containing `E`, `y'` and one of those would contain `f`.
//!
//! The final subgroup minus `E` lies inside `C`, so `2^d* ≤ |E| + |C|`.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::rank::graph::InvolutionGraph;

/// Outcome of one search: dimension, the involutions of a witness
/// subgroup (vertex ids, identity omitted), and the node count.
#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub dimension: u32,
    pub members: Vec<u32>,
    pub nodes: u64,
}

fn floor_log2(x: usize) -> u32 {
    usize::BITS - 1 - x.leading_zeros()
}

/// `d + ⌊log2(1 + c / 2^d)⌋`.
fn bound(dim: u32, cand: usize) -> u32 {
    floor_log2((1usize << dim) + cand)
}

struct Searcher<'a> {
    graph: &'a InvolutionGraph,
    best: u32,
    best_members: Option<Vec<u32>>,
    nodes: u64,
}

impl Searcher<'_> {
    fn include(&self, members: &[u32], y: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(2 * members.len() + 1);
        out.extend_from_slice(members);
        out.push(y);
        out.extend(members.iter().map(|&e| self.graph.product(y, e)));
        out
    }

    /// Node with `E` given by `members`; `cand` and `excl` as described in
    /// the module docs.
    fn search(&mut self, members: Vec<u32>, dim: u32, mut cand: FixedBitSet, mut excl: Vec<u32>) {
        self.nodes += 1;
        if dim > self.best {
            self.best = dim;
            self.best_members = Some(members.clone());
        }
        loop {
            let c = cand.count_ones(..);
            if c == 0 || bound(dim, c) <= self.best {
                return;
            }
            let y = cand.ones().next().unwrap() as u32;
            let next = self.include(&members, y);
            let mut child = cand.clone();
            child.intersect_with(self.graph.neighbours(y));
            for &x in &next {
                child.set(x as usize, false);
            }
            let child_excl: Vec<u32> = excl
                .iter()
                .copied()
                .filter(|&f| self.graph.adjacent(f, y))
                .collect();
            for &f in &child_excl {
                let fy = self.graph.product(f, y);
                child.set(fy as usize, false);
                for &e in &members {
                    child.set(self.graph.product(fy, e) as usize, false);
                }
            }
            self.search(next, dim + 1, child, child_excl);

            cand.set(y as usize, false);
            for &e in &members {
                cand.set(self.graph.product(y, e) as usize, false);
            }
            excl.push(y);
        }
    }
}

/// Extends greedily from vertex `start`, always taking the first candidate.
fn greedy_from(graph: &InvolutionGraph, start: u32) -> Vec<u32> {
    let mut members = vec![start];
    let mut cand = graph.neighbours(start).clone();
    while let Some(y) = cand.ones().next() {
        let y = y as u32;
        let mut next = members.clone();
        next.push(y);
        next.extend(members.iter().map(|&e| graph.product(y, e)));
        cand.intersect_with(graph.neighbours(y));
        for &x in &next {
            cand.set(x as usize, false);
        }
        members = next;
    }
    members
}

/// Deterministic lower bound: best greedy extension over the first few
/// vertices.
fn greedy(graph: &InvolutionGraph) -> Vec<u32> {
    (0..graph.len().min(32) as u32)
        .map(|v| greedy_from(graph, v))
        .fold(Vec::new(), |best, m| if m.len() > best.len() { m } else { best })
}

/// Top-level branch `i`: include vertex `i` with vertices `0..i` excluded.
fn branch(graph: &InvolutionGraph, i: u32, seed: u32) -> SearchOutcome {
    let mut cand = graph.neighbours(i).clone();
    cand.set_range(..i as usize, false);
    let excl: Vec<u32> = (0..i).filter(|&f| graph.adjacent(f, i)).collect();
    for &f in &excl {
        cand.set(graph.product(f, i) as usize, false);
    }
    let mut s = Searcher {
        graph,
        best: seed,
        best_members: None,
        nodes: 0,
    };
    if bound(1, cand.count_ones(..)) > seed {
        s.search(vec![i], 1, cand, excl);
    }
    SearchOutcome {
        dimension: s.best,
        members: s.best_members.unwrap_or_default(),
        nodes: s.nodes,
    }
}

/// Exact 2-rank over the commuting-involution graph. The result does not
/// depend on how many rayon workers run the top-level branches.
pub fn max_elementary_abelian(graph: &InvolutionGraph, parallel: bool) -> SearchOutcome {
    if graph.is_empty() {
        return SearchOutcome {
            dimension: 0,
            members: Vec::new(),
            nodes: 1,
        };
    }
    let seed_members = greedy(graph);
    let seed = floor_log2(seed_members.len() + 1);
    let run = |i: u32| branch(graph, i, seed);
    let outcomes: Vec<SearchOutcome> = if parallel {
        (0..graph.len() as u32).into_par_iter().map(run).collect()
    } else {
        (0..graph.len() as u32).map(run).collect()
    };
    let nodes = 1 + outcomes.iter().map(|o| o.nodes).sum::<u64>();
    // max dimension, lowest branch wins ties
    let winner = outcomes
        .into_iter()
        .filter(|o| o.dimension > seed)
        .fold(None::<SearchOutcome>, |acc, o| match acc {
            Some(a) if a.dimension >= o.dimension => Some(a),
            _ => Some(o),
        });
    match winner {
        Some(o) => SearchOutcome { nodes, ..o },
        None => SearchOutcome {
            dimension: seed,
            members: seed_members,
            nodes,
        },
    }
}
