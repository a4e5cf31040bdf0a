use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::group::{FastMul, Group};
use std::sync::Arc;

/// Largest vertex count for which the dense product table is built.
pub const DENSE_PRODUCT_LIMIT: usize = 4096;

const NONE: u32 = u32::MAX;

/// Commuting graph on the involutions of a group.
///
/// Vertices are ordered by descending degree (ties by group index), which
/// is the branching order of the rank search.
#[derive(Debug)]
pub struct InvolutionGraph {
    group: Arc<Group>,
    vertices: Vec<u32>,
    vertex_of: Vec<u32>,
    adjacency: Vec<FixedBitSet>,
    /// `product[i * n + j]` is the vertex of `x_i x_j` for adjacent `i, j`.
    product: Option<Vec<u16>>,
}

impl InvolutionGraph {
    pub fn new(group: Arc<Group>) -> Self {
        let mul = FastMul::new(group.clone());
        let invs: Vec<u32> = (1..group.order() as u32)
            .filter(|&x| group.is_involution(x))
            .collect();
        let n = invs.len();
        let rows: Vec<FixedBitSet> = invs
            .par_iter()
            .map(|&a| {
                let mut row = FixedBitSet::with_capacity(n);
                for (j, &b) in invs.iter().enumerate() {
                    if a != b && mul.mul(a, b) == mul.mul(b, a) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(rows[i].count_ones(..)), invs[i]));
        let vertices: Vec<u32> = order.iter().map(|&i| invs[i]).collect();
        let mut vertex_of = vec![NONE; group.order()];
        for (v, &x) in vertices.iter().enumerate() {
            vertex_of[x as usize] = v as u32;
        }
        let mut rank_of = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            rank_of[old] = new;
        }
        let adjacency: Vec<FixedBitSet> = order
            .iter()
            .map(|&old| {
                let mut row = FixedBitSet::with_capacity(n);
                for j in rows[old].ones() {
                    row.insert(rank_of[j]);
                }
                row
            })
            .collect();
        let product = (n <= DENSE_PRODUCT_LIMIT).then(|| {
            let mut table = vec![u16::MAX; n * n];
            table.par_chunks_mut(n.max(1)).enumerate().for_each(|(i, row)| {
                for j in adjacency[i].ones() {
                    row[j] = vertex_of[mul.mul(vertices[i], vertices[j]) as usize] as u16;
                }
            });
            table
        });
        InvolutionGraph {
            group,
            vertices,
            vertex_of,
            adjacency,
            product,
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Group index of vertex `v`.
    pub fn element(&self, v: u32) -> u32 {
        self.vertices[v as usize]
    }

    pub fn vertex(&self, x: u32) -> Option<u32> {
        let v = self.vertex_of[x as usize];
        (v != NONE).then_some(v)
    }

    pub fn neighbours(&self, v: u32) -> &FixedBitSet {
        &self.adjacency[v as usize]
    }

    pub fn adjacent(&self, a: u32, b: u32) -> bool {
        self.adjacency[a as usize].contains(b as usize)
    }

    /// Vertex of `x_a x_b` for adjacent `a`, `b`.
    #[inline]
    pub fn product(&self, a: u32, b: u32) -> u32 {
        match &self.product {
            Some(t) => t[a as usize * self.vertices.len() + b as usize] as u32,
            None => self.vertex_of[self.group.mul(self.element(a), self.element(b)) as usize],
        }
    }
}
