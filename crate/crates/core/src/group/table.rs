use std::sync::Arc;

use crate::group::Group;

/// Largest order for which a full multiplication table is materialized.
pub const TABLE_LIMIT: usize = 2048;

/// Index-level multiplication for a small enumerated group: a direct
/// Cayley table when the group is tiny, hashed lookups otherwise.
#[derive(Debug, Clone)]
pub struct FastMul {
    group: Arc<Group>,
    table: Option<Arc<Vec<u32>>>,
}

impl FastMul {
    pub fn new(group: Arc<Group>) -> Self {
        let n = group.order();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            let mut buf = Vec::new();
            for a in 0..n as u32 {
                for b in 0..n as u32 {
                    t.push(group.mul_with(a, b, &mut buf));
                }
            }
            Arc::new(t)
        });
        group.inverses();
        FastMul { group, table }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.group.order() + b as usize],
            None => self.group.mul(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.group.inv(a)
    }
}
