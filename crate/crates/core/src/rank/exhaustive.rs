//! Brute-force enumeration of every elementary abelian subgroup, level by
//! level. It shares nothing with the search kernels beyond `Group::mul`
//! and serves as their oracle.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};

/// Default order limit for [`all_elementary_abelian`].
pub const EXHAUSTIVE_CAP: usize = 1 << 12;

/// Every elementary abelian subgroup, grouped by dimension
/// (`levels[d]` holds the subgroups of order `2^d` as sorted member lists).
pub fn all_elementary_abelian(g: &Group, cap: usize) -> Result<Vec<Vec<Vec<u32>>>> {
    if g.order() > cap {
        return Err(Error::CapExceeded { cap });
    }
    let n = g.order() as u32;
    let invs: Vec<u32> = (1..n).filter(|&x| g.mul(x, x) == 0).collect();
    let mut levels: Vec<Vec<Vec<u32>>> = vec![vec![vec![0]]];
    loop {
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut next = Vec::new();
        for e in levels.last().unwrap() {
            let mut mask = FixedBitSet::with_capacity(n as usize);
            for &x in e {
                mask.insert(x as usize);
            }
            for &y in &invs {
                if mask.contains(y as usize) || !e.iter().all(|&x| g.mul(x, y) == g.mul(y, x)) {
                    continue;
                }
                let mut m = mask.clone();
                let mut members = e.clone();
                for &x in e {
                    let p = g.mul(x, y);
                    m.insert(p as usize);
                    members.push(p);
                }
                if seen.insert(m) {
                    members.sort_unstable();
                    next.push(members);
                }
            }
        }
        if next.is_empty() {
            return Ok(levels);
        }
        next.sort();
        levels.push(next);
    }
}

fn is_normal_set(g: &Group, members: &[u32]) -> bool {
    let mut mask = FixedBitSet::with_capacity(g.order());
    for &x in members {
        mask.insert(x as usize);
    }
    g.generators()
        .iter()
        .all(|&s| members.iter().all(|&x| mask.contains(g.conjugate(s, x) as usize)))
}

/// `(r_2, nr_2)` by full enumeration.
pub fn exhaustive_ranks(g: &Group, cap: usize) -> Result<(u32, u32)> {
    let levels = all_elementary_abelian(g, cap)?;
    let rank = levels.len() as u32 - 1;
    let nrank = (0..levels.len())
        .rev()
        .find(|&d| levels[d].iter().any(|e| is_normal_set(g, e)))
        .unwrap_or(0) as u32;
    Ok((rank, nrank))
}

/// Elementary abelian subgroups maximal under inclusion.
pub fn all_maximal_elem_abelian(g: &Group, cap: usize) -> Result<Vec<Subgroup>> {
    let levels = all_elementary_abelian(g, cap)?;
    let invs: Vec<u32> = (1..g.order() as u32).filter(|&x| g.is_involution(x)).collect();
    let mut out = Vec::new();
    for level in &levels {
        for e in level {
            let extendable = invs
                .iter()
                .any(|&y| e.binary_search(&y).is_err() && e.iter().all(|&x| g.commute(x, y)));
            if !extendable {
                out.push(g.subgroup_from_members(e));
            }
        }
    }
    Ok(out)
}

/// Normal elementary abelian subgroups, as member lists.
pub fn all_normal_elem_abelian(g: &Group, cap: usize) -> Result<Vec<Vec<u32>>> {
    Ok(all_elementary_abelian(g, cap)?
        .into_iter()
        .flatten()
        .filter(|e| is_normal_set(g, e))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;
    use crate::presentations::{build_base, BaseGroupSpec, BaseKind};

    fn base(kind: BaseKind, t: u32) -> Group {
        build_base(BaseGroupSpec::new(kind, t)).unwrap()
    }

    #[test]
    fn maximal_subgroups_of_small_groups() {
        let d8 = base(BaseKind::Dihedral, 3);
        let max = all_maximal_elem_abelian(&d8, DEFAULT_CAP).unwrap();
        assert_eq!(max.len(), 2);
        assert!(max.iter().all(|m| m.order() == 4));

        let q8 = base(BaseKind::Quaternion, 2);
        let max = all_maximal_elem_abelian(&q8, DEFAULT_CAP).unwrap();
        assert_eq!(max.len(), 1);
        assert_eq!(max[0], q8.center());

        let e8 = base(BaseKind::ElemAbelian, 3);
        let max = all_maximal_elem_abelian(&e8, DEFAULT_CAP).unwrap();
        assert_eq!(max.len(), 1);
        assert_eq!(max[0].order(), 8);
    }

    #[test]
    fn subspace_counts_of_e8() {
        // Gaussian binomials: 1, 7, 7, 1
        let e8 = base(BaseKind::ElemAbelian, 3);
        let levels = all_elementary_abelian(&e8, DEFAULT_CAP).unwrap();
        let counts: Vec<usize> = levels.iter().map(|l| l.len()).collect();
        assert_eq!(counts, vec![1, 7, 7, 1]);
    }

    #[test]
    fn cap_applies() {
        let g = base(BaseKind::Dihedral, 5);
        assert_eq!(
            exhaustive_ranks(&g, 16).unwrap_err(),
            Error::CapExceeded { cap: 16 }
        );
        assert_eq!(exhaustive_ranks(&g, DEFAULT_CAP).unwrap(), (2, 1));
    }
}
