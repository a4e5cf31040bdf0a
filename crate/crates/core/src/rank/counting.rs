//! Element counts for wreath products `Q ≀ Z_p` and the fixed-point-free
//! sequence of the Sylow `p`-subgroups of `S_{p^n}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constructions::{iterated_cyclic_wreath, MonomialBackend};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::presentations::cyclic_of_order;

/// Number of elements of order exactly `p`.
pub fn count_order_p(g: &Group, p: u32) -> usize {
    g.element_orders().iter().filter(|&&o| o == p).count()
}

/// Number of elements of order `p` in the coset `x P`.
///
/// Requires `P` normal in `g`, `x ∉ P` and `x^p ∈ P`; for monomial groups
/// `P` must also be the block-diagonal subgroup and `x` must permute the
/// blocks in a single `p`-cycle.
pub fn count_order_p_in_coset(g: &Group, base: &Subgroup, x: u32, p: u32) -> Result<usize> {
    if !g.is_normal(base) || base.contains(x) {
        return Err(Error::PreconditionFailed(
            "coset count needs a normal subgroup and an element outside it".into(),
        ));
    }
    let mut xp = 0;
    for _ in 0..p {
        xp = g.mul(xp, x);
    }
    if !base.contains(xp) {
        return Err(Error::PreconditionFailed("x^p lies outside the subgroup".into()));
    }
    if let Some(m) = g.backend().as_any().downcast_ref::<MonomialBackend>() {
        let perm = m.perm(g.element(x).words()).to_vec();
        if m.blocks() != p as usize || !is_single_cycle(&perm) {
            return Err(Error::PreconditionFailed(
                "x must cycle all blocks of the wreath product".into(),
            ));
        }
        if base.members().iter().any(|&b| {
            let pb = m.perm(g.element(b).words());
            pb.iter().enumerate().any(|(i, &j)| i as u32 != j)
        }) {
            return Err(Error::PreconditionFailed(
                "subgroup is not the block-diagonal base".into(),
            ));
        }
    }
    Ok(base
        .members()
        .iter()
        .filter(|&&b| g.element_order(g.mul(x, b)) == p)
        .count())
}

fn is_single_cycle(perm: &[u32]) -> bool {
    let mut j = 0usize;
    for step in 1..=perm.len() {
        j = perm[j] as usize;
        if j == 0 {
            return step == perm.len();
        }
    }
    false
}

/// Block-diagonal subgroup of a monomial group.
pub fn base_subgroup(g: &Group) -> Result<Subgroup> {
    let m = g
        .backend()
        .as_any()
        .downcast_ref::<MonomialBackend>()
        .ok_or_else(|| Error::PreconditionFailed("not a monomial group".into()))?;
    let members: Vec<u32> = (0..g.order() as u32)
        .filter(|&x| {
            m.perm(g.element(x).words())
                .iter()
                .enumerate()
                .all(|(i, &j)| i as u32 == j)
        })
        .collect();
    Ok(g.subgroup_from_members(&members))
}

/// `(d(Q) + 1)^p − 1 + (p − 1)|Q|^{p−1}`: elements of order `p` in `Q ≀ Z_p`
/// given `d(Q)` elements of order `p` in `Q`.
pub fn predicted_wreath_count(d_q: u128, q_order: u128, p: u32) -> u128 {
    (d_q + 1).pow(p) - 1 + (p as u128 - 1) * q_order.pow(p - 1)
}

/// Row of the level table printed by `counts --base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WreathCountRow {
    pub level: u32,
    pub order: usize,
    pub count: usize,
    pub predicted: Option<u128>,
    pub coset_count: Option<usize>,
    pub ok: bool,
}

/// Counts involutions in `w_k(Q)` for `k = 0..=levels`, checking each step
/// against [`predicted_wreath_count`] and the swap-coset count `|w_{k-1}|`.
pub fn wreath_count_table(q: &Arc<Group>, levels: u32, cap: usize) -> Result<Vec<WreathCountRow>> {
    let mut rows = Vec::new();
    let mut prev = q.clone();
    rows.push(WreathCountRow {
        level: 0,
        order: q.order(),
        count: count_order_p(q, 2),
        predicted: None,
        coset_count: None,
        ok: true,
    });
    for level in 1..=levels {
        let w = Arc::new(crate::constructions::wreath_z2(&prev, cap)?);
        let count = count_order_p(&w, 2);
        let predicted = predicted_wreath_count(count_order_p(&prev, 2) as u128, prev.order() as u128, 2);
        let base = base_subgroup(&w)?;
        let swap = *w.generators().last().expect("swap generator");
        let coset = count_order_p_in_coset(&w, &base, swap, 2)?;
        rows.push(WreathCountRow {
            level,
            order: w.order(),
            count,
            predicted: Some(predicted),
            coset_count: Some(coset),
            ok: count as u128 == predicted && coset == prev.order(),
        });
        prev = w;
    }
    Ok(rows)
}

/// Row of the fixed-point-free sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointFreeRow {
    pub level: u32,
    pub v: u128,
    /// `v_{n-1}^p + (p−1)|P_{n-1}|^{p−1}` for `n ≥ 2`.
    pub recursion: Option<u128>,
    pub ok: bool,
}

/// `v_1, …, v_n`: elements of order `p` in a Sylow `p`-subgroup of
/// `S_{p^k}` that move every one of the `p^k` points.
///
/// The Sylow subgroup is `Z_p` labels over `p^{k-1}` blocks permuted by the
/// Sylow subgroup of `S_{p^{k-1}}`; `(π, a)` sends point `(j, i)` to
/// `(π(j), i + a_j)`, so it is fixed-point-free iff every `j` has
/// `π(j) ≠ j` or `a_j ≠ 0`.
pub fn count_fixed_point_free(p: u32, n: u32, cap: usize) -> Result<Vec<FixedPointFreeRow>> {
    if p < 2 || !(2..=p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
        return Err(Error::BadParameter(format!("p must be prime, got {p}")));
    }
    if n == 0 {
        return Err(Error::BadParameter("levels start at 1".into()));
    }
    let zp = Arc::new(cyclic_of_order(p)?);
    let mut rows: Vec<FixedPointFreeRow> = Vec::new();
    let mut prev_order: Option<u128> = None;
    for level in 1..=n {
        let g = iterated_cyclic_wreath(&zp, p as usize, level - 1, cap)?;
        let m = g
            .backend()
            .as_any()
            .downcast_ref::<MonomialBackend>()
            .expect("monomial");
        let v = (0..g.order() as u32)
            .filter(|&x| g.element_order(x) == p)
            .filter(|&x| {
                let w = g.element(x).words();
                m.perm(w)
                    .iter()
                    .zip(m.labels(w))
                    .enumerate()
                    .all(|(j, (&pj, &a))| pj as usize != j || a != 0)
            })
            .count() as u128;
        let recursion = match (rows.last(), prev_order) {
            (Some(r), Some(ord)) => Some(r.v.pow(p) + (p as u128 - 1) * ord.pow(p - 1)),
            _ => None,
        };
        rows.push(FixedPointFreeRow {
            level,
            v,
            recursion,
            ok: recursion.map_or(true, |r| r == v),
        });
        prev_order = Some(g.order() as u128);
    }
    Ok(rows)
}
