//! Rank bounds and equalities for `S(T,R,J)`, checked against exact search.
//!
//! Hypotheses about `TR` are decided by brute force over its elementary
//! abelian subgroups, so `TR` must be small (it always is for the named
//! actions).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constructions::{build_s, MonomialBackend, TwistParams};
use crate::error::{Error, Result};
use crate::group::{Group, Subgroup};
use crate::rank::exhaustive::{all_elementary_abelian, EXHAUSTIVE_CAP};
use crate::rank::normal::max_normal_elementary_abelian;
use crate::rank::{normal_rank, rank};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    /// Whether the hypotheses hold; a check that does not apply passes.
    pub applies: bool,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistChecks {
    pub n: usize,
    pub r_t: u32,
    pub r_r: u32,
    pub r_tr: u32,
    /// `nr_2` of the largest normal elementary abelian subgroup of `TR`
    /// lying in `T`.
    pub m_t: u32,
    pub r_s: u32,
    pub nr_s: u32,
    pub checks: Vec<CheckOutcome>,
}

impl TwistChecks {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

/// Split elementary abelian subgroups `X = E0 × R0` of `TR` with
/// `E0 = X ∩ T`, `R0 = X ∩ R`, as `(dim E0, dim R0, normal in TR)`.
fn split_subgroups(p: &TwistParams) -> Result<Vec<(u32, u32, bool)>> {
    let tr = p.label_group();
    let in_t = |x: u32| p.r_part(x) == 0;
    let in_r = |x: u32| p.t_part(x) == 0;
    let mut out = Vec::new();
    for (d, level) in all_elementary_abelian(tr, EXHAUSTIVE_CAP)?.iter().enumerate() {
        for e in level {
            let dt = log2(e.iter().filter(|&&x| in_t(x)).count());
            let dr = log2(e.iter().filter(|&&x| in_r(x)).count());
            if dt + dr == d as u32 {
                let normal = tr.is_normal(&tr.subgroup_from_members(e));
                out.push((dt, dr, normal));
            }
        }
    }
    Ok(out)
}

fn log2(n: usize) -> u32 {
    n.trailing_zeros()
}

fn is_elementary_abelian(g: &Group) -> bool {
    g.is_abelian() && (1..g.order() as u32).all(|x| g.is_involution(x))
}

/// Involution classes of `g` whose members commute pairwise; their unions
/// with `1` generate exactly the normal elementary abelian subgroups.
fn admissible_classes(g: &Group) -> Vec<Vec<u32>> {
    let invs: Vec<u32> = (1..g.order() as u32).filter(|&x| g.is_involution(x)).collect();
    g.classes_of(invs)
        .into_iter()
        .filter(|c| c.iter().all(|&a| c.iter().all(|&b| g.commute(a, b))))
        .collect()
}

fn check(name: &str, applies: bool, holds: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        applies,
        holds: !applies || holds,
        detail,
    }
}

/// Builds `S(T,R,J)` over `n` blocks and evaluates every bound and
/// equality whose hypotheses can be decided on `TR`.
pub fn twist_checks(p: &TwistParams, n: usize, cap: usize) -> Result<TwistChecks> {
    let s = Arc::new(build_s(p, n, cap)?);
    twist_checks_on(p, n, &s)
}

pub fn twist_checks_on(p: &TwistParams, n: usize, s: &Arc<Group>) -> Result<TwistChecks> {
    let m = s
        .backend()
        .as_any()
        .downcast_ref::<MonomialBackend>()
        .ok_or_else(|| Error::PreconditionFailed("S(T,R,J) must be monomial".into()))?;
    let tr = p.label_group();
    let t = p.t_group();
    let r_t = rank(t).dimension;
    let r_r = rank(p.r_group()).dimension;
    let r_tr = rank(tr).dimension;
    let t_members: Vec<u32> = (0..tr.order() as u32).filter(|&x| p.r_part(x) == 0).collect();
    let t_sub: Subgroup = tr.subgroup_from_members(&t_members);
    let m_t = max_normal_elementary_abelian(tr, |x| t_sub.contains(x), true).dimension;
    let r_s = rank(s).dimension;
    let nr_s = normal_rank(s).dimension;
    let nn = n as u32;
    let splits = split_subgroups(p)?;

    let diagonal = |x: u32| {
        let w = s.element(x).words();
        m.perm(w).iter().enumerate().all(|(i, &j)| i as u32 == j)
    };
    let untwisted = |x: u32| diagonal(x) && m.labels(s.element(x).words()).iter().all(|&l| p.r_part(l) == 0);
    let classes = admissible_classes(s);
    let t_not_ea = !is_elementary_abelian(t);

    let mut checks = Vec::new();
    let additive = nn * r_t + (nn - 1) * r_r;
    checks.push(check(
        "rank-upper-bound",
        true,
        r_s <= additive,
        format!("r(S) = {r_s} <= n r(T) + (n-1) r(R) = {additive}"),
    ));
    checks.push(check(
        "rank-bounded-by-tr",
        true,
        r_s <= nn * r_tr && r_s >= nn * r_t,
        format!("n r(T) = {} <= r(S) = {r_s} <= n r(TR) = {}", nn * r_t, nn * r_tr),
    ));
    checks.push(check(
        "normal-inside-diagonal",
        t_not_ea,
        classes.iter().flatten().all(|&x| diagonal(x)) && nr_s <= additive,
        format!("nr(S) = {nr_s} <= {additive}; normal classes avoid block swaps"),
    ));

    let normal_lower = splits
        .iter()
        .filter(|s| s.2)
        .map(|&(dt, dr, _)| nn * dt + (nn - 1) * dr)
        .max()
        .unwrap_or(0);
    let any_lower = splits
        .iter()
        .map(|&(dt, dr, _)| nn * dt + (nn - 1) * dr)
        .max()
        .unwrap_or(0);
    checks.push(check(
        "normal-rank-lower-bound",
        true,
        nr_s >= normal_lower,
        format!("nr(S) = {nr_s} >= {normal_lower}"),
    ));
    checks.push(check(
        "rank-lower-bound",
        true,
        r_s >= any_lower,
        format!("r(S) = {r_s} >= {any_lower}"),
    ));

    let full_normal_split = splits.iter().any(|&(dt, dr, nrm)| nrm && dt == r_t && dr == r_r);
    checks.push(check(
        "normal-rank-full-split",
        t_not_ea && full_normal_split,
        nr_s == additive,
        format!("nr(S) = {nr_s}, expected {additive}"),
    ));

    let outside_t_noncommuting = (0..tr.order() as u32)
        .filter(|&x| tr.is_involution(x) && !t_sub.contains(x))
        .all(|x| t_sub.members().iter().any(|&y| !tr.commute(x, tr.conjugate(y, x))));
    checks.push(check(
        "normal-rank-inside-base",
        t_not_ea && outside_t_noncommuting,
        classes.iter().flatten().all(|&x| untwisted(x)) && nr_s == nn * m_t,
        format!("nr(S) = {nr_s}, expected n m(T) = {}", nn * m_t),
    ));

    let full_split = splits.iter().any(|&(dt, dr, _)| dt == r_t && dr == r_r);
    checks.push(check(
        "rank-full-split",
        full_split,
        r_s == additive,
        format!("r(S) = {r_s}, expected {additive}"),
    ));
    checks.push(check(
        "rank-tr-equals-t",
        r_tr == r_t,
        r_s == nn * r_t,
        format!("r(S) = {r_s}, expected {}", nn * r_t),
    ));
    let one_extra = r_tr == r_t + 1 && r_tr >= 3 && splits.iter().any(|&(dt, dr, _)| dt == r_t && dr >= 1);
    checks.push(check(
        "rank-one-short",
        one_extra,
        r_s + 1 == nn * r_tr,
        format!("r(S) = {r_s}, expected n r(TR) - 1 = {}", (nn * r_tr).saturating_sub(1)),
    ));

    Ok(TwistChecks {
        n,
        r_t,
        r_r,
        r_tr,
        m_t,
        r_s,
        nr_s,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;
    use crate::presentations::TwistKind;

    #[test]
    fn quaternion_first_action_two_blocks() {
        let p = TwistParams::from_kind(TwistKind::SlSuFirst, 2).unwrap();
        let c = twist_checks(&p, 2, DEFAULT_CAP).unwrap();
        assert_eq!((c.r_s, c.nr_s), (3, 2));
        assert!(c.all_hold(), "{:?}", c.failures());
    }

    #[test]
    fn untwisted_checks_pass() {
        let p = TwistParams::from_kind(TwistKind::SlSuSecond, 2).unwrap();
        let c = twist_checks(&p, 3, DEFAULT_CAP).unwrap();
        assert!(c.all_hold(), "{:?}", c.failures());
    }

    #[test]
    fn dihedral_action_hypotheses() {
        let p = TwistParams::from_kind(TwistKind::OmegaOdd, 3).unwrap();
        let c = twist_checks(&p, 2, DEFAULT_CAP).unwrap();
        assert_eq!(c.r_s, 4);
        assert!(c.all_hold(), "{:?}", c.failures());
        assert!(c.checks.iter().any(|x| x.applies));
    }
}
