//! 2-rank and normal 2-rank: exact search, exhaustive oracle, counting
//! identities, and the structural checks for twisted wreath products.

mod counting;
mod exhaustive;
mod graph;
mod normal;
mod search;
mod twist;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Group;

pub use counting::{
    base_subgroup, count_fixed_point_free, count_order_p, count_order_p_in_coset,
    predicted_wreath_count, wreath_count_table, FixedPointFreeRow, WreathCountRow,
};
pub use exhaustive::{
    all_elementary_abelian, all_maximal_elem_abelian, all_normal_elem_abelian, exhaustive_ranks,
    EXHAUSTIVE_CAP,
};
pub use graph::{InvolutionGraph, DENSE_PRODUCT_LIMIT};
pub use normal::{max_normal_elementary_abelian, NormalOutcome};
pub use search::{max_elementary_abelian, SearchOutcome};
pub use twist::{twist_checks, twist_checks_on, CheckOutcome, TwistChecks};

/// All involutions, in index order.
pub fn involutions(g: &Group) -> Vec<u32> {
    (1..g.order() as u32).filter(|&x| g.is_involution(x)).collect()
}

/// One extremal subgroup: its dimension and a canonical basis (greedy
/// echelon over members in index order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremal {
    pub dimension: u32,
    pub basis: Vec<u32>,
    pub members: Vec<u32>,
    pub nodes: u64,
}

impl Extremal {
    fn from_members(g: &Group, dimension: u32, members: &[u32], nodes: u64) -> Self {
        let sub = g.subgroup_from_members(members);
        Extremal {
            dimension,
            basis: sub.basis().to_vec(),
            members: sub.members().to_vec(),
            nodes,
        }
    }
}

/// A way of computing `r_2` and `nr_2`.
pub trait RankStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn rank(&self, g: &Arc<Group>) -> Result<Extremal>;

    fn normal_rank(&self, g: &Arc<Group>) -> Result<Extremal>;
}

/// Branch and bound over the commuting-involution graph and over
/// involution classes.
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchStrategy {
    pub parallel: bool,
}

impl RankStrategy for SearchStrategy {
    fn name(&self) -> &'static str {
        "search"
    }

    fn rank(&self, g: &Arc<Group>) -> Result<Extremal> {
        let graph = InvolutionGraph::new(g.clone());
        let out = max_elementary_abelian(&graph, self.parallel);
        let mut members: Vec<u32> = out.members.iter().map(|&v| graph.element(v)).collect();
        members.push(0);
        Ok(Extremal::from_members(g, out.dimension, &members, out.nodes))
    }

    fn normal_rank(&self, g: &Arc<Group>) -> Result<Extremal> {
        let out = max_normal_elementary_abelian(g, |_| true, self.parallel);
        Ok(Extremal::from_members(g, out.dimension, &out.members, out.nodes))
    }
}

/// Enumerates every elementary abelian subgroup; limited to small groups.
#[derive(Clone, Copy, Debug)]
pub struct ExhaustiveStrategy {
    pub cap: usize,
}

impl Default for ExhaustiveStrategy {
    fn default() -> Self {
        ExhaustiveStrategy { cap: EXHAUSTIVE_CAP }
    }
}

impl ExhaustiveStrategy {
    fn best(&self, g: &Group, normal: bool) -> Result<Extremal> {
        let levels = all_elementary_abelian(g, self.cap)?;
        let nodes = levels.iter().map(|l| l.len() as u64).sum();
        for (d, level) in levels.iter().enumerate().rev() {
            let pick = level.iter().find(|e| {
                !normal || g.is_normal(&g.subgroup_from_members(e))
            });
            if let Some(e) = pick {
                return Ok(Extremal::from_members(g, d as u32, e, nodes));
            }
        }
        Ok(Extremal::from_members(g, 0, &[0], nodes))
    }
}

impl RankStrategy for ExhaustiveStrategy {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn rank(&self, g: &Arc<Group>) -> Result<Extremal> {
        self.best(g, false)
    }

    fn normal_rank(&self, g: &Arc<Group>) -> Result<Extremal> {
        self.best(g, true)
    }
}

/// Rank strategies by name.
pub struct StrategyRegistry {
    entries: BTreeMap<&'static str, Box<dyn RankStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, s: Box<dyn RankStrategy>) {
        self.entries.insert(s.name(), s);
    }

    pub fn get(&self, name: &str) -> Result<&dyn RankStrategy> {
        self.entries
            .get(name)
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::parse(format!("unknown rank engine `{name}`")))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        let mut r = StrategyRegistry::empty();
        r.register(Box::new(SearchStrategy { parallel: true }));
        r.register(Box::new(ExhaustiveStrategy::default()));
        r
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub involutions: usize,
    pub rank_nodes: u64,
    pub normal_nodes: Option<u64>,
}

/// Ranks of one group with their witnesses, as printed by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub engine: String,
    pub order: usize,
    pub rank: u32,
    pub rank_witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nrank: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_witness: Option<Vec<String>>,
    pub stats: SearchStats,
    pub millis: u64,
}

impl RankReport {
    pub fn compute(g: &Arc<Group>, strategy: &dyn RankStrategy, normal: bool) -> Result<RankReport> {
        let start = Instant::now();
        let words = |basis: &[u32]| basis.iter().map(|&x| g.format(x)).collect::<Vec<_>>();
        let r = strategy.rank(g)?;
        let n = if normal {
            Some(strategy.normal_rank(g)?)
        } else {
            None
        };
        Ok(RankReport {
            engine: strategy.name().to_string(),
            order: g.order(),
            rank: r.dimension,
            rank_witness: words(&r.basis),
            nrank: n.as_ref().map(|n| n.dimension),
            normal_witness: n.as_ref().map(|n| words(&n.basis)),
            stats: SearchStats {
                involutions: involutions(g).len(),
                rank_nodes: r.nodes,
                normal_nodes: n.as_ref().map(|n| n.nodes),
            },
            millis: start.elapsed().as_millis() as u64,
        })
    }

    /// Key-value text form.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "engine {}\norder {}\nrank {}\nrank_witness {}\n",
            self.engine,
            self.order,
            self.rank,
            self.rank_witness.join(" ; ")
        );
        if let (Some(n), Some(w)) = (self.nrank, &self.normal_witness) {
            out.push_str(&format!("nrank {n}\nnormal_witness {}\n", w.join(" ; ")));
        }
        out.push_str(&format!(
            "involutions {}\nrank_nodes {}\n",
            self.stats.involutions, self.stats.rank_nodes
        ));
        if let Some(nn) = self.stats.normal_nodes {
            out.push_str(&format!("normal_nodes {nn}\n"));
        }
        out.push_str(&format!("millis {}\n", self.millis));
        out
    }
}

/// `r_2(g)` by the default search.
pub fn rank(g: &Arc<Group>) -> Extremal {
    SearchStrategy { parallel: true }.rank(g).expect("search does not fail")
}

/// `nr_2(g)` by the default search.
pub fn normal_rank(g: &Arc<Group>) -> Extremal {
    SearchStrategy { parallel: true }
        .normal_rank(g)
        .expect("search does not fail")
}
