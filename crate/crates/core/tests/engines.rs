use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sylow2::catalog::{all_specs, construct_sylow};
use sylow2::constructions::{build_s, wreath_z2, TwistParams};
use sylow2::group::direct_product;
use sylow2::presentations::{build_base, BaseGroupSpec, BaseKind, TwistKind};
use sylow2::rank::{exhaustive_ranks, ExhaustiveStrategy, RankStrategy, SearchStrategy, StrategyRegistry};
use sylow2::{Group, DEFAULT_CAP};

const MAX_ORDER: usize = 1 << 10;

#[derive(Clone, Debug)]
enum Source {
    Catalog(String),
    Base(BaseKind, u32),
    Wreath(BaseKind, u32),
    Twisted(TwistKind, u32, usize),
    Product(BaseKind, u32, BaseKind, u32),
}

fn build(s: &Source) -> Group {
    let base = |k, t| Arc::new(build_base(BaseGroupSpec::new(k, t)).unwrap());
    match s {
        Source::Catalog(row) => construct_sylow(&row.parse().unwrap(), DEFAULT_CAP).unwrap(),
        Source::Base(k, t) => (*base(*k, *t)).clone(),
        Source::Wreath(k, t) => wreath_z2(&base(*k, *t), DEFAULT_CAP).unwrap(),
        Source::Twisted(k, t, n) => build_s(&TwistParams::from_kind(*k, *t).unwrap(), *n, DEFAULT_CAP).unwrap(),
        Source::Product(a, s, b, t) => direct_product(&base(*a, *s), &base(*b, *t), DEFAULT_CAP).unwrap(),
    }
}

fn pool() -> Vec<Source> {
    let mut out: Vec<Source> = all_specs(MAX_ORDER).iter().map(|s| Source::Catalog(s.to_string())).collect();
    for k in BaseKind::ALL {
        for t in k.min_t()..=6 {
            if k.log2_order(t) <= 9 {
                out.push(Source::Base(k, t));
            }
            if 2 * k.log2_order(t) + 1 <= 10 && k.log2_order(t) >= 1 {
                out.push(Source::Wreath(k, t));
            }
        }
    }
    out.extend([
        Source::Twisted(TwistKind::SlSuFirst, 2, 2),
        Source::Twisted(TwistKind::SlSuSecond, 2, 2),
        Source::Twisted(TwistKind::OmegaOdd, 2, 2),
        Source::Twisted(TwistKind::OmegaOdd, 3, 2),
        Source::Twisted(TwistKind::OmegaOdd, 2, 3),
        Source::Twisted(TwistKind::OmegaEven, 2, 1),
        Source::Product(BaseKind::Quaternion, 2, BaseKind::Dihedral, 3),
        Source::Product(BaseKind::Semidihedral, 2, BaseKind::Cyclic, 2),
        Source::Product(BaseKind::CentralProductDihedral, 2, BaseKind::Quaternion, 2),
    ]);
    out
}

#[test]
fn search_matches_exhaustive_on_25_random_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut sources = pool();
    sources.shuffle(&mut rng);
    let mut checked = 0;
    for s in sources {
        let g = Arc::new(build(&s));
        if g.order() > MAX_ORDER {
            continue;
        }
        let search = SearchStrategy::default();
        let fast = (search.rank(&g).unwrap().dimension, search.normal_rank(&g).unwrap().dimension);
        assert_eq!(fast, exhaustive_ranks(&g, MAX_ORDER).unwrap(), "{s:?}");
        checked += 1;
        if checked == 25 {
            break;
        }
    }
    assert_eq!(checked, 25);
}

#[test]
fn registry_engines_agree_on_twisted_groups() {
    let reg = StrategyRegistry::default();
    let engines: Vec<&dyn RankStrategy> = reg.names().into_iter().map(|n| reg.get(n).unwrap()).collect();
    for s in pool().into_iter().filter(|s| matches!(s, Source::Twisted(..))) {
        let g = Arc::new(build(&s));
        let results: Vec<(u32, u32)> = engines
            .iter()
            .map(|e| (e.rank(&g).unwrap().dimension, e.normal_rank(&g).unwrap().dimension))
            .collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]), "{s:?}: {results:?}");
    }
}

#[test]
fn exhaustive_engine_refuses_large_groups() {
    let g = Arc::new(build(&Source::Wreath(BaseKind::Cyclic, 3)));
    let e = ExhaustiveStrategy { cap: 64 };
    assert!(matches!(e.rank(&g), Err(sylow2::Error::CapExceeded { .. })));
}

fn arb_source() -> impl Strategy<Value = Source> {
    let kinds = prop::sample::select(BaseKind::ALL.to_vec());
    (kinds.clone(), 0u32..=4, kinds, 0u32..=4).prop_filter_map("order", |(a, s, b, t)| {
        let (s, t) = (s.max(a.min_t()), t.max(b.min_t()));
        (a.log2_order(s) + b.log2_order(t) <= 8).then_some(Source::Product(a, s, b, t))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn witnesses_are_elementary_abelian(s in arb_source()) {
        let g = Arc::new(build(&s));
        let search = SearchStrategy::default();
        for e in [search.rank(&g).unwrap(), search.normal_rank(&g).unwrap()] {
            prop_assert_eq!(e.members.len(), 1usize << e.dimension);
            for &a in &e.members {
                prop_assert_eq!(g.mul(a, a), 0);
                for &b in &e.members {
                    prop_assert!(g.commute(a, b));
                }
            }
        }
        let normal = search.normal_rank(&g).unwrap();
        let sub = g.subgroup_from_members(&normal.members);
        prop_assert!(g.is_normal(&sub));
    }

    #[test]
    fn search_matches_exhaustive_on_products(s in arb_source()) {
        let g = Arc::new(build(&s));
        let search = SearchStrategy { parallel: false };
        let fast = (search.rank(&g).unwrap().dimension, search.normal_rank(&g).unwrap().dimension);
        prop_assert_eq!(fast, exhaustive_ranks(&g, MAX_ORDER).unwrap());
    }
}
