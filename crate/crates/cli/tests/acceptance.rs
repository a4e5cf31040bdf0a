//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use sylow2::catalog::{all_specs, construct_sylow, FamilyRegistry, FamilySpec, Recipe};
use sylow2::constructions::{build_s, wreath_z2, TwistParams};
use sylow2::group::direct_product;
use sylow2::oracle::{gl2, invariant_fingerprint, sylow2 as sylow_of};
use sylow2::presentations::{build_base, BaseGroupSpec, BaseKind, TwistKind};
use sylow2::rank::{
    all_elementary_abelian, all_maximal_elem_abelian, all_normal_elem_abelian, base_subgroup,
    count_fixed_point_free, count_order_p, count_order_p_in_coset, exhaustive_ranks, normal_rank,
    predicted_wreath_count, rank, twist_checks, RankStrategy, SearchStrategy,
};
use sylow2::{Group, DEFAULT_CAP};

/// Largest group order instantiated from the table.
const DESK_ORDER: usize = 1 << 13;
/// Wall-clock budget for the table run.
const TABLE_BUDGET: Duration = Duration::from_secs(600);
/// Wall-clock budget for the matrix oracle.
const ORACLE_BUDGET: Duration = Duration::from_secs(30);
/// Orders for the engine comparison.
const ORACLE_ORDER: usize = 1 << 10;
const RANDOM_GROUPS: usize = 25;
const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sylow2"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Named rows with their table values.
const NAMED_ROWS: &str = "\
sl 4 3 3 2
sl 4 5 3 3
su 4 5 3 2
su 4 3 3 3
sp 2 3 1 1
sp 4 3 2 2
sp 6 3 3 3
omega-odd 5 3 4 4
omega-odd 5 7 4 2
omega-even-plus 4 3 3 3
omega-even-plus 4 7 3 2
omega-even-minus 6 3 5 5
omega-even-minus 6 7 5 3
gl 2 3 2 1
gl 3 3 3 2
gl 3 5 3 3
u 2 5 2 1
o-odd 5 3 4 4
o-odd 5 7 4 2
";

fn json_rows(stdout: &[u8]) -> Result<Vec<Value>, String> {
    String::from_utf8_lossy(stdout)
        .lines()
        .map(|l| serde_json::from_str(l).map_err(|e| format!("bad JSON line `{l}`: {e}")))
        .collect()
}

fn without_millis(rows: &[Value]) -> String {
    rows.iter()
        .map(|r| {
            let mut r = r.clone();
            r.as_object_mut().map(|o| o.remove("millis"));
            r.to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn run_table(workers: usize) -> Result<(Vec<Value>, Duration), String> {
    let start = Instant::now();
    let out = bin()
        .args(["verify-table", "--all", "--max-order", &DESK_ORDER.to_string()])
        .args(["--workers", &workers.to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(out.status.code() == Some(0), || {
        format!("--all with {workers} workers exited {:?}", out.status.code())
    })?;
    Ok((json_rows(&out.stdout)?, elapsed))
}

fn table_reproduction() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let manifest = dir.path().join("named.txt");
    std::fs::write(&manifest, NAMED_ROWS).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let out = bin()
        .arg("verify-table")
        .arg(&manifest)
        .output()
        .map_err(|e| e.to_string())?;
    let rows = json_rows(&out.stdout)?;
    ensure(out.status.code() == Some(0), || format!("named rows exited {:?}", out.status.code()))?;
    ensure(rows.len() == NAMED_ROWS.lines().count(), || format!("{} rows reported", rows.len()))?;
    for r in &rows {
        ensure(r["rank"] == r["expected_rank"] && r["nrank"] == r["expected_nrank"], || format!("mismatch {r}"))?;
    }
    let (all, t_all) = run_table(8)?;
    ensure(all.iter().all(|r| r["match"] == true), || "a catalog row mismatched".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < TABLE_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} named rows exact, {} catalog rows up to order {DESK_ORDER} exact in {:.1}s",
        rows.len(),
        all.len(),
        t_all.as_secs_f64()
    ))
}

fn base(kind: BaseKind, t: u32) -> Arc<Group> {
    Arc::new(build_base(BaseGroupSpec::new(kind, t)).unwrap())
}

fn ranks(g: &Arc<Group>) -> (u32, u32) {
    (rank(g).dimension, normal_rank(g).dimension)
}

/// Constructed groups to sample from: catalog rows, base groups, wreath
/// products, and S(T,R,J) instances.
fn candidate_groups() -> Vec<(String, Box<dyn Fn() -> Group>)> {
    let mut out: Vec<(String, Box<dyn Fn() -> Group>)> = Vec::new();
    for spec in all_specs(ORACLE_ORDER) {
        out.push((spec.to_string(), Box::new(move || construct_sylow(&spec, DEFAULT_CAP).unwrap())));
    }
    for k in BaseKind::ALL {
        for t in k.min_t()..=6 {
            let l = k.log2_order(t);
            if l <= 9 {
                out.push((format!("{}({t})", k.name()), Box::new(move || (*base(k, t)).clone())));
            }
            if l >= 1 && 2 * l < 10 {
                out.push((
                    format!("{}({t}) wr Z2", k.name()),
                    Box::new(move || wreath_z2(&base(k, t), DEFAULT_CAP).unwrap()),
                ));
            }
        }
    }
    for (kind, t, n) in [
        (TwistKind::SlSuFirst, 2, 2),
        (TwistKind::SlSuSecond, 2, 2),
        (TwistKind::OmegaOdd, 2, 3),
        (TwistKind::OmegaOdd, 3, 2),
        (TwistKind::OmegaEven, 2, 1),
    ] {
        out.push((
            format!("S({}, {t}, {n})", kind.name()),
            Box::new(move || build_s(&TwistParams::from_kind(kind, t).unwrap(), n, DEFAULT_CAP).unwrap()),
        ));
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pool = candidate_groups();
    pool.shuffle(&mut rng);
    let search = SearchStrategy { parallel: true };
    let mut checked = 0;
    for (name, make) in pool {
        let g = Arc::new(make());
        if g.order() > ORACLE_ORDER {
            continue;
        }
        let fast = (
            search.rank(&g).map_err(|e| e.to_string())?.dimension,
            search.normal_rank(&g).map_err(|e| e.to_string())?.dimension,
        );
        let slow = exhaustive_ranks(&g, ORACLE_ORDER).map_err(|e| e.to_string())?;
        ensure(fast == slow, || format!("{name}: search {fast:?}, exhaustive {slow:?}"))?;
        checked += 1;
        if checked == RANDOM_GROUPS {
            break;
        }
    }
    ensure(checked == RANDOM_GROUPS, || format!("only {checked} groups sampled"))?;
    Ok(format!("{checked} groups (seed {SEED:#x}) agree with exhaustive enumeration"))
}

fn counting_identities() -> Outcome {
    for (name, kind, t) in [
        ("Z2", BaseKind::Cyclic, 1),
        ("Z4", BaseKind::Cyclic, 2),
        ("Q8", BaseKind::Quaternion, 2),
        ("D8", BaseKind::Dihedral, 3),
    ] {
        let q = base(kind, t);
        let w = wreath_z2(&q, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let d = count_order_p(&q, 2) as u128;
        let got = count_order_p(&w, 2) as u128;
        let want = predicted_wreath_count(d, q.order() as u128, 2);
        ensure(got == want, || format!("d({name} wr Z2) = {got}, formula {want}"))?;
        let bottom = base_subgroup(&w).map_err(|e| e.to_string())?;
        let swap = *w.generators().last().unwrap();
        let coset = count_order_p_in_coset(&w, &bottom, swap, 2).map_err(|e| e.to_string())?;
        ensure(coset == q.order(), || format!("{name}: coset count {coset}, |Q| = {}", q.order()))?;
    }
    let rows = count_fixed_point_free(2, 3, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let v: Vec<u128> = rows.iter().map(|r| r.v).collect();
    ensure(v == [1, 3, 17], || format!("v = {v:?}"))?;
    ensure(rows.iter().all(|r| r.ok), || "recursion fails".into())?;
    Ok("wreath counts, coset counts and v = [1, 3, 17] exact".into())
}

fn additivity() -> Result<usize, String> {
    let specs: Vec<FamilySpec> = all_specs(1 << 6);
    let mut pairs = Vec::new();
    'outer: for (i, a) in specs.iter().enumerate() {
        for b in specs.iter().skip(i).step_by(7) {
            pairs.push((*a, *b));
            if pairs.len() == 20 {
                break 'outer;
            }
        }
    }
    for (a, b) in &pairs {
        let ga = Arc::new(construct_sylow(a, DEFAULT_CAP).map_err(|e| e.to_string())?);
        let gb = Arc::new(construct_sylow(b, DEFAULT_CAP).map_err(|e| e.to_string())?);
        let p = Arc::new(direct_product(&ga, &gb, DEFAULT_CAP).map_err(|e| e.to_string())?);
        let ((ra, na), (rb, nb)) = (ranks(&ga), ranks(&gb));
        ensure(ranks(&p) == (ra + rb, na + nb), || format!("{a} x {b}"))?;
    }
    Ok(pairs.len())
}

fn semidirect_ok(s: &Group, in_a: &dyn Fn(u32) -> bool, a: (u32, u32), r_b: u32) -> bool {
    let levels = all_elementary_abelian(s, 1 << 12).unwrap();
    let normal = all_normal_elem_abelian(s, 1 << 12).unwrap();
    let r_s = levels.len() as u32 - 1;
    let nr_s = normal.iter().map(|e| e.len().trailing_zeros()).max().unwrap_or(0);
    let each = levels.iter().enumerate().all(|(d, level)| {
        level.iter().all(|e| {
            let da = e.iter().filter(|&&x| in_a(x)).count().trailing_zeros();
            da <= a.0 && d as u32 - da <= r_b && (normal.binary_search(e).is_err() || da <= a.1)
        })
    });
    each && a.0 <= r_s && r_s <= a.0 + r_b && nr_s <= a.1 + r_b
}

fn semidirect_bounds() -> Result<usize, String> {
    let mut count = 0;
    for kind in TwistKind::ALL {
        let ts: &[u32] = if kind == TwistKind::OmegaEven { &[2] } else { &[2, 3, 4] };
        for &t in ts {
            let p = TwistParams::from_kind(kind, t).map_err(|e| e.to_string())?;
            let a = ranks(p.t_group());
            let r_b = rank(p.r_group()).dimension;
            ensure(semidirect_ok(p.label_group(), &|x| p.r_part(x) == 0, a, r_b), || {
                format!("{} t={t}", kind.name())
            })?;
            count += 1;
        }
    }
    for (kind, t) in [(BaseKind::Cyclic, 2), (BaseKind::Dihedral, 3), (BaseKind::Quaternion, 2), (BaseKind::Semidihedral, 2)] {
        let w = wreath_z2(&base(kind, t), DEFAULT_CAP).map_err(|e| e.to_string())?;
        let bottom = base_subgroup(&w).map_err(|e| e.to_string())?;
        let a = ranks(&Arc::new(w.subgroup_as_group(&bottom)));
        ensure(semidirect_ok(&w, &|x| bottom.contains(x), a, 1), || format!("{} wr Z2", kind.name()))?;
        count += 1;
    }
    Ok(count)
}

fn wreath_containment() -> Result<(), String> {
    for (name, kind, t) in [
        ("D8", BaseKind::Dihedral, 3),
        ("Q8", BaseKind::Quaternion, 2),
        ("SD16", BaseKind::Semidihedral, 2),
    ] {
        let q = base(kind, t);
        let (r_q, nr_q) = ranks(&q);
        let w = Arc::new(wreath_z2(&q, DEFAULT_CAP).map_err(|e| e.to_string())?);
        let bottom = base_subgroup(&w).map_err(|e| e.to_string())?;
        let (r_w, nr_w) = ranks(&w);
        ensure((r_w, nr_w) == (2 * r_q, 2 * nr_q), || format!("{name}: ranks of the wreath product"))?;
        if r_q >= 2 {
            let maximal = all_maximal_elem_abelian(&w, 1 << 12).map_err(|e| e.to_string())?;
            ensure(
                maximal
                    .iter()
                    .filter(|e| e.order().trailing_zeros() == r_w)
                    .all(|e| e.is_subset_of(&bottom)),
                || format!("{name}: a maximal-dimension EA leaves the base"),
            )?;
        }
        let normal = all_normal_elem_abelian(&w, 1 << 12).map_err(|e| e.to_string())?;
        ensure(normal.iter().all(|e| e.iter().all(|&x| bottom.contains(x))), || {
            format!("{name}: a normal EA leaves the base")
        })?;
    }
    Ok(())
}

fn twisted_instances() -> Result<usize, String> {
    let reg = FamilyRegistry::default();
    let mut count = 0;
    for line in NAMED_ROWS.lines() {
        let mut it = line.split_whitespace();
        let spec: FamilySpec = format!("{} {} {}", it.next().unwrap(), it.next().unwrap(), it.next().unwrap())
            .parse()
            .map_err(|e: sylow2::Error| e.to_string())?;
        let (kind, t, blocks) = match reg.recipe(&spec).map_err(|e| e.to_string())? {
            Recipe::Twisted { kind, t, blocks } => (kind, t, blocks),
            Recipe::Extended { t, n } => (TwistKind::OmegaEven, t, (n - 1) / 2),
            Recipe::Wreaths(_) => continue,
        };
        let p = TwistParams::from_kind(kind, t).map_err(|e| e.to_string())?;
        let res = twist_checks(&p, blocks, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(res.all_hold(), || format!("{spec}: {:?}", res.failures()))?;
        count += 1;
    }
    Ok(count)
}

fn structural_suites() -> Outcome {
    let pairs = additivity()?;
    let products = semidirect_bounds()?;
    wreath_containment()?;
    let twisted = twisted_instances()?;
    Ok(format!(
        "additivity on {pairs} pairs, bounds on {products} semidirect products, wreath containment for D8/Q8/SD16, \
         twist bounds on {twisted} S(T,R,J) instances"
    ))
}

fn matrix_oracle() -> Outcome {
    let start = Instant::now();
    let fp = |g: &Group| invariant_fingerprint(g);
    let sd = |t| fp(&base(BaseKind::Semidihedral, t));
    let p3 = sylow_of(&gl2(3).map_err(|e| e.to_string())?);
    ensure(p3.order() == 16 && fp(&p3) == sd(2), || "GL(2,3)".into())?;
    let p7 = sylow_of(&gl2(7).map_err(|e| e.to_string())?);
    ensure(p7.order() == 32 && fp(&p7) == sd(3), || "GL(2,7)".into())?;
    let p5 = sylow_of(&gl2(5).map_err(|e| e.to_string())?);
    let z4wr = wreath_z2(&base(BaseKind::Cyclic, 2), DEFAULT_CAP).map_err(|e| e.to_string())?;
    ensure(fp(&p5) == fp(&z4wr), || "GL(2,5)".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < ORACLE_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("SD16, SD32, Z4 wr Z2 fingerprints exact in {:.2}s", elapsed.as_secs_f64()))
}

fn determinism() -> Outcome {
    let (one, _) = run_table(1)?;
    let (eight, _) = run_table(8)?;
    let (a, b) = (without_millis(&one), without_millis(&eight));
    ensure(a == b, || "outputs differ".into())?;
    Ok(format!("{} rows byte-identical for 1 and 8 workers", one.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("table reproduction", table_reproduction),
        ("oracle equivalence", oracle_equivalence),
        ("counting identities", counting_identities),
        ("structural suites", structural_suites),
        ("matrix oracle", matrix_oracle),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
