//! Classical families: the rank table, the Sylow 2-subgroup recipes, and
//! verification of one against the other.

mod arith;
mod families;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::rank::{RankStrategy, SearchStrategy};

pub use arith::{ord2, ord2_qsq_minus_1, pow_mod4, validate_q};
pub use families::{FamilyConstruction, FamilyRegistry, Recipe, WreathFactor};

/// Groups of Lie type covered by the table. For the even-dimensional
/// orthogonal families the suffix is the sign `η` of the form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Sl,
    Su,
    Sp,
    OmegaOdd,
    OmegaEvenPlus,
    OmegaEvenMinus,
    Gl,
    U,
    OOdd,
    OEvenPlus,
    OEvenMinus,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Sl,
        Family::Su,
        Family::Sp,
        Family::OmegaOdd,
        Family::OmegaEvenPlus,
        Family::OmegaEvenMinus,
        Family::Gl,
        Family::U,
        Family::OOdd,
        Family::OEvenPlus,
        Family::OEvenMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Sl => "sl",
            Family::Su => "su",
            Family::Sp => "sp",
            Family::OmegaOdd => "omega-odd",
            Family::OmegaEvenPlus => "omega-even-plus",
            Family::OmegaEvenMinus => "omega-even-minus",
            Family::Gl => "gl",
            Family::U => "u",
            Family::OOdd => "o-odd",
            Family::OEvenPlus => "o-even-plus",
            Family::OEvenMinus => "o-even-minus",
        }
    }

    /// `η` for the even orthogonal families, as a residue mod 4.
    pub fn eta_mod4(self) -> Option<u32> {
        match self {
            Family::OmegaEvenPlus | Family::OEvenPlus => Some(1),
            Family::OmegaEvenMinus | Family::OEvenMinus => Some(3),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::parse(format!("unknown family `{s}`")))
    }
}

/// One member of a family: the natural module dimension `n` and the
/// field order `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: u32,
    pub q: u32,
}

impl FamilySpec {
    pub fn new(family: Family, n: u32, q: u32) -> Self {
        FamilySpec { family, n, q }
    }

    /// `ord_2(q^2 - 1)`.
    pub fn ord2(&self) -> Result<u32> {
        ord2_qsq_minus_1(self.q)
    }

    /// `t = ord_2(q^2 - 1) - 1`, the parameter of the base groups.
    pub fn t(&self) -> Result<u32> {
        Ok(self.ord2()? - 1)
    }

    pub fn q_mod4(&self) -> u32 {
        self.q % 4
    }

    /// For even orthogonal families: whether `q^{n/2} ≡ η (mod 4)`.
    pub fn eta_case(&self) -> Option<bool> {
        self.family
            .eta_mod4()
            .map(|eta| pow_mod4(self.q, self.n / 2) == eta)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.family, self.n, self.q)
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::parse(format!("expected `family n q`, got `{s}`")));
        }
        let num = |x: &str| x.parse::<u32>().map_err(|_| Error::parse(format!("bad number `{x}`")));
        Ok(FamilySpec::new(parts[0].parse()?, num(parts[1])?, num(parts[2])?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub rank: u32,
    pub normal_rank: u32,
}

impl TableEntry {
    fn new(rank: u32, normal_rank: u32) -> Self {
        TableEntry { rank, normal_rank }
    }
}

fn unsupported(spec: &FamilySpec, why: &str) -> Error {
    Error::UnsupportedCase(format!("{spec}: {why}"))
}

/// Closed-form rank and normal rank.
pub fn table_entry(spec: &FamilySpec) -> Result<TableEntry> {
    let ord = spec.ord2()?;
    let big = ord >= 4;
    let n = spec.n;
    let q1 = spec.q_mod4() == 1;
    let linear = |d: u32, normal_small: bool| {
        TableEntry::new(d, if normal_small { (d + 1) / 2 } else { d })
    };
    let e = match spec.family {
        Family::Sl | Family::Su if n < 2 => return Err(unsupported(spec, "degree must be at least 2")),
        Family::Sl | Family::Su if n % 2 == 1 => {
            // odd degree: as GL or U one degree lower
            let small = if spec.family == Family::Sl { !q1 } else { q1 };
            linear(n - 1, small)
        }
        Family::Sl | Family::Su => {
            let m = n / 2;
            let small = if spec.family == Family::Sl { !q1 } else { q1 };
            TableEntry::new(2 * m - 1, if small { m } else { 2 * m - 1 })
        }
        Family::Sp => {
            if n % 2 == 1 || n == 0 {
                return Err(unsupported(spec, "symplectic degree must be even and positive"));
            }
            TableEntry::new(n / 2, n / 2)
        }
        Family::OmegaOdd | Family::OOdd => {
            if n % 2 == 0 || n < 3 {
                return Err(unsupported(spec, "odd orthogonal degree must be odd and at least 3"));
            }
            if spec.family == Family::OmegaOdd && n == 3 {
                return Err(unsupported(spec, "degree 3 lies outside the table"));
            }
            let m = (n - 1) / 2;
            TableEntry::new(2 * m, if big { m } else { 2 * m })
        }
        Family::OmegaEvenPlus | Family::OmegaEvenMinus => {
            if n % 2 == 1 || n < 4 {
                return Err(unsupported(spec, "even orthogonal degree must be even and at least 4"));
            }
            let m = n / 2;
            if spec.eta_case() == Some(true) {
                TableEntry::new(2 * m - 1, if big { m } else { 2 * m - 1 })
            } else {
                TableEntry::new(2 * m - 2, if big { m - 1 } else { 2 * m - 2 })
            }
        }
        Family::OEvenPlus | Family::OEvenMinus => {
            if n % 2 == 1 || n < 2 {
                return Err(unsupported(spec, "even orthogonal degree must be even and positive"));
            }
            let m = n / 2;
            let nr = match (spec.eta_case() == Some(true), big) {
                (_, false) => 2 * m,
                (true, true) => m,
                (false, true) => m + 1,
            };
            TableEntry::new(2 * m, nr)
        }
        Family::Gl | Family::U => {
            if n == 0 {
                return Err(unsupported(spec, "degree must be positive"));
            }
            let small = if spec.family == Family::Gl { !q1 } else { q1 };
            linear(n, small)
        }
    };
    Ok(e)
}

/// Sylow 2-subgroup by the family's registered recipe.
pub fn construct_sylow(spec: &FamilySpec, cap: usize) -> Result<Group> {
    FamilyRegistry::default().construct(spec, cap)
}

/// `log2` of the Sylow order the recipe will produce, without building it.
pub fn predicted_log2_order(spec: &FamilySpec) -> Result<u32> {
    FamilyRegistry::default().recipe(spec)?.log2_order()
}

/// Outcome of comparing search results with the table. Serialized as one
/// JSON line with a fixed field set; witnesses stay out of the JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub family: Family,
    pub n: u32,
    pub q: u32,
    pub order: usize,
    pub rank: u32,
    pub nrank: u32,
    pub expected_rank: u32,
    pub expected_nrank: u32,
    #[serde(rename = "match")]
    pub matches: bool,
    pub millis: u64,
    #[serde(skip)]
    pub rank_witness: Vec<String>,
    #[serde(skip)]
    pub normal_witness: Vec<String>,
}

/// Builds the Sylow subgroup, computes both ranks, and compares with
/// `expected` (the table entry unless overridden).
pub fn verify_with(spec: &FamilySpec, expected: Option<TableEntry>, cap: usize) -> Result<VerifyReport> {
    let start = Instant::now();
    let expected = match expected {
        Some(e) => e,
        None => table_entry(spec)?,
    };
    let g = Arc::new(construct_sylow(spec, cap)?);
    let engine = SearchStrategy { parallel: true };
    let r = engine.rank(&g)?;
    let nr = engine.normal_rank(&g)?;
    let words = |b: &[u32]| b.iter().map(|&x| g.format(x)).collect::<Vec<_>>();
    Ok(VerifyReport {
        family: spec.family,
        n: spec.n,
        q: spec.q,
        order: g.order(),
        rank: r.dimension,
        nrank: nr.dimension,
        expected_rank: expected.rank,
        expected_nrank: expected.normal_rank,
        matches: r.dimension == expected.rank && nr.dimension == expected.normal_rank,
        millis: start.elapsed().as_millis() as u64,
        rank_witness: words(&r.basis),
        normal_witness: words(&nr.basis),
    })
}

pub fn verify(spec: &FamilySpec, cap: usize) -> Result<VerifyReport> {
    verify_with(spec, None, cap)
}

/// Field orders used for batch runs: one per combination of `q mod 4` and
/// `ord_2(q^2 - 1) = 3` versus `>= 4`.
pub const BATCH_FIELDS: [u32; 4] = [3, 5, 7, 9];

/// Every supported spec over [`BATCH_FIELDS`] whose Sylow order is at
/// most `max_order`, in family, degree, field order.
pub fn all_specs(max_order: usize) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for n in 1..=64 {
            for q in BATCH_FIELDS {
                let spec = FamilySpec::new(family, n, q);
                if table_entry(&spec).is_err() {
                    continue;
                }
                match predicted_log2_order(&spec) {
                    Ok(l) if l < usize::BITS && (1usize << l) <= max_order => out.push(spec),
                    _ => {}
                }
            }
        }
    }
    out
}
