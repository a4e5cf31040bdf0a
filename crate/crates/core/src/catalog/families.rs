//! One construction per family, behind a common trait and looked up by
//! family name.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog::{table_entry, Family, FamilySpec};
use crate::constructions::{build_omega_even_odd, build_s, AdicDecomposition, TwistParams};
use crate::error::{Error, Result};
use crate::group::{direct_product_many, Group};
use crate::presentations::{build_base, BaseGroupSpec, BaseKind, TwistKind};

/// `base ≀` over `blocks` blocks: the product of iterated wreath products
/// over the 2-adic digits of `blocks`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WreathFactor {
    pub base: BaseGroupSpec,
    pub blocks: usize,
}

/// What to build for one spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Recipe {
    /// Direct product of wreath factors; factors with no blocks drop out.
    Wreaths(Vec<WreathFactor>),
    /// `S(T,R,J)` over `blocks` blocks for a named action.
    Twisted { kind: TwistKind, t: u32, blocks: usize },
    /// `S(T,R,J) ⋊ D` for the even orthogonal groups of degree `2n`, `n` odd.
    Extended { t: u32, n: usize },
}

fn twisted_log2(kind: TwistKind, t: u32, blocks: usize) -> u32 {
    let (ts, rs) = (kind.base_spec(t), kind.twisting_spec(t));
    let lt = ts.kind.log2_order(ts.t);
    let lr = rs.kind.log2_order(rs.t);
    let n = blocks as u32;
    let u = AdicDecomposition::of(blocks).u() as u32;
    n * lt + (n - 1) * lr + (n - u)
}

impl Recipe {
    /// `log2 |S|` from the shape alone.
    pub fn log2_order(&self) -> Result<u32> {
        Ok(match self {
            Recipe::Wreaths(fs) => fs
                .iter()
                .filter(|f| f.blocks > 0)
                .map(|f| {
                    let u = AdicDecomposition::of(f.blocks).u() as u32;
                    let n = f.blocks as u32;
                    n * f.base.kind.log2_order(f.base.t) + n - u
                })
                .sum(),
            Recipe::Twisted { kind, t, blocks } => twisted_log2(*kind, *t, *blocks),
            Recipe::Extended { t, n } => twisted_log2(TwistKind::OmegaEven, *t, (n - 1) / 2) + t + 1,
        })
    }

    pub fn build(&self, cap: usize) -> Result<Group> {
        let l = self.log2_order()?;
        if l >= usize::BITS || (1usize << l) > cap {
            return Err(Error::CapExceeded { cap });
        }
        match self {
            Recipe::Wreaths(fs) => {
                let parts = fs
                    .iter()
                    .filter(|f| f.blocks > 0)
                    .map(|f| {
                        let base = Arc::new(build_base(f.base.clone())?);
                        build_s(&TwistParams::untwisted(base), f.blocks, cap)
                    })
                    .collect::<Result<Vec<Group>>>()?;
                match parts.len() {
                    0 => build_base(BaseGroupSpec::new(BaseKind::ElemAbelian, 0)),
                    1 => Ok(parts.into_iter().next().expect("one part")),
                    _ => direct_product_many(&parts.iter().collect::<Vec<_>>(), cap),
                }
            }
            Recipe::Twisted { kind, t, blocks } => build_s(&TwistParams::from_kind(*kind, *t)?, *blocks, cap),
            Recipe::Extended { t, n } => build_omega_even_odd(*t, *n, cap),
        }
    }
}

fn wreath(kind: BaseKind, t: u32, blocks: usize) -> WreathFactor {
    WreathFactor {
        base: BaseGroupSpec::new(kind, t),
        blocks,
    }
}

/// Linear and unitary groups: a cyclic base wreathed over `n`, or a
/// semidihedral base over `n/2` with one extra `Z_2` for odd `n`.
fn linear_recipe(n: u32, q: u32, cyclic_exponent: u32, semidihedral: bool) -> Result<Recipe> {
    let t = crate::catalog::ord2_qsq_minus_1(q)? - 1;
    let n = n as usize;
    Ok(if semidihedral {
        Recipe::Wreaths(vec![
            wreath(BaseKind::Semidihedral, t, n / 2),
            wreath(BaseKind::Cyclic, 1, n % 2),
        ])
    } else {
        Recipe::Wreaths(vec![wreath(BaseKind::Cyclic, cyclic_exponent, n)])
    })
}

/// The Sylow 2-subgroup of the odd-dimensional orthogonal group on
/// `2m + 1` points: a dihedral base of order `2^{ord_2(q^2-1)}` over `m`.
fn dihedral_blocks(q: u32, m: u32) -> Result<WreathFactor> {
    Ok(wreath(BaseKind::Dihedral, crate::catalog::ord2_qsq_minus_1(q)?, m as usize))
}

/// Maps a spec to a [`Recipe`].
pub trait FamilyConstruction: Send + Sync {
    fn family(&self) -> Family;

    fn recipe(&self, spec: &FamilySpec) -> Result<Recipe>;
}

struct SpecialLinear {
    unitary: bool,
}

impl FamilyConstruction for SpecialLinear {
    fn family(&self) -> Family {
        if self.unitary {
            Family::Su
        } else {
            Family::Sl
        }
    }

    fn recipe(&self, spec: &FamilySpec) -> Result<Recipe> {
        let t = spec.t()?;
        let q1 = spec.q % 4 == 1;
        if spec.n % 2 == 1 {
            let inner = if self.unitary { Unitary.recipe_for(spec.n - 1, spec.q)? } else { General.recipe_for(spec.n - 1, spec.q)? };
            return Ok(inner);
        }
        let first = if self.unitary { q1 } else { !q1 };
        let kind = if first {
            TwistKind::SlSuFirst
        } else {
            TwistKind::SlSuSecond
        };
        Ok(Recipe::Twisted {
            kind,
            t,
            blocks: spec.n as usize / 2,
        })
    }
}

struct General;

impl General {
    fn recipe_for(&self, n: u32, q: u32) -> Result<Recipe> {
        linear_recipe(n, q, super::ord2(q as u64 - 1), q % 4 == 3)
    }
}

impl FamilyConstruction for General {
    fn family(&self) -> Family {
        Family::Gl
    }

    fn recipe(&self, spec: &FamilySpec) -> Result<Recipe> {
        self.recipe_for(spec.n, spec.q)
    }
}

struct Unitary;

impl Unitary {
    fn recipe_for(&self, n: u32, q: u32) -> Result<Recipe> {
        linear_recipe(n, q, super::ord2(q as u64 + 1), q % 4 == 1)
    }
}

impl FamilyConstruction for Unitary {
    fn family(&self) -> Family {
        Family::U
    }

    fn recipe(&self, spec: &FamilySpec) -> Result<Recipe> {
        self.recipe_for(spec.n, spec.q)
    }
}

struct Symplectic;

impl FamilyConstruction for Symplectic {
    fn family(&self) -> Family {
        Family::Sp
    }

    fn recipe(&self, spec: &FamilySpec) -> Result<Recipe> {
        Ok(Recipe::Wreaths(vec![wreath(BaseKind::Quaternion, spec.t()?, spec.n as usize / 2)]))
    }
}

struct OmegaOdd;

impl FamilyConstruction for OmegaOdd {
    fn family(&self) -> Family {
        Family::OmegaOdd
    }

    fn recipe(&self, spec: &FamilySpec) -> Result<Recipe> {
        Ok(Recipe::Twisted {
            kind: TwistKind::OmegaOdd,
            t: spec.t()?,
            blocks: (spec.n as usize - 1) / 2,
        })
    }
}

struct OmegaEven {
    family: Family,
}

impl FamilyConstruction for OmegaEven {
    fn family(&self) -> Family {
        self.family
    }

    fn recipe(&self, spec: &FamilySpec) -> Result<Recipe> {
        let m = spec.n / 2;
        if spec.eta_case() != Some(true) {
            // same as the odd orthogonal group of degree 2m - 1
            return Ok(Recipe::Wreaths(vec![dihedral_blocks(spec.q, m - 1)?]));
        }
        let t = spec.t()?;
        if m % 2 == 0 {
            Ok(Recipe::Twisted {
                kind: TwistKind::OmegaEven,
                t,
                blocks: m as usize / 2,
            })
        } else {
            Ok(Recipe::Extended { t, n: m as usize })
        }
    }
}

struct OrthogonalOdd;

impl FamilyConstruction for OrthogonalOdd {
    fn family(&self) -> Family {
        Family::OOdd
    }

    fn recipe(&self, spec: &FamilySpec) -> Result<Recipe> {
        Ok(Recipe::Wreaths(vec![dihedral_blocks(spec.q, (spec.n - 1) / 2)?]))
    }
}

struct OrthogonalEven {
    family: Family,
}

impl FamilyConstruction for OrthogonalEven {
    fn family(&self) -> Family {
        self.family
    }

    fn recipe(&self, spec: &FamilySpec) -> Result<Recipe> {
        let m = spec.n / 2;
        if spec.eta_case() == Some(true) {
            Ok(Recipe::Wreaths(vec![dihedral_blocks(spec.q, m)?]))
        } else {
            Ok(Recipe::Wreaths(vec![
                dihedral_blocks(spec.q, m - 1)?,
                wreath(BaseKind::ElemAbelian, 2, 1),
            ]))
        }
    }
}

/// Constructions keyed by family name.
pub struct FamilyRegistry {
    entries: BTreeMap<&'static str, Box<dyn FamilyConstruction>>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        FamilyRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, c: Box<dyn FamilyConstruction>) {
        self.entries.insert(c.family().name(), c);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }

    pub fn get(&self, family: Family) -> Result<&dyn FamilyConstruction> {
        self.entries
            .get(family.name())
            .map(|b| b.as_ref())
            .ok_or_else(|| Error::UnsupportedCase(format!("no construction for `{family}`")))
    }

    /// Recipe for `spec`, after checking the spec lies inside the table.
    pub fn recipe(&self, spec: &FamilySpec) -> Result<Recipe> {
        table_entry(spec)?;
        self.get(spec.family)?.recipe(spec)
    }

    pub fn construct(&self, spec: &FamilySpec, cap: usize) -> Result<Group> {
        self.recipe(spec)?.build(cap)
    }
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        let mut r = FamilyRegistry::empty();
        r.register(Box::new(SpecialLinear { unitary: false }));
        r.register(Box::new(SpecialLinear { unitary: true }));
        r.register(Box::new(General));
        r.register(Box::new(Unitary));
        r.register(Box::new(Symplectic));
        r.register(Box::new(OmegaOdd));
        r.register(Box::new(OrthogonalOdd));
        for family in [Family::OmegaEvenPlus, Family::OmegaEvenMinus] {
            r.register(Box::new(OmegaEven { family }));
        }
        for family in [Family::OEvenPlus, Family::OEvenMinus] {
            r.register(Box::new(OrthogonalEven { family }));
        }
        r
    }
}
