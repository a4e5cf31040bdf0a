//! Base 2-groups in normal form and the explicit twisting actions used by
//! the Sylow constructions.

use std::any::Any;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::descriptor::Descriptor;
use crate::error::{Error, Result};
use crate::group::{word, ActionSpec, Backend, Element, FastMul, Group};

/// `⟨v, w | v^m, w^2 = v^s, w v w^-1 = v^r⟩` in normal form `v^i w^j`,
/// or the cyclic group `⟨v | v^m⟩` when `w` is absent.
#[derive(Debug, Clone)]
pub struct MetacyclicBackend {
    m: u32,
    r: u32,
    s: u32,
    has_w: bool,
    names: [String; 2],
    descriptor: Option<Descriptor>,
}

impl MetacyclicBackend {
    pub fn cyclic(m: u32, name: &str) -> Self {
        MetacyclicBackend {
            m,
            r: 1,
            s: 0,
            has_w: false,
            names: [name.to_string(), String::new()],
            descriptor: None,
        }
    }

    pub fn new(m: u32, r: u32, s: u32, names: [&str; 2]) -> Result<Self> {
        let m64 = m as u64;
        if m == 0 || (r as u64 * r as u64) % m64 != 1 % m64 || (r as u64 * s as u64) % m64 != s as u64 % m64 {
            return Err(Error::BadParameter(format!(
                "inconsistent metacyclic data m={m} r={r} s={s}"
            )));
        }
        Ok(MetacyclicBackend {
            m,
            r: r % m,
            s: s % m,
            has_w: true,
            names: [names[0].to_string(), names[1].to_string()],
            descriptor: None,
        })
    }

    fn with_descriptor(mut self, d: Descriptor) -> Self {
        self.descriptor = Some(d);
        self
    }

    pub fn v(&self) -> Element {
        Element::new(vec![1 % self.m, 0])
    }

    pub fn w(&self) -> Element {
        Element::new(vec![0, 1])
    }

    fn generators(&self) -> Vec<Element> {
        if self.has_w {
            vec![self.v(), self.w()]
        } else {
            vec![self.v()]
        }
    }
}

impl Backend for MetacyclicBackend {
    fn kind(&self) -> &'static str {
        "metacyclic"
    }

    fn width(&self) -> usize {
        2
    }

    fn identity(&self) -> Element {
        Element::new(vec![0, 0])
    }

    fn multiply_into(&self, a: &[u32], b: &[u32], out: &mut Vec<u32>) {
        let m = self.m as u64;
        let twist = if a[1] == 1 { self.r as u64 } else { 1 };
        let mut i = (a[0] as u64 + twist * b[0] as u64) % m;
        let mut j = a[1] + b[1];
        if j == 2 {
            i = (i + self.s as u64) % m;
            j = 0;
        }
        out.clear();
        out.push(i as u32);
        out.push(j);
    }

    fn inverse(&self, a: &[u32]) -> Element {
        let m = self.m as u64;
        if a[1] == 0 {
            Element::new(vec![((m - a[0] as u64) % m) as u32, 0])
        } else {
            // (v^i w)(v^k w) = v^(i + rk + s) = 1
            let k = (m - (a[0] as u64 + self.s as u64) % m) % m * self.r as u64 % m;
            Element::new(vec![k as u32, 1])
        }
    }

    fn format(&self, a: &[u32]) -> String {
        let vi = word::power(&self.names[0], a[0] as i64);
        let wj = word::power(&self.names[1], a[1] as i64);
        word::join([vi, wj])
    }

    fn parse(&self, s: &str) -> Result<Element> {
        word::evaluate(self, s, |name| {
            if name == self.names[0] {
                Some(self.v())
            } else if self.has_w && name == self.names[1] {
                Some(self.w())
            } else {
                None
            }
        })
    }

    fn descriptor(&self) -> Option<Descriptor> {
        self.descriptor.clone()
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// `Z_2^k` as bit masks.
#[derive(Debug, Clone)]
pub struct ElemAbelianBackend {
    names: Vec<String>,
    descriptor: Option<Descriptor>,
}

impl ElemAbelianBackend {
    pub fn new(names: Vec<String>) -> Self {
        assert!(names.len() <= 31, "elementary abelian rank limited to 31");
        ElemAbelianBackend {
            names,
            descriptor: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    fn basis(&self, i: usize) -> Element {
        Element::new(vec![1 << i])
    }
}

impl Backend for ElemAbelianBackend {
    fn kind(&self) -> &'static str {
        "elementary-abelian"
    }

    fn width(&self) -> usize {
        1
    }

    fn identity(&self) -> Element {
        Element::new(vec![0])
    }

    fn multiply_into(&self, a: &[u32], b: &[u32], out: &mut Vec<u32>) {
        out.clear();
        out.push(a[0] ^ b[0]);
    }

    fn inverse(&self, a: &[u32]) -> Element {
        Element::from_slice(a)
    }

    fn format(&self, a: &[u32]) -> String {
        word::join(
            (0..self.names.len())
                .filter(|i| a[0] >> i & 1 == 1)
                .map(|i| self.names[i].clone()),
        )
    }

    fn parse(&self, s: &str) -> Result<Element> {
        word::evaluate(self, s, |name| {
            self.names.iter().position(|n| n == name).map(|i| self.basis(i))
        })
    }

    fn descriptor(&self) -> Option<Descriptor> {
        self.descriptor.clone()
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// Central product of two dihedral groups of order `2^(t+1)`, realised as
/// the 2×2 monomial matrices
/// `d = diag(u, u^-1)`, `g = diag(u, u)`, `h = antidiag(1, 1)`, `k = antidiag(w, w)`
/// over `D = ⟨u, w⟩`. Elements are stored in normal form `d^x h^y g^z k^w`
/// with `x < 2^t`, `z < 2^(t-1)`, `y, w ∈ {0, 1}`.
#[derive(Debug)]
pub struct CentralProductBackend {
    t: u32,
    dihedral: FastMul,
    /// Normal-form code → monomial triple `(swap, a1, a2)`.
    to_monomial: Vec<[u32; 3]>,
    from_monomial: FxHashMap<[u32; 3], u32>,
}

impl CentralProductBackend {
    pub fn new(t: u32) -> Result<Self> {
        if t < 2 {
            return Err(Error::BadParameter(format!(
                "central product of dihedral groups needs t >= 2, got {t}"
            )));
        }
        let d = Arc::new(build_base(BaseGroupSpec::new(BaseKind::Dihedral, t + 1).named(&["u", "w"]))?);
        let dihedral = FastMul::new(d.clone());
        let u = d.generators()[0];
        let w = d.generators()[1];
        let u_inv = d.inv(u);
        let mono = |p: u32, a: u32, b: u32| [p, a, b];
        let gen_d = mono(0, u, u_inv);
        let gen_g = mono(0, u, u);
        let gen_h = mono(1, 0, 0);
        let gen_k = mono(1, w, w);
        let mul = |x: [u32; 3], y: [u32; 3]| -> [u32; 3] {
            // c_j = a_{σ(j)} b_j with σ = y's block permutation
            let q = y[0] as usize;
            let a = [x[1], x[2]];
            let c1 = dihedral.mul(a[q], y[1]);
            let c2 = dihedral.mul(a[1 - q], y[2]);
            [x[0] ^ y[0], c1, c2]
        };
        let pow = |g: [u32; 3], e: u32| {
            let mut acc = [0, 0, 0];
            for _ in 0..e {
                acc = mul(acc, g);
            }
            acc
        };
        let half = 1u32 << (t - 1);
        let mut to_monomial = Vec::new();
        let mut from_monomial = FxHashMap::default();
        for x in 0..(1u32 << t) {
            for y in 0..2 {
                for z in 0..half {
                    for wk in 0..2 {
                        let m = mul(mul(mul(pow(gen_d, x), pow(gen_h, y)), pow(gen_g, z)), pow(gen_k, wk));
                        let code = to_monomial.len() as u32;
                        if from_monomial.insert(m, code).is_some() {
                            return Err(Error::BadParameter(
                                "central product normal form is not injective".into(),
                            ));
                        }
                        to_monomial.push(m);
                    }
                }
            }
        }
        Ok(CentralProductBackend {
            t,
            dihedral,
            to_monomial,
            from_monomial,
        })
    }

    pub fn order(&self) -> usize {
        self.to_monomial.len()
    }

    fn code(x: u32, y: u32, z: u32, w: u32, half: u32) -> u32 {
        ((x * 2 + y) * half + z) * 2 + w
    }

    /// `(x, y, z, w)` of an encoded element `d^x h^y g^z k^w`.
    pub fn exponents(&self, a: &[u32]) -> [u32; 4] {
        [a[0], a[1], a[2], a[3]]
    }

    fn encode(&self, code: u32) -> Element {
        let half = 1u32 << (self.t - 1);
        let w = code % 2;
        let z = (code / 2) % half;
        let y = (code / 2 / half) % 2;
        let x = code / 2 / half / 2;
        Element::new(vec![x, y, z, w])
    }

    fn code_of(&self, a: &[u32]) -> u32 {
        Self::code(a[0], a[1], a[2], a[3], 1 << (self.t - 1))
    }

    fn mono_mul(&self, x: [u32; 3], y: [u32; 3]) -> [u32; 3] {
        let q = y[0] as usize;
        let a = [x[1], x[2]];
        [
            x[0] ^ y[0],
            self.dihedral.mul(a[q], y[1]),
            self.dihedral.mul(a[1 - q], y[2]),
        ]
    }

    pub fn generator(&self, name: &str) -> Option<Element> {
        let code = match name {
            "d" => Self::code(1, 0, 0, 0, 1 << (self.t - 1)),
            "h" => Self::code(0, 1, 0, 0, 1 << (self.t - 1)),
            "g" => Self::code(0, 0, 1, 0, 1 << (self.t - 1)),
            "k" => Self::code(0, 0, 0, 1, 1 << (self.t - 1)),
            _ => return None,
        };
        Some(self.encode(code))
    }
}

impl Backend for CentralProductBackend {
    fn kind(&self) -> &'static str {
        "central-product"
    }

    fn width(&self) -> usize {
        4
    }

    fn identity(&self) -> Element {
        Element::new(vec![0, 0, 0, 0])
    }

    fn multiply_into(&self, a: &[u32], b: &[u32], out: &mut Vec<u32>) {
        let m = self.mono_mul(
            self.to_monomial[self.code_of(a) as usize],
            self.to_monomial[self.code_of(b) as usize],
        );
        let e = self.encode(self.from_monomial[&m]);
        out.clear();
        out.extend_from_slice(e.words());
    }

    fn inverse(&self, a: &[u32]) -> Element {
        let [p, x1, x2] = self.to_monomial[self.code_of(a) as usize];
        // (π, a)^-1 = (π^-1, c) with c_j = a_{π^-1(j)}^-1
        let inv = if p == 0 {
            [0, self.dihedral.inv(x1), self.dihedral.inv(x2)]
        } else {
            [1, self.dihedral.inv(x2), self.dihedral.inv(x1)]
        };
        self.encode(self.from_monomial[&inv])
    }

    fn format(&self, a: &[u32]) -> String {
        word::join([
            word::power("d", a[0] as i64),
            word::power("h", a[1] as i64),
            word::power("g", a[2] as i64),
            word::power("k", a[3] as i64),
        ])
    }

    fn parse(&self, s: &str) -> Result<Element> {
        word::evaluate(self, s, |name| self.generator(name))
    }

    fn descriptor(&self) -> Option<Descriptor> {
        Some(Descriptor::Base(BaseGroupSpec::new(BaseKind::CentralProductDihedral, self.t)))
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseKind {
    /// Order `2^t`.
    Cyclic,
    /// Order `2^t`.
    ElemAbelian,
    /// Order `2^t`, `o(v) = 2^(t-1)`; `t = 2` is the Klein four-group.
    Dihedral,
    /// Order `2^(t+1)`, `o(v) = 2^t`, `o(w) = 4`.
    Quaternion,
    /// Order `2^(t+2)`, `o(v) = 2^(t+1)`, `w v w = v^(2^t - 1)`.
    Semidihedral,
    /// Order `2^(2t+1)`.
    CentralProductDihedral,
}

impl BaseKind {
    pub const ALL: [BaseKind; 6] = [
        BaseKind::Cyclic,
        BaseKind::ElemAbelian,
        BaseKind::Dihedral,
        BaseKind::Quaternion,
        BaseKind::Semidihedral,
        BaseKind::CentralProductDihedral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BaseKind::Cyclic => "cyclic",
            BaseKind::ElemAbelian => "elem",
            BaseKind::Dihedral => "dihedral",
            BaseKind::Quaternion => "quaternion",
            BaseKind::Semidihedral => "semidihedral",
            BaseKind::CentralProductDihedral => "central",
        }
    }

    pub fn min_t(self) -> u32 {
        match self {
            BaseKind::Cyclic => 1,
            BaseKind::ElemAbelian => 0,
            _ => 2,
        }
    }

    /// `log2` of the order of the kind at parameter `t`.
    pub fn log2_order(self, t: u32) -> u32 {
        match self {
            BaseKind::Cyclic | BaseKind::ElemAbelian | BaseKind::Dihedral => t,
            BaseKind::Quaternion => t + 1,
            BaseKind::Semidihedral => t + 2,
            BaseKind::CentralProductDihedral => 2 * t + 1,
        }
    }
}

impl FromStr for BaseKind {
    type Err = Error;

    /// Accepts full names and short forms; trailing digits are ignored so
    /// that `q8`, `d16`, `sd16`, `z4` name their kind.
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let key = key.trim_end_matches(|c: char| c.is_ascii_digit());
        Ok(match key {
            "cyclic" | "z" | "c" => BaseKind::Cyclic,
            "elem" | "elementary" | "e" => BaseKind::ElemAbelian,
            "dihedral" | "d" => BaseKind::Dihedral,
            "quaternion" | "q" => BaseKind::Quaternion,
            "semidihedral" | "sd" => BaseKind::Semidihedral,
            "central" | "cd" | "central-product" => BaseKind::CentralProductDihedral,
            _ => return Err(Error::parse(format!("unknown base group kind `{s}`"))),
        })
    }
}

/// A base group kind with its exponent parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BaseGroupSpec {
    pub kind: BaseKind,
    pub t: u32,
    /// Generator names; `None` keeps the kind's defaults.
    #[serde(skip)]
    pub names: Option<Vec<String>>,
}

impl BaseGroupSpec {
    pub fn new(kind: BaseKind, t: u32) -> Self {
        BaseGroupSpec { kind, t, names: None }
    }

    pub fn named(mut self, names: &[&str]) -> Self {
        self.names = Some(names.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn order(&self) -> usize {
        1usize << self.kind.log2_order(self.t)
    }
}

impl fmt::Display for BaseGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind.name(), self.t)
    }
}

/// Builds the base group with generators in the conventional order:
/// `v, w` for metacyclic kinds, `d, g, h, k` for the central product.
pub fn build_base(spec: BaseGroupSpec) -> Result<Group> {
    let t = spec.t;
    if t < spec.kind.min_t() {
        return Err(Error::BadParameter(format!(
            "{} needs t >= {}, got {t}",
            spec.kind.name(),
            spec.kind.min_t()
        )));
    }
    if spec.kind.log2_order(t) > 24 {
        return Err(Error::BadParameter(format!("{spec} is too large")));
    }
    let names = spec.names.clone();
    let name = |i: usize, default: &str| -> String {
        names
            .as_ref()
            .and_then(|n| n.get(i).cloned())
            .unwrap_or_else(|| default.to_string())
    };
    // Only default-named groups are rebuilt verbatim from a descriptor.
    let desc = names.is_none().then(|| Descriptor::Base(BaseGroupSpec::new(spec.kind, t)));
    let metacyclic = |m: u32, r: u32, s: u32| -> Result<Group> {
        let mut b = MetacyclicBackend::new(m, r, s, [&name(0, "v"), &name(1, "w")])?;
        if let Some(d) = desc.clone() {
            b = b.with_descriptor(d);
        }
        let gens = b.generators();
        Group::closure(Arc::new(b), gens, spec.order())
    };
    match spec.kind {
        BaseKind::Cyclic => {
            let mut b = MetacyclicBackend::cyclic(1 << t, &name(0, "v"));
            if let Some(d) = desc.clone() {
                b = b.with_descriptor(d);
            }
            let gens = b.generators();
            Group::closure(Arc::new(b), gens, spec.order())
        }
        BaseKind::ElemAbelian => {
            let names = (0..t as usize).map(|i| name(i, &format!("x{}", i + 1))).collect();
            let mut b = ElemAbelianBackend::new(names);
            b.descriptor = desc;
            let gens = (0..t as usize).map(|i| b.basis(i)).collect();
            Group::closure(Arc::new(b), gens, spec.order())
        }
        BaseKind::Dihedral => {
            let m = 1u32 << (t - 1);
            metacyclic(m, m - 1, 0)
        }
        BaseKind::Quaternion => {
            let m = 1u32 << t;
            metacyclic(m, m - 1, m / 2)
        }
        BaseKind::Semidihedral => {
            let m = 1u32 << (t + 1);
            metacyclic(m, (1 << t) - 1, 0)
        }
        BaseKind::CentralProductDihedral => {
            let b = CentralProductBackend::new(t)?;
            let gens = ["d", "g", "h", "k"]
                .iter()
                .map(|n| b.generator(n).unwrap())
                .collect();
            Group::closure(Arc::new(b), gens, spec.order())
        }
    }
}

/// Cyclic group of arbitrary order `m` (used for odd-prime counting).
pub fn cyclic_of_order(m: u32) -> Result<Group> {
    if m == 0 {
        return Err(Error::BadParameter("cyclic group of order 0".into()));
    }
    let b = MetacyclicBackend::cyclic(m, "v").with_descriptor(Descriptor::ZMod(m));
    let gens = if m > 1 { vec![b.v()] } else { vec![] };
    Group::closure(Arc::new(b), gens, m as usize)
}

/// The four twisting actions of the classical-group constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwistKind {
    /// Quaternion `T`, `R = Z_2`: `e v e^-1 = v^-1`, `e w e^-1 = v w`.
    SlSuFirst,
    /// Quaternion `T`, `R = Z_{2^t}`: `e v e^-1 = v`, `e w e^-1 = v w`.
    SlSuSecond,
    /// Dihedral `T` of order `2^t`, `R = Z_2`: `e v e = v^-1`, `e w e = v w`.
    OmegaOdd,
    /// Central product of dihedral groups, `R = ⟨e, f⟩ ≅ Z_2 × Z_2`.
    OmegaEven,
}

impl TwistKind {
    pub const ALL: [TwistKind; 4] = [
        TwistKind::SlSuFirst,
        TwistKind::SlSuSecond,
        TwistKind::OmegaOdd,
        TwistKind::OmegaEven,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TwistKind::SlSuFirst => "sl-su-1",
            TwistKind::SlSuSecond => "sl-su-2",
            TwistKind::OmegaOdd => "omega-odd",
            TwistKind::OmegaEven => "omega-even",
        }
    }

    pub fn base_spec(self, t: u32) -> BaseGroupSpec {
        match self {
            TwistKind::SlSuFirst | TwistKind::SlSuSecond => BaseGroupSpec::new(BaseKind::Quaternion, t),
            TwistKind::OmegaOdd => BaseGroupSpec::new(BaseKind::Dihedral, t),
            TwistKind::OmegaEven => BaseGroupSpec::new(BaseKind::CentralProductDihedral, t),
        }
    }

    pub fn twisting_spec(self, t: u32) -> BaseGroupSpec {
        match self {
            TwistKind::SlSuFirst | TwistKind::OmegaOdd => {
                BaseGroupSpec::new(BaseKind::Cyclic, 1).named(&["e"])
            }
            TwistKind::SlSuSecond => BaseGroupSpec::new(BaseKind::Cyclic, t).named(&["e"]),
            TwistKind::OmegaEven => BaseGroupSpec::new(BaseKind::ElemAbelian, 2).named(&["e", "f"]),
        }
    }

    pub fn action(self) -> ActionSpec {
        match self {
            TwistKind::SlSuFirst | TwistKind::OmegaOdd => ActionSpec::new(&[&["v^-1", "v*w"]]),
            TwistKind::SlSuSecond => ActionSpec::new(&[&["v", "v*w"]]),
            // generator order of T is d, g, h, k
            TwistKind::OmegaEven => ActionSpec::new(&[
                &["g^-1", "d^-1", "g*k", "d*h"],
                &["g", "d", "k", "h"],
            ]),
        }
    }
}

impl FromStr for TwistKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TwistKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::parse(format!("unknown twist kind `{s}`")))
    }
}

pub fn action_sl_su_first(t: u32) -> Result<ActionSpec> {
    check_twist_t(t)?;
    Ok(TwistKind::SlSuFirst.action())
}

pub fn action_sl_su_second(t: u32) -> Result<ActionSpec> {
    check_twist_t(t)?;
    Ok(TwistKind::SlSuSecond.action())
}

pub fn action_omega_odd(t: u32) -> Result<ActionSpec> {
    check_twist_t(t)?;
    Ok(TwistKind::OmegaOdd.action())
}

pub fn action_omega_even(t: u32) -> Result<ActionSpec> {
    check_twist_t(t)?;
    Ok(TwistKind::OmegaEven.action())
}

fn check_twist_t(t: u32) -> Result<()> {
    if t < 2 {
        return Err(Error::BadParameter(format!("twisting actions need t >= 2, got {t}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::semidirect_product;

    fn base(kind: BaseKind, t: u32) -> Group {
        build_base(BaseGroupSpec::new(kind, t)).unwrap()
    }

    fn involution_count(g: &Group) -> usize {
        (0..g.order() as u32).filter(|&x| g.is_involution(x)).count()
    }

    #[test]
    fn orders_follow_the_kind_formulas() {
        for kind in BaseKind::ALL {
            for t in kind.min_t().max(1)..5 {
                let g = base(kind, t);
                assert_eq!(g.order(), 1 << kind.log2_order(t), "{kind:?} t={t}");
                assert!(g.check_axioms(), "{kind:?} t={t}");
            }
        }
    }

    #[test]
    fn quaternion_has_one_involution_dihedral_many() {
        for t in 2..6 {
            assert_eq!(involution_count(&base(BaseKind::Quaternion, t)), 1);
        }
        for t in 3..7 {
            assert_eq!(
                involution_count(&base(BaseKind::Dihedral, t)),
                (1 << (t - 1)) + 1
            );
        }
        // t = 2 degenerates to the Klein four-group
        let e4 = base(BaseKind::Dihedral, 2);
        assert!(e4.is_abelian());
        assert_eq!(involution_count(&e4), 3);
    }

    #[test]
    fn semidihedral_relation_holds() {
        let sd = base(BaseKind::Semidihedral, 2);
        let v = sd.parse("v").unwrap();
        let w = sd.parse("w").unwrap();
        assert_eq!(sd.element_order(v), 8);
        assert_eq!(sd.conjugate(w, v), sd.parse("v^3").unwrap());
        assert_eq!(involution_count(&sd), 5);
    }

    #[test]
    fn central_product_has_expected_order_and_relations() {
        for t in 2..5 {
            let g = base(BaseKind::CentralProductDihedral, t);
            assert_eq!(g.order(), 1 << (2 * t + 1));
            let k = g.parse("k").unwrap();
            assert_eq!(g.element_order(k), 2);
            let h = g.parse("h").unwrap();
            assert_eq!(g.element_order(h), 2);
            let d = g.parse("d").unwrap();
            assert_eq!(g.element_order(d), 1 << t);
        }
    }

    #[test]
    fn format_parse_round_trip_on_all_elements() {
        for spec in [
            BaseGroupSpec::new(BaseKind::Quaternion, 3),
            BaseGroupSpec::new(BaseKind::Semidihedral, 2),
            BaseGroupSpec::new(BaseKind::CentralProductDihedral, 2),
            BaseGroupSpec::new(BaseKind::ElemAbelian, 3),
        ] {
            let g = build_base(spec).unwrap();
            for x in 0..g.order() as u32 {
                assert_eq!(g.parse(&g.format(x)).unwrap(), x);
            }
        }
    }

    #[test]
    fn below_minimum_parameter_is_rejected() {
        assert!(matches!(
            build_base(BaseGroupSpec::new(BaseKind::Dihedral, 1)),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(
            build_base(BaseGroupSpec::new(BaseKind::Quaternion, 1)),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn kind_aliases_parse() {
        assert_eq!("q8".parse::<BaseKind>().unwrap(), BaseKind::Quaternion);
        assert_eq!("sd16".parse::<BaseKind>().unwrap(), BaseKind::Semidihedral);
        assert_eq!("d".parse::<BaseKind>().unwrap(), BaseKind::Dihedral);
        assert!("x".parse::<BaseKind>().is_err());
    }

    #[test]
    fn every_twisting_action_verifies() {
        for kind in TwistKind::ALL {
            for t in 2..4 {
                let tg = Arc::new(build_base(kind.base_spec(t)).unwrap());
                let rg = Arc::new(build_base(kind.twisting_spec(t)).unwrap());
                let tr = semidirect_product(&tg, &rg, &kind.action()).unwrap();
                assert_eq!(tr.order(), tg.order() * rg.order(), "{kind:?} t={t}");
            }
        }
    }
}
