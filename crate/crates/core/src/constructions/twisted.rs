use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constructions::MonomialBackend;
use crate::descriptor::Descriptor;
use crate::error::{Error, Result};
use crate::group::{
    semidirect_from_backend, ActionSpec, Backend, Element, Group, ProductBackend,
    SemidirectBackend, Subgroup,
};
use crate::presentations::{build_base, BaseGroupSpec, BaseKind, TwistKind};

/// `n = 2^{m_1} + … + 2^{m_u}` with `m_1 < … < m_u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdicDecomposition {
    pub digits: Vec<u32>,
}

impl AdicDecomposition {
    pub fn of(n: usize) -> Self {
        AdicDecomposition {
            digits: (0..usize::BITS).filter(|&i| n >> i & 1 == 1).collect(),
        }
    }

    pub fn u(&self) -> usize {
        self.digits.len()
    }

    pub fn total(&self) -> usize {
        self.digits.iter().map(|&m| 1usize << m).sum()
    }

    /// First block of each component.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.u());
        let mut acc = 0;
        for &m in &self.digits {
            out.push(acc);
            acc += 1 << m;
        }
        out
    }
}

/// `T`, `R`, the action, and the label group `TR` that monomial labels
/// live in. Without a twist the label group is `T` itself.
#[derive(Debug)]
pub struct TwistParams {
    t: Arc<Group>,
    r: Arc<Group>,
    labels: Arc<Group>,
    t_embed: Vec<u32>,
    r_embed: Vec<u32>,
    t_part: Vec<u32>,
    r_part: Vec<u32>,
}

impl TwistParams {
    pub fn new(t: Arc<Group>, r: Arc<Group>, act: &ActionSpec) -> Result<Self> {
        Self::from_semidirect(SemidirectBackend::new(t, r, act)?)
    }

    /// One of the named actions at parameter `t`; the label group carries
    /// a rebuildable descriptor.
    pub fn from_kind(kind: TwistKind, t: u32) -> Result<Self> {
        if t < 2 {
            return Err(Error::BadParameter(format!("twisting actions need t >= 2, got {t}")));
        }
        let tg = Arc::new(build_base(kind.base_spec(t))?);
        let rg = Arc::new(build_base(kind.twisting_spec(t))?);
        let backend =
            SemidirectBackend::new(tg, rg, &kind.action())?.with_descriptor(Descriptor::Twist(kind, t));
        Self::from_semidirect(backend)
    }

    fn from_semidirect(backend: SemidirectBackend) -> Result<Self> {
        let t = backend.normal_factor().clone();
        let r = backend.acting_factor().clone();
        let labels = Arc::new(semidirect_from_backend(backend)?);
        let t_embed = (0..t.order() as u32)
            .map(|i| labels.index_of(&[i, 0]).expect("T embeds"))
            .collect();
        let r_embed = (0..r.order() as u32)
            .map(|i| labels.index_of(&[0, i]).expect("R embeds"))
            .collect();
        let t_part = labels.elements().iter().map(|e| e.words()[0]).collect();
        let r_part = labels.elements().iter().map(|e| e.words()[1]).collect();
        Ok(TwistParams {
            t,
            r,
            labels,
            t_embed,
            r_embed,
            t_part,
            r_part,
        })
    }

    /// `R = 1`: labels are elements of `T` directly.
    pub fn untwisted(t: Arc<Group>) -> Self {
        let n = t.order() as u32;
        let r = Arc::new(build_base(BaseGroupSpec::new(BaseKind::ElemAbelian, 0)).expect("trivial group"));
        TwistParams {
            labels: t.clone(),
            t,
            r,
            t_embed: (0..n).collect(),
            r_embed: vec![0],
            t_part: (0..n).collect(),
            r_part: vec![0; n as usize],
        }
    }

    pub fn t_group(&self) -> &Arc<Group> {
        &self.t
    }

    pub fn r_group(&self) -> &Arc<Group> {
        &self.r
    }

    pub fn label_group(&self) -> &Arc<Group> {
        &self.labels
    }

    pub fn embed_t(&self, t: u32) -> u32 {
        self.t_embed[t as usize]
    }

    pub fn embed_r(&self, r: u32) -> u32 {
        self.r_embed[r as usize]
    }

    /// `T`-component of a label (`t` in `t·r`).
    pub fn t_part(&self, label: u32) -> u32 {
        self.t_part[label as usize]
    }

    /// `R`-component of a label.
    pub fn r_part(&self, label: u32) -> u32 {
        self.r_part[label as usize]
    }

    pub fn is_twisted(&self) -> bool {
        self.r.order() > 1
    }

    fn t_gens(&self) -> Vec<u32> {
        self.t.generators().iter().map(|&g| self.embed_t(g)).collect()
    }

    /// Labels `r` whose diagonal generators are needed: the generators of
    /// `R` when `R` is abelian (then `r ↦ diag(r, r^-1)` is a homomorphism),
    /// every nontrivial element otherwise.
    fn r_gens(&self) -> Vec<u32> {
        if self.r.is_abelian() {
            self.r.generators().iter().map(|&g| self.embed_r(g)).collect()
        } else {
            (1..self.r.order() as u32).map(|g| self.embed_r(g)).collect()
        }
    }
}

/// Which of the generator families of a twisted wreath product are used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// `w_n(T, R, J)`.
    Full,
    /// `w_n(T, R, 1)`: no block swaps.
    ROnly,
    /// `w_n(T, 1, J)`: the ordinary iterated wreath product.
    JOnly,
    /// `w_n(T, 1, 1)`: `2^n` copies of `T`.
    Plain,
    /// `w_n(1, 1, J)`: block permutations only.
    PermOnly,
}

impl Variant {
    pub const ALL: [Variant; 5] = [
        Variant::Full,
        Variant::ROnly,
        Variant::JOnly,
        Variant::Plain,
        Variant::PermOnly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Full => "J-full",
            Variant::ROnly => "R-only",
            Variant::JOnly => "J-only",
            Variant::Plain => "plain",
            Variant::PermOnly => "perm-only",
        }
    }

    fn uses_t(self) -> bool {
        self != Variant::PermOnly
    }

    fn uses_r(self) -> bool {
        matches!(self, Variant::Full | Variant::ROnly)
    }

    fn uses_j(self) -> bool {
        matches!(self, Variant::Full | Variant::JOnly | Variant::PermOnly)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::parse(format!("unknown variant `{s}`")))
    }
}

/// Generators of `w_level` (in the given variant) on blocks
/// `offset .. offset + 2^level` of `m`.
///
/// With swaps present only the first copy of each lower-level generator is
/// listed; the other copies are conjugates under the swaps.
pub fn wreath_generators(
    p: &TwistParams,
    m: &MonomialBackend,
    offset: usize,
    level: u32,
    variant: Variant,
) -> Vec<Element> {
    let size = 1usize << level;
    assert!(offset + size <= m.blocks());
    let with_j = variant.uses_j();
    let mut gens = Vec::new();
    if variant.uses_t() {
        let blocks: Vec<usize> = if with_j {
            vec![offset]
        } else {
            (offset..offset + size).collect()
        };
        for &b in &blocks {
            for &t in &p.t_gens() {
                gens.push(m.diagonal_at(b, t));
            }
        }
    }
    if variant.uses_r() {
        let lg = p.label_group();
        for k in 0..level {
            let half = 1usize << k;
            let starts: Vec<usize> = if with_j {
                vec![offset]
            } else {
                (offset..offset + size).step_by(2 * half).collect()
            };
            for &s in &starts {
                for &r in &p.r_gens() {
                    // diag(d_k(r), d_k(r)^-1)
                    let mut labels = vec![0; m.blocks()];
                    labels[s] = r;
                    labels[s + half] = lg.inv(r);
                    gens.push(m.diagonal(&labels));
                }
            }
        }
    }
    if with_j {
        for k in 0..level {
            let half = 1usize << k;
            let mut perm: Vec<u32> = (0..m.blocks() as u32).collect();
            for j in 0..half {
                perm.swap(offset + j, offset + half + j);
            }
            gens.push(m.permutation(&perm));
        }
    }
    gens
}

/// `w_level(T, R, J)` (or a variant) as a monomial group over `2^level` blocks.
pub fn twisted_wreath(p: &TwistParams, level: u32, variant: Variant, cap: usize) -> Result<Group> {
    if level > 16 {
        return Err(Error::CapExceeded { cap });
    }
    let m = MonomialBackend::new(1 << level, p.label_group().clone());
    let gens = wreath_generators(p, &m, 0, level, variant);
    Group::closure(Arc::new(m), gens, cap)
}

/// `Q ≀ Z_2` on two blocks.
pub fn wreath_z2(q: &Arc<Group>, cap: usize) -> Result<Group> {
    iterated_wreath(q, 1, cap)
}

/// `w_n(T) = w_{n-1}(T) ≀ Z_2` on `2^n` blocks; level 0 is `T` on one block.
pub fn iterated_wreath(t: &Arc<Group>, level: u32, cap: usize) -> Result<Group> {
    twisted_wreath(&TwistParams::untwisted(t.clone()), level, Variant::JOnly, cap)
}

/// `Q ≀ Z_p` on `p` blocks, generated by `Q` at the first block and the
/// block `p`-cycle.
pub fn wreath_cyclic(q: &Arc<Group>, p: usize, cap: usize) -> Result<Group> {
    iterated_cyclic_wreath(q, p, 1, cap)
}

/// `(…(Q ≀ Z_p) ≀ …) ≀ Z_p` with `levels` cyclic factors, on `p^levels` blocks.
pub fn iterated_cyclic_wreath(q: &Arc<Group>, p: usize, levels: u32, cap: usize) -> Result<Group> {
    if p < 2 {
        return Err(Error::BadParameter(format!("wreath degree must be >= 2, got {p}")));
    }
    let blocks = p
        .checked_pow(levels)
        .filter(|&b| b <= 1 << 16)
        .ok_or(Error::CapExceeded { cap })?;
    let m = MonomialBackend::new(blocks, q.clone());
    let mut gens: Vec<Element> = q.generators().iter().map(|&g| m.diagonal_at(0, g)).collect();
    for k in 0..levels {
        let span = p.pow(k);
        let mut perm: Vec<u32> = (0..blocks as u32).collect();
        for j in 0..p * span {
            perm[j] = ((j + span) % (p * span)) as u32;
        }
        gens.push(m.permutation(&perm));
    }
    Group::closure(Arc::new(m), gens, cap)
}

/// Parts of `S(T,R,J)` that can be built as separate groups on the same
/// block layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SPart {
    /// `S(T,R,J) = W(T,R,J) ⋊ U(R)`.
    Full,
    /// `S(T,R,1) = W(T,R,1) ⋊ U(R)`.
    NoSwaps,
    /// `W(T,R,J)`.
    W,
    /// `W(1,1,J)`.
    Permutations,
    /// `W(T,1,1)`, the direct product of `n` copies of `T`.
    Base,
    /// `U(R)`.
    Linking,
}

/// Generators of `U(R)`: for consecutive components `i, i+1`, the diagonal
/// with `r` at the first block of each.
pub fn linking_generators(p: &TwistParams, m: &MonomialBackend, decomp: &AdicDecomposition) -> Vec<Element> {
    let offsets = decomp.offsets();
    let mut gens = Vec::new();
    for i in 0..decomp.u().saturating_sub(1) {
        for &r in &p.r_gens() {
            let mut labels = vec![0; m.blocks()];
            labels[offsets[i]] = r;
            labels[offsets[i + 1]] = r;
            gens.push(m.diagonal(&labels));
        }
    }
    gens
}

pub fn s_generators(p: &TwistParams, m: &MonomialBackend, decomp: &AdicDecomposition, part: SPart) -> Vec<Element> {
    let variant = match part {
        SPart::Full | SPart::W => Variant::Full,
        SPart::NoSwaps => Variant::ROnly,
        SPart::Permutations => Variant::PermOnly,
        SPart::Base => Variant::Plain,
        SPart::Linking => {
            return linking_generators(p, m, decomp);
        }
    };
    let mut gens = Vec::new();
    for (&mi, &off) in decomp.digits.iter().zip(&decomp.offsets()) {
        gens.extend(wreath_generators(p, m, off, mi, variant));
    }
    if matches!(part, SPart::Full | SPart::NoSwaps) {
        gens.extend(linking_generators(p, m, decomp));
    }
    gens
}

/// `U(R)` for the 2-adic layout of `n`; trivial when `n` is a power of 2.
pub fn build_u(p: &TwistParams, n: usize, cap: usize) -> Result<Group> {
    build_s_part(p, n, SPart::Linking, cap)
}

/// `S(T,R,J)` over `n` blocks.
pub fn build_s(p: &TwistParams, n: usize, cap: usize) -> Result<Group> {
    build_s_part(p, n, SPart::Full, cap)
}

pub fn build_s_part(p: &TwistParams, n: usize, part: SPart, cap: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::BadParameter("S(T,R,J) needs n >= 1".into()));
    }
    let decomp = AdicDecomposition::of(n);
    let m = MonomialBackend::new(n, p.label_group().clone());
    let gens = s_generators(p, &m, &decomp, part);
    Group::closure(Arc::new(m), gens, cap)
}

/// Locates a group built on the same backend layout inside `g`.
pub fn embedded_subgroup(g: &Group, h: &Group) -> Result<Subgroup> {
    let gens = h
        .generator_elements()
        .iter()
        .map(|e| g.index_of(e.words()).ok_or(Error::ContextMismatch))
        .collect::<Result<Vec<u32>>>()?;
    Ok(g.subgroup(&gens))
}

/// The group `V = ⟨S, d(e)x, d(f)y⟩ = S ⋊ D` for `Ω_{2n}` with `n` odd,
/// where `S = S(T,R,J)` is built from the central product of dihedral
/// groups over `(n-1)/2` blocks and `⟨x, y⟩` is dihedral of order
/// `2^(t+1)` with `xy` of order `2^t`.
pub fn build_omega_even_odd(t: u32, n: usize, cap: usize) -> Result<Group> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::UnsupportedCase(format!("V needs odd n >= 3, got {n}")));
    }
    let p = TwistParams::from_kind(TwistKind::OmegaEven, t)?;
    let blocks = (n - 1) / 2;
    let m = Arc::new(MonomialBackend::new(blocks, p.label_group().clone()));
    let s_gens = s_generators(&p, &m, &AdicDecomposition::of(blocks), SPart::Full);
    let d = build_base(BaseGroupSpec::new(BaseKind::Dihedral, t + 1))?;
    let x = d.parse("w")?;
    let y = d.parse("w*v")?;
    let pb = ProductBackend::new(vec![m.clone() as Arc<dyn Backend>, d.backend().clone()]);
    let r = p.r_group();
    let e = p.embed_r(r.parse("e")?);
    let f = p.embed_r(r.parse("f")?);
    let mut gens: Vec<Element> = s_gens.iter().map(|g| pb.inject(0, g)).collect();
    gens.push(pb.combine(&[m.diagonal_at(0, e), d.element(x).clone()]));
    gens.push(pb.combine(&[m.diagonal_at(0, f), d.element(y).clone()]));
    Group::closure(Arc::new(pb), gens, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    fn base(kind: BaseKind, t: u32) -> Arc<Group> {
        Arc::new(build_base(BaseGroupSpec::new(kind, t)).unwrap())
    }

    #[test]
    fn adic_digits() {
        assert_eq!(AdicDecomposition::of(1).digits, vec![0]);
        assert_eq!(AdicDecomposition::of(6).digits, vec![1, 2]);
        assert_eq!(AdicDecomposition::of(7).digits, vec![0, 1, 2]);
        assert_eq!(AdicDecomposition::of(6).offsets(), vec![0, 2]);
        for n in 1..200 {
            assert_eq!(AdicDecomposition::of(n).total(), n);
        }
    }

    #[test]
    fn wreath_orders() {
        let z2 = base(BaseKind::Cyclic, 1);
        assert_eq!(wreath_z2(&z2, DEFAULT_CAP).unwrap().order(), 8);
        assert_eq!(iterated_wreath(&z2, 2, DEFAULT_CAP).unwrap().order(), 128);
        let q8 = base(BaseKind::Quaternion, 2);
        assert_eq!(iterated_wreath(&q8, 0, DEFAULT_CAP).unwrap().order(), 8);
        assert_eq!(wreath_z2(&q8, DEFAULT_CAP).unwrap().order(), 128);
    }

    #[test]
    fn cap_is_enforced() {
        let q8 = base(BaseKind::Quaternion, 2);
        assert_eq!(
            wreath_z2(&q8, 100).unwrap_err(),
            Error::CapExceeded { cap: 100 }
        );
    }

    #[test]
    fn twisted_wreath_first_level_order() {
        let p = TwistParams::from_kind(TwistKind::SlSuFirst, 2).unwrap();
        let w1 = twisted_wreath(&p, 1, Variant::Full, DEFAULT_CAP).unwrap();
        assert_eq!(w1.order(), 256);
    }

    #[test]
    fn variants_have_expected_orders() {
        let q8 = base(BaseKind::Quaternion, 2);
        let p = TwistParams::from_kind(TwistKind::SlSuFirst, 2).unwrap();
        let j_only = twisted_wreath(&p, 2, Variant::JOnly, DEFAULT_CAP).unwrap();
        let plain_wreath = iterated_wreath(&q8, 2, DEFAULT_CAP).unwrap();
        assert_eq!(j_only.order(), plain_wreath.order());
        let plain = twisted_wreath(&p, 2, Variant::Plain, DEFAULT_CAP).unwrap();
        assert_eq!(plain.order(), 8usize.pow(4));
        let perm = twisted_wreath(&p, 2, Variant::PermOnly, DEFAULT_CAP).unwrap();
        assert_eq!(perm.order(), 8);
    }

    #[test]
    fn linking_group_orders() {
        let p = TwistParams::from_kind(TwistKind::SlSuFirst, 2).unwrap();
        assert_eq!(build_u(&p, 4, DEFAULT_CAP).unwrap().order(), 1);
        assert_eq!(build_u(&p, 3, DEFAULT_CAP).unwrap().order(), 2);
        let p3 = TwistParams::from_kind(TwistKind::SlSuSecond, 3).unwrap();
        assert_eq!(build_u(&p3, 3, DEFAULT_CAP).unwrap().order(), 8);
    }

    #[test]
    fn s_of_one_block_is_t() {
        let p = TwistParams::from_kind(TwistKind::OmegaOdd, 3).unwrap();
        assert_eq!(build_s(&p, 1, DEFAULT_CAP).unwrap().order(), 8);
    }

    #[test]
    fn omega_even_odd_group_order() {
        let v = build_omega_even_odd(2, 3, DEFAULT_CAP).unwrap();
        assert_eq!(v.order(), 256);
    }
}
