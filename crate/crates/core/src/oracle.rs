//! `GL(2,q)` as explicit matrices over a small prime field, brute-force
//! Sylow 2-subgroups, and isomorphism-invariant fingerprints.

use std::any::Any;
use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::descriptor::Descriptor;
use crate::error::{Error, Result};
use crate::group::{Backend, Element, Group};
use crate::rank::{normal_rank, rank};

fn is_prime(q: u32) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// 2×2 invertible matrices mod a prime `q`, stored row-major `[a, b, c, d]`.
#[derive(Debug, Clone)]
pub struct Mat2Backend {
    q: u32,
}

impl Mat2Backend {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q) || q == 2 || q > 11 {
            return Err(Error::BadParameter(format!(
                "matrix oracle needs an odd prime q <= 11, got {q}"
            )));
        }
        Ok(Mat2Backend { q })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn matrix(&self, a: u32, b: u32, c: u32, d: u32) -> Element {
        let q = self.q;
        Element::new(vec![a % q, b % q, c % q, d % q])
    }

    pub fn det(&self, m: &[u32]) -> u32 {
        let q = self.q;
        (m[0] * m[3] % q + q - m[1] * m[2] % q) % q
    }

    fn inv_mod(&self, x: u32) -> u32 {
        (1..self.q).find(|&y| x * y % self.q == 1).expect("nonzero residue")
    }

    /// Least primitive root mod `q`.
    pub fn primitive_root(&self) -> u32 {
        let q = self.q;
        (2..q)
            .find(|&z| {
                let mut x = 1;
                (1..q - 1).all(|_| {
                    x = x * z % q;
                    x != 1
                })
            })
            .unwrap_or(1)
    }
}

impl Backend for Mat2Backend {
    fn kind(&self) -> &'static str {
        "matrix"
    }

    fn width(&self) -> usize {
        4
    }

    fn identity(&self) -> Element {
        self.matrix(1, 0, 0, 1)
    }

    fn multiply_into(&self, a: &[u32], b: &[u32], out: &mut Vec<u32>) {
        let q = self.q;
        out.clear();
        out.push((a[0] * b[0] + a[1] * b[2]) % q);
        out.push((a[0] * b[1] + a[1] * b[3]) % q);
        out.push((a[2] * b[0] + a[3] * b[2]) % q);
        out.push((a[2] * b[1] + a[3] * b[3]) % q);
    }

    fn inverse(&self, a: &[u32]) -> Element {
        let q = self.q;
        let di = self.inv_mod(self.det(a));
        self.matrix(a[3] * di, (q - a[1]) * di, (q - a[2]) * di, a[0] * di)
    }

    fn format(&self, a: &[u32]) -> String {
        format!("[{} {}; {} {}]", a[0], a[1], a[2], a[3])
    }

    fn parse(&self, s: &str) -> Result<Element> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::parse(format!("expected `[a b; c d]`, got `{s}`")))?;
        let rows: Vec<&str> = inner.split(';').collect();
        let entries: Vec<u32> = rows
            .iter()
            .flat_map(|r| r.split_whitespace())
            .map(|x| x.parse::<u32>().map_err(|_| Error::parse(format!("bad entry `{x}`"))))
            .collect::<Result<_>>()?;
        if rows.len() != 2 || entries.len() != 4 || entries.iter().any(|&x| x >= self.q) {
            return Err(Error::parse(format!("expected 2x2 entries mod {}, got `{s}`", self.q)));
        }
        if self.det(&entries) == 0 {
            return Err(Error::parse(format!("singular matrix `{s}`")));
        }
        Ok(Element::new(entries))
    }

    fn descriptor(&self) -> Option<Descriptor> {
        Some(Descriptor::Gl2(self.q))
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// All of `GL(2,q)`, generated by the two elementary transvections and
/// `diag(ζ, 1)` for a primitive root `ζ`.
pub fn gl2(q: u32) -> Result<Group> {
    let m = Mat2Backend::new(q)?;
    let z = m.primitive_root();
    let gens = vec![m.matrix(1, 1, 0, 1), m.matrix(1, 0, 1, 1), m.matrix(z, 0, 0, 1)];
    Group::closure(Arc::new(m), gens, 1 << 16)
}

fn two_part(n: usize) -> usize {
    1 << n.trailing_zeros()
}

/// A Sylow 2-subgroup, grown one factor of 2 at a time inside the
/// normalizer of the current 2-subgroup. Deterministic: candidates are
/// scanned in index order.
pub fn sylow2(g: &Group) -> Group {
    let target = two_part(g.order());
    let mut p = g.subgroup(&[]);
    while p.order() < target {
        let normalizes = |x: u32| p.basis().iter().all(|&b| p.contains(g.conjugate(x, b)));
        let step = (1..g.order() as u32)
            .filter(|&x| !p.contains(x))
            .filter(|&x| normalizes(x))
            .find_map(|x| {
                // 2-part of x, then square down to an element of order 2 mod P
                let o = g.element_order(x);
                let odd = o >> o.trailing_zeros();
                let mut y = (1..odd).fold(x, |acc, _| g.mul(acc, x));
                if p.contains(y) {
                    return None;
                }
                loop {
                    let y2 = g.mul(y, y);
                    if p.contains(y2) {
                        return Some(y);
                    }
                    y = y2;
                }
            })
            .expect("a proper 2-subgroup has a 2-element of its normalizer outside it");
        let mut gens = p.basis().to_vec();
        gens.push(step);
        p = g.subgroup(&gens);
    }
    assert_eq!(p.order(), target);
    g.subgroup_as_group(&p)
}

/// Invariants that separate the small 2-groups compared by the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    /// Element order to number of elements of that order.
    pub order_histogram: BTreeMap<u32, usize>,
    pub center: usize,
    pub derived: usize,
    pub rank: u32,
    pub normal_rank: u32,
}

pub fn invariant_fingerprint(g: &Group) -> Fingerprint {
    let mut order_histogram = BTreeMap::new();
    for &o in g.element_orders() {
        *order_histogram.entry(o).or_insert(0) += 1;
    }
    let n = g.order() as u32;
    let mut comms: Vec<u32> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))))
        .collect();
    comms.sort_unstable();
    comms.dedup();
    let arc = Arc::new(g.clone());
    Fingerprint {
        order: g.order(),
        order_histogram,
        center: g.center().order(),
        derived: g.subgroup(&comms).order(),
        rank: rank(&arc).dimension,
        normal_rank: normal_rank(&arc).dimension,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{build_base, cyclic_of_order, BaseGroupSpec, BaseKind};

    #[test]
    fn gl2_orders() {
        assert_eq!(gl2(3).unwrap().order(), 48);
        assert_eq!(gl2(5).unwrap().order(), 480);
        assert_eq!(gl2(7).unwrap().order(), 2016);
    }

    #[test]
    fn bad_fields() {
        for q in [0, 1, 2, 4, 9, 13] {
            assert!(matches!(gl2(q), Err(Error::BadParameter(_))), "q = {q}");
        }
    }

    #[test]
    fn matrix_text_round_trip() {
        let g = gl2(5).unwrap();
        for i in (0..g.order() as u32).step_by(37) {
            assert_eq!(g.parse(&g.format(i)).unwrap(), i);
        }
        let m = Mat2Backend::new(5).unwrap();
        assert!(m.parse("[1 2; 2 4]").is_err());
        assert!(m.parse("[1 2 3]").is_err());
        assert!(m.parse("[1 5; 0 1]").is_err());
    }

    #[test]
    fn sylow_orders() {
        assert_eq!(sylow2(&gl2(3).unwrap()).order(), 16);
        assert_eq!(sylow2(&gl2(5).unwrap()).order(), 32);
        assert_eq!(sylow2(&cyclic_of_order(12).unwrap()).order(), 4);
    }

    #[test]
    fn fingerprints_separate_order_sixteen() {
        let d = invariant_fingerprint(&build_base(BaseGroupSpec::new(BaseKind::Dihedral, 4)).unwrap());
        let q = invariant_fingerprint(&build_base(BaseGroupSpec::new(BaseKind::Quaternion, 3)).unwrap());
        let s = invariant_fingerprint(&build_base(BaseGroupSpec::new(BaseKind::Semidihedral, 2)).unwrap());
        assert_eq!((d.order, q.order, s.order), (16, 16, 16));
        assert_eq!(d.order_histogram[&2], 9);
        assert_eq!(s.order_histogram[&2], 5);
        assert_eq!(q.order_histogram[&2], 1);
    }
}
