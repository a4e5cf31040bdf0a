use std::any::Any;
use std::sync::Arc;

use crate::descriptor::Descriptor;
use crate::error::{Error, Result};
use crate::group::word::split_top;
use crate::group::{Backend, Element, FastMul, Group};

/// Monomial matrices `P(π)·diag(a)` over an enumerated label group, with
/// `P(π)[i][j] = 1` iff `i = π(j)`.
///
/// The encoding is `[π(0), …, π(N-1), a_0, …, a_{N-1}]` where the labels
/// are indices into the label group. Products follow
/// `(π, a)(σ, b) = (π∘σ, c)`, `c_j = a_{σ(j)} b_j`.
#[derive(Debug, Clone)]
pub struct MonomialBackend {
    blocks: usize,
    labels: FastMul,
}

impl MonomialBackend {
    pub fn new(blocks: usize, labels: Arc<Group>) -> Self {
        assert!(blocks >= 1, "monomial groups need at least one block");
        MonomialBackend {
            blocks,
            labels: FastMul::new(labels),
        }
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn label_group(&self) -> &Arc<Group> {
        self.labels.group()
    }

    pub fn element(&self, perm: &[u32], labels: &[u32]) -> Element {
        debug_assert_eq!(perm.len(), self.blocks);
        debug_assert_eq!(labels.len(), self.blocks);
        let mut w = Vec::with_capacity(2 * self.blocks);
        w.extend_from_slice(perm);
        w.extend_from_slice(labels);
        Element::new(w)
    }

    /// `diag(1, …, a at block i, …, 1)`.
    pub fn diagonal_at(&self, block: usize, label: u32) -> Element {
        let mut labels = vec![0; self.blocks];
        labels[block] = label;
        self.diagonal(&labels)
    }

    pub fn diagonal(&self, labels: &[u32]) -> Element {
        let perm: Vec<u32> = (0..self.blocks as u32).collect();
        self.element(&perm, labels)
    }

    /// Pure block permutation, given as the image list.
    pub fn permutation(&self, perm: &[u32]) -> Element {
        self.element(perm, &vec![0; self.blocks])
    }

    pub fn perm<'a>(&self, a: &'a [u32]) -> &'a [u32] {
        &a[..self.blocks]
    }

    pub fn labels<'a>(&self, a: &'a [u32]) -> &'a [u32] {
        &a[self.blocks..]
    }

    /// Re-embeds an element of a monomial group with fewer blocks at a
    /// block offset (identity elsewhere).
    pub fn embed(&self, inner: &MonomialBackend, a: &[u32], offset: usize) -> Element {
        let n = inner.blocks;
        assert!(offset + n <= self.blocks);
        let mut perm: Vec<u32> = (0..self.blocks as u32).collect();
        let mut labels = vec![0; self.blocks];
        for j in 0..n {
            perm[offset + j] = offset as u32 + inner.perm(a)[j];
            labels[offset + j] = inner.labels(a)[j];
        }
        self.element(&perm, &labels)
    }

    fn format_perm(&self, perm: &[u32]) -> String {
        let mut seen = vec![false; self.blocks];
        let mut out = String::new();
        for start in 0..self.blocks {
            if seen[start] || perm[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push((j + 1).to_string());
                j = perm[j] as usize;
            }
            out.push('(');
            out.push_str(&cycle.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    fn parse_perm(&self, s: &str) -> Result<Vec<u32>> {
        let mut perm: Vec<u32> = (0..self.blocks as u32).collect();
        let mut moved = vec![false; self.blocks];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::parse(format!("bad cycle notation `{s}`")))?;
            let points = body
                .0
                .split_whitespace()
                .map(|p| match p.parse::<usize>() {
                    Ok(k) if (1..=self.blocks).contains(&k) => Ok(k - 1),
                    _ => Err(Error::parse(format!("bad block index `{p}`"))),
                })
                .collect::<Result<Vec<_>>>()?;
            for (i, &p) in points.iter().enumerate() {
                if std::mem::replace(&mut moved[p], true) {
                    return Err(Error::parse(format!("block {} repeated in `{s}`", p + 1)));
                }
                perm[p] = points[(i + 1) % points.len()] as u32;
            }
            rest = body.1.trim_start();
        }
        Ok(perm)
    }
}

impl Backend for MonomialBackend {
    fn kind(&self) -> &'static str {
        "monomial"
    }

    fn width(&self) -> usize {
        2 * self.blocks
    }

    fn identity(&self) -> Element {
        self.diagonal(&vec![0; self.blocks])
    }

    fn multiply_into(&self, a: &[u32], b: &[u32], out: &mut Vec<u32>) {
        let n = self.blocks;
        out.clear();
        out.extend((0..n).map(|j| a[b[j] as usize]));
        out.extend((0..n).map(|j| self.labels.mul(a[n + b[j] as usize], b[n + j])));
    }

    fn inverse(&self, a: &[u32]) -> Element {
        let n = self.blocks;
        let mut w = vec![0u32; 2 * n];
        for j in 0..n {
            w[a[j] as usize] = j as u32;
        }
        // c_j = a_{π^-1(j)}^-1
        for j in 0..n {
            let pj = w[j] as usize;
            w[n + j] = self.labels.inv(a[n + pj]);
        }
        Element::new(w)
    }

    fn format(&self, a: &[u32]) -> String {
        let g = self.labels.group();
        let labels: Vec<String> = self.labels(a).iter().map(|&x| g.format(x)).collect();
        format!("{} [{}]", self.format_perm(self.perm(a)), labels.join(", "))
    }

    fn parse(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        let (perm_part, label_part) = s
            .split_once('[')
            .ok_or_else(|| Error::parse(format!("monomial element `{s}` lacks labels")))?;
        let label_part = label_part
            .trim_end()
            .strip_suffix(']')
            .ok_or_else(|| Error::parse(format!("unterminated labels in `{s}`")))?;
        let perm = self.parse_perm(perm_part)?;
        let items = split_top(label_part, ',');
        if items.len() != self.blocks {
            return Err(Error::parse(format!(
                "{} labels given for {} blocks",
                items.len(),
                self.blocks
            )));
        }
        let g = self.labels.group();
        let labels = items
            .iter()
            .map(|x| g.parse(x.trim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.element(&perm, &labels))
    }

    fn descriptor(&self) -> Option<Descriptor> {
        let labels = self.labels.group().backend().descriptor()?;
        Some(Descriptor::Monomial {
            blocks: self.blocks,
            labels: Box::new(labels),
        })
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{build_base, BaseGroupSpec, BaseKind};

    fn q8() -> Arc<Group> {
        Arc::new(build_base(BaseGroupSpec::new(BaseKind::Quaternion, 2)).unwrap())
    }

    /// 2×2 monomial matrices as explicit entry grids (None = 0).
    type Grid = [[Option<u32>; 2]; 2];

    fn to_grid(m: &MonomialBackend, a: &[u32]) -> Grid {
        let mut g = [[None; 2]; 2];
        for j in 0..2 {
            let i = m.perm(a)[j] as usize;
            g[i][j] = Some(m.labels(a)[j]);
        }
        g
    }

    fn grid_mul(t: &Group, x: &Grid, y: &Grid) -> Grid {
        let mut out = [[None; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    if let (Some(p), Some(q)) = (x[i][k], y[k][j]) {
                        assert!(out[i][j].is_none(), "monomial product has one term per entry");
                        out[i][j] = Some(t.mul(p, q));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn products_match_explicit_matrices() {
        let t = q8();
        let m = MonomialBackend::new(2, t.clone());
        let mut sample = Vec::new();
        for perm in [[0u32, 1], [1, 0]] {
            for a in 0..t.order() as u32 {
                for b in [0u32, 1, 3, 6] {
                    sample.push(m.element(&perm, &[a, b]));
                }
            }
        }
        for x in &sample {
            for y in &sample {
                let prod = m.multiply(x.words(), y.words());
                let expect = grid_mul(&t, &to_grid(&m, x.words()), &to_grid(&m, y.words()));
                assert_eq!(to_grid(&m, prod.words()), expect);
            }
        }
    }

    #[test]
    fn inverse_and_format_round_trip() {
        let t = q8();
        let m = MonomialBackend::new(3, t.clone());
        let x = m.element(&[2, 0, 1], &[1, 5, 7]);
        let xi = m.inverse(x.words());
        assert_eq!(m.multiply(x.words(), xi.words()), m.identity());
        assert_eq!(m.multiply(xi.words(), x.words()), m.identity());
        let text = m.format(x.words());
        assert!(text.starts_with("(1 3 2) ["), "{text}");
        assert_eq!(m.parse(&text).unwrap(), x);
        assert_eq!(m.parse(&m.format(m.identity().words())).unwrap(), m.identity());
    }

    #[test]
    fn malformed_text_is_rejected() {
        let m = MonomialBackend::new(2, q8());
        assert!(m.parse("(1 2)").is_err());
        assert!(m.parse("(1 3) [1, 1]").is_err());
        assert!(m.parse("() [1]").is_err());
        assert!(m.parse("(1 2)(2) [1, 1]").is_err());
    }
}
