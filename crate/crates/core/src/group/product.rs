use std::any::Any;
use std::sync::Arc;

use crate::descriptor::Descriptor;
use crate::error::{Error, Result};
use crate::group::{Backend, Element, Group};

/// Componentwise multiplication on concatenated encodings.
#[derive(Debug)]
pub struct ProductBackend {
    parts: Vec<Arc<dyn Backend>>,
    offsets: Vec<usize>,
}

impl ProductBackend {
    pub fn new(parts: Vec<Arc<dyn Backend>>) -> Self {
        let mut offsets = vec![0];
        for p in &parts {
            offsets.push(offsets.last().unwrap() + p.width());
        }
        ProductBackend { parts, offsets }
    }

    pub fn parts(&self) -> &[Arc<dyn Backend>] {
        &self.parts
    }

    /// Component `i` of an encoded element.
    pub fn project<'a>(&self, a: &'a [u32], i: usize) -> &'a [u32] {
        &a[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn combine(&self, parts: &[Element]) -> Element {
        Element::new(parts.iter().flat_map(|p| p.words().iter().copied()).collect())
    }

    /// Embeds an element of component `i`, identity elsewhere.
    pub fn inject(&self, i: usize, e: &Element) -> Element {
        let parts: Vec<Element> = self
            .parts
            .iter()
            .enumerate()
            .map(|(j, p)| if j == i { e.clone() } else { p.identity() })
            .collect();
        self.combine(&parts)
    }
}

impl Backend for ProductBackend {
    fn kind(&self) -> &'static str {
        "product"
    }

    fn width(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn identity(&self) -> Element {
        let ids: Vec<Element> = self.parts.iter().map(|p| p.identity()).collect();
        self.combine(&ids)
    }

    fn multiply_into(&self, a: &[u32], b: &[u32], out: &mut Vec<u32>) {
        out.clear();
        let mut tmp = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            p.multiply_into(self.project(a, i), self.project(b, i), &mut tmp);
            out.extend_from_slice(&tmp);
        }
    }

    fn inverse(&self, a: &[u32]) -> Element {
        let inv: Vec<Element> = self
            .parts
            .iter()
            .enumerate()
            .map(|(i, p)| p.inverse(self.project(a, i)))
            .collect();
        self.combine(&inv)
    }

    fn format(&self, a: &[u32]) -> String {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, p)| format!("{{{}}}", p.format(self.project(a, i))))
            .collect()
    }

    fn parse(&self, s: &str) -> Result<Element> {
        let s = s.trim();
        let mut comps = Vec::new();
        let mut depth = 0i32;
        let mut start = None;
        for (i, c) in s.char_indices() {
            match c {
                '{' => {
                    if depth == 0 {
                        start = Some(i + 1);
                    }
                    depth += 1;
                }
                '}' => {
                    depth -= 1;
                    if depth == 0 {
                        comps.push(&s[start.take().unwrap()..i]);
                    }
                }
                c if depth == 0 && !c.is_whitespace() => {
                    return Err(Error::parse(format!("unexpected `{c}` in product element")))
                }
                _ => {}
            }
        }
        if depth != 0 || comps.len() != self.parts.len() {
            return Err(Error::parse(format!(
                "product element needs {} braced components",
                self.parts.len()
            )));
        }
        let parts = comps
            .iter()
            .zip(&self.parts)
            .map(|(c, p)| p.parse(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.combine(&parts))
    }

    fn descriptor(&self) -> Option<Descriptor> {
        self.parts
            .iter()
            .map(|p| p.descriptor())
            .collect::<Option<Vec<_>>>()
            .map(Descriptor::Product)
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// `A × B` with componentwise multiplication.
pub fn direct_product(a: &Group, b: &Group, cap: usize) -> Result<Group> {
    direct_product_many(&[a, b], cap)
}

pub fn direct_product_many(factors: &[&Group], cap: usize) -> Result<Group> {
    let total = factors
        .iter()
        .try_fold(1usize, |acc, g| acc.checked_mul(g.order()))
        .unwrap_or(usize::MAX);
    if total > cap {
        return Err(Error::CapExceeded { cap });
    }
    let backend = ProductBackend::new(factors.iter().map(|g| g.backend().clone()).collect());
    let mut gens = Vec::new();
    for (i, g) in factors.iter().enumerate() {
        for e in g.generator_elements() {
            gens.push(backend.inject(i, &e));
        }
    }
    Group::closure(Arc::new(backend), gens, cap)
}

/// Projection of a product-group element onto factor `i`, as an element
/// of the factor's backend.
pub fn project(g: &Group, x: u32, i: usize) -> Option<Element> {
    let pb = g.backend().as_any().downcast_ref::<ProductBackend>()?;
    Some(Element::from_slice(pb.project(g.element(x).words(), i)))
}
