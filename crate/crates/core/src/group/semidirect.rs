use std::any::Any;
use std::sync::Arc;

use crate::descriptor::Descriptor;
use crate::error::{Error, Result};
use crate::group::{word, Backend, Element, FastMul, Group};

/// Action of `R` on `T` by automorphisms, given on generators.
///
/// `images[i][j]` is the word (over `T`'s generator names) for
/// `r_i t_j r_i^-1`, where `r_i`, `t_j` are the generators of `R` and `T`
/// in their declared order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    pub images: Vec<Vec<String>>,
}

impl ActionSpec {
    pub fn new<S: AsRef<str>>(images: &[&[S]]) -> Self {
        ActionSpec {
            images: images
                .iter()
                .map(|row| row.iter().map(|s| s.as_ref().to_string()).collect())
                .collect(),
        }
    }

    /// Every generator of `R` acts trivially.
    pub fn trivial(t: &Group, r: &Group) -> Self {
        let row: Vec<String> = t.generators().iter().map(|&g| t.format(g)).collect();
        ActionSpec {
            images: vec![row; r.generators().len()],
        }
    }
}

/// Pairs `(t, r)` over enumerated `T` and `R` with
/// `(t1, r1)(t2, r2) = (t1 · r1(t2), r1 r2)`.
#[derive(Debug)]
pub struct SemidirectBackend {
    t: FastMul,
    r: FastMul,
    /// Per element of `R`, the induced permutation of `T`'s indices.
    auts: Vec<Vec<u32>>,
    descriptor: Option<Descriptor>,
}

impl SemidirectBackend {
    /// Builds the backend, verifying that `act` defines a homomorphism
    /// `R -> Aut(T)`.
    pub fn new(t: Arc<Group>, r: Arc<Group>, act: &ActionSpec) -> Result<Self> {
        if act.images.len() != r.generators().len() {
            return Err(Error::InvalidAction(format!(
                "{} image rows for {} generators of R",
                act.images.len(),
                r.generators().len()
            )));
        }
        let t_mul = FastMul::new(t.clone());
        let gen_auts = act
            .images
            .iter()
            .map(|row| generator_automorphism(&t, &t_mul, row))
            .collect::<Result<Vec<_>>>()?;

        // Extend along R: the automorphism of r·g is aut(r) ∘ aut(g).
        let n_r = r.order();
        let mut auts: Vec<Option<Vec<u32>>> = vec![None; n_r];
        auts[0] = Some((0..t.order() as u32).collect());
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let ax = auts[x as usize].clone().unwrap();
            for (gi, &g) in r.generators().iter().enumerate() {
                let y = r.mul(x, g);
                let composed: Vec<u32> = gen_auts[gi].iter().map(|&s| ax[s as usize]).collect();
                match &auts[y as usize] {
                    Some(existing) if *existing != composed => {
                        return Err(Error::InvalidAction(
                            "generator images do not respect the relations of R".into(),
                        ))
                    }
                    Some(_) => {}
                    None => {
                        auts[y as usize] = Some(composed);
                        queue.push(y);
                    }
                }
            }
        }
        Ok(SemidirectBackend {
            t: t_mul,
            r: FastMul::new(r),
            auts: auts.into_iter().map(|a| a.unwrap()).collect(),
            descriptor: None,
        })
    }

    pub fn with_descriptor(mut self, d: Descriptor) -> Self {
        self.descriptor = Some(d);
        self
    }

    pub fn normal_factor(&self) -> &Arc<Group> {
        self.t.group()
    }

    pub fn acting_factor(&self) -> &Arc<Group> {
        self.r.group()
    }

    pub fn embed_t(&self, t: u32) -> Element {
        Element::new(vec![t, 0])
    }

    pub fn embed_r(&self, r: u32) -> Element {
        Element::new(vec![0, r])
    }

    /// `(T-index, R-index)` of an encoded element.
    pub fn split(&self, a: &[u32]) -> (u32, u32) {
        (a[0], a[1])
    }

    /// Image of `t` under the automorphism induced by `r`.
    pub fn act(&self, r: u32, t: u32) -> u32 {
        self.auts[r as usize][t as usize]
    }
}

/// Extends generator images to a map on all of `T`, failing if the
/// images violate a relation of `T` or the map is not bijective.
fn generator_automorphism(t: &Group, t_mul: &FastMul, row: &[String]) -> Result<Vec<u32>> {
    if row.len() != t.generators().len() {
        return Err(Error::InvalidAction(format!(
            "{} images for {} generators of T",
            row.len(),
            t.generators().len()
        )));
    }
    let images = row
        .iter()
        .map(|w| {
            t.parse(w)
                .map_err(|e| Error::InvalidAction(format!("image `{w}`: {e}")))
        })
        .collect::<Result<Vec<u32>>>()?;
    let n = t.order();
    let mut map = vec![u32::MAX; n];
    map[0] = 0;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (j, &g) in t.generators().iter().enumerate() {
            let y = t_mul.mul(x, g);
            let fy = t_mul.mul(map[x as usize], images[j]);
            if map[y as usize] == u32::MAX {
                map[y as usize] = fy;
                queue.push(y);
            } else if map[y as usize] != fy {
                return Err(Error::InvalidAction(
                    "generator images do not satisfy the relations of T".into(),
                ));
            }
        }
    }
    let mut hit = vec![false; n];
    for &m in &map {
        if std::mem::replace(&mut hit[m as usize], true) {
            return Err(Error::InvalidAction("induced map is not bijective".into()));
        }
    }
    Ok(map)
}

impl Backend for SemidirectBackend {
    fn kind(&self) -> &'static str {
        "semidirect"
    }

    fn width(&self) -> usize {
        2
    }

    fn identity(&self) -> Element {
        Element::new(vec![0, 0])
    }

    fn multiply_into(&self, a: &[u32], b: &[u32], out: &mut Vec<u32>) {
        out.clear();
        let twisted = self.auts[a[1] as usize][b[0] as usize];
        out.push(self.t.mul(a[0], twisted));
        out.push(self.r.mul(a[1], b[1]));
    }

    fn inverse(&self, a: &[u32]) -> Element {
        // (t, r)^-1 = (r^-1(t^-1), r^-1)
        let r_inv = self.r.inv(a[1]);
        let t_inv = self.t.inv(a[0]);
        Element::new(vec![self.auts[r_inv as usize][t_inv as usize], r_inv])
    }

    fn format(&self, a: &[u32]) -> String {
        let tg = self.t.group();
        let rg = self.r.group();
        word::join([tg.format(a[0]), rg.format(a[1])])
    }

    fn parse(&self, s: &str) -> Result<Element> {
        let tg = self.t.group().clone();
        let rg = self.r.group().clone();
        word::evaluate(self, s, |name| {
            if let Ok(i) = tg.parse(name) {
                Some(self.embed_t(i))
            } else {
                rg.parse(name).ok().map(|i| self.embed_r(i))
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

/// `T ⋊ R` for a verified action; `T` is embedded as a normal subgroup.
pub fn semidirect_product(t: &Arc<Group>, r: &Arc<Group>, act: &ActionSpec) -> Result<Group> {
    let backend = SemidirectBackend::new(t.clone(), r.clone(), act)?;
    semidirect_from_backend(backend)
}

pub fn semidirect_from_backend(backend: SemidirectBackend) -> Result<Group> {
    let mut gens: Vec<Element> = backend
        .t
        .group()
        .generators()
        .iter()
        .map(|&g| backend.embed_t(g))
        .collect();
    gens.extend(backend.r.group().generators().iter().map(|&g| backend.embed_r(g)));
    let order = backend.t.group().order() * backend.r.group().order();
    Group::closure(Arc::new(backend), gens, order)
}
