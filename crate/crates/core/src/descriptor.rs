//! Text recipes that rebuild a multiplication backend, used by group files.
//!
//! Grammar:
//!
//! ```text
//! desc := trivial | cyclic(t) | zmod(m) | elem(k) | dihedral(t)
//!       | quaternion(t) | semidihedral(t) | central(t)
//!       | twist(action,t) | monomial(N,desc) | product(desc,desc,...) | gl2(q)
//! ```

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::constructions::{MonomialBackend, TwistParams};
use crate::error::{Error, Result};
use crate::group::word::split_top;
use crate::group::{direct_product_many, Backend, Group, ProductBackend, DEFAULT_CAP};
use crate::oracle::Mat2Backend;
use crate::presentations::{build_base, cyclic_of_order, BaseGroupSpec, BaseKind, TwistKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Descriptor {
    Base(BaseGroupSpec),
    ZMod(u32),
    Twist(TwistKind, u32),
    Monomial { blocks: usize, labels: Box<Descriptor> },
    Product(Vec<Descriptor>),
    Gl2(u32),
}

impl Descriptor {
    /// The group the descriptor names outright. Monomial descriptors only
    /// name an ambient backend, not a group.
    pub fn natural_group(&self) -> Result<Group> {
        match self {
            Descriptor::Base(spec) => build_base(spec.clone()),
            Descriptor::ZMod(m) => cyclic_of_order(*m),
            Descriptor::Twist(kind, t) => {
                let p = TwistParams::from_kind(*kind, *t)?;
                Ok((**p.label_group()).clone())
            }
            Descriptor::Product(parts) => {
                let groups = parts.iter().map(|d| d.natural_group()).collect::<Result<Vec<_>>>()?;
                let refs: Vec<&Group> = groups.iter().collect();
                direct_product_many(&refs, DEFAULT_CAP)
            }
            Descriptor::Gl2(q) => crate::oracle::gl2(*q),
            Descriptor::Monomial { .. } => Err(Error::UnsupportedCase(
                "a monomial descriptor names a backend, not a group".into(),
            )),
        }
    }

    pub fn backend(&self) -> Result<Arc<dyn Backend>> {
        match self {
            Descriptor::Monomial { blocks, labels } => {
                if *blocks == 0 {
                    return Err(Error::parse("monomial groups need at least one block"));
                }
                let labels = Arc::new(labels.natural_group()?);
                Ok(Arc::new(MonomialBackend::new(*blocks, labels)))
            }
            Descriptor::Product(parts) => {
                let parts = parts.iter().map(|d| d.backend()).collect::<Result<Vec<_>>>()?;
                Ok(Arc::new(ProductBackend::new(parts)))
            }
            Descriptor::Gl2(q) => Ok(Arc::new(Mat2Backend::new(*q)?)),
            _ => Ok(self.natural_group()?.backend().clone()),
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Base(spec) if spec.kind == BaseKind::ElemAbelian && spec.t == 0 => {
                f.write_str("trivial")
            }
            Descriptor::Base(spec) => write!(f, "{spec}"),
            Descriptor::ZMod(m) => write!(f, "zmod({m})"),
            Descriptor::Twist(kind, t) => write!(f, "twist({},{t})", kind.name()),
            Descriptor::Monomial { blocks, labels } => write!(f, "monomial({blocks},{labels})"),
            Descriptor::Product(parts) => {
                f.write_str("product(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            Descriptor::Gl2(q) => write!(f, "gl2({q})"),
        }
    }
}

fn number<T: FromStr>(s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(format!("expected a number, found `{s}`")))
}

impl FromStr for Descriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "trivial" {
            return Ok(Descriptor::Base(BaseGroupSpec::new(BaseKind::ElemAbelian, 0)));
        }
        let (head, rest) = s
            .split_once('(')
            .ok_or_else(|| Error::parse(format!("malformed descriptor `{s}`")))?;
        let body = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::parse(format!("unbalanced descriptor `{s}`")))?;
        let args = split_top(body, ',');
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(Error::parse(format!("`{head}` takes {n} arguments")))
            }
        };
        match head.trim() {
            "zmod" => {
                arity(1)?;
                let m = number(args[0])?;
                if m == 0 {
                    return Err(Error::parse("zmod(0) is not a group"));
                }
                Ok(Descriptor::ZMod(m))
            }
            "twist" => {
                arity(2)?;
                Ok(Descriptor::Twist(args[0].parse()?, number(args[1])?))
            }
            "monomial" => {
                arity(2)?;
                Ok(Descriptor::Monomial {
                    blocks: number(args[0])?,
                    labels: Box::new(args[1].parse()?),
                })
            }
            "product" => {
                if body.trim().is_empty() {
                    return Err(Error::parse("empty product"));
                }
                Ok(Descriptor::Product(
                    args.iter().map(|a| a.parse()).collect::<Result<_>>()?,
                ))
            }
            "gl2" => {
                arity(1)?;
                Ok(Descriptor::Gl2(number(args[0])?))
            }
            kind => {
                arity(1)?;
                let kind = match kind {
                    "cyclic" => BaseKind::Cyclic,
                    "elem" => BaseKind::ElemAbelian,
                    "dihedral" => BaseKind::Dihedral,
                    "quaternion" => BaseKind::Quaternion,
                    "semidihedral" => BaseKind::Semidihedral,
                    "central" => BaseKind::CentralProductDihedral,
                    other => return Err(Error::parse(format!("unknown descriptor `{other}`"))),
                };
                Ok(Descriptor::Base(BaseGroupSpec::new(kind, number(args[0])?)))
            }
        }
    }
}
