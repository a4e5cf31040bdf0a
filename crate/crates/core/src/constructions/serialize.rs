//! Plain-text group files.
//!
//! ```text
//! sylow2-group 1
//! descriptor monomial(2,quaternion(2))
//! blocks 2
//! labels quaternion(2)
//! order 128
//! generators 3
//! gen () [v, 1]
//! gen () [w, 1]
//! gen (1 2) [1, 1]
//! ```
//!
//! `blocks` and `labels` appear only for monomial groups and must agree
//! with the descriptor. Loading rebuilds the backend from the descriptor
//! and re-enumerates from the listed generators, so element indices (and a
//! re-serialization) come out identical.

use std::fmt::Write as _;

use crate::descriptor::Descriptor;
use crate::error::{Error, Result};
use crate::group::Group;

pub const HEADER: &str = "sylow2-group 1";

pub fn serialize(g: &Group) -> Result<String> {
    let desc = g.backend().descriptor().ok_or_else(|| {
        Error::UnsupportedCase(format!("{} group has no rebuildable descriptor", g.backend().kind()))
    })?;
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "descriptor {desc}").unwrap();
    if let Descriptor::Monomial { blocks, labels } = &desc {
        writeln!(out, "blocks {blocks}").unwrap();
        writeln!(out, "labels {labels}").unwrap();
    }
    writeln!(out, "order {}", g.order()).unwrap();
    writeln!(out, "generators {}", g.generators().len()).unwrap();
    for &x in g.generators() {
        writeln!(out, "gen {}", g.format(x)).unwrap();
    }
    Ok(out)
}

pub fn deserialize(text: &str, cap: usize) -> Result<Group> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let mut next = |key: &str| -> Result<String> {
        let line = lines
            .next()
            .ok_or_else(|| Error::parse(format!("missing `{key}` line")))?;
        match line.split_once(' ') {
            Some((k, v)) if k == key => Ok(v.trim().to_string()),
            _ => Err(Error::parse(format!("expected `{key}`, found `{line}`"))),
        }
    };
    if next("sylow2-group")? != "1" {
        return Err(Error::parse("unsupported group file version"));
    }
    let desc: Descriptor = next("descriptor")?.parse()?;
    if let Descriptor::Monomial { blocks, labels } = &desc {
        let b: usize = parse_num(&next("blocks")?)?;
        let l: Descriptor = next("labels")?.parse()?;
        if b != *blocks || l != **labels {
            return Err(Error::parse("blocks/labels lines disagree with the descriptor"));
        }
    }
    let order: usize = parse_num(&next("order")?)?;
    let count: usize = parse_num(&next("generators")?)?;
    let backend = desc.backend()?;
    let gens = (0..count)
        .map(|_| backend.parse(&next("gen")?))
        .collect::<Result<Vec<_>>>()?;
    if lines.next().is_some() {
        return Err(Error::parse("trailing lines after the generator list"));
    }
    let g = Group::closure(backend, gens, cap)?;
    if g.order() != order {
        return Err(Error::parse(format!(
            "declared order {order} but generators give {}",
            g.order()
        )));
    }
    Ok(g)
}

fn parse_num(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(format!("expected a number, found `{s}`")))
}
