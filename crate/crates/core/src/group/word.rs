//! Text words over named generators: `v^3*w`, `g^-1*k`, `1`.

use crate::error::{Error, Result};
use crate::group::{Backend, Element};

pub fn power(name: &str, exp: i64) -> String {
    match exp {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{exp}"),
    }
}

/// Joins nonempty factors with `*`; the empty product prints as `1`.
pub fn join<I, S>(parts: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let parts: Vec<String> = parts
        .into_iter()
        .map(|s| s.as_ref().to_string())
        .filter(|s| !s.is_empty() && s != "1")
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Splits a word into `(generator name, exponent)` factors.
pub fn tokenize(word: &str) -> Result<Vec<(String, i64)>> {
    let word = word.trim();
    if word.is_empty() {
        return Err(Error::parse("empty word"));
    }
    let mut out = Vec::new();
    for factor in word.split('*') {
        let factor = factor.trim();
        if factor == "1" {
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => {
                let e: i64 = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(format!("bad exponent in `{factor}`")))?;
                (n.trim(), e)
            }
            None => (factor, 1),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::parse(format!("bad generator name in `{factor}`")));
        }
        out.push((name.to_string(), exp));
    }
    Ok(out)
}

pub fn pow(backend: &dyn Backend, g: &Element, exp: i64) -> Element {
    let base = if exp < 0 {
        backend.inverse(g.words())
    } else {
        g.clone()
    };
    let mut acc = backend.identity();
    for _ in 0..exp.unsigned_abs() {
        acc = backend.multiply(acc.words(), base.words());
    }
    acc
}

/// Evaluates a word, resolving generator names through `lookup`.
pub fn evaluate<F>(backend: &dyn Backend, word: &str, lookup: F) -> Result<Element>
where
    F: Fn(&str) -> Option<Element>,
{
    let mut acc = backend.identity();
    for (name, exp) in tokenize(word)? {
        let g = lookup(&name).ok_or_else(|| Error::parse(format!("unknown generator `{name}`")))?;
        let p = pow(backend, &g, exp);
        acc = backend.multiply(acc.words(), p.words());
    }
    Ok(acc)
}

/// Splits `s` on `sep` at bracket depth zero.
pub(crate) fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenize_handles_powers_and_identity() {
        let t = tokenize("v^3*w*g^-1").unwrap();
        assert_eq!(
            t,
            vec![("v".into(), 3), ("w".into(), 1), ("g".into(), -1)]
        );
        assert!(tokenize("1").unwrap().is_empty());
        assert!(tokenize("v^x").is_err());
        assert!(tokenize("").is_err());
    }

    #[test]
    fn join_drops_trivial_factors() {
        assert_eq!(join(["", "v^2", "1", "e"]), "v^2*e");
        assert_eq!(join(Vec::<String>::new()), "1");
    }

    #[test]
    fn split_top_respects_nesting() {
        assert_eq!(split_top("a,(b,c),[d,e]", ','), vec!["a", "(b,c)", "[d,e]"]);
    }
}
