//! Plain-text poset exchange format.
//!
//! ```text
//! # comments and blank lines are ignored
//! 4          <- number of elements, 0-based ids
//! 0 1        <- one relation `a < b` per line (covers, or any generating set)
//! 0 2
//! 1 3
//! 2 3
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub fn parse_poset(text: &str) -> Result<FinitePoset> {
    let mut lines = data_lines(text);
    let (_, first) = lines
        .next()
        .ok_or_else(|| Error::invalid("poset file is empty"))?;
    let n: usize = first
        .parse()
        .map_err(|_| Error::invalid(format!("expected element count, got {first:?}")))?;
    let mut rel = Vec::new();
    for (lineno, l) in lines {
        let ids: Vec<&str> = l.split_whitespace().collect();
        let pair = match ids.as_slice() {
            [a, b] => a.parse::<usize>().ok().zip(b.parse::<usize>().ok()),
            _ => None,
        };
        let (a, b) = pair.ok_or_else(|| Error::invalid(format!("line {lineno}: expected `a b`, got {l:?}")))?;
        if a >= n || b >= n {
            return Err(Error::invalid(format!("line {lineno}: element out of range 0..{n}")));
        }
        rel.push((a, b));
    }
    FinitePoset::from_covers(n, &rel)
}

/// Writes the element count followed by the cover pairs.
pub fn write_poset(p: &FinitePoset) -> String {
    let mut s = format!("{}\n", p.len());
    for (a, b) in p.covers() {
        writeln!(s, "{a} {b}").expect("writing to a String");
    }
    s
}

pub fn read_poset_file(path: &Path) -> Result<FinitePoset> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_poset(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{are_isomorphic, rectangle_poset};

    #[test]
    fn round_trip() {
        let p = rectangle_poset(2, 3).unwrap();
        let q = parse_poset(&write_poset(&p)).unwrap();
        assert_eq!(p.relations(), q.relations());
        assert!(are_isomorphic(&p, &q).unwrap());
    }

    #[test]
    fn comments_and_errors() {
        let p = parse_poset("# diamond\n4\n0 1\n0 2 # left\n\n1 3\n2 3\n").unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.leq(0, 3));
        assert!(parse_poset("").is_err());
        assert!(parse_poset("3\n0 5\n").is_err());
        assert!(parse_poset("3\n0 1 2\n").is_err());
        assert!(parse_poset("2\n0 1\n1 0\n").is_err());
    }
}
