//! Planar drawing of `Heap(sort_c(w0))` and its embedding in a rectangle,
//! for types A and B.
//!
//! The letter with generator `s` sits at height `CoxeterSpec::level(s)`; every cover edge goes
//! one unit right and one unit up or down, and the leftmost letter is at
//! `x = 0`. Rotating by 45° turns the drawing into a subset of a grid: an
//! up-edge increases `v`, a down-edge increases `u`.

use serde::Serialize;

use crate::error::{Error, Result};

use super::{heap, orientation_of, r_statistic, sorting_word, CoxeterSpec, CoxeterType};

#[derive(Clone, Debug, Serialize)]
pub struct HeapEmbedding {
    pub word: Vec<usize>,
    /// Drawing coordinates `(x, y)` per letter.
    pub drawing: Vec<(i64, i64)>,
    /// `max(y - x)` and `max(x + y)` over the drawing.
    pub q1: i64,
    pub q2: i64,
    pub r: usize,
    /// Box `k × l` and the grid point `(u, v)` of each letter.
    pub k: usize,
    pub l: usize,
    pub coords: Vec<(usize, usize)>,
    /// Whether heap order equals the product order restricted to the image
    /// (containment always holds, see [`heap_rectangle_embedding`]).
    pub order_equal: bool,
}

/// Drawing coordinates of the heap of `word`.
pub fn heap_drawing(spec: &CoxeterSpec, word: &[usize]) -> Result<Vec<(i64, i64)>> {
    let h = heap(spec, word)?;
    let n = word.len();
    let mut x: Vec<Option<i64>> = vec![None; n];
    let mut stack = Vec::new();
    for root in 0..n {
        if x[root].is_some() {
            continue;
        }
        x[root] = Some(0);
        stack.push(root);
        while let Some(a) = stack.pop() {
            let xa = x[a].expect("visited");
            let nbrs = h
                .upper_covers(a)
                .iter()
                .map(|&b| (b, xa + 1))
                .chain(h.lower_covers(a).iter().map(|&b| (b, xa - 1)));
            for (b, xb) in nbrs {
                let (ya, yb) = (spec.level(word[a]) as i64, spec.level(word[b]) as i64);
                if (ya - yb).abs() != 1 {
                    return Err(Error::Verification(format!(
                        "heap cover between s{} and s{} is not between adjacent rows",
                        word[a], word[b]
                    )));
                }
                match x[b] {
                    None => {
                        x[b] = Some(xb);
                        stack.push(b);
                    }
                    Some(v) if v != xb => {
                        return Err(Error::Verification("heap drawing is inconsistent".into()));
                    }
                    _ => {}
                }
            }
        }
    }
    let min = x.iter().map(|v| v.expect("all visited")).min().unwrap_or(0);
    Ok(x.iter()
        .zip(word)
        .map(|(v, &s)| (v.expect("all visited") - min, spec.level(s) as i64))
        .collect())
}

/// Embeds `Heap(sort_c(w0))` in `R_{n×n}` (type A) or
/// `R_{(2n-1-r)×(n+r)}` (type B, `r = r(c)`).
///
/// The map is injective and order-preserving, i.e. the heap is a (not
/// necessarily induced) subposet of the rectangle. Errors if either fails or
/// a letter leaves the box.
pub fn heap_rectangle_embedding(spec: &CoxeterSpec, c: &[usize]) -> Result<HeapEmbedding> {
    let n = spec.rank;
    let r = r_statistic(spec, &orientation_of(spec, c)?);
    let (k, l) = match spec.kind {
        CoxeterType::A => (n, n),
        CoxeterType::B => (2 * n - 1 - r, n + r),
        _ => return Err(Error::invalid("rectangle embeddings exist for types A and B")),
    };
    let word = sorting_word(spec, c, &spec.longest_element())?;
    let drawing = heap_drawing(spec, &word)?;
    let q1 = drawing.iter().map(|&(x, y)| y - x).max().expect("nonempty");
    let q2 = drawing.iter().map(|&(x, y)| x + y).max().expect("nonempty");
    let low = q2 - 2 * (l as i64 - 1);
    let mut coords = Vec::with_capacity(word.len());
    for &(x, y) in &drawing {
        let (du, dv) = (q1 - (y - x), x + y - low);
        if du % 2 != 0 || dv % 2 != 0 || dv < 0 || du / 2 >= k as i64 || dv / 2 >= l as i64 {
            return Err(Error::Verification(format!(
                "letter at ({x}, {y}) falls outside the {k} x {l} box"
            )));
        }
        coords.push(((du / 2) as usize, (dv / 2) as usize));
    }
    let mut sorted = coords.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != coords.len() {
        return Err(Error::Verification("embedding is not injective".into()));
    }
    let h = heap(spec, &word)?;
    let prod = |a: usize, b: usize| coords[a].0 <= coords[b].0 && coords[a].1 <= coords[b].1;
    let mut order_equal = true;
    for a in 0..word.len() {
        for b in 0..word.len() {
            let (hl, pl) = (h.leq(a, b), prod(a, b));
            if hl && !pl {
                return Err(Error::Verification("embedding is not order-preserving".into()));
            }
            order_equal &= hl == pl;
        }
    }
    Ok(HeapEmbedding {
        word,
        drawing,
        q1,
        q2,
        r,
        k,
        l,
        coords,
        order_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{all_orientations, coxeter_element, parse_word};

    #[test]
    fn type_a_example_lines() {
        let a9 = CoxeterSpec::a(9);
        let c = parse_word(&a9, "s3s2s1s4s5s7s6s8s9").unwrap();
        let e = heap_rectangle_embedding(&a9, &c).unwrap();
        let diff: Vec<i64> = e.drawing.iter().map(|&(x, y)| y - x).collect();
        let sum: Vec<i64> = e.drawing.iter().map(|&(x, y)| x + y).collect();
        assert_eq!(*diff.iter().max().unwrap(), 5);
        assert_eq!(*diff.iter().min().unwrap(), -11);
        assert_eq!(*sum.iter().min().unwrap(), 3);
        assert_eq!(*sum.iter().max().unwrap(), 19);
        assert_eq!((e.k, e.l), (9, 9));
    }

    #[test]
    fn type_b_example_lines() {
        let b7 = CoxeterSpec::b(7);
        let c = parse_word(&b7, "s1s0s2s3s5s4s6").unwrap();
        let e = heap_rectangle_embedding(&b7, &c).unwrap();
        assert_eq!((e.q1, e.q2, e.r), (4, 22, 4));
        assert_eq!((e.k, e.l), (9, 11));
        let n = 7i64;
        let r = 4i64;
        assert!(e.drawing.iter().all(|&(x, y)| y - x >= e.q1 - 4 * n + 4 + 2 * r));
        assert!(e.drawing.iter().all(|&(x, y)| x + y >= e.q2 - 2 * n + 2 - 2 * r));
    }

    #[test]
    fn every_orientation_embeds() {
        for spec in [CoxeterSpec::a(2), CoxeterSpec::a(5), CoxeterSpec::b(2), CoxeterSpec::b(5)] {
            for o in all_orientations(&spec) {
                let c = coxeter_element(&spec, &o).unwrap();
                let e = heap_rectangle_embedding(&spec, &c).unwrap();
                assert!(e.order_equal, "{spec} {c:?}");
            }
        }
        assert!(heap_rectangle_embedding(&CoxeterSpec::d(4), &[0, 1, 2, 3]).is_err());
    }
}
