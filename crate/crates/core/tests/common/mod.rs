#![allow(dead_code)]

use hfk_core::diagram::{parse_braid, PlanarDiagram};
use proptest::prelude::*;

/// Braid words whose closures are knots, with at most `max_len` letters.
pub fn knot_braid(max_len: usize) -> impl Strategy<Value = (Vec<i64>, usize, PlanarDiagram)> {
    (2usize..=4)
        .prop_flat_map(move |n| {
            let letter = (1..n as i64).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
            (prop::collection::vec(letter, 1..=max_len), Just(n))
        })
        .prop_filter_map("closure is a link", |(w, n)| parse_braid(&w, n).ok().map(|d| (w, n, d)))
}

/// Alternating three-strand braids: `s1` only positive, `s2` only negative.
pub fn alternating_braid(max_len: usize) -> impl Strategy<Value = (Vec<i64>, PlanarDiagram)> {
    prop::collection::vec(prop::bool::ANY, 2..=max_len)
        .prop_map(|bits| bits.into_iter().map(|b| if b { 1 } else { -2 }).collect::<Vec<i64>>())
        .prop_filter_map("closure is a link", |w| parse_braid(&w, 3).ok().map(|d| (w, d)))
}
