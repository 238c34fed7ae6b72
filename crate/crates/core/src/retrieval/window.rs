//! Proximity counting for `#N` and `#uwN`.
//!
//! Both operators count matches by their leftmost position, so a window's
//! frequency in a document never exceeds the document's length.
//!
//! - Ordered: a start position `p1` of the first term counts once if some
//!   chain `p1 < p2 < ... < pn` exists with `pi` holding term `i` and
//!   `1 <= p(i+1) - pi <= width`.
//! - Unordered: a position `p` holding any window term counts once if
//!   `[p, p + width)` contains every term, at distinct positions, with its
//!   multiplicity in the window.

use std::collections::HashMap;

use crate::index::{Lexicon, TermId};
use crate::query::QueryNode;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowKind {
    Ordered,
    Unordered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window<'a> {
    pub kind: WindowKind,
    pub width: u32,
    pub terms: &'a [String],
}

impl QueryNode {
    /// The window view of `#N` / `#uwN` nodes.
    pub fn window(&self) -> Option<Window<'_>> {
        match self {
            QueryNode::OrderedWindow { width, terms } => {
                Some(Window { kind: WindowKind::Ordered, width: *width, terms })
            }
            QueryNode::UnorderedWindow { width, terms } => {
                Some(Window { kind: WindowKind::Unordered, width: *width, terms })
            }
            _ => None,
        }
    }
}

/// Number of start positions with an ordered chain; `lists[i]` are the
/// sorted positions of the `i`-th window term.
pub fn ordered_matches(lists: &[&[u32]], width: u32) -> u64 {
    let Some((last, rest)) = lists.split_last() else {
        return 0;
    };
    let width = width as u64;
    // reachable[j]: a chain to the final term exists from lists[i][j]
    let mut reachable = vec![true; last.len()];
    let mut next_list: &[u32] = last;
    for list in rest.iter().rev() {
        let mut prefix = Vec::with_capacity(next_list.len() + 1);
        prefix.push(0u32);
        for &r in &reachable {
            prefix.push(prefix.last().unwrap() + r as u32);
        }
        reachable = list
            .iter()
            .map(|&p| {
                let lo = next_list.partition_point(|&q| q <= p);
                let hi = next_list.partition_point(|&q| (q as u64) <= p as u64 + width);
                prefix[hi] > prefix[lo]
            })
            .collect();
        next_list = list;
    }
    reachable.iter().filter(|&&r| r).count() as u64
}

/// Number of start positions opening an unordered match. Each group is the
/// sorted positions of one distinct term plus how many times the window
/// names it.
pub fn unordered_matches(groups: &[(&[u32], usize)], width: u32) -> u64 {
    if groups.is_empty() || groups.iter().any(|(p, m)| p.len() < *m) {
        return 0;
    }
    let mut starts: Vec<u32> = groups.iter().flat_map(|(p, _)| p.iter().copied()).collect();
    starts.sort_unstable();
    starts.dedup();
    starts
        .into_iter()
        .filter(|&start| {
            let end = start as u64 + width as u64;
            groups.iter().all(|&(positions, need)| {
                let lo = positions.partition_point(|&q| q < start);
                let hi = positions.partition_point(|&q| (q as u64) < end);
                hi - lo >= need
            })
        })
        .count() as u64
}

/// Groups window terms by identity, keeping first-appearance order.
pub(crate) fn term_multiplicities<T: Eq + std::hash::Hash + Copy>(terms: &[T]) -> Vec<(T, usize)> {
    let mut order: Vec<(T, usize)> = Vec::new();
    let mut slot: HashMap<T, usize> = HashMap::new();
    for &t in terms {
        match slot.get(&t) {
            Some(&i) => order[i].1 += 1,
            None => {
                slot.insert(t, order.len());
                order.push((t, 1));
            }
        }
    }
    order
}

/// Window frequency in one document, given the document's term ids.
/// Any term outside the vocabulary makes the frequency zero.
pub fn window_tf(window: Window<'_>, tokens: &[TermId], lexicon: &Lexicon) -> u64 {
    let ids: Option<Vec<TermId>> = window.terms.iter().map(|t| lexicon.get(t)).collect();
    let Some(ids) = ids else {
        return 0;
    };
    let mut positions: HashMap<TermId, Vec<u32>> = ids.iter().map(|&id| (id, Vec::new())).collect();
    for (pos, tok) in tokens.iter().enumerate() {
        if let Some(list) = positions.get_mut(tok) {
            list.push(pos as u32);
        }
    }
    match window.kind {
        WindowKind::Ordered => {
            let lists: Vec<&[u32]> = ids.iter().map(|id| positions[id].as_slice()).collect();
            ordered_matches(&lists, window.width)
        }
        WindowKind::Unordered => {
            let groups: Vec<(&[u32], usize)> = term_multiplicities(&ids)
                .into_iter()
                .map(|(id, m)| (positions[&id].as_slice(), m))
                .collect();
            unordered_matches(&groups, window.width)
        }
    }
}
