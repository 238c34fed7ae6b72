use crate::index::{Lexicon, TermId};

pub const SNIPPET_WIDTH: usize = 25;

/// Renders the `width`-token window holding the most matches, leftmost on
/// ties, with matched tokens in square brackets. Without matches, the first
/// `width` tokens are returned as they are.
pub fn make_snippet(tokens: &[TermId], match_positions: &[u32], lexicon: &Lexicon, width: usize) -> String {
    let width = width.min(tokens.len());
    let count_in = |start: usize| {
        let lo = match_positions.partition_point(|&p| (p as usize) < start);
        let hi = match_positions.partition_point(|&p| (p as usize) < start + width);
        hi - lo
    };
    let mut best = 0;
    if !match_positions.is_empty() {
        let mut best_count = count_in(0);
        for start in 1..=tokens.len() - width {
            let c = count_in(start);
            if c > best_count {
                best = start;
                best_count = c;
            }
        }
    }
    (best..best + width)
        .map(|pos| {
            let token = lexicon.token(tokens[pos]).unwrap_or("?");
            if match_positions.binary_search(&(pos as u32)).is_ok() {
                format!("[{token}]")
            } else {
                token.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}
