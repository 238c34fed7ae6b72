//! Structured query language.
//!
//! ```text
//! query := node+
//! node  := TERM
//!        | '#combine' '(' node+ ')'
//!        | '#weight'  '(' (NUMBER node)+ ')'
//!        | '#' INT    '(' TERM TERM+ ')'
//!        | '#uw' INT  '(' TERM TERM+ ')'
//! ```
//!
//! Several top-level nodes are wrapped in an implicit `#combine`. Term leaves
//! go through the index's token pipeline, so `Running` against a stemmed
//! index becomes `run`, stopwords vanish, and a leaf such as `new-york` that
//! splits into several tokens becomes the phrase `#1( new york )`.

mod parser;

use std::fmt;

pub use parser::parse;

#[derive(Debug, Clone, PartialEq)]
pub enum QueryNode {
    Term(String),
    Combine(Vec<QueryNode>),
    /// Weights are positive and finite; they are normalized at scoring time.
    Weight(Vec<(f64, QueryNode)>),
    /// `#N`: terms in order, each within `width` positions of the previous.
    OrderedWindow { width: u32, terms: Vec<String> },
    /// `#uwN`: all terms inside a span of at most `width` positions.
    UnorderedWindow { width: u32, terms: Vec<String> },
}

impl QueryNode {
    /// Every term mentioned anywhere in the tree, including window members,
    /// in left-to-right order.
    pub fn terms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_terms(&mut out);
        out
    }

    fn collect_terms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            QueryNode::Term(t) => out.push(t),
            QueryNode::Combine(children) => children.iter().for_each(|c| c.collect_terms(out)),
            QueryNode::Weight(pairs) => pairs.iter().for_each(|(_, c)| c.collect_terms(out)),
            QueryNode::OrderedWindow { terms, .. } | QueryNode::UnorderedWindow { terms, .. } => {
                out.extend(terms.iter().map(String::as_str))
            }
        }
    }

    /// Checks the structural invariants a parsed tree always satisfies.
    pub fn is_well_formed(&self) -> bool {
        match self {
            QueryNode::Term(t) => !t.is_empty(),
            QueryNode::Combine(children) => !children.is_empty() && children.iter().all(Self::is_well_formed),
            QueryNode::Weight(pairs) => {
                !pairs.is_empty()
                    && pairs.iter().all(|(w, c)| w.is_finite() && *w > 0.0 && c.is_well_formed())
            }
            QueryNode::OrderedWindow { width, terms } | QueryNode::UnorderedWindow { width, terms } => {
                *width > 0 && terms.len() >= 2 && terms.iter().all(|t| !t.is_empty())
            }
        }
    }
}

impl fmt::Display for QueryNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryNode::Term(t) => f.write_str(t),
            QueryNode::Combine(children) => {
                f.write_str("#combine(")?;
                for c in children {
                    write!(f, " {c}")?;
                }
                f.write_str(" )")
            }
            QueryNode::Weight(pairs) => {
                f.write_str("#weight(")?;
                for (w, c) in pairs {
                    // shortest representation that parses back to the same f64
                    write!(f, " {w} {c}")?;
                }
                f.write_str(" )")
            }
            QueryNode::OrderedWindow { width, terms } => write!(f, "#{width}( {} )", terms.join(" ")),
            QueryNode::UnorderedWindow { width, terms } => write!(f, "#uw{width}( {} )", terms.join(" ")),
        }
    }
}

/// Canonical single-spaced text for `node`.
pub fn print_normal_form(node: &QueryNode) -> String {
    node.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(t: &str) -> QueryNode {
        QueryNode::Term(t.into())
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(print_normal_form(&QueryNode::Combine(vec![term("a")])), "#combine( a )");
        let w = QueryNode::Weight(vec![(0.70, term("obama")), (2.0, term("tree"))]);
        assert_eq!(print_normal_form(&w), "#weight( 0.7 obama 2 tree )");
        let uw = QueryNode::UnorderedWindow { width: 8, terms: vec!["new".into(), "york".into()] };
        assert_eq!(print_normal_form(&uw), "#uw8( new york )");
    }

    #[test]
    fn terms_include_window_members() {
        let q = QueryNode::Combine(vec![
            term("x"),
            QueryNode::OrderedWindow { width: 1, terms: vec!["y".into(), "z".into()] },
        ]);
        assert_eq!(q.terms(), ["x", "y", "z"]);
    }
}
