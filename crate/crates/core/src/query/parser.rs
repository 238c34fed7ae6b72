use super::QueryNode;
use crate::error::SyntaxError;
use crate::ingest::{tokenize, TokenPipelineConfig};

#[derive(Debug, Clone, PartialEq)]
enum Lexeme<'a> {
    Open,
    Close,
    Operator(&'a str),
    Word(&'a str),
}

#[derive(Debug, Clone)]
struct Token<'a> {
    lexeme: Lexeme<'a>,
    position: usize,
}

fn lex(input: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '(' || c == ')' {
            chars.next();
            let lexeme = if c == '(' { Lexeme::Open } else { Lexeme::Close };
            tokens.push(Token { lexeme, position: start });
            continue;
        }
        let mut end = input.len();
        chars.next();
        while let Some(&(i, c)) = chars.peek() {
            if c.is_whitespace() || c == '(' || c == ')' {
                end = i;
                break;
            }
            chars.next();
        }
        let text = &input[start..end];
        let lexeme = if text.starts_with('#') { Lexeme::Operator(text) } else { Lexeme::Word(text) };
        tokens.push(Token { lexeme, position: start });
    }
    tokens
}

/// Parse tree before term normalization.
#[derive(Debug)]
enum Raw<'a> {
    Term(&'a str),
    Combine(Vec<Raw<'a>>),
    Weight(Vec<(f64, Raw<'a>)>),
    Ordered(u32, Vec<&'a str>),
    Unordered(u32, Vec<&'a str>),
}

struct Parser<'a> {
    tokens: Vec<Token<'a>>,
    at: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.at)
    }

    fn position(&self) -> usize {
        self.peek().map_or(self.end, |t| t.position)
    }

    fn next(&mut self) -> Option<Token<'a>> {
        let t = self.tokens.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn expect_open(&mut self, op: &str) -> Result<(), SyntaxError> {
        match self.next() {
            Some(Token { lexeme: Lexeme::Open, .. }) => Ok(()),
            Some(t) => Err(SyntaxError::new(t.position, format!("expected `(` after {op}"))),
            None => Err(SyntaxError::new(self.end, format!("expected `(` after {op}"))),
        }
    }

    /// Consumes the `)` closing a group opened at `open`; true if found.
    fn at_close(&mut self, open: usize) -> Result<bool, SyntaxError> {
        match self.peek() {
            Some(Token { lexeme: Lexeme::Close, .. }) => {
                self.at += 1;
                Ok(true)
            }
            Some(_) => Ok(false),
            None => Err(SyntaxError::new(open, "unbalanced parentheses: missing `)`")),
        }
    }

    fn node(&mut self) -> Result<Raw<'a>, SyntaxError> {
        let Some(tok) = self.next() else {
            return Err(SyntaxError::new(self.end, "unexpected end of query"));
        };
        match tok.lexeme {
            Lexeme::Word(w) => Ok(Raw::Term(w)),
            Lexeme::Close => Err(SyntaxError::new(tok.position, "unbalanced parentheses: unexpected `)`")),
            Lexeme::Open => Err(SyntaxError::new(tok.position, "`(` must follow an operator")),
            Lexeme::Operator(op) => self.operator(op, tok.position),
        }
    }

    fn operator(&mut self, op: &'a str, position: usize) -> Result<Raw<'a>, SyntaxError> {
        let name = &op[1..];
        match name {
            "combine" => {
                self.expect_open(op)?;
                let mut children = Vec::new();
                while !self.at_close(position)? {
                    children.push(self.node()?);
                }
                if children.is_empty() {
                    return Err(SyntaxError::new(position, "#combine needs at least one operand"));
                }
                Ok(Raw::Combine(children))
            }
            "weight" => {
                self.expect_open(op)?;
                let mut pairs = Vec::new();
                while !self.at_close(position)? {
                    let weight_at = self.position();
                    let weight = self.weight()?;
                    if self.at_close(position)? {
                        return Err(SyntaxError::new(
                            weight_at,
                            "#weight expects weight/operand pairs: weight without operand",
                        ));
                    }
                    pairs.push((weight, self.node()?));
                }
                if pairs.is_empty() {
                    return Err(SyntaxError::new(position, "#weight needs at least one pair"));
                }
                Ok(Raw::Weight(pairs))
            }
            _ => {
                let (ordered, digits) = match name.strip_prefix("uw") {
                    Some(rest) => (false, rest),
                    None => (true, name),
                };
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(SyntaxError::new(position, format!("unknown operator `{op}`")));
                }
                let width: u32 = digits
                    .parse()
                    .map_err(|_| SyntaxError::new(position, format!("window width in `{op}` is too large")))?;
                if width == 0 {
                    return Err(SyntaxError::new(position, "window width must be positive"));
                }
                self.expect_open(op)?;
                let mut terms = Vec::new();
                while !self.at_close(position)? {
                    match self.next() {
                        Some(Token { lexeme: Lexeme::Word(w), .. }) => terms.push(w),
                        Some(t) => {
                            return Err(SyntaxError::new(t.position, "window operands must be plain terms"))
                        }
                        None => unreachable!("at_close handles end of input"),
                    }
                }
                if terms.len() < 2 {
                    return Err(SyntaxError::new(position, "a window needs at least two terms"));
                }
                Ok(if ordered { Raw::Ordered(width, terms) } else { Raw::Unordered(width, terms) })
            }
        }
    }

    fn weight(&mut self) -> Result<f64, SyntaxError> {
        match self.next() {
            Some(Token { lexeme: Lexeme::Word(w), position }) => match w.parse::<f64>() {
                Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
                Ok(_) => Err(SyntaxError::new(position, format!("weight `{w}` must be positive and finite"))),
                Err(_) => Err(SyntaxError::new(position, format!("expected a weight, found `{w}`"))),
            },
            Some(t) => Err(SyntaxError::new(t.position, "expected a weight")),
            None => Err(SyntaxError::new(self.end, "unexpected end of query")),
        }
    }
}

fn normalize_window(width: u32, raw: &[&str], ordered: bool, cfg: &TokenPipelineConfig) -> Option<QueryNode> {
    let mut terms: Vec<String> = raw.iter().flat_map(|t| tokenize(t, cfg)).collect();
    match terms.len() {
        0 => None,
        1 => terms.pop().map(QueryNode::Term),
        _ if ordered => Some(QueryNode::OrderedWindow { width, terms }),
        _ => Some(QueryNode::UnorderedWindow { width, terms }),
    }
}

fn normalize(raw: Raw<'_>, cfg: &TokenPipelineConfig) -> Option<QueryNode> {
    match raw {
        Raw::Term(t) => {
            let mut tokens = tokenize(t, cfg);
            match tokens.len() {
                0 => None,
                1 => tokens.pop().map(QueryNode::Term),
                _ => Some(QueryNode::OrderedWindow { width: 1, terms: tokens }),
            }
        }
        Raw::Combine(children) => {
            let children: Vec<_> = children.into_iter().filter_map(|c| normalize(c, cfg)).collect();
            (!children.is_empty()).then_some(QueryNode::Combine(children))
        }
        Raw::Weight(pairs) => {
            let pairs: Vec<_> =
                pairs.into_iter().filter_map(|(w, c)| normalize(c, cfg).map(|n| (w, n))).collect();
            (!pairs.is_empty()).then_some(QueryNode::Weight(pairs))
        }
        Raw::Ordered(width, terms) => normalize_window(width, &terms, true, cfg),
        Raw::Unordered(width, terms) => normalize_window(width, &terms, false, cfg),
    }
}

/// Parses `query` and normalizes its terms with `pipeline`.
///
/// Fails with a positioned [`SyntaxError`] on malformed input, or when every
/// term is removed by normalization.
pub fn parse(query: &str, pipeline: &TokenPipelineConfig) -> Result<QueryNode, SyntaxError> {
    let mut parser = Parser { tokens: lex(query), at: 0, end: query.len() };
    let mut nodes = Vec::new();
    while parser.peek().is_some() {
        nodes.push(parser.node()?);
    }
    let raw = match nodes.len() {
        0 => return Err(SyntaxError::new(0, "empty query")),
        1 => nodes.pop().unwrap(),
        _ => Raw::Combine(nodes),
    };
    normalize(raw, pipeline)
        .ok_or_else(|| SyntaxError::new(0, "query has no searchable terms after normalization"))
}
