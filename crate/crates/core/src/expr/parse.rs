//! Parenthesized prefix syntax for expressions:
//!
//! ```text
//! (v {1,2} w=-7/2)   (u E E)   (j 1 2 E E)   (r {{1}->{2},{2}->{}} E)
//! ```
//!
//! `#` starts a comment running to end of line.

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use super::{CwExpr, Node, NodeId};
use crate::graphs::{ColorSet, RecolorMap, MAX_COLORS};
use crate::semiring::{parse_rational, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    LBrace,
    RBrace,
    Comma,
    Arrow,
    Word(String),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Open => f.write_str("'('"),
            Tok::Close => f.write_str("')'"),
            Tok::LBrace => f.write_str("'{'"),
            Tok::RBrace => f.write_str("'}'"),
            Tok::Comma => f.write_str("','"),
            Tok::Arrow => f.write_str("'->'"),
            Tok::Word(w) => write!(f, "'{w}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
    peeked: Option<(Tok, usize, usize)>,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { chars: text.chars().peekable(), line: 1, col: 1, peeked: None }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn scan(&mut self) -> (Tok, usize, usize) {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while !matches!(self.chars.peek(), None | Some('\n')) {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let (line, col) = (self.line, self.col);
        let tok = match self.bump() {
            None => Tok::End,
            Some('(') => Tok::Open,
            Some(')') => Tok::Close,
            Some('{') => Tok::LBrace,
            Some('}') => Tok::RBrace,
            Some(',') => Tok::Comma,
            Some('-') if self.chars.peek() == Some(&'>') => {
                self.bump();
                Tok::Arrow
            }
            Some(c) => {
                let mut w = String::from(c);
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || "(){},#".contains(c) || (c == '-' && w.ends_with(|p: char| p.is_ascii_digit())) {
                        break;
                    }
                    w.push(c);
                    self.bump();
                }
                Tok::Word(w)
            }
        };
        (tok, line, col)
    }

    fn peek(&mut self) -> &(Tok, usize, usize) {
        if self.peeked.is_none() {
            self.peeked = Some(self.scan());
        }
        self.peeked.as_ref().unwrap()
    }

    fn next(&mut self) -> (Tok, usize, usize) {
        self.peek();
        self.peeked.take().unwrap()
    }
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, col, msg: msg.into() }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    k: usize,
}

impl Parser<'_> {
    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let (t, line, col) = self.lex.next();
        if t == want {
            Ok(())
        } else {
            Err(err(line, col, format!("expected {want}, found {t}")))
        }
    }

    fn color(&mut self) -> Result<usize, ParseError> {
        let (t, line, col) = self.lex.next();
        let Tok::Word(w) = &t else {
            return Err(err(line, col, format!("expected a color, found {t}")));
        };
        let c: usize = w.parse().map_err(|_| err(line, col, format!("invalid color '{w}'")))?;
        if c == 0 || c > self.k {
            return Err(err(line, col, format!("color {c} out of range 1..={}", self.k)));
        }
        Ok(c)
    }

    fn color_set(&mut self) -> Result<ColorSet, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut set = ColorSet::EMPTY;
        if self.lex.peek().0 == Tok::RBrace {
            self.lex.next();
            return Ok(set);
        }
        loop {
            set = set.union(ColorSet::single(self.color()?));
            let (t, line, col) = self.lex.next();
            match t {
                Tok::Comma => {}
                Tok::RBrace => return Ok(set),
                t => return Err(err(line, col, format!("expected ',' or '}}', found {t}"))),
            }
        }
    }

    fn recolor_map(&mut self) -> Result<RecolorMap, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut rules = Vec::new();
        if self.lex.peek().0 == Tok::RBrace {
            self.lex.next();
            return Ok(RecolorMap::identity());
        }
        loop {
            let from = self.color_set()?;
            self.expect(Tok::Arrow)?;
            let to = self.color_set()?;
            rules.push((from, to));
            let (t, line, col) = self.lex.next();
            match t {
                Tok::Comma => {}
                Tok::RBrace => return Ok(RecolorMap::new(rules)),
                t => return Err(err(line, col, format!("expected ',' or '}}', found {t}"))),
            }
        }
    }

    fn weight(&mut self) -> Result<Option<Q>, ParseError> {
        let (line, col) = match self.lex.peek() {
            (Tok::Word(w), line, col) if w.starts_with("w=") => (*line, *col),
            _ => return Ok(None),
        };
        let Tok::Word(w) = self.lex.next().0 else { unreachable!() };
        let mut text = w[2..].to_string();
        if text.is_empty() {
            match self.lex.next() {
                (Tok::Word(v), _, _) => text = v,
                (t, line, col) => return Err(err(line, col, format!("expected a weight, found {t}"))),
            }
        }
        parse_rational(&text).map(Some).ok_or_else(|| err(line, col, format!("invalid weight '{text}'")))
    }
}

enum Frame {
    Union { children: Vec<NodeId> },
    Join { i: usize, j: usize, children: Vec<NodeId> },
    Recolor { map: RecolorMap },
}

/// Parses with colors limited to the global maximum.
pub fn parse(text: &str) -> Result<CwExpr, ParseError> {
    parse_with_k(text, MAX_COLORS)
}

/// Parses and rejects any color outside `1..=k`.
pub fn parse_with_k(text: &str, k: usize) -> Result<CwExpr, ParseError> {
    let mut p = Parser { lex: Lexer::new(text), k };
    let mut nodes: Vec<Node> = Vec::new();
    let mut stack: Vec<Frame> = Vec::new();
    loop {
        // Parse one node header; leaves complete immediately.
        let (t, line, col) = p.lex.next();
        if t != Tok::Open {
            return Err(err(line, col, format!("expected '(', found {t}")));
        }
        let (head, line, col) = p.lex.next();
        let mut done = match head {
            Tok::Word(w) if w == "v" => {
                let colors = p.color_set()?;
                let weight = p.weight()?;
                p.expect(Tok::Close)?;
                nodes.push(Node::Leaf { colors, weight });
                Some(nodes.len() - 1)
            }
            Tok::Word(w) if w == "u" => {
                stack.push(Frame::Union { children: Vec::new() });
                None
            }
            Tok::Word(w) if w == "j" => {
                let (i, j) = (p.color()?, p.color()?);
                if i == j {
                    return Err(err(line, col, "join requires distinct colors"));
                }
                stack.push(Frame::Join { i, j, children: Vec::new() });
                None
            }
            Tok::Word(w) if w == "r" => {
                let map = p.recolor_map()?;
                stack.push(Frame::Recolor { map });
                None
            }
            t => return Err(err(line, col, format!("expected one of v, u, j, r, found {t}"))),
        };
        // Hand finished nodes to their parents, closing every frame that
        // is now complete.
        while let Some(id) = done.take() {
            let Some(top) = stack.last_mut() else {
                let (t, line, col) = p.lex.next();
                if t != Tok::End {
                    return Err(err(line, col, format!("trailing input: {t}")));
                }
                return Ok(CwExpr::from_postorder(nodes));
            };
            let node = match top {
                Frame::Union { children } | Frame::Join { children, .. } => {
                    children.push(id);
                    if children.len() < 2 {
                        continue;
                    }
                    match stack.pop().unwrap() {
                        Frame::Union { children } => Node::Union(children[0], children[1]),
                        Frame::Join { i, j, children } => Node::Join { i, j, left: children[0], right: children[1] },
                        Frame::Recolor { .. } => unreachable!(),
                    }
                }
                Frame::Recolor { .. } => {
                    let Some(Frame::Recolor { map }) = stack.pop() else { unreachable!() };
                    Node::Recolor { map, child: id }
                }
            };
            p.expect(Tok::Close)?;
            nodes.push(node);
            done = Some(nodes.len() - 1);
        }
    }
}

enum Item {
    Node(NodeId),
    Text(&'static str),
}

pub fn serialize(e: &CwExpr) -> String {
    let mut out = String::new();
    let mut stack = vec![Item::Node(e.root())];
    while let Some(item) = stack.pop() {
        let id = match item {
            Item::Text(t) => {
                out.push_str(t);
                continue;
            }
            Item::Node(id) => id,
        };
        match &e.nodes()[id] {
            Node::Leaf { colors, weight } => {
                let _ = write!(out, "(v {colors}");
                if let Some(w) = weight {
                    let _ = write!(out, " w={w}");
                }
                out.push(')');
            }
            Node::Union(l, r) => {
                out.push_str("(u ");
                stack.extend([Item::Text(")"), Item::Node(*r), Item::Text(" "), Item::Node(*l)]);
            }
            Node::Join { i, j, left, right } => {
                let _ = write!(out, "(j {i} {j} ");
                stack.extend([Item::Text(")"), Item::Node(*right), Item::Text(" "), Item::Node(*left)]);
            }
            Node::Recolor { map, child } => {
                let _ = write!(out, "(r {{{map}}} ");
                stack.extend([Item::Text(")"), Item::Node(*child)]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::RecolorMap;
    use proptest::prelude::*;

    #[test]
    fn leaf_and_join() {
        let e = parse("(v {1})").unwrap();
        assert_eq!(e, CwExpr::leaf(ColorSet::single(1)));
        let e = parse("(j 1 2 (v {1}) (v {2}))").unwrap();
        assert_eq!(e, CwExpr::join(1, 2, CwExpr::leaf(ColorSet::single(1)), CwExpr::leaf(ColorSet::single(2))));
    }

    #[test]
    fn join_same_color_rejected() {
        let e = parse("(j 1 1 (v {1}) (v {1}))").unwrap_err();
        assert!(e.msg.contains("join requires distinct colors"), "{e}");
    }

    #[test]
    fn errors_carry_position() {
        let e = parse("(u (v {1})\n  (x {2}))").unwrap_err();
        assert_eq!((e.line, e.col), (2, 4));
        let e = parse_with_k("(v {3})", 2).unwrap_err();
        assert!(e.msg.contains("out of range"));
        assert!(parse("(v {0})").is_err());
        assert!(parse("(v {1}) (v {1})").is_err());
        assert!(parse("(u (v {1})").is_err());
        assert!(parse("(v {1} w=1/0)").is_err());
    }

    #[test]
    fn comments_weights_and_recolor() {
        let text = "# header\n(r {{1}->{2}, {2} -> {}}  # trailing\n (v {1,2} w= -7/2))";
        let e = parse(text).unwrap();
        let map = RecolorMap::new([(ColorSet::single(1), ColorSet::single(2)), (ColorSet::single(2), ColorSet::EMPTY)]);
        let leaf = CwExpr::from_postorder(vec![Node::Leaf {
            colors: ColorSet::from_colors([1, 2]),
            weight: Some(Q::new(-7, 2)),
        }]);
        assert_eq!(e, CwExpr::recolor(map, leaf));
        assert_eq!(parse(&serialize(&e)).unwrap(), e);
        assert_eq!(serialize(&e), "(r {{1}->{2},{2}->{}} (v {1,2} w=-7/2))");
    }

    fn arb_colorset() -> impl Strategy<Value = ColorSet> {
        (0u32..16).prop_map(ColorSet)
    }

    fn arb_expr() -> impl Strategy<Value = CwExpr> {
        let leaf = (arb_colorset(), prop::option::of((-20i64..20, 1i64..6)))
            .prop_map(|(colors, w)| CwExpr::from_postorder(vec![Node::Leaf { colors, weight: w.map(|(a, b)| Q::new(a, b)) }]));
        leaf.prop_recursive(6, 40, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| CwExpr::union(a, b)),
                (1usize..5, 1usize..4, inner.clone(), inner.clone())
                    .prop_map(|(i, d, a, b)| CwExpr::join(i, (i + d - 1) % 4 + 1, a, b)),
                (prop::collection::vec((arb_colorset(), arb_colorset()), 0..4), inner)
                    .prop_map(|(rules, c)| CwExpr::recolor(RecolorMap::new(rules), c)),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_serialize_roundtrip(e in arb_expr()) {
            let text = serialize(&e);
            prop_assert_eq!(parse(&text).unwrap(), e);
        }
    }
}
