use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A tree written as nested edges: `r(b(e,f),c,d())`.
///
/// An edge without parentheses is a leaf, `x()` is a stump, and `x(…)` is an
/// edge carrying a vertex with the listed children.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeTerm {
    pub edge: String,
    pub vertex: Option<Vec<TreeTerm>>,
}

impl TreeTerm {
    pub fn leaf(edge: impl Into<String>) -> Self {
        TreeTerm {
            edge: edge.into(),
            vertex: None,
        }
    }

    pub fn stump(edge: impl Into<String>) -> Self {
        TreeTerm {
            edge: edge.into(),
            vertex: Some(Vec::new()),
        }
    }

    pub fn node(edge: impl Into<String>, children: Vec<TreeTerm>) -> Self {
        TreeTerm {
            edge: edge.into(),
            vertex: Some(children),
        }
    }

    pub fn children(&self) -> &[TreeTerm] {
        self.vertex.as_deref().unwrap_or(&[])
    }

    pub fn is_leaf(&self) -> bool {
        self.vertex.is_none()
    }

    /// Edge names in preorder.
    pub fn edges(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_edges(&mut out);
        out
    }

    fn collect_edges<'a>(&'a self, out: &mut Vec<&'a str>) {
        out.push(&self.edge);
        for c in self.children() {
            c.collect_edges(out);
        }
    }

    pub fn edge_count(&self) -> usize {
        1 + self
            .children()
            .iter()
            .map(TreeTerm::edge_count)
            .sum::<usize>()
    }

    pub fn vertex_count(&self) -> usize {
        usize::from(self.vertex.is_some())
            + self
                .children()
                .iter()
                .map(TreeTerm::vertex_count)
                .sum::<usize>()
    }

    fn check_distinct(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for e in self.edges() {
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge(e.to_string()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for TreeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.edge)?;
        if let Some(children) = &self.vertex {
            f.write_str("(")?;
            for (i, c) in children.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl FromStr for TreeTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_term(s)
    }
}

/// Parses the term grammar `tree := IDENT vertex?`,
/// `vertex := "(" [tree {"," tree}] ")"`, `IDENT := letter {letter|digit|_}`.
/// Whitespace between tokens is ignored.
pub fn parse_term(text: &str) -> Result<TreeTerm> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
    };
    let term = p.tree()?;
    p.skip_ws();
    if p.pos < p.text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    term.check_distinct()?;
    Ok(term)
}

pub fn print_term(term: &TreeTerm) -> String {
    term.to_string()
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        match self.text.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return Err(self.error("expected an edge name")),
        }
        while self
            .text
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        Ok(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
    }

    fn tree(&mut self) -> Result<TreeTerm> {
        let edge = self.ident()?;
        if self.peek() != Some(b'(') {
            return Ok(TreeTerm::leaf(edge));
        }
        self.pos += 1;
        let mut children = Vec::new();
        if self.peek() == Some(b')') {
            self.pos += 1;
            return Ok(TreeTerm::node(edge, children));
        }
        loop {
            children.push(self.tree()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    return Ok(TreeTerm::node(edge, children));
                }
                _ => return Err(self.error("expected `,` or `)`")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_grammar() {
        let t = parse_term("r(a,b)").unwrap();
        assert_eq!(t.edge_count(), 3);
        assert_eq!(parse_term("x").unwrap(), TreeTerm::leaf("x"));
        let ex = parse_term(" r( b(e, f), c, d() ) ").unwrap();
        assert_eq!(ex.to_string(), "r(b(e,f),c,d())");
        assert_eq!(ex.edges(), vec!["r", "b", "e", "f", "c", "d"]);
        assert_eq!(ex.vertex_count(), 3);
    }

    #[test]
    fn reports_positions() {
        assert_eq!(
            parse_term("r(a,").unwrap_err(),
            Error::Parse {
                position: 4,
                message: "expected an edge name".into()
            }
        );
        assert!(matches!(
            parse_term("r(a b)"),
            Err(Error::Parse { position: 4, .. })
        ));
        assert!(matches!(
            parse_term("1a"),
            Err(Error::Parse { position: 0, .. })
        ));
        assert!(matches!(
            parse_term("r()x"),
            Err(Error::Parse { position: 3, .. })
        ));
    }

    #[test]
    fn rejects_duplicate_edges() {
        assert_eq!(
            parse_term("r(a,a)").unwrap_err(),
            Error::DuplicateEdge("a".into())
        );
    }
}
