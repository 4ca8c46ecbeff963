//! Text format for Coxeter diagrams.
//!
//! ```text
//! # H3
//! nodes a b c;
//! edge a b 5;
//! edge b c 3
//! ```
//!
//! A `nodes` statement comes first, followed by `edge <id> <id> <label>`
//! statements separated by `;` (a trailing `;` is allowed). Labels are
//! integers `>= 3` or `inf`; pairs that are never mentioned commute (`m = 2`).
//! Node ids match `[A-Za-z0-9_]+`; `nodes` and `edge` are reserved. `#` starts
//! a comment running to the end of the line.

use std::collections::HashSet;
use std::fmt::Write;

use thiserror::Error;

use crate::diagram::{CoxeterDiagram, Edge, Label};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct DslError {
    pub line: usize,
    pub column: usize,
    pub kind: DslErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslErrorKind {
    #[error("unexpected character `{0}`")]
    BadCharacter(char),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("edge label must be an integer >= 3 or `inf`, got `{0}`")]
    BadLabel(String),
    #[error("edge label {0} is below 3 (pairs with m = 2 are simply omitted)")]
    LabelTooSmall(u32),
    #[error("edge `{0}`-`{1}` declared twice")]
    DuplicateEdge(String, String),
    #[error("edge joins `{0}` to itself")]
    SelfLoop(String),
    #[error("input is empty")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Semi,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(tok: Option<&Token>) -> String {
    match tok.map(|t| &t.tok) {
        None => "end of input".into(),
        Some(Tok::Semi) => "`;`".into(),
        Some(Tok::Word(w)) => format!("`{w}`"),
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let mut chars = line.char_indices().peekable();
        let mut col = 0usize;
        while let Some((_, c)) = chars.next() {
            col += 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                continue;
            }
            if c == ';' {
                out.push(Token { tok: Tok::Semi, line: li + 1, column: col });
                continue;
            }
            if c.is_ascii_alphanumeric() || c == '_' {
                let start_col = col;
                let mut word = String::from(c);
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        word.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Token { tok: Tok::Word(word), line: li + 1, column: start_col });
                continue;
            }
            return Err(DslError { line: li + 1, column: col, kind: DslErrorKind::BadCharacter(c) });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err_here(&self, kind: DslErrorKind) -> DslError {
        let (line, column) = self.peek().map(|t| (t.line, t.column)).unwrap_or(self.end);
        DslError { line, column, kind }
    }

    fn unexpected(&self, expected: &'static str) -> DslError {
        self.err_here(DslErrorKind::Unexpected { expected, found: describe(self.peek()) })
    }

    fn keyword(&mut self, kw: &'static str) -> Result<(), DslError> {
        match self.peek() {
            Some(Token { tok: Tok::Word(w), .. }) if w == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.unexpected(kw)),
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), DslError> {
        match self.peek() {
            Some(Token { tok: Tok::Word(w), line, column }) if !is_keyword(w) => {
                let out = (w.clone(), *line, *column);
                self.pos += 1;
                Ok(out)
            }
            _ => Err(self.unexpected("a node id")),
        }
    }

    /// Consumes a statement separator; false at end of input.
    fn separator(&mut self) -> Result<bool, DslError> {
        match self.peek() {
            None => Ok(false),
            Some(Token { tok: Tok::Semi, .. }) => {
                self.pos += 1;
                Ok(self.peek().is_some())
            }
            _ => Err(self.unexpected("`;`")),
        }
    }
}

fn is_keyword(w: &str) -> bool {
    w == "nodes" || w == "edge"
}

/// Parses one diagram.
pub fn parse_diagram(text: &str) -> Result<CoxeterDiagram, DslError> {
    let tokens = tokenize(text)?;
    let end = text
        .lines()
        .enumerate()
        .last()
        .map(|(i, l)| (i + 1, l.chars().count() + 1))
        .unwrap_or((1, 1));
    if tokens.is_empty() {
        return Err(DslError { line: end.0, column: end.1, kind: DslErrorKind::Empty });
    }
    let mut p = Parser { tokens, pos: 0, end };

    p.keyword("nodes")?;
    let mut nodes: Vec<String> = Vec::new();
    let mut known = HashSet::new();
    while let Some(Token { tok: Tok::Word(w), line, column }) = p.peek().cloned() {
        if is_keyword(&w) {
            return Err(p.unexpected("a node id or `;`"));
        }
        if !known.insert(w.clone()) {
            return Err(DslError { line, column, kind: DslErrorKind::DuplicateNode(w) });
        }
        nodes.push(w);
        p.pos += 1;
    }
    if nodes.is_empty() {
        return Err(p.unexpected("a node id"));
    }

    let mut edges = Vec::new();
    let mut pairs = HashSet::new();
    while p.separator()? {
        p.keyword("edge")?;
        let (a, la, ca) = p.ident()?;
        let (b, lb, cb) = p.ident()?;
        for (id, line, column) in [(&a, la, ca), (&b, lb, cb)] {
            if !known.contains(id) {
                return Err(DslError { line, column, kind: DslErrorKind::UnknownNode(id.clone()) });
            }
        }
        if a == b {
            return Err(DslError { line: lb, column: cb, kind: DslErrorKind::SelfLoop(a) });
        }
        let m = match p.peek().cloned() {
            Some(Token { tok: Tok::Word(w), line, column }) => {
                let label = if w == "inf" {
                    Label::Infinity
                } else {
                    match w.parse::<u32>() {
                        Ok(v) if v >= 3 => Label::Finite(v),
                        Ok(v) => {
                            return Err(DslError { line, column, kind: DslErrorKind::LabelTooSmall(v) })
                        }
                        Err(_) => return Err(DslError { line, column, kind: DslErrorKind::BadLabel(w) }),
                    }
                };
                p.pos += 1;
                label
            }
            _ => return Err(p.unexpected("an edge label")),
        };
        let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if !pairs.insert(key) {
            return Err(DslError { line: la, column: ca, kind: DslErrorKind::DuplicateEdge(a, b) });
        }
        edges.push(Edge { a, b, m });
    }

    Ok(CoxeterDiagram::new(nodes, edges).expect("parser already validated the diagram"))
}

/// Writes a diagram in the text format. Edges appear in the order stored in
/// the diagram; [`parse_diagram`] reads the output back unchanged.
pub fn render_dsl(d: &CoxeterDiagram) -> String {
    let mut out = String::from("nodes");
    for n in &d.nodes {
        out.push(' ');
        out.push_str(n);
    }
    for e in &d.edges {
        write!(out, "; edge {} {} {}", e.a, e.b, e.m).unwrap();
    }
    out
}

/// A named diagram read from a catalog file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub diagram: CoxeterDiagram,
}

/// Parses a catalog: diagrams separated by lines containing only `---`.
/// A comment line `# name: <text>` inside a block names the entry; otherwise
/// entries are numbered from 1.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, DslError> {
    let mut entries = Vec::new();
    let mut block = String::new();
    let mut block_start = 1usize;
    let flush = |block: &str, start: usize, entries: &mut Vec<CatalogEntry>| -> Result<(), DslError> {
        if block.lines().all(|l| l.split('#').next().unwrap_or("").trim().is_empty()) {
            return Ok(());
        }
        let name = block
            .lines()
            .find_map(|l| l.trim().strip_prefix("# name:").map(|n| n.trim().to_string()))
            .unwrap_or_else(|| (entries.len() + 1).to_string());
        let diagram = parse_diagram(block).map_err(|mut e| {
            e.line += start - 1;
            e
        })?;
        entries.push(CatalogEntry { name, diagram });
        Ok(())
    };
    for (i, line) in text.lines().enumerate() {
        if line.trim() == "---" {
            flush(&block, block_start, &mut entries)?;
            block.clear();
            block_start = i + 2;
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    flush(&block, block_start, &mut entries)?;
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::CoxeterMatrix;

    #[test]
    fn parses_dihedral() {
        let d = parse_diagram("nodes a b; edge a b 5").unwrap();
        assert_eq!(d.nodes, vec!["a", "b"]);
        assert_eq!(d.edges, vec![Edge { a: "a".into(), b: "b".into(), m: Label::Finite(5) }]);
    }

    #[test]
    fn parses_triangle_and_comments() {
        let text = "# the 3-cycle\nnodes a b c;\nedge a b 3; # first\nedge b c 3;\nedge a c 3;\n";
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.edges.len(), 3);
        assert!(d.edges.iter().all(|e| e.m == Label::Finite(3)));
    }

    #[test]
    fn parses_infinity() {
        let d = parse_diagram("nodes x y z; edge x y inf").unwrap();
        let m = CoxeterMatrix::from(&d);
        assert_eq!(m.get(0, 1), Label::Infinity);
        assert_eq!(m.get(1, 2), Label::TWO);
    }

    #[test]
    fn rejects_label_two_with_location() {
        let err = parse_diagram("nodes a b; edge a b 2").unwrap_err();
        assert_eq!(err.kind, DslErrorKind::LabelTooSmall(2));
        assert_eq!((err.line, err.column), (1, 21));
    }

    #[test]
    fn error_cases() {
        let dup = parse_diagram("nodes a a").unwrap_err();
        assert_eq!(dup.kind, DslErrorKind::DuplicateNode("a".into()));
        assert_eq!(dup.column, 9);

        let unknown = parse_diagram("nodes a b;\n  edge a c 3").unwrap_err();
        assert_eq!(unknown.kind, DslErrorKind::UnknownNode("c".into()));
        assert_eq!((unknown.line, unknown.column), (2, 10));

        let bad = parse_diagram("nodes a b; edge a b 4.5").unwrap_err();
        assert_eq!(bad.kind, DslErrorKind::BadCharacter('.'));

        let missing_semi = parse_diagram("nodes a b edge a b 3").unwrap_err();
        assert!(matches!(missing_semi.kind, DslErrorKind::Unexpected { .. }));

        let label = parse_diagram("nodes a b; edge a b five").unwrap_err();
        assert_eq!(label.kind, DslErrorKind::BadLabel("five".into()));

        let twice = parse_diagram("nodes a b; edge a b 3; edge b a 4").unwrap_err();
        assert!(matches!(twice.kind, DslErrorKind::DuplicateEdge(..)));

        assert_eq!(parse_diagram("  # nothing\n").unwrap_err().kind, DslErrorKind::Empty);
    }

    #[test]
    fn trailing_semicolon_allowed() {
        assert!(parse_diagram("nodes a b; edge a b 3;").is_ok());
        assert!(parse_diagram("nodes a;").is_ok());
    }

    #[test]
    fn catalog_blocks() {
        let text = "# name: first\nnodes a b; edge a b 4\n---\nnodes a b c\n---\n";
        let cat = parse_catalog(text).unwrap();
        assert_eq!(cat.len(), 2);
        assert_eq!(cat[0].name, "first");
        assert_eq!(cat[1].name, "2");

        let err = parse_catalog("nodes a\n---\nnodes b b\n").unwrap_err();
        assert_eq!(err.line, 3);
    }
}
