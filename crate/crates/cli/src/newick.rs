//! Newick reading and writing for the topology-only subset.
//!
//! Grammar, with whitespace allowed between tokens:
//!
//! ```text
//! tree    := subtree ";"
//! subtree := "(" subtree ("," subtree)* ")" | label?
//! label   := [A-Za-z0-9_.-]+
//! ```
//!
//! Branch lengths and internal-vertex labels are rejected rather than
//! dropped. A group holding a single empty leaf, as in `();`, is an error.

use leafsub_core::RootedTree;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewickError {
    #[error("syntax error at byte {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: &'static str,
        found: String,
    },
    #[error("unsupported feature at byte {offset}: {feature}")]
    Unsupported {
        offset: usize,
        feature: &'static str,
    },
}

impl NewickError {
    pub fn offset(&self) -> usize {
        match self {
            NewickError::Syntax { offset, .. } | NewickError::Unsupported { offset, .. } => *offset,
        }
    }
}

fn is_label_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b'-')
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn found(&self) -> String {
        match self.bytes.get(self.pos) {
            None => "end of input".to_string(),
            Some(b) if b.is_ascii_graphic() => format!("'{}'", *b as char),
            Some(b) => format!("byte 0x{b:02x}"),
        }
    }

    fn syntax(&self, expected: &'static str) -> NewickError {
        NewickError::Syntax {
            offset: self.pos,
            expected,
            found: self.found(),
        }
    }

    fn label(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && is_label_byte(self.bytes[self.pos]) {
            self.pos += 1;
        }
        (self.pos > start)
            .then(|| String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
    }

    fn reject_branch_length(&mut self) -> Result<(), NewickError> {
        if self.peek() == Some(b':') {
            return Err(NewickError::Unsupported {
                offset: self.pos,
                feature: "branch lengths",
            });
        }
        Ok(())
    }

    fn subtree(&mut self) -> Result<RootedTree, NewickError> {
        if self.peek() == Some(b'(') {
            let open = self.pos;
            self.pos += 1;
            let mut children = vec![self.subtree()?];
            loop {
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                        children.push(self.subtree()?);
                    }
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.syntax("',' or ')'")),
                }
            }
            if children.len() == 1 && children[0].is_leaf() && children[0].label().is_none() {
                return Err(NewickError::Syntax {
                    offset: open,
                    expected: "a subtree inside parentheses",
                    found: "an empty group".to_string(),
                });
            }
            self.skip_ws();
            let at = self.pos;
            if self.label().is_some() {
                return Err(NewickError::Unsupported {
                    offset: at,
                    feature: "internal vertex labels",
                });
            }
            self.reject_branch_length()?;
            Ok(RootedTree::node(children))
        } else {
            let leaf = match self.label() {
                Some(l) => RootedTree::labeled_leaf(l),
                None => RootedTree::leaf(),
            };
            self.reject_branch_length()?;
            Ok(leaf)
        }
    }

    fn tree(&mut self) -> Result<RootedTree, NewickError> {
        let t = self.subtree()?;
        if self.peek() != Some(b';') {
            return Err(self.syntax("';'"));
        }
        self.pos += 1;
        Ok(t)
    }
}

/// Parses exactly one tree; only whitespace may follow the `;`.
pub fn parse_newick(text: &str) -> Result<RootedTree, NewickError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let t = p.tree()?;
    if p.peek().is_some() {
        return Err(p.syntax("end of input"));
    }
    Ok(t)
}

/// Parses a sequence of `;`-terminated trees.
pub fn parse_newick_many(text: &str) -> Result<Vec<RootedTree>, NewickError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut trees = Vec::new();
    while p.peek().is_some() {
        trees.push(p.tree()?);
    }
    if trees.is_empty() {
        return Err(p.syntax("a tree"));
    }
    Ok(trees)
}

/// Serializes `t`. With `canonical` set, labels are dropped and children are
/// written in canonical-code order, so equal classes give equal bytes.
pub fn to_newick(t: &RootedTree, canonical: bool) -> String {
    let mut out = String::new();
    if canonical {
        write_canonical(&t.unlabeled(), &mut out);
    } else {
        write_plain(t, &mut out);
    }
    out.push(';');
    out
}

fn write_plain(t: &RootedTree, out: &mut String) {
    if t.is_leaf() {
        out.push_str(t.label().unwrap_or(""));
        return;
    }
    out.push('(');
    for (i, c) in t.children().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_plain(c, out);
    }
    out.push(')');
}

fn write_canonical(t: &RootedTree, out: &mut String) {
    if t.is_leaf() {
        return;
    }
    let mut children: Vec<(_, &RootedTree)> = t
        .children()
        .iter()
        .map(|c| (c.canonical_code(), c))
        .collect();
    children.sort_by(|a, b| a.0.cmp(&b.0));
    out.push('(');
    for (i, (_, c)) in children.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_canonical(c, out);
    }
    out.push(')');
}
