//! Rooted trees, canonical isomorphism codes and the named tree families.
//!
//! [`RootedTree`] is a plain recursive value. Leaves may carry a text label,
//! which is kept for I/O and for tracking leaves through induction but is never
//! part of isomorphism. [`CanonicalCode`] is the AHU encoding: a leaf is `()`
//! and an internal vertex is `(` followed by its children's codes in sorted
//! order followed by `)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{invalid, Error, Result};

/// An unlabeled rooted tree whose leaves may carry optional labels.
///
/// Derived equality is structural and order-sensitive; use
/// [`RootedTree::is_isomorphic`] or compare [`CanonicalCode`]s for
/// isomorphism.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RootedTree {
    children: Vec<RootedTree>,
    label: Option<String>,
}

/// Root-to-leaf child-index path addressing one vertex of a host tree.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeafPath(pub Vec<usize>);

impl LeafPath {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<usize>> for LeafPath {
    fn from(v: Vec<usize>) -> Self {
        LeafPath(v)
    }
}

impl fmt::Display for LeafPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("<root>");
        }
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{step}")?;
        }
        Ok(())
    }
}

impl RootedTree {
    /// The single vertex.
    pub fn leaf() -> Self {
        RootedTree::default()
    }

    pub fn labeled_leaf(label: impl Into<String>) -> Self {
        RootedTree {
            children: Vec::new(),
            label: Some(label.into()),
        }
    }

    /// Internal vertex with the given children. An empty vector yields an
    /// unlabeled leaf.
    pub fn node(children: Vec<RootedTree>) -> Self {
        RootedTree {
            children,
            label: None,
        }
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.children
    }

    /// Leaf label, if any. Internal vertices never carry one.
    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn outdegree(&self) -> usize {
        self.children.len()
    }

    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(RootedTree::leaf_count).sum()
        }
    }

    pub fn vertex_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(RootedTree::vertex_count)
            .sum::<usize>()
    }

    /// Length of the longest root-to-leaf path; 0 for the single vertex.
    pub fn height(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.height() + 1)
            .max()
            .unwrap_or(0)
    }

    /// Leaf positions in left-to-right depth-first order.
    pub fn leaves(&self) -> Vec<LeafPath> {
        fn walk(t: &RootedTree, path: &mut Vec<usize>, out: &mut Vec<LeafPath>) {
            if t.is_leaf() {
                out.push(LeafPath(path.clone()));
                return;
            }
            for (i, c) in t.children.iter().enumerate() {
                path.push(i);
                walk(c, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Labels of the leaves in the same order as [`RootedTree::leaves`].
    pub fn leaf_labels(&self) -> Vec<Option<&str>> {
        fn walk<'a>(t: &'a RootedTree, out: &mut Vec<Option<&'a str>>) {
            if t.is_leaf() {
                out.push(t.label());
            }
            for c in &t.children {
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// The vertex reached by following `path` from the root.
    pub fn subtree(&self, path: &[usize]) -> Option<&RootedTree> {
        path.iter().try_fold(self, |t, &i| t.children.get(i))
    }

    /// True iff no vertex, the root included, has exactly one child.
    pub fn is_topological(&self) -> bool {
        self.children.len() != 1 && self.children.iter().all(RootedTree::is_topological)
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        let codes: Vec<CanonicalCode> = self
            .children
            .iter()
            .map(RootedTree::canonical_code)
            .collect();
        CanonicalCode::join(&codes)
    }

    pub fn is_isomorphic(&self, other: &RootedTree) -> bool {
        self.canonical_code() == other.canonical_code()
    }

    /// Unlabeled representative of an isomorphism class, children in code order.
    pub fn from_code(code: &CanonicalCode) -> RootedTree {
        fn parse(bytes: &[u8], pos: &mut usize) -> RootedTree {
            debug_assert_eq!(bytes[*pos], b'(');
            *pos += 1;
            let mut children = Vec::new();
            while bytes[*pos] == b'(' {
                children.push(parse(bytes, pos));
            }
            *pos += 1;
            RootedTree::node(children)
        }
        parse(code.as_str().as_bytes(), &mut 0)
    }

    /// Copy with every label removed.
    pub fn unlabeled(&self) -> RootedTree {
        RootedTree {
            children: self.children.iter().map(RootedTree::unlabeled).collect(),
            label: None,
        }
    }
}

/// AHU-style canonical code of a rooted tree's isomorphism class.
///
/// Codes order by leaf count first and then by the code text, which is the
/// listing order used throughout the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalCode {
    code: Arc<str>,
    leaf_count: usize,
    height: usize,
}

impl CanonicalCode {
    pub fn single_vertex() -> Self {
        CanonicalCode {
            code: Arc::from("()"),
            leaf_count: 1,
            height: 0,
        }
    }

    /// Code of a root whose branches have the given codes, in any order.
    /// An empty slice gives the single vertex.
    pub fn join(branches: &[CanonicalCode]) -> Self {
        let mut sorted: Vec<&CanonicalCode> = branches.iter().collect();
        sorted.sort();
        let len = 2 + sorted.iter().map(|c| c.code.len()).sum::<usize>();
        let mut code = String::with_capacity(len);
        code.push('(');
        for c in &sorted {
            code.push_str(&c.code);
        }
        code.push(')');
        CanonicalCode {
            code: Arc::from(code),
            leaf_count: sorted.iter().map(|c| c.leaf_count).sum::<usize>().max(1),
            height: sorted.iter().map(|c| c.height + 1).max().unwrap_or(0),
        }
    }

    /// Parses a code string and returns the canonical code of the tree it
    /// describes, so non-sorted input is normalized.
    pub fn parse(text: &str) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut depth = 0usize;
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => {
                    if depth == 0 {
                        return Err(invalid(format!("unbalanced code at offset {i}")));
                    }
                    depth -= 1;
                    if depth == 0 && i + 1 != bytes.len() {
                        return Err(invalid(format!("trailing input at offset {}", i + 1)));
                    }
                }
                _ => return Err(invalid(format!("unexpected byte at offset {i}"))),
            }
        }
        if depth != 0 || bytes.is_empty() {
            return Err(invalid("unbalanced or empty code"));
        }
        let raw = CanonicalCode {
            code: Arc::from(text),
            leaf_count: 0,
            height: 0,
        };
        Ok(RootedTree::from_code(&raw).canonical_code())
    }

    pub fn as_str(&self) -> &str {
        &self.code
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn is_single_vertex(&self) -> bool {
        self.leaf_count == 1
    }
}

impl Ord for CanonicalCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.leaf_count
            .cmp(&other.leaf_count)
            .then_with(|| self.code.cmp(&other.code))
    }
}

impl PartialOrd for CanonicalCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

/// Star with `n` leaves; `star(1)` is the single vertex.
pub fn star(n: usize) -> Result<RootedTree> {
    match n {
        0 => Err(invalid("a star needs at least one leaf")),
        1 => Ok(RootedTree::leaf()),
        _ => Ok(RootedTree::node(vec![RootedTree::leaf(); n])),
    }
}

/// Binary caterpillar with `n` leaves: a chain of internal vertices, each with
/// one leaf child, ending in a cherry.
pub fn binary_caterpillar(n: usize) -> Result<RootedTree> {
    dary_caterpillar(2, n)
}

/// Strict `d`-ary rooted caterpillar with `n` leaves.
///
/// Every internal vertex has `d - 1` leaf children followed by one internal
/// child, except the deepest, which has `d` leaves. Requires
/// `n ≡ 1 (mod d - 1)`.
pub fn dary_caterpillar(d: usize, n: usize) -> Result<RootedTree> {
    if d < 2 {
        return Err(invalid(format!(
            "caterpillar arity must be at least 2, got {d}"
        )));
    }
    if n == 0 {
        return Err(invalid("a caterpillar needs at least one leaf"));
    }
    if !(n - 1).is_multiple_of(d - 1) {
        return Err(invalid(format!(
            "no strict {d}-ary caterpillar has {n} leaves (need n ≡ 1 mod {})",
            d - 1
        )));
    }
    let height = (n - 1) / (d - 1);
    let mut tree = RootedTree::leaf();
    for level in 0..height {
        let mut children = vec![RootedTree::leaf(); d - 1];
        children.push(if level == 0 { RootedTree::leaf() } else { tree });
        tree = RootedTree::node(children);
    }
    Ok(tree)
}

/// Complete `d`-ary tree of height `h` with `d^h` leaves.
pub fn complete_dary(d: usize, h: usize) -> Result<RootedTree> {
    if d < 2 {
        return Err(invalid(format!(
            "complete tree arity must be at least 2, got {d}"
        )));
    }
    let mut tree = RootedTree::leaf();
    for _ in 0..h {
        tree = RootedTree::node(vec![tree; d]);
    }
    Ok(tree)
}

pub(crate) fn require_topological(t: &RootedTree) -> Result<()> {
    if t.is_topological() {
        Ok(())
    } else {
        Err(Error::NotTopological)
    }
}
